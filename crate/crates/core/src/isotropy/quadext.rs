//! Isotropy over `F(√d)` and `F(℘⁻¹(d))`: isotropic there exactly when
//! `c<1,d> ≺ φ` (inseparable) or `c[1,d] ⊆ φ` (separable) for some `c`.

use super::{ff, quasilinear};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::artin_schreier::{self, AsSolution};
use crate::field::{enumerate, twobasis, Elem, Field};
use crate::quadform::{dominance_search, EmbeddingMode, QuadraticForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadExt {
    /// `F(√d)`
    Inseparable(Elem),
    /// `F(℘⁻¹(d))`, a root of `X² + X + d`
    Separable(Elem),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExtVerdict {
    pub isotropic: bool,
    /// Already isotropic over `F`: the witness.
    pub base_witness: Option<Vec<Elem>>,
    pub scalar: Option<Elem>,
    /// Columns spanning the copy of `c<1,d>` or `c[1,d]` inside `φ`.
    pub columns: Vec<Vec<Elem>>,
    /// The extension and an isotropic vector over it (separable case).
    pub ext_witness: Option<(Field, Vec<Elem>)>,
    pub reason: String,
}

impl QuadExtVerdict {
    fn base(w: Vec<Elem>) -> Self {
        QuadExtVerdict {
            isotropic: true,
            base_witness: Some(w),
            scalar: None,
            columns: vec![],
            ext_witness: None,
            reason: "isotropic over the base field".into(),
        }
    }

    fn anisotropic(reason: &str) -> Self {
        QuadExtVerdict {
            isotropic: false,
            base_witness: None,
            scalar: None,
            columns: vec![],
            ext_witness: None,
            reason: reason.into(),
        }
    }

    pub fn to_json(&self, f: &Field) -> serde_json::Value {
        let vj = |v: &Vec<Elem>| super::vec_json(f, v);
        let mut out = serde_json::json!({
            "isotropic": self.isotropic,
            "reason": self.reason,
            "columns": self.columns.iter().map(vj).collect::<Vec<_>>(),
        });
        if let Some(w) = &self.base_witness {
            out["base_witness"] = vj(w);
        }
        if let Some(c) = &self.scalar {
            out["scalar"] = f.fmt_elem(c).into();
        }
        if let Some((e, w)) = &self.ext_witness {
            out["extension"] = e.to_string().into();
            out["ext_witness"] = super::vec_json(e, w);
        }
        out
    }
}

fn fresh_var(f: &Field) -> String {
    let used = f.variables();
    ["r", "u", "z", "y", "e"]
        .iter()
        .find(|v| !used.iter().any(|u| u == *v))
        .expect("short tower")
        .to_string()
}

/// `F[r]/(r² + r + d)`
pub fn separable_extension(f: &Field, d: &Elem) -> Result<Field> {
    f.algebraic(&fresh_var(f), &[d.clone(), f.one(), f.one()])
}

pub fn quad_ext_isotropy(phi: &QuadraticForm, ext: &QuadExt, budget: &Budget) -> Result<QuadExtVerdict> {
    let f = &phi.field;
    match ext {
        QuadExt::Inseparable(d) => inseparable(phi, d),
        QuadExt::Separable(d) => {
            if let AsSolution::Root(_) = artin_schreier::solve(f, d, 8)? {
                return Err(Error::PreconditionViolated(format!("{} lies in ℘(F)", f.fmt_elem(d))));
            }
            if f.is_finite() {
                separable_finite(phi, d, budget)
            } else if phi.is_quasilinear() && f.is_rational_tower() {
                match quasilinear::quasilinear_isotropy_tower(f, &phi.diagonal)? {
                    Some(w) => Ok(QuadExtVerdict::base(w)),
                    None => Ok(QuadExtVerdict::anisotropic(
                        "quasilinear and anisotropic; separable extensions keep 2-independence",
                    )),
                }
            } else {
                Err(Error::Unsupported(format!("separable extension criterion over {f}")))
            }
        }
    }
}

fn inseparable(phi: &QuadraticForm, d: &Elem) -> Result<QuadExtVerdict> {
    let f = &phi.field;
    if f.is_finite() || twobasis::is_square(f, d).is_some() {
        return Err(Error::PreconditionViolated(format!("{} is a square", f.fmt_elem(d))));
    }
    if !phi.is_quasilinear() || !f.is_rational_tower() {
        return Err(Error::Unsupported(format!("inseparable criterion for {phi} over {f}")));
    }
    let cs = &phi.diagonal;
    if let Some(w) = quasilinear::quasilinear_isotropy_tower(f, cs)? {
        return Ok(QuadExtVerdict::base(w));
    }
    // φ(x + √d y) = φ(x) + d φ(y) for quasilinear φ
    let n = cs.len();
    let mut both = cs.clone();
    both.extend(cs.iter().map(|c| f.mul(d, c)));
    let Some(dep) = quasilinear::quasilinear_isotropy_tower(f, &both)? else {
        return Ok(QuadExtVerdict::anisotropic("φ ⊥ dφ is 2-independent, so no c with c<1,d> ≺ φ"));
    };
    let (x, y) = (dep[..n].to_vec(), dep[n..].to_vec());
    let c = phi.eval_unchecked(&y);
    Ok(QuadExtVerdict {
        isotropic: true,
        base_witness: None,
        scalar: Some(c),
        columns: vec![y, x],
        ext_witness: None,
        reason: "c<1,d> ≺ φ".into(),
    })
}

fn separable_finite(phi: &QuadraticForm, d: &Elem, budget: &Budget) -> Result<QuadExtVerdict> {
    let f = &phi.field;
    if let Some(w) = ff::isotropy_ff(phi, budget)? {
        return Ok(QuadExtVerdict::base(w));
    }
    let e = separable_extension(f, d)?;
    for c in enumerate::nonzero_elements(f)? {
        let sigma = QuadraticForm::plane(f, c.clone(), f.div(d, &c)?);
        let Some(emb) = dominance_search(&sigma, phi, EmbeddingMode::Subform, budget)? else { continue };
        // x = c·u2, y = u1 gives φ(x + r y) = 0
        let (u1, u2) = (&emb.columns[0], &emb.columns[1]);
        let r = e.var_elem()?;
        let w = u1
            .iter()
            .zip(u2)
            .map(|(a, b)| Ok(e.add(&e.embed(f, &f.mul(&c, b))?, &e.mul(&r, &e.embed(f, a)?))))
            .collect::<Result<Vec<_>>>()?;
        return Ok(QuadExtVerdict {
            isotropic: true,
            base_witness: None,
            scalar: Some(c),
            columns: emb.columns,
            ext_witness: Some((e, w)),
            reason: "c[1,d] ⊆ φ".into(),
        });
    }
    Ok(QuadExtVerdict::anisotropic("no c with c[1,d] ⊆ φ"))
}
