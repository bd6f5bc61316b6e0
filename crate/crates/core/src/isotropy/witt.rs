//! Witt decomposition `φ ≅ i_W·H ⊥ i_d·<0> ⊥ φ_an`.

use super::{ff, quasilinear};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg;
use crate::quadform::{GeneralForm, QuadraticForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittDecomposition {
    pub i_w: usize,
    pub i_d: usize,
    pub anisotropic: QuadraticForm,
    /// Isotropic vectors consumed, in order, in the coordinates of `φ`.
    pub witnesses: Vec<Vec<Elem>>,
}

impl WittDecomposition {
    pub fn i_t(&self) -> usize {
        self.i_w + self.i_d
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = &self.anisotropic.field;
        serde_json::json!({
            "i_w": self.i_w,
            "i_d": self.i_d,
            "i_t": self.i_t(),
            "anisotropic_part": self.anisotropic.to_text(),
            "witnesses": self.witnesses.iter().map(|v| crate::isotropy::vec_json(f, v)).collect::<Vec<_>>(),
        })
    }

    /// `i_W·H ⊥ φ_an ⊥ i_d·<0>`
    pub fn reassemble(&self) -> QuadraticForm {
        let f = &self.anisotropic.field;
        let mut out = QuadraticForm::zero_form(f);
        out.planes = vec![(f.zero(), f.zero()); self.i_w];
        out.planes.extend(self.anisotropic.planes.iter().cloned());
        out.diagonal = self.anisotropic.diagonal.clone();
        out.diagonal.extend(std::iter::repeat_n(f.zero(), self.i_d));
        out
    }
}

pub fn witt_decompose(phi: &QuadraticForm, budget: &Budget) -> Result<WittDecomposition> {
    let f = &phi.field;
    if f.is_finite() {
        finite(phi, budget)
    } else if phi.is_quasilinear() {
        quasilinear_tower(phi)
    } else {
        Err(Error::UnsupportedField(format!(
            "Witt decomposition of a non-quasilinear form over {f}"
        )))
    }
}

fn finite(phi: &QuadraticForm, budget: &Budget) -> Result<WittDecomposition> {
    let f = &phi.field;
    let n = phi.dim();
    let mut cur = ff::standard_basis(f, n);
    let mut witnesses = Vec::new();
    let (mut i_w, mut i_d) = (0, 0);

    // radical first
    loop {
        let g = GeneralForm::restrict(phi, &cur);
        let rad = linalg::kernel(f, &g.b, cur.len())?;
        if rad.is_empty() {
            break;
        }
        let Some(z) = ff::first_isotropic(&g, &rad, budget)? else { break };
        let j = z.iter().position(|x| !f.is_zero(x)).expect("nonzero witness");
        witnesses.push(linalg::combine(f, &z, &cur, n));
        cur.remove(j);
        i_d += 1;
    }

    loop {
        let g = GeneralForm::restrict(phi, &cur);
        let std = ff::standard_basis(f, cur.len());
        let Some(x) = ff::first_isotropic(&g, &std, budget)? else { break };
        let v = linalg::combine(f, &x, &cur, n);
        let w = cur
            .iter()
            .find(|w| !f.is_zero(&phi.polar_unchecked(&v, w)))
            .ok_or_else(|| Error::PreconditionViolated("isotropic radical vector after defect stripping".into()))?;
        let inv = f.inv(&phi.polar_unchecked(&v, w))?;
        let w: Vec<Elem> = w.iter().map(|c| f.mul(c, &inv)).collect();
        let qw = phi.eval_unchecked(&w);
        let w2: Vec<Elem> = w.iter().zip(&v).map(|(a, b)| f.add(a, &f.mul(&qw, b))).collect();
        let projected: Vec<Vec<Elem>> = cur
            .iter()
            .map(|e| {
                let (bw, bv) = (phi.polar_unchecked(e, &w2), phi.polar_unchecked(e, &v));
                (0..n).map(|k| f.add(&e[k], &f.add(&f.mul(&bw, &v[k]), &f.mul(&bv, &w2[k])))).collect()
            })
            .collect();
        cur = independent_subset(f, &projected)?;
        witnesses.push(v);
        i_w += 1;
    }

    let (anisotropic, _) = GeneralForm::restrict(phi, &cur).normalize()?;
    Ok(WittDecomposition { i_w, i_d, anisotropic, witnesses })
}

/// Greedy maximal independent subfamily, in order.
pub(crate) fn independent_subset(f: &Field, vs: &[Vec<Elem>]) -> Result<Vec<Vec<Elem>>> {
    let mut out: Vec<Vec<Elem>> = Vec::new();
    for v in vs {
        out.push(v.clone());
        if linalg::rank(f, &out)? < out.len() {
            out.pop();
        }
    }
    Ok(out)
}

fn quasilinear_tower(phi: &QuadraticForm) -> Result<WittDecomposition> {
    let f = &phi.field;
    let cs = &phi.diagonal;
    let keep = quasilinear::independent_entries(f, cs)?;
    let witnesses = quasilinear::dependencies(f, cs)?;
    Ok(WittDecomposition {
        i_w: 0,
        i_d: cs.len() - keep.len(),
        anisotropic: QuadraticForm::diag(f, keep.iter().map(|&i| cs[i].clone()).collect()),
        witnesses,
    })
}
