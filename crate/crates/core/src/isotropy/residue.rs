//! Anisotropy certificates from residue forms: if `φ ≅ φ0 ⊥ π·φ1` with
//! integral coefficients at a place with uniformizer `π`, and both residue
//! forms are anisotropic, then `φ` is anisotropic.

use super::{ff, quasilinear};
use crate::budget::Budget;
use crate::error::Result;
use crate::field::place::Place;
use crate::field::{factor, Field, FieldKind};
use crate::quadform::QuadraticForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeafMethod {
    /// Every nonzero vector evaluated over a finite field.
    Exhausted,
    /// Quasilinear entries 2-independent over the square subfield.
    TwoIndependent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnisotropyCertificate {
    Split {
        form: QuadraticForm,
        place: Place,
        /// Per block of `form` (planes, then diagonal): the exponent `k` of
        /// the basis rescaling by `π^k`.
        scaling: Vec<i64>,
        phi0: QuadraticForm,
        phi1: QuadraticForm,
        /// Certificates for the nonempty residue forms, `φ0` first.
        children: Vec<AnisotropyCertificate>,
    },
    Leaf {
        form: QuadraticForm,
        method: LeafMethod,
    },
}

/// The split of `φ` at `place`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSplit {
    pub scaling: Vec<i64>,
    pub phi0: QuadraticForm,
    pub phi1: QuadraticForm,
}

/// `None` when a coefficient is zero or a plane has `v(a) + v(b) < 0`.
pub fn residue_split(f: &Field, phi: &QuadraticForm, place: &Place) -> Result<Option<ResidueSplit>> {
    let k = place.residue_field(f)?;
    let pi = place.uniformizer(f)?;
    let mut scaling = Vec::new();
    let mut phi0 = QuadraticForm::zero_form(&k);
    let mut phi1 = QuadraticForm::zero_form(&k);
    for (a, b) in &phi.planes {
        if f.is_zero(a) || f.is_zero(b) {
            return Ok(None);
        }
        let (va, vb) = (place.valuation(f, a)?, place.valuation(f, b)?);
        if va + vb < 0 {
            return Ok(None);
        }
        let e = if va.rem_euclid(2) == 0 { -va / 2 } else { (1 - va) / 2 };
        let a2 = f.mul(a, &f.pow(&pi, 2 * e)?);
        let b2 = f.mul(b, &f.pow(&pi, -2 * e)?);
        if va.rem_euclid(2) == 0 {
            phi0.planes.push((place.residue(f, &a2)?, place.residue(f, &b2)?));
        } else {
            let a1 = f.div(&a2, &pi)?;
            let b1 = f.mul(&b2, &pi);
            phi1.planes.push((place.residue(f, &a1)?, place.residue(f, &b1)?));
        }
        scaling.push(e);
    }
    for c in &phi.diagonal {
        if f.is_zero(c) {
            return Ok(None);
        }
        let v = place.valuation(f, c)?;
        let e = -v.div_euclid(2);
        let c2 = f.mul(c, &f.pow(&pi, 2 * e)?);
        if v.rem_euclid(2) == 0 {
            phi0.diagonal.push(place.residue(f, &c2)?);
        } else {
            phi1.diagonal.push(place.residue(f, &f.div(&c2, &pi)?)?);
        }
        scaling.push(e);
    }
    Ok(Some(ResidueSplit { scaling, phi0, phi1 }))
}

/// Places tried by default: `t`, the irreducible factors of the
/// coefficients (finite base only), then infinity. Laurent fields use
/// their one place.
pub fn candidate_places(phi: &QuadraticForm) -> Result<Vec<Place>> {
    let f = &phi.field;
    let mut out = Vec::new();
    match f.kind() {
        FieldKind::Laurent { .. } => out.push(Place::XAdic),
        FieldKind::Rational { base, .. } => {
            out.push(Place::Poly(vec![base.zero(), base.one()]));
            if base.is_finite() {
                let coeffs = phi.planes.iter().flat_map(|(a, b)| [a, b]).chain(&phi.diagonal);
                for c in coeffs {
                    if f.is_zero(c) {
                        continue;
                    }
                    let (n, d) = f.rat_parts(c)?;
                    for p in [n, d] {
                        if p.len() < 2 {
                            continue;
                        }
                        for (g, _) in factor::factor(base, p)?.factors {
                            let pl = Place::Poly(g);
                            if !out.contains(&pl) {
                                out.push(pl);
                            }
                        }
                    }
                }
            }
            out.push(Place::Infinity);
        }
        _ => {}
    }
    Ok(out)
}

/// A certificate of anisotropy, or `None` (INCONCLUSIVE). `places`
/// overrides the candidates at the top level only.
pub fn residue_anisotropy(
    phi: &QuadraticForm,
    places: Option<&[Place]>,
    budget: &Budget,
) -> Result<Option<AnisotropyCertificate>> {
    let f = &phi.field;
    if phi.dim() == 0 {
        return Ok(Some(AnisotropyCertificate::Leaf { form: phi.clone(), method: LeafMethod::Exhausted }));
    }
    if f.is_finite() {
        return Ok(ff::isotropy_ff(phi, budget)?
            .is_none()
            .then(|| AnisotropyCertificate::Leaf { form: phi.clone(), method: LeafMethod::Exhausted }));
    }
    let cands = match places {
        Some(p) => p.to_vec(),
        None => candidate_places(phi)?,
    };
    for place in cands {
        let Some(split) = residue_split(f, phi, &place)? else { continue };
        let mut children = Vec::new();
        let mut ok = true;
        for part in [&split.phi0, &split.phi1] {
            if part.dim() == 0 {
                continue;
            }
            match residue_anisotropy(part, None, budget)? {
                Some(c) => children.push(c),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(Some(AnisotropyCertificate::Split {
                form: phi.clone(),
                place,
                scaling: split.scaling,
                phi0: split.phi0,
                phi1: split.phi1,
                children,
            }));
        }
    }
    if phi.is_quasilinear()
        && f.is_rational_tower()
        && quasilinear::quasilinear_isotropy_tower(f, &phi.diagonal)?.is_none()
    {
        return Ok(Some(AnisotropyCertificate::Leaf { form: phi.clone(), method: LeafMethod::TwoIndependent }));
    }
    Ok(None)
}

impl AnisotropyCertificate {
    pub fn form(&self) -> &QuadraticForm {
        match self {
            AnisotropyCertificate::Split { form, .. } | AnisotropyCertificate::Leaf { form, .. } => form,
        }
    }

    /// Recompute every split and re-run every leaf check.
    pub fn verify(&self, budget: &Budget) -> Result<bool> {
        match self {
            AnisotropyCertificate::Leaf { form, method } => Ok(match method {
                LeafMethod::Exhausted => {
                    form.dim() == 0 || form.field.is_finite() && ff::isotropy_ff(form, budget)?.is_none()
                }
                LeafMethod::TwoIndependent => {
                    form.is_quasilinear()
                        && quasilinear::quasilinear_isotropy_tower(&form.field, &form.diagonal)?.is_none()
                }
            }),
            AnisotropyCertificate::Split { form, place, scaling, phi0, phi1, children } => {
                let Some(s) = residue_split(&form.field, form, place)? else { return Ok(false) };
                if s.scaling != *scaling || s.phi0 != *phi0 || s.phi1 != *phi1 {
                    return Ok(false);
                }
                let parts: Vec<&QuadraticForm> = [phi0, phi1].into_iter().filter(|p| p.dim() > 0).collect();
                if parts.len() != children.len() {
                    return Ok(false);
                }
                for (p, c) in parts.iter().zip(children) {
                    if c.form() != *p || !c.verify(budget)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            AnisotropyCertificate::Leaf { form, method } => {
                let mut v = serde_json::json!({
                    "leaf_field": form.field.to_string(),
                    "form": form.to_text(),
                    "exhausted": *method == LeafMethod::Exhausted,
                });
                if *method == LeafMethod::TwoIndependent {
                    v["two_independent"] = true.into();
                }
                v
            }
            AnisotropyCertificate::Split { form, place, scaling, phi0, phi1, children } => serde_json::json!({
                "field": form.field.to_string(),
                "form": form.to_text(),
                "place": place.label(&form.field),
                "unit_scaling": scaling,
                "residue_field": phi0.field.to_string(),
                "phi0": phi0.to_text(),
                "phi1": phi1.to_text(),
                "children": children.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            }),
        }
    }

    /// Leaves of the tree, left to right.
    pub fn leaves(&self) -> Vec<&AnisotropyCertificate> {
        match self {
            AnisotropyCertificate::Leaf { .. } => vec![self],
            AnisotropyCertificate::Split { children, .. } => children.iter().flat_map(|c| c.leaves()).collect(),
        }
    }
}
