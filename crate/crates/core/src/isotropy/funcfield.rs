//! Isotropy of `φ` over the function field `F(ψ)` for a finite base `F`.

use super::quadext::{quad_ext_isotropy, QuadExt, QuadExtVerdict};
use super::{ff, witt};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::quadform::QuadraticForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncFieldVerdict {
    pub isotropic: bool,
    pub trace: Vec<String>,
    pub base_witness: Option<Vec<Elem>>,
    pub criterion: Option<QuadExtVerdict>,
}

impl FuncFieldVerdict {
    pub fn to_json(&self, phi: &QuadraticForm) -> serde_json::Value {
        let f = &phi.field;
        let mut out = serde_json::json!({ "isotropic": self.isotropic, "trace": self.trace });
        if let Some(w) = &self.base_witness {
            out["base_witness"] = super::vec_json(f, w);
        }
        if let Some(c) = &self.criterion {
            out["criterion"] = c.to_json(f);
        }
        out
    }
}

pub fn isotropy_over_form_function_field(
    phi: &QuadraticForm,
    psi: &QuadraticForm,
    budget: &Budget,
) -> Result<FuncFieldVerdict> {
    let f = &phi.field;
    if psi.field != *f {
        return Err(Error::MixedFields(f.to_string(), psi.field.to_string()));
    }
    if !f.is_finite() {
        return Err(Error::UnsupportedField(format!("F(ψ) decision needs a finite base, got {f}")));
    }
    if psi.dim() == 0 {
        return Err(Error::PreconditionViolated("ψ must have positive dimension".into()));
    }
    let mut trace = Vec::new();
    let done = |isotropic, trace, base_witness, criterion| {
        Ok(FuncFieldVerdict { isotropic, trace, base_witness, criterion })
    };
    if let Some(w) = ff::isotropy_ff(phi, budget)? {
        trace.push("φ is isotropic over F, hence over every extension".into());
        return done(true, trace, Some(w), None);
    }
    trace.push("φ is anisotropic over F (exhaustive)".into());

    let d = witt::witt_decompose(psi, budget)?;
    let nd_dim = 2 * d.i_w + d.anisotropic.dim();
    if d.i_d > 0 {
        trace.push(format!("strip i_d = {} from ψ: F(ψ)/F(ψ_nd) is purely transcendental", d.i_d));
    }
    if nd_dim == 0 {
        trace.push("ψ_nd = 0: F(ψ) = F".into());
        return done(false, trace, None, None);
    }
    if d.i_w == 0 && d.anisotropic.type_of() == (0, 1) {
        trace.push("ψ_nd ≅ <a>: F(ψ) = F".into());
        return done(false, trace, None, None);
    }
    if d.i_w == 1 && d.anisotropic.dim() == 0 {
        trace.push("ψ_nd ≅ H: F(ψ) = F".into());
        return done(false, trace, None, None);
    }
    if d.i_w > 0 {
        trace.push("ψ_nd is isotropic: F(ψ)/F is purely transcendental, anisotropy is preserved".into());
        return done(false, trace, None, None);
    }
    if phi.is_quasilinear() && !d.anisotropic.is_quasilinear() {
        trace.push("φ quasilinear and ψ not quasilinear: φ stays anisotropic over F(ψ)".into());
        return done(false, trace, None, None);
    }
    // over a finite field every anisotropic nondefective form has dimension ≤ 2
    trace.push("Chevalley–Warning: anisotropic ψ_nd over a finite field has dimension ≤ 2".into());
    let an = &d.anisotropic;
    if an.type_of() != (1, 0) {
        return Err(Error::PreconditionViolated(format!("unexpected anisotropic part {an}")));
    }
    let (a, b) = &an.planes[0];
    let dd = f.mul(a, b);
    trace.push(format!(
        "ψ_nd ≅ {} ≅ a[1,ab]: F(ψ) is purely transcendental over F(℘⁻¹({}))",
        an,
        f.fmt_elem(&dd)
    ));
    let v = quad_ext_isotropy(phi, &QuadExt::Separable(dd), budget)?;
    trace.push(format!("separable criterion: {}", v.reason));
    done(v.isotropic, trace, None, Some(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn form(s: &str) -> QuadraticForm {
        QuadraticForm::parse(&Field::gf2(), s).unwrap()
    }

    #[test]
    fn examples() {
        let b = Budget::default();
        let v = isotropy_over_form_function_field(&form("[1,1]"), &form("[1,1]"), &b).unwrap();
        assert!(v.isotropic);
        assert_eq!(v.criterion.unwrap().scalar, Some(Elem::Gf(1)));
        let v = isotropy_over_form_function_field(&form("<1>"), &form("[1,1]"), &b).unwrap();
        assert!(!v.isotropic);
        assert!(v.trace.iter().any(|s| s.contains("quasilinear")));
        let v = isotropy_over_form_function_field(&form("[1,1]"), &form("H"), &b).unwrap();
        assert!(!v.isotropic);
        assert!(v.trace.iter().any(|s| s.contains("F(ψ) = F")));
    }

    #[test]
    fn defect_is_stripped() {
        let b = Budget::default();
        let v = isotropy_over_form_function_field(&form("[1,1]"), &form("[1,1]+<0>"), &b).unwrap();
        assert!(v.isotropic);
        let v = isotropy_over_form_function_field(&form("[1,1]"), &form("<0>"), &b).unwrap();
        assert!(!v.isotropic);
    }
}
