//! `f = a·f_1···f_r·g²` over a finite base: `f ∈ Tg_{F(X)}(φ)` iff
//! `a ∈ Tg_F(φ)` and each `f_k ∈ Tg_{F(X)}(φ)` iff `a ∈ Tg_F(φ)` and `φ`
//! is isotropic over every `F[X]/(f_k)`.

use serde_json::{json, Value};

use super::represent::{represent_irreducible_1var, Representation};
use super::RepresentationCertificate;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::place::Place;
use crate::field::{factor, poly, Elem, Field, FieldKind, Poly};
use crate::isotropy::isotropy_ff;
use crate::quadform::QuadraticForm;
use crate::valuegroups::{descend, express_in_group, membership_bounded, represented_set, representing_vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub factor: Elem,
    pub residue_field: Field,
    /// `φ` isotropic over `F[X]/(f_k)` (exhaustive).
    pub isotropic: bool,
    pub certificate: Option<RepresentationCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EbfReport {
    pub target: Elem,
    pub a: Elem,
    pub odd_factors: Vec<FactorReport>,
    pub square_root: Elem,
    pub a_in_tg: bool,
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    /// Certificate for (i) with power `m`, assembled from (ii).
    pub certificate: Option<RepresentationCertificate>,
    /// Monic `f`: the assembled certificate has `m ≤ deg f`.
    pub monic_bound_ok: Option<bool>,
    /// (i) refuted and cross-checked by a bounded search that found nothing.
    pub bounded_absent: Option<usize>,
}

impl EbfReport {
    pub fn consistent(&self) -> bool {
        self.cond_i == self.cond_ii && self.cond_ii == self.cond_iii && self.monic_bound_ok != Some(false)
    }

    pub fn to_json(&self, ambient: &Field) -> Value {
        let e = |x: &Elem| ambient.fmt_elem(x);
        json!({
            "target": e(&self.target),
            "a": e(&self.a),
            "square_root": e(&self.square_root),
            "a_in_tg": self.a_in_tg,
            "factors": self.odd_factors.iter().map(|r| json!({
                "factor": e(&r.factor),
                "residue_field": r.residue_field.to_string(),
                "isotropic": r.isotropic,
                "certificate": r.certificate.as_ref().map(|c| c.to_json()),
            })).collect::<Vec<_>>(),
            "i": self.cond_i,
            "ii": self.cond_ii,
            "iii": self.cond_iii,
            "certificate": self.certificate.as_ref().map(|c| c.to_json()),
            "monic_bound_ok": self.monic_bound_ok,
            "bounded_absent_at": self.bounded_absent,
            "consistent": self.consistent(),
        })
    }
}

/// Analyze `f ∈ F[X]`; `cross_check` runs a bounded membership search of
/// that degree bound whenever (i) is refuted.
pub fn ebf_analyze(
    phi: &QuadraticForm,
    ambient: &Field,
    target: &Elem,
    cross_check: Option<usize>,
    budget: &Budget,
) -> Result<EbfReport> {
    let FieldKind::Rational { base, .. } = ambient.kind() else {
        return Err(Error::UnsupportedField(format!("expected F(X), got {ambient}")));
    };
    if !base.is_finite() {
        return Err(Error::UnsupportedField(format!("finite base required, got {base}")));
    }
    let phi = descend(phi, base)?;
    let fp = ambient
        .as_poly(target)
        .filter(|p| !p.is_empty())
        .ok_or_else(|| Error::PreconditionViolated("target must be a nonzero polynomial".into()))?;
    let fac = if fp.len() > 1 { factor::factor(base, &fp)? } else { factor::Factorization { lc: fp[0].clone(), factors: vec![] } };
    let a = fac.lc.clone();
    let mut g: Poly = vec![base.one()];
    let mut odd = Vec::new();
    for (p, e) in &fac.factors {
        if e % 2 == 1 {
            odd.push(p.clone());
        }
        g = poly::mul(base, &g, &poly::pow(base, p, (e / 2) as u64));
    }

    let d1 = represented_set(&phi, 1, budget)?;
    let word = express_in_group(&d1, &a);
    let a_in_tg = word.is_some();

    let mut reports = Vec::new();
    for p in &odd {
        let k = Place::Poly(p.clone()).residue_field(ambient)?;
        let isotropic = isotropy_ff(&phi.coefficients_in(&k)?, budget)?.is_some();
        let pe = ambient.from_poly(p.clone())?;
        let certificate = match represent_irreducible_1var(&phi, ambient, &pe, budget)? {
            Representation::Certificate(c) => Some(c),
            Representation::NotRepresentable { .. } => None,
        };
        reports.push(FactorReport { factor: pe, residue_field: k, isotropic, certificate });
    }
    let cond_iii = a_in_tg && reports.iter().all(|r| r.isotropic);
    let cond_ii = a_in_tg && reports.iter().all(|r| r.certificate.is_some());

    let certificate = match (&word, cond_ii) {
        (Some(word), true) => Some(assemble(&phi, ambient, target, word, &g, &reports, budget)?),
        _ => None,
    };
    let cond_i = certificate.is_some();
    let monic_bound_ok = (base.is_one(&a) && fp.len() > 1)
        .then(|| certificate.as_ref().is_none_or(|c| c.power() < fp.len()));
    let bounded_absent = match (cond_i, cross_check) {
        (false, Some(bound)) => match membership_bounded(target, ambient, &phi, 1, bound, budget)? {
            None => Some(bound),
            Some(_) => return Err(Error::CertificateInvalid("bounded search contradicts a refutation".into())),
        },
        _ => None,
    };
    Ok(EbfReport {
        target: target.clone(),
        a: ambient.from_base(a),
        odd_factors: reports,
        square_root: ambient.from_poly(g)?,
        a_in_tg,
        cond_i,
        cond_ii,
        cond_iii,
        certificate,
        monic_bound_ok,
        bounded_absent,
    })
}

fn assemble(
    phi: &QuadraticForm,
    ambient: &Field,
    target: &Elem,
    word: &[Elem],
    g: &Poly,
    reports: &[FactorReport],
    budget: &Budget,
) -> Result<RepresentationCertificate> {
    let base = &phi.field;
    let lift = |v: Vec<Elem>| -> Vec<Elem> { v.into_iter().map(|x| ambient.from_base(x)).collect() };
    let mut vectors: Vec<Vec<Elem>> = Vec::new();
    for s in word {
        let v = representing_vector(phi, s, budget)?.expect("word letters are represented");
        vectors.push(lift(v));
    }
    for r in reports {
        vectors.extend(r.certificate.as_ref().expect("condition (ii)").vectors.iter().cloned());
    }
    if vectors.is_empty() {
        let one = representing_vector(phi, &base.one(), budget)?
            .ok_or_else(|| Error::PreconditionViolated("1 is not represented".into()))?;
        vectors.push(lift(one));
    }
    let ge = ambient.from_poly(g.clone())?;
    for x in vectors[0].iter_mut() {
        *x = ambient.mul(x, &ge);
    }
    let cert = RepresentationCertificate::new(ambient, phi, target.clone(), ambient.one(), vectors)?;
    if !cert.verify()?.pass {
        return Err(Error::CertificateInvalid("assembled (i) certificate does not verify".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(base: &str, form: &str, f: &str) -> EbfReport {
        let b = Field::parse(base).unwrap();
        let amb = b.rational("X").unwrap();
        let phi = QuadraticForm::parse(&b, form).unwrap();
        ebf_analyze(&phi, &amb, &amb.parse_elem(f).unwrap(), Some(2), &Budget::default()).unwrap()
    }

    #[test]
    fn examples() {
        let r = run("GF(2)", "[1,1]", "X*(X+1)*(X^2+X+1)^2");
        assert!(r.consistent());
        assert!(!r.cond_i && !r.cond_iii);
        assert_eq!(r.bounded_absent, Some(2));

        let r = run("GF(2)", "[1,1]", "(X^2+X+1)^2*(X^3+X+1)^2");
        assert!(r.consistent() && r.cond_i && r.odd_factors.is_empty());
        assert!(r.certificate.unwrap().verify().unwrap().pass);

        let r = run("GF(2)", "[1,1]", "X^2+X+1");
        assert!(r.consistent() && r.cond_i && r.cond_ii && r.cond_iii);
        assert_eq!(r.certificate.unwrap().power(), 1);
    }

    #[test]
    fn scalars_over_gf4() {
        let r = run("GF(4)", "[1,w]", "w*(X^2+X+w)");
        assert!(r.consistent());
        let r = run("GF(4)", "<1>+[1,w]", "w*X*(X+1)");
        assert!(r.consistent() && r.cond_i);
    }
}
