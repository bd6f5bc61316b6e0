//! One-variable representation `f ∈ D*(φ)^m`, `m ≤ deg f`, for monic
//! irreducible `f` over a finite base, and the inverse direction: an
//! isotropy witness over `F[X]/(f)` from a certificate.

use super::RepresentationCertificate;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::place::Place;
use crate::field::{enumerate, factor, poly, Elem, Field, FieldKind, Poly};
use crate::isotropy::quadext::{quad_ext_isotropy, QuadExt};
use crate::isotropy::{isotropy_ff, witt_decompose};
use crate::quadform::QuadraticForm;
use crate::valuegroups::{descend, represented_set};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    Certificate(RepresentationCertificate),
    /// `φ` is anisotropic over the residue field `F[X]/(f)`.
    NotRepresentable { residue_field: Field },
}

/// An isotropic vector over the residue field `F[X]/(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueWitness {
    pub field: Field,
    pub form: QuadraticForm,
    pub vector: Vec<Elem>,
}

impl ResidueWitness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "residue_field": self.field.to_string(),
            "form": self.form.to_text(),
            "vector": crate::isotropy::vec_json(&self.field, &self.vector),
        })
    }
}

fn base_of(ambient: &Field) -> Result<&Field> {
    match ambient.kind() {
        FieldKind::Rational { base, .. } => Ok(base),
        _ => Err(Error::UnsupportedField(format!("expected F(X), got {ambient}"))),
    }
}

/// `v, w` with `φ(v) = φ(w) = 0` and `b(v,w) = 1`, when `φ` is isotropic
/// and nondefective over a finite field.
pub fn hyperbolic_pair(phi: &QuadraticForm, budget: &Budget) -> Result<Option<(Vec<Elem>, Vec<Elem>)>> {
    let f = &phi.field;
    let Some(v) = isotropy_ff(phi, budget)? else { return Ok(None) };
    let n = phi.dim();
    let Some(w) = (0..n).map(|i| phi.basis_vector(i)).find(|e| !f.is_zero(&phi.polar_unchecked(&v, e))) else {
        return Err(Error::PreconditionViolated("form is defective".into()));
    };
    let inv = f.inv(&phi.polar_unchecked(&v, &w))?;
    let w: Vec<Elem> = w.iter().map(|x| f.mul(x, &inv)).collect();
    let qw = phi.eval_unchecked(&w);
    let w2 = w.iter().zip(&v).map(|(a, b)| f.add(a, &f.mul(&qw, b))).collect();
    Ok(Some((v, w2)))
}

struct Ctx<'a> {
    phi: &'a QuadraticForm,
    amb_phi: QuadraticForm,
    ambient: &'a Field,
    base: &'a Field,
    budget: &'a Budget,
}

impl Ctx<'_> {
    fn to_amb(&self, p: &Poly) -> Elem {
        self.ambient.from_poly(p.clone()).expect("polynomial")
    }

    fn constant(&self, c: &Elem) -> Elem {
        self.ambient.from_base(c.clone())
    }

    fn eval_poly(&self, v: &[Poly]) -> Poly {
        let e: Vec<Elem> = v.iter().map(|p| self.to_amb(p)).collect();
        self.ambient.as_poly(&self.amb_phi.eval_unchecked(&e)).expect("polynomial value")
    }

    /// Vectors over `F(X)` with `Π φ(ξ_i) = f`, or `None` when `φ` is
    /// anisotropic over `F[X]/(f)`.
    fn represent(&self, f: &Poly) -> Result<Option<Vec<Vec<Elem>>>> {
        let (amb, base) = (self.ambient, self.base);
        if let Some((v, w)) = hyperbolic_pair(self.phi, self.budget)? {
            let fx = self.to_amb(f);
            let xi = v.iter().zip(&w).map(|(a, b)| amb.add(&amb.mul(&fx, &self.constant(a)), &self.constant(b))).collect();
            return Ok(Some(vec![xi]));
        }
        let place = Place::Poly(f.clone());
        let k = place.residue_field(amb)?;
        let Some(wit) = isotropy_ff(&self.phi.coefficients_in(&k)?, self.budget)? else { return Ok(None) };
        let deg = f.len() - 1;
        if deg == 2 {
            return self.quadratic(f).map(Some);
        }
        // lift: canonical representatives of degree < deg f
        let mut xi: Vec<Poly> = wit
            .iter()
            .map(|x| match x {
                Elem::Alg(p) => p.clone(),
                c => poly::constant(base, c.clone()),
            })
            .collect();
        let val = self.eval_poly(&xi);
        let ah = poly::div_exact(base, &val, f)?;
        let a = poly::lc(&ah).ok_or_else(|| Error::CertificateInvalid("φ(ξ) vanished".into()))?.clone();
        let mut h = poly::monic(base, &ah)?;

        // strip h_k² when h_k divides every entry
        loop {
            let fac = if h.len() > 1 { factor::factor(base, &h)?.factors } else { vec![] };
            let common = fac.iter().find(|(g, e)| *e >= 2 && xi.iter().all(|p| poly::divides(base, g, p).unwrap_or(false)));
            let Some((g, _)) = common else { break };
            for p in xi.iter_mut() {
                *p = poly::div_exact(base, p, g)?;
            }
            h = poly::div_exact(base, &h, &poly::mul(base, g, g))?;
        }

        let mut vectors: Vec<Vec<Elem>> = vec![xi.iter().map(|p| self.to_amb(p)).collect()];
        if !base.is_one(&a) {
            // 1/a = φ(α/a) with α the top-coefficient vector, φ(α) = a
            let top = xi.iter().filter_map(|p| poly::degree(p)).max().expect("nonzero");
            let ainv = base.inv(&a)?;
            vectors.push(
                xi.iter()
                    .map(|p| self.constant(&base.mul(p.get(top).unwrap_or(&base.zero()), &ainv)))
                    .collect(),
            );
        }
        if h.len() > 1 {
            for (g, e) in factor::factor(base, &h)?.factors {
                let sub = self.represent(&g)?.ok_or_else(|| {
                    Error::CertificateInvalid("a factor of h'' is not representable".into())
                })?;
                let ginv = amb.inv(&self.to_amb(&g))?;
                for _ in 0..e {
                    let mut inv = sub.clone();
                    for x in inv[0].iter_mut() {
                        *x = amb.mul(x, &ginv);
                    }
                    vectors.extend(inv);
                }
            }
        }
        Ok(Some(vectors))
    }

    /// `f = X² + bX + e`: with `X = bY`, `f = b²(Y² + Y + c)`, `c = e/b²`,
    /// and `c'[1,c] ⊆ φ` gives `φ(Y u1 + c' u2) = c'(Y² + Y + c)`.
    fn quadratic(&self, f: &Poly) -> Result<Vec<Vec<Elem>>> {
        let (amb, base) = (self.ambient, self.base);
        let (e, b) = (&f[0], &f[1]);
        if base.is_zero(b) {
            return Err(Error::Unsupported("inseparable quadratic over a finite field".into()));
        }
        let c = base.div(e, &base.square(b))?;
        let v = quad_ext_isotropy(self.phi, &QuadExt::Separable(c), self.budget)?;
        let (Some(cp), [u1, u2]) = (&v.scalar, v.columns.as_slice()) else {
            return Err(Error::CertificateInvalid("separable criterion found no c'".into()));
        };
        let y = amb.div(&amb.var_elem()?, &self.constant(b))?;
        let bx = self.constant(b);
        let xi = u1
            .iter()
            .zip(u2)
            .map(|(p, q)| amb.mul(&bx, &amb.add(&amb.mul(&y, &self.constant(p)), &self.constant(&base.mul(cp, q)))))
            .collect();
        let mut out = vec![xi];
        if !base.is_one(cp) {
            let cinv = base.inv(cp)?;
            out.push(u1.iter().map(|p| self.constant(&base.mul(p, &cinv))).collect());
        }
        Ok(out)
    }
}

/// Certificate for `f ∈ D*(φ)^m` with `m ≤ deg f`, or NOT_REPRESENTABLE.
/// `ambient` is `F(X)`, `φ` lives over the finite field `F`.
pub fn represent_irreducible_1var(
    phi: &QuadraticForm,
    ambient: &Field,
    target: &Elem,
    budget: &Budget,
) -> Result<Representation> {
    let base = base_of(ambient)?;
    let phi = descend(phi, base)?;
    if !base.is_finite() {
        return Err(Error::UnsupportedField(format!("representation needs a finite base, got {base}")));
    }
    let f = ambient
        .as_poly(target)
        .ok_or_else(|| Error::PreconditionViolated("target must be a polynomial".into()))?;
    if f.len() < 2 || !base.is_one(poly::lc(&f).expect("nonzero")) || !factor::is_irreducible(base, &f)? {
        return Err(Error::PreconditionViolated("target must be monic irreducible".into()));
    }
    if witt_decompose(&phi, budget)?.i_d > 0 {
        return Err(Error::PreconditionViolated("φ must be nondefective".into()));
    }
    if !represented_set(&phi, 1, budget)?.contains(&base.one()) {
        return Err(Error::PreconditionViolated("1 must be represented by φ".into()));
    }
    let ctx = Ctx { phi: &phi, amb_phi: phi.coefficients_in(ambient)?, ambient, base, budget };
    match ctx.represent(&f)? {
        None => Ok(Representation::NotRepresentable { residue_field: Place::Poly(f).residue_field(ambient)? }),
        Some(vectors) => {
            let cert = RepresentationCertificate::new(ambient, &phi, target.clone(), ambient.one(), vectors)?;
            if !cert.verify()?.pass {
                return Err(Error::CertificateInvalid("assembled certificate does not verify".into()));
            }
            Ok(Representation::Certificate(cert))
        }
    }
}

/// Append vectors of value 1 until the certificate has power `m`.
pub fn pad_certificate(cert: &RepresentationCertificate, m: usize, budget: &Budget) -> Result<RepresentationCertificate> {
    let f = &cert.field;
    let base = base_of(f)?;
    let phi = descend(&cert.form, base)?;
    let n = phi.dim();
    let size = budget.admit(enumerate::count_vectors(base, n), "padding")?;
    let one = (1..size)
        .map(|i| enumerate::vector_at(base, n, i))
        .find(|v| base.is_one(&phi.eval_unchecked(v)))
        .ok_or_else(|| Error::PreconditionViolated("1 is not represented".into()))?;
    let mut out = cert.clone();
    while out.vectors.len() < m {
        out.vectors.push(one.iter().map(|x| f.from_base(x.clone())).collect());
    }
    Ok(out)
}

/// Isotropic vector over `F[X]/(f)` extracted from a certificate for
/// `a·f` (up to squares): clear denominators, divide out common factors
/// of `f`, then reduce a vector whose value `f` divides.
pub fn certificate_to_isotropy_witness(cert: &RepresentationCertificate, f: &Elem) -> Result<ResidueWitness> {
    let amb = &cert.field;
    let base = base_of(amb)?;
    let invalid = |s: &str| Error::CertificateInvalid(s.to_string());
    if !cert.verify()?.pass {
        return Err(invalid("certificate does not verify"));
    }
    let fp = amb.as_poly(f).ok_or_else(|| invalid("f must be a polynomial"))?;
    let fp = poly::monic(base, &fp)?;
    let place = Place::poly(amb, fp.clone())?;
    let k = place.residue_field(amb)?;
    let phi = &cert.form;
    let res_form = QuadraticForm::new(
        &k,
        phi.planes.iter().map(|(a, b)| Ok((place.residue(amb, a)?, place.residue(amb, b)?))).collect::<Result<_>>()?,
        phi.diagonal.iter().map(|c| place.residue(amb, c)).collect::<Result<_>>()?,
    )
    .map_err(|_| invalid("form coefficients are not integral at f"))?;
    for v in &cert.vectors {
        let mut d = vec![base.one()];
        for x in v {
            let (_, den) = amb.rat_parts(x)?;
            let g = poly::gcd(base, &d, den)?;
            d = poly::div_exact(base, &poly::mul(base, &d, den), &g)?;
        }
        let df = amb.from_poly(d)?;
        let mut ps: Vec<Poly> = v.iter().map(|x| amb.as_poly(&amb.mul(x, &df)).expect("cleared")).collect();
        if ps.iter().all(|p| p.is_empty()) {
            continue;
        }
        while ps.iter().all(|p| poly::divides(base, &fp, p).unwrap_or(false)) {
            for p in ps.iter_mut() {
                *p = poly::div_exact(base, p, &fp)?;
            }
        }
        let xi: Vec<Elem> = ps.iter().map(|p| amb.from_poly(p.clone())).collect::<Result<_>>()?;
        let val = phi.eval_unchecked(&xi);
        if amb.is_zero(&val) || place.valuation(amb, &val)? <= 0 {
            continue;
        }
        let vector: Vec<Elem> = xi.iter().map(|x| place.residue(amb, x)).collect::<Result<_>>()?;
        if vector.iter().all(|x| k.is_zero(x)) || !k.is_zero(&res_form.eval_unchecked(&vector)) {
            return Err(invalid("reduction produced an invalid witness"));
        }
        return Ok(ResidueWitness { field: k, form: res_form, vector });
    }
    Err(invalid("no vector has a value divisible by f"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(base: &str, form: &str) -> (Field, QuadraticForm) {
        let b = Field::parse(base).unwrap();
        let phi = QuadraticForm::parse(&b, form).unwrap();
        (b.rational("X").unwrap(), phi)
    }

    #[test]
    fn examples() {
        let budget = Budget::default();
        let (amb, phi) = setup("GF(2)", "[1,1]");
        let f = amb.parse_elem("X^2+X+1").unwrap();
        let Representation::Certificate(c) = represent_irreducible_1var(&phi, &amb, &f, &budget).unwrap() else { panic!() };
        assert!(c.power() <= 2 && c.verify().unwrap().pass);
        let w = certificate_to_isotropy_witness(&c, &f).unwrap();
        assert_eq!(w.field.order(), Some(4));

        let g = amb.parse_elem("X^3+X+1").unwrap();
        assert!(matches!(
            represent_irreducible_1var(&phi, &amb, &g, &budget).unwrap(),
            Representation::NotRepresentable { .. }
        ));

        let (amb4, phi4) = setup("GF(4)", "[1,w]");
        let quads = factor::irreducibles(amb4.base().unwrap(), 2).unwrap();
        for q in quads {
            let t = amb4.from_poly(q).unwrap();
            let Representation::Certificate(c) = represent_irreducible_1var(&phi4, &amb4, &t, &budget).unwrap() else {
                panic!()
            };
            assert!(c.power() <= 2 && c.verify().unwrap().pass);
        }
    }

    #[test]
    fn witness_from_certificates() {
        let (amb, _) = setup("GF(2)", "H");
        let e = |s: &str| amb.parse_elem(s).unwrap();
        let h = QuadraticForm::parse(&amb, "H").unwrap();
        let c = RepresentationCertificate::new(&amb, &h, e("X"), amb.one(), vec![vec![e("X"), e("1")]]).unwrap();
        let w = certificate_to_isotropy_witness(&c, &e("X")).unwrap();
        assert_eq!(w.vector, vec![Elem::Gf(0), Elem::Gf(1)]);

        // entries all divisible by f: stripped before reduction
        let phi = QuadraticForm::parse(&amb, "[1,1]").unwrap();
        let f = e("X^2+X+1");
        let scaled = vec![vec![e("X*(X^2+X+1)"), e("X^2+X+1")], vec![e("1/(X^2+X+1)"), e("0")]];
        let c = RepresentationCertificate::new(&amb, &phi, f.clone(), amb.one(), scaled).unwrap();
        assert!(c.verify().unwrap().pass);
        assert!(certificate_to_isotropy_witness(&c, &f).is_ok());
    }

    #[test]
    fn higher_degree_recursion() {
        let budget = Budget::default();
        let (amb, phi) = setup("GF(2)", "[1,1]");
        for deg in 3..=6 {
            for p in factor::irreducibles(&Field::gf2(), deg).unwrap() {
                let t = amb.from_poly(p).unwrap();
                match represent_irreducible_1var(&phi, &amb, &t, &budget).unwrap() {
                    Representation::Certificate(c) => {
                        assert_eq!(deg % 2, 0);
                        assert!(c.power() <= deg && c.verify().unwrap().pass);
                    }
                    Representation::NotRepresentable { .. } => assert_eq!(deg % 2, 1),
                }
            }
        }
    }
}
