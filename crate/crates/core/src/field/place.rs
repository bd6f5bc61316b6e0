//! Places of `K(t)` and of `K((X))`: valuations and residues.

use super::{factor, laurent, poly, Elem, Field, FieldKind, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// Finite place of `K(t)` given by a monic irreducible polynomial in `t`.
    Poly(Poly),
    /// The degree place `1/t`.
    Infinity,
    /// The canonical place of a Laurent field.
    XAdic,
}

impl Place {
    /// Finite place; checks monic irreducibility when `K` is finite.
    pub fn poly(f: &Field, p: Poly) -> Result<Place> {
        let base = match f.kind() {
            FieldKind::Rational { base, .. } => base,
            _ => return Err(Error::UnsupportedField(format!("finite places need K(t), got {f}"))),
        };
        let p = poly::trimmed(base, p);
        if p.len() < 2 || !base.is_one(poly::lc(&p).expect("nonempty")) {
            return Err(Error::PreconditionViolated("place polynomial must be monic of positive degree".into()));
        }
        if base.is_finite() && !factor::is_irreducible(base, &p)? {
            return Err(Error::PreconditionViolated("place polynomial is reducible".into()));
        }
        Ok(Place::Poly(p))
    }

    fn check(&self, f: &Field) -> Result<()> {
        let ok = matches!(
            (self, f.kind()),
            (Place::Poly(_) | Place::Infinity, FieldKind::Rational { .. })
                | (Place::XAdic, FieldKind::Laurent { .. })
        );
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedField(format!("place {self:?} on {f}")))
        }
    }

    pub fn valuation(&self, f: &Field, x: &Elem) -> Result<i64> {
        self.check(f)?;
        if f.is_zero(x) {
            return Err(Error::ZeroValuation);
        }
        let base = f.base().expect("extension");
        match (self, x) {
            (Place::Poly(p), Elem::Rat(n, d)) => {
                Ok(poly_valuation(base, n, p)? - poly_valuation(base, d, p)?)
            }
            (Place::Infinity, Elem::Rat(n, d)) => Ok(d.len() as i64 - n.len() as i64),
            (Place::XAdic, Elem::Ser(s)) => s.valuation(),
            _ => Err(Error::MixedFields(format!("{f}"), format!("{x:?}"))),
        }
    }

    /// The residue field. Degree-one places reduce to `K` itself.
    pub fn residue_field(&self, f: &Field) -> Result<Field> {
        self.check(f)?;
        let base = f.base().expect("extension");
        match self {
            Place::Poly(p) if p.len() > 2 => base.algebraic(f.var().expect("extension"), p),
            _ => Ok(base.clone()),
        }
    }

    /// Residue of an element of nonnegative valuation, in
    /// [`Place::residue_field`].
    pub fn residue(&self, f: &Field, x: &Elem) -> Result<Elem> {
        self.check(f)?;
        let base = f.base().expect("extension");
        if f.is_zero(x) {
            return Ok(self.residue_field(f)?.zero());
        }
        let v = self.valuation(f, x)?;
        if v < 0 {
            return Err(Error::NegativeValuationResidue(v));
        }
        match (self, x) {
            (Place::XAdic, Elem::Ser(s)) => laurent::residue(base, s),
            (_, Elem::Rat(..)) if v > 0 => Ok(self.residue_field(f)?.zero()),
            (Place::Infinity, Elem::Rat(n, d)) => {
                base.div(poly::lc(n).expect("nonzero"), poly::lc(d).expect("nonzero"))
            }
            (Place::Poly(p), Elem::Rat(n, d)) => {
                let k = self.residue_field(f)?;
                let num = reduce_to(&k, base, n, p)?;
                let den = reduce_to(&k, base, d, p)?;
                k.div(&num, &den)
            }
            _ => Err(Error::MixedFields(format!("{f}"), format!("{x:?}"))),
        }
    }

    /// Short name: the place polynomial, `1/t`, or the Laurent variable.
    pub fn label(&self, f: &Field) -> String {
        let var = f.var().unwrap_or("?");
        match self {
            Place::Poly(p) => f.from_poly(p.clone()).map(|x| f.fmt_elem(&x)).unwrap_or_else(|_| format!("{p:?}")),
            Place::Infinity => format!("1/{var}"),
            Place::XAdic => var.to_string(),
        }
    }

    /// A uniformizer at this place, as an element of `f`.
    pub fn uniformizer(&self, f: &Field) -> Result<Elem> {
        self.check(f)?;
        match self {
            Place::Poly(p) => f.from_poly(p.clone()),
            Place::Infinity => f.inv(&f.var_elem()?),
            Place::XAdic => f.var_elem(),
        }
    }
}

/// Image of a polynomial of `K[t]` in the residue field `k`.
fn reduce_to(k: &Field, base: &Field, a: &[Elem], p: &[Elem]) -> Result<Elem> {
    if p.len() == 2 {
        // t = -p(0) = p(0)
        Ok(poly::eval(base, a, &p[0]))
    } else {
        k.from_poly(poly::rem(base, a, p)?)
    }
}

fn poly_valuation(base: &Field, a: &[Elem], p: &[Elem]) -> Result<i64> {
    let mut v = 0;
    let mut a = a.to_vec();
    loop {
        let (q, r) = poly::divrem(base, &a, p)?;
        if !r.is_empty() {
            return Ok(v);
        }
        v += 1;
        a = q;
    }
}

/// `(v_P(x), residue)`; errors on zero or on negative valuation.
pub fn valuation_residue(f: &Field, x: &Elem, place: &Place) -> Result<(i64, Elem)> {
    let v = place.valuation(f, x)?;
    Ok((v, place.residue(f, x)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2t() -> (Field, Elem) {
        let f = Field::gf2().rational("t").unwrap();
        let t = f.var_elem().unwrap();
        (f, t)
    }

    #[test]
    fn valuation_at_t() {
        let (f, t) = gf2t();
        let at_t = Place::poly(&f, vec![Elem::Gf(0), Elem::Gf(1)]).unwrap();
        let x = f.div(&f.pow(&t, 3).unwrap(), &f.add(&t, &f.one())).unwrap();
        assert_eq!(valuation_residue(&f, &x, &at_t).unwrap(), (3, Elem::Gf(0)));
        let y = f.div(&f.add(&t, &f.one()), &t).unwrap();
        assert_eq!(at_t.valuation(&f, &y).unwrap(), -1);
        assert_eq!(valuation_residue(&f, &y, &at_t), Err(Error::NegativeValuationResidue(-1)));
        assert_eq!(at_t.valuation(&f, &f.zero()), Err(Error::ZeroValuation));
    }

    #[test]
    fn residue_at_t_plus_one() {
        let (f, t) = gf2t();
        let p = Place::poly(&f, vec![Elem::Gf(1), Elem::Gf(1)]).unwrap();
        let x = f.add(&f.add(&f.square(&t), &t), &f.one());
        assert_eq!(valuation_residue(&f, &x, &p).unwrap(), (0, Elem::Gf(1)));
    }

    #[test]
    fn residue_field_of_quadratic_place_is_gf4() {
        let (f, t) = gf2t();
        let p = Place::poly(&f, vec![Elem::Gf(1), Elem::Gf(1), Elem::Gf(1)]).unwrap();
        let k = p.residue_field(&f).unwrap();
        assert_eq!(k.order(), Some(4));
        let r = p.residue(&f, &t).unwrap();
        assert_eq!(k.pow(&r, 3).unwrap(), k.one());
        assert!(Place::poly(&f, vec![Elem::Gf(1), Elem::Gf(0), Elem::Gf(1)]).is_err());
    }

    #[test]
    fn degree_place() {
        let (f, t) = gf2t();
        let x = f.div(&f.one(), &f.add(&f.square(&t), &t)).unwrap();
        assert_eq!(Place::Infinity.valuation(&f, &x).unwrap(), 2);
        assert_eq!(Place::Infinity.valuation(&f, &t).unwrap(), -1);
    }
}
