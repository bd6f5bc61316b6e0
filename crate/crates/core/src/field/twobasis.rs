//! Decomposition over the 2-basis of a rational tower.
//!
//! Over `K = F_q(t_1, ..., t_n)` every `x` has a unique expansion
//! `x = Σ_m m · c_m²` where `m` runs over square-free monomials in the
//! tower variables. Monomials are bitmasks, bit `j` standing for the
//! `j`-th variable counted from the bottom.

use std::collections::BTreeMap;

use super::{factor, poly, Elem, Field, FieldKind, Series};
use crate::error::{Error, Result};

pub type Monomial = u64;
pub type TwoBasis = BTreeMap<Monomial, Elem>;

pub fn decompose(f: &Field, x: &Elem) -> Result<TwoBasis> {
    let mut out = BTreeMap::new();
    match f.kind() {
        FieldKind::Finite { .. } => {
            if !f.is_zero(x) {
                out.insert(0, factor::finite_sqrt(f, x));
            }
        }
        FieldKind::Rational { base, .. } => {
            let level = base.variables().len();
            if level >= 63 {
                return Err(Error::UnsupportedField("tower too tall".into()));
            }
            let (n, d) = f.rat_parts(x)?;
            let p = poly::mul(base, n, d);
            let mut parts: BTreeMap<Monomial, Vec<Elem>> = BTreeMap::new();
            for (i, a) in p.iter().enumerate() {
                let parity = (i % 2) as u64;
                for (m, c) in decompose(base, a)? {
                    let key = m | (parity << level);
                    let r = parts.entry(key).or_default();
                    let j = i / 2;
                    if r.len() <= j {
                        r.resize(j + 1, base.zero());
                    }
                    r[j] = c;
                }
            }
            for (m, r) in parts {
                let r = poly::trimmed(base, r);
                if !r.is_empty() {
                    out.insert(m, f.rat(r, d.clone())?);
                }
            }
        }
        _ => {
            return Err(Error::UnsupportedField(format!(
                "2-basis decomposition needs a rational tower over a finite field, got {f}"
            )))
        }
    }
    Ok(out)
}

/// The monomial `m` as an element of `f`.
pub fn monomial_elem(f: &Field, m: Monomial) -> Result<Elem> {
    let vars = f.variables();
    let mut acc = f.one();
    for (j, v) in vars.iter().enumerate() {
        if m >> j & 1 == 1 {
            acc = f.mul(&acc, &f.variable(v)?);
        }
    }
    Ok(acc)
}

pub fn reassemble(f: &Field, table: &TwoBasis) -> Result<Elem> {
    let mut acc = f.zero();
    for (m, c) in table {
        acc = f.add(&acc, &f.mul(&monomial_elem(f, *m)?, &f.square(c)));
    }
    Ok(acc)
}

/// Square root if `x` is a square.
pub fn is_square(f: &Field, x: &Elem) -> Option<Elem> {
    if f.is_finite() {
        return Some(factor::finite_sqrt(f, x));
    }
    match f.kind() {
        FieldKind::Rational { .. } => {
            if f.is_rational_tower() {
                if !tower_square_test(f, x) {
                    return None;
                }
                let t = decompose(f, x).ok()?;
                match t.len() {
                    0 => Some(f.zero()),
                    1 => t.get(&0).cloned(),
                    _ => None,
                }
            } else {
                rational_sqrt(f, x)
            }
        }
        FieldKind::Laurent { base, precision, .. } => {
            let s = match x {
                Elem::Ser(s) => s,
                _ => return None,
            };
            match s {
                Series::Zero => Some(f.zero()),
                Series::Unknown { order } => {
                    Some(Elem::Ser(Series::Unknown { order: order.div_euclid(2) }))
                }
                Series::Known { val, coeffs } => {
                    if val % 2 != 0 {
                        return None;
                    }
                    let mut root = Vec::new();
                    for (i, c) in coeffs.iter().enumerate() {
                        if i % 2 == 1 {
                            if !base.is_zero(c) {
                                return None;
                            }
                        } else {
                            root.push(is_square(base, c)?);
                        }
                    }
                    Some(Elem::Ser(Series::from_window(base, val / 2, root, *precision)))
                }
            }
        }
        _ => None,
    }
}

/// Square root in `K(t)` for exact `K` other than rational towers:
/// numerator and denominator must both be squares of polynomials.
/// Squareness in a rational tower over a finite field: `n/d` is a square
/// iff `n·d` has only even exponents with square coefficients.
fn tower_square_test(f: &Field, x: &Elem) -> bool {
    match (f.kind(), x) {
        (FieldKind::Finite { .. }, _) => true,
        (FieldKind::Rational { base, .. }, Elem::Rat(n, d)) => poly::mul(base, n, d)
            .iter()
            .enumerate()
            .all(|(i, c)| if i % 2 == 1 { base.is_zero(c) } else { tower_square_test(base, c) }),
        _ => true,
    }
}

fn rational_sqrt(f: &Field, x: &Elem) -> Option<Elem> {
    let base = f.base()?;
    let (n, d) = f.rat_parts(x).ok()?;
    let sq = |p: &Vec<Elem>| -> Option<Vec<Elem>> {
        let mut r = Vec::new();
        for (i, c) in p.iter().enumerate() {
            if i % 2 == 1 {
                if !base.is_zero(c) {
                    return None;
                }
            } else {
                r.push(is_square(base, c)?);
            }
        }
        Some(r)
    };
    f.rat(sq(n)?, sq(d)?).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::enumerate::random_elem;
    use rand::SeedableRng;

    fn st() -> Field {
        Field::gf2().rational("s").unwrap().rational("t").unwrap()
    }

    #[test]
    fn decomposes_s_plus_t_squared() {
        let f = st();
        let (s, t) = (f.variable("s").unwrap(), f.variable("t").unwrap());
        let x = f.add(&s, &f.square(&t));
        let d = decompose(&f, &x).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[&0b01], f.one());
        assert_eq!(d[&0b00], t);
        assert_eq!(decompose(&f, &f.one()).unwrap(), BTreeMap::from([(0, f.one())]));
    }

    #[test]
    fn roundtrip_random_tower_elements() {
        let f = Field::gf2k(2).unwrap().rational("s").unwrap().rational("t").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let x = random_elem(&f, &mut rng, 3);
            let d = decompose(&f, &x).unwrap();
            assert_eq!(reassemble(&f, &d).unwrap(), x);
        }
    }

    #[test]
    fn square_tests() {
        let g = Field::gf2k(2).unwrap();
        assert_eq!(is_square(&g, &Elem::Gf(2)), Some(Elem::Gf(3)));
        let f = Field::gf2().rational("t").unwrap();
        let t = f.var_elem().unwrap();
        assert_eq!(is_square(&f, &t), None);
        let r = f.div(&f.add(&t, &f.one()), &f.square(&t)).unwrap();
        assert_eq!(is_square(&f, &f.square(&r)), Some(r));
    }

    #[test]
    fn laurent_rejected_by_decompose() {
        let f = Field::gf2().laurent("X", 8).unwrap();
        assert!(matches!(decompose(&f, &f.one()), Err(Error::UnsupportedField(_))));
    }
}
