//! Factorization of univariate polynomials over finite fields:
//! square-free split, distinct-degree split, then Cantor–Zassenhaus with
//! the trace map for the equal-degree pieces.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{enumerate, poly, Elem, Field, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub lc: Elem,
    /// Monic irreducible factors with multiplicities, sorted by degree and
    /// then by coefficients.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, f: &Field) -> Poly {
        let mut acc = poly::constant(f, self.lc.clone());
        for (g, m) in &self.factors {
            acc = poly::mul(f, &acc, &poly::pow(f, g, *m as u64));
        }
        acc
    }
}

fn q_log(f: &Field) -> Result<u32> {
    f.finite_degree()
        .ok_or_else(|| Error::UnsupportedField(format!("factorization over {f}")))
}

/// Square root in a finite field (inverse Frobenius).
pub fn finite_sqrt(f: &Field, x: &Elem) -> Elem {
    let d = f.finite_degree().expect("finite field");
    let mut r = x.clone();
    for _ in 1..d {
        r = f.square(&r);
    }
    r
}

fn frobenius_x(f: &Field, m: &[Elem], times: u64) -> Result<Poly> {
    poly::square_iter_mod(f, &poly::x(f), times, m)
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Field, p: &[Elem]) -> Result<bool> {
    let d = q_log(f)? as u64;
    let p = poly::monic(f, p)?;
    let n = match poly::degree(&p) {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n as u64,
    };
    let x = poly::x(f);
    if poly::add(f, &frobenius_x(f, &p, d * n)?, &x) != Vec::<Elem>::new() {
        return Ok(false);
    }
    for r in prime_divisors(n) {
        let h = poly::add(f, &frobenius_x(f, &p, d * (n / r))?, &x);
        if !poly::is_one(f, &poly::gcd(f, &h, &p)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `p(X) = r(X)^2`, `p` having only even-degree terms.
fn poly_sqrt(f: &Field, p: &[Elem]) -> Poly {
    let cs = p.iter().step_by(2).map(|c| finite_sqrt(f, c)).collect();
    poly::trimmed(f, cs)
}

fn square_free(f: &Field, p: &[Elem]) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    let dp = poly::derivative(f, p);
    let mut c = poly::gcd(f, p, &dp)?;
    let mut w = poly::div_exact(f, p, &c)?;
    let mut i = 1;
    while !poly::is_one(f, &w) {
        let y = poly::gcd(f, &w, &c)?;
        let z = poly::div_exact(f, &w, &y)?;
        if !poly::is_one(f, &z) {
            out.push((z, i));
        }
        i += 1;
        c = poly::div_exact(f, &c, &y)?;
        w = y;
    }
    if !poly::is_one(f, &c) {
        for (g, m) in square_free(f, &poly_sqrt(f, &c))? {
            out.push((g, 2 * m));
        }
    }
    Ok(out)
}

fn distinct_degree(f: &Field, p: &[Elem]) -> Result<Vec<(Poly, usize)>> {
    let d = q_log(f)? as u64;
    let x = poly::x(f);
    let mut out = Vec::new();
    let mut rest = p.to_vec();
    let mut h = poly::rem(f, &x, &rest)?;
    let mut i = 1;
    while poly::degree(&rest).unwrap_or(0) >= 2 * i {
        h = poly::square_iter_mod(f, &h, d, &rest)?;
        let g = poly::gcd(f, &poly::add(f, &h, &x), &rest)?;
        if !poly::is_one(f, &g) {
            rest = poly::div_exact(f, &rest, &g)?;
            h = poly::rem(f, &h, &rest)?;
            out.push((g, i));
        }
        i += 1;
    }
    if poly::degree(&rest).unwrap_or(0) > 0 {
        let n = poly::degree(&rest).unwrap();
        out.push((rest, n));
    }
    Ok(out)
}

fn equal_degree(f: &Field, p: &[Elem], deg: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let n = poly::degree(p).unwrap_or(0);
    if n == deg {
        return Ok(vec![p.to_vec()]);
    }
    let kd = q_log(f)? as usize * deg;
    loop {
        let a = enumerate::random_poly(f, rng, n - 1);
        if poly::degree(&a).unwrap_or(0) < 1 {
            continue;
        }
        // trace to GF(2): a + a^2 + ... + a^(2^(kd-1))
        let mut t = a.clone();
        let mut s = a.clone();
        for _ in 1..kd {
            s = poly::mul_mod(f, &s, &s, p)?;
            t = poly::add(f, &t, &s);
        }
        let g = poly::gcd(f, &t, p)?;
        let dg = poly::degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = poly::div_exact(f, p, &g)?;
            let mut out = equal_degree(f, &g, deg, rng)?;
            out.extend(equal_degree(f, &h, deg, rng)?);
            return Ok(out);
        }
    }
}

/// Factor a nonzero polynomial over a finite field.
pub fn factor(f: &Field, p: &[Elem]) -> Result<Factorization> {
    q_log(f)?;
    let p = poly::trimmed(f, p.to_vec());
    let lc = poly::lc(&p).ok_or(Error::ZeroPolynomial)?.clone();
    let m = poly::monic(f, &p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x9f2);
    let mut acc: BTreeMap<SortKey, u32> = BTreeMap::new();
    for (sq, mult) in square_free(f, &m)? {
        for (g, deg) in distinct_degree(f, &sq)? {
            for h in equal_degree(f, &g, deg, &mut rng)? {
                *acc.entry(SortKey(h)).or_insert(0) += mult;
            }
        }
    }
    Ok(Factorization { lc, factors: acc.into_iter().map(|(k, m)| (k.0, m)).collect() })
}

#[derive(PartialEq, Eq)]
struct SortKey(Poly);

impl PartialOrd for SortKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SortKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        poly::cmp_canonical(&self.0, &other.0)
    }
}

/// Monic irreducible polynomials of the given degree, in index order.
pub fn irreducibles(f: &Field, deg: usize) -> Result<Vec<Poly>> {
    if deg == 0 {
        return Err(Error::PreconditionViolated("degree must be positive".into()));
    }
    let total = enumerate::count_monic(f, deg)
        .filter(|&n| n <= 1 << 26)
        .ok_or_else(|| Error::BudgetExceeded(format!("too many degree-{deg} polynomials over {f}")))?;
    let mut out = Vec::new();
    for idx in 0..total {
        let p = enumerate::monic_at(f, deg, idx);
        if is_irreducible(f, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Number of monic irreducibles of degree `n` over GF(q) (necklace count).
pub fn necklace_count(q: u64, n: u64) -> u64 {
    let mut total: i128 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += mobius(n / d) as i128 * (q as i128).pow(d as u32);
        }
    }
    (total / n as i128) as u64
}

fn mobius(mut n: u64) -> i64 {
    let mut res = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gf2k;

    fn bits(b: u32) -> Poly {
        let f = Field::gf2();
        poly::trimmed(&f, (0..32).map(|i| Elem::Gf((b >> i) & 1)).collect())
    }

    #[test]
    fn small_examples() {
        let f = Field::gf2();
        let r = factor(&f, &bits(0b110)).unwrap();
        assert_eq!(r.factors, vec![(bits(0b10), 1), (bits(0b11), 1)]);
        let r = factor(&f, &bits(0b111)).unwrap();
        assert_eq!(r.factors, vec![(bits(0b111), 1)]);
        let r = factor(&f, &bits(0b10101)).unwrap();
        assert_eq!(r.factors, vec![(bits(0b111), 2)]);
        assert_eq!(factor(&f, &[]), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn exhaustive_product_roundtrip_deg_8() {
        let f = Field::gf2();
        for b in 1u32..(1 << 9) {
            let p = bits(b);
            let r = factor(&f, &p).unwrap();
            assert_eq!(r.expand(&f), p, "b={b:#b}");
            for (g, _) in &r.factors {
                assert!(is_irreducible(&f, g).unwrap());
            }
        }
    }

    #[test]
    fn gf4_factorization_roundtrip() {
        let f = Field::gf2k(2).unwrap();
        for idx in 0..4u64.pow(4) {
            let p = poly::scale(&f, &enumerate::monic_at(&f, 4, idx), &Elem::Gf(3));
            let r = factor(&f, &p).unwrap();
            assert_eq!(r.lc, Elem::Gf(3));
            assert_eq!(r.expand(&f), p);
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        let f = Field::gf2();
        assert_eq!(irreducibles(&f, 2).unwrap(), vec![bits(0b111)]);
        assert_eq!(irreducibles(&f, 3).unwrap(), vec![bits(0b1011), bits(0b1101)]);
        for n in 1..=8 {
            assert_eq!(irreducibles(&f, n).unwrap().len() as u64, necklace_count(2, n as u64));
        }
        let g = Field::gf2k(2).unwrap();
        assert_eq!(irreducibles(&g, 1).unwrap().len(), 4);
        for n in 1..=3 {
            assert_eq!(irreducibles(&g, n).unwrap().len() as u64, necklace_count(4, n as u64));
        }
    }

    #[test]
    fn pinned_moduli_are_irreducible() {
        let f = Field::gf2();
        for k in 1..=gf2k::MAX_DEGREE {
            assert!(is_irreducible(&f, &bits(gf2k::modulus(k).unwrap())).unwrap(), "k={k}");
        }
    }
}
