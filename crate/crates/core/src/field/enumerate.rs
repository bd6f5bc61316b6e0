//! Indexing of finite-field elements and polynomials, plus random sampling.
//!
//! Element indices are the base-`|F|` digits of the coefficient vector
//! (GF(2^k): the bit vector itself). Index order is the search order used
//! by every exhaustive procedure.

use rand::Rng;

use super::{poly, Elem, Field, FieldKind, Poly, Series};
use crate::error::{Error, Result};

pub fn element_at(f: &Field, mut idx: u64) -> Elem {
    match f.kind() {
        FieldKind::Finite { .. } => Elem::Gf(idx as u32),
        FieldKind::Algebraic { base, modulus, .. } => {
            let q = base.order().expect("finite base");
            let mut cs = Vec::with_capacity(modulus.len() - 1);
            for _ in 0..modulus.len() - 1 {
                cs.push(element_at(base, idx % q));
                idx /= q;
            }
            Elem::Alg(poly::trimmed(base, cs))
        }
        _ => panic!("element_at on infinite field {f}"),
    }
}

pub fn index_of(f: &Field, x: &Elem) -> u64 {
    match (f.kind(), x) {
        (FieldKind::Finite { .. }, Elem::Gf(v)) => *v as u64,
        (FieldKind::Algebraic { base, .. }, Elem::Alg(cs)) => {
            let q = base.order().expect("finite base");
            cs.iter().rev().fold(0, |acc, c| acc * q + index_of(base, c))
        }
        _ => panic!("index_of on infinite field {f}"),
    }
}

/// All elements of a finite field, in index order.
pub fn elements(f: &Field) -> Result<Vec<Elem>> {
    let q = order_checked(f)?;
    Ok((0..q).map(|i| element_at(f, i)).collect())
}

pub fn nonzero_elements(f: &Field) -> Result<Vec<Elem>> {
    let q = order_checked(f)?;
    Ok((1..q).map(|i| element_at(f, i)).collect())
}

pub fn order_checked(f: &Field) -> Result<u64> {
    f.order()
        .filter(|&q| q <= 1 << 24)
        .ok_or_else(|| Error::UnsupportedField(format!("{f} is not a small finite field")))
}

/// The monic polynomial of degree `deg` whose lower coefficients have
/// index digits `idx`.
pub fn monic_at(f: &Field, deg: usize, mut idx: u64) -> Poly {
    let q = f.order().expect("finite field");
    let mut p = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        p.push(element_at(f, idx % q));
        idx /= q;
    }
    p.push(f.one());
    p
}

/// Polynomial (not necessarily monic) of degree `< len` from an index.
pub fn poly_at(f: &Field, len: usize, mut idx: u64) -> Poly {
    let q = f.order().expect("finite field");
    let mut p = Vec::with_capacity(len);
    for _ in 0..len {
        p.push(element_at(f, idx % q));
        idx /= q;
    }
    poly::trimmed(f, p)
}

/// The vector of length `n` with index `idx`; the first coordinate is the
/// most significant digit, so index order is lexicographic.
pub fn vector_at(f: &Field, n: usize, mut idx: u64) -> Vec<Elem> {
    let q = f.order().expect("finite field");
    let mut v = vec![f.zero(); n];
    for j in (0..n).rev() {
        v[j] = element_at(f, idx % q);
        idx /= q;
    }
    v
}

pub fn vector_index(f: &Field, v: &[Elem]) -> u64 {
    let q = f.order().expect("finite field");
    v.iter().fold(0, |acc, x| acc * q + index_of(f, x))
}

pub fn count_vectors(f: &Field, n: usize) -> Option<u64> {
    f.order()?.checked_pow(n as u32)
}

pub fn count_monic(f: &Field, deg: usize) -> Option<u64> {
    f.order()?.checked_pow(deg as u32)
}

/// Random element. Polynomial parts of rational levels get degree
/// `<= deg`; Laurent levels get a random valuation in `-2..=2` and a full
/// window.
pub fn random_elem<R: Rng + ?Sized>(f: &Field, rng: &mut R, deg: usize) -> Elem {
    match f.kind() {
        FieldKind::Finite { degree, .. } => Elem::Gf(rng.gen_range(0..(1u32 << degree))),
        FieldKind::Algebraic { base, modulus, .. } => {
            let cs = (0..modulus.len() - 1).map(|_| random_elem(base, rng, deg)).collect();
            Elem::Alg(poly::trimmed(base, cs))
        }
        FieldKind::Rational { base, .. } => {
            let n = random_poly(base, rng, deg);
            let mut d = random_poly(base, rng, deg);
            if d.is_empty() {
                d = vec![base.one()];
            }
            f.rat(n, d).expect("nonzero denominator")
        }
        FieldKind::Laurent { base, precision, .. } => {
            if rng.gen_ratio(1, 16) {
                return f.zero();
            }
            let val = rng.gen_range(-2..=2);
            let mut cs: Vec<Elem> = (0..*precision).map(|_| random_elem(base, rng, deg)).collect();
            while base.is_zero(&cs[0]) {
                cs[0] = random_elem(base, rng, deg);
            }
            Elem::Ser(Series::Known { val, coeffs: cs })
        }
    }
}

pub fn random_nonzero<R: Rng + ?Sized>(f: &Field, rng: &mut R, deg: usize) -> Elem {
    loop {
        let x = random_elem(f, rng, deg);
        if !f.is_zero(&x) {
            return x;
        }
    }
}

pub fn random_poly<R: Rng + ?Sized>(f: &Field, rng: &mut R, deg: usize) -> Poly {
    let cs = (0..=deg).map(|_| random_elem(f, rng, 0)).collect();
    poly::trimmed(f, cs)
}
