//! Dense univariate polynomials over an exact [`Field`], stored low degree
//! first with no trailing zeros. The empty vector is the zero polynomial.

use super::{Elem, Field};
use crate::error::{Error, Result};

pub type Poly = Vec<Elem>;

pub fn trim(f: &Field, p: &mut Poly) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

pub fn trimmed(f: &Field, mut p: Poly) -> Poly {
    trim(f, &mut p);
    p
}

pub fn degree(p: &[Elem]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn lc(p: &[Elem]) -> Option<&Elem> {
    p.last()
}

pub fn constant(f: &Field, c: Elem) -> Poly {
    trimmed(f, vec![c])
}

pub fn monomial(f: &Field, c: Elem, k: usize) -> Poly {
    if f.is_zero(&c) {
        return Vec::new();
    }
    let mut p = vec![f.zero(); k];
    p.push(c);
    p
}

/// `X`
pub fn x(f: &Field) -> Poly {
    vec![f.zero(), f.one()]
}

pub fn is_one(f: &Field, p: &[Elem]) -> bool {
    p.len() == 1 && f.is_one(&p[0])
}

pub fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Poly = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = f.add(o, s);
    }
    trimmed(f, out)
}

pub fn scale(f: &Field, a: &[Elem], c: &Elem) -> Poly {
    if f.is_zero(c) {
        return Vec::new();
    }
    trimmed(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &t);
        }
    }
    trimmed(f, out)
}

/// Multiply by `X^k`.
pub fn shift(f: &Field, a: &[Elem], k: usize) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); k];
    out.extend_from_slice(a);
    out
}

pub fn divrem(f: &Field, a: &[Elem], b: &[Elem]) -> Result<(Poly, Poly)> {
    let db = degree(b).ok_or(Error::DivisionByZero)?;
    let inv_lc = f.inv(&b[db])?;
    let mut r: Poly = a.to_vec();
    trim(f, &mut r);
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &inv_lc);
        let k = dr - db;
        for (i, bi) in b.iter().enumerate() {
            let t = f.mul(&c, bi);
            r[i + k] = f.add(&r[i + k], &t);
        }
        q[k] = c;
        trim(f, &mut r);
    }
    Ok((trimmed(f, q), r))
}

pub fn rem(f: &Field, a: &[Elem], b: &[Elem]) -> Result<Poly> {
    Ok(divrem(f, a, b)?.1)
}

/// Exact division; errors when `b` does not divide `a`.
pub fn div_exact(f: &Field, a: &[Elem], b: &[Elem]) -> Result<Poly> {
    let (q, r) = divrem(f, a, b)?;
    if !r.is_empty() {
        return Err(Error::PreconditionViolated("inexact polynomial division".into()));
    }
    Ok(q)
}

pub fn divides(f: &Field, d: &[Elem], a: &[Elem]) -> Result<bool> {
    Ok(rem(f, a, d)?.is_empty())
}

pub fn monic(f: &Field, a: &[Elem]) -> Result<Poly> {
    match lc(a) {
        None => Ok(Vec::new()),
        Some(c) => {
            let inv = f.inv(c)?;
            Ok(scale(f, a, &inv))
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Result<Poly> {
    let mut x = trimmed(f, a.to_vec());
    let mut y = trimmed(f, b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y)?;
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Result<(Poly, Poly, Poly)> {
    let (mut r0, mut r1) = (trimmed(f, a.to_vec()), trimmed(f, b.to_vec()));
    let (mut s0, mut s1) = (constant(f, f.one()), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), constant(f, f.one()));
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1)?;
        let s2 = add(f, &s0, &mul(f, &q, &s1));
        let t2 = add(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match lc(&r0) {
        None => Ok((r0, s0, t0)),
        Some(c) => {
            let inv = f.inv(c)?;
            Ok((scale(f, &r0, &inv), scale(f, &s0, &inv), scale(f, &t0, &inv)))
        }
    }
}

pub fn eval(f: &Field, p: &[Elem], x: &Elem) -> Elem {
    let mut acc = f.zero();
    for c in p.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// Formal derivative; in characteristic 2 only odd-degree terms survive.
pub fn derivative(f: &Field, p: &[Elem]) -> Poly {
    let out = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| if i % 2 == 1 { c.clone() } else { f.zero() })
        .collect();
    trimmed(f, out)
}

pub fn pow(f: &Field, a: &[Elem], mut e: u64) -> Poly {
    let mut base = a.to_vec();
    let mut acc = constant(f, f.one());
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    acc
}

pub fn mul_mod(f: &Field, a: &[Elem], b: &[Elem], m: &[Elem]) -> Result<Poly> {
    rem(f, &mul(f, a, b), m)
}

/// `a^(2^times) mod m` by repeated squaring.
pub fn square_iter_mod(f: &Field, a: &[Elem], times: u64, m: &[Elem]) -> Result<Poly> {
    let mut r = rem(f, a, m)?;
    for _ in 0..times {
        r = mul_mod(f, &r, &r, m)?;
    }
    Ok(r)
}

/// Substitute `X -> c*X` (so `p(c X)`).
pub fn scale_var(f: &Field, p: &[Elem], c: &Elem) -> Poly {
    let mut pw = f.one();
    let mut out = Vec::with_capacity(p.len());
    for a in p {
        out.push(f.mul(a, &pw));
        pw = f.mul(&pw, c);
    }
    trimmed(f, out)
}

/// Total order used for deterministic output: degree first, then
/// coefficients from the top down by their element order.
pub fn cmp_canonical(a: &[Elem], b: &[Elem]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::gf2()
    }

    fn bits(f: &Field, b: u32) -> Poly {
        let mut p = Vec::new();
        for i in 0..32 {
            p.push(Elem::Gf((b >> i) & 1));
        }
        trimmed(f, p)
    }

    #[test]
    fn divrem_reconstructs() {
        let f = gf2();
        for a in 0..64u32 {
            for b in 1..16u32 {
                let (pa, pb) = (bits(&f, a), bits(&f, b));
                let (q, r) = divrem(&f, &pa, &pb).unwrap();
                assert_eq!(add(&f, &mul(&f, &q, &pb), &r), pa);
                assert!(r.len() < pb.len());
            }
        }
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = Field::gf2k(2).unwrap();
        let a = vec![Elem::Gf(1), Elem::Gf(2), Elem::Gf(3), Elem::Gf(1)];
        let b = vec![Elem::Gf(3), Elem::Gf(1), Elem::Gf(1)];
        let (g, s, t) = ext_gcd(&f, &a, &b).unwrap();
        assert_eq!(add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b)), g);
        assert_eq!(g, gcd(&f, &a, &b).unwrap());
    }

    #[test]
    fn derivative_kills_even_terms() {
        let f = gf2();
        // (x^2 + x + 1)' = 1
        assert_eq!(derivative(&f, &bits(&f, 0b111)), bits(&f, 1));
        assert!(derivative(&f, &bits(&f, 0b10101)).is_empty());
    }
}
