//! Solving `y^2 + y = x`.

use super::{enumerate, poly, Elem, Field, FieldKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AsSolution {
    Root(Elem),
    /// No root exists (`proof`) or none was found within the bound.
    Absent { proof: bool },
}

/// `℘(y) = y^2 + y`
pub fn wp(f: &Field, y: &Elem) -> Elem {
    f.add(&f.square(y), y)
}

/// Over finite fields the decision is exact and the root returned is the
/// one of smaller index. Over `K(t)` with `K` finite it is also exact.
/// Deeper towers are decided exactly for polynomial `x`; other inputs get
/// `Absent { proof: false }` unless the denominator already rules out a
/// root. `degree_bound` caps the degree of polynomial roots tried there.
pub fn solve(f: &Field, x: &Elem, degree_bound: usize) -> Result<AsSolution> {
    if f.is_zero(x) {
        return Ok(AsSolution::Root(f.zero()));
    }
    if f.is_finite() {
        return solve_finite(f, x);
    }
    match f.kind() {
        FieldKind::Rational { base, .. } if base.is_finite() => solve_rational(f, base, x),
        FieldKind::Rational { .. } => solve_bounded(f, x, degree_bound),
        _ => Err(Error::UnsupportedField(format!("Artin-Schreier over {f}"))),
    }
}

fn solve_finite(f: &Field, x: &Elem) -> Result<AsSolution> {
    let d = f.finite_degree().expect("finite");
    if d > 63 {
        return Err(Error::UnsupportedField(format!("{f} too large")));
    }
    let cols: Vec<u128> = (0..d)
        .map(|j| enumerate::index_of(f, &wp(f, &enumerate::element_at(f, 1 << j))) as u128)
        .collect();
    match gf2_solve(&cols, enumerate::index_of(f, x) as u128) {
        None => Ok(AsSolution::Absent { proof: true }),
        Some(y) => {
            // the other root is y + 1 (index ^ 1)
            Ok(AsSolution::Root(enumerate::element_at(f, y.min(y ^ 1))))
        }
    }
}

/// `K(t)`, `K` finite. In lowest terms `y = n/d` gives `x = (n^2+nd)/d^2`,
/// so the denominator of `x` must be a square `d^2` and
/// `deg n <= max(deg d, deg(num x)/2)`; the remaining equation is
/// GF(2)-linear in the coefficients of `n`.
fn solve_rational(f: &Field, base: &Field, x: &Elem) -> Result<AsSolution> {
    let (p, q) = f.rat_parts(x)?;
    let Some(Elem::Rat(d, one)) = super::twobasis::is_square(f, &f.rat(q.clone(), vec![base.one()])?) else {
        return Ok(AsSolution::Absent { proof: true });
    };
    debug_assert_eq!(one.len(), 1);
    let bound = (d.len().max(1) - 1).max((p.len().max(1) - 1) / 2);
    let kd = base.finite_degree().expect("finite") as usize;
    let unknowns = (bound + 1) * kd;
    if unknowns > 63 {
        return Err(Error::BudgetExceeded("Artin-Schreier system too large".into()));
    }
    let out_len = 2 * bound + d.len() + 1;
    let encode = |r: &[Elem]| -> u128 {
        let mut acc = 0u128;
        for (i, c) in r.iter().enumerate() {
            acc |= (enumerate::index_of(base, c) as u128) << (i * kd);
        }
        acc
    };
    if out_len * kd > 128 {
        return Err(Error::BudgetExceeded("Artin-Schreier system too large".into()));
    }
    let map = |n: &[Elem]| poly::add(base, &poly::mul(base, n, n), &poly::mul(base, n, &d));
    let cols: Vec<u128> = (0..unknowns)
        .map(|j| {
            let n = poly::trimmed(
                base,
                (0..=bound)
                    .map(|i| if i == j / kd { enumerate::element_at(base, 1 << (j % kd)) } else { base.zero() })
                    .collect(),
            );
            encode(&map(&n))
        })
        .collect();
    let target = encode(p);
    match gf2_solve(&cols, target) {
        None => Ok(AsSolution::Absent { proof: true }),
        Some(sol) => {
            let n: Vec<Elem> = (0..=bound)
                .map(|i| enumerate::element_at(base, (sol >> (i * kd)) & ((1 << kd) - 1)))
                .collect();
            Ok(AsSolution::Root(f.rat(n, d.clone())?))
        }
    }
}

/// `K(t)` over an infinite rational tower `K`.
fn solve_bounded(f: &Field, x: &Elem, degree_bound: usize) -> Result<AsSolution> {
    let base = f.base().expect("extension");
    let (p, q) = f.rat_parts(x)?;
    if super::twobasis::is_square(f, &f.rat(q.clone(), vec![base.one()])?).is_none() {
        return Ok(AsSolution::Absent { proof: true });
    }
    if q.len() != 1 {
        return Ok(AsSolution::Absent { proof: false });
    }
    // n^2 + n = p with n a polynomial; coefficients fixed from the top down
    let dp = p.len() - 1;
    if dp % 2 == 1 {
        return Ok(AsSolution::Absent { proof: true });
    }
    let dn = dp / 2;
    if dn > degree_bound {
        return Ok(AsSolution::Absent { proof: false });
    }
    let mut n = vec![base.zero(); dn + 1];
    for j in (1..=dn).rev() {
        let rhs = if 2 * j <= dn { base.add(&p[2 * j], &n[2 * j]) } else { p[2 * j].clone() };
        match super::twobasis::is_square(base, &rhs) {
            Some(r) => n[j] = r,
            None => return Ok(AsSolution::Absent { proof: true }),
        }
    }
    match solve(base, &p[0], degree_bound)? {
        AsSolution::Root(r) => n[0] = r,
        absent => return Ok(absent),
    }
    let y = f.from_poly(n)?;
    if wp(f, &y) == *x {
        Ok(AsSolution::Root(y))
    } else {
        Ok(AsSolution::Absent { proof: true })
    }
}

/// Solve `A y = b` over GF(2), columns of `A` given as bitmasks.
fn gf2_solve(cols: &[u128], b: u128) -> Option<u64> {
    let mut basis: Vec<(u128, u64)> = Vec::new();
    for (j, &c) in cols.iter().enumerate() {
        let mut v = c;
        let mut comb = 1u64 << j;
        for &(bv, bc) in &basis {
            if v ^ bv < v {
                v ^= bv;
                comb ^= bc;
            }
        }
        if v != 0 {
            basis.push((v, comb));
            basis.sort_by(|a, b| b.0.cmp(&a.0));
        }
    }
    let mut v = b;
    let mut comb = 0u64;
    for &(bv, bc) in &basis {
        if v ^ bv < v {
            v ^= bv;
            comb ^= bc;
        }
    }
    (v == 0).then_some(comb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_examples() {
        assert_eq!(solve(&Field::gf2(), &Elem::Gf(1), 0).unwrap(), AsSolution::Absent { proof: true });
        let g = Field::gf2k(2).unwrap();
        assert_eq!(solve(&g, &Elem::Gf(1), 0).unwrap(), AsSolution::Root(Elem::Gf(2)));
        assert_eq!(solve(&g, &g.zero(), 0).unwrap(), AsSolution::Root(g.zero()));
    }

    #[test]
    fn trace_criterion_gf16() {
        let f = Field::gf2k(4).unwrap();
        for x in 0..16 {
            let x = Elem::Gf(x);
            let tr = crate::field::gf2k::trace(match x { Elem::Gf(v) => v, _ => 0 }, 4, 0x13);
            match solve(&f, &x, 0).unwrap() {
                AsSolution::Root(y) => {
                    assert_eq!(tr, 0);
                    assert_eq!(wp(&f, &y), x);
                }
                AsSolution::Absent { proof } => assert!(proof && tr == 1),
            }
        }
    }

    #[test]
    fn rational_function_field() {
        let f = Field::gf2().rational("t").unwrap();
        let t = f.var_elem().unwrap();
        // y = t/(t+1)
        let y = f.div(&t, &f.add(&t, &f.one())).unwrap();
        match solve(&f, &wp(&f, &y), 4).unwrap() {
            AsSolution::Root(r) => assert_eq!(wp(&f, &r), wp(&f, &y)),
            other => panic!("{other:?}"),
        }
        assert_eq!(solve(&f, &t, 4).unwrap(), AsSolution::Absent { proof: true });
        assert_eq!(solve(&f, &f.one(), 4).unwrap(), AsSolution::Absent { proof: true });
    }

    #[test]
    fn two_variable_tower_polynomial_case() {
        let f = Field::gf2k(2).unwrap().rational("s").unwrap().rational("t").unwrap();
        let (s, t) = (f.variable("s").unwrap(), f.variable("t").unwrap());
        let y = f.add(&f.mul(&s, &f.square(&t)), &f.add(&t, &f.generator()));
        let x = wp(&f, &y);
        match solve(&f, &x, 4).unwrap() {
            AsSolution::Root(r) => assert_eq!(wp(&f, &r), x),
            other => panic!("{other:?}"),
        }
        assert_eq!(solve(&f, &t, 4).unwrap(), AsSolution::Absent { proof: true });
    }
}
