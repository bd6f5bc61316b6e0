//! Quasilinear forms over rational towers: isotropy is linear dependence
//! over the square subfield, read off the 2-basis expansion.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{poly, twobasis, Elem, Field, FieldKind};
use crate::linalg::{self, Matrix};

fn check_field(f: &Field) -> Result<()> {
    if f.is_rational_tower() || f.is_finite() && matches!(f.kind(), FieldKind::Finite { .. }) {
        Ok(())
    } else {
        Err(Error::UnsupportedField(format!("square-class linear algebra over {f}")))
    }
}

/// Rows are 2-basis monomials, columns the entries `cs`: entry `(m, i)` is
/// the coefficient `d` with `c_i = Σ_m m·d²`.
pub fn phi_matrix(f: &Field, cs: &[Elem]) -> Result<(Vec<twobasis::Monomial>, Matrix)> {
    check_field(f)?;
    let tables: Vec<_> = cs.iter().map(|c| twobasis::decompose(f, c)).collect::<Result<_>>()?;
    let monos: BTreeSet<_> = tables.iter().flat_map(|t| t.keys().copied()).collect();
    let monos: Vec<_> = monos.into_iter().collect();
    let m = monos
        .iter()
        .map(|k| tables.iter().map(|t| t.get(k).cloned().unwrap_or_else(|| f.zero())).collect())
        .collect();
    Ok((monos, m))
}

/// Dimension of the span of `cs` over `F²`.
pub fn span_rank(f: &Field, cs: &[Elem]) -> Result<usize> {
    let (_, m) = phi_matrix(f, cs)?;
    linalg::rank(f, &m)
}

/// Indices of a maximal 2-independent subfamily, greedy from the left.
pub fn independent_entries(f: &Field, cs: &[Elem]) -> Result<Vec<usize>> {
    let (_, m) = phi_matrix(f, cs)?;
    Ok(linalg::rref(f, &m)?.1)
}

/// `F²`-span of `a` equals that of `b`.
pub fn span_equal(f: &Field, a: &[Elem], b: &[Elem]) -> Result<bool> {
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    let r = span_rank(f, &both)?;
    Ok(span_rank(f, a)? == r && span_rank(f, b)? == r)
}

/// `x` lies in the `F²`-span of `cs`.
pub fn in_span(f: &Field, cs: &[Elem], x: &Elem) -> Result<bool> {
    let mut all = cs.to_vec();
    all.push(x.clone());
    Ok(span_rank(f, &all)? == span_rank(f, cs)?)
}

/// All vectors `λ` (a basis of them) with `Σ λ_i² c_i = 0`.
pub fn dependencies(f: &Field, cs: &[Elem]) -> Result<Vec<Vec<Elem>>> {
    let (_, m) = phi_matrix(f, cs)?;
    let ker = linalg::kernel(f, &m, cs.len())?;
    ker.into_iter().map(|v| clear_denominators(f, v)).collect()
}

/// First dependency (free column order), or `None` when the entries are
/// 2-independent.
pub fn quasilinear_isotropy_tower(f: &Field, cs: &[Elem]) -> Result<Option<Vec<Elem>>> {
    Ok(dependencies(f, cs)?.into_iter().next())
}

/// Multiply `v` by a common denominator so every entry is a polynomial at
/// every level of the tower.
pub fn clear_denominators(f: &Field, v: Vec<Elem>) -> Result<Vec<Elem>> {
    let d = common_denominator(f, &v)?;
    Ok(v.iter().map(|x| f.mul(x, &d)).collect())
}

fn common_denominator(f: &Field, xs: &[Elem]) -> Result<Elem> {
    let FieldKind::Rational { base, .. } = f.kind() else { return Ok(f.one()) };
    let mut l = vec![base.one()];
    for x in xs {
        let (_, d) = f.rat_parts(x)?;
        let g = poly::gcd(base, &l, d)?;
        l = poly::div_exact(base, &poly::mul(base, &l, d), &g)?;
    }
    let lf = f.from_poly(l.clone())?;
    let mut coeffs = Vec::new();
    for x in xs {
        if let Some(p) = f.as_poly(&f.mul(x, &lf)) {
            coeffs.extend(p);
        }
    }
    let inner = common_denominator(base, &coeffs)?;
    Ok(f.mul(&lf, &f.from_base(inner)))
}
