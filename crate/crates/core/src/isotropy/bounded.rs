//! Bounded search for polynomial isotropy witnesses over rational towers.

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{enumerate, Elem, Field};
use crate::quadform::QuadraticForm;

/// Monomials of degree `≤ bound` in every tower variable, highest first.
pub fn bounded_monomials(f: &Field, bound: usize) -> Result<Vec<Elem>> {
    let vars = f.variables();
    let per = bound + 1;
    let count = per
        .checked_pow(vars.len() as u32)
        .ok_or_else(|| Error::BudgetExceeded("too many monomials".into()))?;
    let gens = vars.iter().map(|v| f.variable(v)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(count);
    for idx in (0..count).rev() {
        let mut m = f.one();
        let mut rest = idx;
        for g in gens.iter().rev() {
            m = f.mul(&m, &f.pow(g, (rest % per) as i64)?);
            rest /= per;
        }
        out.push(m);
    }
    Ok(out)
}

/// First polynomial vector (lexicographic, each entry of degree `≤ bound`
/// in every variable, ground-field coefficients) with `φ(v) = 0`.
pub fn bounded_isotropy_search(phi: &QuadraticForm, bound: usize, budget: &Budget) -> Result<Option<Vec<Elem>>> {
    let f = &phi.field;
    if !(f.is_rational_tower() || f.is_finite()) {
        return Err(Error::UnsupportedField(format!("bounded search over {f}")));
    }
    let ground = f.ground().clone();
    let monos = if f.is_finite() { vec![f.one()] } else { bounded_monomials(f, bound)? };
    let k = monos.len();
    let n = phi.dim();
    let digits = k * n;
    let size = budget.admit(enumerate::count_vectors(&ground, digits), "bounded isotropy search")?;
    let entry = |ds: &[Elem]| -> Elem {
        ds.iter().zip(&monos).fold(f.zero(), |acc, (c, m)| {
            if ground.is_zero(c) {
                acc
            } else {
                f.add(&acc, &f.mul(&f.embed(&ground, c).expect("ground embeds"), m))
            }
        })
    };
    let test = |idx: u64| -> Option<Vec<Elem>> {
        let ds = enumerate::vector_at(&ground, digits, idx);
        let v: Vec<Elem> = ds.chunks(k).map(entry).collect();
        f.is_zero(&phi.eval_unchecked(&v)).then_some(v)
    };
    if size <= 1 << 12 {
        Ok((1..size).find_map(test))
    } else {
        Ok((1..size).into_par_iter().find_map_first(test))
    }
}
