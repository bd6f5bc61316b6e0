//! Exhaustive isotropy search over finite fields.

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{enumerate, Elem, Field};
use crate::linalg;
use crate::quadform::{GeneralForm, QuadraticForm};

const PAR_THRESHOLD: u64 = 1 << 12;

/// Lexicographically first nonzero `x` (coordinates over `basis`) with
/// `g(Σ x_i basis_i) = 0`, returned in the ambient coordinates of `g`.
///
/// Vectors supported on the last three basis vectors come first in index
/// order and (Chevalley–Warning) already contain an isotropic one, so longer
/// bases are cut to their last three.
pub fn first_isotropic(g: &GeneralForm, basis: &[Vec<Elem>], budget: &Budget) -> Result<Option<Vec<Elem>>> {
    let f = &g.field;
    if !f.is_finite() {
        return Err(Error::UnsupportedField(format!("exhaustive search over {f}")));
    }
    let basis = &basis[basis.len().saturating_sub(3)..];
    let k = basis.len();
    let size = budget.admit(enumerate::count_vectors(f, k), "isotropy search")?;
    let n = g.dim();
    let test = |idx: u64| -> Option<Vec<Elem>> {
        let x = enumerate::vector_at(f, k, idx);
        let v = linalg::combine(f, &x, basis, n);
        f.is_zero(&g.eval(&v)).then_some(v)
    };
    if size <= PAR_THRESHOLD {
        Ok((1..size).find_map(test))
    } else {
        Ok((1..size).into_par_iter().find_map_first(test))
    }
}

pub fn standard_basis(f: &Field, n: usize) -> Vec<Vec<Elem>> {
    (0..n)
        .map(|i| {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            e
        })
        .collect()
}

/// Witness vector, or `None` for ANISOTROPIC (after full exhaustion).
pub fn isotropy_ff(phi: &QuadraticForm, budget: &Budget) -> Result<Option<Vec<Elem>>> {
    let g = phi.to_general();
    first_isotropic(&g, &standard_basis(&phi.field, phi.dim()), budget)
}
