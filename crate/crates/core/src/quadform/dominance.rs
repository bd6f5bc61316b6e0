//! Embeddings `σ ≺ φ` (restriction to a subspace) and `σ ⊆ φ`
//! (orthogonal summand) over small finite fields.

use super::{GeneralForm, QuadraticForm};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::field::{enumerate, Elem};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingMode {
    Dominance,
    Subform,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// Images of the basis vectors of `σ`, in the coordinates of `φ`.
    pub columns: Vec<Vec<Elem>>,
    /// Subform mode: `ψ` with `φ ≅ σ ⊥ ψ`, and its basis.
    pub complement: Option<(QuadraticForm, Vec<Vec<Elem>>)>,
}

impl Embedding {
    pub fn to_json(&self, phi: &QuadraticForm) -> serde_json::Value {
        let f = &phi.field;
        let cols: Vec<_> = self.columns.iter().map(|c| crate::isotropy::vec_json(f, c)).collect();
        let mut out = serde_json::json!({ "columns": cols });
        if let Some((psi, basis)) = &self.complement {
            out["complement"] = psi.to_text().into();
            out["complement_basis"] = basis.iter().map(|c| crate::isotropy::vec_json(f, c)).collect::<Vec<_>>().into();
        }
        out
    }
}

/// First embedding in lexicographic order of column tuples, or `None`
/// after exhausting every candidate.
pub fn dominance_search(
    sigma: &QuadraticForm,
    phi: &QuadraticForm,
    mode: EmbeddingMode,
    budget: &Budget,
) -> Result<Option<Embedding>> {
    let f = &phi.field;
    if sigma.field != *f {
        return Err(Error::MixedFields(sigma.field.to_string(), f.to_string()));
    }
    if !f.is_finite() {
        return Err(Error::UnsupportedField(format!("embedding search over {f}")));
    }
    let (n, k) = (phi.dim(), sigma.dim());
    if k > n {
        return Ok(None);
    }
    let size = budget.admit(enumerate::count_vectors(f, n), "embedding search")?;
    let s = sigma.to_general();
    let meter = Meter::new(budget);

    // candidates for column i: vectors with φ(v) = σ(e_i)
    let mut values: Vec<(Elem, Vec<Vec<Elem>>)> = Vec::new();
    for q in &s.q {
        if !values.iter().any(|(x, _)| x == q) {
            values.push((q.clone(), Vec::new()));
        }
    }
    for idx in 1..size {
        let v = enumerate::vector_at(f, n, idx);
        let val = phi.eval_unchecked(&v);
        for (x, list) in values.iter_mut() {
            if *x == val {
                list.push(v.clone());
            }
        }
    }
    let cands: Vec<&Vec<Vec<Elem>>> =
        s.q.iter().map(|q| &values.iter().find(|(x, _)| x == q).expect("listed").1).collect();

    let mut chosen = Vec::with_capacity(k);
    let found = extend(phi, &s, &cands, mode, &meter, &mut chosen)?;
    Ok(found)
}

fn extend(
    phi: &QuadraticForm,
    s: &GeneralForm,
    cands: &[&Vec<Vec<Elem>>],
    mode: EmbeddingMode,
    meter: &Meter,
    chosen: &mut Vec<Vec<Elem>>,
) -> Result<Option<Embedding>> {
    let f = &phi.field;
    let i = chosen.len();
    if i == cands.len() {
        return finish(phi, mode, chosen);
    }
    meter.charge(cands[i].len() as u64, "embedding search")?;
    for v in cands[i] {
        let polar_ok = chosen.iter().enumerate().all(|(j, u)| phi.polar_unchecked(u, v) == s.b[j][i]);
        if !polar_ok {
            continue;
        }
        chosen.push(v.clone());
        if linalg::rank(f, chosen)? == chosen.len() {
            if let Some(e) = extend(phi, s, cands, mode, meter, chosen)? {
                return Ok(Some(e));
            }
        }
        chosen.pop();
    }
    Ok(None)
}

fn finish(phi: &QuadraticForm, mode: EmbeddingMode, cols: &[Vec<Elem>]) -> Result<Option<Embedding>> {
    let columns = cols.to_vec();
    if mode == EmbeddingMode::Dominance {
        return Ok(Some(Embedding { columns, complement: None }));
    }
    let f = &phi.field;
    let n = phi.dim();
    let g = phi.to_general();
    // U^⊥ = kernel of the rows u^T B
    let rows: Vec<Vec<Elem>> = cols.iter().map(|u| (0..n).map(|j| g.polar(u, &phi.basis_vector(j))).collect()).collect();
    let perp = if rows.is_empty() { crate::isotropy::ff::standard_basis(f, n) } else { linalg::kernel(f, &rows, n)? };
    // complement of U ∩ U^⊥ inside U^⊥, taken greedily after U
    let mut span = columns.clone();
    let mut w = Vec::new();
    for v in perp {
        span.push(v.clone());
        if linalg::rank(f, &span)? == span.len() {
            w.push(v);
        } else {
            span.pop();
        }
    }
    if span.len() != n {
        return Ok(None);
    }
    let (psi, basis) = GeneralForm::restrict(phi, &w).normalize()?;
    let basis = basis.iter().map(|c| linalg::combine(f, c, &w, n)).collect();
    Ok(Some(Embedding { columns, complement: Some((psi, basis)) }))
}
