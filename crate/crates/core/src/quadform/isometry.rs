//! Isometry by complete invariants in the two decidable regimes.

use serde::Serialize;

use super::QuadraticForm;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::artin_schreier::{self, AsSolution};
use crate::isotropy::{quasilinear, witt_decompose};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryRegime {
    FiniteField,
    QuasilinearTower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    #[serde(rename = "type")]
    pub type_: (usize, usize),
    pub i_w: usize,
    pub i_d: usize,
    pub anisotropic_dim: usize,
    /// Arf invariant of a nonsingular form over a finite field.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arf: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryVerdict {
    pub isometric: bool,
    pub regime: IsometryRegime,
    pub left: Invariants,
    pub right: Invariants,
    /// Quasilinear regime: the `F²`-spans of the diagonals agree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spans_equal: Option<bool>,
}

pub fn isometry_test(phi: &QuadraticForm, psi: &QuadraticForm, budget: &Budget) -> Result<IsometryVerdict> {
    if phi.field != psi.field {
        return Err(Error::MixedFields(phi.field.to_string(), psi.field.to_string()));
    }
    let f = &phi.field;
    if f.is_finite() {
        let (l, r) = (finite_invariants(phi, budget)?, finite_invariants(psi, budget)?);
        return Ok(IsometryVerdict { isometric: l == r, regime: IsometryRegime::FiniteField, left: l, right: r, spans_equal: None });
    }
    if phi.is_quasilinear() && psi.is_quasilinear() && f.is_rational_tower() {
        let (l, r) = (quasilinear_invariants(phi)?, quasilinear_invariants(psi)?);
        let spans = quasilinear::span_equal(f, &phi.diagonal, &psi.diagonal)?;
        return Ok(IsometryVerdict {
            isometric: spans && l == r,
            regime: IsometryRegime::QuasilinearTower,
            left: l,
            right: r,
            spans_equal: Some(spans),
        });
    }
    Err(Error::Unsupported(format!("isometry of general forms over {f}")))
}

/// Over a finite field the anisotropic part is determined by its
/// dimension, so the Witt indices and the type are complete.
fn finite_invariants(phi: &QuadraticForm, budget: &Budget) -> Result<Invariants> {
    let f = &phi.field;
    let d = witt_decompose(phi, budget)?;
    let arf = if phi.diagonal.is_empty() {
        let s = phi.planes.iter().fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
        Some(match artin_schreier::solve(f, &s, 0)? {
            AsSolution::Root(_) => 0,
            AsSolution::Absent { .. } => 1,
        })
    } else {
        None
    };
    Ok(Invariants { type_: phi.type_of(), i_w: d.i_w, i_d: d.i_d, anisotropic_dim: d.anisotropic.dim(), arf })
}

fn quasilinear_invariants(phi: &QuadraticForm) -> Result<Invariants> {
    let rank = quasilinear::span_rank(&phi.field, &phi.diagonal)?;
    Ok(Invariants {
        type_: phi.type_of(),
        i_w: 0,
        i_d: phi.dim() - rank,
        anisotropic_dim: rank,
        arf: None,
    })
}
