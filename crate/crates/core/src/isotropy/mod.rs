//! Isotropy decisions and Witt decomposition.

pub mod bounded;
pub mod ff;
pub mod funcfield;
pub mod quadext;
pub mod quasilinear;
pub mod residue;
pub mod witt;

pub use bounded::bounded_isotropy_search;
pub use ff::isotropy_ff;
pub use funcfield::{isotropy_over_form_function_field, FuncFieldVerdict};
pub use quadext::{quad_ext_isotropy, QuadExt, QuadExtVerdict};
pub use quasilinear::quasilinear_isotropy_tower;
pub use residue::{residue_anisotropy, AnisotropyCertificate};
pub use witt::{witt_decompose, WittDecomposition};

use crate::field::{Elem, Field};

pub(crate) fn vec_json(f: &Field, v: &[Elem]) -> serde_json::Value {
    v.iter().map(|x| f.fmt_elem(x)).collect::<Vec<_>>().into()
}
