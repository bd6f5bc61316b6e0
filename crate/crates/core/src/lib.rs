pub mod error;
pub mod budget;
pub mod certify;
pub mod field;
pub mod isotropy;
pub mod linalg;
pub mod parse;
pub mod quadform;
pub mod theoremlab;
pub mod valuegroups;

pub use error::{Error, Result};
pub use field::{Elem, Field, Poly};
