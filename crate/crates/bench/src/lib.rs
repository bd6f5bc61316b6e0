//! Fixtures shared by the benches.

use qf2::field::Field;
use qf2::quadform::QuadraticForm;

pub fn form(field: &str, src: &str) -> QuadraticForm {
    QuadraticForm::parse(&Field::parse(field).expect("field"), src).expect("form")
}
