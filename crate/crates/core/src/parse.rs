//! One entry point for the text grammars.

use crate::error::{Error, Result};
use crate::field::{Elem, Field, Poly};
use crate::quadform::QuadraticForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Field,
    Form,
    Element,
    /// A polynomial in the last variable of a rational extension.
    Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    Field(Field),
    Form(QuadraticForm),
    Element(Elem),
    Polynomial(Poly),
}

/// `field` is required for every kind except [`ExprKind::Field`].
pub fn parse_expression(kind: ExprKind, text: &str, field: Option<&Field>) -> Result<Expression> {
    let need = || field.ok_or_else(|| Error::PreconditionViolated(format!("{kind:?} needs a field")));
    Ok(match kind {
        ExprKind::Field => Expression::Field(Field::parse(text)?),
        ExprKind::Form => Expression::Form(QuadraticForm::parse(need()?, text)?),
        ExprKind::Element => Expression::Element(need()?.parse_elem(text)?),
        ExprKind::Polynomial => {
            let f = need()?;
            let x = f.parse_elem(text)?;
            Expression::Polynomial(
                f.as_poly(&x).ok_or_else(|| Error::WrongField(format!("`{text}` is not a polynomial over {f}")))?,
            )
        }
    })
}
