//! Representation certificates `a · Π φ(ξ_i) = f`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::quadform::QuadraticForm;

pub const CERTIFICATE_SCHEMA: &str = "qf2.certificate/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationCertificate {
    /// The field of the vectors and the target, usually `F(X)`.
    pub field: Field,
    /// `φ`, with coefficients read in `field`.
    pub form: QuadraticForm,
    pub target: Elem,
    pub scalar: Elem,
    pub vectors: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub pass: bool,
    /// `f / (a·Π φ(ξ_i))`, absent when the product vanishes.
    pub residual: Option<Elem>,
}

impl RepresentationCertificate {
    pub fn new(field: &Field, form: &QuadraticForm, target: Elem, scalar: Elem, vectors: Vec<Vec<Elem>>) -> Result<Self> {
        let form = form.coefficients_in(field)?;
        field.check(&target)?;
        field.check(&scalar)?;
        for v in &vectors {
            if v.len() != form.dim() {
                return Err(Error::DimensionMismatch { expected: form.dim(), got: v.len() });
            }
            for x in v {
                field.check(x)?;
            }
        }
        Ok(RepresentationCertificate { field: field.clone(), form, target, scalar, vectors })
    }

    pub fn power(&self) -> usize {
        self.vectors.len()
    }

    /// `a · Π φ(ξ_i)`
    pub fn product(&self) -> Elem {
        let f = &self.field;
        self.vectors.iter().fold(self.scalar.clone(), |acc, v| f.mul(&acc, &self.form.eval_unchecked(v)))
    }

    pub fn verify(&self) -> Result<Verification> {
        let f = &self.field;
        let p = self.product();
        let pass = f.eq(&p, &self.target)? && !f.is_zero(&self.scalar);
        let residual = if f.is_zero(&p) { None } else { Some(f.div(&self.target, &p)?) };
        Ok(Verification { pass, residual })
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        json!({
            "schema": CERTIFICATE_SCHEMA,
            "field": f.to_string(),
            "form": self.form.to_text(),
            "target": f.fmt_elem(&self.target),
            "scalar": f.fmt_elem(&self.scalar),
            "power": self.power(),
            "vectors": self.vectors.iter().map(|v| v.iter().map(|x| f.fmt_elem(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::MalformedCertificate(what.to_string());
        let s = |key: &str| v.get(key).and_then(Value::as_str).ok_or_else(|| bad(&format!("missing string `{key}`")));
        if let Some(schema) = v.get("schema") {
            if schema.as_str() != Some(CERTIFICATE_SCHEMA) {
                return Err(bad(&format!("unknown schema {schema}")));
            }
        }
        let field = Field::parse(s("field")?)?;
        let form = QuadraticForm::parse(&field, s("form")?)?;
        let target = field.parse_elem(s("target")?)?;
        let scalar = match v.get("scalar") {
            None => field.one(),
            Some(x) => field.parse_elem(x.as_str().ok_or_else(|| bad("`scalar` must be a string"))?)?,
        };
        let vecs = v.get("vectors").and_then(Value::as_array).ok_or_else(|| bad("missing array `vectors`"))?;
        let vectors = vecs
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("each vector must be an array"))?
                    .iter()
                    .map(|x| field.parse_elem(x.as_str().ok_or_else(|| bad("entries must be strings"))?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(p) = v.get("power") {
            if p.as_u64() != Some(vectors.len() as u64) {
                return Err(bad("`power` disagrees with the number of vectors"));
            }
        }
        RepresentationCertificate::new(&field, &form, target, scalar, vectors)
    }
}
