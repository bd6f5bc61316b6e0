//! Quadratic forms `[a1,b1] ⊥ ... ⊥ [ar,br] ⊥ <c1,...,cs>`.
//!
//! Coordinates of a vector are ordered plane by plane (`x_i, y_i`), then
//! the diagonal. `[a,b]` is `a x^2 + x y + b y^2`; `<c>` is `c z^2`.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

mod dominance;
mod general;
mod isometry;
mod text;

pub use dominance::{dominance_search, Embedding, EmbeddingMode};
pub use general::GeneralForm;
pub use isometry::{isometry_test, IsometryVerdict};

pub enum Compose<'a> {
    DirectSum(&'a QuadraticForm),
    Scale(&'a Elem),
    PfisterMultiply(&'a BilinearPfister),
}

pub fn compose(phi: &QuadraticForm, op: Compose<'_>) -> Result<QuadraticForm> {
    match op {
        Compose::DirectSum(psi) => phi.direct_sum(psi),
        Compose::Scale(c) => phi.scale(c),
        Compose::PfisterMultiply(pi) => phi.pfister_multiply(pi),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    pub field: Field,
    pub planes: Vec<(Elem, Elem)>,
    pub diagonal: Vec<Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Zero,
    Nonsingular,
    Semisingular,
    Quasilinear,
}

/// `<<a1,...,an>>_b`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearPfister {
    pub field: Field,
    pub entries: Vec<Elem>,
}

impl BilinearPfister {
    pub fn new(field: &Field, entries: Vec<Elem>) -> Result<Self> {
        for e in &entries {
            field.check(e)?;
            if field.is_zero(e) {
                return Err(Error::ZeroScale);
            }
        }
        Ok(BilinearPfister { field: field.clone(), entries })
    }

    /// Subset products in binary counting order: bit `i` of the index
    /// selects `a_{i+1}`.
    pub fn subset_products(&self) -> Vec<Elem> {
        let f = &self.field;
        let n = self.entries.len();
        (0..1usize << n)
            .map(|mask| {
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(f.one(), |acc, i| f.mul(&acc, &self.entries[i]))
            })
            .collect()
    }
}

impl QuadraticForm {
    pub fn new(field: &Field, planes: Vec<(Elem, Elem)>, diagonal: Vec<Elem>) -> Result<Self> {
        for (a, b) in &planes {
            field.check(a)?;
            field.check(b)?;
        }
        for c in &diagonal {
            field.check(c)?;
        }
        Ok(QuadraticForm { field: field.clone(), planes, diagonal })
    }

    pub fn zero_form(field: &Field) -> Self {
        QuadraticForm { field: field.clone(), planes: vec![], diagonal: vec![] }
    }

    pub fn hyperbolic(field: &Field) -> Self {
        QuadraticForm { field: field.clone(), planes: vec![(field.zero(), field.zero())], diagonal: vec![] }
    }

    pub fn diag(field: &Field, cs: Vec<Elem>) -> Self {
        QuadraticForm { field: field.clone(), planes: vec![], diagonal: cs }
    }

    pub fn plane(field: &Field, a: Elem, b: Elem) -> Self {
        QuadraticForm { field: field.clone(), planes: vec![(a, b)], diagonal: vec![] }
    }

    pub fn dim(&self) -> usize {
        2 * self.planes.len() + self.diagonal.len()
    }

    /// `(r, s)`
    pub fn type_of(&self) -> (usize, usize) {
        (self.planes.len(), self.diagonal.len())
    }

    pub fn classification(&self) -> Classification {
        match self.type_of() {
            (0, 0) => Classification::Zero,
            (_, 0) => Classification::Nonsingular,
            (0, _) => Classification::Quasilinear,
            _ => Classification::Semisingular,
        }
    }

    pub fn is_quasilinear(&self) -> bool {
        self.planes.is_empty()
    }

    fn check_vec(&self, f: &Field, v: &[Elem]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        for x in v {
            f.check(x)?;
        }
        Ok(())
    }

    /// Coefficients embedded into an extension of the form's field.
    pub fn coefficients_in(&self, ext: &Field) -> Result<QuadraticForm> {
        if *ext == self.field {
            return Ok(self.clone());
        }
        if !ext.contains_subfield(&self.field) {
            return Err(Error::MixedFields(self.field.to_string(), ext.to_string()));
        }
        let e = |x: &Elem| ext.embed(&self.field, x);
        Ok(QuadraticForm {
            field: ext.clone(),
            planes: self.planes.iter().map(|(a, b)| Ok((e(a)?, e(b)?))).collect::<Result<_>>()?,
            diagonal: self.diagonal.iter().map(e).collect::<Result<_>>()?,
        })
    }

    pub fn evaluate(&self, v: &[Elem]) -> Result<Elem> {
        self.check_vec(&self.field, v)?;
        Ok(self.eval_unchecked(v))
    }

    /// Evaluate on a vector over an extension field.
    pub fn evaluate_in(&self, ext: &Field, v: &[Elem]) -> Result<Elem> {
        self.coefficients_in(ext)?.evaluate(v)
    }

    /// Evaluation without shape checks; used in hot loops.
    pub fn eval_unchecked(&self, v: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (i, (a, b)) in self.planes.iter().enumerate() {
            let (x, y) = (&v[2 * i], &v[2 * i + 1]);
            let t = f.add(&f.add(&f.mul(a, &f.square(x)), &f.mul(x, y)), &f.mul(b, &f.square(y)));
            acc = f.add(&acc, &t);
        }
        let off = 2 * self.planes.len();
        for (j, c) in self.diagonal.iter().enumerate() {
            acc = f.add(&acc, &f.mul(c, &f.square(&v[off + j])));
        }
        acc
    }

    /// `b(u,v) = φ(u+v) + φ(u) + φ(v)`; only the planes contribute.
    pub fn polar(&self, u: &[Elem], v: &[Elem]) -> Result<Elem> {
        self.check_vec(&self.field, u)?;
        self.check_vec(&self.field, v)?;
        Ok(self.polar_unchecked(u, v))
    }

    pub fn polar_unchecked(&self, u: &[Elem], v: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.planes.len() {
            let t = f.add(&f.mul(&u[2 * i], &v[2 * i + 1]), &f.mul(&u[2 * i + 1], &v[2 * i]));
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn direct_sum(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field.to_string(), other.field.to_string()));
        }
        let mut out = self.clone();
        out.planes.extend(other.planes.iter().cloned());
        out.diagonal.extend(other.diagonal.iter().cloned());
        Ok(out)
    }

    /// `c·[a,b] = [ca, b/c]`, `c·<d> = <cd>`.
    pub fn scale(&self, c: &Elem) -> Result<QuadraticForm> {
        let f = &self.field;
        f.check(c)?;
        if f.is_zero(c) {
            return Err(Error::ZeroScale);
        }
        let ci = f.inv(c)?;
        Ok(QuadraticForm {
            field: f.clone(),
            planes: self.planes.iter().map(|(a, b)| (f.mul(c, a), f.mul(&ci, b))).collect(),
            diagonal: self.diagonal.iter().map(|d| f.mul(c, d)).collect(),
        })
    }

    /// `⊥_S (Π_{i∈S} a_i)·φ` over subsets in binary counting order.
    pub fn pfister_multiply(&self, pi: &BilinearPfister) -> Result<QuadraticForm> {
        if pi.field != self.field {
            return Err(Error::MixedFields(pi.field.to_string(), self.field.to_string()));
        }
        let mut out = QuadraticForm::zero_form(&self.field);
        for p in pi.subset_products() {
            out = out.direct_sum(&self.scale(&p)?)?;
        }
        Ok(out)
    }

    /// Nonsingular and quasilinear parts.
    pub fn split_parts(&self) -> (QuadraticForm, QuadraticForm) {
        (
            QuadraticForm { field: self.field.clone(), planes: self.planes.clone(), diagonal: vec![] },
            QuadraticForm::diag(&self.field, self.diagonal.clone()),
        )
    }

    /// The vector `e_i`.
    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn to_general(&self) -> GeneralForm {
        GeneralForm::from_form(self)
    }
}
