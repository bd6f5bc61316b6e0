//! Field towers of characteristic 2.
//!
//! A [`Field`] is a cheap handle onto an immutable descriptor. Elements are
//! plain values ([`Elem`]) whose interpretation depends on the field they
//! are used with; every operation takes the field explicitly. All payloads
//! are kept canonical so that structural equality is value equality
//! (except for Laurent series, whose comparison may be undecidable at the
//! available precision; see [`Field::eq`]).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub mod artin_schreier;
pub mod enumerate;
pub mod factor;
pub mod gf2k;
pub mod laurent;
pub mod place;
pub mod poly;
pub(crate) mod text;
pub mod twobasis;

pub use artin_schreier::solve as artin_schreier_solve;
pub use factor::{factor as factor_univariate, irreducibles as enum_irreducibles};
pub use laurent::Series;
pub use place::{valuation_residue, Place};
pub use poly::Poly;
pub use twobasis::{decompose as two_basis_decompose, is_square};

pub const DEFAULT_PRECISION: usize = 32;

/// A field element payload.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// GF(2^k) bit vector.
    Gf(u32),
    /// Reduced polynomial in the adjoined root, low degree first.
    Alg(Vec<Elem>),
    /// Numerator and monic denominator, coprime.
    Rat(Vec<Elem>, Vec<Elem>),
    Ser(Series),
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Finite { degree: u32, modulus: u32 },
    /// `base[var]/(modulus)` with `modulus` monic irreducible.
    Algebraic { base: Field, var: String, modulus: Vec<Elem> },
    Rational { base: Field, var: String },
    Laurent { base: Field, var: String, precision: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldKind>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithValue {
    Elem(Elem),
    Bool(bool),
}

/// One arithmetic operation with operand checks; binary operations need `y`.
pub fn element_arith(f: &Field, op: ArithOp, x: &Elem, y: Option<&Elem>) -> Result<ArithValue> {
    f.check(x)?;
    if let Some(y) = y {
        f.check(y)?;
    }
    let rhs = || y.ok_or_else(|| Error::PreconditionViolated(format!("{op:?} needs two operands")));
    Ok(match op {
        ArithOp::Add => ArithValue::Elem(f.add(x, rhs()?)),
        ArithOp::Mul => ArithValue::Elem(f.mul(x, rhs()?)),
        ArithOp::Neg => ArithValue::Elem(f.neg(x)),
        ArithOp::Inv => ArithValue::Elem(f.inv(x)?),
        ArithOp::Eq => ArithValue::Bool(f.eq(x, rhs()?)?),
    })
}

fn valid_name(name: &str) -> bool {
    let mut cs = name.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(name, "w" | "O" | "GF" | "H" | "pf")
}

impl Field {
    pub fn gf2k(k: u32) -> Result<Field> {
        let modulus = gf2k::modulus(k)
            .ok_or_else(|| Error::InvalidField(format!("GF(2^{k}) needs 1 <= k <= 16")))?;
        Ok(Field(Arc::new(FieldKind::Finite { degree: k, modulus })))
    }

    pub fn gf2() -> Field {
        Field::gf2k(1).expect("k = 1 is valid")
    }

    fn check_new_var(&self, var: &str) -> Result<()> {
        if !valid_name(var) {
            return Err(Error::InvalidField(format!("bad variable name `{var}`")));
        }
        if self.variables().iter().any(|v| v == var) {
            return Err(Error::InvalidField(format!("variable `{var}` repeated in tower")));
        }
        Ok(())
    }

    /// `self(var)`
    pub fn rational(&self, var: &str) -> Result<Field> {
        self.check_new_var(var)?;
        if !self.is_exact() {
            return Err(Error::UnsupportedField(format!(
                "rational extension of the Laurent field {self}"
            )));
        }
        Ok(Field(Arc::new(FieldKind::Rational { base: self.clone(), var: var.into() })))
    }

    /// `self((var):precision)`
    pub fn laurent(&self, var: &str, precision: usize) -> Result<Field> {
        self.check_new_var(var)?;
        if precision == 0 {
            return Err(Error::InvalidField("Laurent precision must be positive".into()));
        }
        if !self.is_exact() {
            return Err(Error::UnsupportedField(format!("Laurent extension of {self}")));
        }
        Ok(Field(Arc::new(FieldKind::Laurent { base: self.clone(), var: var.into(), precision })))
    }

    /// `self[var]/(modulus)`; the caller vouches that `modulus` is
    /// irreducible (checked here only over finite bases).
    pub fn algebraic(&self, var: &str, modulus: &[Elem]) -> Result<Field> {
        self.check_new_var(var)?;
        if !self.is_exact() {
            return Err(Error::UnsupportedField(format!("algebraic extension of {self}")));
        }
        let m = poly::monic(self, modulus)?;
        if poly::degree(&m).unwrap_or(0) < 1 {
            return Err(Error::InvalidField("modulus must have positive degree".into()));
        }
        if self.is_finite() && !factor::is_irreducible(self, &m)? {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Ok(Field(Arc::new(FieldKind::Algebraic { base: self.clone(), var: var.into(), modulus: m })))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn base(&self) -> Option<&Field> {
        match self.kind() {
            FieldKind::Finite { .. } => None,
            FieldKind::Algebraic { base, .. }
            | FieldKind::Rational { base, .. }
            | FieldKind::Laurent { base, .. } => Some(base),
        }
    }

    pub fn var(&self) -> Option<&str> {
        match self.kind() {
            FieldKind::Finite { .. } => None,
            FieldKind::Algebraic { var, .. }
            | FieldKind::Rational { var, .. }
            | FieldKind::Laurent { var, .. } => Some(var),
        }
    }

    /// Tower variables, bottom first.
    pub fn variables(&self) -> Vec<String> {
        let mut out = self.base().map(|b| b.variables()).unwrap_or_default();
        if let Some(v) = self.var() {
            out.push(v.to_string());
        }
        out
    }

    /// The finite field at the bottom of the tower.
    pub fn ground(&self) -> &Field {
        match self.base() {
            None => self,
            Some(b) => b.ground(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self.kind() {
            FieldKind::Finite { .. } => true,
            FieldKind::Algebraic { base, .. } => base.is_finite(),
            _ => false,
        }
    }

    /// No Laurent level anywhere in the tower.
    pub fn is_exact(&self) -> bool {
        match self.kind() {
            FieldKind::Finite { .. } => true,
            FieldKind::Laurent { .. } => false,
            FieldKind::Algebraic { base, .. } | FieldKind::Rational { base, .. } => base.is_exact(),
        }
    }

    /// Rational tower over a finite field (possibly with no variables).
    pub fn is_rational_tower(&self) -> bool {
        match self.kind() {
            FieldKind::Finite { .. } => true,
            FieldKind::Rational { base, .. } => base.is_rational_tower(),
            _ => false,
        }
    }

    /// `log2 |F|` for finite fields.
    pub fn finite_degree(&self) -> Option<u32> {
        match self.kind() {
            FieldKind::Finite { degree, .. } => Some(*degree),
            FieldKind::Algebraic { base, modulus, .. } => {
                Some(base.finite_degree()? * (modulus.len() as u32 - 1))
            }
            _ => None,
        }
    }

    /// `|F|` for finite fields of at most 2^63 elements.
    pub fn order(&self) -> Option<u64> {
        self.finite_degree().filter(|&d| d < 64).map(|d| 1u64 << d)
    }

    pub fn precision(&self) -> Option<usize> {
        match self.kind() {
            FieldKind::Laurent { precision, .. } => Some(*precision),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self.kind() {
            FieldKind::Finite { .. } => Elem::Gf(0),
            FieldKind::Algebraic { .. } => Elem::Alg(Vec::new()),
            FieldKind::Rational { base, .. } => Elem::Rat(Vec::new(), vec![base.one()]),
            FieldKind::Laurent { .. } => Elem::Ser(Series::Zero),
        }
    }

    pub fn one(&self) -> Elem {
        match self.kind() {
            FieldKind::Finite { .. } => Elem::Gf(1),
            FieldKind::Algebraic { base, .. } => Elem::Alg(vec![base.one()]),
            FieldKind::Rational { base, .. } => Elem::Rat(vec![base.one()], vec![base.one()]),
            FieldKind::Laurent { base, precision, .. } => {
                Elem::Ser(Series::constant(base, base.one(), *precision))
            }
        }
    }

    /// True only for an exact zero; a Laurent `O(X^n)` is not zero.
    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Gf(v) => *v == 0,
            Elem::Alg(p) => p.is_empty(),
            Elem::Rat(n, _) => n.is_empty(),
            Elem::Ser(s) => matches!(s, Series::Zero),
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        match self.kind() {
            FieldKind::Laurent { .. } => matches!(self.eq(x, &self.one()), Ok(true)),
            _ => *x == self.one(),
        }
    }

    /// Embed an element of the immediate base field.
    pub fn from_base(&self, c: Elem) -> Elem {
        match self.kind() {
            FieldKind::Finite { .. } => c,
            FieldKind::Algebraic { base, .. } => Elem::Alg(poly::constant(base, c)),
            FieldKind::Rational { base, .. } => Elem::Rat(poly::constant(base, c), vec![base.one()]),
            FieldKind::Laurent { base, precision, .. } => {
                Elem::Ser(Series::constant(base, c, *precision))
            }
        }
    }

    /// Embed an element of a subfield `sub` of the tower.
    pub fn embed(&self, sub: &Field, x: &Elem) -> Result<Elem> {
        if self == sub {
            return Ok(x.clone());
        }
        match self.base() {
            Some(b) => Ok(self.from_base(b.embed(sub, x)?)),
            None => Err(Error::WrongField(format!("{sub} is not a subfield of {self}"))),
        }
    }

    pub fn contains_subfield(&self, sub: &Field) -> bool {
        self == sub || self.base().is_some_and(|b| b.contains_subfield(sub))
    }

    /// The top variable (or adjoined root) as an element.
    pub fn var_elem(&self) -> Result<Elem> {
        match self.kind() {
            FieldKind::Finite { .. } => Err(Error::UnsupportedField(format!("{self} has no variable"))),
            FieldKind::Algebraic { base, modulus, .. } => {
                let x = poly::x(base);
                Ok(Elem::Alg(poly::rem(base, &x, modulus)?))
            }
            FieldKind::Rational { base, .. } => Ok(Elem::Rat(poly::x(base), vec![base.one()])),
            FieldKind::Laurent { base, precision, .. } => {
                let mut s = Series::constant(base, base.one(), *precision);
                if let Series::Known { val, .. } = &mut s {
                    *val = 1;
                }
                Ok(Elem::Ser(s))
            }
        }
    }

    /// Any tower variable by name, embedded into `self`.
    pub fn variable(&self, name: &str) -> Result<Elem> {
        if self.var() == Some(name) {
            return self.var_elem();
        }
        match self.base() {
            Some(b) => Ok(self.from_base(b.variable(name)?)),
            None => Err(Error::UnknownVariable(name.into())),
        }
    }

    /// The generator `w` of the ground GF(2^k) (equal to 1 when k = 1).
    pub fn generator(&self) -> Elem {
        let g = self.ground();
        let w = if g.finite_degree() == Some(1) { Elem::Gf(1) } else { Elem::Gf(2) };
        self.embed(g, &w).expect("ground is a subfield")
    }

    fn mixed(&self, x: &Elem) -> Error {
        Error::MixedFields(format!("{self}"), format!("{x:?}"))
    }

    /// Shape check that `x` is a payload of this field.
    pub fn check(&self, x: &Elem) -> Result<()> {
        let ok = match (self.kind(), x) {
            (FieldKind::Finite { degree, .. }, Elem::Gf(v)) => (*v as u64) < (1u64 << degree),
            (FieldKind::Algebraic { base, modulus, .. }, Elem::Alg(p)) => {
                p.len() < modulus.len() && p.iter().all(|c| base.check(c).is_ok())
            }
            (FieldKind::Rational { base, .. }, Elem::Rat(n, d)) => {
                n.iter().chain(d).all(|c| base.check(c).is_ok())
            }
            (FieldKind::Laurent { .. }, Elem::Ser(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.mixed(x))
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self.kind(), a, b) {
            (FieldKind::Finite { .. }, Elem::Gf(x), Elem::Gf(y)) => Elem::Gf(x ^ y),
            (FieldKind::Algebraic { base, .. }, Elem::Alg(x), Elem::Alg(y)) => {
                Elem::Alg(poly::add(base, x, y))
            }
            (FieldKind::Rational { base, .. }, Elem::Rat(n1, d1), Elem::Rat(n2, d2)) => {
                if n1.is_empty() {
                    return b.clone();
                }
                if n2.is_empty() {
                    return a.clone();
                }
                if d1 == d2 {
                    return rat_canonical(base, poly::add(base, n1, n2), d1.clone());
                }
                let n = poly::add(base, &poly::mul(base, n1, d2), &poly::mul(base, n2, d1));
                rat_canonical(base, n, poly::mul(base, d1, d2))
            }
            (FieldKind::Laurent { base, precision, .. }, Elem::Ser(x), Elem::Ser(y)) => {
                Elem::Ser(laurent::add(base, x, y, *precision))
            }
            _ => panic!("{}", self.mixed(a)),
        }
    }

    /// Same as `add` in characteristic 2.
    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, b)
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.clone()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self.kind(), a, b) {
            (FieldKind::Finite { degree, modulus }, Elem::Gf(x), Elem::Gf(y)) => {
                Elem::Gf(gf2k::mul(*x, *y, *degree, *modulus))
            }
            (FieldKind::Algebraic { base, modulus, .. }, Elem::Alg(x), Elem::Alg(y)) => Elem::Alg(
                poly::mul_mod(base, x, y, modulus).expect("modulus is monic"),
            ),
            (FieldKind::Rational { base, .. }, Elem::Rat(n1, d1), Elem::Rat(n2, d2)) => {
                if n1.is_empty() || n2.is_empty() {
                    return self.zero();
                }
                // cross-cancel before multiplying
                let cancel = |n: &Poly, d: &Poly| -> (Poly, Poly) {
                    if d.len() == 1 || n.len() == 1 {
                        return (n.clone(), d.clone());
                    }
                    let g = poly::gcd(base, n, d).expect("exact base");
                    if poly::is_one(base, &g) {
                        return (n.clone(), d.clone());
                    }
                    (
                        poly::div_exact(base, n, &g).expect("gcd divides"),
                        poly::div_exact(base, d, &g).expect("gcd divides"),
                    )
                };
                let (n1, d2) = cancel(n1, d2);
                let (n2, d1) = cancel(n2, d1);
                rat_normalize_lc(base, poly::mul(base, &n1, &n2), poly::mul(base, &d1, &d2))
            }
            (FieldKind::Laurent { base, precision, .. }, Elem::Ser(x), Elem::Ser(y)) => {
                Elem::Ser(laurent::mul(base, x, y, *precision))
            }
            _ => panic!("{}", self.mixed(a)),
        }
    }

    pub fn square(&self, a: &Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self.kind(), a) {
            (FieldKind::Finite { degree, modulus }, Elem::Gf(x)) => {
                Ok(Elem::Gf(gf2k::inv(*x, *degree, *modulus)))
            }
            (FieldKind::Algebraic { base, modulus, .. }, Elem::Alg(x)) => {
                let (g, s, _) = poly::ext_gcd(base, x, modulus)?;
                if !poly::is_one(base, &g) {
                    return Err(Error::InvalidField("algebraic modulus is reducible".into()));
                }
                Ok(Elem::Alg(s))
            }
            (FieldKind::Rational { base, .. }, Elem::Rat(n, d)) => {
                Ok(rat_normalize_lc(base, d.clone(), n.clone()))
            }
            (FieldKind::Laurent { base, precision, .. }, Elem::Ser(x)) => {
                Ok(Elem::Ser(laurent::inv(base, x, *precision)?))
            }
            _ => Err(self.mixed(a)),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, e: i64) -> Result<Elem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.square(&b);
            }
        }
        Ok(acc)
    }

    /// Value equality. Exact for exact fields; for Laurent series raises
    /// `PrecisionExhausted` when the difference is not known.
    pub fn eq(&self, a: &Elem, b: &Elem) -> Result<bool> {
        match self.kind() {
            FieldKind::Laurent { .. } => match self.add(a, b) {
                Elem::Ser(Series::Zero) => Ok(true),
                Elem::Ser(Series::Known { .. }) => Ok(false),
                Elem::Ser(Series::Unknown { order }) => Err(Error::PrecisionExhausted(format!(
                    "comparison needs coefficients beyond O({}^{order})",
                    self.var().unwrap_or("X")
                ))),
                _ => Err(self.mixed(a)),
            },
            _ => Ok(a == b),
        }
    }

    /// Build `num/den` over a rational extension.
    pub fn rat(&self, num: Poly, den: Poly) -> Result<Elem> {
        match self.kind() {
            FieldKind::Rational { base, .. } => {
                if poly::trimmed(base, den.clone()).is_empty() {
                    return Err(Error::DivisionByZero);
                }
                Ok(rat_canonical(base, num, den))
            }
            _ => Err(Error::UnsupportedField(format!("{self} is not a rational extension"))),
        }
    }

    pub fn from_poly(&self, p: Poly) -> Result<Elem> {
        match self.kind() {
            FieldKind::Rational { base, .. } => {
                let one = vec![base.one()];
                self.rat(p, one)
            }
            FieldKind::Algebraic { base, modulus, .. } => Ok(Elem::Alg(poly::rem(base, &p, modulus)?)),
            _ => Err(Error::UnsupportedField(format!("{self} is not a polynomial extension"))),
        }
    }

    /// Numerator and denominator of an element of a rational extension.
    pub fn rat_parts<'a>(&self, x: &'a Elem) -> Result<(&'a Poly, &'a Poly)> {
        match x {
            Elem::Rat(n, d) => Ok((n, d)),
            _ => Err(self.mixed(x)),
        }
    }

    /// A polynomial element (denominator 1) as its coefficient vector.
    pub fn as_poly(&self, x: &Elem) -> Option<Poly> {
        match x {
            Elem::Rat(n, d) if d.len() == 1 => Some(n.clone()),
            Elem::Alg(p) => Some(p.clone()),
            _ => None,
        }
    }
}

fn rat_normalize_lc(base: &Field, n: Poly, d: Poly) -> Elem {
    if n.is_empty() {
        return Elem::Rat(n, vec![base.one()]);
    }
    let c = poly::lc(&d).expect("nonzero denominator").clone();
    if base.is_one(&c) {
        return Elem::Rat(n, d);
    }
    let ci = base.inv(&c).expect("nonzero");
    Elem::Rat(poly::scale(base, &n, &ci), poly::scale(base, &d, &ci))
}

fn rat_canonical(base: &Field, n: Poly, d: Poly) -> Elem {
    let n = poly::trimmed(base, n);
    if n.is_empty() {
        return Elem::Rat(n, vec![base.one()]);
    }
    let d = poly::trimmed(base, d);
    if d.len() == 1 {
        return rat_normalize_lc(base, n, d);
    }
    let g = poly::gcd(base, &n, &d).expect("exact base");
    if poly::is_one(base, &g) {
        return rat_normalize_lc(base, n, d);
    }
    let n = poly::div_exact(base, &n, &g).expect("gcd divides");
    let d = poly::div_exact(base, &d, &g).expect("gcd divides");
    rat_normalize_lc(base, n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_arith_ops() {
        let f = Field::parse("GF(2)(t)").unwrap();
        let t = f.parse_elem("t").unwrap();
        let inv = element_arith(&f, ArithOp::Inv, &f.parse_elem("t^2+t").unwrap(), None).unwrap();
        assert_eq!(inv, ArithValue::Elem(f.parse_elem("1/(t^2+t)").unwrap()));
        assert_eq!(element_arith(&f, ArithOp::Add, &t, Some(&t)).unwrap(), ArithValue::Elem(f.zero()));
        assert_eq!(element_arith(&f, ArithOp::Eq, &t, Some(&t)).unwrap(), ArithValue::Bool(true));
        assert!(element_arith(&f, ArithOp::Mul, &t, None).is_err());
        assert!(element_arith(&f, ArithOp::Inv, &f.zero(), None).is_err());
    }

    #[test]
    fn gf4_generator_cube_is_one() {
        let f = Field::gf2k(2).unwrap();
        let w = f.generator();
        let w2 = f.square(&w);
        assert_eq!(f.mul(&w, &w2), f.one());
    }

    #[test]
    fn char_two_cancellation_in_rational_field() {
        let f = Field::gf2().rational("t").unwrap();
        let t = f.var_elem().unwrap();
        let it = f.inv(&t).unwrap();
        assert!(f.is_zero(&f.add(&it, &it)));
    }

    #[test]
    fn inverse_is_canonical() {
        let f = Field::gf2().rational("t").unwrap();
        let t = f.var_elem().unwrap();
        let x = f.add(&f.square(&t), &t);
        let y = f.inv(&x).unwrap();
        let (n, d) = f.rat_parts(&y).unwrap();
        assert_eq!(n, &vec![Elem::Gf(1)]);
        assert_eq!(d, &vec![Elem::Gf(0), Elem::Gf(1), Elem::Gf(1)]);
        assert_eq!(f.mul(&x, &y), f.one());
    }

    #[test]
    fn tower_rejects_repeated_and_reserved_names() {
        let f = Field::gf2().rational("t").unwrap();
        assert!(f.rational("t").is_err());
        assert!(f.rational("w").is_err());
        assert!(f.laurent("X", 8).unwrap().rational("Y").is_err());
    }

    #[test]
    fn algebraic_extension_is_a_field() {
        let f = Field::gf2();
        // GF(2)[a]/(a^2+a+1) has four elements, a^3 = 1
        let k = f.algebraic("a", &[Elem::Gf(1), Elem::Gf(1), Elem::Gf(1)]).unwrap();
        let a = k.var_elem().unwrap();
        assert_eq!(k.pow(&a, 3).unwrap(), k.one());
        assert_eq!(k.order(), Some(4));
        assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
        assert!(f.algebraic("b", &[Elem::Gf(1), Elem::Gf(0), Elem::Gf(1)]).is_err());
    }

    #[test]
    fn embedding_through_tower() {
        let g = Field::gf2k(2).unwrap();
        let f = g.rational("s").unwrap().rational("t").unwrap();
        let w = f.generator();
        assert_eq!(f.embed(&g, &Elem::Gf(2)).unwrap(), w);
        let s = f.variable("s").unwrap();
        assert!(f.variable("u").is_err());
        assert_ne!(s, f.var_elem().unwrap());
    }
}
