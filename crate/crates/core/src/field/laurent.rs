//! Truncated Laurent series `Σ c_i X^(val+i) + O(X^(val+len))`.
//!
//! Precision is tracked per value: sums keep the smaller absolute
//! precision, products the smaller relative precision. Results whose known
//! window cancels completely become [`Series::Unknown`], never zero.

use super::{Elem, Field};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    /// Exact zero.
    Zero,
    /// `coeffs[0] != 0`, `1 <= coeffs.len() <= precision`.
    Known { val: i64, coeffs: Vec<Elem> },
    /// `O(X^order)` with nothing known below.
    Unknown { order: i64 },
}

impl Series {
    /// A constant, known to full precision.
    pub fn constant(base: &Field, c: Elem, precision: usize) -> Series {
        if base.is_zero(&c) {
            return Series::Zero;
        }
        let mut coeffs = vec![base.zero(); precision];
        coeffs[0] = c;
        Series::Known { val: 0, coeffs }
    }

    /// Build from a coefficient window starting at `start` with absolute
    /// precision `start + coeffs.len()`.
    pub fn from_window(base: &Field, start: i64, coeffs: Vec<Elem>, precision: usize) -> Series {
        let abs = start + coeffs.len() as i64;
        match coeffs.iter().position(|c| !base.is_zero(c)) {
            None => Series::Unknown { order: abs },
            Some(i) => {
                let mut cs: Vec<Elem> = coeffs[i..].to_vec();
                cs.truncate(precision);
                Series::Known { val: start + i as i64, coeffs: cs }
            }
        }
    }

    /// Absolute precision, `None` for exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        match self {
            Series::Zero => None,
            Series::Known { val, coeffs } => Some(val + coeffs.len() as i64),
            Series::Unknown { order } => Some(*order),
        }
    }

    pub fn valuation(&self) -> Result<i64> {
        match self {
            Series::Zero => Err(Error::ZeroValuation),
            Series::Known { val, .. } => Ok(*val),
            Series::Unknown { order } => Err(Error::PrecisionExhausted(format!(
                "valuation hidden below O(X^{order})"
            ))),
        }
    }

    /// Coefficient of `X^i`, if known.
    pub fn coeff(&self, base: &Field, i: i64) -> Option<Elem> {
        match self {
            Series::Zero => Some(base.zero()),
            Series::Known { val, coeffs } => {
                if i < *val {
                    Some(base.zero())
                } else {
                    coeffs.get((i - val) as usize).cloned()
                }
            }
            Series::Unknown { order } => (i < *order).then(|| base.zero()),
        }
    }
}

pub fn add(base: &Field, a: &Series, b: &Series, precision: usize) -> Series {
    let (pa, pb) = match (a.abs_precision(), b.abs_precision()) {
        (None, _) => return b.clone(),
        (_, None) => return a.clone(),
        (Some(x), Some(y)) => (x, y),
    };
    let abs = pa.min(pb);
    let lo = |s: &Series| match s {
        Series::Known { val, .. } => *val,
        _ => i64::MAX,
    };
    let start = lo(a).min(lo(b));
    if start >= abs {
        return Series::Unknown { order: abs };
    }
    let coeffs = (start..abs)
        .map(|i| {
            base.add(
                &a.coeff(base, i).expect("below precision"),
                &b.coeff(base, i).expect("below precision"),
            )
        })
        .collect();
    Series::from_window(base, start, coeffs, precision)
}

pub fn mul(base: &Field, a: &Series, b: &Series, precision: usize) -> Series {
    match (a, b) {
        (Series::Zero, _) | (_, Series::Zero) => Series::Zero,
        (Series::Known { val: va, .. }, Series::Unknown { order })
        | (Series::Unknown { order }, Series::Known { val: va, .. }) => {
            Series::Unknown { order: va + order }
        }
        (Series::Unknown { order: oa }, Series::Unknown { order: ob }) => {
            Series::Unknown { order: oa + ob }
        }
        (Series::Known { val: va, coeffs: ca }, Series::Known { val: vb, coeffs: cb }) => {
            let n = ca.len().min(cb.len()).min(precision);
            let mut out = vec![base.zero(); n];
            for (i, x) in ca.iter().take(n).enumerate() {
                for (j, y) in cb.iter().take(n - i).enumerate() {
                    out[i + j] = base.add(&out[i + j], &base.mul(x, y));
                }
            }
            Series::from_window(base, va + vb, out, precision)
        }
    }
}

pub fn inv(base: &Field, a: &Series, precision: usize) -> Result<Series> {
    match a {
        Series::Zero => Err(Error::DivisionByZero),
        Series::Unknown { order } => Err(Error::PrecisionExhausted(format!(
            "inverse of O(X^{order})"
        ))),
        Series::Known { val, coeffs } => {
            let n = coeffs.len().min(precision);
            let c0 = base.inv(&coeffs[0])?;
            // b_k = c0^{-1} * Σ_{i=1..k} a_i b_{k-i}
            let mut out: Vec<Elem> = Vec::with_capacity(n);
            out.push(c0.clone());
            for k in 1..n {
                let mut s = base.zero();
                for i in 1..=k {
                    s = base.add(&s, &base.mul(&coeffs[i], &out[k - i]));
                }
                out.push(base.mul(&s, &c0));
            }
            Ok(Series::from_window(base, -val, out, precision))
        }
    }
}

/// Residue of a series of nonnegative valuation.
pub fn residue(base: &Field, a: &Series) -> Result<Elem> {
    match a {
        Series::Zero => Ok(base.zero()),
        Series::Known { val, coeffs } => {
            if *val < 0 {
                Err(Error::NegativeValuationResidue(*val))
            } else if *val == 0 {
                Ok(coeffs[0].clone())
            } else {
                Ok(base.zero())
            }
        }
        Series::Unknown { order } => {
            if *order > 0 {
                Ok(base.zero())
            } else {
                Err(Error::PrecisionExhausted(format!("residue hidden below O(X^{order})")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Field, Field) {
        let b = Field::gf2();
        (b.clone(), b.laurent("X", 8).unwrap())
    }

    #[test]
    fn geometric_series_inverse() {
        let (_, f) = setup();
        let x = f.var_elem().unwrap();
        let one_plus_x = f.add(&f.one(), &x);
        let inv = f.inv(&one_plus_x).unwrap();
        // 1/(1+X) = 1 + X + X^2 + ...
        match &inv {
            Elem::Ser(Series::Known { val, coeffs }) => {
                assert_eq!(*val, 0);
                assert_eq!(coeffs.len(), 8);
                assert!(coeffs.iter().all(|c| *c == Elem::Gf(1)));
            }
            other => panic!("{other:?}"),
        }
        let diff = f.add(&f.mul(&inv, &one_plus_x), &f.one());
        assert_eq!(diff, Elem::Ser(Series::Unknown { order: 8 }));
    }

    #[test]
    fn cancellation_loses_precision_instead_of_guessing() {
        let (_, f) = setup();
        let x = f.var_elem().unwrap();
        let a = f.add(&f.one(), &x);
        let b = f.inv(&f.inv(&a).unwrap()).unwrap();
        // a and b agree on the known window, nothing more
        let d = f.add(&a, &b);
        assert!(matches!(d, Elem::Ser(Series::Unknown { order: 8 })));
        assert!(matches!(f.eq(&a, &b), Err(Error::PrecisionExhausted(_))));
        assert!(f.eq(&a, &a.clone()).is_err());
        assert!(f.eq(&f.one(), &f.one()).is_err());
        assert!(f.eq(&f.zero(), &f.zero()).unwrap());
        assert!(!f.eq(&f.one(), &x).unwrap());
    }

    #[test]
    fn residue_and_valuation() {
        let (b, f) = setup();
        let x = f.var_elem().unwrap();
        let Elem::Ser(s) = f.mul(&x, &x) else { unreachable!() };
        assert_eq!(s.valuation().unwrap(), 2);
        assert_eq!(residue(&b, &s).unwrap(), Elem::Gf(0));
        let Elem::Ser(t) = f.inv(&x).unwrap() else { unreachable!() };
        assert_eq!(residue(&b, &t), Err(Error::NegativeValuationResidue(-1)));
    }
}
