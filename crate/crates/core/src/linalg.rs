//! Dense linear algebra over an exact field. Matrices are row-major
//! `Vec<Vec<Elem>>`.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row echelon form and pivot columns.
pub fn rref(f: &Field, m: &Matrix) -> Result<(Matrix, Vec<usize>)> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&a[i][c])) else { continue };
        a.swap(r, p);
        let inv = f.inv(&a[r][c])?;
        for x in a[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&a[i][c]) {
                let k = a[i][c].clone();
                for j in 0..cols {
                    let t = f.mul(&k, &a[r][j]);
                    a[i][j] = f.add(&a[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Ok((a, pivots))
}

pub fn rank(f: &Field, m: &Matrix) -> Result<usize> {
    Ok(rref(f, m)?.1.len())
}

/// Basis of `{x : m x = 0}`, one vector per free column, each with a 1 in
/// its free column.
pub fn kernel(f: &Field, m: &Matrix, cols: usize) -> Result<Vec<Vec<Elem>>> {
    let (r, pivots) = rref(f, m)?;
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = row[free].clone();
        }
        out.push(v);
    }
    Ok(out)
}

/// Some `x` with `m x = b`.
pub fn solve(f: &Field, m: &Matrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let cols = m.first().map_or(0, |r| r.len());
    if m.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: m.len(), got: b.len() });
    }
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(f, &aug)?;
    if pivots.contains(&cols) {
        return Ok(None);
    }
    let mut x = vec![f.zero(); cols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[cols].clone();
    }
    Ok(Some(x))
}

pub fn transpose(m: &Matrix, rows: usize, cols: usize) -> Matrix {
    (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mat_vec(f: &Field, m: &Matrix, v: &[Elem]) -> Vec<Elem> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
        .collect()
}

/// Linear combination `Σ c_i v_i` of equal-length vectors.
pub fn combine(f: &Field, coeffs: &[Elem], vs: &[Vec<Elem>], len: usize) -> Vec<Elem> {
    let mut out = vec![f.zero(); len];
    for (c, v) in coeffs.iter().zip(vs) {
        if f.is_zero(c) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = f.add(o, &f.mul(c, x));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&x| Elem::Gf(x)).collect()
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Field::gf2k(2).unwrap();
        let m = vec![g(&[1, 2, 3, 0]), g(&[2, 3, 1, 1]), g(&[3, 1, 2, 1])];
        let k = kernel(&f, &m, 4).unwrap();
        assert_eq!(k.len() + rank(&f, &m).unwrap(), 4);
        for v in &k {
            assert!(mat_vec(&f, &m, v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = Field::gf2();
        let m = vec![g(&[1, 1]), g(&[1, 1])];
        assert_eq!(solve(&f, &m, &g(&[1, 0])).unwrap(), None);
        let x = solve(&f, &m, &g(&[1, 1])).unwrap().unwrap();
        assert_eq!(mat_vec(&f, &m, &x), g(&[1, 1]));
    }
}
