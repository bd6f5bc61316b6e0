use super::QuadraticForm;
use crate::error::Result;
use crate::field::{Elem, Field};
use crate::linalg::Matrix;

/// A quadratic form given by its values on a basis and its polar matrix:
/// `φ(x) = Σ q_i x_i^2 + Σ_{i<j} B_ij x_i x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralForm {
    pub field: Field,
    pub q: Vec<Elem>,
    /// Symmetric, zero diagonal.
    pub b: Matrix,
}

impl GeneralForm {
    pub fn from_form(phi: &QuadraticForm) -> GeneralForm {
        let n = phi.dim();
        let basis: Vec<Vec<Elem>> = (0..n).map(|i| phi.basis_vector(i)).collect();
        GeneralForm::restrict(phi, &basis)
    }

    /// `φ` restricted to the span of `vecs`, in that basis.
    pub fn restrict(phi: &QuadraticForm, vecs: &[Vec<Elem>]) -> GeneralForm {
        let f = &phi.field;
        let q = vecs.iter().map(|v| phi.eval_unchecked(v)).collect();
        let b = vecs
            .iter()
            .map(|u| vecs.iter().map(|v| phi.polar_unchecked(u, v)).collect())
            .collect();
        GeneralForm { field: f.clone(), q, b }
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn eval(&self, v: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.dim() {
            if f.is_zero(&v[i]) {
                continue;
            }
            acc = f.add(&acc, &f.mul(&self.q[i], &f.square(&v[i])));
            for j in i + 1..self.dim() {
                acc = f.add(&acc, &f.mul(&self.b[i][j], &f.mul(&v[i], &v[j])));
            }
        }
        acc
    }

    pub fn polar(&self, u: &[Elem], v: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.dim() {
            if f.is_zero(&u[i]) {
                continue;
            }
            for j in 0..self.dim() {
                acc = f.add(&acc, &f.mul(&self.b[i][j], &f.mul(&u[i], &v[j])));
            }
        }
        acc
    }

    /// Symplectic reduction to planes plus diagonal. Returns the form and
    /// the new basis (coordinates in the old one), ordered as the form's
    /// coordinates.
    pub fn normalize(&self) -> Result<(QuadraticForm, Vec<Vec<Elem>>)> {
        let f = &self.field;
        let n = self.dim();
        let mut rest: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let mut e = vec![f.zero(); n];
                e[i] = f.one();
                e
            })
            .collect();
        let mut planes = Vec::new();
        let mut plane_basis = Vec::new();
        loop {
            let pair = (0..rest.len()).find_map(|i| {
                (i + 1..rest.len())
                    .find(|&j| !f.is_zero(&self.polar(&rest[i], &rest[j])))
                    .map(|j| (i, j))
            });
            let Some((i, j)) = pair else { break };
            let u = rest[i].clone();
            let buv = self.polar(&u, &rest[j]);
            let inv = f.inv(&buv)?;
            let v: Vec<Elem> = rest[j].iter().map(|x| f.mul(x, &inv)).collect();
            rest.remove(j);
            rest.remove(i);
            for w in rest.iter_mut() {
                let (bwv, bwu) = (self.polar(w, &v), self.polar(w, &u));
                for k in 0..n {
                    let t = f.add(&f.mul(&bwv, &u[k]), &f.mul(&bwu, &v[k]));
                    w[k] = f.add(&w[k], &t);
                }
            }
            planes.push((self.eval(&u), self.eval(&v)));
            plane_basis.push(u);
            plane_basis.push(v);
        }
        let diagonal = rest.iter().map(|z| self.eval(z)).collect();
        plane_basis.extend(rest);
        Ok((QuadraticForm { field: f.clone(), planes, diagonal }, plane_basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::enumerate;

    #[test]
    fn normalize_preserves_values() {
        let f = Field::gf2k(2).unwrap();
        let g = GeneralForm {
            field: f.clone(),
            q: vec![Elem::Gf(1), Elem::Gf(2), Elem::Gf(0), Elem::Gf(3)],
            b: vec![
                vec![Elem::Gf(0), Elem::Gf(1), Elem::Gf(2), Elem::Gf(0)],
                vec![Elem::Gf(1), Elem::Gf(0), Elem::Gf(3), Elem::Gf(1)],
                vec![Elem::Gf(2), Elem::Gf(3), Elem::Gf(0), Elem::Gf(0)],
                vec![Elem::Gf(0), Elem::Gf(1), Elem::Gf(0), Elem::Gf(0)],
            ],
        };
        let (phi, basis) = g.normalize().unwrap();
        assert_eq!(phi.dim(), 4);
        for idx in 0..256u64 {
            let x: Vec<Elem> = (0..4).map(|i| enumerate::element_at(&f, idx >> (2 * i) & 3)).collect();
            let y = crate::linalg::combine(&f, &x, &basis, 4);
            assert_eq!(phi.evaluate(&x).unwrap(), g.eval(&y));
        }
    }
}
