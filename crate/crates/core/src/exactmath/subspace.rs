//! Linear subspaces in canonical reduced row-echelon form.

use serde::Serialize;

use super::matrix::{dot, ExactMatrix};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A subspace of `field^ambient_dim`, stored as the RREF of a basis.
///
/// The echelon form is canonical, so derived equality is equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ExactMatrix,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: ExactMatrix::zeros(field, 0, ambient_dim) }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: ExactMatrix::identity(field, ambient_dim) }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let m = ExactMatrix::from_rows(field, ambient_dim, vectors)?;
        let (r, pivots) = m.rref();
        let rows: Vec<Vec<Scalar>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient_dim, basis: ExactMatrix::from_rows(field, ambient_dim, &rows)? })
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        ExactMatrix::from_rows(self.field(), self.ambient_dim, &rows).map(|m| m.rank() == self.dim()).unwrap_or(false)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Vectors annihilated by the standard dot product with every basis vector.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient_dim);
        }
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        subspace_intersect(self, other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(self.field(), self.ambient_dim, &rows)
    }
}

pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch { expected: a.ambient_dim, found: b.ambient_dim });
    }
    let mut rows = a.annihilator().basis_vectors();
    rows.extend(b.annihilator().basis_vectors());
    if rows.is_empty() {
        return Ok(Subspace::full(a.field(), a.ambient_dim));
    }
    Ok(ExactMatrix::from_rows(a.field(), a.ambient_dim, &rows)?.kernel())
}

/// `{v : vᵀ G s = 0 for all s in S}` for a symmetric invertible `G`.
pub fn orth_complement(s: &Subspace, g: &ExactMatrix) -> Result<Subspace> {
    let n = s.ambient_dim;
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: g.rows() });
    }
    if g.rank() != n {
        return Err(Error::SingularGram);
    }
    if s.dim() == 0 {
        return Ok(Subspace::full(s.field(), n));
    }
    let rows: Vec<Vec<Scalar>> =
        s.basis_vectors().iter().map(|v| (0..n).map(|j| dot(v, &column(g, j))).collect()).collect();
    Ok(ExactMatrix::from_rows(s.field(), n, &rows)?.kernel())
}

fn column(m: &ExactMatrix, j: usize) -> Vec<Scalar> {
    (0..m.rows()).map(|i| m.get(i, j).clone()).collect()
}

/// True iff `a = λ b` for some nonzero scalar λ.
pub fn projective_equal(a: &[Scalar], b: &[Scalar]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    let az = a.iter().all(Scalar::is_zero);
    let bz = b.iter().all(Scalar::is_zero);
    if az && bz {
        return Err(Error::ZeroVector);
    }
    if az || bz {
        return Ok(false);
    }
    let Some(k) = a.iter().position(|x| !x.is_zero()) else { unreachable!() };
    Ok((0..a.len()).all(|i| (&a[i] * &b[k] - &a[k] * &b[i]).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn intersections() {
        let f = Field::Rational;
        let a = Subspace::span(f, 3, &[v(f, &[1, 0, 0]), v(f, &[0, 1, 0])]).unwrap();
        let b = Subspace::span(f, 3, &[v(f, &[0, 0, 1])]).unwrap();
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        let c = Subspace::span(f, 3, &[v(f, &[1, 1, 1]), v(f, &[0, 0, 1])]).unwrap();
        let i = a.intersect(&c).unwrap();
        assert_eq!(i, Subspace::span(f, 3, &[v(f, &[2, 2, 0])]).unwrap());
        let d = Subspace::span(f, 4, &[v(f, &[1, 0, 0, 0])]).unwrap();
        assert!(a.intersect(&d).is_err());
    }

    #[test]
    fn orthogonal_complements() {
        let f = Field::Rational;
        let g = ExactMatrix::identity(f, 3);
        let full = Subspace::full(f, 3);
        assert_eq!(orth_complement(&full, &g).unwrap().dim(), 0);
        let s = Subspace::span(f, 3, &[v(f, &[1, 2, 3])]).unwrap();
        let o = orth_complement(&s, &g).unwrap();
        assert_eq!(o.dim(), 2);
        assert_eq!(orth_complement(&o, &g).unwrap(), s);
        assert_eq!(orth_complement(&s, &ExactMatrix::zeros(f, 3, 3)), Err(Error::SingularGram));
    }

    #[test]
    fn projective_equality() {
        let f = Field::Rational;
        assert!(projective_equal(&v(f, &[1, 2, 3]), &v(f, &[2, 4, 6])).unwrap());
        assert!(!projective_equal(&v(f, &[1, 0, 0]), &v(f, &[0, 1, 0])).unwrap());
        assert!(!projective_equal(&v(f, &[0, 0, 0]), &v(f, &[0, 1, 0])).unwrap());
        assert_eq!(projective_equal(&v(f, &[0, 0]), &v(f, &[0, 0])), Err(Error::ZeroVector));
    }
}
