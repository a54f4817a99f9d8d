//! Dense exact matrices, rank, reduced echelon form and kernels.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::scalar::{denominator_lcm, Field, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// A row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(ExactMatrix { field, rows, cols, entries })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from equal-length rows; `cols` is used when `rows` is empty.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            entries.extend(row.iter().cloned());
        }
        Self::new(field, rows.len(), cols, entries)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "{}", Error::FieldMismatch);
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { field: self.field, rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Rank: fraction-free Bareiss elimination over the rationals, plain
    /// Gaussian elimination over F_p.
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rational => bareiss_rank(self.integer_rows()),
            Field::Prime(p) => {
                let mut rows = self.residue_rows();
                mod_echelon(&mut rows, p, false).len()
            }
        }
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        match self.field {
            Field::Rational => {
                let mut rows: Vec<Vec<BigRational>> = (0..self.rows)
                    .map(|i| self.row(i).iter().map(|x| x.as_rational().unwrap().clone()).collect())
                    .collect();
                let pivots = rational_rref(&mut rows, self.cols);
                let entries = rows.into_iter().flatten().map(Scalar::Rational).collect();
                (ExactMatrix { field: self.field, rows: self.rows, cols: self.cols, entries }, pivots)
            }
            Field::Prime(p) => {
                let mut rows = self.residue_rows();
                let pivots = mod_echelon(&mut rows, p, true);
                let entries = rows.into_iter().flatten().map(|value| Scalar::Residue { value, modulus: p }).collect();
                (ExactMatrix { field: self.field, rows: self.rows, cols: self.cols, entries }, pivots)
            }
        }
    }

    /// Null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, f);
                }
                v
            })
            .collect();
        Subspace::span(self.field, self.cols, &basis).expect("kernel vectors have the ambient length")
    }

    /// Space-separated rows, one per line, for external cross-checking.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self
                .row(i)
                .iter()
                .map(|x| match x {
                    Scalar::Rational(q) if q.is_integer() => q.numer().to_string(),
                    Scalar::Rational(q) => format!("{}/{}", q.numer(), q.denom()),
                    Scalar::Residue { value, .. } => value.to_string(),
                })
                .collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row: Vec<BigRational> = self.row(i).iter().map(|x| x.as_rational().unwrap().clone()).collect();
                let l = denominator_lcm(&row);
                row.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect()
    }

    fn residue_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.residue().unwrap()).collect()).collect()
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

/// Standard dot product of two equal-length vectors.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = a.first().map(|x| x.field().zero()).unwrap_or_else(|| Field::Rational.zero());
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn mat_rank(m: &ExactMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &ExactMatrix) -> Subspace {
    m.kernel()
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let num = &pivot * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero());
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

fn rational_rref(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row echelon form modulo `p`; fully reduced and normalized when `reduce` is set.
fn mod_echelon(rows: &mut [Vec<u64>], p: u64, reduce: bool) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = super::scalar::Field::Prime(p).from_i64(rows[r][c] as i64).inv().unwrap();
        let inv = inv.residue().unwrap();
        for x in rows[r].iter_mut() {
            *x = mulm(*x, inv);
        }
        let pivot_row = rows[r].clone();
        let start = if reduce { 0 } else { r + 1 };
        for i in start..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let f = rows[i][c];
            for (x, &y) in rows[i].iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = (*x + p - mulm(f, y)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> ExactMatrix {
        let f = Field::Rational;
        let cols = rows[0].len();
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        ExactMatrix::from_rows(f, cols, &rows).unwrap()
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(mat_rank(&ExactMatrix::identity(Field::Rational, 3)), 3);
        assert_eq!(mat_rank(&q(&[&[1, 1], &[1, 1]])), 1);
        assert_eq!(mat_rank(&ExactMatrix::zeros(Field::Rational, 2, 5)), 0);
    }

    #[test]
    fn trivial_kernels() {
        assert_eq!(kernel_basis(&ExactMatrix::identity(Field::Rational, 4)).dim(), 0);
        assert_eq!(kernel_basis(&ExactMatrix::zeros(Field::Rational, 2, 5)).dim(), 5);
    }

    #[test]
    fn bareiss_with_skipped_columns() {
        let m = q(&[&[0, 2, 4, 1], &[0, 1, 2, 3], &[0, 3, 6, 4], &[1, 0, 0, 0]]);
        assert_eq!(m.rank(), 3);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        for v in k.basis_vectors() {
            assert!(m.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rref_is_reduced() {
        let m = q(&[&[2, 4, 6], &[1, 3, 5]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, q(&[&[1, 0, -1], &[0, 1, 2]]));
    }

    #[test]
    fn modular_rank_drops_at_the_right_prime() {
        let f = Field::prime(7).unwrap();
        let rows = vec![vec![f.from_i64(1), f.from_i64(2)], vec![f.from_i64(3), f.from_i64(13)]];
        assert_eq!(ExactMatrix::from_rows(f, 2, &rows).unwrap().rank(), 1);
        assert_eq!(q(&[&[1, 2], &[3, 13]]).rank(), 2);
    }

    #[test]
    fn text_dump() {
        assert_eq!(q(&[&[1, -2], &[0, 3]]).to_text(), "1 -2\n0 3\n");
    }
}
