//! Cayley–Dickson composition algebras of dimension 1, 2, 4 and 8.
//!
//! An element of the algebra built with doubling signs `γ_1, …, γ_k` is a
//! pair `(a, b)` of elements of the algebra built with `γ_1, …, γ_{k-1}`,
//! multiplied by `(a, b)(c, d) = (ac + γ_k d̄ b, d a + b c̄)` and conjugated
//! by `(a, b)‾ = (ā, −b)`. With `γ = −1` throughout, `e_i² = −1` and the norm
//! is the sum of squares. With `γ = +1` the algebra is split.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Field, Scalar};

/// Dimension and doubling signs of a composition algebra, with its
/// precomputed multiplication table.
#[derive(Clone)]
pub struct AlgebraSpec {
    signs: Vec<i8>,
    /// `table[i * dim + j] = (sign, k)` encodes `e_i e_j = sign · e_k`.
    table: Arc<[(i8, u8)]>,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.signs == other.signs
    }
}

impl Eq for AlgebraSpec {}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraSpec").field("dim", &self.dim()).field("signs", &self.signs).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    dim: usize,
    signs: Vec<i8>,
}

impl Serialize for AlgebraSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpecJson { dim: self.dim(), signs: self.signs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SpecJson::deserialize(d)?;
        let spec = AlgebraSpec::new(j.signs).map_err(serde::de::Error::custom)?;
        if spec.dim() != j.dim {
            return Err(serde::de::Error::custom("dim does not match the number of signs"));
        }
        Ok(spec)
    }
}

impl AlgebraSpec {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.len() > 3 || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::BadSigns);
        }
        let table = build_table(&signs);
        Ok(AlgebraSpec { signs, table: table.into() })
    }

    /// All doubling signs −1: the sum-of-squares presentation.
    pub fn compact(dim: usize) -> Result<Self> {
        Self::new(vec![-1; doublings(dim)?])
    }

    /// All doubling signs +1: the split presentation.
    pub fn split(dim: usize) -> Result<Self> {
        Self::new(vec![1; doublings(dim)?])
    }

    pub fn octonions() -> Self {
        Self::compact(8).expect("dimension 8 is valid")
    }

    pub fn dim(&self) -> usize {
        1 << self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_split(&self) -> bool {
        self.signs.iter().all(|&s| s == 1) && !self.signs.is_empty()
    }

    /// `e_i e_j` as `(sign, k)`.
    pub fn basis_product(&self, i: usize, j: usize) -> (i8, usize) {
        let (s, k) = self.table[i * self.dim() + j];
        (s, k as usize)
    }

    /// `ε_i = norm(e_i)`, so that `norm(a) = Σ ε_i a_i²`.
    pub fn norm_sign(&self, i: usize) -> i8 {
        if i == 0 {
            1
        } else {
            -self.basis_product(i, i).0
        }
    }
}

fn doublings(dim: usize) -> Result<usize> {
    match dim {
        1 => Ok(0),
        2 => Ok(1),
        4 => Ok(2),
        8 => Ok(3),
        _ => Err(Error::DimensionMismatch { expected: 8, found: dim }),
    }
}

/// Multiplication straight from the doubling recursion, on raw coordinates.
pub fn cd_mul_doubling(signs: &[i8], a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len();
    assert_eq!(n, 1 << signs.len());
    assert_eq!(b.len(), n);
    if n == 1 {
        return vec![&a[0] * &b[0]];
    }
    let h = n / 2;
    let inner = &signs[..signs.len() - 1];
    let gamma = signs[signs.len() - 1];
    let (a0, a1) = a.split_at(h);
    let (c0, c1) = b.split_at(h);
    let ac = cd_mul_doubling(inner, a0, c0);
    let db = cd_mul_doubling(inner, &conj_recursive(c1), a1);
    let da = cd_mul_doubling(inner, c1, a0);
    let bc = cd_mul_doubling(inner, a1, &conj_recursive(c0));
    let mut out = Vec::with_capacity(n);
    for (x, y) in ac.iter().zip(&db) {
        out.push(if gamma < 0 { x - y } else { x + y });
    }
    for (x, y) in da.iter().zip(&bc) {
        out.push(x + y);
    }
    out
}

fn conj_recursive(x: &[Scalar]) -> Vec<Scalar> {
    x.iter().enumerate().map(|(i, v)| if i == 0 { v.clone() } else { -v }).collect()
}

fn build_table(signs: &[i8]) -> Vec<(i8, u8)> {
    let dim = 1usize << signs.len();
    let f = Field::Rational;
    let basis = |i: usize| -> Vec<Scalar> { (0..dim).map(|k| if k == i { f.one() } else { f.zero() }).collect() };
    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let p = cd_mul_doubling(signs, &basis(i), &basis(j));
            let nonzero: Vec<usize> = (0..dim).filter(|&k| !p[k].is_zero()).collect();
            assert_eq!(nonzero.len(), 1, "basis products are signed basis vectors");
            let k = nonzero[0];
            let sign = if p[k].is_one() { 1 } else { -1 };
            table.push((sign, k as u8));
        }
    }
    table
}

/// An element `Σ coords[i] e_i` of a composition algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionElement {
    spec: AlgebraSpec,
    coords: Vec<Scalar>,
}

impl Serialize for CompositionElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl CompositionElement {
    pub fn new(spec: &AlgebraSpec, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != spec.dim() {
            return Err(Error::DimensionMismatch { expected: spec.dim(), found: coords.len() });
        }
        if coords.windows(2).any(|w| w[0].field() != w[1].field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(CompositionElement { spec: spec.clone(), coords })
    }

    pub fn zero(field: Field, spec: &AlgebraSpec) -> Self {
        CompositionElement { spec: spec.clone(), coords: vec![field.zero(); spec.dim()] }
    }

    pub fn one(field: Field, spec: &AlgebraSpec) -> Self {
        Self::basis(field, spec, 0)
    }

    pub fn basis(field: Field, spec: &AlgebraSpec, i: usize) -> Self {
        let mut x = Self::zero(field, spec);
        x.coords[i] = field.one();
        x
    }

    pub fn from_ints(field: Field, spec: &AlgebraSpec, coords: &[i64]) -> Result<Self> {
        Self::new(spec, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn random<R: Rng + ?Sized>(field: Field, spec: &AlgebraSpec, rng: &mut R) -> Self {
        CompositionElement { spec: spec.clone(), coords: (0..spec.dim()).map(|_| field.random(rng)).collect() }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|a| a * c)
    }

    pub fn conj(&self) -> Self {
        let mut coords = self.coords.clone();
        for c in coords.iter_mut().skip(1) {
            *c = -&*c;
        }
        CompositionElement { spec: self.spec.clone(), coords }
    }

    pub fn re(&self) -> Scalar {
        self.coords[0].clone()
    }

    pub fn norm(&self) -> Scalar {
        self.inner(self)
    }

    /// `Re(ā b)`, the polar form of the norm.
    pub fn inner(&self, other: &Self) -> Scalar {
        assert_eq!(self.spec, other.spec, "{}", Error::SpecMismatch);
        let mut acc = self.field().zero();
        for (i, (a, b)) in self.coords.iter().zip(&other.coords).enumerate() {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let t = a * b;
            if self.spec.norm_sign(i) > 0 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.spec, other.spec, "{}", Error::SpecMismatch);
        let dim = self.spec.dim();
        let mut out = vec![self.field().zero(); dim];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (s, k) = self.spec.basis_product(i, j);
                let t = a * b;
                if s > 0 {
                    out[k] += &t;
                } else {
                    out[k] -= &t;
                }
            }
        }
        CompositionElement { spec: self.spec.clone(), coords: out }
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        CompositionElement { spec: self.spec.clone(), coords: self.coords.iter().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        assert_eq!(self.spec, other.spec, "{}", Error::SpecMismatch);
        CompositionElement {
            spec: self.spec.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

pub fn cd_mul(a: &CompositionElement, b: &CompositionElement) -> Result<CompositionElement> {
    if a.spec != b.spec {
        return Err(Error::SpecMismatch);
    }
    Ok(a.mul(b))
}

pub fn conj(a: &CompositionElement) -> CompositionElement {
    a.conj()
}

pub fn re(a: &CompositionElement) -> Scalar {
    a.re()
}

pub fn norm(a: &CompositionElement) -> Scalar {
    a.norm()
}

/// `Re((uv)w)`, which agrees with `Re(u(vw))` and is cyclically invariant.
pub fn re_triple(u: &CompositionElement, v: &CompositionElement, w: &CompositionElement) -> Result<Scalar> {
    Ok(cd_mul(&cd_mul(u, v)?, w)?.re())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn specs() -> Vec<AlgebraSpec> {
        let mut out = Vec::new();
        for dim in [1, 2, 4, 8] {
            out.push(AlgebraSpec::compact(dim).unwrap());
            out.push(AlgebraSpec::split(dim).unwrap());
        }
        out
    }

    #[test]
    fn units_and_squares() {
        let f = Field::Rational;
        let o = AlgebraSpec::octonions();
        let e0 = CompositionElement::one(f, &o);
        let e1 = CompositionElement::basis(f, &o, 1);
        let x = CompositionElement::from_ints(f, &o, &[1, -2, 3, 0, 5, 7, -1, 4]).unwrap();
        assert_eq!(e0.mul(&x), x);
        assert_eq!(x.mul(&e0), x);
        assert_eq!(e1.mul(&e1), e0.neg());
        let s = AlgebraSpec::split(8).unwrap();
        let s1 = CompositionElement::basis(f, &s, 1);
        assert_eq!(s1.mul(&s1), CompositionElement::one(f, &s));
    }

    #[test]
    fn norms() {
        let f = Field::Rational;
        let o = AlgebraSpec::octonions();
        let e0 = CompositionElement::one(f, &o);
        assert_eq!(e0.conj(), e0);
        assert!(e0.re().is_one());
        assert!(e0.norm().is_one());
        let a = CompositionElement::from_ints(f, &o, &[1, 1, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(a.norm(), f.from_i64(2));
        let f13 = Field::prime(13).unwrap();
        let b = CompositionElement::from_ints(f13, &o, &[1, 5, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(b.norm().is_zero());
    }

    #[test]
    fn table_matches_recursion() {
        let f = Field::prime(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for spec in specs() {
            for _ in 0..50 {
                let a = CompositionElement::random(f, &spec, &mut rng);
                let b = CompositionElement::random(f, &spec, &mut rng);
                assert_eq!(a.mul(&b).coords(), cd_mul_doubling(spec.signs(), a.coords(), b.coords()).as_slice());
            }
        }
    }

    #[test]
    fn norm_is_re_of_a_abar() {
        let f = Field::Rational;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for spec in specs() {
            let a = CompositionElement::random(f, &spec, &mut rng);
            assert_eq!(a.norm(), a.mul(&a.conj()).re());
        }
    }

    #[test]
    fn octonions_are_not_associative() {
        let f = Field::Rational;
        let o = AlgebraSpec::octonions();
        let e = |i| CompositionElement::basis(f, &o, i);
        let lhs = e(1).mul(&e(2)).mul(&e(4));
        let rhs = e(1).mul(&e(2).mul(&e(4)));
        assert_ne!(lhs, rhs);
        assert_eq!(lhs, rhs.neg());
    }

    #[test]
    fn fixed_triple_value() {
        let f = Field::Rational;
        let o = AlgebraSpec::octonions();
        let e = |i| CompositionElement::basis(f, &o, i);
        let left = re_triple(&e(1), &e(2), &e(3)).unwrap();
        let right = e(1).mul(&e(2).mul(&e(3))).re();
        assert_eq!(left, right);
        assert_eq!(left, f.from_i64(-1));
    }

    #[test]
    fn spec_mismatch_is_an_error() {
        let f = Field::Rational;
        let a = CompositionElement::one(f, &AlgebraSpec::compact(4).unwrap());
        let b = CompositionElement::one(f, &AlgebraSpec::split(4).unwrap());
        assert_eq!(cd_mul(&a, &b), Err(Error::SpecMismatch));
    }

    #[test]
    fn spec_json() {
        let s = AlgebraSpec::split(4).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"dim":4,"signs":[1,1]}"#);
        let back: AlgebraSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
