//! The cubic Jordan algebra J3(K) of 3×3 Hermitian matrices over a
//! composition algebra K.
//!
//! An element is stored as
//!
//! ```text
//!     ( r   w   v̄ )
//!     ( w̄   s   u )
//!     ( v   ū   t )
//! ```
//!
//! and vectorized in the frozen order `(r, s, t, u[..], v[..], w[..])`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::composition::{AlgebraSpec, CompositionElement};
use crate::error::{Error, Result};
use crate::exactmath::{ExactMatrix, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanElement {
    pub r: Scalar,
    pub s: Scalar,
    pub t: Scalar,
    pub u: CompositionElement,
    pub v: CompositionElement,
    pub w: CompositionElement,
}

/// Number of coordinates of J3(K) when `dim K = algebra_dim`.
pub fn ambient_dim(algebra_dim: usize) -> usize {
    3 + 3 * algebra_dim
}

impl JordanElement {
    pub fn new(
        r: Scalar,
        s: Scalar,
        t: Scalar,
        u: CompositionElement,
        v: CompositionElement,
        w: CompositionElement,
    ) -> Result<Self> {
        if u.spec() != v.spec() || v.spec() != w.spec() {
            return Err(Error::SpecMismatch);
        }
        let f = r.field();
        if [s.field(), t.field(), u.field(), v.field(), w.field()].iter().any(|&g| g != f) {
            return Err(Error::FieldMismatch);
        }
        Ok(JordanElement { r, s, t, u, v, w })
    }

    pub fn zero(field: Field, spec: &AlgebraSpec) -> Self {
        let z = CompositionElement::zero(field, spec);
        JordanElement { r: field.zero(), s: field.zero(), t: field.zero(), u: z.clone(), v: z.clone(), w: z }
    }

    pub fn diag(field: Field, spec: &AlgebraSpec, r: Scalar, s: Scalar, t: Scalar) -> Self {
        JordanElement { r, s, t, ..Self::zero(field, spec) }
    }

    pub fn diag_ints(field: Field, spec: &AlgebraSpec, r: i64, s: i64, t: i64) -> Self {
        Self::diag(field, spec, field.from_i64(r), field.from_i64(s), field.from_i64(t))
    }

    pub fn identity(field: Field, spec: &AlgebraSpec) -> Self {
        Self::diag_ints(field, spec, 1, 1, 1)
    }

    /// The diagonal idempotent `E_ii`, `i ∈ {1, 2, 3}`.
    pub fn e(field: Field, spec: &AlgebraSpec, i: usize) -> Self {
        let d = |k| if k == i { 1 } else { 0 };
        Self::diag_ints(field, spec, d(1), d(2), d(3))
    }

    pub fn from_vector(field: Field, spec: &AlgebraSpec, coords: &[Scalar]) -> Result<Self> {
        let d = spec.dim();
        if coords.len() != ambient_dim(d) {
            return Err(Error::DimensionMismatch { expected: ambient_dim(d), found: coords.len() });
        }
        let block = |k: usize| CompositionElement::new(spec, coords[3 + k * d..3 + (k + 1) * d].to_vec());
        let x = JordanElement::new(
            coords[0].clone(),
            coords[1].clone(),
            coords[2].clone(),
            block(0)?,
            block(1)?,
            block(2)?,
        )?;
        if x.field() != field {
            return Err(Error::FieldMismatch);
        }
        Ok(x)
    }

    pub fn basis_vector(field: Field, spec: &AlgebraSpec, k: usize) -> Self {
        let n = ambient_dim(spec.dim());
        let v: Vec<Scalar> = (0..n).map(|i| if i == k { field.one() } else { field.zero() }).collect();
        Self::from_vector(field, spec, &v).expect("basis vector has the ambient length")
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        let mut out = vec![self.r.clone(), self.s.clone(), self.t.clone()];
        out.extend(self.u.coords().iter().cloned());
        out.extend(self.v.coords().iter().cloned());
        out.extend(self.w.coords().iter().cloned());
        out
    }

    pub fn random<R: Rng + ?Sized>(field: Field, spec: &AlgebraSpec, rng: &mut R) -> Self {
        JordanElement {
            r: field.random(rng),
            s: field.random(rng),
            t: field.random(rng),
            u: CompositionElement::random(field, spec, rng),
            v: CompositionElement::random(field, spec, rng),
            w: CompositionElement::random(field, spec, rng),
        }
    }

    pub fn field(&self) -> Field {
        self.r.field()
    }

    pub fn spec(&self) -> &AlgebraSpec {
        self.u.spec()
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
            && self.s.is_zero()
            && self.t.is_zero()
            && self.u.is_zero()
            && self.v.is_zero()
            && self.w.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        JordanElement {
            r: &self.r + &o.r,
            s: &self.s + &o.s,
            t: &self.t + &o.t,
            u: self.u.add(&o.u),
            v: self.v.add(&o.v),
            w: self.w.add(&o.w),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        JordanElement { r: -&self.r, s: -&self.s, t: -&self.t, u: self.u.neg(), v: self.v.neg(), w: self.w.neg() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        JordanElement {
            r: &self.r * c,
            s: &self.s * c,
            t: &self.t * c,
            u: self.u.scale(c),
            v: self.v.scale(c),
            w: self.w.scale(c),
        }
    }

    /// Scaled so that the first nonzero coordinate is 1; zero stays zero.
    pub fn normalized(&self) -> Self {
        let coords = self.to_vector();
        match coords.iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Cyclic relabelling `1 → 2 → 3 → 1` of the diagonal slots, an automorphism of the norm.
    pub fn rotate(&self) -> Self {
        JordanElement {
            r: self.t.clone(),
            s: self.r.clone(),
            t: self.s.clone(),
            u: self.w.clone(),
            v: self.u.clone(),
            w: self.v.clone(),
        }
    }

    /// Exchange of the second and third diagonal slots, an automorphism of the norm.
    pub fn swap23(&self) -> Self {
        JordanElement {
            r: self.r.clone(),
            s: self.t.clone(),
            t: self.s.clone(),
            u: self.u.conj(),
            v: self.w.conj(),
            w: self.v.conj(),
        }
    }
}

/// Jordan product `½(xy + yx)` of the Hermitian matrices, expanded into coordinates.
pub fn jmul(x: &JordanElement, y: &JordanElement) -> JordanElement {
    let f = x.field();
    let half = f.ratio(1, 2);
    let xu_yu = x.u.inner(&y.u);
    let xv_yv = x.v.inner(&y.v);
    let xw_yw = x.w.inner(&y.w);
    let r = &x.r * &y.r + &xw_yw + &xv_yv;
    let s = &x.s * &y.s + &xw_yw + &xu_yu;
    let t = &x.t * &y.t + &xv_yv + &xu_yu;
    let off = |a1: &Scalar,
               a2: &Scalar,
               ya: &CompositionElement,
               b1: &Scalar,
               b2: &Scalar,
               xa: &CompositionElement,
               p: CompositionElement,
               q: CompositionElement| {
        ya.scale(&(a1 + a2)).add(&xa.scale(&(b1 + b2))).add(&p).add(&q).scale(&half)
    };
    let u = off(&x.s, &x.t, &y.u, &y.s, &y.t, &x.u, y.v.mul(&x.w).conj(), x.v.mul(&y.w).conj());
    let v = off(&x.r, &x.t, &y.v, &y.r, &y.t, &x.v, y.w.mul(&x.u).conj(), x.w.mul(&y.u).conj());
    let w = off(&x.r, &x.s, &y.w, &y.r, &y.s, &x.w, y.u.mul(&x.v).conj(), x.u.mul(&y.v).conj());
    JordanElement { r, s, t, u, v, w }
}

pub fn jtrace(x: &JordanElement) -> Scalar {
    &x.r + &x.s + &x.t
}

/// `rst − r|u|² − s|v|² − t|w|² + 2 Re(uvw)`.
pub fn det3(x: &JordanElement) -> Scalar {
    let f = x.field();
    let triple = x.u.mul(&x.v).mul(&x.w).re();
    &x.r * &x.s * &x.t - &x.r * &x.u.norm() - &x.s * &x.v.norm() - &x.t * &x.w.norm() + f.from_i64(2) * triple
}

/// `rr' + ss' + tt' − 2Re(ū u') + 2Re(v̄ v') − 2Re(w̄ w')`.
///
/// With this sign pattern the derivative of [`det3`] in direction `h` is
/// exactly `pair(adjoint(x), h)`.
pub fn pair(x: &JordanElement, y: &JordanElement) -> Scalar {
    let two = x.field().from_i64(2);
    &x.r * &y.r + &x.s * &y.s + &x.t * &y.t + &two * (x.v.inner(&y.v) - x.u.inner(&y.u) - x.w.inner(&y.w))
}

/// Gram matrix of [`pair`] in the coordinate basis.
pub fn gram_matrix(field: Field, spec: &AlgebraSpec) -> ExactMatrix {
    let d = spec.dim();
    let n = ambient_dim(d);
    let mut g = ExactMatrix::zeros(field, n, n);
    for i in 0..3 {
        g.set(i, i, field.one());
    }
    for (block, sign) in [(0, -2), (1, 2), (2, -2)] {
        for k in 0..d {
            let idx = 3 + block * d + k;
            g.set(idx, idx, field.from_i64(sign * spec.norm_sign(k) as i64));
        }
    }
    g
}

/// The comatrix map x ↦ x#:
///
/// ```text
///     diagonal  (st − |u|², rt − |v|², rs − |w|²)
///     u-entry   ru − w̄v̄
///     v-entry   ūw̄ − sv
///     w-entry   tw − v̄ū
/// ```
pub fn adjoint(x: &JordanElement) -> JordanElement {
    JordanElement {
        r: &x.s * &x.t - x.u.norm(),
        s: &x.r * &x.t - x.v.norm(),
        t: &x.r * &x.s - x.w.norm(),
        u: x.u.scale(&x.r).sub(&x.v.mul(&x.w).conj()),
        v: x.w.mul(&x.u).conj().sub(&x.v.scale(&x.s)),
        w: x.w.scale(&x.t).sub(&x.u.mul(&x.v).conj()),
    }
}

/// Un-halved polarization `(x+y)# − x# − y#`.
pub fn cross(x: &JordanElement, y: &JordanElement) -> JordanElement {
    adjoint(&x.add(y)).sub(&adjoint(x)).sub(&adjoint(y))
}

/// 0 for zero, 1 when the adjoint vanishes, 2 when only the determinant vanishes, else 3.
pub fn rank_of(x: &JordanElement) -> u8 {
    if x.is_zero() {
        0
    } else if adjoint(x).is_zero() {
        1
    } else if det3(x).is_zero() {
        2
    } else {
        3
    }
}

/// The dense chart of the rank-1 locus around `E11`:
///
/// ```text
///     ( 1   w    v̄  )
///     ( w̄  |w|²  w̄v̄ )
///     ( v   vw   |v|² )
/// ```
pub fn rank1_param(v: &CompositionElement, w: &CompositionElement) -> Result<JordanElement> {
    if v.spec() != w.spec() {
        return Err(Error::SpecMismatch);
    }
    let f = v.field();
    JordanElement::new(f.one(), w.norm(), v.norm(), w.conj().mul(&v.conj()), v.clone(), w.clone())
}

/// A rank-1 element from random chart coordinates, with a random relabelling of the diagonal.
pub fn sample_rank1_with<R: Rng + ?Sized>(field: Field, spec: &AlgebraSpec, rng: &mut R) -> JordanElement {
    let v = CompositionElement::random(field, spec, rng);
    let w = CompositionElement::random(field, spec, rng);
    let mut x = rank1_param(&v, &w).expect("same spec");
    for _ in 0..rng.gen_range(0..3) {
        x = x.rotate();
    }
    if rng.gen_bool(0.5) {
        x = x.swap23();
    }
    x.scale(&field.random_nonzero(rng))
}

pub fn sample_rank1(field: Field, spec: &AlgebraSpec, seed: u64) -> JordanElement {
    sample_rank1_with(field, spec, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Sum of two rank-1 samples, redrawn until the sum has rank exactly 2.
pub fn sample_rank2_with<R: Rng + ?Sized>(field: Field, spec: &AlgebraSpec, rng: &mut R) -> JordanElement {
    loop {
        let x = sample_rank1_with(field, spec, rng).add(&sample_rank1_with(field, spec, rng));
        if rank_of(&x) == 2 {
            return x;
        }
    }
}

pub fn sample_rank2(field: Field, spec: &AlgebraSpec, seed: u64) -> JordanElement {
    sample_rank2_with(field, spec, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A random element of full rank.
pub fn sample_rank3_with<R: Rng + ?Sized>(field: Field, spec: &AlgebraSpec, rng: &mut R) -> JordanElement {
    loop {
        let x = JordanElement::random(field, spec, rng);
        if rank_of(&x) == 3 {
            return x;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JordanJson {
    r: String,
    s: String,
    t: String,
    u: Vec<String>,
    v: Vec<String>,
    w: Vec<String>,
}

impl Serialize for JordanElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let strs = |c: &CompositionElement| c.coords().iter().map(ToString::to_string).collect();
        JordanJson {
            r: self.r.to_string(),
            s: self.s.to_string(),
            t: self.t.to_string(),
            u: strs(&self.u),
            v: strs(&self.v),
            w: strs(&self.w),
        }
        .serialize(ser)
    }
}

impl JordanElement {
    /// Reads the `{"r","s","t","u","v","w"}` form, reducing entries into `field`.
    pub fn from_json(value: &serde_json::Value, field: Field, spec: &AlgebraSpec) -> Result<Self> {
        let j: JordanJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let sc = |s: &str| field.parse_scalar(s);
        let comp = |xs: &[String]| -> Result<CompositionElement> {
            CompositionElement::new(spec, xs.iter().map(|s| sc(s)).collect::<Result<_>>()?)
        };
        JordanElement::new(sc(&j.r)?, sc(&j.s)?, sc(&j.t)?, comp(&j.u)?, comp(&j.v)?, comp(&j.w)?)
    }
}
