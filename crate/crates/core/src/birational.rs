//! Linear sections of the cubic and of the rank-1 locus, the birational maps
//! between them, spinor pairs and the secant-line mechanics of the
//! rationality construction.
//!
//! A [`SectionPair`] fixes a linear space `L` and its pairing-orthogonal
//! `Lperp` through a rank-1 base point `y0`. Then `X = {det3 = 0} ∩ L` and
//! `Y = {rank 1} ∩ Lperp`, and [`psi`] and [`phi`] send points of one to the
//! other.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::Serialize;
use serde_json::json;

use crate::composition::{AlgebraSpec, CompositionElement};
use crate::error::{Error, Result};
use crate::exactmath::{orth_complement, projective_equal, sqrt_exact, ExactMatrix, Field, Scalar, Subspace};
use crate::incidence::{polar_map_matrix, quadric_span, subspace_elements, IncidencePoint};
use crate::jordan::{adjoint, ambient_dim, cross, det3, gram_matrix, pair, rank_of, sample_rank1_with, JordanElement};
use crate::report::{CheckReport, Status};

/// Redraws allowed per trial before a configuration is given up as degenerate.
pub const RETRY_BUDGET: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPair {
    pub l: Subspace,
    pub lperp: Subspace,
    pub y0: IncidencePoint,
    spec: AlgebraSpec,
}

impl Serialize for SectionPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SectionPair", 3)?;
        st.serialize_field("L", self.l.basis())?;
        st.serialize_field("Lperp", self.lperp.basis())?;
        st.serialize_field("y0", self.y0.element())?;
        st.end()
    }
}

/// Dimension of `Lperp` for an algebra of dimension `d`: 18 for the octonions, 10 for the quaternions.
pub fn lperp_dim(d: usize) -> usize {
    2 * d + 2
}

impl SectionPair {
    /// Builds the pair from `Lperp`, checking that it carries `y0`.
    pub fn from_lperp(lperp: Subspace, y0: JordanElement) -> Result<Self> {
        let spec = y0.spec().clone();
        let field = y0.field();
        if !lperp.contains(&y0.to_vector()) {
            return Err(Error::NotInSubspace("Lperp"));
        }
        let y0 = IncidencePoint::new(y0)?;
        let l = orth_complement(&lperp, &gram_matrix(field, &spec))?;
        Ok(SectionPair { l, lperp, y0, spec })
    }

    /// Builds the pair from `L`; `y0` must be orthogonal to it.
    pub fn from_l(l: Subspace, y0: JordanElement) -> Result<Self> {
        let lperp = orth_complement(&l, &gram_matrix(y0.field(), y0.spec()))?;
        Self::from_lperp(lperp, y0)
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn field(&self) -> Field {
        self.l.field()
    }
}

/// Span of `points`, filled up with vectors from `fill` that keep independence, up to `target` dimensions.
fn extend_span(
    field: Field,
    n: usize,
    points: &[Vec<Scalar>],
    fill: impl Iterator<Item = Vec<Scalar>>,
    target: usize,
) -> Result<Subspace> {
    let mut span = Subspace::span(field, n, points)?;
    for v in fill {
        if span.dim() >= target {
            break;
        }
        if !span.contains(&v) {
            let mut rows = span.basis_vectors();
            rows.push(v);
            span = Subspace::span(field, n, &rows)?;
        }
    }
    Ok(span)
}

/// `Lperp = span(points)` completed by seeded random vectors; `y0 = points[0]`.
pub fn make_section_through(points: &[JordanElement], seed: u64) -> Result<SectionPair> {
    let first = points.first().ok_or(Error::DependentPoints)?;
    let (field, spec) = (first.field(), first.spec().clone());
    let n = ambient_dim(spec.dim());
    let target = lperp_dim(spec.dim());
    if points.len() > target {
        return Err(Error::TooManyPoints { max: target, got: points.len() });
    }
    let rank = rank_of(first);
    if rank != 1 {
        return Err(Error::WrongRank { expected: 1, found: rank });
    }
    let vecs: Vec<Vec<Scalar>> = points.iter().map(JordanElement::to_vector).collect();
    if Subspace::span(field, n, &vecs)?.dim() != points.len() {
        return Err(Error::DependentPoints);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let randoms = std::iter::repeat_with(move || (0..n).map(|_| field.random(&mut rng)).collect());
    let lperp = extend_span(field, n, &vecs, randoms, target)?;
    SectionPair::from_lperp(lperp, first.clone())
}

fn vector_to_element(sec: &SectionPair, v: &[Scalar]) -> JordanElement {
    JordanElement::from_vector(sec.field(), sec.spec(), v).expect("ambient vector")
}

/// `ψ(y)`: the unique point of the tangent space at `meet(y, y0)` lying in `L`.
pub fn psi(y: &IncidencePoint, sec: &SectionPair) -> Result<JordanElement> {
    let ye = y.element();
    if !sec.lperp.contains(&ye.to_vector()) {
        return Err(Error::NotInSubspace("Lperp"));
    }
    let z = cross(ye, sec.y0.element());
    if z.is_zero() {
        return Err(Error::DegeneratePair);
    }
    let tz = polar_map_matrix(&z).kernel();
    let meet = tz.intersect(&sec.l)?;
    if meet.dim() != 1 {
        return Err(Error::NonGeneric { what: "T_z ∩ L", dim: meet.dim() });
    }
    Ok(vector_to_element(sec, &meet.basis_vectors()[0]))
}

/// `φ(x)`: the second rank-1 point on the line `⟨Q_z⟩ ∩ Lperp`, where
/// `z = meet(x#, y0)`; the first one is `y0`.
pub fn phi(x: &JordanElement, sec: &SectionPair) -> Result<IncidencePoint> {
    if !sec.l.contains(&x.to_vector()) {
        return Err(Error::NotInSubspace("L"));
    }
    let rank = rank_of(x);
    if rank != 2 {
        return Err(Error::WrongRank { expected: 2, found: rank });
    }
    let y0 = sec.y0.element();
    let z = cross(&adjoint(x), y0);
    if z.is_zero() {
        return Err(Error::DegeneratePair);
    }
    let line = quadric_span(&IncidencePoint::new(z)?).intersect(&sec.lperp)?;
    if line.dim() != 2 || !line.contains(&y0.to_vector()) {
        return Err(Error::NonGeneric { what: "Q_z ∩ Lperp", dim: line.dim() });
    }
    let m = subspace_elements(&line, sec.spec())
        .into_iter()
        .find(|b| !projective_equal(&b.to_vector(), &y0.to_vector()).unwrap_or(true))
        .expect("a two-dimensional space has a vector off the line of y0");
    second_root(y0, &m)
}

/// Of the points `a·y0 + b·m` with vanishing adjoint, the one other than `y0`.
///
/// `adjoint(a·y0 + b·m) = b (a·cross(y0, m) + b·m#)`, so after removing the
/// root `b = 0` the condition is linear in `(a : b)`.
fn second_root(y0: &JordanElement, m: &JordanElement) -> Result<IncidencePoint> {
    let c = cross(y0, m).to_vector();
    let d = adjoint(m).to_vector();
    let c_zero = c.iter().all(Scalar::is_zero);
    let d_zero = d.iter().all(Scalar::is_zero);
    if c_zero && d_zero {
        return Err(Error::LineInPlane);
    }
    if c_zero {
        return Err(Error::Tangency);
    }
    let k = c.iter().position(|x| !x.is_zero()).expect("c is nonzero");
    let (a, b) = (-&d[k], c[k].clone());
    if !c.iter().zip(&d).all(|(ci, di)| (&a * ci + &b * di).is_zero()) {
        return Err(Error::NonGeneric { what: "rank-1 points on the line", dim: 1 });
    }
    IncidencePoint::new(y0.scale(&a).add(&m.scale(&b)).normalized())
}

/// True iff `cross(y, y0) = 0`, i.e. `y` is on a line of the plane through `y0`.
pub fn psi_indeterminate(y: &IncidencePoint, sec: &SectionPair) -> bool {
    cross(y.element(), sec.y0.element()).is_zero()
}

/// True iff `cross(x#, E11) = 0` for a rank-2 `x`.
pub fn phi_indeterminate(x: &JordanElement) -> Result<bool> {
    let rank = rank_of(x);
    if rank != 2 {
        return Err(Error::WrongRank { expected: 2, found: rank });
    }
    let e11 = JordanElement::e(x.field(), x.spec(), 1);
    Ok(cross(&adjoint(x), &e11).is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrialOutcome {
    Success,
    Degenerate,
    Failure,
}

fn classify<T>(r: &Result<T>) -> Option<TrialOutcome> {
    match r {
        Ok(_) => None,
        Err(Error::DegeneratePair | Error::Tangency | Error::LineInPlane | Error::NonGeneric { .. }) => {
            Some(TrialOutcome::Degenerate)
        }
        Err(_) => Some(TrialOutcome::Failure),
    }
}

/// A section through `y0` and `y`, sharing the rest of its `Lperp` with `base`.
pub fn section_through_point(base: &SectionPair, y: &JordanElement) -> Result<SectionPair> {
    let n = base.lperp.ambient_dim();
    let y0 = base.y0.element();
    let points = vec![y0.to_vector(), y.to_vector()];
    if Subspace::span(base.field(), n, &points)?.dim() != 2 {
        return Err(Error::DegeneratePair);
    }
    let lperp = extend_span(base.field(), n, &points, base.lperp.basis_vectors().into_iter(), base.lperp.dim())?;
    SectionPair::from_lperp(lperp, y0.clone())
}

/// A section whose `L` contains `x`, sharing the rest of `L` with `base`.
pub fn section_through_cubic_point(base: &SectionPair, x: &JordanElement) -> Result<SectionPair> {
    let n = base.l.ambient_dim();
    let l = extend_span(base.field(), n, &[x.to_vector()], base.l.basis_vectors().into_iter(), base.l.dim())?;
    SectionPair::from_l(l, base.y0.element().clone())
}

/// `φ(ψ(y)) = y` on a section through `y`.
pub fn forward_trial(base: &SectionPair, y: &JordanElement) -> TrialOutcome {
    let run = || -> Result<bool> {
        let sec = section_through_point(base, y)?;
        let yp = IncidencePoint::new(y.clone())?;
        let x = psi(&yp, &sec)?;
        if !det3(&x).is_zero() || !sec.l.contains(&x.to_vector()) {
            return Ok(false);
        }
        let back = phi(&x, &sec)?;
        Ok(projective_equal(&back.element().to_vector(), &y.to_vector())?
            && sec.lperp.contains(&back.element().to_vector()))
    };
    let r = run();
    classify(&r).unwrap_or(if r == Ok(true) { TrialOutcome::Success } else { TrialOutcome::Failure })
}

/// `ψ(φ(x)) = x` on a section whose `L` contains `x`.
pub fn reverse_trial(base: &SectionPair, x: &JordanElement) -> TrialOutcome {
    let run = || -> Result<bool> {
        let sec = section_through_cubic_point(base, x)?;
        let y = phi(x, &sec)?;
        let back = psi(&y, &sec)?;
        projective_equal(&back.to_vector(), &x.to_vector())
    };
    let r = run();
    classify(&r).unwrap_or(if r == Ok(true) { TrialOutcome::Success } else { TrialOutcome::Failure })
}

/// A rank-2 point `p + λq` orthogonal to `y0`, from two rank-1 samples.
pub fn sample_cubic_point_orthogonal<R: Rng + ?Sized>(y0: &JordanElement, rng: &mut R) -> JordanElement {
    let (field, spec) = (y0.field(), y0.spec());
    loop {
        let p = sample_rank1_with(field, spec, rng);
        let q = sample_rank1_with(field, spec, rng);
        let pq = pair(&q, y0);
        if pq.is_zero() {
            continue;
        }
        let x = p.add(&q.scale(&-(pair(&p, y0) / pq)));
        if rank_of(&x) == 2 {
            return x;
        }
    }
}

#[derive(Default, Serialize)]
struct Tally {
    success: usize,
    degenerate_draws: usize,
    failure: usize,
    exhausted: usize,
}

fn run_trials(trials: usize, mut draw: impl FnMut() -> TrialOutcome) -> Tally {
    let mut t = Tally::default();
    for _ in 0..trials {
        let mut done = false;
        for _ in 0..RETRY_BUDGET {
            match draw() {
                TrialOutcome::Success => t.success += 1,
                TrialOutcome::Failure => t.failure += 1,
                TrialOutcome::Degenerate => {
                    t.degenerate_draws += 1;
                    continue;
                }
            }
            done = true;
            break;
        }
        if !done {
            t.exhausted += 1;
        }
    }
    t
}

/// `roundtrip-r`, `roundtrip-c`, `roundtrip-h` or `roundtrip-o` by algebra dimension.
pub fn roundtrip_id(dim: usize) -> String {
    let letter = match dim {
        1 => 'r',
        2 => 'c',
        4 => 'h',
        _ => 'o',
    };
    format!("roundtrip-{letter}")
}

/// One worked example: a rank-1 point `y`, its image `ψ(y)` on the cubic and `φ(ψ(y))`.
///
/// The base section runs through `E11` and `E33`; `y` is redrawn when the pair degenerates.
pub fn single_point_demo(field: Field, spec: &AlgebraSpec, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = |i| JordanElement::e(field, spec, i);
    let run = |rng: &mut ChaCha8Rng| -> Result<serde_json::Value> {
        let base = make_section_through(&[e(1), e(3)], seed)?;
        let y = sample_rank1_with(field, spec, rng);
        let sec = section_through_point(&base, &y)?;
        let x = psi(&IncidencePoint::new(y.clone())?, &sec)?;
        let back = phi(&x, &sec)?;
        Ok(json!({
            "y": y,
            "psi_y": x,
            "phi_psi_y": back.element(),
            "psi_y_on_cubic": det3(&x).is_zero(),
            "recovered": projective_equal(&back.element().to_vector(), &y.to_vector())?,
        }))
    };
    let mut degenerate = 0;
    for _ in 0..RETRY_BUDGET {
        let r = run(&mut rng);
        match classify(&r) {
            None => {
                let mut payload = r.expect("classified as success");
                let ok = payload["recovered"] == true && payload["psi_y_on_cubic"] == true;
                payload["degenerate_draws"] = json!(degenerate);
                return CheckReport::new("birational-demo", Status::from_bool(ok), field.to_string(), seed, payload);
            }
            Some(TrialOutcome::Degenerate) => degenerate += 1,
            Some(_) => {
                let err = r.err().map(|e| e.to_string());
                return CheckReport::new(
                    "birational-demo",
                    Status::Fail,
                    field.to_string(),
                    seed,
                    json!({ "error": err }),
                );
            }
        }
    }
    CheckReport::new(
        "birational-demo",
        Status::Degenerate,
        field.to_string(),
        seed,
        json!({ "degenerate_draws": degenerate }),
    )
}

/// Runs `trials` forward and reverse roundtrips on sections derived from `sec`.
pub fn roundtrip_check(sec: &SectionPair, trials: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (field, spec) = (sec.field(), sec.spec().clone());
    let forward = run_trials(trials, || forward_trial(sec, &sample_rank1_with(field, &spec, &mut rng)));
    let reverse = run_trials(trials, || {
        let x = sample_cubic_point_orthogonal(sec.y0.element(), &mut rng);
        reverse_trial(sec, &x)
    });
    let ok = forward.failure == 0 && reverse.failure == 0 && forward.success == trials && reverse.success == trials;
    let status = if ok {
        Status::Pass
    } else if forward.failure == 0 && reverse.failure == 0 {
        Status::Degenerate
    } else {
        Status::Fail
    };
    CheckReport::new(
        &roundtrip_id(spec.dim()),
        status,
        field.to_string(),
        seed,
        json!({
            "algebra_dim": spec.dim(),
            "L_dim": sec.l.dim(),
            "Lperp_dim": sec.lperp.dim(),
            "trials": trials,
            "forward": forward,
            "reverse": reverse,
        }),
    )
}

/// Two octonions with `|u|² = |v|² = 0` and `u v̄ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinorPair {
    pub u: CompositionElement,
    pub v: CompositionElement,
}

impl SpinorPair {
    pub fn new(u: CompositionElement, v: CompositionElement) -> Result<Self> {
        if u.spec() != v.spec() {
            return Err(Error::SpecMismatch);
        }
        let p = SpinorPair { u, v };
        if !p.is_valid() {
            return Err(Error::NotInSubspace("the spinor variety"));
        }
        Ok(p)
    }

    pub fn is_valid(&self) -> bool {
        self.u.norm().is_zero() && self.v.norm().is_zero() && self.u.mul(&self.v.conj()).is_zero()
    }
}

fn null_vector<R: Rng + ?Sized>(field: Field, spec: &AlgebraSpec, rng: &mut R) -> Option<CompositionElement> {
    let d = spec.dim();
    let mut x: Vec<Scalar> = (0..d).map(|_| field.random(rng)).collect();
    let hyperbolic = (1..d).find(|&j| spec.norm_sign(j) < 0);
    match hyperbolic {
        Some(j) => {
            let mut rest = field.zero();
            for (i, xi) in x.iter().enumerate() {
                if i != 0 && i != j {
                    let sq = xi * xi;
                    rest = if spec.norm_sign(i) > 0 { rest + sq } else { rest - sq };
                }
            }
            let k = -rest;
            let lambda = field.random_nonzero(rng);
            let half = field.ratio(1, 2);
            x[0] = (&k / &lambda + &lambda) * &half;
            x[j] = (&k / &lambda - &lambda) * &half;
        }
        None => {
            if field == Field::Rational {
                return None;
            }
            let mut rest = field.zero();
            for xi in &x[1..] {
                rest += &(xi * xi);
            }
            x[0] = sqrt_exact(&-rest)?;
        }
    }
    let u = CompositionElement::new(spec, x).ok()?;
    (!u.is_zero()).then_some(u)
}

/// Matrix of `c ↦ u c` on coordinates.
fn left_mul_matrix(u: &CompositionElement) -> ExactMatrix {
    let (field, spec) = (u.field(), u.spec());
    let d = spec.dim();
    let mut m = ExactMatrix::zeros(field, d, d);
    for j in 0..d {
        let col = u.mul(&CompositionElement::basis(field, spec, j));
        for (i, x) in col.coords().iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

fn try_spinor<R: Rng + ?Sized>(field: Field, spec: &AlgebraSpec, rng: &mut R) -> Option<SpinorPair> {
    let u = null_vector(field, spec, rng)?;
    let kernel = left_mul_matrix(&u).kernel();
    let basis = kernel.basis_vectors();
    let combo = |rng: &mut R| -> CompositionElement {
        let mut c = CompositionElement::zero(field, spec);
        for b in &basis {
            let bi = CompositionElement::new(spec, b.clone()).expect("kernel vector");
            c = c.add(&bi.scale(&field.random(rng)));
        }
        c
    };
    let (c1, c2) = (combo(rng), combo(rng));
    let cross_term = c1.inner(&c2);
    let (a, b, cc) = (c2.norm(), &cross_term + &cross_term, c1.norm());
    let lambda = if a.is_zero() && b.is_zero() && cc.is_zero() {
        field.random(rng)
    } else if a.is_zero() {
        if b.is_zero() {
            return None;
        }
        -(cc / b)
    } else {
        let disc = &b * &b - field.from_i64(4) * &a * &cc;
        let root = sqrt_exact(&disc)?;
        (-b + root) / (field.from_i64(2) * a)
    };
    let c = c1.add(&c2.scale(&lambda));
    let pair = SpinorPair { u, v: c.conj() };
    (pair.is_valid() && !pair.v.is_zero()).then_some(pair)
}

/// A pseudo-random spinor pair with both entries nonzero.
///
/// Needs isotropic octonions: any prime field, or the split presentation over the rationals.
pub fn spinor_sample_with<R: Rng + ?Sized>(field: Field, spec: &AlgebraSpec, rng: &mut R) -> Result<SpinorPair> {
    if spec.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, found: spec.dim() });
    }
    if field == Field::Rational && !spec.signs().contains(&1) {
        return Err(Error::UnsupportedField("the compact octonions are anisotropic over q".into()));
    }
    (0..64).find_map(|_| try_spinor(field, spec, rng)).ok_or(Error::SamplingFailed)
}

pub fn spinor_sample(field: Field, spec: &AlgebraSpec, seed: u64) -> Result<SpinorPair> {
    spinor_sample_with(field, spec, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn linear_form(coeffs: &[Scalar], pair: &SpinorPair) -> Result<Scalar> {
    let uv: Vec<&Scalar> = pair.u.coords().iter().chain(pair.v.coords()).collect();
    if coeffs.len() != uv.len() {
        return Err(Error::DimensionMismatch { expected: uv.len(), found: coeffs.len() });
    }
    let mut acc = pair.u.field().zero();
    for (a, b) in coeffs.iter().zip(uv) {
        acc += &(a * b);
    }
    Ok(acc)
}

fn apply(m: &ExactMatrix, x: &CompositionElement) -> Result<CompositionElement> {
    CompositionElement::new(x.spec(), m.mul_vec(x.coords())?)
}

/// The family element
///
/// ```text
///     ( ρ(u,v)  u   ȳ      )
///     ( ū       0   v̄      )
///     ( y       v   σ(u,v) )
/// ```
///
/// with `y = α(u) + β(v)`.
pub fn s10_family_element(
    pair: &SpinorPair,
    rho: &[Scalar],
    sigma: &[Scalar],
    alpha: &ExactMatrix,
    beta: &ExactMatrix,
) -> Result<JordanElement> {
    let y = apply(alpha, &pair.u)?.add(&apply(beta, &pair.v)?);
    let field = pair.u.field();
    JordanElement::new(
        linear_form(rho, pair)?,
        field.zero(),
        linear_form(sigma, pair)?,
        pair.v.conj(),
        y,
        pair.u.clone(),
    )
}

/// Random forms `ρ, σ` on `(u, v)` and endomorphisms `α, β` of the octonions.
#[derive(Clone, Debug)]
pub struct FamilyForms {
    pub rho: Vec<Scalar>,
    pub sigma: Vec<Scalar>,
    pub alpha: ExactMatrix,
    pub beta: ExactMatrix,
}

impl FamilyForms {
    pub fn random<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Self {
        let vec = |rng: &mut R, n: usize| (0..n).map(|_| field.random(rng)).collect::<Vec<_>>();
        let rho = vec(rng, 16);
        let sigma = vec(rng, 16);
        let alpha = ExactMatrix::new(field, 8, 8, vec(rng, 64)).expect("sized");
        let beta = ExactMatrix::new(field, 8, 8, vec(rng, 64)).expect("sized");
        FamilyForms { rho, sigma, alpha, beta }
    }

    pub fn element(&self, pair: &SpinorPair) -> Result<JordanElement> {
        s10_family_element(pair, &self.rho, &self.sigma, &self.alpha, &self.beta)
    }
}

/// Coefficients `(c0, c1, c2, c3)` of `det3(s p + t q) = c0 s³ + c1 s²t + c2 st² + c3 t³`.
pub fn line_cubic(p: &JordanElement, q: &JordanElement) -> [Scalar; 4] {
    [det3(p), pair(&adjoint(p), q), pair(&adjoint(q), p), det3(q)]
}

/// The third intersection of the line `pq` with the cubic, for `p, q` on the cubic.
pub fn third_point_on_line(p: &JordanElement, q: &JordanElement) -> Result<JordanElement> {
    let [c0, c1, c2, c3] = line_cubic(p, q);
    if !c0.is_zero() || !c3.is_zero() {
        return Err(Error::NotOnCubic);
    }
    if projective_equal(&p.to_vector(), &q.to_vector())? {
        return Err(Error::CoincidentPoints);
    }
    if c1.is_zero() && c2.is_zero() {
        return Err(Error::LineInsideCubic);
    }
    Ok(p.scale(&c2).sub(&q.scale(&c1)))
}

/// Points `s x + t h` on the cubic other than `x`, for `x` on the cubic.
pub fn residual_points(x: &JordanElement, h: &JordanElement) -> Result<Vec<JordanElement>> {
    let [c0, c1, c2, c3] = line_cubic(x, h);
    if !c0.is_zero() {
        return Err(Error::NotOnCubic);
    }
    let field = x.field();
    let roots: Vec<(Scalar, Scalar)> = if !c1.is_zero() {
        let disc = &c2 * &c2 - field.from_i64(4) * &c1 * &c3;
        let root = sqrt_exact(&disc).ok_or(Error::NonGeneric { what: "in-field residual roots", dim: 0 })?;
        let two_c1 = field.from_i64(2) * &c1;
        vec![((-&c2 + &root) / &two_c1, field.one()), ((-&c2 - &root) / &two_c1, field.one())]
    } else if !c2.is_zero() {
        vec![(field.one(), field.zero()), (-c3, c2)]
    } else if !c3.is_zero() {
        vec![(field.one(), field.zero())]
    } else {
        return Err(Error::LineInsideCubic);
    };
    Ok(roots.into_iter().map(|(s, t)| x.scale(&s).add(&h.scale(&t))).collect())
}

/// Secant-line demo: two family points `p, q`, the third point `x` of their
/// line on the cubic, a hyperplane `H` of a 10-dimensional space `P` through
/// them, `h = line(p, q) ∩ H`, and recovery of `p, q` from `line(x, h)`.
pub fn rationality_demo(field: Field, spec: &AlgebraSpec, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degenerate = 0;
    for _ in 0..RETRY_BUDGET {
        match demo_attempt(field, spec, &mut rng) {
            Ok(payload) => {
                let ok = payload["x_on_cubic"] == true
                    && payload["h_in_H"] == true
                    && payload["h_on_line_pq"] == true
                    && payload["recovered_p"] == true
                    && payload["recovered_q"] == true;
                let mut payload = payload;
                payload["degenerate_draws"] = json!(degenerate);
                return CheckReport::new("rationality", Status::from_bool(ok), field.to_string(), seed, payload);
            }
            Err(Error::UnsupportedField(msg)) => {
                return CheckReport::new(
                    "rationality",
                    Status::Skip,
                    field.to_string(),
                    seed,
                    json!({ "reason": msg }),
                );
            }
            Err(_) => degenerate += 1,
        }
    }
    CheckReport::new(
        "rationality",
        Status::Degenerate,
        field.to_string(),
        seed,
        json!({ "degenerate_draws": degenerate }),
    )
}

fn demo_attempt<R: Rng + ?Sized>(field: Field, spec: &AlgebraSpec, rng: &mut R) -> Result<serde_json::Value> {
    let forms = FamilyForms::random(field, rng);
    let p = forms.element(&spinor_sample_with(field, spec, rng)?)?;
    let q = forms.element(&spinor_sample_with(field, spec, rng)?)?;
    let x = third_point_on_line(&p, &q)?;
    if x.is_zero()
        || projective_equal(&x.to_vector(), &p.to_vector())?
        || projective_equal(&x.to_vector(), &q.to_vector())?
    {
        return Err(Error::Tangency);
    }
    let n = ambient_dim(spec.dim());
    let mut vecs = vec![p.to_vector(), q.to_vector()];
    let randoms = std::iter::repeat_with(|| (0..n).map(|_| field.random(rng)).collect::<Vec<_>>());
    let big_p = extend_span(field, n, &vecs, randoms.take(64), 10)?;
    if big_p.dim() != 10 {
        return Err(Error::DependentPoints);
    }
    let f: Vec<Scalar> = (0..n).map(|_| field.random(rng)).collect();
    let hyperplane = ExactMatrix::from_rows(field, n, std::slice::from_ref(&f))?.kernel();
    let big_h = big_p.intersect(&hyperplane)?;
    let (fp, fq) = (crate::exactmath::dot(&f, &p.to_vector()), crate::exactmath::dot(&f, &q.to_vector()));
    let h = p.scale(&fq).sub(&q.scale(&fp));
    if h.is_zero() || big_h.dim() != 9 {
        return Err(Error::DegeneratePair);
    }
    vecs.push(h.to_vector());
    let h_on_line = Subspace::span(field, n, &vecs)?.dim() == 2;
    let residual = residual_points(&x, &h)?;
    let found = |target: &JordanElement| {
        residual.iter().any(|r| !r.is_zero() && projective_equal(&r.to_vector(), &target.to_vector()).unwrap_or(false))
    };
    Ok(json!({
        "rank_p": rank_of(&p),
        "rank_q": rank_of(&q),
        "P_dim": big_p.dim(),
        "H_dim": big_h.dim(),
        "x_on_cubic": det3(&x).is_zero(),
        "h_in_H": big_h.contains(&h.to_vector()),
        "h_on_line_pq": h_on_line,
        "recovered_p": found(&p),
        "recovered_q": found(&q),
    }))
}
