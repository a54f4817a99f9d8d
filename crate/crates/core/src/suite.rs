//! The check registry behind `verify`: every randomized property suite and
//! every finite certificate, addressed by a stable `check_id`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::birational::{
    make_section_through, phi_indeterminate, psi, psi_indeterminate, rationality_demo, roundtrip_check,
    section_through_point, spinor_sample_with, third_point_on_line, FamilyForms, SpinorPair, RETRY_BUDGET,
};
use crate::certify;
use crate::composition::{AlgebraSpec, CompositionElement};
use crate::error::Error;
use crate::exactmath::{fp_sqrt, projective_equal, ExactMatrix, Field, Scalar, Subspace, SPINOR_PRIME};
use crate::incidence::{
    cokernel_polar, double_projection_chart, double_projection_linear, in_entry_quadric, joint_incidence_space,
    meet_olines, polar_map_matrix, quadric_span, second_rank_one_on_line, subspace_elements, tangent_space,
    tangent_space_jacobian, IncidencePoint,
};
use crate::invariants;
use crate::jordan::{
    adjoint, cross, det3, jmul, jtrace, pair, rank1_param, rank_of, sample_rank1_with, sample_rank2_with,
    sample_rank3_with, JordanElement,
};
use crate::report::{CheckReport, Status};

/// Parameters shared by all checks of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub field: Field,
    pub seed: u64,
    /// Overrides each check's default sample count.
    pub trials: Option<usize>,
}

impl SuiteConfig {
    pub fn new(field: Field, seed: u64) -> Self {
        SuiteConfig { field, seed, trials: None }
    }

    pub fn with_trials(self, trials: usize) -> Self {
        SuiteConfig { trials: Some(trials), ..self }
    }

    /// The sample count: the override, or the default for a prime field or for `q`.
    pub fn trials_or(&self, prime_default: usize, rational_default: usize) -> usize {
        self.trials.unwrap_or(match self.field {
            Field::Prime(_) => prime_default,
            Field::Rational => rational_default,
        })
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn desc(&self) -> String {
        self.field.to_string()
    }
}

/// One registry entry.
#[derive(Clone, Copy)]
pub struct CheckSpec {
    pub id: &'static str,
    pub summary: &'static str,
    run: fn(&SuiteConfig) -> CheckReport,
}

impl CheckSpec {
    pub fn run(&self, cfg: &SuiteConfig) -> CheckReport {
        CheckReport::timed(|| (self.run)(cfg))
    }
}

impl std::fmt::Debug for CheckSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CheckSpec").field("id", &self.id).finish()
    }
}

macro_rules! entry {
    ($id:literal, $summary:literal, $f:expr) => {
        CheckSpec { id: $id, summary: $summary, run: $f }
    };
}

/// All checks, sorted by id.
pub fn registry() -> Vec<CheckSpec> {
    let mut r = vec![
        entry!("adjoint-identity", "adjoint(adjoint x) = det3(x) x and det3(adjoint x) = det3(x)^2", adjoint_identity),
        entry!("chern", "Chern classes of E(-1) from the Chern character", |_| invariants::chern_compute()),
        entry!("cokernel", "cokernel of the polar map at rank-2 points", cokernel),
        entry!("composition-laws", "norm, conjugation and alternativity of the doubling algebras", composition_laws),
        entry!("derivative-law", "first-order expansion of det3 along a direction", derivative_law),
        entry!("double-projection", "chart formula against the meet with E11", double_projection),
        entry!("e6-dims", "E6 dimension arithmetic", |_| certify::e6_dimension_arithmetic()),
        entry!("hilbert", "functional equations of the Hilbert polynomials", |_| {
            invariants::check_functional_equations()
        }),
        entry!("indeterminacy", "indeterminacy loci of psi and phi", indeterminacy),
        entry!("j3c-oracle", "det3 and adjoint against 3x3 matrices for the complex case", j3c_oracle),
        entry!("koszul", "Koszul kernel dimensions", |_| certify::koszul_check()),
        entry!("ktheory", "spherical twists on K-theory", |_| invariants::ktheory_check()),
        entry!("m2-16", "span rank of the 16 octonion quadrics", |_| certify::m2_check_16()),
        entry!("m2-27", "span rank of the 27 quadrics", |_| certify::m2_check_27()),
        entry!("meet-incidence", "meets of lines of the plane", meet_incidence),
        entry!("polar-ranks", "polar map ranks by element rank", polar_ranks),
        entry!("rank1-equivalence", "adjoint(x) = 0 iff x o x = trace(x) x", rank1_equivalence),
        entry!("rationality", "secant-line mechanics of the rationality construction", rationality),
        entry!("roundtrip-h", "psi/phi roundtrip for the quaternionic section", |c| roundtrip(c, 4)),
        entry!("roundtrip-o", "psi/phi roundtrip for the octonionic section", |c| roundtrip(c, 8)),
        entry!("spinor-family", "det3 vanishes on the spinor family", spinor_family),
        entry!("tangent-quadric", "tangent space and entry-quadric dimensions", tangent_quadric),
        entry!("third-point", "third intersection of a secant with the cubic", third_point),
        entry!("threeform-annihilator", "annihilator dimension of the sl3 three-form", |_| {
            certify::threeform_annihilator_check()
        }),
        entry!("threeform-value", "value of the sl3 three-form", |_| certify::threeform_value_check()),
        entry!("threeform-wedge", "sl3 three-form against its wedge expansion", |_| certify::threeform_wedge_check()),
    ];
    r.sort_by_key(|c| c.id);
    r
}

pub fn find(id: &str) -> Option<CheckSpec> {
    registry().into_iter().find(|c| c.id == id)
}

/// Runs every registered check, in id order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<CheckReport> {
    registry().iter().map(|c| c.run(cfg)).collect()
}

/// Every algebra dimension with both sign conventions; dimension 1 once.
pub fn all_specs() -> Vec<AlgebraSpec> {
    let mut specs = vec![AlgebraSpec::compact(1).expect("dim 1")];
    for d in [2, 4, 8] {
        specs.push(AlgebraSpec::compact(d).expect("valid dim"));
        specs.push(AlgebraSpec::split(d).expect("valid dim"));
    }
    specs
}

fn spec_label(spec: &AlgebraSpec) -> String {
    format!("{}{}", spec.dim(), if spec.is_split() { "s" } else { "c" })
}

/// Per-spec counters and an overall verdict.
struct Tally {
    rows: Vec<Value>,
    ok: bool,
}

impl Tally {
    fn new() -> Self {
        Tally { rows: Vec::new(), ok: true }
    }

    fn record(&mut self, spec: &AlgebraSpec, samples: usize, failures: usize) {
        self.ok &= failures == 0;
        self.rows.push(json!({ "algebra": spec_label(spec), "samples": samples, "failures": failures }));
    }
}

fn adjoint_identity(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(1000, 50);
    let mut rng = cfg.rng();
    let mut tally = Tally::new();
    for spec in all_specs() {
        let mut failures = 0;
        for _ in 0..n {
            let x = JordanElement::random(cfg.field, &spec, &mut rng);
            let a = adjoint(&x);
            let d = det3(&x);
            if adjoint(&a) != x.scale(&d) || det3(&a) != &d * &d {
                failures += 1;
            }
        }
        tally.record(&spec, n, failures);
    }
    CheckReport::new(
        "adjoint-identity",
        Status::from_bool(tally.ok),
        cfg.desc(),
        cfg.seed,
        json!({ "per_algebra": tally.rows }),
    )
}

fn composition_laws(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(1000, 1000);
    let mut rng = cfg.rng();
    let mut tally = Tally::new();
    for spec in all_specs() {
        let mut failures = 0;
        for _ in 0..n {
            let a = CompositionElement::random(cfg.field, &spec, &mut rng);
            let b = CompositionElement::random(cfg.field, &spec, &mut rng);
            let ab = a.mul(&b);
            let norm_ok = ab.norm() == &a.norm() * &b.norm();
            let conj_ok = ab.conj() == b.conj().mul(&a.conj());
            let alternative = a.mul(&a).mul(&b) == a.mul(&a.mul(&b));
            if !(norm_ok && conj_ok && alternative) {
                failures += 1;
            }
        }
        tally.record(&spec, n, failures);
    }
    CheckReport::new(
        "composition-laws",
        Status::from_bool(tally.ok),
        cfg.desc(),
        cfg.seed,
        json!({ "per_algebra": tally.rows }),
    )
}

/// The `t`-coefficient of the cubic `t ↦ det3(x + t h)`, by central differences.
pub fn det_linear_coefficient(x: &JordanElement, h: &JordanElement) -> Scalar {
    let f = x.field();
    let at = |t: i64| det3(&x.add(&h.scale(&f.from_i64(t))));
    let d1 = at(1) - at(-1);
    let d2 = at(2) - at(-2);
    (f.from_i64(8) * d1 - d2) / f.from_i64(12)
}

fn derivative_law(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(200, 30);
    let mut rng = cfg.rng();
    let mut constants: Vec<String> = Vec::new();
    let mut tally = Tally::new();
    for spec in all_specs() {
        let mut failures = 0;
        for _ in 0..n {
            let x = JordanElement::random(cfg.field, &spec, &mut rng);
            let h = JordanElement::random(cfg.field, &spec, &mut rng);
            let lin = det_linear_coefficient(&x, &h);
            let p = pair(&adjoint(&x), &h);
            match (lin.is_zero(), p.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let c = (lin / p).to_string();
                    if !constants.contains(&c) {
                        constants.push(c);
                    }
                }
                _ => failures += 1,
            }
        }
        tally.record(&spec, n, failures);
    }
    let single = constants.len() == 1;
    CheckReport::new(
        "derivative-law",
        Status::from_bool(tally.ok && single),
        cfg.desc(),
        cfg.seed,
        json!({ "constants_seen": constants, "c0": if single { Some(&constants[0]) } else { None }, "per_algebra": tally.rows }),
    )
}

fn rank1_equivalence(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(1000, 200);
    let mut rng = cfg.rng();
    let mut tally = Tally::new();
    let mut rank_one_random = 0;
    for spec in all_specs() {
        let mut failures = 0;
        for k in 0..n {
            let x = if k % 2 == 0 {
                sample_rank1_with(cfg.field, &spec, &mut rng)
            } else {
                JordanElement::random(cfg.field, &spec, &mut rng)
            };
            if x.is_zero() {
                continue;
            }
            let by_adjoint = adjoint(&x).is_zero();
            let by_square = jmul(&x, &x) == x.scale(&jtrace(&x));
            if k % 2 == 1 && by_adjoint {
                rank_one_random += 1;
            }
            if by_adjoint != by_square || (k % 2 == 0 && !by_adjoint) {
                failures += 1;
            }
        }
        tally.record(&spec, n, failures);
    }
    CheckReport::new(
        "rank1-equivalence",
        Status::from_bool(tally.ok),
        cfg.desc(),
        cfg.seed,
        json!({ "per_algebra": tally.rows, "random_elements_of_rank_one": rank_one_random }),
    )
}

/// The field used for the complex-matrix oracle and a square root of `−1` in it.
fn oracle_field(cfg: &SuiteConfig) -> (Field, Scalar) {
    let field = match cfg.field {
        Field::Prime(p) if p % 4 == 1 => cfg.field,
        _ => Field::Prime(SPINOR_PRIME),
    };
    let iota = fp_sqrt(&-field.one()).expect("p = 1 mod 4");
    (field, iota)
}

/// `a + b e1 ↦ a + b·ι`, a ring map from the 2-dimensional algebra when `ι² = e1²`.
fn to_scalar(z: &CompositionElement, iota: &Scalar) -> Scalar {
    &z.coords()[0] + &(&z.coords()[1] * iota)
}

/// The matrix `(r w v̄ / w̄ s u / v ū t)` pushed through `to_scalar`, with rows 1 and 3 negated.
pub fn complex_model(x: &JordanElement, iota: &Scalar) -> ExactMatrix {
    let f = x.field();
    let c = |z: &CompositionElement| to_scalar(z, iota);
    let rows = vec![
        vec![x.r.clone(), c(&x.w), c(&x.v.conj())],
        vec![c(&x.w.conj()), x.s.clone(), c(&x.u)],
        vec![c(&x.v), c(&x.u.conj()), x.t.clone()],
    ];
    let mut m = ExactMatrix::from_rows(f, 3, &rows).expect("3x3");
    for j in 0..3 {
        for i in [0, 2] {
            let v = -m.get(i, j).clone();
            m.set(i, j, v);
        }
    }
    m
}

pub fn det_3x3(m: &ExactMatrix) -> Scalar {
    let g = |i, j| m.get(i, j).clone();
    g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
        + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
}

pub fn adjugate_3x3(m: &ExactMatrix) -> ExactMatrix {
    let mut a = ExactMatrix::zeros(m.field(), 3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            let minor = m.get(r0, c0) * m.get(r1, c1) - m.get(r0, c1) * m.get(r1, c0);
            a.set(i, j, minor);
        }
    }
    a
}

fn j3c_oracle(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(500, 500);
    let (field, iota) = oracle_field(cfg);
    let mut rng = cfg.rng();
    let mut tally = Tally::new();
    for (spec, root) in
        [(AlgebraSpec::compact(2).expect("dim 2"), iota.clone()), (AlgebraSpec::split(2).expect("dim 2"), field.one())]
    {
        let mut failures = 0;
        for _ in 0..n {
            let x = JordanElement::random(field, &spec, &mut rng);
            let m = complex_model(&x, &root);
            if det_3x3(&m) != det3(&x) || adjugate_3x3(&m) != complex_model(&adjoint(&x), &root) {
                failures += 1;
            }
        }
        tally.record(&spec, n, failures);
    }
    CheckReport::new(
        "j3c-oracle",
        Status::from_bool(tally.ok),
        field.to_string(),
        cfg.seed,
        json!({ "per_algebra": tally.rows }),
    )
}

fn tangent_quadric(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(100, 10);
    let mut rng = cfg.rng();
    let spec = AlgebraSpec::octonions();
    let mut bad = 0;
    for _ in 0..n {
        let y = IncidencePoint::new(sample_rank1_with(cfg.field, &spec, &mut rng)).expect("rank 1");
        let t = tangent_space(&y);
        if t.dim() != 17 || !t.contains(&y.element().to_vector()) || quadric_span(&y).dim() != 10 {
            bad += 1;
        }
    }
    let e = |i| IncidencePoint::new(JordanElement::e(cfg.field, &spec, i)).expect("rank 1");
    let jacobian_agrees = tangent_space(&e(1)) == tangent_space_jacobian(&e(1));
    let e22_span = quadric_span(&e(2));
    let e22_pattern = e22_span.dim() == 10
        && !e22_span.contains(&e(2).element().to_vector())
        && subspace_elements(&e22_span, &spec).iter().all(|b| b.s.is_zero() && b.u.is_zero() && b.w.is_zero());
    CheckReport::new(
        "tangent-quadric",
        Status::from_bool(bad == 0 && jacobian_agrees && e22_pattern),
        cfg.desc(),
        cfg.seed,
        json!({ "samples": n, "failures": bad, "jacobian_agrees_at_e11": jacobian_agrees, "e22_pattern": e22_pattern }),
    )
}

fn meet_incidence(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(100, 10);
    let mut rng = cfg.rng();
    let spec = AlgebraSpec::octonions();
    let (mut bad, mut degenerate, mut uniqueness_failures) = (0, 0, 0);
    for _ in 0..n {
        let y = IncidencePoint::new(sample_rank1_with(cfg.field, &spec, &mut rng)).expect("rank 1");
        let y0 = IncidencePoint::new(sample_rank1_with(cfg.field, &spec, &mut rng)).expect("rank 1");
        let Ok(m) = meet_olines(&y, &y0) else {
            degenerate += 1;
            continue;
        };
        let symmetric = meet_olines(&y0, &y).as_ref() == Ok(&m);
        if !(symmetric && in_entry_quadric(&m, &y) && in_entry_quadric(&m, &y0)) {
            bad += 1;
        }
        let joint = joint_incidence_space(&y, &y0).expect("same field");
        let hvec: Vec<Scalar> = subspace_elements(&joint, &spec).iter().fold(vec![cfg.field.zero(); 27], |acc, b| {
            let c = cfg.field.random(&mut rng);
            acc.iter().zip(b.to_vector()).map(|(a, x)| a + &(&c * &x)).collect()
        });
        let h = JordanElement::from_vector(cfg.field, &spec, &hvec).expect("ambient");
        if !h.is_zero() && second_rank_one_on_line(m.element(), &h).is_some() {
            uniqueness_failures += 1;
        }
    }
    let e = |i| IncidencePoint::new(JordanElement::e(cfg.field, &spec, i)).expect("rank 1");
    let standard = meet_olines(&e(1), &e(3)) == Ok(e(2)) && meet_olines(&e(1), &e(1)) == Err(Error::DegeneratePair);
    let degeneracy = degenerate_line_check(cfg, &mut rng);
    CheckReport::new(
        "meet-incidence",
        Status::from_bool(bad == 0 && uniqueness_failures == 0 && standard && degeneracy != Some(false)),
        cfg.desc(),
        cfg.seed,
        json!({
            "samples": n,
            "incidence_failures": bad,
            "degenerate_pairs": degenerate,
            "uniqueness_failures": uniqueness_failures,
            "standard_meets": standard,
            "spinor_lines_inside_plane": degeneracy,
        }),
    )
}

/// For a cone point `y` through `E11`, every sampled point of `span(y, E11)` has rank ≤ 1.
fn degenerate_line_check(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Option<bool> {
    let spec = AlgebraSpec::octonions();
    let field = spinor_field(cfg);
    let y = cone_point(field, &spec, rng)?;
    let e11 = JordanElement::e(field, &spec, 1);
    let cross_vanishes = cross(&y, &e11).is_zero();
    let all_rank_one = (0..8).all(|_| adjoint(&y.add(&e11.scale(&field.random(rng)))).is_zero());
    Some(cross_vanishes && all_rank_one)
}

/// `rank1_param(a, b̄)` for a spinor pair `(a, b)`: rank 1 with `cross(·, E11) = 0`.
fn cone_point(field: Field, spec: &AlgebraSpec, rng: &mut ChaCha8Rng) -> Option<JordanElement> {
    let pair = spinor_sample_with(field, spec, rng).ok()?;
    rank1_param(&pair.u, &pair.v.conj()).ok()
}

fn double_projection(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(100, 100);
    let mut rng = cfg.rng();
    let field = cfg.field;
    let spec = AlgebraSpec::octonions();
    let e11 = IncidencePoint::new(JordanElement::e(field, &spec, 1)).expect("rank 1");
    let (mut agree, mut literal_agree, mut degenerate) = (0, 0, 0);
    for _ in 0..n {
        let v = CompositionElement::random(field, &spec, &mut rng);
        let w = CompositionElement::random(field, &spec, &mut rng);
        let y = rank1_param(&v, &w).expect("same spec").scale(&field.random_nonzero(&mut rng));
        let y = IncidencePoint::new(y).expect("rank 1");
        let (Ok(chart), Ok(meet)) = (double_projection_chart(&y), meet_olines(&y, &e11)) else {
            degenerate += 1;
            continue;
        };
        if projective_equal(&chart.element().to_vector(), &meet.element().to_vector()).unwrap_or(false) {
            agree += 1;
        }
        let literal = double_projection_linear(&y).expect("chart point");
        if projective_equal(&literal.to_vector(), &meet.element().to_vector()).unwrap_or(false) {
            literal_agree += 1;
        }
    }
    let e11_rejected = double_projection_chart(&e11) == Err(Error::ZeroVector);
    CheckReport::new(
        "double-projection",
        Status::from_bool(agree == n && e11_rejected),
        cfg.desc(),
        cfg.seed,
        json!({
            "samples": n,
            "chart_agrees_with_meet": agree,
            "unswapped_block_agrees_with_meet": literal_agree,
            "degenerate": degenerate,
            "center_rejected": e11_rejected,
        }),
    )
}

fn polar_ranks(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(100, 10);
    let mut rng = cfg.rng();
    let spec = AlgebraSpec::octonions();
    let mut observed = serde_json::Map::new();
    let mut ok = true;
    for (rank, expected) in [(1u8, 10usize), (2, 18), (3, 27)] {
        let mut hist = std::collections::BTreeMap::<usize, usize>::new();
        for _ in 0..n {
            let x = match rank {
                1 => sample_rank1_with(cfg.field, &spec, &mut rng),
                2 => sample_rank2_with(cfg.field, &spec, &mut rng),
                _ => sample_rank3_with(cfg.field, &spec, &mut rng),
            };
            *hist.entry(polar_map_matrix(&x).rank()).or_default() += 1;
        }
        ok &= hist.len() == 1 && hist.contains_key(&expected);
        observed.insert(format!("rank{rank}"), json!(hist));
    }
    CheckReport::new(
        "polar-ranks",
        Status::from_bool(ok),
        cfg.desc(),
        cfg.seed,
        json!({ "samples_per_rank": n, "polar_ranks": observed }),
    )
}

/// The 9-dimensional space `{(r, −r, 0; 0, 0, w)}`.
pub fn cokernel_pattern(field: Field, spec: &AlgebraSpec) -> Subspace {
    let mut vs = vec![JordanElement::diag_ints(field, spec, 1, -1, 0).to_vector()];
    for k in 0..spec.dim() {
        let w = CompositionElement::basis(field, spec, k);
        vs.push(JordanElement { w, ..JordanElement::zero(field, spec) }.to_vector());
    }
    Subspace::span(field, vs[0].len(), &vs).expect("consistent sizes")
}

fn cokernel(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(100, 10);
    let mut rng = cfg.rng();
    let spec = AlgebraSpec::octonions();
    let e = |i| JordanElement::e(cfg.field, &spec, i);
    let pattern = cokernel_polar(&e(1).add(&e(2))).ok() == Some(cokernel_pattern(cfg.field, &spec));
    let (mut wrong_dim, mut not_polar) = (0, 0);
    for _ in 0..n {
        let p = sample_rank2_with(cfg.field, &spec, &mut rng);
        let coker = cokernel_polar(&p).expect("rank 2");
        if coker.dim() != 9 {
            wrong_dim += 1;
        }
        let z = IncidencePoint::new(adjoint(&p).normalized()).expect("adjoint of rank 2 has rank 1");
        let tz = subspace_elements(&tangent_space(&z), &spec);
        if !subspace_elements(&coker, &spec).iter().all(|c| tz.iter().all(|h| pair(c, h).is_zero())) {
            not_polar += 1;
        }
    }
    CheckReport::new(
        "cokernel",
        Status::from_bool(pattern && wrong_dim == 0 && not_polar == 0),
        cfg.desc(),
        cfg.seed,
        json!({ "e11_plus_e22_pattern": pattern, "samples": n, "wrong_dimension": wrong_dim, "outside_quadric_span": not_polar }),
    )
}

fn roundtrip(cfg: &SuiteConfig, dim: usize) -> CheckReport {
    roundtrip_for(cfg, &AlgebraSpec::compact(dim).expect("valid dim"))
}

/// The roundtrip check on the section through `E11` and `E33` for any algebra.
pub fn roundtrip_for(cfg: &SuiteConfig, spec: &AlgebraSpec) -> CheckReport {
    let dim = spec.dim();
    let e = |i| JordanElement::e(cfg.field, spec, i);
    let trials = cfg.trials_or(100, 10);
    match make_section_through(&[e(1), e(3)], cfg.seed) {
        Ok(sec) => roundtrip_check(&sec, trials, cfg.seed),
        Err(err) => CheckReport::new(
            &crate::birational::roundtrip_id(dim),
            Status::Fail,
            cfg.desc(),
            cfg.seed,
            json!({ "error": err.to_string() }),
        ),
    }
}

/// A field with isotropic compact octonions for the spinor-based checks.
fn spinor_field(cfg: &SuiteConfig) -> Field {
    match cfg.field {
        Field::Prime(_) => cfg.field,
        Field::Rational => Field::Prime(SPINOR_PRIME),
    }
}

fn indeterminacy(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(50, 5);
    let mut rng = cfg.rng();
    let spec = AlgebraSpec::octonions();
    let field = cfg.field;
    let e = |i| JordanElement::e(field, &spec, i);
    let base = make_section_through(&[e(1), e(3)], cfg.seed).expect("standard points");
    let (mut generic_ok, mut generic_bad) = (0, 0);
    for _ in 0..n {
        let y = sample_rank1_with(field, &spec, &mut rng);
        let Ok(sec) = section_through_point(&base, &y) else { continue };
        let yp = IncidencePoint::new(y).expect("rank 1");
        let undefined = matches!(psi(&yp, &sec), Err(Error::DegeneratePair));
        if undefined == psi_indeterminate(&yp, &sec) {
            generic_ok += 1;
        } else {
            generic_bad += 1;
        }
    }
    let sfield = spinor_field(cfg);
    let sbase =
        make_section_through(&[JordanElement::e(sfield, &spec, 1), JordanElement::e(sfield, &spec, 3)], cfg.seed)
            .expect("standard points");
    let s = |i| JordanElement::e(sfield, &spec, i);
    let (mut cone_ok, mut cone_bad, mut phi_ok, mut phi_bad) = (0, 0, 0, 0);
    for _ in 0..n {
        let Some(y) = cone_point(sfield, &spec, &mut rng) else { continue };
        if y.is_zero() || projective_equal(&y.to_vector(), &s(1).to_vector()).unwrap_or(true) {
            continue;
        }
        if let Ok(sec) = section_through_point(&sbase, &y) {
            let yp = IncidencePoint::new(y).expect("rank 1");
            if psi_indeterminate(&yp, &sec) && psi(&yp, &sec) == Err(Error::DegeneratePair) {
                cone_ok += 1;
            } else {
                cone_bad += 1;
            }
        }
        let Ok(pair) = spinor_sample_with(sfield, &spec, &mut rng) else { continue };
        let x = JordanElement {
            r: sfield.zero(),
            s: sfield.random(&mut rng),
            t: sfield.random(&mut rng),
            u: CompositionElement::random(sfield, &spec, &mut rng),
            v: pair.u.clone(),
            w: pair.v.conj(),
        };
        match phi_indeterminate(&x) {
            Ok(true) => phi_ok += 1,
            Ok(false) => phi_bad += 1,
            Err(_) => {}
        }
    }
    let mut generic_phi_false = 0;
    for _ in 0..n {
        let x = sample_rank2_with(field, &spec, &mut rng);
        if phi_indeterminate(&x) == Ok(false) {
            generic_phi_false += 1;
        }
    }
    let standard = phi_indeterminate(&e(2).add(&e(3))) == Ok(true)
        && psi_indeterminate(&base.y0, &base)
        && !psi_indeterminate(&IncidencePoint::new(e(3)).expect("rank 1"), &base);
    let ok = generic_bad == 0 && cone_bad == 0 && phi_bad == 0 && cone_ok > 0 && phi_ok > 0 && standard;
    CheckReport::new(
        "indeterminacy",
        Status::from_bool(ok),
        cfg.desc(),
        cfg.seed,
        json!({
            "generic_consistent": generic_ok,
            "generic_inconsistent": generic_bad,
            "spinor_field": sfield.to_string(),
            "cone_points_indeterminate": cone_ok,
            "cone_points_defined": cone_bad,
            "spinor_conditioned_phi_indeterminate": phi_ok,
            "spinor_conditioned_phi_defined": phi_bad,
            "generic_rank2_phi_defined": generic_phi_false,
            "standard_examples": standard,
        }),
    )
}

fn spinor_family(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(500, 50);
    let field = spinor_field(cfg);
    let spec = AlgebraSpec::octonions();
    let mut rng = cfg.rng();
    let (mut zero_det, mut nonzero_det, mut rank2, mut sampling_failures) = (0, 0, 0, 0);
    for _ in 0..n {
        let Ok(pair) = spinor_sample_with(field, &spec, &mut rng) else {
            sampling_failures += 1;
            continue;
        };
        let x = FamilyForms::random(field, &mut rng).element(&pair).expect("sizes match");
        if det3(&x).is_zero() {
            zero_det += 1;
        } else {
            nonzero_det += 1;
        }
        if rank_of(&x) == 2 {
            rank2 += 1;
        }
    }
    let trivial = {
        let z = CompositionElement::zero(field, &spec);
        let pair = SpinorPair::new(z.clone(), z).expect("zero pair");
        det3(&FamilyForms::random(field, &mut rng).element(&pair).expect("sizes match")).is_zero()
    };
    CheckReport::new(
        "spinor-family",
        Status::from_bool(nonzero_det == 0 && zero_det == n && trivial),
        field.to_string(),
        cfg.seed,
        json!({ "samples": n, "det_zero": zero_det, "det_nonzero": nonzero_det, "rank_two": rank2, "sampling_failures": sampling_failures }),
    )
}

fn third_point(cfg: &SuiteConfig) -> CheckReport {
    let n = cfg.trials_or(100, 20);
    let field = spinor_field(cfg);
    let spec = AlgebraSpec::octonions();
    let mut rng = cfg.rng();
    let (mut ok_count, mut bad, mut degenerate) = (0, 0, 0);
    for _ in 0..n {
        let mut done = false;
        for _ in 0..RETRY_BUDGET {
            let forms = FamilyForms::random(field, &mut rng);
            let (Ok(a), Ok(b)) =
                (spinor_sample_with(field, &spec, &mut rng), spinor_sample_with(field, &spec, &mut rng))
            else {
                degenerate += 1;
                continue;
            };
            let (p, q) = (forms.element(&a).expect("sizes"), forms.element(&b).expect("sizes"));
            match third_point_on_line(&p, &q) {
                Ok(x) => {
                    let on_line =
                        Subspace::span(field, 27, &[p.to_vector(), q.to_vector(), x.to_vector()]).map(|s| s.dim() == 2);
                    if det3(&x).is_zero() && !x.is_zero() && on_line == Ok(true) {
                        ok_count += 1;
                    } else {
                        bad += 1;
                    }
                    done = true;
                    break;
                }
                Err(Error::LineInsideCubic | Error::CoincidentPoints) => degenerate += 1,
                Err(_) => {
                    bad += 1;
                    done = true;
                    break;
                }
            }
        }
        if !done {
            bad += 1;
        }
    }
    let rank_one_pair = {
        let p = sample_rank1_with(field, &spec, &mut rng);
        let q = sample_rank1_with(field, &spec, &mut rng);
        third_point_on_line(&p, &q) == Err(Error::LineInsideCubic)
    };
    CheckReport::new(
        "third-point",
        Status::from_bool(bad == 0 && ok_count == n),
        field.to_string(),
        cfg.seed,
        json!({
            "secants": n,
            "third_point_on_cubic": ok_count,
            "failures": bad,
            "degenerate_draws": degenerate,
            "rank_one_pair_line_inside_cubic": rank_one_pair,
        }),
    )
}

fn rationality(cfg: &SuiteConfig) -> CheckReport {
    let field = spinor_field(cfg);
    rationality_demo(field, &AlgebraSpec::octonions(), cfg.seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_unique() {
        let ids: Vec<_> = registry().iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        assert!(find("m2-16").is_some());
    }

    #[test]
    fn derivative_constant_is_one() {
        let r = derivative_law(&SuiteConfig::new(Field::prime(10007).unwrap(), 3).with_trials(20));
        assert_eq!(r.payload["c0"], "1 mod 10007", "{}", r.payload);
    }

    #[test]
    fn complex_oracle_small_run() {
        let r = j3c_oracle(&SuiteConfig::new(Field::prime(10007).unwrap(), 3).with_trials(30));
        assert!(r.passed(), "{}", r.payload);
    }
}
