use cartan::certify::{
    koszul_kernel_brute, koszul_kernel_dim, sl3_from_coords, span_rank, three_form, var, Quadric, QuadricList,
};
use cartan::composition::{AlgebraSpec, CompositionElement};
use cartan::exactmath::{
    fp_sqrt, orth_complement, projective_equal, ExactMatrix, Field, Scalar, Subspace, DEFAULT_PRIME,
};
use cartan::incidence::{meet_olines, IncidencePoint};
use cartan::invariants::{character_from_chern, chern_from_character, exp_linear, inverse_class};
use cartan::jordan::{
    adjoint, cross, det3, gram_matrix, jmul, jtrace, pair, rank_of, sample_rank1_with, JordanElement,
};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fp() -> Field {
    Field::Prime(DEFAULT_PRIME)
}

fn spec_strategy() -> impl Strategy<Value = AlgebraSpec> {
    (prop::sample::select(vec![1usize, 2, 4, 8]), any::<bool>()).prop_map(|(d, split)| {
        if split && d > 1 {
            AlgebraSpec::split(d).unwrap()
        } else {
            AlgebraSpec::compact(d).unwrap()
        }
    })
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(fp()), Just(Field::Rational)]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn comm(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let (ab, ba) = (a.mul(b).unwrap(), b.mul(a).unwrap());
    let entries = ab.entries().iter().zip(ba.entries()).map(|(x, y)| x - y).collect();
    ExactMatrix::new(a.field(), a.rows(), a.cols(), entries).unwrap()
}

fn rationals(xs: &[i64]) -> Vec<BigRational> {
    xs.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_is_multiplicative(spec in spec_strategy(), field in field_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = CompositionElement::random(field, &spec, &mut r);
        let b = CompositionElement::random(field, &spec, &mut r);
        prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn conjugation_is_an_anti_involution(spec in spec_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = CompositionElement::random(fp(), &spec, &mut r);
        let b = CompositionElement::random(fp(), &spec, &mut r);
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), b.conj().mul(&a.conj()));
        prop_assert_eq!(a.mul(&a.conj()).coords()[1..].iter().filter(|c| !c.is_zero()).count(), 0);
    }

    #[test]
    fn doubling_algebras_are_alternative(spec in spec_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = CompositionElement::random(fp(), &spec, &mut r);
        let b = CompositionElement::random(fp(), &spec, &mut r);
        prop_assert_eq!(a.mul(&a.mul(&b)), a.mul(&a).mul(&b));
        prop_assert_eq!(b.mul(&a).mul(&a), b.mul(&a.mul(&a)));
    }

    #[test]
    fn adjoint_squared_is_det_times_identity(spec in spec_strategy(), seed in any::<u64>()) {
        let x = JordanElement::random(fp(), &spec, &mut rng(seed));
        let d = det3(&x);
        prop_assert_eq!(adjoint(&adjoint(&x)), x.scale(&d));
        prop_assert_eq!(det3(&adjoint(&x)), &d * &d);
    }

    #[test]
    fn euler_relation_for_the_cubic(spec in spec_strategy(), seed in any::<u64>()) {
        let x = JordanElement::random(fp(), &spec, &mut rng(seed));
        prop_assert_eq!(pair(&x, &adjoint(&x)), fp().from_i64(3) * det3(&x));
    }

    #[test]
    fn cross_product_is_symmetric_polarization(spec in spec_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = JordanElement::random(fp(), &spec, &mut r);
        let y = JordanElement::random(fp(), &spec, &mut r);
        prop_assert_eq!(cross(&x, &y), cross(&y, &x));
        prop_assert_eq!(cross(&x, &x), adjoint(&x).scale(&fp().from_i64(2)));
    }

    #[test]
    fn trilinear_form_is_symmetric(spec in spec_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = JordanElement::random(fp(), &spec, &mut r);
        let y = JordanElement::random(fp(), &spec, &mut r);
        let z = JordanElement::random(fp(), &spec, &mut r);
        let t = |a: &JordanElement, b: &JordanElement, c: &JordanElement| pair(a, &cross(b, c));
        let v = t(&x, &y, &z);
        prop_assert_eq!(&v, &t(&y, &x, &z));
        prop_assert_eq!(&v, &t(&z, &y, &x));
        prop_assert_eq!(pair(&x, &y), pair(&y, &x));
    }

    #[test]
    fn rank_one_samples_satisfy_both_characterizations(spec in spec_strategy(), field in field_strategy(), seed in any::<u64>()) {
        let x = sample_rank1_with(field, &spec, &mut rng(seed));
        prop_assert_eq!(rank_of(&x), 1);
        prop_assert!(adjoint(&x).is_zero());
        prop_assert_eq!(jmul(&x, &x), x.scale(&jtrace(&x)));
    }

    #[test]
    fn meet_is_symmetric(seed in any::<u64>()) {
        let spec = AlgebraSpec::octonions();
        let mut r = rng(seed);
        let y = IncidencePoint::new(sample_rank1_with(fp(), &spec, &mut r)).unwrap();
        let z = IncidencePoint::new(sample_rank1_with(fp(), &spec, &mut r)).unwrap();
        match (meet_olines(&y, &z), meet_olines(&z, &y)) {
            (Ok(a), Ok(b)) => prop_assert!(projective_equal(&a.element().to_vector(), &b.element().to_vector()).unwrap()),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }

    #[test]
    fn json_roundtrip(spec in spec_strategy(), field in field_strategy(), seed in any::<u64>()) {
        let x = JordanElement::random(field, &spec, &mut rng(seed));
        let v = serde_json::to_value(&x).unwrap();
        prop_assert_eq!(JordanElement::from_json(&v, field, &spec).unwrap(), x);
    }
}

proptest! {
    #[test]
    fn koszul_closed_form_matches_brute_force(dim_v in 0usize..=5, l in 0usize..=5) {
        prop_assume!(l <= dim_v);
        let brute = koszul_kernel_brute(dim_v, l).unwrap() as u64;
        prop_assert_eq!(brute, koszul_kernel_dim(l as u64, (dim_v - l) as u64));
    }

    #[test]
    fn three_form_is_alternating_and_invariant(coords in prop::collection::vec(-20i64..20, 32)) {
        let f = Field::Rational;
        let m = |k: usize| sl3_from_coords(f, &coords[8 * k..8 * k + 8].iter().map(|&c| f.from_i64(c)).collect::<Vec<_>>());
        let (a, b, c, g) = (m(0), m(1), m(2), m(3));
        let psi = |x: &ExactMatrix, y: &ExactMatrix, z: &ExactMatrix| three_form(x, y, z).unwrap();
        let v = psi(&a, &b, &c);
        prop_assert_eq!(psi(&b, &a, &c), -v.clone());
        prop_assert_eq!(psi(&a, &c, &b), -v.clone());
        prop_assert_eq!(psi(&b, &c, &a), v);
        prop_assert!(psi(&a, &a, &c).is_zero());
        let ad = psi(&comm(&g, &a), &b, &c) + psi(&a, &comm(&g, &b), &c) + psi(&a, &b, &comm(&g, &c));
        prop_assert!(ad.is_zero());
    }

    #[test]
    fn span_rank_is_monotone(pairs in prop::collection::vec((0usize..4, 0usize..4), 1..6)) {
        let quads: Vec<_> = pairs.iter().map(|&(i, j)| Quadric::product(&var(4, i, 1), &var(4, j, 1))).collect();
        let mut prev = 0;
        for k in 1..=quads.len() {
            let r = span_rank(&QuadricList::new(4, quads[..k].to_vec()));
            prop_assert!(r >= prev);
            prop_assert!(r <= 4 * k);
            prev = r;
        }
    }

    #[test]
    fn subspace_dimension_formulas(seed in any::<u64>(), da in 0usize..6, db in 0usize..6) {
        let mut r = rng(seed);
        let n = 7;
        let f = fp();
        let mut draw = |k: usize| {
            let vs: Vec<Vec<Scalar>> = (0..k).map(|_| (0..n).map(|_| f.random(&mut r)).collect()).collect();
            Subspace::span(f, n, &vs).unwrap()
        };
        let (a, b) = (draw(da), draw(db));
        let meet = a.intersect(&b).unwrap();
        let join = a.sum(&b).unwrap();
        prop_assert_eq!(meet.dim() + join.dim(), a.dim() + b.dim());
        prop_assert!(join.contains_subspace(&a) && a.contains_subspace(&meet));
        prop_assert_eq!(a.annihilator().dim(), n - a.dim());
    }

    #[test]
    fn orthogonal_complement_in_the_trace_form(seed in any::<u64>(), k in 0usize..8) {
        let spec = AlgebraSpec::compact(2).unwrap();
        let f = fp();
        let mut r = rng(seed);
        let vs: Vec<Vec<Scalar>> = (0..k).map(|_| JordanElement::random(f, &spec, &mut r).to_vector()).collect();
        let s = Subspace::span(f, 9, &vs).unwrap();
        let g = gram_matrix(f, &spec);
        let perp = orth_complement(&s, &g).unwrap();
        prop_assert_eq!(perp.dim(), 9 - s.dim());
        prop_assert_eq!(orth_complement(&perp, &g).unwrap(), s);
    }

    #[test]
    fn square_roots_square_back(a in 0u64..DEFAULT_PRIME) {
        let x = fp().from_i64(a as i64);
        if let Some(s) = fp_sqrt(&x) {
            prop_assert_eq!(&s * &s, x);
        }
    }

    #[test]
    fn scalar_strings_roundtrip(n in -10_000i64..10_000, d in 1i64..500, field in field_strategy()) {
        let x = &field.from_i64(n) / &field.from_i64(d);
        prop_assert_eq!(field.parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn exponentials_multiply(a in -5i64..5, b in -5i64..5) {
        prop_assert_eq!(&exp_linear(8, a) * &exp_linear(8, b), exp_linear(8, a + b));
    }

    #[test]
    fn chern_classes_roundtrip_and_invert(coeffs in prop::collection::vec(-9i64..9, 7), rank in 1i64..30) {
        let c = rationals(&coeffs);
        let mut full = rationals(&[1]);
        full.extend(c.iter().cloned());
        prop_assert_eq!(chern_from_character(&character_from_chern(rank, &full)), full);
        prop_assert_eq!(inverse_class(&inverse_class(&c)), c);
    }
}
