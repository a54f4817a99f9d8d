//! Fixed values and diagnostics, each checked against an independent computation.

use cartan::birational::third_point_on_line;
use cartan::certify::{
    binomial, e6_cartan, e6_weyl_dimension, m2_check_16, positive_roots, wedge_scalar, WEDGE_CYCLIC, WEDGE_LITERAL,
};
use cartan::composition::AlgebraSpec;
use cartan::error::Error;
use cartan::exactmath::{Field, DEFAULT_PRIME};
use cartan::invariants::{chern_twisted, expected_twisted_class, hilbert_end, inverse_class};
use cartan::jordan::{sample_rank1, JordanElement};
use num_rational::BigRational;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn e6_root_system_and_dimensions() {
    let roots = positive_roots(&e6_cartan());
    assert_eq!(roots.len(), 36);
    // 78 = 6 + 2·36
    assert_eq!(6 + 2 * roots.len(), 78);
    let dims: Vec<BigRational> = [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [2, 0, 0, 0, 0, 0], [3, 0, 0, 0, 0, 0]]
        .into_iter()
        .map(e6_weyl_dimension)
        .collect();
    assert_eq!(dims, vec![int(27), int(78), int(351), int(3003)]);
    assert_eq!(e6_weyl_dimension([0; 6]), int(1));
}

#[test]
fn span_rank_target_counts() {
    assert_eq!(binomial(10, 3), 120);
    assert_eq!(binomial(11, 3), 165);
}

#[test]
fn m2_16_diagnostics_explain_the_missing_rank() {
    let report = m2_check_16();
    let p = &report.payload;
    assert_eq!(p["rank_compact_table"], 119);
    assert_eq!(p["rank_split_table"], 119);
    assert_eq!(p["real_part_relation_vanishes"], true);
    assert_eq!(p["same_order_variant_rank"], 120);
    assert_eq!(p["negative_control_rank"], 43);
}

#[test]
fn cyclic_wedge_reading_matches_with_scalar_minus_one() {
    let f = Field::Rational;
    assert_eq!(wedge_scalar(f, &WEDGE_LITERAL), None);
    assert_eq!(wedge_scalar(f, &WEDGE_CYCLIC), Some(f.from_i64(-1)));
}

#[test]
fn twisted_chern_class_is_the_inverse_of_the_expected_one() {
    let computed = chern_twisted();
    let expected: Vec<BigRational> = [0, 3, 0, 0, 0, 12, 0].iter().map(|&x| int(x)).collect();
    assert_eq!(computed, expected);
    assert_eq!(inverse_class(&computed), expected_twisted_class());
}

#[test]
fn euler_characteristics_of_end() {
    assert_eq!(hilbert_end(0), int(0));
    assert_eq!(hilbert_end(-1), int(9));
    assert_eq!(hilbert_end(1), int(-9));
}

#[test]
fn secant_of_two_plane_points_lies_in_the_cubic() {
    let field = Field::Prime(DEFAULT_PRIME);
    let spec = AlgebraSpec::octonions();
    let p = sample_rank1(field, &spec, 1);
    let q = sample_rank1(field, &spec, 2);
    assert_eq!(third_point_on_line(&p, &q), Err(Error::LineInsideCubic));
    let e = |i| JordanElement::e(field, &spec, i);
    assert_eq!(third_point_on_line(&e(1), &e(2)), Err(Error::LineInsideCubic));
}
