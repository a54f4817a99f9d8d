//! Hilbert polynomials of the rank-9 bundle on the cubic and of its
//! endomorphisms, truncated Chern classes, and the action of the two
//! spherical twists on K-theory.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::json;

use crate::exactmath::{TruncSeries, UniPoly};
use crate::report::{CheckReport, Status};

/// Truncation order of all Chern computations: everything is taken mod `h⁸`.
pub const CHERN_ORDER: usize = 8;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `P_E(k) = 27·C(k+7, 7)`.
pub fn hilbert_e_poly() -> UniPoly {
    UniPoly::binomial(7, 7).scale(&rat(27))
}

/// `P_End(k) = 3⁵C(k+6,7) − 3⁴C(k+5,5) + 3³C(k+4,3) − 3²C(k+3,1)`.
pub fn hilbert_end_poly() -> UniPoly {
    let terms = [(243, 6, 7), (-81, 5, 5), (27, 4, 3), (-9, 3, 1)];
    terms.iter().fold(UniPoly::zero(), |acc, &(c, shift, n)| &acc + &UniPoly::binomial(shift, n).scale(&rat(c)))
}

pub fn hilbert_e(k: i64) -> BigRational {
    hilbert_e_poly().eval_int(k)
}

pub fn hilbert_end(k: i64) -> BigRational {
    hilbert_end_poly().eval_int(k)
}

/// `P(k) − P(k−3) − 27(P_E(k−2) − P_E(k−3))`.
pub fn difference_defect(p_end: &UniPoly, p_e: &UniPoly) -> UniPoly {
    let lhs = p_end - &p_end.compose_affine(1, -3);
    let rhs = (&p_e.compose_affine(1, -2) - &p_e.compose_affine(1, -3)).scale(&rat(27));
    &lhs - &rhs
}

/// `P(k) + P(−k−6)`.
pub fn serre_defect(p_end: &UniPoly) -> UniPoly {
    p_end + &p_end.compose_affine(-1, -6)
}

/// Both functional equations as exact polynomial identities, with a perturbed negative control.
pub fn check_functional_equations() -> CheckReport {
    let (p_e, p_end) = (hilbert_e_poly(), hilbert_end_poly());
    let difference = difference_defect(&p_end, &p_e).is_zero();
    let serre = serre_defect(&p_end).is_zero();
    let perturbed = &p_end + &UniPoly::constant(BigRational::one());
    let control_breaks = !serre_defect(&perturbed).is_zero();
    let degree = p_end.degree();
    let leading = p_end.leading();
    let expected_leading = BigRational::new(243.into(), BigInt::from(5040));
    let values = json!({
        "P_E(0)": hilbert_e(0).to_string(),
        "P_E(1)": hilbert_e(1).to_string(),
        "P_E(-1)": hilbert_e(-1).to_string(),
        "P_End(0)": hilbert_end(0).to_string(),
        "P_End(-1)": hilbert_end(-1).to_string(),
        "P_End(-5)": hilbert_end(-5).to_string(),
    });
    let ok = difference
        && serre
        && control_breaks
        && degree == Some(7)
        && leading == expected_leading
        && hilbert_end(0).is_zero()
        && hilbert_end(-1) == rat(9)
        && hilbert_e(0) == rat(27);
    CheckReport::new(
        "hilbert",
        Status::from_bool(ok),
        "q",
        0,
        json!({
            "difference_equation": difference,
            "serre_symmetry": serre,
            "perturbed_serre_fails": control_breaks,
            "degree_P_End": degree,
            "leading_P_End": leading.to_string(),
            "values": values,
        }),
    )
}

/// `exp(c·h)` mod `h^order`.
pub fn exp_linear(order: usize, c: i64) -> TruncSeries {
    TruncSeries::monomial(order, 1, rat(c)).exp().expect("no constant term")
}

/// `ch(E) = 27(1 − e^{−h})/(1 − e^{−3h})` mod `h^order`.
pub fn chern_character_e(order: usize) -> TruncSeries {
    let one = TruncSeries::constant(order + 1, BigRational::one());
    let num = (&one - &exp_linear(order + 1, -1)).shift_down().expect("vanishes at 0");
    let den = (&one - &exp_linear(order + 1, -3)).shift_down().expect("vanishes at 0");
    num.div(&den).expect("invertible").scale(&rat(27))
}

/// Total Chern class `(c_0, …, c_{n−1})` from a Chern character via
/// `p_k = k!·ch_k` and `k·c_k = Σ_{i=1..k} (−1)^{i−1} c_{k−i} p_i`.
pub fn chern_from_character(ch: &TruncSeries) -> Vec<BigRational> {
    let n = ch.order();
    let mut fact = BigRational::one();
    let mut p = vec![BigRational::zero(); n];
    for (k, pk) in p.iter_mut().enumerate().skip(1) {
        fact *= rat(k as i64);
        *pk = ch.coeff(k) * &fact;
    }
    let mut c = vec![BigRational::zero(); n];
    if n > 0 {
        c[0] = BigRational::one();
    }
    for k in 1..n {
        let mut s = BigRational::zero();
        for i in 1..=k {
            let term = &c[k - i] * &p[i];
            s = if i % 2 == 1 { s + term } else { s - term };
        }
        c[k] = s / rat(k as i64);
    }
    c
}

/// The inverse of [`chern_from_character`] for a bundle of the given rank.
pub fn character_from_chern(rank: i64, c: &[BigRational]) -> TruncSeries {
    let n = c.len();
    let mut p = vec![BigRational::zero(); n];
    for k in 1..n {
        // k·c_k = Σ_{i<k} (−1)^{i−1} c_{k−i} p_i + (−1)^{k−1} p_k
        let mut s = &c[k] * rat(k as i64);
        for i in 1..k {
            let term = &c[k - i] * &p[i];
            s = if i % 2 == 1 { s - term } else { s + term };
        }
        p[k] = if k % 2 == 1 { s } else { -s };
    }
    let mut fact = BigRational::one();
    let mut ch = vec![rat(rank)];
    for (k, pk) in p.iter().enumerate().skip(1) {
        fact *= rat(k as i64);
        ch.push(pk / &fact);
    }
    TruncSeries::new(n, ch)
}

/// The coefficient vector `(c_1, …, c_7)` of `c(E(−1))`.
pub fn chern_twisted() -> Vec<BigRational> {
    let ch = &chern_character_e(CHERN_ORDER) * &exp_linear(CHERN_ORDER, -1);
    chern_from_character(&ch)[1..].to_vec()
}

/// The coefficients `(c_1, …, c_7)` of `1 − 3h² + 9h⁴ − 39h⁶`.
pub fn expected_twisted_class() -> Vec<BigRational> {
    [0, -3, 0, 9, 0, -39, 0].iter().map(|&x| rat(x)).collect()
}

/// `1/(1 + Σ c_k h^k)` mod `h^{len+1}`, returned without its constant term.
pub fn inverse_class(c: &[BigRational]) -> Vec<BigRational> {
    let full = with_unit(c);
    let inv = TruncSeries::new(full.len(), full).inv().expect("constant term 1");
    inv.coeffs()[1..].to_vec()
}

fn with_unit(c: &[BigRational]) -> Vec<BigRational> {
    let mut full = vec![BigRational::one()];
    full.extend(c.iter().cloned());
    full
}

fn strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Chern classes of `E(−1)` against the expected class, with the involution check back to `ch(E)`.
pub fn chern_compute() -> CheckReport {
    let ch = chern_character_e(CHERN_ORDER);
    let rank = ch.coeff(0);
    let c = chern_twisted();
    let expected = expected_twisted_class();
    let untwist = |classes: &[BigRational]| &character_from_chern(9, &with_unit(classes)) * &exp_linear(CHERN_ORDER, 1);
    let involution_computed = untwist(&c) == ch;
    let involution_expected = untwist(&expected) == ch;
    let inverse = inverse_class(&c);
    let odd_vanish = c.iter().step_by(2).all(Zero::is_zero);
    let ok = c == expected && rank == rat(9) && involution_expected;
    CheckReport::new(
        "chern",
        Status::from_bool(ok),
        "q",
        0,
        json!({
            "rank": rank.to_string(),
            "ch_E": strings(ch.coeffs()),
            "c_twisted": strings(&c),
            "expected": strings(&expected),
            "odd_classes_vanish": odd_vanish,
            "involution_computed_class": involution_computed,
            "involution_expected_class": involution_expected,
            "inverse_of_c_twisted": strings(&inverse),
            "inverse_matches_expected": inverse == expected,
        }),
    )
}

/// A 2×2 integer matrix acting on row vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KTheoryMatrix(pub [[i64; 2]; 2]);

impl KTheoryMatrix {
    pub const IDENTITY: KTheoryMatrix = KTheoryMatrix([[1, 0], [0, 1]]);

    pub fn det(&self) -> i64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> i64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn mul(&self, other: &KTheoryMatrix) -> KTheoryMatrix {
        let (a, b) = (self.0, other.0);
        let mut m = [[0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        KTheoryMatrix(m)
    }

    pub fn sub(&self, other: &KTheoryMatrix) -> KTheoryMatrix {
        let mut m = self.0;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x -= other.0[i][j];
            }
        }
        KTheoryMatrix(m)
    }

    /// `(M − I)² = 0` and `M ≠ I`: unipotent of infinite order.
    pub fn is_nontrivial_unipotent(&self) -> bool {
        let n = self.sub(&Self::IDENTITY);
        n.mul(&n) == KTheoryMatrix([[0; 2]; 2]) && *self != Self::IDENTITY
    }
}

fn integer(q: &BigRational) -> i64 {
    assert!(q.is_integer(), "Euler characteristic {q} is not an integer");
    i64::try_from(q.to_integer()).expect("small Euler characteristic")
}

/// `χ(E(a), E(b)) = P_End(b − a)`.
pub fn euler_pairing(a: i64, b: i64) -> i64 {
    integer(&hilbert_end(b - a))
}

/// Twist `F ↦ F − χ(S, F)·S` on the basis `([E(−1)], [E(−2)])`, rows are images.
pub fn spherical_twist(s: i64) -> KTheoryMatrix {
    let basis = [-1, -2];
    let mut m = [[0; 2]; 2];
    for (i, &f) in basis.iter().enumerate() {
        m[i][i] = 1;
        let target = basis.iter().position(|&b| b == s).expect("twist by a basis object");
        m[i][target] -= euler_pairing(s, f);
    }
    KTheoryMatrix(m)
}

/// The twists by `E(−1)` and `E(−2)`.
pub fn ktheory_matrices() -> (KTheoryMatrix, KTheoryMatrix) {
    (spherical_twist(-1), spherical_twist(-2))
}

pub fn ktheory_check() -> CheckReport {
    let (a, b) = ktheory_matrices();
    let ok = a == KTheoryMatrix([[1, 0], [-9, 1]])
        && b == KTheoryMatrix([[1, 9], [0, 1]])
        && a.det() == 1
        && b.det() == 1
        && a.is_nontrivial_unipotent()
        && b.is_nontrivial_unipotent()
        && a.mul(&b) != KTheoryMatrix::IDENTITY;
    CheckReport::new(
        "ktheory",
        Status::from_bool(ok),
        "q",
        0,
        json!({
            "chi": hilbert_end(-1).to_string(),
            "twist_e_minus_1": a,
            "twist_e_minus_2": b,
            "product": a.mul(&b),
        }),
    )
}
