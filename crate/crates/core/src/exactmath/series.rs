//! Truncated power series in one variable with rational coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `Σ a_i h^i` for `i < order`; every operation discards higher terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl TruncSeries {
    pub fn new(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(order, BigRational::zero());
        TruncSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries::new(order, Vec::new())
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        TruncSeries::new(order, vec![c])
    }

    /// The series `c·h^degree`.
    pub fn monomial(order: usize, degree: usize, c: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); order];
        if degree < order {
            coeffs[degree] = c;
        }
        TruncSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncSeries::new(self.order, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inv(&self) -> Option<Self> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return None;
        }
        let inv0 = a0.recip();
        let mut b = vec![BigRational::zero(); self.order];
        if self.order > 0 {
            b[0] = inv0.clone();
        }
        for n in 1..self.order {
            let mut s = BigRational::zero();
            for k in 1..=n {
                s += &self.coeffs[k] * &b[n - k];
            }
            b[n] = -s * &inv0;
        }
        Some(TruncSeries { order: self.order, coeffs: b })
    }

    pub fn div(&self, other: &TruncSeries) -> Option<Self> {
        other.inv().map(|i| self * &i)
    }

    /// `exp(s)` for a series without constant term.
    pub fn exp(&self) -> Option<Self> {
        if !self.coeff(0).is_zero() {
            return None;
        }
        let mut result = TruncSeries::constant(self.order, BigRational::one());
        let mut power = result.clone();
        let mut fact = BigInt::one();
        for n in 1..self.order {
            power = &power * self;
            fact *= BigInt::from(n);
            result = &result + &power.scale(&BigRational::new(BigInt::one(), fact.clone()));
        }
        Some(result)
    }

    /// Divides by `h`, lowering the order by one; `None` unless the constant term vanishes.
    pub fn shift_down(&self) -> Option<Self> {
        if !self.coeff(0).is_zero() || self.order == 0 {
            return None;
        }
        Some(TruncSeries::new(self.order - 1, self.coeffs[1..].to_vec()))
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries::new(order, self.coeffs.iter().take(order).cloned().collect())
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order.min(rhs.order);
        TruncSeries::new(order, (0..order).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries::new(self.order, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self + &(-rhs)
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order.min(rhs.order);
        let mut out = vec![BigRational::zero(); order];
        for i in 0..order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..order - i {
                out[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        TruncSeries { order, coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exp_of_h() {
        let h = TruncSeries::monomial(5, 1, r(1, 1));
        let e = h.exp().unwrap();
        assert_eq!(e.coeffs(), &[r(1, 1), r(1, 1), r(1, 2), r(1, 6), r(1, 24)]);
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_h = TruncSeries::new(4, vec![r(1, 1), r(-1, 1)]);
        assert_eq!(one_minus_h.inv().unwrap().coeffs(), vec![r(1, 1); 4].as_slice());
        assert!(TruncSeries::monomial(4, 1, r(1, 1)).inv().is_none());
    }

    #[test]
    fn shifting() {
        let s = TruncSeries::new(3, vec![r(0, 1), r(2, 1), r(3, 1)]);
        assert_eq!(s.shift_down().unwrap().coeffs(), &[r(2, 1), r(3, 1)]);
    }
}
