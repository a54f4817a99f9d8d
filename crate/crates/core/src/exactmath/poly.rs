//! Univariate polynomials with rational coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A polynomial in one variable, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The variable `k`.
    pub fn x() -> Self {
        UniPoly::new(vec![rat(0), rat(1)])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `binom(k + shift, n)` as a polynomial in `k`, in falling-factorial form.
    pub fn binomial(shift: i64, n: u32) -> Self {
        let mut p = UniPoly::constant(rat(1));
        let mut fact = BigInt::one();
        for i in 0..n as i64 {
            p = &p * &UniPoly::from_ints(&[shift - i, 1]);
            fact *= BigInt::from(i + 1);
        }
        p.scale(&BigRational::new(BigInt::one(), fact))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, k: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_int(&self, k: i64) -> BigRational {
        self.eval(&rat(k))
    }

    /// `P(a·k + b)`.
    pub fn compose_affine(&self, a: i64, b: i64) -> Self {
        let lin = UniPoly::from_ints(&[b, a]);
        self.coeffs.iter().rev().fold(UniPoly::zero(), |acc, c| &(&acc * &lin) + &UniPoly::constant(c.clone()))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        UniPoly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        let p = UniPoly::binomial(7, 7);
        assert_eq!(p.eval_int(0), rat(1));
        assert_eq!(p.eval_int(1), rat(8));
        assert_eq!(p.eval_int(-1), rat(0));
        assert_eq!(UniPoly::binomial(3, 1), UniPoly::from_ints(&[3, 1]));
    }

    #[test]
    fn affine_composition() {
        let p = UniPoly::from_ints(&[1, 2, 3]);
        let q = p.compose_affine(-1, 2);
        for k in -3..4 {
            assert_eq!(q.eval_int(k), p.eval_int(2 - k));
        }
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = &UniPoly::from_ints(&[1, 1]) - &UniPoly::from_ints(&[0, 1]);
        assert_eq!(p.degree(), Some(0));
        assert!((&p - &p).is_zero());
    }
}
