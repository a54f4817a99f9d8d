//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    /// Residues modulo a prime `p` with `3 < p < 2^32`.
    Prime(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p >= from` with `p ≡ 1 (mod 4)`.
pub const fn smallest_prime_1mod4(from: u64) -> u64 {
    let mut n = from;
    loop {
        if n % 4 == 1 {
            let mut d = 2u64;
            let mut prime = n >= 2;
            while d * d <= n {
                if n.is_multiple_of(d) {
                    prime = false;
                    break;
                }
                d += 1;
            }
            if prime {
                return n;
            }
        }
        n += 1;
    }
}

/// Default modulus for randomized suites.
pub const DEFAULT_PRIME: u64 = 10007;

/// Default modulus when a square root of −1 is needed.
pub const SPINOR_PRIME: u64 = smallest_prime_1mod4(DEFAULT_PRIME);

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p <= 3 || p >= 1 << 32 || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    /// `num / den`; panics if `den` vanishes in this field.
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        self.from_i64(num) / self.from_i64(den)
    }

    /// Maps a rational into this field, failing when the denominator is not invertible.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&pb).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(Error::Parse(format!("denominator of {q} vanishes mod {p}")));
                }
                let n = Scalar::Residue { value: num, modulus: p };
                let d = Scalar::Residue { value: den, modulus: p };
                Ok(n / d)
            }
        }
    }

    /// Uniform residue over F_p; a small integer in [-9, 9] over the rationals.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        match self {
            Field::Rational => self.from_i64(rng.gen_range(-9..=9)),
            Field::Prime(p) => Scalar::Residue { value: rng.gen_range(0..p), modulus: p },
        }
    }

    /// A random scalar that is never zero.
    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Parses a scalar string, reducing rationals into this field.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let x: Scalar = s.parse()?;
        match (&x, self) {
            (Scalar::Rational(q), f) => f.from_rational(q),
            (Scalar::Residue { modulus, .. }, Field::Prime(p)) if *modulus == p => Ok(x),
            _ => Err(Error::FieldMismatch),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        match s.strip_prefix("fp:") {
            Some(p) => {
                let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
                Field::prime(p)
            }
            None => Err(Error::Parse(format!("unknown field {s:?}, expected q or fp:<prime>"))),
        }
    }
}

/// An element of a [`Field`].
///
/// Rationals are kept in lowest terms with positive denominator and residues
/// lie in `[0, p)`. Mixing scalars of different fields in arithmetic is a
/// logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: mod_pow(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn pow(&self, exp: u64) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    /// Residue value in `[0, p)`, `None` over the rationals.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }
}

fn check_same(a: &Scalar, b: &Scalar) -> u64 {
    match (a, b) {
        (Scalar::Residue { modulus: p, .. }, Scalar::Residue { modulus: q, .. }) if p == q => *p,
        (Scalar::Rational(_), Scalar::Rational(_)) => 0,
        _ => panic!("{}", Error::FieldMismatch),
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => {
                let p = check_same(self, rhs);
                let s = a + b;
                Scalar::Residue { value: if s >= p { s - p } else { s }, modulus: p }
            }
            _ => panic!("{}", Error::FieldMismatch),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => {
                let p = check_same(self, rhs);
                Scalar::Residue { value: if a >= b { a - b } else { a + p - b }, modulus: p }
            }
            _ => panic!("{}", Error::FieldMismatch),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => {
                let p = check_same(self, rhs);
                Scalar::Residue { value: ((*a as u128 * *b as u128) % p as u128) as u64, modulus: p }
            }
            _ => panic!("{}", Error::FieldMismatch),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `"p/q"`, a bare integer, or `"v mod p"`.
    fn from_str(s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad scalar {s:?}"));
        if let Some((v, p)) = s.split_once("mod") {
            let v: i64 = v.trim().parse().map_err(|_| bad())?;
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            return Ok(Field::prime(p)?.from_i64(v));
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least common multiple of the denominators of a rational slice.
pub(crate) fn denominator_lcm(row: &[BigRational]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_inverse_roundtrip() {
        let q = Field::Rational.ratio(-3, 7);
        assert!((&q * &q.inv().unwrap()).is_one());
    }

    #[test]
    fn residues_stay_reduced() {
        let f = Field::prime(13).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a.residue(), Some(12));
        assert_eq!((&a * &a).residue(), Some(1));
        assert_eq!((f.from_i64(5) / f.from_i64(3)).residue(), Some(6));
    }

    #[test]
    fn display_and_parse() {
        let f = Field::prime(10007).unwrap();
        let x = f.from_i64(42);
        assert_eq!(x.to_string(), "42 mod 10007");
        assert_eq!("42 mod 10007".parse::<Scalar>().unwrap(), x);
        let q = Field::Rational.ratio(6, -4);
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!("-3/2".parse::<Scalar>().unwrap(), q);
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.ratio(1, 2));
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("fp:13".parse::<Field>().unwrap(), Field::Prime(13));
        assert!("fp:15".parse::<Field>().is_err());
        assert!("fp:3".parse::<Field>().is_err());
    }

    #[test]
    fn spinor_prime_is_first_one_mod_four() {
        assert_eq!(SPINOR_PRIME % 4, 1);
        assert!(is_prime(SPINOR_PRIME));
        assert!((DEFAULT_PRIME..SPINOR_PRIME).all(|n| n % 4 != 1 || !is_prime(n)));
    }
}
