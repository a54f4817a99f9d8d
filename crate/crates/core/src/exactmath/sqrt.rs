//! Square roots in exact fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::scalar::Scalar;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Tonelli–Shanks square root of a residue `a` modulo the prime `p`.
///
/// The quadratic non-residue is found by scanning 2, 3, 4, ... so the
/// result is deterministic. Returns `None` for non-residues.
pub fn fp_sqrt_u64(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Square root of a prime-field scalar; `None` for non-residues and for rationals.
pub fn fp_sqrt(a: &Scalar) -> Option<Scalar> {
    match a {
        Scalar::Residue { value, modulus } => {
            fp_sqrt_u64(*value, *modulus).map(|r| Scalar::Residue { value: r, modulus: *modulus })
        }
        Scalar::Rational(_) => None,
    }
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root inside the scalar's own field, when one exists.
pub fn sqrt_exact(a: &Scalar) -> Option<Scalar> {
    match a {
        Scalar::Rational(q) => {
            let n = int_sqrt(q.numer())?;
            let d = int_sqrt(q.denom())?;
            Some(Scalar::Rational(BigRational::new(n, d)))
        }
        Scalar::Residue { .. } => fp_sqrt(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;

    #[test]
    fn small_cases() {
        assert_eq!(fp_sqrt_u64(0, 7), Some(0));
        let r = fp_sqrt_u64(4, 7).unwrap();
        assert!(r == 2 || r == 5);
        assert_eq!(fp_sqrt_u64(3, 7), None);
    }

    #[test]
    fn exhaustive_small_primes() {
        for p in [5u64, 7, 11, 13, 17, 97, 10007, 10009] {
            let squares: std::collections::BTreeSet<u64> = (0..p).map(|x| x * x % p).collect();
            for a in 0..p.min(500) {
                match fp_sqrt_u64(a, p) {
                    Some(r) => assert_eq!(r * r % p, a),
                    None => assert!(!squares.contains(&a)),
                }
            }
        }
    }

    #[test]
    fn rational_squares() {
        let f = Field::Rational;
        assert_eq!(sqrt_exact(&f.ratio(9, 4)), Some(f.ratio(3, 2)));
        assert_eq!(sqrt_exact(&f.ratio(2, 1)), None);
        assert_eq!(sqrt_exact(&f.ratio(-1, 1)), None);
    }
}
