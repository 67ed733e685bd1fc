//! Scalar domains used by the evaluation and rank kernels.
//!
//! Everything structural is done over [`Q`]. The heavy kernels (monomial
//! evaluation, block ranks, symmetrizer sums) are generic over [`Field`] so
//! they can run over `Z/pZ` or over checked 128-bit integers, falling back to
//! exact rationals whenever the integer path overflows.

use std::fmt::Debug;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Arithmetic context. Elements are plain values; the context carries the
/// modulus or the overflow flag.
pub trait Field: Sync {
    type E: Clone + PartialEq + Send + Sync + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    /// Image of a rational, or `None` when it has no image (non-integral
    /// value in an integer context, denominator divisible by `p`).
    fn from_q(&self, value: &Q) -> Option<Self::E>;
    fn from_i64(&self, value: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn to_q(&self, a: &Self::E) -> Q;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn from_q(&self, value: &Q) -> Option<Q> {
        Some(value.clone())
    }
    fn from_i64(&self, value: i64) -> Q {
        q(value)
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn to_q(&self, a: &Q) -> Q {
        a.clone()
    }
}

/// `Z/pZ` for a prime `p < 2^62`.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 62)).contains(&p), "modulus out of range");
        PrimeField { p }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = n.mod_floor(&p);
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_q(&self, value: &Q) -> Option<u64> {
        let num = self.reduce_bigint(value.numer());
        let den = self.reduce_bigint(value.denom());
        self.inv(den).map(|d| self.mul(&num, &d))
    }
    fn from_i64(&self, value: i64) -> u64 {
        self.reduce_bigint(&BigInt::from(value))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn to_q(&self, a: &u64) -> Q {
        Q::from_integer(BigInt::from(*a))
    }
}

/// Exact integers in `i128`. Overflow does not panic; it raises a flag the
/// caller must inspect via [`CheckedIntegers::overflowed`] before trusting a
/// result.
#[derive(Debug, Default)]
pub struct CheckedIntegers {
    overflow: AtomicBool,
}

impl CheckedIntegers {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn overflowed(&self) -> bool {
        self.overflow.load(Ordering::Relaxed)
    }

    fn flag(&self) -> i128 {
        self.overflow.store(true, Ordering::Relaxed);
        0
    }
}

impl Field for CheckedIntegers {
    type E = i128;

    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn from_q(&self, value: &Q) -> Option<i128> {
        if value.is_integer() {
            value.numer().to_i128()
        } else {
            None
        }
    }
    fn from_i64(&self, value: i64) -> i128 {
        value as i128
    }
    fn add(&self, a: &i128, b: &i128) -> i128 {
        a.checked_add(*b).unwrap_or_else(|| self.flag())
    }
    fn sub(&self, a: &i128, b: &i128) -> i128 {
        a.checked_sub(*b).unwrap_or_else(|| self.flag())
    }
    fn mul(&self, a: &i128, b: &i128) -> i128 {
        a.checked_mul(*b).unwrap_or_else(|| self.flag())
    }
    fn is_zero(&self, a: &i128) -> bool {
        *a == 0
    }
    fn to_q(&self, a: &i128) -> Q {
        Q::from_integer(BigInt::from(*a))
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_q(value: &Q) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_q(text: &str) -> Option<Q> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn abs_q(value: &Q) -> Q {
    value.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(1_000_000_007);
        let a = 123_456u64;
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(&a, &inv), 1);
        assert_eq!(f.from_q(&q_frac(1, 2)).map(|h| f.mul(&h, &2)), Some(1));
    }

    #[test]
    fn prime_field_rejects_divisible_denominator() {
        let f = PrimeField::new(7);
        assert_eq!(f.from_q(&q_frac(1, 14)), None);
        assert_eq!(f.from_q(&q(-1)), Some(6));
    }

    #[test]
    fn checked_integers_flag_overflow() {
        let z = CheckedIntegers::new();
        let big = i128::MAX / 2 + 1;
        let _ = z.add(&big, &big);
        assert!(z.overflowed());
        assert_eq!(z.from_q(&q_frac(1, 2)), None);
    }

    #[test]
    fn miller_rabin_small_and_large() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(1_073_741_789));
        assert!(!is_prime_u64(1_073_741_791));
    }

    #[test]
    fn rational_text_round_trip() {
        for text in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(fmt_q(&parse_q(text).unwrap()), text);
        }
        assert!(parse_q("1/0").is_none());
    }
}
