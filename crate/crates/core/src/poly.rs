//! Dense univariate polynomials over `Q`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Q;

/// Coefficients from the constant term upwards, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b x`.
    pub fn linear(a: Q, b: Q) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn x() -> Self {
        Poly::linear(Q::zero(), Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn leading(&self) -> Option<&Q> {
        self.0.last()
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.degree() == Some(0)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().expect("nonzero").recip();
        let mut rem = self.0.clone();
        let mut quot = vec![Q::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") * &lead_inv;
            for (i, x) in d.0.iter().enumerate() {
                rem[shift + i] -= &c * x;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(Q::one()), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(Q::one()));
        while !r1.is_zero() {
            let (quot, rem) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, rem);
            let s2 = &s0 - &(&quot * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&quot * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }

    /// Distinct rational roots, ascending, via the rational root theorem on
    /// the primitive integer multiple.
    pub fn rational_roots(&self) -> Vec<Q> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        // strip the root 0
        let zeros = p.0.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            roots.push(Q::zero());
            p = Poly::new(p.0[zeros..].to_vec());
        }
        if p.degree().unwrap_or(0) > 0 {
            let ints = integer_coefficients(&p);
            let a0 = ints[0].abs();
            let an = ints.last().expect("nonzero").abs();
            for num in divisors(&a0) {
                for den in divisors(&an) {
                    for sign in [1, -1] {
                        let r = Q::new(BigInt::from(sign) * &num, den.clone());
                        if !roots.contains(&r) && p.eval(&r).is_zero() {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => crate::arith::fmt_q(c),
                1 => format!("{}*{var}", crate::arith::fmt_q(c)),
                _ => format!("{}*{var}^{i}", crate::arith::fmt_q(c)),
            })
            .collect();
        terms.join(" + ")
    }
}

fn integer_coefficients(p: &Poly) -> Vec<BigInt> {
    let lcm = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<BigInt> = p.0.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    scaled.into_iter().map(|c| c / &g).collect()
}

/// Positive divisors by trial division; inputs here are small.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).cloned().unwrap_or_else(Q::zero) + other.0.get(i).cloned().unwrap_or_else(Q::zero))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        self + &(-other)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, q_frac};

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn division_identity() {
        let a = p(&[1, 2, 3, 4]);
        let d = p(&[1, 1]);
        let (quot, rem) = a.div_rem(&d);
        assert_eq!(&(&quot * &d) + &rem, a);
        assert!(rem.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_and_bezout() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 1)(x + 3) x (x^2 + 1)
        let f = &(&(&p(&[-1, 2]) * &p(&[3, 1])) * &p(&[0, 1])) * &p(&[1, 0, 1]);
        assert_eq!(f.rational_roots(), vec![q(-3), q(0), q_frac(1, 2)]);
        assert!(p(&[-2, 0, 1]).rational_roots().is_empty());
    }
}
