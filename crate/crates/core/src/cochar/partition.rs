//! Partitions, the hook formula, and linear constraint families on parts.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::arith::Q;
use crate::error::{Error, Result};

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Trailing zeros are dropped; anything else out of order is an error.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadParam(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i`, 1-based, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        i.checked_sub(1).and_then(|i| self.0.get(i)).copied().unwrap_or(0)
    }

    /// Column heights.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        Partition((1..=width).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let body = text.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: std::result::Result<Vec<usize>, _> =
            body.split(',').filter(|s| !s.trim().is_empty()).map(|s| s.trim().parse::<usize>()).collect();
        Partition::new(parts.map_err(|_| Error::BadParam(format!("cannot parse partition `{text}`")))?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `n! / prod hooks`.
pub fn hook_dim(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts()[j] - i - 1;
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    factorial(lambda.n()) / hooks
}

/// `Σ_j γ_j λ_j + γ_0 >= 0`, with `gamma[j-1]` the coefficient of `λ_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub gamma: Vec<i64>,
    pub constant: i64,
}

impl LinearForm {
    pub fn value(&self, lambda: &Partition) -> i64 {
        self.gamma.iter().enumerate().map(|(j, g)| g * lambda.part(j + 1) as i64).sum::<i64>() + self.constant
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartitionConstraints {
    pub forms: Vec<LinearForm>,
    /// `(i, θ_i)`: `λ_i <= θ_i`.
    pub caps: Vec<(usize, usize)>,
    /// `Some(r)`: `λ_{r+1} = 0`.
    pub cutoff: Option<usize>,
}

impl PartitionConstraints {
    pub fn satisfied_by(&self, lambda: &Partition) -> bool {
        self.cutoff.is_none_or(|r| lambda.part(r + 1) == 0)
            && self.caps.iter().all(|&(i, cap)| lambda.part(i) <= cap)
            && self.forms.iter().all(|f| f.value(lambda) >= 0)
    }

    /// `λ_{q+1} = 0` and `λ_{q-1} + λ_q <= λ_1 + slack`.
    pub fn fractional_example(q: usize, slack: i64) -> Self {
        let mut gamma = vec![0; q];
        gamma[0] += 1;
        gamma[q - 2] -= 1;
        gamma[q - 1] -= 1;
        PartitionConstraints { forms: vec![LinearForm { gamma, constant: slack }], caps: vec![], cutoff: Some(q) }
    }
}

pub fn enumerate_partitions(n: usize, constraints: &PartitionConstraints) -> Vec<Partition> {
    all_partitions(n).into_iter().filter(|l| constraints.satisfied_by(l)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimBounds {
    /// `n! / (λ_1! ... λ_r!)`.
    pub upper: BigUint,
    /// `n! / ((λ_1+q-1)! ... (λ_q+q-1)!)`, exact.
    pub lower: Q,
}

pub fn dim_bounds(lambda: &Partition, q: usize) -> Result<DimBounds> {
    if lambda.len() > q {
        return Err(Error::TooManyParts(q));
    }
    let nf = factorial(lambda.n());
    let upper = lambda.parts().iter().fold(nf.clone(), |acc, &p| acc / factorial(p));
    let denom = (1..=q).fold(BigUint::one(), |acc, i| acc * factorial(lambda.part(i) + q - 1));
    let lower = Q::new(nf.into(), denom.into());
    Ok(DimBounds { upper, lower })
}

/// Hook dimension as `f64`, for reports.
pub fn hook_dim_f64(lambda: &Partition) -> f64 {
    hook_dim(lambda).to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q_frac;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Oracle: number of standard Young tableaux by removing corners.
    fn count_standard(parts: &[usize]) -> u64 {
        if parts.iter().all(|&x| x == 0) {
            return 1;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let corner = parts[i] > 0 && (i + 1 == parts.len() || parts[i + 1] < parts[i]);
            if corner {
                let mut smaller = parts.to_vec();
                smaller[i] -= 1;
                total += count_standard(&smaller);
            }
        }
        total
    }

    #[test]
    fn hook_formula() {
        assert_eq!(hook_dim(&p(&[5])), BigUint::from(1u32));
        assert_eq!(hook_dim(&p(&[1, 1, 1, 1])), BigUint::from(1u32));
        assert_eq!(hook_dim(&p(&[2, 1])), BigUint::from(2u32));
        for n in 1..=9 {
            for l in all_partitions(n) {
                assert_eq!(hook_dim(&l), BigUint::from(count_standard(l.parts())), "{l}");
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        let cutoff = PartitionConstraints { cutoff: Some(1), ..Default::default() };
        assert_eq!(enumerate_partitions(4, &cutoff), vec![p(&[4])]);
        let seven = PartitionConstraints::fractional_example(7, 0);
        let list = enumerate_partitions(7, &seven);
        assert!(list.contains(&p(&[2, 1, 1, 1, 1, 1])));
        assert!(!list.contains(&p(&[1, 1, 1, 1, 1, 1, 1])));
    }

    #[test]
    fn bounds() {
        let b = dim_bounds(&p(&[2, 1]), 2).unwrap();
        assert_eq!(b.upper, BigUint::from(3u32));
        assert_eq!(b.lower, q_frac(1, 2));
        assert_eq!(dim_bounds(&p(&[4]), 1).unwrap().upper, BigUint::from(1u32));
        assert!(matches!(dim_bounds(&p(&[1, 1, 1]), 2), Err(Error::TooManyParts(2))));
    }

    #[test]
    fn parsing_and_conjugate() {
        assert_eq!(Partition::parse("(3,1,1)").unwrap(), p(&[3, 1, 1]));
        assert_eq!(Partition::parse("2,2").unwrap().to_string(), "(2,2)");
        assert!(Partition::parse("(1,2)").is_err());
        assert_eq!(p(&[3, 1, 1]).conjugate(), p(&[3, 1, 1]));
        assert_eq!(p(&[2, 2, 2, 1]).conjugate(), p(&[4, 3]));
    }
}
