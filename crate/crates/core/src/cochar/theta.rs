//! The invariant `θ(e_ij, ·) = j - i` on algebras spanned by matrix-unit pairs.

use crate::algebra::GradedAlgebra;
use crate::catalog::matrix_unit_of_label;
use crate::error::{Error, Result};
use crate::linalg::is_zero_vec;
use num_traits::Zero;

pub fn theta(a: &GradedAlgebra, idx: usize) -> Result<i64> {
    let label = a.labels().get(idx).ok_or_else(|| Error::BadParam(format!("basis index {idx} out of range")))?;
    if !label.starts_with("(e") {
        return Err(Error::UnsupportedAlgebra(format!("{} has basis element {label}", a.name())));
    }
    let (i, j) = matrix_unit_of_label(label).ok_or_else(|| Error::UnsupportedAlgebra(format!("cannot read a matrix unit from {label}")))?;
    Ok(j as i64 - i as i64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaViolation {
    pub factors: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaScan {
    pub n_max: usize,
    pub products: usize,
    pub nonzero: usize,
    pub violations: Vec<ThetaViolation>,
}

impl ThetaScan {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every product of at most `n_max` basis elements: when nonzero it must be
/// a multiple of one basis element `b` with `Σ θ(a_i) = θ(b) ∈ [-1, 1]`.
pub fn theta_scan(a: &GradedAlgebra, n_max: usize) -> Result<ThetaScan> {
    let thetas: Vec<i64> = (0..a.dim()).map(|i| theta(a, i)).collect::<Result<_>>()?;
    let mut scan = ThetaScan { n_max, products: 0, nonzero: 0, violations: Vec::new() };
    // (factors, value, Σθ) for the nonzero products of the current length
    let mut layer: Vec<(Vec<usize>, Vec<crate::arith::Q>, i64)> = Vec::new();
    for len in 1..=n_max {
        let mut next = Vec::new();
        if len == 1 {
            for b in 0..a.dim() {
                next.push((vec![b], a.basis_vector(b), thetas[b]));
            }
            scan.products += a.dim();
        } else {
            // products with a zero prefix are zero, so only nonzero prefixes extend
            scan.products += a.dim().pow(len as u32 - 1) * a.dim();
            for (factors, value, sum) in &layer {
                for b in 0..a.dim() {
                    let v = a.mul_vec_basis(value, b);
                    if !is_zero_vec(&v) {
                        next.push(([factors.clone(), vec![b]].concat(), v, sum + thetas[b]));
                    }
                }
            }
        }
        for (factors, value, sum) in &next {
            scan.nonzero += 1;
            let support: Vec<usize> = (0..a.dim()).filter(|&k| !value[k].is_zero()).collect();
            let reason = if support.len() != 1 {
                Some(format!("product spans {} basis elements", support.len()))
            } else if *sum != thetas[support[0]] {
                Some(format!("Σθ = {sum} but θ(product) = {}", thetas[support[0]]))
            } else if !(-1..=1).contains(sum) {
                Some(format!("Σθ = {sum} outside [-1, 1]"))
            } else {
                None
            };
            if let Some(reason) = reason {
                scan.violations.push(ThetaViolation { factors: factors.clone(), reason });
            }
        }
        layer = next;
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    fn index(a: &GradedAlgebra, label: &str) -> usize {
        a.labels().iter().position(|l| l == label).unwrap()
    }

    #[test]
    fn theta_values() {
        let a = catalog("thm_T1_fractional").unwrap();
        assert_eq!(theta(&a, index(&a, "(e21,0)")).unwrap(), -1);
        assert_eq!(theta(&a, index(&a, "(e12,e12)")).unwrap(), 1);
        assert_eq!(theta(&a, index(&a, "(e11,e11)")).unwrap(), 0);
        let u = catalog("upper_triangular(2)").unwrap();
        assert!(matches!(theta(&u, 0), Err(Error::UnsupportedAlgebra(_))));
    }

    #[test]
    fn scans_pass() {
        for name in ["thm_T1_fractional", "thm_T3_fractional"] {
            let a = catalog(name).unwrap();
            let scan = theta_scan(&a, 4).unwrap();
            assert!(scan.passed(), "{name}: {:?}", scan.violations);
            assert_eq!(scan.products, (1..=4).map(|k| a.dim().pow(k)).sum::<usize>());
        }
    }

    #[test]
    fn uncompensated_lowering_factors_vanish() {
        let a = catalog("thm_T1_fractional").unwrap();
        let down = index(&a, "(e21,0)");
        for b in (0..a.dim()).filter(|&b| theta(&a, b).unwrap() <= 0) {
            let v = a.mul_vec_basis(&a.mul_vec_basis(&a.basis_vector(down), b), down);
            assert!(is_zero_vec(&v));
        }
    }
}
