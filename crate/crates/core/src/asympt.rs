//! `Φ(α) = Π α_i^{-α_i}` over polytopes cut out of the ordered simplex, the
//! discrete sets `Ω_n` of partitions, and bound tables.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cochar::partition::{hook_dim, LinearForm, Partition};
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const FEASIBILITY_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_STARTS: usize = 16;
const PROBES: usize = 2000;
const MAX_ASCENT_STEPS: usize = 200_000;
const MAX_PROJECTION_SWEEPS: usize = 200_000;

/// `Φ(α) = exp(-Σ α_i ln α_i)` with `0 ln 0 = 0`.
pub fn phi(alpha: &[f64]) -> Result<f64> {
    if let Some(i) = alpha.iter().position(|&x| x < 0.0) {
        return Err(Error::NegativeCoordinate(i));
    }
    Ok(entropy(alpha).exp())
}

fn entropy(alpha: &[f64]) -> f64 {
    -alpha.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

/// `Σ_j γ_j α_j + s γ_0 >= 0` for every form, where `s = offset_scale`.
/// With `s = 0` this is the continuous set; `s = 1/n` is its inflation
/// matching `Ω_n` after dividing by `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    pub q: usize,
    pub forms: Vec<LinearForm>,
    pub include_ordering: bool,
    pub include_simplex: bool,
    /// `(i, θ_i)` for `q < i <= r`; only the discrete set uses them.
    pub theta_caps: Vec<(usize, usize)>,
    /// `Some(r)`: coordinates past `r` vanish.
    pub cutoff: Option<usize>,
    pub offset_scale: f64,
}

impl Polytope {
    /// Ordered simplex in `R^q`.
    pub fn ordered_simplex(q: usize) -> Self {
        Polytope { q, forms: vec![], include_ordering: true, include_simplex: true, theta_caps: vec![], cutoff: None, offset_scale: 0.0 }
    }

    /// Ordered simplex with `α_1 - α_{q-1} - α_q >= 0`; the discrete
    /// constraint carries the offset `+1` and `λ_{q+1} = 0`.
    pub fn lemma(q: usize) -> Result<Self> {
        if q < 4 {
            return Err(Error::QTooSmall(q));
        }
        let mut gamma = vec![0; q];
        gamma[0] = 1;
        gamma[q - 2] = -1;
        gamma[q - 1] = -1;
        Ok(Polytope { forms: vec![LinearForm { gamma, constant: 1 }], cutoff: Some(q), ..Polytope::ordered_simplex(q) })
    }

    pub fn inflated(&self, n: usize) -> Self {
        Polytope { offset_scale: 1.0 / n as f64, ..self.clone() }
    }

    fn width(&self) -> usize {
        self.cutoff.map_or(self.q, |r| r.min(self.q))
    }

    /// Largest constraint violation.
    pub fn violation(&self, alpha: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for f in &self.forms {
            worst = worst.max(-form_value(f, alpha, self.offset_scale));
        }
        if self.include_ordering {
            for i in 0..self.q {
                let next = alpha.get(i + 1).copied().unwrap_or(0.0);
                worst = worst.max(next - alpha[i]);
            }
        }
        if self.include_simplex {
            worst = worst.max((alpha.iter().sum::<f64>() - 1.0).abs());
            for &x in alpha {
                worst = worst.max(-x);
            }
        }
        for &x in &alpha[self.width()..] {
            worst = worst.max(x.abs());
        }
        worst
    }

    pub fn contains(&self, alpha: &[f64]) -> bool {
        alpha.len() == self.q && self.violation(alpha) <= FEASIBILITY_TOLERANCE
    }

    /// Euclidean projection by Dykstra's alternating scheme.
    fn project(&self, z: &[f64]) -> Result<Vec<f64>> {
        let sets = self.sets();
        let mut x = z.to_vec();
        let mut increments = vec![vec![0.0; self.q]; sets.len()];
        for _ in 0..MAX_PROJECTION_SWEEPS {
            let mut moved: f64 = 0.0;
            for (set, p) in sets.iter().zip(increments.iter_mut()) {
                let shifted: Vec<f64> = x.iter().zip(p.iter()).map(|(a, b)| a + b).collect();
                let y = set.project(&shifted);
                for k in 0..self.q {
                    p[k] = shifted[k] - y[k];
                    moved = moved.max((y[k] - x[k]).abs());
                }
                x = y;
            }
            if moved < 1e-15 {
                break;
            }
        }
        if self.violation(&x) > FEASIBILITY_TOLERANCE * 10.0 {
            return Err(Error::Infeasible);
        }
        Ok(x)
    }

    fn sets(&self) -> Vec<ConvexSet> {
        let mut sets = Vec::new();
        if self.include_simplex {
            sets.push(ConvexSet::Simplex);
        }
        if self.include_ordering {
            sets.push(ConvexSet::Ordering);
        }
        if self.width() < self.q {
            sets.push(ConvexSet::Vanish(self.width()));
        }
        for f in &self.forms {
            let mut normal = vec![0.0; self.q];
            for (j, g) in f.gamma.iter().enumerate().take(self.q) {
                normal[j] = *g as f64;
            }
            sets.push(ConvexSet::HalfSpace { normal, offset: f.constant as f64 * self.offset_scale });
        }
        sets
    }
}

fn form_value(f: &LinearForm, alpha: &[f64], scale: f64) -> f64 {
    f.gamma.iter().zip(alpha).map(|(g, a)| *g as f64 * a).sum::<f64>() + f.constant as f64 * scale
}

enum ConvexSet {
    Simplex,
    /// `α_1 >= ... >= α_q >= 0`.
    Ordering,
    /// Coordinates from this index on are zero.
    Vanish(usize),
    /// `normal · α + offset >= 0`.
    HalfSpace { normal: Vec<f64>, offset: f64 },
}

impl ConvexSet {
    fn project(&self, z: &[f64]) -> Vec<f64> {
        match self {
            ConvexSet::Simplex => project_simplex(z),
            ConvexSet::Ordering => project_decreasing(z).into_iter().map(|x| x.max(0.0)).collect(),
            ConvexSet::Vanish(from) => z.iter().enumerate().map(|(i, &x)| if i < *from { x } else { 0.0 }).collect(),
            ConvexSet::HalfSpace { normal, offset } => {
                let value: f64 = normal.iter().zip(z).map(|(a, b)| a * b).sum::<f64>() + offset;
                let norm2: f64 = normal.iter().map(|a| a * a).sum();
                if value >= 0.0 || norm2 == 0.0 {
                    z.to_vec()
                } else {
                    z.iter().zip(normal).map(|(x, a)| x - value / norm2 * a).collect()
                }
            }
        }
    }
}

/// Sort-based projection onto `{α >= 0, Σ α = 1}`.
fn project_simplex(z: &[f64]) -> Vec<f64> {
    let mut sorted = z.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut shift = 0.0;
    for (k, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let t = (cumulative - 1.0) / (k + 1) as f64;
        if u - t > 0.0 {
            shift = t;
        }
    }
    z.iter().map(|&x| (x - shift).max(0.0)).collect()
}

/// Pool-adjacent-violators for the weakly decreasing fit.
fn project_decreasing(z: &[f64]) -> Vec<f64> {
    let mut blocks: Vec<(f64, usize)> = Vec::new();
    for &x in z {
        blocks.push((x, 1));
        while blocks.len() > 1 {
            let (b, nb) = blocks[blocks.len() - 1];
            let (a, na) = blocks[blocks.len() - 2];
            if a >= b {
                break;
            }
            blocks.pop();
            let last = blocks.len() - 1;
            blocks[last] = ((a * na as f64 + b * nb as f64) / (na + nb) as f64, na + nb);
        }
    }
    blocks.into_iter().flat_map(|(v, n)| std::iter::repeat_n(v, n)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub point: Vec<f64>,
    pub value: f64,
    pub method: String,
    /// Largest `Φ(probe) - value` seen; at most the tolerance on success.
    pub certified_gap: f64,
}

impl OptimizationResult {
    pub fn to_json(&self) -> String {
        let coords: Vec<String> = self.point.iter().map(|x| format!("{x:.15}")).collect();
        format!(
            "{{\"point\":[{}],\"value\":{:.15},\"method\":\"{}\",\"certified_gap\":{:e}}}",
            coords.join(","),
            self.value,
            self.method,
            self.certified_gap
        )
    }
}

/// The maximizer of `Φ` on `Polytope::lemma(q)`, in closed form.
pub fn lemma_max_closed_form(q: usize) -> Result<OptimizationResult> {
    if q < 4 {
        return Err(Error::QTooSmall(q));
    }
    let s2 = std::f64::consts::SQRT_2;
    let denom = 4.0 + (q as f64 - 3.0) * s2;
    let mut point = vec![s2 / denom; q];
    point[0] = 2.0 / denom;
    point[q - 2] = 1.0 / denom;
    point[q - 1] = 1.0 / denom;
    let value = phi(&point)?;
    debug_assert!((value - ((q as f64 - 3.0) + 2.0 * s2)).abs() < 1e-9);
    Ok(OptimizationResult { point, value, method: "closed_form".into(), certified_gap: 0.0 })
}

/// Multi-start projected gradient ascent of `ln Φ`.
pub fn maximize_phi(polytope: &Polytope, tolerance: f64, seed: u64) -> Result<OptimizationResult> {
    maximize_phi_with(polytope, tolerance, seed, DEFAULT_STARTS)
}

pub fn maximize_phi_with(polytope: &Polytope, tolerance: f64, seed: u64, starts: usize) -> Result<OptimizationResult> {
    let q = polytope.q;
    let width = polytope.width();
    if q == 0 || width == 0 {
        return Err(Error::Infeasible);
    }
    let outcomes: Vec<Result<Vec<f64>>> = (0..starts.max(1))
        .into_par_iter()
        .map(|s| {
            let start = if s == 0 {
                (0..q).map(|i| if i < width { 1.0 / width as f64 } else { 0.0 }).collect()
            } else {
                random_point(q, seed, s as u64)
            };
            ascend(polytope, &polytope.project(&start)?, tolerance)
        })
        .collect();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for outcome in outcomes {
        let point = outcome?;
        let value = phi(&point.iter().map(|x| x.max(0.0)).collect::<Vec<_>>())?;
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, point));
        }
    }
    let (value, point) = best.expect("at least one start");
    let mut gap = f64::NEG_INFINITY;
    for k in 0..PROBES {
        let probe = polytope.project(&random_point(q, seed ^ 0x5eed, (starts + k) as u64))?;
        gap = gap.max(phi(&probe.iter().map(|x| x.max(0.0)).collect::<Vec<_>>())? - value);
    }
    if gap > tolerance {
        return Err(Error::NoConvergence(format!("probe exceeds the optimum by {gap:e}")));
    }
    let point: Vec<f64> = point.into_iter().map(|x| x.max(0.0)).collect();
    Ok(OptimizationResult { point, value, method: "projected_gradient".into(), certified_gap: gap })
}

fn random_point(q: usize, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut v: Vec<f64> = (0..q).map(|_| -rng.gen_range(f64::EPSILON..1.0f64).ln()).collect();
    let total: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= total);
    v
}

/// Backtracking projected gradient on the entropy.
fn ascend(polytope: &Polytope, start: &[f64], tolerance: f64) -> Result<Vec<f64>> {
    let mut x = start.to_vec();
    let mut h = entropy(&x);
    let mut step = 0.1;
    for _ in 0..MAX_ASCENT_STEPS {
        let grad: Vec<f64> = x.iter().map(|&a| -(a.max(1e-300)).ln() - 1.0).collect();
        loop {
            let target: Vec<f64> = x.iter().zip(&grad).map(|(a, g)| a + step * g).collect();
            let y = polytope.project(&target)?;
            let y: Vec<f64> = y.into_iter().map(|v| v.max(0.0)).collect();
            let d2: f64 = y.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum();
            let lin: f64 = grad.iter().zip(y.iter().zip(&x)).map(|(g, (a, b))| g * (a - b)).sum();
            let hy = entropy(&y);
            if hy >= h + lin - d2 / (2.0 * step) || step < 1e-16 {
                let done = d2.sqrt() < tolerance * 1e-4 || (hy - h).abs() < 1e-16;
                x = y;
                h = hy.max(h);
                step = (step * 2.0).min(1.0);
                if done {
                    return Ok(x);
                }
                break;
            }
            step *= 0.5;
        }
    }
    Err(Error::NoConvergence(format!("no convergence within {MAX_ASCENT_STEPS} ascent steps")))
}

/// Exact integer check of the discrete constraints.
pub fn omega_n_membership(polytope: &Polytope, lambda: &Partition) -> bool {
    let r = polytope.cutoff.unwrap_or(usize::MAX);
    lambda.len() <= r
        && polytope.theta_caps.iter().all(|&(i, cap)| i <= polytope.q || lambda.part(i) <= cap)
        && polytope.forms.iter().all(|f| f.value(lambda) >= 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuSequence {
    pub mu: Partition,
    /// Units moved left to restore weak decrease.
    pub repaired: usize,
}

/// `μ_i = floor(α_i n)` for `i >= 2`, `μ_1` takes the rest.
pub fn mu_sequence(alpha: &[f64], n: usize) -> MuSequence {
    let mut mu: Vec<usize> = alpha.iter().map(|&a| (a.max(0.0) * n as f64).floor() as usize).collect();
    if mu.is_empty() {
        mu.push(0);
    }
    let tail: usize = mu[1..].iter().sum::<usize>().min(n);
    mu[0] = n - tail;
    // a tail that overshoots n is trimmed from the right
    let mut excess = mu[1..].iter().sum::<usize>() - tail;
    for x in mu[1..].iter_mut().rev() {
        let cut = excess.min(*x);
        *x -= cut;
        excess -= cut;
    }
    let mut repaired = 0;
    loop {
        let Some(i) = (1..mu.len()).find(|&i| mu[i] > mu[i - 1]) else { break };
        mu[i] -= 1;
        mu[i - 1] += 1;
        repaired += 1;
    }
    MuSequence { mu: Partition::new(mu).expect("weakly decreasing after repair"), repaired }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub n: usize,
    pub d_pow_n: f64,
    pub c_n: Option<u64>,
    pub hook_lower: Option<f64>,
}

/// `d^n` next to the computed `c_n` (`c_values[n-1]`) and `dim M(μ_n)` for
/// `μ_n = mu_sequence(alpha, n)`.
pub fn bound_report(d: f64, n_range: std::ops::RangeInclusive<usize>, c_values: Option<&[u64]>, alpha: Option<&[f64]>) -> Result<Vec<BoundRow>> {
    if d <= 0.0 {
        return Err(Error::BadParam(format!("d = {d} must be positive")));
    }
    Ok(n_range
        .map(|n| BoundRow {
            n,
            d_pow_n: d.powi(n as i32),
            c_n: c_values.and_then(|c| n.checked_sub(1).and_then(|i| c.get(i)).copied()),
            hook_lower: alpha.map(|a| crate::cochar::partition::hook_dim_f64(&mu_sequence(a, n).mu)),
        })
        .collect())
}

pub fn bound_csv(rows: &[BoundRow]) -> String {
    let mut out = String::from("n,d_pow_n,c_n,hook_lower\n");
    for r in rows {
        let c = r.c_n.map(|c| c.to_string()).unwrap_or_default();
        let h = r.hook_lower.map(|h| format!("{h}")).unwrap_or_default();
        writeln!(out, "{},{:.6e},{},{}", r.n, r.d_pow_n, c, h).unwrap();
    }
    out
}

/// `Φ(λ/n)` and the maximum over the inflated polytope for every `λ ⊢ n` in `Ω_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct InflationCheck {
    pub n: usize,
    pub members: usize,
    pub max_phi: f64,
    pub inflated_max: f64,
}

impl InflationCheck {
    pub fn holds(&self) -> bool {
        self.max_phi <= self.inflated_max + DEFAULT_TOLERANCE
    }
}

pub fn inflation_check(polytope: &Polytope, n: usize, seed: u64) -> Result<InflationCheck> {
    let members: Vec<Partition> =
        crate::cochar::partition::all_partitions(n).into_iter().filter(|l| l.len() <= polytope.q && omega_n_membership(polytope, l)).collect();
    let max_phi = members
        .iter()
        .map(|l| {
            let alpha: Vec<f64> = (1..=polytope.q).map(|i| l.part(i) as f64 / n as f64).collect();
            phi(&alpha)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let inflated_max = maximize_phi(&polytope.inflated(n), DEFAULT_TOLERANCE, seed)?.value;
    Ok(InflationCheck { n, members: members.len(), max_phi, inflated_max })
}

/// Lower bound `dim M(μ)` as an exact integer, for small `n`.
pub fn hook_lower_exact(alpha: &[f64], n: usize) -> num_bigint::BigUint {
    hook_dim(&mu_sequence(alpha, n).mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(phi(&[1.0, 0.0, 0.0]).unwrap(), 1.0);
        assert!((phi(&[0.5, 0.5]).unwrap() - 2.0).abs() < 1e-12);
        assert!((phi(&[0.2; 5]).unwrap() - 5.0).abs() < 1e-12);
        assert!(matches!(phi(&[1.5, -0.5]), Err(Error::NegativeCoordinate(1))));
    }

    #[test]
    fn closed_forms() {
        let r = lemma_max_closed_form(7).unwrap();
        assert!((r.value - 6.828_427_124_746_19).abs() < 1e-9);
        assert!((lemma_max_closed_form(6).unwrap().value - 5.828_427_124_746_19).abs() < 1e-9);
        let four = lemma_max_closed_form(4).unwrap();
        assert!((four.point.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(Polytope::lemma(4).unwrap().contains(&four.point));
        assert!(matches!(lemma_max_closed_form(3), Err(Error::QTooSmall(3))));
    }

    #[test]
    fn projections() {
        let p = project_simplex(&[0.9, 0.8, -0.2]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(project_decreasing(&[1.0, 3.0, 2.0]), vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn maximizer_matches_closed_form() {
        for q in 4..=10 {
            let r = maximize_phi(&Polytope::lemma(q).unwrap(), DEFAULT_TOLERANCE, 0).unwrap();
            let c = lemma_max_closed_form(q).unwrap();
            assert!((r.value - c.value).abs() < 1e-9, "q={q}: {} vs {}", r.value, c.value);
            assert!(r.certified_gap <= DEFAULT_TOLERANCE);
        }
    }

    /// Grid oracle for the ordered simplex: the best grid point never beats the maximizer.
    #[test]
    fn plain_simplex_and_cutoff() {
        let r = maximize_phi(&Polytope::ordered_simplex(5), DEFAULT_TOLERANCE, 3).unwrap();
        assert!((r.value - 5.0).abs() < 1e-9);
        let steps = 20;
        let mut best: f64 = 0.0;
        for a in 0..=steps {
            for b in 0..=steps - a {
                for c in 0..=steps - a - b {
                    let alpha = [a as f64 / steps as f64, b as f64 / steps as f64, c as f64 / steps as f64];
                    best = best.max(phi(&alpha).unwrap());
                }
            }
        }
        let three = maximize_phi(&Polytope::ordered_simplex(3), DEFAULT_TOLERANCE, 3).unwrap();
        assert!(best <= three.value + 1e-12);
        let cut = Polytope { cutoff: Some(1), ..Polytope::ordered_simplex(4) };
        assert!((maximize_phi(&cut, DEFAULT_TOLERANCE, 0).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_polytope() {
        // α_1 <= -1 cannot hold on the simplex
        let p = Polytope { forms: vec![LinearForm { gamma: vec![-1, 0], constant: -1 }], offset_scale: 1.0, ..Polytope::ordered_simplex(2) };
        assert!(matches!(maximize_phi(&p, DEFAULT_TOLERANCE, 0), Err(Error::Infeasible)));
    }

    #[test]
    fn discrete_membership() {
        let p = Polytope::lemma(7).unwrap();
        assert!(omega_n_membership(&p, &Partition::new(vec![2, 1, 1, 1, 1, 1]).unwrap()));
        assert!(!omega_n_membership(&p, &Partition::new(vec![1; 8]).unwrap()));
        assert!(omega_n_membership(&p, &Partition::new(vec![9]).unwrap()));
    }

    #[test]
    fn mu_sequences() {
        let alpha = lemma_max_closed_form(7).unwrap().point;
        let mu = mu_sequence(&alpha, 100);
        assert_eq!(mu.mu.n(), 100);
        assert_eq!(mu.mu.len(), 7);
        assert_eq!(mu_sequence(&[1.0, 0.0, 0.0], 13).mu.parts(), &[13]);
        let big = mu_sequence(&alpha, 10_000).mu;
        let ratio: Vec<f64> = (1..=7).map(|i| big.part(i) as f64 / 1e4).collect();
        assert!((phi(&ratio).unwrap() - phi(&alpha).unwrap()).abs() < 0.01);
        let p = Polytope::lemma(7).unwrap();
        for n in 1..=1000 {
            let mu = mu_sequence(&alpha, n).mu;
            assert_eq!(mu.n(), n);
            if n >= 10 {
                assert!(omega_n_membership(&p, &mu), "n={n} {mu}");
            }
        }
    }

    #[test]
    fn inflation_bounds_discrete_values() {
        let p = Polytope::lemma(7).unwrap();
        for n in [4, 8, 12] {
            let check = inflation_check(&p, n, 0).unwrap();
            assert!(check.holds(), "{check:?}");
        }
    }

    #[test]
    fn bound_table() {
        let rows = bound_report(1.0, 1..=3, Some(&[1, 1, 1]), None).unwrap();
        assert!(rows.iter().all(|r| r.c_n.unwrap() as f64 / r.d_pow_n == 1.0));
        let csv = bound_csv(&rows);
        assert!(csv.starts_with("n,d_pow_n,c_n,hook_lower\n"));
        assert_eq!(csv.lines().count(), 4);
        let alpha = lemma_max_closed_form(7).unwrap().point;
        let rows = bound_report(6.8284, 1..=20, None, Some(&alpha)).unwrap();
        assert_eq!(rows[19].hook_lower.unwrap(), hook_lower_exact(&alpha, 20).to_string().parse::<f64>().unwrap());
    }
}
