//! Graded codimensions by evaluating multilinear graded monomials.
//!
//! A multilinear graded polynomial of degree `n` assigns a degree `t_i` to
//! each variable `x_i`. Monomials with different assignments never interact
//! (each vanishes on substitutions of the other assignment), so the
//! codimension is the sum over assignments of the rank of the matrix whose
//! rows are permutations and whose columns are (substitution, output
//! coordinate) pairs.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::GradedAlgebra;
use crate::arith::{is_prime_u64, Field, PrimeField, Rationals, Q};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, RationalEchelon};

pub const DEFAULT_PRIMES: [u64; 2] = [1_073_741_789, 1_073_741_783];
pub const DEFAULT_MAX_ENTRIES: usize = 10_000_000;
/// Blocks at most this large are also ranked exactly in modular mode.
pub const CROSS_CHECK_ENTRIES: usize = 10_000;

/// `x_{perm[0]} x_{perm[1]} ... x_{perm[n-1]}` with `x_i` of degree `degrees[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMonomial {
    pub perm: Vec<usize>,
    pub degrees: Vec<usize>,
}

impl GradedMonomial {
    pub fn new(perm: Vec<usize>, degrees: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::BadParam(format!("{perm:?} is not a permutation")));
            }
        }
        if degrees.len() != n {
            return Err(Error::SizeMismatch(format!("{} degrees for {n} variables", degrees.len())));
        }
        Ok(GradedMonomial { perm, degrees })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }
}

/// Value of the monomial with `x_i` replaced by basis element `subst[i]`.
pub fn evaluate_monomial(a: &GradedAlgebra, m: &GradedMonomial, subst: &[usize]) -> Result<Vec<Q>> {
    if subst.len() != m.len() {
        return Err(Error::SizeMismatch(format!("{} substitutions for {} variables", subst.len(), m.len())));
    }
    for (i, (&b, &t)) in subst.iter().zip(&m.degrees).enumerate() {
        if b >= a.dim() || a.degree(b) != t {
            return Err(Error::DegreeMismatch(i));
        }
    }
    let mut v = a.basis_vector(subst[m.perm[0]]);
    for &var in &m.perm[1..] {
        v = a.mul_vec_basis(&v, subst[var]);
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodimMode {
    ExactRational,
    /// Empty list: two primes near `2^30` drawn per block from the seed.
    Modular(Vec<u64>),
}

#[derive(Debug, Clone)]
pub struct CodimConfig {
    pub mode: CodimMode,
    pub seed: u64,
    pub max_entries: usize,
}

impl Default for CodimConfig {
    fn default() -> Self {
        CodimConfig { mode: CodimMode::Modular(DEFAULT_PRIMES.to_vec()), seed: 0, max_entries: DEFAULT_MAX_ENTRIES }
    }
}

impl CodimConfig {
    pub fn exact() -> Self {
        CodimConfig { mode: CodimMode::ExactRational, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Exact,
    /// Every block had the same rank modulo each of `primes` primes.
    ModularStable { primes: usize },
    ModularUnstable,
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certification::Exact => write!(f, "exact"),
            Certification::ModularStable { primes } => write!(f, "modular lower bound, stable across {primes} primes"),
            Certification::ModularUnstable => write!(f, "modular lower bound, unstable across primes"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BlockRank {
    pub assignment: Vec<usize>,
    pub entries: usize,
    pub rank: usize,
    /// `(p, rank mod p)` in modular mode.
    pub modular: Vec<(u64, usize)>,
    /// Exact rank, when computed.
    pub exact: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CodimResult {
    pub n: usize,
    pub value: u64,
    pub certification: Certification,
    pub blocks: Vec<BlockRank>,
    pub seconds: f64,
}

pub fn graded_codim(a: &GradedAlgebra, n: usize, config: &CodimConfig) -> Result<CodimResult> {
    if n == 0 {
        return Err(Error::BadParam("n must be at least 1".into()));
    }
    let start = Instant::now();
    let support = a.support();
    let assignments = assignments(&support, n);
    let components: Vec<Vec<usize>> = (0..a.semigroup().order()).map(|t| a.component_indices(t)).collect();
    let rows = factorial(n).ok_or_else(|| Error::ResourceLimit(format!("{n}! rows")))?;
    for t in &assignments {
        let entries = block_entries(rows, t, &components, a.dim());
        if entries.is_none_or(|e| e > config.max_entries) {
            let labels: Vec<&str> = t.iter().map(|&s| a.semigroup().label(s)).collect();
            return Err(Error::ResourceLimit(format!(
                "block for degree assignment ({}) has more than {} entries",
                labels.join(","),
                config.max_entries
            )));
        }
    }
    let blocks: Vec<BlockRank> = assignments
        .par_iter()
        .enumerate()
        .map(|(index, t)| {
            let entries = block_entries(rows, t, &components, a.dim()).expect("checked above");
            let subs: Vec<&[usize]> = t.iter().map(|&s| components[s].as_slice()).collect();
            match &config.mode {
                CodimMode::ExactRational => {
                    let rank = exact_block_rank(a, &subs, rows);
                    BlockRank { assignment: t.clone(), entries, rank, modular: vec![], exact: Some(rank) }
                }
                CodimMode::Modular(primes) => {
                    let primes = if primes.is_empty() { block_primes(config.seed, index) } else { primes.clone() };
                    let modular: Vec<(u64, usize)> = primes.iter().map(|&p| (p, modular_block_rank(a, &subs, rows, p))).collect();
                    let exact = (entries <= CROSS_CHECK_ENTRIES).then(|| exact_block_rank(a, &subs, rows));
                    let rank = modular.iter().map(|x| x.1).max().unwrap_or(0);
                    if let Some(e) = exact {
                        assert!(rank <= e, "modular rank exceeds rational rank");
                    }
                    BlockRank { assignment: t.clone(), entries, rank, modular, exact }
                }
            }
        })
        .collect();
    let value = blocks.iter().map(|b| b.rank as u64).sum();
    let certification = match &config.mode {
        CodimMode::ExactRational => Certification::Exact,
        CodimMode::Modular(_) => {
            let stable = blocks.iter().all(|b| b.modular.iter().all(|m| m.1 == b.rank));
            let primes = blocks.iter().map(|b| b.modular.len()).min().unwrap_or(0);
            if stable && primes >= 2 {
                Certification::ModularStable { primes }
            } else {
                Certification::ModularUnstable
            }
        }
    };
    Ok(CodimResult { n, value, certification, blocks, seconds: start.elapsed().as_secs_f64() })
}

/// Codimension for the trivial grading.
pub fn ordinary_codim(a: &GradedAlgebra, n: usize, config: &CodimConfig) -> Result<CodimResult> {
    graded_codim(&a.regrade_trivial(), n, config)
}

pub fn codim_sequence(a: &GradedAlgebra, n_max: usize, config: &CodimConfig) -> Result<Vec<CodimResult>> {
    (1..=n_max).map(|n| graded_codim(a, n, config)).collect()
}

pub fn sequence_csv(rows: &[CodimResult]) -> String {
    let mut out = String::from("n,c_n,certification,seconds\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{:.3}\n", r.n, r.value, r.certification, r.seconds));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentEstimate {
    pub roots: Vec<f64>,
    /// Least-squares slope of `ln c_n` against `n`.
    pub slope: f64,
}

/// Diagnostic `c_n^{1/n}` values for a sequence starting at `n = 1`.
pub fn exponent_estimate(sequence: &[u64]) -> Result<ExponentEstimate> {
    if sequence.is_empty() {
        return Err(Error::EmptySequence);
    }
    if let Some(i) = sequence.iter().position(|&c| c == 0) {
        return Err(Error::BadParam(format!("entry {} is zero", i + 1)));
    }
    let roots = sequence.iter().enumerate().map(|(i, &c)| (c as f64).powf(1.0 / (i + 1) as f64)).collect();
    let xs: Vec<f64> = (1..=sequence.len()).map(|n| n as f64).collect();
    let ys: Vec<f64> = sequence.iter().map(|&c| (c as f64).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    Ok(ExponentEstimate { roots, slope })
}

/// All tuples over `support` in lexicographic order.
fn assignments(support: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| support.iter().map(move |&s| [t.clone(), vec![s]].concat())).collect();
    }
    out
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

fn block_entries(rows: usize, t: &[usize], components: &[Vec<usize>], dim: usize) -> Option<usize> {
    t.iter().try_fold(rows.checked_mul(dim)?, |acc, &s| acc.checked_mul(components[s].len()))
}

fn block_primes(seed: u64, index: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut primes = Vec::new();
    while primes.len() < 2 {
        let candidate = rng.gen_range((1u64 << 29)..(1u64 << 30)) | 1;
        if is_prime_u64(candidate) && !primes.contains(&candidate) {
            primes.push(candidate);
        }
    }
    primes
}

type Table<E> = Vec<Vec<Vec<(usize, E)>>>;

fn field_table<F: Field>(a: &GradedAlgebra, f: &F) -> Option<Table<F::E>> {
    (0..a.dim())
        .map(|i| {
            (0..a.dim())
                .map(|j| a.basis_product(i, j).iter().map(|(k, c)| f.from_q(c).map(|e| (*k, e))).collect())
                .collect()
        })
        .collect()
}

/// Feeds each nonzero column of the block (length `n!`, rows in
/// lexicographic permutation order) to `sink` until it returns `true`.
fn for_each_column<F: Field>(f: &F, table: &Table<F::E>, subs: &[&[usize]], dim: usize, mut sink: impl FnMut(Vec<F::E>) -> bool) {
    let n = subs.len();
    let mut choice = vec![0usize; n];
    if subs.iter().any(|s| s.is_empty()) {
        return;
    }
    loop {
        let basis: Vec<usize> = choice.iter().zip(subs).map(|(&c, s)| s[c]).collect();
        let mut rows: Vec<Vec<F::E>> = Vec::new();
        let mut used = vec![false; n];
        permutation_products(f, table, &basis, &mut used, None, &mut rows, dim);
        for k in 0..dim {
            let col: Vec<F::E> = rows.iter().map(|r| r[k].clone()).collect();
            if col.iter().any(|x| !f.is_zero(x)) && sink(col) {
                return;
            }
        }
        // next substitution, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < subs[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

fn permutation_products<F: Field>(
    f: &F,
    table: &Table<F::E>,
    basis: &[usize],
    used: &mut [bool],
    prefix: Option<&[F::E]>,
    out: &mut Vec<Vec<F::E>>,
    dim: usize,
) {
    if used.iter().all(|&u| u) {
        out.push(prefix.expect("n >= 1").to_vec());
        return;
    }
    for var in 0..basis.len() {
        if used[var] {
            continue;
        }
        let b = basis[var];
        let next = match prefix {
            None => {
                let mut v = vec![f.zero(); dim];
                v[b] = f.one();
                v
            }
            Some(p) => {
                let mut v = vec![f.zero(); dim];
                for (i, c) in p.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    for (k, s) in &table[i][b] {
                        v[*k] = f.add(&v[*k], &f.mul(c, s));
                    }
                }
                v
            }
        };
        used[var] = true;
        permutation_products(f, table, basis, used, Some(&next), out, dim);
        used[var] = false;
    }
}

fn modular_block_rank(a: &GradedAlgebra, subs: &[&[usize]], rows: usize, p: u64) -> usize {
    let f = PrimeField::new(p);
    let table = field_table(a, &f).unwrap_or_else(|| panic!("structure constants not defined modulo {p}"));
    let mut echelon = EchelonBasis::new_mod_p(&f);
    for_each_column(&f, &table, subs, a.dim(), |col| {
        echelon.insert(col);
        echelon.rank() == rows
    });
    echelon.rank()
}

fn exact_block_rank(a: &GradedAlgebra, subs: &[&[usize]], rows: usize) -> usize {
    let f = Rationals;
    let table = field_table(a, &f).expect("rationals");
    let mut echelon = RationalEchelon::default();
    for_each_column(&f, &table, subs, a.dim(), |col| {
        echelon.insert(col);
        echelon.rank() == rows
    });
    echelon.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::catalog::catalog;
    use crate::linalg::rank_exact;
    use crate::semigroup::{permutations, FiniteSemigroup};

    fn field_q() -> GradedAlgebra {
        GradedAlgebra::new("F", FiniteSemigroup::trivial(), vec!["1".into()], vec![0], vec![(0, 0, 0, q(1))], None).unwrap()
    }

    /// Oracle: build the full (unblocked) evaluation matrix over all
    /// monomials of all assignments and all degree-respecting substitutions.
    fn brute_force_codim(a: &GradedAlgebra, n: usize) -> usize {
        let support = a.support();
        let mut total = 0;
        for t in assignments(&support, n) {
            let mut rows = Vec::new();
            for perm in permutations(n) {
                let m = GradedMonomial::new(perm, t.clone()).unwrap();
                let mut row = Vec::new();
                for subst in assignments(&(0..a.dim()).collect::<Vec<_>>(), n) {
                    if subst.iter().zip(&t).all(|(&b, &s)| a.degree(b) == s) {
                        row.extend(evaluate_monomial(a, &m, &subst).unwrap());
                    }
                }
                rows.push(row);
            }
            total += rank_exact(&rows);
        }
        total
    }

    #[test]
    fn evaluation_examples() {
        let m2 = catalog("full_matrix(2)").unwrap();
        let idx = |l: &str| m2.labels().iter().position(|x| x == l).unwrap();
        let m12 = GradedMonomial::new(vec![0, 1], vec![0, 0]).unwrap();
        let m21 = GradedMonomial::new(vec![1, 0], vec![0, 0]).unwrap();
        assert!(evaluate_monomial(&m2, &m12, &[idx("e11"), idx("e22")]).unwrap().iter().all(num_traits::Zero::is_zero));
        assert!(evaluate_monomial(&m2, &m21, &[idx("e11"), idx("e22")]).unwrap().iter().all(num_traits::Zero::is_zero));
        assert_eq!(evaluate_monomial(&m2, &m12, &[idx("e12"), idx("e21")]).unwrap(), m2.basis_vector(idx("e11")));
        let one = GradedMonomial::new(vec![0], vec![0]).unwrap();
        assert_eq!(evaluate_monomial(&m2, &one, &[3]).unwrap(), m2.basis_vector(3));
        let graded = catalog("mk_zhalf_graded").unwrap();
        let odd = graded.component_indices(1)[0];
        assert!(matches!(evaluate_monomial(&graded, &one, &[odd]), Err(Error::DegreeMismatch(0))));
    }

    #[test]
    fn even_part_commutes_in_z2_graded_m2() {
        let a = catalog("mk_zhalf_graded").unwrap();
        let even = a.component_indices(0);
        let xy = GradedMonomial::new(vec![0, 1], vec![0, 0]).unwrap();
        let yx = GradedMonomial::new(vec![1, 0], vec![0, 0]).unwrap();
        for &x in &even {
            for &y in &even {
                let u = evaluate_monomial(&a, &xy, &[x, y]).unwrap();
                let v = evaluate_monomial(&a, &yx, &[x, y]).unwrap();
                assert_eq!(u, v);
            }
        }
    }

    #[test]
    fn block_diagonality() {
        let a = catalog("thm_T3_fractional").unwrap();
        let m = GradedMonomial::new(vec![1, 0], vec![0, 1]).unwrap();
        // substituting the wrong degrees is rejected rather than silently zero
        let c0 = a.component_indices(0)[0];
        assert!(evaluate_monomial(&a, &m, &[c0, c0]).is_err());
    }

    #[test]
    fn small_codimensions() {
        let exact = CodimConfig::exact();
        let f = field_q();
        for n in 1..=5 {
            assert_eq!(graded_codim(&f, n, &exact).unwrap().value, 1);
        }
        let m2 = catalog("full_matrix(2)").unwrap();
        assert_eq!(ordinary_codim(&m2, 1, &exact).unwrap().value, 1);
        assert_eq!(ordinary_codim(&m2, 2, &exact).unwrap().value, 2);
        for k in 2..=3 {
            let a = catalog(&format!("mk_column_graded({k})")).unwrap();
            assert_eq!(graded_codim(&a, 1, &exact).unwrap().value, k as u64);
            assert_eq!(ordinary_codim(&a, 1, &exact).unwrap().value, 1);
        }
    }

    #[test]
    fn nilpotent_sequence_vanishes() {
        let a = catalog("upper_triangular(3)").unwrap();
        let j = crate::structure::jacobson_radical(&a);
        let n = a.subalgebra(j.basis()).unwrap();
        let seq: Vec<u64> = codim_sequence(&n, 4, &CodimConfig::exact()).unwrap().iter().map(|r| r.value).collect();
        assert_eq!(seq, vec![1, 2, 0, 0]);
    }

    #[test]
    fn matches_brute_force() {
        for spec in ["thm_T3_fractional", "utk_column_graded(2)", "exampleT2(1)", "mk_zhalf_graded"] {
            let a = catalog(spec).unwrap();
            for n in 1..=3 {
                let fast = graded_codim(&a, n, &CodimConfig::exact()).unwrap();
                assert_eq!(fast.value as usize, brute_force_codim(&a, n), "{spec} n={n}");
                let modular = graded_codim(&a, n, &CodimConfig::default()).unwrap();
                assert_eq!(modular.value, fast.value);
                assert_eq!(modular.certification, Certification::ModularStable { primes: 2 });
            }
        }
    }

    #[test]
    fn seeded_primes_are_reproducible() {
        let a = catalog("thm_T3_fractional").unwrap();
        let config = CodimConfig { mode: CodimMode::Modular(vec![]), seed: 7, ..CodimConfig::default() };
        let x = graded_codim(&a, 3, &config).unwrap();
        let y = graded_codim(&a, 3, &config).unwrap();
        assert_eq!(x.blocks.iter().map(|b| b.modular.clone()).collect::<Vec<_>>(), y.blocks.iter().map(|b| b.modular.clone()).collect::<Vec<_>>());
        assert_eq!(x.value, graded_codim(&a, 3, &CodimConfig::exact()).unwrap().value);
    }

    #[test]
    fn shape_bound_and_unital_lower_bound() {
        for spec in ["thm_T1_fractional", "utk_column_graded(3)"] {
            let a = catalog(spec).unwrap();
            for n in 1..=3 {
                let r = graded_codim(&a, n, &CodimConfig::default()).unwrap();
                for b in &r.blocks {
                    assert!(b.rank <= factorial(n).unwrap().min(b.entries / factorial(n).unwrap()));
                }
                assert!(r.value >= 1);
            }
        }
    }

    #[test]
    fn resource_limit_names_the_block() {
        let a = catalog("thm_T1_fractional").unwrap();
        let config = CodimConfig { max_entries: 100, ..CodimConfig::default() };
        match graded_codim(&a, 3, &config) {
            Err(Error::ResourceLimit(msg)) => assert!(msg.contains("degree assignment")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn estimates() {
        let e = exponent_estimate(&[1, 1, 1]).unwrap();
        assert_eq!(e.roots, vec![1.0, 1.0, 1.0]);
        assert_eq!(e.slope, 0.0);
        let e = exponent_estimate(&[3, 9, 27, 81]).unwrap();
        assert!(e.roots.iter().all(|r| (r - 3.0).abs() < 1e-12));
        assert!((e.slope - 3f64.ln()).abs() < 1e-12);
        assert!(matches!(exponent_estimate(&[]), Err(Error::EmptySequence)));
    }

    #[test]
    fn csv_shape() {
        let rows = codim_sequence(&field_q(), 2, &CodimConfig::exact()).unwrap();
        let csv = sequence_csv(&rows);
        assert!(csv.starts_with("n,c_n,certification,seconds\n1,1,exact,"));
        assert_eq!(csv.lines().count(), 3);
    }
}
