//! Exact cocharacter multiplicities at small `n`, and the pigeonhole check
//! that full alternations of more than `dim A` variables vanish.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::partition::Partition;
use super::tableau::{inversions, AltBlock, YoungTableau};
use crate::algebra::GradedAlgebra;
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, RationalEchelon};
use crate::semigroup::permutations;
use num_traits::{One, Zero};

pub const DEFAULT_MULTIPLICITY_MAX_N: usize = 5;

/// `m(A, λ)` with the default size cap.
pub fn multiplicity_exact(a: &GradedAlgebra, lambda: &Partition) -> Result<usize> {
    multiplicity_exact_capped(a, lambda, DEFAULT_MULTIPLICITY_MAX_N)
}

/// Rank of `{e_T m}` modulo the graded identities, `T` the column-major
/// tableau of shape `λ`.
///
/// Per tag tuple `t` the quotient `P_t / (Id ∩ P_t)` is represented by the
/// values of a polynomial on a basis of the evaluation columns, so `e_T m`
/// becomes a vector over the union of those bases.
pub fn multiplicity_exact_capped(a: &GradedAlgebra, lambda: &Partition, max_n: usize) -> Result<usize> {
    let n = lambda.n();
    if n > max_n {
        return Err(Error::ResourceLimit(format!("multiplicity at n = {n} exceeds the cap n <= {max_n}")));
    }
    if n == 0 {
        return Ok(1);
    }
    let perms = permutations(n);
    let perm_index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let support = a.support();
    let tuples = tag_tuples(&support, n);
    let tuple_index: HashMap<Vec<usize>, usize> = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();

    // values[t][p] = monomial p evaluated on the column basis of block t
    let values: Vec<Vec<Vec<Q>>> = tuples.par_iter().map(|t| column_basis_values(a, t, &perms)).collect();
    let mut offsets = Vec::with_capacity(tuples.len());
    let mut total = 0;
    for v in &values {
        offsets.push(total);
        total += v.first().map_or(0, Vec::len);
    }
    if total == 0 {
        return Ok(0);
    }

    let tableau = YoungTableau::column_major(lambda);
    let rows = group_elements(tableau.rows(), n);
    let cols = group_elements(&tableau.columns(), n);
    let mut rhos: Vec<(Vec<usize>, Q)> = Vec::with_capacity(rows.len() * cols.len());
    for (pi, _) in &rows {
        for (sigma, sign) in &cols {
            rhos.push((sigma.iter().map(|&i| pi[i]).collect(), sign.clone()));
        }
    }

    let monomials: Vec<(usize, usize)> = (0..tuples.len()).flat_map(|t| (0..perms.len()).map(move |p| (t, p))).collect();
    let images: Vec<Vec<Q>> = monomials
        .par_iter()
        .map(|&(ti, pi)| {
            let t = &tuples[ti];
            let p = &perms[pi];
            let mut row = vec![Q::zero(); total];
            for (rho, sign) in &rhos {
                let mut moved = vec![0; n];
                for i in 0..n {
                    moved[rho[i]] = t[i];
                }
                let target = tuple_index[&moved];
                let image: Vec<usize> = p.iter().map(|&v| rho[v]).collect();
                let vals = &values[target][perm_index[&image]];
                for (k, x) in vals.iter().enumerate() {
                    if !x.is_zero() {
                        row[offsets[target] + k] += sign * x;
                    }
                }
            }
            row
        })
        .collect();
    let mut echelon = RationalEchelon::default();
    for row in images {
        if !is_zero_vec(&row) {
            echelon.insert(row);
        }
        if echelon.rank() == total {
            break;
        }
    }
    Ok(echelon.rank())
}

fn tag_tuples(support: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t: Vec<usize>| support.iter().map(move |&g| [t.clone(), vec![g]].concat())).collect();
    }
    out
}

/// Row `p` holds monomial `x_{p_0} ... x_{p_{n-1}}` on each accepted column.
fn column_basis_values(a: &GradedAlgebra, t: &[usize], perms: &[Vec<usize>]) -> Vec<Vec<Q>> {
    let choices: Vec<Vec<usize>> = t.iter().map(|&g| a.component_indices(g)).collect();
    let mut accepted: Vec<Vec<Q>> = Vec::new();
    let mut echelon = RationalEchelon::default();
    let mut subs: Vec<Vec<usize>> = vec![vec![]];
    for c in &choices {
        subs = subs.into_iter().flat_map(|s| c.iter().map(move |&b| [s.clone(), vec![b]].concat())).collect();
    }
    'outer: for s in subs {
        let products: Vec<Vec<Q>> = perms
            .iter()
            .map(|p| p[1..].iter().fold(a.basis_vector(s[p[0]]), |acc, &v| a.mul_vec_basis(&acc, s[v])))
            .collect();
        for k in 0..a.dim() {
            let column: Vec<Q> = products.iter().map(|v| v[k].clone()).collect();
            if !is_zero_vec(&column) && echelon.insert(column.clone()) {
                accepted.push(column);
                if echelon.rank() == perms.len() {
                    break 'outer;
                }
            }
        }
    }
    (0..perms.len()).map(|p| accepted.iter().map(|c| c[p].clone()).collect()).collect()
}

/// Elements of `Π Sym(block)` as permutations of `0..n` with their signs.
fn group_elements(blocks: &[Vec<usize>], n: usize) -> Vec<(Vec<usize>, Q)> {
    let mut out = vec![((0..n).collect::<Vec<usize>>(), Q::one())];
    for block in blocks {
        let local = permutations(block.len());
        out = out
            .into_iter()
            .flat_map(|(base, sign)| {
                local.iter().map(move |p| {
                    let mut next = base.clone();
                    for (k, &v) in block.iter().enumerate() {
                        next[v] = block[p[k]];
                    }
                    let s = if inversions(p).is_multiple_of(2) { sign.clone() } else { -sign.clone() };
                    (next, s)
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternationReport {
    pub n: usize,
    pub trials: usize,
    /// `(monomial order, substitution)` pairs with a nonzero value.
    pub counterexamples: Vec<(Vec<usize>, Vec<usize>)>,
}

impl AlternationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Full alternation of random tagged monomials in `n > dim A` variables on
/// random substitutions whose degrees match the tags.
pub fn alternation_vanishing_check(a: &GradedAlgebra, n: usize, trials: usize, seed: u64) -> Result<AlternationReport> {
    if n <= a.dim() {
        return Err(Error::PreconditionFailed(format!("n = {n} must exceed dim A = {}", a.dim())));
    }
    if n > 32 {
        return Err(Error::ResourceLimit(format!("alternation over {n} variables")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    for _ in 0..trials {
        let subst: Vec<usize> = (0..n).map(|_| rng.gen_range(0..a.dim())).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let block = AltBlock { vars: (0..n).collect(), pattern: order.iter().map(|&r| (r, a.degree(subst[r]))).collect() };
        if !is_zero_vec(&block.evaluate(a, &subst)) {
            counterexamples.push((order, subst));
        }
    }
    Ok(AlternationReport { n, trials, counterexamples })
}
