//! Explicit polynomials `f` with `e_{T_λ} f ≠ 0` on the fractional-exponent
//! algebras graded by `T_1` and `T_3`, together with their substitutions.
//!
//! The diagram is cut into column blocks: `λ_q` columns of height `q`, then
//! `β_2` columns of height `q - 1`, then pairs `(β_3, β_4)`, `(β_5, β_6)`, ...
//! of heights `q - 2`, `q - 3`, ... Each column carries an alternating block
//! with a fixed tagged pattern, and every box a fixed basis element.

use std::fmt::Write as _;

use super::partition::Partition;
use super::tableau::{apply_symmetrizer, AltBlock, AlternatingProduct, Convention, YoungTableau};
use crate::algebra::GradedAlgebra;
use crate::arith::{fmt_q, Q};
use crate::catalog::catalog;
use crate::error::{Error, Result};
use crate::linalg::is_zero_vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    T1,
    T3,
}

/// Pattern of a column block: `(row, tag)` with 1-based rows and tag 0 / 1
/// meaning the first / second element of the grading semigroup.
type Pattern = &'static [(usize, usize)];

const T1_PATTERNS: [Pattern; 12] = [
    &[(3, 0), (2, 1), (6, 0), (4, 1), (5, 0), (1, 0), (7, 1)],
    &[(3, 0), (2, 1), (6, 0), (4, 1), (5, 0), (1, 0)],
    &[(5, 0), (4, 1), (1, 0), (2, 1), (3, 0)],
    &[(2, 1), (3, 0), (5, 1), (4, 1), (1, 0)],
    &[(4, 1), (1, 0), (2, 1), (3, 0)],
    &[(2, 1), (3, 1), (4, 1), (1, 0)],
    &[(1, 0), (2, 1), (3, 0)],
    &[(2, 1), (3, 1), (1, 0)],
    &[(1, 0), (2, 1)],
    &[(2, 0), (1, 0)],
    &[(1, 0)],
    &[(1, 1)],
];

const T3_PATTERNS: [Pattern; 10] = [
    &[(3, 0), (5, 1), (4, 0), (2, 1), (1, 0), (6, 0)],
    &[(1, 0), (3, 0), (5, 1), (2, 1), (4, 0)],
    &[(4, 0), (2, 1), (1, 0), (3, 0)],
    &[(1, 0), (3, 0), (4, 1), (2, 1)],
    &[(2, 1), (1, 0), (3, 0)],
    &[(2, 1), (1, 0), (3, 1)],
    &[(2, 1), (1, 0)],
    &[(1, 0), (2, 0)],
    &[(1, 0)],
    &[(1, 1)],
];

const T1_TAU: [&[&str]; 12] = [
    &["(e21,0)", "(e11,e11)", "(e11,0)", "(e22,e22)", "(e22,0)", "(e12,0)", "(e12,e12)"],
    &["(e21,0)", "(e11,e11)", "(e11,0)", "(e22,e22)", "(e22,0)", "(e12,0)"],
    &["(e21,0)", "(e11,e11)", "(e11,0)", "(e22,e22)", "(e22,0)"],
    &["(e21,0)", "(e11,e11)", "(e11,0)", "(e22,e22)", "(e12,e12)"],
    &["(e21,0)", "(e11,e11)", "(e11,0)", "(e22,e22)"],
    &["(e21,0)", "(e11,e11)", "(e12,e12)", "(e22,e22)"],
    &["(e21,0)", "(e11,e11)", "(e11,0)"],
    &["(e21,0)", "(e11,e11)", "(e12,e12)"],
    &["(e21,0)", "(e11,e11)"],
    &["(e21,0)", "(e12,0)"],
    &["(e21,0)"],
    &["(e11,e11)"],
];

const T3_TAU: [&[&str]; 10] = [
    &["(e21,0)", "(e22,e22)", "(e11,0)", "(e22,0)", "(e12,e12)", "(e12,0)"],
    &["(e21,0)", "(e22,e22)", "(e11,0)", "(e22,0)", "(e12,e12)"],
    &["(e21,0)", "(e22,e22)", "(e11,0)", "(e22,0)"],
    &["(e21,0)", "(e22,e22)", "(e11,0)", "(e12,e12)"],
    &["(e21,0)", "(e22,e22)", "(e11,0)"],
    &["(e21,0)", "(e22,e22)", "(e12,e12)"],
    &["(e21,0)", "(e22,e22)"],
    &["(e21,0)", "(e12,0)"],
    &["(e21,0)"],
    &["(e22,e22)"],
];

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::T1 => "T1",
            Variant::T3 => "T3",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "T1" => Ok(Variant::T1),
            "T3" => Ok(Variant::T3),
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }

    /// `q = dim A`, the height of the tallest column.
    pub fn q(self) -> usize {
        match self {
            Variant::T1 => 7,
            Variant::T3 => 6,
        }
    }

    pub fn algebra(self) -> GradedAlgebra {
        match self {
            Variant::T1 => catalog("thm_T1_fractional"),
            Variant::T3 => catalog("thm_T3_fractional"),
        }
        .expect("catalog entry")
    }

    fn patterns(self) -> &'static [Pattern] {
        match self {
            Variant::T1 => &T1_PATTERNS,
            Variant::T3 => &T3_PATTERNS,
        }
    }

    fn tau(self) -> &'static [&'static [&'static str]] {
        match self {
            Variant::T1 => &T1_TAU,
            Variant::T3 => &T3_TAU,
        }
    }

    /// Number of blocks `f_1 .. f_m`.
    fn blocks(self) -> usize {
        self.patterns().len()
    }

    /// Height of the columns of block `i` (1-based).
    fn height(self, i: usize) -> usize {
        match i {
            1 => self.q(),
            _ => self.q() - i.div_ceil(2),
        }
    }

    /// `λ_{q+1} = 0` and `λ_{q-1} + λ_q <= λ_1 + slack`.
    fn admissible(self, lambda: &Partition, slack: usize) -> bool {
        let q = self.q();
        lambda.part(q + 1) == 0 && lambda.part(q - 1) + lambda.part(q) <= lambda.part(1) + slack
    }
}

/// Column counts per block: `counts[0]` is the number of height-`q` columns,
/// `counts[i - 1] = β_i` for `i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaDecomposition {
    pub variant: Variant,
    pub counts: Vec<usize>,
}

impl BetaDecomposition {
    /// `β_i` for `2 <= i <= blocks`.
    pub fn beta(&self, i: usize) -> usize {
        self.counts[i - 1]
    }

    /// Checks the column-count equations against `λ`, where `compensated`
    /// of the height-`q` columns must be matched by odd blocks.
    fn check(&self, lambda: &Partition, compensated: usize) -> Result<()> {
        let v = self.variant;
        let q = v.q();
        let m = v.blocks();
        if self.counts.len() != m {
            return Err(Error::BetaInvalid(format!("expected {m} block counts")));
        }
        let odd: usize = (3..=m).step_by(2).map(|i| self.beta(i)).sum();
        let mut ok = self.counts[0] == lambda.part(q) && self.beta(2) == lambda.part(q - 1) - lambda.part(q) && odd == compensated;
        for i in (3..=m).step_by(2) {
            let h = v.height(i);
            ok &= self.beta(i) + self.beta(i + 1) == lambda.part(h) - lambda.part(h + 1);
        }
        if ok {
            Ok(())
        } else {
            Err(Error::BetaInvalid(format!("{:?} does not fit {lambda}", self.counts)))
        }
    }

    pub fn validate(&self, lambda: &Partition) -> Result<()> {
        self.check(lambda, lambda.part(self.variant.q()))
    }
}

/// Greedy choice: each odd block, in order, takes as many of the remaining
/// height-`q` columns as its pair difference allows.
pub fn canonical_beta(variant: Variant, lambda: &Partition) -> Result<BetaDecomposition> {
    if !variant.admissible(lambda, 0) {
        return Err(hypothesis_error(variant, lambda));
    }
    Ok(greedy_beta(variant, lambda, lambda.part(variant.q())))
}

fn greedy_beta(variant: Variant, lambda: &Partition, compensated: usize) -> BetaDecomposition {
    let q = variant.q();
    let m = variant.blocks();
    let mut counts = vec![0; m];
    counts[0] = lambda.part(q);
    counts[1] = lambda.part(q - 1) - lambda.part(q);
    let mut remaining = compensated;
    for i in (3..=m).step_by(2) {
        let h = variant.height(i);
        let diff = lambda.part(h) - lambda.part(h + 1);
        let take = remaining.min(diff);
        counts[i - 1] = take;
        counts[i] = diff - take;
        remaining -= take;
    }
    debug_assert_eq!(remaining, 0);
    BetaDecomposition { variant, counts }
}

fn hypothesis_error(variant: Variant, lambda: &Partition) -> Error {
    let q = variant.q();
    Error::HypothesisViolated(format!("{lambda} needs λ_{} = 0 and λ_{} + λ_{} <= λ_1", q + 1, q - 1, q))
}

/// One column of the diagram with its block index (1-based).
#[derive(Debug, Clone)]
struct Column {
    block: usize,
    vars: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub variant: Variant,
    pub lambda: Partition,
    pub beta: BetaDecomposition,
    pub tableau: YoungTableau,
    pub f: AlternatingProduct,
    /// Basis index substituted for each variable.
    pub tau: Vec<usize>,
    /// Block index of each factor of `f`, in product order.
    pub block_order: Vec<usize>,
}

impl Witness {
    pub fn report(&self, a: &GradedAlgebra, value: Option<&[Q]>) -> String {
        let mut out = String::new();
        writeln!(out, "variant {}", self.variant.name()).unwrap();
        writeln!(out, "lambda {}", self.lambda).unwrap();
        let betas: Vec<String> = (2..=self.variant.blocks()).map(|i| format!("b{i}={}", self.beta.beta(i))).collect();
        writeln!(out, "columns of height q: {}; {}", self.beta.counts[0], betas.join(" ")).unwrap();
        let order: Vec<String> = self.block_order.iter().map(|b| format!("f{b}")).collect();
        writeln!(out, "f = {}", order.join(" ")).unwrap();
        writeln!(out, "tau:").unwrap();
        writeln!(out, "{}", self.tableau.render(|v| a.labels()[self.tau[v]].clone())).unwrap();
        if let Some(v) = value {
            let coords: Vec<String> = v.iter().map(fmt_q).collect();
            writeln!(out, "value [{}]", coords.join(", ")).unwrap();
            writeln!(out, "nonzero {}", !is_zero_vec(v)).unwrap();
        }
        out
    }
}

/// Columns of the diagram in block order with column-major variables.
fn layout(beta: &BetaDecomposition) -> (Partition, Vec<Column>) {
    let v = beta.variant;
    let mut heights = Vec::new();
    let mut blocks = Vec::new();
    for (idx, &count) in beta.counts.iter().enumerate() {
        let block = idx + 1;
        for _ in 0..count {
            heights.push(v.height(block));
            blocks.push(block);
        }
    }
    let width = heights.len();
    let rows = heights.first().copied().unwrap_or(0);
    let lambda = Partition::new((1..=rows).map(|r| heights.iter().filter(|&&h| h >= r).count()).collect()).expect("heights decrease");
    let mut next = 0;
    let columns = (0..width)
        .map(|c| {
            let vars = (next..next + heights[c]).collect();
            next += heights[c];
            Column { block: blocks[c], vars }
        })
        .collect();
    (lambda, columns)
}

/// Product order of the columns: the compensating pairs, then the rest in
/// block order. `extra` height-`q` columns (those not paired with an odd
/// block) are inserted at position `extra_at` of the sequence.
fn product_order(variant: Variant, columns: &[Column], paired_first: bool, extra_at: Option<usize>) -> Vec<usize> {
    let m = variant.blocks();
    let of_block = |b: usize| columns.iter().enumerate().filter(move |(_, c)| c.block == b).map(|(i, _)| i);
    let mut tall = of_block(1);
    let mut seq = Vec::new();
    for odd in (3..=m).step_by(2) {
        for partner in of_block(odd) {
            let t = tall.next().expect("one tall column per compensating column");
            if paired_first {
                seq.push(t);
                seq.push(partner);
            } else {
                seq.push(partner);
                seq.push(t);
            }
        }
    }
    let extra: Vec<usize> = tall.collect();
    let mut rest: Vec<usize> = Vec::new();
    rest.extend(of_block(2));
    for even in (4..=m).step_by(2) {
        rest.extend(of_block(even));
    }
    seq.extend(rest);
    if !extra.is_empty() {
        let at = extra_at.unwrap_or(seq.len()).min(seq.len());
        seq.splice(at..at, extra);
    }
    seq
}

fn assemble(variant: Variant, a: &GradedAlgebra, beta: BetaDecomposition, extra_at: Option<usize>) -> Result<Witness> {
    let (lambda, columns) = layout(&beta);
    let n = lambda.n();
    let tags: Vec<usize> = (0..2).collect();
    let mut tau = vec![0; n];
    for col in &columns {
        for (r, &v) in col.vars.iter().enumerate() {
            let label = variant.tau()[col.block - 1][r];
            tau[v] = a.labels().iter().position(|l| l == label).ok_or_else(|| Error::UnsupportedAlgebra(format!("no basis element {label}")))?;
        }
    }
    let paired_first = variant == Variant::T1;
    let order = product_order(variant, &columns, paired_first, extra_at);
    let blocks = order
        .iter()
        .map(|&c| {
            let col = &columns[c];
            let pattern = variant.patterns()[col.block - 1].iter().map(|&(r, t)| (r - 1, tags[t])).collect();
            AltBlock { vars: col.vars.clone(), pattern }
        })
        .collect();
    let tableau = YoungTableau::from_rows(
        (0..lambda.len())
            .map(|r| columns.iter().filter(|c| c.vars.len() > r).map(|c| c.vars[r]).collect())
            .collect(),
    )?;
    debug_assert_eq!(tableau, YoungTableau::column_major(&lambda));
    Ok(Witness {
        variant,
        lambda,
        block_order: order.iter().map(|&c| columns[c].block).collect(),
        beta,
        tableau,
        f: AlternatingProduct { n, blocks },
        tau,
    })
}

/// The polynomial and substitution for `λ` satisfying the lemma hypothesis.
/// `beta = None` picks the canonical decomposition.
pub fn build_witness(variant: Variant, lambda: &Partition, beta: Option<BetaDecomposition>) -> Result<Witness> {
    if !variant.admissible(lambda, 0) {
        return Err(hypothesis_error(variant, lambda));
    }
    let beta = match beta {
        Some(b) => {
            if b.variant != variant {
                return Err(Error::BetaInvalid("decomposition belongs to the other variant".into()));
            }
            b.validate(lambda)?;
            b
        }
        None => canonical_beta(variant, lambda)?,
    };
    assemble(variant, &variant.algebra(), beta, None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    /// Every height-`q` column is compensated.
    Lemma,
    /// `λ_{q-1} + λ_q = λ_1 + 1`: one height-`q` column is left
    /// uncompensated and placed at `position` in the product.
    Boundary { position: usize },
}

#[derive(Debug, Clone)]
pub struct NonzeroCertificate {
    pub nonzero: bool,
    pub construction: Construction,
    pub witness: Witness,
    pub value: Vec<Q>,
}

/// Evaluates `e_{T_λ} f` on the witness substitution. Covers the lemma range
/// and the boundary stratum `λ_{q-1} + λ_q = λ_1 + 1`; `nonzero = false` only
/// means this certificate failed.
pub fn multiplicity_nonzero_certificate(a: &GradedAlgebra, variant: Variant, lambda: &Partition) -> Result<NonzeroCertificate> {
    let evaluate = |w: &Witness| -> Result<Vec<Q>> { Ok(apply_symmetrizer(a, &w.tableau, &w.f, &w.tau, Convention::E)?.value) };
    if variant.admissible(lambda, 0) {
        let witness = assemble(variant, a, canonical_beta(variant, lambda)?, None)?;
        let value = evaluate(&witness)?;
        return Ok(NonzeroCertificate { nonzero: !is_zero_vec(&value), construction: Construction::Lemma, witness, value });
    }
    if !variant.admissible(lambda, 1) || lambda.part(variant.q()) == 0 {
        return Err(hypothesis_error(variant, lambda));
    }
    let beta = greedy_beta(variant, lambda, lambda.part(variant.q()) - 1);
    beta.check(lambda, lambda.part(variant.q()) - 1)?;
    let columns = beta.counts.iter().sum::<usize>() - 1;
    let mut last = None;
    for position in (0..=columns).rev() {
        let witness = assemble(variant, a, beta.clone(), Some(position))?;
        let value = evaluate(&witness)?;
        if !is_zero_vec(&value) {
            return Ok(NonzeroCertificate { nonzero: true, construction: Construction::Boundary { position }, witness, value });
        }
        last = Some((witness, value, position));
    }
    let (witness, value, position) = last.expect("at least one placement");
    Ok(NonzeroCertificate { nonzero: false, construction: Construction::Boundary { position }, witness, value })
}
