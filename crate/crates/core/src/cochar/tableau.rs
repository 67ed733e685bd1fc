//! Young tableaux, multilinear (FT)*-polynomials and the action of Young
//! symmetrizers on their values.
//!
//! A variable occurrence `x_i^{h_t}` evaluates to the degree-`t` component of
//! whatever is substituted for `x_i`. Permutations act on variable indices
//! (`σ x_i = x_{σ(i)}`) and leave the tags in place, so for a substitution
//! `s` (variable to basis index) `(σ f)(s) = f(s ∘ σ)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::partition::Partition;
use crate::algebra::GradedAlgebra;
use crate::arith::Q;
use crate::codim::GradedMonomial;
use crate::error::{Error, Result};
use crate::linalg::{add_vec, is_zero_vec, scale_vec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungTableau {
    shape: Partition,
    /// Variables (0-based) row by row.
    rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    /// Column-major filling: down the first column, then the second, ...
    pub fn column_major(shape: &Partition) -> Self {
        let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&p| Vec::with_capacity(p)).collect();
        let mut next = 0;
        for height in shape.conjugate().parts() {
            for row in rows.iter_mut().take(*height) {
                row.push(next);
                next += 1;
            }
        }
        YoungTableau { shape: shape.clone(), rows }
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.n();
        let mut seen = vec![false; n];
        for &v in rows.iter().flatten() {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::BadParam("tableau filling is not a bijection".into()));
            }
        }
        Ok(YoungTableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Columns, top to bottom.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.shape.part(1);
        (0..width).map(|c| self.rows.iter().filter_map(|r| r.get(c).copied()).collect()).collect()
    }

    pub fn column_group_order(&self) -> Q {
        self.columns().iter().fold(Q::one(), |acc, c| acc * factorial_q(c.len()))
    }

    pub fn row_group_order(&self) -> Q {
        self.rows.iter().fold(Q::one(), |acc, r| acc * factorial_q(r.len()))
    }

    /// Renders a per-variable labelling in the shape of the diagram.
    pub fn render(&self, label: impl Fn(usize) -> String) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&v| label(v)).collect::<Vec<_>>().join(" | "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn factorial_q(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, k| acc * Q::from_integer((k as i64).into()))
}

/// `x_{vars[0]}^{h_{tags[0]}} x_{vars[1]}^{h_{tags[1]}} ...`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedMonomial {
    pub vars: Vec<usize>,
    pub tags: Vec<usize>,
}

impl TaggedMonomial {
    pub fn act(&self, sigma: &[usize]) -> TaggedMonomial {
        TaggedMonomial { vars: self.vars.iter().map(|&v| sigma[v]).collect(), tags: self.tags.clone() }
    }

    /// Zero unless every substituted element has the tagged degree.
    pub fn evaluate(&self, a: &GradedAlgebra, subst: &[usize]) -> Vec<Q> {
        let mut acc: Option<Vec<Q>> = None;
        for (&v, &t) in self.vars.iter().zip(&self.tags) {
            let b = subst[v];
            if a.degree(b) != t {
                return vec![Q::zero(); a.dim()];
            }
            acc = Some(match acc {
                None => a.basis_vector(b),
                Some(x) => a.mul_vec_basis(&x, b),
            });
        }
        acc.unwrap_or_else(|| vec![Q::zero(); a.dim()])
    }
}

impl From<&GradedMonomial> for TaggedMonomial {
    fn from(m: &GradedMonomial) -> Self {
        TaggedMonomial { vars: m.perm.clone(), tags: m.perm.iter().map(|&v| m.degrees[v]).collect() }
    }
}

/// Something multilinear in `x_0 .. x_{n-1}` that can be evaluated on basis substitutions.
pub trait Multilinear {
    fn degree(&self) -> usize;
    fn evaluate(&self, a: &GradedAlgebra, subst: &[usize]) -> Vec<Q>;
    /// Whether `σ f = sign(σ) f` for every `σ` permuting one of `columns`.
    fn alternates_on(&self, columns: &[Vec<usize>]) -> bool;
}

/// Explicit rational combination of tagged monomials, like terms merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPolynomial {
    n: usize,
    terms: BTreeMap<TaggedMonomial, Q>,
}

impl GradedPolynomial {
    pub fn zero(n: usize) -> Self {
        GradedPolynomial { n, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, c: Q, m: TaggedMonomial) {
        let entry = self.terms.entry(m).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TaggedMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn act(&self, sigma: &[usize]) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(c.clone(), m.act(sigma));
        }
        out
    }

    pub fn scale(&self, c: &Q) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(x * c, m.clone());
        }
        out
    }

    pub fn add(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl Multilinear for GradedPolynomial {
    fn degree(&self) -> usize {
        self.n
    }

    fn evaluate(&self, a: &GradedAlgebra, subst: &[usize]) -> Vec<Q> {
        self.terms.iter().fold(vec![Q::zero(); a.dim()], |acc, (m, c)| add_vec(&acc, &scale_vec(c, &m.evaluate(a, subst))))
    }

    fn alternates_on(&self, columns: &[Vec<usize>]) -> bool {
        let minus = self.scale(&-Q::one());
        columns.iter().all(|col| {
            col.windows(2).all(|w| {
                let mut sigma: Vec<usize> = (0..self.n).collect();
                sigma.swap(w[0], w[1]);
                self.act(&sigma) == minus
            })
        })
    }
}

/// `Σ_{σ ∈ Sym(vars)} sign(σ) σ(x_{vars[r_1]}^{h_{t_1}} ... x_{vars[r_l]}^{h_{t_l}})`
/// where `pattern = [(r_1, t_1), ..., (r_l, t_l)]` lists each row of the column once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltBlock {
    pub vars: Vec<usize>,
    pub pattern: Vec<(usize, usize)>,
}

impl AltBlock {
    /// Value on `s` by dynamic programming over the set of values used so far.
    pub fn evaluate(&self, a: &GradedAlgebra, subst: &[usize]) -> Vec<Q> {
        let l = self.vars.len();
        let values: Vec<usize> = self.vars.iter().map(|&v| subst[v]).collect();
        // sign of the row order in the pattern
        let rows: Vec<usize> = self.pattern.iter().map(|p| p.0).collect();
        let base_sign = if inversions(&rows).is_multiple_of(2) { Q::one() } else { -Q::one() };
        let mut layer: HashMap<u32, Vec<Q>> = HashMap::new();
        for (pos, &(_, tag)) in self.pattern.iter().enumerate() {
            let mut next: HashMap<u32, Vec<Q>> = HashMap::new();
            let sources: Vec<(u32, Option<Vec<Q>>)> =
                if pos == 0 { vec![(0, None)] } else { layer.drain().map(|(m, v)| (m, Some(v))).collect() };
            for (mask, acc) in sources {
                for (w, &b) in values.iter().enumerate() {
                    if mask & (1 << w) != 0 || a.degree(b) != tag {
                        continue;
                    }
                    let larger = (w + 1..l).filter(|&u| mask & (1 << u) != 0).count();
                    let v = match &acc {
                        None => a.basis_vector(b),
                        Some(x) => a.mul_vec_basis(x, b),
                    };
                    if is_zero_vec(&v) {
                        continue;
                    }
                    let v = if larger % 2 == 1 { scale_vec(&-Q::one(), &v) } else { v };
                    let slot = next.entry(mask | (1 << w)).or_insert_with(|| vec![Q::zero(); a.dim()]);
                    *slot = add_vec(slot, &v);
                }
            }
            layer = next;
        }
        let full = if l == 32 { u32::MAX } else { (1u32 << l) - 1 };
        match layer.remove(&full) {
            Some(v) => scale_vec(&base_sign, &v),
            None => vec![Q::zero(); a.dim()],
        }
    }

    pub fn expand(&self, n: usize) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero(n);
        for (perm, sign) in signed_permutations(self.vars.len()) {
            let vars = self.pattern.iter().map(|&(r, _)| self.vars[perm[r]]).collect();
            let tags = self.pattern.iter().map(|p| p.1).collect();
            out.add_term(sign, TaggedMonomial { vars, tags });
        }
        out
    }
}

/// Product of alternating blocks on disjoint variable sets, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingProduct {
    pub n: usize,
    pub blocks: Vec<AltBlock>,
}

impl AlternatingProduct {
    pub fn expand(&self) -> GradedPolynomial {
        let mut acc: Option<GradedPolynomial> = None;
        for block in &self.blocks {
            let e = block.expand(self.n);
            acc = Some(match acc {
                None => e,
                Some(prev) => {
                    let mut out = GradedPolynomial::zero(self.n);
                    for (m1, c1) in prev.terms() {
                        for (m2, c2) in e.terms() {
                            let vars = [m1.vars.clone(), m2.vars.clone()].concat();
                            let tags = [m1.tags.clone(), m2.tags.clone()].concat();
                            out.add_term(c1 * c2, TaggedMonomial { vars, tags });
                        }
                    }
                    out
                }
            });
        }
        acc.unwrap_or_else(|| GradedPolynomial::zero(self.n))
    }
}

impl Multilinear for AlternatingProduct {
    fn degree(&self) -> usize {
        self.n
    }

    fn evaluate(&self, a: &GradedAlgebra, subst: &[usize]) -> Vec<Q> {
        let mut acc: Option<Vec<Q>> = None;
        for block in &self.blocks {
            let v = block.evaluate(a, subst);
            if is_zero_vec(&v) {
                return v;
            }
            acc = Some(match acc {
                None => v,
                Some(x) => a.multiply(&x, &v),
            });
        }
        acc.unwrap_or_else(|| vec![Q::zero(); a.dim()])
    }

    fn alternates_on(&self, columns: &[Vec<usize>]) -> bool {
        columns.iter().all(|col| self.blocks.iter().any(|b| col.iter().all(|v| b.vars.contains(v))))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `e = a b`: alternate the columns, then symmetrize the rows.
    E,
    /// `e* = b a`.
    EStar,
}

#[derive(Debug, Clone)]
pub struct SymmetrizerValue {
    pub value: Vec<Q>,
    /// The column sum was replaced by the factor `|C|`.
    pub shortcut: bool,
}

impl SymmetrizerValue {
    pub fn is_nonzero(&self) -> bool {
        !is_zero_vec(&self.value)
    }
}

/// `(e f)(tau)` or `(e* f)(tau)`. With `e` and `f` alternating in every
/// column, `b f = |C| f` and only the row sum is enumerated, grouped by the
/// distinct substitutions it produces.
pub fn apply_symmetrizer(
    a: &GradedAlgebra,
    t: &YoungTableau,
    f: &dyn Multilinear,
    tau: &[usize],
    convention: Convention,
) -> Result<SymmetrizerValue> {
    if f.degree() != t.n() || tau.len() != t.n() {
        return Err(Error::SizeMismatch(format!("tableau of size {}, polynomial of degree {}, {} substituted values", t.n(), f.degree(), tau.len())));
    }
    let columns = t.columns();
    let dim = a.dim();
    let shortcut = convention == Convention::E && f.alternates_on(&columns);
    let value = match (convention, shortcut) {
        (Convention::E, true) => {
            let sum = row_orbit(t, tau).into_iter().fold(vec![Q::zero(); dim], |acc, (s, count)| add_vec(&acc, &scale_vec(&count, &f.evaluate(a, &s))));
            scale_vec(&t.column_group_order(), &sum)
        }
        (Convention::E, false) => {
            let mut acc = vec![Q::zero(); dim];
            for (s, count) in row_orbit(t, tau) {
                let inner = column_sum(&columns, &s, |s2| f.evaluate(a, s2), dim);
                acc = add_vec(&acc, &scale_vec(&count, &inner));
            }
            acc
        }
        (Convention::EStar, _) => column_sum(&columns, tau, |s| {
            row_orbit(t, s).into_iter().fold(vec![Q::zero(); dim], |acc, (s2, count)| add_vec(&acc, &scale_vec(&count, &f.evaluate(a, &s2))))
        }, dim),
    };
    Ok(SymmetrizerValue { value, shortcut })
}

/// `{ s ∘ π : π ∈ R }` with multiplicities.
fn row_orbit(t: &YoungTableau, s: &[usize]) -> Vec<(Vec<usize>, Q)> {
    let mut out = vec![(s.to_vec(), Q::one())];
    for row in t.rows() {
        let mut values: Vec<usize> = row.iter().map(|&v| s[v]).collect();
        values.sort_unstable();
        let weight = multiplicity_weight(&values);
        let arrangements = distinct_permutations(&values);
        out = out
            .into_iter()
            .flat_map(|(base, c)| {
                let weight = weight.clone();
                arrangements.iter().map(move |arr| {
                    let mut next = base.clone();
                    for (&v, &b) in row.iter().zip(arr) {
                        next[v] = b;
                    }
                    (next, &c * &weight)
                })
            })
            .collect();
    }
    out
}

/// `Σ_{σ ∈ C} sign(σ) g(s ∘ σ)`.
fn column_sum(columns: &[Vec<usize>], s: &[usize], mut g: impl FnMut(&[usize]) -> Vec<Q>, dim: usize) -> Vec<Q> {
    let mut terms = vec![(s.to_vec(), Q::one())];
    for col in columns {
        let perms = signed_permutations(col.len());
        terms = terms
            .into_iter()
            .flat_map(|(base, c)| {
                perms.iter().map(move |(p, sign)| {
                    let mut next = base.clone();
                    for (k, &v) in col.iter().enumerate() {
                        next[v] = base[col[p[k]]];
                    }
                    (next, &c * sign)
                }).collect::<Vec<_>>()
            })
            .collect();
    }
    terms.into_iter().fold(vec![Q::zero(); dim], |acc, (s2, c)| add_vec(&acc, &scale_vec(&c, &g(&s2))))
}

fn multiplicity_weight(sorted: &[usize]) -> Q {
    let mut w = Q::one();
    let mut i = 0;
    while i < sorted.len() {
        let j = (i..sorted.len()).find(|&j| sorted[j] != sorted[i]).unwrap_or(sorted.len());
        w *= factorial_q(j - i);
        i = j;
    }
    w
}

fn distinct_permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    // lexicographic successor
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

pub fn inversions(seq: &[usize]) -> usize {
    (0..seq.len()).map(|i| (i + 1..seq.len()).filter(|&j| seq[i] > seq[j]).count()).sum()
}

/// All permutations of `0..n` with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, Q)> {
    crate::semigroup::permutations(n)
        .into_iter()
        .map(|p| {
            let sign = if inversions(&p).is_multiple_of(2) { Q::one() } else { -Q::one() };
            (p, sign)
        })
        .collect()
}
