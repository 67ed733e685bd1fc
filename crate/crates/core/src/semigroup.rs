//! Finite semigroups given by multiplication tables.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

/// Isomorphism types of two-element semigroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order2Tag {
    T1,
    T2,
    T3,
    T3op,
    Z2,
}

impl Order2Tag {
    pub const ALL: [Order2Tag; 5] = [Order2Tag::T1, Order2Tag::T2, Order2Tag::T3, Order2Tag::T3op, Order2Tag::Z2];

    pub fn name(self) -> &'static str {
        match self {
            Order2Tag::T1 => "T1",
            Order2Tag::T2 => "T2",
            Order2Tag::T3 => "T3",
            Order2Tag::T3op => "T3op",
            Order2Tag::Z2 => "Z2",
        }
    }
}

impl fmt::Display for Order2Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FiniteSemigroup {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty semigroup".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!("table must be {n}x{n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidTable("duplicate labels".into()));
        }
        if let Some((i, j, k)) = associativity_violation(&table) {
            return Err(Error::NotAssociative(i, j, k));
        }
        Ok(FiniteSemigroup { labels, table })
    }

    fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let labels = (0..table.len()).map(|i| format!("s{i}")).collect();
        Self::new(labels, table)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn trivial() -> Self {
        FiniteSemigroup { labels: vec!["e".into()], table: vec![vec![0]] }
    }

    pub fn right_zero_band(k: usize) -> Self {
        let labels = (1..=k).map(|i| format!("t{i}")).collect();
        let table = (0..k).map(|_| (0..k).collect()).collect();
        FiniteSemigroup { labels, table }
    }

    pub fn left_zero_band(k: usize) -> Self {
        let labels = (1..=k).map(|i| format!("t{i}")).collect();
        let table = (0..k).map(|i| vec![i; k]).collect();
        FiniteSemigroup { labels, table }
    }

    /// Table transpose; anti-isomorphic to `self`.
    pub fn opposite(&self) -> Self {
        let n = self.order();
        let table = (0..n).map(|i| (0..n).map(|j| self.table[j][i]).collect()).collect();
        FiniteSemigroup { labels: self.labels.clone(), table }
    }

    pub fn is_left_zero_band(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == a))
    }

    pub fn is_right_zero_band(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == b))
    }

    pub fn is_zero_band(&self) -> bool {
        self.is_left_zero_band() || self.is_right_zero_band()
    }

    pub fn is_cancellative(&self) -> bool {
        let n = self.order();
        for c in 0..n {
            let right: BTreeSet<usize> = (0..n).map(|a| self.table[a][c]).collect();
            let left: BTreeSet<usize> = (0..n).map(|a| self.table[c][a]).collect();
            if right.len() != n || left.len() != n {
                return false;
            }
        }
        true
    }

    /// Table under the relabeling `perm` (old index `i` becomes `perm[i]`).
    fn relabeled_table(&self, perm: &[usize]) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[perm[i]][perm[j]] = perm[self.table[i][j]];
            }
        }
        table
    }

    /// Lexicographically least relabeled table; equal for isomorphic semigroups.
    pub fn canonical_table(&self) -> Vec<Vec<usize>> {
        permutations(self.order())
            .into_iter()
            .map(|p| self.relabeled_table(&p))
            .min()
            .expect("at least one permutation")
    }

    pub fn is_isomorphic(&self, other: &FiniteSemigroup) -> bool {
        self.order() == other.order() && self.canonical_table() == other.canonical_table()
    }
}

fn associativity_violation(table: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    let n = table.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).expect("successor exists");
        current.swap(i, j);
        current[i + 1..].reverse();
    }
}

pub fn catalog_semigroup(tag: &str) -> Result<FiniteSemigroup> {
    let two = |a: &str, b: &str, table: [[usize; 2]; 2]| FiniteSemigroup {
        labels: vec![a.into(), b.into()],
        table: table.iter().map(|r| r.to_vec()).collect(),
    };
    Ok(match tag {
        "Trivial" => FiniteSemigroup::trivial(),
        // multiplicative semigroup of the field with two elements
        "T1" => two("0", "1", [[0, 0], [0, 1]]),
        "T2" => two("0", "v", [[0, 0], [0, 0]]),
        "T3" => two("e1", "e2", [[0, 1], [0, 1]]),
        "T3op" => two("e1", "e2", [[0, 0], [1, 1]]),
        "Z2" => two("0", "1", [[0, 1], [1, 0]]),
        _ => {
            let parse_k = |prefix: &str| {
                tag.strip_prefix(prefix)
                    .and_then(|rest| rest.strip_suffix(')'))
                    .and_then(|k| k.trim().parse::<usize>().ok())
                    .filter(|&k| k >= 1)
            };
            if let Some(k) = parse_k("RightZeroBand(") {
                FiniteSemigroup::right_zero_band(k)
            } else if let Some(k) = parse_k("LeftZeroBand(") {
                FiniteSemigroup::left_zero_band(k)
            } else {
                return Err(Error::UnknownTag(tag.to_string()));
            }
        }
    })
}

pub fn classify_order2(s: &FiniteSemigroup) -> Result<Order2Tag> {
    if s.order() != 2 {
        return Err(Error::WrongOrder(s.order()));
    }
    let canon = s.canonical_table();
    Order2Tag::ALL
        .into_iter()
        .find(|tag| catalog_semigroup(tag.name()).expect("catalog tag").canonical_table() == canon)
        .ok_or_else(|| Error::InvalidTable("no matching two-element class".into()))
}

/// Every associative table on `order` elements (labeled, not up to isomorphism).
pub fn enumerate_semigroups(order: usize) -> Result<Vec<FiniteSemigroup>> {
    if order > 4 {
        return Err(Error::OrderTooLarge(order));
    }
    if order == 0 {
        return Ok(Vec::new());
    }
    let mut table = vec![vec![usize::MAX; order]; order];
    let mut found = Vec::new();
    fill(&mut table, 0, &mut found);
    found.into_iter().map(FiniteSemigroup::from_table).collect()
}

fn fill(table: &mut Vec<Vec<usize>>, cell: usize, found: &mut Vec<Vec<Vec<usize>>>) {
    let n = table.len();
    if cell == n * n {
        found.push(table.clone());
        return;
    }
    let (a, b) = (cell / n, cell % n);
    for value in 0..n {
        table[a][b] = value;
        if partial_associative(table) {
            fill(table, cell + 1, found);
        }
    }
    table[a][b] = usize::MAX;
}

fn partial_associative(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    let get = |i: usize, j: usize| table[i][j];
    for i in 0..n {
        for j in 0..n {
            let ij = get(i, j);
            if ij == usize::MAX {
                continue;
            }
            for k in 0..n {
                let jk = get(j, k);
                if jk == usize::MAX {
                    continue;
                }
                let (l, r) = (get(ij, k), get(i, jk));
                if l != usize::MAX && r != usize::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// Splits semigroups into isomorphism classes, keeping first-seen order.
pub fn isomorphism_classes(list: &[FiniteSemigroup]) -> Vec<Vec<usize>> {
    let mut keys: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, s) in list.iter().enumerate() {
        let key = s.canonical_table();
        match keys.iter().position(|k| *k == key) {
            Some(c) => classes[c].push(i),
            None => {
                keys.push(key);
                classes.push(vec![i]);
            }
        }
    }
    classes
}
