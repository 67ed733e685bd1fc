//! Exact linear algebra: reduced echelon forms, kernels, subspaces, and rank
//! kernels over `Q`, `Z/pZ`, and fraction-free integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{CheckedIntegers, Field, Q};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Q>>, ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{x : M x = 0}` where `M` is given by rows of length `ncols`.
pub fn kernel(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (reduced, pivots) = rref(rows.to_vec(), ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Q::zero(); ncols];
            v[free] = Q::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `M x = rhs`, or `None` if inconsistent.
pub fn solve(rows: &[Vec<Q>], rhs: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let augmented: Vec<Vec<Q>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(augmented, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &p) in reduced.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Coordinates of `v` in terms of (independent) `basis` vectors.
pub fn coordinates(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let n = v.len();
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|i| basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    solve(&rows, v, basis.len())
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Q, a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| c * x).collect()
}

pub fn unit_vec(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

/// A subspace of `Q^ambient`, stored as a reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| unit_vec(ambient, i)))
    }

    pub fn span<I: IntoIterator<Item = Vec<Q>>>(ambient: usize, vectors: I) -> Self {
        let rows: Vec<Vec<Q>> = vectors.into_iter().filter(|v| !is_zero_vec(v)).collect();
        for r in &rows {
            assert_eq!(r.len(), ambient, "vector length does not match ambient dimension");
        }
        let (rows, pivots) = rref(rows, ambient);
        Subspace { ambient, rows, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along this subspace in the echelon splitting;
    /// the result vanishes on every pivot coordinate.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (x, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // columns: basis of self, then basis of other
        let a = self.dim();
        let cols: Vec<&Vec<Q>> = self.rows.iter().chain(&other.rows).collect();
        let matrix: Vec<Vec<Q>> = (0..self.ambient)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        let vectors = kernel(&matrix, cols.len()).into_iter().map(|coeffs| {
            let mut v = vec![Q::zero(); self.ambient];
            for (c, row) in coeffs[..a].iter().zip(&self.rows) {
                if c.is_zero() {
                    continue;
                }
                for (x, r) in v.iter_mut().zip(row) {
                    *x += c * r;
                }
            }
            v
        });
        Subspace::span(self.ambient, vectors)
    }

    /// Indices of standard basis vectors complementing this subspace.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }
}

/// Incremental rational echelon form with normalized pivots.
#[derive(Debug, Clone, Default)]
pub struct RationalEchelon {
    rows: Vec<(usize, Vec<Q>)>,
}

impl RationalEchelon {
    /// Inserts a vector; returns true if it increased the rank.
    pub fn insert(&mut self, mut v: Vec<Q>) -> bool {
        for (lead, row) in &self.rows {
            if v[*lead].is_zero() {
                continue;
            }
            let c = v[*lead].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(lead) => {
                let inv = Q::one() / &v[lead];
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                self.rows.push((lead, v));
                true
            }
            None => false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Incremental echelon basis over an arbitrary field context. Tracks which
/// inserted rows were independent and which columns became leading columns.
pub struct EchelonBasis<'f, F: Field> {
    field: &'f F,
    rows: Vec<Vec<F::E>>,
    leads: Vec<usize>,
    lead_inverses: Vec<F::E>,
    pub accepted: Vec<usize>,
    inserted: usize,
}

impl<'f> EchelonBasis<'f, crate::arith::PrimeField> {
    pub fn new_mod_p(field: &'f crate::arith::PrimeField) -> Self {
        EchelonBasis { field, rows: Vec::new(), leads: Vec::new(), lead_inverses: Vec::new(), accepted: Vec::new(), inserted: 0 }
    }

    /// Inserts a row; returns true if it increased the rank.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        let f = self.field;
        for ((pivot, &lead), inv) in self.rows.iter().zip(&self.leads).zip(&self.lead_inverses) {
            if row[lead] == 0 {
                continue;
            }
            let c = f.mul(&row[lead], inv);
            for (x, p) in row.iter_mut().zip(pivot) {
                if *p != 0 {
                    *x = f.sub(x, &f.mul(&c, p));
                }
            }
        }
        let index = self.inserted;
        self.inserted += 1;
        match row.iter().position(|x| *x != 0) {
            Some(lead) => {
                self.lead_inverses.push(f.inv(row[lead]).expect("nonzero residue"));
                self.leads.push(lead);
                self.rows.push(row);
                self.accepted.push(index);
                true
            }
            None => false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn leads(&self) -> &[usize] {
        &self.leads
    }
}

pub fn rank_mod_p(rows: Vec<Vec<u64>>, p: u64) -> usize {
    let field = crate::arith::PrimeField::new(p);
    let mut basis = EchelonBasis::new_mod_p(&field);
    for row in rows {
        basis.insert(row);
    }
    basis.rank()
}

/// Result of an exact echelon pass over integer rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerEchelon {
    pub rank: usize,
    /// Indices (in input order) of rows that increased the rank.
    pub row_basis: Vec<usize>,
    /// Leading columns, forming a column basis of the input matrix.
    pub column_basis: Vec<usize>,
}

/// Exact rank of an integer matrix by fraction-free incremental elimination
/// with primitive rows. Runs in `i128` and restarts in `BigInt` on overflow.
pub fn integer_echelon(rows: &[Vec<i128>]) -> IntegerEchelon {
    match integer_echelon_i128(rows) {
        Some(result) => result,
        None => integer_echelon_big(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()),
    }
}

/// Exact rank of a rational matrix: each row is scaled to clear
/// denominators, which preserves the row space.
pub fn rational_echelon(rows: &[Vec<Q>]) -> IntegerEchelon {
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect();
    let small: Option<Vec<Vec<i128>>> = int_rows
        .iter()
        .map(|r| r.iter().map(|x| i128::try_from(x).ok()).collect())
        .collect();
    match small {
        Some(s) => integer_echelon(&s),
        None => integer_echelon_big(int_rows),
    }
}

pub fn rank_exact(rows: &[Vec<Q>]) -> usize {
    rational_echelon(rows).rank
}

fn integer_echelon_i128(rows: &[Vec<i128>]) -> Option<IntegerEchelon> {
    let z = CheckedIntegers::new();
    let mut basis: Vec<(Vec<i128>, usize)> = Vec::new();
    let mut out = IntegerEchelon { rank: 0, row_basis: Vec::new(), column_basis: Vec::new() };
    for (index, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (pivot, lead) in &basis {
            let a = r[*lead];
            if a == 0 {
                continue;
            }
            let b = pivot[*lead];
            let g = a.gcd(&b);
            let (ma, mb) = (b / g, a / g);
            for (x, p) in r.iter_mut().zip(pivot) {
                *x = z.sub(&z.mul(x, &ma), &z.mul(&mb, p));
            }
            if z.overflowed() {
                return None;
            }
            make_primitive_i128(&mut r);
        }
        if let Some(lead) = r.iter().position(|&x| x != 0) {
            out.row_basis.push(index);
            out.column_basis.push(lead);
            basis.push((r, lead));
        }
    }
    out.rank = basis.len();
    Some(out)
}

fn make_primitive_i128(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
}

fn integer_echelon_big(rows: Vec<Vec<BigInt>>) -> IntegerEchelon {
    let mut basis: Vec<(Vec<BigInt>, usize)> = Vec::new();
    let mut out = IntegerEchelon { rank: 0, row_basis: Vec::new(), column_basis: Vec::new() };
    for (index, mut r) in rows.into_iter().enumerate() {
        for (pivot, lead) in &basis {
            if r[*lead].is_zero() {
                continue;
            }
            let a = r[*lead].clone();
            let b = pivot[*lead].clone();
            let g = a.gcd(&b);
            let (ma, mb) = (&b / &g, &a / &g);
            for (x, p) in r.iter_mut().zip(pivot) {
                *x = &*x * &ma - &mb * p;
            }
            let g = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if g > BigInt::one() {
                for x in r.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        if let Some(lead) = r.iter().position(|x| !x.is_zero()) {
            out.row_basis.push(index);
            out.column_basis.push(lead);
            basis.push((r, lead));
        }
    }
    out.rank = basis.len();
    out
}

/// Determinant over `Q` by elimination (square input).
pub fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        let pivot = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot[col];
            for (x, pv) in row.iter_mut().zip(&pivot) {
                *x -= &factor * pv;
            }
        }
    }
    det
}

pub fn max_abs_entry(rows: &[Vec<Q>]) -> Q {
    rows.iter().flatten().map(|x| x.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a })
}
