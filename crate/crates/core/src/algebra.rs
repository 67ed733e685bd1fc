//! Semigroup-graded associative algebras given by structure constants.

use num_traits::{One, Zero};

use crate::arith::{fmt_q, Q};
use crate::error::{Error, Result};
use crate::linalg::{coordinates, is_zero_vec, solve, unit_vec, Subspace};
use crate::semigroup::FiniteSemigroup;

/// Sparse product of two basis elements: `(index, coefficient)` pairs with
/// nonzero coefficients, sorted by index.
pub type SparseVec = Vec<(usize, Q)>;

#[derive(Debug, Clone, PartialEq)]
pub struct GradedAlgebra {
    name: String,
    labels: Vec<String>,
    degree: Vec<usize>,
    semigroup: FiniteSemigroup,
    table: Vec<Vec<SparseVec>>,
    unit: Option<Vec<Q>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub associativity: Vec<(usize, usize, usize)>,
    pub grading: Vec<(usize, usize)>,
    pub bad_unit: bool,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.associativity.is_empty() && self.grading.is_empty() && !self.bad_unit
    }
}

/// `A / I` with its basis taken from standard basis vectors of `A`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: GradedAlgebra,
    pub ideal: Subspace,
    /// Basis index of `A` behind each quotient basis element.
    pub lift_indices: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &[Q]) -> Vec<Q> {
        let r = self.ideal.reduce(v);
        self.lift_indices.iter().map(|&i| r[i].clone()).collect()
    }

    /// The section sending quotient basis element `k` to basis element `lift_indices[k]`.
    pub fn lift(&self, w: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.ideal.ambient()];
        for (&i, x) in self.lift_indices.iter().zip(w) {
            v[i] = x.clone();
        }
        v
    }
}

impl GradedAlgebra {
    /// Builds and validates an algebra from product triples
    /// `(i, j, k, c)`: basis_i * basis_j has coefficient `c` at basis_k.
    pub fn new(
        name: impl Into<String>,
        semigroup: FiniteSemigroup,
        labels: Vec<String>,
        degree: Vec<usize>,
        products: impl IntoIterator<Item = (usize, usize, usize, Q)>,
        unit: Option<Vec<Q>>,
    ) -> Result<Self> {
        let a = Self::unchecked(name, semigroup, labels, degree, products, unit)?;
        a.validate()?;
        Ok(a)
    }

    /// Builds without the associativity/grading check; shape errors are still reported.
    pub fn unchecked(
        name: impl Into<String>,
        semigroup: FiniteSemigroup,
        labels: Vec<String>,
        degree: Vec<usize>,
        products: impl IntoIterator<Item = (usize, usize, usize, Q)>,
        unit: Option<Vec<Q>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if degree.len() != dim {
            return Err(Error::BadParam("one degree per basis element required".into()));
        }
        if let Some(&d) = degree.iter().find(|&&d| d >= semigroup.order()) {
            return Err(Error::BadParam(format!("degree index {d} outside semigroup")));
        }
        let mut dense = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for (i, j, k, c) in products {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::BadParam(format!("product index ({i},{j},{k}) out of range")));
            }
            dense[i][j][k] += c;
        }
        let table = dense.into_iter().map(|row| row.into_iter().map(|v| to_sparse(&v)).collect()).collect();
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(Error::BadUnit);
            }
        }
        Ok(GradedAlgebra { name: name.into(), labels, degree, semigroup, table, unit })
    }

    fn from_dense(
        name: String,
        semigroup: FiniteSemigroup,
        labels: Vec<String>,
        degree: Vec<usize>,
        dense: Vec<Vec<Vec<Q>>>,
    ) -> Self {
        let table = dense.iter().map(|row| row.iter().map(|v| to_sparse(v)).collect()).collect();
        GradedAlgebra { name, labels, degree, semigroup, table, unit: None }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degree[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn declared_unit(&self) -> Option<&[Q]> {
        self.unit.as_deref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// All structure constants as `(i, j, k, c)` with `c != 0`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Q)> {
        let mut out = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, prod) in row.iter().enumerate() {
                for (k, c) in prod {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn validation_report(&self) -> ValidationReport {
        let n = self.dim();
        let mut report = ValidationReport::default();
        for i in 0..n {
            for j in 0..n {
                let st = self.semigroup.mul(self.degree[i], self.degree[j]);
                if self.table[i][j].iter().any(|(k, _)| self.degree[*k] != st) {
                    report.grading.push((i, j));
                }
                let ij = self.sparse_to_dense(&self.table[i][j]);
                for k in 0..n {
                    let left = self.mul_vec_basis(&ij, k);
                    let jk = self.sparse_to_dense(&self.table[j][k]);
                    let right = self.mul_basis_vec(i, &jk);
                    if left != right {
                        report.associativity.push((i, j, k));
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            report.bad_unit = (0..n).any(|i| {
                let e = unit_vec(n, i);
                self.multiply(u, &e) != e || self.multiply(&e, u) != e
            });
        }
        report
    }

    pub fn validate(&self) -> Result<()> {
        let report = self.validation_report();
        if let Some(&(i, j, k)) = report.associativity.first() {
            return Err(Error::NotAssociative(i, j, k));
        }
        if let Some(&(i, j)) = report.grading.first() {
            let st = self.semigroup.mul(self.degree[i], self.degree[j]);
            return Err(Error::GradingViolation(i, j, self.semigroup.label(st).to_string()));
        }
        if report.bad_unit {
            return Err(Error::BadUnit);
        }
        Ok(())
    }

    fn sparse_to_dense(&self, s: &SparseVec) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        for (k, c) in s {
            v[*k] = c.clone();
        }
        v
    }

    /// `basis_i * v`.
    pub fn mul_basis_vec(&self, i: usize, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, s) in &self.table[i][j] {
                out[*k] += c * s;
            }
        }
        out
    }

    /// `v * basis_j`.
    pub fn mul_vec_basis(&self, v: &[Q], j: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, s) in &self.table[i][j] {
                out[*k] += c * s;
            }
        }
        out
    }

    pub fn multiply(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, s) in &self.table[i][j] {
                    out[*k] += &ab * s;
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        unit_vec(self.dim(), i)
    }

    pub fn component(&self, t: usize) -> Subspace {
        let n = self.dim();
        Subspace::span(n, (0..n).filter(|&i| self.degree[i] == t).map(|i| unit_vec(n, i)))
    }

    pub fn component_indices(&self, t: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree[i] == t).collect()
    }

    pub fn component_project(&self, t: usize, v: &[Q]) -> Vec<Q> {
        v.iter()
            .enumerate()
            .map(|(i, x)| if self.degree[i] == t { x.clone() } else { Q::zero() })
            .collect()
    }

    /// Semigroup elements with a nonzero component, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.semigroup.order()).filter(|&t| self.degree.contains(&t)).collect()
    }

    /// Degree of `v` if it is nonzero and homogeneous.
    pub fn homogeneous_degree(&self, v: &[Q]) -> Option<usize> {
        let mut degrees = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| self.degree[i]);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// The two-sided unit, found by solving `u e_i = e_i u = e_i`.
    pub fn find_unit(&self) -> Option<Vec<Q>> {
        if let Some(u) = &self.unit {
            return Some(u.clone());
        }
        let n = self.dim();
        if n == 0 {
            return None;
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..n {
            // (sum_k u_k e_k) e_i and e_i (sum_k u_k e_k), coordinate l
            for l in 0..n {
                let left: Vec<Q> = (0..n).map(|k| coefficient(&self.table[k][i], l)).collect();
                let right: Vec<Q> = (0..n).map(|k| coefficient(&self.table[i][k], l)).collect();
                let target = if i == l { Q::one() } else { Q::zero() };
                rows.push(left);
                rhs.push(target.clone());
                rows.push(right);
                rhs.push(target);
            }
        }
        solve(&rows, &rhs, n)
    }

    /// `A^+ = F·1 + A` as a trivially graded algebra; the adjoined unit is
    /// basis element 0 and basis element `i` of `A` becomes `i + 1`.
    pub fn adjoin_unit(&self) -> GradedAlgebra {
        let n = self.dim();
        let mut products = Vec::new();
        products.push((0, 0, 0, Q::one()));
        for i in 0..n {
            products.push((0, i + 1, i + 1, Q::one()));
            products.push((i + 1, 0, i + 1, Q::one()));
        }
        for (i, j, k, c) in self.structure_constants() {
            products.push((i + 1, j + 1, k + 1, c));
        }
        let mut labels = vec!["1".to_string()];
        labels.extend(self.labels.iter().cloned());
        GradedAlgebra::unchecked(
            format!("{}+", self.name),
            FiniteSemigroup::trivial(),
            labels,
            vec![0; n + 1],
            products,
            Some(unit_vec(n + 1, 0)),
        )
        .expect("well-formed unitization")
    }

    /// The same algebra graded by the trivial semigroup.
    pub fn regrade_trivial(&self) -> GradedAlgebra {
        GradedAlgebra {
            name: self.name.clone(),
            labels: self.labels.clone(),
            degree: vec![0; self.dim()],
            semigroup: FiniteSemigroup::trivial(),
            table: self.table.clone(),
            unit: self.unit.clone(),
        }
    }

    pub fn subspace_product(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut products = Vec::with_capacity(s.dim() * t.dim());
        for u in s.basis() {
            for v in t.basis() {
                products.push(self.multiply(u, v));
            }
        }
        Subspace::span(self.dim(), products)
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    /// `A^2`.
    pub fn square(&self) -> Subspace {
        let n = self.dim();
        Subspace::span(n, self.table.iter().flatten().map(|p| self.sparse_to_dense(p)))
    }

    /// Smallest two-sided ideal containing `vectors`.
    pub fn ideal_generated(&self, vectors: &[Vec<Q>]) -> Subspace {
        let n = self.dim();
        let mut ideal = Subspace::span(n, vectors.iter().cloned());
        let mut frontier: Vec<Vec<Q>> = ideal.basis().to_vec();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for i in 0..n {
                    for w in [self.mul_basis_vec(i, v), self.mul_vec_basis(v, i)] {
                        if !ideal.contains(&w) {
                            ideal = ideal.sum(&Subspace::span(n, [w.clone()]));
                            next.push(w);
                        }
                    }
                }
            }
            frontier = next;
        }
        ideal
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        (0..self.dim()).all(|i| {
            s.basis().iter().all(|v| s.contains(&self.mul_basis_vec(i, v)) && s.contains(&self.mul_vec_basis(v, i)))
        })
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|u| s.basis().iter().all(|v| s.contains(&self.multiply(u, v))))
    }

    pub fn is_graded_subspace(&self, s: &Subspace) -> bool {
        let total: usize = self.support().iter().map(|&t| s.intersect(&self.component(t)).dim()).sum();
        total == s.dim()
    }

    /// `S^k` under the subspace product, for `k >= 1`.
    pub fn subspace_power(&self, s: &Subspace, k: usize) -> Subspace {
        let mut p = s.clone();
        for _ in 1..k {
            p = self.subspace_product(&p, s);
        }
        p
    }

    pub fn direct_sum(&self, other: &GradedAlgebra) -> Result<GradedAlgebra> {
        if self.semigroup != other.semigroup {
            return Err(Error::SemigroupMismatch);
        }
        let n = self.dim();
        let mut products = self.structure_constants();
        products.extend(other.structure_constants().into_iter().map(|(i, j, k, c)| (i + n, j + n, k + n, c)));
        let labels = self
            .labels
            .iter()
            .map(|l| format!("({l},0)"))
            .chain(other.labels.iter().map(|l| format!("(0,{l})")))
            .collect();
        let degree = self.degree.iter().chain(&other.degree).copied().collect();
        let unit = match (self.find_unit(), other.find_unit()) {
            (Some(a), Some(b)) => Some(a.into_iter().chain(b).collect()),
            _ => None,
        };
        GradedAlgebra::unchecked(format!("{}+{}", self.name, other.name), self.semigroup.clone(), labels, degree, products, unit)
    }

    /// Reversed multiplication, graded by the opposite semigroup.
    pub fn opposite(&self) -> GradedAlgebra {
        let n = self.dim();
        let mut table = vec![vec![SparseVec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = self.table[j][i].clone();
            }
        }
        GradedAlgebra {
            name: format!("{}^op", self.name),
            labels: self.labels.clone(),
            degree: self.degree.clone(),
            semigroup: self.semigroup.opposite(),
            table,
            unit: self.unit.clone(),
        }
    }

    /// `A / I` for a two-sided ideal `I`. The grading is kept when `I` is
    /// graded; otherwise the quotient is trivially graded.
    pub fn quotient(&self, ideal: &Subspace) -> Quotient {
        let keep = ideal.complement_indices();
        let graded = self.is_graded_subspace(ideal);
        let proj = |v: &[Q]| -> Vec<Q> {
            let r = ideal.reduce(v);
            keep.iter().map(|&i| r[i].clone()).collect()
        };
        let dense: Vec<Vec<Vec<Q>>> = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| proj(&self.sparse_to_dense(&self.table[a][b]))).collect())
            .collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let (semigroup, degree) = if graded {
            (self.semigroup.clone(), keep.iter().map(|&i| self.degree[i]).collect())
        } else {
            (FiniteSemigroup::trivial(), vec![0; keep.len()])
        };
        let algebra = GradedAlgebra::from_dense(format!("{}/I", self.name), semigroup, labels, degree, dense);
        Quotient { algebra, ideal: ideal.clone(), lift_indices: keep }
    }

    /// The subalgebra with the given basis (which must span a subalgebra).
    /// It is graded by `A`'s semigroup when every basis vector is
    /// homogeneous, and trivially graded otherwise.
    pub fn subalgebra(&self, basis: &[Vec<Q>]) -> Result<GradedAlgebra> {
        let m = basis.len();
        let mut dense = vec![vec![Vec::new(); m]; m];
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                let p = self.multiply(u, v);
                dense[a][b] = coordinates(basis, &p)
                    .ok_or_else(|| Error::PreconditionFailed("subspace is not closed under multiplication".into()))?;
            }
        }
        let degrees: Option<Vec<usize>> = basis.iter().map(|v| self.homogeneous_degree(v)).collect();
        let (semigroup, degree) = match degrees {
            Some(d) => (self.semigroup.clone(), d),
            None => (FiniteSemigroup::trivial(), vec![0; m]),
        };
        let labels = (0..m).map(|i| format!("b{}", i + 1)).collect();
        Ok(GradedAlgebra::from_dense(format!("{}|sub", self.name), semigroup, labels, degree, dense))
    }

    /// Renders a vector as a combination of basis labels.
    pub fn format_vector(&self, v: &[Q]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if c.is_one() { self.labels[i].clone() } else { format!("{}*{}", fmt_q(c), self.labels[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn is_zero_vector(v: &[Q]) -> bool {
        is_zero_vec(v)
    }
}

fn to_sparse(v: &[Q]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

fn coefficient(s: &SparseVec, k: usize) -> Q {
    s.iter().find(|(i, _)| *i == k).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::catalog::{catalog, matrix_algebra};
    use crate::semigroup::catalog_semigroup;
    use proptest::prelude::*;

    fn m2() -> GradedAlgebra {
        catalog("full_matrix(2)").unwrap()
    }

    #[test]
    fn zero_algebra_validates() {
        let a = GradedAlgebra::new("z", catalog_semigroup("T1").unwrap(), vec!["z".into()], vec![1], vec![], None).unwrap();
        assert!(a.validation_report().is_ok());
        assert!(a.find_unit().is_none());
        let plus = a.adjoin_unit();
        assert_eq!(plus.dim(), 2);
        plus.validate().unwrap();
        assert!(plus.multiply(&plus.basis_vector(1), &plus.basis_vector(1)).iter().all(Zero::is_zero));
        assert_eq!(plus.adjoin_unit().dim(), 3);
    }

    #[test]
    fn grading_violation_detected() {
        let z2 = catalog_semigroup("Z2").unwrap();
        // e11, e12, e21, e22 with e12 wrongly put in the even component
        let a = matrix_algebra(2, z2, |i, j| usize::from(i != j && !(i == 0 && j == 1)), "bad");
        assert!(matches!(a.validate(), Err(Error::GradingViolation(..))));
        assert!(catalog("mk_zhalf_graded").unwrap().validate().is_ok());
    }

    #[test]
    fn matrix_unit_products() {
        let a = m2();
        let idx = |l: &str| a.labels().iter().position(|x| x == l).unwrap();
        let e = |l: &str| a.basis_vector(idx(l));
        assert_eq!(a.multiply(&e("e11"), &e("e12")), e("e12"));
        assert!(is_zero_vec(&a.multiply(&e("e12"), &e("e12"))));
        let sum: Vec<Q> = crate::linalg::add_vec(&e("e11"), &e("e22"));
        assert_eq!(a.find_unit().unwrap(), sum);
        let s = Subspace::span(4, [e("e11")]);
        let t = Subspace::span(4, [e("e12")]);
        assert_eq!(a.subspace_product(&s, &t), t);
        assert!(a.subspace_product(&t, &t).is_zero());
        assert_eq!(a.ideal_generated(&[e("e12")]).dim(), 4);
        assert_eq!(a.ideal_generated(&[]).dim(), 0);
    }

    #[test]
    fn unitization_of_unital_algebra() {
        let a = m2();
        let plus = a.adjoin_unit();
        assert_eq!(plus.dim(), 5);
        plus.validate().unwrap();
        // old unit is an idempotent but no longer the unit
        let mut old = vec![q(0); 5];
        old[1 + a.labels().iter().position(|l| l == "e11").unwrap()] = q(1);
        old[1 + a.labels().iter().position(|l| l == "e22").unwrap()] = q(1);
        assert_eq!(plus.multiply(&old, &old), old);
        assert_eq!(plus.find_unit().unwrap(), unit_vec(5, 0));
    }

    #[test]
    fn upper_triangular_ideal() {
        let a = catalog("upper_triangular(2)").unwrap();
        let e12 = a.basis_vector(a.labels().iter().position(|l| l == "e12").unwrap());
        let i = a.ideal_generated(std::slice::from_ref(&e12));
        assert_eq!(i, Subspace::span(3, [e12]));
        assert!(a.is_ideal(&i));
    }

    #[test]
    fn components_and_support() {
        let a = catalog("exampleT1(2)").unwrap();
        assert_eq!(a.component(0).dim(), 4);
        assert_eq!(a.support(), vec![0, 1]);
        let b = catalog("mk_column_graded(3)").unwrap();
        assert_eq!(b.support(), vec![0, 1, 2]);
        assert!(a.is_graded_subspace(&a.component(1)));
        assert!(a.is_graded_subspace(&Subspace::zero(a.dim())));
        assert!(a.is_graded_subspace(&a.whole()));
        let empty = catalog("full_matrix(2)").unwrap();
        assert!(empty.component(1).is_zero() || empty.semigroup().order() == 1);
    }

    #[test]
    fn direct_sum_and_opposite() {
        let a = m2();
        let s = a.direct_sum(&a).unwrap();
        assert_eq!(s.dim(), 8);
        s.validate().unwrap();
        let op = a.opposite();
        op.validate().unwrap();
        assert_eq!(op.opposite().structure_constants(), a.structure_constants());
        // transpose e_ij -> e_ji is an isomorphism M2^op -> M2
        let idx = |l: &str| a.labels().iter().position(|x| x == l).unwrap();
        let transpose = |i: usize| {
            let l = &a.labels()[i];
            let (r, c) = (&l[1..2], &l[2..3]);
            idx(&format!("e{c}{r}"))
        };
        for i in 0..4 {
            for j in 0..4 {
                let lhs: Vec<(usize, Q)> = op.basis_product(i, j).iter().map(|(k, c)| (transpose(*k), c.clone())).collect();
                let rhs = a.basis_product(transpose(i), transpose(j)).clone();
                assert_eq!(lhs, rhs);
            }
        }
        let other = catalog("exampleT1(2)").unwrap();
        assert!(matches!(a.direct_sum(&other), Err(Error::SemigroupMismatch)));
    }

    fn small_vec(dim: usize) -> impl Strategy<Value = Vec<Q>> {
        proptest::collection::vec(-3i64..4, dim).prop_map(|v| v.into_iter().map(q).collect())
    }

    proptest! {
        #[test]
        fn product_is_associative_on_random_vectors(u in small_vec(7), v in small_vec(7), w in small_vec(7)) {
            let a = catalog("thm_T1_fractional").unwrap();
            prop_assert_eq!(a.multiply(&a.multiply(&u, &v), &w), a.multiply(&u, &a.multiply(&v, &w)));
        }

        #[test]
        fn projections_are_idempotent_and_sum_to_identity(v in small_vec(6)) {
            let a = catalog("thm_T3_fractional").unwrap();
            let mut total = vec![q(0); 6];
            for t in 0..a.semigroup().order() {
                let p = a.component_project(t, &v);
                prop_assert_eq!(a.component_project(t, &p), p.clone());
                for s in 0..a.semigroup().order() {
                    if s != t {
                        prop_assert!(is_zero_vec(&a.component_project(s, &p)));
                    }
                }
                total = crate::linalg::add_vec(&total, &p);
            }
            prop_assert_eq!(total, v);
        }

        #[test]
        fn subspace_product_is_bilinear(u in small_vec(4), v in small_vec(4), w in small_vec(4)) {
            let a = m2();
            let s = Subspace::span(4, [u]);
            let t1 = Subspace::span(4, [v]);
            let t2 = Subspace::span(4, [w]);
            let lhs = a.subspace_product(&s, &t1.sum(&t2));
            let rhs = a.subspace_product(&s, &t1).sum(&a.subspace_product(&s, &t2));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn generated_ideals_are_closed(v in small_vec(7)) {
            let a = catalog("thm_T1_fractional").unwrap();
            let i = a.ideal_generated(&[v]);
            prop_assert!(a.is_ideal(&i));
        }
    }
}
