//! Named algebras: matrix algebras with various gradings and the
//! pair constructions `M_k ⊕ X` graded by two-element semigroups.
//!
//! Pair algebras are built concretely: every basis element is a pair of
//! `k x k` matrices, products are computed by the pair rule and then written
//! back in the chosen basis, so the structure constants cannot drift from
//! the defining construction.

use num_traits::Zero;

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::linalg::coordinates;
use crate::algebra::GradedAlgebra;
use crate::semigroup::{catalog_semigroup, FiniteSemigroup};

pub const CATALOG_NAMES: &[&str] = &[
    "exampleT1(k)",
    "exampleT2(k)",
    "exampleT3(k)",
    "thm_T1_fractional",
    "thm_T2_fractional",
    "thm_T3_fractional",
    "mk_column_graded(k)",
    "utk_column_graded(k)",
    "mk_zhalf_graded",
    "full_matrix(k)",
    "upper_triangular(k)",
    "mk_diagonal_pair(k)",
];

fn unit_label(i: usize, j: usize) -> String {
    format!("e{}{}", i + 1, j + 1)
}

/// Matrix units `e_ij` (with `keep(i, j)`) graded by `degree(i, j)`.
fn matrix_units(
    k: usize,
    semigroup: FiniteSemigroup,
    keep: impl Fn(usize, usize) -> bool,
    degree: impl Fn(usize, usize) -> usize,
    name: &str,
) -> GradedAlgebra {
    let units: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).filter(|&(i, j)| keep(i, j)).collect();
    let index = |i: usize, j: usize| units.iter().position(|&u| u == (i, j));
    let mut products = Vec::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(l, m)) in units.iter().enumerate() {
            if j == l {
                let c = index(i, m).expect("closed under products");
                products.push((a, b, c, Q::from_integer(1.into())));
            }
        }
    }
    let labels = units.iter().map(|&(i, j)| unit_label(i, j)).collect();
    let degrees = units.iter().map(|&(i, j)| degree(i, j)).collect();
    GradedAlgebra::unchecked(name, semigroup, labels, degrees, products, None).expect("well-formed matrix algebra")
}

/// `M_k` with basis `e_ij` of degree `degree(i, j)` (no validation).
pub fn matrix_algebra(k: usize, semigroup: FiniteSemigroup, degree: impl Fn(usize, usize) -> usize, name: &str) -> GradedAlgebra {
    matrix_units(k, semigroup, |_, _| true, degree, name)
}

#[derive(Clone, Copy)]
enum PairRule {
    /// `(a,b)(c,d) = (ac, bd)`: direct sum of ideals.
    Ideals,
    /// `(a,u)(b,w) = (ab, 0)`: second summand is a square-zero ideal.
    SquareZero,
    /// `(a,u)(b,w) = (ab, aw)`: second summand is a left module killed on the right.
    LeftModule,
}

type Mat = Vec<Q>;

fn mat_unit(k: usize, i: usize, j: usize) -> Mat {
    let mut m = vec![Q::zero(); k * k];
    m[i * k + j] = Q::from_integer(1.into());
    m
}

fn mat_mul(k: usize, a: &Mat, b: &Mat) -> Mat {
    let mut out = vec![Q::zero(); k * k];
    for i in 0..k {
        for l in 0..k {
            let x = &a[i * k + l];
            if x.is_zero() {
                continue;
            }
            for j in 0..k {
                let y = &b[l * k + j];
                if !y.is_zero() {
                    out[i * k + j] += x * y;
                }
            }
        }
    }
    out
}

struct PairElement {
    label: String,
    degree: usize,
    first: Mat,
    second: Mat,
}

fn pair_algebra(name: &str, k: usize, semigroup: FiniteSemigroup, rule: PairRule, basis: Vec<PairElement>) -> GradedAlgebra {
    let flat: Vec<Vec<Q>> = basis.iter().map(|e| e.first.iter().chain(&e.second).cloned().collect()).collect();
    let zero = vec![Q::zero(); k * k];
    let mut products = Vec::new();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            let first = mat_mul(k, &x.first, &y.first);
            let second = match rule {
                PairRule::Ideals => mat_mul(k, &x.second, &y.second),
                PairRule::SquareZero => zero.clone(),
                PairRule::LeftModule => mat_mul(k, &x.first, &y.second),
            };
            let v: Vec<Q> = first.into_iter().chain(second).collect();
            let coords = coordinates(&flat, &v).expect("pair basis spans a subalgebra");
            for (c, coeff) in coords.into_iter().enumerate() {
                if !coeff.is_zero() {
                    products.push((a, b, c, coeff));
                }
            }
        }
    }
    let labels = basis.iter().map(|e| e.label.clone()).collect();
    let degrees = basis.iter().map(|e| e.degree).collect();
    GradedAlgebra::unchecked(name, semigroup, labels, degrees, products, None).expect("well-formed pair algebra")
}

/// `(e_il, 0)` for all `i, l`, in degree `deg`.
fn first_summand(k: usize, deg: usize) -> Vec<PairElement> {
    let zero = vec![Q::zero(); k * k];
    (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| PairElement {
            label: format!("({},0)", unit_label(i, j)),
            degree: deg,
            first: mat_unit(k, i, j),
            second: zero.clone(),
        })
        .collect()
}

/// `(e_il, e_il)` for the given units, labelled with `tag` standing for the
/// second coordinate name.
fn diagonal_pairs(k: usize, deg: usize, units: &[(usize, usize)], tag: char) -> Vec<PairElement> {
    units
        .iter()
        .map(|&(i, j)| PairElement {
            label: format!("({},{}{}{})", unit_label(i, j), tag, i + 1, j + 1),
            degree: deg,
            first: mat_unit(k, i, j),
            second: mat_unit(k, i, j),
        })
        .collect()
}

fn all_units(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect()
}

fn upper_units(k: usize) -> Vec<(usize, usize)> {
    all_units(k).into_iter().filter(|&(i, j)| i <= j).collect()
}

fn example_t1(k: usize, name: &str) -> GradedAlgebra {
    let mut basis = first_summand(k, 0);
    basis.extend(diagonal_pairs(k, 1, &upper_units(k), 'e'));
    pair_algebra(name, k, catalog_semigroup("T1").expect("T1"), PairRule::Ideals, basis)
}

fn example_t2(k: usize) -> GradedAlgebra {
    let mut basis = first_summand(k, 0);
    basis.extend(diagonal_pairs(k, 1, &all_units(k), 'v'));
    pair_algebra(&format!("exampleT2({k})"), k, catalog_semigroup("T2").expect("T2"), PairRule::SquareZero, basis)
}

fn example_t3(k: usize) -> GradedAlgebra {
    let mut basis = first_summand(k, 0);
    basis.extend(diagonal_pairs(k, 1, &all_units(k), 'e'));
    pair_algebra(&format!("exampleT3({k})"), k, catalog_semigroup("T3").expect("T3"), PairRule::LeftModule, basis)
}

fn thm_t2() -> GradedAlgebra {
    let mut basis = first_summand(2, 0);
    basis.extend(diagonal_pairs(2, 1, &upper_units(2), 'j'));
    pair_algebra("thm_T2_fractional", 2, catalog_semigroup("T2").expect("T2"), PairRule::SquareZero, basis)
}

fn thm_t3() -> GradedAlgebra {
    let mut basis = first_summand(2, 0);
    // I = <e12, e22>, the second column of M2
    basis.extend(diagonal_pairs(2, 1, &[(0, 1), (1, 1)], 'e'));
    pair_algebra("thm_T3_fractional", 2, catalog_semigroup("T3").expect("T3"), PairRule::LeftModule, basis)
}

/// `M_k ⊕ M_k` with degree 0 part `(M_k, 0)` and degree 1 part `{(a, a)}`.
fn diagonal_pair(k: usize) -> GradedAlgebra {
    let mut basis = first_summand(k, 0);
    basis.extend(diagonal_pairs(k, 1, &all_units(k), 'e'));
    pair_algebra(&format!("mk_diagonal_pair({k})"), k, catalog_semigroup("T1").expect("T1"), PairRule::Ideals, basis)
}

fn parse_call(spec: &str) -> Result<(&str, Option<usize>)> {
    let spec = spec.trim();
    let spec = spec.strip_prefix("catalog:").unwrap_or(spec);
    match spec.split_once('(') {
        None => Ok((spec, None)),
        Some((name, rest)) => {
            let arg = rest.strip_suffix(')').ok_or_else(|| Error::BadParam(spec.to_string()))?;
            let k = arg.trim().parse::<usize>().map_err(|_| Error::BadParam(spec.to_string()))?;
            Ok((name.trim(), Some(k)))
        }
    }
}

/// Looks up `name(params)`, e.g. `exampleT1(2)` or `thm_T3_fractional`.
pub fn catalog(spec: &str) -> Result<GradedAlgebra> {
    let (name, k) = parse_call(spec)?;
    let need_k = |min: usize| -> Result<usize> {
        match k {
            Some(k) if (min..=6).contains(&k) => Ok(k),
            Some(k) => Err(Error::BadParam(format!("{name}: k = {k} outside {min}..=6"))),
            None => Err(Error::BadParam(format!("{name} needs a parameter k"))),
        }
    };
    let no_k = || -> Result<()> {
        match k {
            None => Ok(()),
            Some(_) => Err(Error::BadParam(format!("{name} takes no parameter"))),
        }
    };
    let algebra = match name {
        "exampleT1" => {
            let k = need_k(2)?;
            example_t1(k, &format!("exampleT1({k})"))
        }
        "exampleT2" => example_t2(need_k(1)?),
        "exampleT3" => example_t3(need_k(1)?),
        "thm_T1_fractional" => {
            no_k()?;
            example_t1(2, "thm_T1_fractional")
        }
        "thm_T2_fractional" => {
            no_k()?;
            thm_t2()
        }
        "thm_T3_fractional" => {
            no_k()?;
            thm_t3()
        }
        "mk_column_graded" => {
            let k = need_k(1)?;
            matrix_algebra(k, FiniteSemigroup::right_zero_band(k), |_, j| j, &format!("mk_column_graded({k})"))
        }
        "utk_column_graded" => {
            let k = need_k(1)?;
            matrix_units(k, FiniteSemigroup::right_zero_band(k), |i, j| i <= j, |_, j| j, &format!("utk_column_graded({k})"))
        }
        "mk_zhalf_graded" => {
            no_k()?;
            matrix_algebra(2, catalog_semigroup("Z2")?, |i, j| usize::from(i != j), "mk_zhalf_graded")
        }
        "full_matrix" => {
            let k = need_k(1)?;
            matrix_algebra(k, FiniteSemigroup::trivial(), |_, _| 0, &format!("full_matrix({k})"))
        }
        "upper_triangular" => {
            let k = need_k(1)?;
            matrix_units(k, FiniteSemigroup::trivial(), |i, j| i <= j, |_, _| 0, &format!("upper_triangular({k})"))
        }
        "mk_diagonal_pair" => diagonal_pair(need_k(1)?),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    algebra.validate()?;
    Ok(algebra)
}

/// `j - i` for a basis label whose first matrix unit is `e_ij`, as in
/// `e12` or `(e21,0)`.
pub fn matrix_unit_of_label(label: &str) -> Option<(usize, usize)> {
    let body = label.strip_prefix('(').unwrap_or(label);
    let unit = body.split(',').next()?;
    let digits = unit.strip_prefix('e')?;
    let mut chars = digits.chars();
    let i = chars.next()?.to_digit(10)? as usize;
    let j = chars.next()?.to_digit(10)? as usize;
    chars.next().is_none().then_some((i, j))
}
