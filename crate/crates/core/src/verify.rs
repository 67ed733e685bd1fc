//! The end-to-end check battery behind `grpi verify-paper`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigUint;

use crate::algebra::GradedAlgebra;
use crate::arith::Q;
use crate::asympt::{lemma_max_closed_form, maximize_phi, Polytope, DEFAULT_TOLERANCE};
use crate::catalog::catalog;
use crate::cochar::{
    all_partitions, alternation_vanishing_check, dim_bounds, hook_dim, multiplicity_exact, multiplicity_nonzero_certificate, theta_scan,
    Partition, Variant,
};
use crate::codim::{codim_sequence, graded_codim, ordinary_codim, Certification, CodimConfig};
use crate::error::Result;
use crate::linalg::{sub_vec, Subspace};
use crate::semigroup::{classify_order2, enumerate_semigroups, isomorphism_classes};
use crate::structure::{graded_exponent_d, graded_malcev_zeroband, is_graded_simple, is_radical_graded, jacobson_radical, ordinary_exponent, GradedSimplicity};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!("{} [{:>2}] {} ({}) {} [{:.2}s]", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.tags.join(","), self.detail, self.seconds)
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Tags or check names to run; empty runs everything.
    pub sections: Vec<String>,
    pub seed: u64,
    /// Perturb one structure constant of every catalog algebra.
    pub corrupt: bool,
}

type CheckFn = fn(&Loader) -> Result<(bool, String)>;

struct Check {
    id: usize,
    name: &'static str,
    tags: &'static [&'static str],
    run: CheckFn,
}

pub struct Loader {
    corrupt: bool,
    pub seed: u64,
}

impl Loader {
    pub fn algebra(&self, spec: &str) -> Result<GradedAlgebra> {
        let a = catalog(spec)?;
        if !self.corrupt {
            return Ok(a);
        }
        let bad = corrupt(&a)?;
        bad.validate()?;
        Ok(bad)
    }
}

/// Doubles the first nonzero structure constant.
pub fn corrupt(a: &GradedAlgebra) -> Result<GradedAlgebra> {
    let mut constants = a.structure_constants();
    if let Some(first) = constants.first_mut() {
        first.3 = &first.3 * Q::from_integer(2.into());
    }
    GradedAlgebra::unchecked(
        a.name().to_string(),
        a.semigroup().clone(),
        a.labels().to_vec(),
        a.degrees().to_vec(),
        constants,
        a.declared_unit().map(<[Q]>::to_vec),
    )
}

const CHECKS: [Check; 13] = [
    Check { id: 1, name: "two-element semigroups", tags: &["semigroup", "classification"], run: check_semigroups },
    Check { id: 2, name: "non-graded radicals", tags: &["structure", "radical"], run: check_radicals },
    Check { id: 3, name: "graded splitting", tags: &["structure", "splitting"], run: check_splitting },
    Check { id: 4, name: "graded simplicity", tags: &["structure", "simplicity"], run: check_simplicity },
    Check { id: 5, name: "T1/T2 codimensions agree", tags: &["codim"], run: check_codim_equality },
    Check { id: 6, name: "first codimension", tags: &["codim"], run: check_c1 },
    Check { id: 7, name: "maximum of phi", tags: &["asympt", "bounds", "phi"], run: check_phi_max },
    Check { id: 8, name: "witness nonvanishing", tags: &["cochar", "witness"], run: check_witnesses },
    Check { id: 9, name: "vanishing by alternation", tags: &["cochar", "bounds", "alternation"], run: check_alternation },
    Check { id: 10, name: "theta invariant", tags: &["cochar", "bounds", "theta"], run: check_theta },
    Check { id: 11, name: "exponent formula", tags: &["structure", "exponent"], run: check_exponent },
    Check { id: 12, name: "hook formula oracles", tags: &["cochar", "bounds", "hooks"], run: check_hooks },
    Check { id: 13, name: "multiplicity cross-validation", tags: &["cochar", "multiplicity"], run: check_cross_validation },
];

pub fn check_names() -> Vec<(usize, &'static str, &'static [&'static str])> {
    CHECKS.iter().map(|c| (c.id, c.name, c.tags)).collect()
}

fn selected(check: &Check, sections: &[String]) -> bool {
    sections.is_empty()
        || sections.iter().any(|s| {
            let s = s.trim();
            check.tags.contains(&s) || check.name == s || s.parse::<usize>().ok() == Some(check.id)
        })
}

/// Runs the selected checks in order; panics and errors count as failures.
pub fn run_battery(options: &VerifyOptions) -> Vec<CheckOutcome> {
    let loader = Loader { corrupt: options.corrupt, seed: options.seed };
    // a panicking check is reported as a failure, not as a backtrace
    let previous = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let outcomes = CHECKS
        .iter()
        .filter(|c| selected(c, &options.sections))
        .map(|c| {
            let start = Instant::now();
            let (passed, detail) = match catch_unwind(AssertUnwindSafe(|| (c.run)(&loader))) {
                Ok(Ok(r)) => r,
                Ok(Err(e)) => (false, format!("error: {e}")),
                Err(_) => (false, "panicked".to_string()),
            };
            CheckOutcome { id: c.id, name: c.name, tags: c.tags, passed, detail, seconds: start.elapsed().as_secs_f64() }
        })
        .collect();
    std::panic::set_hook(previous);
    outcomes
}

pub fn run_check(id: usize, options: &VerifyOptions) -> Option<CheckOutcome> {
    run_battery(&VerifyOptions { sections: vec![id.to_string()], ..options.clone() }).into_iter().next()
}

fn check_semigroups(_: &Loader) -> Result<(bool, String)> {
    let all = enumerate_semigroups(2)?;
    let classes = isomorphism_classes(&all);
    let mut tags = classes.iter().map(|c| classify_order2(&all[c[0]]).map(|t| t.name())).collect::<Result<Vec<_>>>()?;
    tags.sort_unstable();
    let ok = tags == ["T1", "T2", "T3", "T3op", "Z2"] && all.len() == 8;
    Ok((ok, format!("{} tables, classes {}", all.len(), tags.join(" "))))
}

/// `(0, x)` for every second component `x` of a pair basis, as
/// `(a, x) - (a, 0)`; `upper_only` keeps `x = e_ij` with `i < j`.
fn second_summand(a: &GradedAlgebra, upper_only: bool) -> Subspace {
    let labels = a.labels();
    let find = |l: &str| labels.iter().position(|x| x == l);
    let vectors = labels.iter().enumerate().filter_map(|(idx, l)| {
        let (first, second) = l.strip_prefix('(')?.strip_suffix(')')?.split_once(',')?;
        if second == "0" {
            return None;
        }
        if upper_only {
            let (i, j) = crate::catalog::matrix_unit_of_label(second).map(|(i, j)| (i, j))?;
            if i >= j {
                return None;
            }
        }
        let zero = find(&format!("({first},0)"))?;
        Some(sub_vec(&a.basis_vector(idx), &a.basis_vector(zero)))
    });
    Subspace::span(a.dim(), vectors.collect::<Vec<_>>())
}

fn check_radicals(l: &Loader) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for (spec, upper_only) in [("exampleT1(2)", true), ("exampleT2(2)", false), ("exampleT3(2)", false)] {
        let a = l.algebra(spec)?;
        let j = jacobson_radical(&a);
        let expected = second_summand(&a, upper_only);
        let matches = j == expected && !expected.is_zero();
        let graded = is_radical_graded(&a);
        let meets: Vec<usize> = a.support().iter().map(|&t| j.intersect(&a.component(t)).dim()).collect();
        ok &= matches && !graded && meets.iter().all(|&d| d == 0);
        notes.push(format!("{spec}: dim J={} matches={matches} graded={graded}", j.dim()));
    }
    Ok((ok, notes.join("; ")))
}

fn check_splitting(l: &Loader) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for spec in ["utk_column_graded(2)", "utk_column_graded(3)"] {
        let a = l.algebra(spec)?;
        let s = graded_malcev_zeroband(&a)?;
        let closed = a.subspace_product(&s.complement, &s.complement).dim() <= s.complement.dim()
            && s.complement.contains_subspace(&a.subspace_product(&s.complement, &s.complement));
        let graded = a.is_graded_subspace(&s.complement);
        let additive = s.complement.dim() + s.radical.dim() == a.dim() && s.complement.intersect(&s.radical).is_zero();
        ok &= closed && graded && additive;
        notes.push(format!("{spec}: B dim {} J dim {}", s.complement.dim(), s.radical.dim()));
    }
    Ok((ok, notes.join("; ")))
}

fn check_simplicity(l: &Loader) -> Result<(bool, String)> {
    let t3 = is_graded_simple(&l.algebra("thm_T3_fractional")?);
    let diag = l.algebra("mk_diagonal_pair(2)")?;
    let witness_ok = match is_graded_simple(&diag) {
        GradedSimplicity::CertifiedFalse { witness, .. } => witness == diag.component(0),
        _ => false,
    };
    let ok = matches!(t3, GradedSimplicity::CertifiedTrue(_)) && witness_ok;
    Ok((ok, format!("T3 example {}, diagonal pair witness (M_k,0) {witness_ok}", t3.tag())))
}

fn check_codim_equality(l: &Loader) -> Result<(bool, String)> {
    let config = CodimConfig::default();
    let t1 = codim_sequence(&l.algebra("thm_T1_fractional")?, 4, &config)?;
    let t2 = codim_sequence(&l.algebra("thm_T2_fractional")?, 4, &config)?;
    let stable = t1.iter().chain(&t2).all(|r| matches!(r.certification, Certification::Exact | Certification::ModularStable { primes: 2.. }));
    let v1: Vec<u64> = t1.iter().map(|r| r.value).collect();
    let v2: Vec<u64> = t2.iter().map(|r| r.value).collect();
    let exact = CodimConfig::exact();
    let e1: Vec<u64> = codim_sequence(&l.algebra("thm_T1_fractional")?, 3, &exact)?.iter().map(|r| r.value).collect();
    let e2: Vec<u64> = codim_sequence(&l.algebra("thm_T2_fractional")?, 3, &exact)?.iter().map(|r| r.value).collect();
    let ok = stable && v1 == v2 && e1 == e2 && e1[..] == v1[..3];
    Ok((ok, format!("modular {v1:?} vs {v2:?}, exact {e1:?} vs {e2:?}")))
}

fn check_c1(l: &Loader) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for k in [2, 3] {
        let a = l.algebra(&format!("mk_column_graded({k})"))?;
        let graded = graded_codim(&a, 1, &CodimConfig::exact())?.value;
        let ordinary = ordinary_codim(&a, 1, &CodimConfig::exact())?.value;
        ok &= graded == k as u64 && ordinary == 1;
        notes.push(format!("k={k}: graded {graded} ordinary {ordinary}"));
    }
    Ok((ok, notes.join("; ")))
}

fn check_phi_max(l: &Loader) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut values = Vec::new();
    for q in 4..=10 {
        let r = maximize_phi(&Polytope::lemma(q)?, DEFAULT_TOLERANCE, l.seed)?;
        let c = lemma_max_closed_form(q)?;
        worst = worst.max((r.value - c.value).abs());
        if q == 6 || q == 7 {
            values.push(format!("q={q}: {:.9}", r.value));
        }
    }
    let s2 = std::f64::consts::SQRT_2;
    let anchors = (lemma_max_closed_form(7)?.value - (4.0 + 2.0 * s2)).abs() < 1e-12 && (lemma_max_closed_form(6)?.value - (3.0 + 2.0 * s2)).abs() < 1e-12;
    Ok((worst <= DEFAULT_TOLERANCE && anchors, format!("{}, max deviation {worst:.1e}", values.join(", "))))
}

fn check_witnesses(l: &Loader) -> Result<(bool, String)> {
    let cases: [(Variant, &str, &[usize]); 4] = [
        (Variant::T1, "thm_T1_fractional", &[2, 1, 1, 1, 1, 1]),
        (Variant::T1, "thm_T1_fractional", &[2, 2, 2, 2, 2, 2, 1]),
        (Variant::T3, "thm_T3_fractional", &[2, 1, 1, 1, 1]),
        (Variant::T3, "thm_T3_fractional", &[2, 2, 2, 2, 2, 1]),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (variant, spec, parts) in cases {
        let a = l.algebra(spec)?;
        let lambda = Partition::new(parts.to_vec())?;
        let c = multiplicity_nonzero_certificate(&a, variant, &lambda)?;
        ok &= c.nonzero;
        notes.push(format!("{} {lambda}: {}", variant.name(), c.nonzero));
    }
    Ok((ok, notes.join("; ")))
}

fn check_alternation(l: &Loader) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for spec in ["thm_T1_fractional", "thm_T3_fractional"] {
        let a = l.algebra(spec)?;
        let r = alternation_vanishing_check(&a, a.dim() + 1, 200, l.seed)?;
        ok &= r.passed();
        notes.push(format!("{spec} n={}: {} nonzero of {}", r.n, r.counterexamples.len(), r.trials));
    }
    Ok((ok, notes.join("; ")))
}

fn check_theta(l: &Loader) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for spec in ["thm_T1_fractional", "thm_T3_fractional"] {
        let r = theta_scan(&l.algebra(spec)?, 4)?;
        ok &= r.passed();
        notes.push(format!("{spec}: {} nonzero products, {} violations", r.nonzero, r.violations.len()));
    }
    Ok((ok, notes.join("; ")))
}

fn check_exponent(l: &Loader) -> Result<(bool, String)> {
    let utk = l.algebra("utk_column_graded(2)")?;
    let mk = l.algebra("mk_column_graded(2)")?;
    let values = [graded_exponent_d(&utk)?.d, ordinary_exponent(&utk)?.d, graded_exponent_d(&mk)?.d, ordinary_exponent(&mk)?.d];
    Ok((values == [2, 2, 4, 4], format!("UT2: {} / {}, M2: {} / {}", values[0], values[1], values[2], values[3])))
}

fn check_hooks(_: &Loader) -> Result<(bool, String)> {
    let squares = (1..=8).all(|n| {
        let total = all_partitions(n).iter().map(|l| hook_dim(l).pow(2)).sum::<BigUint>();
        total == crate::cochar::partition::factorial(n)
    });
    let mut checked = 0;
    let mut sandwich = true;
    for n in 1..=12 {
        for lambda in all_partitions(n).into_iter().filter(|l| l.len() <= 7) {
            let b = dim_bounds(&lambda, 7)?;
            let d = hook_dim(&lambda);
            sandwich &= b.lower <= Q::from_integer(d.clone().into()) && d <= b.upper;
            checked += 1;
        }
    }
    Ok((squares && sandwich, format!("sum of squares to 8!, sandwich on {checked} partitions")))
}

fn check_cross_validation(l: &Loader) -> Result<(bool, String)> {
    let a = l.algebra("thm_T3_fractional")?;
    let mut certified = 0;
    let mut ok = true;
    for n in 1..=4 {
        for lambda in all_partitions(n) {
            if multiplicity_nonzero_certificate(&a, Variant::T3, &lambda)?.nonzero {
                certified += 1;
                ok &= multiplicity_exact(&a, &lambda)? >= 1;
            }
        }
    }
    Ok((ok && certified > 0, format!("{certified} certified partitions, all with m >= 1: {ok}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_selects_tags() {
        let opts = VerifyOptions { sections: vec!["bounds".into()], ..Default::default() };
        let ids: Vec<usize> = CHECKS.iter().filter(|c| selected(c, &opts.sections)).map(|c| c.id).collect();
        assert_eq!(ids, vec![7, 9, 10, 12]);
    }

    #[test]
    fn cheap_checks_pass_and_corruption_fails() {
        let opts = VerifyOptions { sections: vec!["theta".into(), "radical".into(), "semigroup".into()], ..Default::default() };
        let clean = run_battery(&VerifyOptions { sections: vec!["10".into(), "2".into(), "1".into()], ..opts.clone() });
        assert_eq!(clean.len(), 3);
        assert!(clean.iter().all(|c| c.passed), "{clean:?}");
        let bad = run_battery(&VerifyOptions { sections: vec!["10".into(), "2".into()], corrupt: true, ..opts });
        assert!(bad.iter().any(|c| !c.passed));
    }
}
