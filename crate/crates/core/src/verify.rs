//! Verification suites: each suite recomputes a family of statements about
//! 3-fields, `F0(n)` and its automorphism group and reports one [`Check`]
//! per statement. Statements that turn out false as printed in the source
//! literature are reported as [`Status::Flagged`] together with the
//! computed truth; they never fail a run.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::autgroup::{
    aut_matrix, aut_matrix_via_multinomial, catalog_group, conjugation, fixed_point_scan,
    fixing_subgroup, frobenius_restriction, gamma_filtration, generate_aut_group,
    groups_isomorphic, inverse_paths, parse_appendix, reflection, AutGroup, AutMatrix, Endo,
    FiniteGroup,
};
use crate::error::{Error, Result};
use crate::fields::{
    cartesian, is_cartesian_decomposable, make_f0, make_tf, mult_group_decomposition,
    ternary_group_algebra, Reading, ThreeField,
};
use crate::poly2::{binomial_closed_form, binomial_criterion, binomial_digits, TruncPoly};
use crate::products::{is_q_algebra, semidirect_check, unitize, QAlgebra, SplitSequence};
use crate::qstruct::{
    all_ideals, f0_ideal, f0_ideals, field_from_qring, frobenius, q_of, quotient,
};
use crate::structure::are_isomorphic;
use crate::subfields::{all_subfields, isomorphism_classes, subfield_lattice, subsemigroups};

/// Transcribed automorphism matrices for `n = 3..7`.
pub const APPENDIX_FIXTURE: &str = include_str!("../tests/fixtures/appendix.txt");

pub const SUITES: [&str; 11] = [
    "appendix",
    "groups",
    "ideals",
    "subfields",
    "multgroup",
    "qring",
    "unitization",
    "morphisms",
    "automorphisms",
    "binomial",
    "groupalg",
];

pub const SMALLGROUP_16_3: &str = "(C4 x C2) : C2 = K4 : C4 [SmallGroup(16,3)]";
pub const SMALLGROUP_32_6: &str = "((C4 x C2) : C2) : C2 = C2^3 : C4 [SmallGroup(32,6)]";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAGGED",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
    }
}

/// A statement that holds under a corrected reading: `Pass` when the printed
/// form also holds, `Flagged` otherwise. A false corrected form is a `Fail`.
fn flag_unless(
    name: impl Into<String>,
    corrected: bool,
    printed: bool,
    detail: impl Into<String>,
) -> Check {
    let status = match (corrected, printed) {
        (false, _) => Status::Fail,
        (true, true) => Status::Pass,
        (true, false) => Status::Flagged,
    };
    Check {
        name: name.into(),
        status,
        detail: detail.into(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_n: usize,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// No genuine failures; flagged checks are ignored.
    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn flagged(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Flagged)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn count(&self, status: Status) -> usize {
        self.suites.iter().map(|s| s.count(status)).sum()
    }

    /// One line per check and a summary per suite. Timings are included only
    /// on request so that the default output is reproducible.
    pub fn to_text(&self, timings: bool) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!("== {} (max n = {})\n", s.suite, s.max_n));
            for c in &s.checks {
                out.push_str(&format!(
                    "  [{}] {}: {}\n",
                    c.status.label(),
                    c.name,
                    c.detail
                ));
            }
            let verdict = if s.passed() { "ok" } else { "FAILED" };
            out.push_str(&format!(
                "  -> {verdict}: {} pass, {} fail, {} flagged",
                s.count(Status::Pass),
                s.count(Status::Fail),
                s.count(Status::Flagged)
            ));
            if timings {
                out.push_str(&format!(", {} ms", s.elapsed_ms));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "total: {} pass, {} fail, {} flagged -> {}\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Flagged),
            if self.passed() { "ok" } else { "FAILED" }
        ));
        out
    }

    pub fn to_json(&self, timings: bool) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if !timings {
            if let Some(suites) = v.get_mut("suites").and_then(|s| s.as_array_mut()) {
                for s in suites {
                    if let Some(o) = s.as_object_mut() {
                        o.remove("elapsed_ms");
                    }
                }
            }
        }
        serde_json::json!({ "passed": self.passed(), "report": v })
    }
}

/// Runs one suite by name. `max_n` caps every bound in the suite.
pub fn run_suite(name: &str, max_n: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let checks = match name {
        "appendix" => appendix_suite(max_n)?,
        "groups" => groups_suite(max_n)?,
        "ideals" => ideals_suite(max_n)?,
        "subfields" => subfields_suite(max_n)?,
        "multgroup" => multgroup_suite(max_n)?,
        "qring" => qring_suite(max_n)?,
        "unitization" => unitization_suite()?,
        "morphisms" => morphisms_suite(max_n)?,
        "automorphisms" => automorphisms_suite(max_n)?,
        "binomial" => binomial_suite(max_n)?,
        "groupalg" => groupalg_suite()?,
        other => {
            return Err(Error::Invalid(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        max_n,
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Runs the named suites (`"all"` expands to every suite) in order.
pub fn run(names: &[&str], max_n: usize) -> Result<VerifyReport> {
    let mut list: Vec<&str> = Vec::new();
    for &n in names {
        if n == "all" {
            list.extend(SUITES);
        } else {
            list.push(n);
        }
    }
    let suites = list
        .iter()
        .map(|s| run_suite(s, max_n))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { suites })
}

fn sorted_rows(ms: &[AutMatrix]) -> Vec<Vec<u64>> {
    let mut v: Vec<Vec<u64>> = ms.iter().map(|m| m.rows().to_vec()).collect();
    v.sort();
    v
}

fn appendix_suite(max_n: usize) -> Result<Vec<Check>> {
    let entries = parse_appendix(APPENDIX_FIXTURE)?;
    let mut checks = Vec::new();
    for n in 3..=max_n.min(7) {
        let block: Vec<_> = entries.iter().filter(|e| e.n == n).collect();
        let g = generate_aut_group(n)?;
        let generated = g.matrices();
        let identity = AutMatrix::identity(n);
        let has_identity = block.iter().any(|e| e.matrix == identity);
        let expected: Vec<AutMatrix> = generated
            .iter()
            .filter(|m| has_identity || **m != identity)
            .cloned()
            .collect();
        let fixture: Vec<AutMatrix> = block.iter().map(|e| e.matrix.clone()).collect();
        checks.push(check(
            format!("n = {n}: fixture equals generated matrices as sets"),
            sorted_rows(&fixture) == sorted_rows(&expected),
            format!(
                "{} transcribed, {} generated{}",
                fixture.len(),
                expected.len(),
                if has_identity {
                    ""
                } else {
                    " (identity omitted)"
                }
            ),
        ));
        // Element-by-element under A_alpha, alpha read off the label; the
        // n = 3 block carries the label A_P and is compared through alpha = 1.
        let mut mislabelled = Vec::new();
        for e in &block {
            let alpha = e
                .label
                .strip_prefix("A_")
                .and_then(|s| s.parse::<u64>().ok()).unwrap_or(1);
            let ours = aut_matrix(&Endo::from_alpha(n, alpha)?)?;
            if ours != e.matrix {
                let decoded = e
                    .matrix
                    .endo()
                    .map(|x| x.alpha())
                    .map(|a| a.to_string())
                    .unwrap_or_else(|_| "-".into());
                mislabelled.push(format!("{} holds A_{decoded}", e.label));
            }
        }
        let as_sets = sorted_rows(&fixture) == sorted_rows(&expected);
        let name = format!("n = {n}: labels follow the canonical alpha indexing");
        if mislabelled.is_empty() {
            checks.push(check(name, true, format!("{} matrices", block.len())));
        } else if as_sets {
            checks.push(Check {
                name,
                status: Status::Flagged,
                detail: format!("transcription permutes labels: {}", mislabelled.join(", ")),
            });
        } else {
            checks.push(check(name, false, mislabelled.join(", ")));
        }
    }
    Ok(checks)
}

/// Searches involutive automorphisms `θ` of `normal` for one with
/// `normal ⋊_θ C2 ≅ target`.
fn split_by_involution(normal: &FiniteGroup, target: &FiniteGroup) -> Option<Vec<u32>> {
    let identity: Vec<u32> = normal.elements().collect();
    let c2 = FiniteGroup::cyclic(2);
    normal
        .automorphisms(usize::MAX)
        .into_iter()
        .filter(|a| {
            a.iter()
                .enumerate()
                .all(|(i, &x)| a[x as usize] == i as u32)
        })
        .find(|theta| {
            FiniteGroup::semidirect_product(normal, &c2, &[identity.clone(), theta.clone()])
                .map(|g| groups_isomorphic(&g, target))
                .unwrap_or(false)
        })
}

fn groups_suite(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut groups: BTreeMap<usize, AutGroup> = BTreeMap::new();
    for n in 3..=max_n.min(10) {
        let g = generate_aut_group(n)?;
        checks.push(check(
            format!("|Aut F0({n})| = 2^{}", n - 2),
            g.order() == 1 << (n - 2),
            format!("order {}", g.order()),
        ));
        groups.insert(n, g);
    }
    if let Some(g) = groups.get(&3) {
        let id = g.identify()?;
        checks.push(check(
            "Aut F0(3) is C2",
            id.display_name() == "C2",
            id.display_name().to_string(),
        ));
    }
    if let Some(g) = groups.get(&4) {
        let id = g.identify()?;
        let involutions = g
            .group()
            .elements()
            .filter(|&a| g.group().element_order(a) == 2)
            .count();
        let detail = format!(
            "computed {} ({involutions} involutions); printed claim: cyclic C4",
            id.display_name()
        );
        checks.push(flag_unless(
            "Aut F0(4) type",
            id.display_name() == "C2 x C2",
            id.display_name() == "C4",
            detail,
        ));
    }
    if let Some(g) = groups.get(&5) {
        let id = g.identify()?;
        checks.push(check(
            "Aut F0(5) is D4",
            id.display_name() == "D4",
            id.display_name().to_string(),
        ));
        let cg = g.cycle_graph(false)?;
        let mut lengths = cg.cycle_lengths();
        lengths.sort_unstable();
        let one_four_cycle = lengths == [2, 2, 2, 2, 4];
        checks.push(check(
            "cycle graph of Aut F0(5): one 4-cycle and four 2-cycles",
            one_four_cycle,
            format!("cycle lengths {lengths:?}"),
        ));
    }
    for (n, name) in [(6, SMALLGROUP_16_3), (7, SMALLGROUP_32_6)] {
        let Some(g) = groups.get(&n) else { continue };
        let reference =
            catalog_group(name).ok_or_else(|| Error::Invalid(format!("catalog lacks {name}")))?;
        let same_fp = g.group().fingerprint() == reference.fingerprint();
        let iso = same_fp && groups_isomorphic(g.group(), reference);
        let id = g.identify()?;
        checks.push(check(
            format!("Aut F0({n}) is {name}"),
            iso,
            format!(
                "fingerprint match {same_fp}, isomorphic {iso}, identified as {}",
                id.display_name()
            ),
        ));
    }
    if let (Some(g7), Some(small)) = (groups.get(&7), catalog_group(SMALLGROUP_16_3)) {
        let theta = split_by_involution(small, g7.group());
        checks.push(check(
            "Aut F0(7) = SmallGroup(16,3) ⋊ C2",
            theta.is_some(),
            theta
                .map(|t| format!("action {t:?}"))
                .unwrap_or_else(|| "no involutive action works".into()),
        ));
    }
    for (&n, g) in groups.range(8..) {
        if g.order() <= 64 {
            let id = g.identify()?;
            checks.push(check(
                format!("Aut F0({n}) fingerprint"),
                true,
                format!(
                    "{} / {:?}",
                    id.display_name(),
                    id.fingerprint.order_histogram
                ),
            ));
        }
    }
    Ok(checks)
}

/// Reduced echelon basis (pivot = lowest set bit) of the span of `vectors`.
fn echelon(vectors: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for b in &basis {
            if v >> b.trailing_zeros() & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            let p = v.trailing_zeros();
            for b in basis.iter_mut() {
                if *b >> p & 1 == 1 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    basis.sort_unstable();
    basis
}

fn ideals_suite(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 2..=max_n.min(5) {
        let q = q_of(&make_f0(n)?)?;
        let found: Vec<Vec<u32>> = all_ideals(&q)
            .into_iter()
            .filter(|i| i.len() > 1)
            .map(|i| i.members().to_vec())
            .collect();
        let expected: Vec<Vec<u32>> = f0_ideals(n)?
            .into_iter()
            .map(|i| i.members().to_vec())
            .collect();
        let (a, b): (BTreeSet<_>, BTreeSet<_>) =
            (found.iter().collect(), expected.iter().collect());
        checks.push(check(
            format!("n = {n}: nonzero ideals are I_1..I_{}", n - 1),
            a == b,
            format!("{} nonzero ideals found", found.len()),
        ));
    }
    // The ideal generated by a Q-element x is spanned by x t^j, j >= 0, and
    // must be I_v with v the valuation of x.
    let top = max_n.min(16);
    if top >= 2 {
        let bad: Vec<String> = (2..=top)
            .into_par_iter()
            .flat_map_iter(|n| {
                let mask = (1u64 << n) - 1;
                let targets: Vec<Vec<u64>> = (0..=n)
                    .map(|k| {
                        if k == 0 {
                            vec![]
                        } else {
                            (k..n).map(|e| 1u64 << e).collect()
                        }
                    })
                    .collect();
                let mut errors = Vec::new();
                for k in 1..n {
                    let ideal = f0_ideal(n, k).expect("1 <= k < n");
                    let ok = ideal.len() == 1 << (n - k)
                        && ideal
                            .members()
                            .iter()
                            .all(|&m| ((m as u64) << 1).trailing_zeros() as usize >= k);
                    if !ok {
                        errors.push(format!("I_{k} of F0({n}) has the wrong members"));
                    }
                }
                for x in (1..1u64 << (n - 1)).map(|m| m << 1) {
                    let v = x.trailing_zeros() as usize;
                    let span = echelon((0..n).map(|j| (x << j) & mask));
                    if span != targets[v] {
                        errors.push(format!("ideal of {x:#b} in F0({n}) is not I_{v}"));
                        break;
                    }
                }
                errors
            })
            .collect();
        checks.push(check(
            format!("principal ideals are the I_k for n <= {top}"),
            bad.is_empty(),
            if bad.is_empty() {
                "all Q-elements checked".into()
            } else {
                bad.join("; ")
            },
        ));
    }
    for n in 1..=max_n.min(6) {
        let d = is_cartesian_decomposable(&make_f0(n)?)?;
        checks.push(check(
            format!("F0({n}) is indecomposable"),
            d.is_none(),
            if d.is_none() {
                "indecomposable"
            } else {
                "decomposition found"
            },
        ));
    }
    Ok(checks)
}

fn subfields_suite(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 2..=max_n.min(5) {
        let all = all_subfields(n)?;
        let semis = subsemigroups(n)?;
        let lattice = subfield_lattice(n)?;
        let scan: BTreeSet<Vec<u64>> = all
            .iter()
            .map(|s| s.basis().iter().map(TruncPoly::bits).collect())
            .collect();
        let predicted_found = lattice
            .subfields
            .iter()
            .all(|s| scan.contains(&s.basis().iter().map(TruncPoly::bits).collect::<Vec<_>>()));
        let leading: BTreeSet<Vec<usize>> =
            all.iter().map(|s| s.leading_exponents().members).collect();
        let semi_sets: BTreeSet<Vec<usize>> = semis.iter().map(|s| s.members.clone()).collect();
        let extra: Vec<String> = all
            .iter()
            .filter(|s| !lattice.subfields.iter().any(|m| m.basis() == s.basis()))
            .take(3)
            .map(|s| {
                format!(
                    "<{}> (Ex = {:?})",
                    s.basis()
                        .iter()
                        .map(|b| b.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                    s.exponents().members
                )
            })
            .collect();
        checks.push(check(
            format!("n = {n}: every G(S) is a subfield and leading exponents realize exactly the subsemigroups"),
            predicted_found && leading == semi_sets,
            format!("{} subfields, {} subsemigroups", all.len(), semis.len()),
        ));
        checks.push(flag_unless(
            format!("n = {n}: subfields correspond one-to-one to subsemigroups"),
            true,
            all.len() == semis.len(),
            if extra.is_empty() {
                format!("{} each", semis.len())
            } else {
                format!(
                    "{} subfields vs {} subsemigroups; non-monomial examples: {}",
                    all.len(),
                    semis.len(),
                    extra.join("; ")
                )
            },
        ));
    }
    for n in 2..=max_n.min(10) {
        let lattice = subfield_lattice(n)?;
        let semis = subsemigroups(n)?.len();
        let ex_ok = lattice
            .semigroups
            .iter()
            .zip(&lattice.subfields)
            .all(|(s, f)| f.exponents().members == s.members && f.order() == 1 << s.members.len());
        checks.push(check(
            format!("n = {n}: lattice size equals subsemigroup count"),
            lattice.len() == semis && ex_ok,
            format!("{} nodes, {semis} subsemigroups", lattice.len()),
        ));
    }
    for n in 2..=max_n.min(6) {
        let all = all_subfields(n)?;
        let classes = isomorphism_classes(n, &all)?;
        let ex: Vec<Vec<usize>> = all.iter().map(|s| s.exponents().members).collect();
        let mut witness = None;
        'outer: for i in 0..all.len() {
            for j in i + 1..all.len() {
                if (ex[i] == ex[j]) != (classes[i] == classes[j]) {
                    witness = Some(format!(
                        "<{}> (Ex = {:?}) and <{}> (Ex = {:?}) are {}isomorphic",
                        all[i]
                            .basis()
                            .iter()
                            .map(|b| b.to_string())
                            .collect::<Vec<_>>()
                            .join(", "),
                        ex[i],
                        all[j]
                            .basis()
                            .iter()
                            .map(|b| b.to_string())
                            .collect::<Vec<_>>()
                            .join(", "),
                        ex[j],
                        if classes[i] == classes[j] { "" } else { "not " }
                    ));
                    break 'outer;
                }
            }
        }
        let nclasses = classes.iter().collect::<BTreeSet<_>>().len();
        checks.push(flag_unless(
            format!("n = {n}: equal exponent sets iff isomorphic subfields"),
            true,
            witness.is_none(),
            witness.unwrap_or_else(|| format!("{} subfields in {nclasses} classes", all.len())),
        ));
    }
    Ok(checks)
}

fn multgroup_suite(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut printed_mismatch = Vec::new();
    let mut product_bad = Vec::new();
    let mut formula_bad = Vec::new();
    let mut factorization_bad = Vec::new();
    let top = max_n.min(20);
    for n in 2..=top {
        let d = mult_group_decomposition(n)?;
        if d.order_product != 1 << (n - 1) {
            product_bad.push(n);
        }
        if !d.corrected_formula_matches() {
            formula_bad.push(n);
        }
        if d.unique_factorization == Some(false) {
            factorization_bad.push(n);
        }
        if !d.printed_formula_matches() {
            printed_mismatch.push(n);
        }
    }
    checks.push(check(
        format!("unique gamma factorization, n <= {}", top.min(12)),
        factorization_bad.is_empty(),
        format!("failures at {factorization_bad:?}"),
    ));
    checks.push(check(
        format!("generator orders multiply to 2^(n-1), n <= {top}"),
        product_bad.is_empty(),
        format!("failures at {product_bad:?}"),
    ));
    checks.push(flag_unless(
        format!("order of 1 + t^(2k+1) is min{{2^s : 2^s (2k+1) >= n}}, n <= {top}"),
        formula_bad.is_empty(),
        printed_mismatch.is_empty(),
        if printed_mismatch.is_empty() {
            "printed and corrected formulas agree".to_string()
        } else {
            format!("corrected formula holds; printed min{{2^s : 2^s k >= n}} disagrees for n in {printed_mismatch:?}")
        },
    ));
    Ok(checks)
}

fn qring_suite(max_n: usize) -> Result<Vec<Check>> {
    let mut bases: Vec<ThreeField> = Vec::new();
    for n in 1..=max_n.min(5) {
        bases.push(make_tf(n)?);
    }
    for n in 1..=max_n.min(6) {
        bases.push(make_f0(n)?);
    }
    // {1} has the zero ring as Q, which is unital and rejected as degenerate.
    let trivial_rejected = field_from_qring(&q_of(&make_f0(1)?)?).is_err();
    bases.retain(|f| f.size() > 1);
    let mut fields = bases.clone();
    for (i, a) in bases.iter().enumerate() {
        for b in &bases[i..] {
            if a.size() * b.size() <= 64 {
                fields.push(cartesian(a, b)?);
            }
        }
    }
    let failures: Vec<String> = fields
        .par_iter()
        .filter_map(|f| {
            let ok = q_of(f)
                .and_then(|q| field_from_qring(&q))
                .and_then(|g| Ok(are_isomorphic(&g.structure()?, &f.structure()?)));
            match ok {
                Ok(true) => None,
                Ok(false) => Some(format!("{} not recovered", f.label())),
                Err(e) => Some(format!("{}: {e}", f.label())),
            }
        })
        .collect();
    Ok(vec![
        check(
            "Q({1}) is the zero ring and is rejected",
            trivial_rejected,
            "degenerate",
        ),
        check(
            "F(Q(F)) ≅ F for nontrivial TF(n), F0(n) and their products up to 64 elements",
            failures.is_empty(),
            if failures.is_empty() {
                format!("{} fields", fields.len())
            } else {
                failures.join("; ")
            },
        ),
    ])
}

/// Algebras for the Q-unit equivalence: nilpotent, zero-product,
/// ideal-based and three unital (hence non-Q) examples.
pub fn unitization_corpus() -> Result<Vec<QAlgebra>> {
    let mut list = Vec::new();
    for d in 1..=3 {
        list.push(QAlgebra::zero_product(d)?);
    }
    for n in 2..=5 {
        list.push(QAlgebra::truncated(n)?);
    }
    list.push(QAlgebra::ring_of_pairs(&make_tf(2)?)?);
    list.push(QAlgebra::ring_of_pairs(&make_tf(3)?)?);
    list.push(QAlgebra::ring_of_pairs(&make_f0(3)?)?);
    let (f4, trivial) = (make_f0(5)?, make_f0(1)?);
    list.push(QAlgebra::from_ideal(
        "I_2 of Q F0(5)",
        &f4,
        &f0_ideal(5, 2)?,
        &trivial,
        &[f4.unit()],
    )?);
    let split = SplitSequence::second_projection(&make_f0(3)?, &make_tf(2)?, &[0, 0])?;
    list.push(split.kernel_algebra()?);
    list.push(QAlgebra::over_trivial("GF(2)", 1, &[vec![1]])?);
    list.push(QAlgebra::over_trivial(
        "GF(2) x GF(2)",
        2,
        &[vec![1, 0], vec![0, 2]],
    )?);
    list.push(QAlgebra::over_trivial(
        "GF(2)[u]/u^2",
        2,
        &[vec![1, 2], vec![2, 0]],
    )?);
    Ok(list)
}

fn unitization_suite() -> Result<Vec<Check>> {
    let corpus = unitization_corpus()?;
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    let (mut q_count, mut non_q) = (0, 0);
    for a in &corpus {
        let report = is_q_algebra(a);
        let u = unitize(a)?;
        let field = u.axioms().is_field();
        if a.check_axioms().is_some() || report.is_q_algebra != field || u.ternary.size() > 64 {
            bad.push(a.label().to_string());
        }
        if report.is_q_algebra {
            q_count += 1;
        } else {
            non_q += 1;
        }
        rows.push(format!(
            "{}: {}",
            a.label(),
            if field { "Q" } else { "not Q" }
        ));
    }
    let mut checks = vec![check(
        format!(
            "A is a Q-algebra iff A⁺ is a 3-field ({} algebras)",
            corpus.len()
        ),
        bad.is_empty() && corpus.len() >= 10 && q_count > 0 && non_q > 0,
        if bad.is_empty() {
            format!("{q_count} Q-algebras, {non_q} others")
        } else {
            format!("mismatch: {}", bad.join(", "))
        },
    )];
    // J⁺ for J = Q(F0(3)) ⊕ 0 in F0(3) × TF(2), with TF(2) acting through
    // the constant embedding into F0(3): (f1, q_{1,f0}) ↦ (1 + f0 + f1, f1).
    let (f0, t2) = (make_f0(3)?, make_tf(2)?);
    let split = SplitSequence::second_projection(&f0, &t2, &[f0.unit(), f0.unit()])?;
    let report = semidirect_check(&split)?;
    let kernel = split.kernel();
    let n0 = f0.size() as u32;
    let nt = t2.size() as u32;
    let formula_ok = (0..nt * kernel.len() as u32).all(|x| {
        let (f1, j) = (x % nt, x / nt);
        let member = kernel.members()[j as usize];
        let (g0, _) = (member % n0, member / n0);
        let image = f0.tadd(f0.unit(), g0, f0.unit()) + n0 * f1;
        report.map[x as usize] == image
    });
    checks.push(check(
        "J⁺ ≅ F0(3) × TF(2) via (f1, q_{1,f0}) ↦ (1 + f0 + f1, f1)",
        report.is_isomorphism && formula_ok && report.q_algebra.is_q_algebra,
        format!(
            "kernel order {}, isomorphism {}, formula {}",
            report.kernel_order, report.is_isomorphism, formula_ok
        ),
    ));
    let u = unitize(&QAlgebra::truncated(3)?)?;
    checks.push(check(
        "Ψ: Q(A⁺) -> Q(F) ⊕ A is a ring isomorphism for A = tGF(2)[t]/t^3",
        u.check_psi()?.is_none() && u.check_module().is_none(),
        "exhaustive",
    ));
    Ok(checks)
}

fn morphisms_suite(max_n: usize) -> Result<Vec<Check>> {
    let mut bad = Vec::new();
    let mut zero_bad = Vec::new();
    let top = max_n.min(10);
    for n in 2..=top {
        let phi = frobenius(n)?;
        if phi.kernel().members() != f0_ideal(n, n.div_ceil(2))?.members() {
            bad.push(format!("Ker phi_{n}"));
        }
        for k in 1..=n {
            if quotient(n, k)?.kernel().members() != f0_ideal(n, k)?.members() {
                bad.push(format!("Ker mu_{{{n},{k}}}"));
            }
        }
        if n <= 8 {
            let q = q_of(&make_f0(n)?)?;
            let ker = phi.kernel();
            if !ker
                .members()
                .iter()
                .all(|&a| ker.members().iter().all(|&b| q.mul(a, b) == q.zero()))
            {
                zero_bad.push(n);
            }
        }
    }
    Ok(vec![
        check(
            format!("Ker phi_n = I_ceil(n/2) and Ker mu_(n,k) = I_k, n <= {top}"),
            bad.is_empty(),
            if bad.is_empty() {
                "all kernels match".to_string()
            } else {
                bad.join(", ")
            },
        ),
        check(
            format!("Ker phi_n has zero product, n <= {}", top.min(8)),
            zero_bad.is_empty(),
            format!("failures at {zero_bad:?}"),
        ),
    ])
}

fn automorphisms_suite(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let top = max_n.min(8);
    let mut cases = 0usize;
    let mut inverse_bad = Vec::new();
    let mut matrix_bad = Vec::new();
    let mut groups = Vec::new();
    for n in 3..=top {
        let g = generate_aut_group(n)?;
        let results: Vec<(bool, bool)> = g
            .endos()
            .par_iter()
            .map(|e| {
                let inv = inverse_paths(e).map(|p| p.agree()).unwrap_or(false);
                let mat = matches!((aut_matrix(e), aut_matrix_via_multinomial(e)), (Ok(a), Ok(b)) if a == b);
                (inv, mat)
            })
            .collect();
        cases += results.len();
        if results.iter().any(|r| !r.0) {
            inverse_bad.push(n);
        }
        if results.iter().any(|r| !r.1) {
            matrix_bad.push(n);
        }
        groups.push(g);
    }
    checks.push(check(
        format!("three inverse paths agree, n <= {top}"),
        inverse_bad.is_empty(),
        format!("{cases} automorphisms, failures at {inverse_bad:?}"),
    ));
    checks.push(check(
        format!("composition and multinomial matrices agree, n <= {top}"),
        matrix_bad.is_empty(),
        format!("{cases} automorphisms, failures at {matrix_bad:?}"),
    ));

    let mut reflection_bad = Vec::new();
    let rtop = max_n.min(10);
    for n in 2..=rtop {
        let r = reflection(n)?;
        let twice = r.after(&r)?;
        let s = r.p0();
        let q = q_of(&make_f0(n)?)?;
        // Q-id 1 is the polynomial t; its #-element must be s_n.
        let hash_ok = q.hash(1).map(|h| (h as u64) << 1) == Some(s.bits());
        let formula_ok = TruncPoly::enumerate_from(1, 1, n).all(|f| {
            let mut image = TruncPoly::one(n).expect("bound checked");
            let mut power = image;
            for i in 1..n {
                power = power.trunc_mul(&s).expect("same bound");
                if f.coeff(i) {
                    image = image.trunc_add(&power).expect("same bound");
                }
            }
            r.apply(&f).map(|x| x == image).unwrap_or(false)
        });
        if twice != Endo::identity(n)? || !hash_ok || !formula_ok {
            reflection_bad.push(n);
        }
    }
    checks.push(check(
        format!("R_n^2 = id, s_n = t#, R_n(1 + Σ e_i t^i) = 1 + Σ e_i s_n^i, n <= {rtop}"),
        reflection_bad.is_empty(),
        format!("failures at {reflection_bad:?}"),
    ));

    let mut structure_bad = Vec::new();
    let mut no_involution = Vec::new();
    let mut g1_bad = Vec::new();
    let mut ceil_form = Vec::new();
    let mut fixing_bad = Vec::new();
    let mut frob = Vec::new();
    let mut frob_bad = Vec::new();
    let mut conj_bad = Vec::new();
    let mut ideal_fix = Vec::new();
    let mut scan_notes = Vec::new();
    let mut scan_bad = Vec::new();
    for g in &groups {
        let n = g.n();
        for k in 2..n {
            let level = gamma_filtration(g, k)?;
            let ok = level.order == 1 << (n - k)
                && level.normal
                && level.reduction_is_morphism
                && level.reduction_is_surjective
                && level.kernel_matches
                && (k + 1 == n || level.index_of_next == 2);
            if !ok {
                structure_bad.push(format!("({n},{k})"));
            }
            if k > 2 && level.splitting_involution.is_none() {
                no_involution.push(format!("(n={n}, k={k})"));
            }
        }
        let g1 = fixing_subgroup(g, 1)?;
        if !(g1.abelian && g1.normal && g1.exact) {
            g1_bad.push(n);
        }
        for k in 1..=31 - (n as u32).leading_zeros() {
            let h = fixing_subgroup(g, k)?;
            if h.members != h.strict_form || !h.normal || !h.exact {
                fixing_bad.push(format!("(n={n}, k={k})"));
            }
            if h.members != h.ceil_form {
                ceil_form.push(format!("(n={n}, k={k})"));
            }
        }
        if n >= 4 {
            let fr = frobenius_restriction(g)?;
            if !(fr.matches_truncation && fr.is_morphism && fr.kernel_matches && fr.kernel_abelian)
            {
                frob_bad.push(n);
            }
            if fr.target != n / 2 {
                frob.push(format!(
                    "n={n}: target F0({}), image order {}",
                    fr.target, fr.image_order
                ));
            }
        }
        let c = conjugation(g)?;
        if !c.is_involution || c.fixed_elements.len() != c.fixed_automorphisms.len() {
            conj_bad.push(n);
        }
        for chk in &c.ideal_checks {
            if !chk.all_fixed {
                ideal_fix.push(format!(
                    "n={n} k={}: {}",
                    chk.k,
                    chk.counterexample.clone().unwrap_or_default()
                ));
            }
        }
        let scan = fixed_point_scan(g)?;
        if !scan.lower_degree_preserved {
            scan_bad.push(n);
        }
        if !scan.fixer_matches_bound || !scan.fixer_depends_only_on_degree {
            scan_notes.push(format!(
                "n={n} (bound {}, degree-only {})",
                scan.fixer_matches_bound, scan.fixer_depends_only_on_degree
            ));
        }
    }
    checks.push(check(
        format!("Gamma_(n,k): order 2^(n-k), normal, kernel of a surjective reduction, index 2, n <= {top}"),
        structure_bad.is_empty(),
        format!("failures at {structure_bad:?}"),
    ));
    checks.push(flag_unless(
        format!("Gamma_(n,k) / Gamma_(n,k+1) split by an involution for k > 2, n <= {top}"),
        true,
        no_involution.is_empty(),
        if no_involution.is_empty() {
            "all levels split".to_string()
        } else {
            format!(
                "no involution in Gamma_(n,k) minus Gamma_(n,k+1) at {}",
                no_involution.join(", ")
            )
        },
    ));
    checks.push(check(
        format!(
            "G_(n,1) is abelian, normal and the kernel of the Frobenius restriction, n <= {top}"
        ),
        g1_bad.is_empty(),
        format!("failures at {g1_bad:?}"),
    ));
    checks.push(flag_unless(
        "G_(n,k) = {t^i coefficients vanish for 1 < i <= (n-1)/2^k}",
        fixing_bad.is_empty(),
        ceil_form.is_empty(),
        if ceil_form.is_empty() {
            "strict and ceiling forms agree".to_string()
        } else {
            format!("ceiling form ⌈n/2^k⌉ differs at {}", ceil_form.join(", "))
        },
    ));
    checks.push(flag_unless(
        "Frobenius restriction Aut F0(n) -> Aut F0(ceil(n/2)) with abelian kernel",
        frob_bad.is_empty(),
        frob.is_empty(),
        if frob.is_empty() {
            "floor and ceiling targets agree".to_string()
        } else {
            format!("target is ceil(n/2), not floor: {}", frob.join("; "))
        },
    ));
    checks.push(check(
        "conjugation is an involution and |F0(n)_1| = |Aut F0(n)_1|",
        conj_bad.is_empty(),
        format!("failures at {conj_bad:?}"),
    ));
    checks.push(flag_unless(
        "elements of 1 + I_k are self-conjugate for k >= n/2",
        true,
        ideal_fix.is_empty(),
        if ideal_fix.is_empty() {
            "all fixed".to_string()
        } else {
            ideal_fix.join("; ")
        },
    ));
    checks.push(flag_unless(
        "automorphisms fixing {1, 1 + t^k(1 + P1)} are Gamma_(n,n-k+1)",
        scan_bad.is_empty(),
        scan_notes.is_empty(),
        if scan_notes.is_empty() {
            "bound confirmed".to_string()
        } else {
            format!(
                "lower degree preserved; bound fails at {}",
                scan_notes.join(", ")
            )
        },
    ));
    if top >= 8 {
        checks.push(check(
            "at least 2^6 automorphisms at n = 8",
            groups.last().is_some_and(|g| g.order() >= 64),
            format!("{} at n = 8", groups.last().map_or(0, AutGroup::order)),
        ));
    }
    Ok(checks)
}

/// The converse criterion exactly as printed: `N` is the set of subset
/// sums of `{2^v : k 2^v in N}`, without the factor `k`.
fn printed_binomial_criterion(p: &TruncPoly, k: usize) -> bool {
    let n = p.bound();
    let support: Vec<usize> = (1..n).filter(|&v| p.coeff(v)).collect();
    if support.iter().any(|v| v % k != 0) {
        return false;
    }
    let alpha = (0..63)
        .map_while(|v| k.checked_mul(1 << v).filter(|&e| e < n).map(|e| (v, e)))
        .filter(|&(_, e)| p.coeff(e))
        .fold(0u64, |a, (v, _)| a | 1 << v);
    let sums: Vec<usize> = binomial_digits(alpha)
        .into_iter()
        .map(|m| m as usize)
        .filter(|&m| m > 0 && m < n)
        .collect();
    sums == support
}

fn binomial_suite(max_n: usize) -> Result<Vec<Check>> {
    let top = max_n.min(12);
    let mut forward_bad = Vec::new();
    let mut converse_bad = Vec::new();
    let mut printed_bad = Vec::new();
    let mut cases = 0usize;
    for n in 2..=top {
        for k in 1..n {
            let base = TruncPoly::from_exponents(&[0, k], n)?;
            let mut powers = BTreeMap::new();
            for alpha in 0..=((n - 1) / k) as u64 {
                if (k as u64) * alpha >= n as u64 {
                    continue;
                }
                cases += 1;
                let p = base.pow(alpha);
                if p != binomial_closed_form(k, alpha, n)? {
                    forward_bad.push(format!("(n={n}, k={k}, alpha={alpha})"));
                }
                powers.entry(p.bits()).or_insert(alpha);
            }
            // The whole cyclic group generated by 1 + t^k, not only kα < n.
            let mut x = base;
            while !x.is_one() {
                powers.entry(x.bits()).or_insert(0);
                x = x.trunc_mul(&base)?;
            }
            for p in TruncPoly::enumerate_from(1, 1, n) {
                let is_power = powers.contains_key(&p.bits());
                let crit = binomial_criterion(&p, k).is_some_and(|a| base.pow(a) == p);
                if is_power != crit {
                    converse_bad.push(format!("(n={n}, k={k}, {p})"));
                }
                if is_power != printed_binomial_criterion(&p, k) && printed_bad.len() < 3 {
                    printed_bad.push(format!("{p} with k = {k}, n = {n}"));
                }
            }
        }
    }
    Ok(vec![
        check(
            format!("(1 + t^k)^alpha = 1 + Σ_(m in N_alpha, m > 0) t^(km), kα < n <= {top}"),
            forward_bad.is_empty(),
            format!("{cases} cases, failures {forward_bad:?}"),
        ),
        flag_unless(
            format!("P_N is a power of 1 + t^k iff N ⊆ kN and N = k·(subset sums), n <= {top}"),
            converse_bad.is_empty(),
            printed_bad.is_empty(),
            if printed_bad.is_empty() {
                "printed and corrected criteria agree".to_string()
            } else {
                format!(
                    "holds with the factor k; as printed (without k) it misjudges e.g. {}",
                    printed_bad.join("; ")
                )
            },
        ),
    ])
}

fn groupalg_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for m in [2u32, 3] {
        for group in [vec![2usize], vec![4], vec![2, 2]] {
            let r = ternary_group_algebra(m, &group)?;
            let name = format!(
                "Z/{}[{}]",
                1u64 << m,
                group
                    .iter()
                    .map(|d| format!("C{d}"))
                    .collect::<Vec<_>>()
                    .join(" x ")
            );
            let mut parts = Vec::new();
            let mut produced = r.readings.len() == 2;
            for reading in &r.readings {
                let state = match (
                    &reading.axioms,
                    reading.closed_under_sum && reading.closed_under_product,
                ) {
                    (Some(ax), _) => format!(
                        "{} elements, {}",
                        reading.carrier,
                        if ax.is_field() {
                            "3-field"
                        } else {
                            "axioms fail"
                        }
                    ),
                    (None, false) => format!(
                        "{} elements, not closed: {}",
                        reading.carrier,
                        reading.closure_witness.clone().unwrap_or_default()
                    ),
                    (None, true) => {
                        produced = false;
                        "closed but no axiom report".to_string()
                    }
                };
                parts.push(format!("{:?}: {state}", reading.reading));
            }
            checks.push(check(
                format!("{name}: axiom report for both readings"),
                produced,
                parts.join("; "),
            ));
            if m == 2 && group == [2] {
                let literal = r
                    .readings
                    .iter()
                    .find(|x| x.reading == Reading::Literal)
                    .expect("both readings");
                let unit = r
                    .readings
                    .iter()
                    .find(|x| x.reading == Reading::UnitIntersected)
                    .expect("both readings");
                let reproduced =
                    !literal.closed_under_product && !literal.is_three_field && unit.is_three_field;
                let status = if reproduced {
                    Status::Flagged
                } else {
                    Status::Fail
                };
                checks.push(Check {
                    name: "Z/4[C2]: literal reading is not closed".into(),
                    status,
                    detail: format!(
                        "literal carrier not closed ({}); the unit-intersected reading ({} elements) is a 3-field",
                        literal.closure_witness.clone().unwrap_or_default(),
                        unit.carrier
                    ),
                });
            }
        }
    }
    Ok(checks)
}
