//! Exhaustive verification over small tournaments.
//!
//! Every report is a pure function of its inputs: work fans out over rayon
//! but results are gathered in canonical-code order, and no timings are
//! recorded, so repeated runs serialize identically.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::construct::imbalanced_rps;
use crate::equilibrium::{equilibrium_polytope, payoff_matrix, ProbabilityVector};
use crate::imbalance::{
    majorizes, majorizes_counts, nash_entropy, nash_entropy_cmp, nash_ties, ui_entropy, ui_entropy_cmp,
    ui_variance, uniform_profile, Majorization, UniformPayoffProfile,
};
use crate::rational::{is_odd_square, ParityClass, Rational};
use crate::tournament::{
    enumerate_tournaments, enumerate_tournaments_with_limit, k_minimizing_check, k_minimizing_range,
    landau_bound_check, Tournament,
};

/// Environment variable holding the default time budget in seconds.
pub const BUDGET_ENV: &str = "TOURNEYLAB_BUDGET_SECS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("time budget of {budget_secs}s exceeded")]
    BudgetExceeded { budget_secs: u64 },
    #[error("{0}")]
    OutOfRange(String),
}

/// Wall-clock allowance for a verification run.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    limit: Option<Duration>,
    start: Instant,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            limit: None,
            start: Instant::now(),
        }
    }

    pub fn seconds(secs: u64) -> Self {
        Budget {
            limit: Some(Duration::from_secs(secs)),
            start: Instant::now(),
        }
    }

    /// Reads [`BUDGET_ENV`]; unlimited when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .map_or_else(Budget::unlimited, Budget::seconds)
    }

    pub fn check(&self) -> Result<(), VerifyError> {
        match self.limit {
            Some(limit) if self.start.elapsed() > limit => Err(VerifyError::BudgetExceeded {
                budget_secs: limit.as_secs(),
            }),
            _ => Ok(()),
        }
    }
}

/// One named assertion with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// Maximum of one statistic over the playable classes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatisticSummary {
    pub name: String,
    /// "max" or "min": the direction in which larger imbalance lies.
    pub direction: String,
    pub best_value: String,
    pub best_approx: f64,
    pub construction_value: String,
    pub construction_approx: f64,
    pub attained_by_construction: bool,
    /// Exactly one class attains the best value.
    pub unique: bool,
    /// Canonical codes of the classes attaining the best value.
    pub best_codes: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub code: u64,
    pub edges: Vec<(usize, usize)>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub objects: usize,
    pub classes: usize,
    pub strong_count: usize,
    pub playable_count: usize,
    /// Strong tournaments whose unique kernel point has a zero entry.
    pub strong_but_unplayable: usize,
    pub construction_code: u64,
    pub statistics: Vec<StatisticSummary>,
    pub e_in_majorization_failures: Vec<Counterexample>,
    pub equilibrium_majorization_failures: Vec<Counterexample>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Clone)]
struct ClassStats {
    tournament: Tournament,
    code: u64,
    strong: bool,
    kernel_dim: usize,
    equilibrium: Option<ProbabilityVector>,
    playable: bool,
    profile: UniformPayoffProfile,
    e_in: Vec<usize>,
}

impl ClassStats {
    fn of(t: Tournament) -> Self {
        let polytope = equilibrium_polytope(&payoff_matrix(&t));
        let equilibrium = polytope.unique_point().cloned();
        let playable = polytope.has_full_support();
        let mut e_in = t.degree_profile().e_in;
        e_in.sort_unstable_by(|a, b| b.cmp(a));
        ClassStats {
            code: t.code(),
            strong: t.is_strong(),
            kernel_dim: polytope.kernel_dim,
            equilibrium,
            playable,
            profile: uniform_profile(&t).expect("at least three objects"),
            e_in,
            tournament: t,
        }
    }

    fn eq(&self) -> &ProbabilityVector {
        self.equilibrium
            .as_ref()
            .expect("playable class has a unique equilibrium")
    }
}

fn classes_stats(objects: usize, limit: usize, budget: &Budget) -> Result<Vec<ClassStats>, VerifyError> {
    let classes: Vec<Tournament> = enumerate_tournaments_with_limit(objects, true, limit)
        .map_err(|e| VerifyError::OutOfRange(e.to_string()))?
        .collect();
    budget.check()?;
    classes
        .into_par_iter()
        .map(|t| {
            budget.check()?;
            Ok(ClassStats::of(t))
        })
        .collect()
}

/// Largest supported half-size: `2n + 1 = 7` by default, 9 with `allow_nine`.
pub fn max_theorem_half(allow_nine: bool) -> usize {
    if allow_nine {
        4
    } else {
        3
    }
}

/// Checks that the imbalanced construction on `2n + 1` objects is extremal
/// among all playable games of that size.
pub fn verify_theorem(n: usize, allow_nine: bool, budget: &Budget) -> Result<TheoremReport, VerifyError> {
    let max = max_theorem_half(allow_nine);
    if n == 0 || n > max {
        return Err(VerifyError::OutOfRange(format!(
            "theorem verification supports 1 <= n <= {max}, got {n}"
        )));
    }
    let objects = 2 * n + 1;
    let stats = classes_stats(objects, objects, budget)?;
    let construction = imbalanced_rps(n).expect("n >= 1").canonical_code();
    let playable: Vec<&ClassStats> = stats.iter().filter(|s| s.playable).collect();
    let champion = playable
        .iter()
        .copied()
        .find(|s| s.code == construction)
        .expect("construction is playable");
    budget.check()?;

    let mut checks = Vec::new();
    let mut statistics = Vec::new();

    // UI_v: maximize, exact.
    let ui_v = summarize(
        "ui_v",
        true,
        &playable,
        champion,
        |a, b| ui_variance(&a.profile).cmp(&ui_variance(&b.profile)),
        |s| {
            let v = ui_variance(&s.profile);
            (v.to_string(), v.to_f64())
        },
    );
    // N_t: maximize, exact.
    let n_t_value = |s: &ClassStats| nash_ties(s.eq(), 2).expect("two players");
    let n_t = summarize(
        "n_t",
        true,
        &playable,
        champion,
        |a, b| n_t_value(a).cmp(&n_t_value(b)),
        |s| {
            let v = n_t_value(s);
            (v.to_string(), v.to_f64())
        },
    );
    // UI_e: maximize, exact via integer histogram products.
    let ui_e = summarize(
        "ui_e",
        true,
        &playable,
        champion,
        |a, b| ui_entropy_cmp(&a.profile, &b.profile),
        |s| {
            let h = ui_entropy(&s.profile);
            (format!("{h:.15}"), h)
        },
    );
    // N_e: minimize, exact via rational powers.
    let n_e = summarize(
        "n_e",
        false,
        &playable,
        champion,
        |a, b| nash_entropy_cmp(a.eq(), b.eq()),
        |s| {
            let h = nash_entropy(s.eq());
            (format!("{h:.15}"), h)
        },
    );

    checks.push(Check::new(
        "ui_v unique maximum at the construction",
        ui_v.attained_by_construction && ui_v.unique,
        format!("max {} over {} playable classes", ui_v.best_value, playable.len()),
    ));
    checks.push(Check::new(
        "n_t unique maximum at the construction",
        n_t.attained_by_construction && n_t.unique,
        format!("max {}", n_t.best_value),
    ));
    checks.push(Check::new(
        "ui_e maximum attained by the construction",
        ui_e.attained_by_construction,
        format!("max {}", ui_e.best_value),
    ));
    checks.push(Check::new(
        "n_e minimum attained by the construction",
        n_e.attained_by_construction,
        format!("min {}", n_e.best_value),
    ));
    statistics.extend([ui_v, n_t, ui_e, n_e]);

    let mut e_in_failures = Vec::new();
    let mut eq_failures = Vec::new();
    let champion_eq = champion.eq().entries().to_vec();
    for s in &playable {
        if s.code == construction {
            continue;
        }
        let m = majorizes_counts(&champion.e_in, &s.e_in).expect("same length");
        if m != Majorization::Strict {
            e_in_failures.push(counterexample(s, format!("e_in {:?} gives {m:?}", s.e_in)));
        }
        let m = majorizes(&champion_eq, s.eq().entries()).expect("same length");
        if m != Majorization::Strict {
            eq_failures.push(counterexample(
                s,
                format!(
                    "equilibrium ({}) gives {m:?}",
                    s.eq()
                        .entries()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            ));
        }
    }
    checks.push(Check::new(
        "e_in sequence strictly majorizes every playable competitor",
        e_in_failures.is_empty(),
        format!("{} counterexamples", e_in_failures.len()),
    ));
    checks.push(Check::new(
        "equilibrium sequence strictly majorizes every playable competitor",
        eq_failures.is_empty(),
        format!("{} counterexamples", eq_failures.len()),
    ));
    budget.check()?;

    let schur = schur_violations(&playable);
    checks.push(Check::new(
        "strict e_in majorization orders ui_v strictly",
        schur.ui_v == 0,
        format!("{} violating pairs", schur.ui_v),
    ));
    checks.push(Check::new(
        "strict equilibrium majorization orders n_t strictly",
        schur.n_t == 0,
        format!("{} violating pairs", schur.n_t),
    ));
    checks.push(Check::new(
        "strict equilibrium majorization orders n_e weakly",
        schur.n_e == 0,
        format!("{} violating pairs", schur.n_e),
    ));

    let playable_not_strong = stats.iter().filter(|s| s.playable && !s.strong).count();
    let strong_but_unplayable = stats.iter().filter(|s| s.strong && !s.playable).count();
    let bad_kernel = stats.iter().filter(|s| s.kernel_dim != 1).count();
    checks.push(Check::new(
        "every playable class is strong",
        playable_not_strong == 0,
        format!(
            "{playable_not_strong} playable but not strong; {strong_but_unplayable} strong but unplayable"
        ),
    ));
    checks.push(Check::new(
        "every odd payoff matrix has a one-dimensional kernel",
        bad_kernel == 0,
        format!("{bad_kernel} exceptions"),
    ));

    let passed = checks.iter().all(|c| c.passed);
    Ok(TheoremReport {
        n,
        objects,
        classes: stats.len(),
        strong_count: stats.iter().filter(|s| s.strong).count(),
        playable_count: playable.len(),
        strong_but_unplayable,
        construction_code: construction,
        statistics,
        e_in_majorization_failures: e_in_failures,
        equilibrium_majorization_failures: eq_failures,
        checks,
        passed,
    })
}

fn counterexample(s: &ClassStats, note: String) -> Counterexample {
    Counterexample {
        code: s.code,
        edges: s.tournament.edges(),
        note,
    }
}

fn summarize(
    name: &str,
    maximize: bool,
    playable: &[&ClassStats],
    champion: &ClassStats,
    cmp: impl Fn(&ClassStats, &ClassStats) -> Ordering,
    show: impl Fn(&ClassStats) -> (String, f64),
) -> StatisticSummary {
    let better = |a: &ClassStats, b: &ClassStats| {
        let o = cmp(a, b);
        if maximize {
            o
        } else {
            o.reverse()
        }
    };
    let mut best: Vec<&ClassStats> = Vec::new();
    for &s in playable {
        match best.first().map(|b| better(s, b)) {
            None | Some(Ordering::Greater) => best = vec![s],
            Some(Ordering::Equal) => best.push(s),
            Some(Ordering::Less) => {}
        }
    }
    let (best_value, best_approx) = show(best[0]);
    let (construction_value, construction_approx) = show(champion);
    StatisticSummary {
        name: name.to_string(),
        direction: if maximize { "max" } else { "min" }.to_string(),
        best_value,
        best_approx,
        construction_value,
        construction_approx,
        attained_by_construction: best.iter().any(|s| s.code == champion.code),
        unique: best.len() == 1,
        best_codes: best.iter().map(|s| s.code).collect(),
    }
}

#[derive(Debug, Default)]
struct SchurViolations {
    ui_v: usize,
    n_t: usize,
    n_e: usize,
}

fn schur_violations(playable: &[&ClassStats]) -> SchurViolations {
    let mut out = SchurViolations::default();
    for a in playable {
        for b in playable {
            if a.code == b.code {
                continue;
            }
            if majorizes_counts(&a.e_in, &b.e_in) == Ok(Majorization::Strict)
                && ui_variance(&a.profile) <= ui_variance(&b.profile)
            {
                out.ui_v += 1;
            }
            if majorizes(a.eq().entries(), b.eq().entries()) == Ok(Majorization::Strict) {
                if nash_ties(a.eq(), 2).ok() <= nash_ties(b.eq(), 2).ok() {
                    out.n_t += 1;
                }
                if nash_entropy_cmp(a.eq(), b.eq()) == Ordering::Greater {
                    out.n_e += 1;
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenSizeSummary {
    pub n: usize,
    pub tournaments: usize,
    pub empty_polytope: usize,
    pub determinant_odd_square: usize,
    pub pfaffian_odd: usize,
    pub pfaffian_squares_to_determinant: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenReport {
    pub max_n: usize,
    pub sizes: Vec<EvenSizeSummary>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Largest even order checked by [`verify_even_unplayable`].
pub const MAX_EVEN_ORDER: usize = 6;

/// Every labeled even tournament up to `max_n` objects has no equilibrium in
/// the kernel, an odd square determinant and an odd Pfaffian.
pub fn verify_even_unplayable(max_n: usize, budget: &Budget) -> Result<EvenReport, VerifyError> {
    if max_n > MAX_EVEN_ORDER {
        return Err(VerifyError::OutOfRange(format!(
            "even verification supports max_n <= {MAX_EVEN_ORDER}, got {max_n}"
        )));
    }
    let mut sizes = Vec::new();
    for n in (2..=max_n).step_by(2) {
        let all: Vec<Tournament> = enumerate_tournaments(n, false)
            .map_err(|e| VerifyError::OutOfRange(e.to_string()))?
            .collect();
        let flags: Vec<[bool; 4]> = all
            .par_iter()
            .map(|t| {
                budget.check()?;
                let a = payoff_matrix(t);
                let det = a.as_matrix().determinant().expect("square");
                let pf = a.as_matrix().pfaffian().expect("even skew-symmetric");
                let odd_square = det.to_integer().is_some_and(|d| is_odd_square(&d));
                Ok([
                    equilibrium_polytope(&a).is_empty(),
                    odd_square,
                    pf.parity() == ParityClass::Odd,
                    &pf * &pf == det,
                ])
            })
            .collect::<Result<_, VerifyError>>()?;
        let count = |k: usize| flags.iter().filter(|f| f[k]).count();
        sizes.push(EvenSizeSummary {
            n,
            tournaments: all.len(),
            empty_polytope: count(0),
            determinant_odd_square: count(1),
            pfaffian_odd: count(2),
            pfaffian_squares_to_determinant: count(3),
        });
    }
    let all_pass = |f: fn(&EvenSizeSummary) -> usize| sizes.iter().all(|s| f(s) == s.tournaments);
    let total: usize = sizes.iter().map(|s| s.tournaments).sum();
    let checks = vec![
        Check::new(
            "equilibrium polytope empty",
            all_pass(|s| s.empty_polytope),
            format!("{total} labeled tournaments"),
        ),
        Check::new(
            "determinant is an odd square",
            all_pass(|s| s.determinant_odd_square),
            format!("{total} labeled tournaments"),
        ),
        Check::new(
            "pfaffian is odd",
            all_pass(|s| s.pfaffian_odd),
            format!("{total} labeled tournaments"),
        ),
        Check::new(
            "pfaffian squares to the determinant",
            all_pass(|s| s.pfaffian_squares_to_determinant),
            format!("{total} labeled tournaments"),
        ),
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(EvenReport {
        max_n,
        sizes,
        checks,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuralReport {
    pub objects: usize,
    pub classes: usize,
    pub playable: usize,
    pub landau_failures: Vec<u64>,
    pub k_minimizing_failures: Vec<u64>,
    pub max_probability_failures: Vec<u64>,
    /// Classes failing the k-minimizing condition that are still playable.
    pub contrapositive_failures: Vec<u64>,
    pub largest_probability: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Necessary conditions for playability on every class of `objects`
/// (odd, at most 7) objects.
pub fn verify_structural_lemmas(objects: usize, budget: &Budget) -> Result<StructuralReport, VerifyError> {
    if objects.is_multiple_of(2) || objects > 7 {
        return Err(VerifyError::OutOfRange(format!(
            "structural verification supports odd sizes up to 7, got {objects}"
        )));
    }
    let stats = classes_stats(objects, 7, budget)?;
    let third = Rational::ratio(1, 3);
    let rows: Vec<(u64, bool, bool, bool, Option<Rational>)> = stats
        .par_iter()
        .map(|s| {
            let t = &s.tournament;
            let landau = landau_bound_check(t).expect("odd order");
            let kmin = k_minimizing_range(t.len()).all(|k| k_minimizing_check(t, k).expect("valid k"));
            let max_p = s.playable.then(|| s.eq().max().clone());
            (s.code, s.playable, landau, kmin, max_p)
        })
        .collect();
    budget.check()?;

    let playable: Vec<_> = rows.iter().filter(|r| r.1).collect();
    let landau_failures: Vec<u64> = playable.iter().filter(|r| !r.2).map(|r| r.0).collect();
    let k_minimizing_failures: Vec<u64> = playable.iter().filter(|r| !r.3).map(|r| r.0).collect();
    let max_probability_failures: Vec<u64> = playable
        .iter()
        .filter(|r| r.4.as_ref().is_some_and(|p| *p > third))
        .map(|r| r.0)
        .collect();
    let contrapositive_failures: Vec<u64> = rows.iter().filter(|r| !r.3 && r.1).map(|r| r.0).collect();
    let largest = playable
        .iter()
        .filter_map(|r| r.4.clone())
        .max()
        .map_or_else(|| "none".to_string(), |p| p.to_string());
    let checks = vec![
        Check::new(
            "landau prefix bounds hold on playable classes",
            landau_failures.is_empty(),
            format!("{} failures", landau_failures.len()),
        ),
        Check::new(
            "k-minimizing condition holds on playable classes",
            k_minimizing_failures.is_empty(),
            format!("{} failures", k_minimizing_failures.len()),
        ),
        Check::new(
            "no object is played with probability above 1/3",
            max_probability_failures.is_empty(),
            format!("largest probability {largest}"),
        ),
        Check::new(
            "classes failing the k-minimizing condition are unplayable",
            contrapositive_failures.is_empty(),
            format!("{} failures", contrapositive_failures.len()),
        ),
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(StructuralReport {
        objects,
        classes: stats.len(),
        playable: playable.len(),
        landau_failures,
        k_minimizing_failures,
        max_probability_failures,
        contrapositive_failures,
        largest_probability: largest,
        checks,
        passed,
    })
}

fn checks_markdown(out: &mut String, checks: &[Check]) {
    out.push_str("| check | result | detail |\n|---|---|---|\n");
    for c in checks {
        let _ = writeln!(
            out,
            "| {} | {} | {} |",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.detail
        );
    }
}

impl TheoremReport {
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "## Extremality on {} objects\n", self.objects);
        let _ = writeln!(
            out,
            "{} classes, {} strong, {} playable, {} strong but unplayable.\n",
            self.classes, self.strong_count, self.playable_count, self.strong_but_unplayable
        );
        out.push_str("| statistic | direction | best | construction | attained | unique |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for s in &self.statistics {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                s.name, s.direction, s.best_value, s.construction_value, s.attained_by_construction, s.unique
            );
        }
        out.push('\n');
        checks_markdown(&mut out, &self.checks);
        for (title, list) in [
            (
                "e_in majorization counterexamples",
                &self.e_in_majorization_failures,
            ),
            (
                "equilibrium majorization counterexamples",
                &self.equilibrium_majorization_failures,
            ),
        ] {
            if list.is_empty() {
                continue;
            }
            let _ = writeln!(out, "\n### {title}\n");
            for c in list {
                let _ = writeln!(out, "- code {}: {}", c.code, c.note);
            }
        }
        out
    }
}

impl EvenReport {
    pub fn to_markdown(&self) -> String {
        let mut out = format!("## Even tournaments up to {} objects\n\n", self.max_n);
        out.push_str("| n | tournaments | empty polytope | odd square det | odd pfaffian | pf² = det |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for s in &self.sizes {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                s.n,
                s.tournaments,
                s.empty_polytope,
                s.determinant_odd_square,
                s.pfaffian_odd,
                s.pfaffian_squares_to_determinant
            );
        }
        out.push('\n');
        checks_markdown(&mut out, &self.checks);
        out
    }
}

impl StructuralReport {
    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "## Structural conditions on {} objects\n\n{} classes, {} playable.\n\n",
            self.objects, self.classes, self.playable
        );
        checks_markdown(&mut out, &self.checks);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_on_three_objects() {
        let r = verify_theorem(1, false, &Budget::unlimited()).unwrap();
        assert_eq!(r.classes, 2);
        assert_eq!(r.playable_count, 1);
        assert!(r.passed, "{:#?}", r.checks);
    }

    #[test]
    fn theorem_on_five_objects() {
        let r = verify_theorem(2, false, &Budget::unlimited()).unwrap();
        assert_eq!(r.classes, 12);
        assert_eq!(r.playable_count, 2);
        let ui_v = &r.statistics[0];
        assert_eq!(ui_v.best_value, "1/10");
        assert!(ui_v.unique && ui_v.attained_by_construction);
        assert!(r.passed, "{:#?}", r.checks);
    }

    #[test]
    fn theorem_rejects_large_sizes() {
        assert!(verify_theorem(0, false, &Budget::unlimited()).is_err());
        assert!(verify_theorem(4, false, &Budget::unlimited()).is_err());
    }

    #[test]
    fn even_small() {
        let r = verify_even_unplayable(4, &Budget::unlimited()).unwrap();
        assert_eq!(r.sizes[0].tournaments, 2);
        assert_eq!(r.sizes[1].tournaments, 64);
        assert!(r.passed);
        assert!(verify_even_unplayable(8, &Budget::unlimited()).is_err());
    }

    #[test]
    fn structural_small() {
        assert!(verify_structural_lemmas(3, &Budget::unlimited()).unwrap().passed);
        let r = verify_structural_lemmas(5, &Budget::unlimited()).unwrap();
        assert_eq!(r.playable, 2);
        assert!(r.passed);
        assert!(verify_structural_lemmas(4, &Budget::unlimited()).is_err());
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let b = Budget {
            limit: Some(Duration::ZERO),
            start: Instant::now() - Duration::from_millis(5),
        };
        assert_eq!(
            verify_theorem(2, false, &b).unwrap_err(),
            VerifyError::BudgetExceeded { budget_secs: 0 }
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&verify_theorem(2, false, &Budget::unlimited()).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_theorem(2, false, &Budget::unlimited()).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
