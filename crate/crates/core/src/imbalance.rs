//! Imbalance statistics and majorization.
//!
//! Uniform statistics look at each object's expected payoff against a
//! uniformly random opponent; equilibrium statistics look at the worst-case
//! equilibrium distribution. Exact values are kept as [`Rational`] wherever
//! the statistic is rational.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equilibrium::{
    equilibrium_polytope, payoff_matrix, worst_case_equilibrium, ProbabilityVector, WorstCase,
    WorstCaseCriterion,
};
use crate::rational::Rational;
use crate::tournament::Tournament;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImbalanceError {
    #[error("uniform payoffs need at least two objects")]
    TooSmall,
    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    AlphaOutOfRange(Rational),
    #[error("scale {0} sends a payoff below zero")]
    ScaleTooLarge(Rational),
    #[error("player count must be at least 2, got {0}")]
    TooFewPlayers(u32),
    #[error("sequences differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("prefixes of length {available} cannot certify beyond index {requested}")]
    PrefixTooShort { requested: usize, available: usize },
}

/// Expected payoff of each object against a uniformly random opponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformPayoffProfile {
    pub payoffs: Vec<Rational>,
    /// Mass of objects at each payoff value.
    pub histogram: BTreeMap<Rational, Rational>,
}

impl UniformPayoffProfile {
    pub fn len(&self) -> usize {
        self.payoffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payoffs.is_empty()
    }

    /// Number of objects at each payoff value.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts: BTreeMap<&Rational, usize> = BTreeMap::new();
        for p in &self.payoffs {
            *counts.entry(p).or_default() += 1;
        }
        counts.into_values().collect()
    }
}

/// `(e_in[i] - e_out[i]) / (n - 1)` per object.
pub fn uniform_profile(t: &Tournament) -> Result<UniformPayoffProfile, ImbalanceError> {
    let n = t.len();
    if n < 2 {
        return Err(ImbalanceError::TooSmall);
    }
    let profile = t.degree_profile();
    let payoffs: Vec<Rational> = profile
        .e_in
        .iter()
        .zip(&profile.e_out)
        .map(|(&w, &l)| Rational::ratio(w as i64 - l as i64, n as i64 - 1))
        .collect();
    let mut histogram: BTreeMap<Rational, Rational> = BTreeMap::new();
    let unit = Rational::ratio(1, n as i64);
    for p in &payoffs {
        *histogram.entry(p.clone()).or_default() += &unit;
    }
    Ok(UniformPayoffProfile { payoffs, histogram })
}

/// Population variance of the uniform payoffs; their mean is always zero.
pub fn ui_variance(p: &UniformPayoffProfile) -> Rational {
    let n = Rational::from(p.len());
    p.payoffs.iter().map(|x| x * x).sum::<Rational>() / n
}

/// Shannon entropy (natural log) of the payoff histogram.
pub fn ui_entropy(p: &UniformPayoffProfile) -> f64 {
    let n = p.len() as f64;
    let n_ln = n.ln();
    // Σ (c/n) ln(n/c) evaluated from integer counts to avoid cancellation.
    p.counts()
        .into_iter()
        .map(|c| {
            let c = c as f64;
            c / n * (n_ln - c.ln())
        })
        .sum()
}

/// Exact comparison of [`ui_entropy`] values.
///
/// With counts `c` over `n` objects, `n·H = ln(n^n / Π c^c)`, so two
/// entropies compare like `(n₁^n₁ / Π₁)^n₂` and `(n₂^n₂ / Π₂)^n₁`.
pub fn ui_entropy_cmp(a: &UniformPayoffProfile, b: &UniformPayoffProfile) -> Ordering {
    let (na, nb) = (a.len() as u32, b.len() as u32);
    let self_power = |counts: Vec<usize>| -> BigInt {
        counts
            .into_iter()
            .fold(BigInt::one(), |acc, c| acc * Pow::pow(BigInt::from(c), c as u32))
    };
    let (pa, pb) = (self_power(a.counts()), self_power(b.counts()));
    let lhs = Pow::pow(BigInt::from(na), na * nb) * Pow::pow(pb, na);
    let rhs = Pow::pow(BigInt::from(nb), na * nb) * Pow::pow(pa, nb);
    lhs.cmp(&rhs)
}

fn check_alpha(alpha: &Rational) -> Result<(), ImbalanceError> {
    if alpha.is_positive() && *alpha < 1 {
        Ok(())
    } else {
        Err(ImbalanceError::AlphaOutOfRange(alpha.clone()))
    }
}

/// Theil index after the affine map `x = 1 + c₁·p` that keeps the mean at 1
/// and sends the smallest payoff to `alpha`. A fully balanced profile maps to
/// the constant 1 and scores 0.
///
/// The scale `c₁` depends on the game, so this index is not monotone under
/// majorization across games with different minimum payoffs; use
/// [`theil_at_scale`] to compare games on a common scale.
pub fn ui_theil(p: &UniformPayoffProfile, alpha: &Rational) -> Result<f64, ImbalanceError> {
    check_alpha(alpha)?;
    let min = p.payoffs.iter().min().expect("nonempty profile");
    if !min.is_negative() {
        return Ok(0.0);
    }
    let c1 = (alpha - Rational::one()) / min;
    theil_at_scale(p, &c1)
}

/// Theil index of `x = 1 + scale·p`, which needs every `x ≥ 0`.
pub fn theil_at_scale(p: &UniformPayoffProfile, scale: &Rational) -> Result<f64, ImbalanceError> {
    let xs: Vec<Rational> = p.payoffs.iter().map(|v| Rational::one() + scale * v).collect();
    if xs.iter().any(Rational::is_negative) {
        return Err(ImbalanceError::ScaleTooLarge(scale.clone()));
    }
    let n = xs.len() as f64;
    Ok(xs
        .iter()
        .map(|x| if x.is_zero() { 0.0 } else { x.to_f64() * x.ln() })
        .sum::<f64>()
        / n)
}

/// Probability that `m` players all pick the same object: `Σ v^m`.
pub fn nash_ties(v: &ProbabilityVector, m: u32) -> Result<Rational, ImbalanceError> {
    if m < 2 {
        return Err(ImbalanceError::TooFewPlayers(m));
    }
    Ok(v.entries().iter().map(|x| x.pow(m)).sum())
}

/// `-Σ v ln v` with `0 ln 0 = 0`.
pub fn nash_entropy(v: &ProbabilityVector) -> f64 {
    entropy_f64(&v.to_f64())
}

/// Exact comparison of [`nash_entropy`] values.
///
/// `e^{-H(v)} = Π v_i^{v_i}`; raising both products to a common denominator
/// `D` of all entries leaves integer exponents.
pub fn nash_entropy_cmp(a: &ProbabilityVector, b: &ProbabilityVector) -> Ordering {
    let d = a
        .entries()
        .iter()
        .chain(b.entries())
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    // (numerator product, denominator product) of Π v_i^{v_i D}
    let power = |v: &ProbabilityVector| -> (BigInt, BigInt) {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for x in v.entries().iter().filter(|x| x.is_positive()) {
            let e = (x * Rational::from_integer(d.clone()))
                .to_integer()
                .expect("common denominator");
            let e = u32::try_from(e).expect("exponent fits u32");
            num *= Pow::pow(x.numer().clone(), e);
            den *= Pow::pow(x.denom().clone(), e);
        }
        (num, den)
    };
    let (na, da) = power(a);
    let (nb, db) = power(b);
    // H(a) < H(b) exactly when Π_a > Π_b.
    (nb * da).cmp(&(na * db))
}

pub fn entropy_f64(v: &[f64]) -> f64 {
    -v.iter()
        .map(|&x| if x > 0.0 { x * x.ln() } else { 0.0 })
        .sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Majorization {
    /// Majorizes with some strict prefix inequality.
    Strict,
    /// Majorizes with every prefix sum equal. Equal-sum finite sequences
    /// never land here; they report [`Majorization::Equal`].
    Weak,
    Equal,
    No,
}

/// Whether `x` majorizes `y`: equal totals and descending prefix sums of `x`
/// at least those of `y`.
pub fn majorizes(x: &[Rational], y: &[Rational]) -> Result<Majorization, ImbalanceError> {
    if x.len() != y.len() {
        return Err(ImbalanceError::LengthMismatch(x.len(), y.len()));
    }
    let desc = |s: &[Rational]| {
        let mut v = s.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    let (xs, ys) = (desc(x), desc(y));
    if xs == ys {
        return Ok(Majorization::Equal);
    }
    let (mut sx, mut sy) = (Rational::zero(), Rational::zero());
    let mut strict = false;
    for (a, b) in xs.iter().zip(&ys) {
        sx += a;
        sy += b;
        match sx.cmp(&sy) {
            Ordering::Less => return Ok(Majorization::No),
            Ordering::Greater => strict = true,
            Ordering::Equal => {}
        }
    }
    if sx != sy {
        return Ok(Majorization::No);
    }
    Ok(if strict {
        Majorization::Strict
    } else {
        Majorization::Weak
    })
}

/// Integer convenience wrapper over [`majorizes`].
pub fn majorizes_counts(x: &[usize], y: &[usize]) -> Result<Majorization, ImbalanceError> {
    let conv = |s: &[usize]| s.iter().map(|&v| Rational::from(v)).collect::<Vec<_>>();
    majorizes(&conv(x), &conv(y))
}

/// A prefix of an infinite sequence over `ℝ ∪ {-∞}`, together with how many
/// of its entries are `-∞`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedSequence {
    /// The largest finite entries, sorted descending.
    pub finite_entries: Vec<Rational>,
    pub infinite_count: usize,
}

impl ExtendedSequence {
    pub fn new(mut finite_entries: Vec<Rational>, infinite_count: usize) -> Self {
        finite_entries.sort_unstable_by(|a, b| b.cmp(a));
        ExtendedSequence {
            finite_entries,
            infinite_count,
        }
    }

    /// `-e` for a sequence of minimal degrees; infinite degrees become `-∞`.
    pub fn negated_degrees(degrees: &[usize], infinite_count: usize) -> Self {
        Self::new(
            degrees.iter().map(|&d| -Rational::from(d)).collect(),
            infinite_count,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ExtendedOutcome {
    Yes,
    /// Prefix sums dominate for every examined `k > k0`.
    YesInLimit {
        k0: usize,
    },
    No,
    /// Dominance flips direction inside the examined window and ends against.
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedVerdict {
    pub outcome: ExtendedOutcome,
    /// Largest `k` whose prefix sums were compared; zero when decided by the
    /// infinite-entry counts alone.
    pub horizon: usize,
}

/// Weak majorization of extended sequences, certified only up to the
/// shorter supplied prefix. With `after = Some(k0)` only `k > k0` is checked.
pub fn extended_weak_majorizes(
    x: &ExtendedSequence,
    y: &ExtendedSequence,
    after: Option<usize>,
) -> Result<ExtendedVerdict, ImbalanceError> {
    match x.infinite_count.cmp(&y.infinite_count) {
        Ordering::Less => {
            return Ok(ExtendedVerdict {
                outcome: ExtendedOutcome::Yes,
                horizon: 0,
            })
        }
        Ordering::Greater => {
            return Ok(ExtendedVerdict {
                outcome: ExtendedOutcome::No,
                horizon: 0,
            })
        }
        Ordering::Equal => {}
    }
    let horizon = x.finite_entries.len().min(y.finite_entries.len());
    if let Some(k0) = after {
        if k0 >= horizon {
            return Err(ImbalanceError::PrefixTooShort {
                requested: k0 + 1,
                available: horizon,
            });
        }
    }
    let mut behind = Vec::new();
    let mut ahead = Vec::new();
    let (mut sx, mut sy) = (Rational::zero(), Rational::zero());
    for k in 1..=horizon {
        sx += &x.finite_entries[k - 1];
        sy += &y.finite_entries[k - 1];
        match sx.cmp(&sy) {
            Ordering::Less => behind.push(k),
            Ordering::Greater => ahead.push(k),
            Ordering::Equal => {}
        }
    }
    let outcome = match after {
        Some(k0) => {
            if behind.iter().all(|&k| k <= k0) {
                ExtendedOutcome::YesInLimit { k0 }
            } else {
                ExtendedOutcome::No
            }
        }
        None => match behind.last() {
            None => ExtendedOutcome::Yes,
            Some(&last) if last < horizon => ExtendedOutcome::YesInLimit { k0: last },
            Some(_) if ahead.is_empty() => ExtendedOutcome::No,
            Some(_) => ExtendedOutcome::Incomparable,
        },
    };
    Ok(ExtendedVerdict { outcome, horizon })
}

/// All imbalance statistics of one game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImbalanceReport {
    pub ui_v: Rational,
    pub ui_e: f64,
    pub ui_theil: f64,
    pub alpha: Rational,
    /// `Σ v²` at the tie-minimizing equilibrium; absent without equilibria.
    pub n_t: Option<Rational>,
    /// Entropy of the entropy-maximizing equilibrium.
    pub n_e: Option<f64>,
    /// Whether `n_e` comes from an exactly known equilibrium.
    pub n_e_exact: Option<bool>,
    pub sorted_e_in: Vec<usize>,
    pub sorted_equilibrium_probs: Option<Vec<Rational>>,
}

pub fn imbalance_report(t: &Tournament, alpha: &Rational) -> Result<ImbalanceReport, ImbalanceError> {
    let profile = uniform_profile(t)?;
    let polytope = equilibrium_polytope(&payoff_matrix(t));
    let mut sorted_e_in = t.degree_profile().e_in;
    sorted_e_in.sort_unstable_by(|a, b| b.cmp(a));

    let (mut n_t, mut n_e, mut n_e_exact, mut probs) = (None, None, None, None);
    if !polytope.is_empty() {
        let ties = worst_case_equilibrium(&polytope, WorstCaseCriterion::MinTies).expect("nonempty polytope");
        let ties = ties.exact().expect("tie minimizer is exact");
        n_t = Some(nash_ties(ties, 2)?);
        probs = Some(ties.sorted_descending());
        let ent =
            worst_case_equilibrium(&polytope, WorstCaseCriterion::MaxEntropy).expect("nonempty polytope");
        n_e = Some(match &ent {
            WorstCase::Exact(v) => nash_entropy(v),
            WorstCase::Approximate { probabilities, .. } => entropy_f64(probabilities),
        });
        n_e_exact = Some(ent.is_exact());
    }
    Ok(ImbalanceReport {
        ui_v: ui_variance(&profile),
        ui_e: ui_entropy(&profile),
        ui_theil: ui_theil(&profile, alpha)?,
        alpha: alpha.clone(),
        n_t,
        n_e,
        n_e_exact,
        sorted_e_in,
        sorted_equilibrium_probs: probs,
    })
}
