//! Generators: the maximally imbalanced playable game, its countable
//! limit, balanced cycles, and the blow-up operator.

use thiserror::Error;

use crate::equilibrium::ProbabilityVector;
use crate::matrix::RationalMatrix;
use crate::rational::Rational;
use crate::tournament::{Tournament, TournamentError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("n must be at least 1")]
    ZeroSize,
    #[error("a balanced cycle needs an odd number of objects, got {0}")]
    EvenCycle(usize),
    #[error("object {index} out of range for a game with {len} objects")]
    ObjectOutOfRange { index: usize, len: usize },
    #[error("vector of length {actual} does not fit a game with {expected} objects")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("payoff matrices must be square")]
    NotSquare,
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

/// Level of each object in the order `r1, p1, r2, p2, …, rn, pn, s`;
/// `s` sits one level below the last pair.
fn level(idx: usize, n: usize) -> usize {
    if idx == 2 * n {
        n + 1
    } else {
        idx / 2 + 1
    }
}

fn is_r(idx: usize, n: usize) -> bool {
    idx < 2 * n && idx.is_multiple_of(2)
}

/// The imbalanced game on `2n + 1` objects ordered `r1, p1, …, rn, pn, s`.
///
/// `r_i` beats every object of a later level, `p_i` loses to every object of
/// a later level, and `p_i` beats `r_i`.
pub fn imbalanced_rps(n: usize) -> Result<Tournament, ConstructError> {
    if n == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let size = 2 * n + 1;
    let t = Tournament::from_fn(size, |a, b| {
        // a < b, so level(a) <= level(b); equal levels only for r_i, p_i.
        if level(a, n) == level(b, n) {
            !is_r(a, n)
        } else {
            is_r(a, n)
        }
    })?;
    let mut labels = Vec::with_capacity(size);
    for i in 1..=n {
        labels.push(format!("r{i}"));
        labels.push(format!("p{i}"));
    }
    labels.push("s".to_string());
    Ok(t.with_labels(labels)?)
}

/// `P(r_i) = P(p_i) = 3^-i` and `P(s) = 3^-n`.
pub fn imbalanced_equilibrium_closed_form(n: usize) -> Result<ProbabilityVector, ConstructError> {
    if n == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let third = Rational::ratio(1, 3);
    let mut v = Vec::with_capacity(2 * n + 1);
    for i in 1..=n {
        let p = third.pow(i as u32);
        v.push(p.clone());
        v.push(p);
    }
    v.push(third.pow(n as u32));
    Ok(ProbabilityVector::new(v).expect("geometric weights sum to one"))
}

/// Prefixes of the countable imbalanced game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NrpsPrefix {
    /// `1/3, 1/3, 1/9, 1/9, …`
    pub equilibrium: Vec<Rational>,
    /// Sorted minimal degrees `1, 1, 2, 2, 3, 3, …`: both `r_i` and `p_i`
    /// have finitely many results of one kind, exactly `i`.
    pub e_min: Vec<usize>,
}

pub fn nrps_closed_forms(k: usize) -> Result<NrpsPrefix, ConstructError> {
    if k == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let third = Rational::ratio(1, 3);
    let equilibrium = (0..k).map(|j| third.pow((j / 2 + 1) as u32)).collect();
    let e_min = (0..k).map(|j| j / 2 + 1).collect();
    Ok(NrpsPrefix { equilibrium, e_min })
}

/// `n`-object balanced cycle: object `i` beats the next `(n-1)/2` objects.
pub fn classic_cycle(n: usize) -> Result<Tournament, ConstructError> {
    if n == 0 {
        return Err(ConstructError::ZeroSize);
    }
    if n.is_multiple_of(2) {
        return Err(ConstructError::EvenCycle(n));
    }
    let half = (n - 1) / 2;
    Ok(Tournament::from_fn(n, |a, b| b - a <= half)?)
}

/// Replaces object `l` of `g1` by a copy of `g2`. Objects of `g1` other than
/// `l` come first in their order, then those of `g2`; every outer object
/// meets each inner one as it met `l`. Inner labels become `outer.inner`.
pub fn blow_up(g1: &Tournament, l: usize, g2: &Tournament) -> Result<Tournament, ConstructError> {
    if l >= g1.len() {
        return Err(ConstructError::ObjectOutOfRange {
            index: l,
            len: g1.len(),
        });
    }
    let outer: Vec<usize> = (0..g1.len()).filter(|&i| i != l).collect();
    let k = outer.len();
    let size = k + g2.len();
    let t = Tournament::from_fn(size, |a, b| match (a < k, b < k) {
        (true, true) => g1.beats(outer[a], outer[b]),
        (true, false) => g1.beats(outer[a], l),
        (false, false) => g2.beats(a - k, b - k),
        (false, true) => unreachable!("a < b"),
    })?;
    let glue = g1.label(l);
    let mut labels: Vec<String> = outer.iter().map(|&i| g1.label(i)).collect();
    labels.extend((0..g2.len()).map(|j| format!("{glue}.{}", g2.label(j))));
    Ok(t.with_labels(labels)?)
}

/// The product equilibrium: outer weights kept, `l`'s weight spread over
/// the inner game according to `v2`.
pub fn blow_up_equilibrium(
    v1: &ProbabilityVector,
    l: usize,
    v2: &ProbabilityVector,
) -> Result<ProbabilityVector, ConstructError> {
    if l >= v1.len() {
        return Err(ConstructError::ObjectOutOfRange {
            index: l,
            len: v1.len(),
        });
    }
    let weight = v1.get(l);
    let mut out: Vec<Rational> = (0..v1.len())
        .filter(|&i| i != l)
        .map(|i| v1.get(i).clone())
        .collect();
    out.extend(v2.entries().iter().map(|w| weight * w));
    Ok(ProbabilityVector::new(out).expect("product of distributions"))
}

/// Blow-up of payoff matrices with row strategy `l` and column strategy `m`
/// of `a1` replaced by `a2`. Rows are `a1`'s rows without `l`, then `a2`'s;
/// columns are `a1`'s without `m`, then `a2`'s. An outer row against an
/// inner column pays as against `m`; an inner row against an outer column
/// pays as `l` does.
pub fn blow_up_matrix(
    a1: &RationalMatrix,
    l: usize,
    m: usize,
    a2: &RationalMatrix,
) -> Result<RationalMatrix, ConstructError> {
    if !a1.is_square() || !a2.is_square() {
        return Err(ConstructError::NotSquare);
    }
    let n1 = a1.rows();
    for idx in [l, m] {
        if idx >= n1 {
            return Err(ConstructError::ObjectOutOfRange { index: idx, len: n1 });
        }
    }
    let rows: Vec<usize> = (0..n1).filter(|&i| i != l).collect();
    let cols: Vec<usize> = (0..n1).filter(|&j| j != m).collect();
    let k = n1 - 1;
    let size = k + a2.rows();
    Ok(RationalMatrix::from_fn(size, size, |i, j| match (i < k, j < k) {
        (true, true) => a1.get(rows[i], cols[j]).clone(),
        (true, false) => a1.get(rows[i], m).clone(),
        (false, true) => a1.get(l, cols[j]).clone(),
        (false, false) => a2.get(i - k, j - k).clone(),
    }))
}

/// `3-RPS` blown up at its last object `n - 1` times.
pub fn iterated_cycle_blow_up(n: usize) -> Result<Tournament, ConstructError> {
    if n == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let base = imbalanced_rps(1)?;
    let mut g = base.clone();
    for _ in 1..n {
        let last = g.len() - 1;
        g = blow_up(&g, last, &base)?;
    }
    Ok(g)
}
