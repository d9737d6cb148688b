//! Payoff matrices, exact equilibrium polytopes and playability.
//!
//! For a symmetric zero-sum game with payoff matrix `A` the symmetric
//! equilibria playing every object form `ker(A) ∩ Δ`. The polytope is
//! computed from an exact kernel basis; every reported point satisfies
//! `A·v = 0` and `Σv = 1` exactly.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lp::{self, LpOutcome};
use crate::matrix::RationalMatrix;
use crate::rational::Rational;
use crate::tournament::Tournament;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquilibriumError {
    #[error("the equilibrium polytope is empty")]
    EmptyPolytope,
    #[error("probabilities must be nonnegative and sum to one")]
    NotADistribution,
    #[error("payoff matrix must be square and skew-symmetric")]
    NotSkewSymmetric,
}

/// Skew-symmetric payoff matrix of a tournament game.
#[derive(Clone, PartialEq, Eq)]
pub struct PayoffMatrix {
    matrix: RationalMatrix,
}

impl PayoffMatrix {
    /// `A[i][j] = 1` when `i` beats `j`, `-1` when `j` beats `i`.
    pub fn from_tournament(t: &Tournament) -> Self {
        let n = t.len();
        let matrix = RationalMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::zero()
            } else if t.beats(i, j) {
                Rational::one()
            } else {
                -Rational::one()
            }
        });
        PayoffMatrix { matrix }
    }

    /// Wraps any skew-symmetric rational matrix.
    pub fn from_matrix(matrix: RationalMatrix) -> Result<Self, EquilibriumError> {
        if !matrix.is_skew_symmetric() {
            return Err(EquilibriumError::NotSkewSymmetric);
        }
        Ok(PayoffMatrix { matrix })
    }

    pub fn len(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.matrix.get(i, j)
    }

    pub fn as_matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    /// True when `A·v = 0` exactly.
    pub fn annihilates(&self, v: &[Rational]) -> bool {
        self.matrix
            .mul_vec(v)
            .map(|w| w.iter().all(Rational::is_zero))
            .unwrap_or(false)
    }
}

impl fmt::Debug for PayoffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

pub fn payoff_matrix(t: &Tournament) -> PayoffMatrix {
    PayoffMatrix::from_tournament(t)
}

/// A point of the simplex with exact entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct ProbabilityVector(Vec<Rational>);

impl ProbabilityVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self, EquilibriumError> {
        if entries.is_empty()
            || entries.iter().any(Rational::is_negative)
            || entries.iter().sum::<Rational>() != Rational::one()
        {
            return Err(EquilibriumError::NotADistribution);
        }
        Ok(ProbabilityVector(entries))
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution needs support");
        ProbabilityVector(vec![Rational::ratio(1, n as i64); n])
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn max(&self) -> &Rational {
        self.0.iter().max().expect("nonempty")
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(Rational::is_positive)
    }

    pub fn support(&self) -> Vec<bool> {
        self.0.iter().map(Rational::is_positive).collect()
    }

    /// Entries sorted from largest to smallest.
    pub fn sorted_descending(&self) -> Vec<Rational> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Rational::to_f64).collect()
    }
}

impl TryFrom<Vec<Rational>> for ProbabilityVector {
    type Error = EquilibriumError;

    fn try_from(v: Vec<Rational>) -> Result<Self, Self::Error> {
        ProbabilityVector::new(v)
    }
}

impl From<ProbabilityVector> for Vec<Rational> {
    fn from(v: ProbabilityVector) -> Self {
        v.0
    }
}

/// `ker(A) ∩ Δ`, described by its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumPolytope {
    pub kernel_dim: usize,
    pub vertices: Vec<ProbabilityVector>,
    /// Average of the vertices; strictly positive exactly on `support_mask`.
    pub relative_interior_point: Option<ProbabilityVector>,
    /// Objects played with positive probability in some equilibrium.
    pub support_mask: Vec<bool>,
}

impl EquilibriumPolytope {
    pub fn of(a: &PayoffMatrix) -> Self {
        Self::of_matrix(a.as_matrix())
    }

    /// Works for any square matrix; skew-symmetry is not required.
    pub fn of_matrix(a: &RationalMatrix) -> Self {
        let n = a.cols();
        let basis = a.kernel_basis();
        let k = basis.len();
        let vertices = simplex_slice_vertices(&basis, n);
        let mut support_mask = vec![false; n];
        for v in &vertices {
            for (m, e) in support_mask.iter_mut().zip(v.entries()) {
                *m |= e.is_positive();
            }
        }
        let relative_interior_point = if vertices.is_empty() {
            None
        } else {
            let count = Rational::from(vertices.len());
            let avg = (0..n)
                .map(|i| vertices.iter().map(|v| v.get(i)).sum::<Rational>() / &count)
                .collect();
            Some(ProbabilityVector(avg))
        };
        EquilibriumPolytope {
            kernel_dim: k,
            vertices,
            relative_interior_point,
            support_mask,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The equilibrium when it is unique.
    pub fn unique_point(&self) -> Option<&ProbabilityVector> {
        match self.vertices.as_slice() {
            [v] => Some(v),
            _ => None,
        }
    }

    /// Some equilibrium plays every object.
    pub fn has_full_support(&self) -> bool {
        !self.is_empty() && self.support_mask.iter().all(|&b| b)
    }
}

pub fn equilibrium_polytope(a: &PayoffMatrix) -> EquilibriumPolytope {
    EquilibriumPolytope::of(a)
}

/// Vertices of `{Bc : 1ᵀBc = 1, Bc ≥ 0}` for a kernel basis `B` with `k`
/// columns. A vertex has `k` independent active constraints: the sum row and
/// `k - 1` vanishing coordinates, so every `(k-1)`-subset of coordinates is
/// tried as the zero set.
fn simplex_slice_vertices(basis: &[Vec<Rational>], n: usize) -> Vec<ProbabilityVector> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let coord = |i: usize| -> Vec<Rational> { basis.iter().map(|b| b[i].clone()).collect() };
    let sum_row: Vec<Rational> = (0..k).map(|c| basis[c].iter().sum::<Rational>()).collect();

    let mut found: Vec<ProbabilityVector> = Vec::new();
    let mut zero_set = Vec::with_capacity(k - 1);
    let mut visit = |zeros: &[usize]| {
        let mut rows = vec![sum_row.clone()];
        rows.extend(zeros.iter().map(|&z| coord(z)));
        let system = RationalMatrix::from_rows(rows).expect("square system");
        let mut rhs = vec![Rational::zero(); k];
        rhs[0] = Rational::one();
        let Ok(Some(c)) = system.solve(&rhs) else {
            return;
        };
        let v: Vec<Rational> = (0..n)
            .map(|i| basis.iter().zip(&c).map(|(b, ci)| &b[i] * ci).sum::<Rational>())
            .collect();
        if v.iter().any(Rational::is_negative) {
            return;
        }
        let pv = ProbabilityVector(v);
        if !found.contains(&pv) {
            found.push(pv);
        }
    };
    choose(n, k - 1, 0, &mut zero_set, &mut visit);
    found.sort_by(|a, b| b.0.cmp(&a.0));
    found
}

fn choose(n: usize, size: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if acc.len() == size {
        f(acc);
        return;
    }
    for i in start..n {
        if n - i < size - acc.len() {
            break;
        }
        acc.push(i);
        choose(n, size, i + 1, acc, f);
        acc.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DominanceMode {
    Strict,
    Weak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Against {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DominatingStrategy {
    Pure(usize),
    /// Weights over all objects; zero at the dominated object.
    Mixed(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domination {
    pub dominated: usize,
    pub by: DominatingStrategy,
    pub mode: DominanceMode,
}

/// Objects whose payoff row is dominated. Rows are compared against every
/// opponent object, the diagonal included. In pure mode each dominated
/// object is reported once per dominating object.
pub fn find_dominated(t: &Tournament, mode: DominanceMode, against: Against) -> Vec<Domination> {
    let a = PayoffMatrix::from_tournament(t);
    match against {
        Against::Pure => pure_dominations(&a, mode),
        Against::Mixed => (0..a.len())
            .filter_map(|i| {
                mixed_dominator(&a, i, mode).map(|w| Domination {
                    dominated: i,
                    by: DominatingStrategy::Mixed(w),
                    mode,
                })
            })
            .collect(),
    }
}

fn pure_dominations(a: &PayoffMatrix, mode: DominanceMode) -> Vec<Domination> {
    let n = a.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let ge = (0..n).all(|k| a.get(j, k) >= a.get(i, k));
            let gt_any = (0..n).any(|k| a.get(j, k) > a.get(i, k));
            let gt_all = (0..n).all(|k| a.get(j, k) > a.get(i, k));
            let hit = match mode {
                DominanceMode::Strict => gt_all,
                DominanceMode::Weak => ge && gt_any,
            };
            if hit {
                out.push(Domination {
                    dominated: i,
                    by: DominatingStrategy::Pure(j),
                    mode,
                });
            }
        }
    }
    out
}

/// A mixture `σ` of the other rows with `σᵀA ≥ A_i`, strictly everywhere or
/// strictly somewhere according to `mode`, found by an exact LP.
fn mixed_dominator(a: &PayoffMatrix, i: usize, mode: DominanceMode) -> Option<Vec<Rational>> {
    let n = a.len();
    if n < 2 {
        return None;
    }
    let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    let s = others.len();
    // Variables: σ over others (s), slack per column (n), then for strict mode
    // a margin split as t⁺, t⁻.
    let extra = if mode == DominanceMode::Strict { 2 } else { 0 };
    let width = s + n + extra;
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for k in 0..n {
        // Σ σ_j A[j][k] - slack_k - t = A[i][k]
        let mut row = vec![Rational::zero(); width];
        for (c, &j) in others.iter().enumerate() {
            row[c] = a.get(j, k).clone();
        }
        row[s + k] = -Rational::one();
        if extra == 2 {
            row[s + n] = -Rational::one();
            row[s + n + 1] = Rational::one();
        }
        rows.push(row);
        rhs.push(a.get(i, k).clone());
    }
    let mut total = vec![Rational::zero(); width];
    for w in total.iter_mut().take(s) {
        *w = Rational::one();
    }
    rows.push(total);
    rhs.push(Rational::one());

    let mut cost = vec![Rational::zero(); width];
    match mode {
        DominanceMode::Strict => {
            cost[s + n] = Rational::one();
            cost[s + n + 1] = -Rational::one();
        }
        DominanceMode::Weak => {
            for c in cost.iter_mut().skip(s).take(n) {
                *c = Rational::one();
            }
        }
    }
    match lp::maximize(&cost, &rows, &rhs) {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            let mut weights = vec![Rational::zero(); n];
            for (c, &j) in others.iter().enumerate() {
                weights[j] = x[c].clone();
            }
            Some(weights)
        }
        _ => None,
    }
}

/// Why a game is unplayable, in order of preference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnplayableWitness {
    PureDominance {
        dominated: usize,
        dominator: usize,
        strict: bool,
    },
    MixedDominance {
        dominated: usize,
        weights: Vec<Rational>,
        strict: bool,
    },
    EmptyPolytope,
    NeverPlayed {
        object: usize,
    },
}

impl UnplayableWitness {
    pub fn describe(&self, t: &Tournament) -> String {
        match self {
            UnplayableWitness::PureDominance {
                dominated,
                dominator,
                strict,
            } => format!(
                "{} {} dominates {}",
                t.label(*dominator),
                if *strict { "strictly" } else { "weakly" },
                t.label(*dominated)
            ),
            UnplayableWitness::MixedDominance {
                dominated,
                weights,
                strict,
            } => {
                let parts: Vec<String> = weights
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| w.is_positive())
                    .map(|(j, w)| format!("{w}·{}", t.label(j)))
                    .collect();
                format!(
                    "the mixture {} {} dominates {}",
                    parts.join(" + "),
                    if *strict { "strictly" } else { "weakly" },
                    t.label(*dominated)
                )
            }
            UnplayableWitness::EmptyPolytope => "no equilibrium plays every object".to_string(),
            UnplayableWitness::NeverPlayed { object } => {
                format!("{} has probability zero in every equilibrium", t.label(*object))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlayabilityClass {
    Unplayable(UnplayableWitness),
    /// Every object is played in some equilibrium but none plays them all.
    /// Unreachable for two-player games: the equilibrium set is convex.
    WeaklyPlayableOnly,
    /// Some equilibrium plays every object; another does not.
    Playable(ProbabilityVector),
    /// Every equilibrium plays every object.
    StronglyPlayable(ProbabilityVector),
}

impl PlayabilityClass {
    pub fn is_playable(&self) -> bool {
        matches!(
            self,
            PlayabilityClass::Playable(_) | PlayabilityClass::StronglyPlayable(_)
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            PlayabilityClass::Unplayable(_) => "unplayable",
            PlayabilityClass::WeaklyPlayableOnly => "weakly_playable_only",
            PlayabilityClass::Playable(_) => "playable",
            PlayabilityClass::StronglyPlayable(_) => "strongly_playable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayabilityReport {
    pub class: PlayabilityClass,
    /// Independent check: whether the tournament is strongly connected.
    pub is_strong: bool,
    pub polytope: EquilibriumPolytope,
}

pub fn classify_playability(t: &Tournament) -> PlayabilityReport {
    let polytope = equilibrium_polytope(&payoff_matrix(t));
    let class = classify_polytope(t, &polytope);
    PlayabilityReport {
        class,
        is_strong: t.is_strong(),
        polytope,
    }
}

fn classify_polytope(t: &Tournament, polytope: &EquilibriumPolytope) -> PlayabilityClass {
    if polytope.has_full_support() {
        let interior = polytope
            .relative_interior_point
            .clone()
            .expect("nonempty polytope");
        return if polytope
            .vertices
            .iter()
            .all(ProbabilityVector::is_strictly_positive)
        {
            PlayabilityClass::StronglyPlayable(interior)
        } else {
            PlayabilityClass::Playable(interior)
        };
    }
    PlayabilityClass::Unplayable(unplayable_witness(t, polytope))
}

fn unplayable_witness(t: &Tournament, polytope: &EquilibriumPolytope) -> UnplayableWitness {
    let a = payoff_matrix(t);
    if let Some(d) = pure_dominations(&a, DominanceMode::Weak).into_iter().next() {
        let DominatingStrategy::Pure(j) = d.by else {
            unreachable!()
        };
        let strict = (0..a.len()).all(|k| a.get(j, k) > a.get(d.dominated, k));
        return UnplayableWitness::PureDominance {
            dominated: d.dominated,
            dominator: j,
            strict,
        };
    }
    if let Some(d) = find_dominated(t, DominanceMode::Weak, Against::Mixed)
        .into_iter()
        .next()
    {
        let strict = mixed_dominator(&a, d.dominated, DominanceMode::Strict).is_some();
        let DominatingStrategy::Mixed(weights) = d.by else {
            unreachable!()
        };
        return UnplayableWitness::MixedDominance {
            dominated: d.dominated,
            weights,
            strict,
        };
    }
    if polytope.is_empty() {
        UnplayableWitness::EmptyPolytope
    } else {
        let object = polytope
            .support_mask
            .iter()
            .position(|&b| !b)
            .expect("some object is never played");
        UnplayableWitness::NeverPlayed { object }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WorstCaseCriterion {
    MinTies,
    MaxEntropy,
}

/// Equilibrium chosen by a worst-case criterion.
#[derive(Debug, Clone, PartialEq)]
pub enum WorstCase {
    Exact(ProbabilityVector),
    /// Numerical optimum; `gradient_norm` is the final stationarity residual.
    Approximate {
        probabilities: Vec<f64>,
        gradient_norm: f64,
    },
}

impl WorstCase {
    pub fn is_exact(&self) -> bool {
        matches!(self, WorstCase::Exact(_))
    }

    pub fn exact(&self) -> Option<&ProbabilityVector> {
        match self {
            WorstCase::Exact(v) => Some(v),
            WorstCase::Approximate { .. } => None,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            WorstCase::Exact(v) => v.to_f64(),
            WorstCase::Approximate { probabilities, .. } => probabilities.clone(),
        }
    }
}

/// Tolerance on the entropy gradient for [`WorstCaseCriterion::MaxEntropy`].
pub const ENTROPY_TOLERANCE: f64 = 1e-10;
const NEWTON_ITERATIONS: usize = 200;

pub fn worst_case_equilibrium(
    polytope: &EquilibriumPolytope,
    criterion: WorstCaseCriterion,
) -> Result<WorstCase, EquilibriumError> {
    if polytope.is_empty() {
        return Err(EquilibriumError::EmptyPolytope);
    }
    if let Some(v) = polytope.unique_point() {
        return Ok(WorstCase::Exact(v.clone()));
    }
    match criterion {
        WorstCaseCriterion::MinTies => Ok(WorstCase::Exact(min_square_sum(&polytope.vertices))),
        WorstCaseCriterion::MaxEntropy => Ok(max_entropy(polytope)),
    }
}

/// Minimizes `Σ v²` over the convex hull of `vertices`. The optimum is the
/// minimum-norm point of some face spanned by affinely independent vertices,
/// where it solves the KKT system `[2G 1; 1ᵀ 0]`.
fn min_square_sum(vertices: &[ProbabilityVector]) -> ProbabilityVector {
    let n = vertices[0].len();
    let m = vertices.len();
    let dot = |a: &ProbabilityVector, b: &ProbabilityVector| -> Rational {
        a.entries().iter().zip(b.entries()).map(|(x, y)| x * y).sum()
    };
    let mut best: Option<(Rational, ProbabilityVector)> = None;
    let mut consider = |v: ProbabilityVector| {
        let value = dot(&v, &v);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, v));
        }
    };
    let max_size = m.min(n + 1);
    for size in 1..=max_size {
        let mut acc = Vec::with_capacity(size);
        choose(m, size, 0, &mut acc, &mut |subset: &[usize]| {
            let s = subset.len();
            let mut rows = Vec::with_capacity(s + 1);
            for &p in subset {
                let mut row: Vec<Rational> = subset
                    .iter()
                    .map(|&q| Rational::from(2) * dot(&vertices[p], &vertices[q]))
                    .collect();
                row.push(Rational::one());
                rows.push(row);
            }
            let mut last = vec![Rational::one(); s];
            last.push(Rational::zero());
            rows.push(last);
            let mut rhs = vec![Rational::zero(); s + 1];
            rhs[s] = Rational::one();
            let system = RationalMatrix::from_rows(rows).expect("square system");
            let Ok(Some(sol)) = system.solve(&rhs) else {
                return;
            };
            if sol[..s].iter().any(Rational::is_negative) {
                return;
            }
            let v = (0..n)
                .map(|i| {
                    subset
                        .iter()
                        .zip(&sol)
                        .map(|(&p, l)| vertices[p].get(i) * l)
                        .sum::<Rational>()
                })
                .collect();
            consider(ProbabilityVector(v));
        });
    }
    best.expect("vertices are feasible").1
}

/// Damped Newton ascent on `-Σ v ln v` over the affine hull of the
/// polytope, parametrized as `v = v₀ + D c` on the support.
fn max_entropy(polytope: &EquilibriumPolytope) -> WorstCase {
    let base = polytope
        .relative_interior_point
        .as_ref()
        .expect("nonempty polytope");
    let support: Vec<usize> = (0..base.len()).filter(|&i| polytope.support_mask[i]).collect();

    // Independent directions spanning the affine hull.
    let mut directions: Vec<Vec<Rational>> = Vec::new();
    for v in &polytope.vertices {
        let d: Vec<Rational> = support.iter().map(|&i| v.get(i) - base.get(i)).collect();
        let mut trial = directions.clone();
        trial.push(d.clone());
        let rows = RationalMatrix::from_rows(trial).expect("uniform width");
        if rows.rank() > directions.len() {
            directions.push(d);
        }
    }
    let d: Vec<Vec<f64>> = directions
        .iter()
        .map(|col| col.iter().map(Rational::to_f64).collect())
        .collect();
    let v0: Vec<f64> = support.iter().map(|&i| base.get(i).to_f64()).collect();
    let dims = d.len();
    let point = |c: &[f64]| -> Vec<f64> {
        (0..v0.len())
            .map(|r| v0[r] + (0..dims).map(|k| d[k][r] * c[k]).sum::<f64>())
            .collect()
    };
    let entropy = |v: &[f64]| -> f64 {
        -v.iter()
            .map(|&x| if x > 0.0 { x * x.ln() } else { 0.0 })
            .sum::<f64>()
    };

    let mut c = vec![0.0; dims];
    let mut v = point(&c);
    let mut grad_norm = f64::INFINITY;
    for _ in 0..NEWTON_ITERATIONS {
        let g: Vec<f64> = (0..dims)
            .map(|k| (0..v.len()).map(|r| -d[k][r] * (v[r].ln() + 1.0)).sum())
            .collect();
        grad_norm = g.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if grad_norm <= ENTROPY_TOLERANCE {
            break;
        }
        // Negative Hessian: Dᵀ diag(1/v) D, positive definite.
        let h: Vec<Vec<f64>> = (0..dims)
            .map(|a| {
                (0..dims)
                    .map(|b| (0..v.len()).map(|r| d[a][r] * d[b][r] / v[r]).sum())
                    .collect()
            })
            .collect();
        let step = solve_f64(h, g.clone());
        let current = entropy(&v);
        let mut t = 1.0;
        loop {
            let trial: Vec<f64> = c.iter().zip(&step).map(|(ci, si)| ci + t * si).collect();
            let tv = point(&trial);
            if tv.iter().all(|&x| x > 0.0) && entropy(&tv) >= current {
                c = trial;
                v = tv;
                break;
            }
            t *= 0.5;
            if t < 1e-16 {
                break;
            }
        }
        if t < 1e-16 {
            break;
        }
    }
    let mut probabilities = vec![0.0; base.len()];
    for (slot, &i) in support.iter().enumerate() {
        probabilities[i] = v[slot];
    }
    WorstCase::Approximate {
        probabilities,
        gradient_norm: grad_norm,
    }
}

fn solve_f64(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .expect("nonempty");
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col];
        if p == 0.0 {
            continue;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col] / p;
                for k in col..n {
                    a[r][k] -= f * a[col][k];
                }
                b[r] -= f * b[col];
            }
        }
    }
    (0..n)
        .map(|i| if a[i][i] == 0.0 { 0.0 } else { b[i] / a[i][i] })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> Tournament {
        Tournament::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn rps_well() -> Tournament {
        Tournament::from_edge_list(4, &[(0, 2), (2, 1), (1, 0), (3, 0), (3, 2), (1, 3)])
            .unwrap()
            .with_labels(vec![
                "rock".into(),
                "paper".into(),
                "scissors".into(),
                "well".into(),
            ])
            .unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::ratio(a, b)
    }

    #[test]
    fn payoff_matrices() {
        let t = Tournament::from_edge_list(2, &[(0, 1)]).unwrap();
        let a = payoff_matrix(&t);
        assert_eq!(
            a.as_matrix(),
            &RationalMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]).unwrap()
        );
        assert!(payoff_matrix(&three_cycle()).as_matrix().is_skew_symmetric());
    }

    #[test]
    fn three_cycle_equilibrium() {
        let p = equilibrium_polytope(&payoff_matrix(&three_cycle()));
        assert_eq!(p.kernel_dim, 1);
        assert_eq!(p.unique_point().unwrap(), &ProbabilityVector::uniform(3));
        let r = classify_playability(&three_cycle());
        assert!(matches!(r.class, PlayabilityClass::StronglyPlayable(_)));
        assert!(r.is_strong);
    }

    #[test]
    fn even_games_have_no_equilibrium_in_the_kernel() {
        let p = equilibrium_polytope(&payoff_matrix(&rps_well()));
        assert!(p.is_empty());
        assert_eq!(p.kernel_dim, 0);
    }

    #[test]
    fn rps_well_is_unplayable_with_dominance_witness() {
        let t = rps_well();
        let r = classify_playability(&t);
        match &r.class {
            PlayabilityClass::Unplayable(w) => {
                assert_eq!(
                    w,
                    &UnplayableWitness::PureDominance {
                        dominated: 0,
                        dominator: 3,
                        strict: false
                    }
                );
                assert_eq!(w.describe(&t), "well weakly dominates rock");
            }
            other => panic!("{other:?}"),
        }
        let weak = find_dominated(&t, DominanceMode::Weak, Against::Pure);
        assert_eq!(weak.len(), 1);
        assert_eq!(weak[0].by, DominatingStrategy::Pure(3));
    }

    #[test]
    fn transitive_games() {
        let t3 = Tournament::from_fn(3, |_, _| true).unwrap();
        let strict = find_dominated(&t3, DominanceMode::Strict, Against::Pure);
        assert!(strict
            .iter()
            .any(|d| d.dominated == 2 && d.by == DominatingStrategy::Pure(0)));
        let t5 = Tournament::from_fn(5, |_, _| true).unwrap();
        assert!(matches!(
            classify_playability(&t5).class,
            PlayabilityClass::Unplayable(_)
        ));
    }

    #[test]
    fn cycle_has_no_dominated_objects() {
        for mode in [DominanceMode::Strict, DominanceMode::Weak] {
            for against in [Against::Pure, Against::Mixed] {
                assert!(find_dominated(&three_cycle(), mode, against).is_empty());
            }
        }
    }

    #[test]
    fn mixed_dominators_satisfy_the_inequalities() {
        let cases = [rps_well(), Tournament::from_fn(4, |_, _| true).unwrap()];
        for t in &cases {
            let a = payoff_matrix(t);
            let mixed = find_dominated(t, DominanceMode::Weak, Against::Mixed);
            assert!(!mixed.is_empty());
            for d in mixed {
                let DominatingStrategy::Mixed(w) = &d.by else {
                    panic!("mixed mode")
                };
                assert!(w[d.dominated].is_zero());
                assert_eq!(w.iter().sum::<Rational>(), Rational::one());
                let payoffs: Vec<Rational> = (0..t.len())
                    .map(|k| (0..t.len()).map(|j| &w[j] * a.get(j, k)).sum())
                    .collect();
                assert!((0..t.len()).all(|k| payoffs[k] >= *a.get(d.dominated, k)));
                assert!((0..t.len()).any(|k| payoffs[k] > *a.get(d.dominated, k)));
            }
        }
    }

    #[test]
    fn polytope_of_a_degenerate_matrix() {
        // Zero game: every distribution is an equilibrium.
        let p = EquilibriumPolytope::of_matrix(&RationalMatrix::zeros(3, 3));
        assert_eq!(p.kernel_dim, 3);
        assert_eq!(p.vertices.len(), 3);
        assert_eq!(
            p.relative_interior_point.as_ref().unwrap(),
            &ProbabilityVector::uniform(3)
        );
        let ties = worst_case_equilibrium(&p, WorstCaseCriterion::MinTies).unwrap();
        assert_eq!(ties.exact().unwrap(), &ProbabilityVector::uniform(3));
        let ent = worst_case_equilibrium(&p, WorstCaseCriterion::MaxEntropy).unwrap();
        assert!(!ent.is_exact());
        for x in ent.to_f64() {
            assert!((x - 1.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn min_ties_on_an_edge() {
        // Segment between (1,0,0) and (0,1/2,1/2): minimum of Σv² at λ = 1/3.
        let verts = vec![
            ProbabilityVector::new(vec![q(1, 1), q(0, 1), q(0, 1)]).unwrap(),
            ProbabilityVector::new(vec![q(0, 1), q(1, 2), q(1, 2)]).unwrap(),
        ];
        let v = min_square_sum(&verts);
        assert_eq!(v.entries(), &[q(1, 3), q(1, 3), q(1, 3)]);
    }

    #[test]
    fn empty_polytope_has_no_worst_case() {
        let p = equilibrium_polytope(&payoff_matrix(&rps_well()));
        assert_eq!(
            worst_case_equilibrium(&p, WorstCaseCriterion::MinTies),
            Err(EquilibriumError::EmptyPolytope)
        );
    }

    #[test]
    fn probability_vectors_validate() {
        assert!(ProbabilityVector::new(vec![q(1, 2), q(1, 2)]).is_ok());
        assert!(ProbabilityVector::new(vec![q(1, 2), q(1, 3)]).is_err());
        assert!(ProbabilityVector::new(vec![q(3, 2), q(-1, 2)]).is_err());
        let json = serde_json::to_string(&ProbabilityVector::uniform(2)).unwrap();
        assert_eq!(json, r#"["1/2","1/2"]"#);
        assert!(serde_json::from_str::<ProbabilityVector>(r#"["1/2","1/3"]"#).is_err());
    }
}
