//! Exact linear programming over the rationals.
//!
//! Dense two-phase simplex with Bland's rule, which cannot cycle. Sized for
//! the dominance questions asked about games with a handful of objects.

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

/// Maximizes `c·x` subject to `a x = b`, `x >= 0`.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m, "one right-hand side per constraint");
    assert!(a.iter().all(|row| row.len() == n), "constraint width mismatch");

    // Columns: n structural, m artificial, then the right-hand side.
    let width = n + m + 1;
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut t = vec![Rational::zero(); width];
        for j in 0..n {
            t[j] = if flip { -&row[j] } else { row[j].clone() };
        }
        t[n + i] = Rational::one();
        t[width - 1] = if flip { -&b[i] } else { b[i].clone() };
        tableau.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let mut phase1 = vec![Rational::zero(); n + m];
    for cost in phase1.iter_mut().skip(n) {
        *cost = -Rational::one();
    }
    let all_cols: Vec<usize> = (0..n + m).collect();
    if !run(&mut tableau, &mut basis, &phase1, &all_cols) {
        unreachable!("phase one is bounded above by zero");
    }
    let infeasibility: Rational = basis
        .iter()
        .zip(&tableau)
        .filter(|(&bv, _)| bv >= n)
        .map(|(_, row)| row[width - 1].clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    // Pivot remaining artificials out; rows where that is impossible are
    // linear combinations of the others and are dropped.
    let mut r = 0;
    while r < tableau.len() {
        if basis[r] >= n {
            match (0..n).find(|&j| !tableau[r][j].is_zero()) {
                Some(j) => pivot(&mut tableau, &mut basis, r, j),
                None => {
                    tableau.remove(r);
                    basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut phase2 = c.to_vec();
    phase2.extend(std::iter::repeat_n(Rational::zero(), m));
    let structural: Vec<usize> = (0..n).collect();
    if !run(&mut tableau, &mut basis, &phase2, &structural) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in tableau.iter().zip(&basis) {
        if bv < n {
            x[bv] = row[width - 1].clone();
        }
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    LpOutcome::Optimal { x, value }
}

/// Iterates to optimality over `cols`; false when the objective is unbounded.
fn run(tableau: &mut [Vec<Rational>], basis: &mut [usize], cost: &[Rational], cols: &[usize]) -> bool {
    loop {
        let entering = cols.iter().copied().find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut reduced = cost[j].clone();
            for (row, &bv) in tableau.iter().zip(basis.iter()) {
                if !row[j].is_zero() {
                    reduced -= &(&cost[bv] * &row[j]);
                }
            }
            reduced.is_positive()
        });
        let Some(j) = entering else {
            return true;
        };
        let rhs = tableau.first().map_or(0, |row| row.len() - 1);
        let mut leaving: Option<(usize, Rational)> = None;
        for (i, row) in tableau.iter().enumerate() {
            if !row[j].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[j];
            let better = match &leaving {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leaving = Some((i, ratio));
            }
        }
        let Some((i, _)) = leaving else {
            return false;
        };
        pivot(tableau, basis, i, j);
    }
}

fn pivot(tableau: &mut [Vec<Rational>], basis: &mut [usize], r: usize, c: usize) {
    let p = tableau[r][c].clone();
    for v in tableau[r].iter_mut() {
        *v = &*v / &p;
    }
    let pivot_row = tableau[r].clone();
    for (i, row) in tableau.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &(&f * pv);
            }
        }
    }
    basis[r] = c;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn rows(data: &[&[i64]]) -> Vec<Vec<Rational>> {
        data.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn textbook_optimum() {
        // max 3x + 2y, x + y + s1 = 4, x + 3y + s2 = 6
        let c = [q(3), q(2), q(0), q(0)];
        let a = rows(&[&[1, 1, 1, 0], &[1, 3, 0, 1]]);
        let b = [q(4), q(6)];
        match maximize(&c, &a, &b) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, q(12));
                assert_eq!(x[0], q(4));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fractional_vertex() {
        // max x + y, 2x + y + s1 = 3, x + 2y + s2 = 3
        let c = [q(1), q(1), q(0), q(0)];
        let a = rows(&[&[2, 1, 1, 0], &[1, 2, 0, 1]]);
        match maximize(&c, &a, &[q(3), q(3)]) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, q(2));
                assert_eq!(x[0], q(1));
                assert_eq!(x[1], q(1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x + y = -1 with x, y >= 0
        let a = rows(&[&[1, 1]]);
        assert_eq!(maximize(&[q(0), q(0)], &a, &[q(-1)]), LpOutcome::Infeasible);
        // max x, x - y = 0
        let a = rows(&[&[1, -1]]);
        assert_eq!(maximize(&[q(1), q(0)], &a, &[q(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = rows(&[&[1, 1], &[2, 2]]);
        match maximize(&[q(1), q(0)], &a, &[q(1), q(2)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_problem_terminates() {
        // A classic cycling example for the largest-coefficient rule.
        let c: Vec<Rational> = [10, -57, -9, -24, 0, 0, 0].iter().map(|&v| q(v)).collect();
        let half = Rational::ratio(1, 2);
        let a = vec![
            vec![
                half.clone(),
                Rational::ratio(-11, 2),
                Rational::ratio(-5, 2),
                q(9),
                q(1),
                q(0),
                q(0),
            ],
            vec![
                half,
                Rational::ratio(-3, 2),
                Rational::ratio(-1, 2),
                q(1),
                q(0),
                q(1),
                q(0),
            ],
            vec![q(1), q(0), q(0), q(0), q(0), q(0), q(1)],
        ];
        match maximize(&c, &a, &[q(0), q(0), q(1)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1)),
            other => panic!("{other:?}"),
        }
    }
}
