//! Independent oracles for exact values: each quantity is recomputed by a
//! different route and compared exactly.

use tourneylab::construct::{imbalanced_equilibrium_closed_form, imbalanced_rps};
use tourneylab::equilibrium::{equilibrium_polytope, payoff_matrix};
use tourneylab::imbalance::{nash_entropy, nash_ties, ui_entropy, ui_variance, uniform_profile};
use tourneylab::matrix::RationalMatrix;
use tourneylab::rational::{is_odd_square, ParityClass, Rational};
use tourneylab::tournament::{enumerate_tournaments, Tournament};

fn q(a: i64, b: i64) -> Rational {
    Rational::ratio(a, b)
}

/// Pfaffian through the Schur-complement identity
/// `Pf [[A, C], [-Cᵀ, D]] = Pf(A) · Pf(D + Cᵀ A⁻¹ C)` with a 2×2 block `A`.
fn pfaffian_by_blocks(m: &RationalMatrix) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let Some(j) = (1..n).find(|&j| !m.get(0, j).is_zero()) else {
        return Rational::zero();
    };
    // Move j next to 0; a transposition of indices flips the sign.
    let mut order: Vec<usize> = (0..n).collect();
    order.swap(1, j);
    let sign = if j == 1 { Rational::one() } else { -Rational::one() };
    let p = m.submatrix(&order, &order);
    let a = p.get(0, 1).clone();
    let rest: Vec<usize> = (2..n).collect();
    let c = p.submatrix(&[0, 1], &rest);
    let d = p.submatrix(&rest, &rest);
    let a_inv = RationalMatrix::from_rows(vec![
        vec![Rational::zero(), -a.recip().unwrap()],
        vec![a.recip().unwrap(), Rational::zero()],
    ])
    .unwrap();
    let correction = c.transpose().mul(&a_inv).unwrap().mul(&c).unwrap();
    let schur = d.add(&correction).unwrap();
    sign * a * pfaffian_by_blocks(&schur)
}

/// Leibniz expansion over all permutations.
fn determinant_by_permutations(m: &RationalMatrix) -> Rational {
    fn go(
        m: &RationalMatrix,
        row: usize,
        used: &mut Vec<bool>,
        sign: i64,
        acc: Rational,
        total: &mut Rational,
    ) {
        let n = m.rows();
        if row == n {
            *total += &(acc * Rational::from(sign));
            return;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            // inversions contributed by placing c after the earlier rows
            let inv = used[c + 1..].iter().filter(|&&u| u).count() as i64;
            used[c] = true;
            let s = if inv % 2 == 0 { sign } else { -sign };
            go(m, row + 1, used, s, &acc * m.get(row, c), total);
            used[c] = false;
        }
    }
    let mut total = Rational::zero();
    go(m, 0, &mut vec![false; m.rows()], 1, Rational::one(), &mut total);
    total
}

#[test]
fn pfaffian_recursion_agrees_with_block_formula_on_all_small_tournaments() {
    for n in [2, 4, 6] {
        for t in enumerate_tournaments(n, false)
            .unwrap()
            .step_by(if n == 6 { 37 } else { 1 })
        {
            let a = payoff_matrix(&t);
            let pf = a.as_matrix().pfaffian().unwrap();
            assert_eq!(pf, pfaffian_by_blocks(a.as_matrix()), "{t:?}");
            assert_eq!(pf.parity(), ParityClass::Odd);
        }
    }
}

#[test]
fn pfaffian_block_formula_on_rational_matrices() {
    let upper = [
        q(3, 5),
        q(-1, 7),
        q(2, 1),
        q(5, 3),
        q(0, 1),
        q(-9, 11),
        q(1, 2),
        q(4, 9),
        q(7, 5),
        q(-2, 3),
        q(1, 13),
        q(6, 1),
        q(-3, 4),
        q(8, 15),
        q(1, 1),
    ];
    let mut k = 0;
    let mut rows = vec![vec![Rational::zero(); 6]; 6];
    for i in 0..6 {
        for j in i + 1..6 {
            rows[i][j] = upper[k].clone();
            rows[j][i] = -upper[k].clone();
            k += 1;
        }
    }
    let m = RationalMatrix::from_rows(rows).unwrap();
    let pf = m.pfaffian().unwrap();
    assert_eq!(pf, pfaffian_by_blocks(&m));
    assert_eq!(&pf * &pf, m.determinant().unwrap());
}

#[test]
fn four_tournament_determinants_are_odd_squares() {
    let mut count = 0;
    for t in enumerate_tournaments(4, false).unwrap() {
        let a = payoff_matrix(&t);
        let det = a.as_matrix().determinant().unwrap();
        assert_eq!(det, determinant_by_permutations(a.as_matrix()));
        assert!(is_odd_square(&det.to_integer().unwrap()));
        assert!(det >= 1);
        count += 1;
    }
    assert_eq!(count, 64);
}

#[test]
fn bareiss_determinant_matches_leibniz_on_rational_input() {
    let m = RationalMatrix::from_rows(vec![
        vec![q(1, 2), q(2, 3), q(-1, 1), q(0, 1)],
        vec![q(5, 1), q(1, 7), q(3, 4), q(2, 1)],
        vec![q(-2, 9), q(0, 1), q(1, 1), q(1, 3)],
        vec![q(1, 1), q(1, 1), q(1, 5), q(-4, 1)],
    ])
    .unwrap();
    assert_eq!(m.determinant().unwrap(), determinant_by_permutations(&m));
}

#[test]
fn imbalanced_five_kernel_by_hand_reduction() {
    // Rows of A for r1, p1, r2, p2, s; (3, 3, 1, 1, 1) is checked row by row.
    let a = payoff_matrix(&imbalanced_rps(2).unwrap());
    let expected = [
        [0, -1, 1, 1, 1],
        [1, 0, -1, -1, -1],
        [-1, 1, 0, -1, 1],
        [-1, 1, 1, 0, -1],
        [-1, 1, -1, 1, 0],
    ];
    for (i, row) in expected.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            assert_eq!(*a.get(i, j), Rational::from(v));
        }
        let dot: i64 = row.iter().zip([3, 3, 1, 1, 1]).map(|(x, y)| x * y).sum();
        assert_eq!(dot, 0);
    }
    let basis = a.as_matrix().kernel_basis();
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0], vec![q(1, 1), q(1, 1), q(1, 3), q(1, 3), q(1, 3)]);
}

#[test]
fn closed_form_equilibrium_matches_the_solver() {
    for n in 1..=10 {
        let p = equilibrium_polytope(&payoff_matrix(&imbalanced_rps(n).unwrap()));
        assert_eq!(
            p.unique_point(),
            Some(&imbalanced_equilibrium_closed_form(n).unwrap())
        );
    }
}

/// `Σ (w - l)² / (n (n-1)²)` straight from win counts.
fn variance_from_wins(t: &Tournament) -> Rational {
    let n = t.len() as i64;
    let s: i64 = (0..t.len())
        .map(|i| {
            let w = t.wins(i) as i64;
            let d = 2 * w - (n - 1);
            d * d
        })
        .sum();
    q(s, n * (n - 1) * (n - 1))
}

#[test]
fn construction_statistics() {
    let expected_var = [(2, q(1, 10)), (3, q(10, 63))];
    for (n, v) in expected_var {
        let t = imbalanced_rps(n).unwrap();
        assert_eq!(ui_variance(&uniform_profile(&t).unwrap()), v);
        assert_eq!(variance_from_wins(&t), v);
    }
    for n in 1..=10usize {
        let v = imbalanced_equilibrium_closed_form(n).unwrap();
        // 2 Σ 9^-i + 9^-n = 1/4 + (3/4) 9^-n
        let closed = q(1, 4) + q(3, 4) * q(1, 9).pow(n as u32);
        assert_eq!(nash_ties(&v, 2).unwrap(), closed);
        // -Σ v ln v = Σ_i 2 i 3^-i ln 3 + n 3^-n ln 3
        let h: f64 = (1..=n)
            .map(|i| 2.0 * i as f64 * 3f64.powi(-(i as i32)))
            .sum::<f64>()
            + n as f64 * 3f64.powi(-(n as i32));
        assert!((nash_entropy(&v) - h * 3f64.ln()).abs() < 1e-12);
    }
    assert_eq!(
        nash_ties(&imbalanced_equilibrium_closed_form(3).unwrap(), 2).unwrap(),
        q(61, 243)
    );
}

#[test]
fn construction_entropy_formula() {
    for n in 1..=10usize {
        let h = ui_entropy(&uniform_profile(&imbalanced_rps(n).unwrap()).unwrap());
        let m = (2 * n + 1) as f64;
        assert!((h - (m.ln() - 3.0 / m * 3f64.ln())).abs() < 1e-12, "n = {n}");
    }
}

#[test]
fn pairs_of_odd_rationals_follow_the_parity_table() {
    let odd = [q(1, 1), q(3, 5), q(-7, 9), q(11, 3)];
    let even = [q(0, 1), q(2, 7), q(-4, 3), q(6, 1)];
    for a in &odd {
        for b in &odd {
            assert_eq!((a * b).parity(), ParityClass::Odd);
            assert_eq!((a + b).parity(), ParityClass::Even);
        }
        for e in &even {
            assert_eq!((a + e).parity(), ParityClass::Odd);
            assert_eq!((a * e).parity(), ParityClass::Even);
        }
    }
    assert_eq!(q(1, 2).parity(), ParityClass::Undefined);
}
