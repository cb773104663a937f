//! Exact phase-one simplex over the rationals, Bland's rule.
//!
//! Only feasibility of `{x >= 0 : A x = b}` is needed; Bland's pivoting rule
//! guarantees termination without any numeric tolerance.

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

/// True iff `A x = b` has a solution with `x >= 0`.
pub(crate) fn has_nonnegative_solution(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let m = a.len();
    debug_assert_eq!(m, b.len());
    let n = a.first().map_or(0, Vec::len);

    // Tableau rows: [original vars | artificial vars | rhs], rhs >= 0.
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let mut t: Vec<Rat> = if b[i].is_negative() {
            row.iter().map(|x| -x).collect()
        } else {
            row.clone()
        };
        t.resize(n + m + 1, Rat::zero());
        t[n + i] = Rat::one();
        t[n + m] = b[i].abs();
        rows.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase-one objective: minimize the sum of artificials. Reduced costs of
    // the original columns start at -sum of their rows; artificials at 0.
    let mut obj = vec![Rat::zero(); n + m + 1];
    for row in &rows {
        for j in 0..n {
            let v = row[j].clone();
            obj[j] -= v;
        }
        let rhs = row[n + m].clone();
        obj[n + m] -= rhs;
    }

    // Bland: entering = lowest-index column with negative reduced cost.
    while let Some(entering) = (0..n + m).find(|&j| obj[j].is_negative()) {
        // Ratio test; ties broken by the lowest basic variable index.
        let mut leaving: Option<(usize, Rat)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row[entering].is_positive() {
                continue;
            }
            let ratio = &row[n + m] / &row[entering];
            match &leaving {
                None => leaving = Some((i, ratio)),
                Some((best, best_ratio)) => {
                    if ratio < *best_ratio || (ratio == *best_ratio && basis[i] < basis[*best]) {
                        leaving = Some((i, ratio));
                    }
                }
            }
        }
        let Some((pivot_row, _)) = leaving else {
            // Unbounded phase-one problem cannot happen: the objective is
            // bounded below by zero.
            debug_assert!(false, "phase-one simplex unbounded");
            return false;
        };

        let pivot = rows[pivot_row][entering].clone();
        for v in rows[pivot_row].iter_mut() {
            *v /= &pivot;
        }
        let pivot_vals = rows[pivot_row].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pivot_row || row[entering].is_zero() {
                continue;
            }
            let factor = row[entering].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_vals) {
                let sub = &factor * pv;
                *v -= sub;
            }
        }
        if !obj[entering].is_zero() {
            let factor = obj[entering].clone();
            for (v, pv) in obj.iter_mut().zip(&pivot_vals) {
                let sub = &factor * pv;
                *v -= sub;
            }
        }
        basis[pivot_row] = entering;
    }

    // Feasible iff all artificials were driven to zero: the tracked objective
    // value is -(sum of artificials).
    obj[n + m].is_zero()
}

/// True iff `x` is a convex combination of `generators`.
pub(crate) fn in_convex_hull(x: &[Rat], generators: &[&Vec<Rat>]) -> bool {
    if generators.is_empty() {
        return false;
    }
    let d = x.len();
    let mut a: Vec<Vec<Rat>> = (0..d)
        .map(|i| generators.iter().map(|g| g[i].clone()).collect())
        .collect();
    a.push(vec![Rat::one(); generators.len()]);
    let mut b: Vec<Rat> = x.to_vec();
    b.push(Rat::one());
    has_nonnegative_solution(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn pt(coords: &[i64]) -> Vec<Rat> {
        coords.iter().map(|&c| rat_int(c)).collect()
    }

    #[test]
    fn midpoint_is_in_hull() {
        let a = pt(&[0, 0]);
        let b = pt(&[1, 0]);
        let x = vec![rat(1, 2), rat_int(0)];
        assert!(in_convex_hull(&x, &[&a, &b]));
    }

    #[test]
    fn outside_point_is_not() {
        let a = pt(&[0, 0]);
        let b = pt(&[1, 0]);
        assert!(!in_convex_hull(&pt(&[2, 0]), &[&a, &b]));
        assert!(!in_convex_hull(&pt(&[0, 1]), &[&a, &b]));
    }

    #[test]
    fn vertex_of_triangle_is_not_combination_of_others() {
        let a = pt(&[0, 0]);
        let b = pt(&[2, 0]);
        let c = pt(&[1, 1]);
        assert!(!in_convex_hull(&a, &[&b, &c]));
        assert!(in_convex_hull(&pt(&[1, 0]), &[&a, &b, &c]));
    }

    #[test]
    fn interior_rational_point() {
        let a = pt(&[0, 0]);
        let b = pt(&[2, 0]);
        let c = pt(&[1, 1]);
        let x = vec![rat_int(1), rat(1, 3)];
        assert!(in_convex_hull(&x, &[&a, &b, &c]));
    }

    #[test]
    fn infeasible_equality_system() {
        // x1 + x2 = 1, x1 + x2 = 2 cannot both hold.
        let a = vec![vec![rat_int(1), rat_int(1)], vec![rat_int(1), rat_int(1)]];
        assert!(!has_nonnegative_solution(&a, &[rat_int(1), rat_int(2)]));
    }

    #[test]
    fn negativity_blocks_solution() {
        // x = -1 has no nonnegative solution.
        let a = vec![vec![rat_int(1)]];
        assert!(!has_nonnegative_solution(&a, &[rat_int(-1)]));
        assert!(has_nonnegative_solution(&a, &[rat_int(1)]));
    }
}
