//! Exact Fourier–Motzkin elimination for systems `a . y >= b`.
//!
//! Derived inequalities carry the set of original rows they were combined
//! from; after `k` eliminations a row whose history exceeds `k + 1` is
//! dropped (Chernikov's rule). Feasible systems are back-substituted to an
//! explicit point, which is re-checked against the original rows.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Inequality {
    pub fn new(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Inequality { coeffs, rhs }
    }

    pub fn holds_at(&self, y: &[BigRational]) -> bool {
        let lhs: BigRational = self.coeffs.iter().zip(y).map(|(a, b)| a * b).sum();
        lhs >= self.rhs
    }
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
    history: BTreeSet<usize>,
}

impl Row {
    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalize(&mut self) {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c /= &lead;
            }
            self.rhs /= &lead;
        }
    }
}

enum Step {
    Infeasible,
    Rows(Vec<Row>),
}

/// Returns a point satisfying every inequality, or `None` if there is none.
pub fn find_point(system: &[Inequality], nvars: usize) -> Option<Vec<BigRational>> {
    for prune in [true, false] {
        match solve(system, nvars, prune) {
            Outcome::Point(y) if system.iter().all(|ineq| ineq.holds_at(&y)) => return Some(y),
            // a derived contradiction is a valid certificate whether or not rows were pruned
            Outcome::Infeasible => return None,
            _ => continue,
        }
    }
    None
}

enum Outcome {
    Infeasible,
    Point(Vec<BigRational>),
    BackSubstitutionFailed,
}

fn solve(system: &[Inequality], nvars: usize, prune: bool) -> Outcome {
    let initial: Vec<Row> = system
        .iter()
        .enumerate()
        .map(|(i, ineq)| {
            debug_assert_eq!(ineq.coeffs.len(), nvars);
            Row { coeffs: ineq.coeffs.clone(), rhs: ineq.rhs.clone(), history: BTreeSet::from([i]) }
        })
        .collect();
    let mut levels = match tidy(initial) {
        Step::Infeasible => return Outcome::Infeasible,
        Step::Rows(rows) => vec![rows],
    };
    for (eliminated, var) in (0..nvars).rev().enumerate() {
        let current = levels.last().expect("at least one level");
        let next = eliminate(current, var, if prune { Some(eliminated + 1) } else { None });
        match tidy(next) {
            Step::Infeasible => return Outcome::Infeasible,
            Step::Rows(rows) => levels.push(rows),
        }
    }
    // levels[j] still involves variables 0..nvars-j
    let mut y = vec![BigRational::zero(); nvars];
    for var in 0..nvars {
        let rows = &levels[nvars - 1 - var];
        match pick_value(rows, var, &y) {
            Some(v) => y[var] = v,
            None => return Outcome::BackSubstitutionFailed,
        }
    }
    Outcome::Point(y)
}

fn eliminate(rows: &[Row], var: usize, history_cap: Option<usize>) -> Vec<Row> {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut out = Vec::new();
    for row in rows {
        let c = &row.coeffs[var];
        if c.is_positive() {
            lower.push(row);
        } else if c.is_negative() {
            upper.push(row);
        } else {
            out.push(row.clone());
        }
    }
    for lo in &lower {
        for up in &upper {
            let history: BTreeSet<usize> = lo.history.union(&up.history).copied().collect();
            if let Some(cap) = history_cap {
                if history.len() > cap + 1 {
                    continue;
                }
            }
            let wl = -up.coeffs[var].clone();
            let wu = lo.coeffs[var].clone();
            let coeffs: Vec<BigRational> = lo.coeffs.iter().zip(&up.coeffs).map(|(a, b)| a * &wl + b * &wu).collect();
            let rhs = &lo.rhs * &wl + &up.rhs * &wu;
            out.push(Row { coeffs, rhs, history });
        }
    }
    out
}

/// Normalises rows, detects contradictions among constant rows and keeps the
/// strongest copy of rows with equal coefficient vectors.
fn tidy(rows: Vec<Row>) -> Step {
    let mut kept: Vec<Row> = Vec::with_capacity(rows.len());
    for mut row in rows {
        if row.coeffs.iter().all(|c| c.is_zero()) {
            if row.rhs.is_positive() {
                return Step::Infeasible;
            }
            continue;
        }
        row.normalize();
        match kept.iter_mut().find(|k| k.coeffs == row.coeffs) {
            Some(k) => {
                if row.rhs > k.rhs || (row.rhs == k.rhs && row.history.len() < k.history.len()) {
                    *k = row;
                }
            }
            None => kept.push(row),
        }
    }
    Step::Rows(kept)
}

/// Chooses `y[var]` inside the bounds implied by `rows` given `y[..var]`;
/// prefers zero, then the integer closest to zero, then the lower bound.
fn pick_value(rows: &[Row], var: usize, y: &[BigRational]) -> Option<BigRational> {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for row in rows {
        let c = &row.coeffs[var];
        let rest: BigRational = (0..var).map(|j| &row.coeffs[j] * &y[j]).sum();
        if c.is_zero() {
            if rest < row.rhs {
                return None;
            }
            continue;
        }
        let bound = (&row.rhs - rest) / c;
        if c.is_positive() {
            if lo.as_ref().is_none_or(|l| bound > *l) {
                lo = Some(bound);
            }
        } else if hi.as_ref().is_none_or(|h| bound < *h) {
            hi = Some(bound);
        }
    }
    let zero = BigRational::zero();
    let ok = |v: &BigRational| lo.as_ref().is_none_or(|l| v >= l) && hi.as_ref().is_none_or(|h| v <= h);
    if ok(&zero) {
        return Some(zero);
    }
    match (&lo, &hi) {
        (Some(l), Some(h)) if l > h => None,
        (Some(l), _) if l.is_positive() => {
            let c = l.ceil();
            Some(if ok(&c) { c } else { l.clone() })
        }
        (_, Some(h)) => {
            let f = h.floor();
            Some(if ok(&f) { f } else { h.clone() })
        }
        (Some(l), None) => Some(l.ceil()),
        (None, None) => Some(zero),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ineq(a: &[i64], b: i64) -> Inequality {
        Inequality::new(a.iter().map(|&x| q(x)).collect(), q(b))
    }

    #[test]
    fn box_is_feasible() {
        let sys = [ineq(&[1, 0], 1), ineq(&[-1, 0], -3), ineq(&[0, 1], -2), ineq(&[0, -1], -2)];
        let y = find_point(&sys, 2).unwrap();
        assert!(sys.iter().all(|s| s.holds_at(&y)));
        assert_eq!(y, vec![q(1), q(0)]);
    }

    #[test]
    fn contradiction_is_infeasible() {
        let sys = [ineq(&[1, 1], 1), ineq(&[-1, 0], 0), ineq(&[0, -1], 0)];
        assert!(find_point(&sys, 2).is_none());
    }

    #[test]
    fn constant_rows() {
        assert!(find_point(&[ineq(&[0], 1)], 1).is_none());
        assert!(find_point(&[ineq(&[0], -1)], 1).is_some());
        assert_eq!(find_point(&[], 0), Some(vec![]));
    }

    #[test]
    fn thin_strip_needs_fraction() {
        // 2y >= 1, 2y <= 1
        let sys = [ineq(&[2], 1), ineq(&[-2], -1)];
        let y = find_point(&sys, 1).unwrap();
        assert_eq!(y[0], BigRational::new(1.into(), 2.into()));
    }
}
