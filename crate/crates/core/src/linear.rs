//! Fourier–Motzkin elimination over exact integers.
//!
//! Systems are `a · x >= b` with integer coefficients. Variables are
//! eliminated in index order; derived rows carry the set of original rows
//! they combine, and rows whose set exceeds `k + 1` after `k` eliminations
//! are dropped (Chernikov's rule). An infeasible answer is always backed by
//! a derived row `0 >= b` with `b > 0`. A feasible answer is produced by
//! back-substitution and re-checked against the original rows.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EliminationError {
    #[error("elimination exceeded {limit} rows while removing variable {variable}")]
    TooManyRows { limit: usize, variable: usize },
    #[error("row has {found} coefficients, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("back-substitution produced an assignment violating row {0}")]
    Inconsistent(usize),
}

/// `coeffs · x >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

impl Inequality {
    pub fn new(coeffs: Vec<BigInt>, rhs: BigInt) -> Self {
        Inequality { coeffs, rhs }
    }

    pub fn from_i64(coeffs: &[i64], rhs: i64) -> Self {
        Inequality { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(), rhs: BigInt::from(rhs) }
    }

    pub fn holds_at(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self
            .coeffs
            .iter()
            .zip(x)
            .map(|(a, v)| BigRational::from_integer(a.clone()) * v)
            .sum();
        lhs >= BigRational::from_integer(self.rhs.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible,
}

#[derive(Clone)]
struct Row {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
    origin: Vec<u64>,
}

impl Row {
    fn origin_size(&self) -> u32 {
        self.origin.iter().map(|w| w.count_ones()).sum()
    }

    fn normalize(&mut self) {
        let g = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.coeffs {
                *c /= &g;
            }
            self.rhs /= &g;
        }
    }
}

pub const DEFAULT_ROW_LIMIT: usize = 250_000;

/// Decides feasibility of `rows` in `vars` real variables.
pub fn solve(vars: usize, rows: &[Inequality], row_limit: usize) -> Result<Feasibility, EliminationError> {
    let words = rows.len().div_ceil(64).max(1);
    let mut current = Vec::with_capacity(rows.len());
    for (idx, r) in rows.iter().enumerate() {
        if r.coeffs.len() != vars {
            return Err(EliminationError::Arity { expected: vars, found: r.coeffs.len() });
        }
        let mut origin = vec![0u64; words];
        origin[idx / 64] |= 1 << (idx % 64);
        let mut row = Row { coeffs: r.coeffs.clone(), rhs: r.rhs.clone(), origin };
        row.normalize();
        current.push(row);
    }

    // stages[j] holds the system after eliminating variables 0..j.
    let mut stages: Vec<Vec<Row>> = Vec::with_capacity(vars + 1);
    match prune(current) {
        Some(rows) => stages.push(rows),
        None => return Ok(Feasibility::Infeasible),
    }

    for j in 0..vars {
        let stage = stages.last().expect("at least one stage");
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for row in stage {
            if row.coeffs[j].is_positive() {
                pos.push(row);
            } else if row.coeffs[j].is_negative() {
                neg.push(row);
            } else {
                next.push(row.clone());
            }
        }
        let origin_cap = (j + 2) as u32;
        for p in &pos {
            for q in &neg {
                let fp = -&q.coeffs[j];
                let fq = p.coeffs[j].clone();
                let origin: Vec<u64> = p.origin.iter().zip(&q.origin).map(|(a, b)| a | b).collect();
                let mut row = Row {
                    coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| a * &fp + b * &fq).collect(),
                    rhs: &p.rhs * &fp + &q.rhs * &fq,
                    origin,
                };
                if row.origin_size() > origin_cap {
                    continue;
                }
                debug_assert!(row.coeffs[j].is_zero());
                row.normalize();
                next.push(row);
                if next.len() > row_limit {
                    return Err(EliminationError::TooManyRows { limit: row_limit, variable: j });
                }
            }
        }
        match prune(next) {
            Some(rows) => stages.push(rows),
            None => return Ok(Feasibility::Infeasible),
        }
    }

    let x = back_substitute(vars, &stages);
    if let Some(bad) = rows.iter().position(|r| !r.holds_at(&x)) {
        return Err(EliminationError::Inconsistent(bad));
    }
    Ok(Feasibility::Feasible(x))
}

/// Drops constant rows (reporting `None` on a contradiction) and keeps only
/// the strongest row per coefficient vector.
fn prune(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: HashMap<Vec<BigInt>, Row> = HashMap::new();
    let mut order = Vec::new();
    for row in rows {
        if row.coeffs.iter().all(Zero::is_zero) {
            if row.rhs.is_positive() {
                return None;
            }
            continue;
        }
        match best.get_mut(&row.coeffs) {
            Some(existing) => {
                if row.rhs > existing.rhs {
                    *existing = row;
                }
            }
            None => {
                order.push(row.coeffs.clone());
                best.insert(row.coeffs.clone(), row);
            }
        }
    }
    Some(order.into_iter().map(|k| best.remove(&k).expect("kept row")).collect())
}

fn back_substitute(vars: usize, stages: &[Vec<Row>]) -> Vec<BigRational> {
    let mut x = vec![BigRational::zero(); vars];
    for j in (0..vars).rev() {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for row in &stages[j] {
            let a = &row.coeffs[j];
            if a.is_zero() {
                continue;
            }
            let rest: BigRational = ((j + 1)..vars)
                .map(|t| BigRational::from_integer(row.coeffs[t].clone()) * &x[t])
                .sum();
            let bound = (BigRational::from_integer(row.rhs.clone()) - rest) / BigRational::from_integer(a.clone());
            if a.is_positive() {
                lower = Some(match lower {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                upper = Some(match upper {
                    Some(u) if u <= bound => u,
                    _ => bound,
                });
            }
        }
        x[j] = match (lower, upper) {
            (Some(l), _) => l,
            (None, Some(u)) => u.min(BigRational::zero()),
            (None, None) => BigRational::zero(),
        };
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn box_is_feasible() {
        let rows = [
            Inequality::from_i64(&[1, 0], 1),
            Inequality::from_i64(&[-1, 0], -3),
            Inequality::from_i64(&[0, 1], 2),
            Inequality::from_i64(&[1, -1], -5),
        ];
        match solve(2, &rows, DEFAULT_ROW_LIMIT).unwrap() {
            Feasibility::Feasible(x) => assert!(rows.iter().all(|r| r.holds_at(&x))),
            Feasibility::Infeasible => panic!("box should be feasible"),
        }
    }

    #[test]
    fn contradictory_pair() {
        let rows = [Inequality::from_i64(&[1, 1], 3), Inequality::from_i64(&[-1, -1], -2)];
        assert_eq!(solve(2, &rows, DEFAULT_ROW_LIMIT).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn fractional_solution() {
        // 2x >= 1, -2x >= -1  =>  x = 1/2
        let rows = [Inequality::from_i64(&[2], 1), Inequality::from_i64(&[-2], -1)];
        assert_eq!(solve(1, &rows, DEFAULT_ROW_LIMIT).unwrap(), Feasibility::Feasible(vec![q(1, 2)]));
    }

    #[test]
    fn constant_contradiction_detected_up_front() {
        let rows = [Inequality::from_i64(&[0, 0], 1)];
        assert_eq!(solve(2, &rows, DEFAULT_ROW_LIMIT).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn arity_mismatch() {
        let rows = [Inequality::from_i64(&[1], 0)];
        assert!(matches!(solve(2, &rows, DEFAULT_ROW_LIMIT), Err(EliminationError::Arity { .. })));
    }

    #[test]
    fn row_limit_enforced() {
        let mut rows = Vec::new();
        for i in 0..20 {
            rows.push(Inequality::from_i64(&[1, i, -i], i));
            rows.push(Inequality::from_i64(&[-1, i, i + 1], -i));
        }
        assert!(matches!(solve(3, &rows, 10), Err(EliminationError::TooManyRows { .. })));
    }
}
