//! Direct loop over the defining sum of `W(D)`, used as an oracle.
//!
//! Indices are bound in circle order (`c_0, a_0, c_1, a_1, ...`) and a branch
//! is dropped as soon as a fully bound factor vanishes. Nothing here shares
//! code with the sweep or the greedy contractor.

use num_traits::{One, Zero};

use super::check_dims;
use crate::chord::ChordDiagram;
use crate::error::{Error, Result};
use crate::killing::KillingData;
use crate::lie_algebra::StructureConstants;
use crate::linalg::Rational;

/// Largest `n^{4m}` the oracle accepts by default.
pub const DEFAULT_NAIVE_BUDGET: u128 = 1_000_000_000_000;

pub fn evaluate_naive(d: &ChordDiagram, sc: &StructureConstants, kd: &KillingData) -> Result<Rational> {
    evaluate_naive_with_budget(d, sc, kd, DEFAULT_NAIVE_BUDGET)
}

struct Dense<'a> {
    n: usize,
    mu: Vec<Rational>,
    theta: &'a crate::linalg::RationalMatrix,
    d: &'a ChordDiagram,
}

impl Dense<'_> {
    fn mu(&self, a: usize, c: usize, out: usize) -> &Rational {
        &self.mu[(a * self.n + c) * self.n + out]
    }

    /// Binds `a_p` then `c_{p+1}` for position `p`.
    fn walk(&self, p: usize, c: &mut [usize], a: &mut [usize], acc: Rational, total: &mut Rational) {
        let len = self.d.points();
        if p == len {
            *total += acc;
            return;
        }
        let q = self.d.partner(p);
        for ap in 0..self.n {
            let mut with_theta = acc.clone();
            if q < p {
                let t = &self.theta[(a[q], ap)];
                if t.is_zero() {
                    continue;
                }
                with_theta *= t;
            }
            a[p] = ap;
            let next_range = if p + 1 == len { c[0]..c[0] + 1 } else { 0..self.n };
            for cn in next_range {
                let m = self.mu(ap, c[p], cn);
                if m.is_zero() {
                    continue;
                }
                if p + 1 < len {
                    c[p + 1] = cn;
                }
                self.walk(p + 1, c, a, &with_theta * m, total);
            }
        }
    }
}

pub fn evaluate_naive_with_budget(
    d: &ChordDiagram,
    sc: &StructureConstants,
    kd: &KillingData,
    budget: u128,
) -> Result<Rational> {
    check_dims(sc, kd)?;
    let n = sc.dim();
    let exponent = 4 * d.chords() as u32;
    match (n as u128).checked_pow(exponent) {
        Some(size) if size <= budget => {}
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "naive loop needs {n}^{exponent} iterations, budget is {budget}"
            )))
        }
    }
    let mut mu = vec![Rational::zero(); n * n * n];
    for a in 0..n {
        for c in 0..n {
            for out in 0..n {
                mu[(a * n + c) * n + out] = sc.get(a, c, out);
            }
        }
    }
    let dense = Dense {
        n,
        mu,
        theta: &kd.theta,
        d,
    };
    let len = d.points();
    let mut c = vec![0; len];
    let mut a = vec![0; len];
    let mut total = Rational::zero();
    for c0 in 0..n {
        c[0] = c0;
        dense.walk(0, &mut c, &mut a, Rational::one(), &mut total);
    }
    Ok(total)
}
