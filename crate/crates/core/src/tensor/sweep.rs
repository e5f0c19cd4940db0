//! Transfer-matrix sweep around the circle of a chord diagram.
//!
//! The state is a sparse map from `(c_first, c_current, open chord indices...)`
//! to a scalar. Absorbing the μ at a chord's first endpoint pushes the chord
//! index `a_p`; at the second endpoint the pre-contracted
//! `ν^{a}_{c}^{c'} = Σ_b θ^{ab} μ_{bc}^{c'}` consumes it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use rustc_hash::FxHashMap;

use super::{check_dims, ChordAction, ContractionPlan, PlanStep, Scalar};
use crate::chord::ChordDiagram;
use crate::error::{Error, Result};
use crate::killing::KillingData;
use crate::lie_algebra::StructureConstants;
use crate::linalg::{common_denominator, rational_to_f64, Rational};

#[derive(Clone, Debug)]
struct Schedule {
    steps: Vec<(usize, ChordAction)>,
    peak_open: usize,
}

/// Visit order starting at `start`, with the slot each closing chord occupies.
fn schedule_from(d: &ChordDiagram, start: usize) -> Schedule {
    let len = d.points();
    let mut visited = vec![false; len];
    let mut open: Vec<usize> = Vec::new();
    let mut steps = Vec::with_capacity(len);
    let mut peak_open = 0;
    for offset in 0..len {
        let p = (start + offset) % len;
        let q = d.partner(p);
        let chord = p.min(q);
        if visited[q] {
            let slot = open.iter().position(|&c| c == chord).expect("opened earlier");
            open.remove(slot);
            steps.push((p, ChordAction::Close { slot }));
        } else {
            open.push(chord);
            peak_open = peak_open.max(open.len());
            steps.push((p, ChordAction::Open));
        }
        visited[p] = true;
    }
    Schedule { steps, peak_open }
}

/// The start position with the fewest simultaneously open chords.
fn best_schedule(d: &ChordDiagram) -> Schedule {
    (0..d.points())
        .map(|s| schedule_from(d, s))
        .min_by_key(|s| s.peak_open)
        .expect("at least one point")
}

pub(crate) fn plan_sweep(d: &ChordDiagram, n: usize) -> ContractionPlan {
    let schedule = best_schedule(d);
    let nf = n as f64;
    let m = d.chords();
    let mut width = 2usize;
    let mut cost = nf.powi(4); // forming ν
    let mut steps = Vec::with_capacity(schedule.steps.len());
    for &(position, action) in &schedule.steps {
        let branching = match action {
            ChordAction::Open => nf * nf,
            ChordAction::Close { .. } => nf,
        };
        cost += nf.powi(width as i32) * branching;
        width = match action {
            ChordAction::Open => width + 1,
            ChordAction::Close { .. } => width - 1,
        };
        steps.push(PlanStep::Absorb {
            position,
            action,
            width_after: width,
        });
    }
    ContractionPlan {
        dim: n,
        steps,
        peak_width: schedule.peak_open + 2,
        predicted_cost: cost,
        naive_cost: 3.0 * m as f64 * nf.powi(4 * m as i32),
    }
}

/// Sparse μ indexed by its second input, and ν indexed by `(a, c)`.
#[derive(Clone, Debug)]
struct Tables<S> {
    n: usize,
    /// `mu_by_second[c] = [(a, c', μ_{ac}^{c'})]`
    mu_by_second: Vec<Vec<(u32, u32, S)>>,
    /// `nu[a * n + c] = [(c', ν^a_c^{c'})]`
    nu: Vec<Vec<(u32, S)>>,
}

impl<S: Scalar> Tables<S> {
    fn build(n: usize, mu: &[(usize, usize, usize, S)], theta: &[(usize, usize, S)]) -> Self {
        let mut mu_by_second = vec![Vec::new(); n];
        let mut mu_by_first: Vec<Vec<(usize, usize, &S)>> = vec![Vec::new(); n];
        for (a, c, out, v) in mu {
            mu_by_second[*c].push((*a as u32, *out as u32, v.clone()));
            mu_by_first[*a].push((*c, *out, v));
        }
        let mut acc: BTreeMap<(usize, usize, usize), S> = BTreeMap::new();
        for (a, b, t) in theta {
            for &(c, out, v) in &mu_by_first[*b] {
                *acc.entry((*a, c, out)).or_insert_with(S::zero) += &(t.clone() * v);
            }
        }
        let mut nu = vec![Vec::new(); n * n];
        for ((a, c, out), v) in acc {
            if !v.is_zero() {
                nu[a * n + c].push((out as u32, v));
            }
        }
        Self { n, mu_by_second, nu }
    }

    fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tables<T> {
        Tables {
            n: self.n,
            mu_by_second: self
                .mu_by_second
                .iter()
                .map(|row| row.iter().map(|(a, o, v)| (*a, *o, f(v))).collect())
                .collect(),
            nu: self
                .nu
                .iter()
                .map(|row| row.iter().map(|(o, v)| (*o, f(v))).collect())
                .collect(),
        }
    }
}

fn mu_and_theta(sc: &StructureConstants, kd: &KillingData) -> (Vec<(usize, usize, usize, Rational)>, Vec<(usize, usize, Rational)>) {
    let mu = sc.full_entries();
    let n = sc.dim();
    let mut theta = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let t = &kd.theta[(a, b)];
            if !t.is_zero() {
                theta.push((a, b, t.clone()));
            }
        }
    }
    (mu, theta)
}

/// Mixed-radix packing of `[first, current, open...]`.
struct KeyCodec {
    n: u128,
}

const MAX_SLOTS: usize = 64;

impl KeyCodec {
    fn encode(&self, slots: &[u32]) -> u128 {
        slots.iter().rev().fold(0u128, |k, &s| k * self.n + s as u128)
    }

    fn decode(&self, mut key: u128, len: usize, out: &mut [u32; MAX_SLOTS]) {
        for slot in out.iter_mut().take(len) {
            *slot = (key % self.n) as u32;
            key /= self.n;
        }
    }
}

fn run_sweep<S: Scalar>(tables: &Tables<S>, schedule: &Schedule) -> Result<S> {
    let n = tables.n;
    let width = schedule.peak_open + 2;
    let fits = (n as u128).checked_pow(width as u32).is_some() && width <= MAX_SLOTS;
    if !fits {
        return Err(Error::BudgetExceeded(format!(
            "sweep state of width {width} over dimension {n} does not fit a 128-bit key"
        )));
    }
    let codec = KeyCodec { n: n as u128 };
    let mut states: FxHashMap<u128, S> = FxHashMap::default();
    for c in 0..n as u32 {
        states.insert(codec.encode(&[c, c]), S::one());
    }
    let mut len = 2usize;
    let mut slots = [0u32; MAX_SLOTS];
    let mut scratch = [0u32; MAX_SLOTS];
    for &(_, action) in &schedule.steps {
        let mut next: FxHashMap<u128, S> = FxHashMap::default();
        for (&key, val) in &states {
            codec.decode(key, len, &mut slots);
            let cur = slots[1] as usize;
            match action {
                ChordAction::Open => {
                    scratch[..len].copy_from_slice(&slots[..len]);
                    for (a, out, m) in &tables.mu_by_second[cur] {
                        scratch[1] = *out;
                        scratch[len] = *a;
                        let k = codec.encode(&scratch[..len + 1]);
                        *next.entry(k).or_insert_with(S::zero) += &(val.clone() * m);
                    }
                }
                ChordAction::Close { slot } => {
                    let idx = 2 + slot;
                    let a = slots[idx] as usize;
                    scratch[..idx].copy_from_slice(&slots[..idx]);
                    scratch[idx..len - 1].copy_from_slice(&slots[idx + 1..len]);
                    for (out, v) in &tables.nu[a * n + cur] {
                        scratch[1] = *out;
                        let k = codec.encode(&scratch[..len - 1]);
                        *next.entry(k).or_insert_with(S::zero) += &(val.clone() * v);
                    }
                }
            }
        }
        len = match action {
            ChordAction::Open => len + 1,
            ChordAction::Close { .. } => len - 1,
        };
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    debug_assert_eq!(len, 2);
    let mut total = S::zero();
    let mut keys: Vec<u128> = states.keys().copied().collect();
    keys.sort_unstable();
    for key in keys {
        codec.decode(key, 2, &mut slots);
        if slots[0] == slots[1] {
            total += &states[&key];
        }
    }
    Ok(total)
}

/// Exact evaluator with tables prepared once per algebra.
///
/// Runs over integers: μ and θ are scaled by the lcm of their denominators
/// and the result divided back at the end.
#[derive(Clone, Debug)]
pub struct DiagramEvaluator {
    tables: Tables<BigInt>,
    mu_scale: BigInt,
    theta_scale: BigInt,
}

impl DiagramEvaluator {
    pub fn new(sc: &StructureConstants, kd: &KillingData) -> Result<Self> {
        check_dims(sc, kd)?;
        let (mu, theta) = mu_and_theta(sc, kd);
        let mu_scale = common_denominator(mu.iter().map(|e| &e.3));
        let theta_scale = common_denominator(theta.iter().map(|e| &e.2));
        let to_int = |v: &Rational, s: &BigInt| (v * Rational::from_integer(s.clone())).to_integer();
        let mu_int: Vec<_> = mu
            .iter()
            .map(|(a, b, c, v)| (*a, *b, *c, to_int(v, &mu_scale)))
            .collect();
        let theta_int: Vec<_> = theta
            .iter()
            .map(|(a, b, v)| (*a, *b, to_int(v, &theta_scale)))
            .collect();
        Ok(Self {
            tables: Tables::build(sc.dim(), &mu_int, &theta_int),
            mu_scale,
            theta_scale,
        })
    }

    pub fn dim(&self) -> usize {
        self.tables.n
    }

    pub fn evaluate(&self, d: &ChordDiagram) -> Result<Rational> {
        let raw = run_sweep(&self.tables, &best_schedule(d))?;
        let m = d.chords();
        let denom = Pow::pow(&self.mu_scale, 2 * m) * Pow::pow(&self.theta_scale, m);
        Ok(Rational::new(raw, denom))
    }
}

/// Double-precision evaluator; tables are rounded from exact values.
#[derive(Clone, Debug)]
pub struct FloatEvaluator {
    tables: Tables<f64>,
}

impl FloatEvaluator {
    pub fn new(sc: &StructureConstants, kd: &KillingData) -> Result<Self> {
        check_dims(sc, kd)?;
        let (mu, theta) = mu_and_theta(sc, kd);
        let exact = Tables::build(sc.dim(), &mu, &theta);
        Ok(Self {
            tables: exact.map(rational_to_f64),
        })
    }

    pub fn evaluate(&self, d: &ChordDiagram) -> Result<f64> {
        run_sweep(&self.tables, &best_schedule(d))
    }
}
