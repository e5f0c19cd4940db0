//! Greedy pairwise contraction of arbitrary closed networks.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::{ContractionPlan, PlanStep, Port, Scalar, TensorNetwork};
use crate::killing::KillingData;
use crate::lie_algebra::StructureConstants;
use crate::linalg::Rational;

/// Leg lists (edge ids) of every node tensor after removing self-loops.
/// μ-nodes first, then θ-nodes.
fn node_legs(net: &TensorNetwork) -> Vec<Vec<usize>> {
    let mut edge_of: BTreeMap<Port, usize> = BTreeMap::new();
    for (e, &(a, b)) in net.edges.iter().enumerate() {
        edge_of.insert(a, e);
        edge_of.insert(b, e);
    }
    let mut legs = Vec::new();
    for u in 0..net.mu_nodes {
        legs.push(vec![edge_of[&Port::In1(u)], edge_of[&Port::In2(u)], edge_of[&Port::Out(u)]]);
    }
    for t in 0..net.theta_nodes {
        legs.push(vec![edge_of[&Port::P1(t)], edge_of[&Port::P2(t)]]);
    }
    legs
}

/// Legs that appear once (a leg appearing twice is traced away).
fn free_legs(legs: &[usize]) -> Vec<usize> {
    legs.iter()
        .copied()
        .filter(|l| legs.iter().filter(|x| *x == l).count() == 1)
        .collect()
}

fn union_free(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    free_legs(&all)
}

/// Greedy order: among pairs sharing a leg, the one with the smallest result,
/// then the fewest total legs, then the lowest ids. Unconnected leftovers
/// (scalars of disjoint components) are multiplied last.
pub(crate) fn plan_greedy(net: &TensorNetwork, n: usize) -> ContractionPlan {
    let nf = n as f64;
    let mut tensors: Vec<Option<Vec<usize>>> = node_legs(net)
        .into_iter()
        .map(|l| Some(free_legs(&l)))
        .collect();
    let mut steps = Vec::new();
    let mut peak = tensors.iter().flatten().map(Vec::len).max().unwrap_or(0);
    let mut cost = 0.0;
    loop {
        let alive: Vec<usize> = (0..tensors.len()).filter(|&i| tensors[i].is_some()).collect();
        if alive.len() <= 1 {
            break;
        }
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (x, &i) in alive.iter().enumerate() {
            for &j in &alive[x + 1..] {
                let (li, lj) = (tensors[i].as_ref().unwrap(), tensors[j].as_ref().unwrap());
                if !li.iter().any(|l| lj.contains(l)) {
                    continue;
                }
                let result = union_free(li, lj).len();
                let mut touched = li.clone();
                touched.extend(lj.iter().filter(|l| !li.contains(l)));
                let key = (result, touched.len(), i, j);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let (i, j) = match best {
            Some((_, _, i, j)) => (i, j),
            None => (alive[0], alive[1]),
        };
        let (li, lj) = (tensors[i].take().unwrap(), tensors[j].take().unwrap());
        let mut touched = li.clone();
        touched.extend(lj.iter().filter(|l| !li.contains(l)));
        cost += nf.powi(touched.len() as i32);
        let result = union_free(&li, &lj);
        peak = peak.max(result.len());
        steps.push(PlanStep::Pair {
            left: i,
            right: j,
            width_after: result.len(),
        });
        tensors.push(Some(result));
    }
    let m = net.theta_nodes;
    ContractionPlan {
        dim: n,
        steps,
        peak_width: peak,
        predicted_cost: cost,
        naive_cost: 3.0 * m as f64 * nf.powi(4 * m as i32),
    }
}

#[derive(Clone, Debug)]
struct SparseTensor<S> {
    legs: Vec<usize>,
    entries: Vec<(Vec<u32>, S)>,
}

impl<S: Scalar> SparseTensor<S> {
    /// Builds from raw legs that may repeat (self-loops), keeping the diagonal.
    fn from_raw(raw_legs: &[usize], entries: impl Iterator<Item = (Vec<u32>, S)>) -> Self {
        let legs = free_legs(raw_legs);
        let keep: Vec<usize> = (0..raw_legs.len())
            .filter(|&x| legs.contains(&raw_legs[x]))
            .collect();
        let mut acc: BTreeMap<Vec<u32>, S> = BTreeMap::new();
        'entry: for (idx, v) in entries {
            for x in 0..raw_legs.len() {
                for y in (x + 1)..raw_legs.len() {
                    if raw_legs[x] == raw_legs[y] && idx[x] != idx[y] {
                        continue 'entry;
                    }
                }
            }
            let key: Vec<u32> = keep.iter().map(|&x| idx[x]).collect();
            *acc.entry(key).or_insert_with(S::zero) += &v;
        }
        Self {
            legs,
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    fn contract(&self, other: &Self) -> Self {
        let shared: Vec<usize> = self.legs.iter().copied().filter(|l| other.legs.contains(l)).collect();
        let pos_a: Vec<usize> = shared.iter().map(|l| self.legs.iter().position(|x| x == l).unwrap()).collect();
        let pos_b: Vec<usize> = shared.iter().map(|l| other.legs.iter().position(|x| x == l).unwrap()).collect();
        let free_a: Vec<usize> = (0..self.legs.len()).filter(|x| !pos_a.contains(x)).collect();
        let free_b: Vec<usize> = (0..other.legs.len()).filter(|x| !pos_b.contains(x)).collect();

        let mut index: FxHashMap<Vec<u32>, Vec<usize>> = FxHashMap::default();
        for (e, (idx, _)) in other.entries.iter().enumerate() {
            index
                .entry(pos_b.iter().map(|&x| idx[x]).collect())
                .or_default()
                .push(e);
        }
        let mut acc: BTreeMap<Vec<u32>, S> = BTreeMap::new();
        for (idx_a, va) in &self.entries {
            let k: Vec<u32> = pos_a.iter().map(|&x| idx_a[x]).collect();
            let Some(matches) = index.get(&k) else { continue };
            for &e in matches {
                let (idx_b, vb) = &other.entries[e];
                let mut key: Vec<u32> = free_a.iter().map(|&x| idx_a[x]).collect();
                key.extend(free_b.iter().map(|&x| idx_b[x]));
                *acc.entry(key).or_insert_with(S::zero) += &(va.clone() * vb);
            }
        }
        let mut legs: Vec<usize> = free_a.iter().map(|&x| self.legs[x]).collect();
        legs.extend(free_b.iter().map(|&x| other.legs[x]));
        Self {
            legs,
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    fn scalar_value(&self) -> S {
        debug_assert!(self.legs.is_empty());
        self.entries.first().map_or_else(S::zero, |(_, v)| v.clone())
    }
}

/// Exact value of a closed network (assumed validated) by the greedy plan.
pub fn contract_general(net: &TensorNetwork, sc: &StructureConstants, kd: &KillingData) -> Rational {
    let n = sc.dim();
    let legs = node_legs(net);
    let mu = sc.full_entries();
    let mut theta = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !kd.theta[(a, b)].is_zero() {
                theta.push((vec![a as u32, b as u32], kd.theta[(a, b)].clone()));
            }
        }
    }
    let mut tensors: Vec<Option<SparseTensor<Rational>>> = Vec::new();
    for (x, l) in legs.iter().enumerate() {
        let t = if x < net.mu_nodes {
            SparseTensor::from_raw(
                l,
                mu.iter()
                    .map(|(i, j, k, v)| (vec![*i as u32, *j as u32, *k as u32], v.clone())),
            )
        } else {
            SparseTensor::from_raw(l, theta.iter().cloned())
        };
        tensors.push(Some(t));
    }
    if tensors.is_empty() {
        return Rational::one();
    }
    let plan = plan_greedy(net, n);
    for step in &plan.steps {
        if let PlanStep::Pair { left, right, .. } = *step {
            let a = tensors[left].take().expect("planned once");
            let b = tensors[right].take().expect("planned once");
            tensors.push(Some(a.contract(&b)));
        }
    }
    tensors
        .into_iter()
        .flatten()
        .next()
        .map_or_else(Rational::zero, |t| t.scalar_value())
}
