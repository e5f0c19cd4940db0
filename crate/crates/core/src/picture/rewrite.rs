//! The reduction of a closed picture to chord diagrams.
//!
//! Internally a picture is a [`Wiring`]: for every μ-node, the sources of its
//! two inputs. Since every upper port feeds exactly one input this is the
//! whole picture, and the μ-subgraph `Q` is the functional graph `u -> target
//! of u's output`. Every weak component of a functional graph holds exactly
//! one directed cycle.
//!
//! Moves used, each with its effect on the value:
//!
//! * swapping the two inputs of a μ: factor `-1`;
//! * for a μ `w` with an input fed by leg `l` of a θ, exchanging the target
//!   of `w`'s output with the target of the θ's other leg: factor `-1`
//!   (the tensor `θ^{ab} μ_{aj}^{k}` is antisymmetric in `b, k` by
//!   ad-invariance of θ);
//! * Jacobi: `[[x, y], z] = [x, [y, z]] - [y, [x, z]]`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{ClosedPicture, DiagramCombination};
use crate::chord::{ChordDiagram, Symmetry};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::tensor::Port;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Source {
    Mu(usize),
    Theta(usize, usize),
}

impl Source {
    fn port(self) -> Port {
        match self {
            Source::Mu(u) => Port::Out(u),
            Source::Theta(t, 0) => Port::P1(t),
            Source::Theta(t, _) => Port::P2(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Wiring {
    theta_nodes: usize,
    inputs: Vec<[Source; 2]>,
}

impl Wiring {
    fn from_picture(p: &ClosedPicture) -> Result<Self> {
        let report = super::validate_picture(p);
        if !report.is_empty() {
            return Err(Error::MalformedInput(report.to_string()));
        }
        let mut inputs = vec![[Source::Mu(usize::MAX); 2]; p.mu_nodes];
        for &(a, b) in &p.edges {
            let (upper, lower) = if a.is_upper() { (a, b) } else { (b, a) };
            let source = match upper {
                Port::Out(u) => Source::Mu(u),
                Port::P1(t) => Source::Theta(t, 0),
                Port::P2(t) => Source::Theta(t, 1),
                _ => unreachable!("validated"),
            };
            match lower {
                Port::In1(u) => inputs[u][0] = source,
                Port::In2(u) => inputs[u][1] = source,
                _ => unreachable!("validated"),
            }
        }
        Ok(Self {
            theta_nodes: p.theta_nodes,
            inputs,
        })
    }

    fn to_picture(&self) -> ClosedPicture {
        let mut edges = Vec::with_capacity(2 * self.inputs.len());
        for (u, [a, b]) in self.inputs.iter().enumerate() {
            edges.push((a.port(), Port::In1(u)));
            edges.push((b.port(), Port::In2(u)));
        }
        ClosedPicture {
            mu_nodes: self.inputs.len(),
            theta_nodes: self.theta_nodes,
            edges,
        }
    }

    /// `(node, slot)` fed by each source.
    fn targets(&self) -> BTreeMap<Source, (usize, usize)> {
        let mut out = BTreeMap::new();
        for (u, ins) in self.inputs.iter().enumerate() {
            for (slot, s) in ins.iter().enumerate() {
                out.insert(*s, (u, slot));
            }
        }
        out
    }

    /// Weak components of `Q`, as a component label per μ-node.
    fn q_labels(&self) -> Vec<usize> {
        let n = self.inputs.len();
        let mut uf = UnionFind::new(n);
        for (u, ins) in self.inputs.iter().enumerate() {
            for s in ins {
                if let Source::Mu(v) = s {
                    uf.union(u, *v);
                }
            }
        }
        (0..n).map(|u| uf.find(u)).collect()
    }

    /// Splits into the components of the whole picture (θ-nodes included).
    fn split(&self) -> Vec<Wiring> {
        let n = self.inputs.len();
        let mut uf = UnionFind::new(n + self.theta_nodes);
        for (u, ins) in self.inputs.iter().enumerate() {
            for s in ins {
                match *s {
                    Source::Mu(v) => uf.union(u, v),
                    Source::Theta(t, _) => uf.union(u, n + t),
                }
            }
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for u in 0..n {
            groups.entry(uf.find(u)).or_default().0.push(u);
        }
        for t in 0..self.theta_nodes {
            groups.entry(uf.find(n + t)).or_default().1.push(t);
        }
        groups
            .into_values()
            .map(|(mus, thetas)| {
                let mu_index: BTreeMap<usize, usize> = mus.iter().enumerate().map(|(i, &u)| (u, i)).collect();
                let theta_index: BTreeMap<usize, usize> =
                    thetas.iter().enumerate().map(|(i, &t)| (t, i)).collect();
                let relabel = |s: Source| match s {
                    Source::Mu(v) => Source::Mu(mu_index[&v]),
                    Source::Theta(t, l) => Source::Theta(theta_index[&t], l),
                };
                Wiring {
                    theta_nodes: thetas.len(),
                    inputs: mus
                        .iter()
                        .map(|&u| [relabel(self.inputs[u][0]), relabel(self.inputs[u][1])])
                        .collect(),
                }
            })
            .collect()
    }

    /// Nodes on the directed cycle reached from `start`, in output order.
    fn cycle_from(&self, start: usize) -> Vec<usize> {
        let targets = self.targets();
        let next = |u: usize| targets[&Source::Mu(u)].0;
        let mut seen = vec![false; self.inputs.len()];
        let mut u = start;
        while !seen[u] {
            seen[u] = true;
            u = next(u);
        }
        let first = u;
        let mut cycle = vec![first];
        let mut v = next(first);
        while v != first {
            cycle.push(v);
            v = next(v);
        }
        cycle
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        let labels = self.q_labels();
        let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
        for (u, l) in labels.iter().enumerate() {
            reps.entry(*l).or_insert(u);
        }
        reps.values().map(|&u| self.cycle_from(u)).collect()
    }

    /// Corollary moves until `Q` is connected, within one picture component.
    /// Returns the number of moves (each contributes a factor `-1`).
    fn connect(&mut self) -> usize {
        let mut moves = 0;
        loop {
            let labels = self.q_labels();
            let targets = self.targets();
            let bridge = (0..self.theta_nodes).find_map(|t| {
                let (u0, _) = targets[&Source::Theta(t, 0)];
                let (u1, _) = targets[&Source::Theta(t, 1)];
                (labels[u0] != labels[u1]).then_some((t, u0))
            });
            let Some((t, mut w)) = bridge else { return moves };
            let on_cycle = self.cycle_from(w);
            let mut feeding = 0;
            loop {
                let other = Source::Theta(t, 1 - feeding);
                let targets = self.targets();
                let (y, sy) = targets[&Source::Mu(w)];
                let (z, sz) = targets[&other];
                self.inputs[y][sy] = other;
                self.inputs[z][sz] = Source::Mu(w);
                moves += 1;
                if on_cycle.contains(&w) {
                    break;
                }
                w = y;
                feeding = 1 - feeding;
            }
        }
    }

    fn swap_inputs(&mut self, u: usize) {
        self.inputs[u].swap(0, 1);
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Weak components of the μ-subgraph, each as a sorted list of μ-nodes.
pub fn mu_subgraph_components(p: &ClosedPicture) -> Result<Vec<Vec<usize>>> {
    let w = Wiring::from_picture(p)?;
    let labels = w.q_labels();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (u, l) in labels.into_iter().enumerate() {
        groups.entry(l).or_default().push(u);
    }
    Ok(groups.into_values().collect())
}

/// An equal-valued picture whose μ-subgraph is connected within every
/// component of the picture. θ-nodes keep their number; only edges move.
pub fn connect_components(p: &ClosedPicture) -> Result<ClosedPicture> {
    let mut w = Wiring::from_picture(p)?;
    let moves = w.connect();
    if moves % 2 == 1 {
        w.swap_inputs(0);
    }
    Ok(w.to_picture())
}

/// The directed cycle of a picture whose μ-subgraph is connected, as μ-nodes
/// in output order starting from the smallest.
pub fn find_unique_cycle(p: &ClosedPicture) -> Result<Vec<usize>> {
    let w = Wiring::from_picture(p)?;
    let cycles = w.cycles();
    match cycles.as_slice() {
        [cycle] => {
            let start = cycle.iter().enumerate().min_by_key(|(_, u)| **u).map(|(i, _)| i).unwrap();
            let mut out = cycle[start..].to_vec();
            out.extend_from_slice(&cycle[..start]);
            Ok(out)
        }
        _ => Err(Error::InvariantViolated(format!(
            "expected exactly one directed cycle in the mu-subgraph, found {}",
            cycles.len()
        ))),
    }
}

/// One term of the worklist: `coeff * picture`, with its cycle tracked.
struct Term {
    coeff: Rational,
    wiring: Wiring,
    cycle: Vec<usize>,
}

/// Puts every cycle edge on the second input of its head.
fn normalize(term: &mut Term) {
    let len = term.cycle.len();
    for i in 0..len {
        let (prev, u) = (term.cycle[i], term.cycle[(i + 1) % len]);
        if term.wiring.inputs[u][1] != Source::Mu(prev) {
            debug_assert_eq!(term.wiring.inputs[u][0], Source::Mu(prev));
            term.wiring.swap_inputs(u);
            term.coeff = -term.coeff.clone();
        }
    }
}

/// Reads the chord diagram off a flattened term: all μ on the cycle, all
/// first inputs fed by θ legs.
fn extract(term: &Term) -> Result<ChordDiagram> {
    let mut position_of = vec![[usize::MAX; 2]; term.wiring.theta_nodes];
    for (p, &u) in term.cycle.iter().enumerate() {
        match term.wiring.inputs[u][0] {
            Source::Theta(t, l) => position_of[t][l] = p,
            Source::Mu(_) => return Err(Error::InvariantViolated("unflattened node on the cycle".into())),
        }
    }
    let pairs: Vec<(usize, usize)> = position_of.iter().map(|[a, b]| (*a, *b)).collect();
    Ok(ChordDiagram::from_pairs(&pairs)?.canonical(Symmetry::Rotation))
}

/// Reduction of one picture component with connected `Q`.
fn reduce_connected(wiring: Wiring, sign: Rational) -> Result<BTreeMap<ChordDiagram, Rational>> {
    let cycles = wiring.cycles();
    if cycles.len() != 1 {
        return Err(Error::InvariantViolated(format!(
            "expected exactly one directed cycle in the mu-subgraph, found {}",
            cycles.len()
        )));
    }
    let mut start = Term {
        coeff: sign,
        cycle: cycles.into_iter().next().unwrap(),
        wiring,
    };
    normalize(&mut start);
    let mut work = vec![start];
    let mut result: BTreeMap<ChordDiagram, Rational> = BTreeMap::new();
    while let Some(term) = work.pop() {
        let found = term
            .cycle
            .iter()
            .enumerate()
            .find_map(|(i, &w)| match term.wiring.inputs[w][0] {
                Source::Mu(r) => Some((i, w, r)),
                Source::Theta(..) => None,
            });
        let Some((i, w, r)) = found else {
            if term.cycle.len() != term.wiring.inputs.len() {
                return Err(Error::InvariantViolated("nodes left off the cycle".into()));
            }
            let d = extract(&term)?;
            *result.entry(d).or_insert_with(Rational::zero) += &term.coeff;
            continue;
        };
        let [x, y] = term.wiring.inputs[r];
        let z = term.wiring.inputs[w][1];
        let mut cycle = term.cycle.clone();
        cycle.insert(i, r);
        for (first, second, sign) in [(y, x, Rational::one()), (x, y, -Rational::one())] {
            let mut wiring = term.wiring.clone();
            wiring.inputs[r] = [first, z];
            wiring.inputs[w] = [second, Source::Mu(r)];
            work.push(Term {
                coeff: &term.coeff * &sign,
                wiring,
                cycle: cycle.clone(),
            });
        }
    }
    result.retain(|_, c| !c.is_zero());
    Ok(result)
}

/// Rewrites `p` into a combination of products of chord diagrams with the
/// same value on every semisimple algebra.
pub fn reduce_picture(p: &ClosedPicture) -> Result<DiagramCombination> {
    let whole = Wiring::from_picture(p)?;
    let mut total = DiagramCombination::one();
    for mut part in whole.split() {
        if part.inputs.is_empty() {
            continue;
        }
        let moves = part.connect();
        let sign = if moves % 2 == 0 { Rational::one() } else { -Rational::one() };
        let terms = reduce_connected(part, sign)?;
        total = total.multiply(&DiagramCombination::from_single_factors(terms));
    }
    Ok(total)
}
