//! Closed (μ, θ) tensor networks and their contraction.
//!
//! A chord diagram on `2m` points becomes a circle of `2m` μ-nodes: the
//! circle edge leaving position `p` enters position `p + 1` at its second
//! input, and a θ-node on each chord feeds the first inputs of its two
//! endpoints. The value is
//!
//! ```text
//! W(D) = Σ Π_p μ_{a_p c_p}^{c_{p+1}} · Π_{p~q} θ^{a_p a_q}
//! ```
//!
//! Circle networks are contracted by a sweep around the circle (a transfer
//! matrix whose open indices are the chords currently straddling the cut);
//! other networks use a greedy pairwise order.

mod greedy;
mod naive;
mod sweep;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chord::ChordDiagram;
use crate::error::{Error, Result};
use crate::killing::KillingData;
use crate::lie_algebra::StructureConstants;
use crate::linalg::Rational;

pub use greedy::contract_general;
pub use naive::{evaluate_naive, evaluate_naive_with_budget, DEFAULT_NAIVE_BUDGET};
pub use sweep::{DiagramEvaluator, FloatEvaluator};

/// Values a contraction can run over: exact integers, rationals, or `f64`.
pub trait Scalar:
    Clone
    + Zero
    + One
    + PartialEq
    + for<'a> std::ops::AddAssign<&'a Self>
    + for<'a> std::ops::Mul<&'a Self, Output = Self>
    + Send
    + Sync
{
}

impl Scalar for BigInt {}
impl Scalar for Rational {}
impl Scalar for f64 {}

/// A port of a μ-node (`In1`, `In2`, `Out`) or θ-node (`P1`, `P2`), tagged with
/// the node's index among nodes of its kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    In1(usize),
    In2(usize),
    Out(usize),
    P1(usize),
    P2(usize),
}

impl Port {
    /// Upper-index ports: μ outputs and both θ legs.
    pub fn is_upper(self) -> bool {
        matches!(self, Port::Out(_) | Port::P1(_) | Port::P2(_))
    }

    pub fn is_mu(self) -> bool {
        matches!(self, Port::In1(_) | Port::In2(_) | Port::Out(_))
    }

    pub fn node(self) -> usize {
        match self {
            Port::In1(u) | Port::In2(u) | Port::Out(u) | Port::P1(u) | Port::P2(u) => u,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Port::In1(_) => "in1",
            Port::In2(_) => "in2",
            Port::Out(_) => "out",
            Port::P1(_) => "p1",
            Port::P2(_) => "p2",
        }
    }

    pub fn from_name(name: &str, node: usize) -> Result<Self> {
        Ok(match name {
            "in1" => Port::In1(node),
            "in2" => Port::In2(node),
            "out" => Port::Out(node),
            "p1" => Port::P1(node),
            "p2" => Port::P2(node),
            other => return Err(Error::MalformedInput(format!("unknown port {other:?}"))),
        })
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_mu() { "mu" } else { "theta" };
        write!(f, "{kind}[{}].{}", self.node(), self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The μ-count is not twice the θ-count.
    Ratio { mu: usize, theta: usize },
    OpenPort(Port),
    ReusedPort(Port, usize),
    NoSuchPort(Port),
    /// An edge must join an upper port (μ output, θ leg) to a μ input.
    SameKindEdge(Port, Port),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Ratio { mu, theta } => {
                write!(f, "ratio: {mu} mu-nodes with {theta} theta-nodes")
            }
            Violation::OpenPort(p) => write!(f, "open port {p}"),
            Violation::ReusedPort(p, k) => write!(f, "port {p} used {k} times"),
            Violation::NoSuchPort(p) => write!(f, "no such port {p}"),
            Violation::SameKindEdge(a, b) => write!(f, "edge {a} - {b} joins ports of the same kind"),
        }
    }
}

/// A network of μ- and θ-nodes whose edges pair ports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorNetwork {
    pub mu_nodes: usize,
    pub theta_nodes: usize,
    pub edges: Vec<(Port, Port)>,
    /// Set when the network is the circle of a chord diagram.
    pub circle: Option<ChordDiagram>,
}

impl TensorNetwork {
    /// Every port the nodes expose, in a fixed order.
    pub fn all_ports(&self) -> Vec<Port> {
        let mut ports = Vec::with_capacity(3 * self.mu_nodes + 2 * self.theta_nodes);
        for u in 0..self.mu_nodes {
            ports.extend([Port::In1(u), Port::In2(u), Port::Out(u)]);
        }
        for t in 0..self.theta_nodes {
            ports.extend([Port::P1(t), Port::P2(t)]);
        }
        ports
    }

    /// Structural problems; empty for a closed network.
    pub fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.mu_nodes != 2 * self.theta_nodes {
            out.push(Violation::Ratio {
                mu: self.mu_nodes,
                theta: self.theta_nodes,
            });
        }
        let mut uses = std::collections::BTreeMap::new();
        for &(a, b) in &self.edges {
            for p in [a, b] {
                let in_range = if p.is_mu() {
                    p.node() < self.mu_nodes
                } else {
                    p.node() < self.theta_nodes
                };
                if !in_range {
                    out.push(Violation::NoSuchPort(p));
                    continue;
                }
                *uses.entry(p).or_insert(0usize) += 1;
            }
            if a.is_upper() == b.is_upper() {
                out.push(Violation::SameKindEdge(a, b));
            }
        }
        for p in self.all_ports() {
            match uses.get(&p).copied().unwrap_or(0) {
                0 => out.push(Violation::OpenPort(p)),
                1 => {}
                k => out.push(Violation::ReusedPort(p, k)),
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.structural_violations().is_empty()
    }
}

/// The circle network of `d` (see the module docs for the wiring).
pub fn build_network(d: &ChordDiagram) -> TensorNetwork {
    let len = d.points();
    let mut edges = Vec::with_capacity(2 * len);
    for p in 0..len {
        edges.push((Port::Out(p), Port::In2((p + 1) % len)));
    }
    for (t, (p, q)) in d.pairs().into_iter().enumerate() {
        edges.push((Port::P1(t), Port::In1(p)));
        edges.push((Port::P2(t), Port::In1(q)));
    }
    TensorNetwork {
        mu_nodes: len,
        theta_nodes: d.chords(),
        edges,
        circle: Some(d.clone()),
    }
}

/// What happens to a chord when the sweep reaches one of its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChordAction {
    /// The chord index becomes a new open slot (pushed last).
    Open,
    /// The chord's slot is contracted against θ and removed.
    Close { slot: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanStep {
    /// Absorb the μ at circle `position`.
    Absorb {
        position: usize,
        action: ChordAction,
        width_after: usize,
    },
    /// Contract intermediate tensors `left` and `right` (SSA numbering:
    /// inputs first, each result appended).
    Pair {
        left: usize,
        right: usize,
        width_after: usize,
    },
}

impl PlanStep {
    pub fn width_after(&self) -> usize {
        match self {
            PlanStep::Absorb { width_after, .. } | PlanStep::Pair { width_after, .. } => *width_after,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionPlan {
    pub dim: usize,
    pub steps: Vec<PlanStep>,
    pub peak_width: usize,
    /// Predicted multiply-add count.
    pub predicted_cost: f64,
    /// Multiply count of the direct loop over all `4m` indices.
    pub naive_cost: f64,
}

impl ContractionPlan {
    /// `n^peak_width`, the dense size of the largest intermediate.
    pub fn predicted_peak_size(&self) -> f64 {
        (self.dim as f64).powi(self.peak_width as i32)
    }
}

/// Sweep plan for circle networks; greedy pairwise order otherwise.
pub fn plan_contraction(net: &TensorNetwork, n: usize) -> ContractionPlan {
    match &net.circle {
        Some(d) => sweep::plan_sweep(d, n),
        None => greedy::plan_greedy(net, n),
    }
}

fn check_dims(sc: &StructureConstants, kd: &KillingData) -> Result<()> {
    let n = sc.dim();
    if kd.theta.rows() != n || kd.theta.cols() != n {
        return Err(Error::MalformedInput(format!(
            "theta is {}x{} but the algebra has dimension {n}",
            kd.theta.rows(),
            kd.theta.cols()
        )));
    }
    Ok(())
}

/// Exact `W(D)` by the planned sweep.
pub fn evaluate_diagram(d: &ChordDiagram, sc: &StructureConstants, kd: &KillingData) -> Result<Rational> {
    DiagramEvaluator::new(sc, kd)?.evaluate(d)
}

/// `W(D)` in double precision, same plan as [`evaluate_diagram`].
pub fn evaluate_float(d: &ChordDiagram, sc: &StructureConstants, kd: &KillingData) -> Result<f64> {
    FloatEvaluator::new(sc, kd)?.evaluate(d)
}

/// Exact value of an arbitrary closed network via the greedy contractor.
pub fn evaluate_network(net: &TensorNetwork, sc: &StructureConstants, kd: &KillingData) -> Result<Rational> {
    check_dims(sc, kd)?;
    let problems = net.structural_violations();
    if !problems.is_empty() {
        let text: Vec<String> = problems.iter().map(ToString::to_string).collect();
        return Err(Error::MalformedInput(text.join("; ")));
    }
    Ok(contract_general(net, sc, kd))
}

#[cfg(test)]
mod tests;
