//! Closed μ/θ pictures and their reduction to chord diagrams.
//!
//! A picture is a closed network of μ-nodes (inputs `in1`, `in2`, output
//! `out`) and θ-nodes (symmetric legs `p1`, `p2`). Every edge joins an upper
//! port (a μ output or a θ leg) to a μ input.
//!
//! [`reduce_picture`] rewrites a picture, using only antisymmetry, the
//! Jacobi identity and the ad-invariance of θ, into a rational combination
//! of products of chord diagrams with the same value on every semisimple
//! algebra.

mod combination;
mod rewrite;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chord::ChordDiagram;
use crate::error::{Error, Result};
use crate::killing::KillingData;
use crate::lie_algebra::StructureConstants;
use crate::linalg::Rational;
use crate::tensor::{build_network, contract_general, Port, TensorNetwork, Violation};

pub use combination::DiagramCombination;
pub use rewrite::{connect_components, find_unique_cycle, mu_subgraph_components, reduce_picture};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPicture {
    pub mu_nodes: usize,
    pub theta_nodes: usize,
    pub edges: Vec<(Port, Port)>,
}

/// `{"mu_nodes": N, "theta_nodes": K, "edges": [[node, port, node, port], ...]}`.
///
/// Node numbers are 0-based within each kind; the port name decides the kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PictureFile {
    pub mu_nodes: usize,
    pub theta_nodes: usize,
    pub edges: Vec<(usize, String, usize, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PictureReport {
    pub violations: Vec<Violation>,
}

impl PictureReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_ratio_violation(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, Violation::Ratio { .. }))
    }

    pub fn open_ports(&self) -> Vec<Port> {
        self.violations
            .iter()
            .filter_map(|v| match v {
                Violation::OpenPort(p) => Some(*p),
                _ => None,
            })
            .collect()
    }
}

impl std::fmt::Display for PictureReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "ok");
        }
        let text: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", text.join("; "))
    }
}

impl ClosedPicture {
    pub fn empty() -> Self {
        Self {
            mu_nodes: 0,
            theta_nodes: 0,
            edges: Vec::new(),
        }
    }

    /// The picture of a chord diagram (circle into second inputs, chords into first).
    pub fn from_diagram(d: &ChordDiagram) -> Self {
        let net = build_network(d);
        Self {
            mu_nodes: net.mu_nodes,
            theta_nodes: net.theta_nodes,
            edges: net.edges,
        }
    }

    pub fn to_network(&self) -> TensorNetwork {
        TensorNetwork {
            mu_nodes: self.mu_nodes,
            theta_nodes: self.theta_nodes,
            edges: self.edges.clone(),
            circle: None,
        }
    }

    /// Side-by-side union; the nodes of `other` are renumbered after ours.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = |p: Port| match p {
            Port::In1(u) => Port::In1(u + self.mu_nodes),
            Port::In2(u) => Port::In2(u + self.mu_nodes),
            Port::Out(u) => Port::Out(u + self.mu_nodes),
            Port::P1(t) => Port::P1(t + self.theta_nodes),
            Port::P2(t) => Port::P2(t + self.theta_nodes),
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (shift(a), shift(b))));
        Self {
            mu_nodes: self.mu_nodes + other.mu_nodes,
            theta_nodes: self.theta_nodes + other.theta_nodes,
            edges,
        }
    }

    pub fn to_file(&self) -> PictureFile {
        PictureFile {
            mu_nodes: self.mu_nodes,
            theta_nodes: self.theta_nodes,
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (a.node(), a.name().to_string(), b.node(), b.name().to_string()))
                .collect(),
        }
    }

    pub fn from_file(file: &PictureFile) -> Result<Self> {
        let edges = file
            .edges
            .iter()
            .map(|(u, pu, v, pv)| Ok((Port::from_name(pu, *u)?, Port::from_name(pv, *v)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            mu_nodes: file.mu_nodes,
            theta_nodes: file.theta_nodes,
            edges,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PictureFile = serde_json::from_str(text)
            .map_err(|e| Error::MalformedInput(format!("picture json: {e}")))?;
        Self::from_file(&file)
    }
}

pub fn validate_picture(p: &ClosedPicture) -> PictureReport {
    PictureReport {
        violations: p.to_network().structural_violations(),
    }
}

/// Exact contraction value, by the generic greedy contractor.
pub fn evaluate_picture(p: &ClosedPicture, sc: &StructureConstants, kd: &KillingData) -> Result<Rational> {
    let report = validate_picture(p);
    if !report.is_empty() {
        return Err(Error::MalformedInput(report.to_string()));
    }
    if kd.theta.rows() != sc.dim() {
        return Err(Error::MalformedInput("theta does not match the algebra".into()));
    }
    Ok(contract_general(&p.to_network(), sc, kd))
}

/// Uniformly random pairing of the `4k` upper ports with the `4k` μ inputs.
pub fn random_picture(theta_nodes: usize, seed: u64) -> ClosedPicture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mu = 2 * theta_nodes;
    let mut upper: Vec<Port> = (0..mu).map(Port::Out).collect();
    for t in 0..theta_nodes {
        upper.push(Port::P1(t));
        upper.push(Port::P2(t));
    }
    upper.shuffle(&mut rng);
    let lower = (0..mu).flat_map(|u| [Port::In1(u), Port::In2(u)]);
    ClosedPicture {
        mu_nodes: mu,
        theta_nodes,
        edges: upper.into_iter().zip(lower).collect(),
    }
}

/// `[[x, y], z]`, `[[y, z], x]`, `[[z, x], y]` closed off by the same
/// context; the three values sum to zero by the Jacobi identity.
///
/// Context: `x = θ0`, `y = θ1`, `z = μ2(θ0, μ3(θ1, J))` where `J` is the
/// output of the bracketed pair `μ1(μ0(·, ·), ·)`.
pub fn jacobi_triple() -> [ClosedPicture; 3] {
    let x = Port::P1(0);
    let y = Port::P1(1);
    let z = Port::Out(2);
    let build = |a: Port, b: Port, c: Port| ClosedPicture {
        mu_nodes: 4,
        theta_nodes: 2,
        edges: vec![
            (a, Port::In1(0)),
            (b, Port::In2(0)),
            (Port::Out(0), Port::In1(1)),
            (c, Port::In2(1)),
            (Port::P2(0), Port::In1(2)),
            (Port::Out(3), Port::In2(2)),
            (Port::P2(1), Port::In1(3)),
            (Port::Out(1), Port::In2(3)),
        ],
    };
    [build(x, y, z), build(y, z, x), build(z, x, y)]
}
