//! Spanning tree modulus by recursive critical-set peeling.
//!
//! The optimal edge usage η* equals θ(G) on every critical set of G, and on
//! each component left after deleting a critical set η* agrees with the
//! optimal usage of that component taken as a graph on its own. Peeling
//! critical sets breadth first therefore fixes η* on at least one edge per
//! step. The modulus and optimal density follow as
//! `Mod = 1 / Σ η*²` and `ρ* = η*·Mod`.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{decompose_after_removal, EdgeId, MultiGraph, VertexId};
use crate::rational::{to_big, Rational, Theta};
use crate::vulnerability::{vulnerability_with, CriticalSetResult, VulnerabilityOptions};

/// One peel: a subgraph, its vulnerability, and the critical edges removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelRecord {
    /// Index in the trace of the peel that produced this subgraph.
    pub parent: Option<usize>,
    /// Root-graph vertex ids of the subgraph.
    pub vertices: Vec<VertexId>,
    /// Root-graph edge ids of the subgraph.
    pub edges: Vec<EdgeId>,
    pub theta: Theta,
    /// Root-graph edge ids of the critical set.
    pub critical: Vec<EdgeId>,
    pub used_fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusResult {
    pub eta: Vec<Theta>,
    pub rho: Vec<Rational>,
    pub modulus: Rational,
    pub trace: Vec<PeelRecord>,
}

impl ModulusResult {
    pub fn eta_sum(&self) -> Rational {
        self.eta
            .iter()
            .map(to_big)
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn eta_square_sum(&self) -> Rational {
        sum_of_squares(&self.eta)
    }
}

pub(crate) fn sum_of_squares(eta: &[Theta]) -> Rational {
    eta.iter()
        .map(|t| {
            let b = to_big(t);
            &b * &b
        })
        .fold(Rational::zero(), |a, b| a + b)
}

/// Assembles a result from a complete η* assignment, checking the exact
/// identities that must hold for any optimal edge usage.
pub(crate) fn assemble(
    g: &MultiGraph,
    eta: Vec<Option<Theta>>,
    trace: Vec<PeelRecord>,
) -> Result<ModulusResult> {
    let eta: Vec<Theta> = eta
        .into_iter()
        .enumerate()
        .map(|(e, t)| t.ok_or_else(|| Error::invariant(format!("edge {e} never received η*"))))
        .collect::<Result<_>>()?;

    let zero = Theta::from_integer(0);
    let one = Theta::from_integer(1);
    if let Some(e) = eta.iter().position(|t| *t <= zero || *t > one) {
        return Err(Error::invariant(format!(
            "η*({e}) = {} outside (0, 1]",
            eta[e]
        )));
    }
    let modulus = sum_of_squares(&eta).recip();
    let rho: Vec<Rational> = eta.iter().map(|t| to_big(t) * &modulus).collect();

    let result = ModulusResult {
        eta,
        rho,
        modulus,
        trace,
    };
    let expected_sum = Rational::from_integer((g.vertex_count() as i64 - 1).into());
    if result.eta_sum() != expected_sum {
        return Err(Error::invariant(format!(
            "Σ η* = {} but |V| − 1 = {expected_sum}",
            result.eta_sum()
        )));
    }
    if &result.modulus * result.eta_square_sum() != Rational::one() {
        return Err(Error::invariant("Mod · Σ η*² ≠ 1"));
    }
    for rec in &result.trace {
        if let Some(parent) = rec.parent {
            if rec.theta > result.trace[parent].theta {
                return Err(Error::invariant(format!(
                    "child θ = {} exceeds parent θ = {}",
                    rec.theta, result.trace[parent].theta
                )));
            }
        }
    }
    Ok(result)
}

pub fn spanning_tree_modulus(g: &MultiGraph) -> Result<ModulusResult> {
    spanning_tree_modulus_with(g, &VulnerabilityOptions::default())
}

struct Pending {
    parent: Option<usize>,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    graph: MultiGraph,
}

pub fn spanning_tree_modulus_with(
    g: &MultiGraph,
    opts: &VulnerabilityOptions,
) -> Result<ModulusResult> {
    peel(g, |sub| vulnerability_with(sub, opts))
}

/// Breadth-first peeling driven by any critical-set solver.
pub(crate) fn peel(
    g: &MultiGraph,
    mut solve: impl FnMut(&MultiGraph) -> Result<CriticalSetResult>,
) -> Result<ModulusResult> {
    g.require_connected_nontrivial()?;
    let mut eta: Vec<Option<Theta>> = vec![None; g.edge_count()];
    let mut trace = Vec::new();
    let mut queue = VecDeque::from([Pending {
        parent: None,
        vertices: (0..g.vertex_count()).collect(),
        edges: (0..g.edge_count()).collect(),
        graph: g.clone(),
    }]);

    while let Some(item) = queue.pop_front() {
        let found = solve(&item.graph)?;
        let index = trace.len();
        for e in found.critical.iter() {
            eta[item.edges[e]] = Some(found.theta);
        }

        let split = decompose_after_removal(&item.graph, &found.critical);
        for comp in split.nontrivial() {
            if comp.edges.iter().any(|&e| found.critical.contains(e)) {
                return Err(Error::invariant(
                    "critical set meets a vertex-induced component",
                ));
            }
            queue.push_back(Pending {
                parent: Some(index),
                vertices: comp.vertices.iter().map(|&v| item.vertices[v]).collect(),
                edges: comp.edges.iter().map(|&e| item.edges[e]).collect(),
                graph: comp.graph.clone(),
            });
        }

        trace.push(PeelRecord {
            parent: item.parent,
            critical: found.critical.iter().map(|e| item.edges[e]).collect(),
            vertices: item.vertices,
            edges: item.edges,
            theta: found.theta,
            used_fallback: found.used_fallback,
        });
    }

    assemble(g, eta, trace)
}

/// Distinct η* values with their multiplicities, largest value first.
pub fn eta_histogram(r: &ModulusResult) -> Vec<(Theta, usize)> {
    let mut counts: BTreeMap<Theta, usize> = BTreeMap::new();
    for t in &r.eta {
        *counts.entry(*t).or_default() += 1;
    }
    counts.into_iter().rev().collect()
}
