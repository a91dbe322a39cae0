//! Integer-scaled Cunningham algorithm for bases of the graphic polymatroid.
//!
//! For a target `y ≡ p/q` the algorithm works with `x' = q·x`, so every
//! quantity is an integer: `x'` lives in `P(q·f)` and is capped by `p` on
//! each edge. The increment subproblem
//!
//! ```text
//!     ε(j) = min { q·f(J') − x'(J') : j ∈ J' ⊆ E }
//! ```
//!
//! is answered by a minimum cut in an auxiliary network on `V ∪ {r, s}` with
//! capacities
//!
//! * `x'(e)` on each graph edge,
//! * `2q` from `s` to every vertex,
//! * infinite from `r` to both endpoints of `j`, and `x'(δ(v))` from `r` to
//!   every other vertex.
//!
//! A cut whose source side meets `V` in `U` has capacity
//! `2·(q·|U| + x'(E) − x'(E(U)))`, where `E(U)` is the set of edges with both
//! ends in `U`. The minimising `U` induces a connected subgraph, so
//! `ε = cut/2 − x'(E) − q` and `E(U)` is a tight set containing `j`.

use crate::error::{Error, Result};
use crate::flow::{min_cut, Capacity, FlowNetwork};
use crate::graph::{EdgeId, EdgeSubset, MultiGraph};

/// Per-edge non-negative integers, the `q`-scaled point of the polymatroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncrementVector {
    scale: u64,
    values: Vec<u64>,
}

impl IncrementVector {
    pub fn zeros(edges: usize, scale: u64) -> Self {
        IncrementVector {
            scale,
            values: vec![0; edges],
        }
    }

    pub fn from_values(scale: u64, values: Vec<u64>) -> Self {
        IncrementVector { scale, values }
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, e: EdgeId) -> u64 {
        self.values[e]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn sum_over(&self, set: &EdgeSubset) -> u64 {
        set.iter().map(|e| self.values[e]).sum()
    }
}

/// Answer to the increment subproblem for one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightIncrement {
    pub epsilon: u64,
    /// A set containing the probed edge with `q·f − x' = epsilon`.
    pub tight_set: EdgeSubset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisResult {
    pub p: u64,
    pub q: u64,
    pub x_prime: IncrementVector,
    /// Union of the tight sets picked up along the way.
    pub j_bar: EdgeSubset,
    /// `E ∖ j_bar`; every member has `x' = p`.
    pub j_set: EdgeSubset,
    pub basis_total: u64,
}

/// Builds the (2q-scaled) auxiliary cut network for edge `j`.
///
/// Node ids: graph vertices keep their ids, `r = |V|`, `s = |V| + 1`. Flow
/// edges are laid out as all graph edges (in id order, tagged with their
/// origin), then the `s` edges, then the `r` edges, each in vertex order.
pub fn build_aux_network(g: &MultiGraph, x: &IncrementVector, j: EdgeId) -> Result<FlowNetwork> {
    let n = g.vertex_count();
    if x.len() != g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "increment vector has {} entries for {} edges",
            x.len(),
            g.edge_count()
        )));
    }
    if j >= g.edge_count() {
        return Err(Error::InvalidArgument(format!("edge {j} out of range")));
    }
    let two_q = x.scale().checked_mul(2).ok_or(Error::CapacityOverflow)?;
    let (r, s) = (n, n + 1);
    let (ja, jb) = g.endpoints(j);

    let mut boundary = vec![0u64; n];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        boundary[a] += x.get(e);
        boundary[b] += x.get(e);
    }

    let mut net = FlowNetwork::new(n + 2, r, s)?;
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        net.add_edge(a, b, Capacity::Finite(x.get(e)), Some(e))?;
    }
    for v in 0..n {
        net.add_edge(s, v, Capacity::Finite(two_q), None)?;
    }
    for (v, &cap) in boundary.iter().enumerate() {
        let cap = if v == ja || v == jb {
            Capacity::Infinite
        } else {
            Capacity::Finite(cap)
        };
        net.add_edge(r, v, cap, None)?;
    }
    Ok(net)
}

/// Largest feasible increment of `x'` on edge `j`, with a tight set that
/// blocks any further increase.
pub fn min_tight_increment(
    g: &MultiGraph,
    x: &IncrementVector,
    j: EdgeId,
) -> Result<TightIncrement> {
    let net = build_aux_network(g, x, j)?;
    let cut = min_cut(&net)?;
    if cut.value % 2 != 0 {
        return Err(Error::invariant(format!(
            "odd auxiliary cut value {}",
            cut.value
        )));
    }
    let epsilon = (cut.value / 2)
        .checked_sub(x.total())
        .and_then(|v| v.checked_sub(x.scale()))
        .ok_or_else(|| {
            Error::invariant(format!(
                "cut value {} below x'(E) + q = {} + {}",
                cut.value,
                x.total(),
                x.scale()
            ))
        })?;
    let inside = &cut.source_side[..g.vertex_count()];
    let tight_set = EdgeSubset::from_ids(
        g.edge_count(),
        g.edges()
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| inside[a] && inside[b])
            .map(|(e, _)| e),
    );
    debug_assert!(tight_set.contains(j));
    Ok(TightIncrement { epsilon, tight_set })
}

/// One iteration of the main loop, as seen by an observer.
pub struct Step<'a> {
    pub edge: EdgeId,
    /// `x'` before this edge is incremented.
    pub x_before: &'a IncrementVector,
    pub subproblem: &'a TightIncrement,
    /// Whether the subproblem bound was the binding one (`ε < p − x'(j)`).
    pub tight: bool,
}

/// Runs the integer Cunningham algorithm for `y ≡ p/q`, visiting edges in id
/// order.
pub fn cunningham_basis(g: &MultiGraph, p: u64, q: u64) -> Result<BasisResult> {
    let order: Vec<EdgeId> = (0..g.edge_count()).collect();
    cunningham_basis_observed(g, p, q, &order, |_| {})
}

pub fn cunningham_basis_in_order(
    g: &MultiGraph,
    p: u64,
    q: u64,
    order: &[EdgeId],
) -> Result<BasisResult> {
    cunningham_basis_observed(g, p, q, order, |_| {})
}

/// Core loop; `observe` is called once per edge before `x'` is updated.
pub fn cunningham_basis_observed(
    g: &MultiGraph,
    p: u64,
    q: u64,
    order: &[EdgeId],
    mut observe: impl FnMut(Step<'_>),
) -> Result<BasisResult> {
    g.require_connected_nontrivial()?;
    if q == 0 {
        return Err(Error::InvalidArgument("q must be positive".into()));
    }
    let m = g.edge_count();
    let mut seen = vec![false; m];
    if order.len() != m
        || order
            .iter()
            .any(|&e| e >= m || std::mem::replace(&mut seen[e], true))
    {
        return Err(Error::InvalidArgument(
            "edge order must be a permutation of the edge ids".into(),
        ));
    }

    let mut x = IncrementVector::zeros(m, q);
    let mut j_bar = EdgeSubset::empty(m);
    for &j in order {
        let sub = min_tight_increment(g, &x, j)?;
        let room = p.saturating_sub(x.get(j));
        let tight = sub.epsilon < room;
        observe(Step {
            edge: j,
            x_before: &x,
            subproblem: &sub,
            tight,
        });
        let step = if tight {
            j_bar.union_with(&sub.tight_set);
            sub.epsilon
        } else {
            room
        };
        x.values[j] += step;
    }

    let basis_total = x.total();
    Ok(BasisResult {
        p,
        q,
        j_set: j_bar.complement(),
        j_bar,
        x_prime: x,
        basis_total,
    })
}
