//! Brute-force and algebraic cross-checks.
//!
//! Nothing here touches the flow or polymatroid code: vulnerability is found
//! by enumerating edge subsets, trees by contraction/deletion, and tree counts
//! by an integer determinant of the reduced Laplacian.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{
    bridges, component_count, graphic_rank, DisjointSets, EdgeId, EdgeSubset, MultiGraph,
};
use crate::modulus::{self, ModulusResult};
use crate::polymatroid::IncrementVector;
use crate::rational::{to_big, Rational, Theta};
use crate::vulnerability::CriticalSetResult;

pub const MAX_ENUMERATED_TREES: u64 = 1_000_000;
pub const MAX_THETA_EDGES: usize = 22;
pub const MAX_INCREMENT_EDGES: usize = 16;
pub const MAX_MODULUS_EDGES: usize = 16;

fn guard(what: &'static str, actual: impl ToString, limit: impl ToString) -> Error {
    Error::Guard {
        what,
        actual: actual.to_string(),
        limit: limit.to_string(),
    }
}

/// Number of spanning trees, from a fraction-free determinant of the
/// Laplacian with the last row and column removed. Zero when disconnected.
pub fn count_spanning_trees(g: &MultiGraph) -> BigInt {
    let n = g.vertex_count();
    if n <= 1 {
        return BigInt::one();
    }
    let k = n - 1;
    let mut lap = vec![vec![BigInt::zero(); k]; k];
    for &(a, b) in g.edges() {
        if a < k {
            lap[a][a] += 1;
        }
        if b < k {
            lap[b][b] += 1;
        }
        if a < k && b < k {
            lap[a][b] -= 1;
            lap[b][a] -= 1;
        }
    }
    bareiss_determinant(lap)
}

/// Bareiss elimination: every intermediate entry is itself a minor, so all
/// divisions are exact.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Every spanning tree exactly once, in lexicographic order of edge ids.
/// Refuses when the tree count exceeds `limit`.
pub fn enumerate_spanning_trees_limited(g: &MultiGraph, limit: u64) -> Result<Vec<EdgeSubset>> {
    g.require_connected()?;
    let count = count_spanning_trees(g);
    if count > BigInt::from(limit) {
        return Err(guard("spanning tree count", count, limit));
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let n = g.vertex_count();
    if n <= 1 {
        out.push(EdgeSubset::empty(g.edge_count()));
        return Ok(out);
    }
    branch(g, 0, &mut chosen, &mut out);
    Ok(out)
}

pub fn enumerate_spanning_trees(g: &MultiGraph) -> Result<Vec<EdgeSubset>> {
    enumerate_spanning_trees_limited(g, MAX_ENUMERATED_TREES)
}

/// Contraction/deletion: edge `next` is either taken (contracted) when it
/// joins two different pieces, or dropped when the rest can still span.
fn branch(g: &MultiGraph, next: EdgeId, chosen: &mut Vec<EdgeId>, out: &mut Vec<EdgeSubset>) {
    let n = g.vertex_count();
    if chosen.len() == n - 1 {
        out.push(EdgeSubset::from_ids(g.edge_count(), chosen.iter().copied()));
        return;
    }
    if next == g.edge_count() {
        return;
    }
    let mut dsu = DisjointSets::new(n);
    for &e in chosen.iter() {
        let (a, b) = g.endpoints(e);
        dsu.union(a, b);
    }
    let (a, b) = g.endpoints(next);
    if dsu.find(a) != dsu.find(b) {
        chosen.push(next);
        branch(g, next + 1, chosen, out);
        chosen.pop();
    }
    for e in next + 1..g.edge_count() {
        let (a, b) = g.endpoints(e);
        dsu.union(a, b);
    }
    if dsu.set_count() == 1 {
        branch(g, next + 1, chosen, out);
    }
}

fn overlap_by_components(g: &MultiGraph, j: &EdgeSubset) -> usize {
    component_count(g, &j.complement()) - 1
}

/// θ(G) by exhaustive search, together with every subset attaining it.
pub fn brute_theta(g: &MultiGraph) -> Result<(Theta, Vec<EdgeSubset>)> {
    g.require_connected_nontrivial()?;
    let m = g.edge_count();
    if m > MAX_THETA_EDGES {
        return Err(guard("edge count", m, MAX_THETA_EDGES));
    }
    let mut best = Theta::from_integer(0);
    let mut family = Vec::new();
    for mask in 1u64..(1u64 << m) {
        let j = EdgeSubset::from_mask(m, mask);
        let value = Theta::new(overlap_by_components(g, &j) as u64, j.len() as u64);
        match value.cmp(&best) {
            Ordering::Greater => {
                best = value;
                family.clear();
                family.push(j);
            }
            Ordering::Equal => family.push(j),
            Ordering::Less => {}
        }
    }
    Ok((best, family))
}

/// `min { q·f(J') − x'(J') : j ∈ J' }` by enumeration. Among minimisers the
/// smallest set is returned, ties broken by lexicographic edge ids.
pub fn brute_min_increment(
    g: &MultiGraph,
    x: &IncrementVector,
    j: EdgeId,
) -> Result<(i64, EdgeSubset)> {
    let m = g.edge_count();
    if m > MAX_INCREMENT_EDGES {
        return Err(guard("edge count", m, MAX_INCREMENT_EDGES));
    }
    if j >= m || x.len() != m {
        return Err(Error::InvalidArgument(
            "edge or vector does not match graph".into(),
        ));
    }
    let q = x.scale() as i64;
    let mut best: Option<(i64, usize, Vec<EdgeId>, EdgeSubset)> = None;
    for mask in 0u64..(1u64 << m) {
        if mask >> j & 1 == 0 {
            continue;
        }
        let set = EdgeSubset::from_mask(m, mask);
        let value = q * graphic_rank(g, &set) as i64 - x.sum_over(&set) as i64;
        let key = (value, set.len(), set.to_vec());
        let better = match &best {
            None => true,
            Some((v, l, ids, _)) => key < (*v, *l, ids.clone()),
        };
        if better {
            best = Some((key.0, key.1, key.2, set));
        }
    }
    let (value, _, _, set) = best.expect("the singleton {j} is always enumerated");
    Ok((value, set))
}

/// η* by the same peeling recursion as the main pipeline, but with critical
/// sets found by exhaustive search.
pub fn brute_modulus(g: &MultiGraph) -> Result<ModulusResult> {
    if g.edge_count() > MAX_MODULUS_EDGES {
        return Err(guard("edge count", g.edge_count(), MAX_MODULUS_EDGES));
    }
    modulus::peel(g, |sub| {
        let (theta, family) = brute_theta(sub)?;
        // Largest critical set, first in enumeration order.
        let largest = family.iter().map(EdgeSubset::len).max().unwrap_or(0);
        let critical = family
            .into_iter()
            .find(|s| s.len() == largest)
            .ok_or_else(|| Error::invariant("no maximiser"))?;
        Ok(CriticalSetResult {
            theta,
            critical,
            used_fallback: false,
            probes: Vec::new(),
        })
    })
}

/// Total weight of a minimum spanning tree under exact edge weights.
pub fn minimum_tree_weight(g: &MultiGraph, weights: &[Theta]) -> Rational {
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by(|&a, &b| weights[a].cmp(&weights[b]).then(a.cmp(&b)));
    let mut dsu = DisjointSets::new(g.vertex_count());
    let mut total = Rational::zero();
    for e in order {
        let (a, b) = g.endpoints(e);
        if dsu.union(a, b) {
            total += to_big(&weights[e]);
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Exact optimality certificates for a claimed η*, ρ*, Mod triple.
pub fn verify_modulus(g: &MultiGraph, r: &ModulusResult) -> VerifyReport {
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| {
        checks.push(Check {
            name,
            passed,
            detail,
        })
    };

    if r.eta.len() != g.edge_count() || r.rho.len() != g.edge_count() {
        push(
            "shape",
            false,
            format!(
                "{} η*, {} ρ* values for {} edges",
                r.eta.len(),
                r.rho.len(),
                g.edge_count()
            ),
        );
        return VerifyReport { checks };
    }

    let zero = Theta::from_integer(0);
    let one = Theta::from_integer(1);
    let out_of_range: Vec<EdgeId> = (0..r.eta.len())
        .filter(|&e| r.eta[e] <= zero || r.eta[e] > one)
        .collect();
    push(
        "eta_range",
        out_of_range.is_empty(),
        format!("edges outside (0, 1]: {out_of_range:?}"),
    );

    let sum = r.eta_sum();
    let expected = Rational::from_integer(BigInt::from(g.vertex_count()) - 1);
    push(
        "eta_sum",
        sum == expected,
        format!("Σ η* = {sum}, |V| − 1 = {expected}"),
    );

    let squares = r.eta_square_sum();
    let product = &r.modulus * &squares;
    push(
        "modulus_normalization",
        product.is_one(),
        format!("Mod · Σ η*² = {product}"),
    );

    let bad_rho: Vec<EdgeId> = (0..r.eta.len())
        .filter(|&e| r.rho[e] != to_big(&r.eta[e]) * &r.modulus)
        .collect();
    push(
        "rho_scaling",
        bad_rho.is_empty(),
        format!("edges with ρ* ≠ η*·Mod: {bad_rho:?}"),
    );

    let bridge_set = bridges(g);
    let bad_bridges: Vec<EdgeId> = bridge_set.iter().filter(|&e| r.eta[e] != one).collect();
    push(
        "bridges",
        bad_bridges.is_empty(),
        format!("bridges with η* ≠ 1: {bad_bridges:?}"),
    );

    let mst = minimum_tree_weight(g, &r.eta);
    push(
        "mst_identity",
        mst == squares,
        format!("min tree η*-length = {mst}, Σ η*² = {squares}"),
    );

    let monotone = r.trace.iter().all(|rec| match rec.parent {
        Some(p) => rec.theta <= r.trace[p].theta,
        None => true,
    });
    push(
        "trace_monotone",
        monotone,
        "child θ ≤ parent θ along the trace".into(),
    );

    let positive = r.modulus.is_positive();
    push("modulus_positive", positive, format!("Mod = {}", r.modulus));

    VerifyReport { checks }
}
