//! Undirected multigraphs, dense edge subsets and the rank/overlap queries the
//! rest of the crate is built on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Theta;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Undirected multigraph with stable edge ids.
///
/// Edge ids are positions in the edge sequence. Parallel edges are allowed,
/// self-loops are not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct MultiGraph {
    vertices: usize,
    edges: Vec<(VertexId, VertexId)>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawGraph {
    vertices: usize,
    edges: Vec<[VertexId; 2]>,
}

impl TryFrom<RawGraph> for MultiGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        MultiGraph::new(raw.vertices, raw.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<MultiGraph> for RawGraph {
    fn from(g: MultiGraph) -> Self {
        RawGraph {
            vertices: g.vertices,
            edges: g.edges.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl MultiGraph {
    pub fn new(
        vertices: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let edges: Vec<_> = edges.into_iter().collect();
        for (id, &(a, b)) in edges.iter().enumerate() {
            if a >= vertices || b >= vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge {id} ({a}, {b}) has an endpoint outside 0..{vertices}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!(
                    "edge {id} is a self-loop at {a}"
                )));
            }
        }
        Ok(MultiGraph { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn all_edges(&self) -> EdgeSubset {
        EdgeSubset::full(self.edge_count())
    }

    /// Per-vertex incidence lists of `(neighbour, edge id)`, in edge id order.
    pub fn adjacency(&self) -> Vec<Vec<(VertexId, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        self.vertices <= 1 || component_count(self, &self.all_edges()) == 1
    }

    /// Fails unless the graph is connected with at least two vertices.
    pub fn require_connected_nontrivial(&self) -> Result<()> {
        if self.vertices < 2 || self.edges.is_empty() {
            return Err(Error::Trivial);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }
}

/// A set of edge ids drawn from one host graph, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    universe: usize,
    words: Vec<u64>,
}

impl EdgeSubset {
    pub fn empty(universe: usize) -> Self {
        EdgeSubset {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut s = Self::empty(universe);
        for e in ids {
            s.insert(e);
        }
        s
    }

    /// Subset whose members are the set bits of `mask`. Requires `universe <= 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64, "mask subsets need universe <= 64");
        let mut s = Self::empty(universe);
        if universe > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.universe % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of edges in the host graph.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        e < self.universe && self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn insert(&mut self, e: EdgeId) {
        assert!(
            e < self.universe,
            "edge id {e} outside universe {}",
            self.universe
        );
        self.words[e / 64] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: EdgeId) {
        if e < self.universe {
            self.words[e / 64] &= !(1 << (e % 64));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<EdgeId> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &EdgeSubset) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &EdgeSubset) -> EdgeSubset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &EdgeSubset) -> EdgeSubset {
        debug_assert_eq!(self.universe, other.universe);
        EdgeSubset {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn complement(&self) -> EdgeSubset {
        let mut s = EdgeSubset {
            universe: self.universe,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &EdgeSubset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub(crate) fn set_count(&self) -> usize {
        self.sets
    }
}

/// Number of connected components of `(V, active)`, isolated vertices included.
pub fn component_count(g: &MultiGraph, active: &EdgeSubset) -> usize {
    let mut dsu = DisjointSets::new(g.vertex_count());
    for e in active.iter() {
        let (a, b) = g.endpoints(e);
        dsu.union(a, b);
    }
    dsu.set_count()
}

/// Graphic rank `f(J) = |V| - Q(G_J)`.
pub fn graphic_rank(g: &MultiGraph, j: &EdgeSubset) -> usize {
    g.vertex_count() - component_count(g, j)
}

/// Smallest number of edges of `j` that any spanning tree must use,
/// `Q(G_{E∖J}) - 1`.
pub fn min_overlap(g: &MultiGraph, j: &EdgeSubset) -> Result<usize> {
    g.require_connected()?;
    Ok(component_count(g, &j.complement()) - 1)
}

/// Vulnerability of an edge set, `M(J)/|J|`, and zero for the empty set.
pub fn theta_of_set(g: &MultiGraph, j: &EdgeSubset) -> Result<Theta> {
    let m = min_overlap(g, j)?;
    if j.is_empty() {
        return Ok(Theta::from_integer(0));
    }
    Ok(Theta::new(m as u64, j.len() as u64))
}

/// One piece of the graph left after removing an edge set: a vertex class of
/// the remaining components together with every parent edge that has both
/// endpoints inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Parent vertex ids, ascending. Local vertex `i` is `vertices[i]`.
    pub vertices: Vec<VertexId>,
    /// Parent edge ids, ascending. Local edge `k` is `edges[k]`.
    pub edges: Vec<EdgeId>,
    pub graph: MultiGraph,
    /// Single vertex, no edges.
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub removed: EdgeSubset,
    /// Ordered by smallest parent vertex id.
    pub components: Vec<Component>,
}

impl Decomposition {
    pub fn nontrivial(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| !c.trivial)
    }
}

/// Splits `g` into the components of `G_{E∖J}` and attaches to each the
/// vertex-induced edge set of its vertex class.
pub fn decompose_after_removal(g: &MultiGraph, j: &EdgeSubset) -> Decomposition {
    let n = g.vertex_count();
    let mut dsu = DisjointSets::new(n);
    for e in j.complement().iter() {
        let (a, b) = g.endpoints(e);
        dsu.union(a, b);
    }

    let mut class_of_root = vec![usize::MAX; n];
    let mut class = vec![0; n];
    let mut local = vec![0; n];
    let mut members: Vec<Vec<VertexId>> = Vec::new();
    for v in 0..n {
        let r = dsu.find(v);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = members.len();
            members.push(Vec::new());
        }
        let c = class_of_root[r];
        class[v] = c;
        local[v] = members[c].len();
        members[c].push(v);
    }

    let mut edge_lists: Vec<Vec<EdgeId>> = vec![Vec::new(); members.len()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if class[a] == class[b] {
            edge_lists[class[a]].push(e);
        }
    }

    let components = members
        .into_iter()
        .zip(edge_lists)
        .map(|(vertices, edges)| {
            let graph = MultiGraph {
                vertices: vertices.len(),
                edges: edges
                    .iter()
                    .map(|&e| {
                        let (a, b) = g.endpoints(e);
                        (local[a], local[b])
                    })
                    .collect(),
            };
            Component {
                trivial: edges.is_empty(),
                vertices,
                edges,
                graph,
            }
        })
        .collect();

    Decomposition {
        removed: j.clone(),
        components,
    }
}

/// Bridges of a multigraph. A pair of parallel edges is never a bridge.
pub fn bridges(g: &MultiGraph) -> EdgeSubset {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut out = EdgeSubset::empty(g.edge_count());
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, edge used to enter it, next incidence index)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&(v, via, next)) = stack.last() {
            if let Some(&(w, e)) = adj[v].get(next) {
                if let Some(top) = stack.last_mut() {
                    top.2 += 1;
                }
                if Some(e) == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.insert(via.expect("non-root has an entry edge"));
                    }
                }
            }
        }
    }
    out
}
