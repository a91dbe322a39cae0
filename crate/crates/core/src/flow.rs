//! Integer max-flow / min-cut on undirected capacitated networks.
//!
//! Each undirected edge becomes a pair of opposite arcs that are each other's
//! residual twin, so both directions share the one capacity. Infinite edges
//! are given `(sum of finite capacities) + 1`, which no finite cut can reach.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::EdgeId;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Capacity {
    Finite(u64),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowEdge {
    pub a: NodeId,
    pub b: NodeId,
    pub capacity: Capacity,
    /// The original graph edge this flow edge stands for, if any.
    pub origin: Option<EdgeId>,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    nodes: usize,
    source: NodeId,
    sink: NodeId,
    edges: Vec<FlowEdge>,
    finite_total: u64,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: NodeId, sink: NodeId) -> Result<Self> {
        if source >= nodes || sink >= nodes {
            return Err(Error::Flow(format!(
                "source {source} / sink {sink} outside 0..{nodes}"
            )));
        }
        if source == sink {
            return Err(Error::Flow("source and sink coincide".into()));
        }
        Ok(FlowNetwork {
            nodes,
            source,
            sink,
            edges: Vec::new(),
            finite_total: 0,
        })
    }

    /// Adds an undirected edge and returns its flow-edge id.
    pub fn add_edge(
        &mut self,
        a: NodeId,
        b: NodeId,
        capacity: Capacity,
        origin: Option<EdgeId>,
    ) -> Result<usize> {
        if a >= self.nodes || b >= self.nodes {
            return Err(Error::Flow(format!(
                "edge ({a}, {b}) outside 0..{}",
                self.nodes
            )));
        }
        if a == b {
            return Err(Error::Flow(format!("self-loop at {a}")));
        }
        if let Capacity::Finite(c) = capacity {
            // 2·total + 1 must stay representable as an i64 residual.
            let total = self
                .finite_total
                .checked_add(c)
                .ok_or(Error::CapacityOverflow)?;
            if total > (i64::MAX as u64 - 1) / 2 {
                return Err(Error::CapacityOverflow);
            }
            self.finite_total = total;
        }
        self.edges.push(FlowEdge {
            a,
            b,
            capacity,
            origin,
        });
        Ok(self.edges.len() - 1)
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn edges(&self) -> &[FlowEdge] {
        &self.edges
    }

    /// The stand-in value used for `Capacity::Infinite`.
    pub fn infinite_value(&self) -> u64 {
        self.finite_total + 1
    }

    fn resolve(&self, c: Capacity) -> i64 {
        match c {
            Capacity::Finite(v) => v as i64,
            Capacity::Infinite => self.infinite_value() as i64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub value: u64,
    /// Membership flag per node; always contains the source.
    pub source_side: Vec<bool>,
    /// Flow-edge ids with exactly one endpoint on the source side.
    pub cut_edges: Vec<usize>,
}

struct Arc {
    to: NodeId,
    twin: usize,
    residual: i64,
}

/// Dinic's algorithm over the arc-pair representation.
struct Dinic {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    level: Vec<u32>,
    cursor: Vec<usize>,
}

impl Dinic {
    fn new(net: &FlowNetwork) -> Self {
        let mut arcs = Vec::with_capacity(2 * net.edges.len());
        let mut adj = vec![Vec::new(); net.nodes];
        for e in &net.edges {
            let c = net.resolve(e.capacity);
            let i = arcs.len();
            arcs.push(Arc {
                to: e.b,
                twin: i + 1,
                residual: c,
            });
            arcs.push(Arc {
                to: e.a,
                twin: i,
                residual: c,
            });
            adj[e.a].push(i);
            adj[e.b].push(i + 1);
        }
        Dinic {
            arcs,
            adj,
            level: vec![0; net.nodes],
            cursor: vec![0; net.nodes],
        }
    }

    fn bfs(&mut self, s: NodeId, t: NodeId) -> bool {
        const UNSEEN: u32 = u32::MAX;
        self.level.fill(UNSEEN);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.adj[v] {
                let arc = &self.arcs[a];
                if arc.residual > 0 && self.level[arc.to] == UNSEEN {
                    self.level[arc.to] = self.level[v] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        self.level[t] != UNSEEN
    }

    fn augment(&mut self, v: NodeId, t: NodeId, limit: i64) -> i64 {
        if v == t {
            return limit;
        }
        while self.cursor[v] < self.adj[v].len() {
            let a = self.adj[v][self.cursor[v]];
            let (to, residual) = (self.arcs[a].to, self.arcs[a].residual);
            if residual > 0 && self.level[to] == self.level[v] + 1 {
                let pushed = self.augment(to, t, limit.min(residual));
                if pushed > 0 {
                    self.arcs[a].residual -= pushed;
                    let twin = self.arcs[a].twin;
                    self.arcs[twin].residual += pushed;
                    return pushed;
                }
            }
            self.cursor[v] += 1;
        }
        0
    }

    /// Stops early once the flow reaches `stop`; every augmenting path
    /// carries at most one arc capacity, so the sum never overflows.
    fn max_flow(&mut self, s: NodeId, t: NodeId, stop: i64) -> i64 {
        let mut flow = 0;
        while flow < stop && self.bfs(s, t) {
            self.cursor.fill(0);
            while flow < stop {
                let pushed = self.augment(s, t, i64::MAX);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
        flow
    }

    fn residual_reach(&self, s: NodeId) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &a in &self.adj[v] {
                let arc = &self.arcs[a];
                if arc.residual > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}

/// Minimum source/sink cut. The source side is the set of nodes reachable
/// from the source in the final residual network, i.e. the smallest
/// minimum-cut source side.
pub fn min_cut(net: &FlowNetwork) -> Result<CutResult> {
    let mut dinic = Dinic::new(net);
    let flow = dinic.max_flow(net.source, net.sink, net.infinite_value() as i64);
    if flow as u64 >= net.infinite_value() {
        return Err(Error::NoFiniteCut);
    }
    let source_side = dinic.residual_reach(net.source);
    let mut value = 0u64;
    let mut cut_edges = Vec::new();
    for (id, e) in net.edges.iter().enumerate() {
        if source_side[e.a] != source_side[e.b] {
            match e.capacity {
                Capacity::Finite(c) => value += c,
                Capacity::Infinite => {
                    return Err(Error::invariant("infinite edge crosses a minimum cut"))
                }
            }
            cut_edges.push(id);
        }
    }
    if value != flow as u64 {
        return Err(Error::invariant(format!(
            "cut capacity {value} differs from flow value {flow}"
        )));
    }
    Ok(CutResult {
        value,
        source_side,
        cut_edges,
    })
}
