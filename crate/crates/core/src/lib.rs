//! Exact graph vulnerability and spanning tree modulus.
//!
//! The pipeline is layered bottom-up:
//!
//! * [`graph`] holds the multigraph, edge subsets, rank and overlap queries,
//!   and the component decomposition left behind when an edge set is removed.
//! * [`flow`] is an integer max-flow / min-cut kernel.
//! * [`polymatroid`] runs the integer-scaled Cunningham basis algorithm on the
//!   graphic rank function, solving each increment subproblem with a min cut.
//! * [`vulnerability`] binary searches the finite set of candidate ratios for
//!   θ(G) and extracts a certified critical edge set.
//! * [`modulus`] peels critical sets recursively to obtain the optimal edge
//!   usage η*, the optimal density ρ* and the modulus itself.
//! * [`oracle`] contains brute-force and algebraic cross-checks.
//!
//! All reported quantities are exact fractions.

pub mod error;
pub mod flow;
pub mod graph;
pub mod io;
pub mod modulus;
pub mod oracle;
pub mod polymatroid;
pub mod rational;
pub mod vulnerability;

pub use error::{Error, Result};
pub use graph::{Decomposition, EdgeId, EdgeSubset, MultiGraph, VertexId};
pub use modulus::{eta_histogram, spanning_tree_modulus, ModulusResult, PeelRecord};
pub use rational::{Rational, Theta};
pub use vulnerability::{vulnerability, CriticalSetResult};
