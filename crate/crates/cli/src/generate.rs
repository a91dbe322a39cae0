//! Graph families used for benchmarking.
//!
//! Random families draw from ChaCha8 seeded with the 64-bit user seed, so a
//! given `(family, size, seed)` produces the same graph on every platform.
//! Disconnected samples are thrown away and redrawn from the same stream.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treemod_core::MultiGraph;

/// Redraws allowed before a random family gives up.
pub const MAX_ATTEMPTS: usize = 1_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `K_n`.
    Complete,
    /// Parts of sizes `1, 2, ..., k`, each part completely joined to the next.
    Multipartite,
    /// Erdős–Rényi `G(n, p)` with `p = 2 ln(n) / n`.
    Gnp,
    /// `n` uniform points in the unit square, joined below distance `3 / √n`.
    Geometric,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Complete,
        Family::Multipartite,
        Family::Gnp,
        Family::Geometric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Multipartite => "multipartite",
            Family::Gnp => "gnp",
            Family::Geometric => "geometric",
        }
    }

    pub fn is_random(self) -> bool {
        matches!(self, Family::Gnp | Family::Geometric)
    }

    /// Exponent `a` such that `|V|²·|E|^{5/2}` grows like `|E|^a` on this
    /// family, ignoring logarithmic factors.
    pub fn envelope_exponent(self) -> f64 {
        match self {
            // |E| ~ n²/2, so |V|² ~ |E|.
            Family::Complete => 3.5,
            // |V| ~ k²/2 and |E| ~ k³/3, so |V|² ~ |E|^{4/3}.
            Family::Multipartite => 2.5 + 4.0 / 3.0,
            // |E| ~ n ln n and ~ 4.5πn respectively: |V|² ~ |E|² up to logs.
            Family::Gnp | Family::Geometric => 4.5,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                format!("unknown family `{s}` (expected complete, multipartite, gnp or geometric)")
            })
    }
}

pub fn complete(n: usize) -> MultiGraph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    MultiGraph::new(n, edges).expect("complete graph is well formed")
}

pub fn multipartite(k: usize) -> MultiGraph {
    let mut first = Vec::with_capacity(k);
    let mut n = 0;
    for size in 1..=k {
        first.push(n);
        n += size;
    }
    let mut edges = Vec::new();
    for i in 1..k {
        // Part i has i vertices, part i + 1 has i + 1.
        for a in first[i - 1]..first[i - 1] + i {
            for b in first[i]..first[i] + i + 1 {
                edges.push((a, b));
            }
        }
    }
    MultiGraph::new(n, edges).expect("multipartite graph is well formed")
}

fn gnp_sample(rng: &mut ChaCha8Rng, n: usize) -> MultiGraph {
    let p = (2.0 * (n as f64).ln() / n as f64).min(1.0);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    MultiGraph::new(n, edges).expect("sampled graph is well formed")
}

fn geometric_sample(rng: &mut ChaCha8Rng, n: usize) -> MultiGraph {
    let r = 3.0 / (n as f64).sqrt();
    let points: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen::<f64>(), rng.gen::<f64>()))
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (dx, dy) = (points[a].0 - points[b].0, points[a].1 - points[b].1);
            if (dx * dx + dy * dy).sqrt() < r {
                edges.push((a, b));
            }
        }
    }
    MultiGraph::new(n, edges).expect("sampled graph is well formed")
}

/// Builds one member of `family`. `size` is `n` for every family except
/// multipartite, where it is the number of parts `k`.
pub fn generate(family: Family, size: usize, seed: u64) -> Result<MultiGraph> {
    if size < 2 {
        bail!("{family} needs size at least 2, got {size}");
    }
    match family {
        Family::Complete => Ok(complete(size)),
        Family::Multipartite => Ok(multipartite(size)),
        Family::Gnp | Family::Geometric => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..MAX_ATTEMPTS {
                let g = if family == Family::Gnp {
                    gnp_sample(&mut rng, size)
                } else {
                    geometric_sample(&mut rng, size)
                };
                if g.is_connected() {
                    return Ok(g);
                }
            }
            bail!(
                "no connected {family} sample with n = {size} after {MAX_ATTEMPTS} attempts; \
                 try a larger n or another seed"
            )
        }
    }
}
