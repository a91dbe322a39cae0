//! Graph vulnerability θ(G) and critical edge sets.
//!
//! θ(G) is one of finitely many ratios p/q, and `θ(G) ≤ p/q` holds exactly
//! when a basis for `y ≡ p/q` reaches `x'(E) = q·(|V| − 1)`. A binary search
//! over the sorted candidates finds θ(G); the complement of the tight set
//! from the basis run at θ(G) is a critical set whenever it is nonempty.
//!
//! The run at θ(G) may legitimately return an empty set (all of `E` is tight
//! there). In that case the basis is recomputed just below θ(G), at
//! `p/q − 1/|E|²`, where no other candidate fits in between; that run always
//! leaves a nonempty critical complement.

use crate::error::{Error, Result};
use crate::graph::{theta_of_set, EdgeSubset, MultiGraph};
use crate::polymatroid::{cunningham_basis, BasisResult};
use crate::rational::Theta;

/// Sorted, deduplicated candidate values `p/q` with
/// `1 ≤ p ≤ min(|V| − 1, q)` and `1 ≤ q ≤ |E|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaCandidates(Vec<Theta>);

impl ThetaCandidates {
    pub fn as_slice(&self) -> &[Theta] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: &Theta) -> bool {
        self.0.binary_search(t).is_ok()
    }
}

pub fn theta_candidates(vertices: usize, edges: usize) -> ThetaCandidates {
    let mut out = Vec::new();
    if vertices >= 2 {
        for q in 1..=edges as u64 {
            for p in 1..=q.min(vertices as u64 - 1) {
                out.push(Theta::new(p, q));
            }
        }
    }
    out.sort();
    out.dedup();
    ThetaCandidates(out)
}

fn basis_reaches_rank(g: &MultiGraph, basis: &BasisResult) -> bool {
    basis.basis_total >= basis.q * (g.vertex_count() as u64 - 1)
}

/// Decides `θ(G) ≤ p/q`.
pub fn is_theta_le(g: &MultiGraph, p: u64, q: u64) -> Result<bool> {
    let basis = cunningham_basis(g, p, q)?;
    Ok(basis_reaches_rank(g, &basis))
}

/// One oracle call made during the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub value: Theta,
    pub basis_total: u64,
    pub theta_at_most: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSetResult {
    pub theta: Theta,
    pub critical: EdgeSubset,
    pub used_fallback: bool,
    pub probes: Vec<Probe>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VulnerabilityOptions {
    /// Ignore the set returned by the run at θ(G) and always take the
    /// result of the run just below it.
    pub force_fallback: bool,
}

pub fn vulnerability(g: &MultiGraph) -> Result<CriticalSetResult> {
    vulnerability_with(g, &VulnerabilityOptions::default())
}

pub fn vulnerability_with(
    g: &MultiGraph,
    opts: &VulnerabilityOptions,
) -> Result<CriticalSetResult> {
    g.require_connected_nontrivial()?;
    let n = g.vertex_count() as u64;
    let m = g.edge_count() as u64;
    let candidates = theta_candidates(g.vertex_count(), g.edge_count());
    let cands = candidates.as_slice();

    let floor = Theta::new(n - 1, m);
    let mut lo = cands
        .binary_search(&floor)
        .map_err(|_| Error::invariant("(|V|-1)/|E| missing from candidates"))?;
    // θ(G) ≤ 1 always, so the last candidate needs no probe.
    let mut hi = cands.len() - 1;
    let mut probes = Vec::new();
    let mut accepted: Option<(usize, BasisResult)> = None;

    let probe = |c: Theta, probes: &mut Vec<Probe>| -> Result<(bool, BasisResult)> {
        let basis = cunningham_basis(g, *c.numer(), *c.denom())?;
        let ok = basis_reaches_rank(g, &basis);
        probes.push(Probe {
            value: c,
            basis_total: basis.basis_total,
            theta_at_most: ok,
        });
        Ok((ok, basis))
    };

    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let (ok, basis) = probe(cands[mid], &mut probes)?;
        if ok {
            hi = mid;
            accepted = Some((mid, basis));
        } else {
            lo = mid + 1;
        }
    }
    let theta = cands[lo];
    let direct = match accepted {
        Some((i, basis)) if i == lo => basis,
        _ => {
            let (ok, basis) = probe(theta, &mut probes)?;
            if !ok {
                return Err(Error::invariant(format!("oracle rejects θ(G) ≤ {theta}")));
            }
            basis
        }
    };

    let (p, q) = (*theta.numer(), *theta.denom());
    let (critical, used_fallback) = if !direct.j_set.is_empty() && !opts.force_fallback {
        (direct.j_set, false)
    } else {
        let m2 = m * m;
        let below = cunningham_basis(g, p * m2 - q, q * m2)?;
        (below.j_set, true)
    };

    if critical.is_empty() {
        return Err(Error::invariant(format!(
            "empty critical set at θ = {theta}"
        )));
    }
    let check = theta_of_set(g, &critical)?;
    if check != theta {
        return Err(Error::invariant(format!(
            "extracted set has θ(J) = {check}, expected θ(G) = {theta}"
        )));
    }
    if theta < floor || theta > Theta::from_integer(1) {
        return Err(Error::invariant(format!("θ(G) = {theta} out of range")));
    }

    Ok(CriticalSetResult {
        theta,
        critical,
        used_fallback,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn t(p: u64, q: u64) -> Theta {
        Theta::new(p, q)
    }

    #[test]
    fn candidate_sets() {
        assert_eq!(
            theta_candidates(3, 3).as_slice(),
            &[t(1, 3), t(1, 2), t(2, 3), t(1, 1)]
        );
        assert_eq!(theta_candidates(2, 1).as_slice(), &[t(1, 1)]);
        assert_eq!(
            theta_candidates(4, 4).as_slice(),
            &[t(1, 4), t(1, 3), t(1, 2), t(2, 3), t(3, 4), t(1, 1)]
        );
        let c = theta_candidates(7, 11);
        assert!(c.as_slice().windows(2).all(|w| w[0] < w[1]));
        assert!(c.contains(&t(6, 11)) && c.contains(&t(1, 1)));
    }

    #[test]
    fn oracle_examples() {
        let tri = triangle();
        assert!(is_theta_le(&tri, 2, 3).unwrap());
        assert!(!is_theta_le(&tri, 1, 2).unwrap());
        assert!(is_theta_le(&path(5), 1, 1).unwrap());
    }

    #[test]
    fn oracle_is_monotone_over_candidates() {
        for g in [triangle(), complete(5), bridged_triangles(), cycle(6)] {
            let flags: Vec<bool> = theta_candidates(g.vertex_count(), g.edge_count())
                .as_slice()
                .iter()
                .map(|c| is_theta_le(&g, *c.numer(), *c.denom()).unwrap())
                .collect();
            let first = flags.iter().position(|&f| f).unwrap();
            assert!(flags[..first].iter().all(|&f| !f));
            assert!(flags[first..].iter().all(|&f| f));
        }
    }

    #[test]
    fn cycles_are_entirely_critical() {
        for n in 3..=8 {
            let g = cycle(n);
            let r = vulnerability(&g).unwrap();
            assert_eq!(r.theta, t(n as u64 - 1, n as u64));
            assert_eq!(r.critical, g.all_edges());
        }
    }

    #[test]
    fn complete_graphs() {
        for n in 3..=7 {
            let g = complete(n);
            let r = vulnerability(&g).unwrap();
            assert_eq!(r.theta, t(2, n as u64));
            assert_eq!(r.critical, g.all_edges());
        }
    }

    #[test]
    fn bridge_is_the_critical_set() {
        let g = bridged_triangles();
        let r = vulnerability(&g).unwrap();
        assert_eq!(r.theta, t(1, 1));
        assert_eq!(r.critical.to_vec(), vec![6]);
    }

    #[test]
    fn forced_fallback_still_certifies() {
        for g in [
            triangle(),
            complete(5),
            bridged_triangles(),
            cycle(7),
            path(2),
        ] {
            let direct = vulnerability(&g).unwrap();
            let r = vulnerability_with(
                &g,
                &VulnerabilityOptions {
                    force_fallback: true,
                },
            )
            .unwrap();
            assert!(r.used_fallback);
            assert_eq!(r.theta, direct.theta);
            assert_eq!(theta_of_set(&g, &r.critical).unwrap(), r.theta);
        }
    }

    #[test]
    fn parallel_bundle() {
        let g = MultiGraph::new(2, [(0, 1); 4]).unwrap();
        let r = vulnerability(&g).unwrap();
        assert_eq!(r.theta, t(1, 4));
        assert_eq!(r.critical.len(), 4);
    }

    #[test]
    fn rejects_disconnected() {
        let g = MultiGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(vulnerability(&g), Err(Error::Disconnected));
    }
}
