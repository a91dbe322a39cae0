//! Timing harness for the modulus pipeline on the generated families.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{mpsc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use anyhow::Result;
use treemod_core::spanning_tree_modulus;

use crate::generate::{generate, Family};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub family: Family,
    /// Generator size parameter (`k` for multipartite, `n` otherwise).
    pub n: usize,
    pub rep: usize,
    pub vertices: usize,
    pub edges: usize,
    pub nanos: u64,
    /// The modulus as `num/den`.
    pub result: String,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub families: Vec<Family>,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    /// Instances still running after this long are abandoned and recorded
    /// as missing, together with every larger size of the same family.
    pub timeout: Option<Duration>,
    pub jobs: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fit {
    pub family: Family,
    /// Least-squares slope of `ln(nanos)` against `ln(edges)`.
    pub slope: Option<f64>,
    pub points: usize,
    pub envelope: f64,
}

impl Fit {
    pub fn within_envelope(&self) -> bool {
        self.slope.is_some_and(|s| s < self.envelope)
    }
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    /// `(family, n, rep)` of instances that timed out or were skipped.
    pub missing: Vec<(Family, usize, usize)>,
    pub fits: Vec<Fit>,
}

/// Seed of one random instance, mixed so neighbouring sizes and
/// repetitions draw unrelated streams.
pub fn instance_seed(seed: u64, n: usize, rep: usize) -> u64 {
    seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (rep as u64 + 1).wrapping_mul(0xBF58_476D_1CE4_E5B9)
}

pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn fit(family: Family, records: &[BenchRecord]) -> Fit {
    let points: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.family == family)
        .map(|r| ((r.edges as f64).ln(), (r.nanos as f64).ln()))
        .collect();
    Fit {
        family,
        slope: fit_slope(&points),
        points: points.len(),
        envelope: family.envelope_exponent(),
    }
}

enum Outcome {
    Done(BenchRecord),
    Missing,
}

fn run_instance(
    family: Family,
    n: usize,
    rep: usize,
    seed: u64,
    timeout: Option<Duration>,
) -> Result<Outcome> {
    let g = generate(family, n, instance_seed(seed, n, rep))?;
    let (vertices, edges) = (g.vertex_count(), g.edge_count());
    let (tx, rx) = mpsc::channel();
    // The solver runs on its own thread so a timeout can abandon it.
    thread::spawn(move || {
        let start = Instant::now();
        let r = spanning_tree_modulus(&g);
        let nanos = start.elapsed().as_nanos().max(1) as u64;
        let _ = tx.send((r, nanos));
    });
    let received = match timeout {
        Some(t) => rx.recv_timeout(t).ok(),
        None => rx.recv().ok(),
    };
    let Some((result, nanos)) = received else {
        return Ok(Outcome::Missing);
    };
    let m = result?;
    Ok(Outcome::Done(BenchRecord {
        family,
        n,
        rep,
        vertices,
        edges,
        nanos,
        result: m.modulus.to_string(),
    }))
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    let mut tasks = Vec::new();
    for &family in &cfg.families {
        for &n in &cfg.sizes {
            for rep in 0..cfg.reps {
                tasks.push((family, n, rep));
            }
        }
    }
    let next = AtomicUsize::new(0);
    let cutoff: Mutex<HashMap<Family, usize>> = Mutex::new(HashMap::new());
    let results: Mutex<Vec<(usize, Result<Outcome>)>> = Mutex::new(Vec::new());

    thread::scope(|scope| {
        for _ in 0..cfg.jobs.max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(family, n, rep)) = tasks.get(i) else {
                    break;
                };
                let skip = cutoff.lock().unwrap().get(&family).is_some_and(|&c| n >= c);
                let outcome = if skip {
                    Ok(Outcome::Missing)
                } else {
                    run_instance(family, n, rep, cfg.seed, cfg.timeout)
                };
                if matches!(outcome, Ok(Outcome::Missing)) {
                    let mut c = cutoff.lock().unwrap();
                    let entry = c.entry(family).or_insert(n);
                    *entry = (*entry).min(n);
                }
                results.lock().unwrap().push((i, outcome));
            });
        }
    });

    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(i, _)| *i);
    let mut records = Vec::new();
    let mut missing = Vec::new();
    for (i, outcome) in results {
        match outcome? {
            Outcome::Done(r) => records.push(r),
            Outcome::Missing => missing.push(tasks[i]),
        }
    }
    let fits = cfg.families.iter().map(|&f| fit(f, &records)).collect();
    Ok(BenchReport {
        records,
        missing,
        fits,
    })
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("family,n,vertices,edges,nanos,result\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.family, r.n, r.vertices, r.edges, r.nanos, r.result
        )
        .unwrap();
    }
    out
}

pub fn summary(report: &BenchReport) -> String {
    let mut out = String::new();
    for f in &report.fits {
        let slope = f.slope.map_or("n/a".to_string(), |s| format!("{s:.3}"));
        writeln!(
            out,
            "{:<13} slope = {slope:<6} envelope = {:.3}  points = {}",
            f.family.name(),
            f.envelope,
            f.points
        )
        .unwrap();
    }
    if !report.missing.is_empty() {
        writeln!(
            out,
            "missing (timed out or skipped): {}",
            report.missing.len()
        )
        .unwrap();
    }
    out
}
