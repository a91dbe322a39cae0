//! Output formats.
//!
//! Machine formats (JSON, CSV) carry every fraction as a separate numerator
//! and denominator integer. Integers of any size are written as JSON numbers.
//! The text format adds a rounded decimal next to each fraction.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Number, Value};
use treemod_core::io::ParsedGraph;
use treemod_core::{eta_histogram, CriticalSetResult, ModulusResult, Rational, Theta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

/// Color buckets for DOT output, highest η* first. Colors are from the
/// Okabe–Ito palette, which stays distinguishable under common forms of
/// color blindness.
pub const DOT_PALETTE: [(&str, &str); 5] = [
    ("eta = 1", "#D55E00"),
    ("3/4 <= eta < 1", "#E69F00"),
    ("1/2 <= eta < 3/4", "#009E73"),
    ("1/4 <= eta < 1/2", "#0072B2"),
    ("eta < 1/4", "#56B4E9"),
];

pub fn dot_bucket(eta: &Theta) -> usize {
    let quarter = |k: u64| Theta::new(k, 4);
    if *eta >= quarter(4) {
        0
    } else if *eta >= quarter(3) {
        1
    } else if *eta >= quarter(2) {
        2
    } else if *eta >= quarter(1) {
        3
    } else {
        4
    }
}

fn int(v: impl ToString) -> Value {
    // With arbitrary precision enabled any decimal integer is a valid Number.
    Value::Number(v.to_string().parse::<Number>().expect("integer literal"))
}

fn fraction(num: impl ToString, den: impl ToString) -> Value {
    json!({ "num": int(num), "den": int(den) })
}

fn theta_json(t: &Theta) -> Value {
    fraction(t.numer(), t.denom())
}

fn rational_json(r: &Rational) -> Value {
    fraction(r.numer(), r.denom())
}

/// `num/den` rounded half away from zero to `digits` decimal places.
pub fn decimal(num: &BigInt, den: &BigInt, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled: BigInt = num.abs() * &scale * 2 + den.abs();
    let rounded: BigInt = scaled / (den.abs() * 2);
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if (num.is_negative() != den.is_negative()) && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>digits$}")
    }
}

/// Leading digits of a nonnegative integer in scientific notation, e.g.
/// `5.091e15`. Truncated rather than rounded.
pub fn scientific(n: &BigInt, digits: usize) -> String {
    let s = n.to_string();
    let (head, rest) = s.split_at(1);
    let mantissa: String = rest.chars().take(digits).collect();
    if mantissa.is_empty() {
        format!("{head}e{}", s.len() - 1)
    } else {
        format!("{head}.{mantissa}e{}", s.len() - 1)
    }
}

fn theta_text(t: &Theta) -> String {
    let approx = decimal(&BigInt::from(*t.numer()), &BigInt::from(*t.denom()), 6);
    format!("{}/{} (~{approx})", t.numer(), t.denom())
}

fn rational_text(r: &Rational) -> String {
    format!(
        "{}/{} (~{})",
        r.numer(),
        r.denom(),
        decimal(r.numer(), r.denom(), 6)
    )
}

fn edge_labels(p: &ParsedGraph, e: usize) -> (&str, &str) {
    let (a, b) = p.graph.endpoints(e);
    (&p.labels[a], &p.labels[b])
}

pub fn vulnerability_json(p: &ParsedGraph, r: &CriticalSetResult) -> Value {
    let critical: Vec<Value> = r
        .critical
        .iter()
        .map(|e| {
            let (a, b) = edge_labels(p, e);
            json!({ "id": e, "edge": [a, b] })
        })
        .collect();
    json!({
        "vertices": p.graph.vertex_count(),
        "edges": p.graph.edge_count(),
        "theta": theta_json(&r.theta),
        "critical": critical,
        "fallback": r.used_fallback,
    })
}

pub fn vulnerability_text(p: &ParsedGraph, r: &CriticalSetResult) -> String {
    let mut out = String::new();
    let t = &r.theta;
    let approx = decimal(&BigInt::from(*t.numer()), &BigInt::from(*t.denom()), 6);
    writeln!(out, "theta = {}/{}", t.numer(), t.denom()).unwrap();
    writeln!(out, "approx = {approx}").unwrap();
    writeln!(out, "critical edges: {}", r.critical.len()).unwrap();
    for e in r.critical.iter() {
        let (a, b) = edge_labels(p, e);
        writeln!(out, "  {e}: {a} -- {b}").unwrap();
    }
    out
}

pub fn vulnerability_csv(p: &ParsedGraph, r: &CriticalSetResult) -> String {
    let mut out = String::from("edge,source,target,theta_num,theta_den\n");
    for e in r.critical.iter() {
        let (a, b) = edge_labels(p, e);
        writeln!(out, "{e},{a},{b},{},{}", r.theta.numer(), r.theta.denom()).unwrap();
    }
    out
}

pub fn modulus_json(p: &ParsedGraph, r: &ModulusResult) -> Value {
    let eta: Vec<Value> = (0..p.graph.edge_count())
        .map(|e| {
            let (a, b) = edge_labels(p, e);
            json!({
                "id": e,
                "edge": [a, b],
                "num": int(r.eta[e].numer()),
                "den": int(r.eta[e].denom()),
                "rho": rational_json(&r.rho[e]),
            })
        })
        .collect();
    let trace: Vec<Value> = r
        .trace
        .iter()
        .map(|rec| {
            json!({
                "parent": rec.parent,
                "theta": theta_json(&rec.theta),
                "vertices": rec.vertices.iter().map(|&v| &p.labels[v]).collect::<Vec<_>>(),
                "edges": rec.edges,
                "critical": rec.critical,
                "fallback": rec.used_fallback,
            })
        })
        .collect();
    json!({
        "vertices": p.graph.vertex_count(),
        "edges": p.graph.edge_count(),
        "modulus": rational_json(&r.modulus),
        "eta": eta,
        "trace": trace,
    })
}

pub fn modulus_csv(p: &ParsedGraph, r: &ModulusResult) -> String {
    let mut out = String::from("edge,source,target,eta_num,eta_den,rho_num,rho_den\n");
    for e in 0..p.graph.edge_count() {
        let (a, b) = edge_labels(p, e);
        let (eta, rho) = (&r.eta[e], &r.rho[e]);
        writeln!(
            out,
            "{e},{a},{b},{},{},{},{}",
            eta.numer(),
            eta.denom(),
            rho.numer(),
            rho.denom()
        )
        .unwrap();
    }
    out
}

fn dot_id(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn modulus_dot(p: &ParsedGraph, r: &ModulusResult) -> String {
    let mut out = String::from("graph modulus {\n");
    writeln!(out, "  // Mod = {}", r.modulus).unwrap();
    writeln!(out, "  // edge colors by eta bucket:").unwrap();
    for (range, color) in DOT_PALETTE {
        writeln!(out, "  //   {color}  {range}").unwrap();
    }
    writeln!(out, "  node [shape=circle, width=0.25, fontsize=10];").unwrap();
    for label in &p.labels {
        writeln!(out, "  {};", dot_id(label)).unwrap();
    }
    for e in 0..p.graph.edge_count() {
        let (a, b) = edge_labels(p, e);
        let eta = &r.eta[e];
        let color = DOT_PALETTE[dot_bucket(eta)].1;
        writeln!(
            out,
            "  {} -- {} [color=\"{color}\", penwidth=2, tooltip=\"eta = {}\"];",
            dot_id(a),
            dot_id(b),
            eta
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn modulus_text(p: &ParsedGraph, r: &ModulusResult) -> String {
    let mut out = String::new();
    writeln!(out, "modulus = {}", rational_text(&r.modulus)).unwrap();
    writeln!(
        out,
        "vertices = {}, edges = {}, peels = {}",
        p.graph.vertex_count(),
        p.graph.edge_count(),
        r.trace.len()
    )
    .unwrap();
    writeln!(out, "eta histogram:").unwrap();
    for (value, count) in eta_histogram(r) {
        writeln!(out, "  {:<24} x {count}", theta_text(&value)).unwrap();
    }
    writeln!(out, "edges:").unwrap();
    for e in 0..p.graph.edge_count() {
        let (a, b) = edge_labels(p, e);
        writeln!(out, "  {e}: {a} -- {b}  eta = {}", theta_text(&r.eta[e])).unwrap();
    }
    out
}
