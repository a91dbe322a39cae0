//! Library side of the `treemod` command-line tool: input loading, graph
//! generators, output formats, the benchmark harness and exit codes.

pub mod bench;
pub mod generate;
pub mod render;

use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use treemod_core::io::{parse_edge_list_with, ParseOptions, ParsedGraph};
use treemod_core::{Error, MultiGraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DISCONNECTED: i32 = 3;
pub const EXIT_GUARD: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

/// Marks an input file that could not be read, so it maps to the parse
/// exit code rather than a generic failure.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Process exit code for an error, chosen by the first library error found
/// in its cause chain.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if cause.downcast_ref::<InputError>().is_some() {
            return EXIT_PARSE;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::Parse { .. } | Error::InvalidGraph(_) => EXIT_PARSE,
                Error::Disconnected | Error::Trivial => EXIT_DISCONNECTED,
                Error::Guard { .. } => EXIT_GUARD,
                Error::Invariant(_)
                | Error::Flow(_)
                | Error::CapacityOverflow
                | Error::NoFiniteCut => EXIT_INVARIANT,
                Error::InvalidArgument(_) => EXIT_FAILURE,
            };
        }
    }
    EXIT_FAILURE
}

/// Reads a graph from `path` (`-` for standard input). Files ending in
/// `.json` hold a serialized [`MultiGraph`]; anything else is an edge list.
pub fn load_graph(path: &Path, opts: &ParseOptions) -> Result<ParsedGraph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| InputError(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| InputError(format!("reading {}: {e}", path.display())))?
    };
    if path.extension().is_some_and(|ext| ext == "json") {
        let graph: MultiGraph = serde_json::from_str(&text)
            .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        let labels = (0..graph.vertex_count()).map(|v| v.to_string()).collect();
        return Ok(ParsedGraph {
            graph,
            labels,
            warnings: Vec::new(),
        });
    }
    parse_edge_list_with(&text, opts).with_context(|| format!("parsing {}", path.display()))
}
