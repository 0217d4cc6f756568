//! Text formats.
//!
//! Edge list: one edge per line, `u v` or `u v w`, whitespace separated,
//! UTF-8, LF or CRLF; lines starting with `#` and blank lines are skipped.
//! Node labels are arbitrary tokens. Written files are LF-terminated, `u v`
//! per line for unweighted graphs and `u v w` (shortest round-trip float) on
//! every line otherwise. Isolated nodes are not written.
//!
//! Partition: one `label community` line per node, in node order. Community
//! ids are `0..k` numbered by first appearance.
//!
//! Betweenness dump: one `u v score` line per edge, ordered by the dense ids
//! of `(u, v)` with `u` the endpoint seen first in the input, score with six
//! decimals.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use wlpa_core::{parse_edge_list, EdgeScores, Graph, LoadOptions, LoadReport, Partition};

use crate::error::{Error, Result};

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(Error::io(path))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(Error::io(path))
}

pub fn read_graph(path: &Path, options: LoadOptions) -> Result<(Graph, LoadReport)> {
    parse_edge_list(&read_text(path)?, options).map_err(Error::format(path))
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    write_text(path, &g.to_edge_list())
}

pub fn save_partition(path: &Path, p: &Partition, g: &Graph) -> Result<()> {
    write_text(path, &p.to_text(g)?)
}

pub fn load_partition(path: &Path, g: &Graph) -> Result<Partition> {
    Partition::parse(&read_text(path)?, g).map_err(Error::format(path))
}

pub fn betweenness_dump(g: &Graph, scores: &EdgeScores) -> Result<String> {
    if scores.len() != g.edge_count() {
        return Err(wlpa_core::Error::MissingEdgeScores {
            expected: g.edge_count(),
            found: scores.len(),
        }
        .into());
    }
    let mut out = String::new();
    for (e, &score) in g.edges().iter().zip(scores.as_slice()) {
        writeln!(out, "{} {} {:.6}", g.label(e.u), g.label(e.v), score).expect("write to String");
    }
    Ok(out)
}
