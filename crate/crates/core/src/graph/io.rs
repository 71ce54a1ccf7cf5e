//! TSV ingestion and emission.
//!
//! Edge lines are `u<TAB>v[<TAB>weight]`, attribute lines are
//! `u<TAB>attr[<TAB>weight]`; a missing weight means 1.0. Blank lines and
//! lines starting with `#` are skipped. CRLF line endings are accepted.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{AttributedBipartiteGraph, GraphBuilder};
use crate::error::{Error, Result};

/// Parsed records of one TSV file: `(line number, left id, right id, weight)`.
pub(crate) fn parse_pairs(path: &Path) -> Result<Vec<(usize, String, String, f64)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: path.to_owned(),
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(parse_err(format!(
                "expected 2 or 3 tab-separated columns, found {}",
                fields.len()
            )));
        }
        if fields[0].is_empty() || fields[1].is_empty() {
            return Err(parse_err("empty node id".into()));
        }
        let weight = match fields.get(2) {
            None => 1.0,
            Some(s) => s
                .parse::<f64>()
                .map_err(|_| parse_err(format!("weight `{s}` is not a number")))?,
        };
        if !(weight.is_finite() && weight > 0.0) {
            return Err(parse_err(format!("weight must be positive and finite, got {weight}")));
        }
        out.push((line_no, fields[0].to_owned(), fields[1].to_owned(), weight));
    }
    Ok(out)
}

/// Loads a graph from an edge file and an optional attribute file.
///
/// Ids are remapped to dense indices in order of first appearance, edge file
/// first. The id tables are kept on the graph for output.
pub fn load_graph(edge_path: &Path, attr_path: Option<&Path>) -> Result<AttributedBipartiteGraph> {
    let mut builder = GraphBuilder::new();
    for (_, u, v, w) in parse_pairs(edge_path)? {
        builder.add_edge(&u, &v, w)?;
    }
    if let Some(attr_path) = attr_path {
        for (_, u, a, w) in parse_pairs(attr_path)? {
            builder.add_attribute(&u, &a, w)?;
        }
    }
    builder.build()
}

pub fn write_edge_file<W: Write>(g: &AttributedBipartiteGraph, mut out: W) -> std::io::Result<()> {
    for (u, v, w) in g.edges() {
        writeln!(out, "{}\t{}\t{}", g.u_ids().name(u), g.v_ids().name(v), w)?;
    }
    out.flush()
}

pub fn write_attribute_file<W: Write>(
    g: &AttributedBipartiteGraph,
    mut out: W,
) -> std::io::Result<()> {
    for (u, a, w) in g.attribute_edges() {
        writeln!(out, "{}\t{}\t{}", g.u_ids().name(u), g.attr_ids().name(a), w)?;
    }
    out.flush()
}

/// Writes both TSV files. Weights use Rust's shortest round-trip float
/// formatting, so reloading reproduces them bit for bit. A U-node with
/// neither edges nor attributes has no line to live on and is not persisted.
pub fn save_graph(g: &AttributedBipartiteGraph, edge_path: &Path, attr_path: &Path) -> Result<()> {
    let open = |p: &Path| File::create(p).map(BufWriter::new).map_err(|e| Error::io(p, e));
    write_edge_file(g, open(edge_path)?).map_err(|e| Error::io(edge_path, e))?;
    write_attribute_file(g, open(attr_path)?).map_err(|e| Error::io(attr_path, e))?;
    Ok(())
}
