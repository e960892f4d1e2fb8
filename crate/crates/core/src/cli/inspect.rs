use std::fmt::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{dot, DecGraph, NodeId};
use crate::multilevel::MultilevelGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Dot,
}

pub fn load_hierarchy(path: &Path) -> Result<MultilevelGraph> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_reader(std::io::BufReader::new(file))?)
}

/// Renders level `level` of `m`, or, with `node`, that node's payload
/// followed by the base-level nodes it stands for.
pub fn inspect(m: &MultilevelGraph, level: usize, node: Option<NodeId>, format: RenderFormat) -> Result<String> {
    let g = m.con(level)?;
    let Some(id) = node else {
        return Ok(render(g, format));
    };
    let v = g.node(id).ok_or(Error::UnknownNode(id))?;
    let mut out = String::new();
    writeln!(out, "node {} {:?} weight {} at level {}", v.id(), v.label(), v.weight(), level).unwrap();
    if v.is_base() {
        out.push_str("payload: none\n");
    } else {
        out.push_str("payload:\n");
        out.push_str(&render(v.dec(), format));
    }
    let base = m.con(0)?;
    let trace = m.trace(level, id)?;
    writeln!(out, "trace ({} base nodes):", trace.len()).unwrap();
    for b in trace {
        let label = base.node(b).map(|n| n.label()).unwrap_or("?");
        writeln!(out, "  {b} {label:?}").unwrap();
    }
    Ok(out)
}

fn render(g: &DecGraph, format: RenderFormat) -> String {
    match format {
        RenderFormat::Dot => dot::to_dot(g),
        RenderFormat::Text => listing(g),
    }
}

/// Plain listing: one line per node, then one per edge.
pub fn listing(g: &DecGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} nodes, {} edges", g.node_count(), g.edge_count()).unwrap();
    for v in g.nodes() {
        write!(out, "  {} {:?} w={}", v.id(), v.label(), v.weight()).unwrap();
        if !v.is_base() {
            write!(out, " members={}", v.dec().node_count()).unwrap();
        }
        out.push('\n');
    }
    for e in g.edges() {
        write!(out, "  {} -> {} w={}", e.source(), e.target(), e.weight()).unwrap();
        if !e.is_base() {
            write!(out, " carries={}", e.dec().len()).unwrap();
        }
        out.push('\n');
    }
    out
}
