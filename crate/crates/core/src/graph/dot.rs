//! Graphviz export.
//!
//! Every node and edge statement carries an `mlg` attribute holding the
//! element's JSON, so [`from_dot`] can rebuild the exact graph from a file
//! written by [`to_dot`]. Payloads are also summarized in `tooltip`s for
//! viewers.

use std::fmt::Write;

use super::serial::{edge_json, graph_from_elements, node_json};
use super::{DecGraph, Superedge, Supernode};
use crate::error::{Error, Result};

const TOOLTIP_MEMBERS: usize = 24;

pub fn to_dot(g: &DecGraph) -> String {
    let mut out = String::from("digraph mlgraph {\n  node [shape=ellipse];\n");
    for n in g.nodes() {
        let _ = writeln!(
            out,
            "  n{} [label=\"{}\", tooltip=\"{}\", mlg=\"{}\"];",
            n.id(),
            escape(&format!("{} ({})", n.label(), n.weight())),
            escape(&node_tooltip(n)),
            escape(&node_json(n)),
        );
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  n{} -> n{} [label=\"{}\", tooltip=\"{}\", mlg=\"{}\"];",
            e.source(),
            e.target(),
            e.weight(),
            escape(&edge_tooltip(e)),
            escape(&edge_json(e)),
        );
    }
    out.push_str("}\n");
    out
}

fn node_tooltip(n: &Supernode) -> String {
    if n.is_base() {
        return format!("{} (base)", n.label());
    }
    let dec = n.dec();
    let mut labels: Vec<&str> = dec.nodes().map(Supernode::label).collect();
    let more = labels.len().saturating_sub(TOOLTIP_MEMBERS);
    labels.truncate(TOOLTIP_MEMBERS);
    let mut tip = format!("{} nodes, {} edges: {}", dec.node_count(), dec.edge_count(), labels.join(", "));
    if more > 0 {
        let _ = write!(tip, " (+{more} more)");
    }
    tip
}

fn edge_tooltip(e: &Superedge) -> String {
    if e.is_base() {
        return "base".to_owned();
    }
    let pairs: Vec<String> = e.dec_pairs().map(|(a, b)| format!("{a}->{b}")).collect();
    pairs.join(", ")
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out
}

#[derive(Debug, PartialEq)]
enum Token {
    Ident(String),
    Quoted(String),
    Arrow,
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => return Err(Error::Dot("unterminated string".into())),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some('n') => s.push('\n'),
                            Some(other) => s.push(other),
                            None => return Err(Error::Dot("dangling escape".into())),
                        },
                        Some(other) => s.push(other),
                    }
                }
                tokens.push(Token::Quoted(s));
            }
            '-' => {
                chars.next();
                if chars.next() != Some('>') {
                    return Err(Error::Dot("expected `->`".into()));
                }
                tokens.push(Token::Arrow);
            }
            '{' | '}' | '[' | ']' | '=' | ',' | ';' => {
                chars.next();
                tokens.push(Token::Sym(c));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '.' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(s));
            }
            other => return Err(Error::Dot(format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

/// Reads a graph written by [`to_dot`].
pub fn from_dot(src: &str) -> Result<DecGraph> {
    let tokens = tokenize(src)?;
    let mut it = tokens.into_iter().peekable();
    match (it.next(), it.next()) {
        (Some(Token::Ident(kw)), Some(Token::Ident(_))) if kw == "digraph" => {}
        _ => return Err(Error::Dot("expected `digraph <name>`".into())),
    }
    if it.next() != Some(Token::Sym('{')) {
        return Err(Error::Dot("expected `{`".into()));
    }
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    loop {
        let first = match it.next() {
            Some(Token::Sym('}')) => break,
            Some(Token::Sym(';')) => continue,
            Some(Token::Ident(id)) => id,
            other => return Err(Error::Dot(format!("unexpected token {other:?}"))),
        };
        let is_edge = it.peek() == Some(&Token::Arrow);
        if is_edge {
            it.next();
            match it.next() {
                Some(Token::Ident(_)) => {}
                other => return Err(Error::Dot(format!("expected edge target, found {other:?}"))),
            }
        }
        let attrs = parse_attrs(&mut it)?;
        if matches!(first.as_str(), "node" | "edge" | "graph") && !is_edge {
            continue;
        }
        let payload = attrs
            .into_iter()
            .find_map(|(k, v)| (k == "mlg").then_some(v))
            .ok_or_else(|| Error::Dot(format!("statement for `{first}` has no mlg attribute")))?;
        if is_edge {
            edges.push(payload);
        } else {
            nodes.push(payload);
        }
    }
    graph_from_elements(nodes.iter().map(String::as_str), edges.iter().map(String::as_str))
}

fn parse_attrs(it: &mut std::iter::Peekable<std::vec::IntoIter<Token>>) -> Result<Vec<(String, String)>> {
    let mut attrs = Vec::new();
    if it.peek() != Some(&Token::Sym('[')) {
        return Ok(attrs);
    }
    it.next();
    loop {
        let key = match it.next() {
            Some(Token::Sym(']')) => break,
            Some(Token::Sym(',' | ';')) => continue,
            Some(Token::Ident(k)) => k,
            other => return Err(Error::Dot(format!("expected attribute name, found {other:?}"))),
        };
        if it.next() != Some(Token::Sym('=')) {
            return Err(Error::Dot(format!("expected `=` after `{key}`")));
        }
        let value = match it.next() {
            Some(Token::Ident(v) | Token::Quoted(v)) => v,
            other => return Err(Error::Dot(format!("expected value for `{key}`, found {other:?}"))),
        };
        attrs.push((key, value));
    }
    Ok(attrs)
}
