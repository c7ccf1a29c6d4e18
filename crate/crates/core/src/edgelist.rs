//! Plain-text edge lists.
//!
//! ```text
//! # optional comment lines
//! n 5
//! 0 1
//! 1 2
//! ```
//!
//! The first non-comment line declares the vertex count; every following
//! non-empty line is one edge `u v`. [`write`] emits edges in ascending order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
        let mut fields = line.split_whitespace();
        let (a, b) = (fields.next(), fields.next());
        if fields.next().is_some() {
            return Err(err("expected exactly two fields"));
        }
        match n {
            None => {
                if a != Some("n") {
                    return Err(err("first line must be `n <count>`"));
                }
                let count = b.ok_or_else(|| err("missing vertex count"))?;
                n = Some(count.parse().map_err(|_| err("vertex count is not an integer"))?);
            }
            Some(_) => {
                let (a, b) = a.zip(b).ok_or_else(|| err("expected `u v`"))?;
                let u = a.parse().map_err(|_| err("endpoint is not an integer"))?;
                let v = b.parse().map_err(|_| err("endpoint is not an integer"))?;
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, msg: "missing `n <count>` header".into() })?;
    Graph::new(n, &edges)
}

pub fn write(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n {}", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
