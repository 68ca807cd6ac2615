//! Clique-width expressions as stack scripts.
//!
//! ```text
//! colors 2        # optional palette size
//! make 0 0        # push vertex 0 with color 0
//! make 1 1
//! union           # pop two terms, push their disjoint union
//! join 0 1        # on the top term: all edges between colors 0 and 1
//! recolor 1 0     # on the top term: color 1 becomes 0
//! ```
//!
//! A script must create every vertex `0..n` exactly once and finish with a
//! single term on the stack.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{parse_num, OrderedGraph};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CwOp {
    Make { vertex: usize, color: usize },
    Union,
    Recolor { from: usize, to: usize },
    Join { a: usize, b: usize },
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CliqueWidthScript {
    /// Declared palette size; when absent any color is accepted.
    pub colors: Option<usize>,
    pub ops: Vec<CwOp>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CwEval {
    pub graph: OrderedGraph,
    /// Number of distinct colors the script mentions.
    pub colors_used: usize,
}

impl CliqueWidthScript {
    pub fn parse(text: &str) -> Result<CliqueWidthScript> {
        let mut s = CliqueWidthScript::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let f: Vec<&str> = content.split_whitespace().collect();
            let num = |i: usize| parse_num(f[i], line);
            let op = match (f[0], f.len()) {
                ("colors", 2) if s.colors.is_none() && s.ops.is_empty() => {
                    s.colors = Some(num(1)?);
                    continue;
                }
                ("make", 3) => CwOp::Make {
                    vertex: num(1)?,
                    color: num(2)?,
                },
                ("union", 1) => CwOp::Union,
                ("recolor", 3) => CwOp::Recolor {
                    from: num(1)?,
                    to: num(2)?,
                },
                ("join", 3) => CwOp::Join { a: num(1)?, b: num(2)? },
                _ => {
                    return Err(Error::Syntax {
                        line,
                        msg: format!("unexpected `{content}`"),
                    })
                }
            };
            s.ops.push(op);
        }
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(w) = self.colors {
            writeln!(out, "colors {w}").unwrap();
        }
        for op in &self.ops {
            match *op {
                CwOp::Make { vertex, color } => writeln!(out, "make {vertex} {color}"),
                CwOp::Union => writeln!(out, "union"),
                CwOp::Recolor { from, to } => writeln!(out, "recolor {from} {to}"),
                CwOp::Join { a, b } => writeln!(out, "join {a} {b}"),
            }
            .unwrap();
        }
        out
    }

    /// Two-color script for `K_n`: add vertices one at a time, joining each
    /// new vertex to everything built so far.
    pub fn complete(n: usize) -> CliqueWidthScript {
        let mut ops = Vec::new();
        for v in 0..n {
            ops.push(CwOp::Make { vertex: v, color: 1 });
            if v > 0 {
                ops.push(CwOp::Union);
                ops.push(CwOp::Join { a: 0, b: 1 });
            }
            ops.push(CwOp::Recolor { from: 1, to: 0 });
        }
        CliqueWidthScript {
            colors: Some(2),
            ops,
        }
    }

    /// Three-color script for the path `0 - 1 - ... - n-1`: color 1 marks
    /// the current end, color 0 the finished interior.
    pub fn path(n: usize) -> CliqueWidthScript {
        let mut ops = Vec::new();
        for v in 0..n {
            ops.push(CwOp::Make { vertex: v, color: 2 });
            if v > 0 {
                ops.push(CwOp::Union);
                ops.push(CwOp::Join { a: 1, b: 2 });
                ops.push(CwOp::Recolor { from: 1, to: 0 });
            }
            ops.push(CwOp::Recolor { from: 2, to: 1 });
        }
        CliqueWidthScript {
            colors: Some(3),
            ops,
        }
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedScript(msg.into())
}

pub fn eval_clique_width_script(s: &CliqueWidthScript) -> Result<CwEval> {
    let mut colors_seen = BTreeSet::new();
    let mut vertices = BTreeSet::new();
    let mut check_color = |c: usize, step: usize| -> Result<()> {
        if let Some(w) = s.colors {
            if c >= w {
                return Err(malformed(format!("step {step}: color {c} outside palette of {w}")));
            }
        }
        colors_seen.insert(c);
        Ok(())
    };
    // Each term is a list of (vertex, color).
    let mut stack: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut edges = Vec::new();
    for (step, op) in s.ops.iter().enumerate() {
        match *op {
            CwOp::Make { vertex, color } => {
                check_color(color, step)?;
                if !vertices.insert(vertex) {
                    return Err(malformed(format!("step {step}: vertex {vertex} made twice")));
                }
                stack.push(vec![(vertex, color)]);
            }
            CwOp::Union => {
                let (Some(b), Some(mut a)) = (stack.pop(), stack.pop()) else {
                    return Err(malformed(format!("step {step}: union needs two terms")));
                };
                a.extend(b);
                stack.push(a);
            }
            CwOp::Recolor { from, to } => {
                check_color(from, step)?;
                check_color(to, step)?;
                let top = stack
                    .last_mut()
                    .ok_or_else(|| malformed(format!("step {step}: recolor on empty stack")))?;
                for (_, c) in top.iter_mut() {
                    if *c == from {
                        *c = to;
                    }
                }
            }
            CwOp::Join { a, b } => {
                check_color(a, step)?;
                check_color(b, step)?;
                if a == b {
                    return Err(malformed(format!("step {step}: join needs two distinct colors")));
                }
                let top = stack
                    .last()
                    .ok_or_else(|| malformed(format!("step {step}: join on empty stack")))?;
                for &(u, cu) in top {
                    if cu != a {
                        continue;
                    }
                    for &(v, cv) in top {
                        if cv == b {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
    }
    if stack.len() != 1 && !(stack.is_empty() && vertices.is_empty()) {
        return Err(malformed(format!("script leaves {} terms on the stack", stack.len())));
    }
    let n = vertices.len();
    if let Some(&max) = vertices.last() {
        if max >= n {
            return Err(malformed(format!("vertices must be 0..{n}, found {max}")));
        }
    }
    Ok(CwEval {
        graph: OrderedGraph::from_edges(n, edges)?,
        colors_used: colors_seen.len(),
    })
}
