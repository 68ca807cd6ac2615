//! Ordered graphs: vertices `0..n` in their fixed order, adjacency kept as
//! symmetric bit rows.
//!
//! The vertex order is implicit in the indices, so two ordered graphs are
//! isomorphic exactly when their adjacency matrices are equal. The text
//! format is `graph N` followed by one `edge u v` line per edge with `u < v`.

use std::fmt::Write as _;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrderedGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl OrderedGraph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD_BITS);
        OrderedGraph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = OrderedGraph::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::OutOfRange {
                        what: "vertex",
                        index: x,
                        limit: n,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = OrderedGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = OrderedGraph::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = OrderedGraph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Panics if `u == v` or either index is out of range.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge {u}-{v}");
        self.bits[u * self.words + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        self.bits[v * self.words + u / WORD_BITS] |= 1 << (u % WORD_BITS);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        self.bits[v * self.words + u / WORD_BITS] &= !(1 << (u % WORD_BITS));
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    /// Adjacency row of `u` as packed words.
    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    /// Neighbourhood of `u` as a single word. Only valid for `n <= 64`.
    pub fn neighbor_mask(&self, u: usize) -> u64 {
        debug_assert!(self.n <= WORD_BITS);
        if self.words == 0 {
            0
        } else {
            self.bits[u * self.words]
        }
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * WORD_BITS + bit)
            })
        })
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Induced ordered subgraph on `subset`, relabelled by rank.
    /// `subset` must be strictly increasing.
    pub fn induced(&self, subset: &[usize]) -> OrderedGraph {
        debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
        let mut h = OrderedGraph::empty(subset.len());
        for (i, &u) in subset.iter().enumerate() {
            for (j, &v) in subset.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    h.add_edge(i, j);
                }
            }
        }
        h
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| !self.has_edge(u, u) && self.neighbors(u).all(|v| self.has_edge(v, u)))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("graph {}\n", self.n);
        for (u, v) in self.edges() {
            writeln!(out, "edge {u} {v}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<OrderedGraph> {
        let mut graph: Option<OrderedGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            match (fields[0], graph.as_mut()) {
                ("graph", None) if fields.len() == 2 => {
                    graph = Some(OrderedGraph::empty(parse_num(fields[1], line)?));
                }
                ("edge", Some(g)) if fields.len() == 3 => {
                    let u = parse_num(fields[1], line)?;
                    let v = parse_num(fields[2], line)?;
                    for x in [u, v] {
                        if x >= g.n {
                            return Err(Error::DanglingId {
                                line,
                                id: x.to_string(),
                            });
                        }
                    }
                    if u == v {
                        return Err(Error::Syntax {
                            line,
                            msg: format!("loop at vertex {u}"),
                        });
                    }
                    g.add_edge(u, v);
                }
                _ => {
                    return Err(Error::Syntax {
                        line,
                        msg: format!("unexpected `{content}`"),
                    })
                }
            }
        }
        graph.ok_or(Error::Syntax {
            line: 1,
            msg: "missing `graph N` header".into(),
        })
    }
}

pub(crate) fn parse_num(field: &str, line: usize) -> Result<usize> {
    field.parse().map_err(|_| Error::Syntax {
        line,
        msg: format!("expected a non-negative integer, found `{field}`"),
    })
}
