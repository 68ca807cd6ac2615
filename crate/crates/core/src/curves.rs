//! The graph depicted by a drawing, read off smooth walks.
//!
//! A smooth walk traverses tracks one after another; consecutive traversals
//! meet at a junction through a smooth pair of ends. A walk starts by leaving
//! a vertex and stops at the first vertex it reaches. Walks live in a state
//! graph with one state per directed traversal: state `2t` runs track `t`
//! from end `A` to end `B`, state `2t + 1` the other way.

use std::collections::VecDeque;

use crate::drawing::{Attachment, Drawing, End, TrackEnd};
use crate::graph::OrderedGraph;

/// Number of smooth walks between two vertices, saturating.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CurveCount {
    Zero,
    One,
    Many,
    Infinite,
}

impl CurveCount {
    fn from_saturated(c: u8) -> CurveCount {
        match c {
            0 => CurveCount::Zero,
            1 => CurveCount::One,
            _ => CurveCount::Many,
        }
    }
}

/// Unordered smooth pairs of track ends at junction `j`: ends in different
/// arcs of the rotation.
pub fn smooth_pairs(d: &Drawing, j: usize) -> Vec<(TrackEnd, TrackEnd)> {
    let rot = &d.junction_rotations[j];
    let arcs = d.junction_arcs(j);
    let mut out = Vec::new();
    for x in 0..rot.len() {
        for y in x + 1..rot.len() {
            if arcs[x] != arcs[y] {
                out.push((rot[x], rot[y]));
            }
        }
    }
    out
}

fn leave_state(e: TrackEnd) -> usize {
    2 * e.track + e.end.index()
}

/// End at which a state arrives.
fn arrival_end(state: usize) -> TrackEnd {
    TrackEnd::new(state / 2, if state.is_multiple_of(2) { End::B } else { End::A })
}

/// Directed traversal states with their smooth successors.
#[derive(Clone, Debug)]
pub struct StateGraph {
    pub succ: Vec<Vec<usize>>,
    pub pred: Vec<Vec<usize>>,
    /// Vertex reached by a state, if it ends at a vertex.
    pub arrival_vertex: Vec<Option<usize>>,
    /// States leaving each vertex.
    pub vertex_out: Vec<Vec<usize>>,
}

impl StateGraph {
    pub fn new(d: &Drawing) -> StateGraph {
        let states = 2 * d.tracks.len();
        let mut slot_of = vec![[0usize; 2]; d.tracks.len()];
        for rot in &d.junction_rotations {
            for (i, e) in rot.iter().enumerate() {
                slot_of[e.track][e.end.index()] = i;
            }
        }
        let arcs: Vec<Vec<bool>> = (0..d.n_junctions).map(|j| d.junction_arcs(j)).collect();
        let mut succ = vec![Vec::new(); states];
        let mut arrival_vertex = vec![None; states];
        for s in 0..states {
            let end = arrival_end(s);
            match d.attachment_of(end) {
                Attachment::Vertex(v) => arrival_vertex[s] = Some(v),
                Attachment::Junction(j) => {
                    let side = arcs[j][slot_of[end.track][end.end.index()]];
                    for (i, &e) in d.junction_rotations[j].iter().enumerate() {
                        if arcs[j][i] != side {
                            succ[s].push(leave_state(e));
                        }
                    }
                }
            }
        }
        let mut pred = vec![Vec::new(); states];
        for (s, next) in succ.iter().enumerate() {
            for &t in next {
                pred[t].push(s);
            }
        }
        let vertex_out = d
            .vertex_rotations
            .iter()
            .map(|rot| rot.iter().map(|&e| leave_state(e)).collect())
            .collect();
        StateGraph {
            succ,
            pred,
            arrival_vertex,
            vertex_out,
        }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    /// Saturated walk counts from `source` to every vertex.
    ///
    /// States reachable from a cycle never leave Kahn's queue; an arrival
    /// among them means infinitely many walks.
    pub fn counts_from(&self, source: usize, n_vertices: usize) -> Vec<CurveCount> {
        let states = self.len();
        let mut in_reach = vec![false; states];
        let mut stack: Vec<usize> = self.vertex_out[source].clone();
        for &s in &stack {
            in_reach[s] = true;
        }
        let mut reached = stack.clone();
        while let Some(s) = stack.pop() {
            for &t in &self.succ[s] {
                if !in_reach[t] {
                    in_reach[t] = true;
                    stack.push(t);
                    reached.push(t);
                }
            }
        }

        let mut indeg = vec![0u32; states];
        for &s in &reached {
            for &t in &self.succ[s] {
                indeg[t] += 1;
            }
        }
        let mut count = vec![0u8; states];
        for &s in &self.vertex_out[source] {
            count[s] = 1;
        }
        let mut done = vec![false; states];
        let mut queue: VecDeque<usize> = reached.iter().copied().filter(|&s| indeg[s] == 0).collect();
        while let Some(s) = queue.pop_front() {
            done[s] = true;
            for &t in &self.succ[s] {
                count[t] = (count[t] + count[s]).min(2);
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push_back(t);
                }
            }
        }

        let mut out = vec![CurveCount::Zero; n_vertices];
        for &s in &reached {
            if let Some(v) = self.arrival_vertex[s] {
                out[v] = if !done[s] || out[v] == CurveCount::Infinite {
                    CurveCount::Infinite
                } else {
                    let sum = match out[v] {
                        CurveCount::Zero => 0,
                        CurveCount::One => 1,
                        _ => 2,
                    } + count[s];
                    CurveCount::from_saturated(sum.min(2))
                };
            }
        }
        out
    }
}

/// Ordered graph with `u ~ v` iff some smooth walk joins them.
pub fn extract_graph(d: &Drawing) -> OrderedGraph {
    let sg = StateGraph::new(d);
    let n = d.n_vertices;
    let mut g = OrderedGraph::empty(n);
    for u in 0..n {
        let counts = sg.counts_from(u, n);
        for (v, &c) in counts.iter().enumerate().skip(u + 1) {
            if c != CurveCount::Zero {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Saturated number of smooth walks from `u` to `v`; `u == v` counts loops.
pub fn curve_count(d: &Drawing, u: usize, v: usize) -> CurveCount {
    StateGraph::new(d).counts_from(u, d.n_vertices)[v]
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct StrictnessReport {
    pub strict: bool,
    pub loops: Vec<usize>,
    /// Pairs `u < v` joined by several or infinitely many walks.
    pub multi_pairs: Vec<(usize, usize, CurveCount)>,
    pub unused_tracks: Vec<usize>,
}

/// Tracks carrying no vertex-to-vertex walk.
pub fn unused_tracks(d: &Drawing) -> Vec<usize> {
    let sg = StateGraph::new(d);
    unused_in(&sg, d.tracks.len())
}

fn unused_in(sg: &StateGraph, n_tracks: usize) -> Vec<usize> {
    let mark = |starts: Vec<usize>, adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; sg.len()];
        let mut stack = starts;
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &t in &adj[s] {
                if !std::mem::replace(&mut seen[t], true) {
                    stack.push(t);
                }
            }
        }
        seen
    };
    let forward = mark(sg.vertex_out.concat(), &sg.succ);
    let arrivals = (0..sg.len()).filter(|&s| sg.arrival_vertex[s].is_some()).collect();
    let backward = mark(arrivals, &sg.pred);
    (0..n_tracks)
        .filter(|&t| !(0..2).any(|dir| forward[2 * t + dir] && backward[2 * t + dir]))
        .collect()
}

pub fn check_strict(d: &Drawing) -> StrictnessReport {
    let sg = StateGraph::new(d);
    let n = d.n_vertices;
    let mut report = StrictnessReport::default();
    for u in 0..n {
        let counts = sg.counts_from(u, n);
        if counts[u] != CurveCount::Zero {
            report.loops.push(u);
        }
        for (v, &c) in counts.iter().enumerate().skip(u + 1) {
            if c >= CurveCount::Many {
                report.multi_pairs.push((u, v, c));
            }
        }
    }
    report.unused_tracks = unused_in(&sg, d.tracks.len());
    report.strict = report.loops.is_empty() && report.multi_pairs.is_empty() && report.unused_tracks.is_empty();
    report
}
