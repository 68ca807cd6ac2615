//! Contraction sequences and the red graph.
//!
//! Clusters are named by their smallest vertex, so merging clusters `a` and
//! `b` yields cluster `min(a, b)`. For each live cluster pair the number of
//! cross edges is cached, which makes the black/red/absent state of a pair
//! an O(1) comparison against the product of the cluster sizes.

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{parse_num, OrderedGraph};

/// Largest `n` accepted by [`exact_twin_width`].
pub const EXACT_TWIN_WIDTH_LIMIT: usize = 8;

#[derive(Clone, Debug)]
pub struct ContractionState {
    n: usize,
    alive: Vec<bool>,
    members: Vec<Vec<usize>>,
    /// Cross-edge counts, `n * n`, indexed by cluster id.
    cnt: Vec<u32>,
    red: Vec<bool>,
    red_deg: Vec<usize>,
    red_edges: usize,
    max_red_seen: usize,
}

/// Relation between two clusters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairState {
    Absent,
    Black,
    Red,
}

impl ContractionState {
    pub fn new(g: &OrderedGraph) -> ContractionState {
        let n = g.n();
        let mut cnt = vec![0; n * n];
        for (u, v) in g.edges() {
            cnt[u * n + v] = 1;
            cnt[v * n + u] = 1;
        }
        ContractionState {
            n,
            alive: vec![true; n],
            members: (0..n).map(|v| vec![v]).collect(),
            cnt,
            red: vec![false; n * n],
            red_deg: vec![0; n],
            red_edges: 0,
            max_red_seen: 0,
        }
    }

    pub fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&c| self.alive[c])
    }

    pub fn n_clusters(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn is_live(&self, c: usize) -> bool {
        c < self.n && self.alive[c]
    }

    pub fn pair_state(&self, a: usize, b: usize) -> PairState {
        let c = self.cnt[a * self.n + b] as usize;
        if c == 0 {
            PairState::Absent
        } else if c == self.members[a].len() * self.members[b].len() {
            PairState::Black
        } else {
            PairState::Red
        }
    }

    pub fn red_degree(&self, c: usize) -> usize {
        self.red_deg[c]
    }

    pub fn max_red_degree(&self) -> usize {
        self.live().map(|c| self.red_deg[c]).max().unwrap_or(0)
    }

    pub fn red_edge_count(&self) -> usize {
        self.red_edges
    }

    pub fn max_red_seen(&self) -> usize {
        self.max_red_seen
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        if a == b || !self.is_live(a) || !self.is_live(b) {
            return Err(Error::MalformedSequence(format!("cannot merge clusters {a} and {b}")));
        }
        Ok(())
    }

    /// `(max red degree, red edge count)` after merging `a` and `b`,
    /// without changing the state.
    pub fn merge_cost(&self, a: usize, b: usize) -> (usize, usize) {
        let n = self.n;
        let size = self.members[a].len() + self.members[b].len();
        let mut new_deg = 0;
        let mut max_other = 0;
        let mut edges = self.red_edges - self.red[a * n + b] as usize;
        for c in 0..n {
            if !self.alive[c] || c == a || c == b {
                continue;
            }
            let joint = (self.cnt[a * n + c] + self.cnt[b * n + c]) as usize;
            let red = joint > 0 && joint < size * self.members[c].len();
            let (ra, rb) = (self.red[a * n + c] as usize, self.red[b * n + c] as usize);
            let deg = self.red_deg[c] + red as usize - ra - rb;
            max_other = max_other.max(deg);
            new_deg += red as usize;
            edges = edges + red as usize - ra - rb;
        }
        (max_other.max(new_deg), edges)
    }

    /// Merge clusters `a` and `b` in place.
    pub fn contract_in_place(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        let n = self.n;
        let (keep, gone) = (a.min(b), a.max(b));
        if self.red[keep * n + gone] {
            self.set_red(keep, gone, false);
        }
        let moved = std::mem::take(&mut self.members[gone]);
        self.members[keep].extend(moved);
        self.members[keep].sort_unstable();
        self.alive[gone] = false;
        for c in 0..n {
            if !self.alive[c] || c == keep {
                continue;
            }
            if self.red[gone * n + c] {
                self.set_red(gone, c, false);
            }
            let joint = self.cnt[keep * n + c] + self.cnt[gone * n + c];
            self.cnt[keep * n + c] = joint;
            self.cnt[c * n + keep] = joint;
            self.cnt[gone * n + c] = 0;
            self.cnt[c * n + gone] = 0;
            let red = self.pair_state(keep, c) == PairState::Red;
            if red != self.red[keep * n + c] {
                self.set_red(keep, c, red);
            }
        }
        self.max_red_seen = self.max_red_seen.max(self.max_red_degree());
        Ok(())
    }

    /// Merged copy of the state.
    pub fn contract(&self, a: usize, b: usize) -> Result<ContractionState> {
        let mut s = self.clone();
        s.contract_in_place(a, b)?;
        Ok(s)
    }

    fn set_red(&mut self, a: usize, b: usize, value: bool) {
        let n = self.n;
        self.red[a * n + b] = value;
        self.red[b * n + a] = value;
        if value {
            self.red_deg[a] += 1;
            self.red_deg[b] += 1;
            self.red_edges += 1;
        } else {
            self.red_deg[a] -= 1;
            self.red_deg[b] -= 1;
            self.red_edges -= 1;
        }
    }

    /// Recompute every pair state from `g` and compare with the cache.
    pub fn check_trichotomy(&self, g: &OrderedGraph) -> bool {
        let live: Vec<usize> = self.live().collect();
        for &a in &live {
            for &b in &live {
                if a == b {
                    continue;
                }
                let total = self.members[a].len() * self.members[b].len();
                let hits = self.members[a]
                    .iter()
                    .flat_map(|&u| self.members[b].iter().map(move |&v| (u, v)))
                    .filter(|&(u, v)| g.has_edge(u, v))
                    .count();
                let expect = if hits == 0 {
                    PairState::Absent
                } else if hits == total {
                    PairState::Black
                } else {
                    PairState::Red
                };
                if expect != self.pair_state(a, b) || self.red[a * self.n + b] != (expect == PairState::Red) {
                    return false;
                }
            }
        }
        live.iter()
            .all(|&a| self.red_deg[a] == live.iter().filter(|&&b| self.red[a * self.n + b]).count())
    }
}

/// Merges in order, each naming two live clusters.
pub type ContractionSequence = Vec<(usize, usize)>;

pub fn parse_sequence(text: &str) -> Result<ContractionSequence> {
    let mut seq = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let f: Vec<&str> = content.split_whitespace().collect();
        if f.len() != 3 || f[0] != "merge" {
            return Err(Error::Syntax {
                line,
                msg: format!("expected `merge a b`, found `{content}`"),
            });
        }
        seq.push((parse_num(f[1], line)?, parse_num(f[2], line)?));
    }
    Ok(seq)
}

pub fn sequence_to_text(seq: &[(usize, usize)]) -> String {
    let mut out = String::new();
    for &(a, b) in seq {
        writeln!(out, "merge {a} {b}").unwrap();
    }
    out
}

/// Largest red degree over all states of the sequence.
pub fn verify_sequence(g: &OrderedGraph, seq: &[(usize, usize)]) -> Result<usize> {
    let n = g.n();
    if seq.len() != n.saturating_sub(1) {
        return Err(Error::MalformedSequence(format!(
            "expected {} merges, found {}",
            n.saturating_sub(1),
            seq.len()
        )));
    }
    let mut s = ContractionState::new(g);
    for &(a, b) in seq {
        s.contract_in_place(a, b)?;
        debug_assert!(n > 40 || s.check_trichotomy(g));
    }
    Ok(s.max_red_seen())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinWidth {
    pub width: usize,
    pub sequence: ContractionSequence,
}

/// Merge the pair minimising `(max red degree, red edges)` after the merge;
/// ties go to the smallest ids.
pub fn greedy_twin_width(g: &OrderedGraph) -> TwinWidth {
    let mut s = ContractionState::new(g);
    let mut sequence = Vec::new();
    while s.n_clusters() > 1 {
        let live: Vec<usize> = s.live().collect();
        let best = live
            .par_iter()
            .enumerate()
            .filter_map(|(i, &a)| {
                live[i + 1..]
                    .iter()
                    .map(|&b| {
                        let (d, e) = s.merge_cost(a, b);
                        (d, e, a, b)
                    })
                    .min()
            })
            .min()
            .unwrap();
        s.contract_in_place(best.2, best.3).unwrap();
        sequence.push((best.2, best.3));
    }
    TwinWidth {
        width: s.max_red_seen(),
        sequence,
    }
}

/// Exact twin-width by iterative deepening over partitions of `n <= 8`
/// vertices; failed partitions are remembered per bound.
pub fn exact_twin_width(g: &OrderedGraph) -> Result<TwinWidth> {
    let n = g.n();
    if n > EXACT_TWIN_WIDTH_LIMIT {
        return Err(Error::TooLarge {
            n,
            max: EXACT_TWIN_WIDTH_LIMIT,
        });
    }
    let nbr: Vec<u16> = (0..n).map(|v| g.neighbor_mask(v) as u16).collect();
    let start: Vec<u16> = (0..n).map(|v| 1 << v).collect();
    for d in 0..n.max(1) {
        let mut failed = HashSet::new();
        let mut seq = Vec::new();
        if search(&nbr, start.clone(), d, &mut failed, &mut seq) {
            return Ok(TwinWidth { width: d, sequence: seq });
        }
    }
    unreachable!("a bound of n - 1 always succeeds")
}

fn red_degrees<'a>(nbr: &'a [u16], parts: &'a [u16]) -> impl Iterator<Item = usize> + 'a {
    parts.iter().map(move |&a| {
        parts
            .iter()
            .filter(|&&b| b != a)
            .filter(|&&b| {
                let mut all = true;
                let mut any = false;
                let mut m = a;
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    let hit = nbr[u] & b;
                    any |= hit != 0;
                    all &= hit == b;
                }
                any && !all
            })
            .count()
    })
}

fn search(nbr: &[u16], parts: Vec<u16>, d: usize, failed: &mut HashSet<Vec<u16>>, seq: &mut ContractionSequence) -> bool {
    if parts.len() <= 1 {
        return true;
    }
    if failed.contains(&parts) {
        return false;
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let mut next: Vec<u16> = parts
                .iter()
                .enumerate()
                .filter(|&(x, _)| x != i && x != j)
                .map(|(_, &p)| p)
                .collect();
            next.push(parts[i] | parts[j]);
            next.sort_unstable_by_key(|p| p.trailing_zeros());
            if red_degrees(nbr, &next).any(|r| r > d) {
                continue;
            }
            let ids = (parts[i].trailing_zeros() as usize, parts[j].trailing_zeros() as usize);
            seq.push(ids);
            if search(nbr, next, d, failed, seq) {
                return true;
            }
            seq.pop();
        }
    }
    failed.insert(parts);
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> OrderedGraph {
        OrderedGraph::path(4)
    }

    #[test]
    fn contract_examples() {
        let k4 = OrderedGraph::complete(4);
        let s = ContractionState::new(&k4).contract(0, 1).unwrap();
        assert_eq!(s.red_edge_count(), 0);

        let s = ContractionState::new(&p4()).contract(0, 1).unwrap();
        assert_eq!(s.red_edge_count(), 1);
        assert_eq!(s.pair_state(0, 2), PairState::Red);
        assert_eq!(s.max_red_degree(), 1);
        assert!(s.check_trichotomy(&p4()));

        let e = OrderedGraph::empty(4);
        let s = ContractionState::new(&e).contract(2, 3).unwrap();
        assert_eq!(s.red_edge_count(), 0);
        assert!(s.contract(3, 0).is_err());
        assert!(s.contract(2, 2).is_err());
    }

    #[test]
    fn verify_examples() {
        assert_eq!(verify_sequence(&OrderedGraph::complete(5), &[(0, 1), (0, 2), (3, 4), (0, 3)]).unwrap(), 0);
        assert_eq!(verify_sequence(&p4(), &[(0, 1), (0, 2), (0, 3)]).unwrap(), 1);
        assert_eq!(verify_sequence(&OrderedGraph::cycle(4), &[(0, 2), (1, 3), (0, 1)]).unwrap(), 0);
        assert!(verify_sequence(&p4(), &[(0, 1)]).is_err());
        assert!(verify_sequence(&p4(), &[(0, 1), (1, 2), (0, 3)]).is_err());
    }

    #[test]
    fn sequence_text_round_trip() {
        let seq = vec![(0, 1), (2, 3)];
        assert_eq!(parse_sequence(&sequence_to_text(&seq)).unwrap(), seq);
        assert!(parse_sequence("merge 1\n").is_err());
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_twin_width(&p4()).unwrap().width, 1);
        for g in [OrderedGraph::cycle(4), OrderedGraph::complete(5), OrderedGraph::path(3), OrderedGraph::complete(3)] {
            let r = exact_twin_width(&g).unwrap();
            assert_eq!(r.width, 0);
            assert_eq!(verify_sequence(&g, &r.sequence).unwrap(), 0);
        }
        assert_eq!(exact_twin_width(&OrderedGraph::cycle(5)).unwrap().width, 2);
        assert!(exact_twin_width(&OrderedGraph::empty(9)).is_err());
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_twin_width(&OrderedGraph::complete(16)).width, 0);
        let p8 = OrderedGraph::path(8);
        let r = greedy_twin_width(&p8);
        assert!(r.width <= 2);
        assert_eq!(verify_sequence(&p8, &r.sequence).unwrap(), r.width);
        assert_eq!(greedy_twin_width(&OrderedGraph::empty(0)).sequence.len(), 0);
    }

    #[test]
    fn merge_cost_predicts_contraction() {
        let g = OrderedGraph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 1), (6, 3), (5, 6)]).unwrap();
        let s = ContractionState::new(&g).contract(0, 2).unwrap();
        for a in s.live() {
            for b in s.live().filter(|&b| b > a) {
                let t = s.contract(a, b).unwrap();
                assert_eq!(s.merge_cost(a, b), (t.max_red_degree(), t.red_edge_count()));
                assert!(t.check_trichotomy(&g));
            }
        }
    }

    /// Cograph test by repeatedly deleting a vertex with a twin.
    fn twin_eliminable(g: &OrderedGraph) -> bool {
        let mut alive: Vec<usize> = (0..g.n()).collect();
        'outer: while alive.len() > 1 {
            let mask: u64 = alive.iter().fold(0, |m, &v| m | 1 << v);
            for &u in &alive {
                for &v in &alive {
                    if u < v {
                        let nu = g.neighbor_mask(u) & mask & !(1 << u | 1 << v);
                        let nv = g.neighbor_mask(v) & mask & !(1 << u | 1 << v);
                        if nu == nv {
                            alive.retain(|&x| x != v);
                            continue 'outer;
                        }
                    }
                }
            }
            return false;
        }
        true
    }

    fn graph_from_code(n: usize, code: u32) -> OrderedGraph {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        let edges: Vec<_> = pairs.enumerate().filter(|&(i, _)| code >> i & 1 == 1).map(|(_, e)| e).collect();
        OrderedGraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn zero_width_iff_twin_eliminable() {
        for n in 1..=5 {
            for code in 0..1u32 << (n * (n - 1) / 2) {
                let g = graph_from_code(n, code);
                let r = exact_twin_width(&g).unwrap();
                assert_eq!(r.width == 0, twin_eliminable(&g), "n {n} code {code}");
                assert_eq!(verify_sequence(&g, &r.sequence).unwrap(), r.width);
            }
        }
    }

    #[test]
    fn induced_subgraphs_never_wider() {
        let graphs = [
            OrderedGraph::cycle(7),
            OrderedGraph::path(7),
            OrderedGraph::from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6), (6, 0)]).unwrap(),
        ];
        for g in &graphs {
            let d = exact_twin_width(g).unwrap().width;
            for mask in 0u32..1 << g.n() {
                let s: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
                assert!(exact_twin_width(&g.induced(&s)).unwrap().width <= d);
            }
        }
    }

    #[test]
    fn greedy_at_least_exact() {
        for code in (0..1u32 << 15).step_by(97) {
            let g = graph_from_code(6, code);
            let e = exact_twin_width(&g).unwrap().width;
            let gr = greedy_twin_width(&g);
            assert!(gr.width >= e);
            assert_eq!(verify_sequence(&g, &gr.sequence).unwrap(), gr.width);
        }
    }
}
