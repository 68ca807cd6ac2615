//! Ternary cluster trees, exact rank-width by exhaustive tree enumeration,
//! and the walk to a balanced tree edge.

use super::cut::{cut_rank_mask, Cut};
use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

/// Largest `n` accepted by [`exact_rank_width`].
pub const EXACT_RANK_WIDTH_LIMIT: usize = 10;

/// Unrooted tree whose leaves `0..n_leaves` are the graph vertices; every
/// other node has degree 3. Side masks limit trees to 64 leaves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClusterTree {
    pub n_leaves: usize,
    pub n_nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl ClusterTree {
    pub fn new(n_leaves: usize, n_nodes: usize, edges: Vec<(usize, usize)>) -> Result<ClusterTree> {
        let t = ClusterTree {
            n_leaves,
            n_nodes,
            edges,
        };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.n_leaves > 64 {
            return bad(format!("{} leaves exceed the 64-leaf limit", self.n_leaves));
        }
        if self.n_nodes < self.n_leaves || self.edges.len() + 1 != self.n_nodes.max(1) {
            return bad("a tree on k nodes has k - 1 edges".into());
        }
        let mut deg = vec![0; self.n_nodes];
        for &(a, b) in &self.edges {
            if a >= self.n_nodes || b >= self.n_nodes || a == b {
                return bad(format!("bad tree edge {a}-{b}"));
            }
            deg[a] += 1;
            deg[b] += 1;
        }
        for (x, &d) in deg.iter().enumerate() {
            let want = if x < self.n_leaves { 1 } else { 3 };
            if self.n_nodes > 2 && d != want {
                return bad(format!("node {x} has degree {d}, expected {want}"));
            }
        }
        let mut seen = vec![false; self.n_nodes];
        let adj = self.adjacency();
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            if self.n_nodes == 0 || std::mem::replace(&mut seen[x], true) {
                continue;
            }
            stack.extend(adj[x].iter().map(|&(y, _)| y));
        }
        if seen.iter().any(|s| !s) {
            return bad("tree is disconnected".into());
        }
        Ok(())
    }

    /// Neighbours of each node with the connecting edge id.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n_nodes];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        adj
    }

    /// Leaves on the side of `edges[e]` that contains node `toward`.
    pub fn side_mask_toward(&self, e: usize, toward: usize) -> u64 {
        let adj = self.adjacency();
        let mut mask = 0u64;
        let mut stack = vec![(toward, e)];
        while let Some((x, via)) = stack.pop() {
            if x < self.n_leaves {
                mask |= 1 << x;
            }
            for &(y, f) in &adj[x] {
                if f != via {
                    stack.push((y, f));
                }
            }
        }
        mask
    }

    /// Leaves on the second endpoint's side of edge `e`.
    pub fn side_mask(&self, e: usize) -> u64 {
        self.side_mask_toward(e, self.edges[e].1)
    }

    pub fn edge_cut(&self, e: usize) -> Cut {
        Cut::from_mask(self.n_leaves, self.side_mask(e))
    }

    /// Maximum cut rank over tree edges.
    pub fn width(&self, g: &OrderedGraph) -> usize {
        (0..self.edges.len())
            .map(|e| cut_rank_mask(g, self.side_mask(e)))
            .max()
            .unwrap_or(0)
    }

    /// Leaves hanging in order off a path of internal nodes.
    pub fn caterpillar(n: usize) -> ClusterTree {
        if n < 3 {
            let edges = if n == 2 { vec![(0, 1)] } else { vec![] };
            return ClusterTree {
                n_leaves: n,
                n_nodes: n,
                edges,
            };
        }
        let spine = |i: usize| n + i;
        let mut edges = vec![(0, spine(0)), (n - 1, spine(n - 3))];
        for i in 0..n - 2 {
            edges.push((i + 1, spine(i)));
            if i + 1 < n - 2 {
                edges.push((spine(i), spine(i + 1)));
            }
        }
        ClusterTree {
            n_leaves: n,
            n_nodes: 2 * n - 2,
            edges,
        }
    }

    fn from_parents(n: usize, parent: &[usize]) -> ClusterTree {
        let nodes = if n >= 3 { 2 * n - 2 } else { n };
        let edges = (1..nodes).map(|c| (c, parent[c])).collect();
        ClusterTree {
            n_leaves: n,
            n_nodes: nodes,
            edges,
        }
    }
}

/// Incremental state for enumerating trees by leaf insertion. The tree is
/// rooted at leaf 0; `below[x]` is the leaf set under node `x`, which is
/// the cut of the edge from `x` to its parent.
struct Enumerator {
    n: usize,
    parent: Vec<usize>,
    below: Vec<u64>,
}

impl Enumerator {
    fn new(n: usize) -> Enumerator {
        debug_assert!(n >= 3);
        let mut parent = vec![0; 2 * n - 2];
        let mut below = vec![0; 2 * n - 2];
        parent[1] = n;
        parent[2] = n;
        parent[n] = 0;
        below[1] = 0b010;
        below[2] = 0b100;
        below[n] = 0b110;
        Enumerator { n, parent, below }
    }

    fn insert(&mut self, c: usize, leaf: usize, x: usize) -> usize {
        let bit = 1u64 << leaf;
        let p = self.parent[c];
        self.parent[x] = p;
        self.parent[c] = x;
        self.parent[leaf] = x;
        self.below[leaf] = bit;
        self.below[x] = self.below[c] | bit;
        let mut a = p;
        while a != 0 {
            self.below[a] |= bit;
            a = self.parent[a];
        }
        p
    }

    fn remove(&mut self, c: usize, leaf: usize, p: usize) {
        let bit = 1u64 << leaf;
        self.parent[c] = p;
        let mut a = p;
        while a != 0 {
            self.below[a] &= !bit;
            a = self.parent[a];
        }
    }

    /// Call `visit` on every complete tree, given the non-root nodes.
    fn run(&mut self, leaf: usize, visit: &mut impl FnMut(&Enumerator)) {
        let n = self.n;
        if leaf == n {
            visit(self);
            return;
        }
        let x = n + leaf - 2;
        let existing: Vec<usize> = (1..leaf).chain(n..x).collect();
        for c in existing {
            let p = self.insert(c, leaf, x);
            self.run(leaf + 1, visit);
            self.remove(c, leaf, p);
        }
    }

    fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n).chain(self.n..2 * self.n - 2)
    }
}

/// Visit every leaf-labelled ternary tree on `n` leaves; there are
/// `(2n - 5)!!` of them for `n >= 3`.
pub fn for_each_ternary_tree(n: usize, mut visit: impl FnMut(&ClusterTree)) {
    if n < 3 {
        visit(&ClusterTree::caterpillar(n));
        return;
    }
    let mut en = Enumerator::new(n);
    en.run(3, &mut |e: &Enumerator| visit(&ClusterTree::from_parents(e.n, &e.parent)));
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankWidth {
    pub width: usize,
    pub tree: ClusterTree,
    pub trees_examined: u64,
}

/// Exact rank-width by scoring every ternary tree.
pub fn exact_rank_width(g: &OrderedGraph) -> Result<RankWidth> {
    let n = g.n();
    if n > EXACT_RANK_WIDTH_LIMIT {
        return Err(Error::TooLarge {
            n,
            max: EXACT_RANK_WIDTH_LIMIT,
        });
    }
    if n < 3 {
        let tree = ClusterTree::caterpillar(n);
        return Ok(RankWidth {
            width: tree.width(g),
            tree,
            trees_examined: 1,
        });
    }
    let ranks: Vec<u8> = (0..1u64 << n).map(|m| cut_rank_mask(g, m) as u8).collect();
    let mut best = (u8::MAX, Vec::new());
    let mut examined = 0u64;
    let mut en = Enumerator::new(n);
    en.run(3, &mut |e: &Enumerator| {
        examined += 1;
        let w = e.nodes().map(|x| ranks[e.below[x] as usize]).max().unwrap();
        if w < best.0 {
            best = (w, e.parent.clone());
        }
    });
    Ok(RankWidth {
        width: best.0 as usize,
        tree: ClusterTree::from_parents(n, &best.1),
        trees_examined: examined,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkResult {
    pub cut: Cut,
    pub edge: usize,
    pub steps: usize,
}

pub fn balanced_cut_walk(g: &OrderedGraph, t: &ClusterTree) -> Result<WalkResult> {
    balanced_cut_walk_from(g, t, 0)
}

/// Walk from tree edge `start` toward a balanced edge: while the current
/// edge has a side with fewer than `n/3` leaves, move to the incident edge on
/// the large side that cuts off more than `n/3` leaves (the larger such side,
/// then the lower edge id).
pub fn balanced_cut_walk_from(g: &OrderedGraph, t: &ClusterTree, start: usize) -> Result<WalkResult> {
    let n = t.n_leaves;
    if n < 3 {
        return Err(Error::InvalidArgument(format!("balanced cut walk needs n >= 3, got {n}")));
    }
    if g.n() != n {
        return Err(Error::InvalidArgument(format!("tree has {n} leaves, graph {} vertices", g.n())));
    }
    if start >= t.edges.len() {
        return Err(Error::OutOfRange {
            what: "tree edge",
            index: start,
            limit: t.edges.len(),
        });
    }
    let adj = t.adjacency();
    let small = |size: usize| 3 * size < n;
    let mut e = start;
    for steps in 0..=t.edges.len() {
        let (a, b) = t.edges[e];
        let size_b = t.side_mask_toward(e, b).count_ones() as usize;
        let size_a = n - size_b;
        if !small(size_a) && !small(size_b) {
            return Ok(WalkResult {
                cut: t.edge_cut(e),
                edge: e,
                steps,
            });
        }
        let w = if size_b > size_a { b } else { a };
        let next = adj[w]
            .iter()
            .filter(|&&(_, f)| f != e)
            .map(|&(y, f)| (t.side_mask_toward(f, y).count_ones() as usize, f))
            .filter(|&(far, _)| 3 * far > n)
            .max_by_key(|&(far, f)| (far, std::cmp::Reverse(f)));
        match next {
            Some((_, f)) => e = f,
            None => break,
        }
    }
    Err(Error::InvalidArgument("balanced cut walk did not terminate; tree malformed".into()))
}
