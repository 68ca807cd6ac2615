//! Vertex bipartitions, their blocks, and cut rank.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use super::gf2::{gf2_rank, rank_of_words, Gf2Matrix};
use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

/// Largest `n` for which [`min_balanced_cut_rank`] enumerates all cuts.
pub const EXHAUSTIVE_CUT_LIMIT: usize = 22;

/// Side (`false` = 0, `true` = 1) of every vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cut {
    side: Vec<bool>,
}

impl Cut {
    pub fn new(side: Vec<bool>) -> Cut {
        Cut { side }
    }

    /// Vertices `< split` on side 0, the rest on side 1.
    pub fn prefix(n: usize, split: usize) -> Cut {
        Cut::new((0..n).map(|v| v >= split).collect())
    }

    /// Side 1 holds the set bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Cut {
        Cut::new((0..n).map(|v| mask >> v & 1 == 1).collect())
    }

    pub fn from_side_one(n: usize, vertices: &[usize]) -> Cut {
        let mut side = vec![false; n];
        for &v in vertices {
            side[v] = true;
        }
        Cut::new(side)
    }

    /// Parse a string of `0`/`1` characters, one per vertex.
    pub fn parse(text: &str) -> Result<Cut> {
        let text = text.trim();
        text.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Syntax {
                    line: 1,
                    msg: format!("cut strings use 0 and 1 only, found `{c}`"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Cut::new)
    }

    pub fn n(&self) -> usize {
        self.side.len()
    }

    pub fn side(&self, v: usize) -> bool {
        self.side[v]
    }

    pub fn vertices_on(&self, side: bool) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.side[v] == side).collect()
    }

    pub fn sizes(&self) -> (usize, usize) {
        let ones = self.side.iter().filter(|&&s| s).count();
        (self.n() - ones, ones)
    }

    /// Every side has at least `n / 3` vertices.
    pub fn is_balanced(&self) -> bool {
        let (a, b) = self.sizes();
        3 * a.min(b) >= self.n()
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.side {
            f.write_str(if s { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Maximal run of same-side vertices, `start..=end`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub side: bool,
}

#[allow(clippy::len_without_is_empty)]
impl Block {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn contains(&self, v: usize) -> bool {
        self.start <= v && v <= self.end
    }
}

pub fn blocks(c: &Cut) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::new();
    for v in 0..c.n() {
        match out.last_mut() {
            Some(b) if b.side == c.side(v) => b.end = v,
            _ => out.push(Block {
                start: v,
                end: v,
                side: c.side(v),
            }),
        }
    }
    out
}

/// Rows are side-0 vertices ascending, columns side-1 vertices ascending.
pub fn biadjacency(g: &OrderedGraph, c: &Cut) -> Gf2Matrix {
    let rows = c.vertices_on(false);
    let cols = c.vertices_on(true);
    Gf2Matrix::from_fn(rows.len(), cols.len(), |i, j| g.has_edge(rows[i], cols[j]))
}

pub fn cut_rank(g: &OrderedGraph, c: &Cut) -> usize {
    if g.n() <= 64 {
        let mask = (0..g.n()).filter(|&v| c.side(v)).fold(0u64, |m, v| m | 1 << v);
        return cut_rank_mask(g, mask);
    }
    gf2_rank(&biadjacency(g, c))
}

/// Cut rank with side 1 given as a bit mask. Needs `n <= 64`.
pub fn cut_rank_mask(g: &OrderedGraph, side_one: u64) -> usize {
    let mut rows: Vec<u64> = (0..g.n())
        .filter(|&v| side_one >> v & 1 == 0)
        .map(|v| g.neighbor_mask(v) & side_one)
        .collect();
    rank_of_words(&mut rows)
}

/// Minimum cut rank over all balanced cuts, by enumeration.
pub fn min_balanced_cut_rank(g: &OrderedGraph) -> Result<usize> {
    let n = g.n();
    if n > EXHAUSTIVE_CUT_LIMIT {
        return Err(Error::TooLarge {
            n,
            max: EXHAUSTIVE_CUT_LIMIT,
        });
    }
    if n < 2 {
        return Ok(0);
    }
    // Vertex n-1 stays on side 0; cut rank is symmetric in the sides.
    let half = 1u64 << (n - 1);
    let best = (0..half)
        .into_par_iter()
        .filter(|&mask| {
            let ones = mask.count_ones() as usize;
            3 * ones.min(n - ones) >= n
        })
        .map(|mask| cut_rank_mask(g, mask))
        .min();
    Ok(best.unwrap_or(0))
}

/// Upper bound on the minimum balanced cut rank from `samples` random
/// balanced cuts; `None` when nothing was sampled.
pub fn sampled_min_balanced_cut_rank<R: Rng>(g: &OrderedGraph, samples: usize, rng: &mut R) -> Option<usize> {
    let n = g.n();
    if n < 2 {
        return Some(0);
    }
    let lo = n.div_ceil(3);
    (0..samples)
        .map(|_| {
            let size = rng.gen_range(lo..=n - lo);
            let chosen = rand::seq::index::sample(rng, n, size).into_vec();
            cut_rank(g, &Cut::from_side_one(n, &chosen))
        })
        .min()
}

/// Two blocks on opposite sides, close relative to their sizes.
///
/// Starting from the largest block `R`, one greedy sequence walks outward to
/// ever larger opposite-side blocks `B_i`; for each `B_i` a second sequence
/// walks from `B_i` back toward `R` through ever larger same-side-as-`R`
/// blocks `R_j`. Among the generated pairs whose intervening blocks are all
/// smaller than both members, the pair maximising
/// `min(|X|, |Y|) / (1 + gap)` is returned, left block first.
pub fn find_close_block_pair(c: &Cut) -> Result<(Block, Block)> {
    let bl = blocks(c);
    if bl.len() < 2 {
        return Err(Error::EmptySide);
    }
    let gap = |x: usize, y: usize| {
        let (l, r) = (x.min(y), x.max(y));
        bl[r].start - bl[l].end - 1
    };
    let mut r = 0;
    for i in 1..bl.len() {
        if bl[i].len() > bl[r].len() {
            r = i;
        }
    }

    let mut candidates = Vec::new();
    let greedy = |from: usize, toward: Option<usize>, side: bool, prev_len: usize| {
        // Closest block of `side` to `from` longer than `prev_len`; when
        // `toward` is given, only blocks strictly between the two count.
        (0..bl.len())
            .filter(|&i| bl[i].side == side && bl[i].len() > prev_len)
            .filter(|&i| match toward {
                Some(t) => (i > from.min(t)) && (i < from.max(t)),
                None => true,
            })
            .min_by_key(|&i| (gap(from, i), i))
    };
    let mut prev = 0;
    while let Some(b) = greedy(r, None, !bl[r].side, prev) {
        candidates.push((r, b));
        let mut prev_r = 0;
        while let Some(rj) = greedy(b, Some(r), bl[r].side, prev_r) {
            candidates.push((rj, b));
            prev_r = bl[rj].len();
        }
        prev = bl[b].len();
    }

    let qualifies = |x: usize, y: usize| {
        let (l, h) = (x.min(y), x.max(y));
        let m = bl[x].len().min(bl[y].len());
        (l + 1..h).all(|i| bl[i].len() < m)
    };
    let score = |x: usize, y: usize| (bl[x].len().min(bl[y].len()) as f64) / (1 + gap(x, y)) as f64;
    let mut best: Option<(usize, usize)> = None;
    for &(x, y) in &candidates {
        if !qualifies(x, y) {
            continue;
        }
        if best.is_none_or(|(bx, by)| score(x, y) > score(bx, by)) {
            best = Some((x, y));
        }
    }
    let (x, y) = best.expect("adjacent blocks always qualify");
    Ok((bl[x.min(y)], bl[x.max(y)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_examples() {
        assert_eq!(blocks(&Cut::from_side_one(9, &[0, 1, 2, 7, 8])).len(), 3);
        assert_eq!(blocks(&Cut::new(vec![false; 5])).len(), 1);
        assert_eq!(blocks(&Cut::parse("010101").unwrap()).len(), 6);
        assert!(blocks(&Cut::new(vec![])).is_empty());
    }

    #[test]
    fn cut_text_round_trip() {
        let c = Cut::parse("0011\n").unwrap();
        assert_eq!(c.to_string(), "0011");
        assert!(Cut::parse("01x").is_err());
    }

    #[test]
    fn biadjacency_examples() {
        let k = OrderedGraph::complete(6);
        let c = Cut::prefix(6, 2);
        let m = biadjacency(&k, &c);
        assert_eq!((m.rows(), m.cols()), (2, 4));
        assert_eq!(gf2_rank(&m), 1);
        assert_eq!(gf2_rank(&biadjacency(&OrderedGraph::empty(6), &c)), 0);
        assert_eq!(cut_rank(&k, &c), 1);
    }

    #[test]
    fn balanced_rank_examples() {
        assert_eq!(min_balanced_cut_rank(&OrderedGraph::complete(9)).unwrap(), 1);
        assert_eq!(min_balanced_cut_rank(&OrderedGraph::empty(9)).unwrap(), 0);
        assert_eq!(min_balanced_cut_rank(&OrderedGraph::path(9)).unwrap(), 1);
        assert!(min_balanced_cut_rank(&OrderedGraph::empty(23)).is_err());
    }

    #[test]
    fn close_pair_examples() {
        let c = Cut::prefix(9, 4);
        let (a, b) = find_close_block_pair(&c).unwrap();
        assert_eq!((a.start, a.end, b.start, b.end), (0, 3, 4, 8));
        assert!(matches!(find_close_block_pair(&Cut::new(vec![true; 4])), Err(Error::EmptySide)));
        // Tiny blocks near a big one lose to a big far block.
        let c = Cut::parse("0000000000101111111111").unwrap();
        let (a, b) = find_close_block_pair(&c).unwrap();
        assert!(a.side != b.side);
        for x in blocks(&c) {
            if x.start > a.end && x.end < b.start {
                assert!(x.len() < a.len().min(b.len()));
            }
        }
    }
}
