//! Certified lower bounds on the cut rank of `G_k` from nested domes.
//!
//! Given a cut, take two close blocks `X` (left) and `Y` (right) on opposite
//! sides, pick a boundary gap between them, and walk the domes spanning that
//! gap from the bottom up. A dome whose reach meets both blocks contributes a
//! pair `(x, y)` of vertices it reaches but no lower dome does. The vertices
//! chosen this way form a submatrix of the biadjacency matrix with a
//! unit diagonal; its GF(2) rank is the certified bound.

use super::cut::{find_close_block_pair, Block, Cut};
use super::gf2::{gf2_rank, is_arrow, Gf2Matrix};
use crate::error::{Error, Result};
use crate::gk::{gk_adjacent, nested_domes};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundWitness {
    pub blocks: (Block, Block),
    /// Boundary gap between vertices `gap` and `gap + 1`.
    pub gap: usize,
    /// `(level, index)` of each dome that contributed a pair.
    pub domes: Vec<(u32, usize)>,
    /// Chosen vertices in the left block, one per contributing dome.
    pub rows: Vec<usize>,
    /// Chosen vertices in the right block.
    pub cols: Vec<usize>,
    /// Whether the submatrix has the arrow shape in level order, reversed
    /// level order, or transposed.
    pub arrow: bool,
    /// GF(2) rank of the submatrix.
    pub bound: usize,
}

impl LowerBoundWitness {
    pub fn matrix(&self, k: u32) -> Gf2Matrix {
        Gf2Matrix::from_fn(self.rows.len(), self.cols.len(), |i, j| {
            gk_adjacent(k, self.rows[i], self.cols[j]).unwrap()
        })
    }
}

/// Arrow condition for index `i` of a growing selection.
fn arrow_ok(rows: &[usize], cols: &[usize], x: usize, y: usize, adj: &impl Fn(usize, usize) -> bool) -> bool {
    rows.iter().all(|&r| !adj(r, y)) || cols.iter().all(|&c| !adj(x, c))
}

fn witness_at_gap(k: u32, pair: (Block, Block), gap: usize) -> Result<LowerBoundWitness> {
    let (left, right) = pair;
    let adj = |u: usize, v: usize| gk_adjacent(k, u, v).unwrap();
    let mut lower_reached: Vec<usize> = Vec::new();
    let mut w = LowerBoundWitness {
        blocks: pair,
        gap,
        domes: Vec::new(),
        rows: Vec::new(),
        cols: Vec::new(),
        arrow: true,
        bound: 0,
    };
    for dome in nested_domes(k, gap)? {
        let fresh = |v: &&usize| !lower_reached.contains(v);
        let xs: Vec<usize> = dome.left_reach.iter().filter(|v| left.contains(**v)).filter(fresh).copied().collect();
        let ys: Vec<usize> = dome.right_reach.iter().filter(|v| right.contains(**v)).filter(fresh).copied().collect();
        // Prefer pairs keeping the arrow shape, then closeness to the gap.
        let best = xs
            .iter()
            .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
            .filter(|&(x, y)| adj(x, y) && arrow_ok(&w.rows, &w.cols, x, y, &adj))
            .min_by_key(|&(x, y)| (gap - x, y - gap - 1, x, y));
        if let Some((x, y)) = best {
            w.domes.push((dome.level, dome.index));
            w.rows.push(x);
            w.cols.push(y);
        }
        lower_reached.extend(dome.left_reach.iter().chain(&dome.right_reach));
    }
    let m = w.matrix(k);
    let rev: Vec<usize> = (0..w.rows.len()).rev().collect();
    w.arrow = is_arrow(&m)? || is_arrow(&m.submatrix(&rev, &rev))? || is_arrow(&m.transpose())?;
    w.bound = gf2_rank(&m);
    Ok(w)
}

/// Certified lower bound on the rank of `biadjacency(G_k, c)`; every gap
/// between the chosen blocks is tried and the best witness (leftmost on
/// ties) is returned.
pub fn cut_rank_lower_bound(k: u32, c: &Cut) -> Result<LowerBoundWitness> {
    let n = 3usize.pow(k);
    if c.n() != n {
        return Err(Error::InvalidArgument(format!("cut has {} vertices, G_{k} has {n}", c.n())));
    }
    let pair = match find_close_block_pair(c) {
        Ok(p) => p,
        Err(Error::EmptySide) => return Err(Error::NoWitnessGap),
        Err(e) => return Err(e),
    };
    let mut best: Option<LowerBoundWitness> = None;
    for gap in pair.0.end..pair.1.start {
        let w = witness_at_gap(k, pair, gap)?;
        if best.as_ref().is_none_or(|b| w.bound > b.bound) {
            best = Some(w);
        }
    }
    best.ok_or(Error::NoWitnessGap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::extract_graph;
    use crate::gk::generate_gk;
    use crate::width::cut::biadjacency;

    #[test]
    fn g2_prefix_cut() {
        let c = Cut::prefix(9, 5);
        let w = cut_rank_lower_bound(2, &c).unwrap();
        assert_eq!(w.gap, 4);
        assert_eq!(w.domes, vec![(0, 2), (1, 0)]);
        assert!(w.bound >= 2 && w.arrow);
        let full = gf2_rank(&biadjacency(&extract_graph(&generate_gk(2).unwrap()), &c));
        assert!(w.bound <= full);
    }

    #[test]
    fn one_sided_cut_has_no_witness() {
        let c = Cut::new(vec![false; 9]);
        assert!(matches!(cut_rank_lower_bound(2, &c), Err(Error::NoWitnessGap)));
    }

    #[test]
    fn witness_entries_match_extracted_graph() {
        let g = extract_graph(&generate_gk(3).unwrap());
        for split in 1..27 {
            let c = Cut::prefix(27, split);
            let w = cut_rank_lower_bound(3, &c).unwrap();
            let m = w.matrix(3);
            for (i, &x) in w.rows.iter().enumerate() {
                for (j, &y) in w.cols.iter().enumerate() {
                    assert_eq!(m.get(i, j), g.has_edge(x, y));
                }
            }
            assert!(w.bound <= gf2_rank(&biadjacency(&g, &c)));
            assert!(w.arrow, "split {split}");
            assert_eq!(w.bound, w.rows.len());
        }
    }
}
