//! Ordered-graph census over induced subdrawings of a seed library.
//!
//! Vertex order fixes identities, so the canonical form of an ordered graph
//! is just its size and upper-triangle adjacency bits.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::curves::{check_strict, extract_graph};
use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::graph::OrderedGraph;
use crate::induced::induced_subdrawing;

/// Subset levels with at most this many subsets are enumerated.
pub const EXHAUSTIVE_SUBSET_LIMIT: u128 = 100_000;

/// `n` as little-endian `u32`, then the upper triangle row by row, packed
/// eight bits per byte, least significant bit first.
pub fn ordered_canon(g: &OrderedGraph) -> Vec<u8> {
    let n = g.n();
    let mut out = (n as u32).to_le_bytes().to_vec();
    let mut byte = 0u8;
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            byte |= (g.has_edge(u, v) as u8) << bit;
            bit += 1;
            if bit == 8 {
                out.push(byte);
                byte = 0;
                bit = 0;
            }
        }
    }
    if bit > 0 {
        out.push(byte);
    }
    out
}

/// Inverse of [`ordered_canon`].
pub fn graph_from_canon(bytes: &[u8]) -> OrderedGraph {
    let n = u32::from_le_bytes(bytes[..4].try_into().unwrap()) as usize;
    let mut g = OrderedGraph::empty(n);
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bytes[4 + i / 8] >> (i % 8) & 1 == 1 {
                g.add_edge(u, v);
            }
            i += 1;
        }
    }
    g
}

pub fn binomial(n: usize, m: usize) -> u128 {
    if m > n {
        return 0;
    }
    let m = m.min(n - m);
    (0..m).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `m`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    let mut c: Vec<usize> = (0..m).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..m).rev().find(|&i| c[i] < n - m + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..m {
            c[j] = c[j - 1] + 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusLevel {
    pub m: usize,
    pub classes: BTreeSet<Vec<u8>>,
    /// Every seed's `m`-subsets were enumerated.
    pub exhaustive: bool,
}

impl CensusLevel {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusReport {
    /// Vertex counts of the seeds, in order.
    pub seed_sizes: Vec<usize>,
    pub rng_seed: u64,
    pub samples: usize,
    /// Levels `m = 0..=m_max`.
    pub levels: Vec<CensusLevel>,
    /// Sizes `m` whose classes were checked against the exhaustive level
    /// `m - 1`, with the outcome.
    pub heredity: Vec<(usize, bool)>,
}

impl CensusReport {
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(CensusLevel::count).collect()
    }

    /// `count(m + 1) / count(m)` for consecutive levels.
    pub fn ratios(&self) -> Vec<f64> {
        self.levels
            .windows(2)
            .map(|w| w[1].count() as f64 / w[0].count() as f64)
            .collect()
    }

    pub fn hereditary(&self) -> bool {
        self.heredity.iter().all(|&(_, ok)| ok)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "seed {}  samples {}  seeds {:?}", self.rng_seed, self.samples, self.seed_sizes).unwrap();
        writeln!(out, "{:>3} {:>10} {:>8} {:>11}", "m", "count", "ratio", "mode").unwrap();
        let ratios = self.ratios();
        for (i, l) in self.levels.iter().enumerate() {
            let ratio = match i {
                0 => "-".to_string(),
                _ => format!("{:.3}", ratios[i - 1]),
            };
            let mode = if l.exhaustive { "exhaustive" } else { "sampled" };
            writeln!(out, "{:>3} {:>10} {:>8} {:>11}", l.m, l.count(), ratio, mode).unwrap();
        }
        for &(m, ok) in &self.heredity {
            writeln!(out, "heredity m={m}: {}", if ok { "closed" } else { "VIOLATED" }).unwrap();
        }
        out
    }

    /// Machine-readable `census m count` lines.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for l in &self.levels {
            writeln!(out, "census {} {}", l.m, l.count()).unwrap();
        }
        out
    }
}

fn subset_class(d: &Drawing, s: &[usize]) -> Result<Vec<u8>> {
    Ok(ordered_canon(&extract_graph(&induced_subdrawing(d, s)?)))
}

/// Distinct ordered graphs of induced subdrawings, by subset size.
///
/// Levels with at most [`EXHAUSTIVE_SUBSET_LIMIT`] subsets per seed are
/// enumerated; larger ones draw `samples` random subsets from a generator
/// seeded with `rng_seed`. Every level whose predecessor is exhaustive is
/// checked for closure under single-vertex deletion.
pub fn run_census(seeds: &[Drawing], m_max: usize, rng_seed: u64, samples: usize) -> Result<CensusReport> {
    for (i, d) in seeds.iter().enumerate() {
        if !check_strict(d).strict {
            return Err(Error::NonStrictSeed(i));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut levels = Vec::new();
    for m in 0..=m_max {
        let mut classes = BTreeSet::new();
        let mut exhaustive = true;
        for d in seeds {
            let n = d.n_vertices;
            let subsets = if binomial(n, m) <= EXHAUSTIVE_SUBSET_LIMIT {
                combinations(n, m)
            } else {
                exhaustive = false;
                (0..samples).map(|_| random_subset(&mut rng, n, m)).collect()
            };
            let found: Vec<Vec<u8>> = subsets.par_iter().map(|s| subset_class(d, s)).collect::<Result<_>>()?;
            classes.extend(found);
        }
        levels.push(CensusLevel { m, classes, exhaustive });
    }
    let mut heredity = Vec::new();
    for m in 1..levels.len() {
        if levels[m - 1].exhaustive {
            let lower = &levels[m - 1].classes;
            let ok = levels[m].classes.par_iter().all(|c| {
                let g = graph_from_canon(c);
                (0..m).all(|v| {
                    let rest: Vec<usize> = (0..m).filter(|&u| u != v).collect();
                    lower.contains(&ordered_canon(&g.induced(&rest)))
                })
            });
            heredity.push((m, ok));
        }
    }
    Ok(CensusReport {
        seed_sizes: seeds.iter().map(|d| d.n_vertices).collect(),
        rng_seed,
        samples,
        levels,
        heredity,
    })
}

fn random_subset<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<usize> {
    let mut s = sample(rng, n, m).into_vec();
    s.sort_unstable();
    s
}

/// For random nested `S' ⊆ S`, inducing on `S` and then on `S'` (relabelled
/// into `D[S]`) must give the same ordered graph as inducing on `S'`.
pub fn heredity_spot_check<R: Rng>(d: &Drawing, trials: usize, rng: &mut R) -> Result<bool> {
    let n = d.n_vertices;
    for _ in 0..trials {
        let size = rng.gen_range(0..=n);
        let s = random_subset(rng, n, size);
        let size = rng.gen_range(0..=s.len());
        let inner_pos = random_subset(rng, s.len(), size);
        let inner: Vec<usize> = inner_pos.iter().map(|&i| s[i]).collect();
        if !nested_agree(d, &s, &inner_pos, &inner)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn nested_agree(d: &Drawing, s: &[usize], inner_pos: &[usize], inner: &[usize]) -> Result<bool> {
    let twice = induced_subdrawing(&induced_subdrawing(d, s)?, inner_pos)?;
    Ok(subset_class(d, inner)? == ordered_canon(&extract_graph(&twice)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gk::generate_gk;

    #[test]
    fn canon_examples() {
        let p = OrderedGraph::path(3);
        let same = OrderedGraph::from_edges(3, [(1, 2), (0, 1)]).unwrap();
        assert_eq!(ordered_canon(&p), ordered_canon(&same));
        let other = OrderedGraph::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        assert_ne!(ordered_canon(&p), ordered_canon(&other));
        assert_eq!(ordered_canon(&OrderedGraph::empty(5)), ordered_canon(&OrderedGraph::empty(5)));
        assert_ne!(ordered_canon(&OrderedGraph::empty(4)), ordered_canon(&OrderedGraph::empty(5)));
        let g = OrderedGraph::cycle(7);
        assert_eq!(graph_from_canon(&ordered_canon(&g)), g);
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(27, 6), 296_010);
        assert_eq!(binomial(3, 4), 0);
        for (n, m) in [(0, 0), (5, 0), (6, 3), (7, 7)] {
            let c = combinations(n, m);
            assert_eq!(c.len() as u128, binomial(n, m));
            assert!(c.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn triangle_census() {
        let r = run_census(&[generate_gk(1).unwrap()], 3, 0, 10).unwrap();
        assert_eq!(r.counts(), vec![1, 1, 1, 1]);
        assert!(r.hereditary());
        assert_eq!(r.to_lines(), "census 0 1\ncensus 1 1\ncensus 2 1\ncensus 3 1\n");
    }

    #[test]
    fn g2_pairs() {
        let r = run_census(&[generate_gk(2).unwrap()], 2, 0, 10).unwrap();
        assert_eq!(r.levels[2].count(), 2);
    }

    #[test]
    fn census_is_deterministic_and_bounded() {
        let seeds = [generate_gk(2).unwrap(), generate_gk(3).unwrap()];
        let a = run_census(&seeds, 5, 7, 50).unwrap();
        let b = run_census(&seeds, 5, 7, 50).unwrap();
        assert_eq!(a, b);
        assert!(a.hereditary());
        for l in &a.levels {
            assert!(l.count() as u128 <= 1u128 << (l.m * l.m.saturating_sub(1) / 2));
        }
    }

    #[test]
    fn non_strict_seed_rejected() {
        use crate::drawing::{Attachment, End, Track, TrackEnd};
        // v0-v1 both directly and through a junction.
        let (v, j) = (Attachment::Vertex, Attachment::Junction);
        let te = TrackEnd::new;
        let d = Drawing {
            n_vertices: 3,
            n_junctions: 1,
            tracks: vec![
                Track::new(v(0), j(0)),
                Track::new(j(0), v(1)),
                Track::new(j(0), v(2)),
                Track::new(v(0), v(1)),
            ],
            vertex_rotations: vec![
                vec![te(3, End::A), te(0, End::A)],
                vec![te(1, End::B), te(3, End::B)],
                vec![te(2, End::B)],
            ],
            junction_rotations: vec![vec![te(0, End::B), te(1, End::A), te(2, End::A)]],
            gaps: vec![(0, 2)],
        };
        assert_eq!(run_census(&[d], 2, 0, 1), Err(Error::NonStrictSeed(0)));
    }

    #[test]
    fn nested_subsets_agree() {
        let d = generate_gk(2).unwrap();
        for s in (0..=4).flat_map(|m| combinations(9, m)) {
            for inner_pos in (0..=s.len()).flat_map(|m| combinations(s.len(), m)) {
                let inner: Vec<usize> = inner_pos.iter().map(|&i| s[i]).collect();
                assert!(nested_agree(&d, &s, &inner_pos, &inner).unwrap());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(heredity_spot_check(&generate_gk(3).unwrap(), 40, &mut rng).unwrap());
    }
}
