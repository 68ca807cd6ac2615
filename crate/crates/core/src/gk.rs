//! The recursive drawings `G_k` and closed-form facts about them.
//!
//! `G_k` has `3^k` boundary vertices joined consecutively by boundary tracks.
//! Level `i` (0-based, bottom to top) has `m_i = (3^(k-i) + 1) / 2` points
//! `p_{i,j}`; level-0 points are the even vertices `2j`, higher points are
//! junctions. Consecutive points of a level are joined by a semicircle. Below
//! the top level, every semicircle with `j % 3 == 0` is subdivided by two
//! junctions `qL`, `qR` into arcs `L`, `M`, `R`, and up-tracks join both of
//! them to `p_{i+1,j/3}`.
//!
//! Rotations follow the half-plane picture with vertices on the x-axis left
//! to right and the drawing above it, listed counterclockwise in that picture.

use crate::drawing::{Attachment, Drawing, End, Track, TrackEnd};
use crate::error::{Error, Result};

/// Largest `k` accepted by [`generate_gk`].
pub const MAX_K: u32 = 12;

fn pow3(e: u32) -> usize {
    3usize.pow(e)
}

/// Points on level `i` of `G_k`.
pub fn level_points(k: u32, i: u32) -> usize {
    pow3(k - i).div_ceil(2)
}

/// Positions of vertices then junctions in the half-plane picture.
#[derive(Clone, Debug, PartialEq)]
pub struct GkLayout {
    pub vertices: Vec<(f64, f64)>,
    pub junctions: Vec<(f64, f64)>,
}

// Rotation sort keys around a point.
const BOUNDARY_RIGHT: u8 = 0;
const SEMI_RIGHT: u8 = 1;
const SEMI_LEFT: u8 = 2;
const BOUNDARY_LEFT: u8 = 3;
const UP_LEFT: u8 = 4;
const UP_RIGHT: u8 = 5;

struct Builder {
    tracks: Vec<Track>,
    vertex_ends: Vec<Vec<(u8, TrackEnd)>>,
    junction_rotations: Vec<Vec<TrackEnd>>,
    junction_ends: Vec<Vec<(u8, TrackEnd)>>,
    gaps: Vec<(usize, usize)>,
    positions: Vec<(f64, f64)>,
}

impl Builder {
    fn new_junction(&mut self, pos: (f64, f64)) -> Attachment {
        self.junction_ends.push(Vec::new());
        self.junction_rotations.push(Vec::new());
        self.gaps.push((0, 0));
        self.positions.push(pos);
        Attachment::Junction(self.junction_ends.len() - 1)
    }

    /// Add a track; sort keys are only used at vertices and level points.
    fn track(&mut self, a: Attachment, key_a: u8, b: Attachment, key_b: u8) -> usize {
        let t = self.tracks.len();
        self.tracks.push(Track::new(a, b));
        for (at, key, end) in [(a, key_a, End::A), (b, key_b, End::B)] {
            let e = (key, TrackEnd::new(t, end));
            match at {
                Attachment::Vertex(v) => self.vertex_ends[v].push(e),
                Attachment::Junction(j) => self.junction_ends[j].push(e),
            }
        }
        t
    }
}

/// Build `G_k` together with its half-plane layout.
pub fn generate_gk_with_layout(k: u32) -> Result<(Drawing, GkLayout)> {
    if !(1..=MAX_K).contains(&k) {
        return Err(Error::InvalidArgument(format!("k must be in 1..={MAX_K}, got {k}")));
    }
    let n = pow3(k);
    let mut b = Builder {
        tracks: Vec::new(),
        vertex_ends: vec![Vec::new(); n],
        junction_rotations: Vec::new(),
        junction_ends: Vec::new(),
        gaps: Vec::new(),
        positions: Vec::new(),
    };
    for v in 1..n {
        b.track(Attachment::Vertex(v - 1), BOUNDARY_RIGHT, Attachment::Vertex(v), BOUNDARY_LEFT);
    }

    let vertex_pos: Vec<(f64, f64)> = (0..n).map(|v| (v as f64, 0.0)).collect();
    let mut points: Vec<Attachment> = (0..level_points(k, 0)).map(|j| Attachment::Vertex(2 * j)).collect();
    let mut point_pos: Vec<(f64, f64)> = points.iter().map(|&p| pos_of(&b, &vertex_pos, p)).collect();
    // Junctions whose rotation is fixed directly rather than by sort keys.
    let mut fixed = Vec::new();

    for i in 0..k {
        let m = points.len();
        if i + 1 == k {
            b.track(points[0], SEMI_RIGHT, points[1], SEMI_LEFT);
            break;
        }
        let mut upper = Vec::with_capacity(level_points(k, i + 1));
        let mut upper_pos = Vec::with_capacity(level_points(k, i + 1));
        for j in (0..m - 1).step_by(3) {
            let (x0, y0) = point_pos[j];
            let (x1, _) = point_pos[j + 1];
            let r = (x1 - x0) / 2.0;
            let pos = (x0 + r, y0 + 1.6 * r);
            upper.push(b.new_junction(pos));
            upper_pos.push(pos);
        }
        for j in 0..m - 1 {
            if j % 3 != 0 {
                b.track(points[j], SEMI_RIGHT, points[j + 1], SEMI_LEFT);
                continue;
            }
            let (x0, y0) = point_pos[j];
            let (x1, _) = point_pos[j + 1];
            let (cx, r) = ((x0 + x1) / 2.0, (x1 - x0) / 2.0);
            let s = std::f64::consts::FRAC_1_SQRT_2 * r;
            let ql = b.new_junction((cx - s, y0 + s));
            let qr = b.new_junction((cx + s, y0 + s));
            let top = upper[j / 3];
            let l = b.track(points[j], SEMI_RIGHT, ql, 0);
            let mid = b.track(ql, 0, qr, 0);
            let rr = b.track(qr, 0, points[j + 1], SEMI_LEFT);
            let up_l = b.track(ql, 0, top, UP_LEFT);
            let up_r = b.track(qr, 0, top, UP_RIGHT);
            let (Attachment::Junction(jl), Attachment::Junction(jr)) = (ql, qr) else {
                unreachable!()
            };
            b.junction_rotations[jl] = vec![
                TrackEnd::new(mid, End::A),
                TrackEnd::new(up_l, End::A),
                TrackEnd::new(l, End::B),
            ];
            b.junction_rotations[jr] = vec![
                TrackEnd::new(up_r, End::A),
                TrackEnd::new(mid, End::B),
                TrackEnd::new(rr, End::A),
            ];
            b.gaps[jl] = (1, 2);
            b.gaps[jr] = (1, 2);
            fixed.push(jl);
            fixed.push(jr);
        }
        points = upper;
        point_pos = upper_pos;
    }

    let mut is_fixed = vec![false; b.junction_ends.len()];
    for j in fixed {
        is_fixed[j] = true;
    }
    for (j, &fixed) in is_fixed.iter().enumerate() {
        if fixed {
            continue;
        }
        let mut ends = std::mem::take(&mut b.junction_ends[j]);
        ends.sort();
        let semis = ends.iter().filter(|(key, _)| *key == SEMI_LEFT || *key == SEMI_RIGHT).count();
        b.junction_rotations[j] = ends.into_iter().map(|(_, e)| e).collect();
        b.gaps[j] = (semis - 1, semis + 1);
    }
    let vertex_rotations = b
        .vertex_ends
        .into_iter()
        .map(|mut ends| {
            ends.sort();
            ends.into_iter().map(|(_, e)| e).collect()
        })
        .collect();
    let drawing = Drawing {
        n_vertices: n,
        n_junctions: b.junction_rotations.len(),
        tracks: b.tracks,
        vertex_rotations,
        junction_rotations: b.junction_rotations,
        gaps: b.gaps,
    };
    let layout = GkLayout {
        vertices: vertex_pos,
        junctions: b.positions,
    };
    Ok((drawing, layout))
}

fn pos_of(b: &Builder, vertex_pos: &[(f64, f64)], at: Attachment) -> (f64, f64) {
    match at {
        Attachment::Vertex(v) => vertex_pos[v],
        Attachment::Junction(j) => b.positions[j],
    }
}

pub fn generate_gk(k: u32) -> Result<Drawing> {
    generate_gk_with_layout(k).map(|(d, _)| d)
}

/// `(8·4^k − 3·3^k − 5) / 6`, the number of edges of `G_k`.
pub fn gk_edge_count(k: u32) -> u128 {
    (8 * 4u128.pow(k) - 3 * 3u128.pow(k) - 5) / 6
}

/// Whether point index `a` (vertex `2a`) belongs to `P(i, j)`, the level-0
/// points joined to `p_{i,j}` by smooth downward paths.
pub fn in_reach(i: u32, j: usize, a: usize) -> bool {
    let base = j * pow3(i);
    if a < base {
        return false;
    }
    let mut off = a - base;
    if off > (pow3(i) - 1) / 2 {
        return false;
    }
    while off > 0 {
        if off % 3 == 2 {
            return false;
        }
        off /= 3;
    }
    true
}

/// `P(i, j)` as ascending point indices.
pub fn reach(i: u32, j: usize) -> Vec<usize> {
    let base = j * pow3(i);
    (0..1usize << i)
        .map(|bits| {
            let mut off = 0;
            for d in (0..i).rev() {
                off = 3 * off + (bits >> d & 1);
            }
            base + off
        })
        .collect()
}

/// Closed-form adjacency in `G_k`.
pub fn gk_adjacent(k: u32, u: usize, v: usize) -> Result<bool> {
    let n = pow3(k);
    for x in [u, v] {
        if x >= n {
            return Err(Error::OutOfRange {
                what: "vertex",
                index: x,
                limit: n,
            });
        }
    }
    let (u, v) = (u.min(v), u.max(v));
    if v == u + 1 {
        return Ok(true);
    }
    if u == v || u % 2 == 1 || v % 2 == 1 {
        return Ok(false);
    }
    let (a, b) = (u / 2, v / 2);
    Ok((0..k).any(|i| {
        let j = a / pow3(i);
        j + 1 < level_points(k, i) && in_reach(i, j, a) && in_reach(i, j + 1, b)
    }))
}

/// A semicircle of `G_k` with the vertices reached smoothly from either end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dome {
    pub level: u32,
    pub index: usize,
    pub left_reach: Vec<usize>,
    pub right_reach: Vec<usize>,
}

impl Dome {
    pub fn new(level: u32, index: usize) -> Dome {
        Dome {
            level,
            index,
            left_reach: reach(level, index).into_iter().map(|a| 2 * a).collect(),
            right_reach: reach(level, index + 1).into_iter().map(|a| 2 * a).collect(),
        }
    }
}

/// The domes spanning the boundary gap between vertices `g` and `g + 1`,
/// bottom to top.
pub fn nested_domes(k: u32, g: usize) -> Result<Vec<Dome>> {
    let n = pow3(k);
    if g + 1 >= n {
        return Err(Error::OutOfRange {
            what: "gap",
            index: g,
            limit: n - 1,
        });
    }
    let mut out = Vec::new();
    for i in 0..k {
        let p = pow3(i);
        let j = match (g + 1).div_ceil(2 * p).checked_sub(1) {
            Some(j) => j,
            None => continue,
        };
        if j + 1 >= level_points(k, i) {
            continue;
        }
        let left_max = j * p + (p - 1) / 2;
        let right_min = (j + 1) * p;
        if 2 * left_max <= g && g < 2 * right_min {
            out.push(Dome::new(i, j));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::validate;

    #[test]
    fn small_sizes() {
        let g1 = generate_gk(1).unwrap();
        assert_eq!((g1.n_vertices, g1.n_junctions, g1.tracks.len()), (3, 0, 3));
        let g2 = generate_gk(2).unwrap();
        assert_eq!((g2.n_vertices, g2.n_junctions, g2.tracks.len()), (9, 6, 21));
        assert!(generate_gk(0).is_err());
    }

    #[test]
    fn junction_and_track_bounds() {
        for k in 1..=6 {
            let d = generate_gk(k).unwrap();
            let n = d.n_vertices;
            assert!(d.n_junctions + 3 <= n && d.tracks.len() + 6 <= 3 * n, "k={k}");
            assert!(validate(&d).ok());
        }
    }

    #[test]
    fn edge_count_formula() {
        assert_eq!(gk_edge_count(1), 3);
        assert_eq!(gk_edge_count(2), 16);
        assert_eq!(gk_edge_count(4), 300);
        for k in 1..30 {
            assert_eq!((8 * 4u128.pow(k) - 3 * 3u128.pow(k) - 5) % 6, 0);
        }
    }

    #[test]
    fn adjacency_examples() {
        assert!(gk_adjacent(2, 0, 8).unwrap());
        assert!(!gk_adjacent(2, 0, 4).unwrap());
        assert!(gk_adjacent(2, 4, 5).unwrap());
        assert!(gk_adjacent(2, 8, 0).unwrap());
        assert!(gk_adjacent(2, 0, 9).is_err());
    }

    #[test]
    fn adjacency_count_matches_formula() {
        for k in 1..=5 {
            let n = pow3(k);
            let mut count = 0u128;
            for u in 0..n {
                for v in u + 1..n {
                    count += gk_adjacent(k, u, v).unwrap() as u128;
                }
            }
            assert_eq!(count, gk_edge_count(k), "k={k}");
        }
    }

    #[test]
    fn reach_agrees_with_membership() {
        for i in 0..4 {
            for j in 0..4 {
                let r = reach(i, j);
                assert_eq!(r.len(), 1 << i);
                for a in 0..200 {
                    assert_eq!(in_reach(i, j, a), r.contains(&a), "i={i} j={j} a={a}");
                }
            }
        }
    }

    #[test]
    fn dome_examples() {
        let d = nested_domes(2, 4).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!((d[0].level, d[0].index), (0, 2));
        assert_eq!((d[0].left_reach.clone(), d[0].right_reach.clone()), (vec![4], vec![6]));
        assert_eq!((d[1].level, d[1].index), (1, 0));
        assert_eq!((d[1].left_reach.clone(), d[1].right_reach.clone()), (vec![0, 2], vec![6, 8]));
        let d = nested_domes(2, 0).unwrap();
        assert_eq!(d, vec![Dome::new(0, 0)]);
        assert!(nested_domes(2, 8).is_err());
    }

    #[test]
    fn dome_separation() {
        for k in 1..=5 {
            for g in 0..pow3(k) - 1 {
                let domes = nested_domes(k, g).unwrap();
                assert!(domes.windows(2).all(|w| w[0].level < w[1].level));
                for d in &domes {
                    assert_eq!(d.left_reach.len(), 1 << d.level);
                    assert!(d.left_reach.iter().chain(&d.right_reach).all(|v| v % 2 == 0));
                    let l = *d.left_reach.last().unwrap() / 2;
                    let r = d.right_reach[0] / 2;
                    assert_eq!(r - l - 1, (pow3(d.level) - 1) / 2);
                    assert!(*d.left_reach.last().unwrap() <= g && g < d.right_reach[0]);
                }
            }
        }
    }
}
