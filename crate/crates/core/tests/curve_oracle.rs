//! Curve counts checked against a length-indexed walk count that re-derives
//! smooth transitions from the rotations and gaps on its own.

use confluent_core::{check_strict, curve_count, extract_graph, generate_gk, induced_subdrawing};
use confluent_core::{Attachment, CurveCount, Drawing, End, TrackEnd};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Walk state: track `t` traversed away from end `from`.
fn state(t: usize, from: End) -> usize {
    2 * t + (from == End::B) as usize
}

fn oracle_counts(d: &Drawing, u: usize) -> Vec<CurveCount> {
    let s_len = 2 * d.tracks.len();
    let n = d.n_vertices;
    // The end reached by a state and, for junction ends, its successors.
    let reached = |s: usize| {
        let from = if s.is_multiple_of(2) { End::A } else { End::B };
        TrackEnd::new(s / 2, from.other())
    };
    let successors = |e: TrackEnd| -> Vec<usize> {
        let Attachment::Junction(j) = d.tracks[e.track].endpoint(e.end) else {
            return Vec::new();
        };
        let rot = &d.junction_rotations[j];
        let (a, b) = (d.gaps[j].0.min(d.gaps[j].1), d.gaps[j].0.max(d.gaps[j].1));
        let side = |slot: usize| a < slot && slot <= b;
        let here = rot.iter().position(|&x| x == e).unwrap();
        (0..rot.len())
            .filter(|&slot| side(slot) != side(here))
            .map(|slot| state(rot[slot].track, rot[slot].end))
            .collect()
    };

    let mut layer = vec![0u64; s_len];
    for e in &d.vertex_rotations[u] {
        layer[state(e.track, e.end)] += 1;
    }
    let short_len = s_len;
    let long_len = 3 * s_len + 2;
    let mut short = vec![0u64; n];
    let mut long = vec![0u64; n];
    for len in 1..=long_len {
        let mut next = vec![0u64; s_len];
        for (s, &walks) in layer.iter().enumerate() {
            if walks == 0 {
                continue;
            }
            let e = reached(s);
            match d.tracks[e.track].endpoint(e.end) {
                Attachment::Vertex(v) if len <= short_len => short[v] = short[v].saturating_add(walks),
                Attachment::Vertex(v) => long[v] = long[v].saturating_add(walks),
                Attachment::Junction(_) => {
                    for t in successors(e) {
                        next[t] = next[t].saturating_add(walks).min(1 << 40);
                    }
                }
            }
        }
        layer = next;
    }
    (0..n)
        .map(|v| match (short[v], long[v]) {
            (_, l) if l > 0 => CurveCount::Infinite,
            (0, _) => CurveCount::Zero,
            (1, _) => CurveCount::One,
            _ => CurveCount::Many,
        })
        .collect()
}

fn assert_matches_oracle(d: &Drawing) {
    for u in 0..d.n_vertices {
        let expect = oracle_counts(d, u);
        for (v, &c) in expect.iter().enumerate() {
            assert_eq!(curve_count(d, u, v), c, "pair ({u}, {v})");
        }
    }
}

/// Random subset of `G_k` whose induced subdrawing has at most 12 tracks.
fn small_induced(k: u32, rng: &mut ChaCha8Rng) -> Drawing {
    let d = generate_gk(k).unwrap();
    loop {
        let size = rng.gen_range(2..=7);
        let mut s = rand::seq::index::sample(rng, d.n_vertices, size).into_vec();
        s.sort_unstable();
        let sub = induced_subdrawing(&d, &s).unwrap();
        if sub.tracks.len() <= 12 {
            return sub;
        }
    }
}

/// Move one gap of one junction to a different position.
fn mutate_gaps(d: &mut Drawing, rng: &mut ChaCha8Rng) -> bool {
    if d.n_junctions == 0 {
        return false;
    }
    let j = rng.gen_range(0..d.n_junctions);
    let deg = d.junction_rotations[j].len();
    let old = d.gaps[j];
    loop {
        let a = rng.gen_range(0..deg);
        let b = rng.gen_range(0..deg);
        if a < b && (a, b) != (old.0.min(old.1), old.0.max(old.1)) {
            d.gaps[j] = (a, b);
            return true;
        }
    }
}

#[test]
fn gk_matches_oracle() {
    for k in 1..=2 {
        assert_matches_oracle(&generate_gk(k).unwrap());
    }
}

#[test]
fn extracted_edges_are_single_curves() {
    let d = generate_gk(3).unwrap();
    let g = extract_graph(&d);
    for u in 0..d.n_vertices {
        let expect = oracle_counts(&d, u);
        for (v, &c) in expect.iter().enumerate() {
            assert_eq!(g.has_edge(u, v), u != v && c == CurveCount::One);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn induced_subdrawings_match_oracle(seed in any::<u64>(), k in 2u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = small_induced(k, &mut rng);
        assert_matches_oracle(&d);
        prop_assert!(check_strict(&d).strict);
    }

    #[test]
    fn gap_mutations_match_oracle(seed in any::<u64>(), k in 2u32..=3, rounds in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = small_induced(k, &mut rng);
        for _ in 0..rounds {
            mutate_gaps(&mut d, &mut rng);
        }
        assert_matches_oracle(&d);
    }
}

/// Every rotation and gap choice at one junction carrying a loop and the
/// tracks to two vertices.
fn loop_fixtures() -> Vec<Drawing> {
    use confluent_core::Track;
    let (v, j) = (Attachment::Vertex, Attachment::Junction);
    let ends = [
        TrackEnd::new(0, End::B),
        TrackEnd::new(1, End::A),
        TrackEnd::new(2, End::A),
        TrackEnd::new(2, End::B),
    ];
    let mut out = Vec::new();
    for p in 0..24usize {
        let mut pool = ends.to_vec();
        let mut rot = Vec::new();
        let mut code = p;
        for r in (1..=4).rev() {
            rot.push(pool.remove(code % r));
            code /= r;
        }
        for a in 0..4 {
            for b in a + 1..4 {
                out.push(Drawing {
                    n_vertices: 2,
                    n_junctions: 1,
                    tracks: vec![Track::new(v(0), j(0)), Track::new(j(0), v(1)), Track::new(j(0), j(0))],
                    vertex_rotations: vec![vec![TrackEnd::new(0, End::A)], vec![TrackEnd::new(1, End::B)]],
                    junction_rotations: vec![rot.clone()],
                    gaps: vec![(a, b)],
                });
            }
        }
    }
    out
}

#[test]
fn fixtures_reach_every_count_kind() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = std::collections::BTreeSet::new();
    for d in loop_fixtures() {
        assert_matches_oracle(&d);
        seen.extend(oracle_counts(&d, 0));
    }
    for _ in 0..300 {
        let mut d = small_induced(3, &mut rng);
        mutate_gaps(&mut d, &mut rng);
        assert_matches_oracle(&d);
        for u in 0..d.n_vertices {
            seen.extend(oracle_counts(&d, u));
        }
    }
    assert_eq!(seen.len(), 4, "{seen:?}");
}
