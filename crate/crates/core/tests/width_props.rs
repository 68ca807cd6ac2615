//! Width-lab and twin-width properties on random instances.

use confluent_core::width::{
    biadjacency, blocks, cut_rank, cut_rank_lower_bound, find_close_block_pair, gf2_rank, is_arrow, Cut, Gf2Matrix,
};
use confluent_core::{exact_twin_width, extract_graph, generate_gk, greedy_twin_width, verify_sequence, OrderedGraph};
use proptest::prelude::*;

/// Arrow matrix: unit diagonal and, per index, random entries on either the
/// column above or the row left of the diagonal.
fn arrow_matrix() -> impl Strategy<Value = Gf2Matrix> {
    (1usize..=64).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n * n),
        )
            .prop_map(move |(use_col, fill)| {
                let mut m = Gf2Matrix::identity(n);
                for i in 0..n {
                    for r in 0..i {
                        let bit = fill[i * n + r];
                        if use_col[i] {
                            m.set(r, i, bit);
                        } else {
                            m.set(i, r, bit);
                        }
                    }
                }
                m
            })
    })
}

fn cut_strategy(n: usize) -> impl Strategy<Value = Cut> {
    prop::collection::vec(any::<bool>(), n).prop_map(Cut::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn arrow_matrices_have_full_rank(m in arrow_matrix()) {
        prop_assert!(is_arrow(&m).unwrap());
        prop_assert_eq!(gf2_rank(&m), m.rows());
    }

    #[test]
    fn close_pair_has_small_blocks_between(c in cut_strategy(81)) {
        prop_assume!(blocks(&c).len() >= 2);
        let (x, y) = find_close_block_pair(&c).unwrap();
        prop_assert!(x.side != y.side && x.end < y.start);
        let smaller = x.len().min(y.len());
        for b in blocks(&c) {
            if b.start > x.end && b.end < y.start {
                prop_assert!(b.len() < smaller);
            }
        }
    }

    #[test]
    fn block_count_bounded_by_rank(c in cut_strategy(81)) {
        let g = extract_graph(&generate_gk(4).unwrap());
        prop_assert!(blocks(&c).len() <= 4 * cut_rank(&g, &c) + 1);
    }

    #[test]
    fn lower_bound_is_certified(c in cut_strategy(27)) {
        prop_assume!(blocks(&c).len() >= 2);
        let g = extract_graph(&generate_gk(3).unwrap());
        let w = cut_rank_lower_bound(3, &c).unwrap();
        let full = gf2_rank(&biadjacency(&g, &c));
        prop_assert!(w.bound <= full);
        prop_assert_eq!(w.bound, gf2_rank(&w.matrix(3)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn twin_width_certificates(n in 1usize..=8, bits in prop::collection::vec(any::<bool>(), 28)) {
        let mut g = OrderedGraph::empty(n);
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits[i] {
                    g.add_edge(u, v);
                }
                i += 1;
            }
        }
        let exact = exact_twin_width(&g).unwrap();
        let greedy = greedy_twin_width(&g);
        prop_assert_eq!(verify_sequence(&g, &exact.sequence).unwrap(), exact.width);
        prop_assert_eq!(verify_sequence(&g, &greedy.sequence).unwrap(), greedy.width);
        prop_assert!(greedy.width >= exact.width);
    }
}
