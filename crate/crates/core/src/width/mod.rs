//! Width parameters: GF(2) cut rank, rank-width, clique-width expressions,
//! and the nested-dome lower bound for `G_k`.

pub mod clique_width;
pub mod cut;
pub mod gf2;
pub mod lower_bound;
pub mod rank_width;

pub use clique_width::{eval_clique_width_script, CliqueWidthScript, CwEval, CwOp};
pub use cut::{
    biadjacency, blocks, cut_rank, find_close_block_pair, min_balanced_cut_rank, sampled_min_balanced_cut_rank,
    Block, Cut,
};
pub use gf2::{gf2_rank, is_arrow, Gf2Matrix};
pub use lower_bound::{cut_rank_lower_bound, LowerBoundWitness};
pub use rank_width::{
    balanced_cut_walk, balanced_cut_walk_from, exact_rank_width, for_each_ternary_tree, ClusterTree, RankWidth,
    WalkResult,
};
