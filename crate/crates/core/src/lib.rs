//! Combinatorial toolkit for strict outerconfluent drawings and the width
//! parameters of the graphs they represent.

pub mod census;
pub mod curves;
pub mod drawing;
pub mod error;
pub mod gk;
pub mod graph;
pub mod induced;
pub mod planar;
pub mod socd;
pub mod twinwidth;
pub mod width;

pub use census::{heredity_spot_check, ordered_canon, run_census, CensusReport};
pub use curves::{check_strict, curve_count, extract_graph, smooth_pairs, CurveCount, StrictnessReport};
pub use drawing::{canonical_form, validate, Attachment, Drawing, End, Track, TrackEnd, ValidationReport, Violation};
pub use error::{Error, Result};
pub use gk::{generate_gk, gk_adjacent, gk_edge_count, nested_domes, Dome};
pub use graph::OrderedGraph;
pub use induced::induced_subdrawing;
pub use planar::{deplanify, planify, Planification, PlaneGraph};
pub use socd::{parse_drawing, serialize_drawing};
pub use twinwidth::{exact_twin_width, greedy_twin_width, verify_sequence, ContractionState};
