//! Polynomial packing machinery for claw-free graphs: ear assemblies,
//! claw-free frames, chain packing, end-chain reduction, and constructive
//! Λ-factor results.

mod chain;
mod delta;
mod ears;
mod frame;
mod reduction;
mod theorems;

pub use chain::{pack_2connected_clawfree, pack_chain};
pub use ears::{is_frame, procedure_e, EarAssembly, EAR_SEARCH_CAP};
pub use frame::{clawfree_frame, is_clawfree_frame, ClawFreeFrame};
pub use reduction::{
    pack_clawfree, pack_clawfree_with, pack_components, reduce, trim_end_chain, CactusMode, PackOutcome,
    ReductionTrace, ResidualKind, Trimmed,
};
pub use theorems::{
    claws, factor_avoiding_edge, factor_containing_edge, factor_containing_path, factor_minus_adjacent_pair,
    factor_minus_claw, factor_minus_edge_pair, factor_minus_path_through_edge, factor_minus_vertex,
    factor_minus_vertex_and_edge, factor_plus_pk, PathPlusFactors,
};
pub use delta::{
    contains_path, delta_factor_through_path, delta_factor_through_path_with_triangle, delta_preimage,
    delta_three_edge_test, delta_two_edge_factor, is_delta_graph, DeltaPreimage, ThreeEdgeClass, ThreeEdgeVerdict,
};
