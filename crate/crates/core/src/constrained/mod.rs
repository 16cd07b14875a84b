//! Flow forced through a middlepoint `w` or through any node of a set.
//!
//! Directed networks are handled exactly by path LPs over enumerated
//! families, with a greedy augmenting heuristic and a minimum edge cut as
//! lower and upper bounds. Undirected networks also have a polynomial arc-LP
//! construction.

mod augment;
mod cut;
mod exact;
mod transform;

pub use augment::{augmenting_w_flow, AugmentOrder, AugmentResult, AUGMENT_CANDIDATE_CAP};
pub use cut::{min_swt_edge_cut, verify_cut, EdgeCut, EXACT_CUT_EDGE_LIMIT};
pub use exact::{max_set_flow, max_w_flow_exact, max_w_flow_simple_exact, max_w_flow_undirected_norepeat};
pub use transform::{fix_paths, max_w_flow_undirected, ArcOrigin, TransformedNetwork, UndirectedWFlow};

pub(crate) use exact::complete_families;
