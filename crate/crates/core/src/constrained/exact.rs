use crate::error::{Error, Result};
use crate::network::{FlowNetwork, NodeId, Orientation};
use crate::paths::{all_families, EdgeReuse, EnumOptions, PathConstraint, PathFamily};
use crate::te::{solve_te_mf, FlowSolution};

pub(crate) fn complete_families(
    net: &FlowNetwork,
    constraint: &PathConstraint,
    options: EnumOptions,
) -> Result<Vec<PathFamily>> {
    let families = all_families(net, constraint, options)?;
    if let Some(f) = families.iter().find(|f| f.truncated) {
        return Err(Error::CapExceeded { commodity: f.commodity, cap: options.cap });
    }
    Ok(families)
}

fn check_node(net: &FlowNetwork, w: NodeId) -> Result<()> {
    if w.0 < net.node_count() {
        Ok(())
    } else {
        Err(Error::UnknownNode(format!("#{}", w.0)))
    }
}

/// Maximum w-flow over all edge-distinct paths through `w`.
///
/// Works for both orientations; for undirected networks this is the
/// brute-force counterpart of [`super::max_w_flow_undirected`]. A commodity
/// with `w` as an endpoint simply keeps its whole path family, so its
/// contribution equals its unconstrained maximum.
pub fn max_w_flow_exact(net: &FlowNetwork, w: NodeId, cap: usize) -> Result<FlowSolution> {
    check_node(net, w)?;
    let families = complete_families(net, &PathConstraint::Through(w), EnumOptions::with_cap(cap))?;
    solve_te_mf(net, &families)
}

/// Same as [`max_w_flow_exact`] but only simple paths are allowed.
pub fn max_w_flow_simple_exact(net: &FlowNetwork, w: NodeId, cap: usize) -> Result<FlowSolution> {
    check_node(net, w)?;
    let families = complete_families(net, &PathConstraint::SimpleThrough(w), EnumOptions::with_cap(cap))?;
    solve_te_mf(net, &families)
}

/// Maximum flow over paths visiting at least one node of `set`. The empty
/// set admits no path and yields zero.
pub fn max_set_flow(net: &FlowNetwork, set: &[NodeId], cap: usize) -> Result<FlowSolution> {
    for &w in set {
        check_node(net, w)?;
    }
    if set.is_empty() {
        return Ok(FlowSolution::empty(net.commodities().len()));
    }
    let families = complete_families(net, &PathConstraint::ThroughAny(set.to_vec()), EnumOptions::with_cap(cap))?;
    solve_te_mf(net, &families)
}

/// Undirected w-flow where a path may not use an edge twice, not even in
/// opposite directions. Brute force over the enumerated family.
pub fn max_w_flow_undirected_norepeat(net: &FlowNetwork, w: NodeId, cap: usize) -> Result<FlowSolution> {
    if net.orientation() != Orientation::Undirected {
        return Err(Error::WrongOrientation("undirected"));
    }
    check_node(net, w)?;
    let options = EnumOptions { cap, reuse: EdgeReuse::Never };
    let families = complete_families(net, &PathConstraint::Through(w), options)?;
    solve_te_mf(net, &families)
}
