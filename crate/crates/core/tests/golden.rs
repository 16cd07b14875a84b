//! Headline values of the builtin instances.

use ncte::catalog::{self, BUILTINS};
use ncte::centrality::{flow_centrality_multi, group_flow, n_group_max_flow, CentralityOptions, NGroupMethod};
use ncte::constrained::{max_w_flow_exact, max_w_flow_simple_exact, max_w_flow_undirected};
use ncte::instance::Instance;
use ncte::network::{FlowNetwork, NodeId};
use ncte::paths::{all_families, EnumOptions, PathConstraint, DEFAULT_PATH_CAP};
use ncte::rational::{int, ratio};
use ncte::sr::{build_tunnels, solve_sr_lu, MiddlepointConfig};
use ncte::te::{solve_te_lu, solve_te_mf};

fn ids(net: &FlowNetwork, names: &[&str]) -> Vec<NodeId> {
    names.iter().map(|n| net.node(n).unwrap()).collect()
}

#[test]
fn every_builtin_round_trips() {
    for b in BUILTINS {
        let inst = catalog::builtin(b.name).unwrap();
        assert_eq!(Instance::parse(&inst.to_json()).unwrap(), inst, "{}", b.name);
    }
}

#[test]
fn listing_mentions_the_key_features() {
    assert!(catalog::find("fig8").unwrap().description.contains("non-submodularity counterexample"));
    assert!(catalog::find("cycle-3").unwrap().description.contains("shared edge u1→u2"));
}

#[test]
fn figadd_values() {
    let inst = catalog::builtin("figadd").unwrap();
    let w = inst.designated.w.unwrap();
    assert_eq!(max_w_flow_exact(&inst.network, w, DEFAULT_PATH_CAP).unwrap().objective, int(1));
    assert_eq!(max_w_flow_simple_exact(&inst.network, w, DEFAULT_PATH_CAP).unwrap().objective, int(0));
}

#[test]
fn chain_value_is_one_half() {
    let inst = catalog::builtin("wst-undirected").unwrap();
    assert_eq!(max_w_flow_undirected(&inst.network, inst.designated.w.unwrap()).unwrap().value, ratio(1, 2));
}

#[test]
fn fig8_values() {
    let net = catalog::builtin("fig8").unwrap().network;
    let opts = CentralityOptions::default();
    let gf = |names: &[&str]| group_flow(&net, &ids(&net, names), &opts).unwrap().value;
    assert_eq!(gf(&["s1"]), int(2));
    assert_eq!(gf(&["s1", "s2"]), int(2));
    assert_eq!(gf(&["s1", "s3"]), int(2));
    assert_eq!(gf(&["s1", "s2", "s3"]), int(3));

    let fams = all_families(&net, &PathConstraint::Unconstrained, EnumOptions::default()).unwrap();
    assert_eq!(solve_te_mf(&net, &fams).unwrap().objective, int(3));
    // Routing demands (2, 1, 1) puts 3 units on the capacity-2 edge v1->v2.
    assert_eq!(solve_te_lu(&net, &fams).unwrap().objective, ratio(3, 2));

    let s3 = net.node("s3").unwrap();
    assert_eq!(flow_centrality_multi(&net, s3, &opts).unwrap().ratio, Some(ratio(1, 3)));
}

#[test]
fn fig8_single_best_node_is_the_shared_hub() {
    let net = catalog::builtin("fig8").unwrap().network;
    let r = n_group_max_flow(&net, 1, NGroupMethod::Brute, &CentralityOptions::default()).unwrap();
    assert_eq!(r.group, ids(&net, &["v2"]));
    assert_eq!(r.value, int(3));
}

#[test]
fn greedy_trap_values() {
    let net = catalog::builtin("greedy-trap").unwrap().network;
    let opts = CentralityOptions::default();
    assert_eq!(n_group_max_flow(&net, 2, NGroupMethod::Brute, &opts).unwrap().value, int(4));
    let greedy = n_group_max_flow(&net, 2, NGroupMethod::Greedy, &opts).unwrap();
    assert_eq!(greedy.value, int(3));
    assert_eq!(greedy.trajectory[0].0, net.node("v1").unwrap());
}

#[test]
fn cycle_utilization() {
    let inst = catalog::builtin("cycle-3").unwrap();
    let plan = build_tunnels(&inst.network, &MiddlepointConfig::all(inst.middlepoints.clone())).unwrap();
    assert_eq!(solve_sr_lu(&inst.network, &plan).unwrap().objective, int(2));
}
