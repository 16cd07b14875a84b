use ncte::centrality::CentralityOptions;
use ncte::instance::Instance;
use ncte::network::{FlowNetwork, NodeId, Orientation};
use ncte::rational::int;
use ncte::reductions::verify::{self, Equivalence};
use ncte::reductions::{gadget_kdsp, gadget_node_split};
use ncte::sr::{build_tunnels, solve_sr_mf, MiddlepointConfig, DEFAULT_COMBINATION_CAP};

const CAP: usize = 100_000;

fn graph(edges: &[(&str, &str)]) -> FlowNetwork {
    edges.iter().fold(FlowNetwork::builder(Orientation::Directed), |b, (t, h)| b.edge(t, h, int(1))).build().unwrap()
}

fn ids(net: &FlowNetwork, names: &[&str]) -> Vec<NodeId> {
    names.iter().map(|n| net.node(n).unwrap()).collect()
}

const BOTH: Equivalence = Equivalence { source: true, gadget: true };
const NEITHER: Equivalence = Equivalence { source: false, gadget: false };

#[test]
fn planted_disjoint_pair() {
    let g = graph(&[("u1", "a"), ("a", "u2"), ("v1", "b"), ("b", "v2"), ("a", "b")]);
    let v = ids(&g, &["u1", "u2", "v1", "v2"]);
    assert_eq!(verify::check_2dp(&g, v[0], v[1], v[2], v[3], CAP).unwrap(), BOTH);
}

#[test]
fn mandatory_cut_vertex() {
    let g = graph(&[("u1", "c"), ("c", "u2"), ("v1", "c"), ("c", "v2")]);
    let v = ids(&g, &["u1", "u2", "v1", "v2"]);
    assert_eq!(verify::check_2dp(&g, v[0], v[1], v[2], v[3], CAP).unwrap(), NEITHER);
}

#[test]
fn unreachable_first_pair() {
    let g = graph(&[("u2", "u1"), ("v1", "v2")]);
    let v = ids(&g, &["u1", "u2", "v1", "v2"]);
    assert_eq!(verify::check_2dp(&g, v[0], v[1], v[2], v[3], CAP).unwrap(), NEITHER);
}

#[test]
fn node_split_shape_and_equivalence() {
    let g = graph(&[("s", "a"), ("a", "w"), ("w", "b"), ("b", "t"), ("a", "t")]);
    let split = gadget_node_split(&g).unwrap();
    assert_eq!(split.network.node_count(), 2 * g.node_count());
    assert_eq!(split.origin["w_in"], "w");
    let v = ids(&g, &["s", "w", "t"]);
    assert_eq!(verify::check_node_split(&g, v[0], v[1], v[2], CAP).unwrap(), BOTH);
}

#[test]
fn unit_flow_both_directions() {
    let yes = graph(&[("s", "w"), ("w", "t")]);
    let v = ids(&yes, &["s", "t", "w"]);
    assert_eq!(verify::check_prop1(&yes, v[0], v[1], v[2], CAP).unwrap(), BOTH);
    let no = graph(&[("s", "t"), ("t", "w")]);
    let v = ids(&no, &["s", "t", "w"]);
    assert_eq!(verify::check_prop1(&no, v[0], v[1], v[2], CAP).unwrap(), NEITHER);
}

#[test]
fn coverage_examples() {
    let opts = CentralityOptions::default();
    let one_set = verify::check_mcp(2, &[vec![0, 1]], 1, &opts).unwrap();
    assert_eq!((one_set.source.clone(), one_set.gadget.clone()), (int(2), int(2)));
    let singletons = verify::check_mcp(3, &[vec![0], vec![1], vec![2]], 1, &opts).unwrap();
    assert_eq!((singletons.source.clone(), singletons.gadget.clone()), (int(1), int(1)));
    let overlapping = verify::check_mcp(3, &[vec![0, 1], vec![1, 2], vec![0, 2]], 2, &opts).unwrap();
    assert!(overlapping.holds());
    assert_eq!(overlapping.source, int(3));
}

#[test]
fn planted_disjoint_shortest_paths_carry_a_unit() {
    let g = graph(&[("u1", "a"), ("a", "v1"), ("u2", "b"), ("b", "v2")]);
    let p = ids(&g, &["u1", "v1", "u2", "v2"]);
    let pairs = [(p[0], p[1]), (p[2], p[3])];
    assert_eq!(verify::check_kdsp(&g, &pairs, DEFAULT_COMBINATION_CAP).unwrap(), BOTH);
    let gad = gadget_kdsp(&g, &pairs).unwrap();
    let plan = build_tunnels(&gad.network, &MiddlepointConfig::all(gad.designated.middlepoints.clone())).unwrap();
    assert_eq!(solve_sr_mf(&gad.network, &plan).unwrap().objective, int(1));
}

#[test]
fn forced_overlap_is_infeasible() {
    let g = graph(&[("u1", "x"), ("x", "v1"), ("u2", "x"), ("x", "v2")]);
    let p = ids(&g, &["u1", "v1", "u2", "v2"]);
    assert_eq!(verify::check_kdsp(&g, &[(p[0], p[1]), (p[2], p[3])], DEFAULT_COMBINATION_CAP).unwrap(), NEITHER);
}

#[test]
fn single_pair_needs_only_a_path() {
    let g = graph(&[("u1", "a"), ("a", "v1")]);
    let p = ids(&g, &["u1", "v1"]);
    let gad = gadget_kdsp(&g, &[(p[0], p[1])]).unwrap();
    assert!(gad.designated.middlepoints.is_empty());
    assert_eq!(verify::check_kdsp(&g, &[(p[0], p[1])], DEFAULT_COMBINATION_CAP).unwrap(), BOTH);
    assert_eq!(verify::check_kdsp(&g, &[(p[1], p[0])], DEFAULT_COMBINATION_CAP).unwrap(), NEITHER);
}

#[test]
fn gadgets_survive_serialization() {
    let g = graph(&[("u1", "a"), ("a", "v1"), ("u2", "b"), ("b", "v2")]);
    let p = ids(&g, &["u1", "v1", "u2", "v2"]);
    let inst = gadget_kdsp(&g, &[(p[0], p[1]), (p[2], p[3])]).unwrap().to_instance();
    assert_eq!(Instance::parse(&inst.to_json()).unwrap(), inst);
}
