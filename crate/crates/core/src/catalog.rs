//! Small named instances with known answers.
//!
//! Edges marked unbounded get the network's infinite surrogate: one more
//! than the sum of the bounded capacities, which no feasible flow reaches.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::network::{Demand, FlowNetwork, Orientation};
use crate::rational::{int, Rational};
use crate::reductions::gadget_mcp;

pub struct Builtin {
    pub name: &'static str,
    pub description: &'static str,
    /// Expected headline value, as text.
    pub headline: &'static str,
    /// Node sequence an adversarial augmenting run tries first.
    pub first_pick: Option<&'static [&'static str]>,
}

pub const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "figadd",
        description: "w-flow needs the walk s->w->s->t; no simple path visits w",
        headline: "w-flow 1, simple w-flow 0",
        first_pick: None,
    },
    Builtin {
        name: "remarks",
        description: "augmenting s-w-t paths stall at 2 and the minimum s-w-t cut is 4",
        headline: "w-flow 3, cut 4, augmenting 2",
        first_pick: Some(&["s", "w", "t"]),
    },
    Builtin {
        name: "remarks-unit",
        description: "remarks graph with the capacity-2 edges set to 1",
        headline: "w-flow 3/2",
        first_pick: None,
    },
    Builtin {
        name: "wst-undirected",
        description: "undirected chain w-s-t; w-flow goes s->w->s->t",
        headline: "w-flow 1/2",
        first_pick: None,
    },
    Builtin {
        name: "augmenting-undirected",
        description: "greedy augmenting stalls below the best no-repeat w-flow",
        headline: "no-repeat w-flow 3, augmenting 2",
        first_pick: Some(&["s", "v", "w", "x", "t"]),
    },
    Builtin {
        name: "cycle-3",
        description: "segments s->w and w->t both cross the shared edge u1→u2",
        headline: "sr-lu through w 2, acyclic path infeasible",
        first_pick: None,
    },
    Builtin {
        name: "fig8",
        description: "group flow non-submodularity counterexample, margins (0, 1) for s3",
        headline: "GF{s1}=2, GF{s1,s2}=2, GF{s1,s3}=2, GF{s1,s2,s3}=3",
        first_pick: None,
    },
    Builtin {
        name: "fig8-undirected",
        description: "fig8 with undirected edges, same margins",
        headline: "GF{s1,s2,s3}=3",
        first_pick: None,
    },
    Builtin {
        name: "greedy-trap",
        description: "coverage instance where greedy group selection is beaten",
        headline: "ngroup N=2: brute 4, greedy 3",
        first_pick: None,
    },
];

pub fn find(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name)
}

/// Builds a builtin by name. `cycle-N` works for any `N >= 2`.
pub fn builtin(name: &str) -> Result<Instance> {
    match name {
        "figadd" => figadd(),
        "remarks" => remarks(int(2)),
        "remarks-unit" => remarks(int(1)),
        "wst-undirected" => wst_undirected(),
        "augmenting-undirected" => augmenting_undirected(),
        "fig8" => fig8(Orientation::Directed),
        "fig8-undirected" => fig8(Orientation::Undirected),
        "greedy-trap" => greedy_trap(),
        _ => match name.strip_prefix("cycle-").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n >= 2 => cycle(n),
            _ => Err(Error::UnknownInstance(name.to_string())),
        },
    }
}

/// Edge list where `None` marks an unbounded edge.
fn with_surrogate(
    orientation: Orientation,
    edges: &[(&str, &str, Option<Rational>)],
    commodities: &[(&str, &str, Demand)],
) -> Result<FlowNetwork> {
    let bounded: Rational = edges.iter().filter_map(|e| e.2.clone()).sum();
    let inf = bounded + int(1);
    let mut b = FlowNetwork::builder(orientation);
    for (t, h, c) in edges {
        b = b.edge(t, h, c.clone().unwrap_or_else(|| inf.clone()));
    }
    for (s, t, d) in commodities {
        b = b.commodity(s, t, d.clone());
    }
    b.build()
}

fn with_w(net: FlowNetwork) -> Result<Instance> {
    let w = net.node("w")?;
    let mut inst = Instance::new(net);
    inst.designated.w = Some(w);
    Ok(inst)
}

fn figadd() -> Result<Instance> {
    let one = Some(int(1));
    let net = with_surrogate(
        Orientation::Directed,
        &[("s", "w", one.clone()), ("w", "s", one.clone()), ("s", "t", one)],
        &[("s", "t", Demand::Finite(int(1)))],
    )?;
    with_w(net)
}

fn remarks(cap: Rational) -> Result<Instance> {
    let c = Some(cap);
    let net = with_surrogate(
        Orientation::Directed,
        &[
            ("s", "w", c.clone()),
            ("w", "t", c.clone()),
            ("s", "u", None),
            ("u", "v", c),
            ("v", "w", None),
            ("w", "u", None),
            ("v", "t", None),
        ],
        &[("s", "t", Demand::Infinite)],
    )?;
    with_w(net)
}

fn wst_undirected() -> Result<Instance> {
    let net = with_surrogate(
        Orientation::Undirected,
        &[("w", "s", Some(int(1))), ("s", "t", Some(int(1)))],
        &[("s", "t", Demand::Infinite)],
    )?;
    with_w(net)
}

fn augmenting_undirected() -> Result<Instance> {
    let two = Some(int(2));
    let net = with_surrogate(
        Orientation::Undirected,
        &[
            ("s", "v", None),
            ("v", "w", two.clone()),
            ("w", "x", two.clone()),
            ("x", "t", None),
            ("s", "u", None),
            ("u", "v", None),
            ("w", "t", two),
            ("s", "x", None),
        ],
        &[("s", "t", Demand::Infinite)],
    )?;
    with_w(net)
}

/// `s -> u1 -> ... -> un -> w -> u1`, exit `u2 -> t`; unit capacities, demand 1.
fn cycle(n: usize) -> Result<Instance> {
    let u = |k: usize| format!("u{k}");
    let mut b = FlowNetwork::builder(Orientation::Directed).edge("s", &u(1), int(1));
    for k in 1..n {
        b = b.edge(&u(k), &u(k + 1), int(1));
    }
    let net = b
        .edge(&u(n), "w", int(1))
        .edge("w", &u(1), int(1))
        .edge(&u(2), "t", int(1))
        .commodity("s", "t", Demand::Finite(int(1)))
        .build()?;
    let w = net.node("w")?;
    let mut inst = with_w(net)?;
    inst.middlepoints = vec![w];
    Ok(inst)
}

fn fig8(orientation: Orientation) -> Result<Instance> {
    let two = Some(int(2));
    let net = with_surrogate(
        orientation,
        &[
            ("s1", "v1", None),
            ("v1", "v2", two.clone()),
            ("v2", "v3", two),
            ("v3", "t1", None),
            ("s2", "v1", None),
            ("v2", "t2", None),
            ("s3", "v2", None),
            ("v3", "t3", None),
        ],
        &[
            ("s1", "t1", Demand::Finite(int(2))),
            ("s2", "t2", Demand::Finite(int(1))),
            ("s3", "t3", Demand::Finite(int(1))),
        ],
    )?;
    let group = ["s1", "s2", "s3"].iter().map(|n| net.node(n)).collect::<Result<Vec<_>>>()?;
    let mut inst = Instance::new(net);
    inst.designated.group = group;
    inst.designated.n = Some(1);
    Ok(inst)
}

/// Sets {1,2}, {0,1}, {2,3}: greedy takes the first (tie, lowest id) and
/// then covers 3 items; the last two together cover all 4.
fn greedy_trap() -> Result<Instance> {
    let gad = gadget_mcp(4, &[vec![1, 2], vec![0, 1], vec![2, 3]], 2)?;
    let mut inst = Instance::new(gad.network);
    inst.designated.n = Some(2);
    Ok(inst)
}
