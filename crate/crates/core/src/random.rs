//! Seeded random instances for property tests and probes.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::network::{Demand, FlowNetwork, Orientation};
use crate::rational::int;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DemandSpec {
    Infinite,
    /// Integer demands drawn uniformly from the range.
    Finite { min: i64, max: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomConfig {
    pub orientation: Orientation,
    pub nodes: usize,
    /// Upper bound; fewer edges are produced when the graph is saturated.
    pub edges: usize,
    pub commodities: usize,
    pub min_capacity: i64,
    pub max_capacity: i64,
    pub demand: DemandSpec,
}

impl RandomConfig {
    pub fn small(orientation: Orientation) -> Self {
        RandomConfig {
            orientation,
            nodes: 6,
            edges: 8,
            commodities: 2,
            min_capacity: 1,
            max_capacity: 4,
            demand: DemandSpec::Infinite,
        }
    }
}

/// Nodes `n0, n1, ...`, distinct node pairs for edges (no parallel edges) and
/// distinct ordered pairs for commodities.
pub fn random_network<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomConfig) -> Result<FlowNetwork> {
    if cfg.nodes < 2 {
        return Err(Error::InvalidConfig("random networks need at least two nodes".into()));
    }
    if cfg.min_capacity < 0 || cfg.min_capacity > cfg.max_capacity {
        return Err(Error::InvalidConfig("bad capacity range".into()));
    }
    let name = |i: usize| format!("n{i}");
    let mut pairs = Vec::new();
    for a in 0..cfg.nodes {
        for b in 0..cfg.nodes {
            let keep = match cfg.orientation {
                Orientation::Directed => a != b,
                Orientation::Undirected => a < b,
            };
            if keep {
                pairs.push((a, b));
            }
        }
    }
    pairs.shuffle(rng);
    pairs.truncate(cfg.edges);

    let mut b = FlowNetwork::builder(cfg.orientation);
    for i in 0..cfg.nodes {
        b = b.node(&name(i));
    }
    for &(x, y) in &pairs {
        b = b.edge(&name(x), &name(y), int(rng.gen_range(cfg.min_capacity..=cfg.max_capacity)));
    }
    let mut ends: Vec<(usize, usize)> =
        (0..cfg.nodes).flat_map(|a| (0..cfg.nodes).filter(move |&c| c != a).map(move |c| (a, c))).collect();
    ends.shuffle(rng);
    for &(s, t) in ends.iter().take(cfg.commodities) {
        let demand = match cfg.demand {
            DemandSpec::Infinite => Demand::Infinite,
            DemandSpec::Finite { min, max } => Demand::Finite(int(rng.gen_range(min..=max))),
        };
        b = b.commodity(&name(s), &name(t), demand);
    }
    b.build()
}

/// A coverage instance: `items`, sets of item indices and a budget `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageInstance {
    pub items: usize,
    pub sets: Vec<Vec<usize>>,
    pub budget: usize,
}

/// Between one and `max_items` items and `max_sets` sets, each item joining
/// each set with probability one half.
pub fn random_coverage<R: Rng + ?Sized>(rng: &mut R, max_items: usize, max_sets: usize) -> CoverageInstance {
    let items = rng.gen_range(1..=max_items.max(1));
    let count = rng.gen_range(1..=max_sets.max(1));
    let sets = (0..count).map(|_| (0..items).filter(|_| rng.gen_bool(0.5)).collect()).collect();
    CoverageInstance { items, sets, budget: rng.gen_range(1..=count) }
}
