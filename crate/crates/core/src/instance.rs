//! JSON instance files.
//!
//! Rationals are written as JSON integers or `"p/q"` strings; floats are
//! rejected. Demands additionally accept `"inf"`. Unknown keys are errors.

use std::fmt;

use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::network::{Demand, FlowNetwork, NodeId, Orientation};
use crate::rational::{self, Rational};

/// A rational that serializes exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.is_integer().then(|| self.0.numer().to_i64()).flatten() {
            Some(n) => ser.serialize_i64(n),
            None => ser.serialize_str(&rational::format(&self.0)),
        }
    }
}

struct ExactVisitor {
    allow_inf: bool,
}

enum Parsed {
    Value(Rational),
    Inf,
}

impl Visitor<'_> for ExactVisitor {
    type Value = Parsed;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.allow_inf {
            f.write_str("an integer, a \"p/q\" string or \"inf\"")
        } else {
            f.write_str("an integer or a \"p/q\" string")
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Parsed, E> {
        Ok(Parsed::Value(rational::int(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Parsed, E> {
        Ok(Parsed::Value(Rational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Parsed, E> {
        Err(E::custom(format!("float {v} is not exact; write an integer or \"p/q\"")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Parsed, E> {
        if self.allow_inf && v == "inf" {
            return Ok(Parsed::Inf);
        }
        rational::parse(v).map(Parsed::Value).ok_or_else(|| E::invalid_value(de::Unexpected::Str(v), &self))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        match de.deserialize_any(ExactVisitor { allow_inf: false })? {
            Parsed::Value(r) => Ok(Exact(r)),
            Parsed::Inf => unreachable!(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandText(pub Demand);

impl Serialize for DemandText {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.0 {
            Demand::Infinite => ser.serialize_str("inf"),
            Demand::Finite(d) => Exact(d.clone()).serialize(ser),
        }
    }
}

impl<'de> Deserialize<'de> for DemandText {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        Ok(DemandText(match de.deserialize_any(ExactVisitor { allow_inf: true })? {
            Parsed::Value(r) => Demand::Finite(r),
            Parsed::Inf => Demand::Infinite,
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationText {
    Directed,
    Undirected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub tail: String,
    pub head: String,
    pub capacity: Exact,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommodityRecord {
    pub src: String,
    pub dst: String,
    pub demand: DemandText,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_demand: Option<Exact>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignatedRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    /// Middlepoint set for set flow.
    #[serde(rename = "W", default, skip_serializing_if = "Vec::is_empty")]
    pub set: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub group: Vec<String>,
    /// Group size budget.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl DesignatedRecord {
    fn is_empty(&self) -> bool {
        *self == DesignatedRecord::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub orientation: OrientationText,
    #[serde(default)]
    pub nodes: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub commodities: Vec<CommodityRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub middlepoints: Vec<String>,
    #[serde(default, skip_serializing_if = "DesignatedRecord::is_empty")]
    pub designated: DesignatedRecord,
}

/// Designations resolved to node ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Designations {
    pub w: Option<NodeId>,
    pub set: Vec<NodeId>,
    pub group: Vec<NodeId>,
    pub n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub network: FlowNetwork,
    pub middlepoints: Vec<NodeId>,
    pub designated: Designations,
}

impl Instance {
    pub fn new(network: FlowNetwork) -> Self {
        Instance { network, middlepoints: Vec::new(), designated: Designations::default() }
    }

    pub fn parse(text: &str) -> Result<Instance> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })?;
        file.resolve()
    }

    pub fn to_file(&self) -> InstanceFile {
        let net = &self.network;
        let name = |n: &NodeId| net.name(*n).to_string();
        let names = |ns: &[NodeId]| ns.iter().map(name).collect::<Vec<_>>();
        InstanceFile {
            orientation: match net.orientation() {
                Orientation::Directed => OrientationText::Directed,
                Orientation::Undirected => OrientationText::Undirected,
            },
            nodes: net.names().to_vec(),
            edges: net
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    tail: name(&e.tail),
                    head: name(&e.head),
                    capacity: Exact(e.capacity.clone()),
                    length: (e.length != 1).then_some(e.length),
                })
                .collect(),
            commodities: net
                .commodities()
                .iter()
                .map(|c| CommodityRecord {
                    src: name(&c.source),
                    dst: name(&c.sink),
                    demand: DemandText(c.max_demand.clone()),
                    min_demand: c.min_demand.clone().map(Exact),
                })
                .collect(),
            middlepoints: names(&self.middlepoints),
            designated: DesignatedRecord {
                w: self.designated.w.as_ref().map(name),
                set: names(&self.designated.set),
                group: names(&self.designated.group),
                n: self.designated.n,
            },
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_file()).expect("instance serializes");
        text.push('\n');
        text
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

impl InstanceFile {
    pub fn resolve(&self) -> Result<Instance> {
        let orientation = match self.orientation {
            OrientationText::Directed => Orientation::Directed,
            OrientationText::Undirected => Orientation::Undirected,
        };
        let mut b = FlowNetwork::builder(orientation);
        for name in &self.nodes {
            b = b.unique_node(name);
        }
        let known = |name: &str, location: String| {
            if self.nodes.iter().any(|n| n == name) {
                Ok(())
            } else {
                Err(Error::InvalidInstance { location, message: format!("node `{name}` is not listed in `nodes`") })
            }
        };
        for (i, e) in self.edges.iter().enumerate() {
            known(&e.tail, format!("edges[{i}].tail"))?;
            known(&e.head, format!("edges[{i}].head"))?;
            if e.length == Some(0) {
                return Err(Error::NonPositiveLength(i));
            }
            b = b.edge_with_length(&e.tail, &e.head, e.capacity.0.clone(), e.length.unwrap_or(1));
        }
        for (i, c) in self.commodities.iter().enumerate() {
            known(&c.src, format!("commodities[{i}].src"))?;
            known(&c.dst, format!("commodities[{i}].dst"))?;
            b = b.commodity_with_min(&c.src, &c.dst, c.demand.0.clone(), c.min_demand.clone().map(|m| m.0));
        }
        let network = b.build()?;
        let lookup = |name: &str, location: String| -> Result<NodeId> {
            known(name, location)?;
            network.node(name)
        };
        let many = |names: &[String], key: &str| -> Result<Vec<NodeId>> {
            names.iter().enumerate().map(|(i, n)| lookup(n, format!("{key}[{i}]"))).collect()
        };
        let d = &self.designated;
        let designated = Designations {
            w: d.w.as_deref().map(|w| lookup(w, "designated.w".into())).transpose()?,
            set: many(&d.set, "designated.W")?,
            group: many(&d.group, "designated.group")?,
            n: d.n,
        };
        let middlepoints = many(&self.middlepoints, "middlepoints")?;
        Ok(Instance { network, middlepoints, designated })
    }
}
