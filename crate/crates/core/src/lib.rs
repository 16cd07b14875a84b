//! Node-constrained traffic engineering.
//!
//! Exact (rational) path-based LPs for classic multi-commodity TE, flows
//! forced through a middlepoint or a set of middlepoints, segment routing
//! over ECMP shortest paths, and flow-based centrality measures. Brute-force
//! routines double as oracles for the polynomial constructions.
//!
//! ```
//! use ncte::constrained::{max_w_flow_exact, max_w_flow_simple_exact};
//! use ncte::paths::DEFAULT_PATH_CAP;
//! use ncte::rational::int;
//! use ncte::{Demand, FlowNetwork, Orientation};
//!
//! // The only way through w is the walk s -> w -> s -> t.
//! let net = FlowNetwork::builder(Orientation::Directed)
//!     .edge("s", "w", int(1))
//!     .edge("w", "s", int(1))
//!     .edge("s", "t", int(1))
//!     .commodity("s", "t", Demand::Infinite)
//!     .build()?;
//! let w = net.node("w")?;
//! assert_eq!(max_w_flow_exact(&net, w, DEFAULT_PATH_CAP)?.objective, int(1));
//! assert_eq!(max_w_flow_simple_exact(&net, w, DEFAULT_PATH_CAP)?.objective, int(0));
//! # Ok::<(), ncte::Error>(())
//! ```

pub mod error;
pub mod catalog;
pub mod centrality;
pub mod constrained;
pub mod instance;
pub mod lp;
pub mod maxflow;
pub mod network;
pub mod paths;
pub mod random;
pub mod rational;
pub mod reductions;
pub mod sr;
pub mod te;
pub mod walk;

pub use error::{Error, Result};
pub use network::{Commodity, Demand, EdgeId, FlowNetwork, NodeId, Orientation};
pub use rational::Rational;
