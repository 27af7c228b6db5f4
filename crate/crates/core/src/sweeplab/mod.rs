//! Batch front-end: experiment configs, parameter sweeps over equilibrium
//! regions, boundary search and CSV output.
//!
//! # Config format
//!
//! Instances are TOML documents with the fixed cost `K` and capacity `Q` at the
//! top level and one `[[product]]` table per product:
//!
//! ```toml
//! K = 10.0
//! Q = 8.0
//!
//! [[product]]
//! r = 10.0
//! c_m = 5.0
//! c_p = 1.0
//!
//! [product.demand]
//! kind = "uniform"
//! upper = 10.0
//!
//! [[product]]
//! r = 20.0
//! c_m = 10.0
//! c_p = 5.0
//!
//! [product.demand]
//! kind = "tabulated"
//! knots = [[0.0, 0.0], [7.5, 0.4], [15.0, 1.0]]
//! ```
//!
//! # Parameter paths
//!
//! Sweeps and boundary searches address numeric fields by path: `K`, `Q`,
//! `products[i].r`, `products[i].c_m`, `products[i].c_p` and
//! `products[i].demand.upper` (uniform demand only), with zero-based `i`.
//! Several comma-separated targets move together, each optionally scaled:
//! `products[0].demand.upper,products[1].demand.upper*1.5` sets `U₂ = 1.5 U₁`.

mod config;
mod csv;
mod param;
mod sweep;

pub use config::{load_instance, parse_instance, save_instance, to_config_string};
pub use csv::{emit_csv, format_g10, write_csv};
pub use param::ParamPath;
pub use sweep::{
    adoption_plan, classify, find_boundary, solution_report, sweep, BoundaryKind, CellOutcome,
    RegionCell, SweepSpec,
};
