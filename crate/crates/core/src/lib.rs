//! Stackelberg equilibria for a manufacturer deciding whether to replace
//! traditional production with a capacity-limited 3D printer, selling several
//! products through a wholesale-price contract to a newsvendor retailer.
//!
//! - [`demand`]: bounded continuous demand models.
//! - [`market`]: the retailer's newsvendor response and the single-product
//!   manufacturer optimum, plus the shared model types.
//! - [`two_product`] and [`multi_product`]: adoption equilibria.
//! - [`oracle`]: grid, Monte-Carlo and second-order checks.
//! - [`sweeplab`]: configuration files, parameter sweeps, region boundaries
//!   and CSV output.
//!
//! ```
//! use stackprint::{solve, Instance, Product, Regime};
//!
//! let inst = Instance::new(
//!     vec![
//!         Product::uniform(10.0, 5.0, 1.0, 10.0).unwrap(),
//!         Product::uniform(20.0, 10.0, 5.0, 15.0).unwrap(),
//!     ],
//!     10.0,
//!     8.0,
//! )
//! .unwrap();
//! let eq = solve(&inst);
//! assert_eq!(eq.case, Regime::CapacityBound);
//! assert!((eq.total_quantity() - 8.0).abs() < 1e-9);
//! ```

pub mod demand;
pub mod error;
pub mod market;
pub mod multi_product;
pub mod oracle;
mod roots;
pub mod sweeplab;
pub mod two_product;

pub use demand::DemandModel;
pub use error::{Error, Result};
pub use market::{EquilibriumSolution, Instance, Product, Regime};

/// Equilibrium of any instance, using the two-product solver when `n = 2`.
pub fn solve(inst: &Instance) -> EquilibriumSolution {
    if inst.len() == 2 {
        two_product::equilibrium_2(inst).expect("instance has two products")
    } else {
        multi_product::equilibrium_n(inst)
    }
}
