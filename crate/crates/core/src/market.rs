//! Single-product newsvendor layer and the shared model types.
//!
//! The retailer facing a wholesale price `w` stocks the newsvendor quantity
//! `F⁻¹(1 - w/r)`. Because that map is a bijection between `w ∈ [0, r]` and
//! `q ∈ [0, U]`, the manufacturer's pricing problem is solved in quantity space
//! throughout the crate, with `w = r (1 - F(q))` recovered at the end.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::demand::DemandModel;
use crate::error::{Error, Result};
use crate::roots;

/// Absolute tolerance on quantities returned by the root finders.
pub const QUANTITY_TOL: f64 = 1e-10;

/// Margin by which adoption profit must beat the traditional profit.
pub const ADOPTION_MARGIN: f64 = 1e-9;

const FALLBACK_SCAN: usize = 4096;

/// One product line: retail price, unit costs under each technology, demand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Product {
    /// Retail price `r`.
    pub r: f64,
    /// Traditional unit manufacturing cost.
    pub c_m: f64,
    /// Unit 3D-printing cost.
    pub c_p: f64,
    pub demand: DemandModel,
}

impl Product {
    pub fn new(r: f64, c_m: f64, c_p: f64, demand: DemandModel) -> Result<Self> {
        let p = Product { r, c_m, c_p, demand };
        p.validate("product")?;
        Ok(p)
    }

    /// Shorthand for a product with uniform demand on `[0, upper]`.
    pub fn uniform(r: f64, c_m: f64, c_p: f64, upper: f64) -> Result<Self> {
        Product::new(r, c_m, c_p, DemandModel::uniform(upper)?)
    }

    pub fn validate(&self, path: &str) -> Result<()> {
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(Error::validation(format!("{path}.r"), "retail price must be positive"));
        }
        if !(self.c_m.is_finite() && self.c_m > 0.0 && self.c_m <= self.r) {
            return Err(Error::validation(
                format!("{path}.c_m"),
                format!("need 0 < c_m <= r, got c_m = {} with r = {}", self.c_m, self.r),
            ));
        }
        if !(self.c_p.is_finite() && self.c_p > 0.0) {
            return Err(Error::validation(format!("{path}.c_p"), "print cost must be positive"));
        }
        Ok(())
    }

    /// Marginal revenue of stocking `q` when the price is set so the retailer
    /// orders exactly `q`: `r (1 - F(q)) - r q f(q)`.
    pub fn marginal_revenue(&self, q: f64) -> f64 {
        self.r * self.demand.survival(q) - self.r * q * self.demand.density(q)
    }

    /// Manufacturer margin on this product when the retailer orders `q` and the
    /// unit cost is `cost`.
    pub fn manufacturer_profit(&self, q: f64, cost: f64) -> f64 {
        (self.r * self.demand.survival(q) - cost) * q
    }
}

/// A full problem instance: product lines, fixed adoption cost `K` and the
/// printer capacity `Q` shared across all products.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct Instance {
    #[serde(rename = "K")]
    pub fixed_cost: f64,
    #[serde(rename = "Q")]
    pub capacity: f64,
    #[serde(rename = "product")]
    pub products: Vec<Product>,
}

#[derive(Deserialize)]
struct RawInstance {
    #[serde(rename = "K")]
    fixed_cost: f64,
    #[serde(rename = "Q")]
    capacity: f64,
    #[serde(rename = "product", default)]
    products: Vec<Product>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        Instance::new(raw.products, raw.fixed_cost, raw.capacity)
    }
}

impl Instance {
    pub fn new(products: Vec<Product>, fixed_cost: f64, capacity: f64) -> Result<Self> {
        let inst = Instance {
            fixed_cost,
            capacity,
            products,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.products.is_empty() {
            return Err(Error::validation("products", "need at least one product"));
        }
        for (i, p) in self.products.iter().enumerate() {
            p.validate(&format!("products[{i}]"))?;
        }
        if !(self.fixed_cost.is_finite() && self.fixed_cost >= 0.0) {
            return Err(Error::validation("K", "fixed cost must be non-negative"));
        }
        if !(self.capacity.is_finite() && self.capacity >= 0.0) {
            return Err(Error::validation("Q", "capacity must be non-negative"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.products.len()
    }

    pub fn is_empty(&self) -> bool {
        self.products.is_empty()
    }

    pub fn all_uniform(&self) -> bool {
        self.products.iter().all(|p| p.demand.is_uniform())
    }

    /// Unit cost of product `i` under the given technology choice.
    pub fn unit_cost(&self, i: usize, adopted: bool) -> f64 {
        let p = &self.products[i];
        if adopted {
            p.c_p
        } else {
            p.c_m
        }
    }

    /// Manufacturer profit of an arbitrary quantity vector (prices set so the
    /// retailer orders exactly those quantities), including `K` when adopted.
    pub fn manufacturer_profit(&self, quantities: &[f64], adopted: bool) -> f64 {
        let margin: f64 = self
            .products
            .iter()
            .zip(quantities)
            .enumerate()
            .map(|(i, (p, &q))| p.manufacturer_profit(q, self.unit_cost(i, adopted)))
            .sum();
        if adopted {
            margin - self.fixed_cost
        } else {
            margin
        }
    }
}

/// Which regime an equilibrium falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// Printing adopted, capacity binding (Case 1).
    CapacityBound,
    /// Printing adopted, capacity slack (Case 2).
    Unconstrained,
    /// Traditional manufacturing (Case 3).
    NoAdoption,
}

impl Regime {
    pub fn case_number(self) -> u8 {
        match self {
            Regime::CapacityBound => 1,
            Regime::Unconstrained => 2,
            Regime::NoAdoption => 3,
        }
    }

    pub fn adopted(self) -> bool {
        self != Regime::NoAdoption
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::CapacityBound => "CapacityBound",
            Regime::Unconstrained => "Unconstrained",
            Regime::NoAdoption => "NoAdoption",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Stackelberg equilibrium (or a candidate for one) of an [`Instance`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumSolution {
    pub adopted: bool,
    pub wholesale: Vec<f64>,
    pub quantity: Vec<f64>,
    pub case: Regime,
    pub manufacturer_profit: f64,
    pub retailer_profit: f64,
    /// Shadow price of the capacity constraint, zero unless it binds.
    pub shadow_price: f64,
    /// Set when the capacity split had no interior solution and was projected
    /// onto a boundary of the feasible set.
    pub corner: bool,
}

impl EquilibriumSolution {
    /// Completes a solution from the retailer quantities: wholesale prices from
    /// the inverse newsvendor map, then both parties' expected profits.
    pub fn from_quantities(
        inst: &Instance,
        quantity: Vec<f64>,
        case: Regime,
        shadow_price: f64,
        corner: bool,
    ) -> Self {
        let adopted = case.adopted();
        let wholesale: Vec<f64> = inst
            .products
            .iter()
            .zip(&quantity)
            .map(|(p, &q)| p.r * p.demand.survival(q))
            .collect();
        let retailer_profit = inst
            .products
            .iter()
            .zip(quantity.iter().zip(&wholesale))
            .map(|(p, (&q, &w))| retailer_expected_profit(q, w, p))
            .sum();
        let manufacturer_profit = inst.manufacturer_profit(&quantity, adopted);
        EquilibriumSolution {
            adopted,
            wholesale,
            quantity,
            case,
            manufacturer_profit,
            retailer_profit,
            shadow_price,
            corner,
        }
    }

    /// The adoption flag as 0/1.
    pub fn v(&self) -> u8 {
        u8::from(self.adopted)
    }

    pub fn total_quantity(&self) -> f64 {
        self.quantity.iter().sum()
    }
}

/// Newsvendor order quantity `F⁻¹(1 - w/r)`; zero when `w >= r`.
pub fn best_response_quantity(w: f64, product: &Product) -> f64 {
    if w >= product.r {
        return 0.0;
    }
    let ratio = 1.0 - w.max(0.0) / product.r;
    product.demand.quantile_unchecked(ratio)
}

/// `r E[min(q, D)] - w q`.
pub fn retailer_expected_profit(q: f64, w: f64, product: &Product) -> f64 {
    product.r * product.demand.expected_min_unchecked(q) - w * q
}

/// Wholesale price that induces the retailer to order `q`: `r (1 - F(q))`.
pub fn wholesale_for_quantity(q: f64, product: &Product) -> Result<f64> {
    let upper = product.demand.upper();
    if !(0.0..=upper).contains(&q) {
        return Err(Error::Domain(format!("quantity {q} outside support [0, {upper}]")));
    }
    Ok(product.r * product.demand.survival(q))
}

/// Single-product manufacturer optimum at unit cost `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkOptimum {
    pub quantity: f64,
    pub wholesale: f64,
    pub profit: f64,
    /// The demand model failed the IGFR check and the optimum came from a
    /// dense scan instead of the first-order condition.
    pub igfr_fallback: bool,
}

/// Manufacturer's optimal wholesale price for one product at unit cost `c`.
///
/// Under IGFR the marginal revenue `(1 - F(q))(1 - q f(q) / (1 - F(q)))` is
/// decreasing in `q`, so its crossing with `c / r` is bracketed by
/// `[0, F⁻¹(1 - c/r)]` and found by bisection.
pub fn benchmark_optimum(c: f64, product: &Product) -> BenchmarkOptimum {
    let r = product.r;
    if c >= r {
        return BenchmarkOptimum {
            quantity: 0.0,
            wholesale: r,
            profit: 0.0,
            igfr_fallback: false,
        };
    }
    let demand = &product.demand;
    let (quantity, igfr_fallback) = if demand.is_igfr() {
        let hi = demand.quantile_unchecked(1.0 - c.max(0.0) / r);
        let q = roots::bisect(0.0, hi, QUANTITY_TOL, |q| {
            demand.survival(q) - q * demand.density(q) - c / r
        });
        (q, false)
    } else {
        (scan_optimum(product, c), true)
    };
    let wholesale = r * demand.survival(quantity);
    BenchmarkOptimum {
        quantity,
        wholesale,
        profit: (wholesale - c) * quantity,
        igfr_fallback,
    }
}

fn scan_optimum(product: &Product, c: f64) -> f64 {
    let upper = product.demand.upper();
    let step = upper / FALLBACK_SCAN as f64;
    let profit = |q: f64| product.manufacturer_profit(q, c);
    let best = (0..=FALLBACK_SCAN)
        .map(|k| k as f64 * step)
        .fold((0.0, profit(0.0)), |acc, q| {
            let v = profit(q);
            if v > acc.1 {
                (q, v)
            } else {
                acc
            }
        });
    let lo = (best.0 - step).max(0.0);
    let hi = (best.0 + step).min(upper);
    let refined = roots::golden_max(lo, hi, QUANTITY_TOL, profit);
    if profit(refined) >= best.1 {
        refined
    } else {
        best.0
    }
}
