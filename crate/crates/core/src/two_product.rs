//! Two-product adoption game.
//!
//! The manufacturer either keeps traditional production for both products or
//! buys a printer (fixed cost `K`, shared capacity `Q`) and prints both. Under
//! printing the problem splits into a slack-capacity regime, where each product
//! is priced as in the single-product benchmark at its print cost, and a
//! binding regime, where `q₂ = Q - q₁` and the split `q₁` equates the two
//! products' marginal revenues net of print cost. The equilibrium is whichever
//! of adoption and no adoption earns more, with ties going to no adoption.
//!
//! The `uniform_*` functions evaluate the closed forms that hold for uniform
//! demand and are used as an analytic cross-check of the generic solvers.

use crate::error::{Error, Result};
use crate::market::{
    benchmark_optimum, EquilibriumSolution, Instance, Product, Regime, ADOPTION_MARGIN,
    QUANTITY_TOL,
};
use crate::multi_product;
use crate::roots;

/// Points used to scan the capacity split for sign changes of the
/// first-order condition before bisecting.
const SPLIT_SCAN: usize = 512;

fn require_two(inst: &Instance) -> Result<(&Product, &Product)> {
    match inst.products.as_slice() {
        [a, b] => Ok((a, b)),
        other => Err(Error::validation(
            "products",
            format!("two-product solver called with {} products", other.len()),
        )),
    }
}

/// Both products made traditionally, each at its benchmark optimum.
pub fn solve_no_adoption_2(inst: &Instance) -> Result<EquilibriumSolution> {
    require_two(inst)?;
    Ok(multi_product::solve_no_adoption_n(inst))
}

/// Printing adopted with capacity ignored: each product at its benchmark
/// optimum under the print cost. The capacity condition is left to callers.
pub fn solve_adopt_unconstrained_2(inst: &Instance) -> Result<EquilibriumSolution> {
    require_two(inst)?;
    Ok(multi_product::solve_adopt_unconstrained_n(inst))
}

/// Printing adopted with the capacity binding: solves for the split `q₁` of
/// `Q` at which
///
/// ```text
/// r₁(1-F₁(q₁)) - r₁q₁f₁(q₁) - [r₂(1-F₂(Q-q₁)) - r₂(Q-q₁)f₂(Q-q₁)] = c_p₁ - c_p₂
/// ```
///
/// on `[max(0, Q-U₂), min(Q, U₁)]`. Without an interior crossing the capacity
/// goes to a boundary of that interval and `corner` is set. When the
/// unconstrained quantities already fit in `Q` they are returned instead, with
/// a zero shadow price.
pub fn solve_adopt_capacitated_2(inst: &Instance) -> Result<EquilibriumSolution> {
    let (a, b) = require_two(inst)?;
    let capacity = inst.capacity;
    let unconstrained = multi_product::solve_adopt_unconstrained_n(inst);
    if unconstrained.total_quantity() <= capacity {
        return Ok(unconstrained);
    }
    if capacity == 0.0 {
        let lambda = (a.r - a.c_p).max(b.r - b.c_p).max(0.0);
        return Ok(EquilibriumSolution::from_quantities(
            inst,
            vec![0.0, 0.0],
            Regime::CapacityBound,
            lambda,
            false,
        ));
    }

    let lo = (capacity - b.demand.upper()).max(0.0);
    let hi = capacity.min(a.demand.upper());
    let foc = |q1: f64| {
        a.marginal_revenue(q1) - b.marginal_revenue(capacity - q1) - (a.c_p - b.c_p)
    };
    let objective =
        |q1: f64| a.manufacturer_profit(q1, a.c_p) + b.manufacturer_profit(capacity - q1, b.c_p);

    // candidate splits: every interior crossing plus any endpoint where the
    // first-order condition pushes outward
    let mut candidates: Vec<(f64, bool)> = Vec::new();
    if foc(lo) <= 0.0 {
        candidates.push((lo, true));
    }
    if foc(hi) >= 0.0 {
        candidates.push((hi, true));
    }
    let step = (hi - lo) / SPLIT_SCAN as f64;
    let mut prev = (lo, foc(lo));
    for k in 1..=SPLIT_SCAN {
        let x = if k == SPLIT_SCAN { hi } else { lo + k as f64 * step };
        let fx = foc(x);
        if prev.1 > 0.0 && fx <= 0.0 {
            candidates.push((roots::bisect(prev.0, x, QUANTITY_TOL, foc), false));
        }
        prev = (x, fx);
    }
    let (q1, corner) = candidates
        .into_iter()
        .map(|(q, c)| (q, c, objective(q)))
        .fold(None::<(f64, bool, f64)>, |best, cand| match best {
            Some(b) if b.2 >= cand.2 => Some(b),
            _ => Some(cand),
        })
        .map(|(q, c, _)| (q, c))
        .unwrap_or((lo, true));
    let quantity = vec![q1, capacity - q1];
    let lambda = shadow_price(&inst.products, &quantity);
    Ok(EquilibriumSolution::from_quantities(
        inst,
        quantity,
        Regime::CapacityBound,
        lambda,
        corner,
    ))
}

/// Shadow price read off a product whose quantity is strictly inside its
/// support, falling back to any product with positive quantity.
fn shadow_price(products: &[Product], quantity: &[f64]) -> f64 {
    let pick = products
        .iter()
        .zip(quantity)
        .find(|(p, &q)| q > 0.0 && q < p.demand.upper())
        .or_else(|| products.iter().zip(quantity).find(|(_, &q)| q > 0.0));
    match pick {
        Some((p, &q)) => (p.marginal_revenue(q) - p.c_p).max(0.0),
        None => 0.0,
    }
}

/// Best adoption plan: binding-capacity solution when the unconstrained print
/// quantities exceed `Q`, otherwise the unconstrained one.
pub fn solve_adoption_2(inst: &Instance) -> Result<EquilibriumSolution> {
    let (a, b) = require_two(inst)?;
    let demand = benchmark_optimum(a.c_p, a).quantity + benchmark_optimum(b.c_p, b).quantity;
    if demand > inst.capacity {
        solve_adopt_capacitated_2(inst)
    } else {
        solve_adopt_unconstrained_2(inst)
    }
}

/// Stackelberg equilibrium of the two-product game.
pub fn equilibrium_2(inst: &Instance) -> Result<EquilibriumSolution> {
    let adopt = solve_adoption_2(inst)?;
    let traditional = solve_no_adoption_2(inst)?;
    Ok(pick_equilibrium(adopt, traditional))
}

pub(crate) fn pick_equilibrium(
    adopt: EquilibriumSolution,
    traditional: EquilibriumSolution,
) -> EquilibriumSolution {
    if adopt.manufacturer_profit > traditional.manufacturer_profit + ADOPTION_MARGIN {
        adopt
    } else {
        traditional
    }
}

pub(crate) fn uniform_upper(p: &Product, i: usize) -> Result<f64> {
    match p.demand {
        crate::demand::DemandModel::Uniform { upper } => Ok(upper),
        _ => Err(Error::Unsupported(format!(
            "products[{i}] does not have uniform demand"
        ))),
    }
}

struct UniformPair {
    u1: f64,
    u2: f64,
    r1: f64,
    r2: f64,
}

fn uniform_pair(inst: &Instance) -> Result<(UniformPair, &Product, &Product)> {
    let (a, b) = require_two(inst)?;
    Ok((
        UniformPair {
            u1: uniform_upper(a, 0)?,
            u2: uniform_upper(b, 1)?,
            r1: a.r,
            r2: b.r,
        },
        a,
        b,
    ))
}

impl UniformPair {
    /// Slack-capacity optimum at unit costs `(c1, c2)`, before `K`.
    fn slack(&self, c1: f64, c2: f64) -> ([f64; 2], [f64; 2], f64) {
        let UniformPair { u1, u2, r1, r2 } = *self;
        let q = [-u1 * (c1 - r1) / (2.0 * r1), -(c2 - r2) * u2 / (2.0 * r2)];
        let w = [
            r1 * (1.0 + (c1 - r1) / (2.0 * r1)),
            r2 * (1.0 + (c2 - r2) / (2.0 * r2)),
        ];
        let profit = (u1 * r1 * r1 * r2
            + (u2 * r2 * r2 + (-2.0 * u1 * c1 - 2.0 * u2 * c2) * r2 + u2 * c2 * c2) * r1
            + u1 * c1 * c1 * r2)
            / (4.0 * r1 * r2);
        (q, w, profit)
    }

    /// Binding-capacity optimum at print costs `(c1, c2)` and capacity `cap`,
    /// before `K`.
    fn binding(&self, c1: f64, c2: f64, cap: f64) -> ([f64; 2], [f64; 2], f64) {
        let UniformPair { u1, u2, r1, r2 } = *self;
        let den = 2.0 * (u1 * r2 + u2 * r1);
        let q = [
            u1 * (2.0 * cap * r2 - u2 * c1 + u2 * c2 + u2 * r1 - u2 * r2) / den,
            ((c1 - c2 - r1 + r2) * u1 + 2.0 * r1 * cap) * u2 / den,
        ];
        let w = [
            -r1 * ((-c1 + c2 - r1 - r2) * u2 + 2.0 * r2 * (cap - u1)) / den,
            -r2 * ((c1 - c2 - r1 - r2) * u1 + 2.0 * r1 * (cap - u2)) / den,
        ];
        let profit = (((c1 - c2 - r1 + r2).powi(2) * u2 - 4.0 * cap * r2 * (c1 - r1)) * u1
            - 4.0 * cap * r1 * ((c2 - r2) * u2 + cap * r2))
            / (4.0 * u1 * r2 + 4.0 * u2 * r1);
        (q, w, profit)
    }

    fn retailer_profit(&self, q: [f64; 2], w: [f64; 2]) -> f64 {
        let sales = |q: f64, u: f64| q - q * q / (2.0 * u);
        self.r1 * sales(q[0], self.u1) - w[0] * q[0] + self.r2 * sales(q[1], self.u2)
            - w[1] * q[1]
    }
}

/// Closed-form solution of the requested regime for two uniform-demand
/// products. No feasibility or profitability checks are made.
pub fn uniform_closed_form_2(inst: &Instance, case: Regime) -> Result<EquilibriumSolution> {
    let (pair, a, b) = uniform_pair(inst)?;
    let k = inst.fixed_cost;
    let (q, w, profit, lambda) = match case {
        Regime::NoAdoption => {
            let (q, w, p) = pair.slack(a.c_m, b.c_m);
            (q, w, p, 0.0)
        }
        Regime::Unconstrained => {
            let (q, w, p) = pair.slack(a.c_p, b.c_p);
            (q, w, p - k, 0.0)
        }
        Regime::CapacityBound => {
            let (q, w, p) = pair.binding(a.c_p, b.c_p, inst.capacity);
            let lambda = (pair.r1 - 2.0 * pair.r1 * q[0] / pair.u1 - a.c_p).max(0.0);
            (q, w, p - k, lambda)
        }
    };
    Ok(EquilibriumSolution {
        adopted: case.adopted(),
        wholesale: w.to_vec(),
        quantity: q.to_vec(),
        case,
        manufacturer_profit: profit,
        retailer_profit: pair.retailer_profit(q, w),
        shadow_price: lambda,
        corner: false,
    })
}

/// Profit lost to the capacity constraint under uniform demand: slack-capacity
/// profit minus binding-capacity profit, both from their closed forms.
pub fn capacity_gap(inst: &Instance) -> Result<f64> {
    let (pair, a, b) = uniform_pair(inst)?;
    let (_, _, slack) = pair.slack(a.c_p, b.c_p);
    let (_, _, binding) = pair.binding(a.c_p, b.c_p, inst.capacity);
    Ok(slack - binding)
}

/// The same capacity gap written as a perfect square over a positive
/// denominator, which shows it can never be negative.
pub fn capacity_gap_squared_form(inst: &Instance) -> Result<f64> {
    let (UniformPair { u1, u2, r1, r2 }, a, b) = uniform_pair(inst)?;
    let (c1, c2, cap) = (a.c_p, b.c_p, inst.capacity);
    let inner = ((cap - u1 / 2.0 - u2 / 2.0) * r2 + u2 * c2 / 2.0) * r1 + u1 * c1 * r2 / 2.0;
    Ok(inner * inner / ((u1 * r2 + u2 * r1) * r1 * r2))
}

/// Largest fixed cost at which slack-capacity printing still beats traditional
/// production under uniform demand:
/// `½ Σ Uᵢ (c_m,i - c_p,i)(1 - (c_m,i + c_p,i) / (2 rᵢ))`.
///
/// Negative values mean printing never pays, whatever `K`.
pub fn adoption_capital_threshold(inst: &Instance) -> Result<f64> {
    require_two(inst)?;
    inst.products
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let u = uniform_upper(p, i)?;
            Ok(0.5 * u * (p.c_m - p.c_p) * (1.0 - (p.c_m + p.c_p) / (2.0 * p.r)))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: (f64, f64, f64, f64), b: (f64, f64, f64, f64), k: f64, q: f64) -> Instance {
        // (r, c_m, c_p, U)
        Instance::new(
            vec![
                Product::uniform(a.0, a.1, a.2, a.3).unwrap(),
                Product::uniform(b.0, b.1, b.2, b.3).unwrap(),
            ],
            k,
            q,
        )
        .unwrap()
    }

    /// U = (10, 15), r = (10, 20), c_m = (5, 10), c_p1 = 1, K = 10, Q = 8.
    fn reference_pair(cp2: f64) -> Instance {
        pair((10.0, 5.0, 1.0, 10.0), (20.0, 10.0, cp2, 15.0), 10.0, 8.0)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn no_adoption_examples() {
        let inst = pair((50.0, 15.0, 15.0, 100.0), (100.0, 30.0, 30.0, 150.0), 0.0, 10.0);
        let s = solve_no_adoption_2(&inst).unwrap();
        assert!(close(s.quantity[0], 35.0, 1e-9) && close(s.quantity[1], 52.5, 1e-9));
        assert!(close(s.wholesale[0], 32.5, 1e-9) && close(s.wholesale[1], 65.0, 1e-9));
        assert!(close(s.manufacturer_profit, 2450.0, 1e-7));
        assert_eq!(s.case, Regime::NoAdoption);
        assert_eq!(s.v(), 0);

        let inst = pair((50.0, 50.0, 1.0, 100.0), (100.0, 100.0, 1.0, 150.0), 0.0, 10.0);
        let s = solve_no_adoption_2(&inst).unwrap();
        assert_eq!(s.quantity, vec![0.0, 0.0]);
        assert_eq!(s.manufacturer_profit, 0.0);

        let inst = pair((40.0, 10.0, 5.0, 80.0), (40.0, 10.0, 5.0, 80.0), 0.0, 10.0);
        let s = solve_no_adoption_2(&inst).unwrap();
        assert_eq!(s.quantity[0], s.quantity[1]);
        assert_eq!(s.wholesale[0], s.wholesale[1]);
    }

    #[test]
    fn unconstrained_examples() {
        let inst = pair((50.0, 15.0, 10.0, 100.0), (100.0, 30.0, 20.0, 150.0), 400.0, 1e3);
        let s = solve_adopt_unconstrained_2(&inst).unwrap();
        assert!(close(s.quantity[0], 40.0, 1e-9) && close(s.quantity[1], 60.0, 1e-9));
        assert!(close(s.wholesale[0], 30.0, 1e-9) && close(s.wholesale[1], 60.0, 1e-9));
        assert!(close(s.manufacturer_profit, 2800.0, 1e-7));
        assert_eq!(s.case, Regime::Unconstrained);

        let same = pair((50.0, 15.0, 15.0, 100.0), (100.0, 30.0, 30.0, 150.0), 0.0, 1e3);
        let a = solve_adopt_unconstrained_2(&same).unwrap();
        let b = solve_no_adoption_2(&same).unwrap();
        assert!(close(a.manufacturer_profit, b.manufacturer_profit, 1e-12));

        let dead = pair((50.0, 15.0, 50.0, 100.0), (100.0, 30.0, 100.0, 150.0), 7.0, 1e3);
        let s = solve_adopt_unconstrained_2(&dead).unwrap();
        assert_eq!(s.quantity, vec![0.0, 0.0]);
        assert_eq!(s.manufacturer_profit, -7.0);
    }

    #[test]
    fn capacitated_example_three() {
        let s = solve_adopt_capacitated_2(&reference_pair(5.0)).unwrap();
        assert_eq!(s.case, Regime::CapacityBound);
        assert!(!s.corner);
        assert!(close(s.quantity[0], 23.0 / 7.0, 1e-9));
        assert!(close(s.quantity[1], 33.0 / 7.0, 1e-9));
        assert!(close(s.wholesale[0], 47.0 / 7.0, 1e-8));
        assert!(close(s.wholesale[1], 96.0 / 7.0, 1e-8));
        assert!(close(s.manufacturer_profit, 83800.0 / 1400.0 - 10.0, 1e-8));
        assert!(close(s.total_quantity(), 8.0, 1e-12));
        // r1 - 2 r1 q1 / U1 - c_p1
        assert!(close(s.shadow_price, 10.0 - 2.0 * 23.0 / 7.0 - 1.0, 1e-8));
    }

    #[test]
    fn capacitated_symmetry_and_edges() {
        let sym = pair((30.0, 10.0, 6.0, 50.0), (30.0, 10.0, 6.0, 50.0), 5.0, 20.0);
        let s = solve_adopt_capacitated_2(&sym).unwrap();
        assert!(close(s.quantity[0], 10.0, 1e-9) && close(s.quantity[1], 10.0, 1e-9));

        let mut zero = sym.clone();
        zero.capacity = 0.0;
        let s = solve_adopt_capacitated_2(&zero).unwrap();
        assert_eq!(s.quantity, vec![0.0, 0.0]);
        assert_eq!(s.manufacturer_profit, -5.0);

        // capacity exactly equal to the unconstrained demand
        let mut just = reference_pair(5.0);
        just.capacity = 4.5 + 5.625;
        let s = solve_adopt_capacitated_2(&just).unwrap();
        assert!(close(s.quantity[0], 4.5, 1e-9) && close(s.quantity[1], 5.625, 1e-9));
        assert_eq!(s.shadow_price, 0.0);
    }

    #[test]
    fn capacitated_corner_when_one_product_is_hopeless() {
        // product 2 cannot be printed profitably, product 1 wants more than Q
        let inst = pair((50.0, 10.0, 5.0, 100.0), (20.0, 10.0, 25.0, 60.0), 0.0, 30.0);
        let s = solve_adopt_capacitated_2(&inst).unwrap();
        assert!(s.corner);
        assert!(close(s.quantity[0], 30.0, 1e-12));
        assert_eq!(s.quantity[1], 0.0);
        assert!(s.shadow_price > 0.0);
    }

    #[test]
    fn adoption_split_and_equilibrium_cases() {
        assert_eq!(solve_adoption_2(&reference_pair(5.0)).unwrap().case, Regime::CapacityBound);
        assert_eq!(solve_adoption_2(&reference_pair(11.0)).unwrap().case, Regime::Unconstrained);
        let mut roomy = reference_pair(5.0);
        roomy.capacity = 25.0;
        assert_eq!(solve_adoption_2(&roomy).unwrap().case, Regime::Unconstrained);

        let e = equilibrium_2(&reference_pair(5.0)).unwrap();
        assert_eq!((e.case, e.v()), (Regime::CapacityBound, 1));
        let e = equilibrium_2(&reference_pair(11.0)).unwrap();
        assert_eq!(e.case, Regime::Unconstrained);
        assert!(close(e.manufacturer_profit, 25.4375, 1e-8));
        let e = equilibrium_2(&reference_pair(18.0)).unwrap();
        assert_eq!(e.case, Regime::NoAdoption);
        assert!(close(e.manufacturer_profit, 25.0, 1e-8));
    }

    #[test]
    fn ties_go_to_no_adoption() {
        let mut inst = reference_pair(12.0);
        inst.fixed_cost = 0.0;
        let gain = solve_adopt_unconstrained_2(&inst).unwrap().manufacturer_profit
            - solve_no_adoption_2(&inst).unwrap().manufacturer_profit;
        inst.fixed_cost = gain;
        let e = equilibrium_2(&inst).unwrap();
        assert_eq!(e.v(), 0);
    }

    #[test]
    fn closed_forms_agree_with_solvers() {
        let inst = reference_pair(5.0);
        let cf = uniform_closed_form_2(&inst, Regime::CapacityBound).unwrap();
        let s = solve_adopt_capacitated_2(&inst).unwrap();
        for i in 0..2 {
            assert!(close(cf.quantity[i], s.quantity[i], 1e-9));
            assert!(close(cf.wholesale[i], s.wholesale[i], 1e-9));
        }
        assert!(close(cf.manufacturer_profit, s.manufacturer_profit, 1e-9));
        assert!(close(cf.manufacturer_profit, 49.857142857142854, 1e-9));
        assert!(close(cf.retailer_profit, s.retailer_profit, 1e-9));
        assert!(close(cf.shadow_price, s.shadow_price, 1e-9));

        let same = pair((50.0, 15.0, 15.0, 100.0), (100.0, 30.0, 30.0, 150.0), 0.0, 1e3);
        let a = uniform_closed_form_2(&same, Regime::NoAdoption).unwrap();
        let b = uniform_closed_form_2(&same, Regime::Unconstrained).unwrap();
        assert_eq!(a.quantity, b.quantity);
        assert_eq!(a.wholesale, b.wholesale);
    }

    #[test]
    fn closed_forms_need_uniform_demand() {
        let t = crate::demand::DemandModel::tabulated(&[(0.0, 0.0), (10.0, 1.0)]).unwrap();
        let inst = Instance::new(
            vec![
                Product::new(10.0, 5.0, 1.0, t).unwrap(),
                Product::uniform(20.0, 10.0, 5.0, 15.0).unwrap(),
            ],
            10.0,
            8.0,
        )
        .unwrap();
        assert!(matches!(
            uniform_closed_form_2(&inst, Regime::NoAdoption),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(capacity_gap(&inst), Err(Error::Unsupported(_))));
        assert!(matches!(adoption_capital_threshold(&inst), Err(Error::Unsupported(_))));
    }

    #[test]
    fn capacity_gap_examples() {
        let g = capacity_gap(&reference_pair(5.0)).unwrap();
        assert!(close(g, 425.0 * 425.0 / 70000.0, 1e-9));
        assert!(close(capacity_gap_squared_form(&reference_pair(5.0)).unwrap(), g, 1e-12));
        let mut just = reference_pair(5.0);
        just.capacity = 4.5 + 5.625;
        assert!(capacity_gap(&just).unwrap().abs() < 1e-9);
    }

    #[test]
    fn capital_threshold_examples() {
        let same = pair((50.0, 15.0, 15.0, 100.0), (100.0, 30.0, 30.0, 150.0), 0.0, 1e3);
        assert_eq!(adoption_capital_threshold(&same).unwrap(), 0.0);
        assert!(close(adoption_capital_threshold(&reference_pair(10.0)).unwrap(), 14.0, 1e-12));
        // K_max(c_p2) = 10 where 0.1875 (20 - c)² = 14.75
        let c = 20.0 - (14.75f64 / 0.1875).sqrt();
        assert!(close(adoption_capital_threshold(&reference_pair(c)).unwrap(), 10.0, 1e-9));
        assert!(close(c, 11.13, 0.005));
    }

    #[test]
    fn wrong_size_is_rejected() {
        let one = Instance::new(vec![Product::uniform(10.0, 5.0, 1.0, 10.0).unwrap()], 0.0, 1.0)
            .unwrap();
        assert!(matches!(equilibrium_2(&one), Err(Error::Validation { .. })));
    }
}
