//! n-product adoption game.
//!
//! With a shared printer capacity the binding regime is a resource-allocation
//! problem. Each product's first-order condition
//! `rᵢ(1 - Fᵢ(qᵢ)) - rᵢ qᵢ fᵢ(qᵢ) = c_p,i + λ` gives a quantity that decreases in
//! the shadow price `λ`, so the total is monotone in `λ` and an outer bisection
//! on `λ` hits `Σ qᵢ = Q`. Products whose marginal revenue at zero cannot cover
//! `c_p,i + λ` drop out at `qᵢ = 0`.

use crate::error::{Error, Result};
use crate::market::{
    benchmark_optimum, EquilibriumSolution, Instance, Product, Regime, QUANTITY_TOL,
};
use crate::roots;
use crate::two_product::{pick_equilibrium, uniform_upper};

const OUTER_ITERATIONS: usize = 200;

/// Shadow price and the quantities it induces.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeState {
    pub lambda: f64,
    pub q: Vec<f64>,
}

/// Quantity at which product marginal revenue equals `c_p + lambda`.
///
/// Zero when `c_p + lambda >= r`; at `lambda = 0` this is the slack-capacity
/// print quantity.
pub fn foc_quantity(product: &Product, lambda: f64) -> f64 {
    let lambda = lambda.max(0.0);
    let target = product.c_p + lambda;
    if target >= product.r {
        return 0.0;
    }
    let slack = benchmark_optimum(product.c_p, product).quantity;
    if lambda == 0.0 {
        return slack;
    }
    roots::bisect(0.0, slack, QUANTITY_TOL, |q| {
        product.marginal_revenue(q) - target
    })
}

fn total_at(products: &[Product], lambda: f64) -> (Vec<f64>, f64) {
    let q: Vec<f64> = products.iter().map(|p| foc_quantity(p, lambda)).collect();
    let sum = q.iter().sum();
    (q, sum)
}

/// Traditional production of every product at its benchmark optimum.
pub fn solve_no_adoption_n(inst: &Instance) -> EquilibriumSolution {
    let quantity = inst
        .products
        .iter()
        .map(|p| benchmark_optimum(p.c_m, p).quantity)
        .collect();
    EquilibriumSolution::from_quantities(inst, quantity, Regime::NoAdoption, 0.0, false)
}

/// Printing with capacity ignored; `K` shifts the profit and nothing else.
pub fn solve_adopt_unconstrained_n(inst: &Instance) -> EquilibriumSolution {
    let quantity = inst
        .products
        .iter()
        .map(|p| benchmark_optimum(p.c_p, p).quantity)
        .collect();
    EquilibriumSolution::from_quantities(inst, quantity, Regime::Unconstrained, 0.0, false)
}

/// Shadow price that makes the first-order quantities exhaust the capacity.
///
/// Returns `λ = 0` with the slack quantities when those already fit.
pub fn solve_lagrange(inst: &Instance) -> LagrangeState {
    let products = &inst.products;
    let capacity = inst.capacity;
    let (slack, slack_sum) = total_at(products, 0.0);
    if slack_sum <= capacity {
        return LagrangeState {
            lambda: 0.0,
            q: slack,
        };
    }
    let lambda_max = products
        .iter()
        .map(|p| p.r - p.c_p)
        .fold(0.0_f64, f64::max);
    if capacity <= 0.0 {
        return LagrangeState {
            lambda: lambda_max,
            q: vec![0.0; products.len()],
        };
    }

    // invariant: sum(lo) > Q >= sum(hi)
    let (mut lo, mut hi) = (0.0, lambda_max);
    let (mut q_lo, mut sum_lo) = (slack, slack_sum);
    let (mut q_hi, mut sum_hi) = (vec![0.0; products.len()], 0.0);
    for _ in 0..OUTER_ITERATIONS {
        if hi - lo <= f64::EPSILON * hi.max(1.0) || sum_lo - sum_hi <= 1e-12 * capacity {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let (q, sum) = total_at(products, mid);
        if sum > capacity {
            (lo, q_lo, sum_lo) = (mid, q, sum);
        } else {
            (hi, q_hi, sum_hi) = (mid, q, sum);
        }
    }
    // the two ends bracket Q; blending them conserves capacity exactly even
    // where a piecewise-constant density makes the total jump
    let t = if sum_lo > sum_hi {
        (sum_lo - capacity) / (sum_lo - sum_hi)
    } else {
        0.0
    };
    let q = q_lo
        .iter()
        .zip(&q_hi)
        .map(|(&a, &b)| a + t * (b - a))
        .collect();
    LagrangeState {
        lambda: lo + t * (hi - lo),
        q,
    }
}

/// Printing with the capacity binding. Falls back to the slack solution (with
/// `λ = 0`) when the slack quantities already fit in `Q`.
pub fn solve_adopt_capacitated_n(inst: &Instance) -> EquilibriumSolution {
    let state = solve_lagrange(inst);
    if state.lambda == 0.0 {
        return EquilibriumSolution::from_quantities(
            inst,
            state.q,
            Regime::Unconstrained,
            0.0,
            false,
        );
    }
    let corner = inst
        .products
        .iter()
        .zip(&state.q)
        .any(|(p, &q)| q == 0.0 && p.c_p < p.r);
    EquilibriumSolution::from_quantities(
        inst,
        state.q,
        Regime::CapacityBound,
        state.lambda,
        corner,
    )
}

/// Best adoption plan for any number of products.
pub fn solve_adoption_n(inst: &Instance) -> EquilibriumSolution {
    let slack = solve_adopt_unconstrained_n(inst);
    if slack.total_quantity() > inst.capacity {
        solve_adopt_capacitated_n(inst)
    } else {
        slack
    }
}

/// Stackelberg equilibrium for any number of products.
pub fn equilibrium_n(inst: &Instance) -> EquilibriumSolution {
    pick_equilibrium(solve_adoption_n(inst), solve_no_adoption_n(inst))
}

/// Closed-form binding-capacity allocation for three uniform-demand products.
pub fn three_product_uniform_closed_form(inst: &Instance) -> Result<EquilibriumSolution> {
    let [p1, p2, p3] = inst.products.as_slice() else {
        return Err(Error::Unsupported(format!(
            "three-product closed form called with {} products",
            inst.len()
        )));
    };
    let (u1, u2, u3) = (uniform_upper(p1, 0)?, uniform_upper(p2, 1)?, uniform_upper(p3, 2)?);
    let (r1, r2, r3) = (p1.r, p2.r, p3.r);
    let (c1, c2, c3) = (p1.c_p, p2.c_p, p3.c_p);
    let cap = inst.capacity;
    let den = 2.0 * (u1 * r2 * r3 + u2 * r1 * r3 + u3 * r1 * r2);
    let q1 = u1
        * (2.0 * cap * r2 * r3 + u2 * c2 * r3 - u2 * c1 * r3 - u2 * r2 * r3 + u2 * r1 * r3
            - u3 * c1 * r2
            + u3 * c3 * r2
            + u3 * r1 * r2
            - u3 * r2 * r3)
        / den;
    let q2 = u2
        * (2.0 * cap * r1 * r3 + u1 * c1 * r3 - u1 * c2 * r3 - u1 * r1 * r3 + u1 * r2 * r3
            - u3 * c2 * r1
            + u3 * c3 * r1
            + u3 * r1 * r2
            - u3 * r1 * r3)
        / den;
    let q3 = u3
        * (2.0 * cap * r1 * r2 + u1 * c1 * r2 - u1 * c3 * r2 - u1 * r1 * r2 + u1 * r2 * r3
            - u2 * c3 * r1
            + u2 * c2 * r1
            + u2 * r1 * r3
            - u2 * r1 * r2)
        / den;
    let quantity = [q1, q2, q3];
    let uppers = [u1, u2, u3];
    let wholesale: Vec<f64> = inst
        .products
        .iter()
        .zip(quantity.iter().zip(&uppers))
        .map(|(p, (&q, &u))| p.r * (1.0 - q / u))
        .collect();
    let mut manufacturer_profit = -inst.fixed_cost;
    let mut retailer_profit = 0.0;
    for (i, p) in inst.products.iter().enumerate() {
        let (q, w, u) = (quantity[i], wholesale[i], uppers[i]);
        manufacturer_profit += (w - p.c_p) * q;
        retailer_profit += p.r * (q - q * q / (2.0 * u)) - w * q;
    }
    Ok(EquilibriumSolution {
        adopted: true,
        wholesale,
        quantity: quantity.to_vec(),
        case: Regime::CapacityBound,
        manufacturer_profit,
        retailer_profit,
        shadow_price: (r1 - 2.0 * r1 * q1 / u1 - c1).max(0.0),
        corner: false,
    })
}
