//! Independent checks of the analytic solvers: brute-force grid equilibria,
//! Monte-Carlo estimates of retailer profit and second-order audits.
//!
//! Nothing here calls the first-order-condition machinery of the solvers, so
//! agreement between the two is meaningful.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::market::{EquilibriumSolution, Instance, Product, Regime, ADOPTION_MARGIN};

/// Samples drawn per independent Monte-Carlo substream.
const MC_BATCH: usize = 1 << 16;
/// Extra random starting points for coordinate descent.
const DESCENT_STARTS: usize = 8;
const DESCENT_SEED: u64 = 0x5eed_0c1e;
const DESCENT_SWEEPS: usize = 200;

/// How the adoption branch of the grid oracle searches the capacity simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GridMode {
    /// Exhaustive for up to three products, coordinate descent beyond.
    #[default]
    Auto,
    Exhaustive,
    CoordinateDescent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub analytic_pi: f64,
    pub oracle_pi: f64,
    pub abs_gap: f64,
    pub analytic_case: Regime,
    pub oracle_case: Regime,
    /// Analytic retailer profit at the equilibrium.
    pub analytic_pi_r: f64,
    pub mc_mean: f64,
    pub mc_stderr: f64,
    pub soc_ok: bool,
    pub notes: String,
}

/// Sample mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
}

struct ProductGrid {
    step: f64,
    upper: f64,
    q: Vec<f64>,
    profit: Vec<f64>,
    prefix: Vec<usize>,
    product: Product,
    cost: f64,
}

impl ProductGrid {
    fn new(product: &Product, cost: f64, grid_n: usize) -> Self {
        let upper = product.demand.upper();
        let step = upper / (grid_n - 1) as f64;
        let q: Vec<f64> = (0..grid_n).map(|k| k as f64 * step).collect();
        let profit: Vec<f64> = q.iter().map(|&x| product.manufacturer_profit(x, cost)).collect();
        let mut prefix = Vec::with_capacity(profit.len());
        let mut b = 0;
        for (k, &v) in profit.iter().enumerate() {
            if v > profit[b] {
                b = k;
            }
            prefix.push(b);
        }
        ProductGrid {
            step,
            upper,
            q,
            profit,
            prefix,
            product: product.clone(),
            cost,
        }
    }

    fn value(&self, x: f64) -> f64 {
        self.product.manufacturer_profit(x, self.cost)
    }

    fn argmax(&self) -> usize {
        self.prefix[self.prefix.len() - 1]
    }

    /// Largest grid index whose quantity fits in `room`.
    fn max_index(&self, room: f64) -> Option<usize> {
        if room < 0.0 {
            return None;
        }
        let k = (room / self.step * (1.0 + 1e-12)).floor();
        Some((k as usize).min(self.q.len() - 1))
    }

    /// Best quantity not exceeding `room`: the best grid point, or `room`
    /// itself when it lies inside the support.
    fn best_within(&self, room: f64) -> Option<(f64, f64)> {
        let k = self.prefix[self.max_index(room)?];
        let mut best = (self.q[k], self.profit[k]);
        if room <= self.upper {
            let v = self.value(room);
            if v > best.1 {
                best = (room, v);
            }
        }
        Some(best)
    }
}

/// Brute-force equilibrium on a quantity grid of `grid_n` points per product.
pub fn grid_equilibrium(inst: &Instance, grid_n: usize) -> Result<EquilibriumSolution> {
    let traditional = grid_branch(inst, grid_n, false, GridMode::Auto)?;
    let adopt = grid_branch(inst, grid_n, true, GridMode::Auto)?;
    if adopt.manufacturer_profit > traditional.manufacturer_profit + ADOPTION_MARGIN {
        Ok(adopt)
    } else {
        Ok(traditional)
    }
}

/// Grid optimum of one technology branch. Quantities range over `[0, Uᵢ]`;
/// under adoption only tuples with `Σ qᵢ <= Q` are considered, and the last
/// free coordinate may also take up exactly the leftover capacity.
pub fn grid_branch(
    inst: &Instance,
    grid_n: usize,
    adopted: bool,
    mode: GridMode,
) -> Result<EquilibriumSolution> {
    if grid_n < 10 {
        return Err(Error::Domain(format!("grid needs at least 10 points, got {grid_n}")));
    }
    let n = inst.len();
    if mode == GridMode::Exhaustive && n > 3 {
        return Err(Error::Complexity(format!(
            "exhaustive grid search over {n} products"
        )));
    }
    let grids: Vec<ProductGrid> = (0..n)
        .map(|i| ProductGrid::new(&inst.products[i], inst.unit_cost(i, adopted), grid_n))
        .collect();
    let free: Vec<f64> = grids.iter().map(|g| g.q[g.argmax()]).collect();
    if !adopted {
        return Ok(EquilibriumSolution::from_quantities(
            inst,
            free,
            Regime::NoAdoption,
            0.0,
            false,
        ));
    }

    let free_total: f64 = free.iter().sum();
    let capacity = inst.capacity;
    let (quantity, case) = if free_total <= capacity {
        (free, Regime::Unconstrained)
    } else {
        let exhaustive = match mode {
            GridMode::Exhaustive => true,
            GridMode::CoordinateDescent => false,
            GridMode::Auto => n <= 3,
        };
        let q = if exhaustive {
            exhaustive_search(&grids, capacity)
        } else {
            let analytic = crate::multi_product::solve_adoption_n(inst);
            coordinate_descent(&grids, capacity, &analytic.quantity)
        };
        (q, Regime::CapacityBound)
    };
    Ok(EquilibriumSolution::from_quantities(inst, quantity, case, 0.0, false))
}

fn exhaustive_search(grids: &[ProductGrid], capacity: f64) -> Vec<f64> {
    let (last, head) = grids.split_last().expect("at least one product");
    let mut best: (f64, Vec<f64>) = (f64::NEG_INFINITY, vec![0.0; grids.len()]);
    let mut current = vec![0.0; head.len()];

    fn recurse(
        depth: usize,
        room: f64,
        value: f64,
        head: &[ProductGrid],
        last: &ProductGrid,
        current: &mut Vec<f64>,
        best: &mut (f64, Vec<f64>),
    ) {
        if depth == head.len() {
            let Some((q, v)) = last.best_within(room) else {
                return;
            };
            if value + v > best.0 {
                best.0 = value + v;
                best.1.clear();
                best.1.extend_from_slice(current);
                best.1.push(q);
            }
            return;
        }
        let g = &head[depth];
        let Some(top) = g.max_index(room) else {
            return;
        };
        for k in 0..=top {
            current[depth] = g.q[k];
            recurse(depth + 1, room - g.q[k], value + g.profit[k], head, last, current, best);
        }
    }

    recurse(0, capacity, 0.0, head, last, &mut current, &mut best);
    best.1
}

fn objective(grids: &[ProductGrid], q: &[f64]) -> f64 {
    grids.iter().zip(q).map(|(g, &x)| g.value(x)).sum()
}

/// Pairwise coordinate descent: repeatedly re-optimises every ordered pair of
/// products jointly over the capacity left by the others.
fn coordinate_descent(grids: &[ProductGrid], capacity: f64, analytic: &[f64]) -> Vec<f64> {
    let n = grids.len();
    let mut starts = Vec::with_capacity(DESCENT_STARTS + 1);
    starts.push(
        grids
            .iter()
            .zip(analytic)
            .map(|(g, &q)| q.clamp(0.0, g.upper))
            .collect::<Vec<_>>(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(DESCENT_SEED);
    for _ in 0..DESCENT_STARTS {
        let mut q: Vec<f64> = grids.iter().map(|g| g.q[rng.random_range(0..g.q.len())]).collect();
        let total: f64 = q.iter().sum();
        if total > capacity {
            let scale = capacity / total;
            q.iter_mut().for_each(|x| *x *= scale);
        }
        starts.push(q);
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    for mut q in starts {
        for _ in 0..DESCENT_SWEEPS {
            let before = objective(grids, &q);
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let others: f64 = q.iter().sum::<f64>() - q[i] - q[j];
                    let room = (capacity - others).max(0.0);
                    let Some(top_i) = grids[i].max_index(room) else {
                        continue;
                    };
                    let mut pair_best = (grids[i].value(q[i]) + grids[j].value(q[j]), q[i], q[j]);
                    for ki in 0..=top_i {
                        let Some((qj, vj)) = grids[j].best_within(room - grids[i].q[ki]) else {
                            continue;
                        };
                        let v = grids[i].profit[ki] + vj;
                        if v > pair_best.0 {
                            pair_best = (v, grids[i].q[ki], qj);
                        }
                    }
                    q[i] = pair_best.1;
                    q[j] = pair_best.2;
                }
            }
            if objective(grids, &q) <= before + 1e-12 {
                break;
            }
        }
        let value = objective(grids, &q);
        if best.as_ref().is_none_or(|b| value > b.0) {
            best = Some((value, q));
        }
    }
    best.expect("at least one start").1
}

/// Monte-Carlo estimate of `r E[min(q, D)] - w q` from `samples` inverse-CDF
/// draws. The draws are split into fixed-size substreams derived from `seed`,
/// so the result is identical however the batches are scheduled.
pub fn mc_retailer_profit(
    q: f64,
    w: f64,
    product: &Product,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    if samples < 1000 {
        return Err(Error::Domain(format!(
            "Monte-Carlo estimate needs at least 1000 samples, got {samples}"
        )));
    }
    let batches = samples.div_ceil(MC_BATCH);
    let parts: Vec<(usize, f64, f64)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let len = MC_BATCH.min(samples - b * MC_BATCH);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            // Welford within the batch
            let (mut mean, mut m2) = (0.0, 0.0);
            for k in 0..len {
                let u: f64 = rng.random();
                let d = product.demand.quantile_unchecked(u);
                let x = product.r * q.min(d) - w * q;
                let delta = x - mean;
                mean += delta / (k + 1) as f64;
                m2 += delta * (x - mean);
            }
            (len, mean, m2)
        })
        .collect();
    // Chan's pairwise combination, in batch order
    let (count, mean, m2) = parts.into_iter().fold(
        (0usize, 0.0f64, 0.0f64),
        |(na, ma, sa), (nb, mb, sb)| {
            if na == 0 {
                return (nb, mb, sb);
            }
            let n = na + nb;
            let delta = mb - ma;
            let mean = ma + delta * nb as f64 / n as f64;
            let m2 = sa + sb + delta * delta * (na as f64) * (nb as f64) / n as f64;
            (n, mean, m2)
        },
    );
    let variance = if count > 1 { m2 / (count - 1) as f64 } else { 0.0 };
    Ok(McEstimate {
        mean,
        stderr: (variance.max(0.0) / count as f64).sqrt(),
    })
}

/// Second-order audit of a solution.
///
/// For a two-product binding solution the reduced objective
/// `q₁ ↦ π₁(q₁) + π₂(Q - q₁)` must have a negative second difference at `q₁`.
/// Otherwise every stocked product must have negative curvature
/// `-2 rᵢ fᵢ(qᵢ)`. Adoption solutions must also respect the capacity.
pub fn soc_audit(inst: &Instance, sol: &EquilibriumSolution) -> bool {
    if sol.quantity.len() != inst.len() || sol.quantity.iter().any(|&q| q.is_nan() || q < 0.0) {
        return false;
    }
    if sol.adopted && sol.total_quantity() > inst.capacity + 1e-8 {
        return false;
    }
    let stocked = || {
        inst.products
            .iter()
            .zip(&sol.quantity)
            .filter(|(_, &q)| q > 0.0)
    };
    if sol.case == Regime::CapacityBound && inst.len() == 2 && !sol.corner {
        let (a, b) = (&inst.products[0], &inst.products[1]);
        let cap = inst.capacity;
        let q1 = sol.quantity[0];
        let h = 1e-3 * cap.min(q1).min(cap - q1).max(1e-9);
        let reduced = |x: f64| a.manufacturer_profit(x, a.c_p) + b.manufacturer_profit(cap - x, b.c_p);
        let second = reduced(q1 + h) - 2.0 * reduced(q1) + reduced(q1 - h);
        return second < 0.0;
    }
    stocked().all(|(p, &q)| -2.0 * p.r * p.demand.density(q) < 0.0)
}

/// Runs the analytic equilibrium, the grid oracle, a Monte-Carlo check of the
/// retailer's profit and the second-order audit, and collects the results.
pub fn verify(inst: &Instance, grid_n: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    let analytic = crate::solve(inst);
    let oracle = grid_equilibrium(inst, grid_n)?;
    let mut mc_mean = 0.0;
    let mut mc_var = 0.0;
    for (i, p) in inst.products.iter().enumerate() {
        let est = mc_retailer_profit(
            analytic.quantity[i],
            analytic.wholesale[i],
            p,
            samples,
            seed.wrapping_add(i as u64),
        )?;
        mc_mean += est.mean;
        mc_var += est.stderr * est.stderr;
    }
    let mc_stderr = mc_var.sqrt();
    let soc_ok = soc_audit(inst, &analytic);
    let z = if mc_stderr > 0.0 {
        (mc_mean - analytic.retailer_profit) / mc_stderr
    } else {
        0.0
    };
    let notes = format!(
        "analytic case {} vs grid case {} (grid_n = {grid_n}); retailer profit MC z-score {z:.3}",
        analytic.case, oracle.case
    );
    Ok(VerificationReport {
        analytic_pi: analytic.manufacturer_profit,
        oracle_pi: oracle.manufacturer_profit,
        abs_gap: (analytic.manufacturer_profit - oracle.manufacturer_profit).abs(),
        analytic_case: analytic.case,
        oracle_case: oracle.case,
        analytic_pi_r: analytic.retailer_profit,
        mc_mean,
        mc_stderr,
        soc_ok,
        notes,
    })
}
