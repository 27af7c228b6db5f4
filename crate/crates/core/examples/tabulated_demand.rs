//! Piecewise-linear demand CDFs, including one that fails the increasing
//! failure-rate check and falls back to a scan.

use stackprint::market::benchmark_optimum;
use stackprint::{DemandModel, Instance, Product};

fn main() -> stackprint::Result<()> {
    let ramp = DemandModel::tabulated(&[(0.0, 0.0), (20.0, 0.1), (40.0, 0.4), (60.0, 1.0)])?;
    let dip = DemandModel::tabulated(&[(0.0, 0.0), (10.0, 0.5), (90.0, 0.6), (100.0, 1.0)])?;
    for (name, d) in [("ramp", &ramp), ("dip", &dip)] {
        println!("{name}: mean {:.3}, igfr {}", d.mean(), d.is_igfr());
        for x in [5.0, 15.0, 30.0, 50.0] {
            println!(
                "  x = {x:4}: F = {:.3}, E[min(x, D)] = {:.4}, gfr = {:.4}",
                d.cdf(x),
                d.expected_min(x)?,
                d.gfr(x)?
            );
        }
        let p = Product::new(10.0, 4.0, 3.0, d.clone())?;
        let opt = benchmark_optimum(p.c_m, &p);
        println!("  optimum w = {:.4}, q = {:.4}, scan fallback {}", opt.wholesale, opt.quantity, opt.igfr_fallback);
    }
    let inst = Instance::new(
        vec![
            Product::new(10.0, 4.0, 3.0, ramp)?,
            Product::uniform(20.0, 8.0, 6.0, 50.0)?,
        ],
        5.0,
        30.0,
    )?;
    let eq = stackprint::solve(&inst);
    println!("mixed pair: {} q = {:?}, pi_M = {:.4}", eq.case, eq.quantity, eq.manufacturer_profit);
    Ok(())
}
