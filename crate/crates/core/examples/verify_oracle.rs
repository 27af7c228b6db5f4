// Cross-checks the analytic equilibrium with brute force and simulation.

use stackprint::oracle::{grid_equilibrium, verify};
use stackprint::{Instance, Product};

fn main() -> stackprint::Result<()> {
    let inst = Instance::new(
        vec![
            Product::uniform(10.0, 5.0, 1.0, 10.0)?,
            Product::uniform(20.0, 10.0, 5.0, 15.0)?,
        ],
        10.0,
        8.0,
    )?;
    for n in [20, 50, 100, 400] {
        let g = grid_equilibrium(&inst, n)?;
        println!("grid {n:4}: pi_M = {:.6} ({})", g.manufacturer_profit, g.case);
    }
    let report = verify(&inst, 400, 1_000_000, 7)?;
    println!("analytic pi_M = {:.6}, gap = {:.2e}", report.analytic_pi, report.abs_gap);
    println!(
        "retailer profit {:.4} vs simulated {:.4} ± {:.4}",
        report.analytic_pi_r, report.mc_mean, report.mc_stderr
    );
    println!("second-order conditions hold: {}", report.soc_ok);
    Ok(())
}
