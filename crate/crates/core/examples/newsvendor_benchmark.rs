//! Single-product newsvendor: retailer best response and the manufacturer's
//! optimal wholesale price for uniform and tabulated demand.

use stackprint::market::{benchmark_optimum, best_response_quantity, retailer_expected_profit};
use stackprint::{DemandModel, Product};

fn main() -> stackprint::Result<()> {
    let uniform = Product::uniform(50.0, 15.0, 15.0, 100.0)?;
    let skewed = Product::new(
        50.0,
        15.0,
        15.0,
        DemandModel::tabulated(&[(0.0, 0.0), (40.0, 0.2), (80.0, 0.8), (100.0, 1.0)])?,
    )?;

    for (name, p) in [("uniform", &uniform), ("tabulated", &skewed)] {
        let opt = benchmark_optimum(p.c_m, p);
        println!("{name}: igfr = {}", p.demand.is_igfr());
        println!("  w* = {:.4}, q* = {:.4}, manufacturer profit = {:.4}", opt.wholesale, opt.quantity, opt.profit);
        for w in [20.0, opt.wholesale, 45.0] {
            let q = best_response_quantity(w, p);
            println!(
                "  w = {w:7.3} -> retailer orders {q:8.4}, expects {:9.4}",
                retailer_expected_profit(q, w, p)
            );
        }
    }
    Ok(())
}
