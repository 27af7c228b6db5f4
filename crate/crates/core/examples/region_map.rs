//! Two-dimensional region map over both print costs, written as CSV.
//!
//! Usage: `cargo run --example region_map [out.csv]`

use stackprint::sweeplab::{emit_csv, sweep, SweepSpec};
use stackprint::{Instance, Product, Regime};

fn main() -> stackprint::Result<()> {
    let inst = Instance::new(
        vec![
            Product::uniform(50.0, 15.0, 20.0, 100.0)?,
            Product::uniform(100.0, 30.0, 26.0, 150.0)?,
        ],
        0.0,
        100.0,
    )?;
    let spec = SweepSpec::new("products[0].c_p", 1.0, 50.0, 50)
        .nested(SweepSpec::new("products[1].c_p", 1.0, 100.0, 100));
    let cells = sweep(&inst, &spec)?;
    let count = |r: Regime| cells.iter().filter(|c| c.case() == Some(r)).count();
    println!(
        "{} cells: {} capacity-bound, {} unconstrained, {} traditional",
        cells.len(),
        count(Regime::CapacityBound),
        count(Regime::Unconstrained),
        count(Regime::NoAdoption)
    );
    let dearer = cells
        .iter()
        .filter(|c| c.coords[1] > 30.0 && c.case().is_some_and(Regime::adopted))
        .count();
    println!("{dearer} adoption cells print product 2 above its traditional cost");
    if let Some(path) = std::env::args().nth(1) {
        emit_csv(&cells, &path)?;
        println!("wrote {path}");
    }
    Ok(())
}
