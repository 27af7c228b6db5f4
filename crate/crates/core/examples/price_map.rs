//! Manufacturer and retailer profit over a grid of retail prices.

use stackprint::sweeplab::{sweep, write_csv, SweepSpec};
use stackprint::{Instance, Product};

fn main() -> stackprint::Result<()> {
    let inst = Instance::new(
        vec![
            Product::uniform(50.0, 15.0, 10.0, 100.0)?,
            Product::uniform(100.0, 30.0, 20.0, 150.0)?,
        ],
        400.0,
        90.0,
    )?;
    let spec = SweepSpec::new("products[0].r", 20.0, 100.0, 5)
        .nested(SweepSpec::new("products[1].r", 40.0, 200.0, 5));
    let cells = sweep(&inst, &spec)?;
    print!("{}", write_csv(&cells)?);
    Ok(())
}
