//! Scaling both demands together: printing wins at moderate volume and loses
//! again once capacity is too small for the market.

use stackprint::sweeplab::{find_boundary, sweep, BoundaryKind, SweepSpec};
use stackprint::{Instance, Product};

fn main() -> stackprint::Result<()> {
    let inst = Instance::new(
        vec![
            Product::uniform(50.0, 15.0, 10.0, 40.0)?,
            Product::uniform(100.0, 30.0, 20.0, 60.0)?,
        ],
        400.0,
        100.0,
    )?;
    let param = "products[0].demand.upper,products[1].demand.upper*1.5";
    let cells = sweep(&inst, &SweepSpec::new(param, 10.0, 600.0, 591))?;
    let mut last = None;
    for c in &cells {
        let case = c.case();
        if case != last {
            if let Some(r) = case {
                println!("from U1 = {:6.1}: {r}", c.coords[0]);
            }
            last = case;
        }
    }
    let flip = find_boundary(&inst, param, BoundaryKind::Adoption, 10.0, 60.0)?;
    println!("printing first pays at U1 = {flip:.4}");
    let back = find_boundary(&inst, param, BoundaryKind::Adoption, 150.0, 600.0)?;
    println!("traditional production returns at U1 = {back:.4}");
    Ok(())
}
