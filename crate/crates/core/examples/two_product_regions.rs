// Two products sharing one printer: how the equilibrium moves through the
// three regimes as the second product's print cost rises.

use stackprint::sweeplab::{find_boundary, BoundaryKind};
use stackprint::two_product::{adoption_capital_threshold, capacity_gap, equilibrium_2};
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
    println!("c_p2   case            pi_M      q1      q2    lambda");
    for c in [2.0, 5.0, 8.0, 10.0, 11.0, 12.0, 15.0, 18.0] {
        let mut at = inst.clone();
        at.products[1].c_p = c;
        let e = equilibrium_2(&at)?;
        println!(
            "{c:5.1}  {:<14} {:8.3} {:7.3} {:7.3} {:8.4}",
            e.case.to_string(),
            e.manufacturer_profit,
            e.quantity[0],
            e.quantity[1],
            e.shadow_price
        );
    }
    let cap = find_boundary(&inst, "products[1].c_p", BoundaryKind::Capacity, 5.0, 11.0)?;
    let adopt = find_boundary(&inst, "products[1].c_p", BoundaryKind::Adoption, 5.0, 18.0)?;
    println!("capacity binds below c_p2 = {cap:.4}");
    println!("printing is adopted below c_p2 = {adopt:.4}");
    println!("profit lost to the capacity limit at c_p2 = 5: {:.4}", capacity_gap(&inst)?);
    println!("largest K worth paying with slack capacity: {:.4}", adoption_capital_threshold(&inst)?);
    Ok(())
}
