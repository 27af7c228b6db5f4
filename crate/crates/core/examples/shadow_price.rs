// Three products on one printer: the shadow price of capacity found by
// bisection, checked against the uniform-demand closed form.

use stackprint::multi_product::{foc_quantity, solve_lagrange, three_product_uniform_closed_form};
use stackprint::{Instance, Product};

fn main() -> stackprint::Result<()> {
    let inst = Instance::new(
        vec![
            Product::uniform(50.0, 15.0, 16.0, 100.0)?,
            Product::uniform(100.0, 30.0, 31.0, 150.0)?,
            Product::uniform(150.0, 45.0, 20.0, 200.0)?,
        ],
        0.0,
        170.0,
    )?;
    println!("lambda  total quantity");
    for lambda in [0.0, 0.5, 1.0, 2.0, 5.0] {
        let total: f64 = inst.products.iter().map(|p| foc_quantity(p, lambda)).sum();
        println!("{lambda:6.2}  {total:10.4}");
    }
    let state = solve_lagrange(&inst);
    let closed = three_product_uniform_closed_form(&inst)?;
    println!("lambda* = {:.9}", state.lambda);
    println!("bisection   q = {:?}", state.q);
    println!("closed form q = {:?}", closed.quantity);
    let eq = stackprint::solve(&inst);
    println!("{} with profit {:.4}", eq.case, eq.manufacturer_profit);
    Ok(())
}
