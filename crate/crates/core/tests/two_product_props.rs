mod common;

use common::{binding, rel_close, two_product};
use proptest::prelude::*;
use stackprint::multi_product::{equilibrium_n, solve_adoption_n};
use stackprint::oracle::{grid_equilibrium, soc_audit};
use stackprint::two_product::{
    capacity_gap, capacity_gap_squared_form, equilibrium_2, solve_adoption_2,
    solve_no_adoption_2, uniform_closed_form_2,
};
use stackprint::{EquilibriumSolution, Instance, Regime};

fn assert_same(a: &EquilibriumSolution, b: &EquilibriumSolution, tol: f64) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.case, b.case);
    for (x, y) in a.quantity.iter().zip(&b.quantity) {
        prop_assert!(rel_close(*x, *y, tol), "q {:?} vs {:?}", a.quantity, b.quantity);
    }
    for (x, y) in a.wholesale.iter().zip(&b.wholesale) {
        prop_assert!(rel_close(*x, *y, tol), "w {:?} vs {:?}", a.wholesale, b.wholesale);
    }
    prop_assert!(rel_close(a.manufacturer_profit, b.manufacturer_profit, tol));
    Ok(())
}

fn with_print_cost(inst: &Instance, i: usize, c: f64) -> Instance {
    let mut out = inst.clone();
    out.products[i].c_p = c;
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn equilibrium_matches_closed_forms(inst in two_product()) {
        let sol = equilibrium_2(&inst).unwrap();
        prop_assume!(!sol.corner);
        let closed = uniform_closed_form_2(&inst, sol.case).unwrap();
        assert_same(&sol, &closed, 1e-8)?;
    }

    #[test]
    fn capacity_gap_is_a_square(inst in binding(2)) {
        let gap = capacity_gap(&inst).unwrap();
        let square = capacity_gap_squared_form(&inst).unwrap();
        prop_assert!(gap >= -1e-9 * square.max(1.0));
        prop_assert!(rel_close(gap, square, 1e-9), "{gap} vs {square}");
    }

    #[test]
    fn general_solver_agrees_with_two_product_solver(inst in two_product()) {
        let a = equilibrium_2(&inst).unwrap();
        let b = equilibrium_n(&inst);
        prop_assert_eq!(a.adopted, b.adopted);
        assert_same(&a, &b, 1e-8)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn analytic_never_loses_to_grid(inst in two_product()) {
        let sol = equilibrium_2(&inst).unwrap();
        let grid = grid_equilibrium(&inst, 400).unwrap();
        prop_assert!(sol.manufacturer_profit >= grid.manufacturer_profit - 1e-4);
    }
}

proptest! {
    #[test]
    fn quantities_fall_and_prices_rise_with_print_cost(inst in two_product(), i in 0usize..2) {
        let sol = solve_adoption_2(&inst).unwrap();
        prop_assume!(!sol.corner && sol.quantity.iter().all(|&q| q > 1e-3));
        let r = inst.products[i].r;
        let c = inst.products[i].c_p;
        let h = 1e-5 * r;
        let up = solve_adoption_2(&with_print_cost(&inst, i, c + h)).unwrap();
        let down = solve_adoption_2(&with_print_cost(&inst, i, c - h)).unwrap();
        prop_assume!(up.case == sol.case && down.case == sol.case && !up.corner && !down.corner);
        prop_assert!(up.quantity[i] < down.quantity[i]);
        prop_assert!(up.wholesale[i] > down.wholesale[i]);
    }

    #[test]
    fn binding_solutions_conserve_capacity_and_are_maxima(inst in binding(2)) {
        let sol = solve_adoption_2(&inst).unwrap();
        prop_assert_eq!(sol.case, Regime::CapacityBound);
        prop_assert!((sol.total_quantity() - inst.capacity).abs() <= 1e-8);
        prop_assert!(soc_audit(&inst, &sol));
        let general = solve_adoption_n(&inst);
        prop_assert!((general.total_quantity() - inst.capacity).abs() <= 1e-8);
    }

    #[test]
    fn exact_ties_keep_traditional_production(inst in two_product()) {
        let mut free = inst.clone();
        free.fixed_cost = 0.0;
        let adopt = solve_adoption_2(&free).unwrap().manufacturer_profit;
        let traditional = solve_no_adoption_2(&free).unwrap().manufacturer_profit;
        if adopt > traditional {
            free.fixed_cost = adopt - traditional;
        }
        prop_assert_eq!(equilibrium_2(&free).unwrap().v(), 0);
        prop_assert_eq!(equilibrium_n(&free).v(), 0);
    }
}
