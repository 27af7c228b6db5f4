mod common;

use common::rel_close;
use proptest::prelude::*;
use stackprint::market::{
    benchmark_optimum, best_response_quantity, retailer_expected_profit, wholesale_for_quantity,
};
use stackprint::{DemandModel, Product};

fn demand() -> impl Strategy<Value = DemandModel> {
    prop_oneof![
        (1.0..500.0f64).prop_map(|u| DemandModel::uniform(u).unwrap()),
        // non-decreasing density keeps the failure rate increasing
        (5.0..50.0f64, proptest::array::uniform3(0.05..1.0f64)).prop_map(|(u, mut m)| {
            m.sort_by(f64::total_cmp);
            let total: f64 = m.iter().sum();
            let (f1, f2) = (m[0] / total, (m[0] + m[1]) / total);
            DemandModel::tabulated(&[(0.0, 0.0), (u, f1), (2.0 * u, f2), (3.0 * u, 1.0)]).unwrap()
        }),
    ]
}

fn product_with(d: DemandModel, r: f64) -> Product {
    Product::new(r, 0.5 * r, 0.5 * r, d).unwrap()
}

proptest! {
    #[test]
    fn uniform_optimum_closed_form(r in 1.0..500.0f64, t in 0.0..0.99f64, u in 1.0..1000.0f64) {
        let c = t * r;
        let p = Product::uniform(r, r, r, u).unwrap();
        let b = benchmark_optimum(c, &p);
        prop_assert!(!b.igfr_fallback);
        prop_assert!(rel_close(b.quantity, u * (1.0 - c / r) / 2.0, 1e-8));
        prop_assert!(rel_close(b.wholesale, (r + c) / 2.0, 1e-8));
        prop_assert!(rel_close(b.profit, u * (r - c).powi(2) / (4.0 * r), 1e-8));
    }

    #[test]
    fn best_response_is_optimal(d in demand(), r in 1.0..200.0f64, t in 0.01..0.99f64) {
        let p = product_with(d, r);
        let w = t * r;
        let u = p.demand.upper();
        let q = best_response_quantity(w, &p);
        let at = retailer_expected_profit(q, w, &p);
        let eps = 1e-3 * u;
        prop_assert!(at >= retailer_expected_profit((q - eps).max(0.0), w, &p));
        prop_assert!(at >= retailer_expected_profit((q + eps).min(u), w, &p));
        let grid_best = (0..1000)
            .map(|k| retailer_expected_profit(u * k as f64 / 999.0, w, &p))
            .fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(at >= grid_best - 1e-6);
    }

    #[test]
    fn manufacturer_profit_is_unimodal_in_w(d in demand(), r in 1.0..200.0f64, t in 0.0..0.9f64) {
        prop_assume!(d.is_igfr());
        let p = product_with(d, r);
        let c = t * r;
        let profits: Vec<f64> = (0..1000)
            .map(|k| {
                let w = c + (r - c) * k as f64 / 999.0;
                (w - c) * best_response_quantity(w, &p)
            })
            .collect();
        let tol = 1e-9 * profits.iter().cloned().fold(1.0, f64::max);
        let mut falling = false;
        for pair in profits.windows(2) {
            let step = pair[1] - pair[0];
            if step < -tol {
                falling = true;
            } else if step > tol {
                prop_assert!(!falling, "profit rises again after falling");
            }
        }
    }

    #[test]
    fn wholesale_inverts_best_response(d in demand(), r in 1.0..200.0f64, t in 0.0..=1.0f64) {
        let p = product_with(d, r);
        let w = t * r;
        let back = wholesale_for_quantity(best_response_quantity(w, &p), &p).unwrap();
        prop_assert!((back - w).abs() <= 1e-9 * r.max(1.0), "{w} -> {back}");
    }
}
