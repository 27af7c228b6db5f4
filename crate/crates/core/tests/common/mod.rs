#![allow(dead_code)]

use proptest::prelude::*;
use stackprint::{Instance, Product};

pub fn reference_pair(c_p2: f64) -> Instance {
    Instance::new(
        vec![
            Product::uniform(10.0, 5.0, 1.0, 10.0).unwrap(),
            Product::uniform(20.0, 10.0, c_p2, 15.0).unwrap(),
        ],
        10.0,
        8.0,
    )
    .unwrap()
}

pub fn offset_pair(c_p2: f64) -> Instance {
    Instance::new(
        vec![
            Product::uniform(50.0, 15.0, 20.0, 100.0).unwrap(),
            Product::uniform(100.0, 30.0, c_p2, 150.0).unwrap(),
        ],
        0.0,
        100.0,
    )
    .unwrap()
}

pub fn scale_pair(u1: f64) -> Instance {
    Instance::new(
        vec![
            Product::uniform(50.0, 15.0, 10.0, u1).unwrap(),
            Product::uniform(100.0, 30.0, 20.0, 1.5 * u1).unwrap(),
        ],
        400.0,
        100.0,
    )
    .unwrap()
}

pub fn three_products(c_p3: f64) -> Instance {
    Instance::new(
        vec![
            Product::uniform(50.0, 15.0, 16.0, 100.0).unwrap(),
            Product::uniform(100.0, 30.0, 31.0, 150.0).unwrap(),
            Product::uniform(150.0, 45.0, c_p3, 200.0).unwrap(),
        ],
        0.0,
        170.0,
    )
    .unwrap()
}

/// Slack-capacity print quantity of a uniform product.
pub fn slack_q(r: f64, c_p: f64, u: f64) -> f64 {
    0.5 * u * (1.0 - c_p / r)
}

/// A uniform product with costs given as fractions of the retail price.
pub fn product() -> impl Strategy<Value = Product> {
    (10.0..200.0f64, 0.1..0.8f64, 0.05..0.8f64, 10.0..300.0f64).prop_map(|(r, m, p, u)| {
        Product::uniform(r, m * r, p * r, u).unwrap()
    })
}

/// Two uniform products, `K` in a range that makes every regime reachable and
/// `Q` between a fifth and 1.3 times the slack-capacity total.
pub fn two_product() -> impl Strategy<Value = Instance> {
    products(2)
}

/// Random instances whose adoption plan binds capacity.
pub fn binding(n: usize) -> impl Strategy<Value = Instance> {
    (proptest::collection::vec(product(), n), 0.1..0.95f64).prop_map(|(ps, frac)| {
        let total: f64 = ps.iter().map(|p| slack_q(p.r, p.c_p, p.demand.upper())).sum();
        Instance::new(ps, 0.0, frac * total).unwrap()
    })
}

pub fn products(n: usize) -> impl Strategy<Value = Instance> {
    (proptest::collection::vec(product(), n), 0.2..1.3f64, 0.0..1.0f64).prop_map(
        |(ps, frac, k)| {
            let total: f64 = ps.iter().map(|p| slack_q(p.r, p.c_p, p.demand.upper())).sum();
            let scale: f64 = ps.iter().map(|p| p.r * p.demand.upper()).sum();
            Instance::new(ps, k * 0.1 * scale, frac * total).unwrap()
        },
    )
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
