//! The metric on tower cochains and partitions of unity.
//!
//! rho(a, b) sums 2^{-k} over the exhaustion stages where the
//! pullbacks disagree on the restricted nerve. Two cochains on the
//! 3-arc circle cover that differ exactly on one edge give 3/8 when
//! that edge first appears at stage two of three.

use cohox::cech::{canonical_map, cochain_metric, star_condition_check, uniform_weights, TowerCochain};
use cohox::complex::SimplicialMap;
use cohox::cover::{nerve, Cover, CoverTower};
use cohox::fpgroup::FpGroup;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let cover = Cover::circle_arcs(12, 3);
    // X_1 sees only arc 0; X_2 adds the point shared by arcs 0 and 2;
    // X_3 is the whole circle
    let tower = CoverTower::new(
        vec![cover.clone()],
        vec![],
        vec![
            [2].into(),
            [0, 2].into(),
            (0..12).collect(),
        ],
    )
    .unwrap();
    let z = FpGroup::free(1);
    // edges of the triangle nerve in order: {0,1}, {0,2}, {1,2}
    let a = TowerCochain {
        level: 0,
        degree: 1,
        values: vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)],
    };
    let b = TowerCochain {
        level: 0,
        degree: 1,
        values: vec![BigInt::from(0); 3],
    };
    let rho = cochain_metric(&a, &b, &tower, &z).unwrap();
    println!("rho(a, b) = {rho}");
    assert_eq!(rho, BigRational::new(BigInt::from(3), BigInt::from(8)));

    // metric axioms on a few cochains
    let c = TowerCochain {
        level: 0,
        degree: 1,
        values: vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)],
    };
    let ab = cochain_metric(&a, &b, &tower, &z).unwrap();
    let ba = cochain_metric(&b, &a, &tower, &z).unwrap();
    let ac = cochain_metric(&a, &c, &tower, &z).unwrap();
    let cb = cochain_metric(&c, &b, &tower, &z).unwrap();
    assert_eq!(ab, ba);
    assert!(ab <= ac.clone() + cb.clone());
    println!("symmetry and triangle inequality hold: {ab} <= {ac} + {cb}");

    // a partition of unity gives a canonical map into the nerve, and
    // equal weights satisfy the star condition for the identity
    let weights = uniform_weights(&cover);
    let bary = canonical_map(&cover, &weights).unwrap();
    println!("barycentric image of point 4: {:?}", bary[&4]);
    let id = SimplicialMap::identity(&nerve(&cover));
    let violations = star_condition_check(&weights, &id, &cover);
    println!("star condition violations: {}", violations.len());
    assert!(violations.is_empty());
}
