//! Ext^1 two ways: closed form from the cyclic decomposition, and the
//! symmetric 2-cocycle construction, with a Baer sum in the quotient.

use cohox::cocycle::cocycle_ext_group;
use cohox::error::Budget;
use cohox::fpgroup::FpGroup;
use cohox::hom_ext::ext_group;
use num_bigint::BigInt;

fn main() {
    let budget = Budget::default();
    let pairs = [
        (FpGroup::cyclic(2), FpGroup::cyclic(4)),
        (FpGroup::cyclic(6), FpGroup::cyclic(6)),
        (FpGroup::cyclic(2), FpGroup::cyclic(3)),
        (
            FpGroup::from_moduli(vec![BigInt::from(2), BigInt::from(2)]),
            FpGroup::cyclic(2),
        ),
    ];
    for (a, b) in &pairs {
        let closed = ext_group(a, b);
        let tables = cocycle_ext_group(a, b, budget).unwrap();
        println!(
            "Ext^1({}, {}) = {}  (cocycle construction: {})",
            a.canonical_name(),
            b.canonical_name(),
            closed.canonical_name(),
            tables.group.canonical_name()
        );
        assert!(closed.isomorphic(&tables.group));
    }

    // Baer sum in Ext^1(Z/2, Z/4) = Z/2: the nontrivial class is
    // 2-torsion
    let a = FpGroup::cyclic(2);
    let b = FpGroup::cyclic(4);
    let ext = cocycle_ext_group(&a, &b, budget).unwrap();
    let gen = ext.decode(&[BigInt::from(1)]);
    let sum = gen.baer_sum(&gen, &a);
    let class = ext.encode(&sum).unwrap();
    println!("Baer sum of the generator with itself: class {class:?}");
    assert_eq!(class, vec![BigInt::from(0)]);
}
