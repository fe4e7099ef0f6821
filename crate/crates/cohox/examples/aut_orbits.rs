//! Orbits of Aut(A) acting on Ext^1(A, Z).
//!
//! For A = Z/4 the two automorphisms (x and 3x) split the four
//! extension classes into orbits {0}, {2}, {1, 3}.

use cohox::error::Budget;
use cohox::fpgroup::FpGroup;
use cohox::orbits::aut_orbits_on_ext;
use num_bigint::BigInt;

fn main() {
    let budget = Budget::default();
    for a in [
        FpGroup::cyclic(4),
        FpGroup::from_moduli(vec![BigInt::from(2), BigInt::from(2)]),
        FpGroup::cyclic(5),
    ] {
        let o = aut_orbits_on_ext(&a, budget).unwrap();
        let sizes: Vec<usize> = o.orbits.iter().map(|orb| orb.len()).collect();
        println!(
            "A = {}: Ext^1(A, Z) = {}, |Aut| = {}, orbit sizes {:?}",
            a.canonical_name(),
            o.ext.canonical_name(),
            o.automorphism_count,
            sizes
        );
    }

    let o = aut_orbits_on_ext(&FpGroup::cyclic(4), budget).unwrap();
    assert_eq!(o.orbits.len(), 3);
    let mut sizes: Vec<usize> = o.orbits.iter().map(|orb| orb.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 2]);
    println!("orbits of Ext^1(Z/4, Z): {:?}", o.orbits);
}
