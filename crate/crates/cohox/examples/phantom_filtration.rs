//! Phantom filtrations over a covering system of the circle.
//!
//! Ph^0 is the intersection of the images of relative cohomology over
//! the exhaustion stages; once some stage covers the whole space the
//! filtration collapses to 0.

use cohox::cover::{Cover, CoverTower, RefinementMap};
use cohox::fpgroup::FpGroup;
use cohox::phantom::{cover_tower_system, phantom_filtration};
use std::collections::BTreeSet;

fn tower(exhaustion: Vec<BTreeSet<usize>>) -> CoverTower {
    let coarse = Cover::circle_arcs(12, 3);
    let fine = Cover::circle_arcs(12, 6);
    let assignment: Vec<usize> = (0..6)
        .map(|i| {
            (0..3)
                .find(|&j| fine.members[i].is_subset(&coarse.members[j]))
                .unwrap()
        })
        .collect();
    let r = RefinementMap::new(fine, coarse.clone(), assignment).unwrap();
    CoverTower::new(vec![coarse, r.fine.clone()], vec![r], exhaustion).unwrap()
}

fn main() {
    let z = FpGroup::free(1);

    // exhaustion ending in the full circle
    let t = tower(vec![(0..=4).collect(), (0..12).collect()]);
    let sys = cover_tower_system(&t, &z, 1).unwrap();
    println!("ambient H^1 = {}", sys.absolute.canonical_name());
    let ph = phantom_filtration(&sys, 2).unwrap();
    for (k, level) in ph.levels.iter().enumerate() {
        println!(
            "Ph^{k} = {} (trivial: {})",
            level.as_group().0.canonical_name(),
            level.is_trivial_subgroup()
        );
    }
    assert!(ph.levels[0].is_trivial_subgroup());

    // the chain always descends
    for w in ph.levels.windows(2) {
        assert!(w[1].subgroup_of(&w[0]).unwrap());
    }
    println!("descending chain verified");
}
