//! Circle covers: nerves, refinement, and truncated Cech cohomology.
//!
//! Three arcs covering twelve circle points give a triangle nerve; six
//! arcs give a hexagon. The refinement-induced map on H^1 is an
//! isomorphism, so the two-level colimit is Z.

use cohox::cech::cech_cohomology_truncated;
use cohox::cover::{nerve, nerve_map, Cover, CoverTower, RefinementMap};
use cohox::fpgroup::FpGroup;

fn main() {
    let coarse = Cover::circle_arcs(12, 3);
    let fine = Cover::circle_arcs(12, 6);

    let tri = nerve(&coarse);
    let hex = nerve(&fine);
    println!(
        "3-arc nerve: {} vertices, {} edges; 6-arc nerve: {} vertices, {} edges",
        tri.simplices_of_dim(0).len(),
        tri.simplices_of_dim(1).len(),
        hex.simplices_of_dim(0).len(),
        hex.simplices_of_dim(1).len()
    );
    assert_eq!(tri.simplices_of_dim(1).len(), 3);
    assert_eq!(hex.simplices_of_dim(1).len(), 6);

    // each fine arc sits inside a coarse arc
    let assignment: Vec<usize> = (0..6)
        .map(|i| {
            (0..3)
                .find(|&j| fine.members[i].is_subset(&coarse.members[j]))
                .unwrap()
        })
        .collect();
    let refinement = RefinementMap::new(fine, coarse.clone(), assignment).unwrap();
    let simp = nerve_map(&refinement).unwrap();
    println!(
        "refinement induces hexagon -> triangle on {} vertices",
        simp.vertex_map().len()
    );

    let tower = CoverTower::new(
        vec![coarse, refinement.fine.clone()],
        vec![refinement],
        vec![(0..12).collect()],
    )
    .unwrap();
    let z = FpGroup::free(1);
    let sys = cech_cohomology_truncated(&tower, &z, 1).unwrap();
    for (k, lvl) in sys.levels.iter().enumerate() {
        println!("H^1 at level {k}: {}", lvl.coh.group.canonical_name());
    }
    println!("colimit: {}", sys.colimit.canonical_name());
    assert_eq!(sys.colimit.canonical_name(), "Z");
}
