//! Degree-p mapping telescopes and the Mittag-Leffler criterion.
//!
//! The truncation tower of the degree-p telescope of spheres is
//! (Z, x p); for p > 1 its image chain descends strictly, so lim^1
//! does not vanish. Towers of finite groups always stabilize.

use cohox::fpgroup::{FpGroup, GroupHom};
use cohox::matrix::IntMatrix;
use cohox::phantom::example_7_11_pipeline;
use cohox::telescope::degree_p_telescope;
use cohox::tower::{finite_cap, lim1_vanishes, GroupTower, Lim1Verdict};
use num_bigint::BigInt;

fn main() {
    let tel = degree_p_telescope(2, 2, 4).unwrap();
    let z = FpGroup::free(1);
    println!(
        "4-stage degree-2 telescope of S^2: H^2(total) = {}",
        tel.cohomology(&z, 2).group.canonical_name()
    );

    let report = example_7_11_pipeline(2, 2, 5).unwrap();
    println!(
        "truncation tower stages: {:?} (Z with x2 bonding: {})",
        report.stage_groups, report.tower_is_z_times_p
    );
    match &report.lim1 {
        Lim1Verdict::DoesNotVanish { witness, .. } => {
            println!("lim^1(Z, x2) does not vanish; descent witness {witness:?}");
        }
        other => panic!("expected non-vanishing, got {other:?}"),
    }

    // a finite tower: (Z/8, x2) stabilizes once the image hits 0
    let g = FpGroup::cyclic(8);
    let mut e = IntMatrix::zeros(1, 1);
    e.set(0, 0, BigInt::from(2));
    let endo = GroupHom::new(g.clone(), g.clone(), e).unwrap();
    let t = GroupTower::periodic(g, endo).unwrap();
    let cap = finite_cap(&t).unwrap();
    match lim1_vanishes(&t, cap) {
        Lim1Verdict::Vanishes { stabilized_at } => {
            println!("lim^1(Z/8, x2) vanishes; images stabilize at step {stabilized_at}");
        }
        other => panic!("expected vanishing, got {other:?}"),
    }
}
