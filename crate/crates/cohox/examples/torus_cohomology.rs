//! Integral cohomology of the 7-vertex torus and of sphere models,
//! plus invariance under barycentric subdivision.

use cohox::complex::{barycentric_subdivision, SimplicialComplex, SimplicialPair};
use cohox::fpgroup::FpGroup;
use cohox::simplicial::{cohomology, torus7};

fn show(name: &str, pair: &SimplicialPair, top: usize) {
    let z = FpGroup::free(1);
    let names: Vec<String> = (0..=top)
        .map(|n| cohomology(pair, &z, n).coh.group.canonical_name())
        .collect();
    println!("{name}: H^* = ({})", names.join(", "));
}

fn main() {
    let torus = SimplicialPair::absolute(torus7());
    show("torus (7 vertices)", &torus, 2);
    let z = FpGroup::free(1);
    assert_eq!(cohomology(&torus, &z, 0).coh.group.canonical_name(), "Z");
    assert_eq!(cohomology(&torus, &z, 1).coh.group.canonical_name(), "Z^2");
    assert_eq!(cohomology(&torus, &z, 2).coh.group.canonical_name(), "Z");

    for n in 1..=3 {
        let sphere = SimplicialPair::absolute(SimplicialComplex::sphere(n));
        show(&format!("sphere S^{n}"), &sphere, n);
        assert_eq!(cohomology(&sphere, &z, n).coh.group.canonical_name(), "Z");
    }

    // subdivision preserves cohomology
    let sub = barycentric_subdivision(&torus7());
    let sub_pair = SimplicialPair::absolute(sub.complex.clone());
    show("subdivided torus", &sub_pair, 2);
    for n in 0..=2 {
        assert!(cohomology(&sub_pair, &z, n)
            .coh
            .group
            .isomorphic(&cohomology(&torus, &z, n).coh.group));
    }

    // torsion shows up with finite coefficients: H^2(T^2; Z/2) = Z/2
    let z2 = FpGroup::cyclic(2);
    println!(
        "H^2(torus; Z/2) = {}",
        cohomology(&torus, &z2, 2).coh.group.canonical_name()
    );
}
