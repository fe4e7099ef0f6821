//! Homotopy classification of maps into sphere models: obstruction
//! cocycles, difference cochains, degrees, and the class chi.

use cohox::complex::{SimplicialComplex, SimplicialMap, SimplicialPair};
use cohox::obstruction::{
    chi_class, classify_maps, difference_cochain, is_extensible, obstruction_cocycle, SphereTarget,
};
use cohox::simplicial::degree;
use std::collections::BTreeMap;

fn main() {
    // identity on the boundary of the solid triangle does not extend
    // over the 2-cell: the obstruction is the winding number
    let disk = SimplicialComplex::simplex(2);
    let target = SphereTarget::new(1).unwrap();
    let f = SimplicialMap::identity(&disk.skeleton(1));
    let pair = SimplicialPair::absolute(disk);
    let c = obstruction_cocycle(&f, &pair, &target).unwrap();
    let (extensible, witnesses) = is_extensible(&c);
    println!(
        "disk boundary identity: obstruction values {:?}, extensible: {extensible}",
        c.values
    );
    assert!(!extensible);
    assert_eq!(witnesses.len(), 1);

    // on S^2 = bd Delta^3, identity and a reflection differ by degree 2
    let sphere = SimplicialComplex::sphere(2);
    let target2 = SphereTarget::new(2).unwrap();
    let id = SimplicialMap::identity(&sphere);
    let refl_vm: BTreeMap<usize, usize> = [(0, 1), (1, 0), (2, 2), (3, 3)].into();
    let refl = SimplicialMap::new(sphere.clone(), sphere.clone(), refl_vm).unwrap();
    println!(
        "deg(id) = {}, deg(reflection) = {}",
        degree(&id, 2).unwrap(),
        degree(&refl, 2).unwrap()
    );
    let spair = SimplicialPair::absolute(sphere.clone());
    let d = difference_cochain(&id, &refl, &spair, &target2).unwrap();
    println!("difference cochain value sum: {}", d.value_sum());
    assert_eq!(d.value_sum(), 2.into());

    // chi separates homotopy classes: [S^2, S^2] = H^2(S^2; Z) = Z
    let cl = classify_maps(&spair, &target2).unwrap();
    println!(
        "[S^2, S^2] = {} with {} exhibited representatives",
        cl.cohomology.coh.group.canonical_name(),
        cl.representatives.len()
    );
    assert_eq!(cl.cohomology.coh.group.canonical_name(), "Z");

    let (_, chi_id) = chi_class(&id, &spair, &target2).unwrap();
    let constant = SimplicialMap::constant(sphere.clone(), target2.model.clone(), 0).unwrap();
    let (_, chi_const) = chi_class(&constant, &spair, &target2).unwrap();
    println!("chi(id) = {chi_id:?}, chi(constant) = {chi_const:?}");
    assert_ne!(chi_id, chi_const);
    assert!(chi_const.iter().all(|v| v == &0.into()));
}
