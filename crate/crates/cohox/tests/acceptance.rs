//! End-to-end acceptance checks. Each test prints one pass/fail line
//! (visible with --nocapture) and enforces its own wall-clock budget.

use cohox::cech::{cech_cohomology_truncated, cochain_metric, TowerCochain};
use cohox::cocycle::cocycle_ext_group;
use cohox::complex::{SimplicialComplex, SimplicialMap, SimplicialPair};
use cohox::cover::{nerve, nerve_map, Cover, CoverTower, RefinementMap};
use cohox::error::Budget;
use cohox::fpgroup::FpGroup;
use cohox::hom_ext::{ext_group, hom_group};
use cohox::moore::moore_space;
use cohox::obstruction::{
    chi_class, classify_maps, difference_cochain, obstruction_cocycle, ObstructionCochain,
    SphereTarget,
};
use cohox::orbits::aut_orbits_on_ext;
use cohox::phantom::{
    cover_tower_system, example_7_11_pipeline, phantom_filtration, telescope_system,
};
use cohox::simplicial::{cohomology, induced_map, torus7};
use cohox::telescope::degree_p_telescope;
use cohox::tower::{finite_cap, lim1_vanishes, GroupTower, Lim1Verdict};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

fn check(label: &str, budget: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let ok = outcome.is_ok() && elapsed <= budget;
    println!(
        "{label}: {} ({elapsed:.2?} of {budget:.2?})",
        if ok { "pass" } else { "fail" }
    );
    if let Err(e) = outcome {
        std::panic::resume_unwind(e);
    }
    assert!(elapsed <= budget, "{label} exceeded its time budget");
}

#[test]
fn criterion_01_ext_cross_validation() {
    check("1 Ext cross-validation", Duration::from_secs(10), || {
        let z2z2 = FpGroup::from_moduli(vec![BigInt::from(2), BigInt::from(2)]);
        let set = [
            FpGroup::cyclic(2),
            FpGroup::cyclic(3),
            FpGroup::cyclic(4),
            FpGroup::cyclic(6),
            z2z2,
        ];
        let budget = Budget::default();
        for a in &set {
            for b in &set {
                let closed = ext_group(a, b);
                let tables = cocycle_ext_group(a, b, budget).unwrap();
                assert!(
                    closed.isomorphic(&tables.group),
                    "Ext({}, {}): {} vs {}",
                    a.canonical_name(),
                    b.canonical_name(),
                    closed.canonical_name(),
                    tables.group.canonical_name()
                );
            }
        }
    });
}

/// Coboundary of a degree-k relative cochain, evaluated on a
/// (k+1)-cell by the alternating face sum.
fn delta_value(c: &ObstructionCochain, cell: &[usize]) -> BigInt {
    let table: BTreeMap<&[usize], &BigInt> = c
        .cells
        .iter()
        .map(|s| s.as_slice())
        .zip(&c.values)
        .collect();
    let mut total = BigInt::from(0);
    for i in 0..cell.len() {
        let mut face = cell.to_vec();
        face.remove(i);
        let v = table.get(face.as_slice()).copied().cloned().unwrap_or_default();
        if i % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    total
}

#[test]
fn criterion_02_obstruction_identities() {
    check("2 obstruction identities", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1usize, 2] {
            let source = SimplicialComplex::simplex(n + 2);
            let pair = SimplicialPair::absolute(source.clone());
            let target = SphereTarget::new(n).unwrap();
            let model_verts = target.model.vertices();
            let random_map = |rng: &mut ChaCha8Rng| {
                let vm: BTreeMap<usize, usize> = source
                    .vertices()
                    .into_iter()
                    .map(|v| (v, model_verts[rng.gen_range(0..model_verts.len())]))
                    .collect();
                // any vertex map into bd Delta^{n+1} is simplicial:
                // every proper vertex subset spans a simplex
                SimplicialMap::new(source.skeleton(n), target.model.clone(), vm).unwrap()
            };
            for _ in 0..100 {
                let f = random_map(&mut rng);
                let g = random_map(&mut rng);
                let cf = obstruction_cocycle(&f, &pair, &target).unwrap();
                let cg = obstruction_cocycle(&g, &pair, &target).unwrap();
                // delta c = 0
                for cell in source.simplices_of_dim(n + 2) {
                    assert_eq!(delta_value(&cf, &cell), BigInt::from(0));
                }
                // delta d = c(f) - c(g)
                let d = difference_cochain(&f, &g, &pair, &target).unwrap();
                let ctable: BTreeMap<&[usize], (&BigInt, &BigInt)> = cf
                    .cells
                    .iter()
                    .map(|s| s.as_slice())
                    .zip(cf.values.iter().zip(&cg.values))
                    .collect();
                for cell in source.simplices_of_dim(n + 1) {
                    let (vf, vg) = ctable[cell.as_slice()];
                    assert_eq!(delta_value(&d, &cell), vf - vg);
                }
            }
        }
    });
}

#[test]
fn criterion_03_hopf_classification() {
    check("3 Hopf classification", Duration::from_secs(5), || {
        let target = SphereTarget::new(2).unwrap();
        for complex in [torus7(), SimplicialComplex::sphere(2)] {
            let pair = SimplicialPair::absolute(complex);
            let cl = classify_maps(&pair, &target).unwrap();
            assert_eq!(cl.cohomology.coh.group.canonical_name(), "Z");
        }
        let sphere = SimplicialComplex::sphere(2);
        let pair = SimplicialPair::absolute(sphere.clone());
        let id = SimplicialMap::identity(&sphere);
        let constant = SimplicialMap::constant(sphere.clone(), target.model.clone(), 0).unwrap();
        let (h, chi_id) = chi_class(&id, &pair, &target).unwrap();
        let (_, chi_const) = chi_class(&constant, &pair, &target).unwrap();
        assert_eq!(h.coh.group.canonical_name(), "Z");
        assert!(chi_id[0] == BigInt::from(1) || chi_id[0] == BigInt::from(-1));
        assert_eq!(chi_const, vec![BigInt::from(0)]);
    });
}

fn circle_tower(exhaustion: Vec<std::collections::BTreeSet<usize>>) -> CoverTower {
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

#[test]
fn criterion_04_cech_circle() {
    check("4 Cech circle covers", Duration::from_secs(5), || {
        let coarse = Cover::circle_arcs(12, 3);
        assert_eq!(nerve(&coarse), SimplicialComplex::sphere(1));
        let z = FpGroup::free(1);
        let tri = SimplicialPair::absolute(nerve(&coarse));
        assert_eq!(cohomology(&tri, &z, 1).coh.group.canonical_name(), "Z");

        let t = circle_tower(vec![(0..12).collect()]);
        let f = nerve_map(&t.refinements[0]).unwrap();
        let hex = SimplicialPair::absolute(f.source.clone());
        let induced = induced_map(&f, &hex, &tri, &z, 1).unwrap();
        // iso on H^1 = Z: the canonical matrix is a unit
        let m = induced.canonical_matrix();
        assert!(m.get(0, 0) == &BigInt::from(1) || m.get(0, 0) == &BigInt::from(-1));
        let sys = cech_cohomology_truncated(&t, &z, 1).unwrap();
        assert_eq!(sys.colimit.canonical_name(), "Z");
    });
}

#[test]
fn criterion_05_moore_uct() {
    check("5 Moore spaces / UCT", Duration::from_secs(5), || {
        let z = FpGroup::free(1);
        let groups = [
            FpGroup::free(1),
            FpGroup::cyclic(6),
            FpGroup::from_moduli(vec![BigInt::from(0), BigInt::from(4)]),
        ];
        for a in &groups {
            let m = moore_space(a, 2).unwrap();
            let h2 = m.complex.with_coefficients(&z).cohomology(2).group;
            let h3 = m.complex.with_coefficients(&z).cohomology(3).group;
            assert!(h2.isomorphic(&hom_group(a, &z).group));
            assert!(h3.isomorphic(&ext_group(a, &z)));
        }
        assert_eq!(ext_group(&FpGroup::cyclic(6), &z).canonical_name(), "Z/6");
    });
}

#[test]
fn criterion_06_telescope_lim1() {
    check("6 telescope lim^1", Duration::from_secs(5), || {
        let rep = example_7_11_pipeline(2, 2, 5).unwrap();
        assert!(rep.tower_is_z_times_p);
        match rep.lim1 {
            Lim1Verdict::DoesNotVanish { witness, .. } => assert!(!witness.is_empty()),
            other => panic!("expected strict descent certificate, got {other:?}"),
        }
        // towers of finite groups always vanish
        for (order, mult) in [(8u64, 2i64), (12, 3), (9, 0), (5, 1)] {
            let g = FpGroup::cyclic(order);
            let mut e = cohox::matrix::IntMatrix::zeros(1, 1);
            e.set(0, 0, BigInt::from(mult));
            let endo = cohox::fpgroup::GroupHom::new(g.clone(), g.clone(), e).unwrap();
            let t = GroupTower::periodic(g, endo).unwrap();
            let cap = finite_cap(&t).unwrap();
            assert!(matches!(lim1_vanishes(&t, cap), Lim1Verdict::Vanishes { .. }));
        }
    });
}

#[test]
fn criterion_07_phantom_filtration() {
    check("7 phantom filtration", Duration::from_secs(10), || {
        let z = FpGroup::free(1);
        // a full-space exhaustion stage forces Ph^0 = 0
        let t = circle_tower(vec![(0..=4).collect(), (0..12).collect()]);
        let sys = cover_tower_system(&t, &z, 1).unwrap();
        let ph = phantom_filtration(&sys, 2).unwrap();
        assert!(ph.levels[0].is_trivial_subgroup());
        for w in ph.levels.windows(2) {
            assert!(w[1].subgroup_of(&w[0]).unwrap());
        }
        // same statement on a telescope exhausted by its truncations
        let tel = degree_p_telescope(2, 2, 3).unwrap();
        let tsys = telescope_system(&tel, &z, 2, &[1, 2, 3]).unwrap();
        let tph = phantom_filtration(&tsys, 2).unwrap();
        assert!(tph.levels[0].is_trivial_subgroup());
        for w in tph.levels.windows(2) {
            assert!(w[1].subgroup_of(&w[0]).unwrap());
        }
    });
}

#[test]
fn criterion_08_aut_orbits() {
    check("8 automorphism orbits", Duration::from_secs(1), || {
        let o = aut_orbits_on_ext(&FpGroup::cyclic(4), Budget::default()).unwrap();
        assert_eq!(o.orbits.len(), 3);
        let mut sizes: Vec<usize> = o.orbits.iter().map(|orb| orb.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2]);
    });
}

#[test]
fn criterion_09_cochain_metric() {
    check("9 cochain metric", Duration::from_secs(1), || {
        let cover = Cover::circle_arcs(12, 3);
        let tower = CoverTower::new(
            vec![cover],
            vec![],
            vec![[2].into(), [0, 2].into(), (0..12).collect()],
        )
        .unwrap();
        let z = FpGroup::free(1);
        let mk = |values: [i64; 3]| TowerCochain {
            level: 0,
            degree: 1,
            values: values.iter().map(|&v| BigInt::from(v)).collect(),
        };
        // worked example: disagreement first appears at stage 2 of 3
        let a = mk([0, 1, 0]);
        let b = mk([0, 0, 0]);
        let rho = cochain_metric(&a, &b, &tower, &z).unwrap();
        assert_eq!(rho, BigRational::new(BigInt::from(3), BigInt::from(8)));
        // symmetry and triangle inequality over a small sample
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sample: Vec<TowerCochain> = (0..6)
            .map(|_| mk([rng.gen_range(-2..3), rng.gen_range(-2..3), rng.gen_range(-2..3)]))
            .collect();
        for x in &sample {
            assert_eq!(cochain_metric(x, x, &tower, &z).unwrap(), BigRational::from_integer(0.into()));
            for y in &sample {
                let xy = cochain_metric(x, y, &tower, &z).unwrap();
                assert_eq!(xy, cochain_metric(y, x, &tower, &z).unwrap());
                for w in &sample {
                    let xw = cochain_metric(x, w, &tower, &z).unwrap();
                    let wy = cochain_metric(w, y, &tower, &z).unwrap();
                    assert!(xy <= xw + wy);
                }
            }
        }
    });
}

#[test]
fn criterion_10_determinism_robustness() {
    check("10 determinism & robustness", Duration::from_secs(300), || {
        // corpus green on a fresh checkout
        let corpus = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        let (out, code) = cohox::cli::run([
            "cohox".to_string(),
            "corpus".to_string(),
            "--dir".to_string(),
            corpus.to_string_lossy().to_string(),
        ]);
        assert_eq!(code, 0, "corpus run failed:\n{out}");
        // identical inputs give byte-identical reports
        let args = ["cohox", "ext", "--a", "Z/6", "--b", "Z"];
        let (r1, c1) = cohox::cli::run(args);
        let (r2, c2) = cohox::cli::run(args);
        assert_eq!((r1.as_str(), c1), (r2.as_str(), c2));
        assert!(r1.contains("canonical=Z/6"));

        // fuzz: 10^4 malformed inputs never crash; exit codes stay in
        // contract
        let dir = std::env::temp_dir().join("cohox_fuzz");
        std::fs::create_dir_all(&dir).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let headers = [
            "", "scomplex v1", "smap v1", "cover v1", "tower v1", "gtower v1", "intmatrix v1",
            "fpgroup v1", "scomplex v2", "garbage",
        ];
        let charset: Vec<char> = " \n\t0123456789-xyzUv:->.#".chars().collect();
        let commands: [&[&str]; 6] = [
            &["cohomology", "--complex", "FILE", "--degree", "1"],
            &["nerve", "--cover", "FILE"],
            &["snf", "--matrix", "FILE"],
            &["lim1", "--tower", "FILE"],
            &["cech", "--tower", "FILE", "--degree", "1"],
            &["obstruct", "--complex", "FILE", "--map", "FILE", "--n", "1"],
        ];
        let file = dir.join("input.txt");
        for i in 0..10_000 {
            let mut text = String::from(headers[rng.gen_range(0..headers.len())]);
            text.push('\n');
            for _ in 0..rng.gen_range(0..80) {
                text.push(charset[rng.gen_range(0..charset.len())]);
            }
            std::fs::write(&file, &text).unwrap();
            let cmd = commands[rng.gen_range(0..commands.len())];
            let argv: Vec<String> = std::iter::once("cohox".to_string())
                .chain(cmd.iter().map(|a| {
                    if *a == "FILE" {
                        file.to_string_lossy().to_string()
                    } else {
                        a.to_string()
                    }
                }))
                .collect();
            let (_, code) = cohox::cli::run(argv);
            assert!(
                code == 0 || code == 2 || code == 3,
                "fuzz case {i} returned exit code {code}"
            );
        }
    });
}
