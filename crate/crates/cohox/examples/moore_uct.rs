//! Moore spaces and the universal-coefficient pattern:
//! H^n(M(A,n); Z) = Hom(A, Z) and H^{n+1}(M(A,n); Z) = Ext^1(A, Z).

use cohox::fpgroup::FpGroup;
use cohox::hom_ext::{ext_group, hom_group};
use cohox::moore::{moore_filtration, moore_space, z_inverted_prime_presentation};
use num_bigint::BigInt;

fn main() {
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
        println!(
            "M({}, 2): H^2 = {}, H^3 = {}",
            a.canonical_name(),
            h2.canonical_name(),
            h3.canonical_name()
        );
        assert!(h2.isomorphic(&hom_group(a, &z).group));
        assert!(h3.isomorphic(&ext_group(a, &z)));
    }

    // filtration of a Z[1/2] truncation by leading generators: each
    // stage is Z and the inclusions multiply by 2
    let pres = z_inverted_prime_presentation(2, 4);
    let filt = moore_filtration(&pres, 2).unwrap();
    println!("k-sequence: {:?}", filt.k);
    for (m, g) in filt.groups.iter().enumerate() {
        println!("stage {}: {}", m + 1, g.canonical_name());
        assert_eq!(g.canonical_name(), "Z");
    }
    for inc in &filt.inclusions {
        let img = inc.apply_canonical(&[BigInt::from(1)]);
        assert!(img == vec![BigInt::from(2)] || img == vec![BigInt::from(-2)]);
    }
    println!("inclusions act as multiplication by 2 on Z");
}
