//! Orbits of Aut(A) on Ext^1(A, Z) for finite A.
//!
//! For finite A with torsion coefficients a_1 | ... | a_t we have
//! Ext^1(A, Z) = Z/a_1 + ... + Z/a_t. An endomorphism of A with
//! canonical matrix F lifts over the diagonal resolution to F1 with
//! (F1)_ij = F_ij a_j / a_i, and the induced map on Ext is the
//! transpose of F1. Automorphisms are found by enumerating the
//! well-defined canonical matrices (entry (i,j) ranges over the
//! gcd(a_i, a_j) residues that make the map well-defined) and keeping
//! the bijective ones; the orbit partition of the Ext elements under
//! these maps is returned sorted.

use crate::error::{Budget, CohoxError};
use crate::fpgroup::FpGroup;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeSet;

pub struct AutOrbits {
    pub ext: FpGroup,
    /// Each orbit is a sorted list of canonical Ext elements; orbits are
    /// sorted by their smallest element.
    pub orbits: Vec<Vec<Vec<BigInt>>>,
    pub automorphism_count: usize,
}

pub fn aut_orbits_on_ext(a: &FpGroup, budget: Budget) -> Result<AutOrbits, CohoxError> {
    if !a.is_finite() {
        return Err(CohoxError::Validation {
            name: "aut_orbits_on_ext",
            detail: "group must be finite".into(),
        });
    }
    let torsion = a.torsion_coefficients().to_vec();
    let t = torsion.len();
    let ext = FpGroup::from_moduli(torsion.clone());

    // entry (i, j) has gcd(a_i, a_j) admissible residues
    let mut candidates = BigInt::from(1);
    for ai in &torsion {
        for aj in &torsion {
            candidates *= ai.gcd(aj);
        }
    }
    let cand_u64 = u64::try_from(&candidates).unwrap_or(u64::MAX);
    budget.check(cand_u64, "endomorphism candidates")?;

    // admissible values per entry: F_ij with a_i | F_ij a_j, i.e.
    // multiples of a_i / gcd(a_i, a_j) below a_i
    let mut entry_values: Vec<Vec<BigInt>> = Vec::with_capacity(t * t);
    for ai in &torsion {
        for aj in &torsion {
            let g = ai.gcd(aj);
            let step = ai / &g;
            let mut vals = Vec::new();
            let mut v = BigInt::zero();
            while &v < ai {
                vals.push(v.clone());
                v += &step;
            }
            entry_values.push(vals);
        }
    }

    let elements = a.elements().expect("finite");
    let order = elements.len();
    let ext_elements = ext.elements().expect("finite");

    // mixed-radix walk over all entry assignments
    let mut maps: Vec<IntMatrix> = Vec::new();
    let radices: Vec<usize> = entry_values.iter().map(|v| v.len()).collect();
    let mut idx = vec![0usize; t * t];
    'outer: loop {
        let mut f = IntMatrix::zeros(t, t);
        for i in 0..t {
            for j in 0..t {
                f.set(i, j, entry_values[i * t + j][idx[i * t + j]].clone());
            }
        }
        // bijective on elements <=> automorphism
        let image: BTreeSet<Vec<BigInt>> = elements
            .iter()
            .map(|e| a.reduce_canonical(&f.mul_vec(e)))
            .collect();
        if image.len() == order {
            maps.push(f.transpose());
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                break 'outer;
            }
            idx[k] += 1;
            if idx[k] < radices[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }

    // orbit partition of Ext elements under the transposed lifts
    let mut remaining: BTreeSet<Vec<BigInt>> = ext_elements.into_iter().collect();
    let mut orbits = Vec::new();
    while let Some(seed) = remaining.iter().next().cloned() {
        let mut orbit = BTreeSet::new();
        let mut frontier = vec![seed];
        while let Some(x) = frontier.pop() {
            if !orbit.insert(x.clone()) {
                continue;
            }
            for m in &maps {
                frontier.push(ext.reduce_canonical(&m.mul_vec(&x)));
            }
        }
        for x in &orbit {
            remaining.remove(x);
        }
        orbits.push(orbit.into_iter().collect::<Vec<_>>());
    }
    orbits.sort();

    Ok(AutOrbits {
        ext,
        orbits,
        automorphism_count: maps.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_has_three_orbits() {
        let r = aut_orbits_on_ext(&FpGroup::cyclic(4), Budget::default()).unwrap();
        assert_eq!(r.ext.canonical_name(), "Z/4");
        assert_eq!(r.automorphism_count, 2); // x -> x and x -> 3x
        let sizes: Vec<usize> = r.orbits.iter().map(|o| o.len()).collect();
        assert_eq!(r.orbits.len(), 3);
        assert_eq!(
            {
                let mut s = sizes.clone();
                s.sort();
                s
            },
            vec![1, 1, 2]
        );
        // {0}, {1,3}, {2}
        assert!(r
            .orbits
            .iter()
            .any(|o| *o == vec![vec![BigInt::from(1)], vec![BigInt::from(3)]]));
    }

    #[test]
    fn z2_z2_orbits() {
        // Aut(Z/2 + Z/2) = GL_2(F_2) acts transitively on nonzero vectors
        let a = FpGroup::from_moduli(vec![BigInt::from(2), BigInt::from(2)]);
        let r = aut_orbits_on_ext(&a, Budget::default()).unwrap();
        assert_eq!(r.automorphism_count, 6);
        assert_eq!(r.orbits.len(), 2);
        let sizes: Vec<usize> = r.orbits.iter().map(|o| o.len()).collect();
        assert!(sizes.contains(&1) && sizes.contains(&3));
    }

    #[test]
    fn prime_cyclic_two_orbits() {
        let r = aut_orbits_on_ext(&FpGroup::cyclic(5), Budget::default()).unwrap();
        assert_eq!(r.automorphism_count, 4);
        assert_eq!(r.orbits.len(), 2);
    }

    #[test]
    fn trivial_group() {
        let r = aut_orbits_on_ext(&FpGroup::trivial(), Budget::default()).unwrap();
        assert_eq!(r.orbits.len(), 1); // just the zero class
    }

    #[test]
    fn budget_respected() {
        let a = FpGroup::from_moduli(vec![BigInt::from(12), BigInt::from(12)]);
        assert!(matches!(
            aut_orbits_on_ext(&a, Budget(10)),
            Err(CohoxError::BudgetExceeded { .. })
        ));
    }
}
