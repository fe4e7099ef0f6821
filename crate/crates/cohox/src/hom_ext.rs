//! Hom and Ext groups of finitely presented abelian groups.
//!
//! Hom is assembled from the canonical decomposition (Hom of cyclic
//! pieces), Ext from a free resolution derived from the canonical
//! presentation. `ext_from_resolution` accepts any injective
//! presentation so resolution independence can be checked directly.

use crate::error::CohoxError;
use crate::fpgroup::{FpGroup, GroupHom};
use crate::matrix::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Hom(A, B) as a group, with an element <-> homomorphism decoder.
pub struct HomGroup {
    pub group: FpGroup,
    source: FpGroup,
    target: FpGroup,
    /// kept (source coord, target coord, generator multiplier, modulus)
    pairs: Vec<(usize, usize, BigInt, BigInt)>,
}

fn cyclic_hom(a: &BigInt, b: &BigInt) -> Option<(BigInt, BigInt)> {
    // returns (multiplier, modulus of the hom group); modulus 0 = Z
    if a.is_zero() {
        // Hom(Z, Z/b) = Z/b, Hom(Z, Z) = Z
        Some((BigInt::one(), b.clone()))
    } else if b.is_zero() {
        // Hom(Z/a, Z) = 0
        None
    } else {
        let g = a.gcd(b);
        Some((b / &g, g))
    }
}

pub fn hom_group(a: &FpGroup, b: &FpGroup) -> HomGroup {
    let mut pairs = Vec::new();
    let mut moduli = Vec::new();
    for (i, ai) in a.moduli().iter().enumerate() {
        for (j, bj) in b.moduli().iter().enumerate() {
            if let Some((mult, m)) = cyclic_hom(ai, bj) {
                pairs.push((i, j, mult, m.clone()));
                moduli.push(m);
            }
        }
    }
    HomGroup {
        group: FpGroup::from_moduli(moduli),
        source: a.clone(),
        target: b.clone(),
        pairs,
    }
}

impl HomGroup {
    /// Homomorphism represented by an element (given in the hom group's
    /// generator coordinates, one per kept cyclic pair).
    pub fn decode(&self, elem: &[BigInt]) -> GroupHom {
        assert_eq!(elem.len(), self.pairs.len());
        let mut cm = IntMatrix::zeros(self.target.canonical_rank(), self.source.canonical_rank());
        for ((i, j, mult, _), c) in self.pairs.iter().zip(elem) {
            cm.set(*j, *i, c * mult);
        }
        GroupHom::from_canonical_matrix(self.source.clone(), self.target.clone(), &cm)
            .expect("decoded hom is well-defined by construction")
    }

    /// Inverse of `decode` up to hom equality.
    pub fn encode(&self, h: &GroupHom) -> Vec<BigInt> {
        let cm = h.canonical_matrix();
        self.pairs
            .iter()
            .map(|(i, j, mult, m)| {
                // entry is c * mult modulo the target modulus; recover c
                let raw = cm.get(*j, *i);
                let bj = &self.target.moduli()[*j];
                let reduced = if bj.is_zero() {
                    raw.clone()
                } else {
                    let r = raw % bj;
                    if r < BigInt::zero() {
                        r + bj
                    } else {
                        r
                    }
                };
                let c = &reduced / mult;
                if m.is_zero() {
                    c
                } else {
                    c % m
                }
            })
            .collect()
    }
}

/// Ext^1(A, B) via the free resolution coming from the canonical
/// presentation of A.
pub fn ext_group(a: &FpGroup, b: &FpGroup) -> FpGroup {
    let torsion = a.torsion_coefficients().to_vec();
    let free = a.free_rank();
    // canonical presentation: Z^t -> Z^(t+f), injective diagonal
    let n = torsion.len() + free;
    let mut r = IntMatrix::zeros(n, torsion.len());
    for (i, d) in torsion.iter().enumerate() {
        r.set(i, i, d.clone());
    }
    ext_from_resolution(&r, b).expect("canonical presentation is injective")
}

/// Ext^1 computed from an arbitrary presentation matrix R (columns are
/// relators) which must be injective as a map Z^cols -> Z^rows, i.e. the
/// relators are independent.
pub fn ext_from_resolution(r: &IntMatrix, b: &FpGroup) -> Result<FpGroup, CohoxError> {
    let snf = smith_normal_form(r);
    if snf.rank() != r.cols() {
        return Err(CohoxError::NonInjectivePresentation);
    }
    // Hom(F0, B) = B^rows -> Hom(F1, B) = B^cols by precomposition
    let gb = b.generator_count();
    let hom_f0 = power_group(b, r.rows());
    let hom_f1 = power_group(b, r.cols());
    let m = r.transpose().kron_identity(gb);
    let h = GroupHom::new(hom_f0, hom_f1, m).expect("precomposition is well-defined");
    Ok(h.cokernel())
}

/// B^k with generator coordinates grouped by copy.
pub fn power_group(b: &FpGroup, k: usize) -> FpGroup {
    let gb = b.generator_count();
    let rb = b.relations();
    let mut rel = IntMatrix::zeros(gb * k, rb.cols() * k);
    for copy in 0..k {
        for r in 0..gb {
            for c in 0..rb.cols() {
                rel.set(copy * gb + r, copy * rb.cols() + c, rb.get(r, c).clone());
            }
        }
    }
    FpGroup::from_presentation(gb * k, rel)
}
