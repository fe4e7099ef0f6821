//! Cochain complexes over Z with finitely presented coefficient
//! groups.
//!
//! A complex is given by per-degree cell counts and integer cell
//! matrices D_n (rows indexed by (n+1)-cells, columns by n-cells).
//! With coefficients in G the degree-n cochain group is G^(cells_n) in
//! generator coordinates, index = cell * g + component, and the
//! coboundary is D_n tensor id_G. Cohomology in each degree is a
//! kernel-mod-image subquotient with an explicit cocycle decoder.

use crate::error::CohoxError;
use crate::fpgroup::{FpGroup, GroupHom, Subgroup};
use crate::matrix::IntMatrix;
use crate::subquotient::SubQuotient;
use num_bigint::BigInt;

#[derive(Clone, Debug)]
pub struct ZCochainComplex {
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
}

impl ZCochainComplex {
    /// diffs[n] maps degree n to degree n+1 and must have shape
    /// ranks[n+1] x ranks[n]; consecutive differentials must compose
    /// to zero.
    pub fn new(ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self, CohoxError> {
        if diffs.len() + 1 != ranks.len().max(1) {
            return Err(CohoxError::Validation {
                name: "cochain_complex",
                detail: "need one differential per consecutive degree pair".into(),
            });
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[n + 1] || d.cols() != ranks[n] {
                return Err(CohoxError::Validation {
                    name: "cochain_complex",
                    detail: format!("differential {n} has the wrong shape"),
                });
            }
        }
        for n in 0..diffs.len().saturating_sub(1) {
            if !diffs[n + 1].mul(&diffs[n]).is_zero() {
                return Err(CohoxError::Validation {
                    name: "cochain_complex",
                    detail: format!("differentials {n} and {} do not compose to zero", n + 1),
                });
            }
        }
        Ok(ZCochainComplex { ranks, diffs })
    }

    pub fn zero() -> Self {
        ZCochainComplex {
            ranks: vec![],
            diffs: vec![],
        }
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// Cell differential out of degree n (zero matrix beyond range).
    pub fn diff(&self, n: usize) -> IntMatrix {
        self.diffs
            .get(n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.rank(n + 1), self.rank(n)))
    }

    pub fn with_coefficients(&self, g: &FpGroup) -> CochainComplexFp {
        CochainComplexFp {
            coeff: g.clone(),
            base: self.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CochainComplexFp {
    pub coeff: FpGroup,
    pub base: ZCochainComplex,
}

impl CochainComplexFp {
    /// G^(cells_n), generator coordinates grouped by cell.
    pub fn group(&self, n: usize) -> FpGroup {
        let moduli: Vec<BigInt> = (0..self.base.rank(n))
            .flat_map(|_| self.coeff.moduli().to_vec())
            .collect();
        FpGroup::from_moduli(moduli)
    }

    pub fn delta(&self, n: usize) -> GroupHom {
        let g = self.coeff.canonical_rank();
        let m = self.base.diff(n).kron_identity(g);
        GroupHom::new(self.group(n), self.group(n + 1), m)
            .expect("cellwise coboundary is well-defined")
    }

    pub fn cohomology(&self, n: usize) -> Cohomology {
        let kernel = self.delta(n).kernel();
        let image = if n == 0 {
            Subgroup::trivial(self.group(0))
        } else {
            self.delta(n - 1).image()
        };
        let sq = SubQuotient::new(kernel, &image)
            .expect("coboundary squares to zero, so the image lies in the kernel");
        Cohomology {
            group: sq.group.clone(),
            degree: n,
            cells: self.base.rank(n),
            components: self.coeff.canonical_rank(),
            sq,
        }
    }
}

/// Cohomology in one degree, with cocycle representatives.
pub struct Cohomology {
    pub group: FpGroup,
    pub degree: usize,
    pub cells: usize,
    pub components: usize,
    sq: SubQuotient,
}

impl Cohomology {
    /// Representative cocycle of a class, as a cochain vector indexed
    /// by cell * components + component.
    pub fn decode(&self, class: &[BigInt]) -> Vec<BigInt> {
        self.sq.decode(class)
    }

    /// Class of a cocycle; None if the cochain is not a cocycle.
    pub fn encode(&self, cochain: &[BigInt]) -> Option<Vec<BigInt>> {
        self.sq.encode(cochain)
    }

    pub fn generator_cocycles(&self) -> Vec<Vec<BigInt>> {
        self.sq.generator_representatives()
    }

    pub fn subquotient(&self) -> &SubQuotient {
        &self.sq
    }
}

/// Chain-map check for a family of cell matrices mats[n] (target cells
/// x source cells) between two complexes: D_tgt mats[n] = mats[n+1]
/// D_src for all degrees.
pub fn is_chain_map(
    mats: &[IntMatrix],
    src: &ZCochainComplex,
    tgt: &ZCochainComplex,
) -> bool {
    let degrees = src.ranks.len().max(tgt.ranks.len());
    let mat = |n: usize| -> IntMatrix {
        mats.get(n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(tgt.rank(n), src.rank(n)))
    };
    for n in 0..degrees {
        let lhs = tgt.diff(n).mul(&mat(n));
        let rhs = mat(n + 1).mul(&src.diff(n));
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Map induced on degree-n cohomology by a cell matrix (target cells x
/// source cells) that carries cocycles to cocycles.
pub fn induced_on_cohomology(
    mat: &IntMatrix,
    src: &Cohomology,
    tgt: &Cohomology,
) -> Result<GroupHom, CohoxError> {
    let g = src.components;
    let big = mat.kron_identity(g);
    let mut cols = Vec::new();
    for rep in src.generator_cocycles() {
        let image = big.mul_vec(&rep);
        let class = tgt.encode(&image).ok_or(CohoxError::Validation {
            name: "induced_map",
            detail: "cell matrix does not carry cocycles to cocycles".into(),
        })?;
        cols.push(class);
    }
    let cm = IntMatrix::from_columns(tgt.group.canonical_rank(), cols);
    GroupHom::from_canonical_matrix(src.group.clone(), tgt.group.clone(), &cm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> ZCochainComplex {
        // one edge {0,1}: ranks (2, 1), d0 = (-1 1)
        ZCochainComplex::new(
            vec![2, 1],
            vec![IntMatrix::from_i64_rows(&[&[-1, 1]])],
        )
        .unwrap()
    }

    #[test]
    fn interval_cohomology() {
        let c = interval().with_coefficients(&FpGroup::free(1));
        let h0 = c.cohomology(0);
        assert_eq!(h0.group.canonical_name(), "Z");
        let h1 = c.cohomology(1);
        assert_eq!(h1.group.canonical_name(), "0");
        // constant cochain (1,1) generates H^0
        assert!(h0.encode(&[BigInt::from(1), BigInt::from(1)]).is_some());
        // (1,0) is not a cocycle... it is: d(1,0) = -1 != 0
        assert!(h0.encode(&[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    #[test]
    fn torsion_coefficients() {
        // circle as 3-cycle has H^1(S^1; Z/4) = Z/4
        let d0 = IntMatrix::from_i64_rows(&[&[-1, 1, 0], &[0, -1, 1], &[1, 0, -1]]);
        let c = ZCochainComplex::new(vec![3, 3], vec![d0])
            .unwrap()
            .with_coefficients(&FpGroup::cyclic(4));
        assert_eq!(c.cohomology(1).group.canonical_name(), "Z/4");
        assert_eq!(c.cohomology(0).group.canonical_name(), "Z/4");
    }

    #[test]
    fn shape_validation() {
        assert!(ZCochainComplex::new(vec![2, 1], vec![IntMatrix::zeros(2, 2)]).is_err());
        let bad_sq = ZCochainComplex::new(
            vec![1, 1, 1],
            vec![
                IntMatrix::from_i64_rows(&[&[1]]),
                IntMatrix::from_i64_rows(&[&[1]]),
            ],
        );
        assert!(bad_sq.is_err());
    }

    #[test]
    fn induced_identity() {
        let z = FpGroup::free(1);
        let c = interval().with_coefficients(&z);
        let h0 = c.cohomology(0);
        let h0b = c.cohomology(0);
        let id = induced_on_cohomology(&IntMatrix::identity(2), &h0, &h0b).unwrap();
        assert!(id.hom_equal(&GroupHom::identity(&h0.group)));
    }
}
