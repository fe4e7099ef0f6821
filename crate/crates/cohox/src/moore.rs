//! Moore spaces M(A, n) as cellular cochain data, and filtrations of
//! torsion-free groups by finitely generated stages.
//!
//! The cell structure is one 0-cell, one n-cell per canonical
//! generator of A, and one (n+1)-cell per torsion coefficient,
//! attached by the corresponding degree. The presentation is taken in
//! canonical (SNF-reduced) form so the attaching matrix is injective
//! and homology is concentrated as it should be.

use crate::coch::ZCochainComplex;
use crate::error::CohoxError;
use crate::fpgroup::{FpGroup, GroupHom};
use crate::matrix::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;

pub struct MooreSpaceData {
    pub a: FpGroup,
    pub n: usize,
    pub f0_rank: usize,
    pub f1_rank: usize,
    /// presentation / attaching matrix, F0-cells x F1-cells
    pub attaching: IntMatrix,
    /// cellular cochain complex, degrees 0..=n+1
    pub complex: ZCochainComplex,
}

fn moore_from_presentation(
    a: FpGroup,
    n: usize,
    attaching: IntMatrix,
) -> Result<MooreSpaceData, CohoxError> {
    let f0 = attaching.rows();
    let f1 = attaching.cols();
    if smith_normal_form(&attaching).rank() != f1 {
        return Err(CohoxError::NonInjectivePresentation);
    }
    let mut ranks = vec![0usize; n + 2];
    ranks[0] = 1;
    ranks[n] = f0;
    ranks[n + 1] = f1;
    let mut diffs = Vec::new();
    for d in 0..=n {
        if d == n {
            // cochain differential = transpose of the attaching map
            diffs.push(attaching.transpose());
        } else {
            diffs.push(IntMatrix::zeros(ranks[d + 1], ranks[d]));
        }
    }
    let complex = ZCochainComplex::new(ranks, diffs)?;
    // H_n of the chain complex is A by construction; assert it
    debug_assert!(FpGroup::from_presentation(f0, attaching.clone()).isomorphic(&a));
    Ok(MooreSpaceData {
        a,
        n,
        f0_rank: f0,
        f1_rank: f1,
        attaching,
        complex,
    })
}

pub fn moore_space(a: &FpGroup, n: usize) -> Result<MooreSpaceData, CohoxError> {
    if n < 2 {
        return Err(CohoxError::Validation {
            name: "moore_space",
            detail: "construction requires n >= 2".into(),
        });
    }
    let torsion = a.torsion_coefficients();
    let f0 = a.canonical_rank();
    let mut attaching = IntMatrix::zeros(f0, torsion.len());
    for (i, d) in torsion.iter().enumerate() {
        attaching.set(i, i, d.clone());
    }
    moore_from_presentation(a.clone(), n, attaching)
}

pub struct MooreFiltration {
    pub n: usize,
    /// k_m per truncation stage m = 1..=Q (number of leading columns
    /// supported in the first m rows)
    pub k: Vec<usize>,
    /// the groups A_m presented by the restricted matrices
    pub groups: Vec<FpGroup>,
    pub stages: Vec<MooreSpaceData>,
    /// inclusion-induced maps A_m -> A_{m+1}
    pub inclusions: Vec<GroupHom>,
}

/// Filtration of a torsion-free A = coker(i: Z^Q' -> Z^Q) by the
/// subgroups generated by the first m coordinates.
pub fn moore_filtration(i: &IntMatrix, n: usize) -> Result<MooreFiltration, CohoxError> {
    let q = i.rows();
    let qp = i.cols();
    if smith_normal_form(i).rank() != qp {
        return Err(CohoxError::NonInjectivePresentation);
    }
    let a = FpGroup::from_presentation(q, i.clone());
    if !a.torsion_coefficients().is_empty() {
        return Err(CohoxError::Validation {
            name: "moore_filtration",
            detail: "cokernel of the presentation is not torsion-free".into(),
        });
    }
    let mut k = Vec::new();
    let mut groups: Vec<FpGroup> = Vec::new();
    let mut stages = Vec::new();
    let mut inclusions = Vec::new();
    for m in 1..=q {
        // leading columns supported in the first m rows
        let mut km = 0;
        for c in 0..qp {
            let fits = (m..q).all(|r| i.get(r, c) == &BigInt::from(0));
            if fits {
                km = c + 1;
            } else {
                break;
            }
        }
        let rows: Vec<usize> = (0..m).collect();
        let cols: Vec<usize> = (0..km).collect();
        let restricted = i.select_rows(&rows).select_cols(&cols);
        if smith_normal_form(&restricted).rank() != km {
            return Err(CohoxError::NonInjectivePresentation);
        }
        let am = FpGroup::from_presentation(m, restricted.clone());
        if !am.torsion_coefficients().is_empty() {
            return Err(CohoxError::Validation {
                name: "moore_filtration",
                detail: format!("stage {m} is not torsion-free"),
            });
        }
        stages.push(moore_from_presentation(am.clone(), n, restricted)?);
        if let Some(prev) = groups.last() {
            let mut inc = IntMatrix::zeros(m, m - 1);
            for r in 0..m - 1 {
                inc.set(r, r, BigInt::from(1));
            }
            inclusions.push(GroupHom::new(prev.clone(), am.clone(), inc)?);
        }
        k.push(km);
        groups.push(am);
    }
    Ok(MooreFiltration {
        n,
        k,
        groups,
        stages,
        inclusions,
    })
}

/// Presentation of a generator-count truncation of Z[1/p]: q
/// generators e_0..e_{q-1} with relations e_j = p e_{j+1}, i.e.
/// columns e_j - p e_{j+1}.
pub fn z_inverted_prime_presentation(p: u64, q: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(q, q.saturating_sub(1));
    for j in 0..q.saturating_sub(1) {
        m.set(j, j, BigInt::from(1));
        m.set(j + 1, j, -BigInt::from(p));
    }
    m
}
