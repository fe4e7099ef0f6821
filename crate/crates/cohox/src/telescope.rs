//! Algebraic mapping telescopes at the cochain level.
//!
//! Given stage complexes C_0, C_1, ... and bonding cochain maps
//! b_k: C_{k+1} -> C_k (the pullback direction), the telescope total
//! complex in degree n is ⊕_k C_k^n ⊕ ⊕_k C_k^{n-1} (a cylinder slot
//! per consecutive pair), with differential
//!   D(x)_stage-k = δ x_k,
//!   D(x)_cyl-k   = x_k − b_k(x_{k+1}),
//!   D(y)_cyl-k   = −δ y_k.
//! D² = 0 exactly when the b_k are chain maps. Truncation to the
//! first N+1 stages is a quotient complex (slot projection is a chain
//! map); the dropped slots form a subcomplex playing the role of the
//! relative complex of the truncation.

use crate::coch::{induced_on_cohomology, is_chain_map, Cohomology, ZCochainComplex};
use crate::error::CohoxError;
use crate::fpgroup::FpGroup;
use crate::matrix::IntMatrix;
use crate::simplicial::{fundamental_cocycle, fundamental_cycle, pair_cells};
use crate::tower::GroupTower;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone)]
pub struct TelescopeComplex {
    pub stages: Vec<ZCochainComplex>,
    /// bonding[k][n]: stage-k n-cells x stage-(k+1) n-cells
    pub bonding: Vec<Vec<IntMatrix>>,
    pub total: ZCochainComplex,
}

/// Slot layout of the total complex in one degree: all stage slots in
/// order, then all cylinder slots.
fn slot_offsets(stages: &[ZCochainComplex], n: usize) -> (Vec<usize>, Vec<usize>, usize) {
    let m = stages.len();
    let mut stage_off = Vec::with_capacity(m);
    let mut acc = 0usize;
    for s in stages {
        stage_off.push(acc);
        acc += s.rank(n);
    }
    let mut cyl_off = Vec::with_capacity(m.saturating_sub(1));
    for s in stages.iter().take(m.saturating_sub(1)) {
        cyl_off.push(acc);
        acc += s.rank(n.wrapping_sub(1));
    }
    (stage_off, cyl_off, acc)
}

fn bonding_mat(bonding: &[Vec<IntMatrix>], stages: &[ZCochainComplex], k: usize, n: usize) -> IntMatrix {
    bonding[k]
        .get(n)
        .cloned()
        .unwrap_or_else(|| IntMatrix::zeros(stages[k].rank(n), stages[k + 1].rank(n)))
}

fn copy_block(dst: &mut IntMatrix, r0: usize, c0: usize, block: &IntMatrix, negate: bool) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = block.get(r, c);
            if !v.is_zero() {
                let v = if negate { -v } else { v.clone() };
                dst.set(r0 + r, c0 + c, v);
            }
        }
    }
}

fn assemble(stages: &[ZCochainComplex], bonding: &[Vec<IntMatrix>]) -> ZCochainComplex {
    let m = stages.len();
    let stage_top = stages
        .iter()
        .filter_map(|s| s.top_degree())
        .max()
        .unwrap_or(0);
    let top = if m > 1 { stage_top + 1 } else { stage_top };
    let mut ranks = Vec::new();
    for n in 0..=top {
        ranks.push(slot_offsets(stages, n).2);
    }
    let mut diffs = Vec::new();
    for n in 0..top {
        let (s_in, c_in, cols) = slot_offsets(stages, n);
        let (s_out, c_out, rows) = slot_offsets(stages, n + 1);
        let mut d = IntMatrix::zeros(rows, cols);
        for k in 0..m {
            copy_block(&mut d, s_out[k], s_in[k], &stages[k].diff(n), false);
        }
        for k in 0..m.saturating_sub(1) {
            // cylinder slot k at degree n+1 carries the n-cells of stage k
            copy_block(
                &mut d,
                c_out[k],
                s_in[k],
                &IntMatrix::identity(stages[k].rank(n)),
                false,
            );
            copy_block(&mut d, c_out[k], s_in[k + 1], &bonding_mat(bonding, stages, k, n), true);
            if n > 0 {
                copy_block(&mut d, c_out[k], c_in[k], &stages[k].diff(n - 1), true);
            }
        }
        diffs.push(d);
    }
    ZCochainComplex::new(ranks, diffs).expect("telescope differential squares to zero")
}

pub fn telescope(
    stages: Vec<ZCochainComplex>,
    bonding: Vec<Vec<IntMatrix>>,
) -> Result<TelescopeComplex, CohoxError> {
    if stages.is_empty() || bonding.len() + 1 != stages.len() {
        return Err(CohoxError::Validation {
            name: "telescope",
            detail: "need one bonding map family per consecutive stage pair".into(),
        });
    }
    for (k, mats) in bonding.iter().enumerate() {
        if !is_chain_map(mats, &stages[k + 1], &stages[k]) {
            return Err(CohoxError::NonChainMap { stage: k });
        }
    }
    let total = assemble(&stages, &bonding);
    Ok(TelescopeComplex {
        stages,
        bonding,
        total,
    })
}

impl TelescopeComplex {
    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    /// Telescope of the first n_stages stages.
    pub fn truncate(&self, n_stages: usize) -> Result<TelescopeComplex, CohoxError> {
        if n_stages == 0 || n_stages > self.stages.len() {
            return Err(CohoxError::IndexOutOfRange {
                index: n_stages,
                limit: self.stages.len(),
            });
        }
        telescope(
            self.stages[..n_stages].to_vec(),
            self.bonding[..n_stages - 1].to_vec(),
        )
    }

    /// Slot projection matrix in one degree from this telescope onto a
    /// truncation with fewer stages (rows: truncated slots, columns:
    /// full slots).
    pub fn projection_matrix(&self, n_stages: usize, degree: usize) -> IntMatrix {
        let kept = &self.stages[..n_stages];
        let (ks, kc, krows) = slot_offsets(kept, degree);
        let (fs, fc, fcols) = slot_offsets(&self.stages, degree);
        let mut p = IntMatrix::zeros(krows, fcols);
        for k in 0..n_stages {
            for i in 0..kept[k].rank(degree) {
                p.set(ks[k] + i, fs[k] + i, BigInt::from(1));
            }
        }
        for k in 0..n_stages.saturating_sub(1) {
            for i in 0..kept[k].rank(degree.wrapping_sub(1)) {
                p.set(kc[k] + i, fc[k] + i, BigInt::from(1));
            }
        }
        p
    }

    /// Subcomplex spanned by the slots dropped when truncating to
    /// n_stages, with its inclusion matrices into the total complex
    /// (one per degree).
    pub fn dropped_subcomplex(
        &self,
        n_stages: usize,
    ) -> Result<(ZCochainComplex, Vec<IntMatrix>), CohoxError> {
        if n_stages == 0 || n_stages > self.stages.len() {
            return Err(CohoxError::IndexOutOfRange {
                index: n_stages,
                limit: self.stages.len(),
            });
        }
        let m = self.stages.len();
        let top = self.total.top_degree().unwrap_or(0);
        let mut kept_indices: Vec<Vec<usize>> = Vec::new();
        let mut ranks = Vec::new();
        for n in 0..=top {
            let (fs, fc, _) = slot_offsets(&self.stages, n);
            let mut idx = Vec::new();
            for k in n_stages..m {
                for i in 0..self.stages[k].rank(n) {
                    idx.push(fs[k] + i);
                }
            }
            for k in n_stages - 1..m.saturating_sub(1) {
                for i in 0..self.stages[k].rank(n.wrapping_sub(1)) {
                    idx.push(fc[k] + i);
                }
            }
            ranks.push(idx.len());
            kept_indices.push(idx);
        }
        let mut diffs = Vec::new();
        for n in 0..top {
            let d = self
                .total
                .diff(n)
                .select_rows(&kept_indices[n + 1])
                .select_cols(&kept_indices[n]);
            diffs.push(d);
        }
        let sub = ZCochainComplex::new(ranks.clone(), diffs)?;
        let mut inclusions = Vec::new();
        for n in 0..=top {
            let mut inc = IntMatrix::zeros(self.total.rank(n), ranks[n]);
            for (col, &row) in kept_indices[n].iter().enumerate() {
                inc.set(row, col, BigInt::from(1));
            }
            inclusions.push(inc);
        }
        Ok((sub, inclusions))
    }

    pub fn cohomology(&self, g: &FpGroup, n: usize) -> Cohomology {
        self.total.with_coefficients(g).cohomology(n)
    }

    /// Tower of truncation cohomologies H^d(T_{≤k}; G), bonded by the
    /// restriction (slot-projection) maps.
    pub fn truncation_tower(&self, g: &FpGroup, d: usize) -> Result<GroupTower, CohoxError> {
        let m = self.stages.len();
        let cohs: Vec<Cohomology> = (1..=m)
            .map(|k| Ok(self.truncate(k)?.cohomology(g, d)))
            .collect::<Result<_, CohoxError>>()?;
        let mut groups = Vec::new();
        let mut bonding = Vec::new();
        for (k, c) in cohs.iter().enumerate() {
            groups.push(c.group.clone());
            if k + 1 < m {
                let bigger = self.truncate(k + 2)?;
                let p = bigger.projection_matrix(k + 1, d);
                bonding.push(induced_on_cohomology(&p, &cohs[k + 1], c)?);
            }
        }
        GroupTower::explicit(groups, bonding)
    }
}

/// Cochain complex of the model sphere ∂Δ^{d+1}.
pub fn sphere_stage(d: usize) -> ZCochainComplex {
    let pair = crate::complex::SimplicialPair::absolute(crate::complex::SimplicialComplex::sphere(d));
    pair_cells(&pair).complex
}

/// Bonding family on the sphere complex inducing multiplication by p
/// on H^d: identity below the top degree and I + (p−1)·ω·zᵀ on top,
/// which fixes coboundaries (z is a cycle) and scales the fundamental
/// class by p.
pub fn degree_p_bonding(d: usize, p: u64) -> Vec<IntMatrix> {
    let s = sphere_stage(d);
    let model = crate::complex::SimplicialComplex::sphere(d);
    let omega = fundamental_cocycle(d);
    let z = fundamental_cycle(&model, d).expect("model sphere is sphere-like");
    let mut mats = Vec::new();
    for n in 0..d {
        mats.push(IntMatrix::identity(s.rank(n)));
    }
    let mut top = IntMatrix::identity(s.rank(d));
    for i in 0..s.rank(d) {
        for j in 0..s.rank(d) {
            let add = BigInt::from(p - 1) * &omega[i] * &z[j];
            if !add.is_zero() {
                let v = top.get(i, j) + add;
                top.set(i, j, v);
            }
        }
    }
    mats.push(top);
    mats
}

/// The degree-p telescope of Example-style sphere stages.
pub fn degree_p_telescope(p: u64, d: usize, n_stages: usize) -> Result<TelescopeComplex, CohoxError> {
    if p == 0 || d == 0 || n_stages == 0 {
        return Err(CohoxError::Validation {
            name: "degree_p_telescope",
            detail: "need p >= 1, d >= 1 and at least one stage".into(),
        });
    }
    let stages = vec![sphere_stage(d); n_stages];
    let bonding = vec![degree_p_bonding(d, p); n_stages - 1];
    telescope(stages, bonding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{mittag_leffler, MittagLeffler};

    #[test]
    fn single_stage_is_the_stage() {
        let t = telescope(vec![sphere_stage(2)], vec![]).unwrap();
        let z = FpGroup::free(1);
        assert_eq!(t.cohomology(&z, 2).group.canonical_name(), "Z");
        assert_eq!(t.cohomology(&z, 0).group.canonical_name(), "Z");
        assert_eq!(t.cohomology(&z, 1).group.canonical_name(), "0");
    }

    #[test]
    fn identity_bonding_retracts() {
        let s = sphere_stage(2);
        let ident: Vec<IntMatrix> = (0..=2).map(|n| IntMatrix::identity(s.rank(n))).collect();
        let t = telescope(vec![s.clone(), s], vec![ident]).unwrap();
        let z = FpGroup::free(1);
        for n in 0..=2 {
            assert_eq!(
                t.cohomology(&z, n).group.canonical_name(),
                sphere_stage(2)
                    .with_coefficients(&z)
                    .cohomology(n)
                    .group
                    .canonical_name()
            );
        }
    }

    #[test]
    fn degree_p_bonding_is_chain_map_and_scales() {
        let d = 2;
        let s = sphere_stage(d);
        let b = degree_p_bonding(d, 3);
        assert!(is_chain_map(&b, &s, &s));
        let z = FpGroup::free(1);
        let coh = s.with_coefficients(&z).cohomology(d);
        let coh2 = s.with_coefficients(&z).cohomology(d);
        let h = induced_on_cohomology(&b[d], &coh, &coh2).unwrap();
        let img = h.apply_canonical(&[BigInt::from(1)]);
        assert!(img == vec![BigInt::from(3)] || img == vec![BigInt::from(-3)]);
    }

    #[test]
    fn degree_p_truncation_tower_descends() {
        let t = degree_p_telescope(2, 2, 4).unwrap();
        let z = FpGroup::free(1);
        let tower = t.truncation_tower(&z, 2).unwrap();
        if let GroupTower::Explicit { groups, bonding } = &tower {
            for g in groups {
                assert_eq!(g.canonical_name(), "Z");
            }
            for b in bonding {
                let img = b.apply_canonical(&[BigInt::from(1)]);
                assert!(img == vec![BigInt::from(2)] || img == vec![BigInt::from(-2)]);
            }
        } else {
            panic!("expected explicit tower");
        }
        match mittag_leffler(&tower, 3) {
            MittagLeffler::StrictlyDecreasing { upto: 3, .. } => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dropped_subcomplex_is_closed() {
        let t = degree_p_telescope(2, 2, 3).unwrap();
        let (sub, inc) = t.dropped_subcomplex(2).unwrap();
        // inclusion commutes with the differentials
        for n in 0..sub.top_degree().unwrap_or(0) {
            let lhs = t.total.diff(n).mul(&inc[n]);
            let rhs = inc[n + 1].mul(&sub.diff(n));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn non_chain_map_rejected() {
        let s = sphere_stage(2);
        let mut bad: Vec<IntMatrix> = (0..=2).map(|n| IntMatrix::identity(s.rank(n))).collect();
        bad[1].set(0, 0, BigInt::from(5));
        assert!(matches!(
            telescope(vec![s.clone(), s], vec![bad]),
            Err(CohoxError::NonChainMap { stage: 0 })
        ));
    }
}
