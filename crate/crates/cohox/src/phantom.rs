//! Finite-level phantom filtrations.
//!
//! The inputs are packaged as a relative system: an absolute group,
//! one relative group per exhaustion stage, comparison maps into the
//! absolute group, and restriction maps between relative stages
//! (relative-of-relative data collapses to the larger index). The
//! filtration is
//!   Ph^0 = ∩_i Ran(rel_i -> abs),
//!   Ph^{k+1} = ∩_i Ran(Ph^k(rel_i) -> abs),
//! with the same recursion applied on each relative object over the
//! stages above it.

use crate::cech::{cech_cohomology_truncated, comparison_map, relative_system};
use crate::coch::induced_on_cohomology;
use crate::cover::CoverTower;
use crate::error::CohoxError;
use crate::fpgroup::{FpGroup, GroupHom, Subgroup};
use crate::matrix::IntMatrix;
use crate::telescope::{degree_p_telescope, TelescopeComplex};
use crate::tower::{lim1_vanishes, GroupTower, Lim1Verdict};
use num_bigint::BigInt;
use std::collections::BTreeMap;

pub struct RelativeSystem {
    pub absolute: FpGroup,
    pub relatives: Vec<FpGroup>,
    /// comparisons[i]: relatives[i] -> absolute
    pub comparisons: Vec<GroupHom>,
    /// restriction from stage j to stage i, for j > i
    pub restrictions: BTreeMap<(usize, usize), GroupHom>,
}

impl RelativeSystem {
    pub fn stage_count(&self) -> usize {
        self.relatives.len()
    }
}

pub struct PhantomFiltration {
    /// Ph^0 ⊇ Ph^1 ⊇ ... as subgroups of the absolute group.
    pub levels: Vec<Subgroup>,
}

/// Ph^k on relative stage i (memoized).
fn phrel(
    sys: &RelativeSystem,
    memo: &mut BTreeMap<(usize, usize), Subgroup>,
    k: usize,
    i: usize,
) -> Result<Subgroup, CohoxError> {
    if let Some(s) = memo.get(&(k, i)) {
        return Ok(s.clone());
    }
    let m = sys.stage_count();
    let mut acc = if k == 0 {
        Subgroup::full(sys.relatives[i].clone())
    } else {
        phrel(sys, memo, k - 1, i)?
    };
    for j in i + 1..m {
        let r = &sys.restrictions[&(j, i)];
        let pushed = if k == 0 {
            r.image()
        } else {
            phrel(sys, memo, k - 1, j)?.map_forward(r)
        };
        acc = acc.intersect(&pushed)?;
    }
    memo.insert((k, i), acc.clone());
    Ok(acc)
}

pub fn phantom_filtration(sys: &RelativeSystem, depth: usize) -> Result<PhantomFiltration, CohoxError> {
    if sys.relatives.is_empty() {
        return Err(CohoxError::MissingExhaustion);
    }
    let mut memo = BTreeMap::new();
    let mut levels = Vec::new();
    for k in 0..=depth {
        let mut acc = Subgroup::full(sys.absolute.clone());
        for (i, cmp) in sys.comparisons.iter().enumerate() {
            let pushed = if k == 0 {
                cmp.image()
            } else {
                phrel(sys, &mut memo, k - 1, i)?.map_forward(cmp)
            };
            acc = acc.intersect(&pushed)?;
        }
        if let Some(prev) = levels.last() {
            let prev: &Subgroup = prev;
            debug_assert!(acc.subgroup_of(prev).unwrap_or(false), "chain must descend");
        }
        levels.push(acc);
    }
    Ok(PhantomFiltration { levels })
}

/// Relative system of a cover tower: truncated Čech colimits, one
/// relative stage per exhaustion set.
pub fn cover_tower_system(
    t: &CoverTower,
    g: &FpGroup,
    n: usize,
) -> Result<RelativeSystem, CohoxError> {
    let m = t.exhaustion.len();
    if m == 0 {
        return Err(CohoxError::MissingExhaustion);
    }
    let absolute = cech_cohomology_truncated(t, g, n)?;
    let rels = (1..=m)
        .map(|i| relative_system(t, i, g, n))
        .collect::<Result<Vec<_>, _>>()?;
    let comparisons = rels
        .iter()
        .map(|r| comparison_map(r, &absolute))
        .collect::<Result<Vec<_>, _>>()?;
    let mut restrictions = BTreeMap::new();
    for j in 1..m {
        for i in 0..j {
            restrictions.insert((j, i), comparison_map(&rels[j], &rels[i])?);
        }
    }
    Ok(RelativeSystem {
        absolute: absolute.colimit,
        relatives: rels.into_iter().map(|r| r.colimit).collect(),
        comparisons,
        restrictions,
    })
}

/// Relative system of a telescope: absolute = H^n of the total
/// complex; stage k uses the subcomplex of slots dropped by the
/// truncation to the first `stages[k]` stages.
pub fn telescope_system(
    tel: &TelescopeComplex,
    g: &FpGroup,
    n: usize,
    stages: &[usize],
) -> Result<RelativeSystem, CohoxError> {
    if stages.is_empty() {
        return Err(CohoxError::MissingExhaustion);
    }
    let abs_coh = tel.cohomology(g, n);
    let mut relatives = Vec::new();
    let mut comparisons = Vec::new();
    let mut data = Vec::new();
    for &k in stages {
        let (sub, inc) = tel.dropped_subcomplex(k)?;
        let coh = sub.with_coefficients(g).cohomology(n);
        let inc_n = inc
            .get(n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(tel.total.rank(n), sub.rank(n)));
        comparisons.push(induced_on_cohomology(&inc_n, &coh, &abs_coh)?);
        relatives.push(coh.group.clone());
        data.push((coh, inc_n));
    }
    let mut restrictions = BTreeMap::new();
    for j in 1..stages.len() {
        for i in 0..j {
            // dropped slots at the larger truncation sit inside those
            // of the smaller: match columns through the total complex
            let mat = transfer_matrix(&data[i].1, &data[j].1);
            restrictions.insert(
                (j, i),
                induced_on_cohomology(&mat, &data[j].0, &data[i].0)?,
            );
        }
    }
    Ok(RelativeSystem {
        absolute: abs_coh.group.clone(),
        relatives,
        comparisons,
        restrictions,
    })
}

/// Given two slot-inclusion indicator matrices into the same total
/// complex, the matrix carrying the second family into the first
/// (requires the second's slots to be among the first's).
fn transfer_matrix(inc_to: &IntMatrix, inc_from: &IntMatrix) -> IntMatrix {
    inc_to.transpose().mul(inc_from)
}

pub struct Example711Report {
    pub p: u64,
    pub d: usize,
    pub n_stages: usize,
    pub stage_groups: Vec<String>,
    pub tower_is_z_times_p: bool,
    pub lim1: Lim1Verdict,
}

/// The degree-p telescope pipeline: build the telescope, extract the
/// truncation tower, check it is (Z, ×p), and run the Mittag-Leffler
/// criterion on the corresponding periodic tower.
pub fn example_7_11_pipeline(p: u64, d: usize, n_stages: usize) -> Result<Example711Report, CohoxError> {
    if p == 0 || d == 0 || n_stages == 0 {
        return Err(CohoxError::Validation {
            name: "example_7_11_pipeline",
            detail: "need p >= 1, d >= 1, at least one stage".into(),
        });
    }
    let tel = degree_p_telescope(p, d, n_stages)?;
    let z = FpGroup::free(1);
    let tower = tel.truncation_tower(&z, d)?;
    let (stage_groups, mult_ok) = match &tower {
        GroupTower::Explicit { groups, bonding } => {
            let names: Vec<String> = groups.iter().map(|g| g.canonical_name()).collect();
            let all_z = names.iter().all(|n| n == "Z");
            let p_big = BigInt::from(p);
            let mult = bonding.iter().all(|b| {
                let img = b.apply_canonical(&[BigInt::from(1)]);
                img == vec![p_big.clone()] || img == vec![-p_big.clone()]
            });
            (names, all_z && mult)
        }
        GroupTower::Periodic { .. } => (vec![], false),
    };
    // the unbounded statement lives on the periodic tower (Z, ×p)
    let mut e = IntMatrix::zeros(1, 1);
    e.set(0, 0, BigInt::from(p));
    let periodic = GroupTower::periodic(z.clone(), GroupHom::new(z.clone(), z, e)?)?;
    let lim1 = lim1_vanishes(&periodic, n_stages.max(2));
    Ok(Example711Report {
        p,
        d,
        n_stages,
        stage_groups,
        tower_is_z_times_p: mult_ok,
        lim1,
    })
}
