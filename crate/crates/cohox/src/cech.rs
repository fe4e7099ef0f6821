//! Truncated Čech cohomology over a tower of covers: per-level nerve
//! cohomology, the finite colimit along refinement-induced maps, the
//! relative variant with its comparison map, the cochain metric, and
//! partition-of-unity canonical maps with star-condition checking.

use crate::complex::{SimplicialComplex, SimplicialMap, SimplicialPair};
use crate::cover::{nerve, nerve_map, Cover, CoverTower};
use crate::error::CohoxError;
use crate::fpgroup::{FpGroup, GroupHom, Subgroup};
use crate::matrix::IntMatrix;
use crate::simplicial::{cohomology, induced_map, PairCohomology};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Per-level cohomology of the nerves of a tower, with the colimit
/// along the induced maps and injections into it.
pub struct CechSystem {
    pub degree: usize,
    pub coeff: FpGroup,
    /// pair per level (subcomplex nonempty in the relative case)
    pub pairs: Vec<SimplicialPair>,
    pub levels: Vec<PairCohomology>,
    /// maps[k]: H(level k) -> H(level k+1)
    pub maps: Vec<GroupHom>,
    pub colimit: FpGroup,
    /// injections[k]: H(level k) -> colimit
    pub injections: Vec<GroupHom>,
    /// ascending image chain Im(injections[0]) ⊆ ... ⊆ Im(injections[N])
    pub images: Vec<Subgroup>,
}

impl CechSystem {
    fn build(
        pairs: Vec<SimplicialPair>,
        nerve_maps: Vec<SimplicialMap>,
        g: &FpGroup,
        n: usize,
    ) -> Result<CechSystem, CohoxError> {
        let levels: Vec<PairCohomology> = pairs.iter().map(|p| cohomology(p, g, n)).collect();
        let mut maps = Vec::new();
        for (k, f) in nerve_maps.iter().enumerate() {
            // contravariant: coarse cohomology maps forward to fine
            maps.push(induced_map(f, &pairs[k + 1], &pairs[k], g, n)?);
        }
        let ranks: Vec<usize> = levels.iter().map(|l| l.coh.group.canonical_rank()).collect();
        let offsets: Vec<usize> = ranks
            .iter()
            .scan(0, |acc, r| {
                let o = *acc;
                *acc += r;
                Some(o)
            })
            .collect();
        let total: usize = ranks.iter().sum();
        let mut relators: Vec<Vec<BigInt>> = Vec::new();
        for (k, l) in levels.iter().enumerate() {
            for (i, m) in l.coh.group.moduli().iter().enumerate() {
                if !m.is_zero() {
                    let mut v = vec![BigInt::zero(); total];
                    v[offsets[k] + i] = m.clone();
                    relators.push(v);
                }
            }
        }
        for (k, f) in maps.iter().enumerate() {
            for i in 0..ranks[k] {
                let mut e = vec![BigInt::zero(); ranks[k]];
                e[i] = BigInt::one();
                let fe = f.apply_canonical(&e);
                let mut v = vec![BigInt::zero(); total];
                v[offsets[k] + i] = BigInt::one();
                for (j, c) in fe.iter().enumerate() {
                    v[offsets[k + 1] + j] -= c;
                }
                relators.push(v);
            }
        }
        let rel = IntMatrix::from_columns(total, relators);
        let colimit = FpGroup::from_presentation(total, rel);
        let mut injections = Vec::new();
        for (k, &r) in ranks.iter().enumerate() {
            // canonical copy of the level group, so generator and
            // canonical coordinates agree for the injection matrix
            let canon = FpGroup::from_moduli(levels[k].coh.group.moduli().to_vec());
            let mut m = IntMatrix::zeros(total, r);
            for i in 0..r {
                m.set(offsets[k] + i, i, BigInt::one());
            }
            injections.push(GroupHom::new(canon, colimit.clone(), m)?);
        }
        let images = injections.iter().map(|j| j.image()).collect();
        Ok(CechSystem {
            degree: n,
            coeff: g.clone(),
            pairs,
            levels,
            maps,
            colimit,
            injections,
            images,
        })
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// Push a canonical class at one level into the colimit.
    pub fn colimit_class(&self, level: usize, class: &[BigInt]) -> Vec<BigInt> {
        self.injections[level].apply_canonical(class)
    }

    /// Push a class at `level` forward to the top level.
    pub fn push_to_top(&self, level: usize, class: &[BigInt]) -> Vec<BigInt> {
        let mut c = class.to_vec();
        for k in level..self.top() {
            c = self.maps[k].apply_canonical(&c);
        }
        c
    }

    /// Top-level representative of a colimit class (the top group
    /// surjects onto the colimit of a finite chain).
    pub fn top_representative(&self, colimit_class: &[BigInt]) -> Vec<BigInt> {
        let big = self.colimit.lift(colimit_class);
        let mut offset = 0usize;
        let top_rank = self.levels[self.top()].coh.group.canonical_rank();
        let mut acc = vec![BigInt::zero(); top_rank];
        for (k, l) in self.levels.iter().enumerate() {
            let r = l.coh.group.canonical_rank();
            let chunk = big[offset..offset + r].to_vec();
            let pushed = self.push_to_top(k, &chunk);
            for (a, p) in acc.iter_mut().zip(&pushed) {
                *a += p;
            }
            offset += r;
        }
        self.levels[self.top()].coh.group.reduce_canonical(&acc)
    }
}

/// Absolute truncated Čech cohomology of the tower.
pub fn cech_cohomology_truncated(
    t: &CoverTower,
    g: &FpGroup,
    n: usize,
) -> Result<CechSystem, CohoxError> {
    let pairs: Vec<SimplicialPair> = t
        .levels
        .iter()
        .map(|c| SimplicialPair::absolute(nerve(c)))
        .collect();
    let nmaps = t
        .refinements
        .iter()
        .map(nerve_map)
        .collect::<Result<Vec<_>, _>>()?;
    CechSystem::build(pairs, nmaps, g, n)
}

/// Induced subcomplex of the nerve on the members meeting `part`.
pub fn restricted_nerve(c: &Cover, full: &SimplicialComplex, part: &BTreeSet<usize>) -> SimplicialComplex {
    let keep: BTreeSet<usize> = (0..c.members.len())
        .filter(|&i| !c.members[i].is_disjoint(part))
        .collect();
    let maximal: Vec<Vec<usize>> = full
        .simplices()
        .filter(|s| s.iter().all(|v| keep.contains(v)))
        .cloned()
        .collect();
    SimplicialComplex::from_maximal(&maximal)
}

/// Relative truncated Čech cohomology with respect to exhaustion stage
/// i (1-based), together with the comparison map into the absolute
/// colimit.
pub fn relative_cech_truncated(
    t: &CoverTower,
    i: usize,
    g: &FpGroup,
    n: usize,
) -> Result<(CechSystem, GroupHom), CohoxError> {
    let absolute = cech_cohomology_truncated(t, g, n)?;
    let relative = relative_system(t, i, g, n)?;
    let comparison = comparison_map(&relative, &absolute)?;
    Ok((relative, comparison))
}

/// The relative system alone (pairs (nerve, nerve ↾ X_i) per level).
pub fn relative_system(
    t: &CoverTower,
    i: usize,
    g: &FpGroup,
    n: usize,
) -> Result<CechSystem, CohoxError> {
    if i == 0 || i > t.exhaustion.len() {
        return Err(CohoxError::IndexOutOfRange {
            index: i,
            limit: t.exhaustion.len(),
        });
    }
    let part = &t.exhaustion[i - 1];
    let pairs = t
        .levels
        .iter()
        .map(|c| {
            let full = nerve(c);
            let sub = restricted_nerve(c, &full, part);
            SimplicialPair::new(full, sub)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let nmaps = t
        .refinements
        .iter()
        .map(nerve_map)
        .collect::<Result<Vec<_>, _>>()?;
    CechSystem::build(pairs, nmaps, g, n)
}

/// Extension-by-zero comparison between two systems over the same
/// tower whose level subcomplexes are nested: every cell of `from` is a
/// cell of `to` (from's subcomplex contains to's). Gives a hom
/// colim(from) -> colim(to).
pub fn comparison_map(from: &CechSystem, to: &CechSystem) -> Result<GroupHom, CohoxError> {
    let n = from.degree;
    let top = from.top();
    // top-level cell inclusion matrix
    let from_cells = &from.levels[top].cells;
    let to_cells = &to.levels[top].cells;
    let index: BTreeMap<&Vec<usize>, usize> =
        to_cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut m = IntMatrix::zeros(to_cells.len(), from_cells.len());
    for (col, c) in from_cells.iter().enumerate() {
        let row = *index.get(c).ok_or(CohoxError::Validation {
            name: "comparison_map",
            detail: format!("cell {c:?} of the relative system is missing in degree {n}"),
        })?;
        m.set(row, col, BigInt::one());
    }
    let g = from.coeff.canonical_rank();
    let big = m.kron_identity(g);
    let mut cols = Vec::new();
    for i in 0..from.colimit.canonical_rank() {
        let mut e = vec![BigInt::zero(); from.colimit.canonical_rank()];
        e[i] = BigInt::one();
        let top_class = from.top_representative(&e);
        let cocycle = from.levels[top].coh.decode(&top_class);
        let pushed = big.mul_vec(&cocycle);
        let to_class = to.levels[top].coh.encode(&pushed).ok_or(CohoxError::Validation {
            name: "comparison_map",
            detail: "extended cochain is not a cocycle".into(),
        })?;
        cols.push(to.colimit_class(top, &to_class));
    }
    let cm = IntMatrix::from_columns(to.colimit.canonical_rank(), cols);
    GroupHom::from_canonical_matrix(from.colimit.clone(), to.colimit.clone(), &cm)
}

/// A cochain at one level of a tower: values over the sorted
/// n-simplices of that level's nerve, canonical-coordinate components
/// of G grouped per cell.
#[derive(Clone, Debug)]
pub struct TowerCochain {
    pub level: usize,
    pub degree: usize,
    pub values: Vec<BigInt>,
}

/// The metric ρ(a, b) = Σ_{k=1..m} δ_k 2^{-k} over the m exhaustion
/// stages, where δ_k records disagreement of the pullbacks on the
/// nerve restricted to X_k at the join level.
pub fn cochain_metric(
    a: &TowerCochain,
    b: &TowerCochain,
    t: &CoverTower,
    g: &FpGroup,
) -> Result<BigRational, CohoxError> {
    if a.degree != b.degree {
        return Err(CohoxError::DegreeMismatch);
    }
    let n = a.degree;
    let join = a.level.max(b.level);
    if join >= t.levels.len() {
        return Err(CohoxError::IndexOutOfRange {
            index: join,
            limit: t.levels.len(),
        });
    }
    let pull = |c: &TowerCochain| -> Result<Vec<BigInt>, CohoxError> {
        if c.level == join {
            return Ok(c.values.clone());
        }
        let r = t.refinement(join, c.level)?;
        let f = nerve_map(&r)?;
        let m = crate::simplicial::pullback_matrix(
            &f,
            &SimplicialPair::absolute(f.source.clone()),
            &SimplicialPair::absolute(f.target.clone()),
            n,
        )?;
        Ok(m.kron_identity(g.canonical_rank()).mul_vec(&c.values))
    };
    let va = pull(a)?;
    let vb = pull(b)?;
    let cover = &t.levels[join];
    let cells = nerve(cover).simplices_of_dim(n);
    let comps = g.canonical_rank();
    let mut rho = BigRational::zero();
    let mut pow = BigRational::one();
    for x in &t.exhaustion {
        pow /= BigRational::from_integer(BigInt::from(2));
        let keep: BTreeSet<usize> = (0..cover.members.len())
            .filter(|&i| !cover.members[i].is_disjoint(x))
            .collect();
        let disagree = cells.iter().enumerate().any(|(ci, cell)| {
            cell.iter().all(|v| keep.contains(v)) && {
                let ca = g.reduce_canonical(&va[ci * comps..(ci + 1) * comps].to_vec());
                let cb = g.reduce_canonical(&vb[ci * comps..(ci + 1) * comps].to_vec());
                ca != cb
            }
        });
        if disagree {
            rho += &pow;
        }
    }
    Ok(rho)
}

/// Barycentric image of each point under a partition of unity:
/// point -> (nerve vertex -> weight).
pub fn canonical_map(
    c: &Cover,
    weights: &BTreeMap<usize, BTreeMap<usize, BigRational>>,
) -> Result<BTreeMap<usize, BTreeMap<usize, BigRational>>, CohoxError> {
    let mut out = BTreeMap::new();
    for &x in &c.ground {
        let w = weights.get(&x).ok_or(CohoxError::WeightSum { point: x })?;
        let mut total = BigRational::zero();
        let mut coords = BTreeMap::new();
        for (&member, v) in w {
            if v.is_zero() {
                continue;
            }
            if member >= c.members.len() || !c.members[member].contains(&x) {
                return Err(CohoxError::WeightSupport { point: x, member });
            }
            total += v;
            coords.insert(member, v.clone());
        }
        if !total.is_one() {
            return Err(CohoxError::WeightSum { point: x });
        }
        out.insert(x, coords);
    }
    Ok(out)
}

/// Uniform weights over the members containing each point.
pub fn uniform_weights(c: &Cover) -> BTreeMap<usize, BTreeMap<usize, BigRational>> {
    c.ground
        .iter()
        .map(|&x| {
            let holders: Vec<usize> = (0..c.members.len())
                .filter(|&i| c.members[i].contains(&x))
                .collect();
            let share = BigRational::new(BigInt::one(), BigInt::from(holders.len() as i64));
            (x, holders.into_iter().map(|i| (i, share.clone())).collect())
        })
        .collect()
}

/// Star condition: for every member U and x ∈ U, f(x) has strictly
/// positive coordinate at the vertex p(U). Returns violations.
pub fn star_condition_check(
    f: &BTreeMap<usize, BTreeMap<usize, BigRational>>,
    p: &SimplicialMap,
    c: &Cover,
) -> Vec<(usize, usize)> {
    let mut witnesses = Vec::new();
    for (member, pts) in c.members.iter().enumerate() {
        let vertex = p.vertex(member);
        for &x in pts {
            let positive = f
                .get(&x)
                .and_then(|coords| coords.get(&vertex))
                .map(|v| *v > BigRational::zero())
                .unwrap_or(false);
            if !positive {
                witnesses.push((x, member));
            }
        }
    }
    witnesses
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::RefinementMap;

    fn circle_tower() -> CoverTower {
        let coarse = Cover::circle_arcs(12, 3);
        let fine = Cover::circle_arcs(12, 6);
        let assignment: Vec<usize> = (0..6)
            .map(|i| {
                (0..3)
                    .find(|&j| fine.members[i].is_subset(&coarse.members[j]))
                    .unwrap()
            })
            .collect();
        let r = RefinementMap::new(fine.clone(), coarse.clone(), assignment).unwrap();
        CoverTower::new(
            vec![coarse, fine],
            vec![r],
            vec![
                (0..=4).collect(),
                (0..=8).collect(),
                (0..12).collect(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn constant_tower_colimit() {
        let c = Cover::circle_arcs(12, 3);
        let t = CoverTower::constant(&c, 3, vec![]);
        let z = FpGroup::free(1);
        let s = cech_cohomology_truncated(&t, &z, 1).unwrap();
        assert_eq!(s.colimit.canonical_name(), "Z");
    }

    #[test]
    fn circle_tower_colimit_and_injections() {
        let t = circle_tower();
        let z = FpGroup::free(1);
        let s = cech_cohomology_truncated(&t, &z, 1).unwrap();
        assert_eq!(s.colimit.canonical_name(), "Z");
        // level-0 generator pushes to a generator of the colimit
        let g0 = s.colimit_class(0, &[BigInt::one()]);
        assert!(g0 == vec![BigInt::one()] || g0 == vec![-BigInt::one()]);
        // top representative round-trips
        let rep = s.top_representative(&g0);
        assert_eq!(s.colimit_class(1, &rep), g0);
    }

    #[test]
    fn relative_full_exhaustion_kills_comparison() {
        let t = circle_tower();
        let z = FpGroup::free(1);
        let (rel, cmp) = relative_cech_truncated(&t, 3, &z, 1).unwrap();
        // X_3 = whole circle: every nerve vertex meets it
        assert!(rel.colimit.is_trivial() || cmp.is_zero_hom());
    }

    #[test]
    fn relative_empty_restriction_is_iso() {
        let mut t = circle_tower();
        t.exhaustion[0] = BTreeSet::new();
        let z = FpGroup::free(1);
        let (rel, cmp) = relative_cech_truncated(&t, 1, &z, 1).unwrap();
        assert!(rel.colimit.isomorphic(&FpGroup::free(1)));
        // comparison is injective and surjective: generator to generator
        let img = cmp.apply_canonical(&[BigInt::one()]);
        assert!(img == vec![BigInt::one()] || img == vec![-BigInt::one()]);
    }

    #[test]
    fn metric_examples() {
        let t = circle_tower();
        let z = FpGroup::free(1);
        let cells0 = nerve(&t.levels[0]).simplices_of_dim(1).len();
        let zeroes = TowerCochain {
            level: 0,
            degree: 1,
            values: vec![BigInt::zero(); cells0],
        };
        assert_eq!(
            cochain_metric(&zeroes, &zeroes, &t, &z).unwrap(),
            BigRational::zero()
        );
        // differ on every cell: all three deltas fire -> 7/8
        let ones = TowerCochain {
            level: 0,
            degree: 1,
            values: vec![BigInt::one(); cells0],
        };
        assert_eq!(
            cochain_metric(&zeroes, &ones, &t, &z).unwrap(),
            BigRational::new(BigInt::from(7), BigInt::from(8))
        );
        // symmetry
        assert_eq!(
            cochain_metric(&ones, &zeroes, &t, &z).unwrap(),
            cochain_metric(&zeroes, &ones, &t, &z).unwrap()
        );
    }

    #[test]
    fn degree_mismatch_rejected() {
        let t = circle_tower();
        let z = FpGroup::free(1);
        let a = TowerCochain {
            level: 0,
            degree: 0,
            values: vec![BigInt::zero(); 3],
        };
        let b = TowerCochain {
            level: 0,
            degree: 1,
            values: vec![BigInt::zero(); 3],
        };
        assert!(matches!(
            cochain_metric(&a, &b, &t, &z),
            Err(CohoxError::DegreeMismatch)
        ));
    }

    #[test]
    fn canonical_map_and_star_condition() {
        let c = Cover::circle_arcs(12, 3);
        let w = uniform_weights(&c);
        let f = canonical_map(&c, &w).unwrap();
        // identity on the nerve
        let nv = nerve(&c);
        let p = SimplicialMap::identity(&nv);
        assert!(star_condition_check(&f, &p, &c).is_empty());
        // a point in exactly one member sits at a vertex
        let lone = f.iter().find(|(_, coords)| coords.len() == 1).unwrap();
        assert!(lone.1.values().next().unwrap().is_one());
    }

    #[test]
    fn star_condition_violation_witnessed() {
        let c = Cover::circle_arcs(12, 3);
        let nv = nerve(&c);
        // constant barycentric image at vertex 0
        let f: BTreeMap<usize, BTreeMap<usize, BigRational>> = c
            .ground
            .iter()
            .map(|&x| (x, [(0usize, BigRational::one())].into()))
            .collect();
        let p = SimplicialMap::identity(&nv);
        let witnesses = star_condition_check(&f, &p, &c);
        assert!(!witnesses.is_empty());
    }

    #[test]
    fn bad_weights_rejected() {
        let c = Cover::circle_arcs(12, 3);
        let mut w = uniform_weights(&c);
        w.get_mut(&1).unwrap().insert(2, BigRational::one());
        assert!(matches!(
            canonical_map(&c, &w),
            Err(CohoxError::WeightSupport { .. }) | Err(CohoxError::WeightSum { .. })
        ));
    }
}
