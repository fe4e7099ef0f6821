//! Finite covers of a ground set, refinement maps, nerves, and towers
//! of covers with exhaustions.

use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::CohoxError;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub ground: BTreeSet<usize>,
    pub members: Vec<BTreeSet<usize>>,
}

impl Cover {
    pub fn new(ground: BTreeSet<usize>, members: Vec<BTreeSet<usize>>) -> Result<Self, CohoxError> {
        let union: BTreeSet<usize> = members.iter().flatten().copied().collect();
        if union != ground {
            return Err(CohoxError::Validation {
                name: "cover",
                detail: "union of members does not equal the ground set".into(),
            });
        }
        Ok(Cover { ground, members })
    }

    /// m arcs of equal overlap pattern covering 0..points-1 arranged in
    /// a cycle: arc i covers a contiguous wrap-around range, consecutive
    /// arcs overlap, non-consecutive ones do not.
    pub fn circle_arcs(points: usize, m: usize) -> Cover {
        assert!(m >= 3 && points >= 2 * m);
        let per = points / m;
        let members: Vec<BTreeSet<usize>> = (0..m)
            .map(|i| {
                // arc i: from i*per to (i+1)*per inclusive (wrapping),
                // so consecutive arcs share one point
                (0..=per).map(|k| (i * per + k) % points).collect()
            })
            .collect();
        let ground = (0..points).collect();
        Cover { ground, members }
    }
}

/// Nerve: a simplex per finite subfamily with nonempty intersection.
pub fn nerve(c: &Cover) -> SimplicialComplex {
    let n = c.members.len();
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    // grow simplices dimension by dimension; intersection emptiness is
    // monotone so this prunes early
    let mut frontier: Vec<(Vec<usize>, BTreeSet<usize>)> = (0..n)
        .filter(|&i| !c.members[i].is_empty())
        .map(|i| (vec![i], c.members[i].clone()))
        .collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (verts, inter) in &frontier {
            simplices.push(verts.clone());
            for j in verts.last().unwrap() + 1..n {
                let meet: BTreeSet<usize> =
                    inter.intersection(&c.members[j]).copied().collect();
                if !meet.is_empty() {
                    let mut v = verts.clone();
                    v.push(j);
                    next.push((v, meet));
                }
            }
        }
        frontier = next;
    }
    SimplicialComplex::from_maximal(&simplices)
}

#[derive(Clone, Debug)]
pub struct RefinementMap {
    pub fine: Cover,
    pub coarse: Cover,
    pub assignment: Vec<usize>,
}

impl RefinementMap {
    pub fn new(fine: Cover, coarse: Cover, assignment: Vec<usize>) -> Result<Self, CohoxError> {
        if assignment.len() != fine.members.len() {
            return Err(CohoxError::Validation {
                name: "refinement",
                detail: "assignment length does not match the fine cover".into(),
            });
        }
        for (i, &j) in assignment.iter().enumerate() {
            if j >= coarse.members.len() || !fine.members[i].is_subset(&coarse.members[j]) {
                return Err(CohoxError::InvalidRefinement { member: i });
            }
        }
        Ok(RefinementMap {
            fine,
            coarse,
            assignment,
        })
    }

    pub fn identity(c: &Cover) -> RefinementMap {
        RefinementMap {
            fine: c.clone(),
            coarse: c.clone(),
            assignment: (0..c.members.len()).collect(),
        }
    }

    /// self after finer: a refinement from finer.fine to self.coarse.
    pub fn compose(&self, finer: &RefinementMap) -> Result<RefinementMap, CohoxError> {
        let assignment = finer
            .assignment
            .iter()
            .map(|&j| self.assignment[j])
            .collect();
        RefinementMap::new(finer.fine.clone(), self.coarse.clone(), assignment)
    }
}

/// Simplicial map of nerves induced by a refinement.
pub fn nerve_map(f: &RefinementMap) -> Result<SimplicialMap, CohoxError> {
    let src = nerve(&f.fine);
    let tgt = nerve(&f.coarse);
    let vm: BTreeMap<usize, usize> = src
        .vertices()
        .into_iter()
        .map(|v| (v, f.assignment[v]))
        .collect();
    SimplicialMap::new(src, tgt, vm)
}

#[derive(Clone, Debug)]
pub struct CoverTower {
    /// levels[0] is the coarsest; refinements[k] maps level k+1 to
    /// level k.
    pub levels: Vec<Cover>,
    pub refinements: Vec<RefinementMap>,
    /// nested ground subsets X_1 ⊆ X_2 ⊆ ..., one exhaustion stage per
    /// entry (indexed from 1 in the metric)
    pub exhaustion: Vec<BTreeSet<usize>>,
}

impl CoverTower {
    pub fn new(
        levels: Vec<Cover>,
        refinements: Vec<RefinementMap>,
        exhaustion: Vec<BTreeSet<usize>>,
    ) -> Result<Self, CohoxError> {
        if levels.is_empty() {
            return Err(CohoxError::Validation {
                name: "cover_tower",
                detail: "tower must have at least one level".into(),
            });
        }
        if refinements.len() + 1 != levels.len() {
            return Err(CohoxError::Validation {
                name: "cover_tower",
                detail: "need exactly one refinement per consecutive level pair".into(),
            });
        }
        for (k, r) in refinements.iter().enumerate() {
            if r.fine != levels[k + 1] || r.coarse != levels[k] {
                return Err(CohoxError::Validation {
                    name: "cover_tower",
                    detail: format!("refinement {k} does not connect levels {} and {k}", k + 1),
                });
            }
        }
        for w in exhaustion.windows(2) {
            if !w[0].is_subset(&w[1]) {
                return Err(CohoxError::Validation {
                    name: "cover_tower",
                    detail: "exhaustion sets are not nested".into(),
                });
            }
        }
        for x in &exhaustion {
            if !x.is_subset(&levels[0].ground) {
                return Err(CohoxError::Validation {
                    name: "cover_tower",
                    detail: "exhaustion set is not contained in the ground set".into(),
                });
            }
        }
        Ok(CoverTower {
            levels,
            refinements,
            exhaustion,
        })
    }

    pub fn constant(c: &Cover, n_levels: usize, exhaustion: Vec<BTreeSet<usize>>) -> Self {
        let levels = vec![c.clone(); n_levels];
        let refinements = vec![RefinementMap::identity(c); n_levels - 1];
        CoverTower::new(levels, refinements, exhaustion).expect("constant tower is valid")
    }

    /// Derived refinement from level `fine` down to level `coarse`.
    pub fn refinement(&self, fine: usize, coarse: usize) -> Result<RefinementMap, CohoxError> {
        if coarse > fine || fine >= self.levels.len() {
            return Err(CohoxError::IndexOutOfRange {
                index: fine,
                limit: self.levels.len(),
            });
        }
        let mut r = RefinementMap::identity(&self.levels[fine]);
        for k in (coarse..fine).rev() {
            r = self.refinements[k].compose(&r)?;
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::FpGroup;
    use crate::simplicial::cohomology;
    use crate::complex::SimplicialPair;

    #[test]
    fn nerve_basics() {
        // single member -> point
        let c = Cover::new((0..3).collect(), vec![(0..3).collect()]).unwrap();
        assert_eq!(nerve(&c).dim(), Some(0));
        // two disjoint members -> two isolated vertices
        let d = Cover::new(
            (0..4).collect(),
            vec![[0, 1].into_iter().collect(), [2, 3].into_iter().collect()],
        )
        .unwrap();
        let nd = nerve(&d);
        assert_eq!(nd.vertices().len(), 2);
        assert_eq!(nd.simplices_of_dim(1).len(), 0);
    }

    #[test]
    fn circle_cover_nerve_is_circle() {
        let c = Cover::circle_arcs(12, 3);
        let n = nerve(&c);
        // triangle boundary: 3 vertices, 3 edges, no 2-simplex
        assert_eq!(n.vertices().len(), 3);
        assert_eq!(n.simplices_of_dim(1).len(), 3);
        assert_eq!(n.simplices_of_dim(2).len(), 0);
        let h1 = cohomology(&SimplicialPair::absolute(n), &FpGroup::free(1), 1);
        assert_eq!(h1.coh.group.canonical_name(), "Z");
    }

    #[test]
    fn six_arc_refinement() {
        let fine = Cover::circle_arcs(12, 6);
        let coarse = Cover::circle_arcs(12, 3);
        // fine arc i covers [2i, 2i+2]; coarse arc j covers [4j, 4j+4]
        let assignment: Vec<usize> = (0..6)
            .map(|i| {
                (0..3)
                    .find(|&j| fine.members[i].is_subset(&coarse.members[j]))
                    .unwrap()
            })
            .collect();
        let r = RefinementMap::new(fine, coarse, assignment).unwrap();
        let f = nerve_map(&r).unwrap();
        // induced H^1 map is an isomorphism
        let h = crate::simplicial::induced_map(
            &f,
            &SimplicialPair::absolute(f.source.clone()),
            &SimplicialPair::absolute(f.target.clone()),
            &FpGroup::free(1),
            1,
        )
        .unwrap();
        let img = h.apply_canonical(&[num_bigint::BigInt::from(1)]);
        assert!(
            img == vec![num_bigint::BigInt::from(1)] || img == vec![num_bigint::BigInt::from(-1)]
        );
    }

    #[test]
    fn refinement_validation() {
        let fine = Cover::circle_arcs(12, 6);
        let coarse = Cover::circle_arcs(12, 3);
        let bad = RefinementMap::new(fine, coarse, vec![0; 6]);
        assert!(matches!(bad, Err(CohoxError::InvalidRefinement { .. })));
    }

    #[test]
    fn tower_composites() {
        let c = Cover::circle_arcs(12, 3);
        let t = CoverTower::constant(&c, 3, vec![]);
        let r = t.refinement(2, 0).unwrap();
        assert_eq!(r.assignment, vec![0, 1, 2]);
        assert!(t.refinement(0, 2).is_err());
    }
}
