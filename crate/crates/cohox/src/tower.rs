//! Inverse towers of finitely presented abelian groups and
//! Mittag-Leffler / lim^1 analysis.
//!
//! A periodic tower (A, e) denotes A ←e← A ←e← ... unboundedly; an
//! explicit tower is a finite list read right to left. lim^1 of a
//! tower of countable groups vanishes iff the image chains stabilize
//! (Mittag-Leffler); for periodic towers a stabilized image chain
//! stays stable, so stabilization within the cap is a certificate.

use crate::error::CohoxError;
use crate::fpgroup::{FpGroup, GroupHom, Subgroup};
use num_bigint::BigInt;

#[derive(Clone)]
pub enum GroupTower {
    Periodic { group: FpGroup, endo: GroupHom },
    Explicit { groups: Vec<FpGroup>, bonding: Vec<GroupHom> },
}

impl GroupTower {
    pub fn periodic(group: FpGroup, endo: GroupHom) -> Result<Self, CohoxError> {
        if !endo.source.isomorphic(&group) || !endo.target.isomorphic(&group) {
            return Err(CohoxError::Validation {
                name: "group_tower",
                detail: "endomorphism must map the group to itself".into(),
            });
        }
        Ok(GroupTower::Periodic { group, endo })
    }

    /// bonding[k]: groups[k+1] -> groups[k].
    pub fn explicit(groups: Vec<FpGroup>, bonding: Vec<GroupHom>) -> Result<Self, CohoxError> {
        if groups.is_empty() || bonding.len() + 1 != groups.len() {
            return Err(CohoxError::Validation {
                name: "group_tower",
                detail: "need one bonding map per consecutive pair".into(),
            });
        }
        Ok(GroupTower::Explicit { groups, bonding })
    }

    pub fn base(&self) -> &FpGroup {
        match self {
            GroupTower::Periodic { group, .. } => group,
            GroupTower::Explicit { groups, .. } => &groups[0],
        }
    }

    /// Number of stored bonding maps (None = unbounded).
    pub fn length(&self) -> Option<usize> {
        match self {
            GroupTower::Periodic { .. } => None,
            GroupTower::Explicit { bonding, .. } => Some(bonding.len()),
        }
    }

    /// Image, at the base, of the composite of the first k bonding
    /// maps. None if the explicit tower is shorter than k.
    fn image_at_base(&self, k: usize) -> Option<Subgroup> {
        match self {
            GroupTower::Periodic { group, endo } => {
                let mut h = GroupHom::identity(group);
                for _ in 0..k {
                    h = h.compose(endo);
                }
                Some(h.image())
            }
            GroupTower::Explicit { groups, bonding } => {
                if k > bonding.len() {
                    return None;
                }
                let mut h = GroupHom::identity(&groups[0]);
                for b in bonding.iter().take(k) {
                    h = h.compose(b);
                }
                Some(h.image())
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum MittagLeffler {
    /// Image chain constant from this step on.
    Stabilized { at: usize },
    /// Strictly decreasing through `upto` comparisons, certified by a
    /// base-group element in the penultimate image but not the last.
    StrictlyDecreasing { upto: usize, witness: Vec<BigInt> },
    /// Chain neither stabilized nor everywhere strict within the cap.
    UndeterminedAtCap,
}

pub fn mittag_leffler(t: &GroupTower, cap: usize) -> MittagLeffler {
    let mut strict = true;
    let mut witness = None;
    let mut prev = t
        .image_at_base(0)
        .expect("image of the empty composite always exists");
    for k in 0..cap {
        let next = match t.image_at_base(k + 1) {
            Some(s) => s,
            None => {
                // explicit tower exhausted before the cap
                return if strict {
                    match witness {
                        Some(w) => MittagLeffler::StrictlyDecreasing { upto: k, witness: w },
                        None => MittagLeffler::UndeterminedAtCap,
                    }
                } else {
                    MittagLeffler::UndeterminedAtCap
                };
            }
        };
        if prev.equal(&next).expect("images live in the base group") {
            return MittagLeffler::Stabilized { at: k };
        }
        // certify strictness: a generator of the larger image outside
        // the smaller one
        let w = prev
            .generators()
            .iter()
            .find(|g| !next.contains(g))
            .cloned();
        match w {
            Some(w) => witness = Some(w),
            None => strict = false,
        }
        prev = next;
    }
    if strict {
        if let Some(w) = witness {
            return MittagLeffler::StrictlyDecreasing { upto: cap, witness: w };
        }
    }
    MittagLeffler::UndeterminedAtCap
}

#[derive(Clone, Debug)]
pub enum Lim1Verdict {
    Vanishes { stabilized_at: usize },
    DoesNotVanish { descent_upto: usize, witness: Vec<BigInt> },
    Undetermined,
}

/// lim^1 vanishing via the Mittag-Leffler criterion. A stabilized
/// image chain always gives vanishing; a certified strictly
/// descending chain of a periodic tower of f.g. groups gives
/// non-vanishing; anything else is reported as undetermined.
pub fn lim1_vanishes(t: &GroupTower, cap: usize) -> Lim1Verdict {
    match (mittag_leffler(t, cap), t) {
        (MittagLeffler::Stabilized { at }, _) => Lim1Verdict::Vanishes { stabilized_at: at },
        (MittagLeffler::StrictlyDecreasing { upto, witness }, GroupTower::Periodic { .. }) => {
            Lim1Verdict::DoesNotVanish {
                descent_upto: upto,
                witness,
            }
        }
        _ => Lim1Verdict::Undetermined,
    }
}

/// Cap large enough to settle any tower of finite groups: the order of
/// the base group (image chains in a finite group stabilize within
/// that many strict steps).
pub fn finite_cap(t: &GroupTower) -> Option<usize> {
    t.base().order().and_then(|o| usize::try_from(&o).ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;

    fn times(group: &FpGroup, m: i64) -> GroupHom {
        let k = group.generator_count();
        let mut mat = IntMatrix::zeros(k, k);
        for i in 0..k {
            mat.set(i, i, BigInt::from(m));
        }
        GroupHom::new(group.clone(), group.clone(), mat).unwrap()
    }

    #[test]
    fn z_times_p_strictly_decreases() {
        let z = FpGroup::free(1);
        let t = GroupTower::periodic(z.clone(), times(&z, 2)).unwrap();
        match mittag_leffler(&t, 10) {
            MittagLeffler::StrictlyDecreasing { upto, witness } => {
                assert_eq!(upto, 10);
                // witness is a power of two not divisible by the next
                assert_eq!(witness.len(), 1);
            }
            other => panic!("expected strict descent, got {other:?}"),
        }
        assert!(matches!(
            lim1_vanishes(&t, 10),
            Lim1Verdict::DoesNotVanish { .. }
        ));
    }

    #[test]
    fn identity_tower_stabilizes_immediately() {
        let z = FpGroup::free(1);
        let t = GroupTower::periodic(z.clone(), times(&z, 1)).unwrap();
        assert!(matches!(
            mittag_leffler(&t, 5),
            MittagLeffler::Stabilized { at: 0 }
        ));
        assert!(matches!(
            lim1_vanishes(&t, 5),
            Lim1Verdict::Vanishes { stabilized_at: 0 }
        ));
    }

    #[test]
    fn z8_times_two_stabilizes_at_three() {
        let g = FpGroup::cyclic(8);
        let t = GroupTower::periodic(g.clone(), times(&g, 2)).unwrap();
        let cap = finite_cap(&t).unwrap();
        assert_eq!(cap, 8);
        assert!(matches!(
            mittag_leffler(&t, cap),
            MittagLeffler::Stabilized { at: 3 }
        ));
    }

    #[test]
    fn finite_towers_always_vanish() {
        for m in [0i64, 2, 3, 5] {
            let g = FpGroup::cyclic(12);
            let t = GroupTower::periodic(g.clone(), times(&g, m)).unwrap();
            let cap = finite_cap(&t).unwrap();
            assert!(matches!(lim1_vanishes(&t, cap), Lim1Verdict::Vanishes { .. }));
        }
    }

    #[test]
    fn explicit_tower_descent() {
        let z = FpGroup::free(1);
        let maps: Vec<GroupHom> = (0..4).map(|_| times(&z, 3)).collect();
        let t = GroupTower::explicit(vec![z.clone(); 5], maps).unwrap();
        match mittag_leffler(&t, 10) {
            MittagLeffler::StrictlyDecreasing { upto: 4, .. } => {}
            other => panic!("unexpected {other:?}"),
        }
        // explicit towers never certify non-vanishing
        assert!(matches!(lim1_vanishes(&t, 10), Lim1Verdict::Undetermined));
    }
}
