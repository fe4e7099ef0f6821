//! Obstruction theory for maps into sphere models.
//!
//! The target is always the combinatorial n-sphere ∂Δ^{n+1} with the
//! fundamental cocycle ω = indicator of the face omitting the largest
//! vertex. For a map f defined on the n-skeleton the obstruction
//! cocycle is δ(f#ω); for two maps the difference cochain is
//! f#ω − g#ω, which satisfies δd = c(f) − c(g) on the nose and pairs
//! with fundamental cycles to degree differences. The classifying
//! class χ(f) = [f#ω] realizes the Hopf-style bijection
//! [X, S^n] ≅ H^n(X, L; Z) for complexes of dimension ≤ n.

use crate::cech::{cech_cohomology_truncated, CechSystem};
use crate::complex::{SimplicialComplex, SimplicialMap, SimplicialPair};
use crate::cover::{nerve, nerve_map, CoverTower};
use crate::error::CohoxError;
use crate::fpgroup::FpGroup;
use crate::simplicial::{cohomology, fundamental_cocycle, PairCohomology};
use num_bigint::BigInt;
use num_traits::Zero;

pub struct SphereTarget {
    pub n: usize,
    pub model: SimplicialComplex,
    /// values of ω over the sorted n-cells of the model
    pub fundamental: Vec<BigInt>,
}

impl SphereTarget {
    pub fn new(n: usize) -> Result<Self, CohoxError> {
        if n == 0 {
            return Err(CohoxError::NotSphereLike {
                reason: "sphere targets require n >= 1".into(),
            });
        }
        let model = SimplicialComplex::sphere(n);
        let fundamental = fundamental_cocycle(n);
        // the stored cocycle must generate H^n of the model
        let h = cohomology(&SimplicialPair::absolute(model.clone()), &FpGroup::free(1), n);
        let class = h.coh.encode(&fundamental).expect("omega is a cocycle");
        debug_assert!(
            class == vec![BigInt::from(1)] || class == vec![BigInt::from(-1)],
            "fundamental cocycle must generate"
        );
        Ok(SphereTarget {
            n,
            model,
            fundamental,
        })
    }

    /// f#ω as a vector over the sorted n-cells of f's ambient complex.
    fn pullback_omega(
        &self,
        f: &SimplicialMap,
        ambient: &SimplicialComplex,
    ) -> Result<Vec<BigInt>, CohoxError> {
        if f.target != self.model {
            return Err(CohoxError::NotSphereLike {
                reason: "map target is not the sphere model".into(),
            });
        }
        if !ambient.skeleton(self.n).is_subcomplex_of(&f.source) {
            return Err(CohoxError::Validation {
                name: "obstruction",
                detail: format!("map is not defined on the whole {}-skeleton", self.n),
            });
        }
        let support: Vec<usize> = (0..=self.n).collect();
        Ok(ambient
            .simplices_of_dim(self.n)
            .iter()
            .map(|s| match f.apply_simplex(s) {
                Some((sign, image)) if image == support => BigInt::from(sign),
                _ => BigInt::zero(),
            })
            .collect())
    }
}

/// A cochain on the cells of a pair outside the subcomplex.
#[derive(Clone, Debug)]
pub struct RelativeCochain {
    pub degree: usize,
    pub cells: Vec<Vec<usize>>,
    pub values: Vec<BigInt>,
}

impl RelativeCochain {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Cells carrying a nonzero value.
    pub fn support(&self) -> Vec<Vec<usize>> {
        self.cells
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, _)| c.clone())
            .collect()
    }

    pub fn value_sum(&self) -> BigInt {
        self.values.iter().sum()
    }
}

pub type ObstructionCochain = RelativeCochain;
pub type DifferenceCochain = RelativeCochain;

fn coboundary_value(ambient: &SimplicialComplex, omega_n: &[BigInt], cell: &[usize]) -> BigInt {
    let n_cells = ambient.simplices_of_dim(cell.len() - 2);
    let mut total = BigInt::zero();
    for omit in 0..cell.len() {
        let face: Vec<usize> = cell
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != omit)
            .map(|(_, v)| *v)
            .collect();
        if let Some(idx) = n_cells.iter().position(|c| *c == face) {
            let sign = if omit % 2 == 0 { 1 } else { -1 };
            total += BigInt::from(sign) * &omega_n[idx];
        }
    }
    total
}

/// c(f) = δ(f#ω), restricted to the (n+1)-cells outside the
/// subcomplex; the map must be relatively trivial over the subcomplex
/// (the coboundary vanishes there).
pub fn obstruction_cocycle(
    f: &SimplicialMap,
    pair: &SimplicialPair,
    target: &SphereTarget,
) -> Result<ObstructionCochain, CohoxError> {
    let n = target.n;
    let omega = target.pullback_omega(f, &pair.complex)?;
    let mut cells = Vec::new();
    let mut values = Vec::new();
    for cell in pair.complex.simplices_of_dim(n + 1) {
        let v = coboundary_value(&pair.complex, &omega, &cell);
        if pair.subcomplex.contains(&cell) {
            if !v.is_zero() {
                return Err(CohoxError::Validation {
                    name: "obstruction_cocycle",
                    detail: format!("coboundary does not vanish on subcomplex cell {cell:?}"),
                });
            }
        } else {
            cells.push(cell);
            values.push(v);
        }
    }
    let out = RelativeCochain {
        degree: n + 1,
        cells,
        values,
    };
    debug_assert!(is_relative_cocycle(&out, pair));
    Ok(out)
}

fn is_relative_cocycle(c: &RelativeCochain, pair: &SimplicialPair) -> bool {
    // δc = 0 over all (degree+1)-cells outside the subcomplex
    let above = pair.complex.simplices_of_dim(c.degree + 1);
    let all_cells = pair.complex.simplices_of_dim(c.degree);
    let full: Vec<BigInt> = all_cells
        .iter()
        .map(|cell| {
            c.cells
                .iter()
                .position(|x| x == cell)
                .map(|i| c.values[i].clone())
                .unwrap_or_else(BigInt::zero)
        })
        .collect();
    above
        .iter()
        .filter(|cell| !pair.subcomplex.contains(cell))
        .all(|cell| coboundary_value(&pair.complex, &full, cell).is_zero())
}

/// Pointwise extensibility test (Lemma-level: the map extends over the
/// (n+1)-skeleton iff the obstruction vanishes identically). Returns
/// the offending cells otherwise.
pub fn is_extensible(c: &ObstructionCochain) -> (bool, Vec<Vec<usize>>) {
    let witnesses = c.support();
    (witnesses.is_empty(), witnesses)
}

/// d(f, g) = f#ω − g#ω on the n-cells outside the subcomplex. The two
/// maps must agree (after pullback of ω) over the subcomplex.
pub fn difference_cochain(
    f: &SimplicialMap,
    g: &SimplicialMap,
    pair: &SimplicialPair,
    target: &SphereTarget,
) -> Result<DifferenceCochain, CohoxError> {
    let n = target.n;
    let fo = target.pullback_omega(f, &pair.complex)?;
    let go = target.pullback_omega(g, &pair.complex)?;
    let all = pair.complex.simplices_of_dim(n);
    let mut cells = Vec::new();
    let mut values = Vec::new();
    for (i, cell) in all.into_iter().enumerate() {
        let d = &fo[i] - &go[i];
        if pair.subcomplex.contains(&cell) {
            if !d.is_zero() {
                return Err(CohoxError::AgreementViolation { simplex: cell });
            }
        } else {
            cells.push(cell);
            values.push(d);
        }
    }
    Ok(RelativeCochain {
        degree: n,
        cells,
        values,
    })
}

/// χ(f) = [f#ω] in H^n(X, L; Z), with the cohomology it lives in.
pub fn chi_class(
    f: &SimplicialMap,
    pair: &SimplicialPair,
    target: &SphereTarget,
) -> Result<(PairCohomology, Vec<BigInt>), CohoxError> {
    let n = target.n;
    let omega = target.pullback_omega(f, &pair.complex)?;
    let all = pair.complex.simplices_of_dim(n);
    let mut rel = Vec::new();
    for (i, cell) in all.iter().enumerate() {
        if pair.subcomplex.contains(cell) {
            if !omega[i].is_zero() {
                return Err(CohoxError::AgreementViolation {
                    simplex: cell.clone(),
                });
            }
        } else {
            rel.push(omega[i].clone());
        }
    }
    let h = cohomology(pair, &FpGroup::free(1), n);
    let class = h.coh.encode(&rel).ok_or(CohoxError::Validation {
        name: "chi_class",
        detail: "pulled-back fundamental cocycle is not a relative cocycle \
                 (the map does not extend over the (n+1)-skeleton relative to L)"
            .into(),
    })?;
    Ok((h, class))
}

/// Homotopy classification of maps (X, L) -> S^n for dim X ≤ n: the
/// classes are H^n(X, L; Z); representatives are recorded for classes
/// realized by stock maps.
pub struct ClassifyMaps {
    pub cohomology: PairCohomology,
    /// (class, description) for classes realized by an exhibited map
    pub representatives: Vec<(Vec<BigInt>, String)>,
}

pub fn classify_maps(
    pair: &SimplicialPair,
    target: &SphereTarget,
) -> Result<ClassifyMaps, CohoxError> {
    let n = target.n;
    if let Some(dim) = pair.complex.dim() {
        if dim > n {
            return Err(CohoxError::DimensionHypothesis { dim, n });
        }
    }
    let h = cohomology(pair, &FpGroup::free(1), n);
    let mut representatives = Vec::new();
    let zero = vec![BigInt::zero(); h.coh.group.canonical_rank()];
    representatives.push((zero, "constant map".to_string()));
    if pair.subcomplex.is_empty() && pair.complex == target.model {
        let id = SimplicialMap::identity(&target.model);
        let (_, class) = chi_class(&id, pair, target)?;
        representatives.push((class, "identity".to_string()));
    }
    Ok(ClassifyMaps {
        cohomology: h,
        representatives,
    })
}

/// Θ at a finite stage: χ of a simplicial map p from the level-α nerve
/// into the sphere model, pushed into the truncated Čech colimit.
/// Refinement stability is verified by recomputing one level deeper.
pub fn theta_finite_stage(
    t: &CoverTower,
    alpha: usize,
    p: &SimplicialMap,
    target: &SphereTarget,
) -> Result<(CechSystem, Vec<BigInt>), CohoxError> {
    let n = target.n;
    if alpha >= t.levels.len() {
        return Err(CohoxError::IndexOutOfRange {
            index: alpha,
            limit: t.levels.len(),
        });
    }
    let nerve_alpha = nerve(&t.levels[alpha]);
    if p.source != nerve_alpha {
        return Err(CohoxError::Validation {
            name: "theta_finite_stage",
            detail: format!("map source is not the level-{alpha} nerve"),
        });
    }
    let sys = cech_cohomology_truncated(t, &FpGroup::free(1), n)?;
    let pair = SimplicialPair::absolute(nerve_alpha);
    let (_, class) = chi_class(p, &pair, target)?;
    let colim = sys.colimit_class(alpha, &class);
    if alpha + 1 < t.levels.len() {
        // pull p back one level and verify the colimit class agrees
        let r = nerve_map(&t.refinements[alpha])?;
        let finer = p.compose(&r)?;
        let fpair = SimplicialPair::absolute(finer.source.clone());
        let (_, fclass) = chi_class(&finer, &fpair, target)?;
        let fcolim = sys.colimit_class(alpha + 1, &fclass);
        if fcolim != colim {
            return Err(CohoxError::Validation {
                name: "theta_finite_stage",
                detail: "colimit class is not refinement-stable".into(),
            });
        }
    }
    Ok((sys, colim))
}
