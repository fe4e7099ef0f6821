//! Finitely presented abelian groups, homomorphisms and subgroups.
//!
//! A group is a cokernel Z^n / col-span(R). Smith normal form of R
//! yields the canonical form (free rank, torsion coefficients with
//! d_i | d_{i+1} and d_i >= 2), together with linear projection and
//! lifting maps between generator coordinates and canonical
//! coordinates. All element arithmetic happens in canonical
//! coordinates, where equality is decidable by residue reduction.

use crate::error::CohoxError;
use crate::matrix::{kernel_basis, smith_normal_form, solve, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Finitely presented abelian group with cached canonical form.
#[derive(Clone)]
pub struct FpGroup {
    generators: usize,
    relations: IntMatrix, // generators x relators, columns are relators
    // canonical data
    moduli: Vec<BigInt>, // torsion coefficients >= 2, then one 0 per free generator
    torsion_count: usize,
    proj: IntMatrix, // (t+f) x generators
    lift: IntMatrix, // generators x (t+f)
}

impl fmt::Debug for FpGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpGroup({})", self.canonical_name())
    }
}

impl FpGroup {
    /// Group presented by relator columns R inside Z^generators.
    pub fn from_presentation(generators: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows(), generators, "relator length != generator count");
        let snf = smith_normal_form(&relations);
        let diag = snf.diagonal();
        // rows of U with d_i = 1 are eliminated generators; keep torsion
        // rows (d >= 2) then free rows (d = 0 / beyond the diagonal)
        let mut torsion_rows = Vec::new();
        let mut free_rows = Vec::new();
        for i in 0..generators {
            match diag.get(i) {
                Some(d) if d.is_one() => {}
                Some(d) if !d.is_zero() => torsion_rows.push(i),
                _ => free_rows.push(i),
            }
        }
        let mut moduli: Vec<BigInt> = torsion_rows.iter().map(|&i| diag[i].clone()).collect();
        let torsion_count = moduli.len();
        moduli.extend(std::iter::repeat(BigInt::zero()).take(free_rows.len()));
        let kept: Vec<usize> = torsion_rows.iter().chain(free_rows.iter()).copied().collect();
        let proj = snf.u.select_rows(&kept);
        let lift = snf.u_inv().select_cols(&kept);
        FpGroup {
            generators,
            relations,
            moduli,
            torsion_count,
            proj,
            lift,
        }
    }

    /// Group with one generator per listed modulus (0 meaning a free
    /// factor), in the listed order. Generator coordinates keep that
    /// order; the cached canonical form sorts as usual.
    pub fn from_moduli(moduli: Vec<BigInt>) -> Self {
        let n = moduli.len();
        let nonzero: Vec<(usize, BigInt)> = moduli
            .into_iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .collect();
        let mut rel = IntMatrix::zeros(n, nonzero.len());
        for (c, (i, m)) in nonzero.into_iter().enumerate() {
            rel.set(i, c, m);
        }
        FpGroup::from_presentation(n, rel)
    }

    pub fn free(rank: usize) -> Self {
        Self::from_presentation(rank, IntMatrix::zeros(rank, 0))
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_presentation(1, IntMatrix::from_rows(vec![vec![BigInt::from(n)]]))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// Direct sum, canonical coordinates concatenated.
    pub fn direct_sum(parts: &[&FpGroup]) -> Self {
        let moduli: Vec<BigInt> = parts.iter().flat_map(|g| g.moduli.clone()).collect();
        Self::from_moduli(moduli)
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Invariant-factor moduli: torsion coefficients (>= 2, each dividing
    /// the next) followed by one zero per free generator.
    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.len() - self.torsion_count
    }

    pub fn torsion_coefficients(&self) -> &[BigInt] {
        &self.moduli[..self.torsion_count]
    }

    /// Rank of the canonical coordinate space (torsion + free).
    pub fn canonical_rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.is_finite() {
            Some(self.torsion_coefficients().iter().product())
        } else {
            None
        }
    }

    /// Two groups are isomorphic iff their canonical forms agree.
    pub fn isomorphic(&self, other: &FpGroup) -> bool {
        self.moduli == other.moduli
    }

    /// Canonical name, e.g. "Z^2 + Z/2 + Z/4" or "0".
    pub fn canonical_name(&self) -> String {
        let mut parts = Vec::new();
        if self.free_rank() == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank() > 1 {
            parts.push(format!("Z^{}", self.free_rank()));
        }
        for d in self.torsion_coefficients() {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Canonical coordinates of a generator-coordinate vector, with
    /// torsion residues reduced into [0, d).
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.generators, "element length != generator count");
        let w = self.proj.mul_vec(v);
        self.reduce_canonical(&w)
    }

    /// Residue reduction of a vector already in canonical coordinates.
    pub fn reduce_canonical(&self, w: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(w.len(), self.moduli.len());
        w.iter()
            .zip(&self.moduli)
            .map(|(x, m)| {
                if m.is_zero() {
                    x.clone()
                } else {
                    let r = x % m;
                    if r.is_negative() {
                        r + m
                    } else {
                        r
                    }
                }
            })
            .collect()
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn is_zero_canonical(&self, w: &[BigInt]) -> bool {
        self.reduce_canonical(w).iter().all(Zero::is_zero)
    }

    /// Generator-coordinate representative of a canonical vector.
    pub fn lift(&self, w: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(w.len(), self.moduli.len());
        self.lift.mul_vec(w)
    }

    pub fn proj_matrix(&self) -> &IntMatrix {
        &self.proj
    }

    pub fn lift_matrix(&self) -> &IntMatrix {
        &self.lift
    }

    /// All elements in canonical coordinates; None when infinite.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for m in self.torsion_coefficients() {
            let mut next = Vec::new();
            let bound: BigInt = m.clone();
            for prefix in &out {
                let mut i = BigInt::zero();
                while i < bound {
                    let mut p = prefix.clone();
                    p.push(i.clone());
                    next.push(p);
                    i += 1;
                }
            }
            out = next;
        }
        Some(out)
    }
}

/// Homomorphism between finitely presented groups, as a matrix on
/// generator coordinates.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: FpGroup,
    pub target: FpGroup,
    pub matrix: IntMatrix, // target.generators x source.generators
}

impl GroupHom {
    /// Checked constructor: the matrix must map source relators into the
    /// relator span of the target.
    pub fn new(source: FpGroup, target: FpGroup, matrix: IntMatrix) -> Result<Self, CohoxError> {
        assert_eq!(matrix.rows(), target.generator_count());
        assert_eq!(matrix.cols(), source.generator_count());
        let h = GroupHom {
            source,
            target,
            matrix,
        };
        for c in 0..h.source.relations().cols() {
            let rel = h.source.relations().column(c);
            let img = h.matrix.mul_vec(&rel);
            if !h.target.is_zero_element(&img) {
                return Err(CohoxError::IllDefinedHom { relator: c });
            }
        }
        Ok(h)
    }

    /// Hom given by a matrix between canonical coordinate spaces.
    pub fn from_canonical_matrix(
        source: FpGroup,
        target: FpGroup,
        cmatrix: &IntMatrix,
    ) -> Result<Self, CohoxError> {
        assert_eq!(cmatrix.rows(), target.canonical_rank());
        assert_eq!(cmatrix.cols(), source.canonical_rank());
        let m = target
            .lift_matrix()
            .mul(cmatrix)
            .mul(source.proj_matrix());
        Self::new(source, target, m)
    }

    pub fn identity(g: &FpGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.generator_count()),
        }
    }

    pub fn zero(source: &FpGroup, target: &FpGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.generator_count(), source.generator_count()),
        }
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    /// Image in canonical target coordinates of a canonical source vector.
    pub fn apply_canonical(&self, w: &[BigInt]) -> Vec<BigInt> {
        let v = self.source.lift(w);
        self.target.reduce(&self.apply(&v))
    }

    /// Matrix between canonical coordinate spaces.
    pub fn canonical_matrix(&self) -> IntMatrix {
        self.target
            .proj_matrix()
            .mul(&self.matrix)
            .mul(self.source.lift_matrix())
    }

    /// self after other (self ∘ other).
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(
            other.target.moduli(),
            self.source.moduli(),
            "composition through mismatched groups"
        );
        GroupHom {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn is_zero_hom(&self) -> bool {
        (0..self.source.generator_count()).all(|c| {
            let col = self.matrix.column(c);
            self.target.is_zero_element(&col)
        })
    }

    /// Homs are equal when they agree on every generator modulo target
    /// relations.
    pub fn hom_equal(&self, other: &GroupHom) -> bool {
        if self.source.generator_count() != other.source.generator_count() {
            return false;
        }
        (0..self.source.generator_count()).all(|c| {
            let a = self.matrix.column(c);
            let b = other.matrix.column(c);
            self.target.reduce(&a) == self.target.reduce(&b)
        })
    }

    pub fn kernel(&self) -> Subgroup {
        // x with M x in im(R_target), modulo nothing: solve the combined
        // system [M | R_t] and keep the leading block of each kernel vector
        let combined = self.matrix.hstack(self.target.relations());
        let snf = smith_normal_form(&combined);
        let n = self.source.generator_count();
        let gens: Vec<Vec<BigInt>> = kernel_basis(&snf)
            .into_iter()
            .map(|k| k[..n].to_vec())
            .collect();
        Subgroup::new(self.source.clone(), gens)
    }

    pub fn image(&self) -> Subgroup {
        let gens = (0..self.source.generator_count())
            .map(|c| self.matrix.column(c))
            .collect();
        Subgroup::new(self.target.clone(), gens)
    }

    pub fn cokernel(&self) -> FpGroup {
        let rel = self.target.relations().hstack(&self.matrix);
        FpGroup::from_presentation(self.target.generator_count(), rel)
    }
}

/// Subgroup of an ambient group, given by a generating set of ambient
/// elements. Generating sets are normalized on construction so that
/// equal subgroups have comparable data.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: FpGroup,
    generators: Vec<Vec<BigInt>>, // generator-coordinate vectors
}

impl Subgroup {
    pub fn new(ambient: FpGroup, generators: Vec<Vec<BigInt>>) -> Self {
        let generators = generators
            .into_iter()
            .filter(|g| !ambient.is_zero_element(g))
            .collect();
        Subgroup {
            ambient,
            generators,
        }
    }

    pub fn trivial(ambient: FpGroup) -> Self {
        Subgroup {
            ambient,
            generators: Vec::new(),
        }
    }

    pub fn full(ambient: FpGroup) -> Self {
        let gens = (0..ambient.generator_count())
            .map(|i| {
                let mut v = vec![BigInt::zero(); ambient.generator_count()];
                v[i] = BigInt::one();
                v
            })
            .collect();
        Subgroup::new(ambient, gens)
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    fn same_ambient(&self, other: &Subgroup) -> Result<(), CohoxError> {
        if self.ambient.moduli() == other.ambient.moduli()
            && self.ambient.generator_count() == other.ambient.generator_count()
        {
            Ok(())
        } else {
            Err(CohoxError::AmbientMismatch)
        }
    }

    /// Coefficients expressing v as a combination of the generators
    /// modulo ambient relations, if v is a member.
    pub fn express(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.ambient.generator_count();
        if self.generators.is_empty() {
            return if self.ambient.is_zero_element(v) {
                Some(Vec::new())
            } else {
                None
            };
        }
        let gmat = IntMatrix::from_columns(n, self.generators.clone());
        let combined = gmat.hstack(self.ambient.relations());
        let snf = smith_normal_form(&combined);
        solve(&snf, v).map(|x| x[..self.generators.len()].to_vec())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.express(v).is_some()
    }

    pub fn is_trivial_subgroup(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn subgroup_of(&self, other: &Subgroup) -> Result<bool, CohoxError> {
        self.same_ambient(other)?;
        Ok(self.generators.iter().all(|g| other.contains(g)))
    }

    pub fn equal(&self, other: &Subgroup) -> Result<bool, CohoxError> {
        Ok(self.subgroup_of(other)? && other.subgroup_of(self)?)
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup, CohoxError> {
        self.same_ambient(other)?;
        let n = self.ambient.generator_count();
        if self.generators.is_empty() || other.generators.is_empty() {
            return Ok(Subgroup::trivial(self.ambient.clone()));
        }
        // v = G1 x = G2 y + R z: kernel of [G1 | -G2 | -R], first block
        let g1 = IntMatrix::from_columns(n, self.generators.clone());
        let g2 = IntMatrix::from_columns(n, other.generators.clone());
        let mut neg = g2.hstack(self.ambient.relations());
        for r in 0..neg.rows() {
            for c in 0..neg.cols() {
                let v = -neg.get(r, c);
                neg.set(r, c, v);
            }
        }
        let combined = g1.hstack(&neg);
        let snf = smith_normal_form(&combined);
        let gens = kernel_basis(&snf)
            .into_iter()
            .map(|k| g1.mul_vec(&k[..self.generators.len()]))
            .collect();
        Ok(Subgroup::new(self.ambient.clone(), gens))
    }

    /// Subgroup generated by the union of both generating sets.
    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup, CohoxError> {
        self.same_ambient(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.clone());
        Ok(Subgroup::new(self.ambient.clone(), gens))
    }

    /// Quotient ambient / self.
    pub fn quotient(&self) -> FpGroup {
        let n = self.ambient.generator_count();
        let extra = IntMatrix::from_columns(n, self.generators.clone());
        FpGroup::from_presentation(n, self.ambient.relations().hstack(&extra))
    }

    /// The subgroup as a group in its own right, with the inclusion hom.
    pub fn as_group(&self) -> (FpGroup, GroupHom) {
        let n = self.ambient.generator_count();
        let s = self.generators.len();
        let gmat = IntMatrix::from_columns(n, self.generators.clone());
        // relations of the subgroup: x with G x in im(R_ambient)
        let combined = gmat.hstack(self.ambient.relations());
        let snf = smith_normal_form(&combined);
        let rels: Vec<Vec<BigInt>> = kernel_basis(&snf)
            .into_iter()
            .map(|k| k[..s].to_vec())
            .collect();
        let relmat = IntMatrix::from_columns(s, rels);
        let group = FpGroup::from_presentation(s, relmat);
        let incl = GroupHom {
            source: group.clone(),
            target: self.ambient.clone(),
            matrix: gmat,
        };
        (group, incl)
    }

    /// Push this subgroup forward along a hom out of the ambient group.
    pub fn map_forward(&self, h: &GroupHom) -> Subgroup {
        assert_eq!(h.source.generator_count(), self.ambient.generator_count());
        let gens = self
            .generators
            .iter()
            .map(|g| h.apply(g))
            .collect();
        Subgroup::new(h.target.clone(), gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FpGroup {
        FpGroup::free(1)
    }

    #[test]
    fn presentation_examples() {
        assert_eq!(FpGroup::cyclic(6).canonical_name(), "Z/6");
        assert_eq!(FpGroup::free(2).canonical_name(), "Z^2");
        let triv = FpGroup::from_presentation(2, IntMatrix::identity(2));
        assert_eq!(triv.canonical_name(), "0");
        // Z^2 with relation (2, 4): SNF diag(2), so Z + Z/2
        let g = FpGroup::from_presentation(
            2,
            IntMatrix::from_rows(vec![vec![BigInt::from(2)], vec![BigInt::from(4)]]),
        );
        assert_eq!(g.canonical_name(), "Z + Z/2");
    }

    #[test]
    fn element_reduction_round_trip() {
        let g = FpGroup::from_presentation(
            2,
            IntMatrix::from_rows(vec![vec![BigInt::from(6)], vec![BigInt::zero()]]),
        );
        // reduce then lift then reduce is stable
        let v = vec![BigInt::from(7), BigInt::from(-3)];
        let w = g.reduce(&v);
        let v2 = g.lift(&w);
        assert_eq!(g.reduce(&v2), w);
    }

    #[test]
    fn kernel_image_cokernel() {
        // multiplication by 2 on Z
        let h = GroupHom::new(z(), z(), IntMatrix::from_i64_rows(&[&[2]])).unwrap();
        assert!(h.kernel().is_trivial_subgroup());
        assert_eq!(h.cokernel().canonical_name(), "Z/2");
        let im = h.image();
        assert!(im.contains(&[BigInt::from(4)]));
        assert!(!im.contains(&[BigInt::from(3)]));
    }

    #[test]
    fn intersect_images() {
        let two = GroupHom::new(z(), z(), IntMatrix::from_i64_rows(&[&[2]])).unwrap();
        let three = GroupHom::new(z(), z(), IntMatrix::from_i64_rows(&[&[3]])).unwrap();
        let i = two.image().intersect(&three.image()).unwrap();
        // 6Z: membership oracle over |x| <= 20
        for x in -20i64..=20 {
            let v = vec![BigInt::from(x)];
            assert_eq!(i.contains(&v), x % 6 == 0, "x = {x}");
        }
    }

    #[test]
    fn quotient_z_by_2z() {
        let two = GroupHom::new(z(), z(), IntMatrix::from_i64_rows(&[&[2]])).unwrap();
        assert_eq!(two.image().quotient().canonical_name(), "Z/2");
        let id = GroupHom::identity(&z());
        assert!(id.kernel().is_trivial_subgroup());
    }

    #[test]
    fn subgroup_equality_is_equivalence() {
        let amb = FpGroup::cyclic(8);
        let s2 = Subgroup::new(amb.clone(), vec![vec![BigInt::from(2)]]);
        let s6 = Subgroup::new(amb.clone(), vec![vec![BigInt::from(6)]]);
        let s4 = Subgroup::new(amb.clone(), vec![vec![BigInt::from(4)]]);
        // gcd(6,8) = 2 so <6> = <2> in Z/8
        assert!(s2.equal(&s6).unwrap());
        assert!(!s2.equal(&s4).unwrap());
        assert!(s4.subgroup_of(&s2).unwrap());
        // intersect commutative and idempotent up to equality
        let a = s2.intersect(&s4).unwrap();
        let b = s4.intersect(&s2).unwrap();
        assert!(a.equal(&b).unwrap());
        assert!(s2.intersect(&s2).unwrap().equal(&s2).unwrap());
    }

    #[test]
    fn subgroup_as_group() {
        let amb = FpGroup::cyclic(8);
        let s = Subgroup::new(amb, vec![vec![BigInt::from(2)]]);
        let (g, incl) = s.as_group();
        assert_eq!(g.canonical_name(), "Z/4");
        assert!(incl.target.reduce(&incl.apply(&[BigInt::from(1)]))[0] == BigInt::from(2));
    }

    #[test]
    fn hom_well_definedness() {
        // Z/6 -> Z/4: x -> x is ill-defined, x -> 2x is fine
        let a = FpGroup::cyclic(6);
        let b = FpGroup::cyclic(4);
        assert!(GroupHom::new(a.clone(), b.clone(), IntMatrix::from_i64_rows(&[&[1]])).is_err());
        assert!(GroupHom::new(a, b, IntMatrix::from_i64_rows(&[&[2]])).is_ok());
    }
}
