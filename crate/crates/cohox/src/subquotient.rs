//! Subquotients K / I of a finitely presented ambient group, with
//! decoding (class -> ambient representative) and encoding (ambient
//! member of K -> class coordinates). This is the common shape of every
//! kernel-mod-image computation in the crate.

use crate::error::CohoxError;
use crate::fpgroup::{FpGroup, GroupHom, Subgroup};
use num_bigint::BigInt;

pub struct SubQuotient {
    /// K / I in canonical form.
    pub group: FpGroup,
    kernel: Subgroup,
    kernel_group: FpGroup,
    inclusion: GroupHom,
}

impl SubQuotient {
    /// Requires I to be a subgroup of K inside the same ambient group.
    pub fn new(kernel: Subgroup, image: &Subgroup) -> Result<Self, CohoxError> {
        if !image.subgroup_of(&kernel)? {
            return Err(CohoxError::Validation {
                name: "subquotient",
                detail: "image is not contained in the kernel".into(),
            });
        }
        let (kernel_group, inclusion) = kernel.as_group();
        let mut relators: Vec<Vec<BigInt>> = kernel_group
            .relations()
            .columns();
        for g in image.generators() {
            let coords = kernel
                .express(g)
                .expect("image generator is a member of the kernel");
            relators.push(coords);
        }
        let s = kernel.generators().len();
        let rel = crate::matrix::IntMatrix::from_columns(s, relators);
        let group = FpGroup::from_presentation(s, rel);
        Ok(SubQuotient {
            group,
            kernel,
            kernel_group,
            inclusion,
        })
    }

    pub fn ambient(&self) -> &FpGroup {
        &self.kernel.ambient
    }

    pub fn kernel_subgroup(&self) -> &Subgroup {
        &self.kernel
    }

    /// Ambient representative of a class given in the quotient's
    /// canonical coordinates.
    pub fn decode(&self, class: &[BigInt]) -> Vec<BigInt> {
        let kcoords = self.group.lift(class);
        self.inclusion.apply(&kcoords)
    }

    /// Class of an ambient element, if it lies in K.
    pub fn encode(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let kcoords = self.kernel.express(v)?;
        Some(self.group.reduce(&kcoords))
    }

    /// Representatives of the canonical generators of the quotient.
    pub fn generator_representatives(&self) -> Vec<Vec<BigInt>> {
        (0..self.group.canonical_rank())
            .map(|i| {
                let mut class = vec![BigInt::from(0); self.group.canonical_rank()];
                class[i] = BigInt::from(1);
                self.decode(&class)
            })
            .collect()
    }

    /// Lift a quotient subgroup (given by class coordinates of its
    /// generators) to an ambient subgroup between I and K.
    pub fn lift_subgroup(&self, classes: &[Vec<BigInt>]) -> Subgroup {
        let gens = classes.iter().map(|c| self.decode(c)).collect();
        Subgroup::new(self.kernel.ambient.clone(), gens)
    }

    /// Image, as a subgroup of the quotient (class-coordinate vectors),
    /// of a set of ambient elements of K.
    pub fn project_subgroup(&self, members: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        members
            .iter()
            .filter_map(|m| self.encode(m))
            .filter(|c| !self.group.is_zero_canonical(c))
            .collect()
    }

    #[allow(dead_code)]
    pub fn kernel_group(&self) -> &FpGroup {
        &self.kernel_group
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;

    #[test]
    fn z_mod_2z_via_subquotient() {
        let z = FpGroup::free(1);
        let k = Subgroup::full(z.clone());
        let two = GroupHom::new(z.clone(), z, IntMatrix::from_i64_rows(&[&[2]])).unwrap();
        let q = SubQuotient::new(k, &two.image()).unwrap();
        assert_eq!(q.group.canonical_name(), "Z/2");
        let rep = q.decode(&[BigInt::from(1)]);
        assert_eq!(q.encode(&rep), Some(vec![BigInt::from(1)]));
        assert_eq!(q.encode(&[BigInt::from(4)]), Some(vec![BigInt::from(0)]));
    }
}
