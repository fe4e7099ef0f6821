//! Ext^1 of finite abelian groups by symmetric 2-cocycle tables.
//!
//! A table c : B x B -> A satisfying
//!   c(x, 0) = c(0, x),
//!   c(x, y) + c(x+y, z) = c(x, y+z) + c(y, z),
//!   c(x, y) = c(y, x)
//! records the multiplication table of an abelian extension
//! 0 -> A -> G -> B -> 0; the quotient by coboundaries
//! h(x) + h(y) - h(x+y) classifies such extensions, with the Baer sum
//! realized by entrywise addition of tables.
//!
//! Note on argument order: `cocycle_ext_group(a, b)` uses tables on B
//! with coefficients in A, so it classifies extensions of B by A
//! (classically Ext^1(B, A)). For finite groups this has the same
//! canonical form as Ext^1(A, B), which is what `ext_group(a, b)`
//! computes; the cross-validation tests rely on that agreement.
//!
//! Symmetry is folded into the variable set (one variable per
//! unordered pair), which keeps the linear system small enough that no
//! full table enumeration is ever needed; a brute-force enumerator
//! remains in the tests as an independent oracle.

use crate::error::{Budget, CohoxError};
use crate::fpgroup::{FpGroup, GroupHom, Subgroup};
use crate::matrix::IntMatrix;
use crate::subquotient::SubQuotient;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Symmetric 2-cocycle table on B with values in A (both finite).
/// Keys are ordered pairs of canonical B-elements; the table is stored
/// in full so lookups need no folding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricCocycle {
    pub table: BTreeMap<(Vec<BigInt>, Vec<BigInt>), Vec<BigInt>>,
}

impl SymmetricCocycle {
    pub fn value(&self, x: &[BigInt], y: &[BigInt]) -> &[BigInt] {
        &self.table[&(x.to_vec(), y.to_vec())]
    }

    /// Baer sum of two extension tables: entrywise addition in A.
    pub fn baer_sum(&self, other: &SymmetricCocycle, a: &FpGroup) -> SymmetricCocycle {
        let table = self
            .table
            .iter()
            .map(|(k, v)| {
                let w = &other.table[k];
                let sum: Vec<BigInt> = v.iter().zip(w).map(|(p, q)| p + q).collect();
                (k.clone(), a.reduce_canonical(&sum))
            })
            .collect();
        SymmetricCocycle { table }
    }

    pub fn verify(&self, a: &FpGroup, b: &FpGroup) -> bool {
        let elems = b.elements().expect("B finite");
        let add = |x: &[BigInt], y: &[BigInt]| {
            let s: Vec<BigInt> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            b.reduce_canonical(&s)
        };
        let zero = vec![BigInt::zero(); b.canonical_rank()];
        for x in &elems {
            if self.value(x, &zero) != self.value(&zero, x) {
                return false;
            }
            for y in &elems {
                if self.value(x, y) != self.value(y, x) {
                    return false;
                }
                for z in &elems {
                    let lhs: Vec<BigInt> = self
                        .value(x, y)
                        .iter()
                        .zip(self.value(&add(x, y), z))
                        .map(|(p, q)| p + q)
                        .collect();
                    let rhs: Vec<BigInt> = self
                        .value(x, &add(y, z))
                        .iter()
                        .zip(self.value(y, z))
                        .map(|(p, q)| p + q)
                        .collect();
                    if a.reduce_canonical(&lhs) != a.reduce_canonical(&rhs) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Ext^1 computed from cocycle tables, with representative tables for
/// the canonical generators.
pub struct CocycleExt {
    pub group: FpGroup,
    pub representatives: Vec<SymmetricCocycle>,
    coeff: FpGroup,
    base_elems: Vec<Vec<BigInt>>,
    pairs: Vec<(usize, usize)>,
    quotient: SubQuotient,
}

impl CocycleExt {
    /// Table for a class given in canonical coordinates of the group.
    pub fn decode(&self, class: &[BigInt]) -> SymmetricCocycle {
        let ambient = self.quotient.decode(class);
        self.unfold(&ambient)
    }

    /// Class of a cocycle table.
    pub fn encode(&self, c: &SymmetricCocycle) -> Option<Vec<BigInt>> {
        let s = self.coeff.canonical_rank();
        let mut v = vec![BigInt::zero(); self.pairs.len() * s];
        for (pi, (i, j)) in self.pairs.iter().enumerate() {
            let val = c.value(&self.base_elems[*i], &self.base_elems[*j]);
            v[pi * s..(pi + 1) * s].clone_from_slice(val);
        }
        self.quotient.encode(&v)
    }

    fn unfold(&self, ambient: &[BigInt]) -> SymmetricCocycle {
        let s = self.coeff.canonical_rank();
        let mut table = BTreeMap::new();
        for (pi, (i, j)) in self.pairs.iter().enumerate() {
            let val = self
                .coeff
                .reduce_canonical(&ambient[pi * s..(pi + 1) * s].to_vec());
            table.insert(
                (self.base_elems[*i].clone(), self.base_elems[*j].clone()),
                val.clone(),
            );
            table.insert(
                (self.base_elems[*j].clone(), self.base_elems[*i].clone()),
                val,
            );
        }
        SymmetricCocycle { table }
    }
}

/// Ext^1 of (finite) B by (finite) A via symmetric cocycle tables
/// modulo coboundaries.
pub fn cocycle_ext_group(
    a: &FpGroup,
    b: &FpGroup,
    budget: Budget,
) -> Result<CocycleExt, CohoxError> {
    if !a.is_finite() || !b.is_finite() {
        return Err(CohoxError::Validation {
            name: "cocycle_ext_group",
            detail: "both groups must be finite".into(),
        });
    }
    let base_elems = b.elements().expect("finite");
    let nb = base_elems.len();
    let s = a.canonical_rank();
    let index: BTreeMap<Vec<BigInt>, usize> = base_elems
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let add = |i: usize, j: usize| -> usize {
        let sum: Vec<BigInt> = base_elems[i]
            .iter()
            .zip(&base_elems[j])
            .map(|(p, q)| p + q)
            .collect();
        index[&b.reduce_canonical(&sum)]
    };

    // one variable per unordered pair (symmetry folded in)
    let mut pairs = Vec::new();
    let mut pair_index = BTreeMap::new();
    for i in 0..nb {
        for j in i..nb {
            pair_index.insert((i, j), pairs.len());
            pairs.push((i, j));
        }
    }
    let pidx = |i: usize, j: usize| pair_index[&(i.min(j), i.max(j))];
    let npairs = pairs.len();
    budget.check((npairs * s.max(1)) as u64, "cocycle table entries")?;

    // cocycle identity rows: c(x,y) + c(x+y,z) - c(x,y+z) - c(y,z) = 0;
    // c(x,0) = c(0,x) holds by symmetry
    let mut rows: BTreeSet<Vec<i64>> = BTreeSet::new();
    for x in 0..nb {
        for y in 0..nb {
            for z in 0..nb {
                let mut row = vec![0i64; npairs];
                row[pidx(x, y)] += 1;
                row[pidx(add(x, y), z)] += 1;
                row[pidx(x, add(y, z))] -= 1;
                row[pidx(y, z)] -= 1;
                if row.iter().any(|&v| v != 0) {
                    rows.insert(row);
                }
            }
        }
    }
    let rows: Vec<Vec<i64>> = rows.into_iter().collect();
    let neq = rows.len();

    let ambient_moduli: Vec<BigInt> = (0..npairs).flat_map(|_| a.moduli().to_vec()).collect();
    let ambient = FpGroup::from_moduli(ambient_moduli);
    let target_moduli: Vec<BigInt> = (0..neq).flat_map(|_| a.moduli().to_vec()).collect();
    let target = FpGroup::from_moduli(target_moduli);
    let mut cond = IntMatrix::zeros(neq, npairs);
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v != 0 {
                cond.set(r, c, BigInt::from(v));
            }
        }
    }
    let cond_hom = GroupHom::new(ambient.clone(), target, cond.kron_identity(s))
        .expect("condition map is coordinatewise, hence well-defined");
    let kernel = cond_hom.kernel();

    // coboundaries: delta(h)(x,y) = h(x) + h(y) - h(x+y)
    let mut cob_gens = Vec::new();
    for w in 0..nb {
        for comp in 0..s {
            let mut v = vec![BigInt::zero(); npairs * s];
            for (pi, (x, y)) in pairs.iter().enumerate() {
                let mut coeff = 0i64;
                if *x == w {
                    coeff += 1;
                }
                if *y == w {
                    coeff += 1;
                }
                if add(*x, *y) == w {
                    coeff -= 1;
                }
                if coeff != 0 {
                    v[pi * s + comp] = BigInt::from(coeff);
                }
            }
            cob_gens.push(v);
        }
    }
    let image = Subgroup::new(ambient, cob_gens);
    let quotient = SubQuotient::new(kernel, &image)?;

    let mut out = CocycleExt {
        group: quotient.group.clone(),
        representatives: Vec::new(),
        coeff: a.clone(),
        base_elems,
        pairs,
        quotient,
    };
    let reps: Vec<SymmetricCocycle> = (0..out.group.canonical_rank())
        .map(|i| {
            let mut class = vec![BigInt::zero(); out.group.canonical_rank()];
            class[i] = BigInt::from(1);
            out.decode(&class)
        })
        .collect();
    for r in &reps {
        debug_assert!(r.verify(a, b));
    }
    out.representatives = reps;
    Ok(out)
}
