//! Cochain complexes, cohomology, induced maps and degrees for
//! simplicial pairs.
//!
//! Relative cochains are realized by deleting subcomplex simplices
//! from the cell index; cells in each degree are the sorted
//! n-simplices of the complex outside the subcomplex. The coboundary
//! is the ascending-orientation alternating face sum.

use crate::coch::{induced_on_cohomology, Cohomology, ZCochainComplex};
use crate::complex::{SimplicialComplex, SimplicialMap, SimplicialPair};
use crate::error::CohoxError;
use crate::fpgroup::{FpGroup, GroupHom};
use crate::matrix::{kernel_basis, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Cell lists (per degree, subcomplex cells removed) and the integer
/// cochain complex of a pair.
pub struct PairCells {
    pub cells: Vec<Vec<Vec<usize>>>,
    pub complex: ZCochainComplex,
}

pub fn pair_cells(pair: &SimplicialPair) -> PairCells {
    let top = pair.complex.dim().map_or(0, |d| d);
    let cells: Vec<Vec<Vec<usize>>> = (0..=top)
        .map(|n| {
            pair.complex
                .simplices_of_dim(n)
                .into_iter()
                .filter(|s| !pair.subcomplex.contains(s))
                .collect()
        })
        .collect();
    let mut diffs = Vec::new();
    for n in 0..top {
        let index: BTreeMap<&Vec<usize>, usize> =
            cells[n].iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut d = IntMatrix::zeros(cells[n + 1].len(), cells[n].len());
        for (row, s) in cells[n + 1].iter().enumerate() {
            for omit in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != omit)
                    .map(|(_, v)| *v)
                    .collect();
                if let Some(&col) = index.get(&face) {
                    let sign = if omit % 2 == 0 { 1 } else { -1 };
                    let cur = d.get(row, col) + BigInt::from(sign);
                    d.set(row, col, cur);
                }
            }
        }
        diffs.push(d);
    }
    let ranks: Vec<usize> = cells.iter().map(|c| c.len()).collect();
    PairCells {
        complex: ZCochainComplex::new(ranks, diffs).expect("face maps satisfy d*d = 0"),
        cells,
    }
}

/// Relative (or absolute, for an empty subcomplex) cohomology with a
/// cell list for interpreting decoded cocycles.
pub struct PairCohomology {
    pub coh: Cohomology,
    pub cells: Vec<Vec<usize>>,
}

pub fn cohomology(pair: &SimplicialPair, g: &FpGroup, n: usize) -> PairCohomology {
    let pc = pair_cells(pair);
    let coh = pc.complex.with_coefficients(g).cohomology(n);
    let cells = pc.cells.get(n).cloned().unwrap_or_default();
    PairCohomology { coh, cells }
}

/// Pullback matrix of f on degree-n cells (rows: source pair cells,
/// columns: target pair cells). Requires f to map the source
/// subcomplex into the target subcomplex.
pub fn pullback_matrix(
    f: &SimplicialMap,
    source: &SimplicialPair,
    target: &SimplicialPair,
    n: usize,
) -> Result<IntMatrix, CohoxError> {
    for s in source.subcomplex.simplices() {
        let mut image: Vec<usize> = s.iter().map(|v| f.vertex(*v)).collect();
        image.sort_unstable();
        image.dedup();
        if !target.subcomplex.contains(&image) {
            return Err(CohoxError::InvalidSimplicialMap { simplex: s.clone() });
        }
    }
    let src_cells: Vec<Vec<usize>> = source
        .complex
        .simplices_of_dim(n)
        .into_iter()
        .filter(|s| !source.subcomplex.contains(s))
        .collect();
    let tgt_cells: Vec<Vec<usize>> = target
        .complex
        .simplices_of_dim(n)
        .into_iter()
        .filter(|s| !target.subcomplex.contains(s))
        .collect();
    let index: BTreeMap<&Vec<usize>, usize> =
        tgt_cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut m = IntMatrix::zeros(src_cells.len(), tgt_cells.len());
    for (row, s) in src_cells.iter().enumerate() {
        if let Some((sign, image)) = f.apply_simplex(s) {
            if let Some(&col) = index.get(&image) {
                let cur = m.get(row, col) + BigInt::from(sign);
                m.set(row, col, cur);
            }
        }
    }
    Ok(m)
}

/// Contravariant map H^n(target pair; G) -> H^n(source pair; G).
pub fn induced_map(
    f: &SimplicialMap,
    source: &SimplicialPair,
    target: &SimplicialPair,
    g: &FpGroup,
    n: usize,
) -> Result<GroupHom, CohoxError> {
    let m = pullback_matrix(f, source, target, n)?;
    let src_coh = cohomology(target, g, n); // domain of the induced hom
    let tgt_coh = cohomology(source, g, n);
    induced_on_cohomology(&m, &src_coh.coh, &tgt_coh.coh)
}

/// Fundamental cocycle of the sphere model: the indicator of the face
/// omitting the largest vertex, as a vector over the sorted n-cells of
/// sphere(n).
pub fn fundamental_cocycle(n: usize) -> Vec<BigInt> {
    let model = SimplicialComplex::sphere(n);
    let cells = model.simplices_of_dim(n);
    let support: Vec<usize> = (0..=n).collect();
    cells
        .iter()
        .map(|c| {
            if *c == support {
                BigInt::from(1)
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

/// Fundamental cycle of an n-sphere-like complex: generator of the
/// top-degree cycle group, normalized so the coefficient of the
/// lexicographically first cell is positive.
pub fn fundamental_cycle(k: &SimplicialComplex, n: usize) -> Result<Vec<BigInt>, CohoxError> {
    if k.dim() != Some(n) {
        return Err(CohoxError::NotSphereLike {
            reason: format!("dimension is {:?}, expected {n}", k.dim()),
        });
    }
    let pc = pair_cells(&SimplicialPair::absolute(k.clone()));
    // chain boundary out of degree n = transpose of the cochain
    // differential into degree n
    let boundary = pc.complex.diff(n - 1).transpose();
    let basis = kernel_basis(&smith_normal_form(&boundary));
    if basis.len() != 1 {
        return Err(CohoxError::NotSphereLike {
            reason: format!("cycle group in degree {n} has rank {}", basis.len()),
        });
    }
    let mut z = basis.into_iter().next().unwrap();
    if let Some(first) = z.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in &mut z {
                *v = -&*v;
            }
        }
    }
    Ok(z)
}

/// Degree of a simplicial map from an n-sphere-like complex onto the
/// model sphere(n): the pairing of the pulled-back fundamental cocycle
/// with the source's fundamental cycle.
pub fn degree(f: &SimplicialMap, n: usize) -> Result<BigInt, CohoxError> {
    if f.target != SimplicialComplex::sphere(n) {
        return Err(CohoxError::NotSphereLike {
            reason: "target is not the model sphere".into(),
        });
    }
    let hn = cohomology(&SimplicialPair::absolute(f.source.clone()), &FpGroup::free(1), n);
    if hn.coh.group.canonical_name() != "Z" {
        return Err(CohoxError::NotSphereLike {
            reason: format!(
                "H^{n} of the source is {}, expected Z",
                hn.coh.group.canonical_name()
            ),
        });
    }
    let z = fundamental_cycle(&f.source, n)?;
    let omega = fundamental_cocycle(n);
    let m = pullback_matrix(
        f,
        &SimplicialPair::absolute(f.source.clone()),
        &SimplicialPair::absolute(f.target.clone()),
        n,
    )?;
    let pulled = m.mul_vec(&omega);
    Ok(z.iter().zip(&pulled).map(|(a, b)| a * b).sum())
}

/// 7-vertex triangulation of the torus (vertices 0..6, each pair of
/// vertices spans an edge).
pub fn torus7() -> SimplicialComplex {
    // Möbius torus: vertices Z/7, triangles {i, i+1, i+3} and
    // {i, i+2, i+3} for each i
    SimplicialComplex::from_maximal(
        &[
            [0, 1, 3],
            [1, 3, 4],
            [1, 2, 4],
            [2, 4, 5],
            [2, 3, 5],
            [3, 5, 6],
            [3, 4, 6],
            [4, 6, 0],
            [4, 5, 0],
            [5, 0, 1],
            [5, 6, 1],
            [6, 1, 2],
            [6, 0, 2],
            [0, 2, 3],
        ]
        .map(|f| f.to_vec()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_complex_matches_formula() {
        let pair = SimplicialPair::absolute(SimplicialComplex::from_maximal(&[vec![0, 1]]));
        let pc = pair_cells(&pair);
        assert_eq!(pc.complex.rank(0), 2);
        assert_eq!(pc.complex.rank(1), 1);
        assert_eq!(pc.complex.diff(0), IntMatrix::from_i64_rows(&[&[-1, 1]]));
    }

    #[test]
    fn sphere_cohomology() {
        let z = FpGroup::free(1);
        let s2 = SimplicialPair::absolute(SimplicialComplex::sphere(2));
        assert_eq!(cohomology(&s2, &z, 2).coh.group.canonical_name(), "Z");
        assert_eq!(cohomology(&s2, &z, 1).coh.group.canonical_name(), "0");
        assert_eq!(cohomology(&s2, &z, 0).coh.group.canonical_name(), "Z");
    }

    #[test]
    fn torus_cohomology() {
        let z = FpGroup::free(1);
        let t = SimplicialPair::absolute(torus7());
        assert_eq!(cohomology(&t, &z, 0).coh.group.canonical_name(), "Z");
        assert_eq!(cohomology(&t, &z, 1).coh.group.canonical_name(), "Z^2");
        assert_eq!(cohomology(&t, &z, 2).coh.group.canonical_name(), "Z");
    }

    #[test]
    fn degrees_on_the_two_sphere() {
        let s2 = SimplicialComplex::sphere(2);
        let id = SimplicialMap::identity(&s2);
        assert_eq!(degree(&id, 2).unwrap(), BigInt::from(1));
        // reflection: swap vertices 0 and 1
        let vm = [(0, 1), (1, 0), (2, 2), (3, 3)].into();
        let refl = SimplicialMap::new(s2.clone(), s2.clone(), vm).unwrap();
        assert_eq!(degree(&refl, 2).unwrap(), BigInt::from(-1));
        let cst = SimplicialMap::constant(s2.clone(), s2, 0).unwrap();
        assert_eq!(degree(&cst, 2).unwrap(), BigInt::from(0));
    }

    #[test]
    fn hexagon_double_wind() {
        // hexagon 0..5 winding twice onto the triangle 0,1,2
        let hex = SimplicialComplex::from_maximal(&[
            vec![0, 1],
            vec![1, 2],
            vec![2, 3],
            vec![3, 4],
            vec![4, 5],
            vec![0, 5],
        ]);
        let tri = SimplicialComplex::sphere(1);
        let vm = (0..6).map(|v| (v, v % 3)).collect();
        let f = SimplicialMap::new(hex.clone(), tri.clone(), vm).unwrap();
        let d = degree(&f, 1).unwrap();
        assert!(d == BigInt::from(2) || d == BigInt::from(-2));
        // consistent with the induced map on H^1
        let h = induced_map(
            &f,
            &SimplicialPair::absolute(hex),
            &SimplicialPair::absolute(tri),
            &FpGroup::free(1),
            1,
        )
        .unwrap();
        let img = h.apply_canonical(&[BigInt::from(1)]);
        assert!(img == vec![BigInt::from(2)] || img == vec![BigInt::from(-2)]);
    }

    #[test]
    fn induced_functoriality() {
        let s1 = SimplicialComplex::sphere(1);
        let pair = SimplicialPair::absolute(s1.clone());
        let z = FpGroup::free(1);
        let id = SimplicialMap::identity(&s1);
        let h = induced_map(&id, &pair, &pair, &z, 1).unwrap();
        assert!(h.hom_equal(&GroupHom::identity(&h.source)));
        let cst = SimplicialMap::constant(s1.clone(), s1, 0).unwrap();
        let hc = induced_map(&cst, &pair, &pair, &z, 1).unwrap();
        assert!(hc.is_zero_hom());
    }

    #[test]
    fn cone_acyclic() {
        // cone over the hexagon: contractible
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for e in [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 5]] {
            faces.push(vec![e[0], e[1], 6]);
        }
        let cone = SimplicialPair::absolute(SimplicialComplex::from_maximal(&faces));
        let z = FpGroup::free(1);
        for n in 1..=2 {
            assert_eq!(cohomology(&cone, &z, n).coh.group.canonical_name(), "0");
        }
    }

    #[test]
    fn subdivision_invariance_on_torus() {
        let t = torus7();
        let sd = crate::complex::barycentric_subdivision(&t).complex;
        let z = FpGroup::free(1);
        for n in 0..=2 {
            assert_eq!(
                cohomology(&SimplicialPair::absolute(t.clone()), &z, n)
                    .coh
                    .group
                    .canonical_name(),
                cohomology(&SimplicialPair::absolute(sd.clone()), &z, n)
                    .coh
                    .group
                    .canonical_name()
            );
        }
    }

    #[test]
    fn relative_composite_vanishes() {
        // H^n(X, L) -> H^n(X) -> H^n(L) is zero
        let x = SimplicialComplex::sphere(2);
        let l = x.skeleton(1);
        let z = FpGroup::free(1);
        let pair = SimplicialPair::new(x.clone(), l.clone()).unwrap();
        let absx = SimplicialPair::absolute(x.clone());
        let absl = SimplicialPair::absolute(l.clone());
        for n in 1..=2 {
            let rel = cohomology(&pair, &z, n);
            let abs = cohomology(&absx, &z, n);
            let sub = cohomology(&absl, &z, n);
            // comparison: identity on cells (relative cells are a subset)
            let rel_cells = &rel.cells;
            let abs_cells = cohomology(&absx, &z, n).cells;
            for rep in rel.coh.generator_cocycles() {
                // expand to the absolute cochain
                let mut v = vec![BigInt::zero(); abs_cells.len()];
                for (i, c) in rel_cells.iter().enumerate() {
                    let j = abs_cells.iter().position(|a| a == c).unwrap();
                    v[j] = rep[i].clone();
                }
                let cls = abs.coh.encode(&v).expect("relative cocycle is absolute");
                // restrict the absolute representative to L
                let back = abs.coh.decode(&cls);
                let l_cells = sub.cells.clone();
                let restricted: Vec<BigInt> = l_cells
                    .iter()
                    .map(|c| {
                        abs_cells
                            .iter()
                            .position(|a| a == c)
                            .map(|j| back[j].clone())
                            .unwrap_or_else(BigInt::zero)
                    })
                    .collect();
                if !l_cells.is_empty() {
                    let lcls = sub.coh.encode(&restricted).unwrap();
                    assert!(sub.coh.group.is_zero_canonical(&lcls));
                }
            }
        }
    }
}
