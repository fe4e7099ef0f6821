//! Finite simplicial complexes, simplicial maps, pairs, skeleta and
//! barycentric subdivision.
//!
//! Simplices are stored as strictly ascending vertex vectors; the set
//! is downward closed and every vertex is a 0-simplex. Orientation is
//! always the ascending order, so a map carries each simplex to its
//! sorted image together with the sign of the sorting permutation.

use crate::error::CohoxError;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            simplices: BTreeSet::new(),
        }
    }

    /// Downward closure of the given simplices.
    pub fn from_maximal(maximal: &[Vec<usize>]) -> Self {
        let mut simplices = BTreeSet::new();
        for s in maximal {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            insert_with_faces(&mut simplices, sorted);
        }
        SimplicialComplex { simplices }
    }

    pub fn point(v: usize) -> Self {
        SimplicialComplex::from_maximal(&[vec![v]])
    }

    /// Boundary of the standard (n+1)-simplex on vertices 0..=n+1:
    /// the combinatorial n-sphere.
    pub fn sphere(n: usize) -> Self {
        let all: Vec<usize> = (0..=n + 1).collect();
        let maximal: Vec<Vec<usize>> = (0..=n + 1)
            .map(|omit| {
                all.iter()
                    .copied()
                    .filter(|&v| v != omit)
                    .collect()
            })
            .collect();
        SimplicialComplex::from_maximal(&maximal)
    }

    /// The full simplex on vertices 0..=n.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex::from_maximal(&[(0..=n).collect()])
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s[0])
            .collect()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    /// n-simplices in sorted order.
    pub fn simplices_of_dim(&self, n: usize) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| s.len() == n + 1)
            .cloned()
            .collect()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn skeleton(&self, n: usize) -> SimplicialComplex {
        SimplicialComplex {
            simplices: self
                .simplices
                .iter()
                .filter(|s| s.len() <= n + 1)
                .cloned()
                .collect(),
        }
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    /// Maximal simplices (those that are faces of nothing larger).
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self.simplices.iter().any(|t| {
                    t.len() > s.len() && s.iter().all(|v| t.contains(v))
                })
            })
            .cloned()
            .collect()
    }
}

fn insert_with_faces(set: &mut BTreeSet<Vec<usize>>, s: Vec<usize>) {
    if s.is_empty() || set.contains(&s) {
        return;
    }
    for omit in 0..s.len() {
        let face: Vec<usize> = s
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != omit)
            .map(|(_, v)| *v)
            .collect();
        insert_with_faces(set, face);
    }
    set.insert(s);
}

/// Sort a vertex tuple, returning the permutation sign, or None if a
/// vertex repeats (degenerate image).
pub fn sort_with_sign(mut v: Vec<usize>) -> Option<(i64, Vec<usize>)> {
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sign, v))
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    vertex_map: BTreeMap<usize, usize>,
}

impl SimplicialMap {
    /// Checked constructor: every simplex image must span a target
    /// simplex.
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<usize, usize>,
    ) -> Result<Self, CohoxError> {
        for s in source.simplices() {
            let mut image: Vec<usize> = s
                .iter()
                .map(|v| {
                    vertex_map.get(v).copied().ok_or_else(|| {
                        CohoxError::InvalidSimplicialMap { simplex: s.clone() }
                    })
                })
                .collect::<Result<_, _>>()?;
            image.sort_unstable();
            image.dedup();
            if !target.contains(&image) {
                return Err(CohoxError::InvalidSimplicialMap { simplex: s.clone() });
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            vertex_map,
        })
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        let vm = k.vertices().into_iter().map(|v| (v, v)).collect();
        SimplicialMap {
            source: k.clone(),
            target: k.clone(),
            vertex_map: vm,
        }
    }

    pub fn constant(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex: usize,
    ) -> Result<Self, CohoxError> {
        let vm = source.vertices().into_iter().map(|v| (v, vertex)).collect();
        SimplicialMap::new(source, target, vm)
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.vertex_map[&v]
    }

    pub fn vertex_map(&self) -> &BTreeMap<usize, usize> {
        &self.vertex_map
    }

    /// Image of an oriented simplex: None if degenerate, else the sign
    /// of the sorting permutation and the sorted image.
    pub fn apply_simplex(&self, s: &[usize]) -> Option<(i64, Vec<usize>)> {
        sort_with_sign(s.iter().map(|v| self.vertex_map[v]).collect())
    }

    /// self after first, as a map first.source -> self.target.
    pub fn compose(&self, first: &SimplicialMap) -> Result<SimplicialMap, CohoxError> {
        let vm = first
            .vertex_map
            .iter()
            .map(|(v, w)| (*v, self.vertex_map[w]))
            .collect();
        SimplicialMap::new(first.source.clone(), self.target.clone(), vm)
    }

    /// Restriction to a subcomplex of the source.
    pub fn restrict(&self, sub: &SimplicialComplex) -> Result<SimplicialMap, CohoxError> {
        let vm = sub
            .vertices()
            .into_iter()
            .map(|v| (v, self.vertex_map[&v]))
            .collect();
        SimplicialMap::new(sub.clone(), self.target.clone(), vm)
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialPair {
    pub complex: SimplicialComplex,
    pub subcomplex: SimplicialComplex,
}

impl SimplicialPair {
    pub fn new(
        complex: SimplicialComplex,
        subcomplex: SimplicialComplex,
    ) -> Result<Self, CohoxError> {
        if !subcomplex.is_subcomplex_of(&complex) {
            return Err(CohoxError::Validation {
                name: "simplicial_pair",
                detail: "subcomplex is not contained in the complex".into(),
            });
        }
        Ok(SimplicialPair {
            complex,
            subcomplex,
        })
    }

    pub fn absolute(complex: SimplicialComplex) -> Self {
        SimplicialPair {
            complex,
            subcomplex: SimplicialComplex::empty(),
        }
    }
}

/// Barycentric subdivision. New vertices are numbered 0.. in the sorted
/// order of the simplices they subdivide; `carrier` records, for each
/// new vertex, the original simplex it is the barycenter of.
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub carrier: BTreeMap<usize, Vec<usize>>,
}

pub fn barycentric_subdivision(k: &SimplicialComplex) -> Subdivision {
    let mut id = BTreeMap::new();
    let mut carrier = BTreeMap::new();
    for (i, s) in k.simplices().enumerate() {
        id.insert(s.clone(), i);
        carrier.insert(i, s.clone());
    }
    // maximal chains sigma_0 < sigma_1 < ... under face inclusion,
    // generated from each maximal simplex downward
    let mut maximal = Vec::new();
    for top in k.maximal_simplices() {
        let mut chains: Vec<Vec<Vec<usize>>> = vec![vec![top.clone()]];
        while let Some(chain) = chains.pop() {
            let small = chain.last().unwrap();
            if small.len() == 1 {
                let verts: Vec<usize> = chain.iter().map(|s| id[s]).collect();
                maximal.push(verts);
            } else {
                for omit in 0..small.len() {
                    let face: Vec<usize> = small
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != omit)
                        .map(|(_, v)| *v)
                        .collect();
                    let mut next = chain.clone();
                    next.push(face);
                    chains.push(next);
                }
            }
        }
    }
    Subdivision {
        complex: SimplicialComplex::from_maximal(&maximal),
        carrier,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_queries() {
        let k = SimplicialComplex::from_maximal(&[vec![0, 1, 2]]);
        assert_eq!(k.simplex_count(), 7);
        assert_eq!(k.vertices(), vec![0, 1, 2]);
        assert!(k.contains(&[0, 2]));
        assert_eq!(k.dim(), Some(2));
        assert_eq!(k.skeleton(1).simplex_count(), 6);
    }

    #[test]
    fn sphere_model() {
        let s2 = SimplicialComplex::sphere(2);
        assert_eq!(s2.simplices_of_dim(2).len(), 4);
        assert_eq!(s2.simplices_of_dim(3).len(), 0);
        assert_eq!(s2.vertices().len(), 4);
    }

    #[test]
    fn map_validation_and_signs() {
        let k = SimplicialComplex::from_maximal(&[vec![0, 1], vec![1, 2]]);
        let l = SimplicialComplex::from_maximal(&[vec![0, 1]]);
        // 0,2 -> 1; 1 -> 0 collapses both edges
        let vm: BTreeMap<usize, usize> = [(0, 1), (1, 0), (2, 1)].into();
        let f = SimplicialMap::new(k.clone(), l.clone(), vm).unwrap();
        assert_eq!(f.apply_simplex(&[0, 1]), Some((-1, vec![0, 1])));
        // degenerate: both endpoints of a fabricated pair map to 1
        assert_eq!(sort_with_sign(vec![1, 1]), None);
        // invalid: edge to a non-simplex
        let bad: BTreeMap<usize, usize> = [(0, 0), (1, 2), (2, 2)].into();
        let l2 = SimplicialComplex::from_maximal(&[vec![0], vec![2]]);
        assert!(SimplicialMap::new(k, l2, bad).is_err());
    }

    #[test]
    fn composition() {
        let k = SimplicialComplex::sphere(1);
        let id = SimplicialMap::identity(&k);
        let c = id.compose(&id).unwrap();
        assert_eq!(c.vertex_map(), id.vertex_map());
    }

    #[test]
    fn subdivision_counts() {
        // single edge -> path with 3 vertices
        let e = SimplicialComplex::from_maximal(&[vec![0, 1]]);
        let sd = barycentric_subdivision(&e);
        assert_eq!(sd.complex.vertices().len(), 3);
        assert_eq!(sd.complex.simplices_of_dim(1).len(), 2);
        // triangle -> 6 triangles, 7 vertices
        let t = SimplicialComplex::from_maximal(&[vec![0, 1, 2]]);
        let sdt = barycentric_subdivision(&t);
        assert_eq!(sdt.complex.vertices().len(), 7);
        assert_eq!(sdt.complex.simplices_of_dim(2).len(), 6);
        // carrier of the top barycenter is the triangle itself
        let top = sdt.carrier.values().find(|s| s.len() == 3).unwrap();
        assert_eq!(*top, vec![0, 1, 2]);
    }

    #[test]
    fn pair_validation() {
        let k = SimplicialComplex::from_maximal(&[vec![0, 1, 2]]);
        let l = k.skeleton(1);
        assert!(SimplicialPair::new(k.clone(), l).is_ok());
        let m = SimplicialComplex::from_maximal(&[vec![5]]);
        assert!(SimplicialPair::new(k, m).is_err());
    }
}
