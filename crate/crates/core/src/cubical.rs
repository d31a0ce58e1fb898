//! Cubical complexes as face collections of the unit cube in `R^N`, and the
//! cubical analog of a simplicial complex whose vertex links all reproduce
//! the original complex.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{mask_vertices, ComplexError, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CubicalError {
    #[error("cubical complexes support ambient dimension <= 24, got {0}")]
    DimensionTooLarge(usize),
    #[error("vertex {0:0b} is not a 0-face of the complex")]
    NoSuchVertex(u64),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A face of the unit cube `[0,1]^dim`: coordinates in `free` vary over
/// `[0,1]`, the rest are pinned to the bits of `fixed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeFace {
    pub free: u64,
    pub fixed: u64,
}

impl CubeFace {
    pub fn dim(&self) -> usize {
        self.free.count_ones() as usize
    }
}

/// Downward-closed collection of faces of the unit cube in `R^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicalComplex {
    dim: usize,
    faces: Vec<CubeFace>,
}

impl CubicalComplex {
    /// Closes the given faces downward. The ambient dimension is capped to
    /// keep the face explosion at desk scale.
    pub fn from_faces(dim: usize, marked: &[CubeFace]) -> Result<Self, CubicalError> {
        if dim > 24 {
            return Err(CubicalError::DimensionTooLarge(dim));
        }
        let full = if dim == 64 { !0u64 } else { (1u64 << dim) - 1 };
        let mut faces = Vec::new();
        for f in marked {
            debug_assert_eq!(f.free & f.fixed, 0);
            debug_assert_eq!(f.free & !full, 0);
            // All sub-faces: any subset of free coordinates stays free, the
            // rest take both endpoint values.
            let free_bits: Vec<u32> = (0..64).filter(|&b| f.free >> b & 1 == 1).collect();
            let k = free_bits.len();
            for keep in 0u32..(1u32 << k) {
                let mut sub_free = 0u64;
                let mut pinned = Vec::new();
                for (i, &b) in free_bits.iter().enumerate() {
                    if keep >> i & 1 == 1 {
                        sub_free |= 1 << b;
                    } else {
                        pinned.push(b);
                    }
                }
                for assign in 0u32..(1u32 << pinned.len()) {
                    let mut fixed = f.fixed;
                    for (i, &b) in pinned.iter().enumerate() {
                        if assign >> i & 1 == 1 {
                            fixed |= 1 << b;
                        }
                    }
                    faces.push(CubeFace { free: sub_free, fixed });
                }
            }
        }
        faces.sort_unstable();
        faces.dedup();
        Ok(CubicalComplex { dim, faces })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn faces(&self) -> &[CubeFace] {
        &self.faces
    }

    pub fn contains(&self, f: &CubeFace) -> bool {
        self.faces.binary_search(f).is_ok()
    }

    /// 0-faces, as coordinate assignments.
    pub fn vertices(&self) -> Vec<u64> {
        self.faces.iter().filter(|f| f.free == 0).map(|f| f.fixed).collect()
    }

    /// Downward closure, re-checked face by face.
    pub fn validate(&self) -> bool {
        for f in &self.faces {
            if f.free & f.fixed != 0 {
                return false;
            }
            for b in (0..64).filter(|&b| f.free >> b & 1 == 1) {
                for val in [0u64, 1] {
                    let sub = CubeFace { free: f.free & !(1 << b), fixed: f.fixed | (val << b) };
                    if !self.contains(&sub) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The link of a vertex: a simplicial complex with one vertex per edge
    /// direction at `v`, where a set of directions spans a simplex exactly
    /// when the corresponding cube at `v` is present.
    pub fn vertex_link(&self, v: u64) -> Result<SimplicialComplex, CubicalError> {
        if !self.contains(&CubeFace { free: 0, fixed: v }) {
            return Err(CubicalError::NoSuchVertex(v));
        }
        // Directions with an edge at v, then the incident cubes as faces.
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for f in &self.faces {
            if f.free != 0 && f.fixed == v & !f.free {
                faces.push((0..self.dim).filter(|&b| f.free >> b & 1 == 1).collect());
            }
        }
        let mut dirs: Vec<usize> = faces.iter().flatten().copied().collect();
        dirs.sort_unstable();
        dirs.dedup();
        let remap: HashMap<usize, usize> = dirs.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let remapped: Vec<Vec<usize>> = faces
            .iter()
            .map(|f| f.iter().map(|d| remap[d]).collect())
            .collect();
        let out = SimplicialComplex::from_faces(dirs.len(), &remapped)?
            .with_labels(dirs.iter().map(|d| format!("e{d}")).collect())?;
        Ok(out)
    }
}

/// The cubical analog of a simplicial complex `S` on `N` vertices: for each
/// k-simplex, every (k+1)-face of the N-cube parallel to the coordinate
/// plane of its vertices is marked, then everything closes downward. The
/// link of every vertex of the result is isomorphic to `S`.
pub fn cubical_analog(s: &SimplicialComplex) -> Result<CubicalComplex, CubicalError> {
    let n = s.vertex_count();
    if n > 24 {
        return Err(CubicalError::DimensionTooLarge(n));
    }
    let full = (1u64 << n) - 1;
    let mut marked = Vec::new();
    for simplex in s.simplices() {
        let free = mask_vertices(simplex)
            .into_iter()
            .fold(0u64, |m, v| m | (1 << v));
        let rest: Vec<u32> = (0..n as u32).filter(|&b| free >> b & 1 == 0).collect();
        for assign in 0u64..(1u64 << rest.len()) {
            let mut fixed = 0u64;
            for (i, &b) in rest.iter().enumerate() {
                if assign >> i & 1 == 1 {
                    fixed |= 1 << b;
                }
            }
            marked.push(CubeFace { free, fixed });
        }
        let _ = full;
    }
    // Isolated-vertex complexes still carry all corners of the cube.
    for assign in 0u64..(1u64 << n) {
        marked.push(CubeFace { free: 0, fixed: assign });
    }
    CubicalComplex::from_faces(n, &marked)
}

/// True when the two complexes are isomorphic via the identity-style
/// relabeling `direction i of the analog <-> vertex i of s` (the labeling
/// the construction guarantees).
pub fn link_matches_construction(link: &SimplicialComplex, s: &SimplicialComplex) -> bool {
    link.vertex_count() == s.vertex_count() && link.simplices() == s.simplices()
}

/// Backtracking isomorphism search between small complexes; fallback for
/// adversarial relabelings where the canonical identification fails.
pub fn isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() {
        return false;
    }
    let sa = a.simplices();
    let sb = b.simplices();
    if sa.len() != sb.len() {
        return false;
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        k: usize,
        n: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        a: &SimplicialComplex,
        b: &SimplicialComplex,
    ) -> bool {
        if k == n {
            let mapped: std::collections::BTreeSet<u128> = a
                .simplices()
                .into_iter()
                .map(|m| {
                    mask_vertices(m)
                        .into_iter()
                        .fold(0u128, |acc, v| acc | (1u128 << perm[v]))
                })
                .collect();
            return mapped == b.simplices();
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            perm[k] = cand;
            used[cand] = true;
            // Prune: edges incident to k must map to edges.
            let ok = (0..k).all(|j| {
                let e_a = a.contains(1u128 << k | 1u128 << j);
                let e_b = b.contains(1u128 << cand | 1u128 << perm[j]);
                e_a == e_b
            });
            if ok && extend(k + 1, n, perm, used, a, b) {
                return true;
            }
            used[cand] = false;
        }
        perm[k] = usize::MAX;
        false
    }
    extend(0, n, &mut perm, &mut used, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_flag;

    fn edge_complex() -> SimplicialComplex {
        SimplicialComplex::from_faces(2, &[vec![0, 1]]).unwrap()
    }

    fn two_points() -> SimplicialComplex {
        SimplicialComplex::from_faces(2, &[]).unwrap()
    }

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_faces(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn analog_of_edge_is_full_square() {
        let q = cubical_analog(&edge_complex()).unwrap();
        // 1 two-face + 4 edges + 4 corners.
        assert_eq!(q.faces().len(), 9);
        assert!(q.contains(&CubeFace { free: 0b11, fixed: 0 }));
        assert!(q.validate());
    }

    #[test]
    fn analog_of_two_points_is_square_boundary() {
        let q = cubical_analog(&two_points()).unwrap();
        assert_eq!(q.faces().len(), 8);
        assert!(!q.contains(&CubeFace { free: 0b11, fixed: 0 }));
        assert!(q.validate());
    }

    #[test]
    fn analog_of_hollow_triangle_is_cube_surface() {
        let q = cubical_analog(&hollow_triangle()).unwrap();
        // 6 squares + 12 edges + 8 corners, no solid cube.
        assert_eq!(q.faces().len(), 26);
        assert!(!q.contains(&CubeFace { free: 0b111, fixed: 0 }));
    }

    #[test]
    fn square_corner_link_is_edge() {
        let q = cubical_analog(&edge_complex()).unwrap();
        for v in q.vertices() {
            let l = q.vertex_link(v).unwrap();
            assert_eq!(l.vertex_count(), 2);
            assert_eq!(l.maximal_faces_as_lists(), vec![vec![0, 1]]);
        }
    }

    #[test]
    fn square_boundary_corner_link_is_two_points() {
        let q = cubical_analog(&two_points()).unwrap();
        for v in q.vertices() {
            let l = q.vertex_link(v).unwrap();
            assert_eq!(l.vertex_count(), 2);
            assert_eq!(l.maximal_faces_as_lists(), vec![vec![0], vec![1]]);
        }
    }

    #[test]
    fn analog_links_reproduce_hollow_triangle() {
        let s = hollow_triangle();
        let q = cubical_analog(&s).unwrap();
        assert_eq!(q.vertices().len(), 8);
        for v in q.vertices() {
            let l = q.vertex_link(v).unwrap();
            assert!(link_matches_construction(&l, &s));
            assert!(isomorphic(&l, &s));
            assert!(!is_flag(&l).flag);
        }
    }

    #[test]
    fn missing_vertex_is_an_error() {
        let q = cubical_analog(&edge_complex()).unwrap();
        assert!(matches!(q.vertex_link(0b100), Err(CubicalError::NoSuchVertex(_))));
    }

    #[test]
    fn isomorphism_checker_distinguishes() {
        let path = SimplicialComplex::from_faces(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let relabeled = SimplicialComplex::from_faces(3, &[vec![2, 1], vec![0, 2]]).unwrap();
        assert!(isomorphic(&path, &relabeled));
        assert!(!isomorphic(&path, &hollow_triangle()));
    }
}
