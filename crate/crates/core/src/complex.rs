//! Finite simplicial complexes stored as maximal faces over vertex bitmasks
//! (at most 128 vertices), with the combinatorics used by the curvature
//! certificates: flag and no-triangle conditions, links, barycentric
//! subdivision, and the all-right CAT(1) verdict.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("complex supports at most 128 vertices, got {0}")]
    TooManyVertices(usize),
    #[error("vertex index {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("{0} is not a simplex of the complex")]
    NotASimplex(String),
    #[error("labels/vertex count mismatch: {0} labels for n = {1}")]
    LabelMismatch(usize, usize),
}

/// Simplicial complex on vertices `0..n`. Every vertex is a simplex; faces
/// are kept as an antichain of maximal faces, downward closure is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    labels: Option<Vec<String>>,
    maximal: Vec<u128>,
}

pub fn mask_of(vertices: &[usize]) -> u128 {
    vertices.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

pub fn mask_vertices(mask: u128) -> Vec<usize> {
    (0..128).filter(|&i| mask >> i & 1 == 1).collect()
}

impl SimplicialComplex {
    /// Builds a complex from maximal faces given as vertex index lists.
    /// Singletons for isolated vertices are added automatically; redundant
    /// (dominated) faces are dropped.
    pub fn from_faces(n: usize, faces: &[Vec<usize>]) -> Result<Self, ComplexError> {
        if n > 128 {
            return Err(ComplexError::TooManyVertices(n));
        }
        for f in faces {
            for &v in f {
                if v >= n {
                    return Err(ComplexError::VertexOutOfRange(v, n));
                }
            }
        }
        let mut masks: Vec<u128> = faces.iter().map(|f| mask_of(f)).filter(|&m| m != 0).collect();
        let covered = masks.iter().fold(0u128, |m, &f| m | f);
        for v in 0..n {
            if covered >> v & 1 == 0 {
                masks.push(1u128 << v);
            }
        }
        Ok(SimplicialComplex { n, labels: None, maximal: antichain(masks) })
    }

    pub fn from_masks(n: usize, masks: Vec<u128>) -> Result<Self, ComplexError> {
        let faces: Vec<Vec<usize>> = masks.iter().map(|&m| mask_vertices(m)).collect();
        SimplicialComplex::from_faces(n, &faces)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, ComplexError> {
        if labels.len() != self.n {
            return Err(ComplexError::LabelMismatch(labels.len(), self.n));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => format!("v{v}"),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.n).map(|v| self.label(v)).collect()
    }

    pub fn maximal_faces(&self) -> &[u128] {
        &self.maximal
    }

    pub fn maximal_faces_as_lists(&self) -> Vec<Vec<usize>> {
        self.maximal.iter().map(|&m| mask_vertices(m)).collect()
    }

    pub fn contains(&self, simplex: u128) -> bool {
        simplex != 0 && self.maximal.iter().any(|&f| f & simplex == simplex)
    }

    /// All nonempty simplices, as masks.
    pub fn simplices(&self) -> BTreeSet<u128> {
        let mut out = BTreeSet::new();
        for &f in &self.maximal {
            let verts = mask_vertices(f);
            let k = verts.len();
            for sub in 1u32..(1u32 << k) {
                let mut m = 0u128;
                for (i, &v) in verts.iter().enumerate() {
                    if sub >> i & 1 == 1 {
                        m |= 1u128 << v;
                    }
                }
                out.insert(m);
            }
        }
        out
    }

    /// Downward closure and vertex coverage, re-checked from scratch. The
    /// constructors maintain both; tests call this after every derived
    /// construction.
    pub fn validate(&self) -> bool {
        let covered = self.maximal.iter().fold(0u128, |m, &f| m | f);
        if self.n < 128 && covered >> self.n != 0 {
            return false;
        }
        for v in 0..self.n {
            if !self.contains(1u128 << v) {
                return false;
            }
        }
        // Antichain property.
        for (i, &a) in self.maximal.iter().enumerate() {
            for (j, &b) in self.maximal.iter().enumerate() {
                if i != j && a & b == a {
                    return false;
                }
            }
        }
        true
    }

    /// Adjacency bitmask of the 1-skeleton for each vertex.
    pub fn adjacency(&self) -> Vec<u128> {
        let mut adj = vec![0u128; self.n];
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.contains(1u128 << u | 1u128 << v) {
                    adj[u] |= 1u128 << v;
                    adj[v] |= 1u128 << u;
                }
            }
        }
        adj
    }
}

fn antichain(mut masks: Vec<u128>) -> Vec<u128> {
    masks.sort_unstable();
    masks.dedup();
    let kept: Vec<u128> = masks
        .iter()
        .filter(|&&m| !masks.iter().any(|&o| o != m && o & m == m))
        .copied()
        .collect();
    kept
}

/// Outcome of the flag check; on failure carries a minimal clique of the
/// 1-skeleton that spans no simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagVerdict {
    pub flag: bool,
    pub witness: Option<Vec<usize>>,
}

/// A complex is flag when every clique of its 1-skeleton spans a simplex.
/// It suffices to check maximal cliques; those are enumerated with
/// Bron-Kerbosch. On failure the witness is a minimal non-spanning clique.
pub fn is_flag(s: &SimplicialComplex) -> FlagVerdict {
    let adj = s.adjacency();
    let mut bad_clique: Option<u128> = None;
    let all: u128 = if s.n == 128 { !0 } else { (1u128 << s.n) - 1 };
    bron_kerbosch(&adj, 0, all, 0, &mut |clique| {
        if !s.contains(clique) && clique.count_ones() >= 3 {
            bad_clique = Some(clique);
            false
        } else {
            true
        }
    });
    match bad_clique {
        None => FlagVerdict { flag: true, witness: None },
        Some(c) => {
            let verts = mask_vertices(c);
            let k = verts.len();
            // Minimal non-spanning subset, sizes ascending.
            for size in 3..=k {
                if let Some(sub) = subsets_of_size(&verts, size).into_iter().find(|&m| !s.contains(m)) {
                    return FlagVerdict { flag: false, witness: Some(mask_vertices(sub)) };
                }
            }
            FlagVerdict { flag: false, witness: Some(verts) }
        }
    }
}

fn subsets_of_size(verts: &[usize], size: usize) -> Vec<u128> {
    let k = verts.len();
    let mut out = Vec::new();
    for bits in 1u32..(1u32 << k) {
        if bits.count_ones() as usize != size {
            continue;
        }
        let mut m = 0u128;
        for (i, &v) in verts.iter().enumerate() {
            if bits >> i & 1 == 1 {
                m |= 1u128 << v;
            }
        }
        out.push(m);
    }
    out
}

/// Bron-Kerbosch with pivoting; `visit` returns `false` to stop early.
fn bron_kerbosch(adj: &[u128], r: u128, p: u128, x: u128, visit: &mut impl FnMut(u128) -> bool) -> bool {
    if p == 0 && x == 0 {
        return r == 0 || visit(r);
    }
    let pivot = {
        let px = p | x;
        let mut best = usize::MAX;
        let mut best_deg = -1i64;
        for v in mask_vertices(px) {
            let deg = (adj[v] & p).count_ones() as i64;
            if deg > best_deg {
                best_deg = deg;
                best = v;
            }
        }
        best
    };
    let mut candidates = p & !adj[pivot];
    let mut p = p;
    let mut x = x;
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let vb = 1u128 << v;
        candidates &= !vb;
        if !bron_kerbosch(adj, r | vb, p & adj[v], x & adj[v], visit) {
            return false;
        }
        p &= !vb;
        x |= vb;
    }
    true
}

/// The k = 2 case of the flag condition: every triangle of the 1-skeleton
/// spans a 2-simplex.
pub fn no_triangle_condition(s: &SimplicialComplex) -> bool {
    let adj = s.adjacency();
    for u in 0..s.n {
        for v in (u + 1)..s.n {
            if adj[u] >> v & 1 == 0 {
                continue;
            }
            let common = adj[u] & adj[v];
            for w in mask_vertices(common) {
                if w <= v {
                    continue;
                }
                if !s.contains(1u128 << u | 1u128 << v | 1u128 << w) {
                    return false;
                }
            }
        }
    }
    true
}

/// The link of `sigma`: all faces disjoint from `sigma` whose union with it
/// is a face. Vertices are re-indexed; labels carry over when present.
pub fn link(s: &SimplicialComplex, sigma: &[usize]) -> Result<SimplicialComplex, ComplexError> {
    let sm = mask_of(sigma);
    if !s.contains(sm) {
        return Err(ComplexError::NotASimplex(format!("{sigma:?}")));
    }
    let mut faces: Vec<u128> = s
        .maximal
        .iter()
        .filter(|&&f| f & sm == sm)
        .map(|&f| f & !sm)
        .filter(|&f| f != 0)
        .collect();
    faces = antichain(std::mem::take(&mut faces));
    let covered = faces.iter().fold(0u128, |m, &f| m | f);
    let verts = mask_vertices(covered);
    let remap: std::collections::HashMap<usize, usize> =
        verts.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let remapped: Vec<Vec<usize>> = faces
        .iter()
        .map(|&f| mask_vertices(f).into_iter().map(|v| remap[&v]).collect())
        .collect();
    let mut out = SimplicialComplex::from_faces(verts.len(), &remapped)?;
    if s.labels.is_some() {
        out = out.with_labels(verts.iter().map(|&v| s.label(v)).collect())?;
    }
    Ok(out)
}

/// Barycentric subdivision: one vertex per simplex, faces are the chains of
/// simplices nested under inclusion.
pub fn barycentric_subdivision(s: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
    let simplices: Vec<u128> = s.simplices().into_iter().collect();
    if simplices.len() > 128 {
        return Err(ComplexError::TooManyVertices(simplices.len()));
    }
    let index: std::collections::HashMap<u128, usize> =
        simplices.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    // Maximal chains are complete flags of maximal faces: one prefix per
    // permutation of the face's vertices.
    for &f in &s.maximal {
        let verts = mask_vertices(f);
        permute(&verts, &mut |perm| {
            let mut m = 0u128;
            let mut chain = Vec::with_capacity(perm.len());
            for &v in perm {
                m |= 1u128 << v;
                chain.push(index[&m]);
            }
            chains.push(chain);
        });
    }
    let mut out = SimplicialComplex::from_faces(simplices.len(), &chains)?;
    if s.labels.is_some() {
        let labels = simplices
            .iter()
            .map(|&m| {
                let names: Vec<String> = mask_vertices(m).into_iter().map(|v| s.label(v)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        out = out.with_labels(labels)?;
    }
    Ok(out)
}

fn permute(items: &[usize], visit: &mut impl FnMut(&[usize])) {
    let mut buf = items.to_vec();
    heap_permute(buf.len(), &mut buf, visit);
}

fn heap_permute(k: usize, buf: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        visit(buf);
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, buf, visit);
        if k % 2 == 0 {
            buf.swap(i, k - 1);
        } else {
            buf.swap(0, k - 1);
        }
    }
}

/// An empty triangle certifying failure of the all-right CAT(1) property:
/// three pairwise-joined vertices spanning no 2-simplex, tracing a locally
/// geodesic loop of length `3 * pi / 2`. When `base` is nonempty the loop
/// lives in the link of that simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicLoopWitness {
    pub base: Vec<usize>,
    pub triangle: [usize; 3],
    pub loop_length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CatOneVerdict {
    CatOne,
    NotCatOne(GeodesicLoopWitness),
}

/// All-right spherical metric verdict: CAT(1) exactly when the complex is
/// flag. A failed flag check yields a minimal non-spanning clique; its last
/// three vertices form an empty triangle in the link of the remaining ones.
///
/// The same combinatorial check certifies the variant where all edges have
/// length at least `pi / 2`; no separate metric data is modeled.
pub fn all_right_cat1_verdict(s: &SimplicialComplex) -> CatOneVerdict {
    let v = is_flag(s);
    match v.witness {
        None => CatOneVerdict::CatOne,
        Some(clique) => {
            let k = clique.len();
            let base = clique[..k - 3].to_vec();
            let triangle = [clique[k - 3], clique[k - 2], clique[k - 1]];
            CatOneVerdict::NotCatOne(GeodesicLoopWitness {
                base,
                triangle,
                loop_length: 1.5 * std::f64::consts::PI,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_faces(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn solid_triangle() -> SimplicialComplex {
        SimplicialComplex::from_faces(3, &[vec![0, 1, 2]]).unwrap()
    }

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::from_faces(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap()
    }

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::from_faces(
            4,
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap()
    }

    fn octahedron() -> SimplicialComplex {
        // Antipodal pairs (0,1), (2,3), (4,5); faces avoid both antipodes.
        let mut faces = Vec::new();
        for a in 0..2 {
            for b in 2..4 {
                for c in 4..6 {
                    faces.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::from_faces(6, &faces).unwrap()
    }

    #[test]
    fn hollow_triangle_is_not_flag() {
        let v = is_flag(&hollow_triangle());
        assert!(!v.flag);
        assert_eq!(v.witness, Some(vec![0, 1, 2]));
    }

    #[test]
    fn solid_triangle_is_flag() {
        assert!(is_flag(&solid_triangle()).flag);
    }

    #[test]
    fn four_cycle_is_flag() {
        assert!(is_flag(&four_cycle()).flag);
    }

    #[test]
    fn no_triangle_cases() {
        assert!(!no_triangle_condition(&hollow_triangle()));
        assert!(no_triangle_condition(&tetra_boundary()));
        assert!(no_triangle_condition(&octahedron()));
        assert!(no_triangle_condition(&four_cycle()));
    }

    #[test]
    fn tetra_boundary_is_not_flag_with_four_witnesses() {
        let v = is_flag(&tetra_boundary());
        assert!(!v.flag);
        assert_eq!(v.witness, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn link_of_vertex_in_solid_triangle_is_edge() {
        let l = link(&solid_triangle(), &[0]).unwrap();
        assert_eq!(l.vertex_count(), 2);
        assert_eq!(l.maximal_faces_as_lists(), vec![vec![0, 1]]);
        assert!(l.validate());
    }

    #[test]
    fn link_of_edge_in_tetra_boundary_is_two_points() {
        let l = link(&tetra_boundary(), &[0, 1]).unwrap();
        assert_eq!(l.vertex_count(), 2);
        assert_eq!(l.maximal_faces_as_lists(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn link_of_vertex_in_octahedron_is_four_cycle() {
        let l = link(&octahedron(), &[0]).unwrap();
        assert_eq!(l.vertex_count(), 4);
        // 4 edges, every vertex of degree 2, no triangle: a 4-cycle.
        let faces = l.maximal_faces_as_lists();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 2));
        assert!(is_flag(&l).flag);
    }

    #[test]
    fn link_rejects_non_simplex() {
        assert!(matches!(
            link(&hollow_triangle(), &[0, 1, 2]),
            Err(ComplexError::NotASimplex(_))
        ));
    }

    #[test]
    fn barycentric_of_edge_is_path() {
        let edge = SimplicialComplex::from_faces(2, &[vec![0, 1]]).unwrap();
        let sd = barycentric_subdivision(&edge).unwrap();
        assert_eq!(sd.vertex_count(), 3);
        assert_eq!(sd.maximal_faces().len(), 2);
        assert!(sd.maximal_faces_as_lists().iter().all(|f| f.len() == 2));
        assert!(sd.validate());
    }

    #[test]
    fn barycentric_of_hollow_triangle_is_six_cycle() {
        let sd = barycentric_subdivision(&hollow_triangle()).unwrap();
        assert_eq!(sd.vertex_count(), 6);
        let faces = sd.maximal_faces_as_lists();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.len() == 2));
        // Each vertex has degree 2 and the graph is connected: a 6-cycle.
        let adj = sd.adjacency();
        assert!(adj.iter().all(|a| a.count_ones() == 2));
        assert!(is_flag(&sd).flag);
    }

    #[test]
    fn barycentric_of_solid_triangle_is_flag_on_seven_vertices() {
        let sd = barycentric_subdivision(&solid_triangle()).unwrap();
        assert_eq!(sd.vertex_count(), 7);
        assert!(is_flag(&sd).flag);
        assert!(sd.validate());
    }

    #[test]
    fn cat1_verdicts() {
        match all_right_cat1_verdict(&hollow_triangle()) {
            CatOneVerdict::NotCatOne(w) => {
                assert!(w.base.is_empty());
                assert_eq!(w.triangle, [0, 1, 2]);
                assert!((w.loop_length - 1.5 * std::f64::consts::PI).abs() < 1e-15);
            }
            CatOneVerdict::CatOne => panic!("hollow triangle must fail"),
        }
        assert_eq!(all_right_cat1_verdict(&four_cycle()), CatOneVerdict::CatOne);
        let sd = barycentric_subdivision(&tetra_boundary()).unwrap();
        assert_eq!(all_right_cat1_verdict(&sd), CatOneVerdict::CatOne);
    }

    #[test]
    fn cat1_witness_in_link_for_deep_non_face() {
        // Boundary of the 3-simplex: minimal non-face has size 4, the empty
        // triangle lives in a vertex link.
        match all_right_cat1_verdict(&tetra_boundary()) {
            CatOneVerdict::NotCatOne(w) => {
                assert_eq!(w.base.len(), 1);
                let l = link(&tetra_boundary(), &w.base).unwrap();
                assert!(!is_flag(&l).flag);
            }
            CatOneVerdict::CatOne => panic!("tetra boundary is not CAT(1)"),
        }
    }

    #[test]
    fn link_of_flag_complex_is_flag() {
        // Exhaustive on <= 5 vertices: every clique complex, all links.
        for n in 1usize..=5 {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
            for code in 0u32..(1u32 << pairs.len()) {
                let edges: Vec<Vec<usize>> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| code >> i & 1 == 1)
                    .map(|(_, &(u, v))| vec![u, v])
                    .collect();
                let graph = SimplicialComplex::from_faces(n, &edges).unwrap();
                let adj = graph.adjacency();
                // Clique complex: maximal faces = maximal cliques.
                let mut cliques = Vec::new();
                let all = (1u128 << n) - 1;
                bron_kerbosch(&adj, 0, all, 0, &mut |c| {
                    cliques.push(c);
                    true
                });
                let s = SimplicialComplex::from_masks(n, cliques).unwrap();
                assert!(is_flag(&s).flag);
                for sigma in s.simplices() {
                    let l = link(&s, &mask_vertices(sigma)).unwrap();
                    assert!(is_flag(&l).flag, "link of {sigma:b} in n={n} code={code}");
                }
            }
        }
    }
}
