//! Simple polytopes, described through their dual simplicial complex.
//!
//! A vertex of a simple `n`-polytope lies on exactly `n` facets, so it is
//! recorded as the `n`-subset of facet indices containing it. A face of
//! codimension `k` is a `k`-subset of facets that is contained in some vertex
//! set; the empty set is the polytope itself.

mod builders;
mod geometry;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

pub use builders::{
    cube, pentagon, permutohedron, polygon, prism, product, segment, simplex, MAX_BUILDER_VERTICES,
};
pub use geometry::{genericity_tolerance, GeometricRealization, MorseData, SectionData, Side};

/// Index of a facet, `0..m`.
pub type FacetId = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolytopeError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("vertex {vertex} lies on {found} facets, expected {expected} (polytope is not simple)")]
    NotSimple {
        vertex: usize,
        found: usize,
        expected: usize,
    },
    #[error("vertex {vertex} refers to facet {facet}, but there are only {m} facets")]
    FacetOutOfRange { vertex: usize, facet: usize, m: usize },
    #[error("vertices {first} and {second} lie on the same facets")]
    DuplicateVertex { first: usize, second: usize },
    #[error("facet {0} contains no vertex")]
    EmptyFacet(FacetId),
    #[error("edge {edge:?} has {count} endpoints, expected 2")]
    RidgeCondition { edge: Vec<FacetId>, count: usize },
    #[error("the vertex-edge graph is disconnected")]
    Disconnected,
    #[error("{found} coordinate rows for {expected} vertices")]
    CoordinateCount { expected: usize, found: usize },
    #[error("coordinate row {vertex} has length {found}, expected {expected}")]
    CoordinateLength {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("construction would produce {requested} vertices, above the cap of {cap}")]
    TooLarge { requested: usize, cap: usize },
    #[error("invalid builder argument: {0}")]
    BadArgument(String),
    #[error("operation requires vertex coordinates")]
    GeometryRequired,
    #[error("direction vector has length {found}, expected {expected}")]
    DirectionLength { expected: usize, found: usize },
    #[error("height function is not generic: vertices {0} and {1} have equal height")]
    NonGenericDirection(usize, usize),
    #[error("hyperplane is not generic: vertex {0} lies on it")]
    NonGenericSection(usize),
    #[error("hyperplane misses the polytope: all vertices lie on one side")]
    EmptySection,
}

/// A simple polytope given by the facet sets of its vertices.
#[derive(Clone, Debug)]
pub struct SimplePolytope {
    n: usize,
    facet_names: Vec<String>,
    vertices: Vec<Vec<FacetId>>,
    vertex_labels: Vec<String>,
    /// `neighbors[v][k]` is the vertex reached from `v` by the edge that leaves
    /// the `k`th facet of `v` (in sorted order).
    neighbors: Vec<Vec<usize>>,
    geometry: Option<GeometricRealization>,
}

impl SimplePolytope {
    /// Validates and builds a polytope. Each vertex set is sorted; vertex order
    /// is preserved as given.
    pub fn from_vertex_facets(
        n: usize,
        facet_names: Vec<String>,
        vertices: Vec<Vec<FacetId>>,
    ) -> Result<Self, PolytopeError> {
        if n == 0 {
            return Err(PolytopeError::ZeroDimension);
        }
        let m = facet_names.len();
        let mut sorted = Vec::with_capacity(vertices.len());
        for (vi, set) in vertices.into_iter().enumerate() {
            let mut set = set;
            set.sort_unstable();
            set.dedup();
            if let Some(&bad) = set.iter().find(|&&f| f >= m) {
                return Err(PolytopeError::FacetOutOfRange {
                    vertex: vi,
                    facet: bad,
                    m,
                });
            }
            if set.len() != n {
                return Err(PolytopeError::NotSimple {
                    vertex: vi,
                    found: set.len(),
                    expected: n,
                });
            }
            sorted.push(set);
        }
        let mut seen: HashMap<&[FacetId], usize> = HashMap::new();
        for (vi, set) in sorted.iter().enumerate() {
            if let Some(&first) = seen.get(set.as_slice()) {
                return Err(PolytopeError::DuplicateVertex { first, second: vi });
            }
            seen.insert(set, vi);
        }
        let mut used = vec![false; m];
        for set in &sorted {
            for &f in set {
                used[f] = true;
            }
        }
        if let Some(f) = used.iter().position(|u| !u) {
            return Err(PolytopeError::EmptyFacet(f));
        }

        let mut ridges: HashMap<Vec<FacetId>, Vec<usize>> = HashMap::new();
        for (vi, set) in sorted.iter().enumerate() {
            for k in 0..n {
                let mut ridge = set.clone();
                ridge.remove(k);
                ridges.entry(ridge).or_default().push(vi);
            }
        }
        let mut bad: Vec<(&Vec<FacetId>, usize)> = ridges
            .iter()
            .filter(|(_, ends)| ends.len() != 2)
            .map(|(r, ends)| (r, ends.len()))
            .collect();
        bad.sort();
        if let Some((edge, count)) = bad.first() {
            return Err(PolytopeError::RidgeCondition {
                edge: (*edge).clone(),
                count: *count,
            });
        }
        let neighbors: Vec<Vec<usize>> = sorted
            .iter()
            .enumerate()
            .map(|(vi, set)| {
                (0..n)
                    .map(|k| {
                        let mut ridge = set.clone();
                        ridge.remove(k);
                        let ends = &ridges[&ridge];
                        if ends[0] == vi {
                            ends[1]
                        } else {
                            ends[0]
                        }
                    })
                    .collect()
            })
            .collect();

        let mut reached = vec![false; sorted.len()];
        let mut queue = VecDeque::from([0usize]);
        reached[0] = !sorted.is_empty();
        while let Some(v) = queue.pop_front() {
            for &w in &neighbors[v] {
                if !reached[w] {
                    reached[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if sorted.is_empty() || reached.iter().any(|r| !r) {
            return Err(PolytopeError::Disconnected);
        }

        let vertex_labels = sorted
            .iter()
            .map(|set| {
                let names: Vec<&str> = set.iter().map(|&f| facet_names[f].as_str()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        Ok(Self {
            n,
            facet_names,
            vertices: sorted,
            vertex_labels,
            neighbors,
            geometry: None,
        })
    }

    /// Attaches coordinates, one `n`-vector per vertex in vertex order.
    pub fn with_coordinates(mut self, coords: Vec<Vec<f64>>) -> Result<Self, PolytopeError> {
        if coords.len() != self.vertices.len() {
            return Err(PolytopeError::CoordinateCount {
                expected: self.vertices.len(),
                found: coords.len(),
            });
        }
        if let Some((vertex, row)) = coords.iter().enumerate().find(|(_, r)| r.len() != self.n) {
            return Err(PolytopeError::CoordinateLength {
                vertex,
                expected: self.n,
                found: row.len(),
            });
        }
        self.geometry = Some(GeometricRealization { coords });
        Ok(self)
    }

    /// Replaces the generated vertex labels (by default the facet names of each vertex).
    ///
    /// # Panics
    /// Panics if the label count differs from the vertex count.
    pub fn with_vertex_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.vertices.len(), "one label per vertex");
        self.vertex_labels = labels;
        self
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn facet_count(&self) -> usize {
        self.facet_names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facet_names(&self) -> &[String] {
        &self.facet_names
    }

    pub fn facet_index(&self, name: &str) -> Option<FacetId> {
        self.facet_names.iter().position(|f| f == name)
    }

    pub fn vertices(&self) -> &[Vec<FacetId>] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &[FacetId] {
        &self.vertices[v]
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    /// The vertex whose facet set is exactly `facets` (sorted).
    pub fn vertex_with_facets(&self, facets: &[FacetId]) -> Option<usize> {
        self.vertices.iter().position(|s| s.as_slice() == facets)
    }

    /// Pairs `(facet left, neighbor)` for the `n` edges at `v`.
    pub fn edges_at(&self, v: usize) -> impl Iterator<Item = (FacetId, usize)> + '_ {
        self.vertices[v]
            .iter()
            .copied()
            .zip(self.neighbors[v].iter().copied())
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn geometry(&self) -> Option<&GeometricRealization> {
        self.geometry.as_ref()
    }

    pub fn face_lattice(&self) -> FaceLattice {
        FaceLattice::new(self)
    }

    /// `f_i` is the number of faces of codimension `i + 1`, for `i = 0..n`.
    pub fn f_vector(&self) -> Vec<usize> {
        let lattice = self.face_lattice();
        (1..=self.n).map(|k| lattice.codim(k).len()).collect()
    }

    /// Number of faces of each dimension `0..=n`.
    pub fn face_counts_by_dim(&self) -> Vec<usize> {
        let lattice = self.face_lattice();
        (0..=self.n).map(|d| lattice.codim(self.n - d).len()).collect()
    }

    /// `(h_0, …, h_n)`, the coefficients of
    /// `Σ_k f_{k-1} (t-1)^{n-k}` (with `f_{-1} = 1`) from `t^n` down to `t^0`.
    pub fn h_vector(&self) -> Vec<i64> {
        let h = h_from_f(self.n, &self.f_vector());
        if h.iter().any(|&x| x < 0) {
            log::warn!("negative h-number {h:?}: input is not the boundary of a simple polytope");
        }
        h
    }

    /// Ordered so that the combinatorics are identical (facets, vertex sets).
    pub fn same_combinatorics(&self, other: &Self) -> bool {
        self.n == other.n
            && self.facet_count() == other.facet_count()
            && {
                let mut a = self.vertices.clone();
                let mut b = other.vertices.clone();
                a.sort();
                b.sort();
                a == b
            }
    }
}

/// h-numbers of an `n`-dimensional simple polytope from its f-vector `f_0..f_{n-1}`.
pub fn h_from_f(n: usize, f: &[usize]) -> Vec<i64> {
    assert_eq!(f.len(), n, "f-vector length must equal the dimension");
    let f_shift = |k: usize| -> i64 {
        if k == 0 {
            1
        } else {
            f[k - 1] as i64
        }
    };
    (0..=n)
        .map(|i| {
            (0..=i)
                .map(|k| {
                    let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
                    sign * f_shift(k) * binomial(n - k, n - i) as i64
                })
                .sum()
        })
        .collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All faces of a polytope, grouped by codimension and sorted
/// lexicographically by facet set within each group.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    n: usize,
    faces: Vec<Vec<FacetId>>,
    /// `offsets[k]..offsets[k + 1]` are the face ids of codimension `k`.
    offsets: Vec<usize>,
    index: HashMap<Vec<FacetId>, usize>,
}

impl FaceLattice {
    fn new(p: &SimplePolytope) -> Self {
        let n = p.dim();
        let by_codim = (0..=n).map(|k| {
            let mut layer: Vec<Vec<FacetId>> = p
                .vertices()
                .iter()
                .flat_map(|set| subsets_of_size(set, k))
                .collect();
            layer.sort();
            layer.dedup();
            layer
        });
        let mut offsets = vec![0];
        let mut faces = Vec::new();
        for layer in by_codim {
            faces.extend(layer);
            offsets.push(faces.len());
        }
        let index = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Self {
            n,
            faces,
            offsets,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Faces of codimension `k`, i.e. `k`-subsets of facets.
    pub fn codim(&self, k: usize) -> &[Vec<FacetId>] {
        &self.faces[self.offsets[k]..self.offsets[k + 1]]
    }

    /// Id range of codimension-`k` faces.
    pub fn codim_ids(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn face(&self, id: usize) -> &[FacetId] {
        &self.faces[id]
    }

    pub fn faces(&self) -> &[Vec<FacetId>] {
        &self.faces
    }

    /// Id of the face with sorted facet set `facets`, if it is a face.
    pub fn id(&self, facets: &[FacetId]) -> Option<usize> {
        self.index.get(facets).copied()
    }

    pub fn contains(&self, facets: &[FacetId]) -> bool {
        self.index.contains_key(facets)
    }

    /// Facets `j ∉ T` such that `T ∪ {j}` is again a face.
    pub fn coface_facets(&self, facets: &[FacetId], m: usize) -> Vec<FacetId> {
        (0..m)
            .filter(|j| facets.binary_search(j).is_err())
            .filter(|&j| self.contains(&insert_sorted(facets, j)))
            .collect()
    }

    /// Facets meeting the face `T`: those `j` with `T ∪ {j}` a face, including `T` itself.
    pub fn facets_meeting(&self, facets: &[FacetId], m: usize) -> Vec<FacetId> {
        (0..m)
            .filter(|&j| {
                facets.binary_search(&j).is_ok() || self.contains(&insert_sorted(facets, j))
            })
            .collect()
    }
}

pub(crate) fn insert_sorted(set: &[FacetId], j: FacetId) -> Vec<FacetId> {
    let mut out = set.to_vec();
    let at = out.partition_point(|&x| x < j);
    out.insert(at, j);
    out
}

pub(crate) fn is_subset(small: &[FacetId], big: &[FacetId]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

fn subsets_of_size(set: &[FacetId], k: usize) -> Vec<Vec<FacetId>> {
    fn rec(set: &[FacetId], k: usize, start: usize, cur: &mut Vec<FacetId>, out: &mut Vec<Vec<FacetId>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..set.len() {
            if set.len() - i < k - cur.len() {
                break;
            }
            cur.push(set[i]);
            rec(set, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(set, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn square_is_valid() {
        let p = SimplePolytope::from_vertex_facets(
            2,
            names(&["L", "R", "B", "T"]),
            vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
        )
        .unwrap();
        let lattice = p.face_lattice();
        assert_eq!(
            (0..=2).map(|k| lattice.codim(k).len()).collect::<Vec<_>>(),
            vec![1, 4, 4]
        );
        assert_eq!(p.h_vector(), vec![1, 2, 1]);
        assert_eq!(p.vertex_label(0), "{L,B}");
    }

    #[test]
    fn rejects_non_simple_vertex() {
        let err = SimplePolytope::from_vertex_facets(
            2,
            names(&["a", "b", "c"]),
            vec![vec![0, 1, 2], vec![0, 1], vec![1, 2]],
        )
        .unwrap_err();
        assert!(matches!(err, PolytopeError::NotSimple { vertex: 0, found: 3, expected: 2 }));
    }

    #[test]
    fn rejects_bad_facet_index_and_unused_facets() {
        let err = SimplePolytope::from_vertex_facets(1, names(&["a", "b"]), vec![vec![0], vec![2]])
            .unwrap_err();
        assert!(matches!(err, PolytopeError::FacetOutOfRange { facet: 2, .. }));
        let err = SimplePolytope::from_vertex_facets(
            1,
            names(&["a", "b", "c"]),
            vec![vec![0], vec![1]],
        )
        .unwrap_err();
        assert_eq!(err, PolytopeError::EmptyFacet(2));
    }

    #[test]
    fn rejects_ridge_violation() {
        // Three "vertices" on a segment: the empty ridge has three endpoints.
        let err = SimplePolytope::from_vertex_facets(
            1,
            names(&["a", "b", "c"]),
            vec![vec![0], vec![1], vec![2]],
        )
        .unwrap_err();
        assert!(matches!(err, PolytopeError::RidgeCondition { count: 3, .. }));
        // An open path a-b-c: the ends of the path have only one neighbor.
        let err = SimplePolytope::from_vertex_facets(
            2,
            names(&["a", "b", "c", "d"]),
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
        )
        .unwrap_err();
        assert!(matches!(err, PolytopeError::RidgeCondition { count: 1, .. }));
    }

    #[test]
    fn rejects_disconnected_dual_complex() {
        // Two disjoint squares.
        let err = SimplePolytope::from_vertex_facets(
            2,
            names(&["a", "b", "c", "d", "e", "f", "g", "h"]),
            vec![
                vec![0, 2],
                vec![2, 1],
                vec![1, 3],
                vec![3, 0],
                vec![4, 6],
                vec![6, 5],
                vec![5, 7],
                vec![7, 4],
            ],
        )
        .unwrap_err();
        assert_eq!(err, PolytopeError::Disconnected);
    }

    #[test]
    fn rejects_duplicate_vertex() {
        let err = SimplePolytope::from_vertex_facets(1, names(&["a", "b"]), vec![vec![0], vec![0]])
            .unwrap_err();
        assert!(matches!(err, PolytopeError::DuplicateVertex { first: 0, second: 1 }));
    }

    #[test]
    fn h_from_f_matches_hand_expansions() {
        // (t-1)^2 + 5(t-1) + 5 = t^2 + 3t + 1
        assert_eq!(h_from_f(2, &[5, 5]), vec![1, 3, 1]);
        // (t-1)^3 + 14(t-1)^2 + 36(t-1) + 24 = t^3 + 11t^2 + 11t + 1
        assert_eq!(h_from_f(3, &[14, 36, 24]), vec![1, 11, 11, 1]);
        assert_eq!(h_from_f(1, &[2]), vec![1, 1]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(20, 10), 184_756);
    }

    #[test]
    fn coface_and_meeting_facets() {
        let p = cube(3).unwrap();
        let lattice = p.face_lattice();
        let bottom = p.facet_index("D").unwrap();
        // Bottom meets every facet except the top.
        assert_eq!(lattice.facets_meeting(&[bottom], 6).len(), 5);
        assert_eq!(lattice.coface_facets(&[bottom], 6).len(), 4);
        assert_eq!(lattice.facets_meeting(&[], 6).len(), 6);
    }
}
