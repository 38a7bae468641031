//! Height functions and hyperplane sections.

use super::{h_from_f, is_subset, FacetId, PolytopeError, SimplePolytope};

/// Relative tolerance applied to heights.
const RELATIVE_EPS: f64 = 1e-9;

/// Vertex coordinates in vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricRealization {
    pub coords: Vec<Vec<f64>>,
}

impl GeometricRealization {
    pub fn heights(&self, direction: &[f64]) -> Vec<f64> {
        self.coords
            .iter()
            .map(|x| x.iter().zip(direction).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// `1e-9 · max |h|` over the given heights.
pub fn genericity_tolerance(heights: &[f64]) -> f64 {
    RELATIVE_EPS * heights.iter().fold(0.0f64, |acc, h| acc.max(h.abs()))
}

/// Vertex indices of a generic height function.
#[derive(Clone, Debug, PartialEq)]
pub struct MorseData {
    pub heights: Vec<f64>,
    /// Number of neighbors below each vertex.
    pub index: Vec<usize>,
    /// `counts[i]` is the number of vertices of index `i`, `i = 0..=n`.
    pub counts: Vec<usize>,
}

impl MorseData {
    /// Vertices sorted by ascending height.
    pub fn ascending(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.heights.len()).collect();
        order.sort_by(|&a, &b| self.heights[a].total_cmp(&self.heights[b]));
        order
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Minus,
    Plus,
}

/// A generic hyperplane section `S = P ∩ {⟨l, x⟩ = c}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionData {
    pub direction: Vec<f64>,
    pub threshold: f64,
    pub side: Vec<Side>,
    /// Face ids (in the polytope's face lattice) whose vertices lie on both sides.
    pub crossed_faces: Vec<usize>,
    pub crossed_facets: Vec<FacetId>,
    /// f-vector of `S` as an `(n-1)`-polytope, `f_i` = codimension `i+1` faces of `S`.
    pub f_vector: Vec<usize>,
    pub h_vector: Vec<i64>,
}

impl SectionData {
    /// `S` as a simple polytope on its own: facets are the crossed facets of
    /// `P` (in order) and vertices are the crossed edges. Needs `n ≥ 2`.
    pub fn section_polytope(&self, p: &SimplePolytope) -> Result<SimplePolytope, PolytopeError> {
        let n = p.dim();
        if n < 2 {
            return Err(PolytopeError::ZeroDimension);
        }
        let lattice = p.face_lattice();
        let local: std::collections::HashMap<FacetId, usize> = self
            .crossed_facets
            .iter()
            .enumerate()
            .map(|(i, &f)| (f, i))
            .collect();
        let names = self
            .crossed_facets
            .iter()
            .map(|&f| p.facet_names()[f].clone())
            .collect();
        let vertices = self
            .crossed_faces
            .iter()
            .map(|&id| lattice.face(id))
            .filter(|t| t.len() == n - 1)
            .map(|t| t.iter().map(|f| local[f]).collect())
            .collect();
        SimplePolytope::from_vertex_facets(n - 1, names, vertices)
    }
}

impl SimplePolytope {
    fn heights_for(&self, direction: &[f64]) -> Result<Vec<f64>, PolytopeError> {
        let geom = self.geometry().ok_or(PolytopeError::GeometryRequired)?;
        if direction.len() != self.dim() {
            return Err(PolytopeError::DirectionLength {
                expected: self.dim(),
                found: direction.len(),
            });
        }
        Ok(geom.heights(direction))
    }

    /// Index of every vertex for the height `x ↦ ⟨x, l⟩`, plus per-index counts.
    pub fn morse_index_counts(&self, direction: &[f64]) -> Result<MorseData, PolytopeError> {
        let heights = self.heights_for(direction)?;
        let tol = genericity_tolerance(&heights);
        let mut index = vec![0; self.vertex_count()];
        for v in 0..self.vertex_count() {
            for &w in self.neighbors(v) {
                let diff = heights[v] - heights[w];
                if diff.abs() <= tol {
                    return Err(PolytopeError::NonGenericDirection(v.min(w), v.max(w)));
                }
                if diff > 0.0 {
                    index[v] += 1;
                }
            }
        }
        let mut counts = vec![0; self.dim() + 1];
        for &i in &index {
            counts[i] += 1;
        }
        Ok(MorseData {
            heights,
            index,
            counts,
        })
    }

    /// Slices by the hyperplane `⟨l, x⟩ = c`.
    pub fn slice(&self, direction: &[f64], threshold: f64) -> Result<SectionData, PolytopeError> {
        let heights = self.heights_for(direction)?;
        let tol = genericity_tolerance(&heights);
        let mut side = Vec::with_capacity(heights.len());
        for (v, h) in heights.iter().enumerate() {
            let d = h - threshold;
            if d.abs() <= tol {
                return Err(PolytopeError::NonGenericSection(v));
            }
            side.push(if d < 0.0 { Side::Minus } else { Side::Plus });
        }
        if side.iter().all(|&s| s == side[0]) {
            return Err(PolytopeError::EmptySection);
        }
        let lattice = self.face_lattice();
        let crossed_faces: Vec<usize> = (0..lattice.len())
            .filter(|&id| {
                let t = lattice.face(id);
                let mut sides = self
                    .vertices()
                    .iter()
                    .zip(&side)
                    .filter(|(set, _)| is_subset(t, set))
                    .map(|(_, s)| *s);
                let first = sides.next().expect("every face has a vertex");
                sides.any(|s| s != first)
            })
            .collect();
        let n = self.dim();
        let mut f_vector = vec![0; n - 1];
        let mut crossed_facets = Vec::new();
        for &id in &crossed_faces {
            let k = lattice.face(id).len();
            if k == 1 {
                crossed_facets.push(lattice.face(id)[0]);
            }
            if (1..n).contains(&k) {
                f_vector[k - 1] += 1;
            }
        }
        let h_vector = h_from_f(n - 1, &f_vector);
        Ok(SectionData {
            direction: direction.to_vec(),
            threshold,
            side,
            crossed_faces,
            crossed_facets,
            f_vector,
            h_vector,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{cube, pentagon, segment};
    use super::*;

    #[test]
    fn pentagon_indices_follow_height_order() {
        let p = pentagon();
        let morse = p.morse_index_counts(&[0.0, 1.0]).unwrap();
        // A, B, C, D, E
        assert_eq!(morse.index, vec![2, 1, 1, 1, 0]);
        assert_eq!(morse.counts, vec![1, 3, 1]);
        assert_eq!(morse.ascending(), vec![4, 3, 2, 1, 0]);
    }

    #[test]
    fn cube_indices_are_binomial() {
        for n in 1..=4 {
            let p = cube(n).unwrap();
            let morse = p.morse_index_counts(&vec![1.0; n]).unwrap();
            let expected: Vec<usize> =
                (0..=n).map(|k| super::super::binomial(n, k) as usize).collect();
            assert_eq!(morse.counts, expected);
            for (v, &i) in morse.index.iter().enumerate() {
                assert_eq!(i, v.count_ones() as usize);
            }
        }
        assert_eq!(segment().morse_index_counts(&[1.0]).unwrap().counts, vec![1, 1]);
    }

    #[test]
    fn non_generic_direction_is_rejected() {
        let p = cube(2).unwrap();
        assert!(matches!(
            p.morse_index_counts(&[1.0, 0.0]),
            Err(PolytopeError::NonGenericDirection(..))
        ));
        assert!(matches!(
            p.morse_index_counts(&[1.0]),
            Err(PolytopeError::DirectionLength { .. })
        ));
    }

    #[test]
    fn geometry_is_required() {
        let p = SimplePolytope::from_vertex_facets(
            1,
            vec!["a".into(), "b".into()],
            vec![vec![0], vec![1]],
        )
        .unwrap();
        assert_eq!(p.morse_index_counts(&[1.0]), Err(PolytopeError::GeometryRequired));
        assert_eq!(p.slice(&[1.0], 0.5), Err(PolytopeError::GeometryRequired));
    }

    #[test]
    fn square_vertical_slice() {
        let p = cube(2).unwrap();
        let s = p.slice(&[1.0, 0.0], 0.5).unwrap();
        let names: Vec<&str> = s.crossed_facets.iter().map(|&f| p.facet_names()[f].as_str()).collect();
        assert_eq!(names, vec!["B", "T"]);
        assert_eq!(s.h_vector, vec![1, 1]);
        assert_eq!(s.f_vector, vec![2]);
    }

    #[test]
    fn cube_horizontal_slice_is_a_square() {
        let p = cube(3).unwrap();
        let s = p.slice(&[0.0, 0.0, 1.0], 0.5).unwrap();
        let names: Vec<&str> = s.crossed_facets.iter().map(|&f| p.facet_names()[f].as_str()).collect();
        assert_eq!(names, vec!["L", "R", "B", "T"]);
        assert_eq!(s.h_vector, vec![1, 2, 1]);
        let section = s.section_polytope(&p).unwrap();
        assert!(section.same_combinatorics(&cube(2).unwrap()));
        assert_eq!(section.h_vector(), s.h_vector);
    }

    #[test]
    fn slice_errors() {
        let p = cube(2).unwrap();
        assert_eq!(p.slice(&[1.0, 0.0], 5.0), Err(PolytopeError::EmptySection));
        assert_eq!(p.slice(&[1.0, 0.0], 1.0), Err(PolytopeError::NonGenericSection(1)));
    }
}
