//! Morse cells `p⁻¹(F_v)` of a generic height function.
//!
//! `F_v` is the union of the relative interiors of the faces through `v`
//! that lie below `v`. Its closure `G_v` is the face spanned by the edges
//! running down from `v`, so its facet set is `V_v` minus the facets those
//! edges leave.

use serde::Serialize;

use crate::polytope::{is_subset, FacetId, PolytopeError, SimplePolytope};

/// A face `G′ ⊆ G_v` missing `v` whose top vertex `max_vertex` has index at
/// least `index(vertex)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrontierViolation {
    pub vertex: usize,
    pub max_vertex: usize,
    pub face: Vec<FacetId>,
}

/// Faces in the boundary of a Morse cell that sit in cells of the same or
/// higher dimension. Empty exactly when the cells form a CW structure.
pub fn frontier_check(
    p: &SimplePolytope,
    direction: &[f64],
) -> Result<Vec<FrontierViolation>, PolytopeError> {
    let morse = p.morse_index_counts(direction)?;
    let lattice = p.face_lattice();
    let mut violations = Vec::new();
    for v in 0..p.vertex_count() {
        let below: Vec<FacetId> = p
            .edges_at(v)
            .filter(|&(_, w)| morse.heights[w] < morse.heights[v])
            .map(|(f, _)| f)
            .collect();
        let closure: Vec<FacetId> =
            p.vertex(v).iter().copied().filter(|f| !below.contains(f)).collect();
        for face in lattice.faces() {
            if !is_subset(&closure, face) || is_subset(face, p.vertex(v)) {
                continue;
            }
            let top = (0..p.vertex_count())
                .filter(|&w| is_subset(face, p.vertex(w)))
                .max_by(|&a, &b| morse.heights[a].total_cmp(&morse.heights[b]))
                .expect("faces have vertices");
            if morse.index[top] >= morse.index[v] {
                violations.push(FrontierViolation {
                    vertex: v,
                    max_vertex: top,
                    face: face.clone(),
                });
            }
        }
    }
    Ok(violations)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E1Entry {
    /// Filtration step, starting at 1 for the lowest vertex.
    pub p: usize,
    pub q: i64,
    pub vertex: usize,
    pub index: usize,
}

/// The `E₁` page of the height filtration `G_1 ⊂ G_2 ⊂ …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E1Table {
    /// Vertices by ascending height.
    pub order: Vec<usize>,
    /// The nonzero entries, each of dimension 1.
    pub entries: Vec<E1Entry>,
    /// `degree_sums[i]` is the sum of `dim E₁^{p,q}` over `p + q = i`.
    pub degree_sums: Vec<usize>,
}

impl E1Table {
    pub fn dim(&self, p: usize, q: i64) -> usize {
        self.entries.iter().filter(|e| e.p == p && e.q == q).count()
    }
}

pub fn filtration_e1_table(p: &SimplePolytope, direction: &[f64]) -> Result<E1Table, PolytopeError> {
    let morse = p.morse_index_counts(direction)?;
    let order = morse.ascending();
    let entries: Vec<E1Entry> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| E1Entry {
            p: i + 1,
            q: morse.index[v] as i64 - (i as i64 + 1),
            vertex: v,
            index: morse.index[v],
        })
        .collect();
    let mut degree_sums = vec![0; p.dim() + 1];
    for e in &entries {
        degree_sums[e.index] += 1;
    }
    Ok(E1Table {
        order,
        entries,
        degree_sums,
    })
}
