//! Named polytopes with characteristic maps, and a default map for each builder.

use crate::charmap::CharacteristicMap;
use crate::gf2::{BitMatrix, BitVec};
use crate::polytope::{cube, pentagon, permutohedron, segment, simplex, SimplePolytope};

/// A polytope together with a characteristic map on it.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub polytope: SimplePolytope,
    pub map: CharacteristicMap,
}

pub const FIXTURE_NAMES: [&str; 8] = [
    "segment",
    "torus",
    "klein",
    "pentagon",
    "triangle",
    "cube3",
    "permutohedron3",
    "permutohedron3-nu",
];

fn rows(n: usize, bits: &[&[usize]]) -> BitMatrix {
    BitMatrix::from_rows(bits.iter().map(|ones| BitVec::from_indices(n, ones.iter().copied())).collect(), n)
}

fn build(name: &'static str, polytope: SimplePolytope, map: BitMatrix) -> Fixture {
    let map = CharacteristicMap::new(&polytope, map).expect("fixture maps are characteristic");
    Fixture { name, polytope, map }
}

/// Looks up one of [`FIXTURE_NAMES`].
pub fn fixture(name: &str) -> Option<Fixture> {
    let f = match name {
        "segment" => build("segment", segment(), rows(1, &[&[0], &[0]])),
        "torus" => build("torus", cube(2).ok()?, rows(2, &[&[0], &[0], &[1], &[1]])),
        "klein" => build("klein", cube(2).ok()?, rows(2, &[&[0], &[0, 1], &[1], &[1]])),
        "pentagon" => build("pentagon", pentagon(), rows(2, &[&[0], &[1], &[0], &[1], &[0, 1]])),
        "triangle" => build("triangle", simplex(2).ok()?, rows(2, &[&[0], &[1], &[0, 1]])),
        "cube3" => {
            let p = cube(3).ok()?;
            let map = default_map(&p, "cube")?;
            Fixture { name: "cube3", polytope: p, map }
        }
        "permutohedron3" => {
            let p = permutohedron(3).ok()?;
            let map = default_map(&p, "permutohedron")?;
            Fixture { name: "permutohedron3", polytope: p, map }
        }
        "permutohedron3-nu" => {
            let base = fixture("permutohedron3")?;
            let map = nu_map(&base.polytope, &base.map)?;
            Fixture { name: "permutohedron3-nu", polytope: base.polytope, map }
        }
        _ => return None,
    };
    Some(f)
}

pub fn all_fixtures() -> Vec<Fixture> {
    FIXTURE_NAMES.iter().map(|n| fixture(n).expect("known fixture")).collect()
}

/// The perturbation of a coloring map at the first color-1 facet by `e₂`.
pub fn nu_map(p: &SimplePolytope, coloring: &CharacteristicMap) -> Option<CharacteristicMap> {
    let n = coloring.dim();
    if n < 2 {
        return None;
    }
    let e1 = BitVec::unit(n, 0);
    let g = (0..p.facet_count()).find(|&f| coloring.row(f) == &e1)?;
    coloring.perturb(p, g, &BitVec::unit(n, 1)).ok()
}

/// The standard map for a polytope produced by the named builder:
/// coordinate maps for cubes and simplices, alternating `e₁, e₂` around a
/// polygon (closing with `e₁+e₂` when odd), and the coloring by subset size
/// on permutohedra.
pub fn default_map(p: &SimplePolytope, builder: &str) -> Option<CharacteristicMap> {
    let n = p.dim();
    let m = p.facet_count();
    let lambda = match builder {
        "segment" | "cube" | "square" | "cube3" => {
            BitMatrix::from_rows((0..m).map(|f| BitVec::unit(n, f / 2)).collect(), n)
        }
        "simplex" | "triangle" => BitMatrix::from_rows(
            (0..m)
                .map(|f| if f < n { BitVec::unit(n, f) } else { BitVec::from_indices(n, 0..n) })
                .collect(),
            n,
        ),
        "polygon" | "pentagon" => BitMatrix::from_rows(
            (0..m)
                .map(|f| {
                    if m % 2 == 1 && f == m - 1 {
                        BitVec::from_indices(2, [0, 1])
                    } else {
                        BitVec::unit(2, f % 2)
                    }
                })
                .collect(),
            2,
        ),
        "permutohedron" | "permutohedron3" => {
            let colors: Vec<usize> = p
                .facet_names()
                .iter()
                .map(|s| if n < 9 { s.len() } else { s.split('.').count() })
                .collect();
            return CharacteristicMap::from_coloring(p, &colors).ok();
        }
        _ => return None,
    };
    CharacteristicMap::new(p, lambda).ok()
}
