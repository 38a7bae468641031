//! JSON files for polytopes, characteristic maps and classes.
//!
//! ```json
//! { "n": 2, "facets": ["L", "R", "B", "T"], "vertices": [[0, 2], [1, 2], [0, 3], [1, 3]] }
//! { "lambda": [[1, 0], [1, 0], [0, 1], [0, 1]] }
//! { "class": [1, 0, 0, 0] }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charmap::{CharMapError, CharacteristicMap, CohomologyClass};
use crate::gf2::{BitMatrix, BitVec};
use crate::polytope::{FacetId, PolytopeError, SimplePolytope};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    CharMap(#[from] CharMapError),
    #[error("entries must be 0 or 1, found {0}")]
    NotABit(u8),
    #[error("expected {expected} entries, found {found}")]
    Length { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub n: usize,
    pub facets: Vec<String>,
    pub vertices: Vec<Vec<FacetId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharMapFile {
    pub lambda: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFile {
    pub class: Vec<u8>,
}

impl PolytopeFile {
    pub fn from_polytope(p: &SimplePolytope) -> Self {
        Self {
            n: p.dim(),
            facets: p.facet_names().to_vec(),
            vertices: p.vertices().to_vec(),
            coords: p.geometry().map(|g| g.coords.clone()),
        }
    }

    pub fn into_polytope(self) -> Result<SimplePolytope, PolytopeError> {
        let p = SimplePolytope::from_vertex_facets(self.n, self.facets, self.vertices)?;
        match self.coords {
            Some(c) => p.with_coordinates(c),
            None => Ok(p),
        }
    }
}

pub fn bits_to_vec(bits: &[u8]) -> Result<BitVec, IoError> {
    if let Some(&b) = bits.iter().find(|&&b| b > 1) {
        return Err(IoError::NotABit(b));
    }
    Ok(BitVec::from_bits(bits.iter().map(|&b| b == 1)))
}

pub fn read_polytope(json: &str) -> Result<SimplePolytope, IoError> {
    let file: PolytopeFile = serde_json::from_str(json)?;
    Ok(file.into_polytope()?)
}

pub fn write_polytope(p: &SimplePolytope) -> String {
    serde_json::to_string_pretty(&PolytopeFile::from_polytope(p)).expect("serializable")
}

/// Parses and validates a map against `p`.
pub fn read_charmap(json: &str, p: &SimplePolytope) -> Result<CharacteristicMap, IoError> {
    let file: CharMapFile = serde_json::from_str(json)?;
    if file.lambda.len() != p.facet_count() {
        return Err(IoError::Length {
            expected: p.facet_count(),
            found: file.lambda.len(),
        });
    }
    let rows = file
        .lambda
        .iter()
        .map(|r| {
            if r.len() != p.dim() {
                return Err(IoError::Length { expected: p.dim(), found: r.len() });
            }
            bits_to_vec(r)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CharacteristicMap::new(p, BitMatrix::from_rows(rows, p.dim()))?)
}

pub fn write_charmap(map: &CharacteristicMap) -> String {
    let lambda = map.matrix().rows().iter().map(BitVec::to_bits).collect();
    serde_json::to_string(&CharMapFile { lambda }).expect("serializable")
}

pub fn read_class(json: &str, m: usize) -> Result<CohomologyClass, IoError> {
    let file: ClassFile = serde_json::from_str(json)?;
    if file.class.len() != m {
        return Err(IoError::Length { expected: m, found: file.class.len() });
    }
    Ok(CohomologyClass::from_bits(bits_to_vec(&file.class)?))
}

pub fn write_class(c: &CohomologyClass) -> String {
    serde_json::to_string(&ClassFile { class: c.bits().to_bits() }).expect("serializable")
}
