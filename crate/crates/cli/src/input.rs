//! Resolving `--builder`/`--input`, `--lambda`, `--class`, `--facet` and
//! `--hyperplane` into library values.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;

use smallcover::charmap::{CharMapError, CharacteristicMap, CohomologyClass};
use smallcover::fixtures::{default_map, fixture, nu_map};
use smallcover::gf2::{BitMatrix, BitVec};
use smallcover::io::{read_charmap, read_class, read_polytope, IoError};
use smallcover::polytope::{cube, permutohedron, polygon, simplex, FacetId, SimplePolytope};

#[derive(Args, Debug, Clone, Default)]
pub struct Source {
    /// segment, square, torus, klein, triangle, pentagon, polygon, simplex,
    /// cube, cube3, permutohedron, permutohedron3, permutohedron3-nu
    #[arg(long, conflicts_with = "input")]
    pub builder: Option<String>,
    /// Dimension for simplex, cube and permutohedron.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Number of sides for polygon.
    #[arg(long)]
    pub gons: Option<usize>,
    /// Polytope JSON file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Characteristic map: a JSON file or literal, one bitstring per facet
    /// ("10,10,01,01"), or "nu" for the perturbed coloring map.
    #[arg(long)]
    pub lambda: Option<String>,
}

pub struct Loaded {
    pub name: String,
    pub polytope: SimplePolytope,
    default: Option<CharacteristicMap>,
}

impl Source {
    pub fn load(&self) -> Result<Loaded> {
        match (&self.builder, &self.input) {
            (Some(b), None) => self.build_named(b),
            (None, Some(path)) => {
                let text = read_file(path)?;
                let polytope = read_polytope(&text)
                    .with_context(|| format!("reading polytope from {}", path.display()))?;
                Ok(Loaded {
                    name: path.display().to_string(),
                    polytope,
                    default: None,
                })
            }
            (None, None) => bail!("pass exactly one of --builder or --input"),
            (Some(_), Some(_)) => bail!("--builder and --input are mutually exclusive"),
        }
    }

    fn build_named(&self, name: &str) -> Result<Loaded> {
        let fixture_name = match name {
            "square" => "torus",
            other => other,
        };
        if let Some(f) = fixture(fixture_name) {
            return Ok(Loaded {
                name: name.to_string(),
                polytope: f.polytope,
                default: Some(f.map),
            });
        }
        let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| anyhow!("--builder {name} needs {flag}"));
        let polytope = match name {
            "simplex" => simplex(need(self.dim, "--dim")?)?,
            "cube" => cube(need(self.dim, "--dim")?)?,
            "permutohedron" => permutohedron(need(self.dim, "--dim")?)?,
            "polygon" => polygon(need(self.gons, "--gons")?)?,
            _ => bail!("unknown builder {name:?}"),
        };
        let default = default_map(&polytope, name);
        Ok(Loaded {
            name: name.to_string(),
            polytope,
            default,
        })
    }

    pub fn load_with_map(&self) -> Result<(Loaded, CharacteristicMap)> {
        let loaded = self.load()?;
        let map = match self.lambda.as_deref() {
            None => loaded
                .default
                .clone()
                .ok_or_else(|| anyhow!("no default map for this polytope; pass --lambda"))?,
            Some("nu") => {
                let base = loaded
                    .default
                    .as_ref()
                    .ok_or_else(|| anyhow!("--lambda nu needs a built-in coloring map"))?;
                nu_map(&loaded.polytope, base).ok_or_else(|| anyhow!("the perturbed map is not characteristic"))?
            }
            Some(arg) => parse_map(&loaded.polytope, arg)?,
        };
        Ok((loaded, map))
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn describe_map_error(p: &SimplePolytope, err: CharMapError) -> anyhow::Error {
    match err {
        CharMapError::NotCharacteristic { vertices } => {
            let labels: Vec<&str> = vertices.iter().map(|&v| p.vertex_label(v)).collect();
            anyhow!("invalid characteristic map: no basis at vertices {}", labels.join(" "))
        }
        other => other.into(),
    }
}

fn parse_map(p: &SimplePolytope, arg: &str) -> Result<CharacteristicMap> {
    let json = if Path::new(arg).is_file() {
        Some(read_file(Path::new(arg))?)
    } else if arg.trim_start().starts_with('{') {
        Some(arg.to_string())
    } else {
        None
    };
    if let Some(json) = json {
        return read_charmap(&json, p).map_err(|e| match e {
            IoError::CharMap(e) => describe_map_error(p, e),
            other => other.into(),
        });
    }
    let n = p.dim();
    let rows = arg
        .split([',', ';'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_bits(t, n))
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != p.facet_count() {
        bail!("--lambda has {} rows, the polytope has {} facets", rows.len(), p.facet_count());
    }
    CharacteristicMap::new(p, BitMatrix::from_rows(rows, n)).map_err(|e| describe_map_error(p, e))
}

fn parse_bits(token: &str, len: usize) -> Result<BitVec> {
    if token.len() != len || !token.chars().all(|c| c == '0' || c == '1') {
        bail!("{token:?} is not a 0/1 string of length {len}");
    }
    Ok(BitVec::from_bits(token.chars().map(|c| c == '1')))
}

/// A class given as a JSON file, a 0/1 vector ("1000" or "1,0,0,0"), or a
/// list of facet names ("L,B").
pub fn parse_class(p: &SimplePolytope, arg: &str) -> Result<CohomologyClass> {
    let m = p.facet_count();
    if Path::new(arg).is_file() {
        return Ok(read_class(&read_file(Path::new(arg))?, m)?);
    }
    let tokens: Vec<&str> = arg.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    let is_bits = |t: &str| t.chars().all(|c| c == '0' || c == '1');
    if tokens.len() == 1 && tokens[0].len() == m && is_bits(tokens[0]) && p.facet_index(tokens[0]).is_none() {
        return Ok(CohomologyClass::from_bits(parse_bits(tokens[0], m)?));
    }
    if tokens.len() == m && tokens.iter().all(|t| *t == "0" || *t == "1") {
        return Ok(CohomologyClass::from_bits(BitVec::from_bits(tokens.iter().map(|t| *t == "1"))));
    }
    CohomologyClass::from_names(p, &tokens).map_err(|name| anyhow!("unknown facet {name:?}"))
}

pub fn parse_facet(p: &SimplePolytope, arg: &str) -> Result<FacetId> {
    if let Some(i) = p.facet_index(arg) {
        return Ok(i);
    }
    match arg.parse::<usize>() {
        Ok(i) if i < p.facet_count() => Ok(i),
        _ => bail!("unknown facet {arg:?}"),
    }
}

/// `"l1,…,ln,c"` into a direction and threshold.
pub fn parse_hyperplane(p: &SimplePolytope, arg: &str) -> Result<(Vec<f64>, f64)> {
    let mut values = arg
        .split(',')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad number {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != p.dim() + 1 {
        bail!("--hyperplane needs {} numbers (direction and threshold)", p.dim() + 1);
    }
    let c = values.pop().expect("nonempty");
    Ok((values, c))
}
