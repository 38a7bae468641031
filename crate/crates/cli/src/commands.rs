use std::fmt::{Display, Write as _};

use anyhow::{bail, Result};
use serde_json::{json, Value};

use smallcover::charmap::{CharacteristicMap, CohomologyClass};
use smallcover::facering::{theorem3_betti, GradedRingModel, DEFAULT_MONOMIAL_CAP};
use smallcover::fixtures::{fixture, nu_map};
use smallcover::polytope::SimplePolytope;
use smallcover::quotient::{
    facet_section_class, filtration_e1_table, frontier_check, section_to_class, QuotientComplex,
    DEFAULT_CELL_CAP,
};

use crate::input::{parse_class, parse_facet, parse_hyperplane, Source};

/// What a subcommand produced: a JSON document, its table rendering, and
/// whether every cross-check agreed.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub cells: usize,
    pub monomials: usize,
}

impl Caps {
    pub fn new(cap: Option<usize>) -> Self {
        Self {
            cells: cap.unwrap_or(DEFAULT_CELL_CAP),
            monomials: cap.unwrap_or(DEFAULT_MONOMIAL_CAP),
        }
    }
}

pub fn tuple<T: Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "AGREE"
    } else {
        "DISAGREE"
    }
}

fn as_i64(v: &[usize]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

fn ring(p: &SimplePolytope, map: &CharacteristicMap, caps: Caps) -> Result<GradedRingModel> {
    Ok(GradedRingModel::build_with(p, map, p.dim() + 1, caps.monomials)?)
}

fn oracle_cover(
    p: &SimplePolytope,
    map: &CharacteristicMap,
    c: &CohomologyClass,
    caps: Caps,
) -> Result<QuotientComplex> {
    Ok(QuotientComplex::double_cover_with_cap(p, map, c, caps.cells)?)
}

pub fn hvector(src: &Source) -> Result<Report> {
    let p = src.load()?.polytope;
    let f = p.f_vector();
    let h = p.h_vector();
    Ok(Report {
        text: format!("f = {}; h = {}\n", tuple(&f), tuple(&h)),
        json: json!({ "schema": 1, "command": "hvector", "n": p.dim(), "f_vector": f, "h_vector": h }),
        ok: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BettiMethod {
    Ring,
    Oracle,
    Both,
}

pub fn betti(src: &Source, method: BettiMethod, caps: Caps) -> Result<Report> {
    let (loaded, map) = src.load_with_map()?;
    let p = &loaded.polytope;
    let h = p.h_vector();
    let ring_dims = match method {
        BettiMethod::Oracle => None,
        _ => Some(ring(p, &map, caps)?.graded_dims()),
    };
    let oracle = match method {
        BettiMethod::Ring => None,
        _ => Some(QuotientComplex::build_with_cap(p, map.matrix(), caps.cells)?.betti()),
    };
    let ok = match (&ring_dims, &oracle) {
        (Some(r), Some(o)) => r == o && as_i64(r) == h,
        _ => true,
    };
    let mut text = String::from("degree  h");
    if ring_dims.is_some() {
        text.push_str("  ring");
    }
    if oracle.is_some() {
        text.push_str("  oracle");
    }
    text.push('\n');
    for (d, hd) in h.iter().enumerate() {
        let _ = write!(text, "{d:>6}  {hd}");
        if let Some(r) = &ring_dims {
            let _ = write!(text, "  {:>4}", r[d]);
        }
        if let Some(o) = &oracle {
            let _ = write!(text, "  {:>6}", o[d]);
        }
        text.push('\n');
    }
    if method == BettiMethod::Both {
        let _ = writeln!(text, "{}", verdict(ok));
    }
    let mut json = json!({ "schema": 1, "command": "betti", "h_vector": h });
    if let Some(r) = ring_dims {
        json["ring"] = json!(r);
    }
    if let Some(o) = oracle {
        json["oracle"] = json!(o);
    }
    if method == BettiMethod::Both {
        json["verdict"] = json!(verdict(ok));
    }
    Ok(Report { json, text, ok })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CoverMethod {
    Gysin,
    Oracle,
    Both,
}

pub fn doublecover(src: &Source, class: &str, method: CoverMethod, caps: Caps) -> Result<Report> {
    let (loaded, map) = src.load_with_map()?;
    let p = &loaded.polytope;
    let c = parse_class(p, class)?;
    let trivial = map.is_trivial(&c);
    let gysin = match method {
        CoverMethod::Oracle => None,
        _ => Some(ring(p, &map, caps)?.gysin_betti(&c)?),
    };
    let oracle = match method {
        CoverMethod::Gysin => None,
        _ => {
            let x = oracle_cover(p, &map, &c, caps)?;
            Some((x.betti(), x.components()))
        }
    };
    let ok = match (&gysin, &oracle) {
        (Some(g), Some((o, _))) => &g.betti == o,
        _ => true,
    };
    let mut text = format!("class {} = {}\n", c.describe(p), map.canonical_rep(&c).describe(p));
    if let Some(g) = &gysin {
        let _ = writeln!(text, "gysin   {}", tuple(&g.betti));
    }
    if let Some((o, _)) = &oracle {
        let _ = writeln!(text, "oracle  {}", tuple(o));
    }
    if trivial {
        text.push_str("note: trivial class, the cover is disconnected (two copies of the base)\n");
    }
    if method == CoverMethod::Both {
        let _ = writeln!(text, "{}", verdict(ok));
    }
    let mut json = json!({
        "schema": 1,
        "command": "doublecover",
        "class": c.bits().to_bits(),
        "canonical": map.canonical_rep(&c).bits().to_bits(),
        "disconnected": trivial,
    });
    if let Some(g) = gysin {
        json["gysin"] = json!(g.betti);
        json["kernel_dims"] = json!(g.kernel_dims);
    }
    if let Some((o, comps)) = oracle {
        json["oracle"] = json!(o);
        json["components"] = json!(comps);
    }
    if method == CoverMethod::Both {
        json["verdict"] = json!(verdict(ok));
    }
    Ok(Report { json, text, ok })
}

struct ThreeWay {
    formula: Vec<usize>,
    gysin: Vec<usize>,
    oracle: Vec<usize>,
    square_zero: bool,
}

impl ThreeWay {
    fn run(
        p: &SimplePolytope,
        map: &CharacteristicMap,
        model: &GradedRingModel,
        c: &CohomologyClass,
        h_s: &[i64],
        caps: Caps,
    ) -> Result<Self> {
        Ok(Self {
            formula: theorem3_betti(&p.h_vector(), h_s)?,
            gysin: model.gysin_betti(c)?.betti,
            oracle: oracle_cover(p, map, c, caps)?.betti(),
            square_zero: model.square_is_zero(c)?,
        })
    }

    fn agree(&self) -> bool {
        self.formula == self.gysin && self.gysin == self.oracle
    }

    fn json(&self, p: &SimplePolytope, c: &CohomologyClass) -> Value {
        json!({
            "class": c.bits().to_bits(),
            "facets": c.describe(p),
            "formula": self.formula,
            "gysin": self.gysin,
            "oracle": self.oracle,
            "square_is_zero": self.square_zero,
            "verdict": verdict(self.agree()),
        })
    }

    fn text(&self, label: &str, p: &SimplePolytope, c: &CohomologyClass) -> String {
        format!(
            "{label} {}\n  formula {}\n  gysin   {}\n  oracle  {}\n  w^2 = 0: {}\n  {}\n",
            c.describe(p),
            tuple(&self.formula),
            tuple(&self.gysin),
            tuple(&self.oracle),
            self.square_zero,
            verdict(self.agree())
        )
    }
}

pub fn section(src: &Source, facet: Option<&str>, hyperplane: Option<&str>, caps: Caps) -> Result<Report> {
    let (loaded, map) = src.load_with_map()?;
    let p = &loaded.polytope;
    let model = ring(p, &map, caps)?;
    let mut classes = Vec::new();
    let h_s;
    let mut json = json!({ "schema": 1, "command": "section", "h_p": p.h_vector() });
    match (facet, hyperplane) {
        (Some(f), None) => {
            let fs = facet_section_class(p, &map, parse_facet(p, f)?)?;
            json["facet"] = json!(p.facet_names()[fs.facet]);
            classes.push(("facet class", fs.class));
            h_s = fs.h_vector;
        }
        (None, Some(arg)) => {
            let (l, c) = parse_hyperplane(p, arg)?;
            let sc = section_to_class(p, &map, &l, c)?;
            json["hyperplane"] = json!({ "direction": l, "threshold": c });
            json["psi"] = json!(sc.psi.to_bits());
            json["pairing_rank"] = json!(sc.pairing_rank);
            json["crossed_facets"] =
                json!(sc.section.crossed_facets.iter().map(|&f| &p.facet_names()[f]).collect::<Vec<_>>());
            classes.push(("component psi=0", sc.class));
            classes.push(("component psi=1", sc.other_class));
            h_s = sc.section.h_vector;
        }
        _ => bail!("pass exactly one of --facet or --hyperplane"),
    }
    let mut text = format!("section h = {}\npreimage: 2 components\n", tuple(&h_s));
    let mut ok = true;
    let mut results = Vec::new();
    for (label, c) in &classes {
        let t = ThreeWay::run(p, &map, &model, c, &h_s, caps)?;
        ok &= t.agree();
        text.push_str(&t.text(label, p, c));
        results.push(t.json(p, c));
    }
    json["h_s"] = json!(h_s);
    json["classes"] = json!(results);
    json["verdict"] = json!(verdict(ok));
    let _ = writeln!(text, "{}", verdict(ok));
    Ok(Report { json, text, ok })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Demo {
    PentagonGap,
    PermutohedronExample,
    PrismProposition,
}

pub fn demo(which: Demo, src: &Source, class: Option<&str>, caps: Caps) -> Result<Report> {
    match which {
        Demo::PentagonGap => pentagon_gap(caps),
        Demo::PermutohedronExample => permutohedron_example(caps),
        Demo::PrismProposition => prism_proposition(src, class.unwrap_or("L"), caps),
    }
}

fn pentagon_gap(caps: Caps) -> Result<Report> {
    let f = fixture("pentagon").expect("fixture");
    let p = &f.polytope;
    let l = [0.0, 1.0];
    let violations = frontier_check(p, &l)?;
    let table = filtration_e1_table(p, &l)?;
    let oracle = QuotientComplex::build_with_cap(p, f.map.matrix(), caps.cells)?.betti();
    let label = |v: usize| p.vertex_label(v).to_string();
    let from_b: Vec<_> = violations.iter().filter(|v| label(v.vertex) == "B").collect();
    let gap = from_b.len() == 1 && label(from_b[0].max_vertex) == "C";
    let degenerate = table.degree_sums == oracle && as_i64(&oracle) == p.h_vector();
    let mut text = String::from("heights: A > B > C > D > E\nfrontier violations:\n");
    for v in &violations {
        let face: Vec<&str> = v.face.iter().map(|&f| p.facet_names()[f].as_str()).collect();
        let _ = writeln!(
            text,
            "  cell of {} reaches {} (face {{{}}}), index {} >= {}",
            label(v.vertex),
            label(v.max_vertex),
            face.join(","),
            table.entries.iter().find(|e| e.vertex == v.max_vertex).map_or(0, |e| e.index),
            table.entries.iter().find(|e| e.vertex == v.vertex).map_or(0, |e| e.index),
        );
    }
    text.push_str("E1 page (p, q, vertex, index):\n");
    for e in &table.entries {
        let _ = writeln!(text, "  {:>2} {:>3}  {}  {}", e.p, e.q, label(e.vertex), e.index);
    }
    let _ = writeln!(text, "degree sums {} ; oracle {}", tuple(&table.degree_sums), tuple(&oracle));
    let _ = writeln!(text, "gap at B -> C: {}", if gap { "PASS" } else { "FAIL" });
    let _ = writeln!(text, "degeneration: {}", if degenerate { "PASS" } else { "FAIL" });
    let json = json!({
        "schema": 1,
        "command": "demo",
        "demo": "pentagon-gap",
        "violations": violations.iter().map(|v| json!({
            "vertex": label(v.vertex),
            "max_vertex": label(v.max_vertex),
            "face": v.face.iter().map(|&f| &p.facet_names()[f]).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "e1": table.entries.iter().map(|e| json!({ "p": e.p, "q": e.q, "vertex": label(e.vertex) })).collect::<Vec<_>>(),
        "degree_sums": table.degree_sums,
        "oracle": oracle,
        "gap": gap,
        "degenerate": degenerate,
    });
    Ok(Report { json, text, ok: gap && degenerate })
}

fn permutohedron_example(caps: Caps) -> Result<Report> {
    let base = fixture("permutohedron3").expect("fixture");
    let p = &base.polytope;
    let nu = nu_map(p, &base.map).ok_or_else(|| anyhow::anyhow!("perturbed map is not characteristic"))?;
    let g = (0..p.facet_count()).find(|&f| base.map.row(f) != nu.row(f)).expect("one facet changed");
    let model = ring(p, &nu, caps)?;
    let fs = facet_section_class(p, &nu, g)?;
    let t = ThreeWay::run(p, &nu, &model, &fs.class, &fs.h_vector, caps)?;
    let text = format!(
        "coloring by subset size; nu(G) = lambda(G) + e2 at G = {}\nnu is characteristic: true\nfacet h = {}\n{}",
        p.facet_names()[g],
        tuple(&fs.h_vector),
        t.text("facet class", p, &fs.class)
    );
    let json = json!({
        "schema": 1,
        "command": "demo",
        "demo": "permutohedron-example",
        "facet": p.facet_names()[g],
        "nu_valid": true,
        "h_s": fs.h_vector,
        "result": t.json(p, &fs.class),
    });
    Ok(Report { json, text, ok: t.agree() })
}

fn prism_proposition(src: &Source, class: &str, caps: Caps) -> Result<Report> {
    let src = if src.builder.is_none() && src.input.is_none() {
        Source {
            builder: Some("torus".into()),
            ..src.clone()
        }
    } else {
        src.clone()
    };
    let (loaded, map) = src.load_with_map()?;
    let p = &loaded.polytope;
    let c = parse_class(p, class)?;
    let base = oracle_cover(p, &map, &c, caps)?.betti();
    let (q, qmap) = map.prism_charmap(p, &c)?;
    let cc = c.pullback_to_prism();
    let oracle = oracle_cover(&q, &qmap, &cc, caps)?.betti();
    let gysin = ring(&q, &qmap, caps)?.gysin_betti(&cc)?.betti;
    let kunneth: Vec<usize> = (0..base.len() + 1)
        .map(|k| base.get(k).copied().unwrap_or(0) + if k > 0 { base[k - 1] } else { 0 })
        .collect();
    let ok = oracle == kunneth && gysin == kunneth;
    let text = format!(
        "class {} on {}: b(M_w) = {}\nprism cover: oracle {} gysin {}\nb_k + b_(k-1) = {}\nKunneth check {}\n",
        c.describe(p),
        loaded.name,
        tuple(&base),
        tuple(&oracle),
        tuple(&gysin),
        tuple(&kunneth),
        if ok { "PASS" } else { "FAIL" }
    );
    let json = json!({
        "schema": 1,
        "command": "demo",
        "demo": "prism-proposition",
        "class": c.bits().to_bits(),
        "base": base,
        "oracle": oracle,
        "gysin": gysin,
        "kunneth": kunneth,
        "pass": ok,
    });
    Ok(Report { json, text, ok })
}

pub fn dump(src: &Source, class: Option<&str>, caps: Caps) -> Result<Report> {
    let (loaded, map) = src.load_with_map()?;
    let p = &loaded.polytope;
    let complex = match class {
        Some(arg) => oracle_cover(p, &map, &parse_class(p, arg)?, caps)?,
        None => QuotientComplex::build_with_cap(p, map.matrix(), caps.cells)?,
    };
    let dump = complex.dump();
    let mut text = format!("cells per dimension {}\n", tuple(&dump.cell_counts));
    for cell in &dump.cells {
        let coset: String = cell.coset.iter().map(|b| b.to_string()).collect();
        let _ = writeln!(
            text,
            "{:>4}  dim {}  face {:?}  coset {}  boundary {:?}",
            cell.index, cell.dim, cell.face, coset, cell.boundary
        );
    }
    Ok(Report {
        json: serde_json::to_value(&dump)?,
        text,
        ok: complex.boundary_squares_to_zero(),
    })
}
