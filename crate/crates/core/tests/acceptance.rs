//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact
//! integer equality; floats only enter through genericity checks.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use smallcover::charmap::{CharacteristicMap, CohomologyClass};
use smallcover::facering::{theorem3_betti, GradedRingModel};
use smallcover::fixtures::{all_fixtures, fixture, Fixture};
use smallcover::polytope::SimplePolytope;
use smallcover::quotient::{
    facet_section_class, filtration_e1_table, frontier_check, section_to_class, QuotientComplex,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn as_usize(h: &[i64]) -> Vec<usize> {
    h.iter().map(|&x| x as usize).collect()
}

fn ring(f: &Fixture) -> GradedRingModel {
    GradedRingModel::build(&f.polytope, &f.map).expect("ring builds")
}

fn cover_betti(p: &SimplePolytope, map: &CharacteristicMap, c: &CohomologyClass) -> Vec<usize> {
    QuotientComplex::double_cover(p, map, c).expect("cover builds").betti()
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))
}

fn three_way_agreement() -> Check {
    let start = Instant::now();
    for f in all_fixtures() {
        let h = as_usize(&f.polytope.h_vector());
        let dims = ring(&f).graded_dims();
        let betti = QuotientComplex::small_cover(&f.polytope, &f.map).unwrap().betti();
        ensure(h == dims && dims == betti, || {
            format!("{}: h {h:?}, ring {dims:?}, oracle {betti:?}", f.name)
        })?;
    }
    within(start, Duration::from_secs(5), "three-way check")
}

fn pentagon_gap() -> Check {
    let f = fixture("pentagon").unwrap();
    let p = &f.polytope;
    let l = [0.0, 1.0];
    let violations = frontier_check(p, &l).map_err(|e| e.to_string())?;
    let at_b: Vec<_> = violations.iter().filter(|v| p.vertex_label(v.vertex) == "B").collect();
    ensure(at_b.len() == 1 && p.vertex_label(at_b[0].max_vertex) == "C", || {
        format!("violations from B: {at_b:?}")
    })?;
    let sums = filtration_e1_table(p, &l).unwrap().degree_sums;
    let betti = QuotientComplex::small_cover(p, &f.map).unwrap().betti();
    ensure(sums == vec![1, 3, 1] && sums == betti, || format!("E1 sums {sums:?}, oracle {betti:?}"))
}

fn formula_case(name: &str, f: &Fixture, c: &CohomologyClass, h_s: &[i64], expected: &[usize]) -> Check {
    let formula = theorem3_betti(&f.polytope.h_vector(), h_s).map_err(|e| e.to_string())?;
    let gysin = ring(f).gysin_betti(c).unwrap().betti;
    let oracle = cover_betti(&f.polytope, &f.map, c);
    ensure(formula == expected && gysin == expected && oracle == expected, || {
        format!("{name}: formula {formula:?}, gysin {gysin:?}, oracle {oracle:?}, want {expected:?}")
    })
}

fn section_formula_reproduction() -> Check {
    let start = Instant::now();
    let torus = fixture("torus").unwrap();
    let s = section_to_class(&torus.polytope, &torus.map, &[1.0, 0.0], 0.5).map_err(|e| e.to_string())?;
    formula_case("torus slice", &torus, &s.class, &s.section.h_vector, &[1, 2, 1])?;

    let cube = fixture("cube3").unwrap();
    let s = section_to_class(&cube.polytope, &cube.map, &[0.0, 0.0, 1.0], 0.5).map_err(|e| e.to_string())?;
    formula_case("cube slice", &cube, &s.class, &s.section.h_vector, &[1, 3, 3, 1])?;

    let tri = fixture("triangle").unwrap();
    let fs = facet_section_class(&tri.polytope, &tri.map, 0).map_err(|e| e.to_string())?;
    formula_case("triangle facet", &tri, &fs.class, &fs.h_vector, &[1, 0, 1])?;

    let nu = fixture("permutohedron3-nu").unwrap();
    let g = nu.polytope.facet_index("1").unwrap();
    let fs = facet_section_class(&nu.polytope, &nu.map, g).map_err(|e| e.to_string())?;
    formula_case("permutohedron facet", &nu, &fs.class, &fs.h_vector, &[1, 17, 17, 1])?;
    within(start, Duration::from_secs(10), "section cases")
}

fn exhaustive_gysin() -> Check {
    for name in ["torus", "klein", "pentagon"] {
        let f = fixture(name).unwrap();
        let model = ring(&f);
        let base = as_usize(&f.polytope.h_vector());
        let reps = f.map.class_representatives();
        let expected = 1 << (f.polytope.facet_count() - f.polytope.dim());
        ensure(reps.len() == expected, || format!("{name}: {} classes", reps.len()))?;
        for c in reps {
            let g = model.gysin_betti(&c).unwrap();
            let x = QuotientComplex::double_cover(&f.polytope, &f.map, &c).unwrap();
            let oracle = x.betti();
            ensure(g.betti == oracle, || format!("{name} {c}: gysin {:?}, oracle {oracle:?}", g.betti))?;
            if f.map.is_trivial(&c) {
                let doubled: Vec<usize> = base.iter().map(|b| 2 * b).collect();
                ensure(g.disconnected && x.components() == 2 && oracle == doubled, || {
                    format!("{name}: trivial class gave {oracle:?}")
                })?;
            } else {
                ensure(!g.disconnected && x.components() == 1, || format!("{name} {c}: not connected"))?;
            }
        }
    }
    Ok(())
}

fn prism_kunneth() -> Check {
    let f = fixture("torus").unwrap();
    let c = CohomologyClass::from_names(&f.polytope, &["L"]).unwrap();
    let base = cover_betti(&f.polytope, &f.map, &c);
    ensure(base == vec![1, 2, 1], || format!("b(M_w) = {base:?}"))?;
    let (q, qmap) = f.map.prism_charmap(&f.polytope, &c).map_err(|e| e.to_string())?;
    let total = cover_betti(&q, &qmap, &c.pullback_to_prism());
    let kunneth: Vec<usize> = (0..=3)
        .map(|k| base.get(k).copied().unwrap_or(0) + if k > 0 { base[k - 1] } else { 0 })
        .collect();
    ensure(total == kunneth && total == vec![1, 3, 3, 1], || format!("{total:?} vs {kunneth:?}"))
}

fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn morse_independence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for f in all_fixtures() {
        let p = &f.polytope;
        if p.geometry().is_none() {
            continue;
        }
        let h = as_usize(&p.h_vector());
        let mut tried = 0;
        while tried < 20 {
            let l = random_direction(&mut rng, p.dim());
            let Ok(morse) = p.morse_index_counts(&l) else { continue };
            tried += 1;
            ensure(morse.counts == h, || format!("{} along {l:?}: {:?}", f.name, morse.counts))?;
        }
    }
    Ok(())
}

/// Classes from random generic hyperplanes with a two-component preimage.
fn hyperplane_classes(f: &Fixture, rng: &mut ChaCha8Rng, tries: usize) -> Vec<CohomologyClass> {
    let p = &f.polytope;
    let mut found = Vec::new();
    for _ in 0..tries {
        let l = random_direction(rng, p.dim());
        let Ok(morse) = p.morse_index_counts(&l) else { continue };
        let mut heights = morse.heights.clone();
        heights.sort_by(f64::total_cmp);
        let k = rng.gen_range(0..heights.len() - 1);
        let c = (heights[k] + heights[k + 1]) / 2.0;
        if let Ok(s) = section_to_class(p, &f.map, &l, c) {
            found.push(s.class);
            found.push(s.other_class);
        }
    }
    found
}

fn property_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut section_classes = 0;
    for f in all_fixtures() {
        let p = &f.polytope;
        let n = p.dim();
        let h = p.h_vector();
        ensure((0..=n).all(|i| h[i] == h[n - i]), || format!("{}: h {h:?} not symmetric", f.name))?;

        let mut complexes = vec![QuotientComplex::small_cover(p, &f.map).unwrap()];
        let reps = f.map.class_representatives();
        for c in reps.iter().take(16) {
            complexes.push(QuotientComplex::double_cover(p, &f.map, c).unwrap());
        }
        for x in &complexes {
            ensure(x.boundary_squares_to_zero(), || format!("{}: boundary squared is nonzero", f.name))?;
            let b = x.betti();
            let alternating: i64 = b.iter().enumerate().map(|(k, &bk)| if k % 2 == 0 { bk as i64 } else { -(bk as i64) }).sum();
            ensure(alternating == x.euler_characteristic(), || format!("{}: Euler mismatch", f.name))?;
            if x.components() == 1 {
                ensure((0..=n).all(|k| b[k] == b[n - k]), || format!("{}: {b:?} fails duality", f.name))?;
            }
        }

        for c in &reps {
            ensure(f.map.canonical_rep(c) == *c, || format!("{}: {c} is not canonical", f.name))?;
            for form in f.map.linear_forms() {
                let shifted = CohomologyClass::from_bits(c.bits().xor(&form));
                ensure(f.map.canonical_rep(&shifted) == *c, || format!("{}: coset of {c} unstable", f.name))?;
            }
        }

        if p.geometry().is_some() && n >= 2 {
            let model = ring(&f);
            for c in hyperplane_classes(&f, &mut rng, 12) {
                section_classes += 1;
                ensure(model.square_is_zero(&c).unwrap(), || format!("{}: section class {c} squares to nonzero", f.name))?;
            }
        }
    }
    ensure(section_classes > 0, || "no section classes were found".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 small cover Betti numbers: h-vector = ring = oracle", three_way_agreement),
        ("2 pentagon frontier gap and E1 degeneration", pentagon_gap),
        ("3 section classes: formula = Gysin = oracle", section_formula_reproduction),
        ("4 every class on square and pentagon: Gysin = oracle", exhaustive_gysin),
        ("5 prism double cover matches the Kunneth profile", prism_kunneth),
        ("6 Morse index counts equal h for random directions", morse_independence),
        ("7 property suite", property_suite),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS criterion {name}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
