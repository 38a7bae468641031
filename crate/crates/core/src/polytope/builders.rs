//! Standard simple polytopes with coordinates.

use std::collections::HashMap;

use super::{FacetId, PolytopeError, SimplePolytope};

/// Upper bound on the vertex count of any builder output.
pub const MAX_BUILDER_VERTICES: usize = 1 << 20;

fn check_cap(requested: usize) -> Result<(), PolytopeError> {
    if requested > MAX_BUILDER_VERTICES {
        Err(PolytopeError::TooLarge {
            requested,
            cap: MAX_BUILDER_VERTICES,
        })
    } else {
        Ok(())
    }
}

fn letter(i: usize) -> char {
    (b'A' + i as u8) as char
}

/// The `n`-simplex. Facet `i < n` is `x_i = 0`, facet `n` is `Σ x = 1`;
/// vertex `j` is the one missing facet `j`.
pub fn simplex(n: usize) -> Result<SimplePolytope, PolytopeError> {
    if n == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    check_cap(n + 1)?;
    let names = (0..=n).map(|i| format!("F{i}")).collect();
    let vertices = (0..=n)
        .map(|j| (0..=n).filter(|&i| i != j).collect())
        .collect();
    let coords = (0..=n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    SimplePolytope::from_vertex_facets(n, names, vertices)?.with_coordinates(coords)
}

/// The unit cube `[0,1]^n`. Facet `2i` is `x_i = 0` and facet `2i + 1` is
/// `x_i = 1`. In dimensions 1 to 3 the facets are named
/// `L, R` (x), `B, T` (y) and `D, U` (z).
pub fn cube(n: usize) -> Result<SimplePolytope, PolytopeError> {
    if n == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    if n >= usize::BITS as usize - 1 {
        return Err(PolytopeError::TooLarge {
            requested: usize::MAX,
            cap: MAX_BUILDER_VERTICES,
        });
    }
    check_cap(1 << n)?;
    const SHORT: [&str; 6] = ["L", "R", "B", "T", "D", "U"];
    let names = (0..2 * n)
        .map(|f| {
            if n <= 3 {
                SHORT[f].to_string()
            } else {
                format!("x{}{}", f / 2, if f % 2 == 0 { "-" } else { "+" })
            }
        })
        .collect();
    let vertices = (0..1usize << n)
        .map(|b| (0..n).map(|i| 2 * i + ((b >> i) & 1)).collect())
        .collect();
    let coords = (0..1usize << n)
        .map(|b| (0..n).map(|i| ((b >> i) & 1) as f64).collect())
        .collect();
    SimplePolytope::from_vertex_facets(n, names, vertices)?.with_coordinates(coords)
}

/// The segment `[0,1]` with facets `L` (0) and `R` (1).
pub fn segment() -> SimplePolytope {
    cube(1).expect("segment")
}

/// A convex `m`-gon. Facet `i` is the edge from vertex `i` to vertex `i + 1`;
/// for `m ≤ 26` vertices are lettered `A, B, …` and edges named by their
/// endpoints (`AB`, `BC`, …). Coordinates are those of the regular polygon.
pub fn polygon(m: usize) -> Result<SimplePolytope, PolytopeError> {
    if m < 3 {
        return Err(PolytopeError::BadArgument(format!(
            "a polygon needs at least 3 edges, got {m}"
        )));
    }
    check_cap(m)?;
    let vertex_name = |j: usize| {
        if m <= 26 {
            letter(j).to_string()
        } else {
            format!("v{j}")
        }
    };
    let names = (0..m)
        .map(|i| {
            if m <= 26 {
                format!("{}{}", letter(i), letter((i + 1) % m))
            } else {
                format!("e{i}")
            }
        })
        .collect();
    let vertices = (0..m).map(|j| vec![(j + m - 1) % m, j]).collect();
    let coords = (0..m)
        .map(|j| {
            let angle = std::f64::consts::TAU * j as f64 / m as f64;
            vec![angle.cos(), angle.sin()]
        })
        .collect();
    Ok(SimplePolytope::from_vertex_facets(2, names, vertices)?
        .with_coordinates(coords)?
        .with_vertex_labels((0..m).map(vertex_name).collect()))
}

/// The pentagon `ABCDE` embedded so that the height `y` strictly decreases
/// from `A` to `E`. `A` and `E` are adjacent, so the pentagon is not regular.
pub fn pentagon() -> SimplePolytope {
    let p = polygon(5).expect("pentagon");
    let coords = vec![
        vec![0.0, 10.0],
        vec![6.0, 8.0],
        vec![8.0, 4.0],
        vec![6.0, 0.0],
        vec![0.0, -1.0],
    ];
    let labels = p.vertex_labels().to_vec();
    p.with_coordinates(coords)
        .expect("pentagon coordinates")
        .with_vertex_labels(labels)
}

/// The permutohedron of dimension `n`, with facets indexed by proper nonempty
/// subsets of `{1, …, n+1}` ordered by (size, lexicographic) and vertices by
/// permutations in lexicographic order. The vertex of a permutation `σ` lies
/// on the facets `{σ1}, {σ1, σ2}, …` and has coordinates `x_i = σ⁻¹(i)` for
/// `i ≤ n`.
pub fn permutohedron(n: usize) -> Result<SimplePolytope, PolytopeError> {
    if n == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    if n >= 12 {
        return Err(PolytopeError::TooLarge {
            requested: usize::MAX,
            cap: MAX_BUILDER_VERTICES,
        });
    }
    let ground = n + 1;
    check_cap((1..=ground).product())?;

    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << ground) - 1)
        .map(|mask| (0..ground).filter(|i| (mask >> i) & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mask_of = |s: &[usize]| s.iter().fold(0u32, |acc, &i| acc | (1 << i));
    let index: HashMap<u32, FacetId> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (mask_of(s), i))
        .collect();
    let names = subsets
        .iter()
        .map(|s| {
            let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
            if ground <= 9 {
                parts.concat()
            } else {
                parts.join(".")
            }
        })
        .collect();

    let mut vertices = Vec::new();
    let mut coords = Vec::new();
    for perm in permutations(ground) {
        let mut mask = 0u32;
        let mut facets = Vec::with_capacity(n);
        for &e in &perm[..n] {
            mask |= 1 << e;
            facets.push(index[&mask]);
        }
        vertices.push(facets);
        let mut position = vec![0.0; ground];
        for (pos, &e) in perm.iter().enumerate() {
            position[e] = (pos + 1) as f64;
        }
        position.truncate(n);
        coords.push(position);
    }
    SimplePolytope::from_vertex_facets(n, names, vertices)?.with_coordinates(coords)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let e = rest.remove(i);
            cur.push(e);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, e);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..k).collect(), &mut Vec::new(), &mut out);
    out
}

/// `P × Q`. Facets of `P` come first, then those of `Q`; vertices are pairs in
/// `P`-major order. Coordinates are concatenated when both factors have them.
pub fn product(p: &SimplePolytope, q: &SimplePolytope) -> Result<SimplePolytope, PolytopeError> {
    check_cap(p.vertex_count().saturating_mul(q.vertex_count()))?;
    let offset = p.facet_count();
    let mut names: Vec<String> = p.facet_names().to_vec();
    for name in q.facet_names() {
        let mut candidate = name.clone();
        while names.contains(&candidate) {
            candidate.push('\'');
        }
        names.push(candidate);
    }
    let mut vertices = Vec::new();
    let mut coords = Vec::new();
    for (u, su) in p.vertices().iter().enumerate() {
        for (w, sw) in q.vertices().iter().enumerate() {
            let mut set = su.clone();
            set.extend(sw.iter().map(|f| f + offset));
            vertices.push(set);
            if let (Some(gp), Some(gq)) = (p.geometry(), q.geometry()) {
                let mut c = gp.coords[u].clone();
                c.extend_from_slice(&gq.coords[w]);
                coords.push(c);
            }
        }
    }
    let out = SimplePolytope::from_vertex_facets(p.dim() + q.dim(), names, vertices)?;
    if p.geometry().is_some() && q.geometry().is_some() {
        out.with_coordinates(coords)
    } else {
        Ok(out)
    }
}

/// The prism `P × [0,1]`: facets `F_i × [0,1]` in the order of `P`, then
/// `P × {0}` (named `bottom`) and `P × {1}` (named `top`).
pub fn prism(p: &SimplePolytope) -> Result<SimplePolytope, PolytopeError> {
    let interval = SimplePolytope::from_vertex_facets(
        1,
        vec!["bottom".to_string(), "top".to_string()],
        vec![vec![0], vec![1]],
    )?
    .with_coordinates(vec![vec![0.0], vec![1.0]])?;
    product(p, &interval)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_counts_of_builders() {
        let lattice = pentagon().face_lattice();
        assert_eq!(
            (0..=2).map(|k| lattice.codim(k).len()).collect::<Vec<_>>(),
            vec![1, 5, 5]
        );
        let lattice = cube(3).unwrap().face_lattice();
        assert_eq!(
            (0..=3).map(|k| lattice.codim(k).len()).collect::<Vec<_>>(),
            vec![1, 6, 12, 8]
        );
        assert_eq!(pentagon().f_vector(), vec![5, 5]);
        assert_eq!(permutohedron(3).unwrap().f_vector(), vec![14, 36, 24]);
        assert_eq!(simplex(3).unwrap().f_vector(), vec![4, 6, 4]);
    }

    #[test]
    fn h_vectors_of_builders() {
        assert_eq!(pentagon().h_vector(), vec![1, 3, 1]);
        assert_eq!(permutohedron(3).unwrap().h_vector(), vec![1, 11, 11, 1]);
        for n in 1..=5 {
            assert_eq!(simplex(n).unwrap().h_vector(), vec![1; n + 1]);
        }
        assert_eq!(segment().h_vector(), vec![1, 1]);
    }

    #[test]
    fn permutohedron_sizes() {
        let p = permutohedron(3).unwrap();
        assert_eq!(p.facet_count(), 14);
        assert_eq!(p.vertex_count(), 24);
        assert_eq!(p.facet_names()[0], "1");
        assert_eq!(p.facet_names()[4], "12");
        assert_eq!(p.facet_names()[13], "234");
        assert!(permutohedron(1).unwrap().same_combinatorics(&segment()));
        assert_eq!(permutohedron(2).unwrap().h_vector(), vec![1, 4, 1]);
    }

    #[test]
    fn prism_of_square_is_cube() {
        let square = cube(2).unwrap();
        let p = prism(&square).unwrap();
        assert!(p.same_combinatorics(&cube(3).unwrap()));
        assert_eq!(p.facet_names()[4], "bottom");
        assert_eq!(p.facet_names()[5], "top");
        assert!(p.geometry().is_some());
    }

    #[test]
    fn product_multiplies_h_polynomials() {
        let seg = segment();
        let square = product(&seg, &seg).unwrap();
        assert!(square.same_combinatorics(&cube(2).unwrap()));
        assert_eq!(square.facet_names(), &["L", "R", "L'", "R'"]);
        let p = product(&pentagon(), &simplex(2).unwrap()).unwrap();
        // (1 + 3t + t^2)(1 + t + t^2)
        assert_eq!(p.h_vector(), vec![1, 4, 5, 4, 1]);
    }

    #[test]
    fn polygon_naming() {
        let p = polygon(5).unwrap();
        assert_eq!(p.facet_names(), &["AB", "BC", "CD", "DE", "EA"]);
        assert_eq!(p.vertex_label(0), "A");
        assert_eq!(p.vertex(0), &[0, 4]);
        assert!(p.same_combinatorics(&pentagon()));
        assert!(polygon(2).is_err());
    }

    #[test]
    fn pentagon_coordinates_are_convex() {
        let p = pentagon();
        let c = &p.geometry().unwrap().coords;
        for j in 0..5 {
            let (a, b, d) = (&c[j], &c[(j + 1) % 5], &c[(j + 2) % 5]);
            let e1 = (b[0] - a[0], b[1] - a[1]);
            let e2 = (d[0] - b[0], d[1] - b[1]);
            assert!(e1.0 * e2.1 - e1.1 * e2.0 < 0.0, "turn at vertex {}", (j + 1) % 5);
        }
    }

    #[test]
    fn size_guards() {
        assert!(matches!(cube(30), Err(PolytopeError::TooLarge { .. })));
        assert!(matches!(permutohedron(9), Err(PolytopeError::TooLarge { .. })));
    }
}
