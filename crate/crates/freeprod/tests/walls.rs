use std::collections::BTreeSet;

use freeprod::complex::{build_xr_finite, coset_enumerate, subdivide, CellComplex, CubeComplex, Polygon, PolygonalComplex, Presentation, VertexType};
use freeprod::diagram::{disc_diagrams, glue_two, random_diagram, AbstractDiagram, EnumerationBudget, RandomDiagramParams};
use freeprod::factor::{FactorGroup, FreeProduct, FreeProductWord};
use freeprod::walls::{antipodality, dual_cube_complex, qi_stats, single_crossing_search, trace_all, trace_hypergraph, walls_of, DualBudget, Wallspace, WallsError};
use freeprod::Exact;
use freeprod_oracles::walls::{dual_f_vector, first_betti_mod2, graphs_isomorphic, opposite_classes, separation_matrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn von_dyck_complex() -> PolygonalComplex {
    let product = FreeProduct::new(vec![FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")]);
    let r = vec![FreeProductWord::parse("1:t1 2:t1 1:t1 2:t1").unwrap()];
    let table = coset_enumerate(&Presentation::of_quotient(&product, &r), 1000).unwrap();
    build_xr_finite(&product, &r, &table).unwrap()
}

fn complex_of(d: &AbstractDiagram) -> PolygonalComplex {
    PolygonalComplex::from_diagram(d, None).unwrap()
}

/// `t` polygons of length `2ℓ` in a row, each glued to the next along the
/// edge opposite the previous gluing.
fn ladder(ell: usize, t: usize) -> PolygonalComplex {
    let (a, b) = (|j: usize| 2 * j, |j: usize| 2 * j + 1);
    let mut n = 2 * (t + 1);
    let mut edges: Vec<(usize, usize)> = (0..=t).map(|j| (a(j), b(j))).collect();
    let mut polygons = Vec::new();
    for j in 0..t {
        let mut path = |from: usize, to: usize, edges: &mut Vec<(usize, usize)>| {
            let mut vs = vec![from];
            for _ in 1..ell - 1 {
                vs.push(n);
                n += 1;
            }
            vs.push(to);
            let es: Vec<usize> = vs
                .windows(2)
                .map(|w| {
                    edges.push((w[0], w[1]));
                    edges.len() - 1
                })
                .collect();
            (vs, es)
        };
        let (top, top_e) = path(a(j), a(j + 1), &mut edges);
        let (bottom, bottom_e) = path(b(j), b(j + 1), &mut edges);
        let mut vertices = top[..ell - 1].to_vec();
        let mut pedges = top_e.clone();
        vertices.push(a(j + 1));
        pedges.push(j + 1);
        vertices.extend(bottom.iter().rev().take(ell - 1));
        pedges.extend(bottom_e.iter().rev());
        vertices.push(b(j));
        pedges.push(j);
        polygons.push(Polygon::new(vertices, pedges));
    }
    PolygonalComplex::new(vec![VertexType::Subdivision; n], edges, polygons, 0).unwrap()
}

/// Hexagons glued to the middle one along two adjacent edges.
fn hexagon_tree() -> PolygonalComplex {
    let types = (0..14).map(|v| if [0, 2, 4, 7, 9, 10, 12].contains(&v) { VertexType::Central } else { VertexType::Factor(0) }).collect();
    let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    edges.extend([(0, 6), (6, 7), (7, 8), (8, 9), (9, 1), (1, 10), (10, 11), (11, 12), (12, 13), (13, 2)]);
    let mid = Polygon::new((0..6).collect(), (0..6).collect());
    let left = Polygon::new(vec![1, 0, 6, 7, 8, 9], vec![0, 6, 7, 8, 9, 10]);
    let right = Polygon::new(vec![2, 1, 10, 11, 12, 13], vec![1, 11, 12, 13, 14, 15]);
    PolygonalComplex::new(types, edges, vec![mid, left, right], 0).unwrap()
}

fn corpus() -> Vec<PolygonalComplex> {
    let mut out = vec![von_dyck_complex(), subdivide(&von_dyck_complex(), 1).unwrap(), hexagon_tree(), ladder(3, 4), ladder(4, 2)];
    for ell in 2..6 {
        out.push(PolygonalComplex::polygon(ell));
        out.push(subdivide(&PolygonalComplex::polygon(ell), 2).unwrap());
    }
    out.push(complex_of(&glue_two(3, 0, 0, 2).unwrap()));
    out.extend(disc_diagrams(3, 3, EnumerationBudget::default()).unwrap().iter().map(complex_of));
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let params = RandomDiagramParams::default();
    out.extend((0..100).map(|_| complex_of(&random_diagram(&params, &mut rng))));
    out
}

#[test]
fn classes_match_relabelling() {
    for x in corpus() {
        let polys: Vec<Vec<usize>> = x.polygons().iter().map(|p| p.edges.clone()).collect();
        let oracle: BTreeSet<Vec<usize>> = opposite_classes(x.edge_count(), &polys).into_iter().collect();
        let ours: BTreeSet<Vec<usize>> = trace_all(&x).unwrap().into_iter().map(|h| h.class).collect();
        assert_eq!(ours, oracle);
    }
}

#[test]
fn embedded_hypergraphs_separate() {
    let mut embedded = 0;
    for x in corpus() {
        let polys: Vec<Vec<usize>> = x.polygons().iter().map(|p| p.edges.clone()).collect();
        let b1 = x.first_betti_mod2();
        assert_eq!(b1, first_betti_mod2(x.vertex_count(), x.edge_ends(), &polys));
        if b1 != 0 {
            continue;
        }
        for h in trace_all(&x).unwrap() {
            if h.is_embedded_tree() {
                assert_eq!(h.complement_components(&x).unwrap().count, 2);
                embedded += 1;
            }
        }
    }
    assert!(embedded > 500, "{embedded}");
}

#[test]
fn separation_counts_match_labelling() {
    for x in corpus() {
        let family = walls_of(&x).unwrap();
        let ws = family.wallspace(x.vertex_count());
        let classes: Vec<Vec<usize>> = family.walls.iter().map(|w| w.hypergraph.class.clone()).collect();
        let oracle = separation_matrix(x.vertex_count(), x.edge_ends(), &classes);
        for p in 0..x.vertex_count() {
            for q in 0..x.vertex_count() {
                let count = ws.separating_wall_count(p, q);
                assert_eq!(count, oracle[p][q]);
                let others = (0..ws.wall_count()).filter(|&w| !ws.separates(w, p, q)).count();
                assert_eq!(count + others, ws.wall_count());
            }
        }
    }
}

#[test]
fn antipodal_vertices_of_a_polygon() {
    for ell in 2..7 {
        let x = PolygonalComplex::polygon(ell);
        let ws = walls_of(&x).unwrap().wallspace(x.vertex_count());
        assert_eq!(ws.separating_wall_count(0, ell), ell);
        assert_eq!(ws.separating_wall_count(1, 1), 0);
    }
}

#[test]
fn sphere_and_self_gluing() {
    // two octagons on one boundary: each hypergraph is a circle of two diameters
    let x = PolygonalComplex::new(
        (0..8).map(|v| if v % 2 == 0 { VertexType::Central } else { VertexType::Factor(0) }).collect(),
        (0..8).map(|i| (i, (i + 1) % 8)).collect(),
        vec![Polygon::new((0..8).collect(), (0..8).collect()), Polygon::new((0..8).collect(), (0..8).collect())],
        0,
    )
    .unwrap();
    let h = trace_hypergraph(&x, 0).unwrap();
    assert!(!h.is_embedded_tree());
    assert_eq!(h.complement_components(&x).unwrap().count, 2);
    // an octagon with edges 2 = 0 and 6 = 4: the class {0, 4} carries two diameters
    let d = AbstractDiagram::from_slot_unions(4, 1, &[((0, 2), (0, 0)), ((0, 6), (0, 4))], &[]).unwrap();
    let x = complex_of(&d);
    let h = trace_hypergraph(&x, x.polygons()[0].edges[0]).unwrap();
    assert_eq!(h.class.len(), 2);
    assert!(!h.is_injective() && !h.is_embedded_tree());
    assert_eq!(h.complement_components(&x), Err(WallsError::NotEmbedded));
    assert_eq!(walls_of(&x).unwrap().not_embedded.len(), 1);
}

#[test]
fn hypergraph_through_the_middle_hexagon() {
    let x = hexagon_tree();
    let h = trace_hypergraph(&x, 2).unwrap();
    assert_eq!(h.class, vec![2, 5]);
    assert!(h.is_embedded_tree());
    assert_eq!(h.complement_components(&x).unwrap().count, 2);
}

#[test]
fn crossing_walls_give_cubes() {
    for k in 1..=5 {
        let sides: Vec<Vec<bool>> = (0..k).map(|w| (0..1usize << k).map(|p| p >> w & 1 == 1).collect()).collect();
        let ws = Wallspace::from_sides(1 << k, &sides).unwrap();
        let d = dual_cube_complex(&ws, DualBudget::default()).unwrap();
        assert_eq!(d.f_vector(), dual_f_vector(1 << k, &sides));
        assert_eq!(d.f_vector(), CubeComplex::cube(k).f_vector());
        assert_eq!(d.dimension(), k);
        assert!(d.to_cube_complex().link_flag_check());
    }
}

#[test]
fn single_crossing_on_polygon_boundary() {
    let x = PolygonalComplex::polygon(4);
    let hs = trace_all(&x).unwrap();
    let hit = single_crossing_search(&hs, &[0, 1, 2, 3], 6 * 8 + 1).unwrap();
    assert_eq!(hit.position, 2);
    assert_eq!(hs[hit.wall].class, vec![2, 6]);
}

#[test]
fn ladder_metrics() {
    for (ell, t) in [(3, 4), (4, 3), (5, 2)] {
        let x = ladder(ell, t);
        let big_l = 2 * ell;
        let h = trace_hypergraph(&x, 0).unwrap();
        assert_eq!(h.vertex_count(), t + 1);
        assert!(h.is_embedded_tree());
        let r: Exact = antipodality(&x, &h.site_graph(), big_l).unwrap();
        assert_eq!(r, Exact::new(1, 2));
        assert_eq!(h.distances_from(0)[t], Some(t));
        let q = qi_stats(&x, &h, big_l);
        let eps = 1.0 / big_l as f64;
        assert!(q.max_upper_ratio <= 0.5 + eps + 1e-12);
        // end to end: ((ℓ − 1)t + 1) / 2ℓ ≥ t(1/2 − ε)
        let ends = freeprod::walls::half_distances(&x, freeprod::walls::Site::Midpoint(0))[x.vertex_count() + t];
        assert_eq!(ends, Some(2 * ((ell - 1) * t + 1)));
        assert!(((ell - 1) * t + 1) as f64 / big_l as f64 >= t as f64 * (0.5 - eps));
        assert!(q.lambda >= 1.0);
    }
}

#[test]
fn cubulated_model_complex() {
    let x = von_dyck_complex();
    let family = walls_of(&x).unwrap();
    let ws = family.wallspace(x.vertex_count());
    assert!(ws.wall_count() <= 20);
    let d = dual_cube_complex(&ws, DualBudget::default()).unwrap();
    let sides: Vec<Vec<bool>> = family.walls.iter().map(|w| (0..x.vertex_count()).map(|v| w.positive[v]).collect()).collect();
    if ws.wall_count() <= 12 {
        assert_eq!(d.f_vector(), dual_f_vector(x.vertex_count(), &sides));
    }
    assert!(d.to_cube_complex().link_flag_check());
}

fn tree_from(parents: &[usize]) -> Vec<(usize, usize)> {
    parents.iter().enumerate().map(|(i, &p)| (i + 1, p % (i + 1))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nested_walls_give_the_tree(parents in proptest::collection::vec(0usize..100, 1..9)) {
        let edges = tree_from(&parents);
        let n = edges.len() + 1;
        // wall per edge: the side holding the child's subtree
        let sides: Vec<Vec<bool>> = edges
            .iter()
            .map(|&(child, _)| {
                (0..n)
                    .map(|mut v| {
                        while v > child {
                            v = edges[v - 1].1;
                        }
                        v == child
                    })
                    .collect()
            })
            .collect();
        let ws = Wallspace::from_sides(n, &sides).unwrap();
        for a in 0..ws.wall_count() {
            for b in 0..ws.wall_count() {
                prop_assert!(!ws.crosses(a, b));
            }
        }
        let d = dual_cube_complex(&ws, DualBudget::default()).unwrap();
        prop_assert_eq!(d.f_vector(), vec![n, n - 1]);
        prop_assert!(graphs_isomorphic(n, &edges, d.vertex_count(), &d.edges()));
        prop_assert!(d.to_cube_complex().link_flag_check());
    }

    #[test]
    fn dual_matches_exhaustive_orientations(points in 2usize..9, bits in proptest::collection::vec(any::<u16>(), 1..9)) {
        let sides: Vec<Vec<bool>> = bits.iter().map(|b| (0..points).map(|p| b >> p & 1 == 1).collect()).collect();
        let ws = Wallspace::from_sides(points, &sides).unwrap();
        let d = dual_cube_complex(&ws, DualBudget::default()).unwrap();
        prop_assert_eq!(d.f_vector(), dual_f_vector(points, &sides));
        prop_assert!(d.vertex_count() <= 1 << sides.len());
        for &o in d.orientations() {
            for a in 0..sides.len() {
                for b in 0..sides.len() {
                    let sa = o >> a & 1 == 1;
                    let sb = o >> b & 1 == 1;
                    prop_assert!((0..points).any(|p| sides[a][p] == sa && sides[b][p] == sb));
                }
            }
        }
    }

    #[test]
    fn reseeding_is_idempotent(e in 0usize..24) {
        let x = von_dyck_complex();
        let h = trace_hypergraph(&x, e).unwrap();
        for &f in &h.class {
            prop_assert_eq!(&trace_hypergraph(&x, f).unwrap(), &h);
        }
    }
}
