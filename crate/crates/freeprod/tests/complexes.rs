use freeprod::complex::{
    build_mixed, build_xr_finite, coset_enumerate, short_cycle_audit, subdivide, subdivision_params, CellComplex, ComplexError, CosetTable, Fiber, GeodesicChoice, MixedComplex, PolygonalComplex, Presentation, VertexType,
};
use freeprod::diagram::{polygon, random_diagram, Decoration, RandomDiagramParams};
use freeprod::factor::{FactorGroup, FreeProduct, FreeProductWord, Syllable};
use freeprod::Exact;
use freeprod_oracles::complexes::{closure_order, cycle_counts, largest_permutation_image};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn von_dyck() -> (FreeProduct, Vec<FreeProductWord>, CosetTable) {
    let product = FreeProduct::new(vec![FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")]);
    let r = vec![FreeProductWord::parse("1:t1 2:t1 1:t1 2:t1").unwrap()];
    let table = coset_enumerate(&Presentation::of_quotient(&product, &r), 1000).unwrap();
    (product, r, table)
}

fn generator_perms(t: &CosetTable) -> Vec<Vec<usize>> {
    (0..t.generator_count()).map(|g| (0..t.coset_count()).map(|c| t.act(c, (g, 1)).unwrap()).collect()).collect()
}

#[test]
fn coset_orders_match_permutation_search() {
    for (text, degree) in [("a, b | a^3, b^3, (ab)^2", 4), ("a, b | a^2, b^3, (ab)^3", 4), ("a, b | a^2, b^3, (ab)^4", 4), ("a, b | a^2, b^3, (ab)^5", 5)] {
        let p = Presentation::parse(text).unwrap();
        let t = coset_enumerate(&p, 10_000).unwrap();
        assert_eq!(t.coset_count(), largest_permutation_image(p.generators.len(), &p.relators, degree), "{text}");
        // the table is the regular action, so it generates a group of its own size
        assert_eq!(closure_order(&generator_perms(&t)), t.coset_count());
        assert!(t.is_transitive());
    }
    let free = Presentation::parse("a, b | a^3, b^3").unwrap();
    assert_eq!(coset_enumerate(&free, 1000), Err(ComplexError::Overflow(1000)));
}

#[test]
fn model_complex_counts() {
    let (product, r, table) = von_dyck();
    let x = build_xr_finite(&product, &r, &table).unwrap();
    let g = table.coset_count();
    assert_eq!(x.central_count(), g);
    // each factor image has order 3
    assert_eq!(x.factor_count(), g / 3 + g / 3);
    assert_eq!(x.edge_count(), 2 * g);
    for p in x.polygons() {
        assert_eq!(p.len(), 8);
        for (i, &v) in p.vertices.iter().enumerate() {
            assert_eq!(x.types()[v] == VertexType::Central, i % 2 == 0);
        }
    }
    assert_eq!(PolygonalComplex::parse_text(&x.to_text()).unwrap(), x);
}

#[test]
fn short_cycles_match_subset_search() {
    let (product, r, table) = von_dyck();
    let x = build_xr_finite(&product, &r, &table).unwrap();
    let audit = short_cycle_audit(&x, 8, 100_000).unwrap();
    let oracle = cycle_counts(x.vertex_count(), x.edge_ends(), 7);
    let hist = audit.length_histogram();
    for (len, count) in oracle {
        assert_eq!(hist[len], count, "length {len}");
    }
}

#[test]
fn subdivision_grid() {
    for (num, den) in [(1, 100), (1, 20), (1, 10), (3, 20), (19, 100)] {
        for ell in [3, 10, 20, 40] {
            let d = Exact::new(num, den);
            let p = subdivision_params(d, ell, 3).unwrap();
            let fifth = Exact::new(1, 5) - d;
            let inv = Exact::new(1, ell as i64);
            assert_eq!(p.epsilon, if fifth < inv { fifth } else { inv } / 2);
            assert_eq!(p.k as i64, (Exact::from_integer(3) / (Exact::from_integer(4) * p.epsilon)).ceil().to_integer() + 1);
            assert_eq!(p.polygon_length, 4 * p.k * ell);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subdivision_scales_distances(k in 1usize..4, u in 0usize..20, v in 0usize..20) {
        let (product, r, table) = von_dyck();
        let x = build_xr_finite(&product, &r, &table).unwrap();
        let y = subdivide(&x, k).unwrap();
        prop_assert_eq!(y.distances_from(u)[v], x.distances_from(u)[v].map(|d| 2 * k * d));
        prop_assert_eq!(y.polygon_length(), 4 * k * 4);
    }

    #[test]
    fn mixed_segments(radius in 2usize..5, k in 1usize..4, a in 1usize..3, b in 1usize..3) {
        let product = FreeProduct::new(vec![FactorGroup::free(1), FactorGroup::cyclic(3, "b")]);
        let power = |letter: &str, n: usize| vec![letter; n].join(".");
        let r = FreeProductWord::parse(&format!("1:w{} 2:t1 1:w{} 2:t2", power("1", a), power("-1", b))).unwrap();
        let d = polygon(4);
        let dec = Decoration::from_assignment(&d, &product, &[r], &[0]).unwrap();
        let x = PolygonalComplex::from_diagram(&d, Some(&dec)).unwrap();
        let m = build_mixed(&x, &product, &[Fiber::line(radius), Fiber::point(1)], GeodesicChoice::LexMin).unwrap();
        let tau = m.tau();
        prop_assert_eq!(tau, a.max(b));
        let audit = m.segment_audit();
        prop_assert!(audit.polygonal.iter().all(|&s| s == 2));
        prop_assert!(audit.max_cubical <= tau);
        prop_assert!(m.projection_is_faithful());
        let bal = m.balanced(k).unwrap();
        let audit = bal.segment_audit();
        prop_assert!(audit.polygonal.iter().all(|&s| s == 4 * k));
        prop_assert!(audit.max_cubical <= 2 * tau);
        prop_assert!(bal.projection_is_faithful());
        prop_assert_eq!(bal.base().polygon_length(), 4 * k * 4);
        prop_assert_eq!(MixedComplex::parse_text(&bal.to_text()).unwrap(), bal);
    }
}

#[test]
fn point_fibers_on_random_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let product = FreeProduct::new(vec![FactorGroup::cyclic(5, "a")]);
    let params = RandomDiagramParams::default();
    for _ in 0..100 {
        let d = random_diagram(&params, &mut rng);
        // every corner of a one-factor product with trivial rotations is consistent
        let rot: Vec<_> = d.faces().iter().map(|f| (0..f.len() / 2).map(|_| Syllable::new(0, product.factor(0).identity())).collect()).collect();
        let dec = Decoration { relators: vec![0; d.class_count()], rotations: rot };
        let x = PolygonalComplex::from_diagram(&d, Some(&dec)).unwrap();
        let m = build_mixed(&x, &product, &[Fiber::point(1)], GeodesicChoice::LexMin).unwrap();
        assert_eq!(m.vertex_count(), x.vertex_count());
        assert_eq!(m.edge_ends(), x.edge_ends());
        assert!(m.projection_is_faithful());
    }
}
