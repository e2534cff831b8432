use freeprod::diagram::{
    cancellation, connectors, decode_dual, disc_diagrams, encode_dual, fulfill, geometric_code, glue_two, greendlinger_check, max_piece, pair_gluings, polygon, random_diagram, relative_cancellation,
    AbstractDiagram, Decoration, EnumerationBudget, Fulfillment, Orientation, RandomDiagramParams, SearchBudget,
};
use freeprod::factor::{FactorGroup, FreeProduct, FreeProductWord};
use freeprod::Ratio;
use freeprod_oracles::diagrams::geometrically_isomorphic;
use freeprod_oracles::words::naive_max_piece;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture_a() -> FreeProduct {
    FreeProduct::new(vec![FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")])
}

fn random_word(p: &FreeProduct, ell: usize, order: u32, rng: &mut ChaCha8Rng) -> FreeProductWord {
    let text: Vec<String> = (0..ell).map(|i| format!("{}:t{}", i % 2 + 1, rng.gen_range(1..order))).collect();
    let w = FreeProductWord::parse(&text.join(" ")).unwrap();
    assert!(p.is_normal(&w));
    w
}

#[test]
fn dual_round_trip_on_random_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let params = RandomDiagramParams::default();
    for _ in 0..500 {
        let d = random_diagram(&params, &mut rng);
        let back = decode_dual(&encode_dual(&d)).unwrap();
        assert!(geometrically_isomorphic(&d, &back));
        assert_eq!(geometric_code(&d), geometric_code(&back));
    }
}

#[test]
fn cancellation_is_at_most_twice_relative() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let params = RandomDiagramParams::default();
    for _ in 0..200 {
        let d = random_diagram(&params, &mut rng);
        assert!(Ratio::from_integer(cancellation(&d) as i64) <= relative_cancellation(&d) * 2);
    }
}

#[test]
fn disc_identities() {
    for ell in 2..=4 {
        for d in disc_diagrams(3, ell, EnumerationBudget::default()).unwrap() {
            assert_eq!(2 * cancellation(&d), d.face_length() * d.area() - d.boundary_length());
            let k = d.area();
            assert!(2 * connectors(&d).len() <= k * (k - 1) * (k - 1) + 2 * k * k);
        }
    }
}

#[test]
fn isomorphism_oracle_agrees_with_codes() {
    let shapes = [glue_two(3, 0, 0, 2).unwrap(), glue_two(3, 1, 1, 2).unwrap(), glue_two(3, 2, 2, 2).unwrap(), glue_two(3, 0, 1, 1).unwrap(), polygon(3)];
    for a in &shapes {
        for b in &shapes {
            assert_eq!(geometrically_isomorphic(a, b), geometric_code(a) == geometric_code(b));
        }
    }
}

#[test]
fn pieces_match_naive_scan() {
    let p = fixture_a();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let ell = 2 * rng.gen_range(1..8);
        let r1 = random_word(&p, ell, 3, &mut rng);
        let r2 = if rng.gen_bool(0.3) { r1.clone() } else { random_word(&p, ell, 3, &mut rng) };
        assert_eq!(max_piece(&p, &r1, &r2), naive_max_piece(&p, &r1, &r2));
    }
    let r1 = FreeProductWord::parse("1:t1 2:t1 1:t1 2:t2").unwrap();
    let r2 = FreeProductWord::parse("1:t2 2:t1 1:t1 2:t1").unwrap();
    assert_eq!(max_piece(&p, &r1, &r2), naive_max_piece(&p, &r1, &r2));
}

#[test]
fn forced_equality_gluing_is_unfulfillable() {
    let p = fixture_a();
    let r = vec![FreeProductWord::parse("1:t1 2:t1 1:t1 2:t1").unwrap(), FreeProductWord::parse("1:t2 2:t1 1:t1 2:t1").unwrap()];
    let d = glue_two(4, 1, 1, 4).unwrap().with_labels(&[0, 1], &[Orientation::Plus, Orientation::Plus], &[0, 1]).unwrap();
    assert_eq!(fulfill(&d, &p, &r, SearchBudget::default()).unwrap(), Fulfillment::Unfulfillable);
}

#[test]
fn greendlinger_examples() {
    let d = Ratio::new(1, 12);
    assert!(greendlinger_check(&glue_two(6, 0, 1, 1).unwrap(), d).conclusion);
    let three = greendlinger_check(&glue_two(6, 0, 1, 3).unwrap(), d);
    assert!(!three.conclusion && !three.hypothesis);
}

#[test]
fn piece_gluings_of_sampled_words_are_sound() {
    let p = fixture_a();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let r: Vec<FreeProductWord> = (0..3).map(|_| random_word(&p, 12, 3, &mut rng)).collect();
    for g in pair_gluings(&p, &r) {
        let assign: Vec<usize> = if g.relators.0 == g.relators.1 { vec![g.relators.0] } else { vec![g.relators.0, g.relators.1] };
        let dec = Decoration::from_assignment(&g.diagram, &p, &r, &assign).unwrap();
        assert!(dec.is_sound(&g.diagram, &p, &r));
        assert!(dec.satisfies_constraints(&g.diagram, &p));
        assert_eq!(g.shared, if g.piece.length == 12 { 24 } else { g.shared });
    }
}

fn any_diagram() -> impl Strategy<Value = AbstractDiagram> {
    any::<u64>().prop_map(|seed| random_diagram(&RandomDiagramParams::default(), &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pieces_symmetric_and_shift_invariant(seed in any::<u64>(), k in 0usize..10) {
        let p = fixture_a();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r1 = random_word(&p, 10, 3, &mut rng);
        let r2 = random_word(&p, 10, 3, &mut rng);
        // a word against itself skips the trivial overlap, so only distinct cyclic classes compare
        let inv2 = p.inverse(&r2);
        prop_assume!((0..10).all(|s| r1.rotate(s) != r2 && r1.rotate(s) != inv2));
        let m = max_piece(&p, &r1, &r2);
        prop_assert_eq!(m, max_piece(&p, &r2, &r1));
        prop_assert_eq!(m, max_piece(&p, &r1.rotate(k), &r2));
        prop_assert_eq!(m, max_piece(&p, &p.inverse(&r1), &r2));
        prop_assert_eq!(m, max_piece(&p, &r1, &p.inverse(&r2.rotate(k))));
    }

    #[test]
    fn text_round_trip(d in any_diagram()) {
        let t = d.to_text(None);
        let (back, _) = AbstractDiagram::parse_text(&t).unwrap();
        prop_assert_eq!(back.to_text(None), t);
        prop_assert_eq!(freeprod::diagram::full_code(&back), freeprod::diagram::full_code(&d));
    }

    #[test]
    fn fulfillment_witness_is_sound(seed in any::<u64>()) {
        let p = fixture_a();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_diagram(&RandomDiagramParams { max_faces: 2, min_ell: 2, max_ell: 3, extra_arc_percent: 20 }, &mut rng);
        let r: Vec<FreeProductWord> = (0..3).map(|_| random_word(&p, 2 * (d.ell() / 2).max(1), 3, &mut rng)).collect();
        if r[0].len() == d.ell() {
            if let Fulfillment::Fulfilled(dec) = fulfill(&d, &p, &r, SearchBudget::default()).unwrap() {
                prop_assert!(dec.is_sound(&d, &p, &r));
                prop_assert!(dec.satisfies_constraints(&d, &p));
            }
        }
    }

    #[test]
    fn relabelling_preserves_codes(d in any_diagram(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vp: Vec<usize> = (0..d.vertex_count()).collect();
        let mut ep: Vec<usize> = (0..d.edge_count()).collect();
        let mut fp: Vec<usize> = (0..d.area()).collect();
        use rand::seq::SliceRandom;
        vp.shuffle(&mut rng);
        ep.shuffle(&mut rng);
        fp.shuffle(&mut rng);
        let r = d.relabel(&vp, &ep, &fp).unwrap();
        prop_assert_eq!(geometric_code(&r), geometric_code(&d));
        prop_assert_eq!(freeprod::diagram::full_code(&r), freeprod::diagram::full_code(&d));
        prop_assert_eq!(r.is_reduced(), d.is_reduced());
    }
}
