use std::collections::BTreeSet;
use std::time::Instant;

use freeprod::diagram::{enumerate_bounded, full_code, EnumerationBudget};
use freeprod_oracles::diagrams::{brute_force_geometric, brute_force_labelled};

#[test]
fn census_matches_brute_force() {
    let t = Instant::now();
    let report = enumerate_bounded(2, 3, 3, EnumerationBudget::default()).unwrap();
    let t_enum = t.elapsed();
    let t = Instant::now();
    let brute = brute_force_geometric(2, 3, 3);
    println!("enumerated {} geometric / {} labelled in {:?}; brute force {} in {:?}", report.geometric.len(), report.count(), t_enum, brute.len(), t.elapsed());
    let ours: BTreeSet<_> = report.geometric.iter().map(freeprod::diagram::geometric_code).collect();
    let theirs: BTreeSet<_> = brute.keys().cloned().collect();
    assert_eq!(ours.len(), report.geometric.len());
    assert_eq!(ours, theirs);
    let reps: Vec<_> = brute.into_values().collect();
    let labelled = brute_force_labelled(&reps);
    let ours: BTreeSet<_> = report.labelled.iter().map(full_code).collect();
    assert_eq!(ours, labelled);
}


#[test]
fn single_face_single_connector_counts_labelings() {
    for ell in 2..=6 {
        let r = enumerate_bounded(1, 1, ell, EnumerationBudget::default()).unwrap();
        assert_eq!(r.count(), 1);
        assert_eq!(r.reduced_labelings, 2 * ell);
    }
}

#[test]
fn labelled_growth_is_polynomial() {
    // (K,M) = (2,4): labelled counts stay below c·ℓ⁶ with c fixed by the smallest ℓ
    let counts: Vec<(usize, usize)> = (2..=6)
        .map(|ell| (ell, enumerate_bounded(2, 4, ell, EnumerationBudget::default()).unwrap().count()))
        .collect();
    println!("labelled counts at (K,M)=(2,4): {counts:?}");
    let c = counts.iter().map(|&(l, n)| n as f64 / (l as f64).powi(6)).fold(0.0, f64::max);
    let (l0, n0) = counts[0];
    assert!(c <= n0 as f64 / (l0 as f64).powi(6) + 1e-12, "ratio to ℓ⁶ grows");
    // log-log slope between the two largest ℓ
    let (l1, n1) = counts[counts.len() - 2];
    let (l2, n2) = counts[counts.len() - 1];
    let slope = ((n2 as f64).ln() - (n1 as f64).ln()) / ((l2 as f64).ln() - (l1 as f64).ln());
    assert!(slope <= 6.0, "slope {slope}");
}
