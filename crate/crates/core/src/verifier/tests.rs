use super::*;

fn q(n: i64, d: i64) -> Ratio<i64> {
    Ratio::new(n, d)
}

#[test]
fn galileo_passes_with_certificates_only() {
    let r = verify_galileo(100, true).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.witnesses[0].m, Some(1));
    let r = verify_galileo(1, true).unwrap();
    assert_eq!(r.status, Status::Pass);
    let r = verify_galileo(1, false).unwrap();
    assert_eq!(r.status, Status::Inconclusive);
}

#[test]
fn ordering_chain() {
    for k in [1, 2, 3, 10] {
        let r = verify_ordering_chain(k, 2000, false, true).unwrap();
        assert_eq!(r.status, Status::Pass, "k = {k}: {:?}", r.to_json());
    }
    let r = verify_ordering_chain(2, 2000, true, true).unwrap();
    assert_eq!(r.status, Status::Pass);
    let r = verify_ordering_chain(2, 2000, false, false).unwrap();
    assert_eq!(r.status, Status::Inconclusive);
    assert_eq!(r.witnesses[0].outcome, "undecided");
    assert!(verify_ordering_chain(0, 10, false, true).is_err());
}

#[test]
fn multiples_bound() {
    for k in [1, 2, 7] {
        let r = verify_multiples_bound(k, 5000).unwrap();
        assert_eq!(r.status, Status::Pass, "{:?}", r.to_json());
    }
}

#[test]
fn unit_interval_bounds_report_small_exceptions() {
    let r = verify_unit_interval_bounds(2000).unwrap();
    assert_eq!(r.status, Status::Pass, "{:?}", r.to_json());
    let upper = &r.witnesses[1];
    assert_eq!(upper.m, Some(5));
    assert_eq!(upper.detail["failures"], json!([1, 2, 3, 4, 5]));
    assert!(r.notes[0].contains("n = 3"));
    assert_eq!(r.witnesses.last().unwrap().outcome, "proved");
}

#[test]
fn rationals() {
    let r = verify_rationals(40).unwrap();
    assert_eq!(r.status, Status::Pass, "{:?}", r.to_json());
    assert_eq!(r.witnesses[1].outcome, "proved");
}

#[test]
fn homogeneity() {
    let r = verify_homogeneity(q(1, 1), &[q(0, 1), q(1, 1), q(3, 1), q(1, 2), q(7, 3)], 300).unwrap();
    assert_eq!(r.status, Status::Pass, "{:?}", r.to_json());
    assert_eq!(r.witnesses.len(), 10);
    let r = verify_homogeneity(q(1, 2), &[q(0, 1), q(1, 2), q(2, 1)], 300).unwrap();
    assert_eq!(r.status, Status::Pass, "{:?}", r.to_json());
    // equal length alone does not force equal size
    let r = verify_homogeneity(q(1, 2), &[q(0, 1), q(1, 3)], 300).unwrap();
    assert_eq!(r.status, Status::Inconclusive);
    assert!(r.notes[0].contains("last disagreement"), "{:?}", r.notes);
    let r = verify_noncanonical_homogeneity(300).unwrap();
    assert_eq!(r.status, Status::Pass, "{:?}", r.to_json());
    assert_eq!(r.witnesses[0].outcome, "refuted");
}

#[test]
fn partial_order() {
    let r = verify_partial_order(1000).unwrap();
    assert_eq!(r.status, Status::Pass, "{:?}", r.to_json());
    assert_eq!(r.witnesses[0].outcome, "refuted");
    assert_eq!(r.witnesses[1].outcome, "refuted");
}

#[test]
fn pi_bounds() {
    let scan = pi_bound_exceptions(20_000, false);
    assert_eq!(scan.upper, [113]);
    assert!(scan.lower.is_empty() && scan.undecided.is_empty());
    assert_eq!(verify_pi_bounds(20_000, false).unwrap().status, Status::Pass);
}

#[test]
fn laws_are_reproducible() {
    let a = verify_union_product_laws(12, 120, 7).unwrap();
    let b = verify_union_product_laws(12, 120, 7).unwrap();
    assert_eq!(a.status, Status::Pass, "{:?}", a.to_json());
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
}

#[test]
fn unknown_theorem() {
    assert!(matches!(run("riemann", &VerifyOptions::default()), Err(VerifyError::UnknownTheorem(_))));
}
