use super::*;
use crate::seq::{compare, Relation};

fn prefix(s: &CountableSet, len: u64) -> Vec<u64> {
    s.size_seq().prefix(len).unwrap().iter().map(|v| v.try_into().unwrap()).collect()
}

fn chis(s: &CountableSet, len: u64) -> Vec<u64> {
    (1..=len).map(|n| s.chi(n).unwrap().try_into().unwrap()).collect()
}

fn nats(v: &[i64]) -> Vec<Element> {
    v.iter().map(|&z| Element::Int(z)).collect()
}

#[test]
fn documented_prefixes() {
    assert_eq!(prefix(&CountableSet::naturals(), 4), [1, 2, 3, 4]);
    assert_eq!(chis(&CountableSet::naturals(), 4), [1, 1, 1, 1]);
    assert_eq!(prefix(&CountableSet::evens(), 7), [0, 1, 1, 2, 2, 3, 3]);
    assert_eq!(prefix(&CountableSet::odds(), 6), [1, 1, 2, 2, 3, 3]);
    assert_eq!(prefix(&CountableSet::finite_nat(&[1, 2]).unwrap(), 6), [1, 2, 2, 2, 2, 2]);
    assert_eq!(prefix(&CountableSet::finite_nat(&[3, 4]).unwrap(), 6), [0, 0, 1, 2, 2, 2]);
    let n12 = CountableSet::diff(&CountableSet::naturals(), &CountableSet::finite_nat(&[1, 2]).unwrap()).unwrap();
    assert_eq!(prefix(&n12, 7), [0, 0, 1, 2, 3, 4, 5]);
    let nn = CountableSet::cartesian(&CountableSet::naturals(), &CountableSet::naturals());
    assert_eq!(prefix(&nn, 5), [1, 4, 9, 16, 25]);
    assert_eq!(prefix(&CountableSet::squares(), 10), [1, 1, 1, 2, 2, 2, 2, 2, 3, 3]);
    assert_eq!(CountableSet::multiples(3).size_seq().value(9).unwrap(), BigUint::from(3u32));
    assert_eq!(prefix(&CountableSet::integers(), 4), [3, 5, 7, 9]);
    assert_eq!(prefix(&CountableSet::nonneg_integers(), 4), [2, 3, 4, 5]);
    assert_eq!(prefix(&CountableSet::unit_interval(), 9), [1, 2, 4, 6, 10, 12, 18, 22, 28]);
    assert_eq!(chis(&CountableSet::unit_interval(), 8), [1, 1, 2, 2, 4, 2, 6, 4]);
    assert_eq!(prefix(&CountableSet::positive_rationals(), 5), [2, 6, 16, 30, 60]);
    assert_eq!(chis(&CountableSet::positive_rationals(), 5), [2, 4, 10, 14, 30]);
    assert_eq!(prefix(&CountableSet::rationals(), 5), [5, 13, 33, 61, 121]);
    assert_eq!(
        prefix(
            &CountableSet::finite_set([
                Element::Symbol("a".into()),
                Element::Symbol("b".into()),
                Element::Symbol("c".into())
            ])
            .unwrap(),
            3
        ),
        [3, 3, 3]
    );
    assert_eq!(prefix(&CountableSet::empty(), 3), [0, 0, 0]);
    assert_eq!(chis(&CountableSet::empty(), 3), [0, 0, 0]);
}

#[test]
fn documented_components() {
    assert_eq!(CountableSet::naturals().component(5).unwrap(), nats(&[5]));
    let nn = CountableSet::cartesian(&CountableSet::naturals(), &CountableSet::naturals());
    let c3: Vec<String> = nn.component(3).unwrap().iter().map(|e| e.to_string()).collect();
    assert_eq!(c3, ["(1,3)", "(2,3)", "(3,1)", "(3,2)", "(3,3)"]);
    assert_eq!(CountableSet::integers().component(1).unwrap(), nats(&[-1, 0, 1]));
    assert_eq!(
        CountableSet::positive_rationals().component_json(1).unwrap(),
        json!({"n": 1, "elements": [[0, 1, 1], [1, 1, 1]]})
    );
    assert_eq!(
        CountableSet::unit_interval().component_json(5).unwrap(),
        json!({"n": 5, "elements": [[1, 5], [2, 5], [3, 5], [4, 5]]})
    );
    let q1 = CountableSet::rationals().component_json(1).unwrap();
    assert_eq!(q1["elements"], json!([[-1, 0, 1, 1], [-1, 1, 1, 1], [0, 0, 0, 1], [1, 0, 1, 1], [1, 1, 1, 1]]));
    assert_eq!(nn.component_json(2).unwrap()["elements"], json!([[1, 2], [2, 1], [2, 2]]));
}

#[test]
fn integers_split_into_three_parts() {
    let zero = CountableSet::finite_in(Universe::Int, [Element::Int(0)]).unwrap();
    let z = CountableSet::union(
        &CountableSet::union(&CountableSet::naturals(), &CountableSet::negative_integers()).unwrap(),
        &zero,
    )
    .unwrap();
    assert_eq!(prefix(&z, 6), prefix(&CountableSet::integers(), 6));
    let neg = CountableSet::negative_integers();
    neg.size_seq().validate_certificates(200).unwrap();
    // ℕ × {1} has the size of ℕ
    let one = CountableSet::finite_set([Element::Int(1)]).unwrap();
    let n1 = CountableSet::cartesian(&CountableSet::naturals(), &one);
    assert_eq!(prefix(&n1, 8), prefix(&CountableSet::naturals(), 8));
}

#[test]
fn subset_with_true_predicate_is_componentwise_parent() {
    let q = CountableSet::positive_rationals();
    let all = CountableSet::subset(&q, Predicate::custom("true", |_| true));
    for n in 1..=20 {
        assert_eq!(all.component(n).unwrap(), q.component(n).unwrap());
    }
}

#[test]
fn errors() {
    assert!(matches!(
        CountableSet::union(&CountableSet::naturals(), &CountableSet::unit_interval()),
        Err(SetError::IncompatibleUniverse { .. })
    ));
    assert!(matches!(CountableSet::finite_nat(&[1, 1]), Err(SetError::DuplicateElement(_))));
    assert!(matches!(CountableSet::finite_nat(&[0]), Err(SetError::NotInUniverse { .. })));
    assert!(matches!(CountableSet::rational_interval(q(2, 1), q(1, 1)), Err(SetError::EmptyInterval { .. })));
    let bad =
        CountableSet::image_set(FnSpec::custom("zigzag", |m| BigUint::from(if m == 4 { 1u32 } else { m as u32 * 10 })));
    assert!(matches!(bad.size_seq().value(100), Err(SeqError::Num(NumError::NotIncreasing { .. }))));
    // the empty set unions with anything
    let u = CountableSet::union(&CountableSet::unit_interval(), &CountableSet::empty()).unwrap();
    assert_eq!(prefix(&u, 5), prefix(&CountableSet::unit_interval(), 5));
}

/// Components are disjoint, their elements belong to the set with the right
/// index, and they exhaust every element of index at most `n` found by scanning
/// the universe.
fn check_arrangement(s: &CountableSet, upto: u64) {
    let u = s.universe().clone();
    let mut seen = BTreeSet::new();
    for n in 1..=upto {
        let comp = s.component(n).unwrap();
        assert_eq!(BigUint::from(comp.len()), s.chi(n).unwrap(), "{s} chi at {n}");
        for e in comp {
            assert!(s.contains(&e).unwrap(), "{s} {e}");
            assert_eq!(s.index_of(&e).unwrap(), Some(n), "{s} {e}");
            assert!(seen.insert(e), "{s}: repeated element");
        }
        if u != Universe::AdHoc {
            let members = u.component(n).into_iter().filter(|e| s.contains(e).unwrap()).count();
            assert_eq!(BigUint::from(members), s.chi(n).unwrap(), "{s} subset rule at {n}");
        }
    }
}

#[test]
fn arrangements_are_total_and_disjoint() {
    let n = CountableSet::naturals();
    let sets = [
        (n.clone(), 500),
        (CountableSet::evens(), 500),
        (CountableSet::squares(), 500),
        (CountableSet::primes(false), 500),
        (CountableSet::primes(true), 500),
        (CountableSet::multiples(7), 500),
        (CountableSet::integers(), 500),
        (CountableSet::negative_integers(), 500),
        (CountableSet::image_set(FnSpec::Exp(2)), 500),
        (CountableSet::union(&CountableSet::squares(), &CountableSet::primes(false)).unwrap(), 500),
        (CountableSet::diff(&n, &CountableSet::multiples(3)).unwrap(), 500),
        (CountableSet::unit_interval(), 120),
        (CountableSet::positive_rationals(), 30),
        (CountableSet::rationals(), 25),
        (CountableSet::noncanonical_positive_rationals(), 120),
        (CountableSet::rational_interval(q(-7, 3), q(5, 2)).unwrap(), 60),
        (CountableSet::noncanonical_interval(q(1, 2), q(3, 1)).unwrap(), 60),
        (CountableSet::cartesian(&CountableSet::evens(), &CountableSet::unit_interval()), 25),
    ];
    for (s, upto) in sets {
        check_arrangement(&s, upto);
    }
}

#[test]
fn subset_arrangement_coherence() {
    let q = CountableSet::positive_rationals();
    let small = CountableSet::subset(
        &q,
        Predicate::custom("p+k<m", |e| matches!(e, Element::Rat { p, k, m, .. } if p + k < *m)),
    );
    for n in 1..=40 {
        let expect: Vec<Element> = q.component(n).unwrap().into_iter().filter(|e| small.contains(e).unwrap()).collect();
        assert_eq!(small.component(n).unwrap(), expect);
    }
    let e = CountableSet::evens();
    let nat = CountableSet::naturals();
    for n in 1..=500 {
        let expect: Vec<Element> = nat.component(n).unwrap().into_iter().filter(|x| e.contains(x).unwrap()).collect();
        assert_eq!(e.component(n).unwrap(), expect);
    }
}

#[test]
fn certificates_match_generators() {
    let n = CountableSet::naturals();
    let i = CountableSet::unit_interval();
    let sets = [
        n.clone(),
        CountableSet::evens(),
        CountableSet::multiples(4),
        CountableSet::squares(),
        CountableSet::primes(false),
        CountableSet::nonneg_integers(),
        CountableSet::integers(),
        i.clone(),
        CountableSet::positive_rationals(),
        CountableSet::rationals(),
        CountableSet::noncanonical_positive_rationals(),
        CountableSet::finite_nat(&[2, 9, 30]).unwrap(),
        CountableSet::union(&CountableSet::evens(), &CountableSet::multiples(3)).unwrap(),
        CountableSet::union(&CountableSet::squares(), &CountableSet::finite_nat(&[2, 3]).unwrap()).unwrap(),
        CountableSet::diff(&CountableSet::squares(), &CountableSet::finite_nat(&[4, 5]).unwrap()).unwrap(),
        CountableSet::diff(&n, &CountableSet::squares()).unwrap(),
        CountableSet::inter(&CountableSet::primes(false), &CountableSet::finite_nat(&[2, 4, 5]).unwrap()).unwrap(),
        CountableSet::cartesian(&n, &i),
        CountableSet::cartesian(&CountableSet::evens(), &CountableSet::odds()),
        CountableSet::rational_interval(q(1, 2), q(3, 2)).unwrap(),
        CountableSet::rational_interval(q(-3, 1), q(1, 4)).unwrap(),
        CountableSet::noncanonical_interval(q(0, 1), q(2, 1)).unwrap(),
    ];
    for s in sets {
        let seq = s.size_seq();
        assert!(!seq.certificates().is_empty(), "{s} is uncertified");
        seq.validate_certificates(300).unwrap_or_else(|e| panic!("{s}: {e}"));
        s.char_seq().validate_certificates(100).unwrap_or_else(|e| panic!("{s}: {e}"));
    }
}

#[test]
fn union_of_evens_and_odds_is_alpha() {
    let u = CountableSet::union(&CountableSet::evens(), &CountableSet::odds()).unwrap();
    let v = compare(Relation::Eq, &u.size_seq(), &Seq::alpha(), 1000).unwrap();
    assert!(v.is_proved());
    assert_eq!(v.witness, Some(0));
    assert_eq!(u.as_mask(), Some(PeriodicMask::all()));
}

#[test]
fn proper_subsets_are_strictly_smaller() {
    let cases = [
        (CountableSet::evens(), CountableSet::naturals(), Element::Int(1)),
        (CountableSet::squares(), CountableSet::naturals(), Element::Int(2)),
        (CountableSet::unit_interval(), CountableSet::positive_rationals(), Element::mixed(3, 1, 2)),
    ];
    for (a, b, witness) in cases {
        assert!(b.contains(&witness).unwrap() && !a.contains(&witness).unwrap());
        let from = b.index_of(&witness).unwrap().unwrap();
        for n in 1..=200 {
            let (x, y) = (a.size_seq().value(n).unwrap(), b.size_seq().value(n).unwrap());
            assert!(x <= y);
            if n >= from {
                assert!(x < y, "{a} vs {b} at {n}");
            }
        }
    }
}

#[test]
fn homogeneity_examples() {
    let i = CountableSet::unit_interval().size_seq();
    for (lo, hi) in [(q(0, 1), q(1, 1)), (q(3, 1), q(4, 1)), (q(1, 2), q(3, 2)), (q(-5, 3), q(-2, 3))] {
        let s = CountableSet::rational_interval(lo, hi).unwrap();
        let v = compare(Relation::Eq, &s.size_seq(), &i, 500).unwrap();
        assert!(v.is_proved(), "({lo},{hi}]: {:?}", v.note);
    }
    let np = CountableSet::noncanonical_interval(q(1, 1), q(2, 1)).unwrap();
    let v = compare(Relation::Eq, &np.size_seq(), &i, 500).unwrap();
    assert_eq!(v.outcome, crate::seq::Outcome::Refuted);
    // ℚ⁺ as coprime pairs: σ = 2Φ − 1
    let cp = CountableSet::noncanonical_positive_rationals();
    for n in 1..=50 {
        let phi = i.value(n).unwrap();
        assert_eq!(cp.size_seq().value(n).unwrap(), phi * 2u32 - 1u32);
    }
}

#[test]
fn eventual_size_of_finite_constructions() {
    let a = CountableSet::finite_nat(&[3, 4, 10]).unwrap();
    assert_eq!(eventual_size(&a), Some(BigUint::from(3u32)));
    assert_eq!(eventual_size(&CountableSet::naturals()), None);
    assert_eq!(eventual_size(&CountableSet::empty()), Some(BigUint::zero()));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn mask_strategy() -> impl Strategy<Value = PeriodicMask> {
        (proptest::collection::vec(any::<bool>(), 0..8), proptest::collection::vec(any::<bool>(), 1..6))
            .prop_map(|(p, q)| PeriodicMask::new(p, q))
    }

    fn nat_set() -> impl Strategy<Value = CountableSet> {
        prop_oneof![
            mask_strategy().prop_map(|m| CountableSet::masked(m, "A")),
            (1u64..6).prop_map(CountableSet::multiples),
            Just(CountableSet::squares()),
            Just(CountableSet::primes(false)),
            proptest::collection::btree_set(1u64..60, 0..6)
                .prop_map(|s| CountableSet::finite_nat(&s.into_iter().collect::<Vec<_>>()).unwrap()),
            (2u64..5).prop_map(|b| CountableSet::subset(
                &CountableSet::naturals(),
                Predicate::custom(
                    format!("digitsum{b}"),
                    move |e| matches!(e, Element::Int(z) if z % b as i64 == 1 || z % 7 == 0)
                )
            )),
        ]
    }

    fn rat_set() -> impl Strategy<Value = CountableSet> {
        (1u64..5, 0u64..4).prop_map(|(a, b)| {
            CountableSet::subset(
                &CountableSet::positive_rationals(),
                Predicate::custom(format!("r{a}{b}"), move |e| match e {
                    Element::Rat { p, k, m, .. } => (p * m + k + b) % (a + 1) == 0,
                    _ => false,
                }),
            )
        })
    }

    fn sizes(s: &CountableSet, n: u64) -> Vec<BigUint> {
        s.size_seq().prefix(n).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn inclusion_exclusion_on_naturals(a in nat_set(), b in nat_set()) {
            let u = CountableSet::union(&a, &b).unwrap();
            let i = CountableSet::inter(&a, &b).unwrap();
            let (su, si, sa, sb) = (sizes(&u, 1000), sizes(&i, 1000), sizes(&a, 1000), sizes(&b, 1000));
            for n in 0..1000 {
                prop_assert_eq!(&su[n] + &si[n], &sa[n] + &sb[n]);
            }
            u.size_seq().validate_certificates(1000).unwrap();
            i.size_seq().validate_certificates(1000).unwrap();
            CountableSet::diff(&a, &b).unwrap().size_seq().validate_certificates(1000).unwrap();
        }

        #[test]
        fn inclusion_exclusion_on_rationals(a in rat_set(), b in rat_set()) {
            let u = CountableSet::union(&a, &b).unwrap();
            let i = CountableSet::inter(&a, &b).unwrap();
            let len = 14;
            let (su, si, sa, sb) = (sizes(&u, len), sizes(&i, len), sizes(&a, len), sizes(&b, len));
            for n in 0..len as usize {
                prop_assert_eq!(&su[n] + &si[n], &sa[n] + &sb[n]);
            }
        }

        #[test]
        fn products_multiply_sizes(a in nat_set(), b in nat_set()) {
            let p = CountableSet::cartesian(&a, &b);
            let (sp, sa, sb) = (sizes(&p, 300), sizes(&a, 300), sizes(&b, 300));
            for n in 0..300 {
                prop_assert_eq!(&sp[n], &(&sa[n] * &sb[n]));
            }
        }

        #[test]
        fn adding_a_point_keeps_strict_dominance(a in nat_set(), x in 1u64..200) {
            let b = CountableSet::naturals();
            let pt = CountableSet::finite_nat(&[x]).unwrap();
            if a.contains(&Element::nat(x)).unwrap() {
                return Ok(());
            }
            let lt = compare(Relation::Lt, &a.size_seq(), &b.size_seq(), 400).unwrap();
            if lt.is_proved() {
                let ax = CountableSet::union(&a, &pt).unwrap();
                let le = compare(Relation::Le, &ax.size_seq(), &b.size_seq(), 400).unwrap();
                prop_assert!(le.is_proved(), "{} + {x}: {:?}", a, le);
            }
        }
    }
}
