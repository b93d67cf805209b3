use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{TheoremReport, VerifyError, Witness};
use crate::seq::{self, compare, Relation, Seq};
use crate::set::{CountableSet, Element, PeriodicMask, Predicate};

/// Random certified subset of ℕ: mostly periodic masks, sometimes a finite
/// modification of a certified set.
fn random_nat_set(rng: &mut ChaCha8Rng) -> CountableSet {
    let finite = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..5);
        let mut v: Vec<u64> = (0..len).map(|_| rng.gen_range(1..40)).collect();
        v.sort_unstable();
        v.dedup();
        CountableSet::finite_nat(&v).expect("deduplicated")
    };
    match rng.gen_range(0..10) {
        0..=4 => {
            let pre = rng.gen_range(0..6);
            let per = rng.gen_range(1..7);
            let mask = PeriodicMask::new((0..pre).map(|_| rng.gen()).collect(), (0..per).map(|_| rng.gen()).collect());
            CountableSet::masked(mask, format!("A{}", rng.gen_range(0..1000)))
        }
        5 => CountableSet::multiples(rng.gen_range(1..8)),
        6 => finite(rng),
        7 => {
            let f = finite(rng);
            let base = [CountableSet::squares(), CountableSet::primes(false), CountableSet::naturals()]
                [rng.gen_range(0..3)]
            .clone();
            if rng.gen() {
                CountableSet::union(&base, &f).expect("same universe")
            } else {
                CountableSet::diff(&base, &f).expect("same universe")
            }
        }
        8 => CountableSet::squares(),
        _ => CountableSet::primes(rng.gen()),
    }
}

fn random_rat_set(rng: &mut ChaCha8Rng) -> CountableSet {
    let a: u64 = rng.gen_range(2..6);
    let b: u64 = rng.gen_range(0..a);
    let q = CountableSet::positive_rationals();
    CountableSet::subset(
        &q,
        Predicate::custom(format!("(pm+k) = {b} mod {a}"), move |e| match e {
            Element::Rat { p, k, m, .. } => (p * m + k) % a == b,
            _ => false,
        }),
    )
}

struct Tally {
    pairs: u64,
    pw: u64,
    discreteness: u64,
}

fn check_pair(
    r: &mut TheoremReport,
    t: &mut Tally,
    a: &CountableSet,
    b: &CountableSet,
    horizon: u64,
    products: bool,
) -> Result<(), VerifyError> {
    t.pairs += 1;
    let u = CountableSet::union(a, b)?;
    let i = CountableSet::inter(a, b)?;
    let (sa, sb, su, si) = (a.size_seq(), b.size_seq(), u.size_seq(), i.size_seq());
    let (pa, pb, pu, pi) = (sa.prefix(horizon)?, sb.prefix(horizon)?, su.prefix(horizon)?, si.prefix(horizon)?);
    for n in 0..horizon as usize {
        if &pu[n] + &pi[n] != &pa[n] + &pb[n] {
            let claim = format!("inclusion-exclusion for {a}, {b}");
            r.fail(&claim, n as u64 + 1, &pu[n] + &pi[n], &pa[n] + &pb[n]);
        }
    }
    if products {
        let p = CountableSet::cartesian(a, b);
        let pp = p.size_seq().prefix(horizon)?;
        for n in 0..horizon as usize {
            if pp[n] != &pa[n] * &pb[n] {
                r.fail(&format!("product law for {a}, {b}"), n as u64 + 1, &pp[n], &pa[n] * &pb[n]);
            }
        }
        // counted components agree with enumerated ones
        for n in 1..=horizon.min(40) {
            let listed = BigUint::from(p.component(n)?.len());
            let counted = p.chi(n)?;
            if listed != counted {
                r.fail(&format!("product components of {a}, {b}"), n, listed, counted);
            }
        }
    }
    // proper subset A ∩ B ⊂ A, witnessed by the first element of A \ B
    let d = CountableSet::diff(a, b)?;
    let mut witness = None;
    for n in 1..=horizon {
        if let Some(x) = d.component(n)?.into_iter().next() {
            witness = Some((n, x));
            break;
        }
    }
    if let Some((from, _)) = witness {
        t.pw += 1;
        for n in 0..horizon as usize {
            let idx = n as u64 + 1;
            let ok = if idx >= from { pi[n] < pa[n] } else { pi[n] <= pa[n] };
            if !ok {
                r.fail(&format!("proper-subset law for {i} in {a}"), idx, &pi[n], &pa[n]);
            }
        }
    }
    // adding one point to a strictly smaller set keeps it below
    let lt = compare(Relation::Lt, &sa, &sb, horizon)?;
    if lt.is_proved() {
        let mut outside = None;
        for n in 1..=horizon {
            for x in a.universe().component(n) {
                if !a.contains(&x)? {
                    outside = Some(x);
                    break;
                }
            }
            if outside.is_some() {
                break;
            }
        }
        if let Some(x) = outside {
            t.discreteness += 1;
            let point = CountableSet::finite_in(a.universe().clone(), [x.clone()])?;
            let ax = CountableSet::union(a, &point)?;
            let le = compare(Relation::Le, &ax.size_seq(), &sb, horizon)?;
            if !le.is_proved() {
                let n = le.witness.or(le.scan.last_failure).unwrap_or(0);
                r.fail(&format!("discreteness for {a} + {{{x}}} vs {b}"), n, le.outcome.as_str(), "proved");
            }
        }
    }
    Ok(())
}

/// Seeded random pairs of certified subsets of ℕ and ℚ⁺; the union,
/// product, proper-subset and discreteness laws are checked exactly.
pub fn verify_union_product_laws(trials: u64, horizon: u64, seed: u64) -> Result<TheoremReport, VerifyError> {
    if trials == 0 {
        return Err(VerifyError::BadOption("trials must be at least 1".into()));
    }
    let start = Instant::now();
    let mut r = TheoremReport::new("union-product-laws", horizon);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally { pairs: 0, pw: 0, discreteness: 0 };

    let (e, o) = (CountableSet::evens(), CountableSet::odds());
    let ee = CountableSet::cartesian(&e, &e).size_seq();
    let eo = CountableSet::cartesian(&e, &o).size_seq();
    let oo = CountableSet::cartesian(&o, &o).size_seq();
    let total = seq::add(&seq::add(&seq::scalar_mul(2, &eo), &ee), &oo);
    let alpha = Seq::alpha();
    let square = seq::mul(&alpha, &alpha);
    for n in 1..=horizon {
        if total.value(n)? != square.value(n)? {
            r.fail("2 sigma(E x O) + sigma(E x E) + sigma(O x O) = alpha^2", n, total.value(n)?, square.value(n)?);
        }
    }
    r.witnesses.push(Witness::scan(
        "2 sigma(E x O) + sigma(E x E) + sigma(O x O) = alpha^2",
        r.counterexample.is_none(),
        Some(0),
        json!({"sigma(E x E)": ee.prefix(6)?.iter().map(|v| v.to_string()).collect::<Vec<_>>()}),
    ));

    let rat_horizon = horizon.min(25);
    for trial in 0..trials {
        if trial % 5 == 4 {
            let (a, b) = (random_rat_set(&mut rng), random_rat_set(&mut rng));
            check_pair(&mut r, &mut t, &a, &b, rat_horizon, false)?;
        } else {
            let (a, b) = (random_nat_set(&mut rng), random_nat_set(&mut rng));
            check_pair(&mut r, &mut t, &a, &b, horizon, true)?;
        }
    }
    r.witnesses.push(Witness::scan(
        "random pairs",
        r.counterexample.is_none(),
        None,
        json!({
            "seed": seed,
            "pairs": t.pairs,
            "proper_subset_checks": t.pw,
            "discreteness_checks": t.discreteness,
            "rational_horizon": rat_horizon,
        }),
    ));
    Ok(r.timed(start))
}
