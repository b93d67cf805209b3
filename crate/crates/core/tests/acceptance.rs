//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria whose literal statement is false are still run and reported as
//! FAIL; they are listed in `KNOWN_FALSE` so the process exit code only
//! reflects regressions elsewhere.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Ratio;
use sizecalc_core::seq::{compare, Relation, Seq};
use sizecalc_core::set::CountableSet;
use sizecalc_core::verifier::{self, Status};

type Check = Result<String, String>;

/// criterion, reason
const KNOWN_FALSE: [(u32, &str); 1] = [(5, "2 Phi(n) < n^2 - n is false at n = 3, 4, 5")];

// independent oracles ----------------------------------------------------

fn sieve(limit: usize) -> Vec<bool> {
    let mut p = vec![true; limit + 1];
    p[0] = false;
    if limit >= 1 {
        p[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if p[i] {
            for j in (i * i..=limit).step_by(i) {
                p[j] = false;
            }
        }
        i += 1;
    }
    p
}

fn isqrt(n: u64) -> u64 {
    let mut r = 0;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// φ by the product formula over a sieve.
fn totients(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for i in 2..=limit {
        if phi[i] == i as u64 {
            for j in (i..=limit).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

fn values(s: &Seq, len: u64) -> Vec<u64> {
    s.prefix(len).unwrap().iter().map(|v| u64::try_from(v).unwrap()).collect()
}

// criteria ---------------------------------------------------------------

fn golden_prefixes() -> Check {
    let n = CountableSet::naturals();
    let i = CountableSet::unit_interval();
    let qp = CountableSet::positive_rationals();
    let (e, o) = (CountableSet::evens(), CountableSet::odds());
    let chi =
        |s: &CountableSet, len: u64| (1..=len).map(|k| u64::try_from(s.chi(k).unwrap()).unwrap()).collect::<Vec<_>>();
    let cases: Vec<(&str, Vec<u64>, Vec<u64>)> = vec![
        ("sigma(N)", values(&n.size_seq(), 4), vec![1, 2, 3, 4]),
        ("chi(I)", chi(&i, 8), vec![1, 1, 2, 2, 4, 2, 6, 4]),
        ("sigma(I)", values(&i.size_seq(), 9), vec![1, 2, 4, 6, 10, 12, 18, 22, 28]),
        ("chi(Q+)", chi(&qp, 5), vec![2, 4, 10, 14, 30]),
        ("sigma(Q+)", values(&qp.size_seq(), 5), vec![2, 6, 16, 30, 60]),
        ("sigma(N x N)", values(&CountableSet::cartesian(&n, &n).size_seq(), 5), vec![1, 4, 9, 16, 25]),
        ("sigma(E)", values(&e.size_seq(), 7), vec![0, 1, 1, 2, 2, 3, 3]),
        ("sigma(O)", values(&o.size_seq(), 6), vec![1, 1, 2, 2, 3, 3]),
        ("sigma({1,2})", values(&CountableSet::finite_nat(&[1, 2]).unwrap().size_seq(), 4), vec![1, 2, 2, 2]),
        ("sigma({3,4})", values(&CountableSet::finite_nat(&[3, 4]).unwrap().size_seq(), 5), vec![0, 0, 1, 2, 2]),
        ("sigma(E x O)", values(&CountableSet::cartesian(&e, &o).size_seq(), 6), vec![0, 1, 2, 4, 6, 9]),
        ("sigma(E x E)", values(&CountableSet::cartesian(&e, &e).size_seq(), 6), vec![0, 1, 1, 4, 4, 9]),
        ("sigma(O x O)", values(&CountableSet::cartesian(&o, &o).size_seq(), 6), vec![1, 1, 4, 4, 9, 9]),
    ];
    for (name, got, want) in &cases {
        if got != want {
            return Err(format!("{name}: got {got:?}, want {want:?}"));
        }
    }
    Ok(format!("{} prefixes exact", cases.len()))
}

fn enumerated_sigma(s: &CountableSet, limit: u64) -> Vec<u64> {
    let mut total = 0;
    (1..=limit)
        .map(|n| {
            total += s.component(n).unwrap().len() as u64;
            total
        })
        .collect()
}

fn closed_form_oracles() -> Check {
    const N: u64 = 10_000;
    let primes = sieve(N as usize);
    let sq = enumerated_sigma(&CountableSet::squares(), N);
    let p = enumerated_sigma(&CountableSet::primes(false), N);
    let mut pi = 0;
    for n in 1..=N {
        pi += u64::from(primes[n as usize]);
        if sq[n as usize - 1] != isqrt(n) {
            return Err(format!("sigma_{n}(S) = {} != {}", sq[n as usize - 1], isqrt(n)));
        }
        if p[n as usize - 1] != pi {
            return Err(format!("sigma_{n}(P) = {} != {pi}", p[n as usize - 1]));
        }
    }
    for k in 1..=50 {
        let m = enumerated_sigma(&CountableSet::multiples(k), N);
        if let Some(n) = (1..=N).find(|&n| m[n as usize - 1] != n / k) {
            return Err(format!("sigma_{n}(M{k}) = {} != {}", m[n as usize - 1], n / k));
        }
    }
    Ok(format!("S, P, M1..M50 match on n <= {N}"))
}

fn frechet_chain() -> Check {
    let s = CountableSet::squares().size_seq();
    let p = CountableSet::primes(false).size_seq();
    let mut out = Vec::new();
    for k in [2, 3, 10] {
        let m = CountableSet::multiples(k).size_seq();
        for (name, rel, a, b) in [
            ("S <<F P", Relation::MuchLess, &s, &p),
            ("P <<F M", Relation::MuchLess, &p, &m),
            ("M ~F alpha", Relation::SameOrder, &m, &Seq::alpha()),
        ] {
            let v = compare(rel, a, b, 1000).unwrap();
            if !v.is_proved() || v.certificates.is_empty() {
                return Err(format!("k = {k}, {name}: {} ({:?})", v.outcome.as_str(), v.note));
            }
            if k == 2 {
                out.push(format!("{name} by {}", v.method.map_or("?", |m| m.as_str())));
            }
        }
    }
    Ok(out.join(", "))
}

fn multiples_bound() -> Check {
    const N: u64 = 100_000;
    for k in 1..=100u64 {
        // one set at a time keeps the memo small
        let s = CountableSet::multiples(k).size_seq();
        for (i, v) in s.prefix(N).unwrap().iter().enumerate() {
            let n = i as u64 + 1;
            let ks = u64::try_from(v).unwrap() * k;
            if ks > n || n > ks + k {
                return Err(format!("k = {k}, n = {n}: k*sigma = {ks}"));
            }
        }
    }
    Ok(format!("k <= 100, n <= {N}, zero violations"))
}

fn unit_interval_bounds() -> Check {
    const N: u64 = 10_000;
    let phi_oracle = totients(100_000);
    let sigma = CountableSet::unit_interval().size_seq();
    let got = values(&sigma, N);
    let mut total = 0u64;
    let mut lower_bad = Vec::new();
    let mut upper_bad = Vec::new();
    for n in 1..=N {
        total += phi_oracle[n as usize];
        let big = got[n as usize - 1];
        if big != total {
            return Err(format!("Phi({n}) = {big}, oracle {total}"));
        }
        if n >= 3 {
            if 3 * n * n >= 10 * big {
                lower_bad.push(n);
            }
            if 2 * big >= n * n - n {
                upper_bad.push(n);
            }
        }
    }
    let phi_big: u64 = phi_oracle[1..].iter().sum();
    let at = sigma.value(100_000).unwrap();
    if at != BigUint::from(phi_big) {
        return Err(format!("Phi(10^5) = {at}, oracle {phi_big}"));
    }
    // 0.30 < Phi/10^10 < 0.31
    let ratio_ok = BigUint::from(3_000_000_000u64) < at && at < BigUint::from(3_100_000_000u64);
    let detail = format!("Phi(10^5) = {at}, ratio check {}", if ratio_ok { "ok" } else { "failed" });
    if lower_bad.is_empty() && upper_bad.is_empty() && ratio_ok {
        Ok(detail)
    } else {
        Err(format!("lower bound fails at {lower_bad:?}; upper bound fails at {upper_bad:?}; {detail}"))
    }
}

fn rationals_structure() -> Check {
    const N: u64 = 200;
    let phi = totients(N as usize);
    let qp = enumerated_sigma(&CountableSet::positive_rationals(), N);
    let q = enumerated_sigma(&CountableSet::rationals(), N);
    let mut big_phi = 0;
    for n in 1..=N {
        big_phi += phi[n as usize];
        let i = n as usize - 1;
        if qp[i] != (n + 1) * big_phi {
            return Err(format!("sigma_{n}(Q+) = {} != {}", qp[i], (n + 1) * big_phi));
        }
        if q[i] != 2 * qp[i] + 1 {
            return Err(format!("sigma_{n}(Q) = {} != {}", q[i], 2 * qp[i] + 1));
        }
    }
    Ok(format!("n <= {N}, sigma_{N}(Q) = {}", q[N as usize - 1]))
}

fn homogeneity() -> Check {
    let r = |n, d| Ratio::new(n, d);
    let mut indices = Vec::new();
    for (len, starts) in
        [(r(1, 1), vec![r(0, 1), r(1, 1), r(3, 1), r(1, 2), r(7, 3)]), (r(1, 2), vec![r(0, 1), r(1, 2), r(2, 1)])]
    {
        let rep = verifier::verify_homogeneity(len, &starts, 1000).unwrap();
        if rep.status != Status::Pass {
            return Err(format!("length {len}: {}", rep.to_json()));
        }
        indices.extend(rep.witnesses.iter().map(|w| w.m.unwrap_or(0)));
    }
    let neg = verifier::verify_noncanonical_homogeneity(1000).unwrap();
    if neg.status != Status::Pass {
        return Err(format!("coprime-pair encoding did not fail as expected: {}", neg.to_json()));
    }
    Ok(format!("stabilization indices {indices:?}; coprime-pair encoding refuted"))
}

fn algebraic_laws() -> Check {
    let rep = verifier::verify_union_product_laws(200, 500, 2024).unwrap();
    let stats = &rep.witnesses.last().unwrap().detail;
    if rep.status == Status::Pass {
        Ok(format!(
            "{} pairs, {} proper-subset and {} discreteness checks",
            stats["pairs"], stats["proper_subset_checks"], stats["discreteness_checks"]
        ))
    } else {
        Err(format!("{:?}", rep.counterexample))
    }
}

fn partial_order() -> Check {
    let e = CountableSet::evens().size_seq();
    let o = CountableSet::odds().size_seq();
    let eq = compare(Relation::Eq, &e, &o, 1000).unwrap();
    let lt = compare(Relation::Lt, &e, &o, 1000).unwrap();
    let le = compare(Relation::Le, &e, &o, 1000).unwrap();
    let back = compare(Relation::Le, &o, &sizecalc_core::seq::add(&e, &Seq::one()), 1000).unwrap();
    let got = [eq.outcome, lt.outcome, le.outcome, back.outcome].map(|x| x.as_str());
    if got == ["refuted", "refuted", "proved", "proved"] {
        Ok("=F refuted, <F refuted, E <=F O and O <=F E + 1 proved".into())
    } else {
        Err(format!("outcomes {got:?}"))
    }
}

fn pi_bounds() -> Check {
    let scan = verifier::pi_bound_exceptions(1_000_000, false);
    if scan.lower.is_empty() && scan.undecided.is_empty() && scan.upper == [113] {
        Ok("17 <= n <= 10^6, only exception n = 113 (upper bound)".into())
    } else {
        Err(format!("lower {:?}, upper {:?}, undecided {:?}", scan.lower, scan.upper, scan.undecided))
    }
}

/// number, name, check, time budget in seconds
type Criterion = (u32, &'static str, fn() -> Check, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "golden prefixes", golden_prefixes, 1),
        (2, "closed-form oracle equivalence", closed_form_oracles, 10),
        (3, "Frechet chain", frechet_chain, 1),
        (4, "multiples bound", multiples_bound, 10),
        (5, "unit-interval bounds", unit_interval_bounds, 30),
        (6, "rationals structure", rationals_structure, 30),
        (7, "homogeneity", homogeneity, 60),
        (8, "algebraic property suites", algebraic_laws, 60),
        (9, "partial-order honesty", partial_order, 1),
        (10, "pi bound certificate", pi_bounds, 60),
    ];
    let mut regressions = 0;
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = match result {
            Ok(d) if took > Duration::from_secs(budget) => Err(format!("{d}; over the {budget} s budget")),
            other => other,
        };
        let ms = took.as_millis();
        match result {
            Ok(detail) => println!("PASS criterion {id:>2} {name} ({ms} ms): {detail}"),
            Err(why) => {
                let known = KNOWN_FALSE.iter().find(|(k, _)| *k == id);
                match known {
                    Some((_, reason)) => println!("FAIL criterion {id:>2} {name} ({ms} ms): {why} [known: {reason}]"),
                    None => {
                        regressions += 1;
                        println!("FAIL criterion {id:>2} {name} ({ms} ms): {why}");
                    }
                }
            }
        }
    }
    if regressions == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
