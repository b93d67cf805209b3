use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::envelope::{ceil_ratio, dominance_threshold, BoundTerm, GrowthEnvelope};
use super::periodic::{strict_sign_threshold, EventuallyPeriodic};
use super::{Certificate, LinearForm, Seq, SeqError};

/// Relations along the Fréchet filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `a_n = b_n` eventually
    Eq,
    /// `a_n < b_n` eventually
    Lt,
    /// `a_n ≤ b_n` eventually
    Le,
    /// `k·a_n < b_n` eventually, for every `k`
    MuchLess,
    /// each is eventually bounded by a multiple of the other
    SameOrder,
}

impl Relation {
    pub const ALL: [Relation; 5] = [Relation::Eq, Relation::Lt, Relation::Le, Relation::MuchLess, Relation::SameOrder];

    /// ASCII name used on the command line.
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=F",
            Relation::Lt => "<F",
            Relation::Le => "<=F",
            Relation::MuchLess => "<<F",
            Relation::SameOrder => "~F",
        }
    }

    pub fn parse(s: &str) -> Option<Relation> {
        Some(match s.trim() {
            "=F" | "=" | "==" | "eq" => Relation::Eq,
            "<F" | "<" | "lt" => Relation::Lt,
            "<=F" | "<=" | "le" => Relation::Le,
            "<<F" | "<<" | "much-less" => Relation::MuchLess,
            "~F" | "~" | "same-order" => Relation::SameOrder,
            _ => return None,
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Proved,
    Refuted,
    Undecided,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Proved => "proved",
            Outcome::Refuted => "refuted",
            Outcome::Undecided => "undecided",
        }
    }
}

/// Which certificate family settled the question.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// both sides are the same sequence object
    Identical,
    PeriodicDifference,
    ClosedForm,
    Envelope,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Identical => "identical",
            Method::PeriodicDifference => "periodic-difference",
            Method::ClosedForm => "closed-form",
            Method::Envelope => "envelope",
        }
    }
}

/// Multipliers witnessing `≈` (`lhs·a ≥ b` and `rhs·b ≥ a` eventually), or,
/// for a refuted `<<`, a `lhs` with `lhs·a ≥ b` infinitely often.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Multipliers {
    pub lhs: Option<u64>,
    pub rhs: Option<u64>,
}

/// Evidence from evaluating both sides on `1..=checked`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ScanSummary {
    pub checked: u64,
    /// indices at which the pointwise form of the relation holds
    pub holds: u64,
    pub last_failure: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub relation: Relation,
    pub outcome: Outcome,
    /// Proved `=`, `<`, `≤`: least `m` with the relation holding at every
    /// `n > m`. Refuted: an index where it fails (and it fails infinitely often).
    pub witness: Option<u64>,
    pub multipliers: Option<Multipliers>,
    pub method: Option<Method>,
    /// `(label, certificate)` pairs the decision relied on
    pub certificates: Vec<(String, Certificate)>,
    pub horizon: u64,
    pub scan: ScanSummary,
    pub note: Option<String>,
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        self.outcome == Outcome::Proved
    }
}

/// How far below a certified threshold the witness search may walk.
const WITNESS_SCAN_CAP: u64 = 2_000_000;
/// Largest multiplier tried when searching normal forms for `≈`.
const MULTIPLIER_SEARCH: u64 = 64;

enum Decision {
    /// the relation holds at every `n ≥ t`
    HoldsFrom(u64),
    /// fails at this index and at infinitely many others
    FailsAt(u64),
    MuchLess {
        proved: bool,
        k: Option<u64>,
    },
    SameOrder(Option<(u64, u64)>),
}

fn pointwise(rel: Relation, a: &BigUint, b: &BigUint, mult: Option<(u64, u64)>) -> bool {
    match rel {
        Relation::Eq => a == b,
        Relation::Lt | Relation::MuchLess => a < b,
        Relation::Le => a <= b,
        Relation::SameOrder => match mult {
            Some((k1, k2)) => a * k1 >= *b && b * k2 >= *a,
            None => a.is_zero() == b.is_zero(),
        },
    }
}

/// Decides `rel(a, b)` from the certificates of both sides, scanning
/// `1..=horizon` for evidence either way.
pub fn compare(rel: Relation, a: &Seq, b: &Seq, horizon: u64) -> Result<Verdict, SeqError> {
    let horizon = horizon.max(1);
    let (decision, method, certs) = if a.same_as(b) {
        let d = match rel {
            Relation::Eq | Relation::Le => Decision::HoldsFrom(1),
            Relation::Lt => Decision::FailsAt(1),
            Relation::MuchLess => Decision::MuchLess { proved: false, k: Some(1) },
            Relation::SameOrder => Decision::SameOrder(Some((1, 1))),
        };
        (Some(d), Some(Method::Identical), Vec::new())
    } else {
        decide(rel, a, b)
    };

    let mult = match &decision {
        Some(Decision::SameOrder(Some(m))) => Some(*m),
        _ => None,
    };
    let (pa, pb) = (a.prefix(horizon)?, b.prefix(horizon)?);
    let mut scan = ScanSummary { checked: horizon, ..Default::default() };
    for (i, (x, y)) in pa.iter().zip(&pb).enumerate() {
        if pointwise(rel, x, y, mult) {
            scan.holds += 1;
        } else {
            scan.last_failure = Some(i as u64 + 1);
        }
    }

    let mut verdict = Verdict {
        relation: rel,
        outcome: Outcome::Undecided,
        witness: None,
        multipliers: None,
        method: None,
        certificates: Vec::new(),
        horizon,
        scan,
        note: None,
    };
    let Some(decision) = decision else {
        return Ok(verdict);
    };
    verdict.method = method;
    verdict.certificates = certs;
    match decision {
        Decision::HoldsFrom(t) => {
            let m = witness_below(rel, a, b, t)?;
            if let Some(f) = verdict.scan.last_failure.filter(|&f| f > m) {
                return Ok(contradicted(verdict, f));
            }
            verdict.outcome = Outcome::Proved;
            verdict.witness = Some(m);
        }
        Decision::FailsAt(i) => {
            if !pointwise(rel, &a.value(i)?, &b.value(i)?, None) {
                verdict.outcome = Outcome::Refuted;
                verdict.witness = Some(i);
            } else {
                return Ok(contradicted(verdict, i));
            }
        }
        Decision::MuchLess { proved, k } => {
            verdict.outcome = if proved { Outcome::Proved } else { Outcome::Refuted };
            verdict.multipliers = k.map(|k| Multipliers { lhs: Some(k), rhs: None });
        }
        Decision::SameOrder(m) => match m {
            Some((k1, k2)) => {
                verdict.outcome = Outcome::Proved;
                verdict.multipliers = Some(Multipliers { lhs: Some(k1), rhs: Some(k2) });
            }
            None => verdict.outcome = Outcome::Refuted,
        },
    }
    Ok(verdict)
}

fn contradicted(mut v: Verdict, index: u64) -> Verdict {
    v.outcome = Outcome::Undecided;
    v.method = None;
    v.certificates.clear();
    v.note = Some(format!("certificate contradicted by direct evaluation at n = {index}"));
    v
}

/// Largest `n < t` where the relation fails, or 0.
fn witness_below(rel: Relation, a: &Seq, b: &Seq, t: u64) -> Result<u64, SeqError> {
    let floor = t.saturating_sub(WITNESS_SCAN_CAP);
    let mut n = t.saturating_sub(1);
    while n > floor {
        if !pointwise(rel, &a.value(n)?, &b.value(n)?, None) {
            return Ok(n);
        }
        n -= 1;
    }
    Ok(floor)
}

type Route = (Option<Decision>, Option<Method>, Vec<(String, Certificate)>);

fn decide(rel: Relation, a: &Seq, b: &Seq) -> Route {
    let (ca, cb) = (a.certificates(), b.certificates());
    if let (Some(pa), Some(pb)) = (&ca.periodic, &cb.periodic) {
        let d = periodic_route(rel, pa, pb);
        let certs = vec![
            (a.label().to_string(), Certificate::Periodic(pa.clone())),
            (b.label().to_string(), Certificate::Periodic(pb.clone())),
        ];
        return (Some(d), Some(Method::PeriodicDifference), certs);
    }
    if let (Some(fa), Some(fb)) = (&ca.closed_form, &cb.closed_form) {
        if let (Some((na, va)), Some((nb, vb))) = (fa.expr.normal_form(), fb.expr.normal_form()) {
            let from = va.max(vb).max(fa.valid_from).max(fb.valid_from);
            if let Some(d) = normal_form_route(rel, &na, &nb, from) {
                let certs = vec![
                    (a.label().to_string(), Certificate::ClosedForm(fa.clone())),
                    (b.label().to_string(), Certificate::ClosedForm(fb.clone())),
                ];
                return (Some(d), Some(Method::ClosedForm), certs);
            }
        }
    }
    let za = ca.eventually_zero() == Some(true);
    let zb = cb.eventually_zero() == Some(true);
    if let Some(d) = envelope_route(rel, ca.envelope.as_ref(), cb.envelope.as_ref(), za, zb) {
        let mut certs = Vec::new();
        for (s, e) in [(a, &ca.envelope), (b, &cb.envelope)] {
            if let Some(e) = e {
                certs.push((s.label().to_string(), Certificate::Envelope(e.clone())));
            }
        }
        return (Some(d), Some(Method::Envelope), certs);
    }
    (None, None, Vec::new())
}

// ---------------------------------------------------------------------------
// periodic first differences

fn order_from_difference(rel: Relation, d: &EventuallyPeriodic) -> Decision {
    let s = d.period_sum();
    let ok = |v: &BigInt| match rel {
        Relation::Eq => v.is_zero(),
        Relation::Lt => v.is_negative(),
        _ => !v.is_positive(),
    };
    if s.is_zero() {
        let start = d.preperiod() + 1;
        match d.tail_values().iter().position(|v| !ok(v)) {
            None => Decision::HoldsFrom(start),
            Some(i) => Decision::FailsAt(start + i as u64),
        }
    } else if s.is_positive() {
        Decision::FailsAt(strict_sign_threshold(d, true))
    } else {
        let t = strict_sign_threshold(d, false);
        if rel == Relation::Eq {
            Decision::FailsAt(t)
        } else {
            Decision::HoldsFrom(t)
        }
    }
}

fn slope(p: &EventuallyPeriodic) -> BigRational {
    BigRational::new(p.period_sum(), BigInt::from(p.period()))
}

fn eventually_nonneg(d: &EventuallyPeriodic) -> bool {
    let s = d.period_sum();
    s.is_positive() || (s.is_zero() && d.tail_values().iter().all(|v| !v.is_negative()))
}

/// Least `k ≥ 1` with `k·a ≥ b` eventually.
fn least_multiplier(a: &EventuallyPeriodic, b: &EventuallyPeriodic) -> Option<u64> {
    let (sa, sb) = (slope(a), slope(b));
    let works = |k: u64| eventually_nonneg(&a.scale(&BigInt::from(k)).sub(b));
    if sa.is_positive() {
        let k0 = (&sb / &sa).ceil().to_integer().to_u64()?.max(1);
        return Some(if works(k0) { k0 } else { k0 + 1 });
    }
    if sb.is_positive() {
        return None;
    }
    // Both bounded: compare residue by residue on a common period.
    let d = a.sub(b);
    let (aa, bb) = (a.rebase(d.preperiod(), d.period()), b.rebase(d.preperiod(), d.period()));
    let mut k = 1u64;
    for (x, y) in aa.tail_values().iter().zip(bb.tail_values()) {
        if y.is_positive() {
            if !x.is_positive() {
                return None;
            }
            let need = (BigRational::new(y.clone(), x.clone())).ceil().to_integer().to_u64()?;
            k = k.max(need);
        }
    }
    Some(k)
}

fn periodic_route(rel: Relation, a: &EventuallyPeriodic, b: &EventuallyPeriodic) -> Decision {
    match rel {
        Relation::Eq | Relation::Lt | Relation::Le => order_from_difference(rel, &a.sub(b)),
        Relation::MuchLess => {
            let (sa, sb) = (slope(a), slope(b));
            let a_zero = sa.is_zero() && a.tail_values().iter().all(Zero::is_zero);
            if a_zero {
                let b_pos = sb.is_positive() || b.tail_values().iter().all(Signed::is_positive);
                return Decision::MuchLess { proved: b_pos, k: (!b_pos).then_some(1) };
            }
            if sa.is_zero() && sb.is_positive() {
                return Decision::MuchLess { proved: true, k: None };
            }
            Decision::MuchLess { proved: false, k: least_multiplier(a, b) }
        }
        Relation::SameOrder => Decision::SameOrder(least_multiplier(a, b).zip(least_multiplier(b, a))),
    }
}

// ---------------------------------------------------------------------------
// closed-form normal forms

fn normal_form_route(rel: Relation, a: &LinearForm, b: &LinearForm, from: u64) -> Option<Decision> {
    let sign_of = |f: &LinearForm| f.eventual_sign(from);
    match rel {
        Relation::Eq | Relation::Lt | Relation::Le => {
            let (s, t) = sign_of(&a.sub(b))?;
            let holds = match rel {
                Relation::Eq => s == Ordering::Equal,
                Relation::Lt => s == Ordering::Less,
                _ => s != Ordering::Greater,
            };
            // A failing constant sign fails at every n ≥ t.
            Some(if holds { Decision::HoldsFrom(t) } else { Decision::FailsAt(t) })
        }
        Relation::MuchLess => {
            if a.is_zero() {
                let (s, _) = sign_of(b)?;
                let proved = s == Ordering::Greater;
                return Some(Decision::MuchLess { proved, k: (!proved).then_some(1) });
            }
            if let (Some(pa), Some(pb)) = (a.as_polynomial(), b.as_polynomial()) {
                if pa.len() < pb.len() {
                    return Some(Decision::MuchLess { proved: true, k: None });
                }
            }
            let k = least_form_multiplier(a, b, from)?;
            Some(Decision::MuchLess { proved: false, k: Some(k) })
        }
        Relation::SameOrder => {
            if let (Some(pa), Some(pb)) = (a.as_polynomial(), b.as_polynomial()) {
                if pa.len() != pb.len() {
                    return Some(Decision::SameOrder(None));
                }
            }
            let k1 = least_form_multiplier(a, b, from)?;
            let k2 = least_form_multiplier(b, a, from)?;
            Some(Decision::SameOrder(Some((k1, k2))))
        }
    }
}

/// Least `k ≤ MULTIPLIER_SEARCH` with `k·a − b` eventually non-negative.
fn least_form_multiplier(a: &LinearForm, b: &LinearForm, from: u64) -> Option<u64> {
    (1..=MULTIPLIER_SEARCH).find_map(|k| {
        let d = a.scale(&BigRational::from_integer(k.into())).sub(b);
        match d.eventual_sign(from) {
            Some((s, _)) if s != Ordering::Less => Some(Some(k)),
            Some(_) => None,
            None => Some(None),
        }
    })?
}

// ---------------------------------------------------------------------------
// growth envelopes

/// `upper(x)` eventually strictly below `lower(y)`: the threshold.
fn separated(x: &GrowthEnvelope, y: &GrowthEnvelope) -> Option<u64> {
    let ly = y.lower.as_ref()?;
    dominance_threshold(&x.upper, ly, x.valid_from.max(y.valid_from))
}

fn envelope_route(
    rel: Relation,
    a: Option<&GrowthEnvelope>,
    b: Option<&GrowthEnvelope>,
    a_zero: bool,
    b_zero: bool,
) -> Option<Decision> {
    match rel {
        Relation::Eq | Relation::Lt | Relation::Le => {
            let (a, b) = (a?, b?);
            if let Some(t) = separated(a, b) {
                return Some(if rel == Relation::Eq { Decision::FailsAt(t) } else { Decision::HoldsFrom(t) });
            }
            separated(b, a).map(Decision::FailsAt)
        }
        Relation::MuchLess => {
            let b = b?;
            let lb = b.lower.as_ref()?;
            if a_zero {
                return Some(Decision::MuchLess { proved: true, k: None });
            }
            let a = a?;
            if a.upper.class() < lb.class() {
                return Some(Decision::MuchLess { proved: true, k: None });
            }
            let la = a.lower.as_ref()?;
            (la.class() >= b.upper.class()).then(|| Decision::MuchLess { proved: false, k: Some(cover(la, &b.upper)) })
        }
        Relation::SameOrder => {
            if a_zero && b_zero {
                return Some(Decision::SameOrder(Some((1, 1))));
            }
            let (a, b) = (a?, b?);
            let (la, lb) = (a.lower.as_ref(), b.lower.as_ref());
            let disjoint =
                lb.is_some_and(|l| a.upper.class() < l.class()) || la.is_some_and(|l| b.upper.class() < l.class());
            if disjoint {
                return Some(Decision::SameOrder(None));
            }
            let (la, lb) = (la?, lb?);
            if la.class() >= b.upper.class() && lb.class() >= a.upper.class() {
                return Some(Decision::SameOrder(Some((cover(la, &b.upper), cover(lb, &a.upper)))));
            }
            None
        }
    }
}

/// A `k` with `k·low ≥ up` eventually, for `class(low) ≥ class(up)`.
fn cover(low: &BoundTerm, up: &BoundTerm) -> u64 {
    if low.class() > up.class() {
        1
    } else {
        ceil_ratio(&up.coef, &low.coef)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::FnSpec;
    use crate::seq::{add, scalar_mul, Certificates, ClosedForm};
    use num_traits::One;

    fn set_seq(label: &str, members: &'static [u64]) -> Seq {
        // σ of a finite subset of ℕ, certified as eventually constant.
        let m = members;
        let s = Seq::from_fn(label, move |n| BigUint::from(m.iter().filter(|&&x| x <= n).count()));
        let last = *m.iter().max().unwrap();
        let p = EventuallyPeriodic::new(last, BigInt::from(m.len()), vec![BigInt::zero()]);
        s.with_certificates(Certificates::from_periodic(p))
    }

    fn floor_div(k: u64) -> Seq {
        Seq::from_closed_form(format!("floor(n/{k})"), ClosedForm::FloorDiv(k))
    }

    fn odds() -> Seq {
        Seq::from_fn("O", |n| BigUint::from(n.div_ceil(2))).with_certificates(Certificates::from_periodic(
            EventuallyPeriodic::new(0, BigInt::zero(), vec![BigInt::one(), BigInt::zero()]),
        ))
    }

    #[test]
    fn finite_sets_agree_eventually() {
        let v = compare(Relation::Eq, &set_seq("{1,2}", &[1, 2]), &set_seq("{3,4}", &[3, 4]), 100).unwrap();
        assert_eq!(v.outcome, Outcome::Proved);
        // differ at n = 1, 2, 3; equal from 4 on
        assert_eq!(v.witness, Some(3));
        let a = Seq::alpha();
        let v = compare(Relation::Eq, &a, &a, 10).unwrap();
        assert_eq!((v.outcome, v.witness), (Outcome::Proved, Some(0)));
    }

    #[test]
    fn evens_and_odds_are_only_weakly_ordered() {
        let (e, o) = (floor_div(2), odds());
        assert_eq!(compare(Relation::Eq, &e, &o, 100).unwrap().outcome, Outcome::Refuted);
        assert_eq!(compare(Relation::Lt, &e, &o, 100).unwrap().outcome, Outcome::Refuted);
        let le = compare(Relation::Le, &e, &o, 100).unwrap();
        assert_eq!((le.outcome, le.witness), (Outcome::Proved, Some(0)));
        let o_le = compare(Relation::Le, &o, &add(&e, &Seq::one()), 100).unwrap();
        assert_eq!(o_le.outcome, Outcome::Proved);
        assert_eq!(compare(Relation::Le, &o, &e, 100).unwrap().outcome, Outcome::Refuted);
    }

    #[test]
    fn ordering_chain() {
        let squares = Seq::from_closed_form("S", ClosedForm::FloorInverse(FnSpec::power(2)));
        let primes = Seq::from_closed_form("P", ClosedForm::PrimePi { include_one: false });
        let v = compare(Relation::MuchLess, &squares, &primes, 1000).unwrap();
        assert_eq!((v.outcome, v.method), (Outcome::Proved, Some(Method::Envelope)));
        for k in [2, 3, 10] {
            let m = floor_div(k);
            assert!(compare(Relation::MuchLess, &primes, &m, 1000).unwrap().is_proved());
            let v = compare(Relation::SameOrder, &m, &Seq::alpha(), 1000).unwrap();
            assert!(v.is_proved());
            assert_eq!(v.multipliers, Some(Multipliers { lhs: Some(k + 1), rhs: Some(1) }));
        }
        assert_eq!(compare(Relation::MuchLess, &primes, &squares, 100).unwrap().outcome, Outcome::Refuted);
    }

    #[test]
    fn non_archimedean() {
        let a = Seq::alpha();
        let a2 = crate::seq::mul(&a, &a);
        assert!(compare(Relation::MuchLess, &a, &a2, 100).unwrap().is_proved());
        for k in [1u64, 7, 100] {
            let v = compare(Relation::MuchLess, &Seq::constant(k), &a, 100).unwrap();
            assert!(v.is_proved(), "k = {k}");
        }
        let v = compare(Relation::MuchLess, &a, &scalar_mul(5, &a), 100).unwrap();
        assert_eq!(v.outcome, Outcome::Refuted);
        assert_eq!(v.multipliers.unwrap().lhs, Some(5));
    }

    #[test]
    fn uncertified_pairs_stay_undecided() {
        let x = Seq::from_fn("x", |n| BigUint::from(n % 7));
        let y = Seq::from_fn("y", |n| BigUint::from(n % 5));
        let v = compare(Relation::Eq, &x, &y, 50).unwrap();
        assert_eq!(v.outcome, Outcome::Undecided);
        assert!(v.certificates.is_empty());
        assert_eq!(v.scan.checked, 50);
        assert!(v.scan.last_failure.is_some());
    }

    #[test]
    fn normal_forms_decide_nonpolynomial_differences() {
        let phi = Seq::from_closed_form("phi", ClosedForm::TotientSum);
        let unit = Seq::from_closed_form(
            "J",
            ClosedForm::FareyCount { lo: num_rational::Ratio::new(7, 3), hi: num_rational::Ratio::new(10, 3) },
        );
        let v = compare(Relation::Eq, &phi, &unit, 200).unwrap();
        assert_eq!((v.outcome, v.method), (Outcome::Proved, Some(Method::ClosedForm)));
        let half = Seq::from_closed_form(
            "half",
            ClosedForm::FareyCount { lo: num_rational::Ratio::new(0, 1), hi: num_rational::Ratio::new(1, 2) },
        );
        let v = compare(Relation::Eq, &phi, &half, 200).unwrap();
        assert_eq!(v.outcome, Outcome::Refuted);
        let v = compare(Relation::SameOrder, &half, &phi, 200).unwrap();
        assert_eq!(v.multipliers, Some(Multipliers { lhs: Some(2), rhs: Some(1) }));
    }
}
