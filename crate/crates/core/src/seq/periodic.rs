use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Sequence whose first differences are periodic after a finite preperiod.
///
/// With `P = preperiod` and `L = differences.len()`, the certified values are
/// `v(P) = anchor` and `v(n) = v(n-1) + differences[(n - P - 1) mod L]` for
/// `n > P`. Index 0 denotes the empty prefix, so `v(0) = 0` whenever `P = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodic {
    preperiod: u64,
    anchor: BigInt,
    differences: Vec<BigInt>,
}

impl EventuallyPeriodic {
    pub fn new(preperiod: u64, anchor: BigInt, differences: Vec<BigInt>) -> Self {
        assert!(!differences.is_empty(), "period must be at least 1");
        if preperiod == 0 {
            assert!(anchor.is_zero(), "v(0) is the empty sum");
        }
        EventuallyPeriodic { preperiod, anchor, differences }
    }

    /// The constant sequence `(c)_n`.
    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::new(0, c, vec![BigInt::zero()])
        } else {
            Self::new(1, c, vec![BigInt::zero()])
        }
    }

    /// `(slope · n)_n`.
    pub fn linear(slope: BigInt) -> Self {
        Self::new(0, BigInt::zero(), vec![slope])
    }

    pub fn preperiod(&self) -> u64 {
        self.preperiod
    }

    pub fn period(&self) -> u64 {
        self.differences.len() as u64
    }

    pub fn anchor(&self) -> &BigInt {
        &self.anchor
    }

    pub fn differences(&self) -> &[BigInt] {
        &self.differences
    }

    /// Growth per period; the asymptotic slope is `period_sum / period`.
    pub fn period_sum(&self) -> BigInt {
        self.differences.iter().sum()
    }

    /// Certified value at `n`; `None` inside the preperiod.
    pub fn value_at(&self, n: u64) -> Option<BigInt> {
        if n < self.preperiod {
            return None;
        }
        let steps = n - self.preperiod;
        let (q, r) = steps.div_rem(&self.period());
        let partial: BigInt = self.differences[..r as usize].iter().sum();
        Some(&self.anchor + self.period_sum() * BigInt::from(q) + partial)
    }

    /// Values at `P+1 ..= P+L`, one per residue class.
    pub fn tail_values(&self) -> Vec<BigInt> {
        let mut v = self.anchor.clone();
        self.differences
            .iter()
            .map(|d| {
                v += d;
                v.clone()
            })
            .collect()
    }

    /// `Some(c)` when the certified tail is constant.
    pub fn eventual_constant(&self) -> Option<BigInt> {
        self.differences.iter().all(Zero::is_zero).then(|| self.anchor.clone())
    }

    /// Same certified values, restated with a later start and a multiple of
    /// the period.
    pub fn rebase(&self, preperiod: u64, period: u64) -> Self {
        assert!(preperiod >= self.preperiod);
        assert!(period.is_multiple_of(self.period()));
        let anchor = self.value_at(preperiod).expect("start inside certified range");
        let offset = preperiod - self.preperiod;
        let l = self.period();
        let differences = (0..period).map(|i| self.differences[((offset + i) % l) as usize].clone()).collect();
        EventuallyPeriodic { preperiod, anchor, differences }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let start = self.preperiod.max(other.preperiod);
        let period = self.period().lcm(&other.period());
        (self.rebase(start, period), other.rebase(start, period))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let (a, b) = self.aligned(other);
        let differences = a.differences.iter().zip(&b.differences).map(|(x, y)| f(x, y)).collect();
        EventuallyPeriodic { preperiod: a.preperiod, anchor: f(&a.anchor, &b.anchor), differences }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        EventuallyPeriodic {
            preperiod: self.preperiod,
            anchor: &self.anchor * k,
            differences: self.differences.iter().map(|d| d * k).collect(),
        }
    }

    /// Product, available when one factor is eventually constant.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        let (a, b) = self.aligned(other);
        if let Some(c) = a.eventual_constant() {
            Some(b.scale(&c))
        } else {
            b.eventual_constant().map(|c| a.scale(&c))
        }
    }

    /// Componentwise minimum (or maximum when `max` is set).
    ///
    /// Exact whenever the two tails are comparable: equal slopes give a
    /// periodic difference, unequal slopes cross once and for all.
    pub fn extremum(&self, other: &Self, max: bool) -> Self {
        let (a, b) = self.aligned(other);
        let d = a.sub(&b);
        let s = d.period_sum();
        if s.is_zero() {
            // min(a, b)(n) = a(n) - max(0, d(n)); both terms periodic beyond P.
            let start = a.preperiod + 1;
            let l = a.period();
            let value = |n: u64| {
                let av = a.value_at(n).unwrap();
                let bv = b.value_at(n).unwrap();
                if (av <= bv) != max {
                    av
                } else {
                    bv
                }
            };
            let anchor = value(start);
            let mut prev = anchor.clone();
            let differences = (1..=l)
                .map(|i| {
                    let v = value(start + i);
                    let diff = &v - &prev;
                    prev = v;
                    diff
                })
                .collect();
            return EventuallyPeriodic { preperiod: start, anchor, differences };
        }
        // d -> +inf when s > 0: from the crossing on, a > b.
        let positive = s.is_positive();
        let crossing = strict_sign_threshold(&d, positive);
        let pick_a = positive == max;
        let chosen = if pick_a { &a } else { &b };
        chosen.rebase(crossing.max(chosen.preperiod), chosen.period())
    }
}

/// For a certificate whose tail drifts (`period_sum != 0`), the least index
/// `T > P` such that every `n ≥ T` has `v(n) > 0` (if `positive`) or
/// `v(n) < 0` (otherwise).
pub(crate) fn strict_sign_threshold(d: &EventuallyPeriodic, positive: bool) -> u64 {
    let s = d.period_sum();
    assert!(!s.is_zero());
    assert_eq!(s.is_positive(), positive, "drift direction mismatch");
    let l = d.period();
    let s_abs = s.abs();
    let mut last_fail: Option<u64> = None;
    for (i, v) in d.tail_values().into_iter().enumerate() {
        // Along residue r the values are v + q·s.
        let v = if positive { v } else { -v };
        if v.is_positive() {
            continue;
        }
        let q_last: BigInt = (-v).div_floor(&s_abs);
        let q_last = u64::try_from(&q_last).expect("threshold exceeds u64");
        let idx = d.preperiod + 1 + i as u64 + q_last * l;
        last_fail = Some(last_fail.map_or(idx, |x| x.max(idx)));
    }
    last_fail.map_or(d.preperiod + 1, |x| x + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn evens() -> EventuallyPeriodic {
        // σ(E) = (0,1,1,2,2,…)
        EventuallyPeriodic::new(0, bi(0), vec![bi(0), bi(1)])
    }

    fn odds() -> EventuallyPeriodic {
        EventuallyPeriodic::new(0, bi(0), vec![bi(1), bi(0)])
    }

    #[test]
    fn values_follow_the_recurrence() {
        let e = evens();
        let v: Vec<BigInt> = (1..=7).map(|n| e.value_at(n).unwrap()).collect();
        assert_eq!(v, [0, 1, 1, 2, 2, 3, 3].map(bi));
        let sum = e.add(&odds());
        assert_eq!(sum.value_at(10), Some(bi(10)));
        assert_eq!(sum.eventual_constant(), None);
        let r = e.rebase(5, 4);
        for n in 5..40 {
            assert_eq!(r.value_at(n), e.value_at(n));
        }
    }

    #[test]
    fn extremum_matches_pointwise() {
        let a = EventuallyPeriodic::new(2, bi(7), vec![bi(0), bi(3), bi(0)]);
        let b = EventuallyPeriodic::new(0, bi(0), vec![bi(2)]);
        let c = EventuallyPeriodic::new(1, bi(5), vec![bi(1), bi(1)]);
        for (x, y) in [(&a, &b), (&b, &c), (&a, &c), (&evens(), &odds())] {
            let lo = x.extremum(y, false);
            let hi = x.extremum(y, true);
            for n in lo.preperiod()..200 {
                let (xv, yv) = (x.value_at(n).unwrap(), y.value_at(n).unwrap());
                assert_eq!(lo.value_at(n).unwrap(), xv.clone().min(yv.clone()), "min at {n}");
            }
            for n in hi.preperiod()..200 {
                let (xv, yv) = (x.value_at(n).unwrap(), y.value_at(n).unwrap());
                assert_eq!(hi.value_at(n).unwrap(), xv.max(yv), "max at {n}");
            }
        }
    }

    #[test]
    fn sign_threshold_is_tight() {
        // v(n) = n - 10 over period 1: positive from 11 on.
        let d = EventuallyPeriodic::new(0, bi(0), vec![bi(1)]).sub(&EventuallyPeriodic::constant(bi(10)));
        assert_eq!(strict_sign_threshold(&d, true), 11);
        let neg = d.scale(&bi(-1));
        assert_eq!(strict_sign_threshold(&neg, false), 11);
    }

    #[test]
    fn product_with_constant() {
        let three = EventuallyPeriodic::constant(bi(3));
        let p = evens().mul(&three).unwrap();
        assert_eq!(p.value_at(9), Some(bi(12)));
        assert!(evens().mul(&odds()).is_none());
    }
}
