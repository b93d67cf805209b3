use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::numtheory::{ln_enclosure, LnInterval};

/// Exponent of `n`; rational so that `⌊√n⌋` has an exact envelope.
pub type Degree = Ratio<i64>;

/// `coef · n^degree · (ln n)^log_exp` with `coef > 0`, `degree ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTerm {
    pub coef: BigRational,
    pub degree: Degree,
    pub log_exp: i32,
}

/// Growth class `(d, e)`, ordered lexicographically.
pub type GrowthClass = (Degree, i32);

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl BoundTerm {
    pub fn new(coef: BigRational, degree: Degree, log_exp: i32) -> Self {
        assert!(coef.is_positive(), "envelope coefficients are positive");
        assert!(!degree.is_negative(), "envelope degrees are non-negative");
        BoundTerm { coef, degree, log_exp }
    }

    /// Shorthand for `(num/den) · n^degree · (ln n)^log_exp` with an integer degree.
    pub fn simple(num: i64, den: i64, degree: i64, log_exp: i32) -> Self {
        Self::new(rat(num, den), Degree::from_integer(degree), log_exp)
    }

    pub fn class(&self) -> GrowthClass {
        (self.degree, self.log_exp)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.coef * k, self.degree, self.log_exp)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.coef * &other.coef, self.degree + other.degree, self.log_exp + other.log_exp)
    }

    fn with_coef(&self, coef: BigRational) -> Self {
        Self::new(coef, self.degree, self.log_exp)
    }

    /// Compares the bound at `n` with `v`, given an enclosure of `ln n`.
    /// `None` when the enclosure is too coarse (or the bound is undefined).
    pub fn cmp_value_with(&self, n: u64, v: &BigRational, ln: &LnInterval) -> Option<Ordering> {
        // Raise both sides to the power q = denom(degree) to clear the root.
        let p = *self.degree.numer() as u32;
        let q = *self.degree.denom() as u32;
        let base = pow_rat(&self.coef, q) * pow_rat(&BigRational::from_integer(n.into()), p);
        let target = pow_rat(v, q);
        let e = self.log_exp as i64 * q as i64;
        if e == 0 {
            return Some(base.cmp(&target));
        }
        if n == 1 {
            // (ln 1)^e: zero for e > 0, undefined for e < 0.
            return (e > 0).then(|| BigRational::zero().cmp(&target));
        }
        let (l_lo, l_hi) = (ln.lower(), ln.upper());
        if !l_lo.is_positive() {
            return None;
        }
        let (lo, hi) = if e > 0 {
            (&base * pow_rat(&l_lo, e as u32), &base * pow_rat(&l_hi, e as u32))
        } else {
            let k = (-e) as u32;
            (&base / pow_rat(&l_hi, k), &base / pow_rat(&l_lo, k))
        };
        if hi < target {
            Some(Ordering::Less)
        } else if lo > target {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn cmp_value(&self, n: u64, v: &BigRational) -> Option<Ordering> {
        if self.log_exp == 0 {
            // No logarithm needed; skip computing the enclosure.
            let dummy = ln_enclosure(1);
            return self.cmp_value_with(n, v, &dummy);
        }
        self.cmp_value_with(n, v, &ln_enclosure(n))
    }
}

impl fmt::Display for BoundTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coef)?;
        if !self.degree.is_zero() {
            if self.degree.is_one() {
                write!(f, "*n")?;
            } else {
                write!(f, "*n^({})", self.degree)?;
            }
        }
        match self.log_exp {
            0 => Ok(()),
            1 => write!(f, "*ln(n)"),
            e => write!(f, "*ln(n)^({e})"),
        }
    }
}

fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Eventual two-sided bound: for all `n ≥ valid_from`,
/// `lower(n) ≤ value(n) ≤ upper(n)`. A missing lower bound means only the
/// trivial `value ≥ 0` is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthEnvelope {
    pub lower: Option<BoundTerm>,
    pub upper: BoundTerm,
    pub valid_from: u64,
}

/// Least `N ≥ start` such that `small(n) < big(n)` for every `n ≥ N`.
///
/// Requires `small` to be eventually dominated: a strictly smaller growth
/// class, or the same class with a smaller coefficient. Returns `None` when
/// that does not hold or the crossing lies beyond `2^62`.
pub fn dominance_threshold(small: &BoundTerm, big: &BoundTerm, start: u64) -> Option<u64> {
    let start = start.max(1);
    match small.class().cmp(&big.class()) {
        Ordering::Greater => None,
        Ordering::Equal => {
            if small.coef >= big.coef {
                return None;
            }
            // Ratio is constant; only ln 1 = 0 can spoil strictness.
            Some(if small.log_exp != 0 { start.max(2) } else { start })
        }
        Ordering::Less => {
            let dd = big.degree - small.degree;
            let de = big.log_exp - small.log_exp;
            // R(n) = (c_b/c_s) n^dd (ln n)^de is increasing once dd·ln n + de > 0.
            let mono = if de < 0 {
                let t = BigRational::new(BigInt::from(-de) * dd.denom(), (*dd.numer()).into());
                least_n_with_ln_above(&t)?
            } else {
                2
            };
            let ratio = &big.coef / &small.coef;
            let unit = BoundTerm::new(ratio, dd, de);
            let one = BigRational::one();
            let pred = |n: u64| unit.cmp_value(n, &one) == Some(Ordering::Greater);
            let first = start.max(mono).max(2);
            least_true(first, pred)
        }
    }
}

/// Least `n ≥ 2` with `ln n > t` proven by the enclosure.
fn least_n_with_ln_above(t: &BigRational) -> Option<u64> {
    least_true(2, |n| ln_enclosure(n).certainly_gt(t))
}

/// Smallest `n ≥ first` (found by galloping then bisection) satisfying a
/// predicate that is eventually true. The result always satisfies `pred`.
fn least_true(first: u64, pred: impl Fn(u64) -> bool) -> Option<u64> {
    if pred(first) {
        return Some(first);
    }
    let mut lo = first;
    let mut hi = first.max(1).checked_mul(2)?;
    while !pred(hi) {
        lo = hi;
        hi = hi.checked_mul(2).filter(|&h| h < 1 << 62)?;
    }
    // pred(lo) false, pred(hi) true
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// `ceil(a / b)` for positive rationals, as a machine integer.
pub(crate) fn ceil_ratio(a: &BigRational, b: &BigRational) -> u64 {
    let r = (a / b).ceil().to_integer();
    u64::try_from(&r).unwrap_or(u64::MAX).max(1)
}

impl GrowthEnvelope {
    pub fn new(lower: Option<BoundTerm>, upper: BoundTerm, valid_from: u64) -> Self {
        if let Some(l) = &lower {
            assert!(l.class() <= upper.class(), "lower class above upper class");
        }
        GrowthEnvelope { lower, upper, valid_from: valid_from.max(1) }
    }

    /// Exact envelope `c ≤ v ≤ c` for a positive constant.
    pub fn constant(c: &BigRational) -> Self {
        let t = BoundTerm::new(c.clone(), Degree::zero(), 0);
        Self::new(Some(t.clone()), t, 1)
    }

    /// Whether `v` is provably inside the envelope at `n` (ignores `valid_from`).
    pub fn contains(&self, n: u64, v: &BigRational, ln: &LnInterval) -> bool {
        let up = self.upper.cmp_value_with(n, v, ln);
        let up_ok = matches!(up, Some(Ordering::Greater | Ordering::Equal));
        let lo_ok = match &self.lower {
            None => true,
            Some(l) => matches!(l.cmp_value_with(n, v, ln), Some(Ordering::Less | Ordering::Equal)),
        };
        up_ok && lo_ok
    }

    pub fn scale(&self, k: &BigRational) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        Some(Self::new(self.lower.as_ref().map(|l| l.scale(k)), self.upper.scale(k), self.valid_from))
    }

    pub fn add(&self, other: &Self) -> Option<Self> {
        let from = self.valid_from.max(other.valid_from);
        let lower = match (&self.lower, &other.lower) {
            (Some(a), Some(b)) => Some(match a.class().cmp(&b.class()) {
                Ordering::Equal => a.with_coef(&a.coef + &b.coef),
                Ordering::Greater => a.clone(),
                Ordering::Less => b.clone(),
            }),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        let (a, b) = (&self.upper, &other.upper);
        let (upper, from) = match a.class().cmp(&b.class()) {
            Ordering::Equal => (a.with_coef(&a.coef + &b.coef), from),
            ord => {
                let (big, small) = if ord == Ordering::Greater { (a, b) } else { (b, a) };
                // small ≤ c_s·unit(big) once unit(small) < unit(big)
                let unit_small = small.with_coef(BigRational::one());
                let unit_big = big.with_coef(BigRational::one());
                let t = dominance_threshold(&unit_small, &unit_big, from)?;
                (big.with_coef(&big.coef + &small.coef), t)
            }
        };
        Some(Self::new(lower, upper, from))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let lower = match (&self.lower, &other.lower) {
            (Some(a), Some(b)) => Some(a.mul(b)),
            _ => None,
        };
        Self::new(lower, self.upper.mul(&other.upper), self.valid_from.max(other.valid_from))
    }

    /// Envelope of `a − b` for a dominated difference (`b ≤ a`).
    pub fn sub(&self, other: &Self) -> Self {
        let from = self.valid_from.max(other.valid_from);
        let mut lower = None;
        let mut valid = from;
        if let Some(la) = &self.lower {
            match la.class().cmp(&other.upper.class()) {
                Ordering::Greater => {
                    let half = la.scale(&rat(1, 2));
                    if let Some(t) = dominance_threshold(&other.upper, &half, from) {
                        lower = Some(half);
                        valid = t;
                    }
                }
                Ordering::Equal if la.coef > other.upper.coef => {
                    lower = Some(la.with_coef(&la.coef - &other.upper.coef));
                }
                _ => {}
            }
        }
        Self::new(lower, self.upper.clone(), valid)
    }

    pub fn meet(&self, other: &Self) -> Option<Self> {
        let mut from = self.valid_from.max(other.valid_from);
        let lower = match (&self.lower, &other.lower) {
            (Some(a), Some(b)) => Some(match a.class().cmp(&b.class()) {
                Ordering::Equal => a.with_coef(a.coef.clone().min(b.coef.clone())),
                ord => {
                    // the smaller lower bound only takes over past the crossing
                    let (small, big) = if ord == Ordering::Less { (a, b) } else { (b, a) };
                    if small.coef.is_positive() {
                        from = dominance_threshold(small, big, from)?;
                    }
                    small.clone()
                }
            }),
            _ => None,
        };
        let upper = match self.upper.class().cmp(&other.upper.class()) {
            Ordering::Greater => other.upper.clone(),
            Ordering::Less => self.upper.clone(),
            Ordering::Equal => self.upper.with_coef(self.upper.coef.clone().min(other.upper.coef.clone())),
        };
        Some(Self::new(lower, upper, from))
    }

    pub fn join(&self, other: &Self) -> Option<Self> {
        let from = self.valid_from.max(other.valid_from);
        let lower = match (&self.lower, &other.lower) {
            (Some(a), Some(b)) => Some(match a.class().cmp(&b.class()) {
                Ordering::Less => b.clone(),
                Ordering::Greater => a.clone(),
                Ordering::Equal => a.with_coef(a.coef.clone().max(b.coef.clone())),
            }),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        let (a, b) = (&self.upper, &other.upper);
        let (upper, from) = match a.class().cmp(&b.class()) {
            Ordering::Equal => (a.with_coef(a.coef.clone().max(b.coef.clone())), from),
            ord => {
                let (big, small) = if ord == Ordering::Greater { (a, b) } else { (b, a) };
                (big.clone(), dominance_threshold(small, big, from)?)
            }
        };
        Some(Self::new(lower, upper, from))
    }
}

impl fmt::Display for GrowthEnvelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lower {
            Some(l) => write!(f, "{l} <= a(n) <= {} for n >= {}", self.upper, self.valid_from),
            None => write!(f, "a(n) <= {} for n >= {}", self.upper, self.valid_from),
        }
    }
}
