use num_bigint::BigInt;
use num_integer::Integer;

use crate::seq::EventuallyPeriodic;

/// Eventually periodic subset of ℕ: explicit bits for `1..=P`, then a
/// repeating pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicMask {
    prefix: Vec<bool>,
    period: Vec<bool>,
}

impl PeriodicMask {
    pub fn new(prefix: Vec<bool>, period: Vec<bool>) -> Self {
        assert!(!period.is_empty(), "mask period must be at least 1");
        PeriodicMask { prefix, period }
    }

    pub fn all() -> Self {
        Self::new(Vec::new(), vec![true])
    }

    /// `{n : n ≡ r mod k}` with `1 ≤ r ≤ k`.
    pub fn residue(r: u64, k: u64) -> Self {
        assert!(k >= 1 && (1..=k).contains(&r));
        Self::new(Vec::new(), (1..=k).map(|i| i == r).collect())
    }

    /// The finite set `elems`.
    pub fn finite(elems: impl IntoIterator<Item = u64>) -> Self {
        let elems: Vec<u64> = elems.into_iter().collect();
        let top = elems.iter().copied().max().unwrap_or(0) as usize;
        let mut prefix = vec![false; top];
        for e in elems {
            prefix[e as usize - 1] = true;
        }
        Self::new(prefix, vec![false])
    }

    pub fn preperiod(&self) -> u64 {
        self.prefix.len() as u64
    }

    pub fn period(&self) -> u64 {
        self.period.len() as u64
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        let p = self.preperiod();
        if n <= p {
            self.prefix[n as usize - 1]
        } else {
            self.period[((n - p - 1) % self.period()) as usize]
        }
    }

    fn rebase(&self, preperiod: u64, period: u64) -> Self {
        let prefix = (1..=preperiod).map(|n| self.contains(n)).collect();
        let period = (preperiod + 1..=preperiod + period).map(|n| self.contains(n)).collect();
        PeriodicMask { prefix, period }
    }

    fn zip(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        let p = self.preperiod().max(other.preperiod());
        let l = self.period().lcm(&other.period());
        let (a, b) = (self.rebase(p, l), other.rebase(p, l));
        let zip = |x: &[bool], y: &[bool]| x.iter().zip(y).map(|(&s, &t)| f(s, t)).collect();
        PeriodicMask { prefix: zip(&a.prefix, &b.prefix), period: zip(&a.period, &b.period) }.normalized()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a || b)
    }

    pub fn inter(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a && b)
    }

    pub fn diff(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a && !b)
    }

    /// Shortest period, then shortest prefix.
    fn normalized(mut self) -> Self {
        let l = self.period.len();
        if let Some(d) =
            (1..l).filter(|d| l.is_multiple_of(*d)).find(|&d| (d..l).all(|i| self.period[i] == self.period[i - d]))
        {
            self.period.truncate(d);
        }
        while let Some(&last) = self.prefix.last() {
            // rotating the last prefix bit into the period keeps the set
            let l = self.period.len();
            if last != self.period[l - 1] {
                break;
            }
            self.prefix.pop();
            self.period.rotate_right(1);
        }
        self
    }

    /// Counting certificate: `σ_n = #{i ≤ n : i ∈ mask}`.
    pub fn size_certificate(&self) -> EventuallyPeriodic {
        let anchor = self.prefix.iter().filter(|&&b| b).count();
        let diffs = self.period.iter().map(|&b| BigInt::from(u8::from(b))).collect();
        EventuallyPeriodic::new(self.preperiod(), BigInt::from(anchor), diffs)
    }

    /// Indicator certificate: `χ_n = 1` iff `n ∈ mask`.
    pub fn indicator_certificate(&self) -> EventuallyPeriodic {
        // differences of the indicator, anchored one step in
        let p = self.preperiod() + 1;
        let l = self.period();
        let at = |n: u64| BigInt::from(u8::from(self.contains(n)));
        let diffs = (p + 1..=p + l).map(|n| at(n) - at(n - 1)).collect();
        EventuallyPeriodic::new(p, at(p), diffs)
    }
}
