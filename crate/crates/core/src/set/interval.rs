use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::{Element, SetError, Universe};
use crate::numtheory::{coprime_count, gcd};
use crate::seq::{ClosedForm, ClosedFormCert};

type Q = Ratio<i64>;

/// One end of a range of rationals.
#[derive(Clone, Copy, Debug)]
struct End {
    at: Q,
    closed: bool,
}

impl End {
    fn open(at: Q) -> Self {
        End { at, closed: false }
    }

    fn closed(at: Q) -> Self {
        End { at, closed: true }
    }
}

/// Numerators `j` with `lower < j/m ≤ upper` (ends as flagged), as `[a, b]`.
fn numerators(m: u64, lower: End, upper: End) -> (i128, i128) {
    let m = m as i128;
    let scaled = |q: Q| (*q.numer() as i128 * m, *q.denom() as i128);
    let (ln, ld) = scaled(lower.at);
    let (un, ud) = scaled(upper.at);
    let a = if lower.closed { -Integer::div_floor(&-ln, &ld) } else { Integer::div_floor(&ln, &ld) + 1 };
    let b = if upper.closed { Integer::div_floor(&un, &ud) } else { -Integer::div_floor(&-un, &ud) - 1 };
    (a, b)
}

/// Rationals `j/m` in lowest terms; `Den` fixes the denominator, `Num` the
/// numerator.
enum Piece {
    Den { m: u64, a: i128, b: i128 },
    Num { j: u64, a: i128, b: i128 },
}

impl Piece {
    fn count(&self) -> u64 {
        match *self {
            Piece::Den { m, a, b } => coprime_count(m, a, b),
            Piece::Num { j, a, b } => coprime_count(j, a.max(1), b),
        }
    }

    fn push_elements(&self, out: &mut Vec<Element>) {
        match *self {
            Piece::Den { m, a, b } => {
                for j in a..=b {
                    if gcd(j.unsigned_abs() as u64, m) == 1 {
                        out.push(Element::rational(Ratio::new(j as i64, m as i64)));
                    }
                }
            }
            Piece::Num { j, a, b } => {
                for m in a.max(1)..=b {
                    if gcd(j, m as u64) == 1 {
                        out.push(Element::rational(Ratio::new(j as i64, m as i64)));
                    }
                }
            }
        }
    }
}

/// A half-open interval `(lo, hi]` of rationals together with the
/// arrangement it inherits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntervalShape {
    lo: Q,
    hi: Q,
    coprime_pairs: bool,
}

fn ceil_q(q: Q) -> i64 {
    q.ceil().to_integer()
}

impl IntervalShape {
    pub(crate) fn new(lo: Q, hi: Q, coprime_pairs: bool) -> Result<Self, SetError> {
        if lo >= hi {
            return Err(SetError::EmptyInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        if coprime_pairs && lo.is_negative() {
            return Err(SetError::Unsupported(format!(
                "the coprime-pair arrangement covers positive rationals only, got lower end {lo}"
            )));
        }
        Ok(IntervalShape { lo, hi, coprime_pairs })
    }

    pub(crate) fn universe(&self) -> Universe {
        if self.coprime_pairs {
            Universe::CoprimePairs
        } else if !self.lo.is_negative() && self.hi <= Q::from_integer(1) {
            Universe::UnitInterval
        } else if !self.lo.is_negative() {
            Universe::PosRational
        } else {
            Universe::Rational
        }
    }

    pub(crate) fn contains(&self, e: &Element) -> bool {
        e.as_ratio().is_some_and(|x| self.lo < x && x <= self.hi)
    }

    fn pieces(&self, n: u64) -> Vec<Piece> {
        let mut out = Vec::new();
        let (lo, hi) = (self.lo, self.hi);
        let zero = Q::zero();
        let one = Q::from_integer(1);
        let nq = Q::from_integer(n as i64);
        let mut den = |m: u64, lower: End, upper: End| {
            if lower.at < upper.at || (lower.closed && upper.closed && lower.at == upper.at) {
                let (a, b) = numerators(m, lower, upper);
                if a <= b {
                    out.push(Piece::Den { m, a, b });
                }
            }
        };
        if self.coprime_pairs {
            // k/n with k ≤ n, then n/m with m < n
            den(n, End::open(lo), End::closed(hi.min(one)));
            if n >= 2 {
                let mut a = ceil_q(nq / hi) as i128;
                let mut b = n as i128 - 1;
                if lo > zero {
                    b = b.min(ceil_q(nq / lo) as i128 - 1);
                }
                a = a.max(1);
                if a <= b {
                    out.push(Piece::Num { j: n, a, b });
                }
            }
            return out;
        }
        let top = nq + one;
        // denominator n with |x| ≤ n + 1
        den(n, End::open(lo.max(zero)), End::closed(hi.min(top)));
        let neg_lower = if lo >= -top { End::open(lo) } else { End::closed(-top) };
        den(n, neg_lower, if hi < zero { End::closed(hi) } else { End::open(zero) });
        // smaller denominators with |x| ∈ (n, n + 1]
        if n >= 2 {
            let pos = (End::open(lo.max(nq)), End::closed(hi.min(top)));
            let neg = (neg_lower, if hi < -nq { End::closed(hi) } else { End::open(-nq) });
            for (lower, upper) in [pos, neg] {
                for m in 1..n {
                    den(m, lower, upper);
                }
            }
        }
        if n == 1 && lo < zero && zero <= hi {
            out.push(Piece::Den { m: 1, a: 0, b: 0 });
        }
        out
    }

    pub(crate) fn count(&self, n: u64) -> u64 {
        self.pieces(n).iter().map(Piece::count).sum()
    }

    pub(crate) fn component(&self, n: u64) -> Vec<Element> {
        let mut out = Vec::new();
        for p in self.pieces(n) {
            p.push_elements(&mut out);
        }
        out.sort();
        out
    }

    /// Closed form of the size sequence with the index from which it holds.
    pub(crate) fn size_form(&self) -> ClosedFormCert {
        let (lo, hi) = (self.lo, self.hi);
        let one = Q::from_integer(1);
        if !self.coprime_pairs {
            let reach = lo.abs().max(hi.abs());
            return ClosedFormCert { expr: ClosedForm::FareyCount { lo, hi }, valid_from: ceil_q(reach).max(1) as u64 };
        }
        // x ≤ 1 is indexed by its denominator, x > 1 by its numerator, and
        // x ↦ 1/x swaps the two
        let mut parts = Vec::new();
        let mut from = 1u64;
        if lo < one {
            parts.push(ClosedForm::FareyCount { lo, hi: hi.min(one) });
        }
        if hi > one {
            let l = lo.max(one);
            parts.push(ClosedForm::FareyCount { lo: hi.recip(), hi: l.recip() });
            from = (*hi.numer()).max(*l.numer()) as u64;
        }
        let expr = parts.into_iter().reduce(ClosedForm::add).expect("nonempty interval");
        ClosedFormCert { expr, valid_from: from }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Ratio::new(n, d)
    }

    fn brute_component(s: &IntervalShape, n: u64) -> Vec<Element> {
        let u = s.universe();
        // every rational with index n has numerator and denominator below (n+2)·n
        let bound = ((n + 2) * n) as i64;
        let mut out = Vec::new();
        for m in 1..=n as i64 {
            for j in -bound..=bound {
                let x = Ratio::new(j, m);
                if *x.denom() != m {
                    continue;
                }
                let e = Element::rational(x);
                if s.contains(&e) && u.index_of(&e) == Some(n) {
                    out.push(e);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn components_match_brute_force() {
        let shapes = [
            (q(0, 1), q(1, 1), false),
            (q(1, 2), q(3, 2), false),
            (q(3, 1), q(4, 1), false),
            (q(-5, 2), q(7, 3), false),
            (q(-3, 1), q(-1, 1), false),
            (q(-1, 3), q(0, 1), false),
            (q(-4, 1), q(-3, 1), false),
            (q(-7, 2), q(-2, 1), false),
            (q(0, 1), q(1, 1), true),
            (q(1, 1), q(2, 1), true),
            (q(1, 3), q(5, 2), true),
        ];
        for (lo, hi, np) in shapes {
            let s = IntervalShape::new(lo, hi, np).unwrap();
            for n in 1..=12 {
                let fast = s.component(n);
                assert_eq!(fast, brute_component(&s, n), "({lo},{hi}] np={np} n={n}");
                assert_eq!(s.count(n), fast.len() as u64);
            }
        }
    }

    #[test]
    fn size_forms_hold_from_their_start() {
        for (lo, hi, np) in [
            (q(0, 1), q(1, 2), false),
            (q(7, 3), q(10, 3), false),
            (q(-5, 2), q(7, 3), false),
            (q(1, 1), q(2, 1), true),
            (q(1, 3), q(5, 2), true),
            (q(3, 2), q(7, 2), true),
        ] {
            let s = IntervalShape::new(lo, hi, np).unwrap();
            let c = s.size_form();
            let mut sigma = 0u64;
            for n in 1..=60 {
                sigma += s.count(n);
                if n >= c.valid_from {
                    assert_eq!(c.expr.eval(n).unwrap(), sigma.into(), "({lo},{hi}] np={np} n={n}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_bounds() {
        assert!(matches!(IntervalShape::new(q(1, 1), q(1, 1), false), Err(SetError::EmptyInterval { .. })));
        assert!(IntervalShape::new(q(-1, 1), q(1, 1), true).is_err());
    }
}
