//! Lazy non-negative integer sequences indexed from 1, with optional
//! certificates that make the eventual relations decidable.

mod closed;
mod compare;
mod envelope;
mod periodic;
mod serialize;

pub use closed::{farey_count, Atom, ClosedForm, ClosedFormCert, LinearForm, Monomial};
pub use compare::{compare, Method, Multipliers, Outcome, Relation, ScanSummary, Verdict};
pub use envelope::{dominance_threshold, BoundTerm, Degree, GrowthClass, GrowthEnvelope};
pub use periodic::EventuallyPeriodic;
pub use serialize::{certificate_json, prefix_csv, prefix_json};

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::numtheory::{ln_enclosure, LnTable, NumError};

/// Scan length used when a relation is not settled by certificates.
pub const DEFAULT_HORIZON: u64 = 10_000;

/// Default horizon, overridable through `SIZECALC_HORIZON`.
pub fn default_horizon() -> u64 {
    std::env::var("SIZECALC_HORIZON")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&h| h >= 1)
        .unwrap_or(DEFAULT_HORIZON)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("subtraction undefined at n = {index}: {subtrahend} exceeds {minuend}")]
    DominanceViolation { index: u64, minuend: BigUint, subtrahend: BigUint },
    #[error("{kind} certificate of {label} disagrees with the generator at n = {index}")]
    CertificateMismatch { label: String, kind: &'static str, index: u64 },
    #[error("formula for {label} is negative at n = {index}")]
    NegativeValue { label: String, index: u64 },
    #[error(transparent)]
    Num(#[from] NumError),
}

type SeqFn = Arc<dyn Fn(u64) -> Result<BigUint, SeqError> + Send + Sync>;

#[derive(Clone)]
enum Generator {
    /// random access
    Direct(SeqFn),
    /// `value(n) = value(n-1) + inc(n)`
    Increments(SeqFn),
}

/// Certificates a sequence may carry; each is claimed to match the generator.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Certificates {
    pub periodic: Option<EventuallyPeriodic>,
    pub closed_form: Option<ClosedFormCert>,
    pub envelope: Option<GrowthEnvelope>,
}

/// One certificate, tagged.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Periodic(EventuallyPeriodic),
    ClosedForm(ClosedFormCert),
    Envelope(GrowthEnvelope),
}

impl Certificates {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.periodic.is_none() && self.closed_form.is_none() && self.envelope.is_none()
    }

    pub fn list(&self) -> Vec<Certificate> {
        let mut out = Vec::new();
        if let Some(p) = &self.periodic {
            out.push(Certificate::Periodic(p.clone()));
        }
        if let Some(c) = &self.closed_form {
            out.push(Certificate::ClosedForm(c.clone()));
        }
        if let Some(e) = &self.envelope {
            out.push(Certificate::Envelope(e.clone()));
        }
        out
    }

    pub fn from_closed_form(expr: ClosedForm, valid_from: u64) -> Self {
        Certificates { closed_form: Some(ClosedFormCert { expr, valid_from }), ..Self::default() }.completed()
    }

    pub fn from_periodic(p: EventuallyPeriodic) -> Self {
        Certificates { periodic: Some(p), ..Self::default() }.completed()
    }

    /// Fills in whatever can be derived from the certificates present.
    pub fn completed(mut self) -> Self {
        if self.periodic.is_none() {
            self.periodic = self.closed_form.as_ref().and_then(periodic_from_closed);
        }
        if self.closed_form.is_none() {
            self.closed_form = self.periodic.as_ref().and_then(closed_from_periodic);
        }
        if self.envelope.is_none() {
            let from_closed = self.closed_form.as_ref().and_then(|c| {
                c.expr.envelope().map(|mut e| {
                    e.valid_from = e.valid_from.max(c.valid_from);
                    e
                })
            });
            self.envelope = from_closed.or_else(|| self.periodic.as_ref().and_then(envelope_from_periodic));
        }
        self
    }

    /// Whether the certified tail is identically zero.
    pub fn eventually_zero(&self) -> Option<bool> {
        if let Some(p) = &self.periodic {
            return Some(p.period_sum().is_zero() && p.tail_values().iter().all(Zero::is_zero));
        }
        let (nf, _) = self.closed_form.as_ref()?.expr.normal_form()?;
        nf.as_constant().map(|c| c.is_zero())
    }
}

fn periodic_from_closed(c: &ClosedFormCert) -> Option<EventuallyPeriodic> {
    let (nf, from) = c.expr.normal_form()?;
    let start = from.max(c.valid_from).max(1);
    let mut period = 1u64;
    for (m, _) in nf_terms(&nf) {
        match m {
            [] => {}
            [(Atom::Index, 1)] => {}
            [(Atom::FloorDiv(k), 1)] => period = period.lcm(k),
            _ => return None,
        }
    }
    if period > 1 << 16 {
        return None;
    }
    let values: Vec<BigInt> = c.expr.eval_range(start, start + period).ok()?;
    let differences = values.windows(2).map(|w| &w[1] - &w[0]).collect();
    Some(EventuallyPeriodic::new(start, values[0].clone(), differences))
}

fn nf_terms(nf: &LinearForm) -> Vec<(&[(Atom, u32)], &BigRational)> {
    nf.terms_iter().collect()
}

fn closed_from_periodic(p: &EventuallyPeriodic) -> Option<ClosedFormCert> {
    if p.period() != 1 {
        return None;
    }
    let d = p.differences()[0].clone();
    let start = p.preperiod().max(1);
    let offset = p.value_at(start)? - &d * BigInt::from(start);
    let expr = if d.is_zero() {
        ClosedForm::Const(offset)
    } else {
        let slope =
            if d.is_one() { ClosedForm::Index } else { ClosedForm::mul(ClosedForm::Const(d), ClosedForm::Index) };
        if offset.is_zero() {
            slope
        } else {
            ClosedForm::add(slope, ClosedForm::Const(offset))
        }
    };
    Some(ClosedFormCert { expr, valid_from: start })
}

/// Linear envelope read off a periodic certificate.
fn envelope_from_periodic(p: &EventuallyPeriodic) -> Option<GrowthEnvelope> {
    let s = p.period_sum();
    let l = BigInt::from(p.period());
    let tails = p.tail_values();
    let start = p.preperiod() + 1;
    if s.is_zero() {
        let max = tails.iter().max()?.clone();
        let min = tails.iter().min()?.clone();
        if !max.is_positive() {
            return None;
        }
        let upper = BoundTerm::new(BigRational::from_integer(max), Degree::zero(), 0);
        let lower = min.is_positive().then(|| BoundTerm::new(BigRational::from_integer(min), Degree::zero(), 0));
        return Some(GrowthEnvelope::new(lower, upper, start));
    }
    if s.is_negative() {
        return None;
    }
    // v(n) = (s/L)·n − g_r exactly, with a constant gap g_r per residue.
    let slope = BigRational::new(s.clone(), l.clone());
    let gaps: Vec<BigRational> = tails
        .iter()
        .enumerate()
        .map(|(i, v)| {
            &slope * BigRational::from_integer(BigInt::from(start + i as u64)) - BigRational::from_integer(v.clone())
        })
        .collect();
    let g_max = gaps.iter().max()?.clone();
    let g_min = gaps.iter().min()?.clone();
    // (s/L)n − g_max ≥ (s/2L)n  once n ≥ 2·g_max·L/s;  (s/L)n − g_min ≤ (2s/L)n once n ≥ −g_min·L/s
    let lower_from = (BigRational::from_integer(BigInt::from(2)) * &g_max / &slope).ceil().to_integer();
    let upper_from = (-&g_min / &slope).ceil().to_integer();
    let from = [BigInt::from(start), lower_from, upper_from].into_iter().max()?;
    let from = from.to_u64()?;
    let two = BigRational::from_integer(BigInt::from(2));
    Some(GrowthEnvelope::new(
        Some(BoundTerm::new(&slope / &two, Degree::one(), 0)),
        BoundTerm::new(&slope * &two, Degree::one(), 0),
        from,
    ))
}

struct Inner {
    label: String,
    generator: Generator,
    memo: RwLock<Vec<BigUint>>,
    certs: Certificates,
}

/// Lazy sequence `(a_n)_{n ≥ 1}` of non-negative integers; cheap to clone.
#[derive(Clone)]
pub struct Seq(Arc<Inner>);

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Seq").field("label", &self.0.label).field("certs", &self.0.certs).finish()
    }
}

/// Beyond this distance from the memo, direct generators are evaluated
/// without filling the gap.
const MEMO_STRIDE: u64 = 4096;

impl Seq {
    fn build(label: String, generator: Generator, certs: Certificates) -> Self {
        Seq(Arc::new(Inner { label, generator, memo: RwLock::new(Vec::new()), certs }))
    }

    pub fn from_fn(label: impl Into<String>, f: impl Fn(u64) -> BigUint + Send + Sync + 'static) -> Self {
        Self::build(label.into(), Generator::Direct(Arc::new(move |n| Ok(f(n)))), Certificates::none())
    }

    pub fn try_from_fn(
        label: impl Into<String>,
        f: impl Fn(u64) -> Result<BigUint, SeqError> + Send + Sync + 'static,
    ) -> Self {
        Self::build(label.into(), Generator::Direct(Arc::new(f)), Certificates::none())
    }

    /// Partial sums of `inc(1), inc(2), …`.
    pub fn from_increments(
        label: impl Into<String>,
        inc: impl Fn(u64) -> Result<BigUint, SeqError> + Send + Sync + 'static,
    ) -> Self {
        Self::build(label.into(), Generator::Increments(Arc::new(inc)), Certificates::none())
    }

    /// Sequence generated by evaluating a closed form, which is also its certificate.
    pub fn from_closed_form(label: impl Into<String>, expr: ClosedForm) -> Self {
        let label = label.into();
        let e = expr.clone();
        let name = label.clone();
        let gen = move |n| {
            let v = e.eval(n)?;
            v.to_biguint().ok_or_else(|| SeqError::NegativeValue { label: name.clone(), index: n })
        };
        Self::build(label, Generator::Direct(Arc::new(gen)), Certificates::from_closed_form(expr, 1))
    }

    /// Same generator and memo contents, different certificates.
    pub fn with_certificates(&self, certs: Certificates) -> Self {
        let memo = self.0.memo.read().unwrap_or_else(|e| e.into_inner()).clone();
        Seq(Arc::new(Inner {
            label: self.0.label.clone(),
            generator: self.0.generator.clone(),
            memo: RwLock::new(memo),
            certs,
        }))
    }

    pub fn relabel(&self, label: impl Into<String>) -> Self {
        let memo = self.0.memo.read().unwrap_or_else(|e| e.into_inner()).clone();
        Seq(Arc::new(Inner {
            label: label.into(),
            generator: self.0.generator.clone(),
            memo: RwLock::new(memo),
            certs: self.0.certs.clone(),
        }))
    }

    pub fn constant(k: u64) -> Self {
        Self::from_closed_form(k.to_string(), ClosedForm::constant(k))
    }

    pub fn zero() -> Self {
        Self::constant(0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `α = (n)_n`
    pub fn alpha() -> Self {
        Self::from_closed_form("alpha", ClosedForm::Index)
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn certificates(&self) -> &Certificates {
        &self.0.certs
    }

    pub fn same_as(&self, other: &Seq) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// `a_n`; index 0 denotes the empty prefix and yields 0.
    pub fn value(&self, n: u64) -> Result<BigUint, SeqError> {
        if n == 0 {
            return Ok(BigUint::zero());
        }
        let len = {
            let memo = self.0.memo.read().unwrap_or_else(|e| e.into_inner());
            if let Some(v) = memo.get(n as usize - 1) {
                return Ok(v.clone());
            }
            memo.len() as u64
        };
        match &self.0.generator {
            Generator::Direct(f) if n > len + MEMO_STRIDE => f(n),
            _ => {
                self.fill(n)?;
                let memo = self.0.memo.read().unwrap_or_else(|e| e.into_inner());
                Ok(memo[n as usize - 1].clone())
            }
        }
    }

    /// Extends the memo to cover `1..=n`.
    fn fill(&self, n: u64) -> Result<(), SeqError> {
        let (start, mut prev) = {
            let memo = self.0.memo.read().unwrap_or_else(|e| e.into_inner());
            (memo.len() as u64 + 1, memo.last().cloned().unwrap_or_default())
        };
        if start > n {
            return Ok(());
        }
        let mut fresh = Vec::with_capacity((n + 1 - start) as usize);
        for i in start..=n {
            let v = match &self.0.generator {
                Generator::Direct(f) => f(i)?,
                Generator::Increments(f) => &prev + f(i)?,
            };
            prev = v.clone();
            fresh.push(v);
        }
        let mut memo = self.0.memo.write().unwrap_or_else(|e| e.into_inner());
        // Another writer may have filled part of the range with identical values.
        let have = memo.len() as u64 + 1;
        if have <= n {
            memo.extend(fresh.into_iter().skip((have - start) as usize));
        }
        Ok(())
    }

    /// `a_1, …, a_len`
    pub fn prefix(&self, len: u64) -> Result<Vec<BigUint>, SeqError> {
        if len == 0 {
            return Ok(Vec::new());
        }
        self.fill(len)?;
        let memo = self.0.memo.read().unwrap_or_else(|e| e.into_inner());
        Ok(memo[..len as usize].to_vec())
    }

    /// First differences `a_n − a_{n−1}` for `n = 1..=len` (with `a_0 = 0`);
    /// errors if the sequence decreases.
    pub fn differences(&self, len: u64) -> Result<Vec<BigUint>, SeqError> {
        let p = self.prefix(len)?;
        let mut prev = BigUint::zero();
        let mut out = Vec::with_capacity(p.len());
        for (i, v) in p.into_iter().enumerate() {
            if v < prev {
                return Err(SeqError::DominanceViolation { index: i as u64 + 1, minuend: v, subtrahend: prev });
            }
            out.push(&v - &prev);
            prev = v;
        }
        Ok(out)
    }

    /// Checks every attached certificate against the generator on `1..=upto`.
    pub fn validate_certificates(&self, upto: u64) -> Result<(), SeqError> {
        let certs = &self.0.certs;
        if certs.is_empty() || upto == 0 {
            return Ok(());
        }
        let values = self.prefix(upto)?;
        let mismatch = |kind, index| SeqError::CertificateMismatch { label: self.0.label.clone(), kind, index };
        if let Some(p) = &certs.periodic {
            for n in p.preperiod().max(1)..=upto {
                let v = p.value_at(n).unwrap();
                if v.sign() == Sign::Minus || v.magnitude() != &values[n as usize - 1] {
                    return Err(mismatch("periodic", n));
                }
            }
        }
        if let Some(c) = &certs.closed_form {
            let from = c.valid_from.max(1);
            if from <= upto {
                let vals = c.expr.eval_range(from, upto)?;
                for (i, v) in vals.iter().enumerate() {
                    let n = from + i as u64;
                    if v.sign() == Sign::Minus || v.magnitude() != &values[n as usize - 1] {
                        return Err(mismatch("closed-form", n));
                    }
                }
            }
        }
        if let Some(e) = &certs.envelope {
            let uses_log = e.upper.log_exp != 0 || e.lower.as_ref().is_some_and(|l| l.log_exp != 0);
            let table = (uses_log && upto > 64).then(|| LnTable::new(upto));
            for n in e.valid_from..=upto {
                let ln = match &table {
                    Some(t) => t.get(n),
                    None => ln_enclosure(if uses_log { n } else { 1 }),
                };
                let v = BigRational::from_integer(BigInt::from(values[n as usize - 1].clone()));
                if !e.contains(n, &v, &ln) {
                    return Err(mismatch("envelope", n));
                }
            }
        }
        Ok(())
    }

    /// Checks the certificates at isolated indices (for probes past the prefix).
    pub fn validate_at(&self, indices: &[u64]) -> Result<(), SeqError> {
        let certs = &self.0.certs;
        let mismatch = |kind, index| SeqError::CertificateMismatch { label: self.0.label.clone(), kind, index };
        for &n in indices.iter().filter(|&&n| n >= 1) {
            let actual = BigInt::from(self.value(n)?);
            if let Some(p) = certs.periodic.as_ref().filter(|p| n >= p.preperiod()) {
                if p.value_at(n).unwrap() != actual {
                    return Err(mismatch("periodic", n));
                }
            }
            if let Some(c) = certs.closed_form.as_ref().filter(|c| n >= c.valid_from) {
                if c.expr.eval(n)? != actual {
                    return Err(mismatch("closed-form", n));
                }
            }
            if let Some(e) = certs.envelope.as_ref().filter(|e| n >= e.valid_from) {
                if !e.contains(n, &BigRational::from_integer(actual), &ln_enclosure(n)) {
                    return Err(mismatch("envelope", n));
                }
            }
        }
        Ok(())
    }
}

fn join_closed(
    a: &Certificates,
    b: &Certificates,
    f: impl Fn(ClosedForm, ClosedForm) -> ClosedForm,
) -> Option<ClosedFormCert> {
    let (x, y) = (a.closed_form.as_ref()?, b.closed_form.as_ref()?);
    Some(ClosedFormCert { expr: f(x.expr.clone(), y.expr.clone()), valid_from: x.valid_from.max(y.valid_from) })
}

fn binary(
    label: String,
    a: &Seq,
    b: &Seq,
    op: impl Fn(BigUint, BigUint, u64) -> Result<BigUint, SeqError> + Send + Sync + 'static,
    certs: Certificates,
) -> Seq {
    let (x, y) = (a.clone(), b.clone());
    Seq::try_from_fn(label, move |n| op(x.value(n)?, y.value(n)?, n)).with_certificates(certs.completed())
}

/// `(a_n + b_n)_n`
pub fn add(a: &Seq, b: &Seq) -> Seq {
    let (ca, cb) = (a.certificates(), b.certificates());
    let certs = Certificates {
        periodic: ca.periodic.as_ref().zip(cb.periodic.as_ref()).map(|(p, q)| p.add(q)),
        closed_form: join_closed(ca, cb, ClosedForm::add),
        envelope: match (ca.eventually_zero(), cb.eventually_zero()) {
            (Some(true), _) => cb.envelope.clone(),
            (_, Some(true)) => ca.envelope.clone(),
            _ => ca.envelope.as_ref().zip(cb.envelope.as_ref()).and_then(|(e, f)| e.add(f)),
        },
    };
    binary(format!("({} + {})", a.label(), b.label()), a, b, |x, y, _| Ok(x + y), certs)
}

/// `(a_n · b_n)_n`
pub fn mul(a: &Seq, b: &Seq) -> Seq {
    let (ca, cb) = (a.certificates(), b.certificates());
    let certs = Certificates {
        periodic: ca.periodic.as_ref().zip(cb.periodic.as_ref()).and_then(|(p, q)| p.mul(q)),
        closed_form: join_closed(ca, cb, ClosedForm::mul),
        envelope: ca.envelope.as_ref().zip(cb.envelope.as_ref()).map(|(e, f)| e.mul(f)),
    };
    binary(format!("{}*{}", a.label(), b.label()), a, b, |x, y, _| Ok(x * y), certs)
}

/// `(k · a_n)_n`
pub fn scalar_mul(k: u64, a: &Seq) -> Seq {
    if k == 0 {
        return Seq::zero();
    }
    if k == 1 {
        return a.clone();
    }
    let ca = a.certificates();
    let kb = BigInt::from(k);
    let certs = Certificates {
        periodic: ca.periodic.as_ref().map(|p| p.scale(&kb)),
        closed_form: ca.closed_form.as_ref().map(|c| ClosedFormCert {
            expr: ClosedForm::mul(ClosedForm::Const(kb.clone()), c.expr.clone()),
            valid_from: c.valid_from,
        }),
        envelope: ca.envelope.as_ref().and_then(|e| e.scale(&BigRational::from_integer(kb.clone()))),
    };
    let x = a.clone();
    Seq::try_from_fn(format!("{k}*{}", a.label()), move |n| Ok(x.value(n)? * k)).with_certificates(certs.completed())
}

/// `(a_n − b_n)_n` for `b ≤ a`. Dominance is checked eagerly on
/// `1..=horizon` and lazily at every later evaluation.
pub fn sub_checked(a: &Seq, b: &Seq, horizon: u64) -> Result<Seq, SeqError> {
    let (pa, pb) = (a.prefix(horizon)?, b.prefix(horizon)?);
    for (i, (x, y)) in pa.iter().zip(&pb).enumerate() {
        if y > x {
            return Err(SeqError::DominanceViolation {
                index: i as u64 + 1,
                minuend: x.clone(),
                subtrahend: y.clone(),
            });
        }
    }
    let (ca, cb) = (a.certificates(), b.certificates());
    let envelope = if cb.eventually_zero() == Some(true) {
        ca.envelope.clone()
    } else {
        ca.envelope.as_ref().zip(cb.envelope.as_ref()).map(|(e, f)| e.sub(f))
    };
    let certs = Certificates {
        periodic: ca.periodic.as_ref().zip(cb.periodic.as_ref()).map(|(p, q)| p.sub(q)),
        closed_form: join_closed(ca, cb, ClosedForm::sub),
        envelope,
    };
    let op = |x: BigUint, y: BigUint, n: u64| {
        if y > x {
            Err(SeqError::DominanceViolation { index: n, minuend: x, subtrahend: y })
        } else {
            Ok(x - y)
        }
    };
    Ok(binary(format!("({} - {})", a.label(), b.label()), a, b, op, certs))
}

fn extremum(a: &Seq, b: &Seq, max: bool) -> Seq {
    let (ca, cb) = (a.certificates(), b.certificates());
    let env = ca.envelope.as_ref().zip(cb.envelope.as_ref());
    let certs = Certificates {
        periodic: ca.periodic.as_ref().zip(cb.periodic.as_ref()).map(|(p, q)| p.extremum(q, max)),
        closed_form: join_closed(
            ca,
            cb,
            if max {
                |x, y| ClosedForm::Max(Box::new(x), Box::new(y))
            } else {
                |x, y| ClosedForm::Min(Box::new(x), Box::new(y))
            },
        ),
        envelope: if max {
            match (ca.eventually_zero(), cb.eventually_zero()) {
                (Some(true), _) => cb.envelope.clone(),
                (_, Some(true)) => ca.envelope.clone(),
                _ => env.and_then(|(e, f)| e.join(f)),
            }
        } else {
            env.and_then(|(e, f)| e.meet(f))
        },
    };
    let name = if max { "join" } else { "meet" };
    let op = move |x: BigUint, y: BigUint, _| Ok(if max { x.max(y) } else { x.min(y) });
    binary(format!("{name}({}, {})", a.label(), b.label()), a, b, op, certs)
}

/// Componentwise minimum.
pub fn meet(a: &Seq, b: &Seq) -> Seq {
    extremum(a, b, false)
}

/// Componentwise maximum.
pub fn join(a: &Seq, b: &Seq) -> Seq {
    extremum(a, b, true)
}

impl std::ops::Add for &Seq {
    type Output = Seq;
    fn add(self, rhs: &Seq) -> Seq {
        add(self, rhs)
    }
}

impl std::ops::Mul for &Seq {
    type Output = Seq;
    fn mul(self, rhs: &Seq) -> Seq {
        mul(self, rhs)
    }
}
