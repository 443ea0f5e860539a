//! Uniform overlapping maps `f_(a,p,±)`, their orbits and itineraries, and
//! the reconstruction of `(a, p)` from a pair of critical itineraries.
//!
//! Branch decisions are certified: a comparison with `p` counts only when the
//! enclosure of the iterate lies strictly on one side, or when the iterate is
//! known to equal `p` exactly, in which case the sign convention decides.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::admissibility::{check_admissible, AdmissibilityError, CriticalPair, Sign, Verdict};
use crate::projection::{project_to_bits, smallest_root_with, ProjectionError, RootOptions, RootResult, RootStatus};
use crate::real::{PrecisionReal, RealError};
use crate::words::{builtin_stream, FiniteWord, Word, WordError, DEFAULT_COMPARE_DEPTH};

/// Precision ceiling for adaptive orbits.
pub const DEFAULT_MAX_BITS: u32 = 16384;
/// Guard bits on top of `len·log2(a)`.
pub const GUARD_BITS: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("branch at iterate {index} undecidable at {bits} bits")]
    Undecidable { index: usize, bits: u32 },
    #[error("precision ceiling of {bits} bits reached at iterate {index}")]
    PrecisionCeiling { index: usize, bits: u32 },
    #[error("no root of π_x(α) = π_x(β) below {scan_ceiling}")]
    NoRoot { scan_ceiling: f64 },
    #[error("reconstructed {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error(transparent)]
    Admissibility(#[from] AdmissibilityError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Real(#[from] RealError),
}

/// Slope `a`, critical point `p` and the tie convention at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapParams {
    pub a: PrecisionReal,
    pub p: PrecisionReal,
    pub sign: Sign,
}

fn certainly(c: Option<Ordering>, o: Ordering) -> bool {
    c == Some(o)
}

impl OverlapParams {
    /// Rejects parameters that certainly violate `1 < a <= 2` or
    /// `1 − 1/a <= p <= 1/a`; enclosures straddling a bound are accepted.
    pub fn new(a: PrecisionReal, p: PrecisionReal, sign: Sign) -> Result<Self, DynamicsError> {
        let bits = a.bits().max(p.bits());
        if a.certainly_le(&PrecisionReal::one(bits)) {
            return Err(DynamicsError::InvalidParams(format!("a = {a} must exceed 1")));
        }
        if certainly(a.certain_cmp(&PrecisionReal::from_int(2, bits)), Ordering::Greater) {
            return Err(DynamicsError::InvalidParams(format!("a = {a} exceeds 2")));
        }
        let inv = a.recip()?;
        if certainly(p.certain_cmp(&inv), Ordering::Greater)
            || certainly(p.certain_cmp(&inv.rsub_int(1)), Ordering::Less)
        {
            return Err(DynamicsError::InvalidParams(format!(
                "p = {p} outside [1 − 1/a, 1/a] for a = {a}"
            )));
        }
        Ok(OverlapParams { a, p, sign })
    }

    fn unchecked(a: PrecisionReal, p: PrecisionReal, sign: Sign) -> Self {
        OverlapParams { a, p, sign }
    }

    pub fn with_sign(&self, sign: Sign) -> Self {
        OverlapParams { sign, ..self.clone() }
    }

    pub fn bits(&self) -> u32 {
        self.a.bits().max(self.p.bits())
    }

    /// The tie symbol at `x = p`.
    pub fn tie_symbol(&self) -> u8 {
        match self.sign {
            Sign::Minus => 0,
            Sign::Plus => 1,
        }
    }

    /// Branch of `x`; `None` when the enclosure straddles `p`.
    pub fn branch(&self, x: &PrecisionReal) -> Option<u8> {
        if x == &self.p {
            return Some(self.tie_symbol());
        }
        match x.certain_cmp(&self.p)? {
            Ordering::Less => Some(0),
            Ordering::Greater => Some(1),
            Ordering::Equal => Some(self.tie_symbol()),
        }
    }

    /// `a·x` on branch 0, `a·x + 1 − a` on branch 1.
    pub fn apply_branch(&self, x: &PrecisionReal, branch: u8) -> PrecisionReal {
        let ax = self.a.mul(x);
        if branch == 0 {
            ax
        } else {
            ax.add(&self.a.rsub_int(1))
        }
    }

    /// `f(I_0) ∩ f(I_1) = [a·p + 1 − a, a·p]` is nonempty.
    pub fn images_overlap(&self) -> bool {
        let ap = self.a.mul(&self.p);
        !certainly(ap.add(&self.a.rsub_int(1)).certain_cmp(&ap), Ordering::Greater)
    }
}

pub fn eval_map(params: &OverlapParams, x: &PrecisionReal) -> Result<PrecisionReal, DynamicsError> {
    let b = params.branch(x).ok_or(DynamicsError::Undecidable {
        index: 0,
        bits: x.bits(),
    })?;
    Ok(params.apply_branch(x, b))
}

/// Iterates and symbols at a fixed working precision.
fn run(params: &OverlapParams, x0: &PrecisionReal, steps: usize, bits: u32) -> Result<(Vec<PrecisionReal>, Vec<u8>), usize> {
    let params = OverlapParams::unchecked(params.a.with_bits(bits), params.p.with_bits(bits), params.sign);
    let tie_start = x0 == &params.p || x0.with_bits(bits) == params.p;
    let mut x = if tie_start { params.p.clone() } else { x0.with_bits(bits) };
    let mut orbit = vec![x.clone()];
    let mut symbols = Vec::with_capacity(steps);
    for n in 0..steps {
        let b = if n == 0 && tie_start {
            params.tie_symbol()
        } else {
            params.branch(&x).ok_or(n)?
        };
        symbols.push(b);
        x = params.apply_branch(&x, b);
        orbit.push(x.clone());
    }
    Ok((orbit, symbols))
}

fn adaptive<T>(
    start: u32,
    max_bits: u32,
    mut f: impl FnMut(u32) -> Result<T, usize>,
) -> Result<(T, u32), DynamicsError> {
    let mut bits = start.max(64);
    loop {
        match f(bits) {
            Ok(v) => return Ok((v, bits)),
            Err(index) if bits >= max_bits => {
                return Err(DynamicsError::PrecisionCeiling { index, bits });
            }
            Err(_) => bits = bits.saturating_mul(2).min(max_bits),
        }
    }
}

/// `[x0, f(x0), …, f^n(x0)]`, raising the working precision on any
/// undecidable branch.
pub fn orbit(params: &OverlapParams, x0: &PrecisionReal, n: usize) -> Result<Vec<PrecisionReal>, DynamicsError> {
    orbit_with_ceiling(params, x0, n, DEFAULT_MAX_BITS)
}

pub fn orbit_with_ceiling(
    params: &OverlapParams,
    x0: &PrecisionReal,
    n: usize,
    max_bits: u32,
) -> Result<Vec<PrecisionReal>, DynamicsError> {
    let start = params.bits().max(x0.bits());
    let ((orbit, _), _) = adaptive(start, max_bits.max(start), |bits| run(params, x0, n, bits))?;
    Ok(orbit)
}

/// The first `len` symbols of the itinerary of `x0`.
pub fn itinerary(params: &OverlapParams, x0: &PrecisionReal, len: usize) -> Result<FiniteWord, DynamicsError> {
    let start = params.bits().max(x0.bits());
    let ((_, symbols), _) = adaptive(start, DEFAULT_MAX_BITS.max(start), |bits| run(params, x0, len, bits))?;
    Ok(FiniteWord::new(symbols)?)
}

/// Itinerary for parameters that can be recomputed at any precision.
pub fn itinerary_adaptive(
    source: impl Fn(u32) -> Result<(OverlapParams, PrecisionReal), DynamicsError>,
    len: usize,
    start_bits: u32,
    max_bits: u32,
) -> Result<(FiniteWord, u32), DynamicsError> {
    let mut bits = start_bits.max(64);
    loop {
        let (params, x0) = source(bits)?;
        match run(&params, &x0, len, bits) {
            Ok((_, symbols)) => return Ok((FiniteWord::new(symbols)?, bits)),
            Err(index) if bits >= max_bits => return Err(DynamicsError::PrecisionCeiling { index, bits }),
            Err(_) => bits = bits.saturating_mul(2).min(max_bits),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalItineraries {
    pub minus: FiniteWord,
    pub plus: FiniteWord,
    /// Iterates indistinguishable from `p` at the working precision, taken
    /// as exact returns to `p` and resolved by the sign convention.
    pub assumed_ties_minus: Vec<usize>,
    pub assumed_ties_plus: Vec<usize>,
}

fn critical_run(params: &OverlapParams, len: usize) -> (Vec<u8>, Vec<usize>) {
    let mut x = params.p.clone();
    let mut symbols = Vec::with_capacity(len);
    let mut ties = Vec::new();
    for n in 0..len {
        let b = match params.branch(&x) {
            Some(b) => b,
            None => {
                ties.push(n);
                x = params.p.clone();
                params.tie_symbol()
            }
        };
        symbols.push(b);
        x = params.apply_branch(&x, b);
    }
    (symbols, ties)
}

/// Prefixes of `τ_−` and `τ_+` from the orbit of `p` under each sign.
pub fn critical_itineraries(a: &PrecisionReal, p: &PrecisionReal, len: usize) -> Result<CriticalItineraries, DynamicsError> {
    let params = OverlapParams::new(a.clone(), p.clone(), Sign::Minus)?;
    let (minus, tm) = critical_run(&params, len);
    let (plus, tp) = critical_run(&params.with_sign(Sign::Plus), len);
    Ok(CriticalItineraries {
        minus: FiniteWord::new(minus)?,
        plus: FiniteWord::new(plus)?,
        assumed_ties_minus: tm,
        assumed_ties_plus: tp,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RoundTripVerdict {
    Verified,
    Mismatch { index: usize, sign: Sign, reason: MismatchReason },
    Inconclusive { index: usize, sign: Sign },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MismatchReason {
    /// The recomputed symbol differs from the input word.
    Symbol,
    /// `f^n(p)` is certainly not `π_r(S^n w)`.
    Projection,
}

impl RoundTripVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, RoundTripVerdict::Verified)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub verdict: RoundTripVerdict,
    /// Indices `n < checked` passed both checks under both signs.
    pub checked: usize,
    /// Indices where `S^n w` equals `α` or `β`, so `f^n(p) = p` exactly.
    pub exact_returns: usize,
}

/// `S^n w` is literally `α` or `β`.
fn returns_to_critical(pair: &CriticalPair, w: &Word, n: usize) -> bool {
    if n == 0 {
        return true;
    }
    match w {
        Word::Periodic(_) => {
            let s = w.shift(n);
            &s == pair.alpha() || &s == pair.beta()
        }
        Word::Stream(_) => false,
    }
}

fn check_sign(
    pair: &CriticalPair,
    r: &PrecisionReal,
    params: &OverlapParams,
    len: usize,
) -> Result<(Result<(), (usize, Option<MismatchReason>)>, usize), DynamicsError> {
    let w = pair.itinerary_for(params.sign);
    let bits = params.bits().max(r.bits());
    let mut x = params.p.clone();
    let mut exact_returns = 0;
    for n in 0..len {
        let b = if returns_to_critical(pair, w, n) {
            exact_returns += usize::from(n > 0);
            x = params.p.clone();
            params.tie_symbol()
        } else {
            match params.branch(&x) {
                Some(b) => b,
                None => return Ok((Err((n, None)), exact_returns)),
            }
        };
        if b != w.symbol_at(n)? {
            return Ok((Err((n, Some(MismatchReason::Symbol))), exact_returns));
        }
        let target = project_to_bits(&w.shift(n), r, bits)?;
        if !x.overlaps(&target) {
            return Ok((Err((n, Some(MismatchReason::Projection))), exact_returns));
        }
        x = params.apply_branch(&x, b);
    }
    Ok((Ok(()), exact_returns))
}

/// Recompute both critical itineraries from `a = 1/r` and `p`, checking the
/// symbols against the pair and `f^n(p)` against `π_r(S^n w)` for `n < len`.
pub fn round_trip_verify(
    pair: &CriticalPair,
    r: &PrecisionReal,
    p: &PrecisionReal,
    len: usize,
) -> Result<RoundTrip, DynamicsError> {
    let a = r.recip()?;
    let mut exact_returns = 0;
    for sign in [Sign::Minus, Sign::Plus] {
        let params = OverlapParams::unchecked(a.clone(), p.clone(), sign);
        let (outcome, returns) = check_sign(pair, r, &params, len)?;
        exact_returns += returns;
        if let Err((index, reason)) = outcome {
            let verdict = match reason {
                Some(reason) => RoundTripVerdict::Mismatch { index, sign, reason },
                None => RoundTripVerdict::Inconclusive { index, sign },
            };
            return Ok(RoundTrip {
                verdict,
                checked: index,
                exact_returns,
            });
        }
    }
    Ok(RoundTrip {
        verdict: RoundTripVerdict::Verified,
        checked: len,
        exact_returns,
    })
}

#[derive(Clone, Debug)]
pub struct ReconstructOptions {
    pub root: RootOptions,
    pub verify_len: usize,
    pub max_bits: u32,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions {
            root: RootOptions::default(),
            verify_len: 64,
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionReport {
    pub params_minus: OverlapParams,
    pub params_plus: OverlapParams,
    pub r: PrecisionReal,
    pub a: PrecisionReal,
    /// `π_r(α)`.
    pub p: PrecisionReal,
    /// `π_r(β)`, which must agree with `p`.
    pub p_beta: PrecisionReal,
    pub admissibility: Verdict,
    pub verified_depth: usize,
    pub verdict: RoundTripVerdict,
    pub exact_returns: usize,
    pub precision_bits: u32,
    pub root: RootResult,
    pub warnings: Vec<String>,
}

/// Parameters `(a, p)` at working precision `bits`.
fn params_at(pair: &CriticalPair, root: &RootResult, bits: u32) -> Result<(PrecisionReal, PrecisionReal, PrecisionReal, PrecisionReal), DynamicsError> {
    let r = root
        .refine(pair, bits + 16)?
        .ok_or(DynamicsError::NoRoot {
            scan_ceiling: root.scan_ceiling,
        })?
        .with_bits(bits + 32);
    let a = r.recip()?;
    let p = project_to_bits(pair.alpha(), &r, bits + 16)?;
    let pb = project_to_bits(pair.beta(), &r, bits + 16)?;
    Ok((r, a, p, pb))
}

fn check_range(r: &PrecisionReal, a: &PrecisionReal, p: &PrecisionReal) -> Result<(), DynamicsError> {
    let bits = a.bits();
    if a.certainly_le(&PrecisionReal::one(bits))
        || certainly(a.certain_cmp(&PrecisionReal::from_int(2, bits)), Ordering::Greater)
    {
        return Err(DynamicsError::OutOfRange(format!("a = {a} outside (1, 2]")));
    }
    if certainly(p.certain_cmp(r), Ordering::Greater) || certainly(p.certain_cmp(&r.rsub_int(1)), Ordering::Less) {
        return Err(DynamicsError::OutOfRange(format!("p = {p} outside [1 − r, r] for r = {r}")));
    }
    Ok(())
}

/// Recover `(a, p)` from the smallest root and verify the round trip.
pub fn reconstruct(pair: &CriticalPair, opts: &ReconstructOptions) -> Result<ReconstructionReport, DynamicsError> {
    let admissibility = check_admissible(pair, (!pair.is_periodic()).then_some(DEFAULT_COMPARE_DEPTH))?;
    let mut warnings = Vec::new();
    if admissibility.verdict != Verdict::Admissible {
        warnings.push(format!("pair is {:?}", admissibility.verdict).to_lowercase());
    } else if !admissibility.exact {
        warnings.push(format!(
            "admissibility checked to depth {} only",
            admissibility.checked_depth
        ));
    }
    let root = smallest_root_with(pair, &opts.root)?;
    if root.status == RootStatus::NoneFound {
        return Err(DynamicsError::NoRoot {
            scan_ceiling: root.scan_ceiling,
        });
    }
    warnings.extend(root.warnings.iter().cloned());
    let r0 = root.r.clone().expect("root present");
    let log2_a = (1.0 / r0.value()).log2().max(0.0);
    let start = ((opts.verify_len as f64) * log2_a).ceil() as u32 + GUARD_BITS;
    let start = start.max(r0.bits());
    let mut bits = start;
    loop {
        let (r, a, p, pb) = params_at(pair, &root, bits)?;
        check_range(&r, &a, &p)?;
        if !p.overlaps(&pb) {
            return Err(DynamicsError::OutOfRange(format!(
                "π_r(α) = {p} and π_r(β) = {pb} disagree"
            )));
        }
        let rt = round_trip_verify(pair, &r, &p, opts.verify_len)?;
        let inconclusive = matches!(rt.verdict, RoundTripVerdict::Inconclusive { .. });
        if inconclusive && bits < opts.max_bits {
            bits = bits.saturating_mul(2).min(opts.max_bits);
            continue;
        }
        if inconclusive {
            warnings.push(format!("precision ceiling of {bits} bits reached"));
        }
        let params_minus = OverlapParams::unchecked(a.clone(), p.clone(), Sign::Minus);
        return Ok(ReconstructionReport {
            params_plus: params_minus.with_sign(Sign::Plus),
            params_minus,
            r,
            a,
            p,
            p_beta: pb,
            admissibility: admissibility.verdict,
            verified_depth: rt.checked,
            verdict: rt.verdict,
            exact_returns: rt.exact_returns,
            precision_bits: bits,
            root,
            warnings,
        });
    }
}

/// The reconstructed parameters of the prime pair `(@primes, 1(0))`.
pub fn prime_pair() -> CriticalPair {
    let primes = Word::Stream(builtin_stream("primes").expect("built-in stream"));
    CriticalPair::new(primes, Word::periodic("1", "0").expect("literal")).expect("distinct words")
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimalityRow {
    pub n: usize,
    /// `f^(n−1)(p) > p` under the minus convention.
    pub indicator: bool,
    pub iterate: PrecisionReal,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimalityTable {
    pub a: PrecisionReal,
    pub p: PrecisionReal,
    pub precision_bits: u32,
    pub rows: Vec<PrimalityRow>,
}

/// `f^(n−1)(p) > p` for `n = 2..=nmax`, with certified comparisons.
pub fn primality_indicator(nmax: usize) -> Result<PrimalityTable, DynamicsError> {
    primality_indicator_with(nmax, DEFAULT_MAX_BITS)
}

pub fn primality_indicator_with(nmax: usize, max_bits: u32) -> Result<PrimalityTable, DynamicsError> {
    if nmax < 2 {
        return Err(DynamicsError::InvalidParams("nmax must be at least 2".into()));
    }
    let pair = prime_pair();
    let root = smallest_root_with(&pair, &RootOptions::default())?;
    if root.status == RootStatus::NoneFound {
        return Err(DynamicsError::NoRoot {
            scan_ceiling: root.scan_ceiling,
        });
    }
    let log2_a = (1.0 / root.r.as_ref().map_or(0.5, PrecisionReal::value)).log2();
    let mut bits = ((nmax as f64) * log2_a).ceil() as u32 + GUARD_BITS;
    loop {
        let (_, a, p, _) = params_at(&pair, &root, bits)?;
        let params = OverlapParams::unchecked(a.clone(), p.clone(), Sign::Minus);
        match run(&params, &p, nmax, bits) {
            Ok((orbit, symbols)) => {
                let rows = (2..=nmax)
                    .map(|n| PrimalityRow {
                        n,
                        indicator: symbols[n - 1] == 1,
                        iterate: orbit[n - 1].clone(),
                    })
                    .collect();
                return Ok(PrimalityTable {
                    a,
                    p,
                    precision_bits: bits,
                    rows,
                });
            }
            Err(index) if bits >= max_bits => return Err(DynamicsError::PrecisionCeiling { index, bits }),
            Err(_) => bits = bits.saturating_mul(2).min(max_bits),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> PrecisionReal {
        PrecisionReal::from_ratio(n, d, 256)
    }

    fn sqrt2() -> PrecisionReal {
        PrecisionReal::from_int(2, 256).sqrt().unwrap()
    }

    fn pair(a: &str, b: &str) -> CriticalPair {
        CriticalPair::parse(a, b).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(OverlapParams::new(q(2, 1), q(1, 2), Sign::Minus).is_ok());
        assert!(OverlapParams::new(q(5, 2), q(1, 2), Sign::Minus).is_err());
        assert!(OverlapParams::new(q(1, 1), q(1, 2), Sign::Minus).is_err());
        assert!(OverlapParams::new(q(3, 2), q(9, 10), Sign::Minus).is_err());
        assert!(OverlapParams::new(q(3, 2), q(1, 10), Sign::Plus).is_err());
        let ok = OverlapParams::new(q(3, 2), q(1, 2), Sign::Plus).unwrap();
        assert!(ok.images_overlap());
    }

    #[test]
    fn map_values() {
        let m = OverlapParams::new(q(2, 1), q(1, 2), Sign::Minus).unwrap();
        assert_eq!(eval_map(&m, &q(1, 2)).unwrap().value(), 1.0);
        assert_eq!(eval_map(&m, &q(3, 4)).unwrap().value(), 0.5);
        let p = OverlapParams::new(sqrt2(), q(1, 2), Sign::Plus).unwrap();
        let v = eval_map(&p, &q(1, 2)).unwrap().value();
        assert!((v - (1.0 - 2f64.sqrt() / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn orbits() {
        let m = OverlapParams::new(q(2, 1), q(1, 2), Sign::Minus).unwrap();
        let o: Vec<f64> = orbit(&m, &q(1, 2), 3).unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(o, vec![0.5, 1.0, 1.0, 1.0]);
        assert_eq!(orbit(&m, &q(1, 3), 0).unwrap().len(), 1);
        let s = OverlapParams::new(sqrt2(), q(1, 2), Sign::Minus).unwrap();
        let o: Vec<f64> = orbit(&s, &q(1, 2), 4).unwrap().iter().map(|x| x.value()).collect();
        let expected = [0.5, 0.707_106_781_186_547_5, 0.585_786_437_626_905, 0.414_213_562_373_095, 0.585_786_437_626_905];
        for (a, b) in o.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn itineraries() {
        let m = OverlapParams::new(q(2, 1), q(1, 2), Sign::Minus).unwrap();
        assert_eq!(itinerary(&m, &q(1, 2), 5).unwrap().to_string(), "01111");
        assert_eq!(itinerary(&m.with_sign(Sign::Plus), &q(1, 2), 5).unwrap().to_string(), "10000");
        let s = OverlapParams::new(sqrt2(), q(1, 2), Sign::Minus).unwrap();
        assert_eq!(itinerary(&s, &q(1, 2), 6).unwrap().to_string(), "011010");
    }

    #[test]
    fn golden_critical_itineraries() {
        let phi = PrecisionReal::from_int(5, 512).sqrt().unwrap().add_int(1).div(&PrecisionReal::from_int(2, 512)).unwrap();
        let p = PrecisionReal::from_int(5, 512).sqrt().unwrap().rsub_int(3).div(&PrecisionReal::from_int(2, 512)).unwrap();
        let c = critical_itineraries(&phi, &p, 12).unwrap();
        assert_eq!(c.minus.to_string(), "010101010101");
        assert_eq!(c.plus.to_string(), "100000000000");
        assert!(!c.assumed_ties_minus.is_empty());
    }

    #[test]
    fn reconstruct_full_shift() {
        let rep = reconstruct(&pair("0(1)", "1(0)"), &ReconstructOptions::default()).unwrap();
        assert_eq!(rep.verdict, RoundTripVerdict::Verified);
        assert!((rep.a.value() - 2.0).abs() < 1e-12);
        assert!((rep.p.value() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reconstruct_golden_and_example() {
        let g = reconstruct(&pair("0(10)", "1(0)"), &ReconstructOptions::default()).unwrap();
        assert!(g.verdict.is_verified(), "{:?}", g.verdict);
        assert!((g.a.value() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((g.p.value() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(g.exact_returns > 0);
        let e = reconstruct(&pair("01(10)", "10(01)"), &ReconstructOptions::default()).unwrap();
        assert!(e.verdict.is_verified(), "{:?}", e.verdict);
        assert!((e.a.value() - 2f64.sqrt()).abs() < 1e-12);
        assert!((e.p.value() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn perturbed_p_is_caught() {
        let p = PrecisionReal::parse_decimal("0.500001", 128).unwrap();
        let rt = round_trip_verify(&pair("0(1)", "1(0)"), &q(1, 2), &p, 64).unwrap();
        match rt.verdict {
            RoundTripVerdict::Mismatch { index, .. } => assert!(index <= 3),
            v => panic!("expected a mismatch, got {v:?}"),
        }
    }

    #[test]
    fn small_primality_table() {
        let t = primality_indicator(10).unwrap();
        let primes: Vec<usize> = t.rows.iter().filter(|r| r.indicator).map(|r| r.n).collect();
        assert_eq!(primes, vec![2, 3, 5, 7]);
        assert_eq!(primality_indicator(2).unwrap().rows.len(), 1);
        assert!(primality_indicator(1).is_err());
    }
}
