//! The projection `π_x(ω) = (1−x)·Σ ω_k x^k` and the smallest `x ∈ (0,1)`
//! where a pair of words projects to the same point.
//!
//! Root finding works with `G(x) = Σ (α_k − β_k) x^k`, which has the same
//! roots in `(0,1)` as `π_x(α) − π_x(β) = (1−x)·G(x)`.

mod poly;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use poly::{smallest_root_in_unit, DyadicRoot, IntPoly, Sturm};

use crate::admissibility::CriticalPair;
use crate::real::{PrecisionReal, RealError};
use crate::words::{EPWord, Word, WordError};

const LN2: f64 = std::f64::consts::LN_2;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("x must lie in [0, 1), got [{lo}, {hi}]")]
    OutOfRange { lo: String, hi: String },
    #[error("IFS point x0 must lie in [0, 1]")]
    StartOutOfRange,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Real(#[from] RealError),
}

fn check_unit(x: &PrecisionReal) -> Result<(), ProjectionError> {
    let one = PrecisionReal::one(x.bits());
    if x.lower_rational() < BigRational::zero() || x.certain_cmp(&one) != Some(Ordering::Less) {
        return Err(ProjectionError::OutOfRange {
            lo: format!("{}", x.lower()),
            hi: format!("{}", x.upper()),
        });
    }
    Ok(())
}

/// Terms `N` with `x^N / (1 − x) <= e^ln_eps`, assuming `x <= x_hi < 1`.
fn terms_for(x_hi: f64, ln_eps: f64) -> usize {
    if x_hi <= 0.0 {
        return 1;
    }
    let n = (ln_eps + (1.0 - x_hi).ln()) / x_hi.ln();
    (n.max(0.0).ceil() as usize).saturating_add(2)
}

fn bits_for(ln_eps: f64, floor: u32) -> u32 {
    let need = (-ln_eps / LN2).max(0.0).ceil() as u32 + 32;
    need.max(floor)
}

fn horner(bits: &[u8], x: &PrecisionReal) -> PrecisionReal {
    bits.iter().rev().fold(PrecisionReal::zero(x.bits()), |acc, &b| {
        let t = acc.mul(x);
        if b == 1 {
            t.add_int(1)
        } else {
            t
        }
    })
}

/// `Σ_{k<q} x^k`, positive for `x >= 0`.
fn geometric(q: usize, x: &PrecisionReal) -> PrecisionReal {
    horner(&vec![1u8; q], x)
}

/// `Σ w_k x^k` in closed form for an eventually periodic word.
fn ep_series(w: &EPWord, x: &PrecisionReal) -> Result<PrecisionReal, ProjectionError> {
    let pre = horner(w.preperiod(), x);
    let per = horner(w.period(), x);
    let denom = PrecisionReal::one(x.bits()).sub(&x.pow(w.period().len() as u32));
    let tail = x.pow(w.preperiod().len() as u32).mul(&per).div(&denom)?;
    Ok(pre.add(&tail))
}

/// `(1−x)·Σ w_k x^k` in closed form, avoiding the `(1−x)/(1−x^q)` cancellation.
fn ep_projection(w: &EPWord, x: &PrecisionReal) -> Result<PrecisionReal, ProjectionError> {
    let one_minus = x.rsub_int(1);
    let pre = one_minus.mul(&horner(w.preperiod(), x));
    let per = horner(w.period(), x).div(&geometric(w.period().len(), x))?;
    Ok(pre.add(&x.pow(w.preperiod().len() as u32).mul(&per)))
}

/// `Σ_{k<n} w_k x^k`, exact up to rounding.
fn partial_sum(w: &Word, x: &PrecisionReal, n: usize) -> Result<PrecisionReal, ProjectionError> {
    let symbols = w.prefix(n)?.into_inner();
    Ok(horner(&symbols, x))
}

/// `Σ w_k x^k` with truncation error at most `e^ln_eps`.
fn series_sum_ln(w: &Word, x: &PrecisionReal, ln_eps: f64) -> Result<PrecisionReal, ProjectionError> {
    check_unit(x)?;
    match w {
        Word::Periodic(ep) => ep_series(ep, x),
        Word::Stream(_) => {
            let n = terms_for(x.upper(), ln_eps);
            let head = partial_sum(w, x, n)?;
            let tail = x.pow(n as u32).div(&x.rsub_int(1))?;
            Ok(head.widen_up(&tail))
        }
    }
}

/// `Σ w_k x^k` with truncation error at most `eps`.
pub fn series_sum(w: &Word, x: &PrecisionReal, eps: f64) -> Result<PrecisionReal, ProjectionError> {
    series_sum_ln(w, x, eps.ln())
}

fn project_ln(w: &Word, x: &PrecisionReal, ln_eps: f64) -> Result<PrecisionReal, ProjectionError> {
    check_unit(x)?;
    let v = match w {
        Word::Periodic(ep) => ep_projection(ep, x)?,
        Word::Stream(_) => {
            // (1−x)·Σ_{k>=n} x^k = x^n
            let n = terms_for(x.upper(), ln_eps + (1.0 - x.upper()).max(f64::MIN_POSITIVE).ln());
            let head = x.rsub_int(1).mul(&partial_sum(w, x, n)?);
            head.widen_up(&x.pow(n as u32))
        }
    };
    Ok(v.clamp_to(0, 1))
}

/// `π_x(w)`. Closed form for eventually periodic words; streams are
/// truncated so the tail is at most `eps`.
pub fn project(w: &Word, x: &PrecisionReal, eps: f64) -> Result<PrecisionReal, ProjectionError> {
    project_ln(w, x, eps.ln())
}

/// `π_x(w)` with enclosure width about `2^-bits`.
pub fn project_to_bits(w: &Word, x: &PrecisionReal, bits: u32) -> Result<PrecisionReal, ProjectionError> {
    project_ln(w, &x.with_bits(x.bits().max(bits + 16)), -(f64::from(bits) + 2.0) * LN2)
}

/// `(1−x)·Σ_{k<=n} w_k x^k`, the projection truncated after index `n`.
pub fn project_truncated(w: &Word, x: &PrecisionReal, n: usize) -> Result<PrecisionReal, ProjectionError> {
    check_unit(x)?;
    Ok(x.rsub_int(1).mul(&partial_sum(w, x, n + 1)?))
}

/// `(g_{w_0} ∘ … ∘ g_{w_n})(x0)` with `g_0(t) = x·t`, `g_1(t) = x·t + 1 − x`.
pub fn project_ifs(
    w: &Word,
    x: &PrecisionReal,
    n: usize,
    x0: &PrecisionReal,
) -> Result<PrecisionReal, ProjectionError> {
    check_unit(x)?;
    if x0.lower_rational() < BigRational::zero() || x0.upper_rational() > BigRational::one() {
        return Err(ProjectionError::StartOutOfRange);
    }
    let symbols = w.prefix(n + 1)?.into_inner();
    let shift = x.rsub_int(1);
    Ok(symbols.iter().rev().fold(x0.clone(), |t, &b| {
        let t = x.mul(&t);
        if b == 1 {
            t.add(&shift)
        } else {
            t
        }
    }))
}

fn difference_ln(pair: &CriticalPair, x: &PrecisionReal, ln_eps: f64) -> Result<PrecisionReal, ProjectionError> {
    let half = ln_eps - LN2;
    let a = series_sum_ln(pair.alpha(), x, half)?;
    let b = series_sum_ln(pair.beta(), x, half)?;
    Ok(a.sub(&b))
}

/// `G(x) = Σ (α_k − β_k) x^k` with error at most `eps`.
pub fn pair_difference(pair: &CriticalPair, x: &PrecisionReal, eps: f64) -> Result<PrecisionReal, ProjectionError> {
    difference_ln(pair, x, eps.ln())
}

/// `G` as a reduced ratio of integer polynomials, `D(0) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub numerator: IntPoly,
    pub denominator: IntPoly,
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coeffs = |p: &IntPoly| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let mut st = s.serialize_struct("RationalFunction", 3)?;
        st.serialize_field("display", &self.to_string())?;
        st.serialize_field("numerator", &coeffs(&self.numerator))?;
        st.serialize_field("denominator", &coeffs(&self.denominator))?;
        st.end()
    }
}

/// `Σ w_k x^k = N_w / D_w` with `D_w = 1 − x^q`.
fn ep_fraction(w: &EPWord) -> (IntPoly, IntPoly) {
    let m = w.preperiod().len();
    let q = w.period().len();
    let d = IntPoly::from_i64s(&[1]).sub(&IntPoly::monomial(q, 1));
    let pre = IntPoly::from_bits(w.preperiod());
    let per = IntPoly::from_bits(w.period());
    (pre.mul(&d).add(&IntPoly::monomial(m, 1).mul(&per)), d)
}

/// Exact `G` for a pair of eventually periodic words.
pub fn exact_difference(pair: &CriticalPair) -> Option<RationalFunction> {
    let (a, b) = (pair.alpha().as_periodic()?, pair.beta().as_periodic()?);
    let (na, da) = ep_fraction(a);
    let (nb, db) = ep_fraction(b);
    let num = na.mul(&db).sub(&nb.mul(&da));
    let den = da.mul(&db);
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.degree() > 0 {
        (num.div_exact(&g)?, den.div_exact(&g)?)
    } else {
        (num, den)
    };
    if den.coeffs().first().is_some_and(|c| c < &BigInt::zero()) {
        num = num.neg();
        den = den.neg();
    }
    Some(RationalFunction {
        numerator: num,
        denominator: den,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootOptions {
    /// Required bound on the residual `|π_r(α) − π_r(β)|`.
    pub tol: f64,
    /// Working precision in decimal digits for the enclosure of `r`.
    pub digits: u32,
    pub grid_start: f64,
    pub grid_step: f64,
    /// The scan stops at `1 − delta`.
    pub delta: f64,
    /// Use the exact polynomial path when both words are eventually periodic.
    pub exact: bool,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-12,
            digits: 50,
            grid_start: 1e-4,
            grid_step: 1e-3,
            delta: 1e-4,
            exact: true,
        }
    }
}

impl RootOptions {
    fn bits(&self) -> u32 {
        let from_tol = (-self.tol.log10()).max(0.0) + 10.0;
        (f64::from(self.digits).max(from_tol) * LOG2_10).ceil() as u32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootStatus {
    Root,
    NoneFound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootMethod {
    ExactRational,
    Bisection,
}

#[derive(Clone, Debug)]
enum Bracket {
    Exact(IntPoly),
    Series {
        lo: BigRational,
        hi: BigRational,
        sign_lo: Ordering,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct RootResult {
    pub status: RootStatus,
    pub r: Option<PrecisionReal>,
    pub scan_ceiling: f64,
    /// `|π_r(α) − π_r(β)|` over the enclosure of `r`.
    pub residual: Option<PrecisionReal>,
    /// Smallest `|G|` seen on the scan grid.
    pub min_abs_difference: Option<f64>,
    pub method: RootMethod,
    pub exact_difference: Option<RationalFunction>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    bracket: Option<Bracket>,
}

impl RootResult {
    /// Enclosure of `r` with width at most `2^-bits`.
    pub fn refine(&self, pair: &CriticalPair, bits: u32) -> Result<Option<PrecisionReal>, ProjectionError> {
        match &self.bracket {
            None => Ok(None),
            Some(Bracket::Exact(p)) => Ok(smallest_root_in_unit(p, bits).map(|d| d.to_real(bits + 8))),
            Some(Bracket::Series { lo, hi, sign_lo }) => {
                let (lo, hi, _) = bisect_series(pair, lo.clone(), hi.clone(), *sign_lo, bits)?;
                Ok(Some(enclosure(&lo, &hi, bits + 8)))
            }
        }
    }
}

fn enclosure(lo: &BigRational, hi: &BigRational, bits: u32) -> PrecisionReal {
    PrecisionReal::from_rational(lo, bits).hull(&PrecisionReal::from_rational(hi, bits))
}

fn log2_rational(q: &BigRational) -> f64 {
    let n = q.numer().bits() as f64;
    let d = q.denom().bits() as f64;
    // coarse, but only used to size truncation depths
    n - d
}

/// Certified sign of `G` at the rational point `x`, or `None`.
fn sign_at(pair: &CriticalPair, x: &BigRational, ln_eps: f64) -> Result<Option<Ordering>, ProjectionError> {
    let bits = bits_for(ln_eps, 64);
    let xr = PrecisionReal::from_rational(x, bits);
    Ok(difference_ln(pair, &xr, ln_eps)?.sign())
}

/// Halve `[lo, hi]` until its width is at most `2^-bits`. Returns the final
/// bracket and whether any midpoint had to be moved off an undecidable point.
fn bisect_series(
    pair: &CriticalPair,
    mut lo: BigRational,
    mut hi: BigRational,
    sign_lo: Ordering,
    bits: u32,
) -> Result<(BigRational, BigRational, bool), ProjectionError> {
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut stalled = false;
    while &hi - &lo > target {
        let width = &hi - &lo;
        let ln_w = log2_rational(&width) * LN2;
        let mid = (&lo + &hi) / &two;
        let eighth = &width / BigRational::from_integer(BigInt::from(8));
        let candidates = [
            (mid.clone(), ln_w - 6.0 * LN2),
            (mid.clone(), ln_w - 48.0 * LN2),
            (&mid + &eighth, ln_w - 48.0 * LN2),
            (&mid - &eighth, ln_w - 48.0 * LN2),
        ];
        let mut moved = false;
        for (x, ln_eps) in candidates {
            if let Some(s) = sign_at(pair, &x, ln_eps)? {
                if s == Ordering::Equal || s == sign_lo {
                    if s == Ordering::Equal {
                        return Ok((x.clone(), x, stalled));
                    }
                    lo = x;
                } else {
                    hi = x;
                }
                moved = true;
                break;
            }
        }
        if !moved {
            stalled = true;
            break;
        }
    }
    Ok((lo, hi, stalled))
}

fn unit_warning(r: &PrecisionReal) -> Option<String> {
    let half = PrecisionReal::from_ratio(1, 2, r.bits());
    (r.certain_cmp(&half) == Some(Ordering::Less))
        .then(|| "r < 1/2, so a = 1/r exceeds 2 and lies outside 1 < a <= 2".to_string())
}

fn residual_of(pair: &CriticalPair, r: &PrecisionReal) -> Result<PrecisionReal, ProjectionError> {
    let ln_eps = -(f64::from(r.bits()) + 8.0) * LN2;
    let a = project_ln(pair.alpha(), r, ln_eps)?;
    let b = project_ln(pair.beta(), r, ln_eps)?;
    Ok(a.sub(&b).abs())
}

/// Smallest root of `π_x(α) = π_x(β)` in `(0, 1)` with default options.
pub fn smallest_root(pair: &CriticalPair, tol: f64) -> Result<RootResult, ProjectionError> {
    smallest_root_with(
        pair,
        &RootOptions {
            tol,
            ..RootOptions::default()
        },
    )
}

pub fn smallest_root_with(pair: &CriticalPair, opts: &RootOptions) -> Result<RootResult, ProjectionError> {
    let bits = opts.bits();
    let rational = exact_difference(pair);
    if opts.exact {
        if let Some(rf) = rational {
            return exact_root(pair, rf, bits, opts);
        }
    }
    scan_root(pair, bits, opts, rational)
}

fn finish(pair: &CriticalPair, mut result: RootResult, tol: f64) -> Result<RootResult, ProjectionError> {
    if let Some(r) = &result.r {
        result.warnings.extend(unit_warning(r));
        let res = residual_of(pair, r)?;
        if res.upper() > tol {
            result.warnings.push(format!(
                "residual bound {:e} exceeds the tolerance {tol:e}",
                res.upper()
            ));
        }
        result.residual = Some(res);
    }
    Ok(result)
}

fn exact_root(
    pair: &CriticalPair,
    rf: RationalFunction,
    bits: u32,
    opts: &RootOptions,
) -> Result<RootResult, ProjectionError> {
    let root = smallest_root_in_unit(&rf.numerator, bits);
    let r = root.as_ref().map(|d| d.to_real(bits + 8));
    let result = RootResult {
        status: if r.is_some() { RootStatus::Root } else { RootStatus::NoneFound },
        r,
        scan_ceiling: 1.0,
        residual: None,
        min_abs_difference: None,
        method: RootMethod::ExactRational,
        bracket: Some(Bracket::Exact(rf.numerator.clone())),
        exact_difference: Some(rf),
        warnings: Vec::new(),
    };
    finish(pair, result, opts.tol)
}

fn scan_root(
    pair: &CriticalPair,
    bits: u32,
    opts: &RootOptions,
    rational: Option<RationalFunction>,
) -> Result<RootResult, ProjectionError> {
    let ceiling = 1.0 - opts.delta;
    let scan_ln_eps = (1e-9f64).ln();
    let mut min_abs = f64::INFINITY;
    let mut last: Option<(BigRational, Ordering)> = None;
    let mut bracket = None;
    let mut k = 0usize;
    loop {
        let x = (opts.grid_start + k as f64 * opts.grid_step).min(ceiling);
        let xq = BigRational::from_float(x).expect("finite grid point");
        let g = difference_ln(pair, &PrecisionReal::from_rational(&xq, 96), scan_ln_eps)?;
        min_abs = min_abs.min(g.value().abs());
        if let Some(s) = g.sign() {
            if s == Ordering::Equal {
                bracket = Some((xq.clone(), xq, s));
                break;
            }
            if let Some((prev, ps)) = &last {
                if *ps != s {
                    bracket = Some((prev.clone(), xq, *ps));
                    break;
                }
            }
            last = Some((xq, s));
        }
        if x >= ceiling {
            break;
        }
        k += 1;
    }
    let mut warnings = Vec::new();
    let Some((lo, hi, sign_lo)) = bracket else {
        if min_abs < opts.tol.sqrt() {
            warnings.push(format!(
                "no sign change below {ceiling}, but |G| falls to {min_abs:e}; a tangential root may be present"
            ));
        }
        return Ok(RootResult {
            status: RootStatus::NoneFound,
            r: None,
            scan_ceiling: ceiling,
            residual: None,
            min_abs_difference: Some(min_abs),
            method: RootMethod::Bisection,
            exact_difference: rational,
            warnings,
            bracket: None,
        });
    };
    let (lo, hi, stalled) = if lo == hi {
        (lo, hi, false)
    } else {
        bisect_series(pair, lo, hi, sign_lo, bits)?
    };
    if stalled {
        warnings.push("bisection stopped early: the sign of G could not be certified".into());
    }
    let result = RootResult {
        status: RootStatus::Root,
        r: Some(enclosure(&lo, &hi, bits + 8)),
        scan_ceiling: ceiling,
        residual: None,
        min_abs_difference: Some(min_abs),
        method: RootMethod::Bisection,
        exact_difference: rational,
        warnings,
        bracket: Some(Bracket::Series { lo, hi, sign_lo }),
    };
    finish(pair, result, opts.tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn pair(a: &str, b: &str) -> CriticalPair {
        CriticalPair::parse(a, b).unwrap()
    }

    fn x(num: i64, den: i64) -> PrecisionReal {
        PrecisionReal::from_ratio(num, den, 128)
    }

    #[test]
    fn simple_projections() {
        assert!(project(&w("(0)"), &x(3, 7), 1e-12).unwrap().value().abs() < 1e-30);
        assert!((project(&w("(1)"), &x(3, 7), 1e-12).unwrap().value() - 1.0).abs() < 1e-30);
        assert!((project(&w("1(0)"), &x(1, 2), 1e-12).unwrap().value() - 0.5).abs() < 1e-30);
        assert!((project(&w("(01)"), &x(1, 2), 1e-12).unwrap().value() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn stream_projection_meets_eps() {
        let v = project(&w("@primes"), &x(1, 2), 1e-20).unwrap();
        assert!(v.error_bound() <= 1e-20);
        let exact: f64 = (1..60).filter(|&n| (2..n).all(|d| n % d != 0) && n > 1)
            .map(|q: i32| 0.5f64.powi(q - 1))
            .sum::<f64>() * 0.5;
        assert!((v.value() - exact).abs() < 1e-15);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(project(&w("(1)"), &x(1, 1), 1e-9).is_err());
        assert!(project(&w("(1)"), &x(-1, 3), 1e-9).is_err());
    }

    #[test]
    fn ifs_agrees_with_closed_form() {
        let v = project_ifs(&w("1(0)"), &x(1, 2), 20, &x(3, 10)).unwrap();
        assert!((v.value() - 0.5).abs() <= 2f64.powi(-21));
        let a = project_ifs(&w("(01)"), &x(2, 3), 15, &x(0, 1)).unwrap();
        let b = project_ifs(&w("(01)"), &x(2, 3), 15, &x(1, 1)).unwrap();
        assert!((a.value() - b.value()).abs() <= (2.0f64 / 3.0).powi(16) + 1e-15);
    }

    #[test]
    fn difference_values() {
        let g = pair_difference(&pair("0(1)", "1(0)"), &x(1, 2), 1e-15).unwrap();
        assert!(g.value().abs() < 1e-15);
        let g0 = pair_difference(&pair("01(10)", "10(01)"), &x(0, 1), 1e-15).unwrap();
        assert_eq!(g0.value(), -1.0);
        let r = PrecisionReal::from_ratio(1, 2, 128).sqrt().unwrap();
        let g = pair_difference(&pair("01(10)", "10(01)"), &r, 1e-15).unwrap();
        assert!(g.value().abs() < 1e-15);
    }

    #[test]
    fn reduced_rational_function() {
        let rf = exact_difference(&pair("0(1)", "1(0)")).unwrap();
        assert_eq!(rf.numerator, IntPoly::from_i64s(&[-1, 2]));
        assert_eq!(rf.denominator, IntPoly::from_i64s(&[1, -1]));
        assert!(exact_difference(&pair("@primes", "1(0)")).is_none());
    }

    #[test]
    fn exact_roots() {
        let r = smallest_root(&pair("0(1)", "1(0)"), 1e-12).unwrap();
        assert_eq!(r.status, RootStatus::Root);
        let r = r.r.unwrap();
        assert!(r.is_point() && r.value() == 0.5);

        let g = smallest_root(&pair("0(10)", "1(0)"), 1e-12).unwrap();
        assert!((g.r.unwrap().value() - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        assert!(g.residual.unwrap().upper() <= 1e-12);

        let s = smallest_root(&pair("01(10)", "10(01)"), 1e-12).unwrap();
        assert!((s.r.unwrap().value() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(s.warnings.is_empty());
    }

    #[test]
    fn numeric_path_agrees_with_exact() {
        let opts = RootOptions {
            exact: false,
            ..RootOptions::default()
        };
        let p = pair("0(10)", "1(0)");
        let r = smallest_root_with(&p, &opts).unwrap();
        assert_eq!(r.method, RootMethod::Bisection);
        assert!((r.r.unwrap().value() - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn prime_root() {
        let r = smallest_root(&pair("@primes", "1(0)"), 1e-12).unwrap();
        assert_eq!(r.status, RootStatus::Root);
        let v = r.r.as_ref().unwrap();
        assert!((v.value() - 0.557_858_653_767_956_6).abs() < 1e-14);
        let fine = r.refine(&pair("@primes", "1(0)"), 300).unwrap().unwrap();
        assert!(fine.width_log2().unwrap() < -290.0);
        assert!(fine.overlaps(v));
    }

    #[test]
    fn small_root_warns() {
        assert!(unit_warning(&x(1, 3)).is_some());
        assert!(unit_warning(&x(1, 2)).is_none());
        assert!(unit_warning(&x(2, 3)).is_none());
    }
}
