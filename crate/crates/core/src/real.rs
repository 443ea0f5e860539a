//! Fixed-point interval reals.
//!
//! A [`PrecisionReal`] is the closed interval `[lo, hi] * 2^-bits` with integer
//! endpoints. Every operation rounds outward, so when the inputs enclose some
//! true values the output encloses the true result. Mixed-precision operands
//! are rescaled to the larger precision first.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

const LOG10_2: f64 = 0.301_029_995_663_981_2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealError {
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("square root of a negative interval")]
    NegativeSqrt,
    #[error("cannot parse `{0}` as a real number")]
    Parse(String),
    #[error("non-finite floating point input")]
    NonFinite,
}

/// An interval enclosure `[lo, hi] * 2^-bits`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrecisionReal {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_shr(x: &BigInt, k: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << k))
}

fn ceil_shr(x: &BigInt, k: u32) -> BigInt {
    -(-x).div_floor(&(BigInt::one() << k))
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

fn ceil_sqrt(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &s * &s < *n {
        s + 1
    } else {
        s
    }
}

impl PrecisionReal {
    fn raw(lo: BigInt, hi: BigInt, bits: u32) -> Self {
        debug_assert!(lo <= hi);
        PrecisionReal { lo, hi, bits }
    }

    pub fn zero(bits: u32) -> Self {
        Self::raw(BigInt::zero(), BigInt::zero(), bits)
    }

    pub fn one(bits: u32) -> Self {
        Self::from_int(1, bits)
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        let v = BigInt::from(n) << bits;
        Self::raw(v.clone(), v, bits)
    }

    /// The value `mantissa * 2^exp2`, rounded outward to `bits` fractional bits.
    pub fn from_dyadic(mantissa: &BigInt, exp2: i64, bits: u32) -> Self {
        let shift = exp2 + i64::from(bits);
        if shift >= 0 {
            let v = mantissa << (shift as u64);
            Self::raw(v.clone(), v, bits)
        } else {
            let k = u32::try_from(-shift).unwrap_or(u32::MAX);
            Self::raw(floor_shr(mantissa, k), ceil_shr(mantissa, k), bits)
        }
    }

    /// `2^-k` as an exact point when `k <= bits`.
    pub fn pow2_neg(k: u32, bits: u32) -> Self {
        Self::from_dyadic(&BigInt::one(), -i64::from(k), bits)
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let scaled = q.numer() << bits;
        Self::raw(
            scaled.div_floor(q.denom()),
            ceil_div(&scaled, q.denom()),
            bits,
        )
    }

    pub fn from_ratio(num: i64, den: i64, bits: u32) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into()), bits)
    }

    pub fn from_f64(x: f64, bits: u32) -> Result<Self, RealError> {
        let q = BigRational::from_float(x).ok_or(RealError::NonFinite)?;
        Ok(Self::from_rational(&q, bits))
    }

    /// Interval hull of two floating point bounds (swapped if out of order).
    pub fn from_f64_bounds(a: f64, b: f64, bits: u32) -> Result<Self, RealError> {
        let lo = Self::from_f64(a.min(b), bits)?;
        let hi = Self::from_f64(a.max(b), bits)?;
        Ok(lo.hull(&hi))
    }

    pub fn parse_decimal(text: &str, bits: u32) -> Result<Self, RealError> {
        parse_rational(text)
            .map(|q| Self::from_rational(&q, bits))
            .ok_or_else(|| RealError::Parse(text.to_string()))
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Decimal digits the enclosure certifies: those of the grid for a
    /// point, otherwise `⌊−log10(half-width)⌋`.
    pub fn precision_digits(&self) -> u32 {
        let grid = (f64::from(self.bits) * LOG10_2).floor() as u32;
        match self.width_log2() {
            Some(w) if !self.is_point() => {
                let half = (w - 1.0) * LOG10_2;
                (-half).floor().clamp(0.0, f64::from(grid)) as u32
            }
            _ => grid,
        }
    }

    fn denom(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    pub fn lower_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), self.denom())
    }

    pub fn upper_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), self.denom())
    }

    pub fn midpoint_rational(&self) -> BigRational {
        BigRational::new(&self.lo + &self.hi, self.denom() << 1)
    }

    /// Midpoint as the nearest `f64`.
    pub fn value(&self) -> f64 {
        self.midpoint_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn lower(&self) -> f64 {
        self.lower_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn upper(&self) -> f64 {
        self.upper_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Half-width of the enclosure, rounded up to an `f64`.
    pub fn error_bound(&self) -> f64 {
        let w = &self.hi - &self.lo;
        if w.is_zero() {
            return 0.0;
        }
        let r = BigRational::new(w, self.denom() << 1)
            .to_f64()
            .unwrap_or(f64::MAX);
        if r == 0.0 {
            f64::MIN_POSITIVE
        } else {
            r * (1.0 + 4.0 * f64::EPSILON)
        }
    }

    /// Full width `hi - lo` as a rational.
    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, self.denom())
    }

    /// `log2` of the width, or `None` for points.
    pub fn width_log2(&self) -> Option<f64> {
        let w = &self.hi - &self.lo;
        if w.is_zero() {
            return None;
        }
        let drop = w.bits().saturating_sub(53);
        let top = (w >> drop).to_f64().unwrap_or(f64::MAX);
        Some(top.log2() + drop as f64 - f64::from(self.bits))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Rescale to `bits` fractional bits, rounding outward when precision drops.
    pub fn with_bits(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let k = bits - self.bits;
                Self::raw(&self.lo << k, &self.hi << k, bits)
            }
            Ordering::Less => {
                let k = self.bits - bits;
                Self::raw(floor_shr(&self.lo, k), ceil_shr(&self.hi, k), bits)
            }
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let bits = self.bits.max(other.bits);
        (self.with_bits(bits), other.with_bits(bits))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self::raw(a.lo + b.lo, a.hi + b.hi, a.bits)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self::raw(a.lo - b.hi, a.hi - b.lo, a.bits)
    }

    pub fn neg(&self) -> Self {
        Self::raw(-&self.hi, -&self.lo, self.bits)
    }

    pub fn add_int(&self, n: i64) -> Self {
        self.add(&Self::from_int(n, self.bits))
    }

    /// `n - self`.
    pub fn rsub_int(&self, n: i64) -> Self {
        Self::from_int(n, self.bits).sub(self)
    }

    pub fn mul_int(&self, n: i64) -> Self {
        let n = BigInt::from(n);
        let (x, y) = (&self.lo * &n, &self.hi * &n);
        if n.is_negative() {
            Self::raw(y, x, self.bits)
        } else {
            Self::raw(x, y, self.bits)
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let bits = a.bits;
        let (min, max) = if !a.lo.is_negative() && !b.lo.is_negative() {
            (&a.lo * &b.lo, &a.hi * &b.hi)
        } else {
            let p = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
            let min = p.iter().min().cloned().unwrap_or_default();
            let max = p.iter().max().cloned().unwrap_or_default();
            (min, max)
        };
        Self::raw(floor_shr(&min, bits), ceil_shr(&max, bits), bits)
    }

    pub fn square(&self) -> Self {
        if self.contains_zero() {
            let m = self.lo.abs().max(self.hi.abs());
            let top = ceil_shr(&(&m * &m), self.bits);
            Self::raw(BigInt::zero(), top, self.bits)
        } else {
            self.mul(self)
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.bits);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn div(&self, other: &Self) -> Result<Self, RealError> {
        if other.contains_zero() {
            return Err(RealError::DivisionByZero);
        }
        let (a, b) = self.aligned(other);
        let bits = a.bits;
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in [&a.lo, &a.hi] {
            let scaled = n << bits;
            for d in [&b.lo, &b.hi] {
                let f = scaled.div_floor(d);
                let c = ceil_div(&scaled, d);
                lo = Some(lo.map_or(f.clone(), |l| l.min(f)));
                hi = Some(hi.map_or(c.clone(), |h| h.max(c)));
            }
        }
        Ok(Self::raw(
            lo.unwrap_or_default(),
            hi.unwrap_or_default(),
            bits,
        ))
    }

    pub fn recip(&self) -> Result<Self, RealError> {
        Self::one(self.bits).div(self)
    }

    pub fn sqrt(&self) -> Result<Self, RealError> {
        if self.hi.is_negative() {
            return Err(RealError::NegativeSqrt);
        }
        let lo = if self.lo.is_negative() {
            BigInt::zero()
        } else {
            (&self.lo << self.bits).sqrt()
        };
        let hi = ceil_sqrt(&(&self.hi << self.bits));
        Ok(Self::raw(lo, hi, self.bits))
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Self::raw(BigInt::zero(), self.lo.abs().max(self.hi.clone()), self.bits)
        }
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self::raw(a.lo.min(b.lo), a.hi.max(b.hi), a.bits)
    }

    /// `self + [lo_add, hi_add]` where the bounds are given as an interval.
    pub fn widen_up(&self, tail: &Self) -> Self {
        let (a, t) = self.aligned(tail);
        Self::raw(a.lo, a.hi + t.hi, a.bits)
    }

    /// `self + [-t.hi, t.hi]`.
    pub fn widen_sym(&self, tail: &Self) -> Self {
        let (a, t) = self.aligned(tail);
        Self::raw(a.lo - &t.hi, a.hi + t.hi, a.bits)
    }

    /// Intersect with `[lo, hi]`, for quantities known to lie in that range.
    pub fn clamp_to(&self, lo: i64, hi: i64) -> Self {
        let l = BigInt::from(lo) << self.bits;
        let h = BigInt::from(hi) << self.bits;
        let a = self.lo.clone().max(l.clone()).min(h.clone());
        let b = self.hi.clone().min(h).max(l);
        Self::raw(a.clone().min(b.clone()), b.max(a), self.bits)
    }

    /// Lower and upper endpoints as point intervals.
    pub fn endpoints(&self) -> (Self, Self) {
        (
            Self::raw(self.lo.clone(), self.lo.clone(), self.bits),
            Self::raw(self.hi.clone(), self.hi.clone(), self.bits),
        )
    }

    pub fn midpoint(&self) -> Self {
        let s = &self.lo + &self.hi;
        Self::raw(floor_shr(&s, 1), ceil_shr(&s, 1), self.bits)
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.lo <= b.hi && b.lo <= a.hi
    }

    pub fn contains(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.lo <= b.lo && b.hi <= a.hi
    }

    /// Ordering that holds for every pair of points in the two enclosures,
    /// or `None` when they overlap. Two identical points compare `Equal`.
    pub fn certain_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, b) = self.aligned(other);
        if a.hi < b.lo {
            Some(Ordering::Less)
        } else if a.lo > b.hi {
            Some(Ordering::Greater)
        } else if a.is_point() && b.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Sign of every point in the enclosure, if uniform.
    pub fn sign(&self) -> Option<Ordering> {
        self.certain_cmp(&Self::zero(self.bits))
    }

    /// Certainly `self <= other` (for all enclosed values).
    pub fn certainly_le(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.hi <= b.lo
    }

    /// Midpoint rendered with `digits` decimals, trailing zeros trimmed.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let num = (&self.lo + &self.hi) * BigInt::from(10u32).pow(digits);
        let den = BigInt::one() << (self.bits + 1);
        // round half away from zero
        let (q, r) = num.abs().div_rem(&den);
        let q = if (r << 1) >= den { q + 1 } else { q };
        let neg = num.is_negative() && !q.is_zero();
        let s = q.to_string();
        let d = digits as usize;
        let (int_part, frac_part) = if s.len() > d {
            (s[..s.len() - d].to_string(), s[s.len() - d..].to_string())
        } else {
            ("0".to_string(), format!("{}{}", "0".repeat(d - s.len()), s))
        };
        let frac = frac_part.trim_end_matches('0');
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&int_part);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out
    }
}

/// Parse `"-1.25"`, `"3e-4"`, `"7/8"` or an integer as an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let digits = digits / 10;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut q = if scale >= 0 {
        BigRational::from_integer(digits * ten.pow(scale as u32))
    } else {
        BigRational::new(digits, ten.pow((-scale) as u32))
    };
    if neg {
        q = -q;
    }
    Some(q)
}

impl fmt::Debug for PrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PrecisionReal({} ± {:e}, {} bits)",
            self.to_decimal_string(self.precision_digits().clamp(1, 30)),
            self.error_bound(),
            self.bits
        )
    }
}

impl fmt::Display for PrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map_or(12, |p| p as u32);
        write!(f, "{}", self.to_decimal_string(digits))?;
        if !self.is_point() {
            write!(f, " ± {:.1e}", self.error_bound())?;
        }
        Ok(())
    }
}

impl Serialize for PrecisionReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PrecisionReal", 3)?;
        let digits = self.precision_digits().clamp(1, 60);
        s.serialize_field("value", &self.to_decimal_string(digits))?;
        s.serialize_field("error_bound", &self.error_bound())?;
        s.serialize_field("precision_digits", &self.precision_digits())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_enclosure_contains_value() {
        let x = PrecisionReal::from_rational(&q(1, 3), 64);
        assert!(x.lower_rational() <= q(1, 3) && q(1, 3) <= x.upper_rational());
        assert!(x.error_bound() < 1e-19);
        let half = PrecisionReal::from_ratio(1, 2, 8);
        assert!(half.is_point());
    }

    #[test]
    fn negative_rounding_is_outward() {
        let x = PrecisionReal::from_rational(&q(-1, 3), 16);
        assert!(x.lower_rational() < q(-1, 3) && q(-1, 3) < x.upper_rational());
        let shifted = x.with_bits(4);
        assert!(shifted.contains(&x));
    }

    #[test]
    fn arithmetic_encloses_true_values() {
        let bits = 80;
        let a = PrecisionReal::from_rational(&q(2, 7), bits);
        let b = PrecisionReal::from_rational(&q(-5, 11), bits);
        let checks = [
            (a.add(&b), q(2, 7) + q(-5, 11)),
            (a.sub(&b), q(2, 7) - q(-5, 11)),
            (a.mul(&b), q(2, 7) * q(-5, 11)),
            (a.div(&b).unwrap(), q(2, 7) / q(-5, 11)),
            (b.square(), q(25, 121)),
            (a.pow(5), q(32, 16807)),
        ];
        for (enc, exact) in checks {
            assert!(enc.lower_rational() <= exact && exact <= enc.upper_rational(), "{enc:?}");
            assert!(enc.error_bound() < 1e-20);
        }
    }

    #[test]
    fn sqrt_two() {
        let s = PrecisionReal::from_int(2, 100).sqrt().unwrap();
        assert!((s.value() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(s.square().lower() <= 2.0 && s.square().upper() >= 2.0);
    }

    #[test]
    fn division_by_zero_interval() {
        let z = PrecisionReal::from_f64_bounds(-1e-3, 1e-3, 30).unwrap();
        assert_eq!(PrecisionReal::one(30).div(&z), Err(RealError::DivisionByZero));
    }

    #[test]
    fn certain_comparisons() {
        let a = PrecisionReal::from_ratio(1, 3, 40);
        let b = PrecisionReal::from_ratio(1, 2, 40);
        assert_eq!(a.certain_cmp(&b), Some(Ordering::Less));
        assert_eq!(b.certain_cmp(&b.clone()), Some(Ordering::Equal));
        assert_eq!(a.certain_cmp(&a.clone()), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(PrecisionReal::from_ratio(1, 2, 10).to_decimal_string(5), "0.5");
        assert_eq!(PrecisionReal::from_ratio(-3, 4, 10).to_decimal_string(5), "-0.75");
        assert_eq!(PrecisionReal::from_int(2, 10).to_decimal_string(5), "2");
        let third = PrecisionReal::from_ratio(1, 3, 64);
        assert_eq!(third.to_decimal_string(6), "0.333333");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("0.25"), Some(q(1, 4)));
        assert_eq!(parse_rational("-1.5e-1"), Some(q(-3, 20)));
        assert_eq!(parse_rational("3/6"), Some(q(1, 2)));
        assert_eq!(parse_rational(".5"), Some(q(1, 2)));
        assert_eq!(parse_rational("1e3"), Some(q(1000, 1)));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn tiny_error_bounds_never_report_zero() {
        let x = PrecisionReal::from_rational(&q(1, 3), 3000);
        assert!(x.error_bound() > 0.0);
        assert!(x.width_log2().unwrap() < -2990.0);
    }
}
