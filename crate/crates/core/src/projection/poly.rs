//! Dense integer polynomials with exact root isolation on `(0, 1)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::real::PrecisionReal;

/// Coefficients in ascending powers of `x`, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

type RatPoly = Vec<BigRational>;

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Self::new(bits.iter().map(|&b| BigInt::from(b)).collect())
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn monomial(k: usize, c: i64) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = BigInt::zero();
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let g = self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return self.clone();
        }
        let sign = if self.0.last().is_some_and(Signed::is_negative) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        IntPoly(self.0.iter().map(|c| c / &g * &sign).collect())
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    }

    pub fn eval_real(&self, x: &PrecisionReal) -> PrecisionReal {
        self.0
            .iter()
            .rev()
            .fold(PrecisionReal::zero(x.bits()), |acc, c| {
                acc.mul(x)
                    .add(&PrecisionReal::from_rational(&BigRational::from(c.clone()), x.bits()))
            })
    }

    /// Exact sign at the dyadic point `k / 2^e`.
    pub fn sign_at_dyadic(&self, k: &BigInt, e: u32) -> Ordering {
        let d = self.degree();
        let mut acc = BigInt::zero();
        for (i, c) in self.0.iter().enumerate().rev() {
            acc = acc * k + (c << (u64::from(e) * (d - i) as u64));
        }
        acc.cmp(&BigInt::zero())
    }

    fn to_rat(&self) -> RatPoly {
        self.0.iter().map(|c| BigRational::from(c.clone())).collect()
    }

    fn from_rat(p: &RatPoly) -> Self {
        let lcm = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Self::new(p.iter().map(|c| (c * &lcm).to_integer()).collect()).primitive_keep_sign()
    }

    /// Divide by the positive content only.
    fn primitive_keep_sign(&self) -> Self {
        let g = self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return self.clone();
        }
        IntPoly(self.0.iter().map(|c| c / &g).collect())
    }

    /// Exact quotient, or `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let (q, r) = rat_divrem(&self.to_rat(), &other.to_rat());
        if !r.is_empty() {
            return None;
        }
        let lcm = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        if !lcm.is_one() {
            return None;
        }
        Some(Self::new(q.iter().map(|c| c.to_integer()).collect()))
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.to_rat(), other.to_rat());
        while !b.is_empty() {
            let (_, r) = rat_divrem(&a, &b);
            a = b;
            b = r;
        }
        Self::from_rat(&a).primitive()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.primitive();
        }
        self.div_exact(&g)
            .or_else(|| {
                let (q, _) = rat_divrem(&self.to_rat(), &g.to_rat());
                Some(Self::from_rat(&q))
            })
            .map(|p| p.primitive())
            .unwrap_or_else(|| self.clone())
    }
}

fn trim_rat(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rat_divrem(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let b = trim_rat(b.clone());
    let mut r = trim_rat(a.clone());
    let lead = b.last().expect("division by the zero polynomial").clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &f * c;
        }
        q[shift] = f;
        r.pop();
        r = trim_rat(r);
    }
    (trim_rat(q), r)
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sturm sequence of a squarefree polynomial.
pub struct Sturm(Vec<IntPoly>);

impl Sturm {
    pub fn new(p: &IntPoly) -> Self {
        let mut seq = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            seq.push(d);
        }
        while seq.len() >= 2 {
            let (a, b) = (&seq[seq.len() - 2], &seq[seq.len() - 1]);
            let (_, r) = rat_divrem(&a.to_rat(), &b.to_rat());
            if r.is_empty() {
                break;
            }
            // positive rescaling keeps the signs that matter
            let next = IntPoly::from_rat(&r).neg();
            seq.push(next);
        }
        Sturm(seq)
    }

    /// Sign changes of the sequence at `k / 2^e`, zeros skipped.
    pub fn variations(&self, k: &BigInt, e: u32) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.0 {
            let s = p.sign_at_dyadic(k, e);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in `(lo, hi]`, both endpoints at scale `2^-e`.
    pub fn count(&self, lo: &BigInt, hi: &BigInt, e: u32) -> usize {
        self.variations(lo, e).saturating_sub(self.variations(hi, e))
    }
}

/// Isolating enclosure of the smallest root in `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DyadicRoot {
    /// The root is exactly `k / 2^e`.
    Exact { k: BigInt, e: u32 },
    /// The unique root of `poly` in `(lo, hi) / 2^e`, with opposite signs at the ends.
    Bracket { lo: BigInt, hi: BigInt, e: u32 },
}

impl DyadicRoot {
    pub fn lower_rational(&self) -> BigRational {
        match self {
            DyadicRoot::Exact { k, e } | DyadicRoot::Bracket { lo: k, e, .. } => {
                BigRational::new(k.clone(), BigInt::one() << *e)
            }
        }
    }

    pub fn upper_rational(&self) -> BigRational {
        match self {
            DyadicRoot::Exact { k, e } | DyadicRoot::Bracket { hi: k, e, .. } => {
                BigRational::new(k.clone(), BigInt::one() << *e)
            }
        }
    }

    pub fn to_real(&self, bits: u32) -> PrecisionReal {
        PrecisionReal::from_rational(&self.lower_rational(), bits)
            .hull(&PrecisionReal::from_rational(&self.upper_rational(), bits))
    }
}

/// Remove the factors `x` and `x - 1` so neither end of `[0, 1]` is a root.
fn deflate_ends(p: &IntPoly) -> IntPoly {
    let mut p = p.clone();
    while !p.is_zero() && p.0[0].is_zero() {
        p.0.remove(0);
    }
    let x_minus_1 = IntPoly::from_i64s(&[-1, 1]);
    while p.degree() > 0 && p.0.iter().fold(BigInt::zero(), |s, c| s + c).is_zero() {
        match p.div_exact(&x_minus_1) {
            Some(q) => p = q,
            None => break,
        }
    }
    p
}

/// Smallest root of `p` in the open interval `(0, 1)`, or `None`.
/// The bracket is shrunk to width at most `2^-bits`.
pub fn smallest_root_in_unit(p: &IntPoly, bits: u32) -> Option<DyadicRoot> {
    if p.is_zero() {
        return None;
    }
    let sq = deflate_ends(&p.squarefree());
    if sq.degree() == 0 {
        return None;
    }
    let sturm = Sturm::new(&sq);
    let (mut lo, mut hi, mut e) = (BigInt::zero(), BigInt::one(), 0u32);
    if sturm.count(&lo, &hi, e) == 0 {
        return None;
    }
    // isolate: the smallest root stays in (lo, hi] and is alone once count = 1
    loop {
        if sturm.count(&lo, &hi, e) == 1 && sq.sign_at_dyadic(&hi, e) != Ordering::Equal {
            break;
        }
        lo <<= 1;
        hi <<= 1;
        e += 1;
        let mid: BigInt = (&lo + &hi) >> 1;
        let c = sturm.count(&lo, &mid, e);
        if c >= 1 {
            if c == 1 && sq.sign_at_dyadic(&mid, e) == Ordering::Equal {
                return Some(DyadicRoot::Exact { k: mid, e });
            }
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let s_lo = sq.sign_at_dyadic(&lo, e);
    while e < bits {
        lo <<= 1;
        hi <<= 1;
        e += 1;
        let mid: BigInt = (&lo + &hi) >> 1;
        match sq.sign_at_dyadic(&mid, e) {
            Ordering::Equal => return Some(DyadicRoot::Exact { k: mid, e }),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Some(DyadicRoot::Bracket { lo, hi, e })
}
