//! Infinite binary words: eventually periodic words held exactly and
//! rule-defined streams held lazily, with the shift map, lexicographic order
//! and the `2^-k` ultrametric.
//!
//! Literal grammar (used by [`parse_word`] and by `Display`):
//!
//! ```text
//! WORD   := BITS | BITS "(" BITS ")" | "(" BITS ")" | "@" NAME [ "+" OFFSET ]
//! ```
//!
//! `p(b)` is the preperiod `p` followed by `b` repeated forever. A bare `BITS`
//! is shorthand for `BITS(0)`. `@primes` is the built-in stream whose symbol
//! `n` is 1 iff `n + 1` is prime, and `@primes+3` is that stream shifted three
//! places.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use thiserror::Error;

use crate::real::PrecisionReal;

/// Comparison depth used when a stream is involved and no depth is given.
pub const DEFAULT_COMPARE_DEPTH: usize = 500;

/// Indices available from the built-in prime stream.
pub const PRIME_STREAM_DEPTH: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("empty word literal")]
    Empty,
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("invalid symbol {symbol:?} at position {position}")]
    InvalidSymbol { symbol: char, position: usize },
    #[error("unknown stream `@{0}`")]
    UnknownStream(String),
    #[error("malformed word literal `{0}`")]
    Malformed(String),
    #[error("index {index} is beyond the available depth {available} of stream `@{name}`")]
    DepthExhausted {
        name: String,
        index: usize,
        available: usize,
    },
    #[error("words agree on the first {depth} symbols; comparison undecided")]
    Undecided { depth: usize },
}

/// A finite string over `{0, 1}`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteWord(Vec<u8>);

impl FiniteWord {
    pub fn new(bits: Vec<u8>) -> Result<Self, WordError> {
        if let Some(position) = bits.iter().position(|&b| b > 1) {
            return Err(WordError::InvalidSymbol {
                symbol: char::from(b'0' + bits[position].min(9)),
                position,
            });
        }
        Ok(FiniteWord(bits))
    }

    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<u8> {
        self.0.get(i).copied()
    }

    pub fn push(&mut self, bit: u8) {
        assert!(bit <= 1, "binary symbol expected");
        self.0.push(bit);
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }
}

impl FromStr for FiniteWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_bits(s, 0).map(FiniteWord)
    }
}

impl serde::Serialize for FiniteWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteWord({self})")
    }
}

fn parse_bits(s: &str, offset: usize) -> Result<Vec<u8>, WordError> {
    s.chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(WordError::InvalidSymbol {
                symbol: c,
                position: offset + i,
            }),
        })
        .collect()
}

/// An eventually periodic word `pre · per · per · …` in canonical form:
/// the period is primitive and the preperiod is as short as possible.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EPWord {
    pre: Vec<u8>,
    per: Vec<u8>,
}

impl EPWord {
    pub fn new(pre: Vec<u8>, per: Vec<u8>) -> Result<Self, WordError> {
        if per.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        let pre = FiniteWord::new(pre)?.0;
        let per = FiniteWord::new(per)?.0;
        Ok(Self::canonical(pre, per))
    }

    fn canonical(mut pre: Vec<u8>, per: Vec<u8>) -> Self {
        let n = per.len();
        let d = (1..=n)
            .find(|&d| n % d == 0 && per.chunks(d).all(|c| c == &per[..d]))
            .unwrap_or(n);
        let mut per = per[..d].to_vec();
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        EPWord { pre, per }
    }

    /// The constant word `b b b …`.
    pub fn constant(bit: u8) -> Self {
        EPWord {
            pre: Vec::new(),
            per: vec![bit.min(1)],
        }
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.per
    }

    /// `|pre| + |per|`: the shifts `S^n` for `n` below this bound are all the
    /// distinct shifts of the word.
    pub fn cycle_bound(&self) -> usize {
        self.pre.len() + self.per.len()
    }

    pub fn symbol(&self, n: usize) -> u8 {
        if n < self.pre.len() {
            self.pre[n]
        } else {
            self.per[(n - self.pre.len()) % self.per.len()]
        }
    }

    pub fn shift(&self, n: usize) -> EPWord {
        if n <= self.pre.len() {
            EPWord {
                pre: self.pre[n..].to_vec(),
                per: self.per.clone(),
            }
        } else {
            let mut per = self.per.clone();
            per.rotate_left((n - self.pre.len()) % self.per.len());
            EPWord {
                pre: Vec::new(),
                per,
            }
        }
    }

    pub fn prefix(&self, len: usize) -> FiniteWord {
        FiniteWord((0..len).map(|i| self.symbol(i)).collect())
    }

    /// Distinct words among `S^n self`, `n >= from`.
    pub fn distinct_shifts(&self, from: usize) -> Vec<(usize, EPWord)> {
        let mut seen: Vec<(usize, EPWord)> = Vec::new();
        let end = from.max(self.pre.len()) + self.per.len();
        for n in from..end {
            let s = self.shift(n);
            if !seen.iter().any(|(_, w)| *w == s) {
                seen.push((n, s));
            }
        }
        seen
    }

    /// `self` with `head` prepended.
    pub fn prepend(&self, head: &[u8]) -> EPWord {
        let mut pre = head.to_vec();
        pre.extend_from_slice(&self.pre);
        Self::canonical(pre, self.per.clone())
    }
}

impl fmt::Display for EPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.pre {
            write!(f, "{b}")?;
        }
        write!(f, "(")?;
        for b in &self.per {
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for EPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EPWord({self})")
    }
}

type Rule = dyn Fn(usize) -> u8 + Send + Sync;

/// A word given by a deterministic index-to-symbol rule, valid below a fixed
/// depth. Shifting a stream adds to its offset.
#[derive(Clone)]
pub struct SymbolStream {
    name: Arc<str>,
    rule: Arc<Rule>,
    offset: usize,
    depth: usize,
}

impl SymbolStream {
    /// `rule(n)` must return 0 or 1 for every `n < depth`.
    pub fn new<F>(name: &str, depth: usize, rule: F) -> Self
    where
        F: Fn(usize) -> u8 + Send + Sync + 'static,
    {
        SymbolStream {
            name: Arc::from(name),
            rule: Arc::new(rule),
            offset: 0,
            depth,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn available_depth(&self) -> usize {
        self.depth.saturating_sub(self.offset)
    }

    pub fn symbol(&self, n: usize) -> Result<u8, WordError> {
        if n >= self.available_depth() {
            return Err(WordError::DepthExhausted {
                name: self.name.to_string(),
                index: n,
                available: self.available_depth(),
            });
        }
        Ok((self.rule)(self.offset + n))
    }

    pub fn shift(&self, n: usize) -> SymbolStream {
        SymbolStream {
            offset: self.offset + n,
            ..self.clone()
        }
    }
}

// Rules cannot be compared, so streams are identified by name and offset.
impl PartialEq for SymbolStream {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.offset == other.offset
    }
}

impl Eq for SymbolStream {}

impl fmt::Debug for SymbolStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolStream")
            .field("name", &self.name)
            .field("offset", &self.offset)
            .field("available_depth", &self.available_depth())
            .finish()
    }
}

impl fmt::Display for SymbolStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{}", self.name)?;
        if self.offset > 0 {
            write!(f, "+{}", self.offset)?;
        }
        Ok(())
    }
}

fn prime_sieve() -> &'static [bool] {
    static SIEVE: OnceLock<Vec<bool>> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let n = PRIME_STREAM_DEPTH + 2;
        let mut is_prime = vec![true; n];
        is_prime[0] = false;
        is_prime[1] = false;
        let mut i = 2;
        while i * i < n {
            if is_prime[i] {
                for j in (i * i..n).step_by(i) {
                    is_prime[j] = false;
                }
            }
            i += 1;
        }
        is_prime
    })
}

/// Built-in streams by name.
pub fn builtin_stream(name: &str) -> Option<SymbolStream> {
    match name {
        "primes" => Some(SymbolStream::new("primes", PRIME_STREAM_DEPTH, |n| {
            u8::from(prime_sieve()[n + 1])
        })),
        _ => None,
    }
}

/// An infinite binary word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Periodic(EPWord),
    Stream(SymbolStream),
}

impl Word {
    pub fn periodic(pre: &str, per: &str) -> Result<Word, WordError> {
        Ok(Word::Periodic(EPWord::new(
            parse_bits(pre, 0)?,
            parse_bits(per, pre.len() + 1)?,
        )?))
    }

    pub fn as_periodic(&self) -> Option<&EPWord> {
        match self {
            Word::Periodic(w) => Some(w),
            Word::Stream(_) => None,
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Word::Periodic(_))
    }

    /// Number of symbols that can be produced; `None` for periodic words.
    pub fn available_depth(&self) -> Option<usize> {
        match self {
            Word::Periodic(_) => None,
            Word::Stream(s) => Some(s.available_depth()),
        }
    }

    pub fn symbol_at(&self, n: usize) -> Result<u8, WordError> {
        match self {
            Word::Periodic(w) => Ok(w.symbol(n)),
            Word::Stream(s) => s.symbol(n),
        }
    }

    pub fn shift(&self, n: usize) -> Word {
        match self {
            Word::Periodic(w) => Word::Periodic(w.shift(n)),
            Word::Stream(s) => Word::Stream(s.shift(n)),
        }
    }

    pub fn prefix(&self, len: usize) -> Result<FiniteWord, WordError> {
        (0..len)
            .map(|i| self.symbol_at(i))
            .collect::<Result<Vec<_>, _>>()
            .map(FiniteWord)
    }
}

impl From<EPWord> for Word {
    fn from(w: EPWord) -> Self {
        Word::Periodic(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Periodic(w) => w.fmt(f),
            Word::Stream(s) => s.fmt(f),
        }
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(WordError::Empty);
    }
    if let Some(rest) = t.strip_prefix('@') {
        let (name, offset) = match rest.split_once('+') {
            Some((n, k)) => (
                n,
                k.parse::<usize>()
                    .map_err(|_| WordError::Malformed(text.to_string()))?,
            ),
            None => (rest, 0),
        };
        let stream =
            builtin_stream(name).ok_or_else(|| WordError::UnknownStream(name.to_string()))?;
        return Ok(Word::Stream(stream.shift(offset)));
    }
    match t.find('(') {
        None => {
            if t.contains(')') {
                return Err(WordError::Malformed(text.to_string()));
            }
            Ok(Word::Periodic(EPWord::new(parse_bits(t, 0)?, vec![0])?))
        }
        Some(open) => {
            let inner = t[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| WordError::Malformed(text.to_string()))?;
            if inner.contains(['(', ')']) {
                return Err(WordError::Malformed(text.to_string()));
            }
            let pre = parse_bits(&t[..open], 0)?;
            let per = parse_bits(inner, open + 1)?;
            Ok(Word::Periodic(EPWord::new(pre, per)?))
        }
    }
}

/// Result of a lexicographic comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LexOrder {
    Less,
    Equal,
    Greater,
    /// No difference within this many symbols (streams only).
    Unknown(usize),
}

impl LexOrder {
    pub fn ordering(self) -> Option<Ordering> {
        match self {
            LexOrder::Less => Some(Ordering::Less),
            LexOrder::Equal => Some(Ordering::Equal),
            LexOrder::Greater => Some(Ordering::Greater),
            LexOrder::Unknown(_) => None,
        }
    }

    fn from_bits(a: u8, b: u8) -> LexOrder {
        if a < b {
            LexOrder::Less
        } else {
            LexOrder::Greater
        }
    }
}

/// Index of the first symbol where the two words differ, if found.
fn first_difference(u: &Word, v: &Word, depth: Option<usize>) -> Result<(usize, u8, u8), LexOrder> {
    match (u, v) {
        (Word::Periodic(a), Word::Periodic(b)) => {
            let bound = a.pre.len() + b.pre.len() + a.per.len().lcm(&b.per.len());
            for i in 0..bound {
                let (x, y) = (a.symbol(i), b.symbol(i));
                if x != y {
                    return Ok((i, x, y));
                }
            }
            debug_assert_eq!(a, b);
            Err(LexOrder::Equal)
        }
        _ => {
            let mut limit = depth.unwrap_or(DEFAULT_COMPARE_DEPTH);
            for w in [u, v] {
                if let Some(d) = w.available_depth() {
                    limit = limit.min(d);
                }
            }
            for i in 0..limit {
                // within available depth on both sides
                let x = u.symbol_at(i).map_err(|_| LexOrder::Unknown(i))?;
                let y = v.symbol_at(i).map_err(|_| LexOrder::Unknown(i))?;
                if x != y {
                    return Ok((i, x, y));
                }
            }
            Err(LexOrder::Unknown(limit))
        }
    }
}

/// Lexicographic comparison. Exact for two periodic words; with a stream
/// involved, `Unknown(depth)` when no difference appears within `depth`
/// symbols (default [`DEFAULT_COMPARE_DEPTH`]).
pub fn lex_compare(u: &Word, v: &Word, depth: Option<usize>) -> LexOrder {
    match first_difference(u, v, depth) {
        Ok((_, x, y)) => LexOrder::from_bits(x, y),
        Err(order) => order,
    }
}

/// `d(u, v) = 2^-k` with `k` the first differing index, or 0 for equal words.
pub fn distance(u: &Word, v: &Word) -> Result<PrecisionReal, WordError> {
    match first_difference(u, v, None) {
        Ok((k, _, _)) => {
            let k = u32::try_from(k).unwrap_or(u32::MAX);
            Ok(PrecisionReal::pow2_neg(k, k.max(1)))
        }
        Err(LexOrder::Equal) => Ok(PrecisionReal::zero(1)),
        Err(LexOrder::Unknown(depth)) => Err(WordError::Undecided { depth }),
        Err(_) => unreachable!("first_difference only fails with Equal or Unknown"),
    }
}

/// `S^n w`.
pub fn shift(w: &Word, n: usize) -> Word {
    w.shift(n)
}

/// The first `len` symbols of `w`.
pub fn prefix(w: &Word, len: usize) -> Result<FiniteWord, WordError> {
    w.prefix(len)
}

pub fn symbol_at(w: &Word, n: usize) -> Result<u8, WordError> {
    w.symbol_at(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let a = w("01(10)");
        let ep = a.as_periodic().unwrap();
        assert_eq!(ep.preperiod(), &[0, 1]);
        assert_eq!(ep.period(), &[1, 0]);
        let b = w("(0101)");
        assert_eq!(b, w("(01)"));
        assert_eq!(b.to_string(), "(01)");
        assert_eq!(w("@primes").prefix(13).unwrap().to_string(), "0110101000101");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_word("01()"), Err(WordError::EmptyPeriod));
        assert!(matches!(
            parse_word("01(2)"),
            Err(WordError::InvalidSymbol { symbol: '2', position: 3 })
        ));
        assert_eq!(
            parse_word("@fibonacci"),
            Err(WordError::UnknownStream("fibonacci".into()))
        );
        assert!(matches!(parse_word("0(1"), Err(WordError::Malformed(_))));
        assert!(matches!(parse_word("0(1)1"), Err(WordError::Malformed(_))));
        assert_eq!(parse_word(""), Err(WordError::Empty));
    }

    #[test]
    fn bare_bits_pad_with_zeros() {
        assert_eq!(w("1"), w("1(0)"));
        assert_eq!(w("0110"), w("011(0)"));
    }

    #[test]
    fn canonical_preperiod_is_minimal() {
        assert_eq!(w("0(10)").to_string(), "(01)");
        assert_eq!(w("1(0)").to_string(), "1(0)");
        assert_eq!(w("110(110)").to_string(), "(110)");
        assert_eq!(w("0111(1)").to_string(), "0(1)");
    }

    #[test]
    fn symbols() {
        let a = w("01(10)");
        assert_eq!(a.symbol_at(0), Ok(0));
        assert_eq!(a.symbol_at(4), Ok(1));
        assert_eq!(w("@primes").symbol_at(1), Ok(1));
    }

    #[test]
    fn stream_depth_is_enforced() {
        let s = SymbolStream::new("short", 5, |n| (n % 2) as u8);
        let word = Word::Stream(s);
        assert!(word.prefix(5).is_ok());
        assert!(matches!(
            word.symbol_at(5),
            Err(WordError::DepthExhausted { index: 5, available: 5, .. })
        ));
        assert_eq!(word.shift(2).available_depth(), Some(3));
    }

    #[test]
    fn comparisons() {
        assert_eq!(lex_compare(&w("0(1)"), &w("1(0)"), None), LexOrder::Less);
        assert_eq!(lex_compare(&w("(01)"), &w("(0101)"), None), LexOrder::Equal);
        assert_eq!(lex_compare(&w("01(10)"), &w("0(10)"), None), LexOrder::Greater);
        let p = w("@primes");
        assert_eq!(lex_compare(&p, &p.clone(), Some(50)), LexOrder::Unknown(50));
        assert_eq!(lex_compare(&p, &w("1(0)"), Some(50)), LexOrder::Less);
    }

    #[test]
    fn shifts() {
        assert_eq!(shift(&w("01(10)"), 1), w("1(10)"));
        assert_eq!(shift(&w("(01)"), 2), w("(01)"));
        assert_eq!(shift(&w("01(10)"), 3), w("(01)"));
        assert_eq!(shift(&w("@primes"), 2).prefix(3).unwrap().to_string(), "101");
    }

    #[test]
    fn prefixes() {
        assert_eq!(prefix(&w("0(1)"), 3).unwrap().to_string(), "011");
        assert_eq!(prefix(&w("@primes"), 6).unwrap().to_string(), "011010");
        assert!(prefix(&w("0(1)"), 0).unwrap().is_empty());
    }

    #[test]
    fn distances() {
        let a = w("01(10)");
        assert_eq!(distance(&a, &a).unwrap().value(), 0.0);
        assert_eq!(distance(&w("0(1)"), &w("1(0)")).unwrap().value(), 1.0);
        assert_eq!(distance(&w("(01)"), &w("(0)")).unwrap().value(), 0.5);
        let p = w("@primes");
        assert!(matches!(distance(&p, &p.clone()), Err(WordError::Undecided { .. })));
    }

    #[test]
    fn display_round_trips_streams() {
        let s = shift(&w("@primes"), 4);
        assert_eq!(s.to_string(), "@primes+4");
        assert_eq!(w("@primes+4"), s);
    }

    #[test]
    fn distinct_shift_table() {
        let a = w("01(10)");
        let shifts = a.as_periodic().unwrap().distinct_shifts(1);
        let names: Vec<String> = shifts.iter().map(|(_, s)| s.to_string()).collect();
        assert_eq!(names, vec!["1(10)", "(10)", "(01)"]);
    }
}
