//! Admissible pairs and membership in their address spaces.
//!
//! A pair `(α, β)` is admissible when `α = 01…`, `β = 10…`, no shift of `α`
//! lands in `(α, β]` and no shift of `β` lands in `[α, β)`. The address
//! spaces collect the words none of whose shifts enter `(α, β]` (minus) or
//! `[α, β)` (plus).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::words::{lex_compare, parse_word, LexOrder, Word, WordError, DEFAULT_COMPARE_DEPTH};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdmissibilityError {
    #[error("α and β are the same word")]
    Degenerate,
    #[error("a depth must be given when a stream word is involved")]
    DepthRequired,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Tie-breaking convention of the overlapping map; also selects the address
/// space `Ω_(α,β,±)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn closure(self) -> Closure {
        match self {
            Sign::Minus => Closure::OpenClosed,
            Sign::Plus => Closure::ClosedOpen,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

/// Three-valued answer; `Unknown` is never coerced to a boolean.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Unknown,
        }
    }

    pub fn known(self) -> Option<bool> {
        match self {
            Tri::Yes => Some(true),
            Tri::No => Some(false),
            Tri::Unknown => None,
        }
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

/// Which endpoint of the half-open interval is included.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    /// `(lo, hi]`
    OpenClosed,
    /// `[lo, hi)`
    ClosedOpen,
}

/// Candidate critical itineraries `(α, β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    alpha: Word,
    beta: Word,
}

impl CriticalPair {
    pub fn new(alpha: Word, beta: Word) -> Result<Self, AdmissibilityError> {
        if lex_compare(&alpha, &beta, None) == LexOrder::Equal || alpha == beta {
            return Err(AdmissibilityError::Degenerate);
        }
        Ok(CriticalPair { alpha, beta })
    }

    pub fn parse(alpha: &str, beta: &str) -> Result<Self, AdmissibilityError> {
        Self::new(parse_word(alpha)?, parse_word(beta)?)
    }

    pub fn alpha(&self) -> &Word {
        &self.alpha
    }

    pub fn beta(&self) -> &Word {
        &self.beta
    }

    /// The word whose orbit is the critical itinerary for `sign`.
    pub fn itinerary_for(&self, sign: Sign) -> &Word {
        match sign {
            Sign::Minus => &self.alpha,
            Sign::Plus => &self.beta,
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.alpha.is_periodic() && self.beta.is_periodic()
    }

    pub fn swapped(&self) -> CriticalPair {
        CriticalPair {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }
}

impl fmt::Display for CriticalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

fn greater(order: LexOrder) -> Tri {
    match order {
        LexOrder::Greater => Tri::Yes,
        LexOrder::Unknown(_) => Tri::Unknown,
        _ => Tri::No,
    }
}

fn less(order: LexOrder) -> Tri {
    match order {
        LexOrder::Less => Tri::Yes,
        LexOrder::Unknown(_) => Tri::Unknown,
        _ => Tri::No,
    }
}

fn not(t: Tri) -> Tri {
    match t {
        Tri::Yes => Tri::No,
        Tri::No => Tri::Yes,
        Tri::Unknown => Tri::Unknown,
    }
}

/// Membership of `w` in `(lo, hi]` or `[lo, hi)` under lexicographic order.
pub fn interval_contains(
    w: &Word,
    lo: &Word,
    hi: &Word,
    closure: Closure,
    depth: Option<usize>,
) -> Tri {
    let vs_lo = lex_compare(w, lo, depth);
    let vs_hi = lex_compare(w, hi, depth);
    match closure {
        Closure::OpenClosed => greater(vs_lo).and(not(greater(vs_hi))),
        Closure::ClosedOpen => not(less(vs_lo)).and(less(vs_hi)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `α_0 = 0, α_1 = 1, β_0 = 1, β_1 = 0`; `index` is the offending symbol.
    FirstSymbols,
    /// `S^index w` lies in the forbidden half-open interval.
    ShiftInInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: Condition,
    pub word: Role,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Admissible,
    NotAdmissible,
    Unknown,
}

/// How thoroughly one of the two shift conditions was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub shifts_checked: usize,
    /// Every shift of the word was covered (periodic words only).
    pub all_shifts: bool,
    /// Interval tests that could not be decided within the comparison depth.
    pub unresolved: usize,
}

impl ConditionCheck {
    pub fn exact(&self) -> bool {
        self.all_shifts && self.unresolved == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub checked_depth: usize,
    /// Both conditions were decided for every shift.
    pub exact: bool,
    pub alpha_condition: Option<ConditionCheck>,
    pub beta_condition: Option<ConditionCheck>,
}

impl AdmissibilityReport {
    fn rejected(witness: Witness) -> Self {
        AdmissibilityReport {
            verdict: Verdict::NotAdmissible,
            witness: Some(witness),
            checked_depth: 0,
            exact: true,
            alpha_condition: None,
            beta_condition: None,
        }
    }
}

/// Decide admissibility. Periodic pairs are decided exactly; a stream word
/// has its first `depth` shifts checked, each comparison resolved to `depth`
/// symbols.
pub fn check_admissible(
    pair: &CriticalPair,
    depth: Option<usize>,
) -> Result<AdmissibilityReport, AdmissibilityError> {
    let (alpha, beta) = (pair.alpha(), pair.beta());
    for (role, word, expected) in [
        (Role::Alpha, alpha, [0u8, 1]),
        (Role::Beta, beta, [1u8, 0]),
    ] {
        for (index, &e) in expected.iter().enumerate() {
            if word.symbol_at(index)? != e {
                return Ok(AdmissibilityReport::rejected(Witness {
                    condition: Condition::FirstSymbols,
                    word: role,
                    index,
                }));
            }
        }
    }
    if !pair.is_periodic() && depth.is_none() {
        return Err(AdmissibilityError::DepthRequired);
    }
    let compare_depth = depth.or(Some(DEFAULT_COMPARE_DEPTH));

    let mut checks = Vec::with_capacity(2);
    for (role, word, closure) in [
        (Role::Alpha, alpha, Closure::OpenClosed),
        (Role::Beta, beta, Closure::ClosedOpen),
    ] {
        let (shifts, all_shifts) = match word {
            Word::Periodic(ep) => (ep.cycle_bound(), true),
            Word::Stream(s) => {
                let d = depth.unwrap_or(DEFAULT_COMPARE_DEPTH);
                if d > s.available_depth() {
                    return Err(WordError::DepthExhausted {
                        name: s.name().to_string(),
                        index: d,
                        available: s.available_depth(),
                    }
                    .into());
                }
                (d, false)
            }
        };
        let mut unresolved = 0;
        // the word itself sits on the open end of its own interval
        for n in 1..shifts {
            match interval_contains(&word.shift(n), alpha, beta, closure, compare_depth) {
                Tri::Yes => {
                    return Ok(AdmissibilityReport::rejected(Witness {
                        condition: Condition::ShiftInInterval,
                        word: role,
                        index: n,
                    }))
                }
                Tri::Unknown => unresolved += 1,
                Tri::No => {}
            }
        }
        checks.push(ConditionCheck {
            shifts_checked: shifts,
            all_shifts,
            unresolved,
        });
    }
    let (a, b) = (checks[0], checks[1]);
    let verdict = if a.unresolved + b.unresolved > 0 {
        Verdict::Unknown
    } else {
        Verdict::Admissible
    };
    Ok(AdmissibilityReport {
        verdict,
        witness: None,
        checked_depth: a.shifts_checked.max(b.shifts_checked),
        exact: a.exact() && b.exact(),
        alpha_condition: Some(a),
        beta_condition: Some(b),
    })
}

/// Whether no shift `S^n w`, `n < depth`, enters the forbidden interval of
/// `Ω_(α,β,sign)`.
pub fn in_address_space(
    w: &Word,
    pair: &CriticalPair,
    sign: Sign,
    depth: usize,
) -> Result<Tri, AdmissibilityError> {
    if let Some(avail) = w.available_depth() {
        if depth > avail {
            return Err(WordError::DepthExhausted {
                name: w.to_string(),
                index: depth,
                available: avail,
            }
            .into());
        }
    }
    let mut result = Tri::Yes;
    for n in 0..depth {
        match interval_contains(&w.shift(n), pair.alpha(), pair.beta(), sign.closure(), None) {
            Tri::Yes => return Ok(Tri::No),
            Tri::Unknown => result = Tri::Unknown,
            Tri::No => {}
        }
    }
    Ok(result)
}
