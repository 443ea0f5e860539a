//! Prefix counts and exponential growth rates of address spaces.
//!
//! A window starting with 0 enters the open interval `(α, β)` exactly when it
//! first diverges above `α`, and a window starting with 1 enters it exactly
//! when it first diverges below `β`. The finite words free of such
//! divergences form a sofic language; its growth rate is the growth rate of
//! both address spaces `Ω_(α,β,±)`, which differ from it only by the
//! countably many words ending in exact copies of `α` or `β` (at most `O(L)`
//! prefixes of each length `L`).
//!
//! For eventually periodic pairs the language is recognized by a finite
//! automaton ([`build_automaton`]) and classified exactly: the pair is null
//! iff every strongly connected component is a single cycle. Otherwise the
//! rate is `ln ρ` for the spectral radius `ρ`, bracketed by power iteration.

mod automaton;
mod spectral;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

pub use automaton::{build_automaton, GrowthAutomaton, StateLabel};

use crate::admissibility::{CriticalPair, Role};
use crate::real::PrecisionReal;
use crate::words::{lex_compare, EPWord, FiniteWord, LexOrder, Word, WordError};

/// Brute-force enumeration refuses lengths beyond this.
pub const BRUTE_FORCE_MAX_LEN: usize = 24;
/// Lengths tabulated in exact reports.
pub const DEFAULT_COUNT_LEN: usize = 40;
/// An estimated rate at or above this is reported as non-null.
pub const DEFAULT_NONNULL_THRESHOLD: f64 = 0.1;
/// Width of the bracket on the spectral radius.
pub const SPECTRAL_TARGET: f64 = 1e-11;

const RATE_BITS: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrowthError {
    #[error("exact growth needs eventually periodic α and β")]
    NotPeriodic,
    #[error("α must start with 0 and β with 1")]
    FirstSymbols,
    #[error("brute force limited to length {max}, asked for {len}")]
    TooLong { len: usize, max: usize },
    #[error("word count overflows at length {len}")]
    Overflow { len: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// One of the two families of minimal forbidden divergences.
///
/// For `α` the members are `α_0…α_{k-1}·1` with `α_k = 0`, `k >= 1`; for `β`
/// they are `β_0…β_{k-1}·0` with `β_k = 1`, `k >= 1`.
#[derive(Clone, Debug)]
pub struct FactorFamily {
    role: Role,
    word: Word,
}

impl FactorFamily {
    pub fn role(&self) -> Role {
        self.role
    }

    /// Symbol read at the divergence.
    pub fn divergent_symbol(&self) -> u8 {
        match self.role {
            Role::Alpha => 1,
            Role::Beta => 0,
        }
    }

    /// Divergence positions `k` with `2 <= k + 1 <= max_len`.
    pub fn positions(&self, max_len: usize) -> Result<Vec<usize>, WordError> {
        let d = self.divergent_symbol();
        let mut out = Vec::new();
        for k in 1..max_len {
            if self.word.symbol_at(k)? != d {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// All members of length at most `max_len`, shortest first.
    pub fn members(&self, max_len: usize) -> Result<Vec<FiniteWord>, WordError> {
        let d = self.divergent_symbol();
        self.positions(max_len)?
            .into_iter()
            .map(|k| {
                let mut m = self.word.prefix(k)?;
                m.push(d);
                Ok(m)
            })
            .collect()
    }

    /// Members of length at most `max_len` that contain no shorter member.
    pub fn minimal_members(&self, max_len: usize) -> Result<Vec<FiniteWord>, WordError> {
        let all = self.members(max_len)?;
        let mut minimal: Vec<FiniteWord> = Vec::new();
        for m in all {
            let contains = minimal.iter().any(|s| {
                m.as_slice()
                    .windows(s.len())
                    .any(|w| w == s.as_slice())
            });
            if !contains {
                minimal.push(m);
            }
        }
        Ok(minimal)
    }

    /// Exact emptiness for periodic words; `None` when undecidable.
    pub fn is_empty(&self) -> Option<bool> {
        let constant = Word::Periodic(EPWord::constant(self.divergent_symbol()));
        match &self.word {
            Word::Periodic(_) => Some(self.word.shift(1) == constant),
            Word::Stream(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ForbiddenFamilies {
    pub alpha: FactorFamily,
    pub beta: FactorFamily,
}

/// The families `F_α` and `F_β`. Both address spaces share them.
pub fn forbidden_factor_families(pair: &CriticalPair) -> Result<ForbiddenFamilies, GrowthError> {
    check_heads(pair)?;
    Ok(ForbiddenFamilies {
        alpha: FactorFamily {
            role: Role::Alpha,
            word: pair.alpha().clone(),
        },
        beta: FactorFamily {
            role: Role::Beta,
            word: pair.beta().clone(),
        },
    })
}

fn check_heads(pair: &CriticalPair) -> Result<(), GrowthError> {
    if pair.alpha().symbol_at(0)? != 0 || pair.beta().symbol_at(0)? != 1 {
        return Err(GrowthError::FirstSymbols);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Automaton,
    BruteForce,
}

/// Number of words of length `len` with no forbidden factor.
pub fn count_prefixes(
    pair: &CriticalPair,
    len: usize,
    method: CountMethod,
) -> Result<u128, GrowthError> {
    match method {
        CountMethod::Automaton => {
            let counts = build_automaton(pair)?.count_words(len)?;
            Ok(counts[len])
        }
        CountMethod::BruteForce => brute_force_count(pair, len),
    }
}

/// Cylinder `[u·0^∞, u·1^∞]` lies inside the open interval `(α, β)`.
fn cylinder_inside(u: &[u8], alpha: &Word, beta: &Word) -> Result<bool, GrowthError> {
    let low = Word::Periodic(EPWord::new(u.to_vec(), vec![0])?);
    let high = Word::Periodic(EPWord::new(u.to_vec(), vec![1])?);
    let above_alpha = match lex_compare(alpha, &low, None) {
        LexOrder::Less => true,
        LexOrder::Unknown(depth) => return Err(WordError::Undecided { depth }.into()),
        _ => false,
    };
    let below_beta = match lex_compare(&high, beta, None) {
        LexOrder::Less => true,
        LexOrder::Unknown(depth) => return Err(WordError::Undecided { depth }.into()),
        _ => false,
    };
    Ok(above_alpha && below_beta)
}

/// Enumerate all `2^len` words and drop those with a factor whose every
/// infinite extension falls strictly between `α` and `β`.
fn brute_force_count(pair: &CriticalPair, len: usize) -> Result<u128, GrowthError> {
    if len > BRUTE_FORCE_MAX_LEN {
        return Err(GrowthError::TooLong {
            len,
            max: BRUTE_FORCE_MAX_LEN,
        });
    }
    // forbidden[l][code]: the length-l word with big-endian code is forbidden
    let mut forbidden: Vec<Vec<bool>> = vec![Vec::new()];
    for l in 1..=len {
        let mut row = Vec::with_capacity(1 << l);
        for code in 0u32..(1 << l) {
            let u: Vec<u8> = (0..l).map(|i| ((code >> (l - 1 - i)) & 1) as u8).collect();
            row.push(cylinder_inside(&u, pair.alpha(), pair.beta())?);
        }
        forbidden.push(row);
    }
    let mut count = 0u128;
    'words: for code in 0u32..(1u32 << len) {
        for s in 0..len {
            for t in s + 1..=len {
                let l = t - s;
                let factor = (code >> (len - t)) & ((1u32 << l) - 1);
                if forbidden[l][factor as usize] {
                    continue 'words;
                }
            }
        }
        count += 1;
    }
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthMode {
    Exact,
    Estimate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Null,
    NonNull,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub mode: GrowthMode,
    /// `counts[L]` is the number of allowed words of length `L`.
    pub counts: Vec<u128>,
    /// `(1/L)·ln(counts[L])`, the upper-bound sequence; `None` at `L = 0`.
    pub normalized_log_counts: Vec<Option<f64>>,
    /// Growth rate in nats per symbol.
    pub rate: PrecisionReal,
    pub classification: Classification,
    pub automaton_states: Option<usize>,
    pub method_notes: Vec<String>,
}

impl GrowthReport {
    pub fn upper_bound_at(&self, len: usize) -> Option<f64> {
        self.normalized_log_counts.get(len).copied().flatten()
    }
}

fn normalized(counts: &[u128]) -> Vec<Option<f64>> {
    counts
        .iter()
        .enumerate()
        .map(|(l, &c)| {
            if l == 0 || c == 0 {
                None
            } else {
                Some((c as f64).ln() / l as f64)
            }
        })
        .collect()
}

fn ln_bracket(lo: f64, hi: f64) -> (f64, f64) {
    let slack = |x: f64| 4.0 * f64::EPSILON * (x.abs() + 1.0);
    let a = lo.max(1.0).ln();
    let b = hi.max(1.0).ln();
    ((a - slack(a)).max(0.0), b + slack(b))
}

/// Exact classification of an eventually periodic pair.
pub fn classify_growth(pair: &CriticalPair) -> Result<GrowthReport, GrowthError> {
    classify_growth_with(pair, DEFAULT_COUNT_LEN)
}

pub fn classify_growth_with(
    pair: &CriticalPair,
    count_len: usize,
) -> Result<GrowthReport, GrowthError> {
    let aut = build_automaton(pair)?;
    let counts = aut.count_words(count_len)?;
    let edges = aut.edges();
    let comps = spectral::components(aut.state_count(), &edges);
    let mut notes = vec![
        format!(
            "trimmed automaton with {} states and {} transitions",
            aut.state_count(),
            edges.len()
        ),
        "counts are for the sofic cover; exact prefix sets of each address space differ by O(L) boundary words".to_string(),
        "both signs share the forbidden factors, so the rate applies to the union address space".to_string(),
    ];
    let dense: Vec<&spectral::Component> = comps.iter().filter(|c| !c.is_sparse()).collect();
    if dense.is_empty() {
        notes.push("every strongly connected component is a single cycle or trivial: polynomial growth".into());
        return Ok(GrowthReport {
            mode: GrowthMode::Exact,
            normalized_log_counts: normalized(&counts),
            counts,
            rate: PrecisionReal::zero(RATE_BITS),
            classification: Classification::Null,
            automaton_states: Some(aut.state_count()),
            method_notes: notes,
        });
    }
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for comp in &dense {
        let local: std::collections::HashMap<usize, usize> =
            comp.nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let sub: Vec<(usize, usize)> = edges
            .iter()
            .filter_map(|(a, b)| Some((*local.get(a)?, *local.get(b)?)))
            .collect();
        let (l, h, iters) = spectral::perron_bounds(comp.nodes.len(), &sub, SPECTRAL_TARGET);
        notes.push(format!(
            "component of {} states: spectral radius in [{l:.12}, {h:.12}] after {iters} iterations",
            comp.nodes.len()
        ));
        lo = lo.max(l);
        hi = hi.max(h);
    }
    let (rlo, rhi) = ln_bracket(lo, hi);
    let rate = PrecisionReal::from_f64_bounds(rlo, rhi, RATE_BITS)
        .unwrap_or_else(|_| PrecisionReal::zero(RATE_BITS));
    Ok(GrowthReport {
        mode: GrowthMode::Exact,
        normalized_log_counts: normalized(&counts),
        counts,
        rate,
        classification: Classification::NonNull,
        automaton_states: Some(aut.state_count()),
        method_notes: notes,
    })
}

type HorizonKey = (Option<usize>, Option<usize>);

/// Pick the tighter of two constraints `S^i w`, `S^j w`, comparing only the
/// `horizon` symbols that can still be read. `want_min` selects `⪯`.
fn tighter(w: &[u8], i: usize, j: usize, horizon: usize, want_min: bool) -> usize {
    for t in 0..horizon {
        let (x, y) = (w[i + t], w[j + t]);
        if x != y {
            let i_smaller = x < y;
            return if i_smaller == want_min { i } else { j };
        }
    }
    i.min(j)
}

fn horizon_step(
    alpha: &[u8],
    beta: &[u8],
    (m, big_m): HorizonKey,
    c: u8,
    horizon: usize,
) -> Option<HorizonKey> {
    let mut a = match m {
        Some(k) if c > alpha[k] => return None,
        Some(k) if c == alpha[k] => Some(k + 1),
        _ => None,
    };
    if c == 0 {
        a = Some(a.map_or(1, |k| tighter(alpha, k, 1, horizon, true)));
    }
    let mut b = match big_m {
        Some(k) if c < beta[k] => return None,
        Some(k) if c == beta[k] => Some(k + 1),
        _ => None,
    };
    if c == 1 {
        b = Some(b.map_or(1, |k| tighter(beta, k, 1, horizon, false)));
    }
    Some((a, b))
}

/// Counts of allowed words of lengths `0..=max_len`, using only the first
/// `max_len + 1` symbols of each word. Works for streams.
pub fn horizon_counts(pair: &CriticalPair, max_len: usize) -> Result<Vec<u128>, GrowthError> {
    check_heads(pair)?;
    let alpha = pair.alpha().prefix(max_len + 1)?.into_inner();
    let beta = pair.beta().prefix(max_len + 1)?.into_inner();
    let mut layer: BTreeMap<HorizonKey, u128> = BTreeMap::new();
    layer.insert((None, None), 1);
    let mut counts = vec![1u128];
    for pos in 0..max_len {
        let horizon = max_len - pos - 1;
        let mut next: BTreeMap<HorizonKey, u128> = BTreeMap::new();
        for (&key, &c) in &layer {
            for bit in 0..2u8 {
                if let Some(k) = horizon_step(&alpha, &beta, key, bit, horizon) {
                    let slot = next.entry(k).or_insert(0);
                    *slot = slot
                        .checked_add(c)
                        .ok_or(GrowthError::Overflow { len: pos + 1 })?;
                }
            }
        }
        let total = next
            .values()
            .try_fold(0u128, |acc, &c| acc.checked_add(c))
            .ok_or(GrowthError::Overflow { len: pos + 1 })?;
        counts.push(total);
        layer = next;
    }
    Ok(counts)
}

/// Bounded estimate from prefix counts up to `max_len`.
pub fn estimate_growth(pair: &CriticalPair, max_len: usize) -> Result<GrowthReport, GrowthError> {
    estimate_growth_with(pair, max_len, DEFAULT_NONNULL_THRESHOLD)
}

pub fn estimate_growth_with(
    pair: &CriticalPair,
    max_len: usize,
    threshold: f64,
) -> Result<GrowthReport, GrowthError> {
    let max_len = max_len.max(1);
    let counts = horizon_counts(pair, max_len)?;
    let log_counts = normalized(&counts);
    let estimate = log_counts[max_len].unwrap_or(0.0);
    let slack = 4.0 * f64::EPSILON * (estimate + 1.0);
    let rate = PrecisionReal::from_f64_bounds(estimate - slack, estimate + slack, RATE_BITS)
        .unwrap_or_else(|_| PrecisionReal::zero(RATE_BITS));
    let classification = if estimate >= threshold {
        Classification::NonNull
    } else {
        Classification::Unknown
    };
    let notes = vec![
        format!("counts use the first {} symbols of α and β", max_len + 1),
        format!(
            "rate is (1/L)·ln(counts[L]) at L = {max_len}, an upper bound on the true rate; non-null reported when it is at least {threshold}"
        ),
    ];
    Ok(GrowthReport {
        mode: GrowthMode::Estimate,
        normalized_log_counts: log_counts,
        counts,
        rate,
        classification,
        automaton_states: None,
        method_notes: notes,
    })
}
