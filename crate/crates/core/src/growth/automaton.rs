use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::GrowthError;
use crate::admissibility::CriticalPair;
use crate::words::{lex_compare, EPWord, Word};

/// Match-progress configuration of a state.
///
/// `alpha_shift = Some(k)` means the windows currently matching a prefix of
/// `α` constrain the continuation to stay `⪯ S^k α`; `beta_shift` likewise
/// bounds it from below by `S^k β`. `None` means no active window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StateLabel {
    pub alpha_shift: Option<usize>,
    pub beta_shift: Option<usize>,
}

/// The distinct shifts `S^k w`, `k >= 1`, with successor, head symbol and
/// lexicographic rank.
struct ShiftTable {
    shifts: Vec<usize>,
    next: Vec<usize>,
    head: Vec<u8>,
    rank: Vec<usize>,
    first: usize,
}

impl ShiftTable {
    fn new(word: &EPWord) -> Self {
        let entries = word.distinct_shifts(1);
        let index: HashMap<&EPWord, usize> =
            entries.iter().enumerate().map(|(i, (_, w))| (w, i)).collect();
        let next = entries.iter().map(|(_, w)| index[&w.shift(1)]).collect();
        let head = entries.iter().map(|(_, w)| w.symbol(0)).collect();
        let mut order: Vec<usize> = (0..entries.len()).collect();
        order.sort_by(|&i, &j| {
            lex_compare(
                &Word::Periodic(entries[i].1.clone()),
                &Word::Periodic(entries[j].1.clone()),
                None,
            )
            .ordering()
            .unwrap_or(Ordering::Equal)
        });
        let mut rank = vec![0; entries.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        ShiftTable {
            shifts: entries.iter().map(|(k, _)| *k).collect(),
            next,
            head,
            rank,
            first: index[&word.shift(1)],
        }
    }
}

/// Deterministic recognizer of the finite words with no forbidden factor.
///
/// Every state is accepting; a missing transition means the symbol completes
/// a forbidden factor. After trimming every state has a successor.
#[derive(Clone, Debug)]
pub struct GrowthAutomaton {
    labels: Vec<StateLabel>,
    transitions: Vec<[Option<usize>; 2]>,
    start: Option<usize>,
    trimmed: bool,
}

type Key = (Option<usize>, Option<usize>);

fn step(alpha: &ShiftTable, beta: &ShiftTable, (m, big_m): Key, c: u8) -> Option<Key> {
    // windows following α may not read above it
    let mut a = match m {
        Some(i) => match c.cmp(&alpha.head[i]) {
            Ordering::Greater => return None,
            Ordering::Equal => Some(alpha.next[i]),
            Ordering::Less => None,
        },
        None => None,
    };
    if c == 0 {
        let s = alpha.first;
        a = Some(match a {
            Some(j) if alpha.rank[j] <= alpha.rank[s] => j,
            _ => s,
        });
    }
    // windows following β may not read below it
    let mut b = match big_m {
        Some(i) => match c.cmp(&beta.head[i]) {
            Ordering::Less => return None,
            Ordering::Equal => Some(beta.next[i]),
            Ordering::Greater => None,
        },
        None => None,
    };
    if c == 1 {
        let s = beta.first;
        b = Some(match b {
            Some(j) if beta.rank[j] >= beta.rank[s] => j,
            _ => s,
        });
    }
    Some((a, b))
}

/// Build the trimmed recognizer for an eventually periodic pair with
/// `α_0 = 0` and `β_0 = 1`.
pub fn build_automaton(pair: &CriticalPair) -> Result<GrowthAutomaton, GrowthError> {
    let mut automaton = build_untrimmed(pair)?;
    automaton.trim();
    Ok(automaton)
}

pub(crate) fn build_untrimmed(pair: &CriticalPair) -> Result<GrowthAutomaton, GrowthError> {
    let (alpha, beta) = match (pair.alpha(), pair.beta()) {
        (Word::Periodic(a), Word::Periodic(b)) => (a, b),
        _ => return Err(GrowthError::NotPeriodic),
    };
    if alpha.symbol(0) != 0 || beta.symbol(0) != 1 {
        return Err(GrowthError::FirstSymbols);
    }
    let ta = ShiftTable::new(alpha);
    let tb = ShiftTable::new(beta);

    let mut ids: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    let mut transitions: Vec<[Option<usize>; 2]> = Vec::new();
    let mut queue = VecDeque::new();
    let start: Key = (None, None);
    ids.insert(start, 0);
    keys.push(start);
    transitions.push([None, None]);
    queue.push_back(start);
    while let Some(key) = queue.pop_front() {
        let from = ids[&key];
        for c in 0..2u8 {
            if let Some(to) = step(&ta, &tb, key, c) {
                let id = *ids.entry(to).or_insert_with(|| {
                    keys.push(to);
                    transitions.push([None, None]);
                    queue.push_back(to);
                    keys.len() - 1
                });
                transitions[from][c as usize] = Some(id);
            }
        }
    }
    let labels = keys
        .iter()
        .map(|&(a, b)| StateLabel {
            alpha_shift: a.map(|i| ta.shifts[i]),
            beta_shift: b.map(|i| tb.shifts[i]),
        })
        .collect();
    Ok(GrowthAutomaton {
        labels,
        transitions,
        start: Some(0),
        trimmed: false,
    })
}

impl GrowthAutomaton {
    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[StateLabel] {
        &self.labels
    }

    pub fn start(&self) -> Option<usize> {
        self.start
    }

    pub fn is_trimmed(&self) -> bool {
        self.trimmed
    }

    /// Successor on `bit`, `None` for Reject.
    pub fn next(&self, state: usize, bit: u8) -> Option<usize> {
        self.transitions[state][bit as usize]
    }

    pub fn accepts(&self, word: &[u8]) -> bool {
        let mut s = match self.start {
            Some(s) => s,
            None => return false,
        };
        for &b in word {
            match self.next(s, b) {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }

    /// Remove states without an infinite continuation.
    pub fn trim(&mut self) {
        let n = self.labels.len();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for s in 0..n {
                if alive[s]
                    && !self.transitions[s]
                        .iter()
                        .any(|t| t.is_some_and(|t| alive[t]))
                {
                    alive[s] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut remap = vec![None; n];
        let mut labels = Vec::new();
        for s in (0..n).filter(|&s| alive[s]) {
            remap[s] = Some(labels.len());
            labels.push(self.labels[s]);
        }
        let transitions = (0..n)
            .filter(|&s| alive[s])
            .map(|s| self.transitions[s].map(|t| t.and_then(|t| remap[t])))
            .collect();
        self.start = self.start.and_then(|s| remap[s]);
        self.labels = labels;
        self.transitions = transitions;
        self.trimmed = true;
    }

    /// Number of accepted words of each length `0..=max_len`.
    pub fn count_words(&self, max_len: usize) -> Result<Vec<u128>, GrowthError> {
        let mut counts = Vec::with_capacity(max_len + 1);
        let mut dp = vec![0u128; self.labels.len()];
        match self.start {
            Some(s) => dp[s] = 1,
            None => return Ok(vec![0; max_len + 1]),
        }
        counts.push(1);
        for len in 1..=max_len {
            let mut next = vec![0u128; dp.len()];
            for (s, &c) in dp.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for t in self.transitions[s].iter().flatten() {
                    next[*t] = next[*t]
                        .checked_add(c)
                        .ok_or(GrowthError::Overflow { len })?;
                }
            }
            dp = next;
            let total = dp
                .iter()
                .try_fold(0u128, |acc, &c| acc.checked_add(c))
                .ok_or(GrowthError::Overflow { len })?;
            counts.push(total);
        }
        Ok(counts)
    }

    /// Edge list `(from, to)`, one entry per symbol.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.transitions
            .iter()
            .enumerate()
            .flat_map(|(s, ts)| ts.iter().flatten().map(move |&t| (s, t)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: &str, b: &str) -> CriticalPair {
        CriticalPair::parse(a, b).unwrap()
    }

    #[test]
    fn full_shift_accepts_everything() {
        let aut = build_automaton(&pair("0(1)", "1(0)")).unwrap();
        let counts = aut.count_words(10).unwrap();
        assert_eq!(counts, (0..=10).map(|l| 1u128 << l).collect::<Vec<_>>());
    }

    #[test]
    fn golden_pair_avoids_011() {
        let aut = build_automaton(&pair("0(10)", "1(0)")).unwrap();
        assert!(!aut.accepts(&[0, 1, 1]));
        assert!(!aut.accepts(&[1, 1, 0, 1, 1]));
        assert!(aut.accepts(&[1, 1, 1, 0, 1, 0, 0, 1, 0]));
        assert_eq!(aut.count_words(5).unwrap(), vec![1, 2, 4, 7, 12, 20]);
    }

    #[test]
    fn state_bound() {
        for (a, b) in [("0(1)", "1(0)"), ("01(10)", "10(01)"), ("0110(1)", "10(0)")] {
            let p = pair(a, b);
            let aut = build_untrimmed(&p).unwrap();
            let (ea, eb) = (p.alpha().as_periodic().unwrap(), p.beta().as_periodic().unwrap());
            assert!(aut.state_count() <= (ea.cycle_bound() + 1) * (eb.cycle_bound() + 1));
        }
    }

    #[test]
    fn trimming_removes_dead_ends() {
        // a hand-made automaton: 0 -> 1 -> (nothing)
        let mut aut = GrowthAutomaton {
            labels: vec![StateLabel { alpha_shift: None, beta_shift: None }; 3],
            transitions: vec![[Some(1), Some(2)], [None, None], [Some(2), Some(0)]],
            start: Some(0),
            trimmed: false,
        };
        aut.trim();
        assert_eq!(aut.state_count(), 2);
        assert!(aut.is_trimmed());
        for s in 0..aut.state_count() {
            assert!(aut.next(s, 0).is_some() || aut.next(s, 1).is_some());
        }
        assert!(!aut.accepts(&[0]));
        assert!(aut.accepts(&[1, 0, 1]));
    }

    #[test]
    fn rejects_non_periodic() {
        assert!(matches!(
            build_automaton(&pair("@primes", "1(0)")),
            Err(GrowthError::NotPeriodic)
        ));
    }
}
