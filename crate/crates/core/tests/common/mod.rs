#![allow(dead_code)]

use std::collections::HashMap;

use kneading::admissibility::{check_admissible, CriticalPair, Verdict};
use kneading::growth::GrowthAutomaton;
use kneading::words::{EPWord, Word};
use rand::rngs::StdRng;
use rand::Rng;

pub const NAMED_PERIODIC: [(&str, &str); 3] = [("0(1)", "1(0)"), ("0(10)", "1(0)"), ("01(10)", "10(01)")];

pub fn pair(a: &str, b: &str) -> CriticalPair {
    CriticalPair::parse(a, b).unwrap()
}

pub fn random_bits(rng: &mut StdRng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..2u8)).collect()
}

pub fn random_ep(rng: &mut StdRng, max_pre: usize, max_per: usize) -> EPWord {
    let pre = rng.gen_range(0..=max_pre);
    let per = rng.gen_range(1..=max_per);
    EPWord::new(random_bits(rng, pre), random_bits(rng, per)).unwrap()
}

fn random_with_head(rng: &mut StdRng, head: [u8; 2], max_pre: usize, max_per: usize) -> EPWord {
    loop {
        let w = random_ep(rng, max_pre, max_per);
        if w.symbol(0) == head[0] && w.symbol(1) == head[1] {
            return w;
        }
    }
}

/// Distinct admissible pairs with `|pre|, |per| <= bound`.
pub fn random_admissible_pairs(rng: &mut StdRng, count: usize, bound: usize) -> Vec<CriticalPair> {
    let mut out: Vec<CriticalPair> = Vec::new();
    while out.len() < count {
        let a = random_with_head(rng, [0, 1], bound, bound);
        let b = random_with_head(rng, [1, 0], bound, bound);
        let p = CriticalPair::new(Word::Periodic(a), Word::Periodic(b)).unwrap();
        if check_admissible(&p, None).unwrap().verdict == Verdict::Admissible && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// An eventually periodic word read along an infinite path of the
/// automaton: `len` random steps, then a fixed preference until a state repeats.
pub fn sample_word(aut: &GrowthAutomaton, rng: &mut StdRng, len: usize) -> EPWord {
    let mut s = aut.start().expect("nonempty language");
    let mut symbols = Vec::new();
    for _ in 0..len {
        let choices: Vec<u8> = (0..2).filter(|&b| aut.next(s, b).is_some()).collect();
        let b = choices[rng.gen_range(0..choices.len())];
        symbols.push(b);
        s = aut.next(s, b).unwrap();
    }
    let prefer = rng.gen_range(0..2u8);
    let mut seen: HashMap<usize, usize> = HashMap::new();
    loop {
        if let Some(&i) = seen.get(&s) {
            let per = symbols[i..].to_vec();
            symbols.truncate(i);
            return EPWord::new(symbols, per).unwrap();
        }
        seen.insert(s, symbols.len());
        let b = if aut.next(s, prefer).is_some() { prefer } else { 1 - prefer };
        symbols.push(b);
        s = aut.next(s, b).unwrap();
    }
}
