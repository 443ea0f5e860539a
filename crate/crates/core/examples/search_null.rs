// Enumerate small periodic pairs and look for admissible ones with zero growth.

use std::error::Error;

use kneading::admissibility::{check_admissible, CriticalPair, Verdict};
use kneading::growth::{classify_growth, Classification};
use kneading::words::{EPWord, Word};

fn words(max_pre: usize, max_per: usize, head: [u8; 2]) -> Vec<Word> {
    let mut out = Vec::new();
    for pre in 0..=max_pre {
        for per in 1..=max_per {
            for bits in 0u32..1 << (pre + per) {
                let s: Vec<u8> = (0..pre + per).map(|i| (bits >> i & 1) as u8).collect();
                let Ok(w) = EPWord::new(s[..pre].to_vec(), s[pre..].to_vec()) else { continue };
                let w = Word::Periodic(w);
                if w.symbol_at(0).ok() == Some(head[0]) && w.symbol_at(1).ok() == Some(head[1]) && !out.contains(&w) {
                    out.push(w);
                }
            }
        }
    }
    out
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (alphas, betas) = (words(2, 3, [0, 1]), words(2, 3, [1, 0]));
    let (mut admissible, mut null) = (0, 0);
    for a in &alphas {
        for b in &betas {
            let pair = CriticalPair::new(a.clone(), b.clone())?;
            if check_admissible(&pair, None)?.verdict != Verdict::Admissible {
                continue;
            }
            admissible += 1;
            let report = classify_growth(&pair)?;
            if report.classification == Classification::Null {
                null += 1;
                println!("null: {pair}");
            }
        }
    }
    println!("{} pairs, {admissible} admissible, {null} null", alphas.len() * betas.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
