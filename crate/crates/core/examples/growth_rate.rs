// Count allowed words with the forbidden-factor automaton and compute the growth rate.

use std::error::Error;

use kneading::admissibility::CriticalPair;
use kneading::growth::{build_automaton, classify_growth, count_prefixes, forbidden_factor_families, CountMethod};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (alpha, beta) in [("0(1)", "1(0)"), ("0(10)", "1(0)"), ("01(10)", "10(01)")] {
        let pair = CriticalPair::parse(alpha, beta)?;
        let families = forbidden_factor_families(&pair)?;
        println!("{pair}: minimal forbidden factors up to length 8, from α {:?}", families.alpha.minimal_members(8)?);
        let aut = build_automaton(&pair)?;
        let counts = aut.count_words(12)?;
        println!("  {} states, counts {:?}", aut.state_count(), &counts[1..]);
        assert_eq!(count_prefixes(&pair, 12, CountMethod::BruteForce)?, counts[12]);
        let report = classify_growth(&pair)?;
        println!("  rate {} nats/symbol, {:?}", report.rate.to_decimal_string(12), report.classification);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
