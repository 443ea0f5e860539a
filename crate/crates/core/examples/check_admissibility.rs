// Decide whether pairs of critical words can come from an overlapping map.

use std::error::Error;

use kneading::admissibility::{check_admissible, CriticalPair};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (alpha, beta) in [("01(10)", "10(01)"), ("0(10)", "1(0)"), ("01(0)", "1(0)"), ("0(1)", "10(1)")] {
        let pair = CriticalPair::parse(alpha, beta)?;
        let report = check_admissible(&pair, None)?;
        println!("{pair}: {:?} (exact: {}), witness {:?}", report.verdict, report.exact, report.witness);
    }
    // stream words are only checked to a finite depth
    let primes = CriticalPair::parse("@primes", "1(0)")?;
    let report = check_admissible(&primes, Some(256))?;
    println!("{primes}: {:?} to depth {} (exact: {})", report.verdict, report.checked_depth, report.exact);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
