// Rebuild f_(a,p,±) from a critical pair and verify its critical itineraries.

use std::error::Error;

use kneading::admissibility::CriticalPair;
use kneading::dynamics::{critical_itineraries, reconstruct, ReconstructOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let opts = ReconstructOptions { verify_len: 96, ..ReconstructOptions::default() };
    for (alpha, beta) in [("0(1)", "1(0)"), ("0(10)", "1(0)"), ("01(10)", "10(01)")] {
        let pair = CriticalPair::parse(alpha, beta)?;
        let report = reconstruct(&pair, &opts)?;
        println!(
            "{pair}: a = {}, p = {}, {:?} to depth {} at {} bits",
            report.a.to_decimal_string(15),
            report.p.to_decimal_string(15),
            report.verdict,
            report.verified_depth,
            report.precision_bits
        );
        let it = critical_itineraries(&report.a, &report.p, 24)?;
        println!("  τ− = {}, τ+ = {}", it.minus, it.plus);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
