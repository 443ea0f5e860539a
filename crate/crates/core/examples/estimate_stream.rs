// Upper-bound the growth rate of a pair with a non-periodic critical word.

use std::error::Error;

use kneading::dynamics::prime_pair;
use kneading::growth::estimate_growth;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let pair = prime_pair();
    let report = estimate_growth(&pair, 30)?;
    for len in [5, 10, 20, 30] {
        println!("L = {len:>2}: c_L = {:>8}, (1/L) ln c_L = {:.6}", report.counts[len], report.upper_bound_at(len).unwrap_or(f64::NAN));
    }
    println!("estimate {} ({:?})", report.rate.to_decimal_string(8), report.classification);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
