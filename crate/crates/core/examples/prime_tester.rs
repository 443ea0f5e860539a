// Read primality off the orbit of the turning point of the prime-pair map.

use std::error::Error;

use kneading::dynamics::primality_indicator;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let table = primality_indicator(60)?;
    println!("a = {}, p = {}", table.a.to_decimal_string(15), table.p.to_decimal_string(15));
    let primes: Vec<usize> = table.rows.iter().filter(|r| r.indicator).map(|r| r.n).collect();
    println!("primes up to 60: {primes:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
