// Locate the smallest root r of π_x(α) − π_x(β) and derive a = 1/r.

use std::error::Error;

use kneading::admissibility::CriticalPair;
use kneading::projection::{exact_difference, smallest_root, smallest_root_with, RootOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let golden = CriticalPair::parse("0(10)", "1(0)")?;
    if let Some(g) = exact_difference(&golden) {
        println!("G(x) for {golden} = ({}) / ({})", g.numerator, g.denominator);
    }
    let root = smallest_root(&golden, 1e-12)?;
    let r = root.r.clone().ok_or("no root")?;
    println!("{golden}: r = {} via {:?}, a = {}", r.to_decimal_string(30), root.method, r.recip()?.to_decimal_string(30));
    let fine = root.refine(&golden, 400)?.ok_or("no root")?;
    println!("refined to 400 bits: {}", fine.to_decimal_string(100));

    // the stream path scans a grid and then bisects with certified signs
    let primes = CriticalPair::parse("@primes", "1(0)")?;
    let opts = RootOptions { digits: 30, ..RootOptions::default() };
    let root = smallest_root_with(&primes, &opts)?;
    let r = root.r.clone().ok_or("no root")?;
    println!("{primes}: a = {} via {:?}", r.recip()?.to_decimal_string(20), root.method);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
