// Sample the graph of f_(a,p,−) and an orbit as CSV rows.

use std::error::Error;

use kneading::admissibility::Sign;
use kneading::dynamics::{eval_map, itinerary, orbit, OverlapParams};
use kneading::real::PrecisionReal;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let bits = 128;
    let a = PrecisionReal::from_int(2, bits).sqrt()?;
    let params = OverlapParams::new(a, PrecisionReal::from_ratio(1, 2, bits), Sign::Minus)?;
    println!("block,x,y");
    for i in 0..=8 {
        let x = PrecisionReal::from_ratio(i, 8, bits);
        println!("graph,{},{}", x.value(), eval_map(&params, &x)?.value());
    }
    let x0 = PrecisionReal::from_ratio(1, 3, bits);
    for (n, x) in orbit(&params, &x0, 10)?.iter().enumerate() {
        println!("orbit,{n},{}", x.value());
    }
    println!("itinerary of 1/3: {}", itinerary(&params, &x0, 10)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
