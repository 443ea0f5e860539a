// Parse eventually periodic words, compare them and project them into [0, 1].

use std::error::Error;

use kneading::projection::{project, project_ifs, project_truncated};
use kneading::real::PrecisionReal;
use kneading::words::{distance, lex_compare, parse_word};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let u = parse_word("01(10)")?;
    let v = parse_word("0(110)")?;
    println!("u = {u}, v = {v}");
    println!("prefix of u: {}", u.prefix(12)?);
    println!("S^3 u = {}", u.shift(3));
    println!("order: {:?}, distance {}", lex_compare(&u, &v, None), distance(&u, &v)?);

    let x = PrecisionReal::from_ratio(2, 3, 128);
    let exact = project(&u, &x, 1e-30)?;
    println!("π_(2/3)(u) = {}", exact.to_decimal_string(25));
    for n in [4, 16, 64] {
        let cut = project_truncated(&u, &x, n)?;
        let ifs = project_ifs(&u, &x, n, &PrecisionReal::zero(128))?;
        println!(
            "n = {n:>2}: truncation error {:.3e}, IFS error {:.3e}",
            exact.sub(&cut).abs().upper(),
            exact.sub(&ifs).abs().upper()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
