// Drive the command-line front end in-process and capture its JSON.

use std::error::Error;

use kneading::cli;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(["kneading", "solve", "01(10)", "10(01)"], &mut out, &mut err);
    let v: serde_json::Value = serde_json::from_slice(&out)?;
    println!("exit {code}: a = {}, p = {}", v["outputs"]["a"]["value"], v["outputs"]["p"]["value"]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
