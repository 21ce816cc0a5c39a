// The JSON scenario reports that the command-line tool prints.

use sidki::report::exit_code;
use sidki::scenarios::{builtin, full_report, stem_audit_scenario};
use sidki::todd_coxeter::EnumerationLimits;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let limits = EnumerationLimits::default();
    let a5 = builtin("a5").ok_or("missing builtin")?;
    let report = stem_audit_scenario(a5, limits)?;
    println!("{}", report.to_json());

    let mut all = Vec::new();
    for r in full_report(7, limits) {
        all.push(r?);
    }
    for r in &all {
        println!("{:<12} {}", r.scenario, r.overall());
    }
    println!("exit code {}", exit_code(&all));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
