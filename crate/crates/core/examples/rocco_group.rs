// Rocco's V(G) for G = C2, enumerated over the trivial subgroup.

use sidki::sidki::{realize_presentation, rocco_presentation};
use sidki::todd_coxeter::EnumerationLimits;
use sidki::words::parse_presentation;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let limits = EnumerationLimits::default();
    let c2 = realize_presentation(&parse_presentation("< a | a^2 >")?, limits)?;
    let v = rocco_presentation(c2.presentation(), Some(c2.words()))?;
    println!(
        "{} candidate relators, {} kept: {}",
        v.candidate_relators,
        v.presentation.relators().len(),
        v.presentation
    );
    let vg = realize_presentation(&v.presentation, limits)?;
    println!("|V(C2)| = {}", vg.order());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
