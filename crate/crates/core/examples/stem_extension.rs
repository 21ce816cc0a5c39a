// W(A5) through a coset table of X(A5) over the ψ-copy of A5, and the
// stem-extension audit.

use sidki::sidki::{
    analyze_via_cosets, full_double, realize_presentation, stem_audit, DoubleModel,
};
use sidki::todd_coxeter::EnumerationLimits;
use sidki::words::parse_presentation;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let limits = EnumerationLimits::default();
    let a5 = realize_presentation(&parse_presentation("< a, b | a^2, b^3, (a*b)^5 >")?, limits)?;
    let d = full_double(&a5)?;
    println!("X(A5) has {} relators", d.double().relators().len());

    let (table, w) = analyze_via_cosets(&d, &a5, limits)?;
    println!(
        "index {}, |X| = {}, |im rho| = {}, |W| = {}",
        w.index,
        w.x_order,
        w.image_order,
        w.w_order()
    );
    println!("orders in W: {:?}", w.torsion_probe().orders);

    let audit = stem_audit(&d, &a5, DoubleModel::Cosets(&table))?;
    println!("{audit:#?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
