// Build X(G) for small finite G, check the canonical maps, and compute
// L(G), D(G) and W(G) in a realized double.

use sidki::sidki::{full_double, realize_presentation, subgroup_families, torsion_probe};
use sidki::todd_coxeter::EnumerationLimits;
use sidki::words::{abelianization, parse_presentation, Word};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let limits = EnumerationLimits::default();
    for text in ["< a | a^2 >", "< a, b | a^2, b^2, [a,b] >"] {
        let g = realize_presentation(&parse_presentation(text)?, limits)?;
        let d = full_double(&g)?;
        d.verify_maps(&g)?;
        println!("X of {text}:\n  {}", d.double());

        let rho = &d.maps().rho;
        let names = rho.target().names();
        println!("  rho(a) = {}", rho.apply(&Word::generator(0)).display(&names));

        let x = realize_presentation(d.double(), limits)?;
        let g3 = realize_presentation(rho.target(), limits)?;
        let fam = subgroup_families(&d, &g, &x, &g3)?;
        println!(
            "  |X| = {}, |L| = {}, |D| = {}, |W| = {}, W = D n L: {}",
            x.order(),
            fam.l.order(),
            fam.d.order(),
            fam.w.order(),
            fam.w_equals_d_cap_l
        );
        println!(
            "  H1(X) factors {:?}",
            abelianization(d.double()).invariant_factors
        );
        println!("  orders in W: {:?}", torsion_probe(&x, &fam.w).orders);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
