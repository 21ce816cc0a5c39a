// Realize S3 and C4 from coset tables and query their structure.

use sidki::finite::{FiniteGroup, FiniteHom};
use sidki::todd_coxeter::{enumerate, EnumerationLimits};
use sidki::words::parse_presentation;

fn realize(text: &str) -> Result<FiniteGroup, Box<dyn std::error::Error>> {
    let p = parse_presentation(text)?;
    Ok(FiniteGroup::realize(&enumerate(&p, &[], EnumerationLimits::default())?)?)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s3 = realize("< a, b | a^2, b^3, (a*b)^2 >")?;
    let words: Vec<String> = s3
        .words()
        .iter()
        .map(|w| s3.presentation().word_to_string(w))
        .collect();
    println!("S3 elements {words:?}");
    println!("class sizes {:?}", s3.conjugacy_classes().sizes());
    println!(
        "|Z| = {}, |[G,G]| = {}",
        s3.center().order(),
        s3.derived_subgroup().order()
    );
    let orders: Vec<u64> = (0..s3.order()).map(|x| s3.element_order(x)).collect();
    println!("element orders {orders:?}");

    let c4 = realize("< g | g^4 >")?;
    let c2 = realize("< h | h^2 >")?;
    let onto = FiniteHom::new(&c4, &c2, vec![c2.generator(0)])?;
    let (kernel, image) = onto.kernel_and_image();
    println!("C4 -> C2: |ker| = {}, |im| = {}", kernel.order(), image.order());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
