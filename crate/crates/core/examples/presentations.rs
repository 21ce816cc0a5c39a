// Parse presentations, combine them, and read off abelianizations.

use sidki::words::{
    abelianization, is_perfect, parse_presentation, smith_normal_form, IntegerMatrix,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a5 = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >")?;
    println!("{a5}");
    let lengths: Vec<usize> = a5.relators().iter().map(|r| r.len()).collect();
    println!("relator lengths {lengths:?}");

    let ab = abelianization(&a5);
    println!(
        "H1 invariant factors {:?}, rank {}, perfect {}",
        ab.invariant_factors,
        ab.free_rank,
        is_perfect(&a5)
    );

    let klein = parse_presentation("< a, b | a^2, b^2, [a,b] >")?;
    println!("{klein}: {:?}", abelianization(&klein).invariant_factors);

    let c2 = parse_presentation("< a | a^2 >")?;
    let c3 = parse_presentation("< b | b^3 >")?;
    println!("free product {}", c2.free_product(&c3));
    println!("direct cube  {}", c2.direct_power(3));

    let m = IntegerMatrix::from_rows_i64(3, 2, &[vec![2, 0], vec![0, 3], vec![5, 5]]);
    println!("SNF of (2,0),(0,3),(5,5): {:?}", smith_normal_form(&m).invariant_factors);

    match parse_presentation("< a | b^2 >") {
        Err(e) => println!("rejected: {e}"),
        Ok(p) => return Err(format!("accepted {p}").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
