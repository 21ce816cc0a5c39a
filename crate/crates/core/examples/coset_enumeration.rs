// Todd–Coxeter on the icosahedral presentation of A5.

use sidki::todd_coxeter::{enumerate, EnumerationLimits};
use sidki::words::{parse_presentation, Word};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >")?;
    let limits = EnumerationLimits::default();

    let whole = enumerate(&p, &[], limits)?;
    println!("[G : 1] = {}", whole.index());
    let over_a = enumerate(&p, &[Word::generator(0)], limits)?;
    println!("[G : <a>] = {}", over_a.index());

    let perms = over_a.permutation_rep()?;
    for (name, perm) in p.names().iter().zip(&perms) {
        println!("  {name} -> {perm}");
    }
    let ab = Word::generator(0).commutator(&Word::generator(1));
    println!("[a,b] acts as {}", whole.word_image(&ab)?);

    let std = whole.standardize()?;
    println!("standardized table has {} cosets", std.num_cosets());
    let dump = std.dump();
    println!("{}", dump.lines().next().unwrap_or_default());

    let tight = EnumerationLimits::default().with_max_cosets(10)?;
    match enumerate(&p, &[], tight) {
        Err(e) => println!("with 10 cosets: {e}"),
        Ok(t) => return Err(format!("unexpected index {}", t.index()).into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
