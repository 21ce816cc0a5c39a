// The two commutator identities evaluated inside G×G×G for random
// elements of F2 and Z^3.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sidki::groups::{random_element, FreeAbelian, FreeGroup, PresentedGroup};
use sidki::sidki::{double_presentation, identity_witness, rho_triple, RelatorSchedule};

fn sample<G: PresentedGroup>(g: &G, seed: u64, n: usize) -> Result<usize, Box<dyn std::error::Error>> {
    let d = double_presentation(g.presentation(), RelatorSchedule::GeneratorOnly, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..n {
        let [u, v, x, y] = std::array::from_fn(|_| random_element(g, &mut rng, 6));
        if !identity_witness(g, &d, &u, &v, &x, &y)? {
            failures += 1;
        }
    }
    Ok(failures)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = FreeGroup::new(2);
    let d = double_presentation(f2.presentation(), RelatorSchedule::GeneratorOnly, None)?;
    let x1 = f2.generator(0);
    let x2 = f2.generator(1);
    let w = f2.normal_word(&x1).commutator(&d.psi(&f2.normal_word(&x2)));
    let [l, m, r] = rho_triple(&f2, &d, &w);
    let names = f2.presentation().names();
    println!(
        "rho([x1, x2^psi]) = ({}, {}, {})",
        l.display(&names),
        m.display(&names),
        r.display(&names)
    );
    println!("F2 failures: {}", sample(&f2, 7, 300)?);
    println!("Z3 failures: {}", sample(&FreeAbelian::new(3), 7, 300)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
