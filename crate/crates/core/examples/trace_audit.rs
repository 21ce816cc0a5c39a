// Group ring arithmetic, torsion idempotents, and trace audits of
// conjugated idempotents.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sidki::finite::FiniteGroup;
use sidki::group_ring::{
    conjugated_diagonal, format_rational, hattori_stallings, parse_ring_element,
    torsion_idempotent, trace_audit, RingMatrix,
};
use sidki::groups::{FreeAbelian, FreeGroup};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let p = parse_ring_element(&c2, "1/2*e + 1/2*a")?;
    println!("p^2 = {}", p.mul(&p)?.format());

    for n in [2usize, 3, 4, 6] {
        let c = Arc::new(FiniteGroup::cyclic(n));
        let p = torsion_idempotent(&c, &c.generator(0), n as u64)?;
        let report = trace_audit(&RingMatrix::diagonal(&c, vec![p])?)?;
        println!(
            "C{n}: kappa {}, epsilon {}, delta {}",
            format_rational(&report.kappa),
            format_rational(&report.epsilon),
            format_rational(&report.delta)
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let z2 = Arc::new(FreeAbelian::new(2));
    let (a, _) = conjugated_diagonal(&z2, &[true, false], &mut rng, 4, 2);
    println!("U diag(1,0) U^-1 over Q[Z^2]:");
    for row in a.format_rows() {
        println!("  {row:?}");
    }
    let report = trace_audit(&a)?;
    println!(
        "  kappa {}, epsilon {}, Zaleskii {}, weak Bass {}",
        format_rational(&report.kappa),
        format_rational(&report.epsilon),
        report.zaleskii_pass(),
        report.weak_bass_holds()
    );

    let f2 = Arc::new(FreeGroup::new(2));
    let (a, d) = conjugated_diagonal(&f2, &[true, true, false], &mut rng, 4, 2);
    println!(
        "HS class function over Q[F2] unchanged by conjugation: {}",
        hattori_stallings(&a)? == hattori_stallings(&d)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
