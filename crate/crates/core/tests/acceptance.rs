//! Acceptance criteria, one line per criterion. Runs as a plain binary
//! (`harness = false`) and exits nonzero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sidki::finite::FiniteGroup;
use sidki::group_ring::{hattori_stallings, idempotent_corpus, trace_properties, RingMatrix};
use sidki::groups::{BaumslagSolitar, FreeAbelian, FreeGroup};
use sidki::scenarios::{identities_scenario, torsion_deltas, IdentityGroup};
use sidki::sidki::{
    analyze_via_cosets, full_double, realize_presentation, stem_audit, subgroup_families,
    torsion_probe, DoubleModel,
};
use sidki::todd_coxeter::{enumerate, EnumerationLimits};
use sidki::words::{abelianization, parse_presentation, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("{what} took {elapsed:?}, limit {limit:?}"),
    )
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Permutations of {0..4} composed left to right, closed under the
/// generators by breadth-first search.
fn permutation_closure(gens: &[[usize; 5]]) -> Vec<[usize; 5]> {
    let id = [0, 1, 2, 3, 4];
    let mut seen = HashSet::from([id]);
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for g in gens {
            let y = x.map(|p| g[p]);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    queue
}

fn compose(x: [usize; 5], y: [usize; 5]) -> [usize; 5] {
    x.map(|p| y[p])
}

fn power(x: [usize; 5], k: usize) -> [usize; 5] {
    (0..k).fold([0, 1, 2, 3, 4], |acc, _| compose(acc, x))
}

/// Criterion 1: Icosahedral presentation: 60 cosets over 1 and 30 over ⟨a⟩.
fn enumeration_baseline() -> Outcome {
    // oracle: a = (1 2)(3 4), b = (1 3 5) on five points
    let a = [1, 0, 3, 2, 4];
    let b = [2, 1, 4, 3, 0];
    let ab = compose(a, b);
    let id = [0, 1, 2, 3, 4];
    ensure(
        power(a, 2) == id && power(b, 3) == id && power(ab, 5) == id,
        "oracle permutations violate a relator",
    )?;
    let group = permutation_closure(&[a, b]);
    let orbit: BTreeSet<usize> = group.iter().map(|g| g[0]).collect();
    let stabilizer = group.iter().filter(|g| g[0] == 0).count();
    let oracle_order = orbit.len() * stabilizer;
    ensure(oracle_order == group.len(), "orbit-stabilizer count disagrees with closure")?;
    let a_order = (1..).find(|&k| power(a, k) == id).unwrap();
    let oracle_index_a = oracle_order / a_order;

    let p = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >").map_err(err)?;
    let limits = EnumerationLimits::default();
    let t0 = Instant::now();
    let whole = enumerate(&p, &[], limits).map_err(err)?;
    let t_whole = t0.elapsed();
    let t1 = Instant::now();
    let over_a = enumerate(&p, &[Word::generator(0)], limits).map_err(err)?;
    let t_a = t1.elapsed();
    ensure(
        whole.index() == oracle_order && whole.index() == 60,
        format!("index over 1 is {}", whole.index()),
    )?;
    ensure(
        over_a.index() == oracle_index_a && over_a.index() == 30,
        format!("index over <a> is {}", over_a.index()),
    )?;
    within(t_whole, Duration::from_secs(1), "enumeration over 1")?;
    within(t_a, Duration::from_secs(1), "enumeration over <a>")?;
    Ok(format!(
        "60 cosets ({t_whole:?}), 30 cosets ({t_a:?}); oracle |G| = {oracle_order}"
    ))
}

/// Criterion 2: X(C₂): order 4, abelianization [2,2], W trivial.
fn double_of_c2() -> Outcome {
    let t0 = Instant::now();
    let limits = EnumerationLimits::default();
    let g = realize_presentation(&parse_presentation("< a | a^2 >").map_err(err)?, limits)
        .map_err(err)?;
    let d = full_double(&g).map_err(err)?;
    // oracle: the hand presentation ⟨a, b | a², b², [a,b]⟩
    let hand = parse_presentation("< a, b | a^2, b^2, [a,b] >").map_err(err)?;
    ensure(
        d.double().relators() == hand.relators(),
        format!("double is {}", d.double()),
    )?;
    let x = realize_presentation(d.double(), limits).map_err(err)?;
    let g3 = realize_presentation(d.maps().rho.target(), limits).map_err(err)?;
    let fam = subgroup_families(&d, &g, &x, &g3).map_err(err)?;
    let ab = abelianization(d.double());
    let elapsed = t0.elapsed();
    ensure(x.order() == 4, format!("|X| = {}", x.order()))?;
    ensure(
        ab.invariant_factors == [2.into(), 2.into()] && ab.free_rank == 0,
        format!("abelianization {:?} rank {}", ab.invariant_factors, ab.free_rank),
    )?;
    ensure(fam.w.is_trivial(), format!("|W| = {}", fam.w.order()))?;
    within(elapsed, Duration::from_secs(1), "X(C2)")?;
    Ok(format!("|X| = 4, H1 = [2,2], |W| = 1 ({elapsed:?})"))
}

/// Regression values for X(C₂×C₂), pinned from the first verified run.
const C2XC2_X_ORDER: usize = 32;
const C2XC2_W_ORDER: usize = 2;

/// Criterion 3: X(C₂×C₂): W has 2-torsion.
fn torsion_in_double_of_klein_four() -> Outcome {
    let t0 = Instant::now();
    let limits = EnumerationLimits::default();
    let g = realize_presentation(
        &parse_presentation("< a, b | a^2, b^2, [a,b] >").map_err(err)?,
        limits,
    )
    .map_err(err)?;
    let d = full_double(&g).map_err(err)?;
    let x = realize_presentation(d.double(), limits).map_err(err)?;
    let g3 = realize_presentation(d.maps().rho.target(), limits).map_err(err)?;
    let fam = subgroup_families(&d, &g, &x, &g3).map_err(err)?;
    let probe = torsion_probe(&x, &fam.w);
    let elapsed = t0.elapsed();
    ensure(fam.w.order() >= 2, format!("|W| = {}", fam.w.order()))?;
    ensure(probe.has_order_two, "no element of order 2 in W")?;
    ensure(
        x.order() == C2XC2_X_ORDER && fam.w.order() == C2XC2_W_ORDER,
        format!("|X| = {}, |W| = {}", x.order(), fam.w.order()),
    )?;
    within(elapsed, Duration::from_secs(10), "X(C2xC2)")?;
    Ok(format!(
        "|X| = {}, |W| = {}, orders in W {:?} ({elapsed:?})",
        x.order(),
        fam.w.order(),
        probe.orders
    ))
}

/// Criterion 4: Stem-extension audit for A₅ over ι^ψ(A₅).
fn stem_audit_a5() -> Outcome {
    let t0 = Instant::now();
    let limits = EnumerationLimits::default();
    let a5 = realize_presentation(
        &parse_presentation("< a, b | a^2, b^3, (a*b)^5 >").map_err(err)?,
        limits,
    )
    .map_err(err)?;
    let d = full_double(&a5).map_err(err)?;
    let (table, w) = analyze_via_cosets(&d, &a5, limits).map_err(err)?;
    let audit = stem_audit(&d, &a5, DoubleModel::Cosets(&table)).map_err(err)?;
    let elapsed = t0.elapsed();
    ensure(
        w.x_order == w.index * 60,
        format!("|X| = {} vs index {}", w.x_order, w.index),
    )?;
    ensure(
        audit.image_order == 216_000 && audit.rho_surjective,
        format!("|im rho| = {}", audit.image_order),
    )?;
    ensure(audit.w_central, "W not central")?;
    ensure(audit.w_in_derived, "W not in [X,X]")?;
    ensure(audit.x_perfect, "X not perfect")?;
    ensure(audit.lemma_consistent, "verdicts 2-4 disagree")?;
    ensure(
        w.counts_consistent && w.x_order == w.w_order() * 216_000,
        "|X| != |W| |G|^3",
    )?;
    ensure(
        w.w_order() % 2 == 0 && w.w_order() <= 8,
        format!("|W| = {}", w.w_order()),
    )?;
    within(elapsed, Duration::from_secs(60), "A5 audit")?;
    Ok(format!(
        "index {}, |X| = {}, |W| = {} ({elapsed:?})",
        w.index,
        w.x_order,
        w.w_order()
    ))
}

/// Criterion 5: Trivial base: X and W trivial.
fn trivial_base() -> Outcome {
    let limits = EnumerationLimits::default();
    let g = realize_presentation(&parse_presentation("< | >").map_err(err)?, limits)
        .map_err(err)?;
    let d = full_double(&g).map_err(err)?;
    let x = realize_presentation(d.double(), limits).map_err(err)?;
    let g3 = realize_presentation(d.maps().rho.target(), limits).map_err(err)?;
    let fam = subgroup_families(&d, &g, &x, &g3).map_err(err)?;
    let (table, _) = analyze_via_cosets(&d, &g, limits).map_err(err)?;
    let audit = stem_audit(&d, &g, DoubleModel::Cosets(&table)).map_err(err)?;
    ensure(x.order() == 1, format!("|X| = {}", x.order()))?;
    ensure(fam.w.is_trivial(), "W nontrivial")?;
    ensure(audit.all_pass() && audit.w_order == 1, "audit verdicts")?;
    Ok("|X| = |W| = 1, audit vacuous".to_string())
}

/// Criterion 6: The commutator identities on 1000 samples in F₂ and in ℤ³.
fn commutator_identities() -> Outcome {
    let limits = EnumerationLimits::default();
    let mut lines = Vec::new();
    for (label, group) in [("F2", IdentityGroup::F2), ("Z3", IdentityGroup::Z3)] {
        let r = identities_scenario(&group, 1000, 7, limits).map_err(err)?;
        let failures = &r.payload["failures"];
        ensure(failures == "0", format!("{label}: {failures} failures"))?;
        lines.push(format!("{label} 0/1000 failures"));
    }
    Ok(lines.join(", "))
}

/// Criterion 7: Trace properties on four carriers and HS consistency on the corpus.
fn trace_property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let results = [
        ("C6", trace_properties(&Arc::new(FiniteGroup::cyclic(6)), &mut rng, 200)),
        ("Z2", trace_properties(&Arc::new(FreeAbelian::new(2)), &mut rng, 200)),
        ("F2", trace_properties(&Arc::new(FreeGroup::new(2)), &mut rng, 200)),
        (
            "BS(1,2)",
            trace_properties(&Arc::new(BaumslagSolitar::new(2)), &mut rng, 200),
        ),
    ];
    for (name, t) in &results {
        ensure(
            t.pairs == 200 && t.pass(),
            format!("{name}: {t:?}"),
        )?;
    }
    let corpus = idempotent_corpus(7).map_err(err)?;
    let with_classes = corpus
        .iter()
        .filter(|e| e.summary.hs_consistent.is_some())
        .count();
    ensure(
        corpus.iter().all(|e| e.summary.hs_consistent != Some(false)),
        "HS inconsistency in corpus",
    )?;
    // direct check on a freshly built matrix, independent of the corpus code
    let f2 = Arc::new(FreeGroup::new(2));
    let id = RingMatrix::identity(&f2, 2);
    let r = hattori_stallings(&id).map_err(err)?;
    ensure(r.total() == id.epsilon(), "HS total on identity")?;
    Ok(format!(
        "200 pairs x 4 carriers exact; HS consistent on {with_classes}/{} corpus matrices",
        corpus.len()
    ))
}

/// Criterion 8: Weak Bass delta: zero on torsion-free conjugates and (n−1)/n on
/// torsion idempotents; Zaleskii everywhere.
fn weak_bass_behaviour() -> Outcome {
    let corpus = idempotent_corpus(7).map_err(err)?;
    let torsion_free: Vec<_> = corpus
        .iter()
        .filter(|e| (e.carrier == "Z^2" || e.carrier == "F2") && e.name.contains("conjugated"))
        .collect();
    ensure(!torsion_free.is_empty(), "no conjugated idempotents over Z^2 / F2")?;
    for e in &torsion_free {
        ensure(
            e.summary.delta.is_zero(),
            format!("{}: delta {}", e.name, e.summary.delta),
        )?;
    }
    for (n, ok) in torsion_deltas(&corpus) {
        ensure(ok, format!("C{n}: delta is not {}/{n}", n - 1))?;
    }
    // independent value check for n = 6
    let six = corpus
        .iter()
        .find(|e| e.name == "C6 torsion idempotent")
        .ok_or("missing C6 entry")?;
    ensure(
        six.summary.delta == BigRational::new(5.into(), 6.into()),
        "C6 delta",
    )?;
    ensure(
        corpus.iter().all(|e| e.summary.zaleskii_pass()),
        "Zaleskii verdict failed",
    )?;
    Ok(format!(
        "{} torsion-free conjugates with delta 0; C2,C3,C4,C6 deltas exact; Zaleskii on all {}",
        torsion_free.len(),
        corpus.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("enumeration baseline", enumeration_baseline),
        ("double of C2", double_of_c2),
        ("torsion in double of C2xC2", torsion_in_double_of_klein_four),
        ("stem-extension audit for A5", stem_audit_a5),
        ("trivial base", trivial_base),
        ("commutator identity suite", commutator_identities),
        ("trace property suite", trace_property_suite),
        ("weak Bass behaviour", weak_bass_behaviour),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
