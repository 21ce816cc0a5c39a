//! Named verification scenarios producing [`ScenarioReport`]s. The CLI is a
//! thin wrapper around these.

use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::finite::FiniteGroup;
use crate::group_ring::{
    format_rational, idempotent_corpus, trace_properties, CorpusEntry, TraceProperties,
};
use crate::groups::{random_element, BaumslagSolitar, FreeAbelian, FreeGroup, PresentedGroup};
use crate::report::ScenarioReport;
use crate::sidki::{
    analyze_via_cosets, commutator_containment, double_presentation, full_double,
    identity_witness, realize_presentation, rocco_presentation, stem_audit, subgroup_families,
    DoubleData, DoubleModel, RelatorSchedule, SidkiError,
};
use crate::todd_coxeter::{enumerate as run_enumeration, CosetTable, EnumerationLimits};
use crate::words::{
    abelianization, is_perfect, parse_presentation, parse_word_list, FreeWordProblem,
    Presentation, WordProblem,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("{0}")]
    Input(String),
    #[error("stem-audit needs a perfect base group")]
    NotPerfect,
}

/// Builtin presentation files, by short name.
pub const BUILTIN: &[(&str, &str)] = &[
    ("a5", include_str!("../presentations/a5.grp")),
    ("c2", include_str!("../presentations/c2.grp")),
    ("c2xc2", include_str!("../presentations/c2xc2.grp")),
    ("c5", include_str!("../presentations/c5.grp")),
    ("c6", include_str!("../presentations/c6.grp")),
    ("s3", include_str!("../presentations/s3.grp")),
    ("trivial", include_str!("../presentations/trivial.grp")),
];

pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Realized finite groups above this order are analysed on coset tables only.
pub const REALIZE_BUDGET: usize = 5000;

fn parse(text: &str) -> Result<Presentation, ScenarioError> {
    parse_presentation(text).map_err(|e| ScenarioError::Input(e.to_string()))
}

fn timed(
    f: impl FnOnce() -> Result<ScenarioReport, ScenarioError>,
) -> Result<ScenarioReport, ScenarioError> {
    let start = Instant::now();
    let mut r = f()?;
    r.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

/// Realize `p`, or record why the attempt was inconclusive.
fn realize_or_record(
    p: &Presentation,
    limits: EnumerationLimits,
    r: &mut ScenarioReport,
    verdict: &str,
) -> Option<FiniteGroup> {
    match realize_presentation(p, limits) {
        Ok(g) => Some(g),
        Err(SidkiError::Enumeration(e)) if e.is_limit() => {
            r.inconclusive(verdict, format!("{e}; the group may be infinite or merely large"));
            None
        }
        Err(e) => {
            r.check(verdict, false).put(&format!("{verdict}.error"), e);
            None
        }
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `parse FILE`: canonical form and print/parse round trip.
pub fn parse_scenario(text: &str) -> Result<ScenarioReport, ScenarioError> {
    timed(|| {
        let p = parse(text)?;
        let mut r = ScenarioReport::new("parse", text);
        let canonical = p.to_string();
        r.put("canonical", &canonical)
            .put("generators", p.num_generators())
            .put("relators", p.relators().len());
        r.check("roundtrip", parse(&canonical).ok().as_ref() == Some(&p));
        Ok(r)
    })
}

/// `enumerate FILE [--subgroup WORDS]`.
pub fn enumerate_scenario(
    text: &str,
    subgroup: &str,
    limits: EnumerationLimits,
) -> Result<(ScenarioReport, Option<CosetTable>), ScenarioError> {
    let start = Instant::now();
    let p = parse(text)?;
    let words = parse_word_list(subgroup, &p).map_err(|e| ScenarioError::Input(e.to_string()))?;
    let mut r = ScenarioReport::new(
        "enumerate",
        &format!("{text}\nsubgroup={subgroup}\nmax-cosets={}", limits.max_cosets),
    );
    r.put("subgroup", join(words.iter().map(|w| p.word_to_string(w))));
    let table = match run_enumeration(&p, &words, limits) {
        Ok(t) => {
            r.put("index", t.index()).put("presentationHash", t.presentation_hash());
            r.check("closed", t.is_closed() && t.audit().is_ok());
            match t.permutation_rep() {
                Ok(perms) if t.index() <= 100 => {
                    for (name, perm) in p.names().iter().zip(&perms) {
                        r.put(&format!("perm.{name}"), perm);
                    }
                }
                _ => {}
            }
            Some(t)
        }
        Err(e) if e.is_limit() => {
            r.inconclusive(
                "closed",
                format!("{e}; the index may be infinite or merely large"),
            );
            None
        }
        Err(e) => return Err(ScenarioError::Input(e.to_string())),
    };
    r.runtime_ms = start.elapsed().as_millis() as u64;
    Ok((r, table))
}

fn schedule_name(s: RelatorSchedule) -> &'static str {
    match s {
        RelatorSchedule::Full => "full",
        RelatorSchedule::GeneratorOnly => "generators",
    }
}

fn put_double(r: &mut ScenarioReport, d: &DoubleData) {
    r.put("double", d.double())
        .put("schedule", schedule_name(d.schedule()))
        .put("partial", d.is_partial())
        .put("generators", d.double().num_generators())
        .put("relators", d.double().relators().len())
        .put("commutatorRelators", d.commutator_relators());
}

/// `double FILE [--schedule full|generators]`.
pub fn double_scenario(
    text: &str,
    schedule: RelatorSchedule,
    limits: EnumerationLimits,
) -> Result<ScenarioReport, ScenarioError> {
    timed(|| {
        let p = parse(text)?;
        let mut r = ScenarioReport::new(
            "double",
            &format!("{text}\nschedule={}", schedule_name(schedule)),
        );
        let base = match schedule {
            RelatorSchedule::Full => match realize_or_record(&p, limits, &mut r, "maps") {
                Some(g) => Some(g),
                None => return Ok(r),
            },
            RelatorSchedule::GeneratorOnly if !p.relators().is_empty() => {
                realize_or_record(&p, limits, &mut r, "maps")
            }
            RelatorSchedule::GeneratorOnly => None,
        };
        let elements = base.as_ref().map(|g| g.words());
        let d = double_presentation(&p, schedule, elements)
            .map_err(|e| ScenarioError::Input(e.to_string()))?;
        put_double(&mut r, &d);
        let solver: Option<&dyn WordProblem> = match &base {
            Some(g) => Some(g),
            None if p.relators().is_empty() => Some(&FreeWordProblem),
            None => None,
        };
        if let Some(solver) = solver {
            let verified = d.verify_maps(solver);
            if let Err(e) = &verified {
                r.put("maps.error", e);
            }
            r.check("maps", verified.is_ok());
        }
        Ok(r)
    })
}

/// `rocco FILE`: build `V(G)` and try to enumerate it.
pub fn rocco_scenario(text: &str, limits: EnumerationLimits) -> Result<ScenarioReport, ScenarioError> {
    timed(|| {
        let p = parse(text)?;
        let mut r = ScenarioReport::new("rocco", text);
        let Some(g) = realize_or_record(&p, limits, &mut r, "enumeration") else {
            return Ok(r);
        };
        let v = rocco_presentation(&p, Some(g.words()))
            .map_err(|e| ScenarioError::Input(e.to_string()))?;
        r.put("candidateRelators", v.candidate_relators)
            .put("relators", v.presentation.relators().len())
            .put("baseOrder", g.order());
        if let Some(vg) = realize_or_record(&v.presentation, limits, &mut r, "enumeration") {
            r.put("order", vg.order()).check("enumeration", true);
        }
        Ok(r)
    })
}

/// `analyze-w FILE`: full double, `W` via cosets over `ι^ψ(G)`, torsion
/// probe, and for small doubles the realized `L`, `D`, `W` cross-checks.
pub fn analyze_w_scenario(
    text: &str,
    limits: EnumerationLimits,
) -> Result<ScenarioReport, ScenarioError> {
    timed(|| {
        let p = parse(text)?;
        let mut r = ScenarioReport::new("analyze-w", text);
        let Some(g) = realize_or_record(&p, limits, &mut r, "enumeration") else {
            return Ok(r);
        };
        let d = full_double(&g).map_err(|e| ScenarioError::Input(e.to_string()))?;
        put_double(&mut r, &d);
        r.put("baseOrder", g.order());
        r.check("maps", d.verify_maps(&g).is_ok());
        let ab = abelianization(d.double());
        r.put("abelianization", join(&ab.invariant_factors))
            .put("abelianizationRank", ab.free_rank);
        let a = match analyze_via_cosets(&d, &g, limits) {
            Ok((_, a)) => a,
            Err(SidkiError::Enumeration(e)) if e.is_limit() => {
                r.inconclusive("enumeration", e);
                return Ok(r);
            }
            Err(e) => return Err(ScenarioError::Input(e.to_string())),
        };
        r.check("enumeration", true);
        let probe = a.torsion_probe();
        r.put("index", a.index)
            .put("xOrder", a.x_order)
            .put("imageOrder", a.image_order)
            .put("wOrder", a.w_order())
            .put(
                "wElementOrders",
                join(probe.orders.iter().map(|(o, c)| format!("{o}:{c}"))),
            )
            .put("wMaxOrder", probe.max_order)
            .put("wHasOrderTwo", probe.has_order_two)
            .put("wCentral", a.w_central)
            .put("wAbelian", a.w_abelian)
            .put("wInDerived", a.w_in_derived);
        r.check("countsConsistent", a.counts_consistent);
        if a.x_order <= REALIZE_BUDGET {
            let x = realize_presentation(d.double(), limits)
                .map_err(|e| ScenarioError::Input(e.to_string()))?;
            let g3 = realize_presentation(d.maps().rho.target(), limits)
                .map_err(|e| ScenarioError::Input(e.to_string()))?;
            let f = subgroup_families(&d, &g, &x, &g3)
                .map_err(|e| ScenarioError::Input(e.to_string()))?;
            r.put("lOrder", f.l.order()).put("dOrder", f.d.order());
            r.check("wEqualsDCapL", f.w_equals_d_cap_l);
            r.check(
                "realizedAgrees",
                x.order() == a.x_order && f.w.order() == a.w_order(),
            );
        }
        if g.order() <= 12 {
            r.check("commutatorContainment", commutator_containment(&d, &g));
        }
        Ok(r)
    })
}

/// `stem-audit FILE`: perfect finite bases only.
pub fn stem_audit_scenario(
    text: &str,
    limits: EnumerationLimits,
) -> Result<ScenarioReport, ScenarioError> {
    timed(|| {
        let p = parse(text)?;
        if !is_perfect(&p) {
            return Err(ScenarioError::NotPerfect);
        }
        let mut r = ScenarioReport::new("stem-audit", text);
        let Some(g) = realize_or_record(&p, limits, &mut r, "enumeration") else {
            return Ok(r);
        };
        let d = full_double(&g).map_err(|e| ScenarioError::Input(e.to_string()))?;
        let table = match run_enumeration(d.double(), &d.psi_subgroup(), limits) {
            Ok(t) => t,
            Err(e) if e.is_limit() => {
                r.inconclusive("enumeration", e);
                return Ok(r);
            }
            Err(e) => return Err(ScenarioError::Input(e.to_string())),
        };
        let s = stem_audit(&d, &g, DoubleModel::Cosets(&table))
            .map_err(|e| ScenarioError::Input(e.to_string()))?;
        r.check("rhoSurjective", s.rho_surjective)
            .check("wCentral", s.w_central)
            .check("wInDerived", s.w_in_derived)
            .check("xPerfect", s.x_perfect)
            .check("lemmaConsistent", s.lemma_consistent)
            .check("bookkeeping", s.x_order == s.w_order * g.order().pow(3));
        r.put("baseOrder", g.order())
            .put("xOrder", s.x_order)
            .put("imageOrder", s.image_order)
            .put("wOrder", s.w_order)
            .put("wElementOrders", join(&s.w_element_orders));
        if let Some(i) = s.index {
            r.put("index", i);
        }
        Ok(r)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityGroup {
    F2,
    Z3,
    /// Presentation text of a finite group.
    Finite(String),
}

/// Sample `u, v, x, y` and count failures of the two identities.
fn run_identities<G: PresentedGroup>(
    g: &G,
    d: &DoubleData,
    samples: usize,
    rng: &mut ChaCha8Rng,
    sample: impl Fn(&G, &mut ChaCha8Rng) -> G::Element,
) -> usize {
    (0..samples)
        .filter(|_| {
            let [u, v, x, y] = std::array::from_fn(|_| sample(g, rng));
            !identity_witness(g, d, &u, &v, &x, &y).unwrap_or(false)
        })
        .count()
}

/// Longest random word used for `F₂` and `ℤ³` samples.
pub const IDENTITY_WORD_LENGTH: usize = 6;

/// `identities [--group f2|z3|finite FILE] [--samples N] [--seed S]`.
pub fn identities_scenario(
    group: &IdentityGroup,
    samples: usize,
    seed: u64,
    limits: EnumerationLimits,
) -> Result<ScenarioReport, ScenarioError> {
    timed(|| {
        let (label, text) = match group {
            IdentityGroup::F2 => ("f2", String::new()),
            IdentityGroup::Z3 => ("z3", String::new()),
            IdentityGroup::Finite(t) => ("finite", t.clone()),
        };
        let mut r = ScenarioReport::new(
            "identities",
            &format!("group={label}\n{text}\nsamples={samples}"),
        );
        r.seed = Some(seed);
        r.put("group", label).put("samples", samples);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let generator_double = |p: &Presentation| {
            double_presentation(p, RelatorSchedule::GeneratorOnly, None)
                .expect("generator-only schedule needs no elements")
        };
        let failures = match group {
            IdentityGroup::F2 => {
                let g = FreeGroup::new(2);
                let d = generator_double(g.presentation());
                run_identities(&g, &d, samples, &mut rng, |g, rng| {
                    random_element(g, rng, IDENTITY_WORD_LENGTH)
                })
            }
            IdentityGroup::Z3 => {
                let g = FreeAbelian::new(3);
                let d = generator_double(g.presentation());
                run_identities(&g, &d, samples, &mut rng, |g, rng| {
                    random_element(g, rng, IDENTITY_WORD_LENGTH)
                })
            }
            IdentityGroup::Finite(text) => {
                let p = parse(text)?;
                let Some(g) = realize_or_record(&p, limits, &mut r, "identities") else {
                    return Ok(r);
                };
                let d = generator_double(&p);
                run_identities(&g, &d, samples, &mut rng, |g, rng| {
                    rng.gen_range(0..g.order())
                })
            }
        };
        r.put("failures", failures).check("identities", failures == 0);
        Ok(r)
    })
}

/// Random pairs per carrier for the trace-property check.
pub const TRACE_PAIRS: usize = 200;

/// Trace properties on `C₆`, `ℤ²`, `F₂`, `BS(1,2)`.
pub fn carrier_trace_properties(seed: u64) -> Vec<(&'static str, TraceProperties)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x74_7261_6365);
    let c6 = Arc::new(FiniteGroup::cyclic(6));
    vec![
        ("C6", trace_properties(&c6, &mut rng, TRACE_PAIRS)),
        ("Z2", trace_properties(&Arc::new(FreeAbelian::new(2)), &mut rng, TRACE_PAIRS)),
        ("F2", trace_properties(&Arc::new(FreeGroup::new(2)), &mut rng, TRACE_PAIRS)),
        (
            "BS12",
            trace_properties(&Arc::new(BaumslagSolitar::new(2)), &mut rng, TRACE_PAIRS),
        ),
    ]
}

/// `(n−1)/n`
pub fn torsion_delta(n: u64) -> BigRational {
    BigRational::new((n - 1).into(), n.into())
}

/// Verdicts for the torsion idempotents `p ∈ ℚ[C_n]`: `δ = (n−1)/n`.
pub fn torsion_deltas(corpus: &[CorpusEntry]) -> Vec<(u64, bool)> {
    [2u64, 3, 4, 6]
        .into_iter()
        .map(|n| {
            let name = format!("C{n} torsion idempotent");
            let ok = corpus
                .iter()
                .find(|e| e.name == name)
                .is_some_and(|e| e.summary.delta == torsion_delta(n));
            (n, ok)
        })
        .collect()
}

/// `ring-audit`: idempotent corpus plus trace-property sampling.
pub fn ring_audit_scenario(seed: u64) -> Result<ScenarioReport, ScenarioError> {
    timed(|| {
        let mut r = ScenarioReport::new("ring-audit", "");
        r.seed = Some(seed);
        let corpus = idempotent_corpus(seed).map_err(|e| ScenarioError::Input(e.to_string()))?;
        for e in &corpus {
            let s = &e.summary;
            r.put(&format!("{}.kappa", e.name), format_rational(&s.kappa))
                .put(&format!("{}.epsilon", e.name), format_rational(&s.epsilon))
                .put(&format!("{}.delta", e.name), format_rational(&s.delta));
            if let Some(cf) = &s.class_function {
                let rendered = cf.iter().map(|(k, v)| format!("{k}:{v}"));
                r.put(&format!("{}.hs", e.name), join(rendered));
            }
        }
        r.put("corpusSize", corpus.len());
        r.check("zaleskii", corpus.iter().all(|e| e.summary.zaleskii_pass()));
        r.check(
            "hsConsistency",
            corpus.iter().all(|e| e.summary.hs_consistent != Some(false)),
        );
        r.check(
            "conjugationInvariance",
            corpus.iter().all(|e| e.conjugation_invariant != Some(false)),
        );
        r.check(
            "kaplanskyDichotomy",
            corpus.iter().all(|e| e.summary.kaplansky_dichotomy != Some(false)),
        );
        r.check(
            "weakBassTorsionFree",
            corpus
                .iter()
                .filter(|e| e.torsion_free)
                .all(|e| e.summary.delta == BigRational::from_integer(0.into())),
        );
        for (n, ok) in torsion_deltas(&corpus) {
            r.check(&format!("torsionDelta.C{n}"), ok);
        }
        for (name, t) in carrier_trace_properties(seed) {
            r.check(&format!("traceProperty.{name}"), t.pass());
        }
        Ok(r)
    })
}

/// Every builtin scenario, in a fixed order.
pub fn full_report(seed: u64, limits: EnumerationLimits) -> Vec<Result<ScenarioReport, ScenarioError>> {
    let a5 = builtin("a5").expect("builtin");
    let c2 = builtin("c2").expect("builtin");
    let c2xc2 = builtin("c2xc2").expect("builtin");
    let trivial = builtin("trivial").expect("builtin");
    vec![
        parse_scenario(a5),
        enumerate_scenario(a5, "", limits).map(|(r, _)| r),
        enumerate_scenario(a5, "a", limits).map(|(r, _)| r),
        double_scenario(c2, RelatorSchedule::Full, limits),
        analyze_w_scenario(c2, limits),
        analyze_w_scenario(c2xc2, limits),
        analyze_w_scenario(trivial, limits),
        stem_audit_scenario(trivial, limits),
        stem_audit_scenario(a5, limits),
        rocco_scenario(c2, limits),
        identities_scenario(&IdentityGroup::F2, 1000, seed, limits),
        identities_scenario(&IdentityGroup::Z3, 1000, seed, limits),
        ring_audit_scenario(seed),
    ]
}
