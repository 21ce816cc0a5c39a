use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{format_rational, RingElement, RingError, RingMatrix};
use crate::groups::Group;

/// Values on conjugacy classes, keyed by canonical representative; classes
/// with value zero are omitted.
pub struct ClassFunction<G: Group> {
    values: BTreeMap<G::Element, BigRational>,
}

impl<G: Group> Clone for ClassFunction<G> {
    fn clone(&self) -> Self {
        ClassFunction {
            values: self.values.clone(),
        }
    }
}

impl<G: Group> PartialEq for ClassFunction<G> {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl<G: Group> std::fmt::Debug for ClassFunction<G> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.values.iter()).finish()
    }
}

impl<G: Group> ClassFunction<G> {
    pub fn values(&self) -> &BTreeMap<G::Element, BigRational> {
        &self.values
    }

    /// Value at a canonical representative.
    pub fn value(&self, representative: &G::Element) -> BigRational {
        self.values
            .get(representative)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total(&self) -> BigRational {
        self.values.values().fold(BigRational::zero(), |s, v| s + v)
    }

    pub fn format(&self, group: &G) -> Vec<(String, String)> {
        self.values
            .iter()
            .map(|(g, v)| {
                let name = if group.is_identity(g) {
                    "e".to_string()
                } else {
                    group.format_element(g)
                };
                (name, format_rational(v))
            })
            .collect()
    }
}

/// `r_A([x]) = Σ_{y ∈ [x]} Σ_i a_ii(y)`.
pub fn hattori_stallings<G: Group + PartialEq>(
    a: &RingMatrix<G>,
) -> Result<ClassFunction<G>, RingError> {
    let group = a.group();
    let mut values: BTreeMap<G::Element, BigRational> = BTreeMap::new();
    for i in 0..a.size() {
        for (y, c) in a.get(i, i).support() {
            let rep = group
                .conjugacy_representative(y)
                .ok_or(RingError::ConjugacyUnsupported)?;
            *values.entry(rep).or_insert_with(BigRational::zero) += c;
        }
    }
    values.retain(|_, v| !v.is_zero());
    Ok(ClassFunction { values })
}

/// `p = (1/n)(1 + g + … + g^(n-1))`; `n` must be the order of `g`.
pub fn torsion_idempotent<G: Group + PartialEq>(
    group: &Arc<G>,
    g: &G::Element,
    n: u64,
) -> Result<RingElement<G>, RingError> {
    if n == 0 {
        return Err(RingError::NotOrder { n });
    }
    let mut powers = Vec::with_capacity(n as usize);
    let mut x = group.identity();
    for k in 0..n {
        if k > 0 && group.is_identity(&x) {
            return Err(RingError::NotOrder { n });
        }
        powers.push(x.clone());
        x = group.mul(&x, g);
    }
    if !group.is_identity(&x) {
        return Err(RingError::NotOrder { n });
    }
    let c = BigRational::new(1.into(), n.into());
    Ok(RingElement::from_terms(
        group,
        powers.into_iter().map(|p| (p, c.clone())),
    ))
}

/// Trace data and verdicts for an idempotent matrix.
#[derive(Clone, Debug)]
pub struct TraceReport<G: Group> {
    pub size: usize,
    pub kappa: BigRational,
    pub epsilon: BigRational,
    /// `None` when the group has no conjugacy canonicalization.
    pub class_function: Option<ClassFunction<G>>,
    /// Zaleskii: `κ ≥ 0`.
    pub kappa_nonnegative: bool,
    /// `ε ∈ {0, …, n}`.
    pub epsilon_integral_in_range: bool,
    /// `ε − κ`
    pub delta: BigRational,
    /// 1×1 only: `κ ∈ {0,1}` exactly when the entry is `0` or `1`.
    pub kaplansky_dichotomy: Option<bool>,
    /// `r_A(e) = κ` and `Σ r_A = ε`.
    pub hs_consistent: Option<bool>,
}

impl<G: Group> TraceReport<G> {
    pub fn zaleskii_pass(&self) -> bool {
        self.kappa_nonnegative && self.epsilon_integral_in_range
    }

    pub fn weak_bass_holds(&self) -> bool {
        self.delta.is_zero()
    }

    pub fn summary(&self, group: &G) -> TraceSummary {
        TraceSummary {
            size: self.size,
            kappa: self.kappa.clone(),
            epsilon: self.epsilon.clone(),
            delta: self.delta.clone(),
            kappa_nonnegative: self.kappa_nonnegative,
            epsilon_integral_in_range: self.epsilon_integral_in_range,
            kaplansky_dichotomy: self.kaplansky_dichotomy,
            hs_consistent: self.hs_consistent,
            class_function: self.class_function.as_ref().map(|c| c.format(group)),
        }
    }
}

/// [`TraceReport`] with the class function rendered as strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSummary {
    pub size: usize,
    pub kappa: BigRational,
    pub epsilon: BigRational,
    pub delta: BigRational,
    pub kappa_nonnegative: bool,
    pub epsilon_integral_in_range: bool,
    pub kaplansky_dichotomy: Option<bool>,
    pub hs_consistent: Option<bool>,
    pub class_function: Option<Vec<(String, String)>>,
}

impl TraceSummary {
    pub fn zaleskii_pass(&self) -> bool {
        self.kappa_nonnegative && self.epsilon_integral_in_range
    }
}

/// Audit an idempotent matrix; non-idempotents are refused.
pub fn trace_audit<G: Group + PartialEq>(a: &RingMatrix<G>) -> Result<TraceReport<G>, RingError> {
    if !a.is_idempotent() {
        return Err(RingError::NotIdempotent);
    }
    let n = a.size();
    let kappa = a.kappa();
    let epsilon = a.epsilon();
    let class_function = match hattori_stallings(a) {
        Ok(c) => Some(c),
        Err(RingError::ConjugacyUnsupported) => None,
        Err(e) => return Err(e),
    };
    let hs_consistent = class_function.as_ref().map(|c| {
        c.value(&a.group().identity()) == kappa && c.total() == epsilon
    });
    let epsilon_integral_in_range = epsilon.is_integer()
        && !epsilon.is_negative()
        && epsilon <= BigRational::from_integer(n.into());
    let kaplansky_dichotomy = (n == 1).then(|| {
        let x = a.get(0, 0);
        let trivial_trace = kappa.is_zero() || kappa.is_one();
        trivial_trace == (x.is_zero() || x.is_one())
    });
    Ok(TraceReport {
        size: n,
        delta: &epsilon - &kappa,
        kappa_nonnegative: !kappa.is_negative(),
        kappa,
        epsilon,
        class_function,
        epsilon_integral_in_range,
        kaplansky_dichotomy,
        hs_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{BaumslagSolitar, FreeAbelian, FreeGroup};
    use crate::sidki::realize_presentation;
    use crate::todd_coxeter::EnumerationLimits;
    use crate::words::parse_presentation;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn cyclic(n: usize) -> Arc<crate::finite::FiniteGroup> {
        let p = parse_presentation(&format!("< a | a^{n} >")).unwrap();
        Arc::new(realize_presentation(&p, EnumerationLimits::default()).unwrap())
    }

    #[test]
    fn torsion_idempotent_of_c2_is_idempotent() {
        let c2 = cyclic(2);
        let p = torsion_idempotent(&c2, &1, 2).unwrap();
        assert_eq!(p.mul(&p).unwrap(), p);
        assert_eq!(p.kappa(), q(1, 2));
        assert_eq!(p.epsilon(), q(1, 1));
        assert_eq!(torsion_idempotent(&c2, &1, 4), Err(RingError::NotOrder { n: 4 }));
        assert_eq!(torsion_idempotent(&c2, &0, 1).unwrap(), RingElement::one(&c2));
    }

    #[test]
    fn torsion_idempotent_over_c3_spreads_over_classes() {
        let c3 = cyclic(3);
        let p = torsion_idempotent(&c3, &1, 3).unwrap();
        assert_eq!(p.kappa(), q(1, 3));
        let a = RingMatrix::diagonal(&c3, vec![p]).unwrap();
        let r = hattori_stallings(&a).unwrap();
        assert_eq!(r.values().len(), 3);
        assert!(r.values().values().all(|v| *v == q(1, 3)));
    }

    #[test]
    fn identity_over_f2() {
        let f = Arc::new(FreeGroup::new(2));
        let r = hattori_stallings(&RingMatrix::identity(&f, 2)).unwrap();
        assert_eq!(r.value(&f.identity()), q(2, 1));
        assert_eq!(r.values().len(), 1);
    }

    #[test]
    fn audit_of_identity_over_z2() {
        let z = Arc::new(FreeAbelian::new(2));
        let rep = trace_audit(&RingMatrix::identity(&z, 3)).unwrap();
        assert_eq!(rep.kappa, q(3, 1));
        assert_eq!(rep.epsilon, q(3, 1));
        assert!(rep.weak_bass_holds() && rep.zaleskii_pass());
        assert_eq!(rep.hs_consistent, Some(true));
    }

    #[test]
    fn audit_of_c2_torsion_idempotent() {
        let c2 = cyclic(2);
        let p = torsion_idempotent(&c2, &1, 2).unwrap();
        let rep = trace_audit(&RingMatrix::diagonal(&c2, vec![p]).unwrap()).unwrap();
        assert_eq!(rep.delta, q(1, 2));
        assert_eq!(rep.kaplansky_dichotomy, Some(true));
        assert!(rep.zaleskii_pass());
    }

    #[test]
    fn audit_refuses_non_idempotent_and_bs_has_no_classes() {
        let bs = Arc::new(BaumslagSolitar::new(2));
        let g = RingElement::from_element(&bs, bs.a());
        let m = RingMatrix::diagonal(&bs, vec![g]).unwrap();
        assert!(matches!(trace_audit(&m), Err(RingError::NotIdempotent)));
        assert!(matches!(
            hattori_stallings(&m),
            Err(RingError::ConjugacyUnsupported)
        ));
        let rep = trace_audit(&RingMatrix::identity(&bs, 2)).unwrap();
        assert!(rep.class_function.is_none() && rep.hs_consistent.is_none());
    }
}
