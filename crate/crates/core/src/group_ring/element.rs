use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::RingError;
use crate::groups::{Group, PresentedGroup};

/// A finite-support rational combination of group elements.
pub struct RingElement<G: Group> {
    group: Arc<G>,
    support: BTreeMap<G::Element, BigRational>,
}

impl<G: Group> Clone for RingElement<G> {
    fn clone(&self) -> Self {
        RingElement {
            group: Arc::clone(&self.group),
            support: self.support.clone(),
        }
    }
}

impl<G: Group> PartialEq for RingElement<G> {
    fn eq(&self, other: &Self) -> bool {
        self.support == other.support
    }
}

impl<G: Group> Eq for RingElement<G> {}

impl<G: Group> fmt::Debug for RingElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.support.iter()).finish()
    }
}

pub(crate) fn same_group<G: Group + PartialEq>(a: &Arc<G>, b: &Arc<G>) -> Result<(), RingError> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(RingError::GroupMismatch)
    }
}

impl<G: Group + PartialEq> RingElement<G> {
    pub fn zero(group: &Arc<G>) -> Self {
        RingElement {
            group: Arc::clone(group),
            support: BTreeMap::new(),
        }
    }

    pub fn one(group: &Arc<G>) -> Self {
        Self::term(group, group.identity(), BigRational::one())
    }

    /// `coeff · g`
    pub fn term(group: &Arc<G>, g: G::Element, coeff: BigRational) -> Self {
        Self::from_terms(group, [(g, coeff)])
    }

    pub fn from_element(group: &Arc<G>, g: G::Element) -> Self {
        Self::term(group, g, BigRational::one())
    }

    /// Sum of terms; repeated elements are merged.
    pub fn from_terms(
        group: &Arc<G>,
        terms: impl IntoIterator<Item = (G::Element, BigRational)>,
    ) -> Self {
        let mut x = Self::zero(group);
        for (g, c) in terms {
            x.accumulate(g, c);
        }
        x
    }

    fn accumulate(&mut self, g: G::Element, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.support.entry(g);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn group(&self) -> &Arc<G> {
        &self.group
    }

    pub fn support(&self) -> &BTreeMap<G::Element, BigRational> {
        &self.support
    }

    pub fn coefficient(&self, g: &G::Element) -> BigRational {
        self.support.get(g).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.support.len() == 1 && self.coefficient(&self.group.identity()).is_one()
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        same_group(&self.group, &other.group)?;
        let mut x = self.clone();
        for (g, c) in &other.support {
            x.accumulate(g.clone(), c.clone());
        }
        Ok(x)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    /// Convolution `Σ x(g)·y(h) · gh`.
    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        same_group(&self.group, &other.group)?;
        let mut x = Self::zero(&self.group);
        for (g, a) in &self.support {
            for (h, b) in &other.support {
                x.accumulate(self.group.mul(g, h), a * b);
            }
        }
        Ok(x)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.group);
        }
        RingElement {
            group: Arc::clone(&self.group),
            support: self.support.iter().map(|(g, a)| (g.clone(), a * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    /// Kaplansky trace: the coefficient of the identity.
    pub fn kappa(&self) -> BigRational {
        self.coefficient(&self.group.identity())
    }

    /// Augmentation: the sum of all coefficients.
    pub fn epsilon(&self) -> BigRational {
        self.support.values().fold(BigRational::zero(), |s, c| s + c)
    }

    /// `λ⁻¹g⁻¹` when `self` is a single term `λg`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (g, c) = match self.support.iter().collect::<Vec<_>>().as_slice() {
            [(g, c)] => ((*g).clone(), (*c).clone()),
            _ => return None,
        };
        Some(Self::term(&self.group, self.group.inverse(&g), c.recip()))
    }

    /// Transport coefficients along `h`, merging collisions.
    pub fn pushforward<L: Group + PartialEq>(
        &self,
        target: &Arc<L>,
        h: impl Fn(&G::Element) -> L::Element,
    ) -> RingElement<L> {
        RingElement::from_terms(target, self.support.iter().map(|(g, c)| (h(g), c.clone())))
    }

    /// Terms joined by ` + ` / ` - `, identity printed as `e`, in support
    /// order; zero prints as `0`.
    pub fn format(&self) -> String {
        if self.support.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (g, c)) in self.support.iter().enumerate() {
            let negative = c < &BigRational::zero();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let name = if self.group.is_identity(g) {
                "e".to_string()
            } else {
                self.group.format_element(g)
            };
            out.push_str(&format!("{}*{}", format_rational(&c.abs()), name));
        }
        out
    }
}

/// `p/q`, or `p` when `q = 1`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational, RingError> {
    let bad = || RingError::Parse(format!("bad coefficient `{text}`"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Split at top-level `+`/`-` that are not exponent signs.
fn split_terms(text: &str) -> Vec<(bool, String)> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut depth = 0i32;
    let mut last = None;
    for ch in text.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if (ch == '+' || ch == '-') && depth == 0 && last != Some('^') {
            if !current.trim().is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
            }
            current.clear();
            negative = ch == '-';
            last = Some(ch);
            continue;
        }
        if !ch.is_whitespace() {
            last = Some(ch);
        }
        current.push(ch);
    }
    terms.push((negative, current));
    terms
}

/// Parse `coeff * word` terms joined by `+`/`-`, e.g. `1/2*e + 1/2*a`.
/// A bare coefficient is a multiple of the identity and a bare word has
/// coefficient 1; `e` names the identity unless it is a generator.
pub fn parse_ring_element<G: PresentedGroup + PartialEq>(
    group: &Arc<G>,
    text: &str,
) -> Result<RingElement<G>, RingError> {
    let p = group.presentation();
    let mut x = RingElement::zero(group);
    for (negative, term) in split_terms(text) {
        let term = term.trim();
        if term.is_empty() {
            return Err(RingError::Parse(format!("empty term in `{text}`")));
        }
        let starts_numeric = term.starts_with(|c: char| c.is_ascii_digit());
        let (coeff, word) = match term.split_once('*') {
            Some((c, w)) if starts_numeric => (parse_rational(c)?, Some(w.trim())),
            _ if starts_numeric && !term.contains(|c: char| c.is_alphabetic()) => {
                (parse_rational(term)?, None)
            }
            _ => (BigRational::one(), Some(term)),
        };
        let g = match word {
            None => group.identity(),
            Some("e") if p.generator_index("e").is_none() => group.identity(),
            Some(w) => group.eval(
                &p.parse_word(w)
                    .map_err(|e| RingError::Parse(e.to_string()))?,
            ),
        };
        let coeff = if negative { -coeff } else { coeff };
        x.accumulate(g, coeff);
    }
    Ok(x)
}
