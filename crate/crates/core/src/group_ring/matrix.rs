use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::element::same_group;
use super::{RingElement, RingError};
use crate::groups::Group;

/// A square matrix over the rational group ring of one group.
pub struct RingMatrix<G: Group> {
    group: Arc<G>,
    n: usize,
    entries: Vec<RingElement<G>>,
}

impl<G: Group> Clone for RingMatrix<G> {
    fn clone(&self) -> Self {
        RingMatrix {
            group: Arc::clone(&self.group),
            n: self.n,
            entries: self.entries.clone(),
        }
    }
}

impl<G: Group> PartialEq for RingMatrix<G> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl<G: Group> std::fmt::Debug for RingMatrix<G> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RingMatrix")
            .field("n", &self.n)
            .field("entries", &self.entries)
            .finish()
    }
}

impl<G: Group + PartialEq> RingMatrix<G> {
    pub fn zero(group: &Arc<G>, n: usize) -> Self {
        RingMatrix {
            group: Arc::clone(group),
            n,
            entries: vec![RingElement::zero(group); n * n],
        }
    }

    pub fn identity(group: &Arc<G>, n: usize) -> Self {
        Self::diagonal(group, (0..n).map(|_| RingElement::one(group)).collect())
            .expect("entries over one group")
    }

    pub fn diagonal(group: &Arc<G>, diag: Vec<RingElement<G>>) -> Result<Self, RingError> {
        let mut m = Self::zero(group, diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            same_group(group, d.group())?;
            m.entries[i * m.n + i] = d;
        }
        Ok(m)
    }

    pub fn from_rows(group: &Arc<G>, rows: Vec<Vec<RingElement<G>>>) -> Result<Self, RingError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(RingError::NotSquare);
            }
            for x in row {
                same_group(group, x.group())?;
                entries.push(x);
            }
        }
        Ok(RingMatrix {
            group: Arc::clone(group),
            n,
            entries,
        })
    }

    /// `I + r·E_ij` with `i ≠ j`; its inverse is `I − r·E_ij`.
    pub fn transvection(
        group: &Arc<G>,
        n: usize,
        i: usize,
        j: usize,
        r: RingElement<G>,
    ) -> Result<Self, RingError> {
        assert!(i != j && i < n && j < n, "transvection indices");
        same_group(group, r.group())?;
        let mut m = Self::identity(group, n);
        m.entries[i * n + j] = r;
        Ok(m)
    }

    pub fn group(&self) -> &Arc<G> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement<G> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RingElement<G>) -> Result<(), RingError> {
        same_group(&self.group, x.group())?;
        self.entries[i * self.n + j] = x;
        Ok(())
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        same_group(&self.group, &other.group)?;
        if self.n != other.n {
            return Err(RingError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(RingMatrix {
            group: Arc::clone(&self.group),
            n: self.n,
            entries,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let n = self.n;
        let mut out = Self::zero(&self.group, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let e = &mut out.entries[i * n + j];
                    *e = e.add(&a.mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).is_ok_and(|sq| sq == *self)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.group, self.n)
    }

    /// `Σ a_ii(e)`
    pub fn kappa(&self) -> BigRational {
        (0..self.n).fold(BigRational::zero(), |s, i| s + self.get(i, i).kappa())
    }

    /// `Σ_h Σ_i a_ii(h)`
    pub fn epsilon(&self) -> BigRational {
        (0..self.n).fold(BigRational::zero(), |s, i| s + self.get(i, i).epsilon())
    }

    /// Entrywise coefficient transport along a homomorphism.
    pub fn pushforward<L: Group + PartialEq>(
        &self,
        target: &Arc<L>,
        h: impl Fn(&G::Element) -> L::Element,
    ) -> RingMatrix<L> {
        RingMatrix {
            group: Arc::clone(target),
            n: self.n,
            entries: self.entries.iter().map(|x| x.pushforward(target, &h)).collect(),
        }
    }

    /// Rows of formatted entries.
    pub fn format_rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).format()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::parse_ring_element;
    use crate::groups::FreeGroup;

    #[test]
    fn transvection_inverse() {
        let f = Arc::new(FreeGroup::new(2));
        let r = parse_ring_element(&f, "x1 - 1/3*x2*x1").unwrap();
        let t = RingMatrix::transvection(&f, 3, 0, 2, r.clone()).unwrap();
        let ti = RingMatrix::transvection(&f, 3, 0, 2, r.neg()).unwrap();
        assert!(t.mul(&ti).unwrap().is_identity());
    }

    #[test]
    fn zero_and_identity_are_idempotent() {
        let f = Arc::new(FreeGroup::new(1));
        assert!(RingMatrix::zero(&f, 2).is_idempotent());
        assert!(RingMatrix::identity(&f, 3).is_idempotent());
        let g = RingMatrix::diagonal(&f, vec![parse_ring_element(&f, "x1").unwrap()]).unwrap();
        assert!(!g.is_idempotent());
        assert_eq!(RingMatrix::identity(&f, 4).kappa(), BigRational::from_integer(4.into()));
    }

    #[test]
    fn dimension_mismatch() {
        let f = Arc::new(FreeGroup::new(1));
        let a = RingMatrix::identity(&f, 2);
        let b = RingMatrix::identity(&f, 3);
        assert_eq!(
            a.mul(&b),
            Err(RingError::DimensionMismatch { left: 2, right: 3 })
        );
    }
}
