//! Free modules over Q(q) spanned by ordered monomials, with
//! multiplication given by a normal-form rule on the monomial keys.
//!
//! The quantum torus, the Hopf algebra and their tensor squares are all
//! instances: a monomial key knows how to multiply with another key,
//! producing a q-power coefficient and the normally ordered key.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::QScalar;

/// A normally ordered monomial with a q-commutation product rule.
pub trait Monomial: Ord + Clone + fmt::Debug {
    fn unit() -> Self;
    /// Product of two normal monomials: the reordering coefficient and
    /// the resulting normal monomial.
    fn mul(&self, other: &Self) -> (QScalar, Self);
}

/// Finite Q(q)-linear combination of normal monomials.
///
/// Invariant: no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element<K: Monomial> {
    terms: BTreeMap<K, QScalar>,
}

impl<K: Monomial> Element<K> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Element::term(K::unit(), QScalar::one())
    }

    pub fn term(key: K, coeff: QScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        Element { terms }
    }

    pub fn scalar(c: QScalar) -> Self {
        Element::term(K::unit(), c)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (K, QScalar)>) -> Self {
        let mut out = Element::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &K) -> QScalar {
        self.terms.get(key).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn add_term(&mut self, key: K, coeff: QScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                let sum = &*c + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Element {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Element::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let (reorder, key) = k1.mul(k2);
                out.add_term(key, c1 * c2 * &reorder);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Element::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Linear extension of a map on monomials.
    pub fn map_terms<L: Monomial>(
        &self,
        mut f: impl FnMut(&K, &QScalar) -> Element<L>,
    ) -> Element<L> {
        let mut out = Element::zero();
        for (k, c) in &self.terms {
            out = out.add(&f(k, c));
        }
        out
    }

    /// The single term of a monomial element.
    pub fn as_monomial(&self) -> Option<(&K, &QScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

/// Pairing of two monomial families into the tensor-product algebra:
/// factorwise multiplication, no cross-factor commutation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pair<A, B>(pub A, pub B);

impl<A: Monomial, B: Monomial> Monomial for Pair<A, B> {
    fn unit() -> Self {
        Pair(A::unit(), B::unit())
    }

    fn mul(&self, other: &Self) -> (QScalar, Self) {
        let (c1, left) = self.0.mul(&other.0);
        let (c2, right) = self.1.mul(&other.1);
        (c1 * c2, Pair(left, right))
    }
}

/// `a (x) b` as an element of the tensor-product algebra.
pub fn tensor<A: Monomial, B: Monomial>(a: &Element<A>, b: &Element<B>) -> Element<Pair<A, B>> {
    let mut out = Element::zero();
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            out.add_term(Pair(ka.clone(), kb.clone()), ca * cb);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::TorusKey;

    #[test]
    fn add_cancels_to_zero() {
        let x = Element::term(TorusKey { t_exp: 1, q_exp: 0 }, QScalar::one());
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn scale_by_zero() {
        let x = Element::term(TorusKey { t_exp: 1, q_exp: 2 }, QScalar::q());
        assert!(x.scale(&QScalar::zero()).is_zero());
    }
}
