//! Finite formal linear combinations of basis labels.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::coeff::{QuadNumber, Rational};

/// Coefficient ring for [`LinComb`].
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Scalar for QuadNumber {
    fn is_zero(&self) -> bool {
        QuadNumber::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Scalar for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// `sum c_k [k]` with no explicit zero coefficients.
#[derive(Clone, PartialEq)]
pub struct LinComb<K: Ord + Clone, C: Scalar = QuadNumber> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord + Clone, C: Scalar> Default for LinComb<K, C> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone + fmt::Debug, C: Scalar> fmt::Debug for LinComb<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<K: Ord + Clone, C: Scalar> LinComb<K, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K, coeff: C) -> Self {
        let mut x = Self::zero();
        x.add_term(key, coeff);
        x
    }

    pub fn add_term(&mut self, key: K, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                let sum = c.plus(&coeff);
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

    pub fn get(&self, key: &K) -> Option<&C> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.negated());
        }
        out
    }

    pub fn scaled(&self, s: &C) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.times(s));
        }
        out
    }

    /// Applies a linear map given on basis elements.
    pub fn map_basis<K2: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K, &C) -> Result<LinComb<K2, C>, E>,
    ) -> Result<LinComb<K2, C>, E> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out = out.plus(&f(k, c)?);
        }
        Ok(out)
    }

    /// Bilinear extension of a product given on basis pairs.
    pub fn bilinear<K2: Ord + Clone, K3: Ord + Clone, E>(
        &self,
        other: &LinComb<K2, C>,
        mut f: impl FnMut(&K, &K2) -> Result<LinComb<K3, C>, E>,
    ) -> Result<LinComb<K3, C>, E> {
        let mut out = LinComb::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let coeff = c1.times(c2);
                for (k3, c3) in f(k1, k2)?.terms {
                    out.add_term(k3, c3.times(&coeff));
                }
            }
        }
        Ok(out)
    }
}

impl<K: Ord + Clone, C: Scalar> FromIterator<(K, C)> for LinComb<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn zeros_are_dropped() {
        let mut x: LinComb<u32, Rational> = LinComb::basis(1, r(2));
        x.add_term(1, r(-2));
        assert!(x.is_zero());
        x.add_term(3, r(0));
        assert_eq!(x.len(), 0);
    }

    #[test]
    fn bilinear_extension() {
        let x: LinComb<u32, Rational> = [(1, r(2)), (2, r(3))].into_iter().collect();
        let y: LinComb<u32, Rational> = LinComb::basis(10, r(5));
        let z = x
            .bilinear(&y, |a, b| Ok::<_, ()>(LinComb::basis(a + b, r(1))))
            .unwrap();
        assert_eq!(z.get(&11), Some(&r(10)));
        assert_eq!(z.get(&12), Some(&r(15)));
        assert_eq!(x.minus(&x), LinComb::zero());
    }
}
