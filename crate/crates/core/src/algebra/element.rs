use std::collections::BTreeMap;

use crate::semigroup::{Element, MunnTree, Semigroup};

use super::scalar::{Rational, Scalar};

/// A finite linear combination of nonzero semigroup elements. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<K: Scalar = Rational> {
    terms: BTreeMap<MunnTree, K>,
}

impl<K: Scalar> Default for AlgebraElement<K> {
    fn default() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }
}

impl<K: Scalar> AlgebraElement<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · a`, which is `0` when `a` is the zero element.
    pub fn term(a: &Element, c: K) -> Self {
        let mut out = Self::zero();
        if let Element::Nonzero(m) = a {
            out.push(m.clone(), c);
        }
        out
    }

    pub fn basis(a: &Element) -> Self {
        Self::term(a, K::one())
    }

    fn push(&mut self, key: MunnTree, c: K) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MunnTree, &K)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: &Element) -> K {
        a.as_tree().and_then(|m| self.terms.get(m)).cloned().unwrap_or_else(K::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scalar_mul(&-K::one()))
    }

    pub fn scalar_mul(&self, c: &K) -> Self {
        let mut out = Self::zero();
        for (k, d) in &self.terms {
            out.push(k.clone(), c.clone() * d.clone());
        }
        out
    }

    /// Bilinear extension of the semigroup product; products equal to zero
    /// in the semigroup vanish.
    pub fn multiply(&self, s: &Semigroup<'_>, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            let a = Element::Nonzero(a.clone());
            for (b, d) in &other.terms {
                if let Element::Nonzero(m) = s.mul(&a, &Element::Nonzero(b.clone())) {
                    out.push(m, c.clone() * d.clone());
                }
            }
        }
        out
    }

    /// Conjugate-linear extension of the semigroup inverse.
    pub fn star(&self, s: &Semigroup<'_>) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            if let Element::Nonzero(m) = s.inverse(&Element::Nonzero(a.clone())) {
                out.push(m, c.conj());
            }
        }
        out
    }

    pub fn is_idempotent(&self, s: &Semigroup<'_>) -> bool {
        self.multiply(s, self) == *self
    }

    /// `c₁·[SNF₁] + c₂·[SNF₂] - …` in basis order, or `0`.
    pub fn render(&self, s: &Semigroup<'_>) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let nf = s.render(&Element::Nonzero(m.clone()));
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            match (i, sign) {
                (0, "-") => out.push('-'),
                (0, _) => {}
                _ => out.push_str(&format!(" {sign} ")),
            }
            out.push_str(&format!("{}·[{}]", mag.render(), nf));
        }
        out
    }
}
