//! Finite formal linear combinations with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{format_q, Q};

/// Sparse `Σ c_b · b` over an ordered basis; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Q>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Q::one())
    }

    pub fn term(b: B, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn add_term(&mut self, b: B, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
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

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_scaled(other, &Q::one());
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.add_scaled(other, &-Q::one());
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Q::one())
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &B) -> Q {
        self.terms.get(b).cloned().unwrap_or_else(Q::zero)
    }

    /// Linear extension of `f` from basis elements.
    pub fn flat_map<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Fallible linear extension.
    pub fn try_flat_map<C: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&B) -> Result<LinComb<C>, E>,
    ) -> Result<LinComb<C>, E> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b)?, c);
        }
        Ok(out)
    }

    /// Bilinear extension of `f`.
    pub fn bilinear<C: Ord + Clone, D: Ord + Clone>(
        &self,
        other: &LinComb<C>,
        mut f: impl FnMut(&B, &C) -> LinComb<D>,
    ) -> LinComb<D> {
        let mut out = LinComb::zero();
        for (b, x) in &self.terms {
            for (c, y) in other.iter() {
                out.add_scaled(&f(b, c), &(x * y));
            }
        }
        out
    }
}

impl<B: Ord + Clone> FromIterator<(B, Q)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.iter().enumerate() {
            let sep = if i == 0 { "" } else { " + " };
            write!(f, "{sep}({}) {b}", format_q(c))?;
        }
        Ok(())
    }
}
