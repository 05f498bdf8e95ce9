//! Sparse vectors over the rationals, indexed into a graded basis.

use std::collections::BTreeMap;

use crate::grading::GradedBasis;
use crate::rational::Rational;

/// A sparse rational vector: a map from basis index to nonzero coefficient.
///
/// Zero coefficients are never stored, so equality of `GradedVector`s is
/// equality of vectors, and iteration always visits indices in ascending
/// order. The vector itself carries no reference to a basis; operations that
/// need names or degrees take the basis as an argument.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedVector {
    terms: BTreeMap<usize, Rational>,
}

impl GradedVector {
    pub fn zero() -> Self {
        GradedVector { terms: BTreeMap::new() }
    }

    /// The basis vector `e_index`.
    pub fn basis(index: usize) -> Self {
        GradedVector::term(index, Rational::one())
    }

    /// The single-term vector `coeff * e_index` (zero if `coeff` is zero).
    pub fn term(index: usize, coeff: Rational) -> Self {
        let mut v = GradedVector::zero();
        v.add_term(index, coeff);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut v = GradedVector::zero();
        for (index, coeff) in terms {
            v.add_term(index, coeff);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient at `index` (zero when absent).
    pub fn coeff(&self, index: usize) -> Rational {
        self.terms.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates over `(index, coefficient)` pairs in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    /// Adds `coeff * e_index` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, index: usize, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(index).or_insert_with(Rational::zero);
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    /// Adds `scale * other` in place.
    pub fn add_scaled(&mut self, other: &GradedVector, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (index, coeff) in other.iter() {
            self.add_term(index, scale * coeff);
        }
    }

    pub fn add(&self, other: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::minus_one());
        out
    }

    pub fn scale(&self, scale: &Rational) -> GradedVector {
        let mut out = GradedVector::zero();
        out.add_scaled(self, scale);
        out
    }

    pub fn neg(&self) -> GradedVector {
        self.scale(&Rational::minus_one())
    }

    /// Renders the vector against basis names: `"0"` for the zero vector,
    /// otherwise terms like `"-2*F"` or `"1/3*H"` joined by `" + "`, in
    /// ascending basis-index order.
    pub fn render(&self, basis: &GradedBasis) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.iter()
            .map(|(index, coeff)| format!("{}*{}", coeff, basis.name(index)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl FromIterator<(usize, Rational)> for GradedVector {
    fn from_iter<T: IntoIterator<Item = (usize, Rational)>>(iter: T) -> Self {
        GradedVector::from_terms(iter)
    }
}
