//! Degree-homogeneous linear maps between graded bases.

use crate::error::Error;
use crate::grading::GradedBasis;
use crate::rational::Rational;
use crate::vector::GradedVector;

/// A linear map of graded vector spaces, homogeneous of a fixed degree shift:
/// a basis vector of degree `d` is sent into the degree `d + shift` component
/// of the target.
///
/// The map is stored column-wise: `columns[j]` is the image of the `j`-th
/// source basis vector. Construction validates that every column lands in the
/// right degree, so a `GradedLinearMap` is homogeneous by invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLinearMap {
    source: GradedBasis,
    target: GradedBasis,
    shift: i64,
    columns: Vec<GradedVector>,
}

/// An endomorphism of a single graded basis, possibly shifting degree.
/// Same representation as [`GradedLinearMap`]; use
/// [`GradedLinearMap::endomorphism`] to construct one with the source and
/// target tied together.
pub type ShiftedEndomorphism = GradedLinearMap;

impl GradedLinearMap {
    /// Builds a map from its columns, checking shape and homogeneity.
    pub fn new(
        source: GradedBasis,
        target: GradedBasis,
        shift: i64,
        columns: Vec<GradedVector>,
    ) -> Result<Self, Error> {
        if source.mode() != target.mode() {
            return Err(Error::BasisMismatch(format!(
                "source graded over {} but target over {}",
                source.mode(),
                target.mode()
            )));
        }
        let mode = source.mode();
        let shift = mode.normalize(shift);
        if columns.len() != source.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns for a source basis of size {}",
                columns.len(),
                source.len()
            )));
        }
        for (j, column) in columns.iter().enumerate() {
            let want = mode.add(source.degree(j), shift);
            for (i, _) in column.iter() {
                target.check_index(i)?;
                if target.degree(i) != want {
                    return Err(Error::DegreeIncompatible {
                        from: source.name(j).to_string(),
                        from_degree: source.degree(j),
                        to: target.name(i).to_string(),
                        to_degree: target.degree(i),
                        shift,
                    });
                }
            }
        }
        Ok(GradedLinearMap { source, target, shift, columns })
    }

    /// An endomorphism of `basis` with the given degree shift.
    pub fn endomorphism(
        basis: &GradedBasis,
        shift: i64,
        columns: Vec<GradedVector>,
    ) -> Result<ShiftedEndomorphism, Error> {
        GradedLinearMap::new(basis.clone(), basis.clone(), shift, columns)
    }

    /// The identity endomorphism of `basis` (shift 0).
    pub fn identity(basis: &GradedBasis) -> Self {
        let columns = (0..basis.len()).map(GradedVector::basis).collect();
        GradedLinearMap {
            source: basis.clone(),
            target: basis.clone(),
            shift: 0,
            columns,
        }
    }

    /// The zero map with the given shift.
    pub fn zero(source: &GradedBasis, target: &GradedBasis, shift: i64) -> Result<Self, Error> {
        let columns = vec![GradedVector::zero(); source.len()];
        GradedLinearMap::new(source.clone(), target.clone(), shift, columns)
    }

    pub fn source(&self) -> &GradedBasis {
        &self.source
    }

    pub fn target(&self) -> &GradedBasis {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// The image of the `j`-th source basis vector.
    pub fn column(&self, j: usize) -> &GradedVector {
        &self.columns[j]
    }

    /// Applies the map to a vector over the source basis.
    pub fn apply(&self, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (j, coeff) in v.iter() {
            out.add_scaled(&self.columns[j], coeff);
        }
        out
    }

    /// The composite `self ∘ other` (apply `other` first). Shifts add.
    pub fn compose(&self, other: &GradedLinearMap) -> Result<GradedLinearMap, Error> {
        if other.target != self.source {
            return Err(Error::BasisMismatch(
                "composition requires the inner map's target to equal the outer map's source"
                    .to_string(),
            ));
        }
        let shift = self.source.mode().add_shift(self.shift, other.shift);
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        GradedLinearMap::new(other.source.clone(), self.target.clone(), shift, columns)
    }

    /// The pointwise sum `self + other`; requires equal sources, targets and
    /// shifts.
    pub fn add(&self, other: &GradedLinearMap) -> Result<GradedLinearMap, Error> {
        self.check_same_shape(other)?;
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(GradedLinearMap {
            source: self.source.clone(),
            target: self.target.clone(),
            shift: self.shift,
            columns,
        })
    }

    /// The pointwise difference `self - other`; requires equal sources,
    /// targets and shifts.
    pub fn sub(&self, other: &GradedLinearMap) -> Result<GradedLinearMap, Error> {
        self.check_same_shape(other)?;
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(GradedLinearMap {
            source: self.source.clone(),
            target: self.target.clone(),
            shift: self.shift,
            columns,
        })
    }

    pub fn scale(&self, scale: &Rational) -> GradedLinearMap {
        GradedLinearMap {
            source: self.source.clone(),
            target: self.target.clone(),
            shift: self.shift,
            columns: self.columns.iter().map(|c| c.scale(scale)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(GradedVector::is_zero)
    }

    fn check_same_shape(&self, other: &GradedLinearMap) -> Result<(), Error> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::BasisMismatch(
                "sum of maps requires equal sources and targets".to_string(),
            ));
        }
        if self.shift != other.shift {
            return Err(Error::ShapeMismatch(format!(
                "sum of maps requires equal shifts ({} vs {})",
                self.shift, other.shift
            )));
        }
        Ok(())
    }
}

impl crate::grading::GradingMode {
    /// Shift composition: shifts add (mod 2 in `Z2` mode).
    pub(crate) fn add_shift(self, s1: i64, s2: i64) -> i64 {
        self.add(s1, s2)
    }
}
