use std::fmt;

use super::rational::Rational;
use super::vector::Vector;
use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION: usize = 6;
pub const MIN_TRUNCATION: usize = 3;

/// Homological degree ε. `A` sits in degree 0 and `ε(a*) = ε(a) + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grading {
    pub epsilon: i32,
}

impl Grading {
    pub const BASE: Grading = Grading { epsilon: 0 };

    pub fn shifted(self) -> Grading {
        Grading { epsilon: self.epsilon + 1 }
    }

    pub fn of_starred(starred: bool) -> Grading {
        if starred {
            Self::BASE.shifted()
        } else {
            Self::BASE
        }
    }
}

/// A polynomial `Σ_{k ≤ T} v_k t^k` with coefficients in `A` (unstarred,
/// modelling `A[[t]]`) or in `A[1]` (starred, modelling `A[1][[t]]`). All
/// products are cut off above `t^T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Vector>,
    starred: bool,
}

impl TruncatedSeries {
    pub fn zero(dim: usize, truncation: usize, starred: bool) -> Self {
        TruncatedSeries { coeffs: vec![Vector::zero(dim); truncation + 1], starred }
    }

    /// `v t^power`; vanishes when `power > truncation`.
    pub fn monomial(v: Vector, power: usize, truncation: usize, starred: bool) -> Self {
        let mut s = Self::zero(v.dim(), truncation, starred);
        if power <= truncation {
            s.coeffs[power] = v;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Vector>, starred: bool) -> Result<Self> {
        let truncation = coeffs.len().checked_sub(1).ok_or(Error::SeriesMismatch("empty coefficient list"))?;
        if truncation < MIN_TRUNCATION {
            return Err(Error::TruncationTooSmall { found: truncation, min: MIN_TRUNCATION });
        }
        let dim = coeffs[0].dim();
        for c in &coeffs {
            c.check_dim(dim)?;
        }
        Ok(TruncatedSeries { coeffs, starred })
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    pub fn is_starred(&self) -> bool {
        self.starred
    }

    pub fn grading(&self) -> Grading {
        Grading::of_starred(self.starred)
    }

    pub fn coeff(&self, k: usize) -> &Vector {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Vector] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Vector::is_zero)
    }

    /// Nonzero terms `(power, coefficient)` in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Vector)> {
        self.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.starred != other.starred {
            return Err(Error::SeriesMismatch("cannot combine starred and unstarred series"));
        }
        if self.truncation() != other.truncation() {
            return Err(Error::SeriesMismatch("truncation orders differ"));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { coeffs, starred: self.starred })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncatedSeries { coeffs, starred: self.starred })
    }

    /// `self += c * v t^power`, dropped above the truncation order.
    pub(crate) fn add_term(&mut self, c: &Rational, v: &Vector, power: usize) {
        if power < self.coeffs.len() {
            self.coeffs[power].add_scaled(c, v);
        }
    }

    pub(crate) fn add_scaled_series(&mut self, c: &Rational, other: &Self) {
        debug_assert_eq!(self.starred, other.starred);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_scaled(c, b);
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|v| -v).collect(), starred: self.starred }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|v| v.scale(c)).collect(), starred: self.starred }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let dim = self.dim();
        let coeffs = (0..self.coeffs.len())
            .map(|i| if i >= k { self.coeffs[i - k].clone() } else { Vector::zero(dim) })
            .collect();
        TruncatedSeries { coeffs, starred: self.starred }
    }

    /// The `a ↦ a*` correspondence applied coefficientwise (or its inverse).
    pub fn with_star(&self, starred: bool) -> Self {
        TruncatedSeries { coeffs: self.coeffs.clone(), starred }
    }

    /// Keeps only the coefficients of `t^k` for `k` in `range`.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Self {
        let dim = self.dim();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, v)| if range.contains(&k) { v.clone() } else { Vector::zero(dim) })
            .collect();
        TruncatedSeries { coeffs, starred: self.starred }
    }
}

impl fmt::Display for TruncatedSeries {
    /// Renders e.g. `[1,0,0] + t^2 * [0,0,1]^*`; the zero series is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.starred { "^*" } else { "" };
        let mut first = true;
        for (k, v) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{v}{star}")?,
                1 => write!(f, "t * {v}{star}")?,
                _ => write!(f, "t^{k} * {v}{star}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(c: &[i64], k: usize, t: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(Vector::from_ints(c), k, t, false)
    }

    #[test]
    fn shift_and_truncation() {
        let a = mono(&[1, 2, 3], 0, 6);
        assert_eq!(a.shift(2), mono(&[1, 2, 3], 2, 6));
        let b = mono(&[1, 2, 3], 2, 3);
        assert!(b.shift(2).is_zero());
    }

    #[test]
    fn additive_inverse() {
        let a = mono(&[1, 0, 0], 1, 6);
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn starred_mix_rejected() {
        let a = mono(&[1, 0, 0], 1, 6);
        let b = a.with_star(true);
        assert!(matches!(a.add(&b), Err(Error::SeriesMismatch(_))));
        assert!(a.add(&mono(&[1, 0, 0], 1, 5)).is_err());
    }

    #[test]
    fn grading_tags() {
        assert_eq!(mono(&[1], 0, 3).grading().epsilon, 0);
        assert_eq!(mono(&[1], 0, 3).with_star(true).grading().epsilon, 1);
        assert_eq!(Grading::BASE.shifted().shifted().epsilon, 2);
    }

    #[test]
    fn display() {
        let s = mono(&[0, 0, 1], 2, 6).with_star(true);
        assert_eq!(s.to_string(), "t^2 * [0,0,1]^*");
        let u = mono(&[1, 0], 0, 6).add(&mono(&[0, -1], 1, 6)).unwrap();
        assert_eq!(u.to_string(), "[1,0] + t * [0,-1]");
        assert_eq!(TruncatedSeries::zero(2, 6, false).to_string(), "0");
    }

    #[test]
    fn from_coeffs_minimum_order() {
        assert!(TruncatedSeries::from_coeffs(vec![Vector::zero(2); 3], false).is_err());
        assert!(TruncatedSeries::from_coeffs(vec![Vector::zero(2); 4], false).is_ok());
    }

    fn series_strategy() -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(-20i64..20, 2 * 5).prop_map(|v| {
            let coeffs = v.chunks(2).map(Vector::from_ints).collect();
            TruncatedSeries::from_coeffs(coeffs, false).unwrap()
        })
    }

    proptest! {
        #[test]
        fn module_axioms(a in series_strategy(), b in series_strategy(), c in series_strategy(),
                         p in -9i64..9, q in 1i64..9) {
            let r = Rational::new(p.into(), q.into());
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().scale(&r), a.scale(&r).add(&b.scale(&r)).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().shift(1), a.shift(1).add(&b.shift(1)).unwrap());
            prop_assert_eq!(a.shift(1).shift(2), a.shift(3));
        }
    }
}
