use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num::{One, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Coordinates of an element of `A` in the fixed basis `e_1..e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    /// The basis vector `e_{index+1}` (indices are 0-based).
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[index] = Rational::one();
        v
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        Vector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Nonzero coordinates as `(index, value)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        if c.is_zero() {
            return Vector::zero(self.dim());
        }
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
