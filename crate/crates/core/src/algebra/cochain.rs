use std::collections::BTreeMap;

use num::Zero;

use super::rational::Rational;
use super::vector::Vector;
use crate::error::{Error, Result};

/// An alternating multilinear map `A^p -> A`, stored sparsely by its values
/// on strictly increasing basis tuples (0-based). Absent rows are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    dim: usize,
    degree: usize,
    table: BTreeMap<Vec<usize>, Vector>,
}

impl Cochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Cochain { dim, degree, table: BTreeMap::new() }
    }

    /// Builds a cochain from `(increasing tuple, value)` rows. Zero values are
    /// dropped; repeated tuples are summed.
    pub fn from_entries<I>(dim: usize, degree: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Vector)>,
    {
        let mut c = Cochain::zero(dim, degree);
        for (tuple, value) in entries {
            if tuple.len() != degree
                || tuple.windows(2).any(|w| w[0] >= w[1])
                || tuple.iter().any(|&i| i >= dim)
            {
                return Err(Error::InvalidIndex(tuple));
            }
            value.check_dim(dim)?;
            c.add_to_row(tuple, &Rational::from_integer(1.into()), &value);
        }
        Ok(c)
    }

    /// Elementary cochain sending the basis tuple `tuple` to `e_target`.
    pub fn elementary(dim: usize, tuple: Vec<usize>, target: usize) -> Self {
        let mut c = Cochain::zero(dim, tuple.len());
        c.table.insert(tuple, Vector::basis(dim, target));
        c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Nonzero rows in lexicographic tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.table.iter()
    }

    pub fn row(&self, tuple: &[usize]) -> Option<&Vector> {
        self.table.get(tuple)
    }

    fn add_to_row(&mut self, tuple: Vec<usize>, c: &Rational, value: &Vector) {
        if c.is_zero() || value.is_zero() {
            return;
        }
        let vanished = {
            let entry = self.table.entry(tuple.clone()).or_insert_with(|| Vector::zero(self.dim));
            entry.add_scaled(c, value);
            entry.is_zero()
        };
        if vanished {
            self.table.remove(&tuple);
        }
    }

    /// Sets the value on an arbitrary basis tuple, honoring antisymmetry.
    pub fn set_basis_value(&mut self, tuple: &[usize], value: &Vector) -> Result<()> {
        let (sign, sorted) = match sort_with_sign(tuple) {
            Some(x) => x,
            None => return Err(Error::InvalidIndex(tuple.to_vec())),
        };
        self.table.remove(&sorted);
        let c = Rational::from_integer(sign.into());
        self.add_to_row(sorted, &c, value);
        Ok(())
    }

    /// Value on basis vectors `e_{i1}, ..., e_{ip}` in any order.
    pub fn eval_basis(&self, tuple: &[usize]) -> Vector {
        debug_assert_eq!(tuple.len(), self.degree);
        match sort_with_sign(tuple) {
            Some((sign, sorted)) => match self.table.get(&sorted) {
                Some(v) if sign > 0 => v.clone(),
                Some(v) => -v,
                None => Vector::zero(self.dim),
            },
            None => Vector::zero(self.dim),
        }
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[&Vector]) -> Result<Vector> {
        if args.len() != self.degree {
            return Err(Error::ArityMismatch { expected: self.degree, found: args.len() });
        }
        for a in args {
            a.check_dim(self.dim)?;
        }
        Ok(self.eval_unchecked(args))
    }

    pub(crate) fn eval_unchecked(&self, args: &[&Vector]) -> Vector {
        let mut out = Vector::zero(self.dim);
        if self.is_zero() {
            return out;
        }
        let supports: Vec<Vec<(usize, &Rational)>> = args.iter().map(|a| a.support().collect()).collect();
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        let mut idx = vec![0usize; args.len()];
        let mut tuple = vec![0usize; args.len()];
        loop {
            let mut coeff = Rational::from_integer(1.into());
            for (slot, &k) in idx.iter().enumerate() {
                let (i, c) = supports[slot][k];
                tuple[slot] = i;
                coeff *= c;
            }
            if let Some((sign, sorted)) = sort_with_sign(&tuple) {
                if let Some(v) = self.table.get(&sorted) {
                    if sign < 0 {
                        coeff = -coeff;
                    }
                    out.add_scaled(&coeff, v);
                }
            }
            // odometer over the supports
            let mut slot = args.len();
            loop {
                if slot == 0 {
                    return out;
                }
                slot -= 1;
                idx[slot] += 1;
                if idx[slot] < supports[slot].len() {
                    break;
                }
                idx[slot] = 0;
            }
        }
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        let one = Rational::from_integer(1.into());
        for (k, v) in &other.table {
            out.add_to_row(k.clone(), &one, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        if c.is_zero() {
            return Cochain::zero(self.dim, self.degree);
        }
        Cochain {
            dim: self.dim,
            degree: self.degree,
            table: self.table.iter().map(|(k, v)| (k.clone(), v.scale(c))).collect(),
        }
    }

    pub fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.degree != other.degree {
            return Err(Error::ArityMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    /// Coordinates in the canonical basis of `C^p`: tuples in lexicographic
    /// order, then target index.
    pub fn to_coordinates(&self) -> Vec<Rational> {
        let tuples = increasing_tuples(self.dim, self.degree);
        let mut out = Vec::with_capacity(tuples.len() * self.dim);
        for t in &tuples {
            match self.table.get(t) {
                Some(v) => out.extend(v.coords().iter().cloned()),
                None => out.extend(std::iter::repeat_n(Rational::zero(), self.dim)),
            }
        }
        out
    }

    pub fn from_coordinates(dim: usize, degree: usize, coords: &[Rational]) -> Cochain {
        let tuples = increasing_tuples(dim, degree);
        assert_eq!(coords.len(), tuples.len() * dim, "coordinate length");
        let mut c = Cochain::zero(dim, degree);
        for (row, t) in tuples.into_iter().enumerate() {
            let v = Vector::from_coords(coords[row * dim..(row + 1) * dim].to_vec());
            if !v.is_zero() {
                c.table.insert(t, v);
            }
        }
        c
    }
}

/// Sign of the permutation sorting `tuple`, and the sorted tuple; `None` if an
/// index repeats.
fn sort_with_sign(tuple: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut sorted = tuple.to_vec();
    let mut sign = 1;
    // insertion sort counting transpositions
    for i in 1..sorted.len() {
        let mut j = i;
        while j > 0 && sorted[j - 1] > sorted[j] {
            sorted.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sign, sorted))
    }
}

/// Sign of a permutation of `0..n` given as a sequence.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    sort_with_sign(perm).map(|(s, _)| s).unwrap_or(0)
}

/// All strictly increasing `p`-tuples from `0..n`, lexicographically.
pub fn increasing_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, p, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(n, p, 0, &mut Vec::with_capacity(p), &mut out);
    }
    out
}
