//! Fraction-free (Bareiss) elimination over ℚ.
//!
//! Rows are cleared of denominators first, then eliminated with integer-only
//! updates whose divisions are exact. Pivots are chosen as the first nonzero
//! entry scanning rows top-down, columns left-to-right, so every result here is
//! deterministic.

use num::{BigInt, Integer, One, Zero};

use crate::algebra::Rational;

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    /// Builds a `rows × columns.len()` matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, xj) in x.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !xj.is_zero() {
                        acc += a * xj;
                    }
                }
                acc
            })
            .collect()
    }

    /// Appends `b` as an extra column.
    pub fn augmented(&self, b: &[Rational]) -> Matrix {
        assert_eq!(b.len(), self.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * m.cols + j] = self.get(i, j).clone();
            }
            m.data[i * m.cols + self.cols] = b[i].clone();
        }
        m
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self).rank()
    }
}

/// Integer row echelon form produced by Bareiss elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &Matrix) -> Self {
        let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
            .map(|i| integer_row(&m.data[i * m.cols..(i + 1) * m.cols]))
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let (top, bottom) = rows.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = pivot_row[c].clone();
            for row in bottom.iter_mut() {
                let factor = row[c].clone();
                for j in c + 1..m.cols {
                    let num = &pivot * &row[j] - &factor * &pivot_row[j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    row[j] = q;
                }
                row[c] = BigInt::zero();
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Echelon { cols: m.cols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis of the null space: one vector per non-pivot column, with that
    /// free variable set to 1 and the other free variables to 0.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                self.back_substitute(&mut x, None);
                x
            })
            .collect()
    }

    /// Fills pivot variables of `x` so that every echelon row is satisfied,
    /// with right-hand side taken from column `rhs` when given.
    fn back_substitute(&self, x: &mut [Rational], rhs: Option<usize>) {
        for (row, &p) in self.rows.iter().zip(&self.pivots).rev() {
            let mut acc = match rhs {
                Some(b) => Rational::from_integer(row[b].clone()),
                None => Rational::zero(),
            };
            let limit = rhs.unwrap_or(self.cols);
            for j in p + 1..limit {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc -= Rational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[p] = acc / Rational::from_integer(row[p].clone());
        }
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

/// Some solution of `m x = b`, or `None` if the system is inconsistent. Free
/// variables are set to zero.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let aug = m.augmented(b);
    let ech = Echelon::new(&aug);
    if ech.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols + 1];
    ech.back_substitute(&mut x, Some(m.cols));
    x.truncate(m.cols);
    Some(x)
}

/// Selects, in order, the vectors of `candidates` that are independent modulo
/// the span of `base`. Returns their indices.
pub fn complement_indices(dim: usize, base: &[Vec<Rational>], candidates: &[Vec<Rational>]) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut columns: Vec<Vec<Rational>> = base.to_vec();
    let mut rank = Matrix::from_columns(dim, &columns).rank();
    for (i, c) in candidates.iter().enumerate() {
        columns.push(c.clone());
        let r = Matrix::from_columns(dim, &columns).rank();
        if r > rank {
            rank = r;
            chosen.push(i);
        } else {
            columns.pop();
        }
    }
    chosen
}
