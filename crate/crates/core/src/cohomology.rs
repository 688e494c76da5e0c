//! Chevalley-Eilenberg cohomology of `A` with adjoint coefficients.
//!
//! Sign convention: with `δ` the classical coboundary
//!
//! ```text
//! (δf)(x_0..x_p) = Σ_i (-1)^i [x_i, f(..x̂_i..)] + Σ_{i<j} (-1)^{i+j} f([x_i,x_j], ..x̂_i..x̂_j..)
//! ```
//!
//! the differential used throughout is `d_p = (-1)^{p+1} δ_p`. This is the
//! sign pattern of `[α₀, ·]` for the insertion bracket: on 1-cochains
//! `d f (x,y) = [x,f(y)] + [f(x),y] - f([x,y])`, on 2-cochains
//! `d f = α₀f + fα₀` (the unshuffle compositions), and `d_0 a = ad_a`.
//! Every `d_{p+1} d_p` vanishes since the global signs only flip.



use crate::algebra::{increasing_tuples, Cochain, LieAlgebra, Rational, Vector};
use crate::error::{Error, Result};
use crate::linalg::{complement_indices, solve, Echelon, Matrix};

/// Canonical basis of `C^p(A;A)`: elementary cochains ordered by
/// lexicographic tuple, then target index.
#[derive(Clone, Debug)]
pub struct CochainSpaceBasis {
    dim: usize,
    degree: usize,
    tuples: Vec<Vec<usize>>,
}

impl CochainSpaceBasis {
    pub fn new(dim: usize, degree: usize) -> Self {
        CochainSpaceBasis { dim, degree, tuples: increasing_tuples(dim, degree) }
    }

    pub fn len(&self) -> usize {
        self.tuples.len() * self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `(tuple, target)` of the `idx`-th elementary cochain.
    pub fn label(&self, idx: usize) -> (&[usize], usize) {
        (&self.tuples[idx / self.dim], idx % self.dim)
    }

    pub fn element(&self, idx: usize) -> Cochain {
        let (t, k) = self.label(idx);
        Cochain::elementary(self.dim, t.to_vec(), k)
    }

    pub fn elements(&self) -> impl Iterator<Item = Cochain> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }
}

/// Classical δ on a cochain of any degree ≥ 1.
fn classical_coboundary(alg: &LieAlgebra, f: &Cochain) -> Cochain {
    let n = alg.dim();
    let p = f.degree();
    if f.is_zero() {
        return Cochain::zero(n, p + 1);
    }
    let basis: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
    let mut rows = Vec::new();
    for t in increasing_tuples(n, p + 1) {
        let mut value = Vector::zero(n);
        for i in 0..=p {
            let rest: Vec<&Vector> = t.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| &basis[x]).collect();
            let inner = f.eval_unchecked(&rest);
            let term = alg.br(&basis[t[i]], &inner);
            value.add_scaled(&sign(i), &term);
        }
        for i in 0..=p {
            for j in i + 1..=p {
                let b = alg.br(&basis[t[i]], &basis[t[j]]);
                if b.is_zero() {
                    continue;
                }
                let mut args: Vec<&Vector> = vec![&b];
                args.extend(t.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| &basis[x]));
                let term = f.eval_unchecked(&args);
                value.add_scaled(&sign(i + j), &term);
            }
        }
        if !value.is_zero() {
            rows.push((t, value));
        }
    }
    Cochain::from_entries(n, p + 1, rows).expect("increasing tuples")
}

fn sign(k: usize) -> Rational {
    Rational::from_integer(if k.is_multiple_of(2) { 1 } else { -1 }.into())
}

pub(crate) fn differential_any(alg: &LieAlgebra, f: &Cochain) -> Cochain {
    classical_coboundary(alg, f).scale(&sign(f.degree() + 1))
}

/// `d_0 a = ad_a`, the 1-cochain `x ↦ [a, x]`.
pub fn inner_derivation(alg: &LieAlgebra, a: &Vector) -> Cochain {
    let n = alg.dim();
    let rows = (0..n).map(|i| (vec![i], alg.br(a, &Vector::basis(n, i))));
    Cochain::from_entries(n, 1, rows).expect("degree-1 rows")
}

/// The differential `d: C^p → C^{p+1}` for `p ∈ {1, 2, 3}`.
pub fn ce_differential(alg: &LieAlgebra, f: &Cochain) -> Result<Cochain> {
    if !(1..=3).contains(&f.degree()) {
        return Err(Error::UnsupportedDegree(f.degree()));
    }
    if f.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: f.dim() });
    }
    Ok(differential_any(alg, f))
}

/// Matrix of `d_p` in the canonical bases, for `p ∈ 0..=3`.
pub fn differential_matrix(alg: &LieAlgebra, p: usize) -> Matrix {
    let n = alg.dim();
    let target = CochainSpaceBasis::new(n, p + 1);
    let columns: Vec<Vec<Rational>> = if p == 0 {
        (0..n).map(|i| inner_derivation(alg, &Vector::basis(n, i)).to_coordinates()).collect()
    } else {
        CochainSpaceBasis::new(n, p).elements().map(|e| differential_any(alg, &e).to_coordinates()).collect()
    };
    Matrix::from_columns(target.len(), &columns)
}

#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub degree: usize,
    pub basis: Vec<Cochain>,
}

impl CocycleSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn check_degree(p: usize) -> Result<()> {
    if (1..=3).contains(&p) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree(p))
    }
}

/// Kernel of `d_p`, one basis cochain per free column of the eliminated
/// differential matrix.
pub fn cocycle_space(alg: &LieAlgebra, p: usize) -> Result<CocycleSpace> {
    check_degree(p)?;
    let m = differential_matrix(alg, p);
    let basis = Echelon::new(&m)
        .kernel_basis()
        .into_iter()
        .map(|k| Cochain::from_coordinates(alg.dim(), p, &k))
        .collect();
    Ok(CocycleSpace { degree: p, basis })
}

#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub degree: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub representatives: Vec<Cochain>,
    coboundary_span: Matrix,
}

impl CohomologyResult {
    pub fn dim_h(&self) -> usize {
        self.dim_cocycles - self.dim_coboundaries
    }

    /// Coordinates of `[z]` in the basis of representatives, or `None` when
    /// `z` is not a cocycle of this degree.
    pub fn class_coordinates(&self, alg: &LieAlgebra, z: &Cochain) -> Option<Vec<Rational>> {
        if z.degree() != self.degree || z.dim() != alg.dim() || !differential_any(alg, z).is_zero() {
            return None;
        }
        let rows = self.coboundary_span.rows();
        let mut columns: Vec<Vec<Rational>> = self.representatives.iter().map(Cochain::to_coordinates).collect();
        columns.extend((0..self.coboundary_span.cols()).map(|j| self.coboundary_span.column(j)));
        let m = Matrix::from_columns(rows, &columns);
        let y = solve(&m, &z.to_coordinates())?;
        Some(y[..self.representatives.len()].to_vec())
    }
}

/// `H^p(A;A)` for `p ∈ {1,2,3}` with deterministic representatives: the
/// cocycle basis vectors, in order, that stay independent modulo `B^p`.
pub fn cohomology(alg: &LieAlgebra, p: usize) -> Result<CohomologyResult> {
    let z = cocycle_space(alg, p)?;
    let b = differential_matrix(alg, p - 1);
    let dim_coboundaries = b.rank();
    let b_cols: Vec<Vec<Rational>> = (0..b.cols()).map(|j| b.column(j)).collect();
    let z_coords: Vec<Vec<Rational>> = z.basis.iter().map(Cochain::to_coordinates).collect();
    let picked = complement_indices(b.rows(), &b_cols, &z_coords);
    let representatives: Vec<Cochain> = picked.into_iter().map(|i| z.basis[i].clone()).collect();
    debug_assert_eq!(representatives.len() + dim_coboundaries, z.dim());
    Ok(CohomologyResult {
        degree: p,
        dim_cocycles: z.dim(),
        dim_coboundaries,
        representatives,
        coboundary_span: b,
    })
}

/// Outcome of solving `d g = target`.
#[derive(Clone, Debug, PartialEq)]
pub enum CoboundarySolve {
    Solved(Cochain),
    /// No solution. `class_coordinates` locates `[target]` in the chosen
    /// basis of `H^{p+1}`; it is `None` when the target is not even a cocycle.
    Unsolvable { class_coordinates: Option<Vec<Rational>> },
}

impl CoboundarySolve {
    pub fn solution(&self) -> Option<&Cochain> {
        match self {
            CoboundarySolve::Solved(g) => Some(g),
            CoboundarySolve::Unsolvable { .. } => None,
        }
    }
}

/// Finds `g` of degree `p` with `d g = target`, where `target` has degree
/// `p + 1 ∈ {2, 3}`. Free variables of the elimination are set to zero.
pub fn coboundary_solve(alg: &LieAlgebra, target: &Cochain) -> Result<CoboundarySolve> {
    let q = target.degree();
    if !(2..=3).contains(&q) {
        return Err(Error::UnsupportedDegree(q));
    }
    if target.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: target.dim() });
    }
    let p = q - 1;
    if target.is_zero() {
        return Ok(CoboundarySolve::Solved(Cochain::zero(alg.dim(), p)));
    }
    let m = differential_matrix(alg, p);
    match solve(&m, &target.to_coordinates()) {
        Some(x) => Ok(CoboundarySolve::Solved(Cochain::from_coordinates(alg.dim(), p, &x))),
        None => {
            let h = cohomology(alg, q)?;
            Ok(CoboundarySolve::Unsolvable { class_coordinates: h.class_coordinates(alg, target) })
        }
    }
}
