//! Order-by-order deformation `α_t = α₀ + tα₁ + t²α₂ + ...` of a Lie bracket.
//!
//! The order `n` equation `Σ_{i+j=n} α_i α_j = 0` is solved as
//! `d α_n = ρ_n` with `ρ_n = -Σ_{i+j=n, i,j>0} α_i α_j`, where `d = [α₀, ·]`.

use num::Zero;

use crate::algebra::{increasing_tuples, Cochain, LieAlgebra, Rational, Vector};
use crate::cohomology::{coboundary_solve, cohomology, differential_any, CoboundarySolve};
use crate::error::{Error, Result};

fn check_pair(f: &Cochain, g: &Cochain) -> Result<()> {
    for c in [f, g] {
        if c.degree() != 2 {
            return Err(Error::UnsupportedDegree(c.degree()));
        }
    }
    f.check_compatible(g)
}

/// `(fg)(x1,x2,x3) = f(g(x1,x2),x3) - f(g(x1,x3),x2) + f(g(x2,x3),x1)`,
/// the sum over (2,1)-unshuffles, evaluated on arbitrary vectors.
pub fn compose_eval(f: &Cochain, g: &Cochain, x1: &Vector, x2: &Vector, x3: &Vector) -> Vector {
    let mut v = f.eval_unchecked(&[&g.eval_unchecked(&[x1, x2]), x3]);
    v = &v - &f.eval_unchecked(&[&g.eval_unchecked(&[x1, x3]), x2]);
    &v + &f.eval_unchecked(&[&g.eval_unchecked(&[x2, x3]), x1])
}

/// The composition product of two 2-cochains; the result is alternating.
pub fn compose(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    check_pair(f, g)?;
    let n = f.dim();
    if f.is_zero() || g.is_zero() {
        return Ok(Cochain::zero(n, 3));
    }
    let rows = increasing_tuples(n, 3).into_iter().filter_map(|t| {
        let e: Vec<Vector> = t.iter().map(|&i| Vector::basis(n, i)).collect();
        let v = compose_eval(f, g, &e[0], &e[1], &e[2]);
        (!v.is_zero()).then_some((t, v))
    });
    Cochain::from_entries(n, 3, rows)
}

/// `[f, g] = fg + gf`.
pub fn gbracket(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    compose(f, g)?.add(&compose(g, f)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub order: usize,
    pub rho: Cochain,
    pub is_coboundary: bool,
    /// Some `α_n` with `d α_n = ρ_n`, when one exists.
    pub witness: Option<Cochain>,
    /// Coordinates of `[ρ_n]` in the representatives of `H³` as returned by
    /// [`cohomology`].
    pub class_coordinates: Vec<Rational>,
}

/// A deformation known to satisfy every deformation equation through
/// `order_reached`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationState {
    algebra: LieAlgebra,
    alphas: Vec<Cochain>,
    first_obstruction: Option<ObstructionReport>,
}

impl DeformationState {
    /// Starts from the infinitesimal deformation `α₁`, which must be a cocycle.
    pub fn new(algebra: LieAlgebra, alpha1: Cochain) -> Result<Self> {
        if alpha1.degree() != 2 {
            return Err(Error::UnsupportedDegree(alpha1.degree()));
        }
        if alpha1.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: alpha1.dim() });
        }
        if !differential_any(&algebra, &alpha1).is_zero() {
            return Err(Error::NotCocycle);
        }
        let alphas = vec![algebra.bracket().clone(), alpha1];
        Ok(DeformationState { algebra, alphas, first_obstruction: None })
    }

    /// Builds a state from caller-chosen `α₁..α_k`, checking every equation
    /// through order `k`.
    pub fn with_terms(algebra: LieAlgebra, terms: Vec<Cochain>) -> Result<Self> {
        let mut it = terms.into_iter();
        let alpha1 = it.next().ok_or_else(|| Error::Input("need at least alpha1".into()))?;
        let mut state = Self::new(algebra, alpha1)?;
        for t in it {
            state.alphas[0].check_compatible(&t)?;
            state.alphas.push(t);
        }
        if let Some(m) = state.first_failing_order(state.order_reached() + 1) {
            return Err(Error::State(format!("deformation equation fails at order {m}")));
        }
        Ok(state)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// `α₀..α_k`.
    pub fn alphas(&self) -> &[Cochain] {
        &self.alphas
    }

    pub fn order_reached(&self) -> usize {
        self.alphas.len() - 1
    }

    pub fn first_obstruction(&self) -> Option<&ObstructionReport> {
        self.first_obstruction.as_ref()
    }

    fn alpha(&self, i: usize) -> Cochain {
        self.alphas.get(i).cloned().unwrap_or_else(|| Cochain::zero(self.algebra.dim(), 2))
    }

    fn compose_sum(&self, n: usize, skip_ends: bool) -> Cochain {
        let mut acc = Cochain::zero(self.algebra.dim(), 3);
        let range = if skip_ends { 1..n } else { 0..n + 1 };
        for i in range {
            let c = compose(&self.alpha(i), &self.alpha(n - i)).expect("same algebra");
            acc = acc.add(&c).expect("degree 3");
        }
        acc
    }

    /// `Σ_{i+j=n} α_i α_j`; absent terms count as zero.
    pub fn residual(&self, n: usize) -> Cochain {
        self.compose_sum(n, false)
    }

    /// `ρ_n = -Σ_{i+j=n, i,j>0} α_i α_j`.
    pub fn rho(&self, n: usize) -> Cochain {
        self.compose_sum(n, true).scale(&Rational::from_integer((-1).into()))
    }

    fn first_failing_order(&self, below: usize) -> Option<usize> {
        (0..below).find(|&m| !self.residual(m).is_zero())
    }

    /// Tries to solve the order `n` equation given the current lower terms.
    pub fn obstruction(&self, n: usize) -> Result<ObstructionReport> {
        if n < 2 {
            return Err(Error::Input(format!("obstructions start at order 2, got {n}")));
        }
        if let Some(m) = self.first_failing_order(n) {
            return Err(Error::State(format!("deformation equation fails at order {m} < {n}")));
        }
        let rho = self.rho(n);
        let h3 = cohomology(&self.algebra, 3)?;
        match coboundary_solve(&self.algebra, &rho)? {
            CoboundarySolve::Solved(w) => Ok(ObstructionReport {
                order: n,
                rho,
                is_coboundary: true,
                witness: Some(w),
                class_coordinates: vec![Rational::zero(); h3.dim_h()],
            }),
            CoboundarySolve::Unsolvable { class_coordinates: Some(c) } => Ok(ObstructionReport {
                order: n,
                rho,
                is_coboundary: false,
                witness: None,
                class_coordinates: c,
            }),
            CoboundarySolve::Unsolvable { class_coordinates: None } => {
                Err(Error::State(format!("rho_{n} is not a cocycle")))
            }
        }
    }

    /// Greedily solves orders `order_reached+1 ..= max_order`, stopping at the
    /// first obstruction that is not a coboundary.
    pub fn extend(&self, max_order: usize) -> Result<DeformationState> {
        let mut state = self.clone();
        for n in state.order_reached() + 1..=max_order {
            let report = state.obstruction(n)?;
            match &report.witness {
                Some(w) => state.alphas.push(w.clone()),
                None => {
                    state.first_obstruction = Some(report);
                    break;
                }
            }
        }
        let k = state.order_reached();
        assert!(
            state.first_failing_order(k + 1).is_none(),
            "extend produced a state violating the deformation equations"
        );
        Ok(state)
    }
}
