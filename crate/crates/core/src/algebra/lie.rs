use super::cochain::{increasing_tuples, Cochain};
use super::vector::Vector;
use crate::error::{Error, Result};

/// A basis triple on which the Jacobiator does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: [usize; 3],
    pub value: Vector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub triples_checked: usize,
    pub violations: Vec<JacobiViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `[[a,b],c] + [[b,c],a] + [[c,a],b] = 0` on every basis triple
/// `i < j < k` of an antisymmetric bracket table.
pub fn validate_jacobi(bracket: &Cochain) -> ValidationReport {
    assert_eq!(bracket.degree(), 2, "a bracket is a 2-cochain");
    let n = bracket.dim();
    let mut report = ValidationReport::default();
    for t in increasing_tuples(n, 3) {
        let e: Vec<Vector> = t.iter().map(|&i| Vector::basis(n, i)).collect();
        let br = |x: &Vector, y: &Vector| bracket.eval_unchecked(&[x, y]);
        let mut value = br(&br(&e[0], &e[1]), &e[2]);
        value = &value + &br(&br(&e[1], &e[2]), &e[0]);
        value = &value + &br(&br(&e[2], &e[0]), &e[1]);
        report.triples_checked += 1;
        if !value.is_zero() {
            report.violations.push(JacobiViolation { triple: [t[0], t[1], t[2]], value });
        }
    }
    report
}

/// A finite-dimensional Lie algebra `(A, α₀)` over ℚ. The bracket is stored
/// as a 2-cochain, so antisymmetry holds by construction; the Jacobi identity
/// is checked when the algebra is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    bracket: Cochain,
}

impl LieAlgebra {
    pub fn new(name: impl Into<String>, bracket: Cochain) -> Result<Self> {
        if bracket.degree() != 2 {
            return Err(Error::UnsupportedDegree(bracket.degree()));
        }
        if bracket.dim() == 0 {
            return Err(Error::Input("dimension must be positive".into()));
        }
        let report = validate_jacobi(&bracket);
        if !report.is_valid() {
            return Err(Error::NotLie(report.violations.len()));
        }
        Ok(LieAlgebra { name: name.into(), bracket })
    }

    /// Structure constants `α₀(e_i, e_j) = Σ_k c_k e_k` for `i < j` (0-based).
    pub fn from_structure_constants(
        name: impl Into<String>,
        dim: usize,
        constants: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        let bracket = Cochain::from_entries(dim, 2, constants.into_iter().map(|(i, j, v)| (vec![i, j], v)))?;
        Self::new(name, bracket)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(format!("abelian{dim}"), Cochain::zero(dim, 2)).expect("abelian bracket")
    }

    /// Heisenberg algebra h₃: `[e1,e2] = e3`.
    pub fn heisenberg() -> Self {
        Self::from_structure_constants("h3", 3, [(0, 1, Vector::from_ints(&[0, 0, 1]))]).expect("h3")
    }

    /// sl₂ in the basis `(h, e, f)`: `[h,e]=2e`, `[h,f]=-2f`, `[e,f]=h`.
    pub fn sl2() -> Self {
        Self::from_structure_constants(
            "sl2",
            3,
            [
                (0, 1, Vector::from_ints(&[0, 2, 0])),
                (0, 2, Vector::from_ints(&[0, 0, -2])),
                (1, 2, Vector::from_ints(&[1, 0, 0])),
            ],
        )
        .expect("sl2")
    }

    /// The two-dimensional nonabelian algebra `[e1,e2] = e2`.
    pub fn affine2() -> Self {
        Self::from_structure_constants("aff2", 2, [(0, 1, Vector::from_ints(&[0, 1]))]).expect("aff2")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    /// α₀ as a 2-cochain.
    pub fn bracket(&self) -> &Cochain {
        &self.bracket
    }

    pub fn bracket_eval(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.bracket.eval(&[x, y])
    }

    pub(crate) fn br(&self, x: &Vector, y: &Vector) -> Vector {
        self.bracket.eval_unchecked(&[x, y])
    }
}
