//! The two-term L-infinity algebra attached to `(A, α₀, α₁)`.
//!
//! Degree 0 is `X₀ = A[[t]]`, degree 1 is `X₁ = A[1][[t]]t²` (strict) or all
//! of `A[1][[t]]` (extended). With `B = t²A[[t]]` and `F = X₀/B`:
//!
//! * `l1` un-stars `X₁ → X₀`,
//! * `l2(a, b) = α₀(a,b) + α₁(a,b)t` on `X₀ × X₀`, and on `X₁ × X₀` the
//!   starred analogue `l2(a*, b) = (α₀(a,b) + α₁(a,b)t)*`,
//! * `l3(a, b, c) = -t² (α₁α₁)(a,b,c)*` on `X₀³`,
//!
//! all extended `k[[t]]`-multilinearly and zero elsewhere by degree.
//!
//! The strict maps are produced by transfer through the contracting homotopy
//! `s` (`l2(x, b) = -s l2(l1 x, b)` and `l3 = s l2²`), the extended maps by
//! their closed forms on constants. The two routes must agree on the strict
//! domain, which [`LInftyStructure::build_extended`] checks.

mod relations;
pub mod signs;

pub use relations::{
    FamilyReport, Generator, HomotopyReport, HomotopyViolation, Relation, RelationReport, RelationViolation,
    RestrictionReport, Term,
};


use crate::algebra::{Cochain, LieAlgebra, Rational, TruncatedSeries, Vector, MIN_TRUNCATION};
use crate::cohomology::differential_any;
use crate::deformation::compose;
use crate::error::{Error, Result};

/// Smallest truncation order accepted when relations are verified.
pub const VERIFY_MIN_TRUNCATION: usize = 6;

/// An element `x₀ + x₁` of `X₀ ⊕ X₁` stored as two truncated series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedElement {
    x0: TruncatedSeries,
    x1: TruncatedSeries,
}

impl GradedElement {
    pub fn zero(dim: usize, truncation: usize) -> Self {
        GradedElement {
            x0: TruncatedSeries::zero(dim, truncation, false),
            x1: TruncatedSeries::zero(dim, truncation, true),
        }
    }

    pub fn new(x0: TruncatedSeries, x1: TruncatedSeries) -> Result<Self> {
        if x0.is_starred() || !x1.is_starred() {
            return Err(Error::SeriesMismatch("degree-0 part must be unstarred and degree-1 part starred"));
        }
        if x0.truncation() != x1.truncation() || x0.dim() != x1.dim() {
            return Err(Error::SeriesMismatch("parts disagree on truncation or dimension"));
        }
        Ok(GradedElement { x0, x1 })
    }

    /// Wraps a single series in the summand its star flag selects.
    pub fn from_series(s: TruncatedSeries) -> Self {
        let zero = TruncatedSeries::zero(s.dim(), s.truncation(), !s.is_starred());
        if s.is_starred() {
            GradedElement { x0: zero, x1: s }
        } else {
            GradedElement { x0: s, x1: zero }
        }
    }

    /// `v t^power` in degree 0, or `v* t^power` in degree 1.
    pub fn monomial(v: Vector, power: usize, starred: bool, truncation: usize) -> Self {
        Self::from_series(TruncatedSeries::monomial(v, power, truncation, starred))
    }

    pub fn x0(&self) -> &TruncatedSeries {
        &self.x0
    }

    pub fn x1(&self) -> &TruncatedSeries {
        &self.x1
    }

    pub fn dim(&self) -> usize {
        self.x0.dim()
    }

    pub fn truncation(&self) -> usize {
        self.x0.truncation()
    }

    pub fn is_zero(&self) -> bool {
        self.x0.is_zero() && self.x1.is_zero()
    }

    /// Homogeneous degree; `None` for mixed elements. Zero counts as degree 0.
    pub fn degree(&self) -> Option<i32> {
        match (self.x0.is_zero(), self.x1.is_zero()) {
            (_, true) => Some(0),
            (true, false) => Some(1),
            (false, false) => None,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(GradedElement { x0: self.x0.add(&other.x0)?, x1: self.x1.add(&other.x1)? })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(GradedElement { x0: self.x0.sub(&other.x0)?, x1: self.x1.sub(&other.x1)? })
    }

    pub fn neg(&self) -> Self {
        GradedElement { x0: self.x0.neg(), x1: self.x1.neg() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GradedElement { x0: self.x0.scale(c), x1: self.x1.scale(c) }
    }

    pub fn shift(&self, k: usize) -> Self {
        GradedElement { x0: self.x0.shift(k), x1: self.x1.shift(k) }
    }

    pub(crate) fn add_scaled(&mut self, c: &Rational, other: &Self) {
        self.x0.add_scaled_series(c, &other.x0);
        self.x1.add_scaled_series(c, &other.x1);
    }
}

impl std::fmt::Display for GradedElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.x0.is_zero(), self.x1.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.x0),
            (true, false) => write!(f, "{}", self.x1),
            (false, false) => write!(f, "{} + {}", self.x0, self.x1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `X₁ = A[1][[t]]t²`.
    Strict,
    /// `X₁ = A[1][[t]]`, maps determined by their values on `A[1] ⊕ A`.
    Extended,
}

impl Variant {
    /// Lowest `t`-power allowed in degree 1.
    pub fn min_starred_power(self) -> usize {
        match self {
            Variant::Strict => 2,
            Variant::Extended => 0,
        }
    }
}

/// Overall factor of `l3`. `Derivation` gives `l3 = -t²(α₁α₁)*`, the value
/// of `s l2²` on constants; `Bracket` doubles it to `-t²[α₁,α₁]*`, which no
/// longer satisfies the relations when `α₁α₁ ≠ 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum L3Normalization {
    #[default]
    Derivation,
    Bracket,
}

impl L3Normalization {
    fn factor(self) -> Rational {
        match self {
            L3Normalization::Derivation => Rational::from_integer(1.into()),
            L3Normalization::Bracket => Rational::from_integer(2.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LInftyStructure {
    algebra: LieAlgebra,
    alpha1: Cochain,
    alpha1_sq: Cochain,
    truncation: usize,
    variant: Variant,
    l3_normalization: L3Normalization,
}

impl LInftyStructure {
    /// The strict structure for a cocycle `α₁`.
    pub fn new(algebra: LieAlgebra, alpha1: Cochain, truncation: usize) -> Result<Self> {
        if truncation < MIN_TRUNCATION {
            return Err(Error::TruncationTooSmall { found: truncation, min: MIN_TRUNCATION });
        }
        if alpha1.degree() != 2 {
            return Err(Error::UnsupportedDegree(alpha1.degree()));
        }
        if alpha1.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: alpha1.dim() });
        }
        if !differential_any(&algebra, &alpha1).is_zero() {
            return Err(Error::NotCocycle);
        }
        let alpha1_sq = compose(&alpha1, &alpha1)?;
        Ok(LInftyStructure {
            algebra,
            alpha1,
            alpha1_sq,
            truncation,
            variant: Variant::Strict,
            l3_normalization: L3Normalization::Derivation,
        })
    }

    pub fn with_l3_normalization(mut self, n: L3Normalization) -> Self {
        self.l3_normalization = n;
        self
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn alpha1(&self) -> &Cochain {
        &self.alpha1
    }

    /// `α₁α₁`, the composition square of the infinitesimal deformation.
    pub fn alpha1_square(&self) -> &Cochain {
        &self.alpha1_sq
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn l3_normalization(&self) -> L3Normalization {
        self.l3_normalization
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Whether `x` lies in the graded space of this variant.
    pub fn contains(&self, x: &GradedElement) -> bool {
        x.dim() == self.dim()
            && x.truncation() == self.truncation
            && x.x1.terms().all(|(k, _)| k >= self.variant.min_starred_power())
    }

    pub fn zero(&self) -> GradedElement {
        GradedElement::zero(self.dim(), self.truncation)
    }

    pub fn l1(&self, x: &GradedElement) -> GradedElement {
        GradedElement::from_series(x.x1.with_star(false))
    }

    /// The contracting homotopy: zero on `F` (powers 0, 1) and on `X₁`,
    /// `x ↦ -x*` on `B`.
    pub fn homotopy_s(&self, x: &GradedElement) -> GradedElement {
        GradedElement::from_series(x.x0.restrict(2..self.truncation + 1).neg().with_star(true))
    }

    /// `λ∘η`: projection of `X_*` onto the section `{a₀ + a₁t}` of `F`.
    pub fn lambda_eta(&self, x: &GradedElement) -> GradedElement {
        GradedElement::from_series(x.x0.restrict(0..2))
    }

    /// `Σ t^{i+j} (α₀(p_i, q_j) + α₁(p_i, q_j) t)`, starred as requested.
    fn l2_closed_form(&self, p: &TruncatedSeries, q: &TruncatedSeries, starred: bool) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.dim(), self.truncation, starred);
        let one = Rational::from_integer(1.into());
        for (i, a) in p.terms() {
            for (j, b) in q.terms() {
                if i + j > self.truncation {
                    continue;
                }
                out.add_term(&one, &self.algebra.br(a, b), i + j);
                out.add_term(&one, &self.alpha1.eval_unchecked(&[a, b]), i + j + 1);
            }
        }
        out
    }

    /// `l2` restricted to `X₁ × X₀`.
    fn l2_shifted(&self, x1: &TruncatedSeries, y0: &TruncatedSeries) -> TruncatedSeries {
        match self.variant {
            Variant::Extended => self.l2_closed_form(x1, y0, true),
            Variant::Strict => {
                // -s l2(l1 x, y)
                let inner = self.l2_closed_form(&x1.with_star(false), y0, false);
                inner.restrict(2..self.truncation + 1).with_star(true)
            }
        }
    }

    pub fn l2(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        if !x.x1.is_zero() && !y.x1.is_zero() {
            log::trace!("l2 on X1 x X1 vanishes by degree");
        }
        let x0 = self.l2_closed_form(&x.x0, &y.x0, false);
        let mut x1 = self.l2_shifted(&x.x1, &y.x0);
        let minus_one = Rational::from_integer((-1).into());
        x1.add_scaled_series(&minus_one, &self.l2_shifted(&y.x1, &x.x0));
        GradedElement { x0, x1 }
    }

    /// `l3` on `X₀³`; starred arguments are rejected.
    pub fn l3(&self, x: &GradedElement, y: &GradedElement, z: &GradedElement) -> Result<GradedElement> {
        if [x, y, z].iter().any(|a| !a.x1.is_zero()) {
            return Err(Error::Input("l3 takes degree-0 arguments only".into()));
        }
        Ok(self.l3_graded(x, y, z))
    }

    /// `l3` on arbitrary elements: only the degree-0 parts contribute.
    pub(crate) fn l3_graded(&self, x: &GradedElement, y: &GradedElement, z: &GradedElement) -> GradedElement {
        let (p, q, r) = (&x.x0, &y.x0, &z.x0);
        if p.is_zero() || q.is_zero() || r.is_zero() {
            return self.zero();
        }
        let value = match self.variant {
            Variant::Strict => self.homotopy_s(&self.l2_squared(p, q, r)),
            Variant::Extended => GradedElement::from_series(self.l3_closed_form(p, q, r)),
        };
        if self.l3_normalization == L3Normalization::Derivation {
            value
        } else {
            value.scale(&self.l3_normalization.factor())
        }
    }

    /// `Σ_{unsh(2,1)} ± l2(l2(.,.),.)` on degree-0 series.
    fn l2_squared(&self, p: &TruncatedSeries, q: &TruncatedSeries, r: &TruncatedSeries) -> GradedElement {
        let l = |a: &TruncatedSeries, b: &TruncatedSeries| self.l2_closed_form(a, b, false);
        let mut out = l(&l(p, q), r);
        let minus = l(&l(p, r), q);
        let plus = l(&l(q, r), p);
        let one = Rational::from_integer(1.into());
        out.add_scaled_series(&-one.clone(), &minus);
        out.add_scaled_series(&one, &plus);
        GradedElement::from_series(out)
    }

    fn l3_closed_form(&self, p: &TruncatedSeries, q: &TruncatedSeries, r: &TruncatedSeries) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.dim(), self.truncation, true);
        let minus_one = Rational::from_integer((-1).into());
        for (i, a) in p.terms() {
            for (j, b) in q.terms() {
                for (k, c) in r.terms() {
                    let power = i + j + k + 2;
                    if power <= self.truncation {
                        out.add_term(&minus_one, &self.alpha1_sq.eval_unchecked(&[a, b, c]), power);
                    }
                }
            }
        }
        out
    }

    /// `l3(e_i, e_j, e_k)` for every basis triple `i < j < k`.
    pub fn l3_table(&self) -> Vec<([usize; 3], GradedElement)> {
        let n = self.dim();
        let gen = |i| GradedElement::monomial(Vector::basis(n, i), 0, false, self.truncation);
        crate::algebra::increasing_tuples(n, 3)
            .into_iter()
            .map(|t| ([t[0], t[1], t[2]], self.l3_graded(&gen(t[0]), &gen(t[1]), &gen(t[2]))))
            .collect()
    }

    /// Same `α₀, α₁`, with the domain constraint on degree 1 lifted. No
    /// checks are run; see [`build_extended`](Self::build_extended).
    pub fn as_extended(&self) -> LInftyStructure {
        let mut ext = self.clone();
        ext.variant = Variant::Extended;
        ext
    }

    /// Same `α₀, α₁`, with the domain constraint on degree 1 lifted. Fails if
    /// the extended maps violate a relation or disagree with `self` on the
    /// strict domain.
    pub fn build_extended(&self) -> Result<LInftyStructure> {
        if self.variant != Variant::Strict {
            return Err(Error::Input("build_extended expects a strict structure".into()));
        }
        let ext = self.as_extended();
        let restriction = self.restriction_report(&ext);
        if !restriction.matches() {
            return Err(Error::Construction(format!(
                "extended maps disagree with the strict maps on {} instance(s)",
                restriction.mismatches.len()
            )));
        }
        let rel = ext.verify_relations()?;
        if !rel.all_hold() {
            return Err(Error::Construction(format!(
                "extended structure violates {} relation instance(s)",
                rel.violation_count()
            )));
        }
        Ok(ext)
    }
}

/// `Rational` sign helper.
fn signed(s: i32) -> Rational {
    Rational::from_integer(s.into())
}
