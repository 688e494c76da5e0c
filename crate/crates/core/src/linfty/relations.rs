//! Mechanical verification of the L-infinity relations, the homotopy
//! identity, and the strict/extended restriction property.
//!
//! Every map is `k[[t]]`-multilinear, so relations are checked on generators
//! `e_i t^s` (degree 0) and `e_i* t^{m+s}` (degree 1, `m` the lowest allowed
//! power of the variant). Base generators (`s = 0`) are checked on every
//! ordering; shifted generators (`s ≤ 2`) on every multiset, which exercises
//! the multilinearity reduction itself.

use std::collections::HashMap;
use std::rc::Rc;

use super::signs::{antisymmetric_koszul_sign, composition_sign, unshuffles};
use super::{signed, GradedElement, LInftyStructure, Variant, VERIFY_MIN_TRUNCATION};
use crate::algebra::Vector;
use crate::error::{Error, Result};

const SAMPLE_SHIFTS: usize = 2;

/// A homogeneous generator `e_{basis} t^power`, starred when `degree == 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub degree: i32,
    pub power: usize,
    pub basis: usize,
}

impl Generator {
    pub fn element(&self, dim: usize, truncation: usize) -> GradedElement {
        GradedElement::monomial(Vector::basis(dim, self.basis), self.power, self.degree == 1, truncation)
    }

    pub fn label(&self) -> String {
        let star = if self.degree == 1 { "^*" } else { "" };
        match self.power {
            0 => format!("e{}{star}", self.basis + 1),
            1 => format!("e{}{star} t", self.basis + 1),
            k => format!("e{}{star} t^{k}", self.basis + 1),
        }
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `l1 l2(x,y) = l2(l1 x, y) + (-1)^{|x|} l2(x, l1 y)`.
    R1,
    /// `l2² + l1 l3 + l3 l1 = 0`.
    R2,
    /// `l3² = 0`.
    R3,
    /// `l2 l3 + l3 l2 = 0`.
    R4,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::R1, Relation::R2, Relation::R3, Relation::R4];

    pub fn arity(self) -> usize {
        match self {
            Relation::R1 => 2,
            Relation::R2 => 3,
            Relation::R3 => 5,
            Relation::R4 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::R1 => "R1",
            Relation::R2 => "R2",
            Relation::R3 => "R3",
            Relation::R4 => "R4",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Relation::R1 => "l1 l2 = l2 (l1 x 1 + 1 x l1)",
            Relation::R2 => "l2^2 + l1 l3 + l3 l1 = 0",
            Relation::R3 => "l3^2 = 0",
            Relation::R4 => "l2 l3 + l3 l2 = 0",
        }
    }
}

/// One signed summand of a relation instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub label: String,
    pub sign: i32,
    /// Already multiplied by `sign`.
    pub value: GradedElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationViolation {
    pub relation: Relation,
    pub inputs: Vec<Generator>,
    pub terms: Vec<Term>,
    pub total: GradedElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub relation: Relation,
    pub instances_checked: usize,
    /// Instances whose terms are all zero.
    pub vacuous_instances: usize,
    pub violations: Vec<RelationViolation>,
}

impl FamilyReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub families: Vec<FamilyReport>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.families.iter().all(FamilyReport::holds)
    }

    pub fn violation_count(&self) -> usize {
        self.families.iter().map(|f| f.violations.len()).sum()
    }

    pub fn family(&self, r: Relation) -> &FamilyReport {
        self.families.iter().find(|f| f.relation == r).expect("every family is checked")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyViolation {
    pub input: Generator,
    /// `λη(x) - x`.
    pub lhs: GradedElement,
    /// `l1 s(x) + s l1(x)`.
    pub rhs: GradedElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyReport {
    pub elements_checked: usize,
    pub violations: Vec<HomotopyViolation>,
}

impl HomotopyReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RestrictionReport {
    pub instances_checked: usize,
    pub mismatches: Vec<String>,
}

impl RestrictionReport {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Generator elements, inner values `l_i(generators)` and sign plans shared
/// across relation instances.
struct Memo {
    elements: HashMap<Generator, GradedElement>,
    inner: HashMap<Vec<Generator>, GradedElement>,
    plans: HashMap<Vec<i32>, Rc<Vec<PlannedTerm>>>,
}

/// One term `l_j(l_i(x_{perm[..i]}), x_{perm[i..]})` of a Jacobi expression.
struct PlannedTerm {
    i: usize,
    j: usize,
    perm: Vec<usize>,
    sign: i32,
    /// False when an intermediate or final degree leaves `{0, 1}`, where `X_*` is zero.
    live: bool,
}

fn jacobi_plan(degrees: &[i32]) -> Vec<PlannedTerm> {
    let n = degrees.len();
    let mut out = Vec::new();
    for i in 1..=n.min(3) {
        let j = n + 1 - i;
        if j > 3 {
            continue;
        }
        for perm in unshuffles(i, n - i) {
            let inner_degree: i32 = perm[..i].iter().map(|&p| degrees[p]).sum::<i32>() + i as i32 - 2;
            let outer_degree: i32 = inner_degree + perm[i..].iter().map(|&p| degrees[p]).sum::<i32>() + j as i32 - 2;
            let sign = antisymmetric_koszul_sign(&perm, degrees) * composition_sign(i, j);
            let live = (0..=1).contains(&inner_degree) && (0..=1).contains(&outer_degree);
            out.push(PlannedTerm { i, j, perm, sign, live });
        }
    }
    out
}

fn tuples(gens: &[Generator], k: usize, ordered: bool) -> Vec<Vec<Generator>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    fn rec(gens: &[Generator], k: usize, ordered: bool, pos: usize, idx: &mut Vec<usize>, out: &mut Vec<Vec<Generator>>) {
        if pos == k {
            out.push(idx.iter().map(|&i| gens[i]).collect());
            return;
        }
        let start = if ordered || pos == 0 { 0 } else { idx[pos - 1] };
        for i in start..gens.len() {
            idx[pos] = i;
            rec(gens, k, ordered, pos + 1, idx, out);
        }
    }
    rec(gens, k, ordered, 0, &mut idx, &mut out);
    out
}

impl LInftyStructure {
    /// Degree-0 and degree-1 generators with shifts `0..=max_shift`.
    pub fn generators(&self, max_shift: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        for degree in [0, 1] {
            let base = if degree == 0 { 0 } else { self.variant.min_starred_power() };
            for s in 0..=max_shift {
                for basis in 0..self.dim() {
                    out.push(Generator { degree, power: base + s, basis });
                }
            }
        }
        out
    }

    fn apply(&self, k: usize, args: &[&GradedElement]) -> GradedElement {
        match k {
            1 => self.l1(args[0]),
            2 => self.l2(args[0], args[1]),
            3 => self.l3_graded(args[0], args[1], args[2]),
            _ => self.zero(),
        }
    }

    /// Signed terms of the arity-`n` generalized Jacobi expression.
    fn jacobi_terms(&self, elems: &[&GradedElement], degrees: &[i32]) -> Vec<Term> {
        let names: Vec<String> = (1..=elems.len()).map(|i| format!("x{i}")).collect();
        jacobi_plan(degrees)
            .into_iter()
            .map(|t| {
                let inner: Vec<&str> = t.perm[..t.i].iter().map(|&p| names[p].as_str()).collect();
                let mut outer = vec![format!("l{}({})", t.i, inner.join(","))];
                outer.extend(t.perm[t.i..].iter().map(|&p| names[p].clone()));
                let label = format!("l{}({})", t.j, outer.join(","));
                let value = if t.live { self.plan_term(&t, elems).scale(&signed(t.sign)) } else { self.zero() };
                Term { label, sign: t.sign, value }
            })
            .collect()
    }

    fn plan_term(&self, t: &PlannedTerm, elems: &[&GradedElement]) -> GradedElement {
        let inner_args: Vec<&GradedElement> = t.perm[..t.i].iter().map(|&p| elems[p]).collect();
        let inner = self.apply(t.i, &inner_args);
        let mut outer_args: Vec<&GradedElement> = vec![&inner];
        outer_args.extend(t.perm[t.i..].iter().map(|&p| elems[p]));
        self.apply(t.j, &outer_args)
    }

    /// Sum of the Jacobi terms without labels; `None` if every term vanishes.
    fn jacobi_total(&self, inputs: &[Generator], memo: &mut Memo) -> Option<GradedElement> {
        let degrees: Vec<i32> = inputs.iter().map(|g| g.degree).collect();
        let plan = memo.plans.entry(degrees.clone()).or_insert_with(|| Rc::new(jacobi_plan(&degrees))).clone();
        let mut total: Option<GradedElement> = None;
        for t in plan.iter().filter(|t| t.live) {
            let key: Vec<Generator> = t.perm[..t.i].iter().map(|&p| inputs[p]).collect();
            if !memo.inner.contains_key(&key) {
                let args: Vec<&GradedElement> = key.iter().map(|g| &memo.elements[g]).collect();
                let v = self.apply(t.i, &args);
                memo.inner.insert(key.clone(), v);
            }
            let inner = &memo.inner[&key];
            if inner.is_zero() {
                continue;
            }
            let mut outer_args: Vec<&GradedElement> = vec![inner];
            outer_args.extend(t.perm[t.i..].iter().map(|&p| &memo.elements[&inputs[p]]));
            let value = self.apply(t.j, &outer_args);
            if value.is_zero() {
                continue;
            }
            total.get_or_insert_with(|| self.zero()).add_scaled(&signed(t.sign), &value);
        }
        total
    }

    fn r1_terms(&self, x: &GradedElement, y: &GradedElement, x_degree: i32) -> Vec<Term> {
        let koszul = if x_degree % 2 == 0 { 1 } else { -1 };
        vec![
            Term { label: "l1(l2(x1,x2))".into(), sign: 1, value: self.l1(&self.l2(x, y)) },
            Term { label: "l2(l1(x1),x2)".into(), sign: -1, value: self.l2(&self.l1(x), y).neg() },
            Term {
                label: "l2(x1,l1(x2))".into(),
                sign: -koszul,
                value: self.l2(x, &self.l1(y)).scale(&signed(-koszul)),
            },
        ]
    }

    /// Evaluates one relation instance, returning its signed terms and sum.
    pub fn relation_instance(&self, relation: Relation, inputs: &[Generator]) -> Result<(Vec<Term>, GradedElement)> {
        if inputs.len() != relation.arity() {
            return Err(Error::ArityMismatch { expected: relation.arity(), found: inputs.len() });
        }
        let owned: Vec<GradedElement> = inputs.iter().map(|g| g.element(self.dim(), self.truncation)).collect();
        let elems: Vec<&GradedElement> = owned.iter().collect();
        let degrees: Vec<i32> = inputs.iter().map(|g| g.degree).collect();
        let terms = match relation {
            Relation::R1 => self.r1_terms(elems[0], elems[1], degrees[0]),
            _ => self.jacobi_terms(&elems, &degrees),
        };
        let mut total = self.zero();
        for t in &terms {
            total.add_scaled(&signed(1), &t.value);
        }
        Ok((terms, total))
    }

    fn schedule(&self, relation: Relation) -> Vec<Vec<Generator>> {
        let k = relation.arity();
        let base = self.generators(0);
        if relation == Relation::R3 {
            return tuples(&base, k, false);
        }
        let min1 = self.variant.min_starred_power();
        let shifted = |g: &Generator| g.power > if g.degree == 0 { 0 } else { min1 };
        if relation == Relation::R1 {
            return tuples(&self.generators(SAMPLE_SHIFTS), k, true);
        }
        let mut out = tuples(&base, k, true);
        out.extend(tuples(&self.generators(SAMPLE_SHIFTS), k, false).into_iter().filter(|t| t.iter().any(shifted)));
        out
    }

    /// Checks R1-R4 on the full generator schedule. Requires truncation ≥ 6.
    pub fn verify_relations(&self) -> Result<RelationReport> {
        if self.truncation < VERIFY_MIN_TRUNCATION {
            return Err(Error::TruncationTooSmall { found: self.truncation, min: VERIFY_MIN_TRUNCATION });
        }
        let mut memo = Memo {
            elements: self.generators(SAMPLE_SHIFTS).into_iter().map(|g| (g, g.element(self.dim(), self.truncation))).collect(),
            inner: HashMap::new(),
            plans: HashMap::new(),
        };
        let mut families = Vec::new();
        for relation in Relation::ALL {
            let mut report = FamilyReport { relation, instances_checked: 0, vacuous_instances: 0, violations: Vec::new() };
            for inputs in self.schedule(relation) {
                report.instances_checked += 1;
                let (vacuous, holds) = if relation == Relation::R1 {
                    let (x, y) = (&memo.elements[&inputs[0]], &memo.elements[&inputs[1]]);
                    let terms = self.r1_terms(x, y, inputs[0].degree);
                    let mut total = self.zero();
                    for t in &terms {
                        total.add_scaled(&signed(1), &t.value);
                    }
                    (terms.iter().all(|t| t.value.is_zero()), total.is_zero())
                } else {
                    match self.jacobi_total(&inputs, &mut memo) {
                        None => (true, true),
                        Some(total) => (false, total.is_zero()),
                    }
                };
                if vacuous {
                    report.vacuous_instances += 1;
                }
                if !holds {
                    // rebuild the labeled breakdown for the report
                    let (terms, total) = self.relation_instance(relation, &inputs)?;
                    report.violations.push(RelationViolation { relation, inputs, terms, total });
                }
            }
            families.push(report);
        }
        Ok(RelationReport { families })
    }

    /// Checks `λη - 1 = l1 s + s l1` on `{e_i t^k : k ≤ T}` and
    /// `{e_i* t^k : 2 ≤ k ≤ T}`, which span `X_*`.
    pub fn verify_homotopy_identity(&self) -> Result<HomotopyReport> {
        if self.variant != Variant::Strict {
            return Err(Error::Input("the homotopy identity is stated for the strict structure".into()));
        }
        let mut spanning = Vec::new();
        for degree in [0, 1] {
            let lowest = if degree == 0 { 0 } else { self.variant.min_starred_power() };
            for power in lowest..=self.truncation {
                for basis in 0..self.dim() {
                    spanning.push(Generator { degree, power, basis });
                }
            }
        }
        let mut report = HomotopyReport { elements_checked: 0, violations: Vec::new() };
        for g in spanning {
            let x = g.element(self.dim(), self.truncation);
            let lhs = self.lambda_eta(&x).sub(&x)?;
            let rhs = self.l1(&self.homotopy_s(&x)).add(&self.homotopy_s(&self.l1(&x)))?;
            report.elements_checked += 1;
            if lhs != rhs {
                report.violations.push(HomotopyViolation { input: g, lhs, rhs });
            }
        }
        Ok(report)
    }

    /// Compares `l1`, `l2`, `l3` of `self` and `other` on generators of the
    /// strict domain, shifts up to 2.
    pub fn restriction_report(&self, other: &LInftyStructure) -> RestrictionReport {
        let strict_gens: Vec<Generator> = {
            let mut g = Vec::new();
            for degree in [0, 1] {
                let base = if degree == 0 { 0 } else { Variant::Strict.min_starred_power() };
                for s in 0..=SAMPLE_SHIFTS {
                    for basis in 0..self.dim() {
                        g.push(Generator { degree, power: base + s, basis });
                    }
                }
            }
            g
        };
        let el = |g: &Generator| g.element(self.dim(), self.truncation);
        let mut report = RestrictionReport { instances_checked: 0, mismatches: Vec::new() };
        let mut check = |label: String, a: GradedElement, b: GradedElement| {
            report.instances_checked += 1;
            if a != b {
                report.mismatches.push(label);
            }
        };
        for g in &strict_gens {
            let x = el(g);
            check(format!("l1({g})"), self.l1(&x), other.l1(&x));
        }
        for pair in tuples(&strict_gens, 2, true) {
            let (x, y) = (el(&pair[0]), el(&pair[1]));
            check(format!("l2({},{})", pair[0], pair[1]), self.l2(&x, &y), other.l2(&x, &y));
        }
        let degree0: Vec<Generator> = strict_gens.iter().copied().filter(|g| g.degree == 0).collect();
        for triple in tuples(&degree0, 3, true) {
            let (x, y, z) = (el(&triple[0]), el(&triple[1]), el(&triple[2]));
            check(
                format!("l3({},{},{})", triple[0], triple[1], triple[2]),
                self.l3_graded(&x, &y, &z),
                other.l3_graded(&x, &y, &z),
            );
        }
        report
    }
}
