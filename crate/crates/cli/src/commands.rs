//! The `validate`, `cohomology`, `deform` and `linfty` commands.

use std::path::Path;

use deforma_core::algebra::{format_rational, validate_jacobi};
use deforma_core::cohomology::cohomology;
use deforma_core::deformation::DeformationState;
use deforma_core::linfty::{L3Normalization, LInftyStructure, RelationReport, Variant, VERIFY_MIN_TRUNCATION};
use deforma_core::{Cochain, Error, LieAlgebra, Rational, DEFAULT_TRUNCATION};
use serde_json::Value;

use crate::format::{cochain_value, parse_algebra, parse_cochain, render_vector, AlgebraFile};
use crate::report::{object, Outcome, Report, EXIT_INPUT, EXIT_MATH, EXIT_OK};

pub const TRUNCATION_ENV: &str = "DEFORMA_TRUNCATION";

/// Violations listed per relation family; the count is always complete.
const MAX_LISTED_VIOLATIONS: usize = 5;

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn read_input(report: &mut Report, role: &str, path: &Path) -> Option<String> {
    match std::fs::read(path) {
        Ok(bytes) => {
            report.input(role, &path_str(path), &bytes);
            match String::from_utf8(bytes) {
                Ok(s) => Some(s),
                Err(_) => {
                    report.error("input", format!("{}: not valid UTF-8", path_str(path)));
                    None
                }
            }
        }
        Err(e) => {
            report.error("input", format!("{}: {e}", path_str(path)));
            None
        }
    }
}

fn load_algebra_file(report: &mut Report, path: &Path) -> Option<AlgebraFile> {
    let text = read_input(report, "algebra", path)?;
    match parse_algebra(&text) {
        Ok(a) => Some(a),
        Err(e) => {
            report.error("parse", format!("{}: {e}", path_str(path)));
            None
        }
    }
}

/// Loads a file that must hold a Lie algebra. On failure the exit code is
/// already decided.
fn load_lie(report: &mut Report, path: &Path) -> Result<LieAlgebra, i32> {
    let file = load_algebra_file(report, path).ok_or(EXIT_INPUT)?;
    LieAlgebra::new(file.name, file.brackets).map_err(|e| {
        report.error("math", e.to_string());
        EXIT_MATH
    })
}

fn load_alpha1(report: &mut Report, path: &Path, dim: usize) -> Result<Cochain, i32> {
    let text = read_input(report, "alpha1", path).ok_or(EXIT_INPUT)?;
    let c = parse_cochain(&text, dim).map_err(|e| {
        report.error("parse", format!("{}: {e}", path_str(path)));
        EXIT_INPUT
    })?;
    if c.degree() != 2 {
        report.error("input", format!("alpha1 must have degree 2, found {}", c.degree()));
        return Err(EXIT_INPUT);
    }
    Ok(c)
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect())
}

fn one_based(t: &[usize]) -> Value {
    Value::Array(t.iter().map(|i| Value::from(i + 1)).collect())
}

pub fn validate(algebra: &Path) -> Outcome {
    let mut report = Report::new("validate", vec![("algebra", Value::from(path_str(algebra)))]);
    let Some(file) = load_algebra_file(&mut report, algebra) else {
        return report.finish(EXIT_INPUT);
    };
    let v = validate_jacobi(&file.brackets);
    let violations: Vec<Value> = v
        .violations
        .iter()
        .map(|x| object([("triple", one_based(&x.triple)), ("value", render_vector(&x.value))]))
        .collect();
    report.push(
        "validation",
        object([
            ("name", Value::from(file.name.clone())),
            ("dim", Value::from(file.dim)),
            ("triples_checked", Value::from(v.triples_checked)),
            ("valid", Value::from(v.is_valid())),
            ("violations", Value::Array(violations)),
        ]),
    );
    if v.is_valid() {
        report.finish(EXIT_OK)
    } else {
        report.note(format!("Jacobi identity fails on {} basis triple(s)", v.violations.len()));
        report.finish(EXIT_MATH)
    }
}

pub fn cohomology_cmd(algebra: &Path, degree: usize) -> Outcome {
    let mut report = Report::new(
        "cohomology",
        vec![("algebra", Value::from(path_str(algebra))), ("degree", Value::from(degree))],
    );
    if !(1..=3).contains(&degree) {
        report.error("input", format!("degree must be 1, 2 or 3, got {degree}"));
        return report.finish(EXIT_INPUT);
    }
    let g = match load_lie(&mut report, algebra) {
        Ok(g) => g,
        Err(code) => return report.finish(code),
    };
    let h = cohomology(&g, degree).expect("degree checked");
    report.push(
        "cohomology",
        object([
            ("degree", Value::from(degree)),
            ("dim_cochains", Value::from(g.dim() * binomial(g.dim(), degree))),
            ("dim_cocycles", Value::from(h.dim_cocycles)),
            ("dim_coboundaries", Value::from(h.dim_coboundaries)),
            ("dim_h", Value::from(h.dim_h())),
            ("representatives", Value::Array(h.representatives.iter().map(cochain_value).collect())),
        ]),
    );
    report.finish(EXIT_OK)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub struct DeformArgs<'a> {
    pub algebra: &'a Path,
    pub alpha1: &'a Path,
    pub max_order: usize,
    pub require_order: bool,
}

pub fn deform(args: &DeformArgs<'_>) -> Outcome {
    let mut report = Report::new(
        "deform",
        vec![
            ("algebra", Value::from(path_str(args.algebra))),
            ("alpha1", Value::from(path_str(args.alpha1))),
            ("max_order", Value::from(args.max_order)),
            ("require_order", Value::from(args.require_order)),
        ],
    );
    let g = match load_lie(&mut report, args.algebra) {
        Ok(g) => g,
        Err(code) => return report.finish(code),
    };
    let alpha1 = match load_alpha1(&mut report, args.alpha1, g.dim()) {
        Ok(c) => c,
        Err(code) => return report.finish(code),
    };
    let state = match DeformationState::new(g, alpha1) {
        Ok(s) => s,
        Err(Error::NotCocycle) => {
            report.error("math", "alpha1 is not a cocycle");
            return report.finish(EXIT_MATH);
        }
        Err(e) => {
            report.error("input", e.to_string());
            return report.finish(EXIT_INPUT);
        }
    };
    let state = match state.extend(args.max_order) {
        Ok(s) => s,
        Err(e) => {
            report.error("math", e.to_string());
            return report.finish(EXIT_MATH);
        }
    };
    for (n, alpha) in state.alphas().iter().enumerate().skip(1) {
        let status = if n == 1 { "given" } else { "solved" };
        report.push(
            "order",
            object([("order", Value::from(n)), ("status", Value::from(status)), ("alpha", cochain_value(alpha))]),
        );
    }
    let obstructed_at = state.first_obstruction().map(|o| o.order);
    if let Some(o) = state.first_obstruction() {
        report.push(
            "obstruction",
            object([
                ("order", Value::from(o.order)),
                ("rho", cochain_value(&o.rho)),
                ("is_coboundary", Value::from(o.is_coboundary)),
                ("class_coordinates", rationals(&o.class_coordinates)),
            ]),
        );
        report.note(format!("obstructed at order {}", o.order));
    }
    report.push(
        "summary",
        object([
            ("max_order", Value::from(args.max_order)),
            ("order_reached", Value::from(state.order_reached())),
            ("obstructed_at", obstructed_at.map_or(Value::Null, Value::from)),
        ]),
    );
    let code = if args.require_order && state.order_reached() < args.max_order { EXIT_MATH } else { EXIT_OK };
    report.finish(code)
}

/// `--truncation` wins over the environment, which wins over the default.
pub fn resolve_truncation(flag: Option<usize>, env: Option<&str>) -> Result<usize, String> {
    match (flag, env) {
        (Some(t), _) => Ok(t),
        (None, Some(s)) => s.trim().parse().map_err(|_| format!("{TRUNCATION_ENV}={s:?} is not a non-negative integer")),
        (None, None) => Ok(DEFAULT_TRUNCATION),
    }
}

pub struct LinftyArgs<'a> {
    pub algebra: &'a Path,
    pub alpha1: &'a Path,
    pub variant: Variant,
    pub truncation: Result<usize, String>,
    pub l3_normalization: L3Normalization,
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Strict => "strict",
        Variant::Extended => "extended",
    }
}

fn relation_lines(report: &mut Report, structure: &str, rel: &RelationReport) {
    for f in &rel.families {
        let listed: Vec<Value> = f
            .violations
            .iter()
            .take(MAX_LISTED_VIOLATIONS)
            .map(|v| {
                let terms: Vec<Value> = v
                    .terms
                    .iter()
                    .map(|t| object([("term", Value::from(t.label.clone())), ("sign", Value::from(t.sign)), ("value", Value::from(t.value.to_string()))]))
                    .collect();
                object([
                    ("inputs", Value::Array(v.inputs.iter().map(|g| Value::from(g.label())).collect())),
                    ("terms", Value::Array(terms)),
                    ("total", Value::from(v.total.to_string())),
                ])
            })
            .collect();
        report.push(
            "relation",
            object([
                ("structure", Value::from(structure)),
                ("name", Value::from(f.relation.name())),
                ("identity", Value::from(f.relation.description())),
                ("instances_checked", Value::from(f.instances_checked)),
                ("vacuous_instances", Value::from(f.vacuous_instances)),
                ("holds", Value::from(f.holds())),
                ("violation_count", Value::from(f.violations.len())),
                ("violations", Value::Array(listed)),
            ]),
        );
    }
}

pub fn linfty(args: &LinftyArgs<'_>) -> Outcome {
    let truncation_arg = match &args.truncation {
        Ok(t) => Value::from(*t),
        Err(_) => Value::Null,
    };
    let mut report = Report::new(
        "linfty",
        vec![
            ("algebra", Value::from(path_str(args.algebra))),
            ("alpha1", Value::from(path_str(args.alpha1))),
            ("variant", Value::from(variant_name(args.variant))),
            ("truncation", truncation_arg),
            (
                "l3_normalization",
                Value::from(match args.l3_normalization {
                    L3Normalization::Derivation => "derivation",
                    L3Normalization::Bracket => "bracket",
                }),
            ),
        ],
    );
    let truncation = match &args.truncation {
        Ok(t) if *t >= VERIFY_MIN_TRUNCATION => *t,
        Ok(t) => {
            report.error("input", format!("truncation {t} is below the minimum {VERIFY_MIN_TRUNCATION} needed for verification"));
            return report.finish(EXIT_INPUT);
        }
        Err(msg) => {
            report.error("input", msg.clone());
            return report.finish(EXIT_INPUT);
        }
    };
    let g = match load_lie(&mut report, args.algebra) {
        Ok(g) => g,
        Err(code) => return report.finish(code),
    };
    let alpha1 = match load_alpha1(&mut report, args.alpha1, g.dim()) {
        Ok(c) => c,
        Err(code) => return report.finish(code),
    };
    let strict = match LInftyStructure::new(g, alpha1, truncation) {
        Ok(s) => s.with_l3_normalization(args.l3_normalization),
        Err(Error::NotCocycle) => {
            report.error("math", "alpha1 is not a cocycle");
            return report.finish(EXIT_MATH);
        }
        Err(e) => {
            report.error("input", e.to_string());
            return report.finish(EXIT_INPUT);
        }
    };
    let mut ok = true;

    let homotopy = strict.verify_homotopy_identity().expect("strict structure");
    ok &= homotopy.holds();
    let violations: Vec<Value> = homotopy.violations.iter().map(|v| Value::from(v.input.label())).collect();
    report.push(
        "homotopy_identity",
        object([
            ("elements_checked", Value::from(homotopy.elements_checked)),
            ("holds", Value::from(homotopy.holds())),
            ("violations", Value::Array(violations)),
        ]),
    );

    let strict_rel = strict.verify_relations().expect("truncation checked");
    ok &= strict_rel.all_hold();
    relation_lines(&mut report, "strict", &strict_rel);

    // the checks of build_extended, run here so failures can be reported
    let active = if args.variant == Variant::Extended {
        let ext = strict.as_extended();
        let restriction = strict.restriction_report(&ext);
        ok &= restriction.matches();
        let status = if restriction.matches() { "match" } else { "mismatch" };
        report.note(format!("restriction={status}"));
        report.push(
            "restriction",
            object([
                ("status", Value::from(status)),
                ("instances_checked", Value::from(restriction.instances_checked)),
                ("mismatches", Value::Array(restriction.mismatches.iter().map(|m| Value::from(m.clone())).collect())),
            ]),
        );
        let ext_rel = ext.verify_relations().expect("truncation checked");
        ok &= ext_rel.all_hold();
        relation_lines(&mut report, "extended", &ext_rel);
        ext
    } else {
        strict
    };

    for (triple, value) in active.l3_table() {
        report.push("l3", object([("triple", one_based(&triple)), ("value", Value::from(value.to_string()))]));
    }
    let l3_zero = active.l3_table().iter().all(|(_, v)| v.is_zero());
    report.push(
        "summary",
        object([
            ("variant", Value::from(variant_name(active.variant()))),
            ("relations_hold", Value::from(ok)),
            ("l3_vanishes", Value::from(l3_zero)),
            ("alpha1_square_vanishes", Value::from(active.alpha1_square().is_zero())),
        ]),
    );
    report.finish(if ok { EXIT_OK } else { EXIT_MATH })
}
