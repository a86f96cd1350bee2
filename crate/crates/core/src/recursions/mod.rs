//! Catalogued contiguous relations and recursion formulas, each with a
//! right-hand-side evaluator and a numerical verifier.
//!
//! A right-hand side is assembled from series values of shifted parameter
//! sets and matrix coefficients, with every coefficient kept on the side
//! where the formula places it. Nothing here assumes commutation beyond what
//! [`check_hypotheses`] has confirmed.

mod campaign;
mod catalog;
pub mod recipe;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::calculus::{multinomial, pochhammer, PochhammerChain};
use crate::error::{Error, Result};
use crate::linalg::{commutator_norm, frobenius_norm, inverse, is_invertible, Matrix, Scalar};
use crate::params::ParamName;
use crate::series::{evaluate, EvalPoint, EvalReport, FunctionKind, ParameterSet, SeriesConfig};

pub use campaign::{run_campaign, CAMPAIGN_TOL};
pub use catalog::catalog;
use recipe::{Affine, Branch, Factor, Recipe, Var};

/// Relative commutator size below which two parameters count as commuting.
pub const COMMUTATOR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Increment,
    Decrement,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Increment => "increment",
            Direction::Decrement => "decrement",
        }
    }

    fn sign(self) -> f64 {
        match self {
            Direction::Increment => 1.0,
            Direction::Decrement => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    TelescopingSum,
    BinomialSum,
    MultinomialSum,
    ContiguousSingleStep,
    CShift,
}

impl Form {
    pub fn as_str(self) -> &'static str {
        match self {
            Form::TelescopingSum => "telescoping-sum",
            Form::BinomialSum => "binomial-sum",
            Form::MultinomialSum => "multinomial-sum",
            Form::ContiguousSingleStep => "contiguous-single-step",
            Form::CShift => "c-shift",
        }
    }
}

/// A machine-checkable precondition of an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// `‖XY − YX‖_F ≤ COMMUTATOR_TOL·‖X‖_F‖Y‖_F`.
    Commute(ParamName, ParamName),
    /// `X + kI` (increment) or `X − kI` (decrement) invertible for `0 ≤ k ≤ s`.
    ShiftsInvertible { name: ParamName, direction: Direction },
}

impl Hypothesis {
    fn same_as(&self, other: &Hypothesis) -> bool {
        match (*self, *other) {
            (Hypothesis::Commute(a, b), Hypothesis::Commute(c, d)) => (a, b) == (c, d) || (a, b) == (d, c),
            _ => self == other,
        }
    }

    /// Whether the hypothesis holds for `p` with shift count `s`.
    pub fn holds(&self, p: &ParameterSet, s: usize) -> bool {
        match *self {
            Hypothesis::Commute(a, b) => {
                let (Some(x), Some(y)) = (p.try_get(a), p.try_get(b)) else {
                    return false;
                };
                commutator_norm(x, y)
                    .map(|c| c <= COMMUTATOR_TOL * frobenius_norm(x) * frobenius_norm(y))
                    .unwrap_or(false)
            }
            Hypothesis::ShiftsInvertible { name, direction } => {
                let Some(x) = p.try_get(name) else {
                    return false;
                };
                (0..=s).all(|k| is_invertible(&x.shifted(direction.sign() * k as f64)))
            }
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Hypothesis::Commute(a, b) => write!(f, "{a}{b}={b}{a}"),
            Hypothesis::ShiftsInvertible { name, direction } => {
                let op = if direction == Direction::Increment { '+' } else { '−' };
                write!(f, "{name}{op}kI invertible (k≤s)")
            }
        }
    }
}

/// One catalogued identity: metadata plus the recipe for its right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    pub kind: FunctionKind,
    pub shifted_parameter: ParamName,
    pub direction: Direction,
    pub form: Form,
    pub hypotheses: Vec<Hypothesis>,
    /// Short label of the group of results the formula belongs to.
    pub anchor: &'static str,
    pub recipe: Recipe,
}

impl IdentityDescriptor {
    /// Shift count actually applied; single-step relations cap it at one.
    pub fn effective_shift(&self, s: usize) -> usize {
        if self.form == Form::ContiguousSingleStep {
            s.min(1)
        } else {
            s
        }
    }

    /// The parameters of the left-hand side, `p` with the shifted parameter
    /// moved by `±s`.
    pub fn lhs_parameters(&self, p: &ParameterSet, s: usize) -> ParameterSet {
        let s = self.effective_shift(s) as f64;
        p.shifted(self.shifted_parameter, self.direction.sign() * s)
    }

    /// Hypotheses that fail for `p` at shift count `s`.
    pub fn violated_hypotheses(&self, p: &ParameterSet, s: usize) -> Vec<Hypothesis> {
        let s = self.effective_shift(s);
        self.hypotheses.iter().filter(|h| !h.holds(p, s)).copied().collect()
    }
}

/// Looks up an identity by id. ASCII `-` and `'` are accepted for `−` and `′`.
pub fn lookup(id: &str) -> Result<&'static IdentityDescriptor> {
    let wanted = canonical_key(id);
    catalog()
        .iter()
        .find(|d| canonical_key(d.id) == wanted)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

fn canonical_key(id: &str) -> String {
    id.trim().replace('−', "-").replace('′', "'")
}

/// Position of an identity in [`catalog`].
pub fn catalog_index(id: &str) -> Option<usize> {
    let wanted = canonical_key(id);
    catalog().iter().position(|d| canonical_key(d.id) == wanted)
}

/// True iff `p` belongs to `d.kind` and every hypothesis of `d` holds at `s`.
pub fn check_hypotheses(d: &IdentityDescriptor, p: &ParameterSet, s: usize) -> bool {
    p.kind() == d.kind && d.violated_hypotheses(p, s).is_empty()
}

/// Convergence diagnostics of one series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesDiagnostics {
    pub degrees_used: usize,
    pub last_increment_norm: f64,
    pub converged: bool,
}

impl From<&EvalReport> for SeriesDiagnostics {
    fn from(r: &EvalReport) -> Self {
        SeriesDiagnostics {
            degrees_used: r.degrees_used,
            last_increment_norm: r.last_increment_norm,
            converged: r.converged,
        }
    }
}

/// Right-hand side of `d` at `(p, point)` with `s` shifts.
pub fn eval_rhs(
    d: &IdentityDescriptor,
    p: &ParameterSet,
    s: usize,
    point: &EvalPoint,
    cfg: &SeriesConfig,
) -> Result<Matrix> {
    eval_rhs_with_diagnostics(d, p, s, point, cfg).map(|(m, _)| m)
}

/// [`eval_rhs`] together with the diagnostics of every inner series.
pub fn eval_rhs_with_diagnostics(
    d: &IdentityDescriptor,
    p: &ParameterSet,
    s: usize,
    point: &EvalPoint,
    cfg: &SeriesConfig,
) -> Result<(Matrix, Vec<SeriesDiagnostics>)> {
    if p.kind() != d.kind {
        return Err(Error::Invalid(format!(
            "{} takes {} parameters, got {}",
            d.id,
            d.kind,
            p.kind()
        )));
    }
    let violated = d.violated_hypotheses(p, s);
    if !violated.is_empty() {
        let list: Vec<String> = violated.iter().map(ToString::to_string).collect();
        return Err(Error::HypothesisViolated(format!("{}: {}", d.id, list.join(", "))));
    }
    let mut diagnostics = Vec::new();
    let value = rhs_unchecked(d, p, d.effective_shift(s), point, cfg, &mut diagnostics)?;
    Ok((value, diagnostics))
}

/// The right-hand side without checking hypotheses, for measuring how an
/// identity fails when they do not hold.
pub fn eval_rhs_unchecked(
    d: &IdentityDescriptor,
    p: &ParameterSet,
    s: usize,
    point: &EvalPoint,
    cfg: &SeriesConfig,
) -> Result<Matrix> {
    if p.kind() != d.kind {
        return Err(Error::Invalid(format!(
            "{} takes {} parameters, got {}",
            d.id,
            d.kind,
            p.kind()
        )));
    }
    rhs_unchecked(d, p, d.effective_shift(s), point, cfg, &mut Vec::new())
}

fn rhs_unchecked(
    d: &IdentityDescriptor,
    p: &ParameterSet,
    s: usize,
    point: &EvalPoint,
    cfg: &SeriesConfig,
    diagnostics: &mut Vec<SeriesDiagnostics>,
) -> Result<Matrix> {
    let mut series = |q: &ParameterSet| -> Result<Matrix> {
        let report = evaluate(q, point, cfg)?;
        diagnostics.push((&report).into());
        Ok(report.value)
    };
    match &d.recipe {
        Recipe::Telescoping { range, sign, branches } => {
            let mut value = series(p)?;
            for b in branches {
                let var = variable(b.var, point)?;
                let mut acc = Matrix::zeros(p.order());
                for k in range.indices(s) {
                    acc += &branch_term(p, b, k, &mut series)?;
                }
                value += &acc.scaled(var * f64::from(*sign));
            }
            Ok(value)
        }
        Recipe::Multinomial {
            x_active,
            y_active,
            sign,
            left,
            shifts,
            right,
        } => {
            let s_i = s as i64;
            let sign = f64::from(*sign);
            let x = point.x * sign;
            let y = if *y_active {
                variable(Var::Y, point)? * sign
            } else {
                Scalar::new(0.0, 0.0)
            };
            let mut value = Matrix::zeros(p.order());
            for k1 in 0..=(if *x_active { s_i } else { 0 }) {
                for k2 in 0..=(if *y_active { s_i - k1 } else { 0 }) {
                    let weight = multinomial(s_i, k1, k2) as f64;
                    let coeff = x.powi(k1 as i32) * y.powi(k2 as i32) * weight;
                    let q = p.with_shifts(&eval_shifts(shifts, k1, k2));
                    let term = &(&factors(p, left, k1, k2)? * &series(&q)?) * &factors(p, right, k1, k2)?;
                    value += &term.scaled(coeff);
                }
            }
            Ok(value)
        }
        Recipe::Swapped { base, pairs } => {
            let base = lookup(base)?;
            rhs_unchecked(base, &p.swapped(pairs), s, point, cfg, diagnostics)
        }
    }
}

fn branch_term(
    p: &ParameterSet,
    b: &Branch,
    k: i64,
    series: &mut impl FnMut(&ParameterSet) -> Result<Matrix>,
) -> Result<Matrix> {
    let q = p.with_shifts(&eval_shifts(&b.shifts, k, 0));
    Ok(&(&factors(p, &b.left, k, 0)? * &series(&q)?) * &factors(p, &b.right, k, 0)?)
}

fn variable(var: Var, point: &EvalPoint) -> Result<Scalar> {
    match var {
        Var::X => Ok(point.x),
        Var::Y => point
            .y
            .ok_or_else(|| Error::Invalid("identity needs a bivariate point".into())),
    }
}

fn eval_shifts(shifts: &[(ParamName, Affine)], k1: i64, k2: i64) -> Vec<(ParamName, f64)> {
    shifts.iter().map(|(n, a)| (*n, a.eval(k1, k2) as f64)).collect()
}

/// Ordered product of `fs` evaluated on the unshifted parameters.
fn factors(p: &ParameterSet, fs: &[Factor], k1: i64, k2: i64) -> Result<Matrix> {
    let mut acc = Matrix::identity(p.order());
    for f in fs {
        acc = &acc * &factor(p, f, k1, k2)?;
    }
    Ok(acc)
}

fn factor(p: &ParameterSet, f: &Factor, k1: i64, k2: i64) -> Result<Matrix> {
    let count = |a: &Affine| -> Result<usize> {
        usize::try_from(a.eval(k1, k2)).map_err(|_| Error::Invalid("negative shifted-factorial index".into()))
    };
    match f {
        Factor::Param(n) => Ok(p.get(*n).clone()),
        Factor::Inverse(n) => inverse(p.get(*n)).map_err(|_| Error::SingularShift { n: 0 }),
        Factor::ShiftedInverse(n, a) => {
            let k = a.eval(k1, k2);
            inverse(&p.get(*n).shifted(k as f64)).map_err(|_| Error::SingularShift { n: k })
        }
        Factor::Poch(n, a) => Ok(pochhammer(p.get(*n), count(a)?)),
        Factor::PochInv(n, a) => {
            let mut chain = PochhammerChain::with_inverses(p.get(*n).clone());
            chain.inverse(count(a)?).cloned()
        }
    }
}

/// Serializable copy of an [`EvalPoint`]: `[re, im]` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub x: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<[f64; 2]>,
}

impl From<&EvalPoint> for PointRecord {
    fn from(p: &EvalPoint) -> Self {
        PointRecord {
            x: [p.x.re, p.x.im],
            y: p.y.map(|y| [y.re, y.im]),
        }
    }
}

impl From<&PointRecord> for EvalPoint {
    fn from(p: &PointRecord) -> Self {
        EvalPoint {
            x: Scalar::new(p.x[0], p.x[1]),
            y: p.y.map(|y| Scalar::new(y[0], y[1])),
        }
    }
}

/// Outcome of comparing both sides of one identity on one input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub order: usize,
    pub s: usize,
    /// Seed of the campaign trial that produced the input, if any.
    pub seed: Option<u64>,
    pub point: PointRecord,
    /// `‖LHS − RHS‖_F / (1 + ‖LHS‖_F)`; absent when an evaluation failed.
    pub residual: Option<f64>,
    pub passed: bool,
    pub failure: Option<String>,
    #[serde(skip)]
    pub error: Option<Error>,
    pub lhs: Option<SeriesDiagnostics>,
    pub rhs: Vec<SeriesDiagnostics>,
}

/// Evaluates both sides of `d` and compares them.
///
/// Evaluation errors do not propagate; they produce a failed report that
/// carries the cause.
pub fn verify_identity(
    d: &IdentityDescriptor,
    p: &ParameterSet,
    s: usize,
    point: &EvalPoint,
    cfg: &SeriesConfig,
    campaign_tol: f64,
) -> VerificationReport {
    let mut report = VerificationReport {
        id: d.id.to_string(),
        order: p.order(),
        s,
        seed: None,
        point: point.into(),
        residual: None,
        passed: false,
        failure: None,
        error: None,
        lhs: None,
        rhs: Vec::new(),
    };
    let outcome = eval_rhs_with_diagnostics(d, p, s, point, cfg).and_then(|(rhs, diags)| {
        report.rhs = diags;
        let lhs = evaluate(&d.lhs_parameters(p, s), point, cfg)?;
        report.lhs = Some((&lhs).into());
        Ok((lhs.value, rhs))
    });
    match outcome {
        Ok((lhs, rhs)) => {
            let residual = frobenius_norm(&(&lhs - &rhs)) / (1.0 + frobenius_norm(&lhs));
            report.residual = Some(residual);
            report.passed = residual <= campaign_tol;
            if !report.passed {
                report.failure = Some(format!("residual {residual:e} exceeds {campaign_tol:e}"));
            }
        }
        Err(e) => {
            report.failure = Some(e.to_string());
            report.error = Some(e);
        }
    }
    report
}
