//! Truncated-series evaluation of the Gauss hypergeometric function and the
//! four Appell functions with square-matrix parameters.
//!
//! Each term is an ordered product of shifted-factorial matrices exactly in
//! the order of the defining series; nothing is ever reordered, so results
//! for non-commuting parameters are the literal series values. Double series
//! are summed by total degree `m + n`, one anti-diagonal at a time.

mod engine;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::params::ParamName;

pub use engine::{appell_f1, appell_f2, appell_f3, appell_f4, evaluate, gauss_2f1};

/// Which hypergeometric function a parameter set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionKind {
    #[serde(rename = "gauss-2f1")]
    Gauss2F1,
    AppellF1,
    AppellF2,
    AppellF3,
    AppellF4,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 5] = [
        FunctionKind::Gauss2F1,
        FunctionKind::AppellF1,
        FunctionKind::AppellF2,
        FunctionKind::AppellF3,
        FunctionKind::AppellF4,
    ];

    /// Parameter names in the order they appear in the function's signature.
    pub fn required_names(self) -> &'static [ParamName] {
        use ParamName::*;
        match self {
            FunctionKind::Gauss2F1 => &[A, B, C],
            FunctionKind::AppellF1 => &[A, B, BPrime, C],
            FunctionKind::AppellF2 => &[A, B, BPrime, C, CPrime],
            FunctionKind::AppellF3 => &[A, APrime, B, BPrime, C],
            FunctionKind::AppellF4 => &[A, B, C, CPrime],
        }
    }

    pub fn is_bivariate(self) -> bool {
        self != FunctionKind::Gauss2F1
    }

    /// Short mathematical name, e.g. `2F1` or `F3`.
    pub fn symbol(self) -> &'static str {
        match self {
            FunctionKind::Gauss2F1 => "2F1",
            FunctionKind::AppellF1 => "F1",
            FunctionKind::AppellF2 => "F2",
            FunctionKind::AppellF3 => "F3",
            FunctionKind::AppellF4 => "F4",
        }
    }

    /// Tag used in documents and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            FunctionKind::Gauss2F1 => "gauss-2f1",
            FunctionKind::AppellF1 => "appell-f1",
            FunctionKind::AppellF2 => "appell-f2",
            FunctionKind::AppellF3 => "appell-f3",
            FunctionKind::AppellF4 => "appell-f4",
        }
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for FunctionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let squash = |t: &str| t.trim().to_ascii_lowercase().replace('-', "");
        let wanted = squash(s);
        FunctionKind::ALL
            .into_iter()
            .find(|k| squash(k.tag()) == wanted || squash(k.symbol()) == wanted)
            .ok_or_else(|| Error::Invalid(format!("unknown function kind `{s}`")))
    }
}

/// The matrix parameters of one function, all of a common order.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterSet {
    kind: FunctionKind,
    order: usize,
    matrices: BTreeMap<ParamName, Matrix>,
}

impl ParameterSet {
    pub fn new(kind: FunctionKind, matrices: BTreeMap<ParamName, Matrix>) -> Result<Self> {
        let required = kind.required_names();
        for name in required {
            if !matrices.contains_key(name) {
                return Err(Error::Invalid(format!("{kind} needs parameter {name}")));
            }
        }
        if let Some(extra) = matrices.keys().find(|n| !required.contains(n)) {
            return Err(Error::Invalid(format!("{kind} takes no parameter {extra}")));
        }
        let order = matrices[&required[0]].order();
        if let Some((name, m)) = matrices.iter().find(|(_, m)| m.order() != order) {
            return Err(Error::Invalid(format!(
                "parameter {name} has order {}, expected {order}",
                m.order()
            )));
        }
        if let Some((name, _)) = matrices.iter().find(|(_, m)| !m.is_finite()) {
            return Err(Error::Invalid(format!("parameter {name} has non-finite entries")));
        }
        Ok(ParameterSet { kind, order, matrices })
    }

    /// Convenience constructor taking matrices in signature order.
    pub fn from_list(kind: FunctionKind, matrices: Vec<Matrix>) -> Result<Self> {
        let names = kind.required_names();
        if matrices.len() != names.len() {
            return Err(Error::Invalid(format!(
                "{kind} takes {} parameters, got {}",
                names.len(),
                matrices.len()
            )));
        }
        Self::new(kind, names.iter().copied().zip(matrices).collect())
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, name: ParamName) -> &Matrix {
        self.matrices
            .get(&name)
            .unwrap_or_else(|| panic!("{} has no parameter {name}", self.kind))
    }

    pub fn try_get(&self, name: ParamName) -> Option<&Matrix> {
        self.matrices.get(&name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ParamName, &Matrix)> {
        self.matrices.iter().map(|(n, m)| (*n, m))
    }

    /// Copy with `name` replaced by `name + k·I`.
    pub fn shifted(&self, name: ParamName, k: f64) -> Self {
        let mut out = self.clone();
        let m = out.matrices.get_mut(&name).expect("parameter present");
        *m = m.shifted(k);
        out
    }

    /// Copy with several shifts applied; repeated names accumulate.
    pub fn with_shifts(&self, shifts: &[(ParamName, f64)]) -> Self {
        shifts.iter().fold(
            self.clone(),
            |acc, &(n, k)| if k == 0.0 { acc } else { acc.shifted(n, k) },
        )
    }

    pub fn with_replaced(&self, name: ParamName, m: Matrix) -> Result<Self> {
        let mut matrices = self.matrices.clone();
        matrices.insert(name, m);
        Self::new(self.kind, matrices)
    }

    /// Copy with the matrices of each listed pair exchanged.
    pub fn swapped(&self, pairs: &[(ParamName, ParamName)]) -> Self {
        let mut out = self.clone();
        for &(p, q) in pairs {
            let mp = out.matrices.remove(&p).expect("parameter present");
            let mq = out.matrices.remove(&q).expect("parameter present");
            out.matrices.insert(p, mq);
            out.matrices.insert(q, mp);
        }
        out
    }
}

/// Where a function is evaluated. `y` is present exactly for Appell functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    pub x: Scalar,
    pub y: Option<Scalar>,
}

impl EvalPoint {
    pub fn univariate(x: Scalar) -> Self {
        EvalPoint { x, y: None }
    }

    pub fn bivariate(x: Scalar, y: Scalar) -> Self {
        EvalPoint { x, y: Some(y) }
    }

    pub fn real(x: f64) -> Self {
        Self::univariate(Scalar::new(x, 0.0))
    }

    pub fn real2(x: f64, y: f64) -> Self {
        Self::bivariate(Scalar::new(x, 0.0), Scalar::new(y, 0.0))
    }

    fn matches(&self, kind: FunctionKind) -> bool {
        self.y.is_some() == kind.is_bivariate()
    }
}

/// Truncation policy for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    /// Relative size below which a diagonal counts as negligible.
    pub tol: f64,
    /// Hard cap on the number of diagonals summed.
    pub max_degree: usize,
    /// Number of successive negligible diagonals that ends the summation.
    pub consecutive_small: usize,
    /// Reject points outside the classical convergence region.
    pub enforce_domain: bool,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            tol: 1e-12,
            max_degree: 500,
            consecutive_small: 3,
            enforce_domain: true,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Invalid(format!(
                "series tolerance must lie in (0, 1), got {}",
                self.tol
            )));
        }
        if self.max_degree == 0 || self.consecutive_small == 0 {
            return Err(Error::Invalid(
                "max_degree and consecutive_small must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Value of a truncated series together with its convergence diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub value: Matrix,
    /// Number of (anti-)diagonals summed.
    pub degrees_used: usize,
    pub last_increment_norm: f64,
    pub converged: bool,
}

/// Classical scalar convergence regions; boundaries excluded.
pub fn check_domain(kind: FunctionKind, point: &EvalPoint) -> bool {
    let ax = point.x.norm();
    let ay = point.y.map_or(0.0, |y| y.norm());
    match kind {
        FunctionKind::Gauss2F1 => ax < 1.0,
        FunctionKind::AppellF1 | FunctionKind::AppellF3 => ax < 1.0 && ay < 1.0,
        FunctionKind::AppellF2 => ax + ay < 1.0,
        FunctionKind::AppellF4 => ax.sqrt() + ay.sqrt() < 1.0,
    }
}

fn validate_call(kind: FunctionKind, p: &ParameterSet, point: &EvalPoint, cfg: &SeriesConfig) -> Result<()> {
    cfg.validate()?;
    if p.kind() != kind {
        return Err(Error::Invalid(format!("expected {kind} parameters, got {}", p.kind())));
    }
    if !point.matches(kind) {
        return Err(Error::Invalid(format!(
            "{kind} takes {} variable(s)",
            if kind.is_bivariate() { 2 } else { 1 }
        )));
    }
    if !point.x.is_finite() || point.y.is_some_and(|y| !y.is_finite()) {
        return Err(Error::Invalid("evaluation point is not finite".into()));
    }
    if cfg.enforce_domain && !check_domain(kind, point) {
        let detail = match point.y {
            Some(y) => format!("x = {}, y = {}", point.x, y),
            None => format!("x = {}", point.x),
        };
        return Err(Error::DomainViolation {
            kind: kind.symbol().to_string(),
            detail,
        });
    }
    Ok(())
}
