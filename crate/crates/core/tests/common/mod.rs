//! Shared helpers for integration tests, including an independent scalar
//! reference for every series.
//!
//! The reference builds each double-series term from its neighbour by the
//! scalar term ratio and sums the full rectangle `m, n ≤ N`. It shares no
//! code with the library's matrix engine.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hypermat::calculus::{random_commuting_family, CommutingFamily};
use hypermat::linalg::{frobenius_norm, Matrix, Scalar};
use hypermat::series::{EvalPoint, FunctionKind, ParameterSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RECT: usize = 200;

pub fn c(re: f64, im: f64) -> Scalar {
    Scalar::new(re, im)
}

/// `₂F₁(a, b; c; x)` by the term ratio `(a+n)(b+n)x / ((c+n)(n+1))`.
pub fn naive_2f1(a: Scalar, b: Scalar, cc: Scalar, x: Scalar) -> Scalar {
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    for n in 0..(4 * RECT) {
        let n = n as f64;
        term *= (a + n) * (b + n) * x / ((cc + n) * (n + 1.0));
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() && n > 10.0 {
            break;
        }
    }
    sum
}

/// Sums `Σ_{m,n≤RECT} t(m, n)` given the ratios `t(m,0)/t(m−1,0)` and
/// `t(m,n)/t(m,n−1)`.
fn rectangle(first: impl Fn(f64) -> Scalar, second: impl Fn(f64, f64) -> Scalar) -> Scalar {
    let mut sum = c(0.0, 0.0);
    let mut column = c(1.0, 0.0);
    for m in 0..=RECT {
        if m > 0 {
            column *= first(m as f64);
        }
        let mut t = column;
        sum += t;
        for n in 1..=RECT {
            t *= second(m as f64, n as f64);
            sum += t;
        }
    }
    sum
}

/// Scalar reference value of any supported function. `params` follows
/// [`FunctionKind::required_names`].
pub fn naive_scalar(kind: FunctionKind, params: &[Scalar], x: Scalar, y: Scalar) -> Scalar {
    match kind {
        FunctionKind::Gauss2F1 => naive_2f1(params[0], params[1], params[2], x),
        FunctionKind::AppellF1 => {
            let (a, b, bp, cc) = (params[0], params[1], params[2], params[3]);
            rectangle(
                |m| (a + m - 1.0) * (b + m - 1.0) * x / ((cc + m - 1.0) * m),
                |m, n| (a + m + n - 1.0) * (bp + n - 1.0) * y / ((cc + m + n - 1.0) * n),
            )
        }
        FunctionKind::AppellF2 => {
            let (a, b, bp, cc, cp) = (params[0], params[1], params[2], params[3], params[4]);
            rectangle(
                |m| (a + m - 1.0) * (b + m - 1.0) * x / ((cc + m - 1.0) * m),
                |m, n| (a + m + n - 1.0) * (bp + n - 1.0) * y / ((cp + n - 1.0) * n),
            )
        }
        FunctionKind::AppellF3 => {
            let (a, ap, b, bp, cc) = (params[0], params[1], params[2], params[3], params[4]);
            rectangle(
                |m| (a + m - 1.0) * (b + m - 1.0) * x / ((cc + m - 1.0) * m),
                |m, n| (ap + n - 1.0) * (bp + n - 1.0) * y / ((cc + m + n - 1.0) * n),
            )
        }
        FunctionKind::AppellF4 => {
            let (a, b, cc, cp) = (params[0], params[1], params[2], params[3]);
            rectangle(
                |m| (a + m - 1.0) * (b + m - 1.0) * x / ((cc + m - 1.0) * m),
                |m, n| (a + m + n - 1.0) * (b + m + n - 1.0) * y / ((cp + n - 1.0) * n),
            )
        }
    }
}

pub fn rel_err(got: &Matrix, want: &Matrix) -> f64 {
    frobenius_norm(&(got - want)) / frobenius_norm(want).max(1e-300)
}

pub fn residual(lhs: &Matrix, rhs: &Matrix) -> f64 {
    frobenius_norm(&(lhs - rhs)) / (1.0 + frobenius_norm(lhs))
}

pub fn params_from_family(kind: FunctionKind, family: &CommutingFamily) -> ParameterSet {
    let matrices: BTreeMap<_, _> = kind
        .required_names()
        .iter()
        .map(|&n| (n, family.realize(n).unwrap()))
        .collect();
    ParameterSet::new(kind, matrices).unwrap()
}

pub fn family_params(kind: FunctionKind, order: usize, seed: u64) -> (CommutingFamily, ParameterSet) {
    let family = random_commuting_family(order, kind.required_names(), seed).unwrap();
    let p = params_from_family(kind, &family);
    (family, p)
}

/// Random point well inside the domain of `kind`.
pub fn random_point(kind: FunctionKind, rng: &mut ChaCha8Rng) -> EvalPoint {
    let mut draw = |r: f64| Scalar::from_polar(r * rng.gen::<f64>(), std::f64::consts::TAU * rng.gen::<f64>());
    match kind {
        FunctionKind::Gauss2F1 => EvalPoint::univariate(draw(0.6)),
        FunctionKind::AppellF1 | FunctionKind::AppellF3 => EvalPoint::bivariate(draw(0.5), draw(0.5)),
        FunctionKind::AppellF2 => EvalPoint::bivariate(draw(0.35), draw(0.35)),
        FunctionKind::AppellF4 => EvalPoint::bivariate(draw(0.18), draw(0.18)),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `P·diag(f(λ₁,…), f(λ₂,…), …)·P⁻¹` where each call receives the i-th
/// eigenvalue of every parameter, in `required_names` order.
pub fn diagonal_oracle(kind: FunctionKind, family: &CommutingFamily, f: impl Fn(&[Scalar]) -> Scalar) -> Matrix {
    let names = kind.required_names();
    let values: Vec<Scalar> = (0..family.order())
        .map(|i| {
            let args: Vec<Scalar> = names.iter().map(|&n| family.spectrum(n).unwrap()[i]).collect();
            f(&args)
        })
        .collect();
    family.from_diagonal(&values)
}

/// Parameters drawn like a campaign trial: one commuting family, with the
/// eigenvalues of every decremented parameter kept 0.1 away from `0..=s`.
pub fn hypothesis_params(
    d: &hypermat::recursions::IdentityDescriptor,
    order: usize,
    s: usize,
    seed: u64,
) -> ParameterSet {
    use hypermat::recursions::{Direction, Hypothesis};
    let lowered: Vec<_> = d
        .hypotheses
        .iter()
        .filter_map(|h| match *h {
            Hypothesis::ShiftsInvertible {
                name,
                direction: Direction::Decrement,
            } => Some(name),
            _ => None,
        })
        .collect();
    let family = hypermat::calculus::random_commuting_family_where(order, d.kind.required_names(), seed, |n, v| {
        !lowered.contains(&n) || (0..=s).all(|j| (v - c(j as f64, 0.0)).norm() >= 0.1)
    })
    .unwrap();
    params_from_family(d.kind, &family)
}

/// Property-test settings with a fixed generator seed, so every run
/// explores the same cases.
pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed_cafe),
        failure_persistence: None,
        ..proptest::test_runner::Config::default()
    }
}
