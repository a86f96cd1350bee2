use super::{validate_call, EvalPoint, EvalReport, FunctionKind, ParameterSet, SeriesConfig};
use crate::calculus::ScaledChain;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::params::ParamName::{self, *};

/// Evaluates whichever function `p` parameterizes.
pub fn evaluate(p: &ParameterSet, point: &EvalPoint, cfg: &SeriesConfig) -> Result<EvalReport> {
    match p.kind() {
        FunctionKind::Gauss2F1 => gauss_2f1(p, point, cfg),
        FunctionKind::AppellF1 => appell_f1(p, point, cfg),
        FunctionKind::AppellF2 => appell_f2(p, point, cfg),
        FunctionKind::AppellF3 => appell_f3(p, point, cfg),
        FunctionKind::AppellF4 => appell_f4(p, point, cfg),
    }
}

/// `₂F₁(A, B; C; x) = Σ (A)_n (B)_n (C)_n⁻¹ xⁿ/n!`.
pub fn gauss_2f1(p: &ParameterSet, point: &EvalPoint, cfg: &SeriesConfig) -> Result<EvalReport> {
    validate_call(FunctionKind::Gauss2F1, p, point, cfg)?;
    let mut a = products(p, A);
    let mut b = products(p, B);
    let mut c = inverses(p, C);
    let mut x_pow = Powers::new(point.x);
    sum_diagonals(p.order(), cfg, |n| {
        let w = x_pow.get(n);
        if is_zero(w) {
            return Ok(None);
        }
        let term = &(a.get(n)? * b.get(n)?) * c.get(n)?;
        Ok(Some(term.scaled(w)))
    })
}

/// `F₁ = Σ (A)_{m+n} (B)_m (B′)_n (C)_{m+n}⁻¹ xᵐyⁿ/(m!n!)`.
pub fn appell_f1(p: &ParameterSet, point: &EvalPoint, cfg: &SeriesConfig) -> Result<EvalReport> {
    validate_call(FunctionKind::AppellF1, p, point, cfg)?;
    let mut a = products(p, A);
    let mut b = products(p, B);
    let mut bp = products(p, BPrime);
    let mut c = inverses(p, C);
    let mut xy = BivariatePowers::new(point);
    sum_diagonals(p.order(), cfg, |total| {
        let mut diag: Option<Matrix> = None;
        for m in 0..=total {
            let n = total - m;
            let w = xy.get(m, n);
            if is_zero(w) {
                continue;
            }
            let term = &(&(a.get(total)? * b.get(m)?) * bp.get(n)?) * c.get(total)?;
            accumulate(&mut diag, term.scaled(w));
        }
        Ok(diag)
    })
}

/// `F₂ = Σ (A)_{m+n} (B)_m (B′)_n (C)_m⁻¹ (C′)_n⁻¹ xᵐyⁿ/(m!n!)`.
pub fn appell_f2(p: &ParameterSet, point: &EvalPoint, cfg: &SeriesConfig) -> Result<EvalReport> {
    validate_call(FunctionKind::AppellF2, p, point, cfg)?;
    let mut a = products(p, A);
    let mut b = products(p, B);
    let mut bp = products(p, BPrime);
    let mut c = inverses(p, C);
    let mut cp = inverses(p, CPrime);
    let mut xy = BivariatePowers::new(point);
    sum_diagonals(p.order(), cfg, |total| {
        let mut diag: Option<Matrix> = None;
        let mut binom = 1.0;
        for m in 0..=total {
            let n = total - m;
            let w = xy.get(m, n) * binom;
            binom = binom * (total - m) as f64 / (m + 1) as f64;
            if is_zero(w) {
                continue;
            }
            let term = &(&(&(a.get(total)? * b.get(m)?) * bp.get(n)?) * c.get(m)?) * cp.get(n)?;
            accumulate(&mut diag, term.scaled(w));
        }
        Ok(diag)
    })
}

/// `F₃ = Σ (A)_m (A′)_n (B)_m (B′)_n (C)_{m+n}⁻¹ xᵐyⁿ/(m!n!)`.
pub fn appell_f3(p: &ParameterSet, point: &EvalPoint, cfg: &SeriesConfig) -> Result<EvalReport> {
    validate_call(FunctionKind::AppellF3, p, point, cfg)?;
    let mut a = products(p, A);
    let mut ap = products(p, APrime);
    let mut b = products(p, B);
    let mut bp = products(p, BPrime);
    let mut c = inverses(p, C);
    let mut xy = BivariatePowers::new(point);
    sum_diagonals(p.order(), cfg, |total| {
        let mut diag: Option<Matrix> = None;
        let mut binom = 1.0;
        for m in 0..=total {
            let n = total - m;
            let w = xy.get(m, n) / binom;
            binom = binom * (total - m) as f64 / (m + 1) as f64;
            if is_zero(w) {
                continue;
            }
            let term = &(&(&(a.get(m)? * ap.get(n)?) * b.get(m)?) * bp.get(n)?) * c.get(total)?;
            accumulate(&mut diag, term.scaled(w));
        }
        Ok(diag)
    })
}

/// `F₄ = Σ (A)_{m+n} (B)_{m+n} (C)_m⁻¹ (C′)_n⁻¹ xᵐyⁿ/(m!n!)`.
pub fn appell_f4(p: &ParameterSet, point: &EvalPoint, cfg: &SeriesConfig) -> Result<EvalReport> {
    validate_call(FunctionKind::AppellF4, p, point, cfg)?;
    let mut a = products(p, A);
    let mut b = products(p, B);
    let mut c = inverses(p, C);
    let mut cp = inverses(p, CPrime);
    let mut xy = BivariatePowers::new(point);
    sum_diagonals(p.order(), cfg, |total| {
        let mut diag: Option<Matrix> = None;
        let mut binom = 1.0;
        for m in 0..=total {
            let n = total - m;
            let w = xy.get(m, n) * (binom * binom);
            binom = binom * (total - m) as f64 / (m + 1) as f64;
            if is_zero(w) {
                continue;
            }
            let term = &(&(a.get(total)? * b.get(total)?) * c.get(m)?) * cp.get(n)?;
            accumulate(&mut diag, term.scaled(w));
        }
        Ok(diag)
    })
}

// Chains are normalized by factorials (see `ScaledChain`), so the scalar
// weight of a term is xᵐyⁿ times the ratio of factorials left over:
//   F₁: 1,  F₂: (m+n)!/(m!n!),  F₃: m!n!/(m+n)!,  F₄: ((m+n)!/(m!n!))².

fn products(p: &ParameterSet, name: ParamName) -> ScaledChain {
    ScaledChain::products(p.get(name).clone())
}

fn inverses(p: &ParameterSet, name: ParamName) -> ScaledChain {
    ScaledChain::inverses(p.get(name).clone())
}

fn is_zero(w: Scalar) -> bool {
    w.re == 0.0 && w.im == 0.0
}

fn accumulate(acc: &mut Option<Matrix>, term: Matrix) {
    match acc {
        Some(sum) => *sum += &term,
        None => *acc = Some(term),
    }
}

/// Sums diagonals until `consecutive_small` of them in a row are negligible
/// relative to the running sum. `None` stands for an all-zero diagonal.
fn sum_diagonals(
    order: usize,
    cfg: &SeriesConfig,
    mut diagonal: impl FnMut(usize) -> Result<Option<Matrix>>,
) -> Result<EvalReport> {
    let mut sum = Matrix::zeros(order);
    let mut small_run = 0;
    let mut last_increment_norm = f64::INFINITY;
    for degree in 0..cfg.max_degree {
        let increment = diagonal(degree)?;
        last_increment_norm = match &increment {
            Some(d) => {
                sum += d;
                d.frobenius_norm()
            }
            None => 0.0,
        };
        let sum_norm = sum.frobenius_norm();
        if !sum_norm.is_finite() || !last_increment_norm.is_finite() {
            return Err(Error::Overflow(format!("series diverged at degree {degree}")));
        }
        if last_increment_norm <= cfg.tol * (1.0 + sum_norm) {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= cfg.consecutive_small {
            return Ok(EvalReport {
                value: sum,
                degrees_used: degree + 1,
                last_increment_norm,
                converged: true,
            });
        }
    }
    Err(Error::NotConverged {
        degrees_used: cfg.max_degree,
        last_increment_norm,
    })
}

struct Powers {
    base: Scalar,
    values: Vec<Scalar>,
}

impl Powers {
    fn new(base: Scalar) -> Self {
        Powers {
            base,
            values: vec![Scalar::new(1.0, 0.0)],
        }
    }

    fn get(&mut self, n: usize) -> Scalar {
        while self.values.len() <= n {
            let last = *self.values.last().expect("non-empty");
            self.values.push(last * self.base);
        }
        self.values[n]
    }
}

struct BivariatePowers {
    x: Powers,
    y: Powers,
}

impl BivariatePowers {
    fn new(point: &EvalPoint) -> Self {
        BivariatePowers {
            x: Powers::new(point.x),
            y: Powers::new(point.y.expect("bivariate point")),
        }
    }

    fn get(&mut self, m: usize, n: usize) -> Scalar {
        self.x.get(m) * self.y.get(n)
    }
}
