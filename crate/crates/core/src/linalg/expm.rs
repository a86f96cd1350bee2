use super::{Matrix, Scalar};
use crate::error::{Error, Result};

const TAYLOR_TERMS: usize = 30;

/// Matrix exponential by scaling and squaring around a truncated Taylor core.
///
/// The argument is scaled by `2^-s` until its Frobenius norm is at most 1/2,
/// where the Taylor series reaches double precision in well under 20 terms.
pub fn mat_exp(m: &Matrix) -> Result<Matrix> {
    let norm = m.frobenius_norm();
    if !norm.is_finite() {
        return Err(Error::NonConvergent("matrix exponential of a non-finite matrix".into()));
    }
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m.scaled_real(0.5f64.powi(squarings));

    let r = m.order();
    let mut sum = Matrix::identity(r);
    let mut term = Matrix::identity(r);
    for k in 1..=TAYLOR_TERMS {
        term = (&term * &scaled).scaled(Scalar::new(1.0 / k as f64, 0.0));
        sum += &term;
        if term.frobenius_norm() <= f64::EPSILON * sum.frobenius_norm() * 1e-2 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    if !sum.is_finite() {
        return Err(Error::NonConvergent(format!(
            "matrix exponential overflowed (norm {norm:e})"
        )));
    }
    Ok(sum)
}
