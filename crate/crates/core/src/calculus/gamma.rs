use std::f64::consts::PI;

use crate::calculus::pochhammer::pochhammer;
use crate::calculus::CommutingFamily;
use crate::error::{Error, Result};
use crate::linalg::{frobenius_norm, inverse, is_positive_stable, lu_factor, mat_exp, solve, Matrix, Scalar};
use crate::params::ParamName;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex gamma function (Lanczos, g = 7, with reflection for `Re z < 1/2`).
pub fn gamma(z: Scalar) -> Scalar {
    if z.re < 0.5 {
        let pi = Scalar::new(PI, 0.0);
        return pi / ((pi * z).sin() * gamma(Scalar::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = Scalar::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// `1/Γ(z)`, entire; exactly zero at the poles `0, −1, −2, …`.
pub fn reciprocal_gamma(z: Scalar) -> Scalar {
    if z.re < 0.5 {
        if z.im == 0.0 && z.re == z.re.round() {
            return Scalar::new(0.0, 0.0);
        }
        let pi = Scalar::new(PI, 0.0);
        return (pi * z).sin() * gamma(Scalar::new(1.0, 0.0) - z) / pi;
    }
    Scalar::new(1.0, 0.0) / gamma(z)
}

/// `‖Γ⁻¹(A) − (A)_n Γ⁻¹(A+nI)‖_F` for a family member `A`.
///
/// Both reciprocal gamma values are formed on the spectrum through the
/// family's similarity transform.
pub fn reciprocal_gamma_shift_residual(family: &CommutingFamily, name: ParamName, n: usize) -> Result<f64> {
    let a = family.realize(name)?;
    let lhs = family.apply(name, reciprocal_gamma)?;
    let shifted = family.apply(name, |l| reciprocal_gamma(l + n as f64))?;
    let rhs = &pochhammer(&a, n) * &shifted;
    Ok(frobenius_norm(&(&lhs - &rhs)))
}

/// Truncated limit `(n−1)!·(A)_n⁻¹·n^A` approximating `Γ(A)`.
///
/// The factorial is interleaved with the inverse chain, one factor
/// `k·(A+kI)⁻¹` at a time, so every intermediate stays close to `O(n^-A)`.
pub fn gamma_limit(a: &Matrix, n: usize) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::Invalid("gamma_limit needs n >= 1".into()));
    }
    if !is_positive_stable(a)? {
        return Err(Error::Invalid("gamma_limit needs a positive stable matrix".into()));
    }
    let mut acc = inverse(a).map_err(|_| Error::SingularShift { n: 0 })?;
    for k in 1..n {
        let step = solve(&lu_factor(&a.shifted(k as f64)), &acc).map_err(|_| Error::SingularShift { n: k as i64 })?;
        acc = step.scaled_real(k as f64);
    }
    let power = mat_exp(&a.scaled_real((n as f64).ln()))?;
    let out = &acc * &power;
    if !out.is_finite() {
        return Err(Error::Overflow("gamma_limit".into()));
    }
    Ok(out)
}
