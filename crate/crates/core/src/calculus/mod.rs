//! Shifted factorials, the reciprocal gamma machinery, multinomial
//! coefficients and commuting parameter families.

mod family;
mod gamma;
mod pochhammer;

pub use family::{
    random_commuting_family, random_commuting_family_where, CommutingFamily, MIN_TRANSFORM_PIVOT, SPECTRUM_IM_RANGE,
    SPECTRUM_RE_RANGE,
};
pub use gamma::{gamma, gamma_limit, reciprocal_gamma, reciprocal_gamma_shift_residual};
pub(crate) use pochhammer::ScaledChain;
pub use pochhammer::{
    lowered_inverse_residual, lowered_inverse_split_residual, pochhammer, pochhammer_inverse_step,
    pochhammer_shift_identity_residual, PochhammerChain,
};

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `s! / (k1!·k2!·(s−k1−k2)!)`, zero when `k1 < 0`, `k2 < 0` or `k1 + k2 > s`.
pub fn multinomial(s: i64, k1: i64, k2: i64) -> u64 {
    if k1 < 0 || k2 < 0 || k1 + k2 > s {
        return 0;
    }
    binomial(s, k1) * binomial(s - k1, k2)
}
