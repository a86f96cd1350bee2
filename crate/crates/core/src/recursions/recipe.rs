//! Data describing how a right-hand side is assembled from series values
//! and matrix coefficients.

use crate::params::ParamName;

/// Which series variable multiplies a telescoping branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// `k1·a + k2·b + c` for the summation indices of a recipe.
///
/// Telescoping sums have a single index, bound to `k1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub k1: i64,
    pub k2: i64,
    pub c: i64,
}

impl Affine {
    pub const fn new(k1: i64, k2: i64, c: i64) -> Self {
        Affine { k1, k2, c }
    }

    pub const fn constant(c: i64) -> Self {
        Affine { k1: 0, k2: 0, c }
    }

    pub fn eval(&self, k1: i64, k2: i64) -> i64 {
        self.k1 * k1 + self.k2 * k2 + self.c
    }

    pub fn is_constant(&self) -> bool {
        self.k1 == 0 && self.k2 == 0
    }
}

/// One matrix coefficient of a recipe, evaluated on the unshifted parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    /// The parameter itself.
    Param(ParamName),
    /// `X⁻¹`.
    Inverse(ParamName),
    /// `(X + a·I)⁻¹`.
    ShiftedInverse(ParamName, Affine),
    /// `(X)_a`.
    Poch(ParamName, Affine),
    /// `(X)_a⁻¹`.
    PochInv(ParamName, Affine),
}

/// Summation range of a telescoping recipe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRange {
    /// `k = 1, …, s`
    OneToS,
    /// `k = 0, …, s−1`
    ZeroToSMinusOne,
}

impl KRange {
    pub fn indices(self, s: usize) -> std::ops::RangeInclusive<i64> {
        let s = s as i64;
        match self {
            KRange::OneToS => 1..=s,
            KRange::ZeroToSMinusOne => 0..=s - 1,
        }
    }
}

/// `var · Σₖ left(k) · F(p + shifts(k)) · right(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub var: Var,
    pub left: Vec<Factor>,
    pub shifts: Vec<(ParamName, Affine)>,
    pub right: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Recipe {
    /// `F(p) + sign · Σ_branches var · Σₖ …`.
    Telescoping {
        range: KRange,
        sign: i8,
        branches: Vec<Branch>,
    },
    /// `Σ_{k1+k2≤s} s!/(k1!k2!(s−k1−k2)!) (sign·x)^{k1}(sign·y)^{k2} · left · F(p + shifts) · right`.
    ///
    /// An inactive variable pins its index to zero, which turns the
    /// multinomial weight into a binomial one.
    Multinomial {
        x_active: bool,
        y_active: bool,
        sign: i8,
        left: Vec<Factor>,
        shifts: Vec<(ParamName, Affine)>,
        right: Vec<Factor>,
    },
    /// The right-hand side of `base` applied to the parameters with each
    /// listed pair exchanged.
    Swapped {
        base: &'static str,
        pairs: Vec<(ParamName, ParamName)>,
    },
}
