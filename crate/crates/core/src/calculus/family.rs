use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{inverse, lu_factor, Matrix, Scalar, DESK_ORDER_LIMIT};
use crate::params::ParamName;

/// Real parts of sampled eigenvalues lie in this closed interval.
pub const SPECTRUM_RE_RANGE: (f64, f64) = (0.5, 3.0);
/// Imaginary parts of sampled eigenvalues lie in this closed interval.
pub const SPECTRUM_IM_RANGE: (f64, f64) = (-0.5, 0.5);
/// Smallest acceptable LU pivot of a sampled similarity transform.
pub const MIN_TRANSFORM_PIVOT: f64 = 1e-3;

const MAX_TRANSFORM_TRIES: usize = 100;
const MAX_EIGENVALUE_TRIES: usize = 10_000;

/// Matrices `M = P·diag(λ)·P⁻¹` sharing one similarity transform `P`, so that
/// every pair of members commutes.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutingFamily {
    transform: Matrix,
    transform_inverse: Matrix,
    spectra: BTreeMap<ParamName, Vec<Scalar>>,
}

impl CommutingFamily {
    pub fn from_parts(transform: Matrix, spectra: BTreeMap<ParamName, Vec<Scalar>>) -> Result<Self> {
        let order = transform.order();
        for (name, values) in &spectra {
            if values.len() != order {
                return Err(Error::Invalid(format!(
                    "spectrum of {name} has {} values, expected {order}",
                    values.len()
                )));
            }
            if let Some(v) = values.iter().find(|v| !in_sampling_box(**v)) {
                return Err(Error::Invalid(format!(
                    "eigenvalue {v} of {name} outside the sampling box"
                )));
            }
        }
        let transform_inverse = inverse(&transform)?;
        Ok(CommutingFamily {
            transform,
            transform_inverse,
            spectra,
        })
    }

    pub fn order(&self) -> usize {
        self.transform.order()
    }

    pub fn transform(&self) -> &Matrix {
        &self.transform
    }

    pub fn spectra(&self) -> &BTreeMap<ParamName, Vec<Scalar>> {
        &self.spectra
    }

    pub fn spectrum(&self, name: ParamName) -> Result<&[Scalar]> {
        self.spectra
            .get(&name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Invalid(format!("family has no member {name}")))
    }

    /// `P·diag(spectrum)·P⁻¹`.
    pub fn realize(&self, name: ParamName) -> Result<Matrix> {
        self.apply(name, |l| l)
    }

    /// `P·diag(f(λ))·P⁻¹` for the member `name`.
    pub fn apply(&self, name: ParamName, f: impl Fn(Scalar) -> Scalar) -> Result<Matrix> {
        let values: Vec<Scalar> = self.spectrum(name)?.iter().map(|&l| f(l)).collect();
        Ok(self.from_diagonal(&values))
    }

    /// `P·diag(values)·P⁻¹` for arbitrary values.
    pub fn from_diagonal(&self, values: &[Scalar]) -> Matrix {
        assert_eq!(values.len(), self.order());
        let scaled = Matrix::from_fn(self.order(), |i, j| self.transform[(i, j)] * values[j]);
        &scaled * &self.transform_inverse
    }
}

fn in_sampling_box(v: Scalar) -> bool {
    (SPECTRUM_RE_RANGE.0..=SPECTRUM_RE_RANGE.1).contains(&v.re)
        && (SPECTRUM_IM_RANGE.0..=SPECTRUM_IM_RANGE.1).contains(&v.im)
}

/// Deterministic random family for the given member names.
pub fn random_commuting_family(order: usize, names: &[ParamName], seed: u64) -> Result<CommutingFamily> {
    random_commuting_family_where(order, names, seed, |_, _| true)
}

/// Like [`random_commuting_family`], redrawing any eigenvalue rejected by `accept`.
pub fn random_commuting_family_where(
    order: usize,
    names: &[ParamName],
    seed: u64,
    accept: impl Fn(ParamName, Scalar) -> bool,
) -> Result<CommutingFamily> {
    if order == 0 || order > DESK_ORDER_LIMIT {
        return Err(Error::Invalid(format!(
            "family order must be in 1..={DESK_ORDER_LIMIT}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let transform = (0..MAX_TRANSFORM_TRIES)
        .map(|_| {
            Matrix::from_fn(order, |_, _| {
                Scalar::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
            })
        })
        .find(|p| lu_factor(p).min_pivot_magnitude >= MIN_TRANSFORM_PIVOT)
        .ok_or(Error::GenerationFailed {
            tries: MAX_TRANSFORM_TRIES,
        })?;

    let mut spectra = BTreeMap::new();
    for &name in names {
        let mut values = Vec::with_capacity(order);
        for _ in 0..order {
            let value = (0..MAX_EIGENVALUE_TRIES)
                .map(|_| {
                    Scalar::new(
                        rng.gen_range(SPECTRUM_RE_RANGE.0..=SPECTRUM_RE_RANGE.1),
                        rng.gen_range(SPECTRUM_IM_RANGE.0..=SPECTRUM_IM_RANGE.1),
                    )
                })
                .find(|&v| accept(name, v))
                .ok_or(Error::GenerationFailed {
                    tries: MAX_EIGENVALUE_TRIES,
                })?;
            values.push(value);
        }
        spectra.insert(name, values);
    }
    CommutingFamily::from_parts(transform, spectra)
}
