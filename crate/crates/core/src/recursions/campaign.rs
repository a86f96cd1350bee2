use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{check_hypotheses, lookup, verify_identity, Direction, Hypothesis, IdentityDescriptor, VerificationReport};
use crate::calculus::random_commuting_family_where;
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::params::ParamName;
use crate::series::{EvalPoint, FunctionKind, ParameterSet, SeriesConfig};

/// Default pass threshold on the relative residual.
pub const CAMPAIGN_TOL: f64 = 1e-8;

/// Eigenvalues of a decremented parameter keep at least this distance from
/// the integers `0..=s`.
const INTEGER_MARGIN: f64 = 0.1;
const MAX_POINT_RADIUS: f64 = 0.3;
const F2_POINT_LIMIT: f64 = 0.5;
const F4_POINT_LIMIT: f64 = 0.8;
const MAX_FAMILY_DRAWS: u64 = 20;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mix(parts: &[u64]) -> u64 {
    parts.iter().fold(0, |h, &p| splitmix64(h ^ splitmix64(p)))
}

struct Job {
    descriptor: &'static IdentityDescriptor,
    index: usize,
    order: usize,
    s: usize,
    trial: usize,
}

/// Verifies each listed identity on `trials` random inputs for every order
/// and shift count.
///
/// Every trial draws its own commuting family (respecting the identity's
/// invertibility hypotheses) and its own point from a seed derived from
/// `seed`, the identity, the order, the shift count and the trial number,
/// so results do not depend on scheduling. Reports come back in job order.
/// Single-step relations run once per order and trial, at `s = 1`.
pub fn run_campaign(
    ids: &[&str],
    trials: usize,
    orders: &[usize],
    s_values: &[usize],
    seed: u64,
    cfg: &SeriesConfig,
    campaign_tol: f64,
) -> Result<Vec<VerificationReport>> {
    let descriptors = ids.iter().map(|id| lookup(id)).collect::<Result<Vec<_>>>()?;
    let mut jobs = Vec::new();
    for (index, &descriptor) in descriptors.iter().enumerate() {
        for &order in orders {
            let mut shifts: Vec<usize> = s_values.iter().map(|&s| descriptor.effective_shift(s)).collect();
            shifts.dedup();
            for &s in &shifts {
                for trial in 0..trials {
                    jobs.push(Job {
                        descriptor,
                        index,
                        order,
                        s,
                        trial,
                    });
                }
            }
        }
    }
    Ok(jobs
        .par_iter()
        .map(|job| run_job(job, seed, cfg, campaign_tol))
        .collect())
}

fn run_job(job: &Job, seed: u64, cfg: &SeriesConfig, campaign_tol: f64) -> VerificationReport {
    let d = job.descriptor;
    let trial_seed = mix(&[seed, job.index as u64, job.order as u64, job.s as u64, job.trial as u64]);
    let mut rng = ChaCha8Rng::seed_from_u64(mix(&[trial_seed, 1]));
    let point = draw_point(d.kind, &mut rng);
    let mut report = match draw_parameters(d, job.order, job.s, trial_seed) {
        Ok(p) => verify_identity(d, &p, job.s, &point, cfg, campaign_tol),
        Err(e) => VerificationReport {
            id: d.id.to_string(),
            order: job.order,
            s: job.s,
            seed: None,
            point: (&point).into(),
            residual: None,
            passed: false,
            failure: Some(e.to_string()),
            error: Some(e),
            lhs: None,
            rhs: Vec::new(),
        },
    };
    report.seed = Some(trial_seed);
    report
}

/// A commuting family realized as a parameter set that satisfies every
/// hypothesis of `d`; redraws when the numerically realized matrices miss
/// the commutator threshold.
fn draw_parameters(d: &IdentityDescriptor, order: usize, s: usize, trial_seed: u64) -> Result<ParameterSet> {
    let lowered: Vec<ParamName> = d
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
    let accept = |name: ParamName, v: Scalar| {
        !lowered.contains(&name) || (0..=s).all(|j| (v - Scalar::new(j as f64, 0.0)).norm() >= INTEGER_MARGIN)
    };
    let names = d.kind.required_names();
    for attempt in 0..MAX_FAMILY_DRAWS {
        let family = random_commuting_family_where(order, names, mix(&[trial_seed, 2, attempt]), accept)?;
        let matrices = names
            .iter()
            .map(|&n| Ok((n, family.realize(n)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let p = ParameterSet::new(d.kind, matrices)?;
        if check_hypotheses(d, &p, s) {
            return Ok(p);
        }
    }
    Err(Error::GenerationFailed {
        tries: MAX_FAMILY_DRAWS as usize,
    })
}

fn draw_point(kind: FunctionKind, rng: &mut ChaCha8Rng) -> EvalPoint {
    let mut draw = || Scalar::from_polar(MAX_POINT_RADIUS * rng.gen::<f64>(), TAU * rng.gen::<f64>());
    loop {
        let x = draw();
        if !kind.is_bivariate() {
            return EvalPoint::univariate(x);
        }
        let y = draw();
        let inside = match kind {
            FunctionKind::AppellF2 => x.norm() + y.norm() <= F2_POINT_LIMIT,
            FunctionKind::AppellF4 => x.norm().sqrt() + y.norm().sqrt() <= F4_POINT_LIMIT,
            _ => true,
        };
        if inside {
            return EvalPoint::bivariate(x, y);
        }
    }
}
