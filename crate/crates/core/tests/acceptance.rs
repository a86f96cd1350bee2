//! Acceptance run. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use hypermat::calculus::{
    gamma_limit, lowered_inverse_residual, pochhammer, pochhammer_shift_identity_residual, random_commuting_family,
    random_commuting_family_where, reciprocal_gamma, reciprocal_gamma_shift_residual, PochhammerChain,
};
use hypermat::linalg::{commutator_norm, frobenius_norm, Matrix, Scalar};
use hypermat::params::ParamName::*;
use hypermat::recursions::{
    catalog, check_hypotheses, eval_rhs, eval_rhs_unchecked, Form, Hypothesis, IdentityDescriptor,
};
use hypermat::series::{evaluate, EvalPoint, FunctionKind, ParameterSet, SeriesConfig};
use rand::Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn hypermat(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hypermat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn full_verify(out: &std::path::Path) -> (Option<i32>, Duration) {
    let start = Instant::now();
    let status = hypermat(&[
        "verify",
        "--trials",
        "5",
        "--orders",
        "1,2,3",
        "--s",
        "1,2,3",
        "--seed",
        "2024",
        "--series-tol",
        "1e-12",
        "--out",
        out.to_str().unwrap(),
    ])
    .status
    .code();
    (status, start.elapsed())
}

fn campaign(dir: &std::path::Path) -> Outcome {
    let path = dir.join("campaign.json");
    let (status, elapsed) = full_verify(&path);
    let doc: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let summary = &doc["summary"];
    let worst = summary["worst_residual"].as_f64().unwrap_or(f64::INFINITY);
    let ids: std::collections::BTreeSet<&str> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    let detail = format!(
        "{} checks over {} identities, {} failed, worst residual {worst:.2e}, {:.1} s",
        summary["total"],
        ids.len(),
        summary["failed"],
        elapsed.as_secs_f64()
    );
    if status == Some(0)
        && summary["failed"] == 0
        && worst <= 1e-8
        && ids.len() == catalog().len()
        && elapsed.as_secs() < 60
    {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn scalar_reduction() -> Outcome {
    let mut rng = rng(2);
    let mut worst: f64 = 0.0;
    for kind in FunctionKind::ALL {
        for _ in 0..20 {
            let values: Vec<Scalar> = kind
                .required_names()
                .iter()
                .map(|_| c(rng.gen_range(0.5..3.0), rng.gen_range(-0.5..0.5)))
                .collect();
            let p = ParameterSet::from_list(kind, values.iter().map(|&v| Matrix::diag(&[v])).collect()).unwrap();
            let point = random_point(kind, &mut rng);
            let got = evaluate(&p, &point, &SeriesConfig::default())
                .map_err(|e| e.to_string())?
                .value[(0, 0)];
            let want = naive_scalar(kind, &values, point.x, point.y.unwrap_or_default());
            worst = worst.max((got - want).norm() / want.norm());
        }
    }
    let detail = format!("100 points, worst relative error {worst:.2e}");
    if worst <= 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn spot_checks() -> Outcome {
    let m = |v: f64| Matrix::diag_real(&[v]);
    let g = |a, b, cc, x| {
        let p = ParameterSet::from_list(FunctionKind::Gauss2F1, vec![m(a), m(b), m(cc)]).unwrap();
        evaluate(&p, &EvalPoint::real(x), &SeriesConfig::default())
            .unwrap()
            .value[(0, 0)]
    };
    let e1 = (g(1.0, 1.0, 2.0, 0.5) - c(2.0 * 2f64.ln(), 0.0)).norm();
    let e2 = (g(2.0, 1.0, 2.0, 0.3) - c(1.0 / 0.7, 0.0)).norm();
    let detail = format!("2 ln 2 off by {e1:.2e}, 1/0.7 off by {e2:.2e}");
    if e1 <= 1e-10 && e2 <= 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn diagonal_oracle_check() -> Outcome {
    let mut rng = rng(4);
    let mut worst: f64 = 0.0;
    for kind in FunctionKind::ALL {
        let (family, p) = family_params(kind, 3, 40 + kind as u64);
        for _ in 0..10 {
            let point = random_point(kind, &mut rng);
            let got = evaluate(&p, &point, &SeriesConfig::default())
                .map_err(|e| e.to_string())?
                .value;
            let want = diagonal_oracle(kind, &family, |args| {
                naive_scalar(kind, args, point.x, point.y.unwrap_or_default())
            });
            worst = worst.max(rel_err(&got, &want));
        }
    }
    let detail = format!("50 points at r = 3, worst relative error {worst:.2e}");
    if worst <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cross_form() -> Outcome {
    let cfg = SeriesConfig::default();
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    let mut kinds = std::collections::BTreeSet::new();
    for t in catalog().iter().filter(|d| d.form == Form::TelescopingSum) {
        let Some(o) = catalog().iter().find(|o| {
            matches!(o.form, Form::BinomialSum | Form::MultinomialSum)
                && o.kind == t.kind
                && o.shifted_parameter == t.shifted_parameter
                && o.direction == t.direction
        }) else {
            continue;
        };
        pairs += 1;
        kinds.insert(t.kind as u8);
        for s in 1..=3 {
            for trial in 0..5u64 {
                let seed = 97 * s as u64 + trial;
                let p = hypothesis_params(t, 2, s, seed);
                let point = random_point(t.kind, &mut rng(seed));
                let a = eval_rhs(t, &p, s, &point, &cfg).map_err(|e| format!("{}: {e}", t.id))?;
                let b = eval_rhs(o, &p, s, &point, &cfg).map_err(|e| format!("{}: {e}", o.id))?;
                worst = worst.max(rel_err(&b, &a));
            }
        }
    }
    let detail = format!(
        "{pairs} form pairs, {} functions, worst relative gap {worst:.2e}",
        kinds.len()
    );
    if worst <= 1e-9 && kinds.len() == FunctionKind::ALL.len() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn factorial_identity_residuals() -> Outcome {
    let mut worst = [0f64; 3];
    for seed in 0..10 {
        let family = random_commuting_family(3, &[A], seed).unwrap();
        let a = family.realize(A).unwrap();
        let cc = random_commuting_family_where(3, &[C], seed, |_, v| (v - c(1.0, 0.0)).norm() >= 0.1)
            .unwrap()
            .realize(C)
            .unwrap();
        let rg = frobenius_norm(&family.apply(A, reciprocal_gamma).unwrap());
        for n in 0..=10 {
            let shift = pochhammer_shift_identity_residual(&a, n).map_err(|e| e.to_string())?;
            worst[0] = worst[0].max(shift / frobenius_norm(&pochhammer(&a.shifted(1.0), n)));
            let lowered = lowered_inverse_residual(&cc, n).map_err(|e| e.to_string())?;
            let scale = frobenius_norm(PochhammerChain::with_inverses(cc.shifted(-1.0)).inverse(n).unwrap());
            worst[1] = worst[1].max(lowered / scale);
            let gamma = reciprocal_gamma_shift_residual(&family, A, n).map_err(|e| e.to_string())?;
            worst[2] = worst[2].max(gamma / rg);
        }
    }
    let detail = format!(
        "worst relative residuals: shift {:.2e}, lowered inverse {:.2e}, reciprocal gamma {:.2e}",
        worst[0], worst[1], worst[2]
    );
    if worst.iter().all(|&w| w <= 1e-9) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn gamma_limit_check() -> Outcome {
    let want = PI.sqrt() / 2.0;
    let at = |n| gamma_limit(&Matrix::diag_real(&[1.5]), n).map(|g| (g[(0, 0)] - c(want, 0.0)).norm());
    let e1 = at(10_000).map_err(|e| e.to_string())?;
    let e2 = at(20_000).map_err(|e| e.to_string())?;
    let detail = format!("error {e1:.2e} at n = 10000, {e2:.2e} at n = 20000");
    if e1 <= 1e-3 && e2 < e1 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn requires_bc(d: &IdentityDescriptor) -> bool {
    d.hypotheses
        .iter()
        .any(|h| matches!(*h, Hypothesis::Commute(B, C) | Hypothesis::Commute(C, B)))
}

fn tripwire() -> Outcome {
    let d = catalog()
        .iter()
        .find(|d| d.kind == FunctionKind::Gauss2F1 && d.form == Form::TelescopingSum && requires_bc(d))
        .ok_or("no identity requires BC = CB")?;
    let s = 2;
    let cfg = SeriesConfig::default();
    let p = hypothesis_params(d, 2, s, 8);
    // grow an off-diagonal perturbation of C until ‖BC − CB‖_F ≥ 1
    let (q, comm) = (0..40)
        .map(|k| {
            let t = 0.5 * 1.5f64.powi(k);
            let e = Matrix::from_real_rows(&[&[0.0, t], &[-0.3 * t, 0.0]]).unwrap();
            let q = p.with_replaced(C, p.get(C) + &e).unwrap();
            let comm = commutator_norm(q.get(B), q.get(C)).unwrap();
            (q, comm)
        })
        .find(|(_, comm)| *comm >= 1.0)
        .ok_or("perturbation never reached commutator norm 1")?;
    let point = EvalPoint::real(0.3);
    let rhs = eval_rhs_unchecked(d, &q, s, &point, &cfg).map_err(|e| e.to_string())?;
    let lhs = evaluate(&d.lhs_parameters(&q, s), &point, &cfg)
        .map_err(|e| e.to_string())?
        .value;
    let res = residual(&lhs, &rhs);
    let rejected = !check_hypotheses(d, &q, s);
    let detail = format!(
        "{}: commutator {comm:.2}, residual {res:.2e}, rejected {rejected}",
        d.id
    );
    if comm >= 1.0 && res > 1e-4 && rejected {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn determinism(dir: &std::path::Path) -> Outcome {
    let (a, b) = (dir.join("first.json"), dir.join("second.json"));
    full_verify(&a);
    full_verify(&b);
    let (a, b) = (
        std::fs::read(a).map_err(|e| e.to_string())?,
        std::fs::read(b).map_err(|e| e.to_string())?,
    );
    let detail = format!("two full runs, {} and {} bytes", a.len(), b.len());
    if !a.is_empty() && a == b {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        ("identity campaign", Box::new(|| campaign(dir.path()))),
        ("scalar reduction oracle", Box::new(scalar_reduction)),
        ("closed-form spot checks", Box::new(spot_checks)),
        ("diagonal oracle", Box::new(diagonal_oracle_check)),
        ("cross-form consistency", Box::new(cross_form)),
        ("factorial identity residuals", Box::new(factorial_identity_residuals)),
        ("gamma limit", Box::new(gamma_limit_check)),
        ("hypothesis tripwire", Box::new(tripwire)),
        ("determinism", Box::new(|| determinism(dir.path()))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
