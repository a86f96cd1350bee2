mod common;

use common::*;
use hypermat::calculus::random_commuting_family;
use hypermat::linalg::{frobenius_norm, inverse, Matrix, Scalar};
use hypermat::params::ParamName::*;
use hypermat::series::{evaluate, EvalPoint, FunctionKind, ParameterSet, SeriesConfig};
use proptest::prelude::*;
use rand::Rng;

fn scalar_params(kind: FunctionKind, values: &[Scalar]) -> ParameterSet {
    ParameterSet::from_list(kind, values.iter().map(|&v| Matrix::diag(&[v])).collect()).unwrap()
}

#[test]
fn oracle_agrees_with_closed_forms() {
    // 2F1(1,1;2;x) = −ln(1−x)/x and F1(a,b,b';b+b';x,x) = 2F1(a, b+b'; b+b'; x) = (1−x)^−a
    let x = c(0.5, 0.0);
    assert!((naive_2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), x) - c(2.0 * 2f64.ln(), 0.0)).norm() < 1e-14);
    let f1 = naive_scalar(
        FunctionKind::AppellF1,
        &[c(1.5, 0.0), c(0.7, 0.0), c(1.1, 0.0), c(1.8, 0.0)],
        c(0.3, 0.0),
        c(0.3, 0.0),
    );
    assert!((f1 - c(0.7f64.powf(-1.5), 0.0)).norm() < 1e-13);
}

#[test]
fn scalar_reduction_matches_oracle() {
    let mut rng = rng(17);
    for kind in FunctionKind::ALL {
        for _ in 0..10 {
            let values: Vec<Scalar> = kind
                .required_names()
                .iter()
                .map(|_| c(rng.gen_range(0.5..3.0), rng.gen_range(-0.5..0.5)))
                .collect();
            let point = random_point(kind, &mut rng);
            let got = evaluate(&scalar_params(kind, &values), &point, &SeriesConfig::default()).unwrap();
            let want = naive_scalar(kind, &values, point.x, point.y.unwrap_or_default());
            let err = (got.value[(0, 0)] - want).norm() / want.norm();
            assert!(err <= 1e-10, "{kind}: {err:e}");
        }
    }
}

#[test]
fn commuting_family_matches_diagonal_oracle() {
    let mut rng = rng(29);
    for kind in FunctionKind::ALL {
        let (family, p) = family_params(kind, 3, 100 + kind as u64);
        for _ in 0..4 {
            let point = random_point(kind, &mut rng);
            let got = evaluate(&p, &point, &SeriesConfig::default()).unwrap().value;
            let want = diagonal_oracle(kind, &family, |args| {
                naive_scalar(kind, args, point.x, point.y.unwrap_or_default())
            });
            assert!(rel_err(&got, &want) <= 1e-9, "{kind}: {:e}", rel_err(&got, &want));
        }
    }
}

/// Literal `Σ (A)ₙ(B)ₙ(C)ₙ⁻¹ xⁿ/n!` with the products built factor by factor.
fn literal_gauss(a: &Matrix, b: &Matrix, cc: &Matrix, x: f64, terms: usize) -> Matrix {
    let r = a.order();
    let (mut pa, mut pb, mut pc) = (Matrix::identity(r), Matrix::identity(r), Matrix::identity(r));
    let mut sum = Matrix::identity(r);
    let mut scale = 1.0;
    for n in 0..terms {
        pa = &pa * &a.shifted(n as f64);
        pb = &pb * &b.shifted(n as f64);
        pc = &pc * &cc.shifted(n as f64);
        scale *= x / (n + 1) as f64;
        let term = &(&pa * &pb) * &inverse(&pc).unwrap();
        sum = &sum + &term.scaled_real(scale);
    }
    sum
}

#[test]
fn non_commuting_terms_keep_written_order() {
    let a = Matrix::from_real_rows(&[&[1.0, 0.8], &[0.0, 1.5]]).unwrap();
    let b = Matrix::from_real_rows(&[&[0.9, 0.0], &[0.7, 2.0]]).unwrap();
    let cc = Matrix::from_real_rows(&[&[2.5, -0.6], &[0.4, 1.7]]).unwrap();
    let x = 0.4;
    let p = ParameterSet::from_list(FunctionKind::Gauss2F1, vec![a.clone(), b.clone(), cc.clone()]).unwrap();
    let got = evaluate(&p, &EvalPoint::real(x), &SeriesConfig::default())
        .unwrap()
        .value;
    let literal = literal_gauss(&a, &b, &cc, x, 60);
    assert!(rel_err(&got, &literal) <= 1e-11);
    // the reordered series (B)ₙ(A)ₙ(C)ₙ⁻¹ is a different matrix here
    let swapped = literal_gauss(&b, &a, &cc, x, 60);
    assert!(rel_err(&swapped, &literal) > 1e-3);
}

#[test]
fn origin_gives_identity_for_every_kind() {
    for kind in FunctionKind::ALL {
        let (_, p) = family_params(kind, 3, 1);
        let point = if kind.is_bivariate() {
            EvalPoint::real2(0.0, 0.0)
        } else {
            EvalPoint::real(0.0)
        };
        let v = evaluate(&p, &point, &SeriesConfig::default()).unwrap().value;
        assert_eq!(v, Matrix::identity(3));
    }
}

#[test]
fn gauss_spot_values() {
    let one = Matrix::diag_real(&[1.0]);
    let two = Matrix::diag_real(&[2.0]);
    let p = ParameterSet::from_list(FunctionKind::Gauss2F1, vec![one.clone(), one.clone(), two.clone()]).unwrap();
    let v = evaluate(&p, &EvalPoint::real(0.5), &SeriesConfig::default())
        .unwrap()
        .value;
    assert!((v[(0, 0)] - c(2.0 * 2f64.ln(), 0.0)).norm() <= 1e-10);
    let p = ParameterSet::from_list(FunctionKind::Gauss2F1, vec![two.clone(), one, two]).unwrap();
    let v = evaluate(&p, &EvalPoint::real(0.3), &SeriesConfig::default())
        .unwrap()
        .value;
    assert!((v[(0, 0)] - c(1.0 / 0.7, 0.0)).norm() <= 1e-10);
}

fn finer_needs_more_degrees(kind: FunctionKind, seed: u64) {
    let (_, p) = family_params(kind, 2, seed);
    let point = random_point(kind, &mut rng(seed));
    let coarse = evaluate(
        &p,
        &point,
        &SeriesConfig {
            tol: 1e-6,
            ..SeriesConfig::default()
        },
    )
    .unwrap();
    let fine = evaluate(
        &p,
        &point,
        &SeriesConfig {
            tol: 1e-13,
            ..SeriesConfig::default()
        },
    )
    .unwrap();
    assert!(fine.degrees_used >= coarse.degrees_used);
    assert!(frobenius_norm(&(&coarse.value - &fine.value)) <= 1e-4 * frobenius_norm(&fine.value));
}

#[test]
fn tighter_tolerance_never_uses_fewer_degrees() {
    for kind in FunctionKind::ALL {
        for seed in 0..3 {
            finer_needs_more_degrees(kind, seed);
        }
    }
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (0.5f64..3.0, -0.5f64..0.5).prop_map(|(re, im)| c(re, im))
}

fn point_strategy(radius: f64) -> impl Strategy<Value = Scalar> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Scalar::from_polar(r, t))
}

fn close(a: &Matrix, b: &Matrix) -> bool {
    frobenius_norm(&(a - b)) <= 1e-11 * (1.0 + frobenius_norm(a))
}

proptest! {
    #![proptest_config(proptest_config(48))]

    #[test]
    fn appell_variable_symmetries(
        seed in 0u64..1000,
        x in point_strategy(0.3),
        y in point_strategy(0.3),
    ) {
        let cfg = SeriesConfig::default();
        // F1(A,B,B';C;x,y) = F1(A,B',B;C;y,x) when B, B' commute
        let fam = random_commuting_family(2, &[A, B, BPrime, C], seed).unwrap();
        let m = |n| fam.realize(n).unwrap();
        let f = |p: Vec<Matrix>, x, y| {
            evaluate(&ParameterSet::from_list(FunctionKind::AppellF1, p).unwrap(), &EvalPoint::bivariate(x, y), &cfg).unwrap().value
        };
        prop_assert!(close(&f(vec![m(A), m(B), m(BPrime), m(C)], x, y), &f(vec![m(A), m(BPrime), m(B), m(C)], y, x)));

        // F2(A,B,B';C,C';x,y) = F2(A,B',B;C',C;y,x)
        let fam = random_commuting_family(2, &[A, B, BPrime, C, CPrime], seed).unwrap();
        let m = |n| fam.realize(n).unwrap();
        let f2 = |p: Vec<Matrix>, x, y| {
            evaluate(&ParameterSet::from_list(FunctionKind::AppellF2, p).unwrap(), &EvalPoint::bivariate(x, y), &cfg).unwrap().value
        };
        prop_assert!(close(
            &f2(vec![m(A), m(B), m(BPrime), m(C), m(CPrime)], x, y),
            &f2(vec![m(A), m(BPrime), m(B), m(CPrime), m(C)], y, x)
        ));

        // F4(A,B;C,C';x,y) = F4(A,B;C',C;y,x)
        let fam = random_commuting_family(2, &[A, B, C, CPrime], seed).unwrap();
        let m = |n| fam.realize(n).unwrap();
        let (x4, y4) = (x * 0.6, y * 0.6);
        let f4 = |p: Vec<Matrix>, x, y| {
            evaluate(&ParameterSet::from_list(FunctionKind::AppellF4, p).unwrap(), &EvalPoint::bivariate(x, y), &cfg).unwrap().value
        };
        prop_assert!(close(&f4(vec![m(A), m(B), m(C), m(CPrime)], x4, y4), &f4(vec![m(A), m(B), m(CPrime), m(C)], y4, x4)));
    }

    #[test]
    fn appell_reduces_to_gauss_on_an_axis(
        a in scalar_strategy(), b in scalar_strategy(), bp in scalar_strategy(),
        cc in scalar_strategy(), cp in scalar_strategy(), x in point_strategy(0.5),
    ) {
        let want = naive_2f1(a, b, cc, x);
        let check = |kind, vals: &[Scalar]| {
            let v = evaluate(&scalar_params(kind, vals), &EvalPoint::bivariate(x, c(0.0, 0.0)), &SeriesConfig::default()).unwrap().value;
            (v[(0, 0)] - want).norm() <= 1e-10 * want.norm()
        };
        prop_assert!(check(FunctionKind::AppellF1, &[a, b, bp, cc]));
        prop_assert!(check(FunctionKind::AppellF2, &[a, b, bp, cc, cp]));
        prop_assert!(check(FunctionKind::AppellF3, &[a, bp, b, bp, cc]));
    }

    #[test]
    fn scalar_values_match_oracle(
        kind_index in 0usize..5,
        vals in proptest::collection::vec(scalar_strategy(), 5),
        seed in 0u64..10_000,
    ) {
        let kind = FunctionKind::ALL[kind_index];
        let vals = &vals[..kind.required_names().len()];
        let point = random_point(kind, &mut rng(seed));
        let got = evaluate(&scalar_params(kind, vals), &point, &SeriesConfig::default()).unwrap().value[(0, 0)];
        let want = naive_scalar(kind, vals, point.x, point.y.unwrap_or_default());
        prop_assert!((got - want).norm() <= 1e-10 * want.norm(), "{kind}: {got} vs {want}");
    }
}
