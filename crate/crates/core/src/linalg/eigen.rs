use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// Largest order accepted by [`spectrum`].
pub const DESK_ORDER_LIMIT: usize = 8;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Eigenvalues of a small complex matrix, sorted by real then imaginary part.
///
/// Householder reduction to upper Hessenberg form followed by single-shift
/// complex QR sweeps with Wilkinson shifts and standard deflation.
pub fn spectrum(m: &Matrix) -> Result<Vec<Scalar>> {
    let n = m.order();
    if n > DESK_ORDER_LIMIT {
        return Err(Error::Invalid(format!(
            "spectrum supports order <= {DESK_ORDER_LIMIT}, got {n}"
        )));
    }
    if !m.is_finite() {
        return Err(Error::Invalid("spectrum of a non-finite matrix".into()));
    }
    let mut h = m.clone();
    hessenberg(&mut h);
    let mut eig = qr_iterate(&mut h)?;
    eig.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(eig)
}

/// True iff every eigenvalue has strictly positive real part.
pub fn is_positive_stable(m: &Matrix) -> Result<bool> {
    Ok(spectrum(m)?.iter().all(|l| l.re > 0.0))
}

fn hessenberg(h: &mut Matrix) {
    let n = h.order();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let alpha_norm = ((k + 1)..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Scalar::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        // v = x + phase·‖x‖·e1 avoids cancellation in the leading entry
        let mut v: Vec<Scalar> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        v[0] += phase * alpha_norm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H ← (I − 2vvᴴ) H
        for j in 0..n {
            let dot: Scalar = v.iter().enumerate().map(|(t, vi)| vi.conj() * h[(k + 1 + t, j)]).sum();
            for (t, vi) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= vi * dot * 2.0;
            }
        }
        // H ← H (I − 2vvᴴ)
        for i in 0..n {
            let dot: Scalar = v.iter().enumerate().map(|(t, vi)| h[(i, k + 1 + t)] * vi).sum();
            for (t, vi) in v.iter().enumerate() {
                h[(i, k + 1 + t)] -= dot * vi.conj() * 2.0;
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = Scalar::new(0.0, 0.0);
        }
    }
}

fn wilkinson_shift(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Scalar {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let (l1, l2) = (mid + disc, mid - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn qr_iterate(h: &mut Matrix) -> Result<Vec<Scalar>> {
    let n = h.order();
    let scale = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut eig = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut sweeps = 0usize;

    while hi > 0 {
        // find the start of the unreduced block ending at `hi`
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let s = if s == 0.0 { scale } else { s };
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = Scalar::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig.push(h[(hi, hi)]);
            hi -= 1;
            sweeps = 0;
            continue;
        }

        sweeps += 1;
        if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::NonConvergent(format!(
                "QR iteration stalled at row {hi} after {MAX_SWEEPS_PER_EIGENVALUE} sweeps"
            )));
        }
        let mut shift = wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
        if sweeps.is_multiple_of(11) {
            // exceptional shift to break symmetric stalls
            shift = h[(hi, hi)] + Scalar::new(0.75 * h[(hi, hi - 1)].norm(), 0.0);
        }
        qr_sweep(h, lo, hi, shift);
    }
    eig.push(h[(0, 0)]);
    Ok(eig)
}

/// One shifted QR step `H − μI = QR, H ← RQ + μI` on the window `lo..=hi`.
fn qr_sweep(h: &mut Matrix, lo: usize, hi: usize, shift: Scalar) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let a = h[(k, k)];
        let b = h[(k + 1, k)];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (Scalar::new(1.0, 0.0), Scalar::new(0.0, 0.0))
        } else {
            (a / r, b / r)
        };
        // rows k, k+1 ← [[c̄, s̄], [−s, c]] · rows
        for j in k..=hi {
            let (x, y) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = c.conj() * x + s.conj() * y;
            h[(k + 1, j)] = -s * x + c * y;
        }
        rotations.push((c, s));
    }
    for (offset, (c, s)) in rotations.into_iter().enumerate() {
        let k = lo + offset;
        // columns k, k+1 ← columns · [[c, −s̄], [s, c̄]]
        for i in lo..=(k + 1).min(hi) {
            let (x, y) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = x * c + y * s;
            h[(i, k + 1)] = -x * s.conj() + y * c.conj();
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}
