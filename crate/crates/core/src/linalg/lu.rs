use super::{frobenius_norm, Matrix, Scalar};
use crate::error::{Error, Result};

/// Partial-pivoting LU factorization `P·M = L·U`, packed in one matrix.
///
/// `pivots[i]` is the row of the original matrix that ended up in row `i`.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    pub lu: Matrix,
    pub pivots: Vec<usize>,
    pub min_pivot_magnitude: f64,
    /// Frobenius norm of the factored matrix, kept for the singularity test.
    pub source_norm: f64,
}

/// Pivots smaller than `1e-12·max(1, ‖M‖_F)` mark the matrix as singular.
pub fn singularity_threshold(norm: f64) -> f64 {
    1e-12 * norm.max(1.0)
}

impl LuFactorization {
    pub fn order(&self) -> usize {
        self.lu.order()
    }

    pub fn is_singular(&self) -> bool {
        self.min_pivot_magnitude < singularity_threshold(self.source_norm)
    }

    /// Multiplies the factors back together and undoes the row permutation.
    pub fn reconstruct(&self) -> Matrix {
        let r = self.order();
        let l = Matrix::from_fn(r, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.lu[(i, j)],
            std::cmp::Ordering::Equal => Scalar::new(1.0, 0.0),
            std::cmp::Ordering::Less => Scalar::new(0.0, 0.0),
        });
        let u = Matrix::from_fn(r, |i, j| if i <= j { self.lu[(i, j)] } else { Scalar::new(0.0, 0.0) });
        let pa = &l * &u;
        let mut out = Matrix::zeros(r);
        for (i, &src) in self.pivots.iter().enumerate() {
            for j in 0..r {
                out[(src, j)] = pa[(i, j)];
            }
        }
        out
    }
}

pub fn lu_factor(m: &Matrix) -> LuFactorization {
    let r = m.order();
    let mut lu = m.clone();
    let mut pivots: Vec<usize> = (0..r).collect();
    let mut min_pivot = f64::INFINITY;

    for k in 0..r {
        let (p, best) = (k..r)
            .map(|i| (i, lu[(i, k)].norm()))
            .fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        min_pivot = min_pivot.min(best);
        if p != k {
            for j in 0..r {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
            pivots.swap(k, p);
        }
        if best == 0.0 {
            continue;
        }
        let pivot = lu[(k, k)];
        for i in (k + 1)..r {
            let factor = lu[(i, k)] / pivot;
            lu[(i, k)] = factor;
            if factor.re == 0.0 && factor.im == 0.0 {
                continue;
            }
            for j in (k + 1)..r {
                let u = lu[(k, j)];
                lu[(i, j)] -= factor * u;
            }
        }
    }

    LuFactorization {
        lu,
        pivots,
        min_pivot_magnitude: min_pivot,
        source_norm: frobenius_norm(m),
    }
}

/// Solves `M·X = rhs` for a matrix right-hand side.
pub fn solve(f: &LuFactorization, rhs: &Matrix) -> Result<Matrix> {
    let r = f.order();
    if rhs.order() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: rhs.order(),
        });
    }
    if f.is_singular() {
        return Err(Error::SingularMatrix {
            min_pivot: f.min_pivot_magnitude,
            threshold: singularity_threshold(f.source_norm),
        });
    }
    let lu = &f.lu;
    let mut x = Matrix::from_fn(r, |i, j| rhs[(f.pivots[i], j)]);
    for col in 0..r {
        for i in 1..r {
            let mut acc = x[(i, col)];
            for k in 0..i {
                acc -= lu[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = acc;
        }
        for i in (0..r).rev() {
            let mut acc = x[(i, col)];
            for k in (i + 1)..r {
                acc -= lu[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = acc / lu[(i, i)];
        }
    }
    Ok(x)
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    solve(&lu_factor(m), &Matrix::identity(m.order()))
}

pub fn is_invertible(m: &Matrix) -> bool {
    !lu_factor(m).is_singular()
}
