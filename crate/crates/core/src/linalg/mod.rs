//! Dense complex square matrices and the handful of factorizations the rest
//! of the crate is built on.
//!
//! Parameter matrices are a few rows wide, so storage is plain row-major and
//! the algorithms are the textbook ones.

mod eigen;
mod expm;
mod lu;

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eigen::{is_positive_stable, spectrum, DESK_ORDER_LIMIT};
pub use expm::mat_exp;
pub use lu::{inverse, is_invertible, lu_factor, singularity_threshold, solve, LuFactorization};

/// Complex double-precision scalar.
pub type Scalar = Complex64;

/// A dense `r × r` complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    order: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(order: usize) -> Self {
        assert!(order >= 1, "matrix order must be positive");
        Matrix {
            order,
            data: vec![Scalar::new(0.0, 0.0); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        Self::scalar(order, Scalar::new(1.0, 0.0))
    }

    /// `value · I`.
    pub fn scalar(order: usize, value: Scalar) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = value;
        }
        m
    }

    pub fn diag(values: &[Scalar]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let values: Vec<Scalar> = values.iter().map(|&v| Scalar::new(v, 0.0)).collect();
        Self::diag(&values)
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in 0..order {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged, empty or non-finite input.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Invalid("matrix must have at least one row".into()));
        }
        let mut data = Vec::with_capacity(order * order);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::Invalid(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::Invalid(format!("entry ({i}, {j}) is not finite")));
                }
            }
            data.extend(row);
        }
        Ok(Matrix { order, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::new(v, 0.0)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.order)
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.order).map(|i| self[(i, i)]).collect()
    }

    /// `self + k·I`.
    pub fn shifted(&self, k: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.order {
            m[(i, i)] += k;
        }
        m
    }

    pub fn scaled(&self, factor: Scalar) -> Self {
        Matrix {
            order: self.order,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn scaled_real(&self, factor: f64) -> Self {
        Matrix {
            order: self.order,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_norm(self)
    }

    fn check_same_order(&self, other: &Matrix) -> Result<()> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.order + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{}) [", self.order, self.order)?;
        for row in self.rows() {
            write!(f, "  ")?;
            for v in row {
                write!(f, "{:>12.6e}{:+.6e}i  ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Order-preserving product `a · b`.
pub fn matmul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.check_same_order(b)?;
    Ok(mul_unchecked(a, b))
}

fn mul_unchecked(a: &Matrix, b: &Matrix) -> Matrix {
    let r = a.order;
    let mut out = Matrix::zeros(r);
    for i in 0..r {
        let arow = &a.data[i * r..(i + 1) * r];
        let orow = &mut out.data[i * r..(i + 1) * r];
        for (k, aik) in arow.iter().enumerate() {
            if aik.re == 0.0 && aik.im == 0.0 {
                continue;
            }
            let brow = &b.data[k * r..(k + 1) * r];
            for (o, bkj) in orow.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    out
}

/// Left-to-right product of a list of matrices. Returns `None` for an empty list.
pub fn product<'a>(factors: impl IntoIterator<Item = &'a Matrix>) -> Option<Matrix> {
    let mut it = factors.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, m| &acc * m))
}

pub fn frobenius_norm(m: &Matrix) -> f64 {
    m.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖ab − ba‖_F`.
pub fn commutator_norm(a: &Matrix, b: &Matrix) -> Result<f64> {
    let ab = matmul(a, b)?;
    let ba = mul_unchecked(b, a);
    Ok(frobenius_norm(&(&ab - &ba)))
}

// The operator impls panic on mismatched orders; fallible callers go through
// `matmul` instead.

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.order, rhs.order, "matrix order mismatch in product");
        mul_unchecked(self, rhs)
    }
}

impl Mul<Scalar> for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: Scalar) -> Matrix {
        self.scaled(rhs)
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.order, rhs.order, "matrix order mismatch in sum");
        Matrix {
            order: self.order,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.order, rhs.order, "matrix order mismatch in difference");
        Matrix {
            order: self.order,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            order: self.order,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }
}

impl AddAssign<&Matrix> for Matrix {
    fn add_assign(&mut self, rhs: &Matrix) {
        assert_eq!(self.order, rhs.order, "matrix order mismatch in sum");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}
