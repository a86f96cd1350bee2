use crate::error::{Error, Result};
use crate::linalg::{frobenius_norm, inverse, lu_factor, solve, Matrix};

/// `(A)_n = A(A+I)⋯(A+(n−1)I)`, multiplied left to right; `(A)_0 = I`.
pub fn pochhammer(a: &Matrix, n: usize) -> Matrix {
    (0..n).fold(Matrix::identity(a.order()), |acc, k| &acc * &a.shifted(k as f64))
}

/// Grow-only table of shifted factorials of one base matrix, optionally
/// with their inverses.
///
/// `products[n] = (A)_n` and, when tracked, `inverse_products[n] = (A)_n⁻¹`.
#[derive(Debug, Clone)]
pub struct PochhammerChain {
    base: Matrix,
    products: Vec<Matrix>,
    inverse_products: Option<Vec<Matrix>>,
}

impl PochhammerChain {
    pub fn new(base: Matrix) -> Self {
        let id = Matrix::identity(base.order());
        PochhammerChain {
            base,
            products: vec![id],
            inverse_products: None,
        }
    }

    /// A chain that also tracks `(A)_n⁻¹`.
    pub fn with_inverses(base: Matrix) -> Self {
        let mut chain = Self::new(base);
        chain.inverse_products = Some(vec![Matrix::identity(chain.base.order())]);
        chain
    }

    pub fn base(&self) -> &Matrix {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.products.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ensures entries `0..=n` exist.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.products.len() <= n {
            let k = self.products.len() - 1;
            let next = &self.products[k] * &self.base.shifted(k as f64);
            self.products.push(next);
        }
        while let Some(k) = self.inverse_products.as_ref().map(Vec::len).filter(|&k| k <= n) {
            let next = pochhammer_inverse_step(self, k)?;
            if let Some(v) = self.inverse_products.as_mut() {
                v.push(next);
            }
        }
        Ok(())
    }

    pub fn product(&mut self, n: usize) -> Result<&Matrix> {
        self.extend_to(n)?;
        Ok(&self.products[n])
    }

    pub fn inverse(&mut self, n: usize) -> Result<&Matrix> {
        if self.inverse_products.is_none() {
            return Err(Error::Invalid("chain does not track inverses".into()));
        }
        self.extend_to(n)?;
        Ok(&self.inverse_products.as_ref().expect("tracked")[n])
    }

    pub fn products(&self) -> &[Matrix] {
        &self.products
    }

    pub fn inverse_products(&self) -> Option<&[Matrix]> {
        self.inverse_products.as_deref()
    }
}

/// `(C)_n⁻¹ = (C+(n−1)I)⁻¹ · (C)_{n−1}⁻¹`, formed by a linear solve against
/// the previous inverse rather than by inverting the full product.
pub fn pochhammer_inverse_step(chain: &PochhammerChain, n: usize) -> Result<Matrix> {
    let order = chain.base.order();
    if n == 0 {
        return Ok(Matrix::identity(order));
    }
    let previous = chain
        .inverse_products
        .as_ref()
        .and_then(|v| v.get(n - 1))
        .ok_or_else(|| Error::Invalid(format!("chain has no inverse of order {}", n - 1)))?;
    let factor = lu_factor(&chain.base.shifted((n - 1) as f64));
    solve(&factor, previous).map_err(|e| match e {
        Error::SingularMatrix { .. } => Error::SingularShift { n: (n - 1) as i64 },
        other => other,
    })
}

/// Normalized chain used by the series engine.
///
/// Stores `(A)_n / n!` (or `n!·(A)_n⁻¹` for inverse chains). Pulling the
/// scalar factorial into the chain keeps every entry of moderate size, so
/// terms of degree several hundred neither overflow nor underflow. The
/// matrix factors are still multiplied in exactly the same order.
#[derive(Debug, Clone)]
pub(crate) struct ScaledChain {
    base: Matrix,
    inverse: bool,
    entries: Vec<Matrix>,
}

impl ScaledChain {
    pub(crate) fn products(base: Matrix) -> Self {
        let id = Matrix::identity(base.order());
        ScaledChain {
            base,
            inverse: false,
            entries: vec![id],
        }
    }

    pub(crate) fn inverses(base: Matrix) -> Self {
        let id = Matrix::identity(base.order());
        ScaledChain {
            base,
            inverse: true,
            entries: vec![id],
        }
    }

    pub(crate) fn get(&mut self, n: usize) -> Result<&Matrix> {
        while self.entries.len() <= n {
            let k = self.entries.len() - 1;
            let step = (k + 1) as f64;
            let shifted = self.base.shifted(k as f64);
            let next = if self.inverse {
                solve(&lu_factor(&shifted), &self.entries[k])
                    .map_err(|_| Error::SingularShift { n: k as i64 })?
                    .scaled_real(step)
            } else {
                (&self.entries[k] * &shifted).scaled_real(1.0 / step)
            };
            self.entries.push(next);
        }
        Ok(&self.entries[n])
    }
}

/// `‖(A+I)_n − A⁻¹(A)_n(A+nI)‖_F`.
pub fn pochhammer_shift_identity_residual(a: &Matrix, n: usize) -> Result<f64> {
    let lhs = pochhammer(&a.shifted(1.0), n);
    let rhs = &(&inverse(a)? * &pochhammer(a, n)) * &a.shifted(n as f64);
    Ok(frobenius_norm(&(&lhs - &rhs)))
}

/// `‖(C−I)_n⁻¹ − (C)_n⁻¹[I + n(C−I)⁻¹]‖_F`.
pub fn lowered_inverse_residual(c: &Matrix, n: usize) -> Result<f64> {
    let lowered = c.shifted(-1.0);
    let mut left = PochhammerChain::with_inverses(lowered.clone());
    let mut right = PochhammerChain::with_inverses(c.clone());
    let bracket = &Matrix::identity(c.order()) + &inverse(&lowered)?.scaled_real(n as f64);
    let rhs = right.inverse(n)? * &bracket;
    Ok(frobenius_norm(&(left.inverse(n)? - &rhs)))
}

/// `‖(C−I)_{m+n}⁻¹ − (C)_{m+n}⁻¹[I + m(C−I)⁻¹ + n(C−I)⁻¹]‖_F`.
pub fn lowered_inverse_split_residual(c: &Matrix, m: usize, n: usize) -> Result<f64> {
    let lowered = c.shifted(-1.0);
    let mut left = PochhammerChain::with_inverses(lowered.clone());
    let mut right = PochhammerChain::with_inverses(c.clone());
    let inv = inverse(&lowered)?;
    let bracket = &(&Matrix::identity(c.order()) + &inv.scaled_real(m as f64)) + &inv.scaled_real(n as f64);
    let rhs = right.inverse(m + n)? * &bracket;
    Ok(frobenius_norm(&(left.inverse(m + n)? - &rhs)))
}
