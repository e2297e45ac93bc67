//! Truncated order-2 jets: value, gradient and Hessian of a scalar at a point.

use std::ops::{Add, Mul, Neg, Sub};

/// Value, gradient and Hessian of a scalar function at one point.
///
/// The Hessian is stored as its upper triangle (row-major, `i <= j`), so
/// `hessian(i, j) == hessian(j, i)` holds bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    value: f64,
    grad: Vec<f64>,
    hess: Vec<f64>,
}

#[inline]
fn tri_index(n: usize, i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    a * n - a * (a + 1) / 2 + b
}

impl Jet {
    pub fn constant(n: usize, value: f64) -> Self {
        Self {
            value,
            grad: vec![0.0; n],
            hess: vec![0.0; n * (n + 1) / 2],
        }
    }

    /// The jet of the coordinate function `x_k` evaluated at `x_k = value`.
    pub fn variable(n: usize, k: usize, value: f64) -> Self {
        let mut jet = Self::constant(n, value);
        jet.grad[k] = 1.0;
        jet
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn gradient(&self) -> &[f64] {
        &self.grad
    }

    pub fn hessian(&self, i: usize, j: usize) -> f64 {
        self.hess[tri_index(self.dim(), i, j)]
    }

    /// Full `n x n` Hessian, row-major.
    pub fn hessian_matrix(&self) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = self.hessian(i, j);
            }
        }
        out
    }

    /// Chain rule for `f(self)` given `f(u)`, `f'(u)`, `f''(u)`.
    pub fn compose(&self, f0: f64, f1: f64, f2: f64) -> Self {
        let n = self.dim();
        let mut hess = vec![0.0; self.hess.len()];
        for i in 0..n {
            for j in i..n {
                let t = tri_index(n, i, j);
                hess[t] = f2 * self.grad[i] * self.grad[j] + f1 * self.hess[t];
            }
        }
        Self {
            value: f0,
            grad: self.grad.iter().map(|g| f1 * g).collect(),
            hess,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            value: self.value * s,
            grad: self.grad.iter().map(|g| g * s).collect(),
            hess: self.hess.iter().map(|h| h * s).collect(),
        }
    }

    pub fn recip(&self) -> Self {
        let u = self.value;
        self.compose(1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u))
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        Jet {
            value: self.value + rhs.value,
            grad: self.grad.iter().zip(&rhs.grad).map(|(a, b)| a + b).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        Jet {
            value: self.value - rhs.value,
            grad: self.grad.iter().zip(&rhs.grad).map(|(a, b)| a - b).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.dim();
        let (u, v) = (self.value, rhs.value);
        let mut hess = vec![0.0; self.hess.len()];
        for i in 0..n {
            for j in i..n {
                let t = tri_index(n, i, j);
                hess[t] = u * rhs.hess[t]
                    + v * self.hess[t]
                    + self.grad[i] * rhs.grad[j]
                    + self.grad[j] * rhs.grad[i];
            }
        }
        Jet {
            value: u * v,
            grad: self
                .grad
                .iter()
                .zip(&rhs.grad)
                .map(|(du, dv)| u * dv + v * du)
                .collect(),
            hess,
        }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule_matches_closed_form() {
        // f = x * y^2 at (2, 3)
        let x = Jet::variable(2, 0, 2.0);
        let y = Jet::variable(2, 1, 3.0);
        let f = &x * &(&y * &y);
        assert_eq!(f.value(), 18.0);
        assert_eq!(f.gradient(), &[9.0, 12.0]);
        assert_eq!(f.hessian(0, 0), 0.0);
        assert_eq!(f.hessian(0, 1), 6.0);
        assert_eq!(f.hessian(1, 0), 6.0);
        assert_eq!(f.hessian(1, 1), 4.0);
    }

    #[test]
    fn reciprocal_second_derivative() {
        let x = Jet::variable(1, 0, 2.0);
        let r = x.recip();
        assert_eq!(r.value(), 0.5);
        assert_eq!(r.gradient()[0], -0.25);
        assert_eq!(r.hessian(0, 0), 0.25);
    }
}
