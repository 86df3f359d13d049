//! Classical orthogonal polynomials: Hermite (physicists' normalization),
//! generalized Laguerre and Jacobi.
//!
//! Values come from the forward three-term recurrences. Roots come from the
//! eigenvalues of the symmetric tridiagonal Jacobi matrix of the monic
//! recurrence, polished by a few Newton steps. These roots are the reference
//! against which electrostatic equilibria are checked.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const MAX_POLISH_STEPS: usize = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrthoError {
    #[error("invalid polynomial parameter: {0}")]
    InvalidParameter(String),
    #[error("derivative order must be 1 or 2, got {0}")]
    InvalidOrder(u32),
    #[error("root finding requires degree >= 1")]
    DegreeTooLow,
    #[error("numeric failure: {0}")]
    NumericFailure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Hermite,
    Laguerre,
    Jacobi,
}

impl std::str::FromStr for Family {
    type Err = OrthoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hermite" => Ok(Family::Hermite),
            "laguerre" => Ok(Family::Laguerre),
            "jacobi" => Ok(Family::Jacobi),
            other => Err(OrthoError::InvalidParameter(format!("unknown family `{other}`"))),
        }
    }
}

/// A member of one of the classical families.
///
/// `alpha` is ignored for Hermite; `beta` is only used by Jacobi.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolynomialSpec {
    pub family: Family,
    pub degree: usize,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
}

impl PolynomialSpec {
    pub fn hermite(degree: usize) -> Self {
        Self { family: Family::Hermite, degree, alpha: 0.0, beta: 0.0 }
    }

    pub fn laguerre(degree: usize, alpha: f64) -> Self {
        Self { family: Family::Laguerre, degree, alpha, beta: 0.0 }
    }

    pub fn jacobi(degree: usize, alpha: f64, beta: f64) -> Self {
        Self { family: Family::Jacobi, degree, alpha, beta }
    }

    /// Checks weight integrability (`alpha > -1`, `beta > -1` where used).
    pub fn validate(&self) -> Result<(), OrthoError> {
        let check = |name: &str, v: f64| {
            if v.is_finite() && v > -1.0 {
                Ok(())
            } else {
                Err(OrthoError::InvalidParameter(format!("{name} must be finite and > -1, got {v}")))
            }
        };
        match self.family {
            Family::Hermite => Ok(()),
            Family::Laguerre => check("alpha", self.alpha),
            Family::Jacobi => {
                check("alpha", self.alpha)?;
                check("beta", self.beta)
            }
        }
    }

    /// Interval that contains every root of this polynomial.
    pub fn support(&self) -> (f64, f64) {
        match self.family {
            Family::Hermite => (f64::NEG_INFINITY, f64::INFINITY),
            Family::Laguerre => (0.0, f64::INFINITY),
            Family::Jacobi => (-1.0, 1.0),
        }
    }
}

/// Evaluates the polynomial at `x`.
pub fn eval(spec: &PolynomialSpec, x: f64) -> Result<f64, OrthoError> {
    spec.validate()?;
    Ok(eval_unchecked(spec.family, spec.degree, spec.alpha, spec.beta, x))
}

/// First (`order == 1`) or second (`order == 2`) derivative at `x`.
pub fn derivative_eval(spec: &PolynomialSpec, x: f64, order: u32) -> Result<f64, OrthoError> {
    if !(1..=2).contains(&order) {
        return Err(OrthoError::InvalidOrder(order));
    }
    spec.validate()?;
    Ok(derivative_unchecked(spec, x, order as usize))
}

fn derivative_unchecked(spec: &PolynomialSpec, x: f64, order: usize) -> f64 {
    let n = spec.degree;
    if order > n {
        return 0.0;
    }
    let (a, b) = (spec.alpha, spec.beta);
    let m = n - order;
    match spec.family {
        // H_n' = 2n H_{n-1}
        Family::Hermite => {
            let factor: f64 = (0..order).map(|i| 2.0 * (n - i) as f64).product();
            factor * eval_unchecked(Family::Hermite, m, 0.0, 0.0, x)
        }
        // d/dx L_n^(a) = -L_{n-1}^(a+1)
        Family::Laguerre => {
            let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * eval_unchecked(Family::Laguerre, m, a + order as f64, 0.0, x)
        }
        // d/dx P_n^(a,b) = (n+a+b+1)/2 P_{n-1}^(a+1,b+1)
        Family::Jacobi => {
            let factor: f64 = (0..order).map(|i| (n as f64 + a + b + 1.0 + i as f64) / 2.0).product();
            let shift = order as f64;
            factor * eval_unchecked(Family::Jacobi, m, a + shift, b + shift, x)
        }
    }
}

fn eval_unchecked(family: Family, n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = match family {
        Family::Hermite => 2.0 * x,
        Family::Laguerre => 1.0 + a - x,
        Family::Jacobi => (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0,
    };
    for k in 1..n {
        let kf = k as f64;
        let next = match family {
            Family::Hermite => 2.0 * x * cur - 2.0 * kf * prev,
            Family::Laguerre => ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0),
            Family::Jacobi => {
                let s = 2.0 * kf + a + b;
                let c1 = 2.0 * (kf + 1.0) * (kf + a + b + 1.0) * s;
                let c2 = (s + 1.0) * (s * (s + 2.0) * x + a * a - b * b);
                let c3 = 2.0 * (kf + a) * (kf + b) * (s + 2.0);
                (c2 * cur - c3 * prev) / c1
            }
        };
        prev = cur;
        cur = next;
    }
    cur
}

/// Diagonal and off-diagonal of the Jacobi matrix of the monic recurrence.
fn jacobi_matrix(spec: &PolynomialSpec) -> (Vec<f64>, Vec<f64>) {
    let n = spec.degree;
    let (a, b) = (spec.alpha, spec.beta);
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    match spec.family {
        Family::Hermite => {
            diag.resize(n, 0.0);
            off.extend((1..n).map(|k| (k as f64 / 2.0).sqrt()));
        }
        Family::Laguerre => {
            diag.extend((0..n).map(|k| 2.0 * k as f64 + a + 1.0));
            off.extend((1..n).map(|k| (k as f64 * (k as f64 + a)).sqrt()));
        }
        Family::Jacobi => {
            let s = a + b;
            diag.extend((0..n).map(|k| {
                if k == 0 {
                    (b - a) / (s + 2.0)
                } else {
                    let t = 2.0 * k as f64 + s;
                    (b * b - a * a) / (t * (t + 2.0))
                }
            }));
            off.extend((1..n).map(|k| {
                let kf = k as f64;
                let t = 2.0 * kf + s;
                let sq = if k == 1 {
                    // (k + s) cancels against (t - 1); written out to survive s = -1
                    4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s).powi(2) * (3.0 + s))
                } else {
                    4.0 * kf * (kf + a) * (kf + b) * (kf + s) / (t * t * (t + 1.0) * (t - 1.0))
                };
                sq.sqrt()
            }));
        }
    }
    (diag, off)
}

/// All real roots in strictly increasing order.
pub fn roots(spec: &PolynomialSpec) -> Result<Vec<f64>, OrthoError> {
    spec.validate()?;
    if spec.degree == 0 {
        return Err(OrthoError::DegreeTooLow);
    }
    let n = spec.degree;
    let (diag, off) = jacobi_matrix(spec);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
    }
    for (i, &e) in off.iter().enumerate() {
        m[(i, i + 1)] = e;
        m[(i + 1, i)] = e;
    }
    let eig = m
        .try_symmetric_eigen(f64::EPSILON, 100 * n.max(10))
        .ok_or_else(|| OrthoError::NumericFailure("tridiagonal eigensolver did not converge".into()))?;
    let mut xs: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(OrthoError::NumericFailure("non-finite eigenvalue".into()));
    }
    for x in xs.iter_mut() {
        *x = polish(spec, *x);
    }
    xs.sort_by(f64::total_cmp);
    if spec.family == Family::Hermite {
        // exact zero for odd degree; the eigensolver leaves ~1e-16
        if n % 2 == 1 {
            xs[n / 2] = 0.0;
        }
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(OrthoError::NumericFailure("roots are not strictly increasing".into()));
    }
    Ok(xs)
}

fn polish(spec: &PolynomialSpec, mut x: f64) -> f64 {
    let mut fx = eval_unchecked(spec.family, spec.degree, spec.alpha, spec.beta, x);
    for _ in 0..MAX_POLISH_STEPS {
        let d = derivative_unchecked(spec, x, 1);
        if d == 0.0 || fx == 0.0 {
            break;
        }
        let candidate = x - fx / d;
        let fc = eval_unchecked(spec.family, spec.degree, spec.alpha, spec.beta, candidate);
        if !candidate.is_finite() || fc.abs() > fx.abs() {
            break;
        }
        let moved = (candidate - x).abs();
        x = candidate;
        fx = fc;
        if moved <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// Complex polynomial stored by ascending-degree coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientPolynomial {
    coefficients: Vec<Complex64>,
}

impl CoefficientPolynomial {
    /// Trailing zero coefficients are dropped so the leading one is nonzero
    /// (the zero polynomial keeps a single zero coefficient).
    pub fn new(mut coefficients: Vec<Complex64>) -> Self {
        while coefficients.len() > 1 && coefficients.last() == Some(&Complex64::new(0.0, 0.0)) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(Complex64::new(0.0, 0.0));
        }
        Self { coefficients }
    }

    /// Monic polynomial with exactly the given roots, by repeated
    /// multiplication with linear factors.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut c = Vec::with_capacity(roots.len() + 1);
        c.push(Complex64::new(1.0, 0.0));
        for &r in roots {
            c.push(Complex64::new(0.0, 0.0));
            for i in (1..c.len()).rev() {
                c[i] = c[i - 1] - r * c[i];
            }
            c[0] = -r * c[0];
        }
        Self { coefficients: c }
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation of the `order`-th derivative at `z`.
    pub fn eval_derivative(&self, order: usize, z: Complex64) -> Complex64 {
        let c = &self.coefficients;
        if order > self.degree() {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (order..c.len()).rev() {
            let falling: f64 = (0..order).map(|i| (k - i) as f64).product();
            acc = acc * z + c[k] * falling;
        }
        acc
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_derivative(0, z)
    }
}
