//! Electrostatic equilibria of identical logarithmic charges in a rational
//! external field.
//!
//! The equilibrium system is
//!
//! ```text
//! r_j = sum_{k != j} gamma / (x_j - x_k) + Q(x_j) = 0,    j = 1..N
//! ```
//!
//! with `Q(z) = c1 z + c0 + sum_m q_m / (z - a_m)`. Positions and `gamma`
//! are complex; the classical (real) equilibria are the zeros of Hermite,
//! Laguerre and Jacobi polynomials for the fields built by
//! [`RationalField::hermite`], [`RationalField::laguerre`] and
//! [`RationalField::jacobi`].
//!
//! With a constant field `Q = P != 0` and `N >= 2` there is no equilibrium:
//! the pair terms cancel in `sum_j r_j`, which therefore equals `N P`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::orthopoly::{CoefficientPolynomial, Family, PolynomialSpec};

pub const DEFAULT_DELTA_MIN: f64 = 1e-10;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Error, Clone)]
pub enum StieltjesError {
    #[error("positions {i} and {j} are closer than {delta_min:e} (gap {gap:e})")]
    Degenerate { i: usize, j: usize, gap: f64, delta_min: f64 },
    #[error("position {index} coincides with a field pole")]
    OnPole { index: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no convergence after {iterations} iterations (best residual {best_residual:e})")]
    ConvergenceFailure {
        iterations: usize,
        best_residual: f64,
        best: Box<ChargeConfiguration>,
    },
    #[error("energy diagnostic requires real positions, strength and field")]
    NotReal,
}

/// A fixed charge of the external field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pole {
    pub location: Complex64,
    pub charge: Complex64,
}

/// `Q(z) = linear * z + constant + sum charge / (z - location)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalField {
    #[serde(default = "zero")]
    pub linear: Complex64,
    #[serde(default = "zero")]
    pub constant: Complex64,
    #[serde(default)]
    pub poles: Vec<Pole>,
}

fn zero() -> Complex64 {
    ZERO
}

impl Default for RationalField {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalField {
    pub fn new(linear: Complex64, constant: Complex64, poles: Vec<Pole>) -> Result<Self, StieltjesError> {
        let field = Self { linear, constant, poles };
        field.validate()?;
        Ok(field)
    }

    pub fn zero() -> Self {
        Self { linear: ZERO, constant: ZERO, poles: Vec::new() }
    }

    /// `Q(z) = p`.
    pub fn constant(p: Complex64) -> Self {
        Self { linear: ZERO, constant: p, poles: Vec::new() }
    }

    /// `Q(z) = -z`; equilibria at the zeros of `H_N`.
    pub fn hermite() -> Self {
        Self { linear: -ONE, constant: ZERO, poles: Vec::new() }
    }

    /// `Q(z) = (alpha + 1 - z) / (2z)`; equilibria at the zeros of `L_N^(alpha)`.
    pub fn laguerre(alpha: f64) -> Self {
        Self {
            linear: ZERO,
            constant: Complex64::new(-0.5, 0.0),
            poles: vec![Pole { location: ZERO, charge: Complex64::new((alpha + 1.0) / 2.0, 0.0) }],
        }
    }

    /// Fixed charges `(alpha+1)/2` at `+1` and `(beta+1)/2` at `-1`;
    /// equilibria at the zeros of `P_N^(alpha, beta)`.
    pub fn jacobi(alpha: f64, beta: f64) -> Self {
        Self {
            linear: ZERO,
            constant: ZERO,
            poles: vec![
                Pole { location: ONE, charge: Complex64::new((alpha + 1.0) / 2.0, 0.0) },
                Pole { location: -ONE, charge: Complex64::new((beta + 1.0) / 2.0, 0.0) },
            ],
        }
    }

    /// The field whose unit-strength equilibrium is the root set of `spec`.
    pub fn for_polynomial(spec: &PolynomialSpec) -> Self {
        match spec.family {
            Family::Hermite => Self::hermite(),
            Family::Laguerre => Self::laguerre(spec.alpha),
            Family::Jacobi => Self::jacobi(spec.alpha, spec.beta),
        }
    }

    pub fn validate(&self) -> Result<(), StieltjesError> {
        let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        if !finite(self.linear) || !finite(self.constant) {
            return Err(StieltjesError::InvalidField("non-finite coefficient".into()));
        }
        for (i, p) in self.poles.iter().enumerate() {
            if !finite(p.location) || !finite(p.charge) {
                return Err(StieltjesError::InvalidField(format!("pole {i} is not finite")));
            }
            if self.poles[..i].iter().any(|q| q.location == p.location) {
                return Err(StieltjesError::InvalidField(format!("pole {i} duplicates an earlier location")));
            }
        }
        Ok(())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.poles
            .iter()
            .fold(self.linear * z + self.constant, |acc, p| acc + p.charge / (z - p.location))
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        self.poles.iter().fold(self.linear, |acc, p| {
            let d = z - p.location;
            acc - p.charge / (d * d)
        })
    }

    /// Every coefficient multiplied by `s`.
    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            linear: self.linear * s,
            constant: self.constant * s,
            poles: self.poles.iter().map(|p| Pole { location: p.location, charge: p.charge * s }).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.linear.im == 0.0
            && self.constant.im == 0.0
            && self.poles.iter().all(|p| p.location.im == 0.0 && p.charge.im == 0.0)
    }

    /// Interval on which the default initial guess for `n` charges of
    /// strength `gamma` is laid out.
    pub fn support_hint(&self, n: usize, gamma: Complex64) -> (f64, f64) {
        let eff = self.scaled(gamma.inv());
        let n = n as f64;
        let mut real_poles: Vec<f64> = eff
            .poles
            .iter()
            .filter(|p| p.location.im == 0.0)
            .map(|p| p.location.re)
            .collect();
        real_poles.sort_by(f64::total_cmp);
        if real_poles.len() >= 2 {
            (real_poles[0], real_poles[real_poles.len() - 1])
        } else if eff.linear.re < 0.0 {
            let centre = (-eff.constant / eff.linear).re;
            let half = (2.0 * n / eff.linear.norm()).sqrt();
            (centre - half, centre + half)
        } else if real_poles.len() == 1 && eff.constant.re < 0.0 {
            let a = real_poles[0];
            (a, a + 2.0 * n / eff.constant.norm())
        } else {
            (-n.max(1.0), n.max(1.0))
        }
    }
}

/// Chebyshev points of the first kind mapped into the open interval `(a, b)`.
pub fn chebyshev_points(n: usize, a: f64, b: f64) -> Vec<Complex64> {
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    (0..n)
        .map(|j| {
            let t = -((2 * j + 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos();
            Complex64::new(mid + half * t, 0.0)
        })
        .collect()
}

/// N identical charges plus the external field they sit in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChargeConfiguration {
    pub positions: Vec<Complex64>,
    pub strength: Complex64,
    pub field: RationalField,
}

impl ChargeConfiguration {
    pub fn new(positions: Vec<Complex64>, strength: Complex64, field: RationalField) -> Result<Self, StieltjesError> {
        Self::with_delta_min(positions, strength, field, DEFAULT_DELTA_MIN)
    }

    pub fn with_delta_min(
        positions: Vec<Complex64>,
        strength: Complex64,
        field: RationalField,
        delta_min: f64,
    ) -> Result<Self, StieltjesError> {
        field.validate()?;
        check_positions(&positions, &field, delta_min)?;
        Ok(Self { positions, strength, field })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn node_polynomial(&self) -> CoefficientPolynomial {
        node_polynomial(&self.positions)
    }
}

pub(crate) fn min_gap(positions: &[Complex64]) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            let g = (positions[i] - positions[j]).norm();
            if best.is_none_or(|(_, _, b)| g < b) {
                best = Some((i, j, g));
            }
        }
    }
    best
}

fn check_positions(positions: &[Complex64], field: &RationalField, delta_min: f64) -> Result<(), StieltjesError> {
    if let Some(index) = positions.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(StieltjesError::InvalidInput(format!("position {index} is not finite")));
    }
    if let Some((i, j, gap)) = min_gap(positions) {
        if gap <= delta_min {
            return Err(StieltjesError::Degenerate { i, j, gap, delta_min });
        }
    }
    for (index, z) in positions.iter().enumerate() {
        if field.poles.iter().any(|p| (*z - p.location).norm() <= delta_min) {
            return Err(StieltjesError::OnPole { index });
        }
    }
    Ok(())
}

fn residual_raw(positions: &[Complex64], gamma: Complex64, field: &RationalField) -> Vec<Complex64> {
    positions
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let pair = positions
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .fold(ZERO, |acc, (_, &xk)| acc + (xj - xk).inv());
            gamma * pair + field.eval(xj)
        })
        .collect()
}

/// Rounding floor of the residual: the summation error bound, a multiple of
/// `n` machine epsilons times the largest sum of term magnitudes in any `r_j`.
fn roundoff_floor(positions: &[Complex64], gamma: Complex64, field: &RationalField) -> f64 {
    let g = gamma.norm();
    positions
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let pair: f64 = positions
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &xk)| (xj - xk).inv().norm())
                .sum();
            let poles: f64 = field.poles.iter().map(|p| (p.charge / (xj - p.location)).norm()).sum();
            g * pair + (field.linear * xj).norm() + field.constant.norm() + poles
        })
        .fold(0.0, f64::max)
        * (4 * (positions.len() + 2)) as f64
        * f64::EPSILON
}

/// Force-balance residual `r_j` for every charge.
pub fn residual(config: &ChargeConfiguration) -> Result<Vec<Complex64>, StieltjesError> {
    check_positions(&config.positions, &config.field, 0.0)?;
    Ok(residual_raw(&config.positions, config.strength, &config.field))
}

/// Analytic Jacobian `d r_j / d x_k` of the (holomorphic) residual map.
pub fn residual_jacobian(positions: &[Complex64], gamma: Complex64, field: &RationalField) -> DMatrix<Complex64> {
    let n = positions.len();
    let mut jac = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        let mut diag = field.derivative(positions[j]);
        for k in 0..n {
            if k == j {
                continue;
            }
            let d = positions[j] - positions[k];
            let t = gamma / (d * d);
            jac[(j, k)] = t;
            diag -= t;
        }
        jac[(j, j)] = diag;
    }
    jac
}

fn inf_norm(r: &[Complex64]) -> f64 {
    r.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn l2_norm(r: &[Complex64]) -> f64 {
    r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub delta_min: f64,
    pub max_halvings: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER, delta_min: DEFAULT_DELTA_MIN, max_halvings: 40 }
    }
}

fn sort_positions(xs: &mut [Complex64]) {
    xs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Damped Newton solve of the equilibrium system for `n` charges.
///
/// Converged once `max |r_j| <= tol`, or once it is below the rounding floor
/// of the residual sums when that floor is larger.
///
/// Returned positions are sorted by real part, then imaginary part.
pub fn solve_equilibrium(
    field: &RationalField,
    n: usize,
    gamma: Complex64,
    init: Option<&[Complex64]>,
    opts: &SolverOptions,
) -> Result<ChargeConfiguration, StieltjesError> {
    field.validate()?;
    if n == 0 {
        return Err(StieltjesError::InvalidInput("need at least one charge".into()));
    }
    if gamma == ZERO {
        return Err(StieltjesError::InvalidInput("strength must be nonzero".into()));
    }
    let mut x: Vec<Complex64> = match init {
        Some(v) if v.len() != n => {
            return Err(StieltjesError::InvalidInput(format!("init has {} positions, expected {n}", v.len())))
        }
        Some(v) => v.to_vec(),
        None => {
            let (a, b) = field.support_hint(n, gamma);
            chebyshev_points(n, a, b)
        }
    };
    check_positions(&x, field, opts.delta_min)?;

    let finish = |mut x: Vec<Complex64>| {
        sort_positions(&mut x);
        ChargeConfiguration { positions: x, strength: gamma, field: field.clone() }
    };

    let mut r = residual_raw(&x, gamma, field);
    let mut rnorm = l2_norm(&r);
    let converged = |x: &[Complex64], r: &[Complex64]| inf_norm(r) <= opts.tol.max(roundoff_floor(x, gamma, field));
    for iter in 0..opts.max_iter {
        if converged(&x, &r) {
            log::debug!("equilibrium converged in {iter} iterations");
            return Ok(finish(x));
        }
        let jac = residual_jacobian(&x, gamma, field);
        let rhs = DMatrix::from_iterator(n, 1, r.iter().map(|z| -z));
        let step = jac.lu().solve(&rhs);
        let Some(step) = step.filter(|s| s.iter().all(|z| z.re.is_finite() && z.im.is_finite())) else {
            break;
        };
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..=opts.max_halvings {
            let trial: Vec<Complex64> = x.iter().zip(step.iter()).map(|(xi, s)| xi + s * lambda).collect();
            if check_positions(&trial, field, opts.delta_min).is_ok() {
                let rt = residual_raw(&trial, gamma, field);
                let tn = l2_norm(&rt);
                if tn.is_finite() && tn < rnorm * (1.0 - 1e-4 * lambda) {
                    x = trial;
                    r = rt;
                    rnorm = tn;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            log::debug!("line search stalled at iteration {iter}, residual {:e}", inf_norm(&r));
            break;
        }
    }
    if converged(&x, &r) {
        return Ok(finish(x));
    }
    Err(StieltjesError::ConvergenceFailure {
        iterations: opts.max_iter,
        best_residual: inf_norm(&r),
        best: Box::new(finish(x)),
    })
}

/// One equilibrium problem of a batch.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumCase {
    pub field: RationalField,
    pub n: usize,
    pub gamma: Complex64,
}

/// Solves many independent problems; results come back in input order.
pub fn solve_many(
    cases: &[EquilibriumCase],
    opts: &SolverOptions,
    exec: Execution,
) -> Vec<Result<ChargeConfiguration, StieltjesError>> {
    exec.map_slice(cases, |c| solve_equilibrium(&c.field, c.n, c.gamma, None, opts))
}

/// Monic polynomial whose roots are `positions`.
pub fn node_polynomial(positions: &[Complex64]) -> CoefficientPolynomial {
    CoefficientPolynomial::from_roots(positions)
}

/// Node polynomial re-centred on `positions[j]`; its degree-1 and degree-2
/// coefficients are `f'(x_j)` and `f''(x_j) / 2`.
fn centred_derivatives(positions: &[Complex64], j: usize) -> (Complex64, Complex64) {
    let shifted: Vec<Complex64> = positions.iter().map(|&x| x - positions[j]).collect();
    let g = node_polynomial(&shifted);
    let c = g.coefficients();
    let at = |k: usize| c.get(k).copied().unwrap_or(ZERO);
    (at(1), at(2) * 2.0)
}

/// Both sides of `sum_{k != j} 1/(x_j - x_k) = f''(x_j) / (2 f'(x_j))`.
///
/// The left side is summed directly. The right side comes from the node
/// polynomial expanded about `x_j`, which keeps the low-order coefficients
/// accurate even when the plain power-basis expansion would be
/// ill-conditioned.
pub fn identity_check(positions: &[Complex64], j: usize) -> Result<(Complex64, Complex64), StieltjesError> {
    if j >= positions.len() {
        return Err(StieltjesError::InvalidInput(format!("index {j} out of range")));
    }
    check_positions(positions, &RationalField::zero(), 0.0)?;
    let lhs = positions
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .fold(ZERO, |acc, (_, &xk)| acc + (positions[j] - xk).inv());
    let (d1, d2) = centred_derivatives(positions, j);
    Ok((lhs, d2 / (d1 * 2.0)))
}

/// `f''(z_j) + 2 (P / gamma) f'(z_j)` for each position, `f` the node polynomial.
///
/// Equals `(2 f'(z_j) / gamma) * r_j` for the constant-field residual, so it
/// vanishes exactly where that residual does.
pub fn node_ode_residual(config: &ChargeConfiguration, p: Complex64) -> Vec<Complex64> {
    let ratio = p / config.strength;
    (0..config.positions.len())
        .map(|j| {
            let (d1, d2) = centred_derivatives(&config.positions, j);
            d2 + ratio * d1 * 2.0
        })
        .collect()
}

/// Result of a constant-field multi-start search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub config: ChargeConfiguration,
    pub residual_inf: f64,
    pub residual_l2: f64,
    pub residual_sum: Complex64,
    pub restart: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    pub seed: u64,
    pub iterations: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { restarts: 20, seed: 0, iterations: 200 }
    }
}

/// Multi-start Levenberg-Marquardt minimization of `||r||_2` for `n`
/// charges in the constant field `Q = p`.
///
/// Fails only for `n = 0`. For `n >= 2` and `p != 0` the pair terms cancel in the sum of
/// the residuals, so every configuration has `sum r = n p` and the best
/// infinity norm can only approach `|p|` from above.
pub fn constant_background_search(
    n: usize,
    p: Complex64,
    gamma: Complex64,
    opts: &SearchOptions,
    exec: Execution,
) -> Result<SearchOutcome, StieltjesError> {
    if n == 0 {
        return Err(StieltjesError::InvalidInput("need at least one charge".into()));
    }
    if gamma == ZERO {
        return Err(StieltjesError::InvalidInput("strength must be nonzero".into()));
    }
    let field = RationalField::constant(p);
    let scale = if p == ZERO { n as f64 } else { (n as f64 * gamma.norm() / p.norm()).max(1.0) };
    let restarts = opts.restarts.max(1);
    let runs = exec.map_indices(restarts, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
        let init = random_distinct(&mut rng, n, scale);
        let x = levenberg_marquardt(init, gamma, &field, opts.iterations);
        let r = residual_raw(&x, gamma, &field);
        (x, r)
    });
    let (restart, (x, r)) = runs
        .into_iter()
        .enumerate()
        .min_by(|(_, (_, a)), (_, (_, b))| l2_norm(a).total_cmp(&l2_norm(b)))
        .expect("at least one restart");
    let mut positions = x;
    sort_positions(&mut positions);
    Ok(SearchOutcome {
        residual_inf: inf_norm(&r),
        residual_l2: l2_norm(&r),
        residual_sum: r.iter().sum(),
        config: ChargeConfiguration { positions, strength: gamma, field },
        restart,
    })
}

fn random_distinct(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(n);
    while out.len() < n {
        let z = Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
        if out.iter().all(|w| (z - w).norm() > 1e-3 * scale) {
            out.push(z);
        }
    }
    out
}

fn levenberg_marquardt(mut x: Vec<Complex64>, gamma: Complex64, field: &RationalField, iterations: usize) -> Vec<Complex64> {
    let n = x.len();
    let mut r = residual_raw(&x, gamma, field);
    let mut cost = l2_norm(&r);
    let mut mu = 1e-3;
    for _ in 0..iterations {
        if cost == 0.0 {
            break;
        }
        let jac = residual_jacobian(&x, gamma, field);
        let jh = jac.adjoint();
        let normal = &jh * &jac;
        let grad = &jh * DMatrix::from_iterator(n, 1, r.iter().copied());
        let mut improved = false;
        for _ in 0..30 {
            let mut damped = normal.clone();
            for i in 0..n {
                damped[(i, i)] += Complex64::new(mu * (1.0 + normal[(i, i)].re), 0.0);
            }
            let Some(step) = damped.lu().solve(&(-&grad)) else {
                mu *= 10.0;
                continue;
            };
            let trial: Vec<Complex64> = x.iter().zip(step.iter()).map(|(a, s)| a + s).collect();
            let ok = trial.iter().all(|z| z.re.is_finite() && z.im.is_finite())
                && min_gap(&trial).is_none_or(|(_, _, g)| g > DEFAULT_DELTA_MIN);
            if ok {
                let rt = residual_raw(&trial, gamma, field);
                let ct = l2_norm(&rt);
                if ct < cost {
                    x = trial;
                    r = rt;
                    cost = ct;
                    mu = (mu / 3.0).max(1e-12);
                    improved = true;
                    break;
                }
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    x
}

/// Logarithmic energy of a real configuration,
/// `-gamma sum_{j<k} log|x_j - x_k| - sum_j Phi(x_j)` with `Phi' = Q`.
///
/// Diagnostic only; its gradient with respect to `x_j` is `-r_j`.
pub fn log_energy(config: &ChargeConfiguration) -> Result<f64, StieltjesError> {
    if config.strength.im != 0.0 || !config.field.is_real() || config.positions.iter().any(|z| z.im != 0.0) {
        return Err(StieltjesError::NotReal);
    }
    check_positions(&config.positions, &config.field, 0.0)?;
    let g = config.strength.re;
    let xs: Vec<f64> = config.positions.iter().map(|z| z.re).collect();
    let f = &config.field;
    let mut e = 0.0;
    for i in 0..xs.len() {
        for k in i + 1..xs.len() {
            e -= g * (xs[i] - xs[k]).abs().ln();
        }
        let x = xs[i];
        let phi = f.linear.re * x * x / 2.0
            + f.constant.re * x
            + f.poles.iter().map(|p| p.charge.re * (x - p.location.re).abs().ln()).sum::<f64>();
        e -= phi;
    }
    Ok(e)
}
