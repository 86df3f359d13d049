//! Quantum Hamilton-Jacobi layer for the harmonic oscillator.
//!
//! The quantum momentum function `p = -i hbar psi'/psi` satisfies the Riccati
//! equation `p^2 - i hbar p' = 2m (E - V)`. For a bound state with `n` nodes it
//! has `n` simple poles of residue `-i hbar` plus a smooth part, and the pole
//! positions are the equilibrium of `n` charges of strength `-i hbar` in the
//! smooth part taken as external field. [`solve_bound_state`] solves exactly
//! that imaginary-charge problem.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stieltjes::{self, RationalField, SolverOptions, StieltjesError};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Error, Clone)]
pub enum QhjError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("wavefunction vanishes at x = {0}; the momentum function has a pole there")]
    Node(f64),
    #[error("x = {0} is at a pole of the momentum function")]
    AtPole(f64),
    #[error(transparent)]
    Solver(#[from] StieltjesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Potential {
    Harmonic { mass: f64, omega: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumProblem {
    pub potential: Potential,
    pub hbar: f64,
    pub level: usize,
}

impl QuantumProblem {
    pub fn harmonic(mass: f64, omega: f64, hbar: f64, level: usize) -> Result<Self, QhjError> {
        let p = Self { potential: Potential::Harmonic { mass, omega }, hbar, level };
        p.validate()?;
        Ok(p)
    }

    /// Natural units, `hbar = m = omega = 1`.
    pub fn unit_oscillator(level: usize) -> Self {
        Self { potential: Potential::Harmonic { mass: 1.0, omega: 1.0 }, hbar: 1.0, level }
    }

    pub fn validate(&self) -> Result<(), QhjError> {
        let Potential::Harmonic { mass, omega } = self.potential;
        for (name, v) in [("mass", mass), ("omega", omega), ("hbar", self.hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(QhjError::InvalidProblem(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn mass(&self) -> f64 {
        match self.potential {
            Potential::Harmonic { mass, .. } => mass,
        }
    }

    pub fn potential_at(&self, x: f64) -> f64 {
        match self.potential {
            Potential::Harmonic { mass, omega } => 0.5 * mass * omega * omega * x * x,
        }
    }

    /// `sqrt(hbar / (m omega))`.
    pub fn length_scale(&self) -> f64 {
        match self.potential {
            Potential::Harmonic { mass, omega } => (self.hbar / (mass * omega)).sqrt(),
        }
    }

    /// Smooth part of the momentum function, `i m omega x`; this branch makes
    /// the ground state decay.
    pub fn smooth_part(&self) -> RationalField {
        match self.potential {
            Potential::Harmonic { mass, omega } => RationalField {
                linear: I * (mass * omega),
                constant: ZERO,
                poles: Vec::new(),
            },
        }
    }

    /// `(n + 1/2) hbar omega`.
    pub fn energy(&self) -> f64 {
        match self.potential {
            Potential::Harmonic { omega, .. } => (self.level as f64 + 0.5) * self.hbar * omega,
        }
    }
}

/// `p(x) = sum_k s / (x - x_k) + Q(x)` with common pole residue `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumFunction {
    pub poles: Vec<Complex64>,
    pub pole_strength: Complex64,
    pub smooth: RationalField,
}

impl MomentumFunction {
    pub fn new(poles: Vec<Complex64>, hbar: f64, smooth: RationalField) -> Result<Self, QhjError> {
        smooth.validate()?;
        for (i, a) in poles.iter().enumerate() {
            if poles[..i].iter().any(|b| b == a) {
                return Err(QhjError::InvalidProblem(format!("pole {i} is repeated")));
            }
            if smooth.poles.iter().any(|p| p.location == *a) {
                return Err(QhjError::InvalidProblem(format!("smooth part is singular at pole {i}")));
            }
        }
        Ok(Self { poles, pole_strength: -I * hbar, smooth })
    }

    fn check(&self, x: f64) -> Result<Complex64, QhjError> {
        let z = Complex64::new(x, 0.0);
        if self.poles.contains(&z) {
            return Err(QhjError::AtPole(x));
        }
        Ok(z)
    }

    pub fn eval(&self, x: f64) -> Result<Complex64, QhjError> {
        let z = self.check(x)?;
        Ok(self.poles.iter().fold(self.smooth.eval(z), |acc, &a| acc + self.pole_strength / (z - a)))
    }

    pub fn derivative(&self, x: f64) -> Result<Complex64, QhjError> {
        let z = self.check(x)?;
        Ok(self.poles.iter().fold(self.smooth.derivative(z), |acc, &a| {
            let d = z - a;
            acc - self.pole_strength / (d * d)
        }))
    }
}

/// `-i hbar psi'(x) / psi(x)`.
pub fn qmf_from_wavefunction<F, G>(psi: F, psi_prime: G, x: f64, hbar: f64) -> Result<Complex64, QhjError>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    let v = psi(x);
    if v == ZERO {
        return Err(QhjError::Node(x));
    }
    Ok(-I * hbar * psi_prime(x) / v)
}

/// `p^2 - i hbar p' - 2m (E - V(x))`.
pub fn riccati_residual(p: &MomentumFunction, problem: &QuantumProblem, energy: f64, x: f64) -> Result<Complex64, QhjError> {
    let pv = p.eval(x)?;
    let dp = p.derivative(x)?;
    Ok(pv * pv - I * problem.hbar * dp - 2.0 * problem.mass() * (energy - problem.potential_at(x)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundState {
    pub poles: Vec<f64>,
    pub energy: f64,
    pub momentum: MomentumFunction,
}

/// Poles, energy and momentum function of level `problem.level`.
///
/// The poles are the equilibrium of `n` charges of strength `-i hbar` in the
/// field `i m omega x`.
pub fn solve_bound_state(problem: &QuantumProblem) -> Result<BoundState, QhjError> {
    problem.validate()?;
    let smooth = problem.smooth_part();
    let n = problem.level;
    let poles: Vec<Complex64> = if n == 0 {
        Vec::new()
    } else {
        let gamma = -I * problem.hbar;
        let opts = SolverOptions {
            // residual is measured in units of hbar / length
            tol: stieltjes::DEFAULT_TOL * problem.hbar / problem.length_scale(),
            ..SolverOptions::default()
        };
        stieltjes::solve_equilibrium(&smooth, n, gamma, None, &opts)?.positions
    };
    let scale = problem.length_scale();
    if let Some(z) = poles.iter().find(|z| z.im.abs() > 1e-9 * scale) {
        return Err(QhjError::InvalidProblem(format!("pole left the real axis: {z}")));
    }
    let real: Vec<f64> = poles.iter().map(|z| z.re).collect();
    let momentum = MomentumFunction::new(real.iter().map(|&x| Complex64::new(x, 0.0)).collect(), problem.hbar, smooth)?;
    Ok(BoundState { poles: real, energy: problem.energy(), momentum })
}

fn gaussian(problem: &QuantumProblem, x: f64) -> f64 {
    let s = problem.length_scale();
    (-0.5 * (x / s).powi(2)).exp()
}

/// Unnormalized `prod (x - x_k) exp(-m omega x^2 / (2 hbar))`.
pub fn wavefunction_from_poles(poles: &[f64], problem: &QuantumProblem, x: f64) -> Complex64 {
    let f: f64 = poles.iter().map(|&a| x - a).product();
    Complex64::new(f * gaussian(problem, x), 0.0)
}

/// Derivative of [`wavefunction_from_poles`] with respect to `x`.
pub fn wavefunction_derivative_from_poles(poles: &[f64], problem: &QuantumProblem, x: f64) -> Complex64 {
    let f: f64 = poles.iter().map(|&a| x - a).product();
    let df: f64 = (0..poles.len())
        .map(|k| poles.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &a)| x - a).product::<f64>())
        .sum();
    let s = problem.length_scale();
    Complex64::new((df - x / (s * s) * f) * gaussian(problem, x), 0.0)
}

/// Largest `|riccati_residual|` on `[-6, 6]` (in units of the oscillator
/// length) sampled every 0.01, skipping points within 0.1 of a pole.
pub fn max_riccati_residual(state: &BoundState, problem: &QuantumProblem) -> Result<f64, QhjError> {
    let s = problem.length_scale();
    let mut worst: f64 = 0.0;
    for i in 0..=1200 {
        let x = (-6.0 + i as f64 * 0.01) * s;
        if state.poles.iter().any(|&a| (x - a).abs() < 0.1 * s) {
            continue;
        }
        worst = worst.max(riccati_residual(&state.momentum, problem, state.energy, x)?.norm());
    }
    Ok(worst)
}
