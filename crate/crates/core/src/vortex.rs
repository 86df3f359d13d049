//! Point vortices in the plane with an optional background flow.
//!
//! Positions are complex, `z = x + i y`, and the equations of motion are
//! written for the conjugate velocity,
//!
//! ```text
//! d conj(z_a) / dt = sum_{b != a} G_b / (z_a - z_b) + W(z_a)
//! ```
//!
//! with no `1 / (2 pi i)` prefactor. Under this convention a real strength
//! pushes a pair apart along the line joining it (radial motion), while a
//! purely imaginary strength makes it co-rotate at fixed separation, which is
//! the usual hydrodynamic vortex. Equilibria of the electrostatic problem in
//! [`crate::stieltjes`] are stationary points of these dynamics.

use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::stieltjes::{min_gap, ChargeConfiguration, RationalField, DEFAULT_DELTA_MIN};

/// Pairwise gap below which integration aborts.
pub const COLLISION_DELTA: f64 = 1e-8;
const MAX_STEPS: f64 = 1e10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Error, Clone)]
pub enum VortexError {
    #[error("vortices {i} and {j} are closer than {delta_min:e} (gap {gap:e})")]
    Degenerate { i: usize, j: usize, gap: f64, delta_min: f64 },
    #[error("vortex {0} has zero strength")]
    ZeroStrength(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("vortex {0} has a complex strength; pass allow_complex_gamma to integrate anyway")]
    ComplexStrength(usize),
    #[error("collision at t = {time} (gap {gap:e}); trajectory truncated")]
    Collision { time: f64, gap: f64, partial: Box<Trajectory> },
    #[error("{0} steps exceeds the step budget")]
    StepOverflow(f64),
    #[error(transparent)]
    Field(#[from] crate::stieltjes::StieltjesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vortex {
    pub position: Complex64,
    pub strength: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VortexSystem {
    pub vortices: Vec<Vortex>,
    #[serde(default)]
    pub background: RationalField,
    #[serde(default)]
    pub time: f64,
}

impl VortexSystem {
    pub fn new(vortices: Vec<Vortex>, background: RationalField) -> Result<Self, VortexError> {
        let system = Self { vortices, background, time: 0.0 };
        system.validate(DEFAULT_DELTA_MIN)?;
        Ok(system)
    }

    /// Identical strengths at the charge positions, with the field as background.
    pub fn from_configuration(config: &ChargeConfiguration) -> Result<Self, VortexError> {
        let vortices = config
            .positions
            .iter()
            .map(|&position| Vortex { position, strength: config.strength })
            .collect();
        Self::new(vortices, config.field.clone())
    }

    pub fn validate(&self, delta_min: f64) -> Result<(), VortexError> {
        self.background.validate()?;
        for (i, v) in self.vortices.iter().enumerate() {
            let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
            if !finite(v.position) || !finite(v.strength) {
                return Err(VortexError::InvalidInput(format!("vortex {i} is not finite")));
            }
            if v.strength == ZERO {
                return Err(VortexError::ZeroStrength(i));
            }
        }
        if let Some((i, j, gap)) = min_gap(&self.positions()) {
            if gap <= delta_min {
                return Err(VortexError::Degenerate { i, j, gap, delta_min });
            }
        }
        Ok(())
    }

    pub fn positions(&self) -> Vec<Complex64> {
        self.vortices.iter().map(|v| v.position).collect()
    }

    pub fn strengths(&self) -> Vec<Complex64> {
        self.vortices.iter().map(|v| v.strength).collect()
    }

    pub fn len(&self) -> usize {
        self.vortices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vortices.is_empty()
    }

    /// The same state with every strength and the background negated; its
    /// forward evolution is the backward evolution of `self`.
    pub fn reversed(&self) -> Self {
        Self {
            vortices: self.vortices.iter().map(|v| Vortex { position: v.position, strength: -v.strength }).collect(),
            background: self.background.scaled(Complex64::new(-1.0, 0.0)),
            time: self.time,
        }
    }
}

fn conj_velocity_at(a: usize, z: &[Complex64], strengths: &[Complex64], background: &RationalField) -> Complex64 {
    let za = z[a];
    let mut acc = ZERO;
    for (b, (&zb, &g)) in z.iter().zip(strengths).enumerate() {
        if b != a {
            acc += g / (za - zb);
        }
    }
    acc + background.eval(za)
}

fn conj_velocities(z: &[Complex64], strengths: &[Complex64], background: &RationalField, exec: Execution) -> Vec<Complex64> {
    exec.map_indices(z.len(), |a| conj_velocity_at(a, z, strengths, background))
}

/// Conjugate velocity `d conj(z_a)/dt` of every vortex.
pub fn velocity(system: &VortexSystem) -> Result<Vec<Complex64>, VortexError> {
    velocity_with(system, Execution::default())
}

pub fn velocity_with(system: &VortexSystem, exec: Execution) -> Result<Vec<Complex64>, VortexError> {
    system.validate(0.0)?;
    Ok(conj_velocities(&system.positions(), &system.strengths(), &system.background, exec))
}

/// `(dx/dt, dy/dt)` per vortex from the real two-coordinate form
/// `dx_a/dt = sum G_b (x_a - x_b) / l_ab^2` (and likewise for `y`), plus the
/// background. Requires real strengths.
pub fn velocity_components(system: &VortexSystem) -> Result<Vec<(f64, f64)>, VortexError> {
    system.validate(0.0)?;
    if let Some(i) = system.vortices.iter().position(|v| v.strength.im != 0.0) {
        return Err(VortexError::ComplexStrength(i));
    }
    Ok(system
        .vortices
        .iter()
        .enumerate()
        .map(|(a, va)| {
            let (mut dx, mut dy) = (0.0, 0.0);
            for (b, vb) in system.vortices.iter().enumerate() {
                if a == b {
                    continue;
                }
                let rx = va.position.re - vb.position.re;
                let ry = va.position.im - vb.position.im;
                let l2 = rx * rx + ry * ry;
                dx += vb.strength.re * rx / l2;
                dy += vb.strength.re * ry / l2;
            }
            let w = system.background.eval(va.position).conj();
            (dx + w.re, dy + w.im)
        })
        .collect())
}

/// `sum_a G_a z_a`.
pub fn linear_impulse(system: &VortexSystem) -> Complex64 {
    system.vortices.iter().map(|v| v.strength * v.position).sum()
}

fn impulse_of(z: &[Complex64], strengths: &[Complex64]) -> Complex64 {
    z.iter().zip(strengths).map(|(z, g)| g * z).sum()
}

/// `sum_{a<b} Re(G_a G_b) log|z_a - z_b|`; a diagnostic, not an invariant of
/// the radial convention.
fn interaction(z: &[Complex64], strengths: &[Complex64]) -> f64 {
    let mut e = 0.0;
    for a in 0..z.len() {
        for b in a + 1..z.len() {
            e += (strengths[a] * strengths[b]).re * (z[a] - z[b]).norm().ln();
        }
    }
    e
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    pub t_end: f64,
    pub dt: f64,
    pub output_stride: usize,
    pub delta_min: f64,
    pub allow_complex_gamma: bool,
    pub exec: Execution,
}

impl IntegrateOptions {
    pub fn new(t_end: f64, dt: f64) -> Self {
        Self {
            t_end,
            dt,
            output_stride: 1,
            delta_min: COLLISION_DELTA,
            allow_complex_gamma: false,
            exec: Execution::default(),
        }
    }
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self::new(1.0, 1e-3)
    }
}

/// Sampled states of an integration run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<Complex64>>,
    pub impulse: Vec<Complex64>,
    pub interaction: Vec<f64>,
}

impl Trajectory {
    fn push(&mut self, t: f64, z: &[Complex64], strengths: &[Complex64]) {
        self.times.push(t);
        self.states.push(z.to_vec());
        self.impulse.push(impulse_of(z, strengths));
        self.interaction.push(interaction(z, strengths));
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_state(&self) -> Option<&[Complex64]> {
        self.states.last().map(Vec::as_slice)
    }

    /// Largest `|z_a(t) - z_a(t0)|` over all samples and vortices.
    pub fn max_displacement(&self) -> f64 {
        let Some(first) = self.states.first() else { return 0.0 };
        self.states
            .iter()
            .flat_map(|s| s.iter().zip(first).map(|(a, b)| (a - b).norm()))
            .fold(0.0, f64::max)
    }

    /// Largest `|I(t) - I(t0)|` of the linear impulse.
    pub fn impulse_drift(&self) -> f64 {
        let Some(first) = self.impulse.first() else { return 0.0 };
        self.impulse.iter().map(|i| (i - first).norm()).fold(0.0, f64::max)
    }

    /// CSV with columns `t, x_1, y_1, ..., x_N, y_N, impulse_re, impulse_im`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let n = self.states.first().map_or(0, Vec::len);
        let mut header = vec!["t".to_string()];
        for a in 1..=n {
            header.push(format!("x_{a}"));
            header.push(format!("y_{a}"));
        }
        header.push("impulse_re".into());
        header.push("impulse_im".into());
        writeln!(out, "{}", header.join(","))?;
        for ((t, s), i) in self.times.iter().zip(&self.states).zip(&self.impulse) {
            write!(out, "{t:e}")?;
            for z in s {
                write!(out, ",{:e},{:e}", z.re, z.im)?;
            }
            writeln!(out, ",{:e},{:e}", i.re, i.im)?;
        }
        Ok(())
    }
}

/// Fixed-step classical Runge-Kutta integration from `system.time` to
/// `opts.t_end`.
///
/// The step is shrunk slightly so that a whole number of steps lands on
/// `t_end`. Samples are taken every `output_stride` steps plus the final
/// state. If two vortices come within `opts.delta_min` the run stops and the
/// samples gathered so far come back inside [`VortexError::Collision`].
pub fn integrate(system: &VortexSystem, opts: &IntegrateOptions) -> Result<Trajectory, VortexError> {
    system.validate(opts.delta_min)?;
    if !(opts.dt > 0.0 && opts.dt.is_finite()) {
        return Err(VortexError::InvalidInput(format!("dt must be positive, got {}", opts.dt)));
    }
    let span = opts.t_end - system.time;
    if !(span > 0.0 && span.is_finite()) {
        return Err(VortexError::InvalidInput(format!("t_end {} must exceed start time {}", opts.t_end, system.time)));
    }
    if !opts.allow_complex_gamma {
        if let Some(i) = system.vortices.iter().position(|v| v.strength.im != 0.0) {
            return Err(VortexError::ComplexStrength(i));
        }
    }
    let steps = (span / opts.dt - 1e-9).ceil().max(1.0);
    if steps > MAX_STEPS {
        return Err(VortexError::StepOverflow(steps));
    }
    let steps = steps as u64;
    let h = span / steps as f64;
    let stride = opts.output_stride.max(1) as u64;

    let strengths = system.strengths();
    let bg = &system.background;
    let rhs = |z: &[Complex64]| -> Vec<Complex64> {
        conj_velocities(z, &strengths, bg, opts.exec).into_iter().map(|v| v.conj()).collect()
    };
    let axpy = |z: &[Complex64], k: &[Complex64], s: f64| -> Vec<Complex64> {
        z.iter().zip(k).map(|(a, b)| a + b * s).collect()
    };

    let mut z = system.positions();
    let mut traj = Trajectory::default();
    traj.push(system.time, &z, &strengths);
    let mut gap_before = min_gap(&z).map_or(f64::INFINITY, |(_, _, g)| g);
    for step in 1..=steps {
        let k1 = rhs(&z);
        let k2 = rhs(&axpy(&z, &k1, h / 2.0));
        let k3 = rhs(&axpy(&z, &k2, h / 2.0));
        let k4 = rhs(&axpy(&z, &k3, h));
        let mut largest_move: f64 = 0.0;
        for (i, zi) in z.iter_mut().enumerate() {
            let dz = (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
            largest_move = largest_move.max(dz.norm());
            *zi += dz;
        }
        let t = system.time + step as f64 * h;
        let gap = min_gap(&z).map_or(f64::INFINITY, |(_, _, g)| g);
        // a step comparable to the closest gap means the pair passed through
        // (or past) each other between samples
        let overshoot = largest_move >= 0.5 * gap_before;
        gap_before = gap;
        if gap < opts.delta_min || overshoot || z.iter().any(|w| !(w.re.is_finite() && w.im.is_finite())) {
            log::info!("collision guard tripped at t = {t}");
            return Err(VortexError::Collision { time: t, gap, partial: Box::new(traj) });
        }
        if step % stride == 0 || step == steps {
            traj.push(if step == steps { opts.t_end } else { t }, &z, &strengths);
        }
    }
    Ok(traj)
}

type ValueFn = dyn Fn(&[Complex64]) -> Complex64 + Send + Sync;
type GradFn = dyn Fn(&[Complex64]) -> Vec<(Complex64, Complex64)> + Send + Sync;

/// A function of the vortex coordinates together with its partial
/// derivatives `(d/dx_a, d/dy_a)` for every vortex.
#[derive(Clone)]
pub struct Observable {
    value: Arc<ValueFn>,
    grad: Arc<GradFn>,
}

impl std::fmt::Debug for Observable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Observable")
    }
}

impl Observable {
    pub fn new<V, G>(value: V, grad: G) -> Self
    where
        V: Fn(&[Complex64]) -> Complex64 + Send + Sync + 'static,
        G: Fn(&[Complex64]) -> Vec<(Complex64, Complex64)> + Send + Sync + 'static,
    {
        Self { value: Arc::new(value), grad: Arc::new(grad) }
    }

    fn single(index: usize, dx: Complex64, dy: Complex64, value: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self::new(
            move |z| value(z[index]),
            move |z| {
                let mut g = vec![(ZERO, ZERO); z.len()];
                g[index] = (dx, dy);
                g
            },
        )
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(move |_| c, |z| vec![(ZERO, ZERO); z.len()])
    }

    /// `z_a`.
    pub fn position(a: usize) -> Self {
        Self::single(a, Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), |z| z)
    }

    /// `conj(z_a)`.
    pub fn conj_position(a: usize) -> Self {
        Self::single(a, Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0), |z| z.conj())
    }

    pub fn x(a: usize) -> Self {
        Self::single(a, Complex64::new(1.0, 0.0), ZERO, |z| Complex64::new(z.re, 0.0))
    }

    pub fn y(a: usize) -> Self {
        Self::single(a, ZERO, Complex64::new(1.0, 0.0), |z| Complex64::new(z.im, 0.0))
    }

    /// `sum_a x_a`.
    pub fn sum_x() -> Self {
        Self::new(
            |z| Complex64::new(z.iter().map(|w| w.re).sum(), 0.0),
            |z| vec![(Complex64::new(1.0, 0.0), ZERO); z.len()],
        )
    }

    /// `sum_a y_a`.
    pub fn sum_y() -> Self {
        Self::new(
            |z| Complex64::new(z.iter().map(|w| w.im).sum(), 0.0),
            |z| vec![(ZERO, Complex64::new(1.0, 0.0)); z.len()],
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (f, g) = (self.clone(), other.clone());
        let (f2, g2) = (self.clone(), other.clone());
        Self::new(
            move |z| f.value(z) + g.value(z),
            move |z| {
                f2.gradient(z)
                    .into_iter()
                    .zip(g2.gradient(z))
                    .map(|((a, b), (c, d))| (a + c, b + d))
                    .collect()
            },
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (f, g) = (self.clone(), other.clone());
        let (f2, g2) = (self.clone(), other.clone());
        Self::new(
            move |z| f.value(z) * g.value(z),
            move |z| {
                let (fv, gv) = (f2.value(z), g2.value(z));
                f2.gradient(z)
                    .into_iter()
                    .zip(g2.gradient(z))
                    .map(|((fx, fy), (gx, gy))| (fx * gv + fv * gx, fy * gv + fv * gy))
                    .collect()
            },
        )
    }

    pub fn value(&self, z: &[Complex64]) -> Complex64 {
        (self.value)(z)
    }

    pub fn gradient(&self, z: &[Complex64]) -> Vec<(Complex64, Complex64)> {
        (self.grad)(z)
    }
}

/// `[f, g] = sum_a G_a (df/dx_a dg/dy_a - df/dy_a dg/dx_a)` at the current state.
pub fn bracket(f: &Observable, g: &Observable, system: &VortexSystem) -> Complex64 {
    let z = system.positions();
    let gf = f.gradient(&z);
    let gg = g.gradient(&z);
    system
        .vortices
        .iter()
        .zip(gf.iter().zip(&gg))
        .map(|(v, ((fx, fy), (gx, gy)))| v.strength * (fx * gy - fy * gx))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pair(gamma: Complex64) -> VortexSystem {
        VortexSystem::new(
            vec![Vortex { position: c(1.0, 0.0), strength: gamma }, Vortex { position: c(-1.0, 0.0), strength: gamma }],
            RationalField::zero(),
        )
        .unwrap()
    }

    #[test]
    fn pair_velocity() {
        let v = velocity(&pair(c(1.0, 0.0))).unwrap();
        assert_eq!(v, vec![c(0.5, 0.0), c(-0.5, 0.0)]);
    }

    #[test]
    fn invalid_systems() {
        let same = vec![
            Vortex { position: c(0.0, 0.0), strength: c(1.0, 0.0) },
            Vortex { position: c(0.0, 0.0), strength: c(1.0, 0.0) },
        ];
        assert!(matches!(VortexSystem::new(same, RationalField::zero()), Err(VortexError::Degenerate { .. })));
        let zero = vec![Vortex { position: c(0.0, 0.0), strength: c(0.0, 0.0) }];
        assert!(matches!(VortexSystem::new(zero, RationalField::zero()), Err(VortexError::ZeroStrength(0))));
    }

    #[test]
    fn integrate_argument_checks() {
        let s = pair(c(1.0, 0.0));
        assert!(matches!(integrate(&s, &IntegrateOptions::new(1.0, 0.0)), Err(VortexError::InvalidInput(_))));
        assert!(matches!(integrate(&s, &IntegrateOptions::new(-1.0, 0.1)), Err(VortexError::InvalidInput(_))));
        assert!(matches!(integrate(&s, &IntegrateOptions::new(1e3, 1e-8)), Err(VortexError::StepOverflow(_))));
        let rot = pair(c(0.0, 1.0));
        assert!(matches!(integrate(&rot, &IntegrateOptions::new(1.0, 0.1)), Err(VortexError::ComplexStrength(0))));
    }

    #[test]
    fn stride_and_endpoint_sampling() {
        let mut o = IntegrateOptions::new(1.0, 0.1);
        o.output_stride = 3;
        let t = integrate(&pair(c(1.0, 0.0)), &o).unwrap();
        assert_eq!(t.times.len(), 5);
        assert_eq!(*t.times.last().unwrap(), 1.0);
        assert!(t.times.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn attracting_pair_collides() {
        // radial convention: equal negative strengths attract, |d|^2 = 1 - 4t
        let s = VortexSystem::new(
            vec![Vortex { position: c(0.5, 0.0), strength: c(-1.0, 0.0) }, Vortex { position: c(-0.5, 0.0), strength: c(-1.0, 0.0) }],
            RationalField::zero(),
        )
        .unwrap();
        match integrate(&s, &IntegrateOptions::new(5.0, 1e-3)) {
            Err(VortexError::Collision { time, partial, .. }) => {
                assert!(time < 0.26);
                assert!(!partial.is_empty());
            }
            other => panic!("expected collision, got {other:?}"),
        }
    }

    #[test]
    fn single_vortex_in_constant_background() {
        let p = c(0.3, -0.7);
        let g = c(2.0, 0.0);
        let s = VortexSystem::new(vec![Vortex { position: c(0.1, 0.2), strength: g }], RationalField::constant(p)).unwrap();
        let t = integrate(&s, &IntegrateOptions::new(2.0, 0.01)).unwrap();
        let rate = (t.impulse.last().unwrap() - t.impulse[0]) / 2.0;
        assert_abs_diff_eq!(rate.re, (g * p.conj()).re, epsilon = 1e-13);
        assert_abs_diff_eq!(rate.im, (g * p.conj()).im, epsilon = 1e-13);
    }

    #[test]
    fn components_match_conjugate_velocity() {
        let s = VortexSystem::new(
            vec![
                Vortex { position: c(0.3, 1.2), strength: c(1.5, 0.0) },
                Vortex { position: c(-0.4, 0.1), strength: c(-0.6, 0.0) },
                Vortex { position: c(1.1, -0.8), strength: c(0.9, 0.0) },
            ],
            RationalField::hermite(),
        )
        .unwrap();
        let v = velocity(&s).unwrap();
        let comps = velocity_components(&s).unwrap();
        for (w, (dx, dy)) in v.iter().zip(comps) {
            assert_abs_diff_eq!(w.re, dx, epsilon = 1e-14);
            assert_abs_diff_eq!(-w.im, dy, epsilon = 1e-14);
        }
    }

    #[test]
    fn kirchhoff_brackets() {
        let s = VortexSystem::new(
            vec![
                Vortex { position: c(0.3, 1.2), strength: c(1.5, 0.0) },
                Vortex { position: c(-0.4, 0.1), strength: c(-0.6, 0.2) },
            ],
            RationalField::zero(),
        )
        .unwrap();
        for a in 0..2 {
            let want = c(0.0, -2.0) * s.vortices[a].strength;
            assert_eq!(bracket(&Observable::position(a), &Observable::conj_position(a), &s), want);
        }
        assert_eq!(bracket(&Observable::position(0), &Observable::conj_position(1), &s), c(0.0, 0.0));
        assert_eq!(bracket(&Observable::position(0), &Observable::position(1), &s), c(0.0, 0.0));
        assert_eq!(bracket(&Observable::position(1), &Observable::position(1), &s), c(0.0, 0.0));
        let total: Complex64 = s.strengths().iter().sum();
        assert_eq!(bracket(&Observable::sum_x(), &Observable::sum_y(), &s), total);
    }

    #[test]
    fn imaginary_strength_bracket() {
        let hbar = 0.37;
        let g = c(0.0, -hbar);
        let s = VortexSystem::new(vec![Vortex { position: c(0.2, 0.1), strength: g }], RationalField::zero()).unwrap();
        let b = bracket(&Observable::position(0), &Observable::conj_position(0), &s);
        assert_abs_diff_eq!(b.re, -2.0 * hbar, epsilon = 1e-15);
        assert_eq!(b.im, 0.0);
    }

    #[test]
    fn csv_layout() {
        let t = integrate(&pair(c(1.0, 0.0)), &IntegrateOptions::new(0.2, 0.1)).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "t,x_1,y_1,x_2,y_2,impulse_re,impulse_im");
        assert_eq!(lines.count(), 3);
    }
}
