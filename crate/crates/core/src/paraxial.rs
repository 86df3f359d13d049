//! Scalar beam propagation on a periodic transverse grid.
//!
//! Two propagators share one FFT path:
//!
//! * [`paraxial_propagate`] advances an envelope `u` under
//!   `u_xx + u_yy + 2ik u_z = 0` by the exact spectral multiplier
//!   `exp(-i (kx^2 + ky^2) dz / (2k))`;
//! * [`helmholtz_propagate`] advances a full field `psi` under
//!   `lap psi + k^2 psi = 0` with the angular-spectrum multiplier
//!   `exp(i dz sqrt(k^2 - kx^2 - ky^2))`, evanescent components decaying.
//!
//! The carrier convention is `psi = u exp(ikz)`. Boundaries are periodic, so
//! callers keep the beam well inside the grid.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;

const TAU: f64 = std::f64::consts::TAU;
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Error)]
pub enum ParaxialError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("sampling would alias: {0}")]
    Aliasing(String),
    #[error("field file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Complex amplitude on a uniform `nx x ny` grid, row-major with `x` fastest:
/// sample `(ix, iy)` lives at `amplitude[iy * nx + ix]` and sits at
/// `x = (ix - nx/2) dx`, `y = (iy - ny/2) dy`.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamField {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub k: f64,
    pub z: f64,
    pub amplitude: Vec<Complex64>,
}

impl BeamField {
    pub fn new(nx: usize, ny: usize, dx: f64, dy: f64, k: f64, z: f64, amplitude: Vec<Complex64>) -> Result<Self, ParaxialError> {
        let f = Self { nx, ny, dx, dy, k, z, amplitude };
        f.validate()?;
        Ok(f)
    }

    /// Samples `f(x, y)` at every grid point.
    pub fn from_fn<F>(nx: usize, ny: usize, dx: f64, dy: f64, k: f64, z: f64, f: F) -> Result<Self, ParaxialError>
    where
        F: Fn(f64, f64) -> Complex64,
    {
        let mut amplitude = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            let y = (iy as f64 - (ny / 2) as f64) * dy;
            for ix in 0..nx {
                let x = (ix as f64 - (nx / 2) as f64) * dx;
                amplitude.push(f(x, y));
            }
        }
        Self::new(nx, ny, dx, dy, k, z, amplitude)
    }

    pub fn validate(&self) -> Result<(), ParaxialError> {
        for (name, n) in [("nx", self.nx), ("ny", self.ny)] {
            if n < 8 || !n.is_power_of_two() {
                return Err(ParaxialError::InvalidGrid(format!("{name} = {n} must be a power of two >= 8")));
            }
        }
        for (name, v) in [("dx", self.dx), ("dy", self.dy), ("k", self.k)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ParaxialError::InvalidGrid(format!("{name} = {v} must be positive")));
            }
        }
        if !self.z.is_finite() {
            return Err(ParaxialError::InvalidGrid("z must be finite".into()));
        }
        if self.amplitude.len() != self.nx * self.ny {
            return Err(ParaxialError::InvalidGrid(format!(
                "{} samples for a {}x{} grid",
                self.amplitude.len(),
                self.nx,
                self.ny
            )));
        }
        Ok(())
    }

    pub fn x(&self, ix: usize) -> f64 {
        (ix as f64 - (self.nx / 2) as f64) * self.dx
    }

    pub fn y(&self, iy: usize) -> f64 {
        (iy as f64 - (self.ny / 2) as f64) * self.dy
    }

    pub fn at(&self, ix: usize, iy: usize) -> Complex64 {
        self.amplitude[iy * self.nx + ix]
    }

    /// Discrete L2 norm, `sqrt(sum |u|^2 dx dy)`.
    pub fn norm(&self) -> f64 {
        (self.amplitude.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.dx * self.dy).sqrt()
    }

    /// `||self - other|| / ||other||` over the samples.
    pub fn relative_l2_error(&self, other: &BeamField) -> f64 {
        relative_l2(&self.amplitude, &other.amplitude)
    }
}

pub fn relative_l2(a: &[Complex64], reference: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(reference).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = reference.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

/// Angular frequency of FFT bin `i` out of `n` with spacing `d`.
fn frequency(i: usize, n: usize, d: f64) -> f64 {
    let signed = if i < n / 2 { i as f64 } else { i as f64 - n as f64 };
    TAU * signed / (n as f64 * d)
}

fn transpose(src: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); src.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = src[r * cols + c];
        }
    }
    out
}

fn fft_rows(data: &mut [Complex64], len: usize, fft: &dyn Fft<f64>, exec: Execution) {
    exec.for_each_chunk_mut(data, len, |row| fft.process(row));
}

/// In-place 2-D transform of a row-major `nx x ny` array. The inverse is
/// normalized so that forward-then-inverse is the identity.
fn fft2(data: &mut Vec<Complex64>, nx: usize, ny: usize, inverse: bool, exec: Execution) {
    let mut planner = FftPlanner::<f64>::new();
    let (row_fft, col_fft) = if inverse {
        (planner.plan_fft_inverse(nx), planner.plan_fft_inverse(ny))
    } else {
        (planner.plan_fft_forward(nx), planner.plan_fft_forward(ny))
    };
    fft_rows(data, nx, row_fft.as_ref(), exec);
    let mut t = transpose(data, ny, nx);
    fft_rows(&mut t, ny, col_fft.as_ref(), exec);
    *data = transpose(&t, nx, ny);
    if inverse {
        let scale = 1.0 / (nx * ny) as f64;
        data.iter_mut().for_each(|v| *v *= scale);
    }
}

/// Forward transform, per-frequency multiply, inverse transform.
fn apply_multiplier<M>(field: &BeamField, dz: f64, exec: Execution, multiplier: M) -> BeamField
where
    M: Fn(f64, f64) -> Complex64 + Sync + Send,
{
    let (nx, ny) = (field.nx, field.ny);
    let mut data = field.amplitude.clone();
    fft2(&mut data, nx, ny, false, exec);
    let kx: Vec<f64> = (0..nx).map(|i| frequency(i, nx, field.dx)).collect();
    let ky: Vec<f64> = (0..ny).map(|i| frequency(i, ny, field.dy)).collect();
    let rows = exec.map_indices(ny, |iy| (0..nx).map(|ix| multiplier(kx[ix], ky[iy])).collect::<Vec<_>>());
    for (row, mult) in data.chunks_mut(nx).zip(rows) {
        for (v, m) in row.iter_mut().zip(mult) {
            *v *= m;
        }
    }
    fft2(&mut data, nx, ny, true, exec);
    BeamField { nx, ny, dx: field.dx, dy: field.dy, k: field.k, z: field.z + dz, amplitude: data }
}

pub fn paraxial_propagate(field: &BeamField, dz: f64) -> BeamField {
    paraxial_propagate_with(field, dz, Execution::default())
}

pub fn paraxial_propagate_with(field: &BeamField, dz: f64, exec: Execution) -> BeamField {
    let k = field.k;
    apply_multiplier(field, dz, exec, |kx, ky| (-I * ((kx * kx + ky * ky) * dz / (2.0 * k))).exp())
}

/// Angular-spectrum step of a full field; `dz` must be non-negative.
pub fn helmholtz_propagate(field: &BeamField, dz: f64) -> Result<BeamField, ParaxialError> {
    helmholtz_propagate_with(field, dz, Execution::default())
}

pub fn helmholtz_propagate_with(field: &BeamField, dz: f64, exec: Execution) -> Result<BeamField, ParaxialError> {
    if !(dz >= 0.0 && dz.is_finite()) {
        return Err(ParaxialError::InvalidArgument(format!("helmholtz step dz = {dz} must be >= 0")));
    }
    let k2 = field.k * field.k;
    Ok(apply_multiplier(field, dz, exec, |kx, ky| {
        let kt2 = kx * kx + ky * ky;
        if kt2 <= k2 {
            (I * (dz * (k2 - kt2).sqrt())).exp()
        } else {
            Complex64::new((-dz * (kt2 - k2).sqrt()).exp(), 0.0)
        }
    }))
}

/// `psi = u exp(ikz)` at the field's own `z`.
pub fn envelope_to_full(field: &BeamField) -> BeamField {
    carrier(field, 1.0)
}

/// `u = psi exp(-ikz)`.
pub fn full_to_envelope(field: &BeamField) -> BeamField {
    carrier(field, -1.0)
}

fn carrier(field: &BeamField, sign: f64) -> BeamField {
    let phase = Complex64::from_polar(1.0, sign * field.k * field.z);
    BeamField {
        amplitude: field.amplitude.iter().map(|a| a * phase).collect(),
        ..*field
    }
}

/// `k w0^2 / 2`.
pub fn rayleigh_range(w0: f64, k: f64) -> f64 {
    k * w0 * w0 / 2.0
}

/// 1/e amplitude radius `w0 sqrt(1 + (z/z_R)^2)`.
pub fn beam_width(w0: f64, k: f64, z: f64) -> f64 {
    w0 * (1.0 + (z / rayleigh_range(w0, k)).powi(2)).sqrt()
}

/// On-axis phase lag `atan(z / z_R)` relative to the carrier.
pub fn gouy_phase(w0: f64, k: f64, z: f64) -> f64 {
    (z / rayleigh_range(w0, k)).atan()
}

/// Fundamental Gaussian envelope with waist `w0` at `z = 0`, unit peak there.
///
/// Written through the complex beam parameter `q = z - i z_R`:
/// `u = -i z_R / q * exp(i k r^2 / (2q))`, which carries the width,
/// wavefront curvature and Gouy phase.
pub fn gaussian_reference(w0: f64, k: f64, z: f64, x: f64, y: f64) -> Complex64 {
    let zr = rayleigh_range(w0, k);
    let q = Complex64::new(z, -zr);
    let r2 = x * x + y * y;
    (-I * zr / q) * (I * k * r2 / (q * 2.0)).exp()
}

/// [`gaussian_reference`] sampled on a square grid.
pub fn gaussian_field(n: usize, dx: f64, w0: f64, k: f64, z: f64) -> Result<BeamField, ParaxialError> {
    if !(w0 > 0.0) {
        return Err(ParaxialError::InvalidArgument(format!("waist w0 = {w0} must be positive")));
    }
    BeamField::from_fn(n, n, dx, dx, k, z, |x, y| gaussian_reference(w0, k, z, x, y))
}

/// Gaussian envelope with waist `w0` sampled on the grid of `like`, at its `z`.
pub fn gaussian_field_like(like: &BeamField, w0: f64) -> BeamField {
    let (k, z) = (like.k, like.z);
    let amplitude = (0..like.ny)
        .flat_map(|iy| (0..like.nx).map(move |ix| (ix, iy)))
        .map(|(ix, iy)| gaussian_reference(w0, k, z, like.x(ix), like.y(iy)))
        .collect();
    BeamField { amplitude, ..like.clone() }
}

/// 1-D paraxial step of a line of samples (one transverse dimension),
/// optionally zeroing frequencies above `band_limit`.
pub fn paraxial_propagate_line(samples: &[Complex64], dx: f64, k: f64, dz: f64, band_limit: Option<f64>) -> Vec<Complex64> {
    let n = samples.len();
    let mut planner = FftPlanner::<f64>::new();
    let mut data = samples.to_vec();
    planner.plan_fft_forward(n).process(&mut data);
    for (i, v) in data.iter_mut().enumerate() {
        let kx = frequency(i, n, dx);
        if band_limit.is_some_and(|b| kx.abs() > b) {
            *v = Complex64::new(0.0, 0.0);
        } else {
            *v *= (-I * (kx * kx * dz / (2.0 * k))).exp();
        }
    }
    planner.plan_fft_inverse(n).process(&mut data);
    let scale = 1.0 / n as f64;
    data.iter_mut().for_each(|v| *v *= scale);
    data
}

/// Two-slit far-field experiment parameters (SI or any consistent units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubleSlit {
    pub wavelength: f64,
    pub separation: f64,
    pub slit_width: f64,
    pub distance: f64,
    /// Full width of the screen window; defaults to `2 wavelength distance / slit_width`.
    pub screen_extent: Option<f64>,
    pub samples: usize,
}

impl DoubleSlit {
    pub fn new(wavelength: f64, separation: f64, slit_width: f64, distance: f64) -> Self {
        Self { wavelength, separation, slit_width, distance, screen_extent: None, samples: 2001 }
    }

    pub fn extent(&self) -> f64 {
        self.screen_extent
            .unwrap_or(2.0 * self.wavelength * self.distance / self.slit_width)
    }

    /// Expected far-field fringe period `wavelength distance / separation`.
    pub fn fringe_period(&self) -> f64 {
        self.wavelength * self.distance / self.separation
    }

    pub fn validate(&self) -> Result<(), ParaxialError> {
        for (name, v) in [
            ("wavelength", self.wavelength),
            ("separation", self.separation),
            ("slit width", self.slit_width),
            ("distance", self.distance),
            ("screen extent", self.extent()),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ParaxialError::Geometry(format!("{name} = {v} must be positive")));
            }
        }
        if self.slit_width >= self.separation {
            return Err(ParaxialError::Geometry(format!(
                "slit width {} must be smaller than the separation {}",
                self.slit_width, self.separation
            )));
        }
        let fresnel = (self.separation + self.slit_width).powi(2) / (self.wavelength * self.distance);
        if fresnel > 1.0 {
            return Err(ParaxialError::Geometry(format!(
                "screen is not in the far field (aperture Fresnel number {fresnel:.3} > 1)"
            )));
        }
        if self.samples < 16 {
            return Err(ParaxialError::Geometry(format!("need at least 16 screen samples, got {}", self.samples)));
        }
        Ok(())
    }
}

/// Sampled screen intensity, normalized to a unit maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityProfile {
    pub positions: Vec<f64>,
    pub intensity: Vec<f64>,
}

impl IntensityProfile {
    pub fn sample_spacing(&self) -> f64 {
        self.positions[1] - self.positions[0]
    }

    /// Two-column CSV `position,intensity`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "position,intensity")?;
        for (x, i) in self.positions.iter().zip(&self.intensity) {
            writeln!(out, "{x:e},{i:e}")?;
        }
        Ok(())
    }

    /// Fringe period from the positions of the dark fringes.
    ///
    /// Interior local minima are refined by a parabola through three samples
    /// and a straight line is fit through position against fringe order.
    pub fn fringe_spacing(&self) -> Option<f64> {
        let v = &self.intensity;
        let h = self.sample_spacing();
        let mut minima = Vec::new();
        for i in 1..v.len().saturating_sub(1) {
            if v[i] < v[i - 1] && v[i] <= v[i + 1] {
                let denom = v[i - 1] - 2.0 * v[i] + v[i + 1];
                let shift = if denom > 0.0 { 0.5 * (v[i - 1] - v[i + 1]) / denom } else { 0.0 };
                minima.push(self.positions[i] + shift * h);
            }
        }
        if minima.len() < 2 {
            return None;
        }
        let n = minima.len() as f64;
        let mean_i = (n - 1.0) / 2.0;
        let mean_x = minima.iter().sum::<f64>() / n;
        let (mut sxy, mut sxx) = (0.0, 0.0);
        for (i, x) in minima.iter().enumerate() {
            let di = i as f64 - mean_i;
            sxy += di * (x - mean_x);
            sxx += di * di;
        }
        Some(sxy / sxx)
    }
}

/// Largest 1-D grid the double-slit simulation will allocate.
pub const MAX_LINE_SAMPLES: usize = 1 << 22;

/// Propagates a two-slit aperture to the screen with the 1-D paraxial
/// propagator and samples the intensity across the screen window.
pub fn double_slit(geometry: &DoubleSlit) -> Result<IntensityProfile, ParaxialError> {
    geometry.validate()?;
    let DoubleSlit { wavelength, separation: d, slit_width: a, distance, .. } = *geometry;
    let extent = geometry.extent();
    let k = TAU / wavelength;
    let dx = a / 8.0;
    let span = 4.0 * extent.max(2.0 * (d + a));
    let needed = (span / dx).ceil() as usize;
    if needed > MAX_LINE_SAMPLES {
        return Err(ParaxialError::Aliasing(format!(
            "{needed} samples needed to resolve the slits across a {span:e} window (limit {MAX_LINE_SAMPLES})"
        )));
    }
    let n = needed.next_power_of_two().max(1024);
    // area-weighted transmission keeps each slit's centroid exact
    let open = |x: f64| -> f64 {
        let (lo, hi) = (x - dx / 2.0, x + dx / 2.0);
        [-d / 2.0, d / 2.0]
            .iter()
            .map(|c| ((hi.min(c + a / 2.0) - lo.max(c - a / 2.0)) / dx).max(0.0))
            .sum()
    };
    let aperture: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(open((i as f64 - (n / 2) as f64) * dx), 0.0))
        .collect();
    // frequencies whose transfer-function phase is undersampled would land
    // outside the grid anyway
    let band = k * n as f64 * dx / (2.0 * distance);
    let screen = paraxial_propagate_line(&aperture, dx, k, distance, Some(band));
    let grid_intensity: Vec<f64> = screen.iter().map(|v| v.norm_sqr()).collect();

    let samples = geometry.samples;
    let step = extent / (samples - 1) as f64;
    let positions: Vec<f64> = (0..samples).map(|i| -extent / 2.0 + i as f64 * step).collect();
    let mut intensity: Vec<f64> = positions
        .iter()
        .map(|&x| {
            let t = x / dx + (n / 2) as f64;
            let i0 = t.floor() as usize;
            let f = t - i0 as f64;
            grid_intensity[i0] * (1.0 - f) + grid_intensity[(i0 + 1).min(n - 1)] * f
        })
        .collect();
    let peak = intensity.iter().copied().fold(0.0, f64::max);
    if peak > 0.0 {
        intensity.iter_mut().for_each(|v| *v /= peak);
    }
    Ok(IntensityProfile { positions, intensity })
}

/// Payload encodings for field files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    /// Little-endian f64 pairs `re, im`, row-major.
    F64le,
    /// One `re,im` line per sample, row-major.
    Csv,
}

/// JSON header of a field file; the payload lives next to it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub k: f64,
    pub z: f64,
    pub encoding: Encoding,
    /// Payload path, relative to the header's directory.
    pub payload: String,
}

fn payload_path(header_path: &Path, payload: &str) -> PathBuf {
    header_path.parent().map_or_else(|| PathBuf::from(payload), |dir| dir.join(payload))
}

/// Writes `header_path` (JSON) and a payload file beside it.
pub fn write_field(header_path: &Path, field: &BeamField, encoding: Encoding) -> Result<(), ParaxialError> {
    let stem = header_path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| ParaxialError::Format(format!("bad header path {}", header_path.display())))?;
    let payload = match encoding {
        Encoding::F64le => format!("{stem}.bin"),
        Encoding::Csv => format!("{stem}.csv"),
    };
    let header = FieldHeader {
        nx: field.nx,
        ny: field.ny,
        dx: field.dx,
        dy: field.dy,
        k: field.k,
        z: field.z,
        encoding,
        payload: payload.clone(),
    };
    let mut out = BufWriter::new(fs::File::create(payload_path(header_path, &payload))?);
    match encoding {
        Encoding::F64le => {
            for v in &field.amplitude {
                out.write_all(&v.re.to_le_bytes())?;
                out.write_all(&v.im.to_le_bytes())?;
            }
        }
        Encoding::Csv => {
            for v in &field.amplitude {
                writeln!(out, "{:e},{:e}", v.re, v.im)?;
            }
        }
    }
    out.flush()?;
    let json = serde_json::to_string_pretty(&header).map_err(|e| ParaxialError::Format(e.to_string()))?;
    fs::write(header_path, json + "\n")?;
    Ok(())
}

pub fn read_field(header_path: &Path) -> Result<BeamField, ParaxialError> {
    let text = fs::read_to_string(header_path)?;
    let h: FieldHeader = serde_json::from_str(&text).map_err(|e| ParaxialError::Format(e.to_string()))?;
    let count = h
        .nx
        .checked_mul(h.ny)
        .ok_or_else(|| ParaxialError::InvalidGrid("grid size overflows".into()))?;
    let path = payload_path(header_path, &h.payload);
    let amplitude = match h.encoding {
        Encoding::F64le => {
            let bytes = fs::read(&path)?;
            if bytes.len() != count * 16 {
                return Err(ParaxialError::Format(format!("payload has {} bytes, expected {}", bytes.len(), count * 16)));
            }
            bytes
                .chunks_exact(16)
                .map(|c| {
                    let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
                    let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
                    Complex64::new(re, im)
                })
                .collect()
        }
        Encoding::Csv => {
            let mut v = Vec::with_capacity(count);
            for (ln, line) in BufReader::new(fs::File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let mut parts = line.split(',').map(|s| s.trim().parse::<f64>());
                match (parts.next(), parts.next(), parts.next()) {
                    (Some(Ok(re)), Some(Ok(im)), None) => v.push(Complex64::new(re, im)),
                    _ => return Err(ParaxialError::Format(format!("payload line {} is not `re,im`", ln + 1))),
                }
            }
            v
        }
    };
    BeamField::new(h.nx, h.ny, h.dx, h.dy, h.k, h.z, amplitude)
}
