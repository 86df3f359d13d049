#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Eigenvalue of `-psi''/2 + x^2/2 psi = E psi` for level `n`, found by
/// parity shooting on `[0, l]` with RK4 and bisection on the sign of `psi(l)`.
pub fn shooting_eigenvalue(n: usize, l: f64) -> f64 {
    let odd = n % 2 == 1;
    let end = |e: f64| shoot(e, odd, l);
    // The (n / 2)-th sign change of psi(l) within the parity class.
    let target = n / 2;
    let step = 0.05;
    let mut e0 = step;
    let mut f0 = end(e0);
    let mut seen = 0;
    loop {
        let e1 = e0 + step;
        let f1 = end(e1);
        if f0.signum() != f1.signum() {
            if seen == target {
                return bisect(end, e0, e1);
            }
            seen += 1;
        }
        e0 = e1;
        f0 = f1;
        assert!(e0 < 4.0 * n as f64 + 10.0, "no eigenvalue found for level {n}");
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if f(m).signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn shoot(e: f64, odd: bool, l: f64) -> f64 {
    let h = 1e-3;
    let steps = (l / h).round() as usize;
    let rhs = |x: f64, (p, q): (f64, f64)| (q, (x * x - 2.0 * e) * p);
    let (mut p, mut q) = if odd { (0.0, 1.0) } else { (1.0, 0.0) };
    let mut x = 0.0;
    for _ in 0..steps {
        let k1 = rhs(x, (p, q));
        let k2 = rhs(x + h / 2.0, (p + h / 2.0 * k1.0, q + h / 2.0 * k1.1));
        let k3 = rhs(x + h / 2.0, (p + h / 2.0 * k2.0, q + h / 2.0 * k2.1));
        let k4 = rhs(x + h, (p + h * k3.0, q + h * k3.1));
        p += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        q += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        x += h;
    }
    p
}

/// `n` points in the unit disk with pairwise gaps of at least `min_gap`.
pub fn random_disk_points(rng: &mut ChaCha8Rng, n: usize, min_gap: f64) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = Vec::with_capacity(n);
    while pts.len() < n {
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() < 1.0 && pts.iter().all(|w| (z - w).norm() >= min_gap) {
            pts.push(z);
        }
    }
    pts
}

/// Direct pair sum `sum_{k != j} 1 / (z_j - z_k)`.
pub fn pair_sum(z: &[Complex64], j: usize) -> Complex64 {
    z.iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, w)| (z[j] - w).inv())
        .sum()
}

/// Separation of a vortex pair with equal real strength `gamma`:
/// `|d|^2 = |d0|^2 + 4 gamma t`.
pub fn pair_separation(d0: f64, gamma: f64, t: f64) -> f64 {
    (d0 * d0 + 4.0 * gamma * t).sqrt()
}
