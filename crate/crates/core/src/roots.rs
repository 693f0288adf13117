//! All-roots complex polynomial solving by simultaneous (Durand–Kerner)
//! iteration, with seeded random-perturbation restarts.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ring::rational_to_f64;
use crate::unipoly::UniPoly;

#[derive(Debug, Clone)]
pub struct RootsConfig {
    /// Accept when every |p(root)| on the monic polynomial falls below this.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for RootsConfig {
    fn default() -> Self {
        RootsConfig { tolerance: 1e-10, max_iterations: 800, restarts: 10, seed: 0 }
    }
}

#[derive(Debug, Clone)]
pub enum RootsError {
    /// deg < 1 (constant or empty polynomial).
    DegreeTooSmall,
    /// Simultaneous iteration failed to converge; carries the best residual seen.
    NoConvergence { best_residual: f64 },
}

impl fmt::Display for RootsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootsError::DegreeTooSmall => write!(f, "root finding needs degree >= 1"),
            RootsError::NoConvergence { best_residual } => {
                write!(f, "root iteration did not converge (best residual {best_residual:.3e})")
            }
        }
    }
}

impl std::error::Error for RootsError {}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// All complex roots (with multiplicity) of the polynomial with the given
/// coefficients in ascending degree order.
pub fn complex_roots(coeffs: &[Complex64], cfg: &RootsConfig) -> Result<Vec<Complex64>, RootsError> {
    // Strip leading (high-degree) zeros.
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().map_or(false, |x| x.norm() == 0.0) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(RootsError::DegreeTooSmall);
    }
    // Factor out roots at the origin.
    let mut zero_roots = 0;
    while c.first().map_or(false, |x| x.norm() == 0.0) {
        c.remove(0);
        zero_roots += 1;
    }
    let mut roots = vec![Complex64::new(0.0, 0.0); zero_roots];
    if c.len() >= 2 {
        // Monic normalization.
        let lead = *c.last().unwrap();
        let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
        roots.extend(durand_kerner(&monic, cfg)?);
    }
    Ok(roots)
}

/// Convenience wrapper for rational-coefficient polynomials.
pub fn complex_roots_rational(p: &UniPoly, cfg: &RootsConfig) -> Result<Vec<Complex64>, RootsError> {
    let coeffs: Vec<Complex64> =
        p.coeffs().iter().map(|c| Complex64::new(rational_to_f64(c), 0.0)).collect();
    complex_roots(&coeffs, cfg)
}

fn durand_kerner(monic: &[Complex64], cfg: &RootsConfig) -> Result<Vec<Complex64>, RootsError> {
    let n = monic.len() - 1;
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best_residual = f64::INFINITY;

    for restart in 0..=cfg.restarts {
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let base = Complex64::new(0.4, 0.9).powu(k as u32 + 1);
                let jitter = if restart == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))
                };
                (base / base.norm().max(1e-6)) * radius * (0.5 + 0.5 * (k as f64 + 1.0) / n as f64)
                    + jitter * radius
            })
            .collect();

        for _ in 0..cfg.max_iterations {
            let mut max_step = 0.0f64;
            for i in 0..n {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        denom *= z[i] - z[j];
                    }
                }
                if denom.norm() < 1e-300 {
                    // Collided guesses; nudge deterministically.
                    denom = Complex64::new(1e-12, 1e-12);
                }
                let step = horner(monic, z[i]) / denom;
                z[i] -= step;
                max_step = max_step.max(step.norm());
            }
            let residual = z.iter().map(|&r| horner(monic, r).norm()).fold(0.0f64, f64::max);
            best_residual = best_residual.min(residual);
            if residual < cfg.tolerance {
                return Ok(z);
            }
            if max_step < 1e-16 && residual < cfg.tolerance * 1e3 {
                // Stalled within a hair of the target (multiple-root plateau).
                return Ok(z);
            }
        }
    }
    Err(RootsError::NoConvergence { best_residual })
}
