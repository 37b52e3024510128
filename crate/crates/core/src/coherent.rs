//! SU(2) (Perelomov) coherent states over the Morse bound spectrum:
//! expansion coefficients, time evolution, wave-packet synthesis, and the
//! autocorrelation diagnostic.

use num_complex::Complex64;

use crate::morse::{eigenfunction_unchecked, MoleculeParams, SpatialGrid, WaveFunction};
use crate::morse::EDGE_DECAY_LIMIT;
use crate::specfun::log_gamma;
use crate::{Error, Result};

/// Expansion coefficients d_m of a coherent state over levels m = 0..=n'.
///
/// Normalized so Σ|d_m|² = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    alpha: f64,
    n_prime: u32,
    coeffs: Vec<Complex64>,
}

impl CoefficientVector {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Top level of the expansion (the highest bound level).
    pub fn n_prime(&self) -> u32 {
        self.n_prime
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// |d_m|² occupation probabilities.
    pub fn probabilities(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }

    /// Level carrying the largest |d_m|².
    pub fn argmax_probability(&self) -> u32 {
        self.coeffs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .map(|(m, _)| m as u32)
            .unwrap_or(0)
    }
}

/// A coefficient vector with the evolution phases e^{-i E_m t} applied.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolvedState {
    base: CoefficientVector,
    time: f64,
    phased: Vec<Complex64>,
}

impl EvolvedState {
    pub fn base(&self) -> &CoefficientVector {
        &self.base
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn phased_coeffs(&self) -> &[Complex64] {
        &self.phased
    }
}

/// Coherent-state coefficients for coherence parameter α ≥ 0, built on the
/// highest bound level n' and renormalized to unit ℓ² norm:
///
/// ```text
/// d_m ∝ (-α)^{n'-m} / (n'-m)! · sqrt( n'! Γ(2λ-m) / (m! Γ(2λ-n')) )
/// ```
///
/// Magnitudes are accumulated in log space with explicit sign tracking, so
/// the Γ ratios never overflow. α = 0 degenerates to the single basis state
/// m = n'.
pub fn cs_coefficients(alpha: f64, params: &MoleculeParams) -> Result<CoefficientVector> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::Domain(format!(
            "coherence parameter must be finite and >= 0, got {alpha}"
        )));
    }
    let n_prime = params.bound_level_max()?;
    let count = n_prime as usize + 1;
    if alpha == 0.0 {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); count];
        coeffs[n_prime as usize] = Complex64::new(1.0, 0.0);
        return Ok(CoefficientVector {
            alpha,
            n_prime,
            coeffs,
        });
    }
    let lambda = params.lambda();
    let two_lambda = 2.0 * lambda;
    let ln_gamma_top = log_gamma(n_prime as f64 + 1.0)?;
    let ln_gamma_ref = log_gamma(two_lambda - n_prime as f64)?;
    let mut ln_mag = Vec::with_capacity(count);
    let mut signs = Vec::with_capacity(count);
    for m in 0..=n_prime {
        let k = n_prime - m; // number of lowering steps
        let lm = k as f64 * alpha.ln() - log_gamma(k as f64 + 1.0)?
            + 0.5
                * (ln_gamma_top + log_gamma(two_lambda - m as f64)?
                    - log_gamma(m as f64 + 1.0)?
                    - ln_gamma_ref);
        ln_mag.push(lm);
        signs.push(if k % 2 == 0 { 1.0 } else { -1.0 });
    }
    let max_ln = ln_mag.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = ln_mag
        .iter()
        .zip(signs.iter())
        .map(|(lm, sign)| sign * (lm - max_ln).exp())
        .collect();
    let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    let coeffs = raw
        .iter()
        .map(|v| Complex64::new(v / norm, 0.0))
        .collect();
    Ok(CoefficientVector {
        alpha,
        n_prime,
        coeffs,
    })
}

/// Applies the evolution phases e^{-i E_m t} to every coefficient.
pub fn evolve(cv: &CoefficientVector, t: f64, params: &MoleculeParams) -> Result<EvolvedState> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("evolution time must be finite, got {t}")));
    }
    let mut phased = Vec::with_capacity(cv.coeffs.len());
    for (m, d) in cv.coeffs.iter().enumerate() {
        let energy = params.energy(m as u32)?;
        phased.push(d * Complex64::from_polar(1.0, -energy * t));
    }
    Ok(EvolvedState {
        base: cv.clone(),
        time: t,
        phased,
    })
}

/// Samples χ(x, t) = Σ_m d_m e^{-i E_m t} ψ_m(x) on `grid`.
///
/// Individual near-threshold eigenfunctions may overhang the grid; they
/// enter with exponentially small weights, so the decay check is applied to
/// the assembled packet, which fails with [`Error::Truncation`] if *it*
/// has not decayed at the boundaries.
pub fn synthesize(
    state: &EvolvedState,
    grid: &SpatialGrid,
    params: &MoleculeParams,
) -> Result<WaveFunction> {
    synthesize_from_coeffs(
        &state.phased,
        grid,
        params,
        format!("chi(alpha={}, t={})", state.base.alpha, state.time),
    )
}

/// Shared synthesis core: Σ_m c_m ψ_m(x) followed by the packet-level
/// boundary-decay check.
pub(crate) fn synthesize_from_coeffs(
    coeffs: &[Complex64],
    grid: &SpatialGrid,
    params: &MoleculeParams,
    label: String,
) -> Result<WaveFunction> {
    let n_max = params.bound_level_max()?;
    if coeffs.len() != n_max as usize + 1 {
        return Err(Error::Contract(format!(
            "coefficient vector has {} entries for {} bound levels",
            coeffs.len(),
            n_max + 1
        )));
    }
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    for (m, c) in coeffs.iter().enumerate() {
        if c.norm_sqr() == 0.0 {
            continue;
        }
        let psi = eigenfunction_unchecked(m as u32, grid, params)?;
        for (acc, v) in values.iter_mut().zip(psi.values().iter()) {
            *acc += c * v;
        }
    }
    let packet = WaveFunction::new(*grid, values, label)?;
    let fraction = packet.boundary_fraction();
    if fraction > EDGE_DECAY_LIMIT {
        let peak = packet.peak_magnitude();
        return Err(Error::Truncation {
            label: packet.label().to_string(),
            left: packet.values().first().map(|v| v.norm()).unwrap_or(0.0),
            right: packet.values().last().map(|v| v.norm()).unwrap_or(0.0),
            peak,
            limit: EDGE_DECAY_LIMIT,
        });
    }
    Ok(packet)
}

/// Autocorrelation A(t) = Σ_m |d_m|² e^{-i E_m t}, the standard revival
/// diagnostic.
pub fn autocorrelation(cv: &CoefficientVector, t: f64, params: &MoleculeParams) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, d) in cv.coeffs.iter().enumerate() {
        let energy = params.energy(m as u32)?;
        acc += d.norm_sqr() * Complex64::from_polar(1.0, -energy * t);
    }
    Ok(acc)
}
