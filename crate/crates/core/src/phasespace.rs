//! Wigner phase-space analysis: the transform itself, the
//! even/odd/interference decomposition at one eighth of the revival time,
//! marginals, moments, uncertainty products, and the sub-Planck area.
//!
//! Convention: the scaled coordinate x and its conjugate momentum p are both
//! dimensionless with ħ = 1, and the transform prefactor is 1/π so that
//! ∬ W dx dp equals the squared norm of the input state.
//!
//! The (x, p) matrix is computed row by row (fixed x). Rows are independent
//! and run on rayon when the `parallel` feature is on; summation order within
//! a row is fixed, so the result is bitwise-independent of the degree of
//! parallelism.

use num_complex::Complex64;

use crate::coherent::CoefficientVector;
use crate::morse::{MoleculeParams, SpatialGrid, WaveFunction};
use crate::revival::even_odd_split;
use crate::specfun::{integrate_real, QuadratureRule};
use crate::{Error, Result};

/// Input states with quadrature norm off by more than this are rejected
/// outright; smaller deviations flow through so that validity diagnostics
/// (marginal fidelity, total integral) can report them.
const NORM_GATE: f64 = 0.05;

/// Steps between exact re-synchronizations of the phase recurrence in the
/// x' quadrature.
const PHASE_RESYNC: usize = 512;

/// Uniform momentum grid, conjugate to the scaled coordinate (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumGrid {
    p_min: f64,
    p_max: f64,
    n_points: usize,
}

impl MomentumGrid {
    pub fn new(p_min: f64, p_max: f64, n_points: usize) -> Result<Self> {
        if !(p_min < p_max) || !p_min.is_finite() || !p_max.is_finite() {
            return Err(Error::Contract(format!(
                "momentum bounds must satisfy p_min < p_max, got [{p_min}, {p_max}]"
            )));
        }
        if n_points < 2 {
            return Err(Error::Contract(format!(
                "momentum grid needs at least 2 points, got {n_points}"
            )));
        }
        Ok(Self {
            p_min,
            p_max,
            n_points,
        })
    }

    /// Symmetric grid [-p_max, p_max].
    pub fn symmetric(p_max: f64, n_points: usize) -> Result<Self> {
        Self::new(-p_max, p_max, n_points)
    }

    /// Default momentum window, p ∈ [-60, 60] with 512 points: contains the
    /// momentum support of every level contributing to the working coherent
    /// states.
    pub fn default_coherent() -> Self {
        Self {
            p_min: -60.0,
            p_max: 60.0,
            n_points: 512,
        }
    }

    pub fn p_min(&self) -> f64 {
        self.p_min
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.p_max - self.p_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.p_min + self.spacing() * i as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.point(i))
    }

    pub fn quadrature(&self) -> QuadratureRule {
        QuadratureRule::simpson_uniform(self.p_min, self.p_max, self.n_points)
            .expect("grid invariants guarantee a valid rule")
    }
}

/// Real-valued W(x_i, p_j) samples on a rectangular grid, row-major in x.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceField {
    x_axis: SpatialGrid,
    p_axis: MomentumGrid,
    values: Vec<f64>,
    max_imag_residue: f64,
    input_boundary_fraction: f64,
}

impl PhaseSpaceField {
    pub fn x_axis(&self) -> &SpatialGrid {
        &self.x_axis
    }

    pub fn p_axis(&self) -> &MomentumGrid {
        &self.p_axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, ix: usize, ip: usize) -> f64 {
        self.values[ix * self.p_axis.len() + ip]
    }

    pub fn row(&self, ix: usize) -> &[f64] {
        let np = self.p_axis.len();
        &self.values[ix * np..(ix + 1) * np]
    }

    /// Largest |Im| left over from the defining integral, in the same units
    /// as the W values. Bounded by floating-point roundoff for symmetric
    /// windows.
    pub fn max_imag_residue(&self) -> f64 {
        self.max_imag_residue
    }

    /// Boundary decay of the input state, as |ψ(edge)| / max|ψ|; nonzero
    /// values that approach 1e-8 signal truncation of the correlation
    /// window.
    pub fn input_boundary_fraction(&self) -> f64 {
        self.input_boundary_fraction
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// ∬ W dx dp under the grids' Simpson rules.
    pub fn total_integral(&self) -> f64 {
        let (position, _) = marginals(self);
        integrate_real(&position, &self.x_axis.quadrature())
            .expect("marginal length matches grid")
    }
}

/// Wigner transform of a (unit-norm) state:
///
/// ```text
/// W(x, p) = (1/π) ∫ ψ*(x - x') ψ(x + x') e^{-2ipx'} dx'
/// ```
///
/// The x' integral runs over the largest symmetric window contained in the
/// grid (off-grid samples are zero, justified by the enforced edge decay)
/// with composite Simpson weights at the native spacing.
///
/// Rejects inputs whose quadrature norm is off by more than 5%.
pub fn wigner(psi: &WaveFunction, p_axis: &MomentumGrid) -> Result<PhaseSpaceField> {
    let norm_sq = psi.norm_sq();
    if (norm_sq - 1.0).abs() > NORM_GATE {
        return Err(Error::Contract(format!(
            "wigner input `{}` is not normalized: ∫|ψ|²dx = {norm_sq:.6}",
            psi.label()
        )));
    }
    wigner_any(psi, p_axis, true)
}

/// Sequential Wigner transform; same contract and bitwise-identical output
/// to [`wigner`], regardless of the `parallel` feature.
pub fn wigner_serial(psi: &WaveFunction, p_axis: &MomentumGrid) -> Result<PhaseSpaceField> {
    let norm_sq = psi.norm_sq();
    if (norm_sq - 1.0).abs() > NORM_GATE {
        return Err(Error::Contract(format!(
            "wigner input `{}` is not normalized: ∫|ψ|²dx = {norm_sq:.6}",
            psi.label()
        )));
    }
    wigner_any(psi, p_axis, false)
}

/// Transform without the normalization gate, for the components of bilinear
/// decompositions (their norms are the branch weights, not 1).
pub(crate) fn wigner_any(
    psi: &WaveFunction,
    p_axis: &MomentumGrid,
    parallel: bool,
) -> Result<PhaseSpaceField> {
    let grid = *psi.grid();
    let nx = grid.len();
    let np = p_axis.len();
    let h = grid.spacing();
    let values = psi.values();
    let momenta: Vec<f64> = p_axis.points().collect();

    let compute_row = |ix: usize| -> (Vec<f64>, f64) {
        let half_window = ix.min(nx - 1 - ix);
        let mut row = vec![0.0; np];
        if half_window == 0 {
            return (row, 0.0);
        }
        // Weighted correlation samples over the symmetric window,
        // c_k = w_k ψ*(x - x')ψ(x + x'), x' = k h, k = -M..=M.
        let m = half_window;
        let mut corr = Vec::with_capacity(2 * m + 1);
        for j in 0..=2 * m {
            let k = j as isize - m as isize;
            let a = values[(ix as isize - k) as usize];
            let b = values[(ix as isize + k) as usize];
            let w = if j == 0 || j == 2 * m {
                h / 3.0
            } else if j % 2 == 1 {
                4.0 * h / 3.0
            } else {
                2.0 * h / 3.0
            };
            corr.push(a.conj() * b * w);
        }
        let mut max_residue = 0.0_f64;
        for (ip, &p) in momenta.iter().enumerate() {
            // e^{-2ip x'} advanced by a constant rotation per step, with a
            // periodic exact resync to stop drift.
            let step = Complex64::from_polar(1.0, -2.0 * p * h);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut rot = Complex64::new(0.0, 0.0);
            for (j, c) in corr.iter().enumerate() {
                if j % PHASE_RESYNC == 0 {
                    let xp = (j as isize - m as isize) as f64 * h;
                    rot = Complex64::from_polar(1.0, -2.0 * p * xp);
                } else {
                    rot *= step;
                }
                acc += c * rot;
            }
            row[ip] = acc.re / std::f64::consts::PI;
            max_residue = max_residue.max(acc.im.abs() / std::f64::consts::PI);
        }
        (row, max_residue)
    };

    let rows: Vec<(Vec<f64>, f64)> = run_rows(nx, parallel, compute_row);

    let mut flat = Vec::with_capacity(nx * np);
    let mut max_imag_residue = 0.0_f64;
    for (row, residue) in rows {
        flat.extend_from_slice(&row);
        max_imag_residue = max_imag_residue.max(residue);
    }
    Ok(PhaseSpaceField {
        x_axis: grid,
        p_axis: *p_axis,
        values: flat,
        max_imag_residue,
        input_boundary_fraction: psi.boundary_fraction(),
    })
}

#[cfg(feature = "parallel")]
fn run_rows<F>(nx: usize, parallel: bool, f: F) -> Vec<(Vec<f64>, f64)>
where
    F: Fn(usize) -> (Vec<f64>, f64) + Sync + Send,
{
    use rayon::prelude::*;
    if parallel {
        (0..nx).into_par_iter().map(f).collect()
    } else {
        (0..nx).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn run_rows<F>(nx: usize, _parallel: bool, f: F) -> Vec<(Vec<f64>, f64)>
where
    F: Fn(usize) -> (Vec<f64>, f64) + Sync + Send,
{
    (0..nx).map(f).collect()
}

/// The Wigner function at t = T_rev/8 split by parity:
/// W = W_even + W_odd + W_int.
#[derive(Debug, Clone)]
pub struct WignerParts {
    pub even: PhaseSpaceField,
    pub odd: PhaseSpaceField,
    pub interference: PhaseSpaceField,
    pub total: PhaseSpaceField,
}

/// Computes the eighth-revival Wigner function and its decomposition.
///
/// W_even and W_odd are the transforms of the parity components of the
/// split; W_total is the transform of their sum (the full state up to a
/// global phase); the interference term is extracted by bilinearity,
/// W_int = W_total - W_even - W_odd.
pub fn wigner_parts_eighth(
    cv: &CoefficientVector,
    grid: &SpatialGrid,
    p_axis: &MomentumGrid,
    params: &MoleculeParams,
) -> Result<WignerParts> {
    let (even_wf, odd_wf) = even_odd_split(cv, grid, params)?;
    let total_wf = even_wf.add(&odd_wf, format!("chi(alpha={}, t=T_rev/8)", cv.alpha()))?;
    let even = wigner_any(&even_wf, p_axis, true)?;
    let odd = wigner_any(&odd_wf, p_axis, true)?;
    let total = wigner_any(&total_wf, p_axis, true)?;
    let values: Vec<f64> = total
        .values
        .iter()
        .zip(even.values.iter().zip(odd.values.iter()))
        .map(|(t, (e, o))| t - e - o)
        .collect();
    let interference = PhaseSpaceField {
        x_axis: total.x_axis,
        p_axis: total.p_axis,
        values,
        max_imag_residue: total
            .max_imag_residue
            .max(even.max_imag_residue)
            .max(odd.max_imag_residue),
        input_boundary_fraction: total.input_boundary_fraction,
    };
    Ok(WignerParts {
        even,
        odd,
        interference,
        total,
    })
}

/// Position and momentum densities obtained by integrating W over the other
/// axis.
pub fn marginals(field: &PhaseSpaceField) -> (Vec<f64>, Vec<f64>) {
    let nx = field.x_axis.len();
    let np = field.p_axis.len();
    let p_rule = field.p_axis.quadrature();
    let x_rule = field.x_axis.quadrature();
    let position: Vec<f64> = (0..nx)
        .map(|ix| {
            field
                .row(ix)
                .iter()
                .zip(p_rule.weights().iter())
                .map(|(v, w)| v * w)
                .sum()
        })
        .collect();
    let momentum: Vec<f64> = (0..np)
        .map(|ip| {
            (0..nx)
                .map(|ix| field.values[ix * np + ip] * x_rule.weights()[ix])
                .sum()
        })
        .collect();
    (position, momentum)
}

/// First and second moments of a phase-space distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean_x: f64,
    pub mean_p: f64,
    pub sigma_x: f64,
    pub sigma_p: f64,
    /// Δx·Δp in units of ħ = 1.
    pub uncertainty_product: f64,
}

/// Moments of the marginals of W: means, standard deviations, and the
/// uncertainty product Δx·Δp.
pub fn moments(field: &PhaseSpaceField) -> Result<Moments> {
    let (position, momentum) = marginals(field);
    let (mean_x, var_x) = distribution_moments(
        &position,
        &field.x_axis.quadrature(),
        "position marginal",
    )?;
    let (mean_p, var_p) = distribution_moments(
        &momentum,
        &field.p_axis.quadrature(),
        "momentum marginal",
    )?;
    let sigma_x = var_x.sqrt();
    let sigma_p = var_p.sqrt();
    Ok(Moments {
        mean_x,
        mean_p,
        sigma_x,
        sigma_p,
        uncertainty_product: sigma_x * sigma_p,
    })
}

fn distribution_moments(
    density: &[f64],
    rule: &QuadratureRule,
    what: &str,
) -> Result<(f64, f64)> {
    let total = integrate_real(density, rule)?;
    let mut mean = 0.0;
    let mut second = 0.0;
    for ((d, x), w) in density
        .iter()
        .zip(rule.nodes().iter())
        .zip(rule.weights().iter())
    {
        mean += d * x * w;
        second += d * x * x * w;
    }
    mean /= total;
    second /= total;
    let variance = second - mean * mean;
    if variance < 0.0 {
        return Err(Error::Tolerance(format!(
            "negative variance {variance:.3e} from {what}"
        )));
    }
    Ok((mean, variance))
}

/// Sub-Planck tile dimension a = ħ² / A with the classical action
/// A ≈ Δx·Δp (ħ = 1).
pub fn sub_planck_area(moments: &Moments) -> Result<f64> {
    if !(moments.uncertainty_product > 0.0) {
        return Err(Error::Domain(format!(
            "sub-Planck area needs a positive uncertainty product, got {}",
            moments.uncertainty_product
        )));
    }
    Ok(1.0 / moments.uncertainty_product)
}

/// Momentum-space density |φ(p)|² with φ(p) = (2π)^{-1/2} ∫ ψ(x) e^{-ipx} dx,
/// evaluated by direct quadrature at the grid momenta. Independent of the
/// Wigner path; the momentum marginal of W must reproduce it.
pub fn momentum_density(psi: &WaveFunction, p_axis: &MomentumGrid) -> Vec<f64> {
    let rule = psi.grid().quadrature();
    let values = psi.values();
    p_axis
        .points()
        .map(|p| {
            let mut acc = Complex64::new(0.0, 0.0);
            for ((v, x), w) in values
                .iter()
                .zip(rule.nodes().iter())
                .zip(rule.weights().iter())
            {
                acc += v * Complex64::from_polar(*w, -p * x);
            }
            acc.norm_sqr() / (2.0 * std::f64::consts::PI)
        })
        .collect()
}

/// Momentum moments (⟨p⟩, ⟨p²⟩) straight from the wavefunction via central
/// differences: ⟨p⟩ = Im ∫ψ*ψ' dx, ⟨p²⟩ = ∫|ψ'|² dx. Cross-check for the
/// marginal-based route.
pub fn wavefunction_momentum_moments(psi: &WaveFunction) -> (f64, f64) {
    let n = psi.grid().len();
    let h = psi.grid().spacing();
    let values = psi.values();
    let mut derivative = vec![Complex64::new(0.0, 0.0); n];
    for i in 1..n - 1 {
        derivative[i] = (values[i + 1] - values[i - 1]) / (2.0 * h);
    }
    derivative[0] = (values[1] - values[0]) / h;
    derivative[n - 1] = (values[n - 1] - values[n - 2]) / h;
    let rule = psi.grid().quadrature();
    let mut mean_p = 0.0;
    let mut p_sq = 0.0;
    for ((v, d), w) in values
        .iter()
        .zip(derivative.iter())
        .zip(rule.weights().iter())
    {
        mean_p += (v.conj() * d).im * w;
        p_sq += d.norm_sqr() * w;
    }
    (mean_p, p_sq)
}
