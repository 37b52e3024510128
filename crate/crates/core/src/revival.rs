//! Revival timescales, Gauss-sum fractional-revival amplitudes, classical
//! wave packets, and the even/odd decomposition at one eighth of the revival
//! time.
//!
//! Sign convention: with E_m = -(D/λ²)(λ - m - 1/2)² the evolution factor
//! e^{-i E_m t} carries the quadratic piece e^{+2πi m² t / T_rev}, so the
//! amplitudes below use e^{+2πi m² r/q}. This choice reproduces the
//! eighth-revival coefficients {e^{iπ/4}/2, 1/2, -e^{iπ/4}/2, 1/2} exactly.

use num_complex::Complex64;

use crate::coherent::{synthesize_from_coeffs, CoefficientVector};
use crate::morse::{MoleculeParams, SpatialGrid, WaveFunction};
use crate::{Error, Result};

/// Classical and revival periods of the quadratic bound spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Timescales {
    t_classical: f64,
    t_revival: f64,
}

impl Timescales {
    /// Classical oscillation period T_cl = T_rev / (2λ - 1).
    pub fn t_classical(&self) -> f64 {
        self.t_classical
    }

    /// Full revival time T_rev = 2π λ² / D.
    pub fn t_revival(&self) -> f64 {
        self.t_revival
    }
}

/// Revival timescales of the molecule's quadratic spectrum.
pub fn timescales(params: &MoleculeParams) -> Timescales {
    let lambda = params.lambda();
    let t_revival = 2.0 * std::f64::consts::PI * lambda * lambda / params.dissociation();
    Timescales {
        t_classical: t_revival / (2.0 * lambda - 1.0),
        t_revival,
    }
}

/// Gauss-sum decomposition of the state at t = (r/q) T_rev into l classical
/// packets.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalDecomposition {
    r: u32,
    q: u32,
    l: u32,
    amplitudes: Vec<Complex64>,
    shifts: Vec<f64>,
}

impl FractionalDecomposition {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of classical packets: q/2 when 4 | q, else q.
    pub fn packet_count(&self) -> u32 {
        self.l
    }

    /// Amplitudes a_p, p = 0..l-1, with Σ|a_p|² = 1.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Time arguments (r/q) T_rev - (p/l) T_cl of the classical packets.
    pub fn shifts(&self) -> &[f64] {
        &self.shifts
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Amplitudes a_p = (1/l) Σ_{m=0}^{l-1} e^{2πi (m² r/q - m p/l)} of the
/// fractional revival at t = (r/q) T_rev.
///
/// The sum runs over any length-l window of m; the summand is periodic in m
/// with period l by the choice of l. Integer phase arguments are reduced
/// modulo q and l before the trig call, so the amplitudes are accurate to a
/// few ulp.
pub fn gauss_amplitudes(
    r: u32,
    q: u32,
    timescales: &Timescales,
) -> Result<FractionalDecomposition> {
    if q < 2 {
        return Err(Error::Contract(format!(
            "fractional revival needs q >= 2, got q = {q}"
        )));
    }
    if r == 0 || gcd(r, q) != 1 {
        return Err(Error::Contract(format!(
            "fraction {r}/{q} must be in lowest terms with r >= 1"
        )));
    }
    let l = if q % 4 == 0 { q / 2 } else { q };
    let mut amplitudes = Vec::with_capacity(l as usize);
    let mut shifts = Vec::with_capacity(l as usize);
    let revival_time = timescales.t_revival * r as f64 / q as f64;
    for p in 0..l {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..l as u64 {
            let quad = (m * m * r as u64) % q as u64;
            let lin = (m * p as u64) % l as u64;
            let angle = 2.0 * std::f64::consts::PI
                * (quad as f64 / q as f64 - lin as f64 / l as f64);
            acc += Complex64::from_polar(1.0, angle);
        }
        amplitudes.push(acc / l as f64);
        shifts.push(revival_time - p as f64 / l as f64 * timescales.t_classical);
    }
    Ok(FractionalDecomposition {
        r,
        q,
        l,
        amplitudes,
        shifts,
    })
}

/// Classical wave packet χ_cl(x, t) = Σ_m d_m ψ_m(x) e^{-2πi m t/T_cl}:
/// the synthesis with only the linear-in-m phase, exactly periodic in T_cl.
pub fn classical_wavepacket(
    cv: &CoefficientVector,
    t: f64,
    grid: &SpatialGrid,
    params: &MoleculeParams,
) -> Result<WaveFunction> {
    let coeffs = classical_coeffs(cv, t, params, None)?;
    synthesize_from_coeffs(
        &coeffs,
        grid,
        params,
        format!("chi_cl(alpha={}, t={t})", cv.alpha()),
    )
}

/// Parity filter for the classical phase sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ParityFilter {
    Even,
    Odd,
}

fn classical_coeffs(
    cv: &CoefficientVector,
    t: f64,
    params: &MoleculeParams,
    parity: Option<ParityFilter>,
) -> Result<Vec<Complex64>> {
    if !t.is_finite() {
        return Err(Error::Domain(format!(
            "classical packet time must be finite, got {t}"
        )));
    }
    let ts = timescales(params);
    // Reduce t mod T_cl first: e^{-2πi m k} = 1 exactly for integer k, and
    // the reduced angles keep full precision.
    let tau = (t / ts.t_classical).rem_euclid(1.0);
    let coeffs = cv
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, d)| {
            let keep = match parity {
                None => true,
                Some(ParityFilter::Even) => m % 2 == 0,
                Some(ParityFilter::Odd) => m % 2 == 1,
            };
            if !keep {
                return Complex64::new(0.0, 0.0);
            }
            if tau == 0.0 {
                return *d;
            }
            let angle = -2.0 * std::f64::consts::PI * m as f64 * tau;
            d * Complex64::from_polar(1.0, angle)
        })
        .collect();
    Ok(coeffs)
}

/// Reconstructs the state at t = (r/q) T_rev as Σ_p a_p χ_cl(x, shift_p).
///
/// The sum is carried out in coefficient space (the packets share the
/// eigenbasis), which is algebraically identical to summing the sampled
/// packets. Up to a global phase the result equals the exact evolution;
/// callers verify via the overlap magnitude.
pub fn reconstruct_fractional(
    cv: &CoefficientVector,
    r: u32,
    q: u32,
    grid: &SpatialGrid,
    params: &MoleculeParams,
) -> Result<WaveFunction> {
    let ts = timescales(params);
    let decomposition = gauss_amplitudes(r, q, &ts)?;
    let mut total = vec![Complex64::new(0.0, 0.0); cv.coeffs().len()];
    for (a_p, shift) in decomposition
        .amplitudes
        .iter()
        .zip(decomposition.shifts.iter())
    {
        let packet = classical_coeffs(cv, *shift, params, None)?;
        for (acc, c) in total.iter_mut().zip(packet.iter()) {
            *acc += a_p * c;
        }
    }
    synthesize_from_coeffs(
        &total,
        grid,
        params,
        format!("chi_reconstructed(alpha={}, t={r}/{q} T_rev)", cv.alpha()),
    )
}

/// Even/odd decomposition of the eighth-revival state:
///
/// ```text
/// χ(x, T_rev/8) = χ_cl^even(x, T_rev/8 - T_cl/4) + e^{iπ/4} χ_cl^odd(x, T_rev/8)
/// ```
///
/// Returns (even part, odd part); their sum reproduces the evolved state at
/// T_rev/8 up to a global phase. Each part alone is a two-packet cat state.
pub fn even_odd_split(
    cv: &CoefficientVector,
    grid: &SpatialGrid,
    params: &MoleculeParams,
) -> Result<(WaveFunction, WaveFunction)> {
    let ts = timescales(params);
    let t_eighth = ts.t_revival / 8.0;
    let even_coeffs = classical_coeffs(
        cv,
        t_eighth - ts.t_classical / 4.0,
        params,
        Some(ParityFilter::Even),
    )?;
    let phase = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let odd_coeffs: Vec<Complex64> =
        classical_coeffs(cv, t_eighth, params, Some(ParityFilter::Odd))?
            .into_iter()
            .map(|c| c * phase)
            .collect();
    let even = synthesize_from_coeffs(
        &even_coeffs,
        grid,
        params,
        format!("chi_even(alpha={})", cv.alpha()),
    )?;
    let odd = synthesize_from_coeffs(
        &odd_coeffs,
        grid,
        params,
        format!("chi_odd(alpha={})", cv.alpha()),
    )?;
    Ok((even, odd))
}
