//! Shape diagnostics used to check qualitative figure properties: peak
//! counting for coordinate densities and lobe extraction for phase-space
//! fields.

use crate::phasespace::{moments, PhaseSpaceField};

/// Indices of well-separated local maxima of a sampled density.
///
/// A sample counts as a peak when it is a strict local maximum above
/// `rel_threshold` times the global maximum; peaks closer than
/// `min_separation` (in x units) are merged, keeping the highest.
pub fn density_peaks(
    density: &[f64],
    spacing: f64,
    rel_threshold: f64,
    min_separation: f64,
) -> Vec<usize> {
    let n = density.len();
    if n < 3 {
        return Vec::new();
    }
    let max = density.iter().cloned().fold(0.0, f64::max);
    if max <= 0.0 {
        return Vec::new();
    }
    let floor = rel_threshold * max;
    let mut candidates = Vec::new();
    for i in 1..n - 1 {
        if density[i] >= floor && density[i] > density[i - 1] && density[i] >= density[i + 1] {
            candidates.push(i);
        }
    }
    // chain-link maxima closer than min_separation into clusters and keep
    // the tallest of each
    let mut merged: Vec<usize> = Vec::new();
    let mut last_candidate: Option<usize> = None;
    for idx in candidates {
        match last_candidate {
            Some(prev) if (idx - prev) as f64 * spacing < min_separation => {
                let rep = merged.last_mut().unwrap();
                if density[idx] > density[*rep] {
                    *rep = idx;
                }
            }
            _ => merged.push(idx),
        }
        last_candidate = Some(idx);
    }
    merged
}

/// A connected positive region of a phase-space field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lobe {
    /// Integrated W over the region (cell-sum approximation).
    pub mass: f64,
    pub centroid_x: f64,
    pub centroid_p: f64,
}

/// Connected components of {W ≥ rel_threshold · max W}, sorted by decreasing
/// mass. For a cat state the two heaviest lobes are the classical packets;
/// the orientation of their separation vector distinguishes east-west from
/// north-south cats.
pub fn dominant_lobes(field: &PhaseSpaceField, rel_threshold: f64) -> Vec<Lobe> {
    let nx = field.x_axis().len();
    let np = field.p_axis().len();
    let max = field.max_value();
    if !(max > 0.0) {
        return Vec::new();
    }
    let floor = rel_threshold * max;
    let cell = field.x_axis().spacing() * field.p_axis().spacing();
    let mut visited = vec![false; nx * np];
    let mut lobes = Vec::new();
    for start in 0..nx * np {
        if visited[start] || field.values()[start] < floor {
            continue;
        }
        // flood fill over 4-connected neighbors
        let mut mass = 0.0;
        let mut mx = 0.0;
        let mut mp = 0.0;
        let mut stack = vec![start];
        visited[start] = true;
        while let Some(idx) = stack.pop() {
            let v = field.values()[idx];
            let ix = idx / np;
            let ip = idx % np;
            let weight = v * cell;
            mass += weight;
            mx += weight * field.x_axis().point(ix);
            mp += weight * field.p_axis().point(ip);
            let mut push = |jx: usize, jp: usize| {
                let j = jx * np + jp;
                if !visited[j] && field.values()[j] >= floor {
                    visited[j] = true;
                    stack.push(j);
                }
            };
            if ix > 0 {
                push(ix - 1, ip);
            }
            if ix + 1 < nx {
                push(ix + 1, ip);
            }
            if ip > 0 {
                push(ix, ip - 1);
            }
            if ip + 1 < np {
                push(ix, ip + 1);
            }
        }
        if mass > 0.0 {
            lobes.push(Lobe {
                mass,
                centroid_x: mx / mass,
                centroid_p: mp / mass,
            });
        }
    }
    lobes.sort_by(|a, b| b.mass.total_cmp(&a.mass));
    lobes
}

/// The two main lobes of a cat-state Wigner function and their separation,
/// measured in units of the field's own marginal spreads so that the x and p
/// directions are comparable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatGeometry {
    pub lobes: [Lobe; 2],
    /// |x_1 - x_2| / σ_x
    pub delta_x_norm: f64,
    /// |p_1 - p_2| / σ_p
    pub delta_p_norm: f64,
}

impl CatGeometry {
    /// True when the lobes separate along the x axis ("east-west").
    pub fn is_position_separated(&self) -> bool {
        self.delta_x_norm > self.delta_p_norm
    }
}

/// Locates the two classical packets of a cat-state Wigner function.
///
/// The positive-region threshold is scanned upward until the field splits
/// into at least two components of comparable mass; low thresholds can fuse
/// the packets through the interference ridge, high ones fragment them.
/// Returns `None` if no threshold yields a balanced pair.
pub fn cat_lobe_displacement(field: &PhaseSpaceField) -> Option<CatGeometry> {
    let m = moments(field).ok()?;
    if !(m.sigma_x > 0.0 && m.sigma_p > 0.0) {
        return None;
    }
    for step in 0..=7 {
        let threshold = 0.15 + 0.05 * step as f64;
        let lobes = dominant_lobes(field, threshold);
        if lobes.len() < 2 {
            continue;
        }
        let (a, b) = (lobes[0], lobes[1]);
        if a.mass > 4.0 * b.mass {
            continue;
        }
        return Some(CatGeometry {
            lobes: [a, b],
            delta_x_norm: (a.centroid_x - b.centroid_x).abs() / m.sigma_x,
            delta_p_norm: (a.centroid_p - b.centroid_p).abs() / m.sigma_p,
        });
    }
    None
}
