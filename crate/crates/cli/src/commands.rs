//! The data-producing subcommands: spectrum, coefficients, evolve, wigner.

use morsepack::coherent::{cs_coefficients, evolve, synthesize, CoefficientVector};
use morsepack::morse::{eigenfunction, MoleculeParams, SpatialGrid, WaveFunction};
use morsepack::phasespace::{moments, sub_planck_area, wigner_parts_eighth, WignerParts};
use morsepack::revival::timescales;
use morsepack::Error;

use crate::config::RunConfig;
use crate::output::{alpha_label, OutputWriter};
use crate::CliError;

pub fn to_cli(err: Error) -> CliError {
    match err {
        Error::Tolerance(msg) => CliError::Tolerance(msg),
        other => CliError::Validation(other.to_string()),
    }
}

fn coefficients_for(alpha: f64, molecule: &MoleculeParams) -> Result<CoefficientVector, CliError> {
    cs_coefficients(alpha, molecule).map_err(to_cli)
}

fn packet_at(
    cv: &CoefficientVector,
    t: f64,
    grid: &SpatialGrid,
    molecule: &MoleculeParams,
) -> Result<WaveFunction, CliError> {
    synthesize(&evolve(cv, t, molecule).map_err(to_cli)?, grid, molecule).map_err(to_cli)
}

/// `spectrum`: levels.csv with (n, E_n, s_n); optional eigenfunction
/// samples; prints the derived constants.
pub fn cmd_spectrum(config: &RunConfig, eigenfunctions: bool) -> Result<(), CliError> {
    let molecule = config.molecule()?;
    let writer = OutputWriter::new(&config.out, config.precision)?;
    let n_max = molecule.bound_level_max().map_err(to_cli)?;
    let ts = timescales(&molecule);

    let rows = (0..=n_max).map(|n| {
        vec![
            n as f64,
            molecule.energy(n).expect("level in range"),
            molecule.s_param(n).expect("level in range"),
        ]
    });
    let path = writer.write_table("levels.csv", "n,energy_hartree,s_param", rows)?;
    println!("wrote {}", path.display());

    if eigenfunctions {
        let grid = config.grid()?;
        let mut states = Vec::new();
        for n in 0..=n_max {
            match eigenfunction(n, &grid, &molecule) {
                Ok(psi) => states.push((n, psi)),
                Err(Error::Truncation { .. }) => {
                    eprintln!(
                        "warning: psi_{n} has not decayed at the grid boundary; \
                         omitting it (widen x_max to include near-threshold levels)"
                    );
                }
                Err(other) => return Err(to_cli(other)),
            }
        }
        let header: Vec<String> = std::iter::once("x".to_string())
            .chain(states.iter().map(|(n, _)| format!("psi_{n}")))
            .collect();
        let rows = (0..grid.len()).map(|i| {
            let mut row = Vec::with_capacity(states.len() + 1);
            row.push(grid.point(i));
            row.extend(states.iter().map(|(_, psi)| psi.values()[i].re));
            row
        });
        let path = writer.write_table("eigenfunctions.csv", &header.join(","), rows)?;
        println!("wrote {}", path.display());
    }

    println!("lambda = {}", writer.fmt(molecule.lambda()));
    println!("n_max = {n_max} ({} bound states)", n_max + 1);
    println!("T_cl = {} a.u.", writer.fmt(ts.t_classical()));
    println!("T_rev = {} a.u.", writer.fmt(ts.t_revival()));
    Ok(())
}

/// `coefficients`: dm_alpha_A.csv with (m, Re d_m, Im d_m, |d_m|²) per alpha.
pub fn cmd_coefficients(config: &RunConfig) -> Result<(), CliError> {
    let molecule = config.molecule()?;
    let writer = OutputWriter::new(&config.out, config.precision)?;
    for &alpha in &config.alphas {
        let cv = coefficients_for(alpha, &molecule)?;
        let rows = cv.coeffs().iter().enumerate().map(|(m, d)| {
            vec![m as f64, d.re, d.im, d.norm_sqr()]
        });
        let name = format!("dm_alpha_{}.csv", alpha_label(alpha));
        let path = writer.write_table(&name, "m,re_dm,im_dm,dm_sq", rows)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// `evolve`: density_alpha_A_t_T.csv with (x, |χ|²) per alpha and time.
/// Defaults to the landmark times {0, 1/8, 1/4, 1/2} of T_rev.
pub fn cmd_evolve(config: &RunConfig) -> Result<(), CliError> {
    let molecule = config.molecule()?;
    let grid = config.grid()?;
    let writer = OutputWriter::new(&config.out, config.precision)?;
    let ts = timescales(&molecule);
    for &alpha in &config.alphas {
        let cv = coefficients_for(alpha, &molecule)?;
        for spec in config.times_or_default() {
            let chi = packet_at(&cv, spec.resolve(&ts), &grid, &molecule)?;
            let density = chi.density();
            let rows = (0..grid.len()).map(|i| vec![grid.point(i), density[i]]);
            let name = format!(
                "density_alpha_{}_t_{}.csv",
                alpha_label(alpha),
                spec.label()
            );
            let path = writer.write_table(&name, "x,density", rows)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

/// Computes the eighth-revival Wigner decomposition for one alpha.
pub fn wigner_parts_for(
    alpha: f64,
    config: &RunConfig,
    molecule: &MoleculeParams,
) -> Result<WignerParts, CliError> {
    let grid = config.grid()?;
    let p_axis = config.momentum_grid()?;
    let cv = coefficients_for(alpha, molecule)?;
    wigner_parts_eighth(&cv, &grid, &p_axis, molecule).map_err(to_cli)
}

/// `wigner`: the four matrix CSVs per alpha plus moments.csv, all at
/// t = T_rev/8 (the compass-state landmark the decomposition is defined at).
pub fn cmd_wigner(config: &RunConfig) -> Result<(), CliError> {
    let molecule = config.molecule()?;
    let writer = OutputWriter::new(&config.out, config.precision)?;
    let mut moment_rows = Vec::new();
    for &alpha in &config.alphas {
        let parts = wigner_parts_for(alpha, config, &molecule)?;
        let label = alpha_label(alpha);
        for (stem, field) in [
            ("w_even", &parts.even),
            ("w_odd", &parts.odd),
            ("w_int", &parts.interference),
            ("w_total", &parts.total),
        ] {
            let path = writer.write_matrix(&format!("{stem}_alpha_{label}.csv"), field)?;
            println!("wrote {}", path.display());
        }
        let m = moments(&parts.total).map_err(to_cli)?;
        let area = sub_planck_area(&m).map_err(to_cli)?;
        moment_rows.push(vec![
            alpha,
            m.mean_x,
            m.mean_p,
            m.sigma_x,
            m.sigma_p,
            m.uncertainty_product,
            area,
        ]);
    }
    let path = writer.write_table(
        "moments.csv",
        "alpha,mean_x,mean_p,sigma_x,sigma_p,uncertainty_product,sub_planck_area",
        moment_rows.into_iter(),
    )?;
    println!("wrote {}", path.display());
    Ok(())
}
