//! Subcommand implementations: sweep evaluation, Q-function export, loop
//! coefficients, and trajectory export, each with a JSON manifest.
//!
//! All floating-point values are written with Rust's shortest-roundtrip
//! `Display` formatting, so output files are byte-identical across runs and
//! thread counts.

use crate::config::{NSpec, OutputKind, Regime, SweepConfig};
use anyhow::Context;
use geomphase::analytic::{
    self, fidelity, purity, series_continuous, series_pulsed, target_kerr_continuous,
    target_kerr_pulsed, FieldParams, SeriesState,
};
use geomphase::dissipative::{
    continuous_dissipative_state, fidelity_dissipative, pulsed_dissipative_state,
    purity_dissipative, DissipativeContinuousParams, DissipativePulsedParams,
};
use geomphase::error_models::RescaleFactor;
use geomphase::phase_space::{
    continuous_coefficients, pulsed_coefficients, trajectory_continuous, trajectory_pulsed,
    ContinuousParams, LoopCoefficients, PulseParams, Trajectory,
};
use serde_json::json;
use std::fmt::Write as _;
use std::path::Path;

const TAU: f64 = std::f64::consts::TAU;

fn field_params(cfg: &SweepConfig) -> anyhow::Result<FieldParams> {
    Ok(FieldParams::with_tail_eps(cfg.alpha, cfg.n_th, cfg.tail_eps)?)
}

/// Series state of one (error, N) grid point under the configured regime.
pub fn point_series(
    cfg: &SweepConfig,
    f: &FieldParams,
    error: f64,
    n: RescaleFactor,
) -> anyhow::Result<SeriesState> {
    let state = match (cfg.regime, cfg.dissipative) {
        (Regime::Continuous, false) => series_continuous(f, cfg.strength, error, n)?,
        (Regime::Pulsed, false) => {
            series_pulsed(f, cfg.strength, cfg.n_pulses.unwrap(), error, n)?
        }
        (Regime::Continuous, true) => continuous_dissipative_state(
            f,
            &DissipativeContinuousParams::new(cfg.strength, error, cfg.gamma_ratio, n)?,
        )?
        .field_series(),
        (Regime::Pulsed, true) => pulsed_dissipative_state(
            f,
            &DissipativePulsedParams::new(
                cfg.strength,
                cfg.n_pulses.unwrap(),
                error,
                cfg.gamma_ratio,
                n,
            )?,
        )?
        .field_series(),
    };
    Ok(state)
}

pub fn target_kerr(cfg: &SweepConfig) -> f64 {
    match cfg.regime {
        Regime::Continuous => target_kerr_continuous(cfg.strength),
        Regime::Pulsed => target_kerr_pulsed(cfg.strength, cfg.n_pulses.unwrap()),
    }
}

/// Fidelity and purity of one grid point.
pub fn evaluate_point(
    cfg: &SweepConfig,
    f: &FieldParams,
    error: f64,
    n: NSpec,
) -> anyhow::Result<(f64, f64)> {
    let rescale = n.to_rescale()?;
    let target = target_kerr(cfg);
    if cfg.dissipative {
        // the dissipative path validates n_th == 0 itself; route through it
        // so the error message matches the library's
        let state = match cfg.regime {
            Regime::Continuous => continuous_dissipative_state(
                f,
                &DissipativeContinuousParams::new(cfg.strength, error, cfg.gamma_ratio, rescale)?,
            )?,
            Regime::Pulsed => pulsed_dissipative_state(
                f,
                &DissipativePulsedParams::new(
                    cfg.strength,
                    cfg.n_pulses.unwrap(),
                    error,
                    cfg.gamma_ratio,
                    rescale,
                )?,
            )?,
        };
        Ok((fidelity_dissipative(&state, f, target)?, purity_dissipative(&state, f)?))
    } else {
        let s = point_series(cfg, f, error, rescale)?;
        Ok((fidelity(&s, f, target)?, purity(&s, f)))
    }
}

/// Run the full sweep and return the CSV body (header included).
pub fn sweep_csv(cfg: &SweepConfig) -> anyhow::Result<String> {
    let f = field_params(cfg)?;
    let mut out = String::from("error,n,fidelity,purity\n");
    for &error in &cfg.error_range.values() {
        for &n in &cfg.n_values {
            let (fid, pur) = evaluate_point(cfg, &f, error, n)
                .with_context(|| format!("at error = {error}, N = {}", n.label()))?;
            writeln!(out, "{error},{},{fid},{pur}", n.label()).unwrap();
        }
    }
    Ok(out)
}

fn write_manifest(
    out_dir: &Path,
    command: &str,
    preset: Option<&str>,
    config: serde_json::Value,
    files: &[&str],
) -> anyhow::Result<()> {
    let manifest = json!({
        "tool": "geomphase",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "preset": preset,
        "config": config,
        "files": files,
        "grid_rule": "error_i = min + i*(max-min)/(count-1), i = 0..count-1",
    });
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    std::fs::write(out_dir.join("manifest.json"), text)?;
    Ok(())
}

pub fn run_sweep(cfg: &SweepConfig, preset: Option<&str>, out_dir: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let csv = sweep_csv(cfg)?;
    std::fs::write(out_dir.join(&cfg.output_path), csv)?;
    let mut files = vec![cfg.output_path.clone()];

    // optional per-point Q-function exports at the error-grid extremes and 0
    if cfg.outputs.contains(&OutputKind::Qfunction) {
        let spec = cfg.qgrid.expect("validated").to_spec();
        let f = field_params(cfg)?;
        for &n in &cfg.n_values {
            for (tag, error) in
                [("min", cfg.error_range.min), ("zero", 0.0), ("max", cfg.error_range.max)]
            {
                let s = point_series(cfg, &f, error, n.to_rescale()?)?;
                let grid = analytic::qfunction(&s, &f, spec)?;
                let name = format!("qfunc_n{}_{tag}.csv", n.label());
                std::fs::write(out_dir.join(&name), qgrid_csv(&grid))?;
                files.push(name);
            }
        }
    }

    let file_refs: Vec<&str> = files.iter().map(String::as_str).collect();
    write_manifest(out_dir, "sweep", preset, serde_json::to_value(cfg)?, &file_refs)?;
    Ok(())
}

fn qgrid_csv(grid: &analytic::QGrid) -> String {
    let mut out = String::from("re,im,q\n");
    for (re, im, q) in analytic::qgrid_rows(grid) {
        writeln!(out, "{re},{im},{q}").unwrap();
    }
    out
}

pub fn run_qfunc(
    cfg: &SweepConfig,
    preset: Option<&str>,
    error: f64,
    n: NSpec,
    out_dir: &Path,
) -> anyhow::Result<()> {
    let spec = cfg
        .qgrid
        .context("qfunc requires a qgrid spec in the config")?
        .to_spec();
    let f = field_params(cfg)?;
    let s = point_series(cfg, &f, error, n.to_rescale()?)?;
    let grid = analytic::qfunction(&s, &f, spec)?;
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join("qfunc.csv"), qgrid_csv(&grid))?;
    let mut config = serde_json::to_value(cfg)?;
    config["qfunc_point"] = json!({ "error": error, "n": n.label() });
    write_manifest(out_dir, "qfunc", preset, config, &["qfunc.csv"])?;
    Ok(())
}

/// Loop coefficients of a single gate configuration as pretty JSON.
pub fn coeffs_json(
    regime: Regime,
    strength: f64,
    n_pulses: Option<u64>,
    error: f64,
) -> anyhow::Result<String> {
    let (c, params): (LoopCoefficients, serde_json::Value) = match regime {
        Regime::Continuous => {
            let phi = (1.0 + error) * TAU;
            let p = ContinuousParams::new(strength, phi)?;
            (continuous_coefficients(p), json!({ "k": strength, "phi": phi }))
        }
        Regime::Pulsed => {
            let n_p = n_pulses.context("pulsed coeffs require --n-pulses")?;
            let theta = (1.0 + error) * TAU / n_p as f64;
            let p = PulseParams::new(strength, theta, n_p)?;
            (pulsed_coefficients(p), json!({ "lambda": strength, "theta": theta, "n_pulses": n_p }))
        }
    };
    let doc = json!({
        "params": params,
        "disp_x": c.disp_x,
        "disp_p": c.disp_p,
        "kerr": c.kerr,
    });
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// Trajectory CSV (`x,p` per sample) for a single gate configuration.
pub fn trajectory_csv(
    regime: Regime,
    strength: f64,
    n_pulses: Option<u64>,
    error: f64,
    samples: usize,
) -> anyhow::Result<String> {
    let traj: Trajectory = match regime {
        Regime::Continuous => {
            let phi = (1.0 + error) * TAU;
            trajectory_continuous(ContinuousParams::new(strength, phi)?, samples)?
        }
        Regime::Pulsed => {
            let n_p = n_pulses.context("pulsed trajectory requires --n-pulses")?;
            let theta = (1.0 + error) * TAU / n_p as f64;
            trajectory_pulsed(PulseParams::new(strength, theta, n_p)?)
        }
    };
    let mut out = String::from("x,p\n");
    for (x, p) in traj.points {
        writeln!(out, "{x},{p}").unwrap();
    }
    Ok(out)
}
