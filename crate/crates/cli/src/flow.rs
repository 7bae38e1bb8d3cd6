//! `evolve` and `exotic-evolve`.

use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use spinor_forge::dynamics::{
    exotic_density_check, integrate_density, liouville_check, massive_divergence_report, max_relative_drift,
    plane_wave, AvatarMap, Branch, DensitySample, ExoticFlow, ExoticTheta, IntegratorConfig, LinearFlow, LinearTheta,
    PlaneWave, Spin, SpinorField, LIOUVILLE_TOL, MAX_CONDITION,
};
use spinor_forge::json::matrix_from_json;

use crate::args::{ExoticArgs, Format, Global, SpinArg, WaveArgs};
use crate::input;
use crate::output::{open, write_json};

const DEFAULT_POINTS: usize = 100;
const EXOTIC_RATE_TOL: f64 = 1e-4;

fn wave(a: &WaveArgs) -> Result<PlaneWave> {
    let spin = match a.spin {
        SpinArg::Up => Spin::Up,
        SpinArg::Down => Spin::Down,
    };
    let w = if a.antiparticle {
        PlaneWave::new(a.p, a.mass, spin.two_spinor(), Branch::Antiparticle)
    } else {
        plane_wave(a.p, a.mass, spin)
    };
    w.map_err(|e| anyhow!("--p/--mass: {e}"))
}

fn avatar(arg: &str, seed: u64) -> Result<AvatarMap> {
    match arg.trim() {
        "identity" => Ok(AvatarMap::identity()),
        "random" => Ok(AvatarMap::random(&mut ChaCha8Rng::seed_from_u64(seed), MAX_CONDITION)),
        _ => {
            let v = input::json_arg("--phi", arg)?;
            let m = matrix_from_json::<f64>(&v).map_err(|e| anyhow!("--phi: {e}"))?;
            AvatarMap::new(m).map_err(|e| anyhow!("--phi: {e}"))
        }
    }
}

fn integrator(a: &WaveArgs) -> IntegratorConfig {
    IntegratorConfig { t0: a.t0, t1: a.t1, dt: a.dt, budget: a.budget, h: None }
}

fn wave_json(w: &PlaneWave, a: &WaveArgs) -> Value {
    json!({
        "p": w.p,
        "mass": w.mass,
        "branch": if w.branch == Branch::Particle { "particle" } else { "antiparticle" },
        "spin": if a.spin == SpinArg::Up { "up" } else { "down" },
        "x": a.x,
    })
}

fn emit(g: &Global, a: &WaveArgs, summary: &Value, trajectory: &[DensitySample]) -> Result<()> {
    match g.format {
        Format::Json => write_json(g.out.as_deref(), summary)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(open(g.out.as_deref())?);
            for s in trajectory {
                w.serialize(s)?;
            }
            w.flush()?;
            match &a.summary {
                Some(p) => write_json(Some(p), summary)?,
                None => {
                    let mut err = std::io::stderr().lock();
                    serde_json::to_writer_pretty(&mut err, summary)?;
                    writeln!(err)?;
                }
            }
        }
    }
    if let Some(p) = &a.plot {
        write_plot(p, trajectory)?;
    }
    Ok(())
}

pub fn evolve(a: &WaveArgs, g: &Global) -> Result<bool> {
    let w = wave(a)?;
    let phi = avatar(&a.phi, g.seed)?;
    let n = g.n.unwrap_or(DEFAULT_POINTS);
    let tol = g.tol.unwrap_or(LIOUVILLE_TOL);
    let massless = w.mass == 0.0;
    let survey = if massless {
        liouville_check(&w, &phi, n, None, g.seed, tol)?
    } else {
        massive_divergence_report(&w, &phi, n, None, g.seed)?
    };
    let flow = LinearFlow::plane_wave(&w, &phi);
    let psi0 = phi.pull_back(&w.value(a.x, a.t0));
    let cfg = integrator(a);
    let state = integrate_density(|_, p| flow.velocity(p), &psi0, a.rho0, &cfg).context("density integration")?;
    let drift = max_relative_drift(&state);
    let pass = !massless || (survey.pass && drift <= tol);
    let summary = json!({
        "wave": wave_json(&w, a),
        "phi_condition": phi.condition(),
        "analytic_divergence": flow.analytic_divergence(),
        "liouville": survey,
        "density": {
            "t0": a.t0,
            "t1": a.t1,
            "steps": state.trajectory.len() - 1,
            "rho0": a.rho0,
            "final_rho": state.rho,
            "max_relative_drift": drift,
            "max_error_estimate": state.max_error_estimate,
            "tolerance": tol,
        },
        "asserted": massless,
        "pass": pass,
    });
    emit(g, a, &summary, &state.trajectory)?;
    Ok(pass)
}

pub fn exotic_evolve(e: &ExoticArgs, g: &Global) -> Result<bool> {
    let a = &e.wave;
    let w = wave(a)?;
    let phi = avatar(&a.phi, g.seed)?;
    let tol = g.tol.unwrap_or(EXOTIC_RATE_TOL);
    let theta = LinearTheta { kappa: e.kappa, k: e.k, offset: e.theta0 };
    let dressing = (-theta.value(a.x, a.t0)).exp();
    let psi0 = phi.pull_back(&w.value(a.x, a.t0).scale(&dressing.into()));
    let condition = phi.condition();
    let flow = ExoticFlow::plane_wave(&w, phi, theta, a.x);
    let report = exotic_density_check(&flow, &psi0, a.rho0, &integrator(a)).context("density integration")?;
    let pass = report.max_rate_deviation <= tol;
    let summary = json!({
        "wave": wave_json(&w, a),
        "phi_condition": condition,
        "theta": theta,
        "density": report,
        "tolerance": tol,
        "pass": pass,
    });
    emit(g, a, &summary, &report.trajectory)?;
    Ok(pass)
}

/// Line chart of ρ against t.
fn write_plot(path: &Path, samples: &[DensitySample]) -> Result<()> {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 50.0;
    let (t_min, t_max) = samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| (a.min(s.t), b.max(s.t)));
    let (r_min, r_max) =
        samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| (a.min(s.rho), b.max(s.rho)));
    let span = |lo: f64, hi: f64| if hi > lo { hi - lo } else { 1.0 };
    let (ts, rs) = (span(t_min, t_max), span(r_min, r_max));
    let points: Vec<String> = samples
        .iter()
        .map(|s| {
            let x = PAD + (s.t - t_min) / ts * (W - 2.0 * PAD);
            let y = H - PAD - (s.rho - r_min) / rs * (H - 2.0 * PAD);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let mut f = std::fs::File::create(path).with_context(|| format!("--plot: cannot create `{}`", path.display()))?;
    writeln!(f, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#)?;
    writeln!(f, r#"<rect width="{W}" height="{H}" fill="white"/>"#)?;
    writeln!(
        f,
        r#"<path d="M{PAD},{PAD} V{} H{}" fill="none" stroke="black"/>"#,
        H - PAD,
        W - PAD
    )?;
    writeln!(f, r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#, points.join(" "))?;
    writeln!(f, r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">t</text>"#, W / 2.0, H - 10.0)?;
    writeln!(f, r#"<text x="15" y="{}" font-size="12">ρ</text>"#, H / 2.0)?;
    writeln!(f, r#"<text x="{PAD}" y="{}" font-size="10">{t_min}</text>"#, H - PAD + 15.0)?;
    writeln!(f, r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{t_max}</text>"#, W - PAD, H - PAD + 15.0)?;
    writeln!(f, r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{r_min:.6e}</text>"#, PAD - 4.0, H - PAD)?;
    writeln!(f, r#"<text x="{}" y="{PAD}" font-size="10" text-anchor="end">{r_max:.6e}</text>"#, PAD - 4.0)?;
    writeln!(f, "</svg>")?;
    Ok(())
}
