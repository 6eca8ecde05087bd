//! CSV and JSON rendering. CSV files start with `#` metadata lines echoing
//! the parameters, then a header row. Floats are written in the shortest
//! scientific form that parses back to the same double.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::Result;
use crate::time_domain::{EvolutionTrajectory, IntegratorConfig, SteadyStateReport};
use crate::transport::{BiasWindow, Current, EquivalenceReport, TransmissionSpectrum};
use crate::tridiag::{ArithmeticMode, IdentityTerms, Scalar};
use crate::wire::WireParams;

pub const SCHEMA_VERSION: u32 = 1;

/// Shortest round-trip representation in scientific notation, e.g. `2.5e-1`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:e}")
}

fn fmt_scalar(s: &Scalar) -> String {
    match s {
        Scalar::Int(i) => i.to_string(),
        Scalar::Float(x) => fmt_f64(*x),
    }
}

fn scalar_json(s: &Scalar) -> Value {
    match s {
        // integers can exceed any JSON number type; keep every digit
        Scalar::Int(i) => Value::String(i.to_string()),
        Scalar::Float(x) => json!(x),
    }
}

fn finish_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn wire_meta(out: &mut String, p: &WireParams) {
    let _ = writeln!(out, "# n={}", p.n());
    for (k, x) in [
        ("eps0", p.eps0()),
        ("v", p.v()),
        ("gamma", p.gamma()),
        ("bandwidth", p.bandwidth()),
        ("v_lead", p.v_lead()),
    ] {
        let _ = writeln!(out, "# {k}={}", fmt_f64(x));
    }
}

pub fn identity_csv(alpha: f64, beta: f64, mode: ArithmeticMode, rows: &[IdentityTerms]) -> String {
    let mut out = String::from("# qwire identity\n");
    let _ = writeln!(out, "# alpha={}", fmt_f64(alpha));
    let _ = writeln!(out, "# beta={}", fmt_f64(beta));
    let _ = writeln!(out, "# mode={mode}");
    out.push_str("n,cofactor_sq,gap,residual\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.n,
            fmt_scalar(&r.cofactor_sq),
            fmt_scalar(&r.gap),
            fmt_scalar(&r.residual)
        );
    }
    out
}

pub fn identity_json(alpha: f64, beta: f64, mode: ArithmeticMode, rows: &[IdentityTerms]) -> String {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "cofactor_sq": scalar_json(&r.cofactor_sq),
                "gap": scalar_json(&r.gap),
                "residual": scalar_json(&r.residual),
            })
        })
        .collect();
    finish_json(json!({
        "schema_version": SCHEMA_VERSION,
        "command": "identity",
        "alpha": alpha,
        "beta": beta,
        "mode": mode.to_string(),
        "rows": rows,
    }))
}

pub fn spectrum_csv(s: &TransmissionSpectrum, from: f64, to: f64) -> String {
    let mut out = String::from("# qwire spectrum\n");
    wire_meta(&mut out, &s.params);
    let _ = writeln!(out, "# from={}", fmt_f64(from));
    let _ = writeln!(out, "# to={}", fmt_f64(to));
    let _ = writeln!(out, "# points={}", s.energies.len());
    let _ = writeln!(out, "# method={}", s.method);
    let diff = s.abs_diff();
    out.push_str("energy");
    if s.t_gf.is_some() {
        out.push_str(",t_gf");
    }
    if s.t_eo.is_some() {
        out.push_str(",t_eo");
    }
    if diff.is_some() {
        out.push_str(",abs_diff");
    }
    out.push('\n');
    for (i, &e) in s.energies.iter().enumerate() {
        out.push_str(&fmt_f64(e));
        for col in [&s.t_gf, &s.t_eo, &diff].into_iter().flatten() {
            out.push(',');
            out.push_str(&fmt_f64(col[i]));
        }
        out.push('\n');
    }
    out
}

pub fn spectrum_json(s: &TransmissionSpectrum, from: f64, to: f64) -> String {
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "spectrum",
        "params": s.params,
        "from": from,
        "to": to,
        "method": s.method,
        "energies": s.energies,
    });
    if let Some(t) = &s.t_gf {
        v["t_gf"] = json!(t);
    }
    if let Some(t) = &s.t_eo {
        v["t_eo"] = json!(t);
    }
    if let Some(d) = s.abs_diff() {
        v["abs_diff"] = json!(d);
        v["max_abs_diff"] = json!(s.max_abs_diff());
    }
    finish_json(v)
}

pub fn current_csv(p: &WireParams, bias: &BiasWindow, c: &Current) -> String {
    let mut out = String::from("# qwire current\n");
    wire_meta(&mut out, p);
    let _ = writeln!(out, "# mu_l={}", fmt_f64(bias.mu_left));
    let _ = writeln!(out, "# mu_r={}", fmt_f64(bias.mu_right));
    let _ = writeln!(out, "# temperature={}", fmt_f64(bias.temperature));
    out.push_str("value,error_estimate,window_lo,window_hi\n");
    let _ = writeln!(
        out,
        "{},{},{},{}",
        fmt_f64(c.value),
        fmt_f64(c.error_estimate),
        fmt_f64(c.window.0),
        fmt_f64(c.window.1)
    );
    out
}

pub fn current_json(p: &WireParams, bias: &BiasWindow, c: &Current) -> String {
    finish_json(json!({
        "schema_version": SCHEMA_VERSION,
        "command": "current",
        "params": p,
        "bias": bias,
        "value": c.value,
        "error_estimate": c.error_estimate,
        "window": [c.window.0, c.window.1],
    }))
}

fn summary_line(summary: &Result<SteadyStateReport>) -> String {
    match summary {
        Ok(r) => format!(
            "# summary window=[{},{}] max_modulus_deviation={} max_complex_deviation={} max_deviation={}\n",
            fmt_f64(r.window.0),
            fmt_f64(r.window.1),
            fmt_f64(r.max_modulus_deviation),
            fmt_f64(r.max_complex_deviation),
            fmt_f64(r.max_deviation)
        ),
        Err(e) => format!("# summary unavailable: {e}\n"),
    }
}

pub fn evolve_csv(
    traj: &EvolutionTrajectory,
    cfg: &IntegratorConfig,
    summary: &Result<SteadyStateReport>,
) -> String {
    let mut out = String::from("# qwire evolve\n");
    wire_meta(&mut out, &traj.params);
    let _ = writeln!(out, "# drive_energy={}", fmt_f64(traj.drive_energy));
    let _ = writeln!(out, "# drive_amplitude={}", fmt_f64(traj.drive_amplitude));
    let _ = writeln!(out, "# dt={}", fmt_f64(cfg.dt));
    let _ = writeln!(out, "# t_max={}", fmt_f64(cfg.t_max));
    let _ = writeln!(out, "# window={}", fmt_f64(cfg.convergence_window));
    let _ = writeln!(out, "# stride={}", cfg.sample_stride);
    out.push('t');
    for i in 1..=traj.params.n() {
        let _ = write!(out, ",re_u{i},im_u{i},abs_u{i}");
    }
    out.push('\n');
    for (k, &t) in traj.times.iter().enumerate() {
        out.push_str(&fmt_f64(t));
        for z in &traj.u[k] {
            let _ = write!(out, ",{},{},{}", fmt_f64(z.re), fmt_f64(z.im), fmt_f64(z.norm()));
        }
        out.push('\n');
    }
    out.push_str(&summary_line(summary));
    out
}

pub fn evolve_json(
    traj: &EvolutionTrajectory,
    cfg: &IntegratorConfig,
    summary: &Result<SteadyStateReport>,
) -> String {
    let u: Vec<Vec<[f64; 2]>> = traj
        .u
        .iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect();
    let summary = match summary {
        Ok(r) => json!(r),
        Err(e) => json!({ "error": e.to_string() }),
    };
    finish_json(json!({
        "schema_version": SCHEMA_VERSION,
        "command": "evolve",
        "params": traj.params,
        "drive_energy": traj.drive_energy,
        "drive_amplitude": traj.drive_amplitude,
        "integrator": cfg,
        "times": traj.times,
        "u": u,
        "steady_state": summary,
    }))
}

pub fn equivalence_csv(p: &WireParams, r: &EquivalenceReport) -> String {
    let mut out = String::from("# qwire equivalence\n");
    wire_meta(&mut out, p);
    let _ = writeln!(out, "# max_abs_diff={}", fmt_f64(r.max_abs_diff));
    let _ = writeln!(out, "# max_abs_hat_gap={}", fmt_f64(r.max_abs_hat_gap));
    let _ = writeln!(out, "# max_bridge_rel={}", fmt_f64(r.max_bridge_rel));
    out.push_str("energy,t_gf,t_eo,abs_diff,hat_gap,bridge_rel\n");
    for i in 0..r.energies.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_f64(r.energies[i]),
            fmt_f64(r.t_gf[i]),
            fmt_f64(r.t_eo[i]),
            fmt_f64(r.abs_diff[i]),
            fmt_f64(r.hat_gap[i]),
            fmt_f64(r.bridge_rel[i])
        );
    }
    out
}

pub fn equivalence_json(p: &WireParams, r: &EquivalenceReport) -> String {
    finish_json(json!({
        "schema_version": SCHEMA_VERSION,
        "command": "equivalence",
        "params": p,
        "report": r,
    }))
}
