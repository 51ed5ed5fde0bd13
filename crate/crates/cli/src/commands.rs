use std::fmt::Write as _;

use serde_json::{json, Value};
use toral::asymptotics::{default_window, fit_mertens, hyperbolic_expansion_check, oscillation_report};
use toral::orbits::mertens_series;
use toral::resonance::{m_sequence, resonance_exact_block, resonance_log_constant, resonance_numeric};
use toral::{BigReal, Classification, Error, Real, ResonanceProfile, Result};

use crate::config::{Format, RunConfig, SequenceArgs};

/// Significant digits shown in human-readable tables.
const TABLE_DIGITS: u32 = 20;

fn dec(x: &BigReal) -> String {
    x.to_decimal(TABLE_DIGITS)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn merge(mut head: Value, body: Value) -> Value {
    if let (Some(h), Value::Object(b)) = (head.as_object_mut(), body) {
        h.extend(b);
    }
    head
}

pub fn classify(cfg: &RunConfig) -> Result<String> {
    let s = cfg.automorphism.spectrum(cfg.precision)?;
    if cfg.format == Format::Json {
        return Ok(pretty(&merge(cfg.provenance(), s.to_json())));
    }
    let mut out = String::new();
    writeln!(out, "{}, s={}, t={}, h={}", s.classification.as_str(), s.s, s.t, dec(&s.entropy_h)).unwrap();
    writeln!(out, "dimension      {}", s.dim()).unwrap();
    writeln!(out, "entropy h      {}", dec(&s.entropy_h)).unwrap();
    writeln!(out, "|Lambda|       {}", dec(&s.lambda_abs)).unwrap();
    let opt = |x: &Option<BigReal>| x.as_ref().map(dec).unwrap_or_else(|| "-".into());
    writeln!(out, "kappa          {}", opt(&s.kappa)).unwrap();
    writeln!(out, "R              {}", opt(&s.rate_r)).unwrap();
    for (i, theta) in s.unit_args.iter().enumerate() {
        writeln!(out, "theta_{:<8} {}", i + 1, dec(theta)).unwrap();
    }
    if !s.root_of_unity_orders.is_empty() {
        writeln!(out, "root-of-unity orders {:?}", s.root_of_unity_orders).unwrap();
    }
    Ok(out)
}

pub fn count(cfg: &RunConfig) -> Result<String> {
    let n_max = cfg.require_max_n()?;
    let table = mertens_series(&cfg.automorphism, n_max, cfg.working_digits)?;
    match cfg.format {
        Format::Csv => {
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "F": r.fix.to_string(),
                        "O": r.orbits.to_string(),
                        "M": r.mertens.to_decimal(cfg.working_digits),
                    })
                })
                .collect();
            Ok(pretty(&merge(
                cfg.provenance(),
                json!({
                    "entropy_h": table.entropy_h.to_decimal(cfg.working_digits),
                    "classification": table.classification.as_str(),
                    "rows": rows,
                }),
            )))
        }
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "{:>6}  {:>24}  {:>24}  M", "n", "F", "O").unwrap();
            for r in &table.rows {
                writeln!(out, "{:>6}  {:>24}  {:>24}  {}", r.n, r.fix, r.orbits, dec(&r.mertens)).unwrap();
            }
            Ok(out)
        }
    }
}

fn profile_for(cfg: &RunConfig) -> Result<ResonanceProfile> {
    match cfg.automorphism.block() {
        Some(b) => resonance_exact_block(b, cfg.precision),
        None => resonance_numeric(&cfg.automorphism.spectrum(cfg.precision)?),
    }
}

pub fn resonance(cfg: &RunConfig) -> Result<String> {
    cfg.automorphism.require_ergodic()?;
    let profile = profile_for(cfg)?;
    let log_constant = resonance_log_constant(&profile)?;
    let hyperbolic = profile.t == 0;
    let note = hyperbolic.then_some("hyperbolic: V_n = 1, so m = 1");
    if cfg.format == Format::Json {
        let mut body = profile.to_json();
        body["log_constant"] = Value::String(log_constant.to_decimal(cfg.precision));
        body["note"] = note.map(Value::from).unwrap_or(Value::Null);
        return Ok(pretty(&merge(cfg.provenance(), body)));
    }
    let mut out = String::new();
    writeln!(out, "m = {}", profile.m).unwrap();
    if let Some(n) = note {
        writeln!(out, "note: {n}").unwrap();
    }
    writeln!(out, "t = {}, method = {}, |Omega| = {}", profile.t, profile.method.as_str(), profile.omegas.len()).unwrap();
    writeln!(out, "log constant   {}", dec(&log_constant)).unwrap();
    writeln!(out, "{:>24}  {:>24}  {:>24}  K", "arg", "Re omega", "Im omega").unwrap();
    for r in &profile.omegas {
        writeln!(out, "{:>24}  {:>24}  {:>24}  {}", dec(&r.arg), dec(&r.omega.re), dec(&r.omega.im), r.k).unwrap();
    }
    Ok(out)
}

pub fn sequence(args: &SequenceArgs) -> Result<String> {
    if args.max_t == 0 {
        return Err(Error::InvalidArgument("--max-t must be at least 1".into()));
    }
    let seq = m_sequence(args.max_t);
    match args.format {
        Format::Json => Ok(pretty(&Value::Array(
            seq.iter().map(|x| Value::String(x.to_string())).collect(),
        ))),
        Format::Table | Format::Csv => Ok(seq.iter().map(|x| format!("{x}\n")).collect()),
    }
}

pub fn fit(cfg: &RunConfig) -> Result<String> {
    let n_max = cfg.require_max_n()?;
    let window = cfg.window.unwrap_or_else(|| default_window(n_max));
    toral::asymptotics::check_window(window, n_max)?;
    let table = mertens_series(&cfg.automorphism, n_max, cfg.working_digits)?;
    let fit = fit_mertens(&table, window, cfg.method)?;
    let osc = oscillation_report(&table, &fit);
    let exact_m = profile_for(cfg).ok().map(|p| p.m);
    let deviation = exact_m.as_ref().map(|m| {
        let m = BigReal::from_bigint(m, cfg.working_digits);
        ((fit.m_hat.clone() - m.clone()) / m).abs()
    });
    let expansion = if table.classification == Classification::Hyperbolic {
        let k1 = hyperbolic_expansion_check(&table, 1)?;
        let k2 = hyperbolic_expansion_check(&table, 2)?;
        Some((k1, k2))
    } else {
        None
    };
    let (lower, upper) = fit.half_window_maxima();
    let w = cfg.working_digits;
    if cfg.format == Format::Json {
        let exp_json = expansion.as_ref().map(|(k1, k2)| {
            json!({
                "range": [k1.range.0, k1.range.1],
                "tail_sign": k1.tail_sign,
                "max_abs_d_k1": k1.max_abs_deviation.to_decimal(w),
                "max_abs_d_k2": k2.max_abs_deviation.to_decimal(w),
                "wide_tolerance": k1.wide_tolerance,
            })
        });
        let body = json!({
            "classification": table.classification.as_str(),
            "method": fit.method.as_str(),
            "window": [window.0, window.1],
            "m_hat": fit.m_hat.to_decimal(w),
            "c_hat": fit.c_hat.to_decimal(w),
            "max_abs_residual_lower_half": lower.to_decimal(w),
            "max_abs_residual_upper_half": upper.to_decimal(w),
            "m_exact": exact_m.as_ref().map(|m| m.to_string()),
            "relative_deviation": deviation.as_ref().map(|d| d.to_decimal(w)),
            "oscillation": {
                "m_int": osc.m_int,
                "c_hat": osc.c_hat.to_decimal(w),
                "max_abs_scaled": osc.max_abs.to_decimal(w),
                "median_abs_scaled": osc.median_abs.to_decimal(w),
                "bounded": osc.bounded,
                "sign_changes": osc.sign_changes,
                "direction_changes": osc.direction_changes,
                "no_oscillation_detectable": osc.no_oscillation_detectable,
            },
            "expansion": exp_json,
        });
        return Ok(pretty(&merge(cfg.provenance(), body)));
    }
    let mut out = String::new();
    writeln!(out, "m_hat = {}  ({}, window {}:{})", dec(&fit.m_hat), fit.method.as_str(), window.0, window.1).unwrap();
    writeln!(out, "C_hat = {}", dec(&fit.c_hat)).unwrap();
    if let (Some(m), Some(d)) = (&exact_m, &deviation) {
        writeln!(out, "m (resonance) = {m}, relative deviation {}", d.to_decimal(6)).unwrap();
    }
    writeln!(out, "max |residual|: lower half {}, upper half {}", lower.to_decimal(6), upper.to_decimal(6)).unwrap();
    writeln!(
        out,
        "n*residual (m = {}): max {}, median {}, bounded {}, sign changes {}, direction changes {}",
        osc.m_int,
        osc.max_abs.to_decimal(6),
        osc.median_abs.to_decimal(6),
        osc.bounded,
        osc.sign_changes,
        osc.direction_changes
    )
    .unwrap();
    if osc.no_oscillation_detectable {
        writeln!(out, "no oscillation detectable").unwrap();
    }
    if let Some((k1, k2)) = &expansion {
        writeln!(
            out,
            "Euler-Maclaurin on {}:{}: max |D| k=1 {}, k=2 {}{}",
            k1.range.0,
            k1.range.1,
            k1.max_abs_deviation.to_decimal(6),
            k2.max_abs_deviation.to_decimal(6),
            if k1.wide_tolerance { " (short table, wide tolerance)" } else { "" }
        )
        .unwrap();
    }
    Ok(out)
}
