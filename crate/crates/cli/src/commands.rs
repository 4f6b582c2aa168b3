use std::io::Write;

use serde_json::json;

use tjspec::conjecture::{enumerate_candidates, thm31_verdict, Thm31Verdict};
use tjspec::families::{brieskorn_two_var, cross_check, TjurinaInstance};
use tjspec::localg::{self, parse_poly};
use tjspec::spectra::{subset_stats, ExactRatio};

use crate::args::{EnumerateArgs, FamilyKind, Format, InstanceArgs, PolyArgs};
use crate::{build_instance, single_params, CliError, Result};

pub const DECIMAL_DIGITS: usize = 12;

fn join(values: &[ExactRatio]) -> String {
    values
        .iter()
        .map(ExactRatio::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn strings(values: &[ExactRatio]) -> Vec<String> {
    values.iter().map(ExactRatio::to_string).collect()
}

/// `3/9604 (+)`, `-1/324 (-)` or `0`.
pub fn signed(delta: &ExactRatio) -> String {
    match delta.signum() {
        1 => format!("{delta} (+)"),
        -1 => format!("{delta} (-)"),
        _ => delta.to_string(),
    }
}

fn family_line(inst: &TjurinaInstance) -> String {
    inst.family()
        .map_or_else(|| "unknown".to_string(), ToString::to_string)
}

fn load(args: &InstanceArgs) -> Result<TjurinaInstance> {
    let values = single_params(args.family, &args.params)?;
    let inst = build_instance(args.family, &values)?;
    if args.cross_check {
        cross_check(&inst)?;
    }
    Ok(inst)
}

pub fn spectrum(args: &InstanceArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = load(args)?;
    let s = inst.spectrum();
    let mask: Vec<bool> = (1..=s.mu())
        .map(|i| inst.tjurina_indices().is_some_and(|t| t.contains(&i)))
        .collect();
    let missing = inst.missing_values().unwrap_or_default();
    let assumed = args.family == FamilyKind::Puiseux;
    match args.format {
        Format::Json => {
            let doc = json!({
                "family": inst.family().map(|f| f.label()),
                "params": inst.family().map(|f| f.params()),
                "mu": inst.mu(),
                "tau": inst.tau(),
                "spectrum": strings(s.values()),
                "tjurina_mask": mask,
                "missing": strings(&missing),
                "consecutive_assumed": assumed,
                "cross_checked": args.cross_check,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text | Format::Tsv => {
            writeln!(out, "family = {}", family_line(&inst))?;
            writeln!(out, "mu = {}", inst.mu())?;
            writeln!(out, "tau = {}", inst.tau())?;
            writeln!(out, "spectrum = {}", join(s.values()))?;
            let bits: String = mask.iter().map(|&b| if b { '1' } else { '0' }).collect();
            writeln!(out, "tjurina_mask = {bits}")?;
            writeln!(out, "missing = {}", join(&missing))?;
            if assumed {
                writeln!(out, "note = Tjurina set assumed to be [1, tau]")?;
            }
            if args.cross_check {
                writeln!(out, "cross_check = ok")?;
            }
        }
    }
    Ok(0)
}

fn verdict_line(v: &Thm31Verdict) -> String {
    format!(
        "is_swh={} mu_ne_tau={} av_condition={} width_condition={} cond_3_3={} guaranteed_failure={}",
        v.is_swh, v.mu_ne_tau, v.av_condition, v.width_condition, v.cond_3_3, v.guaranteed_failure
    )
}

pub fn check(args: &InstanceArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = load(args)?;
    let t = inst
        .tjurina_indices()
        .ok_or_else(|| CliError::Internal("no Tjurina set".into()))?;
    let stats = subset_stats(inst.spectrum(), t).map_err(|e| CliError::Internal(e.to_string()))?;
    let is_swh = inst.family().is_some_and(|f| f.is_swh());
    let v = thm31_verdict(&inst, is_swh)?;
    if v.guaranteed_failure && !stats.delta.is_positive() {
        return Err(CliError::Internal(format!(
            "sufficient criterion holds but delta = {}",
            stats.delta
        )));
    }
    let av = inst.spectrum().average();
    match args.format {
        Format::Json => {
            let doc = json!({
                "family": inst.family().map(|f| f.label()),
                "params": inst.family().map(|f| f.params()),
                "mu": inst.mu(),
                "tau": inst.tau(),
                "delta": stats.delta.to_string(),
                "delta_decimal": stats.delta.to_decimal(DECIMAL_DIGITS),
                "av_tj": stats.av.to_string(),
                "av": av.to_string(),
                "is_swh": v.is_swh,
                "mu_ne_tau": v.mu_ne_tau,
                "av_condition": v.av_condition,
                "width_condition": v.width_condition,
                "cond_3_3": v.cond_3_3,
                "guaranteed_failure": v.guaranteed_failure,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text | Format::Tsv => {
            writeln!(out, "family = {}", family_line(&inst))?;
            writeln!(out, "mu = {}", inst.mu())?;
            writeln!(out, "tau = {}", inst.tau())?;
            writeln!(out, "delta = {}", signed(&stats.delta))?;
            writeln!(
                out,
                "delta_decimal = {}",
                stats.delta.to_decimal(DECIMAL_DIGITS)
            )?;
            writeln!(out, "av_tj = {}", stats.av)?;
            writeln!(out, "av = {av}")?;
            writeln!(out, "thm31 = {}", verdict_line(&v))?;
        }
    }
    Ok(0)
}

/// `(a, b)` if `poly` is `u·x^a + v·y^b` with `a, b >= 2` and nonzero `u, v`.
fn brieskorn_exponents(text: &str) -> Result<(u32, u32)> {
    let p = parse_poly(text, 2)?;
    let unsupported = || {
        CliError::Input(format!(
            "enumerate supports only x^a+y^b with a, b >= 2, got {text:?}"
        ))
    };
    let mut a = None;
    let mut b = None;
    for (m, _) in p.terms() {
        let [i, j, _] = m.exponents();
        match (i, j) {
            (i, 0) if i >= 2 && a.is_none() => a = Some(i),
            (0, j) if j >= 2 && b.is_none() => b = Some(j),
            _ => return Err(unsupported()),
        }
    }
    match (a, b) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(unsupported()),
    }
}

pub fn enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> Result<i32> {
    let (a, b) = brieskorn_exponents(&args.poly)?;
    let s = brieskorn_two_var(a, b)?;
    let mu = s.mu();
    let e = enumerate_candidates(&s, mu, args.slack)?;
    match args.format {
        Format::Json => {
            let rows: Vec<_> = e
                .candidates
                .iter()
                .map(|c| {
                    json!({
                        "tau_prime": c.tau_prime,
                        "j": c.j,
                        "max_index": mu - c.j,
                        "missing": c.missing,
                        "delta": c.stats.delta.to_string(),
                        "delta_decimal": c.stats.delta.to_decimal(DECIMAL_DIGITS),
                    })
                })
                .collect();
            let doc = json!({
                "poly": args.poly,
                "mu": mu,
                "tau": mu,
                "k": e.k,
                "requested_slack": e.requested_slack,
                "used_slack": e.used_slack,
                "clamped": e.clamped,
                "candidates": rows,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text | Format::Tsv => {
            writeln!(out, "# f = x^{a}+y^{b}, mu = {mu}, tau = {mu}, k = {}", e.k)?;
            if e.k <= mu {
                let prev = s.value(e.k - 1).expect("k >= 2");
                let at = s.value(e.k).expect("k <= mu");
                writeln!(out, "# alpha_{} = {prev}, alpha_{} = {at}", e.k - 1, e.k)?;
            }
            if e.clamped {
                writeln!(out, "# A replaced by {}", e.used_slack)?;
            }
            writeln!(out, "tau_prime\tj\tmax_index\tdelta_exact\tdelta_decimal")?;
            for c in &e.candidates {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    c.tau_prime,
                    c.j,
                    mu - c.j,
                    c.stats.delta,
                    c.stats.delta.to_decimal(DECIMAL_DIGITS)
                )?;
            }
        }
    }
    Ok(0)
}

/// `milnor` or, with `tjurina`, `tjurina`.
pub fn milnor(args: &PolyArgs, out: &mut dyn Write, tjurina: bool) -> Result<i32> {
    let nvars = args
        .vars
        .unwrap_or(if args.poly.contains('z') { 3 } else { 2 });
    let p = parse_poly(&args.poly, nvars)?;
    let (key, value) = if tjurina {
        ("tau", localg::tjurina(&p)?)
    } else {
        ("mu", localg::milnor(&p)?)
    };
    match args.format {
        Format::Json => writeln!(out, "{}", json!({ "poly": p.to_string(), key: value }))?,
        Format::Text | Format::Tsv => writeln!(out, "{key} = {value}")?,
    }
    Ok(0)
}
