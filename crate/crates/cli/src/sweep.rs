use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use tjspec::conjecture::thm31_verdict;
use tjspec::families::{cross_check, FamilyError};
use tjspec::spectra::{subset_stats, ExactRatio};

use crate::args::{FamilyKind, Format, SweepArgs};
use crate::commands::DECIMAL_DIGITS;
use crate::{build_instance, CliError, Result};

pub const TSV_HEADER: &str = "family\tparams\tmu\ttau\tdelta_exact\tdelta_decimal\tthm31\tav_obs";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub family: &'static str,
    pub params: Vec<i64>,
    pub mu: usize,
    pub tau: usize,
    pub delta: ExactRatio,
    pub delta_decimal: String,
    /// The sufficient criterion for a positive defect holds.
    pub thm31: bool,
    /// `av^Tj <= av`
    pub av_obs: bool,
}

impl SweepRow {
    pub fn tsv(&self) -> String {
        let params: Vec<String> = self.params.iter().map(i64::to_string).collect();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.family,
            params.join(","),
            self.mu,
            self.tau,
            self.delta,
            self.delta_decimal,
            self.thm31,
            self.av_obs
        )
    }
}

/// Evaluates one tuple. `Ok(None)` means the tuple is outside the family.
pub fn evaluate(kind: FamilyKind, values: &[i64], localg: bool) -> Result<Option<SweepRow>> {
    let inst = match build_instance(kind, values) {
        Ok(inst) => inst,
        Err(CliError::Input(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    if localg {
        cross_check(&inst).map_err(|e| match e {
            FamilyError::SelfCheckFailed(_) | FamilyError::Condition81Violated { .. } => {
                CliError::Internal(format!("{kind:?} {values:?}: {e}"))
            }
            other => CliError::from(other),
        })?;
    }
    let t = inst
        .tjurina_indices()
        .ok_or_else(|| CliError::Internal("no Tjurina set".into()))?;
    let stats = subset_stats(inst.spectrum(), t).map_err(|e| CliError::Internal(e.to_string()))?;
    let family = inst.family().expect("built from a family");
    let verdict = thm31_verdict(&inst, family.is_swh())?;
    if verdict.guaranteed_failure && !stats.delta.is_positive() {
        return Err(CliError::Internal(format!(
            "{family}: sufficient criterion holds but delta = {}",
            stats.delta
        )));
    }
    Ok(Some(SweepRow {
        family: family.label(),
        params: values.to_vec(),
        mu: inst.mu(),
        tau: inst.tau(),
        delta_decimal: stats.delta.to_decimal(DECIMAL_DIGITS),
        delta: stats.delta,
        thm31: verdict.guaranteed_failure,
        av_obs: verdict.av_condition,
    }))
}

/// Cartesian product of the given value lists, lexicographic.
pub fn grid(lists: &[Vec<i64>]) -> Vec<Vec<i64>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect()
    })
}

/// Rows for every valid tuple, in tuple order regardless of `jobs`.
pub fn run_sweep(
    kind: FamilyKind,
    tuples: &[Vec<i64>],
    localg: bool,
    jobs: Option<usize>,
) -> Result<Vec<SweepRow>> {
    let work = || -> Vec<Result<Option<SweepRow>>> {
        tuples
            .par_iter()
            .map(|t| evaluate(kind, t, localg))
            .collect()
    };
    let results = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| CliError::Internal(e.to_string()))?
            .install(work),
        None => work(),
    };
    let mut rows = Vec::new();
    for r in results {
        if let Some(row) = r? {
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let names = args.family.param_names();
    let mut lists = Vec::with_capacity(names.len());
    for name in names {
        let range = args
            .params
            .get(name)
            .ok_or_else(|| CliError::Input(format!("--{name} is required for this family")))?;
        lists.push(range.0.clone());
    }
    let tuples: Vec<Vec<i64>> = grid(&lists)
        .into_iter()
        .filter(|t| !args.equal_ab || t[0] == t[1])
        .filter(|t| !args.b_le_a || t[1] <= t[0])
        .collect();
    let localg =
        !args.skip_localg && (args.cross_check || args.family == FamilyKind::ThreeMonomial);
    let rows = run_sweep(args.family, &tuples, localg, args.jobs)?;
    if rows.is_empty() {
        return Err(CliError::Input(
            "no valid parameter tuple in the given ranges".into(),
        ));
    }
    match args.format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&rows)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
        Format::Tsv | Format::Text => {
            writeln!(out, "{TSV_HEADER}")?;
            for row in &rows {
                writeln!(out, "{}", row.tsv())?;
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_order() {
        let g = grid(&[vec![1, 2], vec![5, 6]]);
        assert_eq!(g, vec![vec![1, 5], vec![1, 6], vec![2, 5], vec![2, 6]]);
    }

    #[test]
    fn invalid_tuples_are_skipped() {
        assert_eq!(
            evaluate(FamilyKind::Swh, &[4, 4, 2, 1], false).unwrap(),
            None
        );
        let row = evaluate(FamilyKind::Swh, &[7, 7, 1, 1], false)
            .unwrap()
            .unwrap();
        assert_eq!(row.delta.to_string(), "3/9604");
        assert!(!row.thm31 && row.av_obs);
    }
}
