//! The variance defect `δ = Var − (α_max − α_min)/12` of Tjurina subspectra,
//! sufficient criteria for `δ > 0`, single-swap and single-removal comparison
//! rules, and enumeration of candidate Tjurina subspectra of μ-constant
//! deformations.

use std::cmp::Ordering;

use num_bigint::BigUint;
use thiserror::Error;

use crate::families::{FamilyError, PuiseuxParams, TjurinaInstance};
use crate::spectra::{
    subset_stats, sum_of_squares, ExactRatio, IndexSet, Spectrum, SpectrumError, SubsetStats,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConjectureError {
    #[error("the instance has no Tjurina index set")]
    TjurinaSubsetUnset,
    #[error("μ - τ must be positive")]
    GapZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index {index} is not in the subset")]
    IndexNotInSubset { index: usize },
    #[error("subset has {len} element(s), need at least 2")]
    SubsetTooSmall { len: usize },
    #[error("the two multisets do not differ by exactly one element")]
    NotSingleSwap,
    /// The removed value does not exceed the added one; holds both, as text.
    #[error("swapped value {0} must exceed its replacement {1}")]
    WrongDirection(String, String),
    #[error("τ = {tau} exceeds μ = {mu}")]
    TauExceedsMu { tau: usize, mu: usize },
    #[error("c = {0} must be odd and positive")]
    EvenC(u64),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

pub type Result<T> = std::result::Result<T, ConjectureError>;

fn tjurina_stats(inst: &TjurinaInstance) -> Result<SubsetStats> {
    let indices = inst
        .tjurina_indices()
        .ok_or(ConjectureError::TjurinaSubsetUnset)?;
    Ok(subset_stats(inst.spectrum(), indices)?)
}

/// `δ^Tj`; positive means the original inequality fails for this instance.
pub fn tjurina_defect(inst: &TjurinaInstance) -> Result<ExactRatio> {
    Ok(tjurina_stats(inst)?.delta)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm31Verdict {
    pub is_swh: bool,
    pub mu_ne_tau: bool,
    /// `av^Tj <= av_f`
    pub av_condition: bool,
    /// `α_μ − α_1 <= 2`
    pub width_condition: bool,
    /// `μ/12 · (α_μ − α^Tj_τ) >= (μ − τ) α_μ²`
    pub cond_3_3: bool,
    pub guaranteed_failure: bool,
}

/// Evaluates the sufficient criterion for `δ^Tj > 0`. `is_swh` must be
/// supplied by the caller; it is not decided from the polynomial.
pub fn thm31_verdict(inst: &TjurinaInstance, is_swh: bool) -> Result<Thm31Verdict> {
    let stats = tjurina_stats(inst)?;
    let s = inst.spectrum();
    let mu = inst.mu();
    let tau = inst.tau();
    let mu_r = ExactRatio::from(mu as i64);
    let gap = ExactRatio::from((mu - tau) as i64);
    let alpha_mu = s.max();

    let av_condition = stats.av <= s.average();
    let width_condition = s.width() <= ExactRatio::from(2);
    let cond_3_3 =
        &mu_r / ExactRatio::from(12) * (alpha_mu - &stats.alpha_max) >= gap * alpha_mu.square();
    let mu_ne_tau = mu != tau;
    Ok(Thm31Verdict {
        is_swh,
        mu_ne_tau,
        av_condition,
        width_condition,
        cond_3_3,
        guaranteed_failure: is_swh && mu_ne_tau && (width_condition || av_condition) && cond_3_3,
    })
}

/// For an ordinary `m`-fold point in `n` variables: `(m−1)^n >= 12·m·n²·gap`.
pub fn mple_failure_bound(m: u32, n: u32, gap: u64) -> Result<bool> {
    if gap == 0 {
        return Err(ConjectureError::GapZero);
    }
    if m < 2 || n < 1 {
        return Err(ConjectureError::InvalidArgument(format!(
            "need m >= 2 and n >= 1, got m={m} n={n}"
        )));
    }
    let lhs = BigUint::from(m - 1).pow(n);
    let rhs = BigUint::from(12u32) * m * BigUint::from(n).pow(2) * gap;
    Ok(lhs >= rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop41Step {
    /// `(α_{i0} − av_T)² >= (α_T^max − α_T^min)/12`
    pub hypothesis_42: bool,
    pub extremes_preserved: bool,
    pub guaranteed: bool,
    pub before: SubsetStats,
    pub after: SubsetStats,
}

/// Removes the 1-based index `i0` from `subset`. When the removed value is not
/// extremal and far enough from the mean, `δ <= 0` passes from `T` to
/// `T ∖ {i0}`; this is checked and a violation reported as an internal error.
pub fn prop41_step(s: &Spectrum, subset: &IndexSet, i0: usize) -> Result<Prop41Step> {
    if !subset.contains(&i0) {
        return Err(ConjectureError::IndexNotInSubset { index: i0 });
    }
    if subset.len() < 2 {
        return Err(ConjectureError::SubsetTooSmall { len: subset.len() });
    }
    let before = subset_stats(s, subset)?;
    let mut rest = subset.clone();
    rest.remove(&i0);
    let after = subset_stats(s, &rest)?;
    let alpha = s.value(i0).ok_or(SpectrumError::IndexOutOfRange {
        index: i0,
        mu: s.mu(),
    })?;

    let extremes_preserved =
        after.alpha_max == before.alpha_max && after.alpha_min == before.alpha_min;
    let hypothesis_42 = (alpha - &before.av).square() >= before.width() / ExactRatio::from(12);
    let guaranteed = extremes_preserved && hypothesis_42 && !before.delta.is_positive();

    if extremes_preserved && hypothesis_42 && before.tau_delta() < after.tau_delta() {
        return Err(ConjectureError::Internal(format!(
            "τδ grew from {} to {} on removing index {i0}",
            before.tau_delta(),
            after.tau_delta()
        )));
    }
    if guaranteed && after.delta.is_positive() {
        return Err(ConjectureError::Internal(format!(
            "δ became positive ({}) on removing index {i0}",
            after.delta
        )));
    }
    Ok(Prop41Step {
        hypothesis_42,
        extremes_preserved,
        guaranteed,
        before,
        after,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwapCase {
    /// The maximum drops by exactly `β − β'`.
    MaxDrops,
    /// The maximum is unchanged.
    MaxFixed,
    Inapplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwapPrediction {
    /// `δ_T < δ_T'`
    DeltaLess,
    /// `δ_T > δ_T'`
    DeltaGreater,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapComparison {
    pub case: SwapCase,
    pub prediction: SwapPrediction,
    pub beta: ExactRatio,
    pub beta_prime: ExactRatio,
    pub stats: SubsetStats,
    pub stats_prime: SubsetStats,
}

/// The single elements by which two equal-size multisets differ, if exactly
/// one value was swapped.
fn single_swap(t: &[ExactRatio], tp: &[ExactRatio]) -> Option<(ExactRatio, ExactRatio)> {
    if t.len() != tp.len() {
        return None;
    }
    let mut a = t.to_vec();
    let mut b = tp.to_vec();
    a.sort();
    b.sort();
    let (mut i, mut j) = (0, 0);
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                Ordering::Less => {
                    only_a.push(x.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    only_b.push(y.clone());
                    j += 1;
                }
            },
            (Some(x), None) => {
                only_a.push(x.clone());
                i += 1;
            }
            (None, Some(y)) => {
                only_b.push(y.clone());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    match (only_a.as_slice(), only_b.as_slice()) {
        ([x], [y]) => Some((x.clone(), y.clone())),
        _ => None,
    }
}

/// Compares `δ` of two subspectra differing by one value `β ∈ T` replaced by
/// `β' ∈ T'` with `β > β'`.
///
/// Predictions use strict inequalities: at equality the two defects coincide.
/// A swap that moves the minimum is reported as inapplicable.
pub fn remark32_compare(t: &[ExactRatio], t_prime: &[ExactRatio]) -> Result<SwapComparison> {
    let (beta, beta_prime) = single_swap(t, t_prime).ok_or(ConjectureError::NotSingleSwap)?;
    if beta <= beta_prime {
        return Err(ConjectureError::WrongDirection(
            beta.to_string(),
            beta_prime.to_string(),
        ));
    }
    let stats = SubsetStats::from_values(t)?;
    let stats_prime = SubsetStats::from_values(t_prime)?;
    let tau = ExactRatio::from(t.len() as i64);
    let diff = &beta - &beta_prime;
    let sum = &beta + &beta_prime;
    let av_sum = &stats.av + &stats_prime.av;

    if sum_of_squares(t) - sum_of_squares(t_prime) != &diff * &sum
        || &tau * (stats.av.square() - stats_prime.av.square()) != &diff * &av_sum
    {
        return Err(ConjectureError::Internal(
            "sum-of-squares identities fail for a single swap".into(),
        ));
    }

    let max_drop = &stats.alpha_max - &stats_prime.alpha_max;
    let case = if stats.alpha_min != stats_prime.alpha_min {
        SwapCase::Inapplicable
    } else if max_drop == diff {
        SwapCase::MaxDrops
    } else if max_drop.is_zero() {
        SwapCase::MaxFixed
    } else {
        SwapCase::Inapplicable
    };
    let prediction = match case {
        SwapCase::MaxDrops if sum < &av_sum + &tau / ExactRatio::from(12) => {
            SwapPrediction::DeltaLess
        }
        SwapCase::MaxFixed if sum > av_sum => SwapPrediction::DeltaGreater,
        _ => SwapPrediction::None,
    };
    let agrees = match prediction {
        SwapPrediction::DeltaLess => stats.delta < stats_prime.delta,
        SwapPrediction::DeltaGreater => stats.delta > stats_prime.delta,
        SwapPrediction::None => true,
    };
    if !agrees {
        return Err(ConjectureError::Internal(format!(
            "predicted {prediction:?} but δ = {} and δ' = {}",
            stats.delta, stats_prime.delta
        )));
    }
    Ok(SwapComparison {
        case,
        prediction,
        beta,
        beta_prime,
        stats,
        stats_prime,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRecord {
    pub tau_prime: usize,
    /// Size of the top block of missing indices.
    pub j: usize,
    pub missing: IndexSet,
    pub stats: SubsetStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Smallest index with `α_k > α_1 + 1`, or `μ + 1`.
    pub k: usize,
    pub requested_slack: usize,
    pub used_slack: usize,
    pub clamped: bool,
    pub candidates: Vec<CandidateRecord>,
}

/// Candidate Tjurina subspectra for `τ' = τ, τ−1, …, τ−A`: the missing
/// indices are a top block `{μ−j+1, …, μ}` plus a block starting at `k`.
/// Output is ordered by descending `τ'`, then descending `j`.
pub fn enumerate_candidates(s: &Spectrum, tau: usize, slack: usize) -> Result<Enumeration> {
    let mu = s.mu();
    if tau > mu {
        return Err(ConjectureError::TauExceedsMu { tau, mu });
    }
    let threshold = s.min() + &ExactRatio::one();
    let k = s
        .values()
        .iter()
        .position(|v| *v > threshold)
        .map_or(mu + 1, |p| p + 1);

    let mut used = slack;
    let mut clamped = false;
    if (k as i64) > tau as i64 - slack as i64 + 1 {
        used = (tau as i64 - k as i64 + 1).max(0) as usize;
        clamped = used != slack;
    }

    let mut candidates = Vec::new();
    for tau_prime in (tau - used..=tau).rev() {
        for j in (1..=mu - tau_prime).rev() {
            if !(j == mu - tau_prime || tau_prime >= k) {
                continue;
            }
            let middle = k..k + (mu - tau_prime - j);
            let top = mu - j + 1..=mu;
            let missing: IndexSet = middle.clone().chain(top).collect();
            if missing.len() != mu - tau_prime || (!middle.is_empty() && middle.end > mu - j + 1) {
                return Err(ConjectureError::Internal(format!(
                    "τ' = {tau_prime}, j = {j}: middle block {middle:?} overlaps the top block"
                )));
            }
            let retained: IndexSet = (1..=mu).filter(|i| !missing.contains(i)).collect();
            if retained.len() != tau_prime {
                return Err(ConjectureError::Internal(format!(
                    "τ' = {tau_prime}, j = {j}: kept {} indices",
                    retained.len()
                )));
            }
            let stats = subset_stats(s, &retained)?;
            candidates.push(CandidateRecord {
                tau_prime,
                j,
                missing,
                stats,
            });
        }
    }
    Ok(Enumeration {
        k,
        requested_slack: slack,
        used_slack: used,
        clamped,
        candidates,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormMode {
    /// `T = I ∖ {μ}`, `τ = c + 14`
    Nonconsecutive,
    /// `T = [1, μ − 2]`, `τ = c + 13`
    Consecutive,
}

/// Closed forms of `τδ_T` for the two-pair family `(3, 2), (c, 2)`, `c` odd.
pub fn closed_form_tau_delta_322(c: u64, mode: ClosedFormMode) -> Result<ExactRatio> {
    if c.is_multiple_of(2) {
        return Err(ConjectureError::EvenC(c));
    }
    let c = ExactRatio::from(c as i64);
    let poly = |coeffs: &[i64]| {
        coeffs
            .iter()
            .fold(ExactRatio::zero(), |acc, &k| acc * &c + ExactRatio::from(k))
    };
    let (num, den) = match mode {
        ClosedFormMode::Nonconsecutive => (poly(&[1, 37, 455, 1764]), poly(&[144, 3744, 24192])),
        ClosedFormMode::Consecutive => (
            poly(&[1, 59, 1247, 10992, 33840]),
            poly(&[144, 5328, 65664, 269568]),
        ),
    };
    Ok(-(num / den))
}

/// Puiseux parameters `(a, b, d, q, r) = (3, 2, 2, (c−3)/2, 1)` realizing the
/// pairs `(3, 2), (c, 2)`, so `μ = c + 15`.
pub fn closed_form_params(c: u64) -> Result<PuiseuxParams> {
    if c.is_multiple_of(2) {
        return Err(ConjectureError::EvenC(c));
    }
    Ok(PuiseuxParams::new(3, 2, 2, (c as i64 - 3) / 2, 1)?)
}

/// `τδ_T` computed directly from the spectrum, for comparison with
/// [`closed_form_tau_delta_322`].
pub fn direct_tau_delta_322(c: u64, mode: ClosedFormMode) -> Result<ExactRatio> {
    let s = crate::families::puiseux_spectrum(closed_form_params(c)?)?;
    let mu = s.mu();
    let keep = match mode {
        ClosedFormMode::Nonconsecutive => mu - 1,
        ClosedFormMode::Consecutive => mu - 2,
    };
    let subset: IndexSet = (1..=keep).collect();
    Ok(subset_stats(&s, &subset)?.tau_delta())
}
