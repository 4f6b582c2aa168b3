//! Spectra as sorted multisets of exact rationals, and the variance / width
//! statistics every other module is built on.
//!
//! Indices into a spectrum are 1-based throughout the crate: `α_1` is the
//! smallest spectral number and `α_μ` the largest.

mod ratio;

use std::collections::BTreeSet;

use thiserror::Error;

pub use ratio::{ratio, ExactRatio, ParseRatioError};

/// A set of 1-based spectral indices.
pub type IndexSet = BTreeSet<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("spectrum has no values")]
    EmptySpectrum,
    #[error("spectral value {value} is outside the open interval (0, {n})")]
    ValueOutOfRange { value: Box<ExactRatio>, n: u32 },
    #[error("symmetry fails at index {index}: {low} + {high} != {n}")]
    SymmetryViolation {
        index: usize,
        low: Box<ExactRatio>,
        high: Box<ExactRatio>,
        n: u32,
    },
    #[error("index subset is empty")]
    EmptySubset,
    #[error("index {index} is outside [1, {mu}]")]
    IndexOutOfRange { index: usize, mu: usize },
}

/// Weakly increasing spectral numbers of an isolated singularity in `n`
/// variables. `mu` is the number of values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    values: Vec<ExactRatio>,
    n: u32,
    complete: bool,
}

impl Spectrum {
    /// Builds a spectrum, sorting the values stably (equal values keep their
    /// input order). With `complete` set, the symmetry `α_i + α_{μ+1-i} = n`
    /// is checked and recorded.
    pub fn new(mut values: Vec<ExactRatio>, n: u32, complete: bool) -> Result<Self, SpectrumError> {
        if values.is_empty() {
            return Err(SpectrumError::EmptySpectrum);
        }
        let upper = ExactRatio::from(i64::from(n));
        if let Some(bad) = values.iter().find(|v| !v.is_positive() || **v >= upper) {
            return Err(SpectrumError::ValueOutOfRange {
                value: Box::new(bad.clone()),
                n,
            });
        }
        values.sort();
        if complete {
            let mu = values.len();
            for i in 0..mu / 2 + mu % 2 {
                let j = mu - 1 - i;
                if &values[i] + &values[j] != upper {
                    return Err(SpectrumError::SymmetryViolation {
                        index: i + 1,
                        low: Box::new(values[i].clone()),
                        high: Box::new(values[j].clone()),
                        n,
                    });
                }
            }
        }
        Ok(Spectrum {
            values,
            n,
            complete,
        })
    }

    pub fn values(&self) -> &[ExactRatio] {
        &self.values
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mu(&self) -> usize {
        self.values.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `α_i`, 1-based.
    pub fn value(&self, index: usize) -> Option<&ExactRatio> {
        index.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn min(&self) -> &ExactRatio {
        &self.values[0]
    }

    pub fn max(&self) -> &ExactRatio {
        self.values.last().expect("spectrum is nonempty")
    }

    pub fn average(&self) -> ExactRatio {
        average_of(&self.values)
    }

    /// Variance centred at the computed average (not at `n/2`), so the same
    /// definition serves full spectra and subsets.
    pub fn variance(&self) -> ExactRatio {
        centered_variance(&self.values, &self.average())
    }

    pub fn width(&self) -> ExactRatio {
        self.max() - self.min()
    }

    /// `Var - (α_μ - α_1)/12`; Hertling's inequality is `<= 0`.
    pub fn hertling_defect(&self) -> ExactRatio {
        self.variance() - self.width() / ExactRatio::from(12)
    }

    /// The full index set `[1, μ]`.
    pub fn all_indices(&self) -> IndexSet {
        (1..=self.mu()).collect()
    }

    /// Values at the given indices, in index order.
    pub fn select(&self, indices: &IndexSet) -> Result<Vec<ExactRatio>, SpectrumError> {
        indices
            .iter()
            .map(|&i| {
                self.value(i)
                    .cloned()
                    .ok_or(SpectrumError::IndexOutOfRange {
                        index: i,
                        mu: self.mu(),
                    })
            })
            .collect()
    }

    /// Maximal runs of equal values as 1-based inclusive index ranges.
    pub fn levels(&self) -> Vec<(ExactRatio, std::ops::RangeInclusive<usize>)> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.values.len() {
            if i == self.values.len() || self.values[i] != self.values[start] {
                out.push((self.values[start].clone(), start + 1..=i));
                start = i;
            }
        }
        out
    }
}

/// Convenience wrapper matching the free-function style of the other modules.
pub fn make_spectrum(
    values: Vec<ExactRatio>,
    n: u32,
    complete: bool,
) -> Result<Spectrum, SpectrumError> {
    Spectrum::new(values, n, complete)
}

/// Summary statistics of a sub-multiset of spectral numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetStats {
    pub tau: usize,
    pub av: ExactRatio,
    pub var: ExactRatio,
    pub alpha_min: ExactRatio,
    pub alpha_max: ExactRatio,
    /// `var - (alpha_max - alpha_min)/12`
    pub delta: ExactRatio,
}

impl SubsetStats {
    pub fn from_values(values: &[ExactRatio]) -> Result<Self, SpectrumError> {
        if values.is_empty() {
            return Err(SpectrumError::EmptySubset);
        }
        let tau = values.len();
        let av = average_of(values);
        let var = centered_variance(values, &av);
        debug_assert_eq!(
            &var * ExactRatio::from(tau as i64),
            sum_of_squares(values) - av.square() * ExactRatio::from(tau as i64),
            "sum of squares identity"
        );
        let alpha_min = values.iter().min().expect("nonempty").clone();
        let alpha_max = values.iter().max().expect("nonempty").clone();
        let delta = &var - (&alpha_max - &alpha_min) / ExactRatio::from(12);
        Ok(SubsetStats {
            tau,
            av,
            var,
            alpha_min,
            alpha_max,
            delta,
        })
    }

    /// `τ·δ`, the quantity compared by the subset-reduction arguments.
    pub fn tau_delta(&self) -> ExactRatio {
        &self.delta * ExactRatio::from(self.tau as i64)
    }

    pub fn width(&self) -> ExactRatio {
        &self.alpha_max - &self.alpha_min
    }
}

pub fn subset_stats(s: &Spectrum, subset: &IndexSet) -> Result<SubsetStats, SpectrumError> {
    if subset.is_empty() {
        return Err(SpectrumError::EmptySubset);
    }
    SubsetStats::from_values(&s.select(subset)?)
}

pub fn average_of(values: &[ExactRatio]) -> ExactRatio {
    values.iter().sum::<ExactRatio>() / ExactRatio::from(values.len() as i64)
}

/// `Σ (α - center)^2 / len`
pub fn centered_variance(values: &[ExactRatio], center: &ExactRatio) -> ExactRatio {
    values
        .iter()
        .map(|v| (v - center).square())
        .sum::<ExactRatio>()
        / ExactRatio::from(values.len() as i64)
}

pub fn sum_of_squares(values: &[ExactRatio]) -> ExactRatio {
    values.iter().map(ExactRatio::square).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brieskorn_values(a: i64, b: i64) -> Vec<ExactRatio> {
        let mut v = Vec::new();
        for i in 1..a {
            for j in 1..b {
                v.push(ratio(i, a) + ratio(j, b));
            }
        }
        v
    }

    #[test]
    fn sorts_input() {
        let s = make_spectrum(vec![ratio(7, 6), ratio(5, 6)], 2, true).unwrap();
        assert_eq!(s.values(), &[ratio(5, 6), ratio(7, 6)]);
        assert_eq!(s.mu(), 2);
    }

    #[test]
    fn x5_y4_spectrum_shape() {
        let mut v = Vec::new();
        for p in 1..=4 {
            for q in 1..=3 {
                v.push(ratio(4 * p + 5 * q, 20));
            }
        }
        let s = make_spectrum(v, 2, true).unwrap();
        assert_eq!(s.mu(), 12);
        assert_eq!(s.min(), &ratio(9, 20));
        assert_eq!(s.max(), &ratio(31, 20));
    }

    #[test]
    fn rejects_asymmetric_complete_input() {
        let err = make_spectrum(vec![ratio(5, 6), ratio(7, 6), ratio(7, 6)], 2, true).unwrap_err();
        assert!(matches!(err, SpectrumError::SymmetryViolation { .. }));
        // the same multiset is fine when not flagged complete
        assert!(make_spectrum(vec![ratio(5, 6), ratio(7, 6), ratio(7, 6)], 2, false).is_ok());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            make_spectrum(vec![], 2, false),
            Err(SpectrumError::EmptySpectrum)
        );
        assert!(matches!(
            make_spectrum(vec![ratio(0, 1)], 2, false),
            Err(SpectrumError::ValueOutOfRange { .. })
        ));
        assert!(matches!(
            make_spectrum(vec![ratio(2, 1)], 2, false),
            Err(SpectrumError::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn brieskorn_2_3_statistics() {
        let s = make_spectrum(brieskorn_values(2, 3), 2, true).unwrap();
        assert_eq!(s.average(), ratio(1, 1));
        assert_eq!(s.variance(), ratio(1, 36));
        assert_eq!(s.width(), ratio(1, 3));
        assert_eq!(s.hertling_defect(), ratio(0, 1));
    }

    #[test]
    fn singleton_spectrum_is_flat() {
        let s = make_spectrum(vec![ratio(1, 1)], 2, true).unwrap();
        assert_eq!(s.variance(), ExactRatio::zero());
        assert_eq!(s.width(), ExactRatio::zero());
        assert_eq!(s.hertling_defect(), ExactRatio::zero());
        let st = subset_stats(&s, &IndexSet::from([1])).unwrap();
        assert_eq!(st.var, ExactRatio::zero());
        assert_eq!(st.delta, ExactRatio::zero());
    }

    #[test]
    fn brieskorn_7_7_full_subset() {
        // oracle: the variance of {i/7 + j/7} summed directly, outside SubsetStats
        let values = brieskorn_values(7, 7);
        let direct: ExactRatio = values
            .iter()
            .map(|v| (v - ratio(1, 1)).square())
            .sum::<ExactRatio>()
            / ratio(36, 1);
        assert_eq!(direct, ratio(5, 42));

        let s = make_spectrum(values, 2, true).unwrap();
        let st = subset_stats(&s, &s.all_indices()).unwrap();
        assert_eq!(st.tau, 36);
        assert_eq!(st.av, ratio(1, 1));
        assert_eq!(st.var, ratio(5, 42));
        assert_eq!(st.delta, ExactRatio::zero());
    }

    #[test]
    fn three_element_subset() {
        let st = SubsetStats::from_values(&[ratio(1, 2), ratio(3, 2), ratio(3, 2)]).unwrap();
        assert_eq!(st.av, ratio(7, 6));
        assert_eq!(st.var, ratio(2, 9));
        assert_eq!(st.delta, ratio(5, 36));
    }

    #[test]
    fn subset_errors() {
        let s = make_spectrum(brieskorn_values(2, 3), 2, true).unwrap();
        assert_eq!(
            subset_stats(&s, &IndexSet::new()),
            Err(SpectrumError::EmptySubset)
        );
        assert_eq!(
            subset_stats(&s, &IndexSet::from([0])),
            Err(SpectrumError::IndexOutOfRange { index: 0, mu: 2 })
        );
        assert_eq!(
            subset_stats(&s, &IndexSet::from([3])),
            Err(SpectrumError::IndexOutOfRange { index: 3, mu: 2 })
        );
    }

    #[test]
    fn levels_group_equal_values() {
        let s = make_spectrum(brieskorn_values(3, 3), 2, true).unwrap();
        let levels = s.levels();
        assert_eq!(levels.len(), 3);
        assert_eq!(levels[1], (ratio(1, 1), 2..=3));
    }
}
