//! Spectra and Tjurina subspectra for four explicit families of plane curve
//! singularities:
//!
//! * Brieskorn–Pham `x^a + y^b` (weighted homogeneous, `μ = τ`),
//! * the semi-weighted-homogeneous deformations `x^a + y^b + x^{a-1-c} y^{b-1-d}`,
//! * three-monomial Newton non-degenerate curves `x^a y^b + x^c + y^d`,
//! * irreducible curves with two Puiseux pairs `(y^b - x^a)^d - x^{ad+q} y^r`.
//!
//! Every instance carries its defining polynomial, so it can be checked
//! against the local standard-basis engine with [`cross_check`].

mod puiseux;
mod swh;
mod three_monomial;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::localg::{self, LocalgError, Poly};
use crate::spectra::{ratio, ExactRatio, IndexSet, Spectrum, SpectrumError};

pub use puiseux::{puiseux_instance, puiseux_spectrum, PuiseuxParams};
pub use swh::{swh_instance, SwhParams};
pub use three_monomial::{
    three_monomial_instance, three_monomial_lattice, Exclusion, LatticeDecomposition, LatticePoint,
    Region, ThreeMonomialParams,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("exponents must be at least 2, got a={a}, b={b}")]
    DegenerateExponent { a: u32, b: u32 },
    #[error("invalid parameters: {0}")]
    InvalidFamilyParameters(String),
    #[error("gcd condition fails: {0}")]
    GcdViolation(String),
    #[error("lattice Tjurina count {lattice_tau} disagrees with the computed Tjurina number {localg_tau}")]
    Condition81Violated {
        lattice_tau: usize,
        localg_tau: usize,
    },
    #[error("internal consistency check failed: {0}")]
    SelfCheckFailed(String),
    #[error("invalid Tjurina instance: {0}")]
    InvalidInstance(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Localg(#[from] LocalgError),
}

/// Which family an instance came from, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Brieskorn { a: u32, b: u32 },
    Swh(SwhParams),
    ThreeMonomial(ThreeMonomialParams),
    Puiseux(PuiseuxParams),
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Brieskorn { .. } => "brieskorn",
            Family::Swh(_) => "swh",
            Family::ThreeMonomial(_) => "three-monomial",
            Family::Puiseux(_) => "puiseux",
        }
    }

    pub fn params(&self) -> Vec<i64> {
        match *self {
            Family::Brieskorn { a, b } => vec![a.into(), b.into()],
            Family::Swh(p) => vec![p.a.into(), p.b.into(), p.c.into(), p.d.into()],
            Family::ThreeMonomial(p) => vec![p.a.into(), p.b.into(), p.c.into(), p.d.into()],
            Family::Puiseux(p) => vec![p.a.into(), p.b.into(), p.d.into(), p.q, p.r.into()],
        }
    }

    /// Whether instances of this family are semi-weighted-homogeneous.
    pub fn is_swh(&self) -> bool {
        matches!(self, Family::Brieskorn { .. } | Family::Swh(_))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Brieskorn { a, b } => write!(f, "brieskorn a={a} b={b}"),
            Family::Swh(p) => write!(f, "swh a={} b={} c={} d={}", p.a, p.b, p.c, p.d),
            Family::ThreeMonomial(p) => {
                write!(f, "three-monomial a={} b={} c={} d={}", p.a, p.b, p.c, p.d)
            }
            Family::Puiseux(p) => {
                write!(
                    f,
                    "puiseux a={} b={} d={} q={} r={}",
                    p.a, p.b, p.d, p.q, p.r
                )
            }
        }
    }
}

/// A spectrum together with its Tjurina part.
///
/// `tjurina_indices`, when present, has exactly `tau` elements, contains
/// index 1, and meets every level of equal spectral values in an initial run
/// of that level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TjurinaInstance {
    spectrum: Spectrum,
    tjurina_indices: Option<IndexSet>,
    tau: usize,
    defining_poly: Option<Poly>,
    family: Option<Family>,
}

impl TjurinaInstance {
    pub fn new(
        spectrum: Spectrum,
        tjurina_indices: Option<IndexSet>,
        tau: usize,
        defining_poly: Option<Poly>,
        family: Option<Family>,
    ) -> Result<Self, FamilyError> {
        let mu = spectrum.mu();
        if tau > mu {
            return Err(FamilyError::InvalidInstance(format!(
                "tau {tau} exceeds mu {mu}"
            )));
        }
        if let Some(t) = &tjurina_indices {
            if t.len() != tau {
                return Err(FamilyError::InvalidInstance(format!(
                    "{} Tjurina indices for tau = {tau}",
                    t.len()
                )));
            }
            if let Some(&bad) = t.iter().find(|&&i| i == 0 || i > mu) {
                return Err(SpectrumError::IndexOutOfRange { index: bad, mu }.into());
            }
            if tau > 0 && !t.contains(&1) {
                return Err(FamilyError::InvalidInstance(
                    "the minimal spectral number must be a Tjurina spectral number".into(),
                ));
            }
            for (value, level) in spectrum.levels() {
                let mut inside = level.clone().map(|i| t.contains(&i));
                let run = inside.by_ref().take_while(|&x| x).count();
                if inside.any(|x| x) {
                    return Err(FamilyError::InvalidInstance(format!(
                        "Tjurina indices at level {value} are not an initial run (first {run} then a gap)"
                    )));
                }
            }
        }
        Ok(TjurinaInstance {
            spectrum,
            tjurina_indices,
            tau,
            defining_poly,
            family,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn tjurina_indices(&self) -> Option<&IndexSet> {
        self.tjurina_indices.as_ref()
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn mu(&self) -> usize {
        self.spectrum.mu()
    }

    pub fn defining_poly(&self) -> Option<&Poly> {
        self.defining_poly.as_ref()
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    /// Indices outside the Tjurina part, `C_f = I_f \ T_f`.
    pub fn missing_indices(&self) -> Option<IndexSet> {
        let t = self.tjurina_indices.as_ref()?;
        Some(self.spectrum.all_indices().difference(t).copied().collect())
    }

    /// The missing spectral numbers, weakly increasing.
    pub fn missing_values(&self) -> Option<Vec<ExactRatio>> {
        let missing = self.missing_indices()?;
        Some(
            self.spectrum
                .select(&missing)
                .expect("indices are in range"),
        )
    }

    pub fn tjurina_values(&self) -> Option<Vec<ExactRatio>> {
        let t = self.tjurina_indices.as_ref()?;
        Some(self.spectrum.select(t).expect("indices are in range"))
    }

    /// Copy with `T_f = [1, τ]`, i.e. assuming the missing spectral numbers
    /// are the top `μ - τ` ones.
    pub fn with_consecutive_missing(&self) -> Result<Self, FamilyError> {
        TjurinaInstance::new(
            self.spectrum.clone(),
            Some((1..=self.tau).collect()),
            self.tau,
            self.defining_poly.clone(),
            self.family,
        )
    }
}

/// Index set realizing a Tjurina sub-multiset of `spectrum`: within each
/// level of equal values the first `r` indices are taken, `r` being the
/// multiplicity of that value in `retained`.
pub fn tjurina_indices_for(
    spectrum: &Spectrum,
    retained: &[ExactRatio],
) -> Result<IndexSet, FamilyError> {
    let mut wanted: BTreeMap<&ExactRatio, usize> = BTreeMap::new();
    for v in retained {
        *wanted.entry(v).or_default() += 1;
    }
    let mut out = IndexSet::new();
    for (value, level) in spectrum.levels() {
        let count = wanted.remove(&value).unwrap_or(0);
        if count > level.clone().count() {
            return Err(FamilyError::InvalidInstance(format!(
                "value {value} retained {count} times but has multiplicity {}",
                level.count()
            )));
        }
        out.extend(level.take(count));
    }
    if let Some((value, _)) = wanted.into_iter().next() {
        return Err(FamilyError::InvalidInstance(format!(
            "retained value {value} is not a spectral number"
        )));
    }
    Ok(out)
}

/// Spectrum `{i/a + j/b : 1 <= i < a, 1 <= j < b}` of `x^a + y^b`.
pub fn brieskorn_two_var(a: u32, b: u32) -> Result<Spectrum, FamilyError> {
    if a < 2 || b < 2 {
        return Err(FamilyError::DegenerateExponent { a, b });
    }
    Ok(Spectrum::new(
        brieskorn_pairs(a, b)
            .into_iter()
            .map(|(_, _, v)| v)
            .collect(),
        2,
        true,
    )?)
}

/// `(i, j, i/a + j/b)` in generation order (i outer, j inner).
pub(crate) fn brieskorn_pairs(a: u32, b: u32) -> Vec<(u32, u32, ExactRatio)> {
    let mut out = Vec::with_capacity(((a - 1) * (b - 1)) as usize);
    for i in 1..a {
        for j in 1..b {
            out.push((i, j, ratio(i.into(), a.into()) + ratio(j.into(), b.into())));
        }
    }
    out
}

/// `x^a + y^b` as an instance with `T_f = I_f`.
pub fn brieskorn_instance(a: u32, b: u32) -> Result<TjurinaInstance, FamilyError> {
    let spectrum = brieskorn_two_var(a, b)?;
    let mu = spectrum.mu();
    let all = spectrum.all_indices();
    let poly = localg::parse_poly(&format!("x^{a}+y^{b}"), 2).expect("well-formed");
    TjurinaInstance::new(
        spectrum,
        Some(all),
        mu,
        Some(poly),
        Some(Family::Brieskorn { a, b }),
    )
}

/// Milnor and Tjurina numbers of an instance's defining polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossCheck {
    pub milnor: usize,
    pub tjurina: usize,
}

/// Recomputes `μ` and `τ` from the defining polynomial with the local
/// standard-basis engine and compares them with the instance.
pub fn cross_check(inst: &TjurinaInstance) -> Result<CrossCheck, FamilyError> {
    let poly = inst.defining_poly().ok_or_else(|| {
        FamilyError::InvalidInstance("instance has no defining polynomial".into())
    })?;
    let (milnor, tjurina) = localg::milnor_tjurina(poly)?;
    if milnor != inst.mu() {
        return Err(FamilyError::SelfCheckFailed(format!(
            "spectrum has {} values but the Milnor number of {poly} is {milnor}",
            inst.mu()
        )));
    }
    if tjurina != inst.tau() {
        return Err(match inst.family() {
            Some(Family::ThreeMonomial(_)) => FamilyError::Condition81Violated {
                lattice_tau: inst.tau(),
                localg_tau: tjurina,
            },
            _ => FamilyError::SelfCheckFailed(format!(
                "instance has tau = {} but the Tjurina number of {poly} is {tjurina}",
                inst.tau()
            )),
        });
    }
    Ok(CrossCheck { milnor, tjurina })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brieskorn_smallest() {
        let s = brieskorn_two_var(2, 3).unwrap();
        assert_eq!(s.values(), &[ratio(5, 6), ratio(7, 6)]);
    }

    #[test]
    fn brieskorn_7_7() {
        let s = brieskorn_two_var(7, 7).unwrap();
        assert_eq!(s.mu(), 36);
        assert_eq!(s.min(), &ratio(2, 7));
        assert_eq!(s.max(), &ratio(12, 7));
    }

    #[test]
    fn brieskorn_5_4_is_the_x5_y4_spectrum() {
        let mut expected: Vec<ExactRatio> = Vec::new();
        for p in 1..=4 {
            for q in 1..=3 {
                expected.push(ratio(4 * p + 5 * q, 20));
            }
        }
        expected.sort();
        assert_eq!(
            brieskorn_two_var(5, 4).unwrap().values(),
            expected.as_slice()
        );
    }

    #[test]
    fn brieskorn_degenerate() {
        assert_eq!(
            brieskorn_two_var(1, 3),
            Err(FamilyError::DegenerateExponent { a: 1, b: 3 })
        );
        // a = b = 2 is the A1 singularity, mu = 1
        assert_eq!(brieskorn_two_var(2, 2).unwrap().values(), &[ratio(1, 1)]);
    }

    #[test]
    fn level_initial_segments() {
        let s = brieskorn_two_var(3, 3).unwrap(); // 2/3, 1, 1, 4/3
        let t = tjurina_indices_for(&s, &[ratio(2, 3), ratio(1, 1)]).unwrap();
        assert_eq!(t, IndexSet::from([1, 2]));
        assert!(tjurina_indices_for(&s, &[ratio(1, 2)]).is_err());
        assert!(tjurina_indices_for(&s, &[ratio(4, 3), ratio(4, 3)]).is_err());
    }

    #[test]
    fn instance_invariants_enforced() {
        let s = brieskorn_two_var(3, 3).unwrap();
        // index 3 without index 2 breaks the initial-run property at level 1
        let err = TjurinaInstance::new(s.clone(), Some(IndexSet::from([1, 3])), 2, None, None);
        assert!(matches!(err, Err(FamilyError::InvalidInstance(_))));
        // minimum must be kept
        let err = TjurinaInstance::new(s.clone(), Some(IndexSet::from([2, 3])), 2, None, None);
        assert!(matches!(err, Err(FamilyError::InvalidInstance(_))));
        let err = TjurinaInstance::new(s.clone(), None, 5, None, None);
        assert!(matches!(err, Err(FamilyError::InvalidInstance(_))));
        let ok = TjurinaInstance::new(s, Some(IndexSet::from([1, 2, 4])), 3, None, None).unwrap();
        assert_eq!(ok.missing_values(), Some(vec![ratio(1, 1)]));
    }

    #[test]
    fn brieskorn_instance_cross_checks() {
        let inst = brieskorn_instance(4, 3).unwrap();
        assert_eq!(
            cross_check(&inst),
            Ok(CrossCheck {
                milnor: 6,
                tjurina: 6
            })
        );
    }
}
