//! `f = x^a y^b + x^c + y^d` with `a/c + b/d < 1` and `2 <= a < b`.
//!
//! The Jacobian ring has the monomial basis `x^{ν-1}` for `ν` in the lattice
//! sets below, each graded by the Newton filtration of its edge:
//!
//! * `Λ0 = {0 < i/a = j/b < 2}`, value `i/a`;
//! * `Λ1 = {0 < j/b < 1, i/a - c/a < j/b < i/a}`, value `i/c + j(c-a)/(bc)`;
//! * `Λ2 = {0 < i/a < 1, j/b - d/b < i/a < j/b}`, value `j/d + i(d-b)/(ad)`.
//!
//! The monomials vanishing in the Tjurina algebra are `Λ'` (`ν1 > a` on Λ0,
//! `ν1 > c` on Λ1, `ν2 > d` on Λ2) and, when `2b > d + 1`, the extra column
//! `Λ''1 = {ν ∈ Λ1 : ν1 = c, ν2 >= d - b + 1}`.

use super::{tjurina_indices_for, Family, FamilyError, TjurinaInstance};
use crate::localg::{Monomial, Poly};
use crate::spectra::{ratio, ExactRatio, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThreeMonomialParams {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl ThreeMonomialParams {
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Result<Self, FamilyError> {
        let p = ThreeMonomialParams { a, b, c, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let ThreeMonomialParams { a, b, c, d } = *self;
        let fail = |why: &str| {
            Err(FamilyError::InvalidFamilyParameters(format!(
                "three-monomial a={a} b={b} c={c} d={d}: {why}"
            )))
        };
        if a < 2 || a >= b {
            return fail("need 2 <= a < b");
        }
        if c == 0 || d == 0 {
            return fail("c and d must be positive");
        }
        let (a, b, c, d) = (u64::from(a), u64::from(b), u64::from(c), u64::from(d));
        if a * d + b * c >= c * d {
            return fail("need a/c + b/d < 1");
        }
        Ok(())
    }

    pub fn defining_poly(&self) -> Poly {
        Poly::from_terms(
            2,
            [
                (Monomial::xy(self.a, self.b), ExactRatio::one()),
                (Monomial::xy(self.c, 0), ExactRatio::one()),
                (Monomial::xy(0, self.d), ExactRatio::one()),
            ],
        )
    }

    /// `(a-1)(b-1) + max(2b-d-1, 0)`, the expected `μ - τ`.
    pub fn expected_gap(&self) -> usize {
        let extra = (2 * i64::from(self.b) - i64::from(self.d) - 1).max(0) as usize;
        ((self.a - 1) * (self.b - 1)) as usize + extra
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Diagonal,
    XEdge,
    YEdge,
}

/// Why a lattice monomial vanishes in the Tjurina algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exclusion {
    /// `Λ'`
    Prime,
    /// `Λ''1`
    DoublePrime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePoint {
    pub nu: (u32, u32),
    pub region: Region,
    pub value: ExactRatio,
    pub excluded: Option<Exclusion>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeDecomposition {
    pub params: ThreeMonomialParams,
    pub points: Vec<LatticePoint>,
}

impl LatticeDecomposition {
    /// `|Λ|`
    pub fn mu(&self) -> usize {
        self.points.len()
    }

    pub fn count_excluded(&self, kind: Exclusion) -> usize {
        self.points
            .iter()
            .filter(|p| p.excluded == Some(kind))
            .count()
    }

    pub fn count_region(&self, region: Region) -> usize {
        self.points.iter().filter(|p| p.region == region).count()
    }

    /// `|Λ \ (Λ' ∪ Λ''1)|`
    pub fn tau(&self) -> usize {
        self.points.iter().filter(|p| p.excluded.is_none()).count()
    }

    pub fn values(&self) -> Vec<ExactRatio> {
        self.points.iter().map(|p| p.value.clone()).collect()
    }

    pub fn tjurina_values(&self) -> Vec<ExactRatio> {
        self.points
            .iter()
            .filter(|p| p.excluded.is_none())
            .map(|p| p.value.clone())
            .collect()
    }
}

pub fn three_monomial_lattice(p: ThreeMonomialParams) -> Result<LatticeDecomposition, FamilyError> {
    p.validate()?;
    let ThreeMonomialParams { a, b, c, d } = p;
    let (a64, b64, c64, d64) = (i64::from(a), i64::from(b), i64::from(c), i64::from(d));
    let double_prime_active = 2 * b > d + 1;
    let mut points = Vec::new();

    // Λ0: multiples of (a, b)/gcd strictly inside 0 < s < 2
    for i in 1..2 * a {
        if (i * b) % a != 0 {
            continue;
        }
        let j = i * b / a;
        points.push(LatticePoint {
            nu: (i, j),
            region: Region::Diagonal,
            value: ratio(i.into(), a64),
            excluded: (i > a).then_some(Exclusion::Prime),
        });
    }

    // Λ1: below the diagonal, left of the edge through (c, 0) and (a, b)
    for j in 1..b {
        for i in 1..c + a {
            let (i64_, j64) = (i64::from(i), i64::from(j));
            if !(b64 * i64_ > a64 * j64 && b64 * (i64_ - c64) < a64 * j64) {
                continue;
            }
            let excluded = if i > c {
                Some(Exclusion::Prime)
            } else if i == c && double_prime_active && j64 > d64 - b64 {
                Some(Exclusion::DoublePrime)
            } else {
                None
            };
            points.push(LatticePoint {
                nu: (i, j),
                region: Region::XEdge,
                value: ratio(i64_, c64) + ratio(j64 * (c64 - a64), b64 * c64),
                excluded,
            });
        }
    }

    // Λ2: above the diagonal, below the edge through (0, d) and (a, b)
    for j in 1..b + d {
        for i in 1..a {
            let (i64_, j64) = (i64::from(i), i64::from(j));
            if !(a64 * j64 > b64 * i64_ && a64 * (j64 - d64) < b64 * i64_) {
                continue;
            }
            points.push(LatticePoint {
                nu: (i, j),
                region: Region::YEdge,
                value: ratio(j64, d64) + ratio(i64_ * (d64 - b64), a64 * d64),
                excluded: (j > d).then_some(Exclusion::Prime),
            });
        }
    }

    Ok(LatticeDecomposition { params: p, points })
}

/// Full spectrum over `Λ`, Tjurina part over `Λ \ (Λ' ∪ Λ''1)`.
///
/// The Tjurina count here is the lattice count; it equals the true Tjurina
/// number exactly when `μ - τ = (a-1)(b-1) + max(2b-d-1, 0)`. Use
/// [`super::cross_check`] to confirm, which reports
/// [`FamilyError::Condition81Violated`] on disagreement.
pub fn three_monomial_instance(p: ThreeMonomialParams) -> Result<TjurinaInstance, FamilyError> {
    let lattice = three_monomial_lattice(p)?;
    let spectrum = Spectrum::new(lattice.values(), 2, true)?;
    let retained = lattice.tjurina_values();
    let indices = tjurina_indices_for(&spectrum, &retained)?;
    TjurinaInstance::new(
        spectrum,
        Some(indices),
        retained.len(),
        Some(p.defining_poly()),
        Some(Family::ThreeMonomial(p)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cross_check;

    #[test]
    fn default_tuple() {
        let p = ThreeMonomialParams::new(2, 4, 7, 6).unwrap();
        let lattice = three_monomial_lattice(p).unwrap();
        // Kouchnirenko: 2V - c - d + 1 = (cb + da) - c - d + 1
        assert_eq!(lattice.mu(), 28);
        assert_eq!(lattice.count_excluded(Exclusion::Prime), 3);
        assert_eq!(lattice.count_excluded(Exclusion::DoublePrime), 1);
        assert_eq!(p.expected_gap(), 4);
        let inst = three_monomial_instance(p).unwrap();
        assert_eq!(inst.mu() - inst.tau(), 4);
        let check = cross_check(&inst).unwrap();
        assert_eq!((check.milnor, check.tjurina), (28, 24));
    }

    #[test]
    fn double_prime_empty_branch() {
        let p = ThreeMonomialParams::new(2, 3, 9, 7).unwrap();
        let lattice = three_monomial_lattice(p).unwrap();
        assert_eq!(lattice.count_excluded(Exclusion::DoublePrime), 0);
        assert_eq!(p.expected_gap(), 2);
        assert_eq!(lattice.mu() - lattice.tau(), 2);
    }

    #[test]
    fn invalid_tuples() {
        assert!(matches!(
            ThreeMonomialParams::new(3, 2, 9, 9),
            Err(FamilyError::InvalidFamilyParameters(_))
        ));
        assert!(ThreeMonomialParams::new(1, 3, 9, 9).is_err());
        // a/c + b/d = 2/4 + 3/6 = 1
        assert!(ThreeMonomialParams::new(2, 3, 4, 6).is_err());
    }

    #[test]
    fn prime_set_size() {
        for (a, b, c, d) in [
            (2, 4, 7, 6),
            (3, 4, 8, 9),
            (2, 5, 9, 8),
            (3, 5, 11, 10),
            (4, 5, 20, 11),
        ] {
            let lattice =
                three_monomial_lattice(ThreeMonomialParams::new(a, b, c, d).unwrap()).unwrap();
            assert_eq!(
                lattice.count_excluded(Exclusion::Prime),
                ((a - 1) * (b - 1)) as usize,
                "({a},{b},{c},{d})"
            );
        }
    }
}
