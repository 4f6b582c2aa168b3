use super::{
    brieskorn_pairs, brieskorn_two_var, tjurina_indices_for, Family, FamilyError, TjurinaInstance,
};
use crate::localg::{Monomial, Poly};
use crate::spectra::{ratio, ExactRatio};

/// Parameters of `x^a + y^b + x^{a-1-c} y^{b-1-d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SwhParams {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl SwhParams {
    /// Requires `1 <= c < a/2`, `1 <= d < b/2` and
    /// `(a-1-c)/a + (b-1-d)/b > 1`; the last alone does not give `μ - τ = cd`.
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Result<Self, FamilyError> {
        let p = SwhParams { a, b, c, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let SwhParams { a, b, c, d } = *self;
        let fail = |why: &str| {
            Err(FamilyError::InvalidFamilyParameters(format!(
                "swh a={a} b={b} c={c} d={d}: {why}"
            )))
        };
        if c == 0 || d == 0 {
            return fail("c and d must be positive");
        }
        if 2 * c >= a {
            return fail("need c < a/2");
        }
        if 2 * d >= b {
            return fail("need d < b/2");
        }
        let (a64, b64, c64, d64) = (u64::from(a), u64::from(b), u64::from(c), u64::from(d));
        if b64 * (a64 - 1 - c64) + a64 * (b64 - 1 - d64) <= a64 * b64 {
            return fail("need (a-1-c)/a + (b-1-d)/b > 1");
        }
        Ok(())
    }

    /// Exponents `(p, q) = (a-1-c, b-1-d)` of the deforming monomial.
    pub fn deforming_exponents(&self) -> (u32, u32) {
        (self.a - 1 - self.c, self.b - 1 - self.d)
    }

    pub fn mu(&self) -> usize {
        ((self.a - 1) * (self.b - 1)) as usize
    }

    pub fn tau(&self) -> usize {
        self.mu() - (self.c * self.d) as usize
    }

    pub fn defining_poly(&self) -> Poly {
        let (p, q) = self.deforming_exponents();
        Poly::from_terms(
            2,
            [
                (Monomial::xy(self.a, 0), ExactRatio::one()),
                (Monomial::xy(0, self.b), ExactRatio::one()),
                (Monomial::xy(p, q), ExactRatio::one()),
            ],
        )
    }
}

/// The Tjurina part keeps the pairs `(i, j)` with `i < a - c` or `j < b - d`;
/// the `cd` pairs in the top corner are missing.
pub fn swh_instance(p: SwhParams) -> Result<TjurinaInstance, FamilyError> {
    p.validate()?;
    let SwhParams { a, b, c, d } = p;
    let spectrum = brieskorn_two_var(a, b)?;
    let retained: Vec<ExactRatio> = brieskorn_pairs(a, b)
        .into_iter()
        .filter(|&(i, j, _)| i < a - c || j < b - d)
        .map(|(_, _, v)| v)
        .collect();

    if retained.len() != p.tau() {
        return Err(FamilyError::SelfCheckFailed(format!(
            "swh {a},{b},{c},{d}: kept {} values, expected (a-1)(b-1)-cd = {}",
            retained.len(),
            p.tau()
        )));
    }
    // sum of the kept values, in closed form
    let (a64, b64, c64, d64) = (i64::from(a), i64::from(b), i64::from(c), i64::from(d));
    let expected_sum = ratio((a64 - 1) * (b64 - 1), 1)
        - ratio(c64 * d64, 1)
            * (ratio(2 * a64 - 1 - c64, 2 * a64) + ratio(2 * b64 - 1 - d64, 2 * b64));
    let sum: ExactRatio = retained.iter().sum();
    if sum != expected_sum {
        return Err(FamilyError::SelfCheckFailed(format!(
            "swh {a},{b},{c},{d}: kept values sum to {sum}, closed form gives {expected_sum}"
        )));
    }

    let indices = tjurina_indices_for(&spectrum, &retained)?;
    TjurinaInstance::new(
        spectrum,
        Some(indices),
        p.tau(),
        Some(p.defining_poly()),
        Some(Family::Swh(p)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cross_check;

    #[test]
    fn counterexample_instance() {
        let inst = swh_instance(SwhParams::new(7, 7, 1, 1).unwrap()).unwrap();
        assert_eq!(inst.mu(), 36);
        assert_eq!(inst.tau(), 35);
        assert_eq!(inst.missing_values(), Some(vec![ratio(12, 7)]));
        assert_eq!(inst.defining_poly().unwrap().to_string(), "x^7+y^7+x^5*y^5");
    }

    #[test]
    fn x5_y4_instance() {
        let inst = swh_instance(SwhParams::new(5, 4, 1, 1).unwrap()).unwrap();
        assert_eq!((inst.mu(), inst.tau()), (12, 11));
        assert_eq!(inst.defining_poly().unwrap().to_string(), "y^4+x^5+x^3*y^2");
        assert!(cross_check(&inst).is_ok());
    }

    #[test]
    fn constraint_violations() {
        assert!(matches!(
            SwhParams::new(4, 4, 2, 1),
            Err(FamilyError::InvalidFamilyParameters(_))
        ));
        assert!(SwhParams::new(5, 5, 0, 1).is_err());
        assert!(SwhParams::new(5, 4, 1, 2).is_err());
        // c < a/2 and d < b/2 hold but the exponent condition fails
        assert!(SwhParams::new(5, 5, 2, 2).is_err());
        let raw = SwhParams {
            a: 4,
            b: 4,
            c: 2,
            d: 1,
        };
        assert!(swh_instance(raw).is_err());
    }

    #[test]
    fn excluded_corner() {
        let p = SwhParams::new(9, 8, 2, 3).unwrap();
        let inst = swh_instance(p).unwrap();
        let mut corner: Vec<ExactRatio> = Vec::new();
        for i in 7..=8 {
            for j in 5..=7 {
                corner.push(ratio(i, 9) + ratio(j, 8));
            }
        }
        corner.sort();
        assert_eq!(inst.missing_values(), Some(corner));
    }
}
