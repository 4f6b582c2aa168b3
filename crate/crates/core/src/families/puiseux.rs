use num_integer::Integer;

use super::{Family, FamilyError, TjurinaInstance};
use crate::localg::{self, Monomial, Poly};
use crate::spectra::{ratio, ExactRatio, Spectrum};

/// Irreducible plane curve `(y^b - x^a)^d - x^{ad+q} y^r` with Puiseux pairs
/// `(a, b), (c, d)` where `c = bq + ar`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PuiseuxParams {
    pub a: u32,
    pub b: u32,
    pub d: u32,
    pub q: i64,
    pub r: u32,
}

impl PuiseuxParams {
    pub fn new(a: u32, b: u32, d: u32, q: i64, r: u32) -> Result<Self, FamilyError> {
        let p = PuiseuxParams { a, b, d, q, r };
        p.validate()?;
        Ok(p)
    }

    pub fn c(&self) -> i64 {
        i64::from(self.b) * self.q + i64::from(self.a) * i64::from(self.r)
    }

    pub fn e(&self) -> i64 {
        i64::from(self.a) * i64::from(self.b) * i64::from(self.d) + self.c()
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let PuiseuxParams { a, b, d, q, r } = *self;
        let fail = |why: String| {
            Err(FamilyError::InvalidFamilyParameters(format!(
                "puiseux a={a} b={b} d={d} q={q} r={r}: {why}"
            )))
        };
        if !(a > b && b > r) {
            return fail("need a > b > r".into());
        }
        if b < 2 || d < 1 {
            return fail("need b >= 2 and d >= 1".into());
        }
        if i64::from(a) * i64::from(d) + q <= 0 {
            return fail("need ad + q > 0".into());
        }
        let c = self.c();
        if c <= 0 {
            return fail(format!("need c = bq + ar > 0, got {c}"));
        }
        if a.gcd(&b) != 1 {
            return Err(FamilyError::GcdViolation(format!(
                "gcd(a, b) = gcd({a}, {b}) != 1"
            )));
        }
        if c.gcd(&i64::from(d)) != 1 {
            return Err(FamilyError::GcdViolation(format!(
                "gcd(c, d) = gcd({c}, {d}) != 1"
            )));
        }
        Ok(())
    }

    pub fn defining_poly(&self) -> Poly {
        let x = Poly::variable(2, 0);
        let y = Poly::variable(2, 1);
        let inner = &y.pow(self.b) - &x.pow(self.a);
        let exp_x = (i64::from(self.a) * i64::from(self.d) + self.q) as u32;
        let tail = Poly::monomial(2, Monomial::xy(exp_x, self.r), ExactRatio::one());
        &inner.pow(self.d) - &tail
    }
}

/// Spectral numbers below 1 from the two Puiseux pairs, completed by the
/// symmetry `α ↦ 2 - α`.
pub fn puiseux_spectrum(p: PuiseuxParams) -> Result<Spectrum, FamilyError> {
    p.validate()?;
    let (a, b, d) = (i64::from(p.a), i64::from(p.b), i64::from(p.d));
    let e = p.e();
    let one = ExactRatio::one();
    let mut low = Vec::new();
    for i in 1..e {
        for j in 1..d {
            let x = ratio(i, e) + ratio(j, d);
            if x < one {
                low.push(x);
            }
        }
    }
    for i in 1..a {
        for j in 1..b {
            let y = ratio(i, a) + ratio(j, b);
            if y < one {
                for k in 0..d {
                    low.push((&y + ExactRatio::from(k)) / ExactRatio::from(d));
                }
            }
        }
    }
    let two = ExactRatio::from(2);
    let high: Vec<ExactRatio> = low.iter().map(|v| &two - v).collect();
    low.extend(high);
    Ok(Spectrum::new(low, 2, true)?)
}

/// Builds the instance; `τ` always comes from the local standard-basis
/// engine, and the spectrum size is checked against the Milnor number.
///
/// With `assume_consecutive` the missing spectral numbers are taken to be the
/// top `μ - τ` ones (`T_f = [1, τ]`); otherwise `T_f` is left unset.
pub fn puiseux_instance(
    p: PuiseuxParams,
    assume_consecutive: bool,
) -> Result<TjurinaInstance, FamilyError> {
    let spectrum = puiseux_spectrum(p)?;
    let poly = p.defining_poly();
    let (mu, tau) = localg::milnor_tjurina(&poly)?;
    if mu != spectrum.mu() {
        return Err(FamilyError::SelfCheckFailed(format!(
            "{} spectral numbers but the Milnor number of {poly} is {mu}",
            spectrum.mu()
        )));
    }
    let indices = assume_consecutive.then(|| (1..=tau).collect());
    TjurinaInstance::new(spectrum, indices, tau, Some(poly), Some(Family::Puiseux(p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_equals_one() {
        let p = PuiseuxParams::new(3, 2, 2, -1, 1).unwrap();
        assert_eq!((p.c(), p.e()), (1, 13));
        let s = puiseux_spectrum(p).unwrap();
        let mut expected = vec![ratio(5, 12), ratio(11, 12), ratio(13, 12), ratio(19, 12)];
        expected.extend((1..=12).map(|k| ratio(1, 2) + ratio(k, 13)));
        expected.sort();
        assert_eq!(s.values(), expected.as_slice());
        assert_eq!(p.defining_poly().to_string(), "y^4-2*x^3*y^2+x^6-x^5*y");
    }

    #[test]
    fn c_equals_five_tjurina() {
        let p = PuiseuxParams::new(3, 2, 2, 1, 1).unwrap();
        assert_eq!((p.c(), p.e()), (5, 17));
        let inst = puiseux_instance(p, false).unwrap();
        assert_eq!(inst.mu(), 20);
        assert_eq!(inst.tau(), 18);
        assert!(inst.tjurina_indices().is_none());
        let consecutive = puiseux_instance(p, true).unwrap();
        assert_eq!(consecutive.missing_indices().unwrap(), [19, 20].into());
    }

    #[test]
    fn gcd_and_range_violations() {
        assert!(matches!(
            PuiseuxParams::new(4, 2, 3, 1, 1),
            Err(FamilyError::GcdViolation(_))
        ));
        // c = 2*1 + 3*0 = 2 shares a factor with d = 2
        assert!(matches!(
            PuiseuxParams::new(3, 2, 2, 1, 0),
            Err(FamilyError::GcdViolation(_))
        ));
        assert!(matches!(
            PuiseuxParams::new(3, 2, 2, -2, 1),
            Err(FamilyError::InvalidFamilyParameters(_))
        ));
        assert!(PuiseuxParams::new(2, 3, 2, 1, 1).is_err());
        assert!(PuiseuxParams::new(3, 2, 2, -7, 1).is_err());
    }
}
