use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MAX_VARS};
use crate::spectra::ExactRatio;

/// Sparse polynomial with exact rational coefficients in at most three
/// variables. Terms are kept sorted by the local ordering of [`Monomial`]; no
/// zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, ExactRatio>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: ExactRatio) -> Self {
        Self::monomial(nvars, Monomial::ONE, c)
    }

    pub fn monomial(nvars: usize, m: Monomial, c: ExactRatio) -> Self {
        let mut p = Poly::zero(nvars);
        assert!(m.used_vars() <= nvars, "monomial {m} outside the ring");
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        Self::monomial(nvars, Monomial::var(var, 1), ExactRatio::one())
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, ExactRatio)>,
    ) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading one down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactRatio)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> ExactRatio {
        self.terms.get(m).cloned().unwrap_or_else(ExactRatio::zero)
    }

    pub fn lead_monomial(&self) -> Option<Monomial> {
        self.terms.keys().next_back().copied()
    }

    pub fn lead_coeff(&self) -> Option<&ExactRatio> {
        self.terms.values().next_back()
    }

    /// Highest total degree of any term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree (the degree of the leading monomial).
    pub fn order(&self) -> Option<u32> {
        self.lead_monomial().map(|m| m.degree())
    }

    /// `degree - order`, the Mora ecart.
    pub fn ecart(&self) -> u32 {
        match (self.degree(), self.order()) {
            (Some(d), Some(o)) => d - o,
            _ => 0,
        }
    }

    pub fn constant_term(&self) -> ExactRatio {
        self.coeff(&Monomial::ONE)
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactRatio) {
        assert!(m.used_vars() <= self.nvars, "monomial {m} outside the ring");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &ExactRatio) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &ExactRatio) -> Poly {
        let nvars = self.nvars.max(m.used_vars());
        if c.is_zero() {
            return Poly::zero(nvars);
        }
        Poly {
            nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// `self + c * m * other`, in place.
    pub fn add_scaled_shifted(&mut self, other: &Poly, m: &Monomial, c: &ExactRatio) {
        self.nvars = self.nvars.max(other.nvars).max(m.used_vars());
        for (t, a) in &other.terms {
            self.add_term(t.mul(m), a * c);
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::constant(self.nvars, ExactRatio::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c * ExactRatio::from(i64::from(e)));
        }
        out
    }

    /// Drops every term of total degree `>= bound`.
    pub fn truncate_below(&self, bound: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < bound)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Scales to coprime integer coefficients with a positive leading
    /// coefficient. The zero polynomial is returned unchanged.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut factor = ExactRatio::new(den_lcm, num_gcd);
        if self.lead_coeff().expect("nonzero").is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(ExactRatio::is_integer)
    }

    pub fn max_abs_coeff_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { "-" } else { "+" })?;
            }
            let unit = abs == ExactRatio::one();
            if *m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else if unit {
                write!(f, "{m}")?;
            } else if abs.is_integer() {
                write!(f, "{abs}*{m}")?;
            } else {
                write!(f, "({abs})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

impl<'b> Add<&'b Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &'b Poly) -> Poly {
        let mut out = self.clone();
        out.nvars = out.nvars.max(rhs.nvars);
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'b> Sub<&'b Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &'b Poly) -> Poly {
        let mut out = self.clone();
        out.nvars = out.nvars.max(rhs.nvars);
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'b> Mul<&'b Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &'b Poly) -> Poly {
        let mut out = Poly::zero(self.nvars.max(rhs.nvars));
        for (m, c) in &rhs.terms {
            out.add_scaled_shifted(self, m, c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-ExactRatio::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::ratio;

    fn x() -> Poly {
        Poly::variable(2, 0)
    }
    fn y() -> Poly {
        Poly::variable(2, 1)
    }

    #[test]
    fn arithmetic_and_display() {
        let f = &(&x().pow(7) + &y().pow(7)) + &(&x().pow(5) * &y().pow(5));
        assert_eq!(f.len(), 3);
        assert_eq!(f.to_string(), "x^7+y^7+x^5*y^5");
        assert_eq!(f.lead_monomial(), Some(Monomial::xy(7, 0)));
        assert_eq!(f.ecart(), 3);
        let g = &f - &f;
        assert!(g.is_zero());
    }

    #[test]
    fn binomial_expansion() {
        let base = &y().pow(2) - &x().pow(3);
        let f = &base.pow(2) - &(&x().pow(5) * &y());
        assert_eq!(f.coeff(&Monomial::xy(0, 4)), ratio(1, 1));
        assert_eq!(f.coeff(&Monomial::xy(3, 2)), ratio(-2, 1));
        assert_eq!(f.coeff(&Monomial::xy(6, 0)), ratio(1, 1));
        assert_eq!(f.coeff(&Monomial::xy(5, 1)), ratio(-1, 1));
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn derivatives() {
        let f = &(&x().pow(5) + &y().pow(4)) + &(&x().pow(3) * &y().pow(2));
        let fx = f.derivative(0);
        let fy = f.derivative(1);
        assert_eq!(fx.coeff(&Monomial::xy(4, 0)), ratio(5, 1));
        assert_eq!(fx.coeff(&Monomial::xy(2, 2)), ratio(3, 1));
        assert_eq!(fx.len(), 2);
        assert_eq!(fy.coeff(&Monomial::xy(0, 3)), ratio(4, 1));
        assert_eq!(fy.coeff(&Monomial::xy(3, 1)), ratio(2, 1));
        assert!(Poly::constant(2, ratio(3, 1)).derivative(0).is_zero());
    }

    #[test]
    fn primitive_part() {
        let p = Poly::from_terms(
            2,
            [
                (Monomial::xy(1, 0), ratio(-2, 3)),
                (Monomial::xy(0, 2), ratio(4, 9)),
            ],
        );
        let q = p.primitive();
        assert_eq!(q.coeff(&Monomial::xy(1, 0)), ratio(3, 1));
        assert_eq!(q.coeff(&Monomial::xy(0, 2)), ratio(-2, 1));
        assert!(q.has_integer_coefficients());
    }

    #[test]
    fn truncation() {
        let f = &(&x().pow(2) + &y().pow(3)) + &x().pow(5);
        let t = f.truncate_below(4);
        assert_eq!(t.len(), 2);
        assert_eq!(t.degree(), Some(3));
    }
}
