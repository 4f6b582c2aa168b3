use std::cmp::Ordering;
use std::fmt;

/// Polynomials here live in at most three variables, named `x`, `y`, `z`.
pub const MAX_VARS: usize = 3;
pub const VAR_NAMES: [char; MAX_VARS] = ['x', 'y', 'z'];

/// Exponent vector of a monomial.
///
/// `Ord` is the local degree ordering used everywhere in this module: lower
/// total degree is *larger*, and ties are broken reverse-lexicographically
/// with `x > y > z` (a smaller exponent in the last differing variable makes
/// the monomial larger). So the leading term of a polynomial is its maximum
/// under this ordering, which is a term of lowest total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn new(exponents: [u32; MAX_VARS]) -> Self {
        Monomial(exponents)
    }

    pub fn xy(i: u32, j: u32) -> Self {
        Monomial([i, j, 0])
    }

    pub fn var(index: usize, power: u32) -> Self {
        let mut e = [0; MAX_VARS];
        e[index] = power;
        Monomial(e)
    }

    pub fn exponents(&self) -> [u32; MAX_VARS] {
        self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    /// If this is `var^k` (k may be zero), which variables it is a pure power
    /// of. The constant monomial counts as a pure power of every variable.
    pub fn is_pure_power_of(&self, var: usize) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| i == var || e == 0)
    }

    /// Highest variable index with a nonzero exponent, plus one.
    pub fn used_vars(&self) -> usize {
        self.0.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1)
    }

    /// All monomials in `nvars` variables of total degree at most `max_degree`.
    pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut stack = vec![(0usize, [0u32; MAX_VARS], 0u32)];
        while let Some((var, e, deg)) = stack.pop() {
            if var == nvars {
                out.push(Monomial(e));
                continue;
            }
            for k in 0..=max_degree - deg {
                let mut next = e;
                next[var] = k;
                stack.push((var + 1, next, deg + k));
            }
        }
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            for v in (0..MAX_VARS).rev() {
                match self.0[v].cmp(&other.0[v]) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", VAR_NAMES[v])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_degree_leads() {
        assert!(Monomial::xy(1, 0) > Monomial::xy(2, 0));
        assert!(Monomial::ONE > Monomial::xy(0, 1));
        assert!(Monomial::xy(7, 0) > Monomial::xy(5, 5));
    }

    #[test]
    fn revlex_ties() {
        // x^2 > xy > y^2 in degree 2
        assert!(Monomial::xy(2, 0) > Monomial::xy(1, 1));
        assert!(Monomial::xy(1, 1) > Monomial::xy(0, 2));
        assert!(Monomial::new([1, 1, 0]) > Monomial::new([1, 0, 1]));
        assert!(Monomial::new([0, 2, 0]) > Monomial::new([1, 0, 1]));
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::xy(2, 1);
        let b = Monomial::xy(1, 3);
        assert_eq!(a.lcm(&b), Monomial::xy(2, 3));
        assert!(Monomial::xy(1, 1).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(a.checked_div(&Monomial::xy(1, 1)), Some(Monomial::xy(1, 0)));
        assert_eq!(a.checked_div(&b), None);
    }

    #[test]
    fn enumerates_truncated_space() {
        assert_eq!(Monomial::all_up_to(2, 2).len(), 6);
        assert_eq!(Monomial::all_up_to(3, 2).len(), 10);
        assert_eq!(Monomial::all_up_to(1, 4).len(), 5);
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::xy(5, 1).to_string(), "x^5*y");
        assert_eq!(Monomial::ONE.to_string(), "1");
        assert_eq!(Monomial::new([0, 0, 3]).to_string(), "z^3");
    }
}
