//! Brute-force colength by linear algebra on truncated polynomial spaces.
//!
//! For a cap `N`, the span of all `m·g` (truncated to degree `<= N`) inside
//! the space of polynomials of degree `<= N` has codimension
//! `dim C[x]/(I + m^{N+1})`. These dimensions increase with `N` and, once two
//! consecutive caps agree, Nakayama gives `m^{N+1} ⊂ I` locally, so the value
//! is the local colength. This path shares nothing with the Mora engine
//! beyond the polynomial type.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::monomial::Monomial;
use super::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleColength {
    Stable(usize),
    Unstable,
}

type Row = BTreeMap<Monomial, BigRational>;

/// Tries caps `1, 2, …, degree_cap`; returns the first dimension that agrees
/// across two consecutive caps while the lead span at the smaller cap
/// contains a pure power of every variable.
pub fn colength_oracle(gens: &[Poly], degree_cap: u32) -> OracleColength {
    let nvars = gens.iter().map(Poly::nvars).max().unwrap_or(0);
    let gens: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    let mut previous: Option<(usize, bool)> = None;
    for cap in 1..=degree_cap {
        let (dim, pivots) = truncated_quotient(&gens, nvars, cap);
        let has_powers = (0..nvars).all(|v| {
            pivots
                .iter()
                .any(|m| m.is_pure_power_of(v) && m.degree() <= cap)
        });
        if let Some((prev_dim, prev_powers)) = previous {
            if prev_dim == dim && prev_powers {
                return OracleColength::Stable(dim);
            }
        }
        previous = Some((dim, has_powers));
    }
    OracleColength::Unstable
}

/// Codimension of the truncated span and its pivot (leading) monomials.
fn truncated_quotient(gens: &[&Poly], nvars: usize, cap: u32) -> (usize, Vec<Monomial>) {
    let space = Monomial::all_up_to(nvars, cap);
    let mut pivots: BTreeMap<Monomial, Row> = BTreeMap::new();
    for g in gens {
        let order = g.order().expect("nonzero");
        if order > cap {
            continue;
        }
        for m in Monomial::all_up_to(nvars, cap - order) {
            let mut row: Row = g
                .terms()
                .map(|(t, c)| (t.mul(&m), c.as_big_rational().clone()))
                .filter(|(t, _)| t.degree() <= cap)
                .collect();
            reduce_into(&mut row, &mut pivots);
        }
    }
    let rank = pivots.len();
    (space.len() - rank, pivots.into_keys().collect())
}

fn reduce_into(row: &mut Row, pivots: &mut BTreeMap<Monomial, Row>) {
    loop {
        let Some((&lead, lead_coeff)) = row.iter().next_back() else {
            return;
        };
        let lead_coeff = lead_coeff.clone();
        match pivots.get(&lead) {
            None => {
                let scale = lead_coeff.recip();
                for c in row.values_mut() {
                    *c *= &scale;
                }
                pivots.insert(lead, std::mem::take(row));
                return;
            }
            Some(pivot) => {
                for (m, c) in pivot {
                    let entry = row.entry(*m).or_insert_with(BigRational::zero);
                    *entry -= &lead_coeff * c;
                    if entry.is_zero() {
                        row.remove(m);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localg::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn monomial_ideal() {
        assert_eq!(
            colength_oracle(&[p("x^2"), p("y^2")], 6),
            OracleColength::Stable(4)
        );
    }

    #[test]
    fn jacobian_of_x3_plus_y3() {
        assert_eq!(
            colength_oracle(&[p("3*x^2"), p("3*y^2")], 6),
            OracleColength::Stable(4)
        );
    }

    #[test]
    fn non_isolated_never_stabilizes() {
        assert_eq!(
            colength_oracle(&[p("x*y^2"), p("x^2*y")], 12),
            OracleColength::Unstable
        );
    }

    #[test]
    fn cap_too_small_is_unstable() {
        assert_eq!(
            colength_oracle(&[p("x^5"), p("y^5")], 3),
            OracleColength::Unstable
        );
    }

    #[test]
    fn unit_ideal_has_colength_zero() {
        assert_eq!(colength_oracle(&[p("1+x")], 4), OracleColength::Stable(0));
    }

    #[test]
    fn higher_order_terms_are_units() {
        assert_eq!(
            colength_oracle(&[p("y"), p("x^3+x^4")], 8),
            OracleColength::Stable(3)
        );
    }
}
