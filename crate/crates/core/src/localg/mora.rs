//! Standard bases in the localization at the origin, via Mora's tangent cone
//! normal form.
//!
//! Once the leading monomials found so far contain every monomial of some
//! degree `D`, the ideal contains `m^D` in the local ring and all further work
//! is done modulo `m^D` (terms of degree `>= D` are dropped).

use std::fmt;

use super::monomial::{Monomial, MAX_VARS};
use super::poly::Poly;
use crate::spectra::ExactRatio;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Colength {
    Finite(usize),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<usize> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdBasisResult {
    pub generators: Vec<Poly>,
    /// Leading monomial of each generator, in the same order.
    pub lead_exponents: Vec<Monomial>,
    pub colength: Colength,
}

impl StdBasisResult {
    /// Minimal generators of the lead ideal, sorted.
    pub fn minimal_leads(&self) -> Vec<Monomial> {
        minimal_monomials(&self.lead_exponents)
    }
}

/// Computes a standard basis of the ideal generated by `gens` under the local
/// degree ordering. Zero generators are ignored; an ideal with no nonzero
/// generator has infinite colength.
pub fn local_std_basis(gens: &[Poly]) -> StdBasisResult {
    let nvars = gens.iter().map(Poly::nvars).max().unwrap_or(0);
    let mut engine = Engine::new(nvars);
    for g in gens.iter().filter(|g| !g.is_zero()) {
        engine.push(g.primitive());
    }
    engine.run();
    let lead_exponents: Vec<Monomial> = engine
        .basis
        .iter()
        .map(|g| g.lead_monomial().expect("basis elements are nonzero"))
        .collect();
    let colength = colength_of_leads(nvars, &lead_exponents);
    StdBasisResult {
        generators: engine.basis,
        lead_exponents,
        colength,
    }
}

/// Number of monomials outside the monomial ideal generated by `leads`.
pub fn colength_of_leads(nvars: usize, leads: &[Monomial]) -> Colength {
    let minimal = minimal_monomials(leads);
    match standard_monomials(nvars, &minimal) {
        Some(std) => Colength::Finite(std.len()),
        None => Colength::Infinite,
    }
}

fn minimal_monomials(monos: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = monos.to_vec();
    sorted.sort_by_key(|m| (m.degree(), std::cmp::Reverse(*m)));
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|d| d.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

/// Monomials not divisible by any of `leads`, or `None` if there are
/// infinitely many (some variable has no pure power among the leads).
fn standard_monomials(nvars: usize, leads: &[Monomial]) -> Option<Vec<Monomial>> {
    let mut bounds = [1u32; MAX_VARS];
    for (var, bound) in bounds.iter_mut().enumerate().take(nvars) {
        *bound = leads
            .iter()
            .filter(|m| m.is_pure_power_of(var))
            .map(|m| m.exponent(var))
            .min()?;
    }
    let mut out = Vec::new();
    for i in 0..bounds[0] {
        for j in 0..bounds[1] {
            for k in 0..bounds[2] {
                let m = Monomial::new([i, j, k]);
                if !leads.iter().any(|l| l.divides(&m)) {
                    out.push(m);
                }
            }
        }
    }
    Some(out)
}

struct Engine {
    nvars: usize,
    basis: Vec<Poly>,
    pairs: Vec<(usize, usize)>,
    /// `Some(d)` once `m^d` is known to lie in the ideal.
    noether: Option<u32>,
}

impl Engine {
    fn new(nvars: usize) -> Self {
        Engine {
            nvars,
            basis: Vec::new(),
            pairs: Vec::new(),
            noether: None,
        }
    }

    fn push(&mut self, p: Poly) {
        let new = self.basis.len();
        for old in 0..new {
            self.pairs.push((old, new));
        }
        self.basis.push(p);
        self.update_noether();
    }

    fn run(&mut self) {
        while let Some((i, j)) = self.next_pair() {
            let s = spoly(&self.basis[i], &self.basis[j]);
            let s = self.truncate(&s);
            if s.is_zero() {
                continue;
            }
            let h = self.normal_form(s);
            if !h.is_zero() {
                self.push(h.primitive());
            }
        }
    }

    /// Pair with the lowest lcm degree; ties go to the earliest created.
    fn next_pair(&mut self) -> Option<(usize, usize)> {
        loop {
            let (pos, _) = self
                .pairs
                .iter()
                .enumerate()
                .min_by_key(|(pos, &(i, j))| (self.pair_lcm(i, j).degree(), *pos))?;
            let (i, j) = self.pairs.remove(pos);
            if let Some(d) = self.noether {
                // every term of the s-polynomial has degree >= deg lcm
                if self.pair_lcm(i, j).degree() >= d {
                    continue;
                }
            }
            return Some((i, j));
        }
    }

    fn pair_lcm(&self, i: usize, j: usize) -> Monomial {
        let a = self.basis[i].lead_monomial().expect("nonzero");
        let b = self.basis[j].lead_monomial().expect("nonzero");
        a.lcm(&b)
    }

    fn truncate(&self, p: &Poly) -> Poly {
        match self.noether {
            None => p.clone(),
            Some(d) => match p.order() {
                Some(o) if o >= d => {
                    // p lies in m^d, which is in the ideal
                    Poly::zero(p.nvars())
                }
                _ => p.truncate_below(d),
            },
        }
    }

    /// Mora's normal form: reducers are chosen by minimal ecart (earliest on
    /// ties), and an intermediate result is added to the reducer set whenever
    /// the chosen reducer has larger ecart than it.
    fn normal_form(&self, f: Poly) -> Poly {
        let mut h = f;
        let mut extra: Vec<Poly> = Vec::new();
        while let Some(lead) = h.lead_monomial() {
            let reducer = self
                .basis
                .iter()
                .chain(extra.iter())
                .filter(|g| g.lead_monomial().is_some_and(|l| l.divides(&lead)))
                .min_by_key(|g| g.ecart());
            let Some(g) = reducer else { break };
            let g = g.clone();
            if g.ecart() > h.ecart() {
                extra.push(h.clone());
            }
            h = self.truncate(&spoly(&h, &g)).primitive();
        }
        h
    }

    fn update_noether(&mut self) {
        let leads: Vec<Monomial> = self.basis.iter().filter_map(Poly::lead_monomial).collect();
        let minimal = minimal_monomials(&leads);
        let Some(std) = standard_monomials(self.nvars, &minimal) else {
            return;
        };
        let bound = std.iter().map(|m| m.degree() + 1).max().unwrap_or(0);
        if self.noether.is_some_and(|d| d <= bound) {
            return;
        }
        self.noether = Some(bound);
        let basis = std::mem::take(&mut self.basis);
        self.basis = basis
            .into_iter()
            .map(|p| match p.order() {
                Some(o) if o >= bound => {
                    let lead = p.lead_monomial().expect("nonzero");
                    Poly::monomial(p.nvars(), lead, ExactRatio::one())
                }
                _ => p.truncate_below(bound).primitive(),
            })
            .collect();
    }
}

/// `lc(g)·h - lc(h)·(lm(h)/lm(g))·g` when `lm(g) | lm(h)`, otherwise the
/// ordinary s-polynomial over the lcm of both leading monomials.
fn spoly(h: &Poly, g: &Poly) -> Poly {
    let (lh, lg) = (
        h.lead_monomial().expect("nonzero"),
        g.lead_monomial().expect("nonzero"),
    );
    let (ch, cg) = (
        h.lead_coeff().expect("nonzero").clone(),
        g.lead_coeff().expect("nonzero").clone(),
    );
    let lcm = lh.lcm(&lg);
    let mh = lcm.checked_div(&lh).expect("lcm is a multiple");
    let mg = lcm.checked_div(&lg).expect("lcm is a multiple");
    let mut out = h.mul_monomial(&mh, &cg);
    out.add_scaled_shifted(g, &mg, &-ch);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localg::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = local_std_basis(&[p("x^2"), p("y^2")]);
        assert_eq!(r.colength, Colength::Finite(4));
        assert_eq!(
            r.minimal_leads(),
            vec![Monomial::xy(0, 2), Monomial::xy(2, 0)]
        );
    }

    #[test]
    fn higher_order_terms_are_units() {
        let r = local_std_basis(&[p("y"), p("x^3+x^4")]);
        assert_eq!(r.colength, Colength::Finite(3));
        assert!(r.minimal_leads().contains(&Monomial::xy(3, 0)));
    }

    #[test]
    fn non_isolated_has_infinite_colength() {
        let r = local_std_basis(&[p("x*y^2"), p("x^2*y")]);
        assert_eq!(r.colength, Colength::Infinite);
        assert!(local_std_basis(&[Poly::zero(2)]).colength == Colength::Infinite);
    }

    #[test]
    fn unit_ideal() {
        let r = local_std_basis(&[p("1+x"), p("y")]);
        assert_eq!(r.colength, Colength::Finite(0));
    }

    #[test]
    fn zero_at_origin_only_locally() {
        // x(1-x) has zeros at 0 and 1; locally at 0 it is x times a unit
        let r = local_std_basis(&[p("x-x^2"), p("y^2")]);
        assert_eq!(r.colength, Colength::Finite(2));
    }

    #[test]
    fn leads_match_generators() {
        let r = local_std_basis(&[p("7*x^6+5*x^4*y^5"), p("7*y^6+5*x^5*y^4")]);
        assert_eq!(r.generators.len(), r.lead_exponents.len());
        for (g, l) in r.generators.iter().zip(&r.lead_exponents) {
            assert_eq!(g.lead_monomial(), Some(*l));
        }
        assert_eq!(r.colength, Colength::Finite(36));
    }

    #[test]
    fn deterministic() {
        let gens = [
            p("4*y^3+2*x^3*y"),
            p("5*x^4+3*x^2*y^2"),
            p("x^5+y^4+x^3*y^2"),
        ];
        assert_eq!(local_std_basis(&gens), local_std_basis(&gens));
    }
}
