//! Local computer algebra at the origin of `C^n`, `n <= 3`: polynomial
//! parsing, Jacobian ideals, standard bases under the local degree ordering,
//! and the Milnor and Tjurina numbers as colengths.

mod monomial;
mod mora;
mod oracle;
mod parse;
mod poly;

use thiserror::Error;

pub use monomial::{Monomial, MAX_VARS, VAR_NAMES};
pub use mora::{colength_of_leads, local_std_basis, Colength, StdBasisResult};
pub use oracle::{colength_oracle, OracleColength};
pub use parse::{parse_poly, ParseError};
pub use poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalgError {
    #[error("the singularity at the origin is not isolated (infinite colength)")]
    NonIsolatedSingularity,
    #[error("f(0) = {0} is nonzero; the Tjurina number needs f(0) = 0")]
    NonzeroConstantTerm(crate::spectra::ExactRatio),
}

/// All first partial derivatives, one per ring variable.
pub fn jacobian(f: &Poly) -> Vec<Poly> {
    (0..f.nvars()).map(|v| f.derivative(v)).collect()
}

/// `dim C{x}/(∂f)`.
pub fn milnor(f: &Poly) -> Result<usize, LocalgError> {
    local_std_basis(&jacobian(f))
        .colength
        .finite()
        .ok_or(LocalgError::NonIsolatedSingularity)
}

/// `dim C{x}/(∂f, f)`.
pub fn tjurina(f: &Poly) -> Result<usize, LocalgError> {
    let c = f.constant_term();
    if !c.is_zero() {
        return Err(LocalgError::NonzeroConstantTerm(c));
    }
    let mut gens = jacobian(f);
    gens.push(f.clone());
    local_std_basis(&gens)
        .colength
        .finite()
        .ok_or(LocalgError::NonIsolatedSingularity)
}

/// Milnor and Tjurina number together.
pub fn milnor_tjurina(f: &Poly) -> Result<(usize, usize), LocalgError> {
    Ok((milnor(f)?, tjurina(f)?))
}
