//! Exact spectra and Tjurina subspectra of plane curve singularities, the
//! variance defect of the generalized Hertling inequality, and a small local
//! standard-basis engine for Milnor and Tjurina numbers.
//!
//! Every statistic is an exact rational. Decimal output exists only for
//! display.

pub mod conjecture;
pub mod families;
pub mod localg;
pub mod spectra;

pub use spectra::{ratio, ExactRatio, IndexSet, Spectrum, SubsetStats};
