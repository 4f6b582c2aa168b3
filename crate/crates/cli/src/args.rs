use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "tjspec",
    version,
    about = "Tjurina spectra and variance defects of plane curve singularities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the spectrum and Tjurina membership of one family member.
    Spectrum(InstanceArgs),
    /// Print the variance defect and the sufficient-failure flags.
    Check(InstanceArgs),
    /// List candidate Tjurina subspectra of μ-constant deformations of x^a+y^b.
    Enumerate(EnumerateArgs),
    /// Tabulate the defect over a parameter grid.
    Sweep(SweepArgs),
    /// Milnor number of a polynomial at the origin.
    Milnor(PolyArgs),
    /// Tjurina number of a polynomial at the origin.
    Tjurina(PolyArgs),
    /// Run the built-in consistency checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    /// x^a + y^b
    Brieskorn,
    /// x^a + y^b + x^(a-1-c) y^(b-1-d)
    Swh,
    /// x^a y^b + x^c + y^d
    ThreeMonomial,
    /// (y^b - x^a)^d - x^(ad+q) y^r
    Puiseux,
}

impl FamilyKind {
    /// Parameter names in the order used for rows and sorting.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FamilyKind::Brieskorn => &["a", "b"],
            FamilyKind::Swh | FamilyKind::ThreeMonomial => &["a", "b", "c", "d"],
            FamilyKind::Puiseux => &["a", "b", "d", "q", "r"],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
    Json,
}

/// Inclusive integer set given as `n`, `lo..hi` (both ends included) or a
/// comma list of those.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRange(pub Vec<i64>);

impl IntRange {
    pub fn single(&self) -> Option<i64> {
        match self.0.as_slice() {
            [v] => Some(*v),
            _ => None,
        }
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim) {
            if let Some((lo, hi)) = part.split_once("..") {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                let lo: i64 = lo
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad range start in {part:?}"))?;
                let hi: i64 = hi
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad range end in {part:?}"))?;
                if lo > hi {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(lo..=hi);
            } else {
                out.push(
                    part.parse()
                        .map_err(|_| format!("not an integer: {part:?}"))?,
                );
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(IntRange(out))
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<IntRange>,
}

impl ParamArgs {
    pub fn get(&self, name: &str) -> Option<&IntRange> {
        match name {
            "a" => self.a.as_ref(),
            "b" => self.b.as_ref(),
            "c" => self.c.as_ref(),
            "d" => self.d.as_ref(),
            "q" => self.q.as_ref(),
            "r" => self.r.as_ref(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    #[arg(value_enum)]
    pub family: FamilyKind,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Recompute μ and τ from the defining polynomial.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    /// How far below τ to go.
    #[arg(long, default_value_t = 10)]
    pub slack: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub family: FamilyKind,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Keep only tuples with a = b.
    #[arg(long)]
    pub equal_ab: bool,
    /// Keep only tuples with b <= a.
    #[arg(long)]
    pub b_le_a: bool,
    /// Recompute μ and τ with the standard-basis engine for every row.
    /// Always on for three-monomial rows unless --skip-localg is given.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long)]
    pub skip_localg: bool,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: Format,
    /// Worker threads; output does not depend on this.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct PolyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    /// Number of variables (x, y, z); defaults to 3 if z occurs, else 2.
    #[arg(long)]
    pub vars: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    ClosedForm,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Skip every check that needs the standard-basis engine.
    #[arg(long)]
    pub skip_localg: bool,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = 20_251_015)]
    pub seed: u64,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("3..6".parse::<IntRange>().unwrap().0, vec![3, 4, 5, 6]);
        assert_eq!("3..=4".parse::<IntRange>().unwrap().0, vec![3, 4]);
        assert_eq!("-1..1,5".parse::<IntRange>().unwrap().0, vec![-1, 0, 1, 5]);
        assert_eq!("-3".parse::<IntRange>().unwrap().single(), Some(-3));
        assert!("5..3".parse::<IntRange>().is_err());
        assert!("x".parse::<IntRange>().is_err());
    }
}
