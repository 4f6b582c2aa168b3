//! Built-in consistency checks, shared by `tjspec verify` and the acceptance
//! test target. Every numeric comparison is exact.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tjspec::conjecture::{
    closed_form_tau_delta_322, direct_tau_delta_322, enumerate_candidates, prop41_step,
    remark32_compare, thm31_verdict, tjurina_defect, ClosedFormMode, ConjectureError,
};
use tjspec::families::{
    brieskorn_two_var, cross_check, puiseux_spectrum, swh_instance, three_monomial_instance,
    three_monomial_lattice, Exclusion, PuiseuxParams, SwhParams, ThreeMonomialParams,
};
use tjspec::localg::{
    colength_oracle, local_std_basis, milnor_tjurina, parse_poly, Colength, OracleColength, Poly,
};
use tjspec::spectra::{
    average_of, centered_variance, ratio, sum_of_squares, ExactRatio, IndexSet, Spectrum,
};

use crate::args::{FamilyKind, Fault, VerifyArgs};
use crate::sweep::{grid, run_sweep};
use crate::Result;

/// Randomized case counts for the identity and removal checks.
pub const IDENTITY_CASES: usize = 10_000;
pub const REMOVAL_CASES: usize = 1_000;

/// Oracle degree cap; the largest colength in the corpus needs about 14.
const ORACLE_CAP: u32 = 24;

pub const THREE_MONOMIAL_TUPLES: [(u32, u32, u32, u32); 6] = [
    (2, 4, 7, 6),
    (2, 3, 9, 7),
    (2, 3, 7, 7),
    (3, 4, 8, 9),
    (2, 5, 9, 8),
    (3, 5, 11, 10),
];

#[derive(Debug, Clone)]
pub struct Ctx {
    pub skip_localg: bool,
    pub fault: Option<Fault>,
    pub seed: u64,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx {
            skip_localg: false,
            fault: None,
            seed: 20_251_015,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Pass(_) => "PASS",
            Outcome::Fail(_) => "FAIL",
            Outcome::Skipped(_) => "SKIPPED",
        }
    }

    pub fn detail(&self) -> &str {
        match self {
            Outcome::Pass(s) | Outcome::Fail(s) | Outcome::Skipped(s) => s,
        }
    }
}

pub struct Check {
    pub criterion: u8,
    pub name: &'static str,
    pub needs_localg: bool,
    pub run: fn(&Ctx) -> Outcome,
}

/// Wall-clock budget per criterion, summed over its checks.
pub fn budget(criterion: u8) -> Duration {
    Duration::from_secs(match criterion {
        1 | 3 | 4 => 1,
        2 | 7 => 5,
        5 | 6 => 60,
        _ => 120,
    })
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Outcome::Fail(format!($($fmt)+));
        }
    };
}

macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return Outcome::Fail(format!("{}: {err}", stringify!($e))),
        }
    };
}

pub fn checks() -> Vec<Check> {
    vec![
        Check {
            criterion: 1,
            name: "counterexample defect",
            needs_localg: false,
            run: counterexample_defect,
        },
        Check {
            criterion: 1,
            name: "counterexample milnor/tjurina",
            needs_localg: true,
            run: counterexample_localg,
        },
        Check {
            criterion: 2,
            name: "diagonal sign pattern",
            needs_localg: false,
            run: diagonal_signs,
        },
        Check {
            criterion: 2,
            name: "small grid sign pattern",
            needs_localg: false,
            run: small_grid_signs,
        },
        Check {
            criterion: 3,
            name: "weighted homogeneous equality",
            needs_localg: false,
            run: brieskorn_equality,
        },
        Check {
            criterion: 4,
            name: "two-pair closed forms",
            needs_localg: false,
            run: closed_forms,
        },
        Check {
            criterion: 5,
            name: "three-monomial lattice vs standard basis",
            needs_localg: true,
            run: three_monomial,
        },
        Check {
            criterion: 6,
            name: "standard basis vs linear algebra oracle",
            needs_localg: true,
            run: oracle_corpus,
        },
        Check {
            criterion: 7,
            name: "enumeration parity",
            needs_localg: false,
            run: enumeration_parity,
        },
        Check {
            criterion: 8,
            name: "spectrum symmetry and average",
            needs_localg: false,
            run: symmetry_and_average,
        },
        Check {
            criterion: 8,
            name: "sum-of-squares identities",
            needs_localg: false,
            run: identities,
        },
        Check {
            criterion: 8,
            name: "sufficient criterion soundness",
            needs_localg: false,
            run: soundness,
        },
        Check {
            criterion: 8,
            name: "removal chain",
            needs_localg: false,
            run: removal_chain,
        },
    ]
}

pub struct CheckResult {
    pub criterion: u8,
    pub name: &'static str,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

pub fn run_checks(ctx: &Ctx) -> Vec<CheckResult> {
    checks()
        .into_iter()
        .map(|c| {
            let start = Instant::now();
            let outcome = if c.needs_localg && ctx.skip_localg {
                Outcome::Skipped("standard-basis engine disabled".into())
            } else {
                (c.run)(ctx)
            };
            CheckResult {
                criterion: c.criterion,
                name: c.name,
                outcome,
                elapsed: start.elapsed(),
            }
        })
        .collect()
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let ctx = Ctx {
        skip_localg: args.skip_localg,
        fault: args.inject_fault,
        seed: args.seed,
    };
    let results = match args.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| crate::CliError::Internal(e.to_string()))?
            .install(|| run_checks(&ctx)),
        None => run_checks(&ctx),
    };
    let mut failed = 0;
    for r in &results {
        writeln!(
            out,
            "{:<7} [{}] {} ({:.3}s): {}",
            r.outcome.tag(),
            r.criterion,
            r.name,
            r.elapsed.as_secs_f64(),
            r.outcome.detail()
        )?;
        failed += usize::from(r.outcome.is_fail());
    }
    writeln!(out, "{} checks, {failed} failed", results.len())?;
    Ok(if failed > 0 { 2 } else { 0 })
}

fn counterexample_defect(_: &Ctx) -> Outcome {
    let inst = attempt!(swh_instance(SwhParams {
        a: 7,
        b: 7,
        c: 1,
        d: 1
    }));
    ensure!(
        inst.mu() == 36 && inst.tau() == 35,
        "mu, tau = {}, {}",
        inst.mu(),
        inst.tau()
    );
    let delta = attempt!(tjurina_defect(&inst));
    // independent summation over i/7 + j/7 with (i, j) != (6, 6)
    let values: Vec<ExactRatio> = (1..7i64)
        .flat_map(|i| (1..7i64).map(move |j| (i, j)))
        .filter(|&p| p != (6, 6))
        .map(|(i, j)| ratio(i + j, 7))
        .collect();
    let av = average_of(&values);
    let direct =
        centered_variance(&values, &av) - (ratio(11, 7) - ratio(2, 7)) / ExactRatio::from(12);
    ensure!(
        delta == direct,
        "defect {delta} but direct summation gives {direct}"
    );
    ensure!(delta == ratio(3, 9604), "defect {delta}, expected 3/9604");
    Outcome::Pass(format!("mu=36 tau=35 delta={delta}"))
}

fn counterexample_localg(_: &Ctx) -> Outcome {
    let f = attempt!(parse_poly("x^7+y^7+x^5*y^5", 2));
    let (mu, tau) = attempt!(milnor_tjurina(&f));
    ensure!((mu, tau) == (36, 35), "engine gives mu={mu} tau={tau}");
    Outcome::Pass("engine gives mu=36 tau=35".into())
}

fn diagonal_signs(_: &Ctx) -> Outcome {
    let tuples: Vec<Vec<i64>> = (3..=12).map(|m| vec![m, m, 1, 1]).collect();
    let rows = attempt!(run_sweep(FamilyKind::Swh, &tuples, false, None));
    // m = 3, 4 violate (a-1-c)/a + (b-1-d)/b > 1 and are not family members
    let ms: Vec<i64> = rows.iter().map(|r| r.params[0]).collect();
    ensure!(ms == (5..=12).collect::<Vec<_>>(), "rows for m = {ms:?}");
    for row in &rows {
        let m = row.params[0];
        ensure!(
            row.delta.is_positive() == (m >= 7),
            "m={m}: delta={} has the wrong sign",
            row.delta
        );
    }
    Outcome::Pass("m=3,4 outside the family; delta > 0 exactly for m >= 7".into())
}

fn small_grid_signs(_: &Ctx) -> Outcome {
    let r = (1..=7).collect::<Vec<i64>>();
    let tuples: Vec<Vec<i64>> = grid(&[r.clone(), r.clone(), r.clone(), r])
        .into_iter()
        .filter(|t| t[1] <= t[0])
        .collect();
    let rows = attempt!(run_sweep(FamilyKind::Swh, &tuples, false, None));
    let positive: Vec<&Vec<i64>> = rows
        .iter()
        .filter(|r| r.delta.is_positive())
        .map(|r| &r.params)
        .collect();
    ensure!(
        positive == [&vec![7, 7, 1, 1]],
        "positive defects at {positive:?}"
    );
    let av_violations = rows.iter().filter(|r| !r.av_obs).count();
    Outcome::Pass(format!(
        "{} valid tuples, only (7,7,1,1) positive; av^Tj > av in {av_violations} rows",
        rows.len()
    ))
}

fn brieskorn_equality(_: &Ctx) -> Outcome {
    let mut n = 0;
    for a in 2..=12 {
        for b in 2..=a {
            let s = attempt!(brieskorn_two_var(a, b));
            ensure!(
                s.hertling_defect().is_zero(),
                "x^{a}+y^{b}: defect {}",
                s.hertling_defect()
            );
            n += 1;
        }
    }
    Outcome::Pass(format!("{n} spectra with zero defect"))
}

fn closed_forms(ctx: &Ctx) -> Outcome {
    let c1 = (
        attempt!(closed_form_tau_delta_322(1, ClosedFormMode::Nonconsecutive)),
        attempt!(closed_form_tau_delta_322(1, ClosedFormMode::Consecutive)),
    );
    ensure!(
        c1 == (ratio(-2257, 28080), ratio(-46139, 340704)),
        "closed forms at c=1 give {} and {}",
        c1.0,
        c1.1
    );
    for c in (1..=21u64).step_by(2) {
        for mode in [ClosedFormMode::Nonconsecutive, ClosedFormMode::Consecutive] {
            let mut expected = attempt!(closed_form_tau_delta_322(c, mode));
            if ctx.fault == Some(Fault::ClosedForm) && mode == ClosedFormMode::Nonconsecutive {
                // as if the numerator's constant term were off by one
                let c = c as i64;
                expected = expected - ratio(1, 144 * c * c + 3744 * c + 24192);
            }
            let direct = attempt!(direct_tau_delta_322(c, mode));
            ensure!(
                direct == expected,
                "c={c} {mode:?}: pipeline {direct}, closed form {expected}, difference {}",
                &direct - &expected
            );
        }
    }
    Outcome::Pass("odd c in 1..=21, both subsets".into())
}

fn three_monomial(_: &Ctx) -> Outcome {
    for (a, b, c, d) in THREE_MONOMIAL_TUPLES {
        let p = attempt!(ThreeMonomialParams::new(a, b, c, d));
        let lattice = attempt!(three_monomial_lattice(p));
        let inst = attempt!(three_monomial_instance(p));
        let check = attempt!(cross_check(&inst));
        ensure!(
            check.milnor == lattice.mu() && check.tjurina == lattice.tau(),
            "({a},{b},{c},{d}): lattice {}/{} vs engine {}/{}",
            lattice.mu(),
            lattice.tau(),
            check.milnor,
            check.tjurina
        );
        ensure!(
            check.milnor - check.tjurina == p.expected_gap(),
            "({a},{b},{c},{d}): mu - tau = {}, expected {}",
            check.milnor - check.tjurina,
            p.expected_gap()
        );
        ensure!(
            lattice.count_excluded(Exclusion::Prime) == ((a - 1) * (b - 1)) as usize,
            "({a},{b},{c},{d}): |excluded| = {}",
            lattice.count_excluded(Exclusion::Prime)
        );
    }
    Outcome::Pass(format!("{} tuples agree", THREE_MONOMIAL_TUPLES.len()))
}

fn ideal(gens: &[&str], nvars: usize) -> std::result::Result<Vec<Poly>, String> {
    gens.iter()
        .map(|g| parse_poly(g, nvars).map_err(|e| e.to_string()))
        .collect()
}

fn with_f(text: &str, tjurina: bool) -> std::result::Result<Vec<Poly>, String> {
    let f = parse_poly(text, 2).map_err(|e| e.to_string())?;
    let mut gens = tjspec::localg::jacobian(&f);
    if tjurina {
        gens.push(f);
    }
    Ok(gens)
}

/// Label, generators, expected colength (`None` when not finite).
type OracleCase = (
    &'static str,
    std::result::Result<Vec<Poly>, String>,
    Option<usize>,
);

fn oracle_corpus(_: &Ctx) -> Outcome {
    let corpus: Vec<OracleCase> = vec![
        ("jacobian x^3+y^3", with_f("x^3+y^3", false), Some(4)),
        (
            "jacobian (y^2-x^3)^2-x^5*y",
            with_f("(y^2-x^3)^2-x^5*y", false),
            Some(16),
        ),
        (
            "tjurina (y^2-x^3)^2-x^5*y",
            with_f("(y^2-x^3)^2-x^5*y", true),
            Some(14),
        ),
        (
            "jacobian x^7+y^7+x^5*y^5",
            with_f("x^7+y^7+x^5*y^5", false),
            Some(36),
        ),
        (
            "tjurina x^7+y^7+x^5*y^5",
            with_f("x^7+y^7+x^5*y^5", true),
            Some(35),
        ),
        (
            "tjurina x^5+y^4+x^3*y^2",
            with_f("x^5+y^4+x^3*y^2", true),
            Some(11),
        ),
        (
            "tjurina x^2*y^4+x^7+y^6",
            with_f("x^2*y^4+x^7+y^6", true),
            Some(24),
        ),
        ("(x^2, y^2)", ideal(&["x^2", "y^2"], 2), Some(4)),
        ("(y, x^3+x^4)", ideal(&["y", "x^3+x^4"], 2), Some(3)),
        ("(x-x^2, y^2)", ideal(&["x-x^2", "y^2"], 2), Some(2)),
        ("(x^2+y^3, x*y)", ideal(&["x^2+y^3", "x*y"], 2), Some(5)),
        ("(1+x, y)", ideal(&["1+x", "y"], 2), Some(0)),
        (
            "jacobian x^2+y^3+z^4",
            ideal(&["2*x", "3*y^2", "4*z^3"], 3),
            Some(6),
        ),
        ("(x*y^2, x^2*y)", ideal(&["x*y^2", "x^2*y"], 2), None),
    ];
    for (name, gens, expected) in &corpus {
        let gens = match gens {
            Ok(g) => g,
            Err(e) => return Outcome::Fail(format!("{name}: {e}")),
        };
        let engine = local_std_basis(gens).colength;
        let oracle = colength_oracle(gens, ORACLE_CAP);
        let agree = match (engine, oracle) {
            (Colength::Finite(a), OracleColength::Stable(b)) => a == b && Some(a) == *expected,
            (Colength::Infinite, OracleColength::Unstable) => expected.is_none(),
            _ => false,
        };
        ensure!(
            agree,
            "{name}: engine {engine}, oracle {oracle:?}, expected {expected:?}"
        );
    }
    Outcome::Pass(format!("{} ideals agree", corpus.len()))
}

fn enumeration_parity(_: &Ctx) -> Outcome {
    let s = attempt!(brieskorn_two_var(7, 7));
    let e = attempt!(enumerate_candidates(&s, 36, 10));
    ensure!(e.k == 31, "k = {}", e.k);
    ensure!(
        e.clamped && e.used_slack == 6,
        "slack {} -> {}",
        e.requested_slack,
        e.used_slack
    );
    let counts: Vec<usize> = (30..=36)
        .rev()
        .map(|t| e.candidates.iter().filter(|c| c.tau_prime == t).count())
        .collect();
    ensure!(
        counts == [0, 1, 2, 3, 4, 5, 1],
        "candidates per tau' (36 down to 30): {counts:?}"
    );
    let top = e.candidates.iter().find(|c| c.tau_prime == 35);
    let swh = attempt!(swh_instance(SwhParams {
        a: 7,
        b: 7,
        c: 1,
        d: 1
    }));
    let delta = attempt!(tjurina_defect(&swh));
    ensure!(
        top.is_some_and(|c| c.stats.delta == delta),
        "tau'=35 candidate delta {:?} vs {delta}",
        top.map(|c| c.stats.delta.to_string())
    );
    Outcome::Pass(format!(
        "k=31, A=10 replaced by 6, {} candidates",
        e.candidates.len()
    ))
}

fn all_spectra() -> std::result::Result<Vec<(String, Spectrum)>, String> {
    let mut out = Vec::new();
    for a in 2..=12 {
        for b in 2..=a {
            out.push((
                format!("brieskorn {a},{b}"),
                brieskorn_two_var(a, b).map_err(|e| e.to_string())?,
            ));
        }
    }
    for (a, b, c, d) in THREE_MONOMIAL_TUPLES {
        let p = ThreeMonomialParams::new(a, b, c, d).map_err(|e| e.to_string())?;
        let inst = three_monomial_instance(p).map_err(|e| e.to_string())?;
        out.push((
            format!("three-monomial {a},{b},{c},{d}"),
            inst.spectrum().clone(),
        ));
    }
    for c in (1..=21i64).step_by(2) {
        let p = PuiseuxParams::new(3, 2, 2, (c - 3) / 2, 1).map_err(|e| e.to_string())?;
        out.push((
            format!("puiseux c={c}"),
            puiseux_spectrum(p).map_err(|e| e.to_string())?,
        ));
    }
    Ok(out)
}

fn symmetry_and_average(_: &Ctx) -> Outcome {
    let spectra = attempt!(all_spectra());
    for (name, s) in &spectra {
        let mu = s.mu();
        let two = ExactRatio::from(2);
        for i in 1..=mu {
            let pair = s.value(i).expect("in range") + s.value(mu + 1 - i).expect("in range");
            ensure!(
                pair == two,
                "{name}: alpha_{i} + alpha_{} = {pair}",
                mu + 1 - i
            );
        }
        ensure!(
            s.average() == ExactRatio::one(),
            "{name}: average {}",
            s.average()
        );
    }
    Outcome::Pass(format!("{} spectra", spectra.len()))
}

fn random_spectrum(rng: &mut ChaCha8Rng) -> std::result::Result<Spectrum, String> {
    let a = rng.gen_range(3..=12);
    let b = rng.gen_range(2..=a);
    brieskorn_two_var(a, b).map_err(|e| e.to_string())
}

fn random_subset(rng: &mut ChaCha8Rng, mu: usize, min_len: usize) -> IndexSet {
    let len = rng.gen_range(min_len..=mu);
    let mut all: Vec<usize> = (1..=mu).collect();
    all.shuffle(rng);
    all.into_iter().take(len).collect()
}

fn identities(ctx: &Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut swaps = 0;
    let mut predictions = 0;
    for case in 0..IDENTITY_CASES {
        let s = attempt!(random_spectrum(&mut rng));
        let t = random_subset(&mut rng, s.mu(), 1);
        let values = attempt!(s.select(&t));
        let tau = ExactRatio::from(values.len() as i64);
        let sum: ExactRatio = values.iter().sum();
        let av = average_of(&values);
        let lhs = centered_variance(&values, &av) * &tau;
        let rhs = sum_of_squares(&values) - sum.square() / &tau;
        ensure!(lhs == rhs, "case {case}: centred sum {lhs} vs {rhs}");

        // replace one value by a smaller spectral number
        let beta = values[rng.gen_range(0..values.len())].clone();
        let lower: Vec<&ExactRatio> = s.values().iter().filter(|v| **v < beta).collect();
        let Some(&beta_prime) = lower.choose(&mut rng) else {
            continue;
        };
        let mut swapped = values.clone();
        let pos = swapped.iter().position(|v| *v == beta).expect("present");
        swapped[pos] = beta_prime.clone();
        let av_prime = average_of(&swapped);
        let diff = &beta - beta_prime;
        ensure!(
            sum_of_squares(&values) - sum_of_squares(&swapped) == &diff * (&beta + beta_prime),
            "case {case}: squares identity fails"
        );
        ensure!(
            &tau * (av.square() - av_prime.square()) == &diff * (&av + &av_prime),
            "case {case}: mean identity fails"
        );
        match remark32_compare(&values, &swapped) {
            Ok(r) => {
                predictions += usize::from(r.prediction != tjspec::conjecture::SwapPrediction::None)
            }
            Err(e @ ConjectureError::Internal(_)) => {
                return Outcome::Fail(format!("case {case}: {e}"))
            }
            Err(e) => return Outcome::Fail(format!("case {case}: unexpected {e}")),
        }
        swaps += 1;
    }
    Outcome::Pass(format!(
        "{IDENTITY_CASES} subsets, {swaps} swaps, {predictions} predictions confirmed"
    ))
}

fn soundness(_: &Ctx) -> Outcome {
    let r: Vec<i64> = (1..=14).collect();
    let mut tuples = grid(&[r.clone(), r.clone(), r.clone(), r]);
    tuples.extend([20, 30, 40, 46, 48, 50, 51, 52, 56].map(|m| vec![m, m, 1, 1]));
    tuples.extend([vec![52, 51, 1, 1], vec![60, 50, 1, 1], vec![56, 56, 2, 1]]);
    let rows = attempt!(run_sweep(FamilyKind::Swh, &tuples, false, None));
    // run_sweep already fails on a guaranteed failure with non-positive delta
    let flagged = rows.iter().filter(|r| r.thm31).count();
    let big = rows.iter().find(|r| r.params == [51, 51, 1, 1]);
    ensure!(
        big.is_some_and(|r| r.thm31 && r.delta.is_positive()),
        "(51,51,1,1) not flagged"
    );
    let inst = attempt!(swh_instance(SwhParams {
        a: 51,
        b: 51,
        c: 1,
        d: 1
    }));
    let v = attempt!(thm31_verdict(&inst, true));
    ensure!(
        v.cond_3_3 && v.guaranteed_failure,
        "(51,51,1,1) verdict {v:?}"
    );
    Outcome::Pass(format!(
        "{} tuples, {flagged} flagged, all with delta > 0",
        rows.len()
    ))
}

fn removal_chain(ctx: &Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x5eed);
    let mut applicable = 0;
    let mut guaranteed = 0;
    for case in 0..REMOVAL_CASES {
        let s = attempt!(random_spectrum(&mut rng));
        let t = random_subset(&mut rng, s.mu(), 2);
        let members: Vec<usize> = t.iter().copied().collect();
        let i0 = members[rng.gen_range(0..members.len())];
        let step = match prop41_step(&s, &t, i0) {
            Ok(step) => step,
            Err(e) => return Outcome::Fail(format!("case {case}: {e}")),
        };
        if step.hypothesis_42 && step.extremes_preserved {
            applicable += 1;
            ensure!(
                step.before.tau_delta() >= step.after.tau_delta(),
                "case {case}: tau*delta grew"
            );
        }
        guaranteed += usize::from(step.guaranteed);
    }
    Outcome::Pass(format!(
        "{REMOVAL_CASES} cases, {applicable} satisfy the hypotheses, {guaranteed} carry delta <= 0"
    ))
}
