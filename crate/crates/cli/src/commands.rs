use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use laguerre_dd::base_block::{
    check_conditions, condition_holds, condition_text, table_parameters, BlockChoice, Case, CaseSpec,
    QuadrupleClass,
};
use laguerre_dd::design::{construct_with, DivisibleDesign, LaguerreAction};
use laguerre_dd::group::group_order_formula;
use laguerre_dd::spera::stabilizer_order;
use laguerre_dd::verify::{self, verification_cost, verify_design_with_cap, VerificationReport, DEFAULT_CAP};
use laguerre_dd::{Error, Field};
use thiserror::Error;

use crate::selfcheck;

/// Largest group order `--check` style measurements will enumerate.
pub const GROUP_CAP: u64 = 2_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{}", core_message(.0))]
    Core(#[from] Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("output error: {0}")]
    Output(#[from] std::io::Error),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

fn core_message(e: &Error) -> String {
    match e {
        Error::CapExceeded { .. } => format!("{e}; try a smaller q"),
        other => other.to_string(),
    }
}

impl CliError {
    /// Exit status for a command that stopped with this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::CapExceeded { .. }) => 2,
            CliError::Core(Error::Malformed(_)) => 2,
            CliError::Core(
                Error::NotPrime(_)
                | Error::BadDegree(_)
                | Error::FieldTooLarge(_)
                | Error::NotADivisor(..)
                | Error::Condition { .. }
                | Error::NoEligibleElement
                | Error::BadStrength { .. },
            ) => 2,
            CliError::Core(_) => 1,
            CliError::Config(_) | CliError::Io { .. } | CliError::NotApplicable(_) => 2,
            CliError::Output(_) => 1,
        }
    }
}

/// Whether a completed command found everything it checked to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: u32,
    pub n: u32,
    pub spec: CaseSpec,
    pub t: usize,
    pub out: Option<PathBuf>,
    pub verify: bool,
}

pub fn summary_line(d: &DivisibleDesign) -> String {
    let p = &d.params;
    format!("{}-({},{},{}) DD with {} points, {} blocks", p.t, p.s, p.k, p.lambda, p.v, p.b)
}

fn field(p: u32, n: u32) -> Result<Field, CliError> {
    Ok(Field::new(p, n)?)
}

fn validate(cfg: &RunConfig) -> Result<Field, CliError> {
    if !(2..=3).contains(&cfg.t) {
        return Err(CliError::Config(format!("--t must be 2 or 3, got {}", cfg.t)));
    }
    let f = field(cfg.p, cfg.n)?;
    check_conditions(&f, &cfg.spec)?;
    Ok(f)
}

fn write_report(out: &mut dyn Write, r: &VerificationReport) -> std::io::Result<()> {
    for c in &r.checks {
        writeln!(
            out,
            "  [{}] t={} {}: measured {}; expected {}",
            if c.passed { "PASS" } else { "FAIL" },
            r.t,
            c.name,
            c.measured,
            c.expected
        )?;
    }
    Ok(())
}

/// Verify at the design's strength and one below.
fn verify_both(d: &DivisibleDesign, out: &mut dyn Write) -> Result<(Vec<VerificationReport>, Outcome), CliError> {
    let top = d.params.t as usize;
    let mut reports = Vec::new();
    for t in (top.saturating_sub(1).max(1)..=top).rev() {
        let r = verify_design_with_cap(d, t, DEFAULT_CAP)?;
        writeln!(out, "verification at t={t}: {}", if r.passed() { "pass" } else { "FAIL" })?;
        write_report(out, &r)?;
        reports.push(r);
    }
    let ok = reports.iter().all(|r| r.passed());
    Ok((reports, Outcome::from_bool(ok)))
}

pub fn cmd_construct(cfg: &RunConfig, out: &mut dyn Write) -> Result<(DivisibleDesign, Outcome), CliError> {
    let f = validate(cfg)?;
    let action = LaguerreAction::new(f);
    let (design, _) = construct_with(&action, &cfg.spec, cfg.t)?;
    writeln!(out, "{}", summary_line(&design))?;
    if let Some(path) = &cfg.out {
        fs::write(path, design.to_document()).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    let outcome = if cfg.verify {
        verify_both(&design, out)?.1
    } else {
        Outcome::Pass
    };
    Ok((design, outcome))
}

pub fn load_design(path: &Path) -> Result<DivisibleDesign, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(DivisibleDesign::from_document(&text)?)
}

pub fn cmd_verify(path: &Path, check_group: bool, out: &mut dyn Write) -> Result<(Vec<VerificationReport>, Outcome), CliError> {
    let d = load_design(path)?;
    writeln!(out, "{}", summary_line(&d))?;
    let (reports, mut outcome) = verify_both(&d, out)?;
    if check_group {
        let q = (d.field.p as u64).pow(d.field.n);
        if group_order_formula(q) > GROUP_CAP {
            return Err(CliError::Config(format!(
                "group of order {} exceeds the enumeration cap {GROUP_CAP}",
                group_order_formula(q)
            )));
        }
        let action = LaguerreAction::new(field(d.field.p, d.field.n)?);
        let t = verify::verify_group_transitivity(&d, &action, 50_000_000, 512);
        writeln!(
            out,
            "group action: automorphisms {} ({} elements{}), point-transitive {}, block-transitive {}",
            t.automorphism,
            t.elements_checked,
            if t.exhaustive { ", exhaustive" } else { ", sampled" },
            t.point_transitive,
            t.block_transitive
        )?;
        if !t.passed() {
            outcome = Outcome::Fail;
        }
    }
    writeln!(out, "{}", if outcome == Outcome::Pass { "PASS" } else { "FAIL" })?;
    Ok((reports, outcome))
}

/// Every case row in table order.
pub fn table_cases() -> Vec<Case> {
    let mut cases = vec![Case::I, Case::II, Case::III, Case::IV];
    for c in QuadrupleClass::ALL {
        cases.push(Case::V(c, BlockChoice::Long));
        cases.push(Case::V(c, BlockChoice::Short));
    }
    cases
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub i: u32,
    pub m: u64,
    pub case: Case,
    pub condition: Option<&'static str>,
    pub holds: bool,
    /// Closed-form (k, lambda_3) when the condition holds.
    pub closed_form: Option<(u64, u64)>,
    /// Orbit-based stabiliser order and verifier lambda_3, with `--check`.
    pub measured: Option<(u64, Option<u64>)>,
}

pub fn cmd_table(p: u32, n: u32, check: bool, out: &mut dyn Write) -> Result<Vec<TableRow>, CliError> {
    let f = field(p, n)?;
    let q = f.order() as u64;
    let action = (check && group_order_formula(q) <= GROUP_CAP).then(|| LaguerreAction::new(f.clone()));
    writeln!(out, "3-DDs over GF({q}) = GF({p}^{n}): v = {}, s = {q}", q * q + q)?;
    writeln!(out, "{:<4} {:<6} {:<24} {:>4} {:>8}  condition", "i", "p^i", "case", "k", "lambda3")?;
    let mut rows = Vec::new();
    for i in (1..=n).filter(|i| n % i == 0) {
        let m = (p as u64).pow(i);
        for case in table_cases() {
            let holds = condition_holds(case, p as u64, m);
            let closed_form = if holds { table_parameters(case, m) } else { None };
            let measured = match (&action, closed_form) {
                (Some(a), Some(_)) => measure(a, CaseSpec { case, i })?,
                _ => None,
            };
            let cond = condition_text(case).unwrap_or("none");
            let (k, l) = closed_form
                .map(|(k, l)| (k.to_string(), l.to_string()))
                .unwrap_or(("-".into(), "-".into()));
            write!(
                out,
                "{:<4} {:<6} {:<24} {:>4} {:>8}  {} ({})",
                i,
                m,
                case.to_string(),
                k,
                l,
                cond,
                if holds { "holds" } else { "fails" }
            )?;
            if let Some((stab, lambda)) = measured {
                let lambda = lambda.map_or("over cap".to_string(), |l| l.to_string());
                write!(out, "  measured: stabilizer {stab}, verifier lambda3 {lambda}")?;
            }
            writeln!(out)?;
            rows.push(TableRow {
                i,
                m,
                case,
                condition: condition_text(case),
                holds,
                closed_form,
                measured,
            });
        }
    }
    Ok(rows)
}

fn measure(action: &LaguerreAction, spec: CaseSpec) -> Result<Option<(u64, Option<u64>)>, CliError> {
    let (design, base) = construct_with(action, &spec, 3)?;
    let stab = stabilizer_order(action, &base.block)?;
    let lambda = if verification_cost(&design.classes(), &design.blocks, 3) <= DEFAULT_CAP {
        let r = verify::verify_design(&design, 3)?;
        r.measured_lambda()
    } else {
        None
    };
    Ok(Some((stab, lambda)))
}

/// (v, s, k, lambda_3).
pub type ParameterTuple = (u64, u64, u64, u64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicComparison {
    pub laguerre: ParameterTuple,
    pub conic: ParameterTuple,
}

impl ConicComparison {
    pub fn equal(&self) -> bool {
        self.laguerre == self.conic
    }
}

/// Compare the case (i) design with the parameters of the conic series
/// 3-(q, p^i+1, 1) on q^2+q points (odd q only).
pub fn cmd_compare_conic(p: u32, n: u32, i: u32, out: &mut dyn Write) -> Result<ConicComparison, CliError> {
    let f = field(p, n)?;
    let q = f.order() as u64;
    if q % 2 == 0 {
        writeln!(out, "not applicable: q even (q = {q})")?;
        return Err(CliError::NotApplicable(format!("q even (q = {q})")));
    }
    let spec = CaseSpec { case: Case::I, i };
    check_conditions(&f, &spec)?;
    let action = LaguerreAction::new(f);
    let (design, _) = construct_with(&action, &spec, 3)?;
    let d = &design.params;
    let cmp = ConicComparison {
        laguerre: (d.v, d.s, d.k, d.lambda),
        conic: (q * q + q, q, (p as u64).pow(i) + 1, 1),
    };
    writeln!(out, "laguerre case (i): (v, s, k, lambda3) = {:?}", cmp.laguerre)?;
    writeln!(out, "conic series:      (v, s, k, lambda3) = {:?}", cmp.conic)?;
    writeln!(out, "{}", if cmp.equal() { "equal" } else { "DIFFERENT" })?;
    Ok(cmp)
}

pub fn cmd_selfcheck(max_q: u32, out: &mut dyn Write) -> Result<(selfcheck::SelfCheckReport, Outcome), CliError> {
    let report = selfcheck::run(max_q, out)?;
    let outcome = Outcome::from_bool(report.passed());
    writeln!(
        out,
        "{} of {} properties hold",
        report.results.iter().filter(|r| r.passed).count(),
        report.results.len()
    )?;
    Ok((report, outcome))
}
