//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use laguerre_dd::base_block::{BlockChoice, Case, CaseSpec, QuadrupleClass};
use laguerre_dd::design::{construct_with, LaguerreAction};
use laguerre_dd::spera::{derive_lower_t, stabilizer_order, RGroup};
use laguerre_dd::verify::{verify_design, VerificationReport};
use laguerre_dd::{DivisibleDesign, Field};
use laguerre_dd_cli::commands::{cmd_compare_conic, cmd_selfcheck};
use laguerre_dd_cli::CliError;

const GROUP_ORDERS: [(u32, u64); 7] = [
    (2, 48),
    (3, 648),
    (4, 3840),
    (5, 15000),
    (7, 115248),
    (8, 258048),
    (9, 524880),
];
const GROUP_BUDGET: Duration = Duration::from_secs(60);
const CASE_I_BUDGET: Duration = Duration::from_secs(300);
const CASE_V_BUDGET: Duration = Duration::from_secs(1800);
const SELFCHECK_BUDGET: Duration = Duration::from_secs(600);

struct Suite {
    actions: HashMap<u32, LaguerreAction>,
    /// Designs checked at strength 2 by criterion 7: (label, verifier, formula).
    lambda2: Vec<(String, Option<u64>, u64)>,
    failures: usize,
}

type Outcome = Result<String, String>;

impl Suite {
    fn action(&mut self, q: u32) -> &LaguerreAction {
        self.actions
            .entry(q)
            .or_insert_with(|| LaguerreAction::new(Field::of_order(q).unwrap()))
    }

    /// Drop cached groups other than `keep`; the q = 11 group alone is large.
    fn evict_except(&mut self, keep: u32) {
        self.actions.retain(|&q, _| q == keep);
    }

    fn report(&mut self, n: u32, title: &str, outcome: Outcome) {
        match outcome {
            Ok(detail) => println!("[PASS] {n:>2} {title}: {detail}"),
            Err(detail) => {
                self.failures += 1;
                println!("[FAIL] {n:>2} {title}: {detail}");
            }
        }
    }

    /// Build the design of `spec` over GF(q), verify it at t = 3 and record its
    /// strength-2 comparison.
    fn build(&mut self, q: u32, spec: CaseSpec) -> Result<(DivisibleDesign, u64, VerificationReport), String> {
        self.action(q);
        let action = &self.actions[&q];
        let (d, base) = construct_with(action, &spec, 3).map_err(|e| format!("q={q} {}: {e}", spec.case))?;
        let stab = stabilizer_order(action, &base.block).map_err(|e| e.to_string())?;
        let r3 = verify_design(&d, 3).map_err(|e| e.to_string())?;
        if !r3.passed() {
            return Err(format!("q={q} {}: verifier rejects at t=3, histogram {:?}", spec.case, r3.lambda_histogram));
        }
        let formula2 = derive_lower_t(&d.params).map_err(|e| e.to_string())?.lambda;
        let measured2 = verify_design(&d, 2).map_err(|e| e.to_string())?.measured_lambda();
        self.lambda2
            .push((format!("q={q},i={},{}", spec.i, spec.case), measured2, formula2));
        Ok((d, stab, r3))
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<String, String> {
    let took = start.elapsed();
    check(took <= budget, || format!("took {took:.1?}, budget {budget:?}"))?;
    Ok(format!("{took:.1?}"))
}

fn group_orders(s: &mut Suite) -> Outcome {
    let start = Instant::now();
    for (q, expected) in GROUP_ORDERS {
        let got = s.action(q).order() as u64;
        check(got == expected, || format!("q={q}: {got} elements, expected {expected}"))?;
    }
    Ok(format!("q in 2..9 match 48..524880 in {}", within(start, GROUP_BUDGET)?))
}

fn case_i(s: &mut Suite) -> Outcome {
    let mut rows = Vec::new();
    for (p, n, i) in [(2u32, 2, 1), (2, 3, 1), (3, 2, 1), (2, 2, 2), (3, 1, 1)] {
        let start = Instant::now();
        let q = p.pow(n);
        let (d, _, r3) = s.build(q, CaseSpec { case: Case::I, i })?;
        let measured = r3.measured_lambda();
        within(start, CASE_I_BUDGET)?;
        let (q, m) = (q as u64, (p as u64).pow(i));
        let expected = (q, m + 1, 1, q * q + q, q.pow(4) * (q * q - 1) / (m * (m * m - 1)));
        let par = &d.params;
        let got = (par.s, par.k, par.lambda, par.v, par.b);
        check(got == expected && measured == Some(1), || {
            format!("q={q},i={i}: (s,k,lambda,v,b) = {got:?}, expected {expected:?}, verifier {measured:?}")
        })?;
        rows.push(format!("q={q},i={i}:b={}", par.b));
    }
    Ok(rows.join(" "))
}

/// Build, then compare (k, lambda_3, stabiliser) and optionally b with the verifier agreeing.
fn expect_design(
    s: &mut Suite,
    q: u32,
    spec: CaseSpec,
    k: u64,
    lambda: u64,
    stab: u64,
    b: Option<u64>,
) -> Result<(String, VerificationReport), String> {
    let (d, measured_stab, r3) = s.build(q, spec)?;
    let measured = r3.measured_lambda();
    let p = &d.params;
    let label = format!("q={q},i={},{}", spec.i, spec.case);
    check(
        p.k == k && p.lambda == lambda && measured_stab == stab && p.stabilizer_order == stab,
        || format!("{label}: k={}, lambda={}, stabilizer={measured_stab}; expected {k}, {lambda}, {stab}", p.k, p.lambda),
    )?;
    check(measured == Some(lambda), || format!("{label}: verifier lambda {measured:?}"))?;
    if let Some(b) = b {
        check(p.b == b, || format!("{label}: b = {}, expected {b}", p.b))?;
    }
    Ok((format!("{label} 3-({},{k},{lambda}) stab {stab}", p.s), r3))
}

fn case_ii(s: &mut Suite) -> Outcome {
    let (a, r3) = expect_design(s, 4, CaseSpec { case: Case::II, i: 2 }, 4, 2, 12, Some(320))?;
    let hist = r3.lambda_histogram;
    check(hist.keys().eq([2u64].iter()), || format!("q=4 histogram keys {:?}", hist.keys().collect::<Vec<_>>()))?;
    // stabiliser of the punctured subline is p^i(p^i - 1)
    let (b, _) = expect_design(s, 8, CaseSpec { case: Case::II, i: 3 }, 8, 6, 56, None)?;
    Ok(format!("{a}, b=320, histogram {{2}}; {b}"))
}

fn main() -> ExitCode {
    let mut s = Suite {
        actions: HashMap::new(),
        lambda2: Vec::new(),
        failures: 0,
    };
    let total = Instant::now();

    let r = group_orders(&mut s);
    s.report(1, "group order q^4(q^2-1)", r);
    let r = case_i(&mut s);
    s.report(2, "case (i) designs", r);
    let r = case_ii(&mut s);
    s.report(3, "case (ii) designs", r);
    let r = expect_design(&mut s, 8, CaseSpec { case: Case::III, i: 3 }, 7, 15, 14, None).map(|x| x.0);
    s.report(4, "case (iii) design", r);
    let r = expect_design(&mut s, 8, CaseSpec { case: Case::IV, i: 3 }, 6, 20, 6, None).map(|x| x.0);
    s.report(5, "case (iv) design", r);
    let r = case_v(&mut s);
    s.report(6, "case (v) variants, long and short", r);
    let r = lambda2(&s);
    s.report(7, "strength-2 consistency", r);
    let r = conic();
    s.report(8, "conic series parameters", r);
    let r = selfcheck();
    s.report(9, "property suite, max q 5", r);
    let r = mutation(&mut s);
    s.report(10, "mutation sensitivity", r);

    println!(
        "{} of 10 criteria pass ({:.1?})",
        10 - s.failures,
        total.elapsed()
    );
    if s.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn case_v(s: &mut Suite) -> Outcome {
    use BlockChoice::{Long, Short};
    use QuadrupleClass::*;
    // (q, i, class, block, k, lambda_3)
    let rows = [
        (8, 3, Generic, Long, 5, 15),
        (8, 3, Generic, Short, 4, 6),
        (9, 2, Superharmonic, Long, 6, 5),
        (9, 2, Superharmonic, Short, 4, 1),
        (7, 1, Equianharmonic, Long, 4, 2),
        (7, 1, Equianharmonic, Short, 4, 2),
        (11, 1, Harmonic, Long, 8, 42),
        (11, 1, Harmonic, Short, 4, 3),
    ];
    let start = Instant::now();
    let mut out = Vec::new();
    for (q, i, class, block, k, lambda) in rows {
        let spec = CaseSpec { case: Case::V(class, block), i };
        let b = (q == 11 && block == Long).then_some(219_615);
        s.evict_except(q);
        out.push(expect_design(s, q, spec, k, lambda, class.stabilizer_order(), b)?.0);
    }
    out.push(within(start, CASE_V_BUDGET)?);
    Ok(out.join("; "))
}

fn lambda2(s: &Suite) -> Outcome {
    check(!s.lambda2.is_empty(), || "no designs recorded".into())?;
    for (label, measured, formula) in &s.lambda2 {
        check(*measured == Some(*formula), || format!("{label}: verifier {measured:?}, formula {formula}"))?;
    }
    let q9 = s
        .lambda2
        .iter()
        .find(|(l, _, _)| l == "q=9,i=1,i")
        .map(|x| x.2);
    check(q9 == Some(36), || format!("q=9 case (i) lambda_2 = {q9:?}, expected 36"))?;
    Ok(format!("{} designs agree, q=9 case (i) lambda_2 = 36", s.lambda2.len()))
}

fn conic() -> Outcome {
    let mut sink = Vec::new();
    let mut rows = Vec::new();
    for (p, n, i) in [(3, 2, 1), (5, 1, 1), (7, 1, 1)] {
        let cmp = cmd_compare_conic(p, n, i, &mut sink).map_err(|e| e.to_string())?;
        check(cmp.equal(), || format!("({p},{n},{i}): {:?} vs {:?}", cmp.laguerre, cmp.conic))?;
        rows.push(format!("{:?}", cmp.laguerre));
    }
    for (p, n) in [(2, 2), (2, 3)] {
        let mut text = Vec::new();
        let r = cmd_compare_conic(p, n, 1, &mut text);
        let text = String::from_utf8(text).unwrap();
        check(
            matches!(r, Err(CliError::NotApplicable(_))) && text.contains("not applicable"),
            || format!("even q = {p}^{n} not reported as not applicable"),
        )?;
    }
    Ok(format!("{} equal; even q not applicable", rows.join(" ")))
}

fn selfcheck() -> Outcome {
    let start = Instant::now();
    let mut sink = Vec::new();
    let (report, _) = cmd_selfcheck(5, &mut sink).map_err(|e| e.to_string())?;
    let failed: Vec<String> = report.failures().map(|f| format!("q={} {}", f.q, f.name)).collect();
    check(failed.is_empty(), || failed.join(", "))?;
    for q in [2, 3, 4, 5] {
        for name in [
            "parallelism is an equivalence",
            "parallel classes",
            "parallelism preserved",
            "sharp 3-transitivity",
        ] {
            check(report.find(q, name).is_some(), || format!("q={q}: {name} not run"))?;
        }
    }
    for q in [2, 3, 4] {
        check(report.find(q, "faithful point action").is_some(), || format!("q={q}: faithfulness not run"))?;
    }
    Ok(format!("{} properties in {}", report.results.len(), within(start, SELFCHECK_BUDGET)?))
}

fn mutation(s: &mut Suite) -> Outcome {
    s.evict_except(4);
    let (mut d, _) = construct_with(s.action(4), &CaseSpec { case: Case::I, i: 1 }, 3).map_err(|e| e.to_string())?;
    d.blocks.remove(0);
    let r = verify_design(&d, 3).map_err(|e| e.to_string())?;
    let keys: Vec<u64> = r.lambda_histogram.keys().copied().collect();
    check(!r.passed() && keys.len() == 2, || format!("passed {}, histogram keys {keys:?}", r.passed()))?;
    Ok(format!("639 blocks rejected, histogram {:?}", r.lambda_histogram))
}
