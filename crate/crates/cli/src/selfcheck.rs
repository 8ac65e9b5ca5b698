//! Property suite over every field of order at most `max_q`.

use std::collections::HashSet;
use std::io::{self, Write};

use laguerre_dd::base_block::{Case, CaseSpec};
use laguerre_dd::design::{construct_with, LaguerreAction};
use laguerre_dd::field::{prime_power, Field};
use laguerre_dd::group::group_order_formula;
use laguerre_dd::spera::{stabilizer_order_direct, RGroup};
use laguerre_dd::verify::{self, verify_design};
use laguerre_dd::{DualRing, LaguerrePoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimum number of sampled (source, target) triple pairs for q in {4, 5}.
pub const SAMPLED_PAIRS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub q: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SelfCheckReport {
    pub results: Vec<PropertyResult>,
}

impl SelfCheckReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn find(&self, q: u32, name: &str) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.q == q && r.name == name)
    }
}

struct Recorder<'a> {
    q: u32,
    report: &'a mut SelfCheckReport,
    out: &'a mut dyn Write,
}

impl Recorder<'_> {
    fn record(&mut self, name: &str, passed: bool, detail: String) -> io::Result<()> {
        writeln!(
            self.out,
            "[{}] q={} {}: {}",
            if passed { "PASS" } else { "FAIL" },
            self.q,
            name,
            detail
        )?;
        self.report.results.push(PropertyResult {
            q: self.q,
            name: name.to_string(),
            passed,
            detail,
        });
        Ok(())
    }
}

pub fn prime_powers_up_to(max_q: u32) -> Vec<u32> {
    (2..=max_q).filter(|&q| prime_power(q).is_some()).collect()
}

pub fn run(max_q: u32, out: &mut dyn Write) -> io::Result<SelfCheckReport> {
    let mut report = SelfCheckReport::default();
    for q in prime_powers_up_to(max_q) {
        let mut rec = Recorder {
            q,
            report: &mut report,
            out: &mut *out,
        };
        check_order(q, &mut rec)?;
    }
    Ok(report)
}

fn check_order(q: u32, rec: &mut Recorder<'_>) -> io::Result<()> {
    let field = Field::of_order(q).expect("prime power");
    field_checks(&field, rec)?;
    ring_checks(&field, rec)?;
    let action = LaguerreAction::new(field.clone());
    line_checks(&action, rec)?;
    group_checks(&action, rec)?;
    design_checks(&action, rec)
}

fn field_checks(f: &Field, rec: &mut Recorder<'_>) -> io::Result<()> {
    let els: Vec<_> = f.elements().collect();
    let mut ok = true;
    if f.order() <= 81 {
        for &a in &els {
            for &b in &els {
                ok &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
                for &c in &els {
                    ok &= f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
                    ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                    ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
                }
            }
            ok &= f.add(a, f.neg(a)).is_zero();
            if !a.is_zero() {
                ok &= f.mul(a, f.inv(a).unwrap()) == f.one();
            }
        }
    }
    rec.record("field axioms", ok, format!("exhaustive over {} elements", els.len()))?;
    let frob = els.iter().all(|&x| f.pow(x, f.order() as u64) == x);
    rec.record("frobenius closure", frob, "x^q = x for all x".into())?;
    let mut sub_ok = true;
    for i in (1..=f.degree()).filter(|i| f.degree() % i == 0) {
        let sub = f.subfield_elements(i).unwrap();
        sub_ok &= sub.len() as u64 == (f.characteristic() as u64).pow(i);
        sub_ok &= sub
            .iter()
            .all(|&a| sub.iter().all(|&b| sub.contains(&f.add(a, b)) && sub.contains(&f.mul(a, b))));
    }
    rec.record("subfields", sub_ok, "|GF(p^i)| = p^i, closed under + and *".into())
}

fn ring_checks(f: &Field, rec: &mut Recorder<'_>) -> io::Result<()> {
    let r = DualRing::new(f.clone());
    let q = f.order() as usize;
    let size = r.elements().count();
    let units = r.units().count();
    let ideal = r.ideal().count();
    rec.record(
        "dual ring sizes",
        size == q * q && units == q * (q - 1) && ideal == q,
        format!("|D| = {size}, units = {units}, |N| = {ideal}"),
    )?;
    let involution = r.units().all(|u| r.inverse(r.inverse(u).unwrap()).unwrap() == u)
        && r.units().all(|u| r.mul(u, r.inverse(u).unwrap()) == r.one());
    rec.record("dual inverse", involution, "u * u^-1 = 1, (u^-1)^-1 = u".into())?;
    rec.record("laguerre algebra", r.is_laguerre_algebra(), "units = D \\ N, D = K + N".into())
}

fn line_checks(action: &LaguerreAction, rec: &mut Recorder<'_>) -> io::Result<()> {
    let l = action.line();
    let q = l.q() as usize;
    let pts = l.all_points();
    let par: Vec<Vec<bool>> = pts
        .iter()
        .map(|&a| pts.iter().map(|&b| l.is_parallel(a, b)).collect())
        .collect();
    let n = pts.len();
    let reflexive = (0..n).all(|i| par[i][i]);
    let symmetric = (0..n).all(|i| (0..n).all(|j| par[i][j] == par[j][i]));
    let transitive = (0..n).all(|i| {
        (0..n).all(|j| !par[i][j] || (0..n).all(|k| !par[j][k] || par[i][k]))
    });
    rec.record(
        "parallelism is an equivalence",
        reflexive && symmetric && transitive,
        format!("{n} points"),
    )?;
    let classes = l.parallel_classes();
    let sizes_ok = classes.len() == q + 1 && classes.iter().all(|c| c.members.len() == q);
    let consistent = classes.iter().all(|c| {
        c.members
            .iter()
            .all(|&a| pts.iter().all(|&b| l.is_parallel(a, b) == c.members.contains(&b)))
    });
    rec.record(
        "parallel classes",
        sizes_ok && consistent && n == q * q + q,
        format!("{} classes of {} points, v = {n}", classes.len(), q),
    )?;
    if q <= 5 {
        let r = l.ring();
        let scaling = r.elements().all(|x1| {
            r.elements().all(|x2| match l.make_point(x1, x2) {
                Ok(p) => r.units().all(|u| l.make_point(r.mul(u, x1), r.mul(u, x2)) == Ok(p)),
                Err(_) => !x1.is_unit() && !x2.is_unit(),
            })
        });
        rec.record("canonical points under unit scaling", scaling, "all admissible pairs".into())?;
    }
    Ok(())
}

fn group_checks(action: &LaguerreAction, rec: &mut Recorder<'_>) -> io::Result<()> {
    let g = action.group();
    let l = action.line();
    let q = l.q();
    let els = action.elements();
    let expected = group_order_formula(q as u64);
    let distinct: HashSet<_> = els.iter().collect();
    rec.record(
        "group order",
        els.len() as u64 == expected && distinct.len() == els.len(),
        format!("{} distinct elements, q^4(q^2-1) = {expected}", distinct.len()),
    )?;
    if q <= 5 {
        let brute = g.enumerate_by_matrices();
        let same = brute.len() == els.len() && brute.iter().all(|x| distinct.contains(x));
        rec.record(
            "group order by matrix scan",
            same,
            format!("{} canonical regular matrices", brute.len()),
        )?;
    }

    let triples = g.transversal_triples();
    rec.record(
        "ordered transversal triples",
        triples.len() as u64 == expected,
        format!("{}", triples.len()),
    )?;

    // parallelism preserved by every element
    let pts = l.all_points();
    let preserved = els.iter().all(|x| {
        let img: Vec<LaguerrePoint> = pts.iter().map(|&p| g.apply(x, p)).collect();
        (0..pts.len()).all(|i| {
            (i + 1..pts.len()).all(|j| l.is_parallel(pts[i], pts[j]) == l.is_parallel(img[i], img[j]))
        })
    });
    rec.record("parallelism preserved", preserved, format!("all {} elements", els.len()))?;

    // sharp 3-transitivity: for a source triple, g -> g(src) is a bijection onto all triples
    let index_of = |t: [u32; 3]| triples.binary_search(&t).ok();
    let bijective_from = |src: [u32; 3]| {
        let mut hit = vec![false; triples.len()];
        for x in els {
            let img = src.map(|p| g.apply_id(x, p));
            match index_of(img) {
                Some(j) if !hit[j] => hit[j] = true,
                _ => return false,
            }
        }
        hit.into_iter().all(|h| h)
    };
    if q <= 3 {
        let ok = triples.iter().all(|&src| bijective_from(src));
        rec.record(
            "sharp 3-transitivity",
            ok,
            format!("exhaustive: {} x {} triple pairs", triples.len(), triples.len()),
        )?;
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ q as u64);
        let pt = |id: u32| l.point(id).unwrap();
        let mut existence = true;
        for _ in 0..SAMPLED_PAIRS {
            let src = triples[rng.gen_range(0..triples.len())];
            let dst = triples[rng.gen_range(0..triples.len())];
            existence &= match g.map_triple(src.map(pt), dst.map(pt)) {
                Ok(x) => src.map(|p| g.apply_id(&x, p)) == dst,
                Err(_) => false,
            };
        }
        let sources = 8;
        let uniqueness = (0..sources).all(|_| bijective_from(triples[rng.gen_range(0..triples.len())]));
        rec.record(
            "sharp 3-transitivity",
            existence && uniqueness,
            format!(
                "sampled: {SAMPLED_PAIRS} pairs solved, {sources} sources x {} targets unique",
                triples.len()
            ),
        )?;
    }

    if q <= 4 {
        let perms: HashSet<Vec<u32>> = els.iter().map(|x| g.permutation(x)).collect();
        rec.record(
            "faithful point action",
            perms.len() == els.len(),
            format!("{} distinct permutations", perms.len()),
        )?;
    }
    Ok(())
}

fn design_checks(action: &LaguerreAction, rec: &mut Recorder<'_>) -> io::Result<()> {
    let f = action.line().field().clone();
    let mut degrees = vec![1, f.degree()];
    degrees.dedup();
    for i in degrees {
        let spec = CaseSpec { case: Case::I, i };
        let (design, base) = match construct_with(action, &spec, 3) {
            Ok(x) => x,
            Err(e) => return rec.record("case (i) design", false, e.to_string()),
        };
        let direct = stabilizer_order_direct(action, &base.block);
        let orbit = design.blocks.len() as u64;
        rec.record(
            &format!("orbit-stabilizer (case i, i={i})"),
            direct * orbit == action.order() as u64,
            format!("{direct} * {orbit} = {}", action.order()),
        )?;
        for t in [3, 2] {
            match verify_design(&design, t) {
                Ok(r) => {
                    let expected = verify::expected_at(&design, t).map(|p| p.lambda).ok();
                    rec.record(
                        &format!("verifier vs formula (case i, i={i}, t={t})"),
                        r.passed() && r.measured_lambda() == expected,
                        format!("measured {:?}, formula {:?}", r.measured_lambda(), expected),
                    )?;
                }
                Err(e) => rec.record(&format!("verifier (case i, i={i}, t={t})"), false, e.to_string())?,
            }
        }
    }
    Ok(())
}
