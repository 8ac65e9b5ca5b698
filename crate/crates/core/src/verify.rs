//! Brute-force check of the divisible-design axioms.
//!
//! Nothing here uses the orbit/stabiliser formula: indices are obtained by
//! counting, for every transversal t-subset, the blocks that contain it.

use std::collections::{BTreeMap, HashSet};

use num_integer::binomial;
use serde::Serialize;

use crate::design::DivisibleDesign;
use crate::error::{Error, Result};
use crate::line::PointId;
use crate::spera::{derive_lower_t, Block, DesignParameters, RGroup};

/// Default bound on the counting work of one verification.
pub const DEFAULT_CAP: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub measured: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub t: usize,
    pub checks: Vec<Check>,
    /// Membership count -> number of transversal t-subsets with that count.
    pub lambda_histogram: BTreeMap<u64, u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The index if every transversal t-subset lies in the same number of blocks.
    pub fn measured_lambda(&self) -> Option<u64> {
        match self.lambda_histogram.keys().collect::<Vec<_>>()[..] {
            [&l] => Some(l),
            _ => None,
        }
    }
}

/// Class structure of a point set: dense class index and position inside the class.
struct Classes {
    index: Vec<usize>,
    position: Vec<usize>,
    sizes: Vec<usize>,
}

impl Classes {
    fn new(labels: &[u32]) -> Self {
        let mut distinct: Vec<u32> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let mut sizes = vec![0usize; distinct.len()];
        let mut index = Vec::with_capacity(labels.len());
        let mut position = Vec::with_capacity(labels.len());
        for &l in labels {
            let c = distinct.binary_search(&l).unwrap();
            index.push(c);
            position.push(sizes[c]);
            sizes[c] += 1;
        }
        Classes {
            index,
            position,
            sizes,
        }
    }

    fn max_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }
}

/// Rank of a transversal subset given as (class, position) pairs with
/// strictly increasing classes: combinatorial number system on the classes,
/// mixed radix on the positions.
fn subset_rank(members: &[(usize, usize)], radix: usize) -> usize {
    let combo: usize = members
        .iter()
        .enumerate()
        .map(|(j, &(c, _))| binomial(c, j + 1))
        .sum();
    members.iter().fold(combo, |acc, &(_, pos)| acc * radix + pos)
}

/// Lexicographic j-subsets of `0..n`.
fn for_each_combination(n: usize, j: usize, mut f: impl FnMut(&[usize])) {
    if j > n {
        return;
    }
    let mut idx: Vec<usize> = (0..j).collect();
    loop {
        f(&idx);
        let Some(pos) = (0..j).rev().find(|&r| idx[r] != r + n - j) else {
            return;
        };
        idx[pos] += 1;
        for r in pos + 1..j {
            idx[r] = idx[r - 1] + 1;
        }
    }
}

/// Number of (subset, block) membership steps the counting needs.
pub fn verification_cost(classes: &[u32], blocks: &[Block], t: usize) -> u128 {
    let cl = Classes::new(classes);
    let per_block: u128 = blocks
        .iter()
        .map(|b| binomial(b.len() as u128, t as u128))
        .sum();
    let subsets = binomial(cl.sizes.len() as u128, t as u128) * (cl.max_size() as u128).pow(t as u32);
    per_block + subsets
}

/// Check the axioms of a t-divisible design on a bare incidence structure.
/// `expected` holds the claimed parameters at strength `t`.
pub fn verify_incidence(
    classes: &[u32],
    blocks: &[Block],
    expected: &DesignParameters,
    t: usize,
    cap: u128,
) -> Result<VerificationReport> {
    if t < 1 {
        return Err(Error::BadStrength { t, min: 1 });
    }
    let cost = verification_cost(classes, blocks, t);
    if cost > cap {
        return Err(Error::CapExceeded { needed: cost, cap });
    }
    let v = classes.len();
    if let Some(bad) = blocks.iter().flat_map(|b| b.points()).find(|&&p| p as usize >= v) {
        return Err(Error::Malformed(format!("block refers to point {bad} of {v}")));
    }
    let cl = Classes::new(classes);
    let mut checks = Vec::new();

    // (1) blocks are transversal of size k
    let transversal = |b: &Block| {
        let mut cs: Vec<usize> = b.points().iter().map(|&p| cl.index[p as usize]).collect();
        cs.sort_unstable();
        cs.windows(2).all(|w| w[0] != w[1])
    };
    let bad_blocks = blocks
        .iter()
        .filter(|b| !transversal(b) || b.len() as u64 != expected.k)
        .count();
    checks.push(Check {
        name: "blocks transversal of size k",
        passed: bad_blocks == 0,
        measured: format!("{bad_blocks} offending blocks"),
        expected: format!("0 offending blocks, k = {}", expected.k),
    });

    // (2) class sizes
    let mut size_set: Vec<usize> = cl.sizes.clone();
    size_set.sort_unstable();
    size_set.dedup();
    checks.push(Check {
        name: "point classes of size s",
        passed: size_set == [expected.s as usize],
        measured: format!("{size_set:?}"),
        expected: format!("[{}]", expected.s),
    });

    // (3) every transversal t-subset in exactly lambda_t blocks
    let radix = cl.max_size().max(1);
    let slots = binomial(cl.sizes.len(), t) * radix.pow(t as u32);
    let mut counts = vec![0u32; slots];
    let mut members = Vec::with_capacity(t);
    for b in blocks.iter().filter(|b| transversal(b)) {
        let mut pts: Vec<(usize, usize)> = b
            .points()
            .iter()
            .map(|&p| (cl.index[p as usize], cl.position[p as usize]))
            .collect();
        pts.sort_unstable();
        for_each_combination(pts.len(), t, |idx| {
            members.clear();
            members.extend(idx.iter().map(|&j| pts[j]));
            counts[subset_rank(&members, radix)] += 1;
        });
    }
    let mut histogram = BTreeMap::new();
    for_each_combination(cl.sizes.len(), t, |cs| {
        let mut digits = vec![0usize; t];
        'odometer: loop {
            let m: Vec<(usize, usize)> = cs.iter().copied().zip(digits.iter().copied()).collect();
            *histogram.entry(counts[subset_rank(&m, radix)] as u64).or_insert(0u64) += 1;
            for r in (0..t).rev() {
                digits[r] += 1;
                if digits[r] < cl.sizes[cs[r]] {
                    continue 'odometer;
                }
                digits[r] = 0;
            }
            break;
        }
    });
    let keys: Vec<u64> = histogram.keys().copied().collect();
    checks.push(Check {
        name: "transversal t-subsets covered lambda_t times",
        passed: keys == [expected.lambda],
        measured: format!("{histogram:?}"),
        expected: format!("every subset in {} blocks", expected.lambda),
    });

    // (4) simple
    let distinct: HashSet<&Block> = blocks.iter().collect();
    checks.push(Check {
        name: "no repeated blocks",
        passed: distinct.len() == blocks.len(),
        measured: format!("{} distinct of {}", distinct.len(), blocks.len()),
        expected: format!("{} distinct", blocks.len()),
    });

    // (5) counts
    checks.push(Check {
        name: "b and v match the record",
        passed: blocks.len() as u64 == expected.b && v as u64 == expected.v,
        measured: format!("b = {}, v = {}", blocks.len(), v),
        expected: format!("b = {}, v = {}", expected.b, expected.v),
    });

    Ok(VerificationReport {
        t,
        checks,
        lambda_histogram: histogram,
    })
}

/// The claimed parameters of `design` reread at strength `t <= design.params.t`.
pub fn expected_at(design: &DivisibleDesign, t: usize) -> Result<DesignParameters> {
    let mut p = design.params;
    if t as u64 > p.t || t == 0 {
        return Err(Error::BadStrength { t, min: 1 });
    }
    while p.t > t as u64 {
        p = derive_lower_t(&p)?;
    }
    Ok(p)
}

pub fn verify_design(design: &DivisibleDesign, t: usize) -> Result<VerificationReport> {
    verify_design_with_cap(design, t, DEFAULT_CAP)
}

pub fn verify_design_with_cap(design: &DivisibleDesign, t: usize, cap: u128) -> Result<VerificationReport> {
    if design.points.iter().enumerate().any(|(j, p)| p.id as usize != j) {
        return Err(Error::Malformed("point ids are not 0..v in order".into()));
    }
    let expected = expected_at(design, t)?;
    verify_incidence(&design.classes(), &design.blocks, &expected, t, cap)
}

/// Number of blocks containing every point of `y`, via per-point block indices.
pub fn count_containing_blocks(design: &DivisibleDesign, y: &[PointId]) -> Result<u64> {
    let v = design.points.len();
    if y.iter().any(|&p| p as usize >= v) {
        return Err(Error::BadPointId(*y.iter().max().unwrap() as u64));
    }
    let mut cs: Vec<u32> = y.iter().map(|&p| design.points[p as usize].class).collect();
    cs.sort_unstable();
    if cs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NotTransversal);
    }
    let mut incidence: Vec<Vec<u32>> = vec![Vec::new(); v];
    for (j, b) in design.blocks.iter().enumerate() {
        for &p in b.points() {
            incidence[p as usize].push(j as u32);
        }
    }
    let Some((&first, rest)) = y.split_first() else {
        return Ok(design.blocks.len() as u64);
    };
    let mut common = incidence[first as usize].clone();
    for &p in rest {
        let other = &incidence[p as usize];
        common.retain(|j| other.binary_search(j).is_ok());
    }
    Ok(common.len() as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub elements_checked: usize,
    pub exhaustive: bool,
    pub automorphism: bool,
    pub point_transitive: bool,
    pub block_transitive: bool,
}

impl TransitivityReport {
    pub fn passed(&self) -> bool {
        self.automorphism && self.point_transitive && self.block_transitive
    }
}

/// Whether `group` acts on `design` by automorphisms, transitively on points
/// and on blocks. The automorphism test visits every element when
/// `|G| * b <= budget`, otherwise an evenly strided subset of `sample` elements.
pub fn verify_group_transitivity<G: RGroup + ?Sized>(
    design: &DivisibleDesign,
    group: &G,
    budget: u128,
    sample: usize,
) -> TransitivityReport {
    let blocks: HashSet<&Block> = design.blocks.iter().collect();
    let order = group.order();
    let exhaustive = order as u128 * design.blocks.len() as u128 <= budget;
    let chosen: Vec<usize> = if exhaustive {
        (0..order).collect()
    } else {
        let step = (order / sample.max(1)).max(1);
        (0..order).step_by(step).collect()
    };
    let automorphism = chosen
        .iter()
        .all(|&g| design.blocks.iter().all(|b| blocks.contains(&b.image(group, g))));

    let v = design.points.len();
    let mut reached = vec![false; v];
    if v > 0 && group.degree() == v {
        for g in 0..order {
            reached[group.image(g, 0) as usize] = true;
        }
    }
    let point_transitive = v > 0 && reached.iter().all(|&r| r);

    let block_transitive = match design.blocks.first() {
        Some(b0) => {
            let orbit: HashSet<Block> = (0..order).map(|g| b0.image(group, g)).collect();
            orbit.len() == blocks.len() && orbit.iter().all(|b| blocks.contains(b))
        }
        None => false,
    };
    TransitivityReport {
        elements_checked: chosen.len(),
        exhaustive,
        automorphism,
        point_transitive,
        block_transitive,
    }
}
