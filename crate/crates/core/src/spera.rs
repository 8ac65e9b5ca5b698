//! Divisible designs as orbits of a base block under a t-R-transitive group.
//!
//! The engine only sees point ids, a class labelling and an indexed group
//! action, so it runs equally on the Laguerre geometry and on toy
//! permutation groups.

use std::collections::HashSet;

use num_integer::binomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::line::PointId;

/// A finite group acting on `0..degree()` and preserving the classes.
pub trait RGroup: Sync {
    fn degree(&self) -> usize;
    fn class_of(&self, point: PointId) -> u32;
    fn order(&self) -> usize;
    /// Image of `point` under the element with index `element`.
    fn image(&self, element: usize, point: PointId) -> PointId;
}

/// A set of points, stored sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Block(Vec<PointId>);

impl Block {
    pub fn new(mut points: Vec<PointId>) -> Self {
        points.sort_unstable();
        points.dedup();
        Block(points)
    }

    pub fn points(&self) -> &[PointId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    /// Image under a group element, re-sorted.
    pub fn image<G: RGroup + ?Sized>(&self, group: &G, element: usize) -> Block {
        Block::new(self.0.iter().map(|&p| group.image(element, p)).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParameters {
    pub t: u64,
    pub s: u64,
    pub k: u64,
    pub lambda: u64,
    pub v: u64,
    pub b: u64,
    pub group_order: u64,
    pub stabilizer_order: u64,
}

pub fn is_transversal<G: RGroup + ?Sized>(group: &G, block: &Block) -> bool {
    let mut classes: Vec<u32> = block.points().iter().map(|&p| group.class_of(p)).collect();
    classes.sort_unstable();
    classes.windows(2).all(|w| w[0] != w[1])
}

/// Common class size of the group's point set.
pub fn class_size<G: RGroup + ?Sized>(group: &G) -> Result<u64> {
    let mut counts = std::collections::BTreeMap::new();
    for p in 0..group.degree() as PointId {
        *counts.entry(group.class_of(p)).or_insert(0u64) += 1;
    }
    let mut sizes = counts.values().copied();
    let s = sizes.next().ok_or(Error::UnequalClasses)?;
    if sizes.all(|x| x == s) {
        Ok(s)
    } else {
        Err(Error::UnequalClasses)
    }
}

fn check_base<G: RGroup + ?Sized>(group: &G, base: &Block, t: usize) -> Result<()> {
    let v = group.degree();
    if base.len() < t.max(1) || base.len() >= v {
        return Err(Error::BlockSize { k: base.len(), t, v });
    }
    if base.points().iter().any(|&p| p as usize >= v) {
        return Err(Error::BadPointId(*base.points().last().unwrap() as u64));
    }
    if !is_transversal(group, base) {
        return Err(Error::NotTransversal);
    }
    Ok(())
}

/// `B^G`, sorted lexicographically.
pub fn orbit_of_block<G: RGroup + ?Sized>(group: &G, base: &Block) -> Result<Vec<Block>> {
    check_base(group, base, 1)?;
    let set = (0..group.order())
        .into_par_iter()
        .fold(HashSet::new, |mut acc, g| {
            acc.insert(base.image(group, g));
            acc
        })
        .reduce(HashSet::new, |mut a, mut b| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            a.extend(b);
            a
        });
    let mut orbit: Vec<Block> = set.into_iter().collect();
    orbit.par_sort_unstable();
    Ok(orbit)
}

/// `|G| / |B^G|`.
pub fn stabilizer_order<G: RGroup + ?Sized>(group: &G, base: &Block) -> Result<u64> {
    let orbit = orbit_of_block(group, base)?;
    Ok(group.order() as u64 / orbit.len() as u64)
}

/// Number of elements fixing `base` setwise, counted directly.
pub fn stabilizer_order_direct<G: RGroup + ?Sized>(group: &G, base: &Block) -> u64 {
    (0..group.order())
        .into_par_iter()
        .filter(|&g| base.image(group, g) == *base)
        .count() as u64
}

fn exact_div(what: &'static str, num: u128, den: u128) -> Result<u64> {
    if den == 0 || num % den != 0 {
        return Err(Error::NonIntegral { what, num, den });
    }
    Ok((num / den) as u64)
}

/// `b = |G| / |G_B|` and `lambda_t = |G| C(k,t) / (|G_B| C(v/s,t) s^t)`.
pub fn design_parameters(
    v: u64,
    s: u64,
    k: u64,
    t: u64,
    group_order: u64,
    stabilizer_order: u64,
) -> Result<DesignParameters> {
    if t < 1 {
        return Err(Error::BadStrength { t: t as usize, min: 1 });
    }
    if t > k || k >= v {
        return Err(Error::BlockSize {
            k: k as usize,
            t: t as usize,
            v: v as usize,
        });
    }
    let classes = exact_div("v/s", v as u128, s as u128)?;
    let b = exact_div("b", group_order as u128, stabilizer_order as u128)?;
    let num = group_order as u128 * binomial(k as u128, t as u128);
    let den = stabilizer_order as u128 * binomial(classes as u128, t as u128) * (s as u128).pow(t as u32);
    let lambda = exact_div("lambda_t", num, den)?;
    Ok(DesignParameters {
        t,
        s,
        k,
        v,
        lambda,
        b,
        group_order,
        stabilizer_order,
    })
}

/// The same design read at strength `t - 1`:
/// `lambda_{t-1} = lambda_t (v - s t + s) / (k - t + 1)`.
pub fn derive_lower_t(params: &DesignParameters) -> Result<DesignParameters> {
    let p = params;
    if p.t < 2 {
        return Err(Error::BadStrength { t: p.t as usize, min: 2 });
    }
    let factor = (p.v + p.s)
        .checked_sub(p.s * p.t)
        .ok_or(Error::NonIntegral {
            what: "lambda_{t-1}",
            num: 0,
            den: 1,
        })?;
    let lambda = exact_div(
        "lambda_{t-1}",
        p.lambda as u128 * factor as u128,
        (p.k + 1 - p.t) as u128,
    )?;
    Ok(DesignParameters {
        t: p.t - 1,
        lambda,
        ..*p
    })
}

/// Blocks and parameters produced from one base block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SperaDesign {
    pub blocks: Vec<Block>,
    pub params: DesignParameters,
}

/// Orbit of `base` plus its parameters at strength `t`.
pub fn spera_design<G: RGroup + ?Sized>(group: &G, base: &Block, t: usize) -> Result<SperaDesign> {
    check_base(group, base, t)?;
    let blocks = orbit_of_block(group, base)?;
    let s = class_size(group)?;
    let stab = group.order() as u64 / blocks.len() as u64;
    let params = design_parameters(
        group.degree() as u64,
        s,
        base.len() as u64,
        t as u64,
        group.order() as u64,
        stab,
    )?;
    Ok(SperaDesign { blocks, params })
}

/// A group given by explicit permutations of `0..n` together with a class labelling.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    pub classes: Vec<u32>,
    pub perms: Vec<Vec<PointId>>,
}

impl PermutationGroup {
    /// The full symmetric group on `n` points with trivial classes.
    pub fn symmetric(n: usize) -> Self {
        let mut perms = Vec::new();
        let mut cur: Vec<PointId> = (0..n as PointId).collect();
        permutations(&mut cur, 0, &mut perms);
        perms.sort();
        PermutationGroup {
            classes: (0..n as u32).collect(),
            perms,
        }
    }
}

fn permutations(cur: &mut Vec<PointId>, k: usize, out: &mut Vec<Vec<PointId>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for j in k..cur.len() {
        cur.swap(k, j);
        permutations(cur, k + 1, out);
        cur.swap(k, j);
    }
}

impl RGroup for PermutationGroup {
    fn degree(&self) -> usize {
        self.classes.len()
    }

    fn class_of(&self, point: PointId) -> u32 {
        self.classes[point as usize]
    }

    fn order(&self) -> usize {
        self.perms.len()
    }

    fn image(&self, element: usize, point: PointId) -> PointId {
        self.perms[element][point as usize]
    }
}
