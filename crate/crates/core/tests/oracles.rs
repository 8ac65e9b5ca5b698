//! Brute-force oracles for the group and the fields, independent of the
//! triple-solving enumeration.

use std::collections::HashSet;

use laguerre_dd::field::Field;
use laguerre_dd::line::LaguerreLine;
use laguerre_dd::{ProjectiveGroup, Projectivity};

fn group(q: u32) -> ProjectiveGroup {
    ProjectiveGroup::new(LaguerreLine::new(Field::of_order(q).unwrap()))
}

#[test]
fn matrix_scan_matches_enumeration() {
    for q in [2, 3, 4] {
        let g = group(q);
        let fast: HashSet<Projectivity> = g.enumerate().into_iter().collect();
        let slow: HashSet<Projectivity> = g.enumerate_by_matrices().into_iter().collect();
        assert_eq!(fast, slow, "q = {q}");
        assert_eq!(fast.len() as u64, (q as u64).pow(4) * (q as u64 * q as u64 - 1));
    }
}

#[test]
fn sharply_three_transitive_by_search_q3() {
    let g = group(3);
    let els = g.enumerate_by_matrices();
    let triples = g.transversal_triples();
    let src = triples[0];
    for &dst in &triples {
        let hits = els
            .iter()
            .filter(|x| src.map(|p| g.apply_id(x, p)) == dst)
            .count();
        assert_eq!(hits, 1, "{src:?} -> {dst:?}");
    }
    // a second source, far from the first
    let src = *triples.last().unwrap();
    let images: HashSet<[u32; 3]> = els.iter().map(|x| src.map(|p| g.apply_id(x, p))).collect();
    assert_eq!(images.len(), triples.len());
}

#[test]
fn map_triple_matches_search() {
    let g = group(3);
    let l = g.line();
    let els = g.enumerate_by_matrices();
    let triples = g.transversal_triples();
    for (a, b) in [(0, 5), (17, 400), (647, 3)] {
        let (src, dst) = (triples[a], triples[b]);
        let solved = g
            .map_triple(src.map(|p| l.point(p).unwrap()), dst.map(|p| l.point(p).unwrap()))
            .unwrap();
        let searched = els.iter().find(|x| src.map(|p| g.apply_id(x, p)) == dst).unwrap();
        assert_eq!(&solved, searched);
    }
}

#[test]
fn gf16_subfield_of_order_four() {
    let f = Field::new(2, 4).unwrap();
    let sub = f.subfield_elements(2).unwrap();
    let brute: Vec<_> = f.elements().filter(|&x| f.pow(x, 4) == x).collect();
    assert_eq!(sub, brute);
    assert_eq!(sub.len(), 4);
    let prime_sub = f.subfield_elements(1).unwrap();
    assert_eq!(prime_sub, vec![f.zero(), f.one()]);
}

#[test]
fn inverse_tables_match_search() {
    for q in [7, 8, 9, 25] {
        let f = Field::of_order(q).unwrap();
        for a in f.elements().skip(1) {
            let searched = f.elements().find(|&b| f.mul(a, b) == f.one()).unwrap();
            assert_eq!(f.inv(a).unwrap(), searched);
        }
    }
}
