//! Exhaustive ground truth for small graphs of any class.
//!
//! Vertex sets are `u64` bitmasks over insertion order. Nothing here is
//! clever on purpose: every fast path in the crate is checked against it.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_LIMIT: usize = 20;
pub const DEFAULT_SAMPLE: usize = 64;
/// Bitmask width; no limit can exceed it.
pub const HARD_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub alpha: usize,
    pub mu: usize,
    /// Number of maximum independent sets.
    pub num_mis: u64,
    /// Intersection of all maximum independent sets, not just the sampled ones.
    pub core: BTreeSet<String>,
    /// The first maximum independent sets found, at most the sample size.
    pub omega_sample: Vec<BTreeSet<String>>,
}

struct Masks {
    nbr: Vec<u64>,
}

impl Masks {
    fn new(g: &Graph) -> Self {
        let nbr = (0..g.order())
            .map(|v| g.adj(v).iter().fold(0u64, |acc, &w| acc | 1 << w))
            .collect();
        Masks { nbr }
    }

    fn closed(&self, v: usize) -> u64 {
        self.nbr[v] | (1 << v)
    }

    fn max_independent(&self, cand: u64, size: usize, best: &mut usize) {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        if cand == 0 {
            *best = size;
            return;
        }
        let v = cand.trailing_zeros() as usize;
        self.max_independent(cand & !self.closed(v), size + 1, best);
        self.max_independent(cand & !(1 << v), size, best);
    }

    fn enumerate(&self, cand: u64, set: u64, size: usize, alpha: usize, visit: &mut impl FnMut(u64)) {
        if size + (cand.count_ones() as usize) < alpha {
            return;
        }
        if cand == 0 {
            visit(set);
            return;
        }
        let v = cand.trailing_zeros() as usize;
        self.enumerate(cand & !self.closed(v), set | (1 << v), size + 1, alpha, visit);
        self.enumerate(cand & !(1 << v), set, size, alpha, visit);
    }

    fn max_matching(&self, undecided: u64, size: usize, best: &mut usize) {
        if size + (undecided.count_ones() as usize) / 2 <= *best {
            return;
        }
        if undecided == 0 {
            *best = (*best).max(size);
            return;
        }
        let v = undecided.trailing_zeros() as usize;
        let rest = undecided & !(1 << v);
        let mut partners = self.nbr[v] & rest;
        while partners != 0 {
            let w = partners.trailing_zeros() as usize;
            partners &= partners - 1;
            self.max_matching(rest & !(1 << w), size + 1, best);
        }
        self.max_matching(rest, size, best);
    }
}

fn labels_of(g: &Graph, mask: u64) -> BTreeSet<String> {
    g.label_set((0..g.order()).filter(|&v| mask >> v & 1 == 1))
}

pub fn oracle_analyze(g: &Graph, limit: usize) -> Result<OracleReport> {
    oracle_analyze_with_sample(g, limit, DEFAULT_SAMPLE)
}

pub fn oracle_analyze_with_sample(g: &Graph, limit: usize, sample: usize) -> Result<OracleReport> {
    let n = g.order();
    let limit = limit.min(HARD_LIMIT);
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let masks = Masks::new(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    let mut alpha = 0;
    masks.max_independent(all, 0, &mut alpha);

    let mut num_mis = 0u64;
    let mut core = all;
    let mut sampled = Vec::new();
    masks.enumerate(all, 0, 0, alpha, &mut |set| {
        num_mis += 1;
        core &= set;
        if sampled.len() < sample {
            sampled.push(set);
        }
    });

    let mut mu = 0;
    masks.max_matching(all, 0, &mut mu);

    Ok(OracleReport {
        alpha,
        mu,
        num_mis,
        core: labels_of(g, core),
        omega_sample: sampled.into_iter().map(|s| labels_of(g, s)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::fixture;
    use crate::graph::parse_graph;

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fig1() {
        let r = oracle_analyze(&fixture("fig1_G").unwrap(), DEFAULT_LIMIT).unwrap();
        assert_eq!((r.alpha, r.mu), (4, 3));
        assert_eq!(r.core, set(&["a", "b", "c"]));
    }

    #[test]
    fn fig2() {
        let r = oracle_analyze(&fixture("fig2_G").unwrap(), DEFAULT_LIMIT).unwrap();
        assert_eq!((r.alpha, r.mu), (5, 4));
        assert_eq!(r.core, set(&["a", "b"]));
    }

    #[test]
    fn six_cycle_has_two_classes() {
        let g = parse_graph("1 2\n2 3\n3 4\n4 5\n5 6\n6 1").unwrap();
        let r = oracle_analyze(&g, DEFAULT_LIMIT).unwrap();
        assert_eq!((r.alpha, r.mu, r.num_mis), (3, 3, 2));
        assert!(r.core.is_empty());
        assert_eq!(r.omega_sample, vec![set(&["1", "3", "5"]), set(&["2", "4", "6"])]);
    }

    #[test]
    fn class_agnostic() {
        let k4 = parse_graph("a b\na c\na d\nb c\nb d\nc d").unwrap();
        let r = oracle_analyze(&k4, DEFAULT_LIMIT).unwrap();
        assert_eq!((r.alpha, r.mu, r.num_mis), (1, 2, 4));
        assert!(r.core.is_empty());
    }

    #[test]
    fn sample_is_bounded_but_core_is_exact() {
        // Eight disjoint edges: 2^8 maximum independent sets, empty core.
        let text: String = (0..8).map(|i| format!("a{i} b{i}\n")).collect();
        let g = parse_graph(&text).unwrap();
        let r = oracle_analyze_with_sample(&g, DEFAULT_LIMIT, 5).unwrap();
        assert_eq!(r.num_mis, 256);
        assert_eq!(r.omega_sample.len(), 5);
        assert!(r.core.is_empty());
        for s in &r.omega_sample {
            assert_eq!(s.len(), r.alpha);
        }
    }

    #[test]
    fn unique_mis_means_full_core() {
        let g = parse_graph("v").unwrap();
        let r = oracle_analyze(&g, DEFAULT_LIMIT).unwrap();
        assert_eq!((r.alpha, r.mu, r.num_mis), (1, 0, 1));
        assert_eq!(r.core, set(&["v"]));
    }

    #[test]
    fn size_limit() {
        let text: String = (0..21).map(|i| format!("v{i}\n")).collect();
        let g = parse_graph(&text).unwrap();
        assert_eq!(oracle_analyze(&g, DEFAULT_LIMIT), Err(Error::TooLarge { n: 21, limit: 20 }));
        assert!(oracle_analyze(&g, 21).is_ok());
    }
}
