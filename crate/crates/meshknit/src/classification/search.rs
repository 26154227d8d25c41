//! Exhaustive search for residue sets of size `n` satisfying C1 and C2.
//!
//! Branching is on the coverers of the first uncovered residue; a branch excludes the
//! coverers tried before it, so every solution is reached along exactly one path. Once
//! everything is covered, the remaining slots are filled from the still-allowed residues.

use super::check::{bit_get, bit_or, bit_set, Bits, ResidueGraph};
use crate::config::Configuration;
use crate::exec::{self, Exec};

struct Search<'g> {
    g: &'g ResidueGraph,
    n: usize,
}

impl Search<'_> {
    fn first_uncovered(&self, covered: &Bits) -> Option<usize> {
        (0..self.g.count).find(|&x| !bit_get(covered, x))
    }

    fn branches(&self, chosen: &[usize], covered: &Bits, blocked: &Bits) -> Vec<(Vec<usize>, Bits, Bits)> {
        let Some(x) = self.first_uncovered(covered) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut blocked = *blocked;
        for &e in &self.g.coverers[x] {
            if bit_get(&blocked, e) || self.g.self_conflict[e] {
                continue;
            }
            let mut next = chosen.to_vec();
            next.push(e);
            let mut nb = bit_or(&blocked, &self.g.conflicts[e]);
            bit_set(&mut nb, e);
            out.push((next, bit_or(covered, &self.g.covers[e]), nb));
            bit_set(&mut blocked, e);
        }
        out
    }

    fn run(&self, chosen: Vec<usize>, covered: Bits, blocked: Bits, out: &mut Vec<Vec<usize>>) {
        if chosen.len() > self.n {
            return;
        }
        if self.first_uncovered(&covered).is_none() {
            self.extend(chosen, blocked, 0, out);
            return;
        }
        if chosen.len() == self.n {
            return;
        }
        for (c, cov, b) in self.branches(&chosen, &covered, &blocked) {
            self.run(c, cov, b, out);
        }
    }

    fn extend(&self, chosen: Vec<usize>, blocked: Bits, from: usize, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == self.n {
            out.push(chosen);
            return;
        }
        for e in from..self.g.count {
            if bit_get(&blocked, e) || self.g.self_conflict[e] {
                continue;
            }
            let mut next = chosen.clone();
            next.push(e);
            let mut nb = bit_or(&blocked, &self.g.conflicts[e]);
            bit_set(&mut nb, e);
            self.extend(next, nb, e + 1, out);
        }
    }
}

/// All configurations found by exhaustive search, sorted.
pub fn bruteforce_configurations(g: &ResidueGraph, exec_mode: Exec) -> Vec<Configuration> {
    let s = Search { g, n: g.tree.rank() };
    let top = s.branches(&[], &[0; 4], &[0; 4]);
    let parts = exec::map(exec_mode, top, |(c, cov, b)| {
        let mut out = Vec::new();
        s.run(c, cov, b, &mut out);
        out
    });
    let mut configs: Vec<Configuration> = parts
        .into_iter()
        .flatten()
        .map(|set| Configuration::new(&g.tree, set.into_iter().map(|r| g.residue(r))).expect("valid residues"))
        .collect();
    configs.sort();
    configs.dedup();
    configs
}
