//! Configurations from pattern vectors.
//!
//! Type A: the vectors `d(L)` of the pedigrees with `n` nodes on the equioriented section.
//! Types D and E: every configuration has, up to a τ-shift, a point `τ(0, t)` for some
//! vertex `t`. On the section `S_t` with unique sink `t` this means
//! `d(t) = 1 + Σ d(x_i)` over the neighbours `x_i`, while on each branch of `T \ {t}`
//! the vector is a pattern vector of the branch type. Branch vectors come recursively
//! from the configurations of the branch types.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::pedigree::{enumerate_pedigrees, pedigree_dimension_vector};
use crate::config::Configuration;
use crate::dynkin::{make_tree, DynkinTree, Family};
use crate::exec::{self, Exec};
use crate::knitting::{dims_on_section, knit_and_knot};
use crate::quiver::Section;

/// The canonical type of a subtree of T together with an isomorphism onto it.
pub(crate) fn canonical_subtree(t: &DynkinTree, vertices: &[usize]) -> (DynkinTree, BTreeMap<usize, usize>) {
    let inside = |x: usize| vertices.contains(&x);
    let deg = |x: usize| t.neighbors(x).iter().filter(|&&y| inside(y)).count();
    let k = vertices.len();
    let canon = match vertices.iter().find(|&&x| deg(x) == 3) {
        None => make_tree(Family::A, k),
        Some(&b) => {
            let mut arms: Vec<usize> = t
                .neighbors(b)
                .iter()
                .filter(|&&y| inside(y))
                .map(|&y| {
                    let (mut prev, mut cur, mut len) = (b, y, 1);
                    while let Some(&nx) = t.neighbors(cur).iter().find(|&&z| z != prev && inside(z)) {
                        prev = cur;
                        cur = nx;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            if arms[1] == 1 {
                make_tree(Family::D, k)
            } else {
                make_tree(Family::E, k)
            }
        }
    }
    .expect("subtrees of Dynkin trees are Dynkin");
    let map = find_isomorphism(t, vertices, &canon).expect("isomorphic by type");
    (canon, map)
}

fn find_isomorphism(t: &DynkinTree, vertices: &[usize], canon: &DynkinTree) -> Option<BTreeMap<usize, usize>> {
    // BFS order so each vertex after the first has an already-placed neighbour
    let mut order = vec![vertices[0]];
    let mut i = 0;
    while i < order.len() {
        for &y in t.neighbors(order[i]) {
            if vertices.contains(&y) && !order.contains(&y) {
                order.push(y);
            }
        }
        i += 1;
    }
    fn go(
        t: &DynkinTree,
        canon: &DynkinTree,
        order: &[usize],
        k: usize,
        map: &mut BTreeMap<usize, usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for c in canon.vertices() {
            if used[c - 1] {
                continue;
            }
            let ok = t.neighbors(x).iter().all(|y| match map.get(y) {
                Some(&cy) => canon.has_edge(c, cy),
                None => true,
            }) && map.iter().all(|(&y, &cy)| t.has_edge(x, y) == canon.has_edge(c, cy));
            if ok {
                map.insert(x, c);
                used[c - 1] = true;
                if go(t, canon, order, k + 1, map, used) {
                    return true;
                }
                map.remove(&x);
                used[c - 1] = false;
            }
        }
        false
    }
    let mut map = BTreeMap::new();
    let mut used = vec![false; canon.rank()];
    go(t, canon, &order, 0, &mut map, &mut used).then_some(map)
}

fn components_without(t: &DynkinTree, removed: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; t.rank()];
    seen[removed - 1] = true;
    let mut out = Vec::new();
    for &start in t.neighbors(removed) {
        let mut comp = vec![start];
        seen[start - 1] = true;
        let mut i = 0;
        while i < comp.len() {
            for &y in t.neighbors(comp[i]) {
                if !seen[y - 1] {
                    seen[y - 1] = true;
                    comp.push(y);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Memoized configuration lists per tree type.
#[derive(Default)]
pub(crate) struct PatternEnumerator {
    memo: HashMap<DynkinTree, Vec<Configuration>>,
}

impl PatternEnumerator {
    pub(crate) fn configurations(&mut self, t: &DynkinTree, exec_mode: Exec) -> Vec<Configuration> {
        if let Some(c) = self.memo.get(t) {
            return c.clone();
        }
        let result = match t.family() {
            Family::A => type_a(t, exec_mode),
            _ => self.branching(t, exec_mode),
        };
        self.memo.insert(t.clone(), result.clone());
        result
    }

    fn branching(&mut self, t: &DynkinTree, exec_mode: Exec) -> Vec<Configuration> {
        let mut jobs: Vec<(Section, Vec<i64>)> = Vec::new();
        for root in t.vertices() {
            let sec = Section::towards(t, root);
            let mut parts: Vec<(usize, Vec<BTreeMap<usize, i64>>)> = Vec::new();
            for comp in components_without(t, root) {
                let (canon, map) = canonical_subtree(t, &comp);
                let anchor = comp[0];
                let csec = Section::from_orientation(&canon, map[&anchor], |lo, hi| {
                    let inv = |c: usize| *map.iter().find(|(_, &v)| v == c).unwrap().0;
                    sec.has_arrow(inv(lo), inv(hi))
                });
                let vectors: BTreeSet<Vec<i64>> = self
                    .configurations(&canon, exec_mode)
                    .iter()
                    .map(|c| dims_on_section(c, &csec).values)
                    .collect();
                let neighbour = *comp.iter().find(|&&x| t.has_edge(x, root)).unwrap();
                let mapped = vectors
                    .into_iter()
                    .map(|v| comp.iter().map(|&x| (x, v[map[&x] - 1])).collect::<BTreeMap<usize, i64>>())
                    .collect();
                parts.push((neighbour, mapped));
            }
            let mut partial: Vec<Vec<i64>> = vec![vec![0; t.rank()]];
            for (_, options) in &parts {
                let mut next = Vec::with_capacity(partial.len() * options.len());
                for base in &partial {
                    for opt in options {
                        let mut d = base.clone();
                        for (&x, &v) in opt {
                            d[x - 1] = v;
                        }
                        next.push(d);
                    }
                }
                partial = next;
            }
            for mut d in partial {
                d[root - 1] = 1 + parts.iter().map(|(nb, _)| d[nb - 1]).sum::<i64>();
                jobs.push((sec.clone(), d));
            }
        }
        let l = t.loewy_number() as i64;
        let found = exec::map(exec_mode, jobs, |(sec, d)| knit_and_knot(t, &sec, &d).ok());
        let mut all: BTreeSet<Configuration> = BTreeSet::new();
        for c in found.into_iter().flatten() {
            for k in 0..l {
                all.insert(c.shifted(k));
            }
        }
        all.into_iter().collect()
    }
}

fn type_a(t: &DynkinTree, exec_mode: Exec) -> Vec<Configuration> {
    let s = Section::equioriented(t);
    let vectors: Vec<Vec<i64>> = enumerate_pedigrees(t.rank()).iter().map(pedigree_dimension_vector).collect();
    let mut out: Vec<Configuration> = exec::map(exec_mode, vectors, |d| knit_and_knot(t, &s, &d).expect("pedigree vectors are pattern vectors"));
    out.sort();
    out.dedup();
    out
}

pub fn pattern_configurations(t: &DynkinTree, exec_mode: Exec) -> Vec<Configuration> {
    PatternEnumerator::default().configurations(t, exec_mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subtree_types() {
        let e6: DynkinTree = "E6".parse().unwrap();
        let (c, m) = canonical_subtree(&e6, &[2, 3, 4, 5, 6]);
        assert_eq!(c.name(), "D5");
        for (&a, &b) in &m {
            for (&x, &y) in &m {
                assert_eq!(e6.has_edge(a, x), c.has_edge(b, y));
            }
        }
        let (c, _) = canonical_subtree(&e6, &[4, 5]);
        assert_eq!(c.name(), "A2");
        let e8: DynkinTree = "E8".parse().unwrap();
        assert_eq!(canonical_subtree(&e8, &[1, 2, 3, 4, 5, 6, 8]).0.name(), "E7");
        assert_eq!(canonical_subtree(&e8, &[2, 3, 4, 5, 6, 7, 8]).0.name(), "D7");
    }
}
