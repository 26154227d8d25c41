//! Combinatorial configurations (axioms C1 and C2) and the residue graph used to search
//! for them.

use serde::Serialize;

use crate::dynkin::DynkinTree;
use crate::mesh::ZtHomTables;
use crate::quiver::StablePoint;

pub(crate) type Bits = [u64; 4];

pub(crate) fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

pub(crate) fn bit_get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

pub(crate) fn bit_or(a: &Bits, b: &Bits) -> Bits {
    [a[0] | b[0], a[1] | b[1], a[2] | b[2], a[3] | b[3]]
}

/// The `L · n` residues `(i, x)`, `0 ≤ i < L`, with the relations induced by k(ZT)
/// between all their τ^L-translates.
#[derive(Clone, Debug)]
pub struct ResidueGraph {
    pub tree: DynkinTree,
    pub l: usize,
    pub count: usize,
    /// `conflicts[a]`: residues `b` with a nonzero morphism between some translates of a and b (a ≠ b as points).
    pub(crate) conflicts: Vec<Bits>,
    pub(crate) self_conflict: Vec<bool>,
    /// `covers[e]`: residues `x` with `k(x, e) ≠ 0` for some translates.
    pub(crate) covers: Vec<Bits>,
    pub(crate) coverers: Vec<Vec<usize>>,
}

impl ResidueGraph {
    pub fn new(t: &DynkinTree) -> Self {
        let tables = ZtHomTables::new(t);
        let n = t.rank();
        let l = t.loewy_number();
        let count = l * n;
        assert!(count <= 256, "residue bitsets hold at most 256 entries");
        let point = |r: usize| StablePoint::new((r / n) as i64, r % n + 1);
        // does some translate of b receive a nonzero map from a (other than the identity)?
        let reaches = |a: usize, b: usize| -> bool {
            let (pa, pb) = (point(a), point(b));
            let li = l as i64;
            let kmin = (pa.slice - pb.slice).div_euclid(li) - 1;
            let kmax = (pa.slice + tables.span() - pb.slice).div_euclid(li) + 1;
            (kmin..=kmax).any(|k| {
                let q = StablePoint::new(pb.slice + k * li, pb.vertex);
                q != pa && tables.dim(pa, q) != 0
            })
        };
        let mut conflicts = vec![[0u64; 4]; count];
        let mut self_conflict = vec![false; count];
        let mut covers = vec![[0u64; 4]; count];
        let mut coverers = vec![Vec::new(); count];
        for a in 0..count {
            self_conflict[a] = reaches(a, a);
            for b in 0..count {
                if a != b && (reaches(a, b) || reaches(b, a)) {
                    bit_set(&mut conflicts[a], b);
                }
            }
        }
        for e in 0..count {
            for x in 0..count {
                if x == e || reaches(x, e) {
                    bit_set(&mut covers[e], x);
                    coverers[x].push(e);
                }
            }
        }
        ResidueGraph { tree: t.clone(), l, count, conflicts, self_conflict, covers, coverers }
    }

    pub fn index(&self, slice: i64, vertex: usize) -> usize {
        slice.rem_euclid(self.l as i64) as usize * self.tree.rank() + vertex - 1
    }

    pub fn residue(&self, r: usize) -> (i64, usize) {
        let n = self.tree.rank();
        ((r / n) as i64, r % n + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    C1,
    C2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub ok: bool,
    pub violated: Option<Axiom>,
}

/// C2 (no nonzero morphism between distinct points of E) is checked first, then C1
/// (every point maps nontrivially into E).
pub fn check_combinatorial_configuration(t: &DynkinTree, residues: &[(i64, usize)]) -> CheckReport {
    let g = ResidueGraph::new(t);
    check_with_graph(&g, residues)
}

pub(crate) fn check_with_graph(g: &ResidueGraph, residues: &[(i64, usize)]) -> CheckReport {
    let idx: Vec<usize> = residues.iter().map(|&(i, x)| g.index(i, x)).collect();
    let c2 = idx.iter().all(|&a| !g.self_conflict[a] && idx.iter().all(|&b| a == b || !bit_get(&g.conflicts[a], b)));
    if !c2 {
        return CheckReport { ok: false, violated: Some(Axiom::C2) };
    }
    let covered = idx.iter().fold([0u64; 4], |acc, &e| bit_or(&acc, &g.covers[e]));
    if (0..g.count).any(|x| !bit_get(&covered, x)) {
        return CheckReport { ok: false, violated: Some(Axiom::C1) };
    }
    CheckReport { ok: true, violated: None }
}
