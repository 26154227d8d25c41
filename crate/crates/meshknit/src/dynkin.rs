//! Canonical Dynkin trees A_n, D_n, E_6, E_7, E_8 and their graph automorphisms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// A Dynkin tree with vertices `1..=rank`. Edges are stored as `(lo, hi)` with `lo < hi`;
/// this orientation fixes the arrow pattern of ZT.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TreeSpec", into = "TreeSpec")]
pub struct DynkinTree {
    family: Family,
    rank: usize,
    edges: Vec<(usize, usize)>,
    // neighbors[x-1], sorted
    neighbors: Vec<Vec<usize>>,
    // p(x): p(1) = 0 and p(hi) = p(lo) + 1 along every edge
    depth: Vec<i64>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
struct TreeSpec {
    family: Family,
    rank: usize,
}

impl TryFrom<TreeSpec> for DynkinTree {
    type Error = Error;
    fn try_from(s: TreeSpec) -> Result<Self> {
        make_tree(s.family, s.rank)
    }
}

impl From<DynkinTree> for TreeSpec {
    fn from(t: DynkinTree) -> Self {
        TreeSpec { family: t.family, rank: t.rank }
    }
}

pub fn make_tree(family: Family, rank: usize) -> Result<DynkinTree> {
    let valid = match family {
        Family::A => rank >= 1,
        Family::D => rank >= 4,
        Family::E => (6..=8).contains(&rank),
    };
    if !valid {
        return Err(Error::InvalidType(format!("{family:?}{rank}")));
    }
    let mut edges = Vec::with_capacity(rank.saturating_sub(1));
    match family {
        Family::A => edges.extend((1..rank).map(|i| (i, i + 1))),
        Family::D => {
            edges.extend((1..rank - 1).map(|i| (i, i + 1)));
            edges.push((rank - 2, rank));
        }
        Family::E => {
            edges.extend((1..rank - 1).map(|i| (i, i + 1)));
            edges.push((3, rank));
        }
    }
    edges.sort_unstable();
    Ok(DynkinTree::from_edges(family, rank, edges))
}

impl DynkinTree {
    fn from_edges(family: Family, rank: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut neighbors = vec![Vec::new(); rank];
        for &(a, b) in &edges {
            neighbors[a - 1].push(b);
            neighbors[b - 1].push(a);
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }
        let mut depth = vec![i64::MIN; rank];
        depth[0] = 0;
        let mut stack = vec![1usize];
        while let Some(x) = stack.pop() {
            for &y in &neighbors[x - 1] {
                if depth[y - 1] == i64::MIN {
                    depth[y - 1] = if y > x { depth[x - 1] + 1 } else { depth[x - 1] - 1 };
                    stack.push(y);
                }
            }
        }
        DynkinTree { family, rank, edges, neighbors, depth }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.neighbors[x - 1]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.neighbors[x - 1].binary_search(&y).is_ok()
    }

    /// Height offset of vertex `x` inside a slice: the point `(i, x)` of ZT sits at height `2i + p(x)`.
    pub fn depth(&self, x: usize) -> i64 {
        self.depth[x - 1]
    }

    /// The branch vertex for D and E, `None` for A.
    pub fn branch_vertex(&self) -> Option<usize> {
        match self.family {
            Family::A => None,
            Family::D => Some(self.rank - 2),
            Family::E => Some(3),
        }
    }

    pub fn name(&self) -> String {
        format!("{:?}{}", self.family, self.rank)
    }

    pub fn loewy_number(&self) -> usize {
        loewy_number(self)
    }

    pub fn automorphisms(&self) -> AutGroup {
        tree_automorphisms(self)
    }
}

impl fmt::Display for DynkinTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(s.to_string()))?;
        make_tree(family, rank)
    }
}

/// L(T) = Coxeter number minus one.
pub fn loewy_number(t: &DynkinTree) -> usize {
    match (t.family, t.rank) {
        (Family::A, n) => n,
        (Family::D, n) => 2 * n - 3,
        (Family::E, 6) => 11,
        (Family::E, 7) => 17,
        (Family::E, 8) => 29,
        _ => unreachable!("validated at construction"),
    }
}

/// A graph automorphism of T, stored as the image list of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeAutomorphism {
    perm: Vec<usize>,
    order: usize,
}

impl TreeAutomorphism {
    pub fn identity(n: usize) -> Self {
        TreeAutomorphism { perm: (1..=n).collect(), order: 1 }
    }

    pub fn from_images(perm: Vec<usize>) -> Self {
        let mut a = TreeAutomorphism { perm, order: 1 };
        a.order = a.compute_order();
        a
    }

    fn compute_order(&self) -> usize {
        let id: Vec<usize> = (1..=self.perm.len()).collect();
        let mut cur = self.perm.clone();
        let mut k = 1;
        while cur != id {
            cur = cur.iter().map(|&x| self.perm[x - 1]).collect();
            k += 1;
        }
        k
    }

    pub fn apply(&self, x: usize) -> usize {
        self.perm[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.perm
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &TreeAutomorphism) -> TreeAutomorphism {
        TreeAutomorphism::from_images(other.perm.iter().map(|&x| self.perm[x - 1]).collect())
    }

    pub fn inverse(&self) -> TreeAutomorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &y) in self.perm.iter().enumerate() {
            inv[y - 1] = i + 1;
        }
        TreeAutomorphism { perm: inv, order: self.order }
    }

    pub fn pow(&self, k: usize) -> TreeAutomorphism {
        let mut acc = TreeAutomorphism::identity(self.perm.len());
        for _ in 0..k % self.order {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn preserves_edges(&self, t: &DynkinTree) -> bool {
        t.edges().iter().all(|&(a, b)| t.has_edge(self.apply(a), self.apply(b)))
    }

    /// Parity change `p(gx) - p(x) mod 2`; constant over x for a tree automorphism.
    pub fn parity_shift(&self, t: &DynkinTree) -> i64 {
        (t.depth(self.apply(1)) - t.depth(1)).rem_euclid(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroup {
    pub generators: Vec<TreeAutomorphism>,
    pub elements: Vec<TreeAutomorphism>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub fn tree_automorphisms(t: &DynkinTree) -> AutGroup {
    let n = t.rank;
    let swap = |pairs: &[(usize, usize)]| {
        let mut perm: Vec<usize> = (1..=n).collect();
        for &(a, b) in pairs {
            perm.swap(a - 1, b - 1);
        }
        TreeAutomorphism::from_images(perm)
    };
    let generators = match (t.family, n) {
        (Family::A, 1) => vec![],
        (Family::A, _) => vec![TreeAutomorphism::from_images((1..=n).rev().collect())],
        (Family::D, 4) => vec![swap(&[(3, 4)]), TreeAutomorphism::from_images(vec![3, 2, 4, 1])],
        (Family::D, _) => vec![swap(&[(n - 1, n)])],
        (Family::E, 6) => vec![swap(&[(1, 5), (2, 4)])],
        (Family::E, _) => vec![],
    };
    let mut elements = vec![TreeAutomorphism::identity(n)];
    let mut i = 0;
    while i < elements.len() {
        for g in &generators {
            let h = g.compose(&elements[i]);
            if !elements.contains(&h) {
                elements.push(h);
            }
        }
        i += 1;
    }
    elements.sort();
    AutGroup { generators, elements }
}
