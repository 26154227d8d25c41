//! The stable translation quiver ZT, its extension ZT_C by projective-injective points,
//! finite windows of both, and sections.
//!
//! Points are addressed by `(slice, vertex)`. For a tree edge `(lo, hi)` the arrows are
//! `(i, lo) -> (i, hi)` and `(i, hi) -> (i + 1, lo)`, and `τ(i, x) = (i - 1, x)`.
//! Internally every point also has a height `2i + p(x)`; each arrow raises it by one.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::dynkin::DynkinTree;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StablePoint {
    pub slice: i64,
    pub vertex: usize,
}

impl StablePoint {
    pub const fn new(slice: i64, vertex: usize) -> Self {
        StablePoint { slice, vertex }
    }

    pub fn height(&self, t: &DynkinTree) -> i64 {
        2 * self.slice + t.depth(self.vertex)
    }

    /// `τ^k`
    pub fn tau(&self, k: i64) -> StablePoint {
        StablePoint::new(self.slice - k, self.vertex)
    }

    /// The point of the τ-orbit of `vertex` sitting at height `h`, if the parity allows one.
    pub fn at_height(t: &DynkinTree, vertex: usize, h: i64) -> Option<StablePoint> {
        let d = h - t.depth(vertex);
        (d.rem_euclid(2) == 0).then(|| StablePoint::new(d.div_euclid(2), vertex))
    }
}

impl fmt::Display for StablePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.slice, self.vertex)
    }
}

/// A point of ZT_C: either a stable point or the projective-injective `c*` over `c ∈ C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Point {
    Stable(StablePoint),
    Proj(StablePoint),
}

impl Point {
    pub fn stable(slice: i64, vertex: usize) -> Self {
        Point::Stable(StablePoint::new(slice, vertex))
    }

    pub fn proj(slice: i64, vertex: usize) -> Self {
        Point::Proj(StablePoint::new(slice, vertex))
    }

    pub fn base(&self) -> StablePoint {
        match *self {
            Point::Stable(p) | Point::Proj(p) => p,
        }
    }

    pub fn is_projective(&self) -> bool {
        matches!(self, Point::Proj(_))
    }

    pub fn height(&self, t: &DynkinTree) -> i64 {
        match self {
            Point::Stable(p) => p.height(t),
            Point::Proj(c) => c.height(t) + 1,
        }
    }

    /// Shift by `τ^{-k}` on the underlying stable point; projectives move with their base.
    pub fn shifted(&self, k: i64) -> Point {
        match *self {
            Point::Stable(p) => Point::Stable(p.tau(-k)),
            Point::Proj(p) => Point::Proj(p.tau(-k)),
        }
    }

    /// DOT node name: `i_x` for stable points, `i_x_P` for projectives.
    pub fn dot_name(&self) -> String {
        match self {
            Point::Stable(p) => format!("{}_{}", p.slice, p.vertex).replace('-', "m"),
            Point::Proj(p) => format!("{}_{}_P", p.slice, p.vertex).replace('-', "m"),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Stable(p) => write!(f, "{p}"),
            Point::Proj(p) => write!(f, "{p}*"),
        }
    }
}

/// `τ^k` applied to a point. Projectives only admit multiples of `L(T)`, under which
/// `c* ↦ (τ^k c)*`.
pub fn tau_apply(t: &DynkinTree, p: Point, k: i64) -> Result<Point> {
    match p {
        Point::Stable(s) => Ok(Point::Stable(s.tau(k))),
        Point::Proj(c) => {
            if k.rem_euclid(t.loewy_number() as i64) == 0 {
                Ok(Point::Proj(c.tau(k)))
            } else {
                Err(Error::UndefinedTau(p.to_string()))
            }
        }
    }
}

/// ZT (with `config = None`) or ZT_C, navigated algebraically.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub tree: DynkinTree,
    pub config: Option<Configuration>,
}

impl Ambient {
    pub fn new(tree: &DynkinTree, config: Option<&Configuration>) -> Self {
        Ambient { tree: tree.clone(), config: config.cloned() }
    }

    pub fn in_config(&self, p: StablePoint) -> bool {
        self.config.as_ref().is_some_and(|c| c.contains(p))
    }

    pub fn successors(&self, p: Point) -> Vec<Point> {
        match p {
            Point::Stable(s) => {
                let mut out: Vec<Point> = self
                    .tree
                    .neighbors(s.vertex)
                    .iter()
                    .map(|&y| if y > s.vertex { Point::stable(s.slice, y) } else { Point::stable(s.slice + 1, y) })
                    .collect();
                if self.in_config(s) {
                    out.push(Point::Proj(s));
                }
                out
            }
            Point::Proj(c) => vec![Point::Stable(c.tau(-1))],
        }
    }

    pub fn predecessors(&self, p: Point) -> Vec<Point> {
        match p {
            Point::Stable(s) => {
                let mut out: Vec<Point> = self
                    .tree
                    .neighbors(s.vertex)
                    .iter()
                    .map(|&y| if y < s.vertex { Point::stable(s.slice, y) } else { Point::stable(s.slice - 1, y) })
                    .collect();
                if self.in_config(s.tau(1)) {
                    out.push(Point::Proj(s.tau(1)));
                }
                out
            }
            Point::Proj(c) => vec![Point::Stable(c)],
        }
    }

    pub fn tau(&self, p: Point) -> Option<Point> {
        match p {
            Point::Stable(s) => Some(Point::Stable(s.tau(1))),
            Point::Proj(_) => None,
        }
    }

    pub fn height(&self, p: Point) -> i64 {
        p.height(&self.tree)
    }

    /// All points of slices `lo..=hi` (projectives included), sorted by height then point.
    pub fn points_in_slices(&self, lo: i64, hi: i64) -> Vec<Point> {
        let mut pts = Vec::new();
        for i in lo..=hi {
            for x in self.tree.vertices() {
                let s = StablePoint::new(i, x);
                pts.push(Point::Stable(s));
                if self.in_config(s) {
                    pts.push(Point::Proj(s));
                }
            }
        }
        pts.sort_by_key(|p| (self.height(*p), *p));
        pts
    }
}

/// A finite slice range of ZT or ZT_C, materialized.
#[derive(Clone, Debug)]
pub struct QuiverWindow {
    pub ambient: Ambient,
    pub i_min: i64,
    pub i_max: i64,
    /// Sorted by level, then by point.
    pub points: Vec<Point>,
    pub index: HashMap<Point, usize>,
    pub succ: Vec<Vec<usize>>,
    pub pred: Vec<Vec<usize>>,
    pub tau: Vec<Option<usize>>,
    /// Topological level κ; every arrow raises it by exactly one.
    pub level: Vec<i64>,
}

pub fn build_window(t: &DynkinTree, config: Option<&Configuration>, i_min: i64, i_max: i64) -> Result<QuiverWindow> {
    if i_min > i_max {
        return Err(Error::EmptyRange(i_min, i_max));
    }
    if let Some(c) = config {
        if c.tree() != t {
            return Err(Error::InvalidConfiguration(format!("configuration over {} used with {}", c.tree(), t)));
        }
    }
    let ambient = Ambient::new(t, config);
    let points = ambient.points_in_slices(i_min, i_max);
    let index: HashMap<Point, usize> = points.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let mut succ = vec![Vec::new(); points.len()];
    let mut pred = vec![Vec::new(); points.len()];
    for (k, p) in points.iter().enumerate() {
        for q in ambient.successors(*p) {
            if let Some(&j) = index.get(&q) {
                succ[k].push(j);
                pred[j].push(k);
            }
        }
    }
    for s in succ.iter_mut().chain(pred.iter_mut()) {
        s.sort_unstable();
    }
    let tau = points.iter().map(|p| ambient.tau(*p).and_then(|q| index.get(&q).copied())).collect();
    let level = points.iter().map(|p| ambient.height(*p)).collect();
    Ok(QuiverWindow { ambient, i_min, i_max, points, index, succ, pred, tau, level })
}

impl QuiverWindow {
    pub fn tree(&self) -> &DynkinTree {
        &self.ambient.tree
    }

    pub fn config(&self) -> Option<&Configuration> {
        self.ambient.config.as_ref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.index.contains_key(&p)
    }

    pub fn arrows(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for (k, s) in self.succ.iter().enumerate() {
            for &j in s {
                out.push((self.points[k], self.points[j]));
            }
        }
        out.sort();
        out
    }

    pub fn slice_count(&self) -> i64 {
        self.i_max - self.i_min + 1
    }
}

/// A section of ZT, given by the slice `l(x)` of its point in each τ-orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Section {
    pub tree: DynkinTree,
    pub levels: Vec<i64>,
}

impl Section {
    pub fn new(tree: &DynkinTree, levels: Vec<i64>) -> Result<Self> {
        if levels.len() != tree.rank() {
            return Err(Error::InvalidSection(format!("expected {} levels, got {}", tree.rank(), levels.len())));
        }
        let s = Section { tree: tree.clone(), levels };
        for &(lo, hi) in tree.edges() {
            let (a, b) = (s.level(lo), s.level(hi));
            if a != b && a != b + 1 {
                return Err(Error::InvalidSection(format!("levels {a} at {lo} and {b} at {hi} are not adjacent")));
            }
        }
        Ok(s)
    }

    /// All points in slice 0: every edge oriented `lo -> hi`.
    pub fn equioriented(tree: &DynkinTree) -> Self {
        Section { tree: tree.clone(), levels: vec![0; tree.rank()] }
    }

    /// The section whose edge orientations are given by `points_up(lo, hi)`:
    /// true means the arrow goes `lo -> hi`. Vertex `anchor` is placed at slice 0.
    pub fn from_orientation(tree: &DynkinTree, anchor: usize, points_up: impl Fn(usize, usize) -> bool) -> Self {
        let mut levels = vec![i64::MIN; tree.rank()];
        levels[anchor - 1] = 0;
        let mut stack = vec![anchor];
        while let Some(x) = stack.pop() {
            for &y in tree.neighbors(x) {
                if levels[y - 1] != i64::MIN {
                    continue;
                }
                let (lo, hi) = (x.min(y), x.max(y));
                let lx = levels[x - 1];
                // lo -> hi needs l(hi) = l(lo); hi -> lo needs l(lo) = l(hi) + 1
                levels[y - 1] = match (points_up(lo, hi), y == hi) {
                    (true, _) => lx,
                    (false, true) => lx - 1,
                    (false, false) => lx + 1,
                };
                stack.push(y);
            }
        }
        Section { tree: tree.clone(), levels }
    }

    /// The section in which every edge points towards `sink`, with `sink` at slice 0.
    pub fn towards(tree: &DynkinTree, sink: usize) -> Self {
        let dist = tree_distances(tree, sink);
        Section::from_orientation(tree, sink, |lo, hi| dist[hi - 1] < dist[lo - 1])
    }

    pub fn level(&self, x: usize) -> i64 {
        self.levels[x - 1]
    }

    pub fn point(&self, x: usize) -> StablePoint {
        StablePoint::new(self.level(x), x)
    }

    /// Is there an arrow `x(S) -> y(S)` in S?
    pub fn has_arrow(&self, x: usize, y: usize) -> bool {
        if !self.tree.has_edge(x, y) {
            return false;
        }
        if x < y {
            self.level(y) == self.level(x)
        } else {
            self.level(y) == self.level(x) + 1
        }
    }

    pub fn is_source(&self, x: usize) -> bool {
        self.tree.neighbors(x).iter().all(|&y| self.has_arrow(x, y))
    }

    pub fn is_sink(&self, x: usize) -> bool {
        self.tree.neighbors(x).iter().all(|&y| self.has_arrow(y, x))
    }

    /// `s⁺_x` (replace `x(S)` by `τ⁻¹x(S)`) or `s⁻_x`.
    pub fn moved(&self, x: usize, plus: bool) -> Result<Section> {
        let mut s = self.clone();
        if plus {
            if !self.is_source(x) {
                return Err(Error::NotSource(format!("vertex {x}")));
            }
            s.levels[x - 1] += 1;
        } else {
            if !self.is_sink(x) {
                return Err(Error::NotSink(format!("vertex {x}")));
            }
            s.levels[x - 1] -= 1;
        }
        Ok(s)
    }

    /// `τ^{-k} S`
    pub fn shifted(&self, k: i64) -> Section {
        Section { tree: self.tree.clone(), levels: self.levels.iter().map(|l| l + k).collect() }
    }

    pub fn sources(&self) -> Vec<usize> {
        self.tree.vertices().filter(|&x| self.is_source(x)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        self.tree.vertices().filter(|&x| self.is_sink(x)).collect()
    }

    /// Orientation of each canonical edge: true when the section arrow goes `lo -> hi`.
    pub fn orientation(&self) -> Vec<bool> {
        self.tree.edges().iter().map(|&(lo, hi)| self.has_arrow(lo, hi)).collect()
    }
}

pub fn section_move(s: &Section, x: usize, plus: bool) -> Result<Section> {
    s.moved(x, plus)
}

/// A (+)-admissible enumeration of the vertices: each is a source after the previous
/// moves. Ties go to the smallest vertex.
pub fn plus_admissible_enumeration(s: &Section) -> Vec<usize> {
    let n = s.tree.rank();
    let mut cur = s.clone();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let x = s
            .tree
            .vertices()
            .find(|&x| !done[x - 1] && cur.is_source(x))
            .expect("a section of a tree always has a source among the unmoved vertices");
        cur.levels[x - 1] += 1;
        done[x - 1] = true;
        order.push(x);
    }
    order
}

pub(crate) fn tree_distances(tree: &DynkinTree, from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; tree.rank()];
    dist[from - 1] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &y in tree.neighbors(x) {
            if dist[y - 1] == usize::MAX {
                dist[y - 1] = dist[x - 1] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(s: &str) -> DynkinTree {
        s.parse().unwrap()
    }

    #[test]
    fn a2_window_arrows() {
        let t = tree("A2");
        let w = build_window(&t, None, 0, 1).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(
            w.arrows(),
            vec![
                (Point::stable(0, 1), Point::stable(0, 2)),
                (Point::stable(0, 2), Point::stable(1, 1)),
                (Point::stable(1, 1), Point::stable(1, 2)),
            ]
        );
        assert!(matches!(build_window(&t, None, 2, 1), Err(Error::EmptyRange(2, 1))));
    }

    #[test]
    fn a2_window_with_projective() {
        let t = tree("A2");
        let c = Configuration::new(&t, vec![(0, 1)]).unwrap();
        let w = build_window(&t, Some(&c), 0, 1).unwrap();
        let arrows = w.arrows();
        assert!(arrows.contains(&(Point::stable(0, 1), Point::proj(0, 1))));
        assert!(arrows.contains(&(Point::proj(0, 1), Point::stable(1, 1))));
        for (a, b) in arrows {
            assert_eq!(w.level[w.index[&b]], w.level[w.index[&a]] + 1);
        }
    }

    #[test]
    fn tau_rules() {
        let t = tree("A3");
        assert_eq!(tau_apply(&t, Point::stable(3, 2), 1).unwrap(), Point::stable(2, 2));
        assert_eq!(tau_apply(&t, Point::stable(0, 1), -1).unwrap(), Point::stable(1, 1));
        assert!(matches!(tau_apply(&t, Point::proj(0, 1), 1), Err(Error::UndefinedTau(_))));
        assert_eq!(tau_apply(&t, Point::proj(0, 1), 3).unwrap(), Point::proj(-3, 1));
    }

    #[test]
    fn section_moves() {
        let t = tree("A3");
        let s = Section::equioriented(&t);
        assert_eq!(s.moved(1, true).unwrap().levels, vec![1, 0, 0]);
        assert!(matches!(s.moved(2, true), Err(Error::NotSource(_))));
        let mut cur = s.clone();
        for x in plus_admissible_enumeration(&s) {
            cur = cur.moved(x, true).unwrap();
        }
        assert_eq!(cur, s.shifted(1));
    }

    #[test]
    fn admissible_orders() {
        let a3 = tree("A3");
        assert_eq!(plus_admissible_enumeration(&Section::equioriented(&a3)), vec![1, 2, 3]);
        let peak = Section::new(&a3, vec![1, 0, 0]).unwrap();
        assert_eq!(peak.sources(), vec![2]);
        assert_eq!(plus_admissible_enumeration(&peak), vec![2, 1, 3]);
        assert_eq!(plus_admissible_enumeration(&Section::equioriented(&tree("A1"))), vec![1]);
        assert!(Section::new(&a3, vec![0, 1, 0]).is_err());
    }

    #[test]
    fn towards_sink() {
        for name in ["A4", "D5", "E6"] {
            let t = tree(name);
            for x in t.vertices() {
                let s = Section::towards(&t, x);
                assert!(Section::new(&t, s.levels.clone()).is_ok());
                assert!(s.is_sink(x));
                assert_eq!(s.level(x), 0);
                assert_eq!(s.sinks(), vec![x]);
            }
        }
    }
}
