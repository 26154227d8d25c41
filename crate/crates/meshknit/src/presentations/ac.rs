//! The category A(C) of projectives of k(ZT_C): its quiver, fundamental algebras,
//! reflections, the standard presentation and quotients by admissible groups.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::{Arrow, CartanMatrix, QuiverPresentation, Relation};
use crate::config::Configuration;
use crate::dynkin::DynkinTree;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::groups::{is_admissible, AdmissibleGroup};
use crate::linalg::{is_zero_vec, Q};
use crate::mesh::MeshCone;
use crate::quiver::{build_window, Point, QuiverWindow, Section, StablePoint};

/// Exact morphism spaces out of a fixed set of projectives of ZT_C.
pub(crate) struct AcEngine<'w> {
    window: &'w QuiverWindow,
    cones: BTreeMap<Point, MeshCone<'w>>,
}

impl<'w> AcEngine<'w> {
    pub(crate) fn new(window: &'w QuiverWindow, sources: Vec<Point>) -> Result<Self> {
        let built = exec::map(Exec::default(), sources, |p| MeshCone::new(window, p).map(|c| (p, c)));
        let cones = built.into_iter().collect::<Result<BTreeMap<_, _>>>()?;
        Ok(AcEngine { window, cones })
    }

    fn cone(&self, x: Point) -> &MeshCone<'w> {
        self.cones.get(&x).unwrap_or_else(|| panic!("no cone prepared for {x}"))
    }

    pub(crate) fn hom(&self, x: Point, y: Point) -> usize {
        self.cone(x).dim(y)
    }

    /// Projectives `y ≠ x` with a nonzero morphism `x → y`.
    fn projective_targets(&self, x: Point) -> Vec<Point> {
        self.cone(x).table().dims.into_iter().filter(|(p, _)| p.is_projective() && *p != x).map(|(p, _)| p).collect()
    }

    /// A path of ZT_C representing the basis morphism `x → y` between projectives.
    fn basis_path(&self, x: Point, y: Point) -> Vec<Point> {
        let paths = self.cone(x).basis_paths(y);
        assert_eq!(paths.len(), 1, "morphism spaces between projectives have dimension at most one");
        paths.into_iter().next().unwrap()
    }

    /// The composite of basis morphisms along a sequence of projectives, as a vector in
    /// `k(path[0], last)`.
    fn composite(&self, path: &[Point]) -> Vec<Q> {
        let x = path[0];
        let cone = self.cone(x);
        let mut v = cone.unit(x, 0);
        let mut cur = x;
        for &next in &path[1..] {
            if self.hom(cur, next) == 0 {
                return Vec::new();
            }
            let p = self.basis_path(cur, next);
            v = cone.push_along(&v, &p);
            cur = next;
        }
        v
    }

    fn nonzero(&self, path: &[Point]) -> bool {
        let v = self.composite(path);
        !v.is_empty() && !is_zero_vec(&v)
    }

    /// Targets of the arrows of A(C) starting at `x`. A target is reported only when every
    /// projective it could factor through has a prepared cone.
    pub(crate) fn arrows_from(&self, x: Point) -> Vec<Point> {
        let t = self.window.tree();
        let targets = self.projective_targets(x);
        targets
            .iter()
            .copied()
            .filter(|&y| {
                let mids: Vec<Point> = targets.iter().copied().filter(|z| z.height(t) < y.height(t)).collect();
                mids.iter().all(|z| self.cones.contains_key(z))
                    && mids.iter().all(|&z| self.hom(z, y) == 0 || !self.nonzero(&[x, z, y]))
            })
            .collect()
    }
}

fn l_of(c: &Configuration) -> i64 {
    c.period_l() as i64
}

/// `ν⁻ᵏ` on projectives of A(C).
fn nu_inv(c: &Configuration, p: Point, k: i64) -> Point {
    p.shifted(k * l_of(c))
}

fn residue(c: &Configuration, p: Point) -> (i64, usize) {
    let b = p.base();
    (b.slice.rem_euclid(l_of(c)), b.vertex)
}

fn projectives_in(c: &Configuration, lo: i64, hi: i64) -> Vec<Point> {
    c.points_in_slices(lo, hi).into_iter().map(Point::Proj).collect()
}

/// Slices past `hi` still holding projectives lower than some projective of `lo..=hi`.
fn overhang(c: &Configuration) -> i64 {
    c.tree().rank() as i64
}

/// Cone sources needed to read off the arrows between projectives of slices `lo..=hi`.
fn cone_sources(c: &Configuration, lo: i64, hi: i64) -> Vec<Point> {
    projectives_in(c, lo, hi + overhang(c))
}

fn engine_window(c: &Configuration, lo: i64, hi: i64) -> QuiverWindow {
    let l = l_of(c);
    build_window(c.tree(), Some(c), lo - 1, hi + overhang(c) + l + 2).expect("nonempty")
}

fn check_points(c: &Configuration, f: &[Point]) -> Result<()> {
    if f.is_empty() || f.iter().any(|p| !p.is_projective() || !c.contains(p.base())) {
        return Err(Error::NotFundamental("expected projective points over C".into()));
    }
    Ok(())
}

/// Arrows of A(C) among the projectives of slices `lo..=hi`, with reachability.
struct LocalQuiver {
    nodes: Vec<Point>,
    arrows: Vec<Vec<usize>>,
    reach: Vec<Vec<bool>>,
}

impl LocalQuiver {
    fn new(c: &Configuration, lo: i64, hi: i64) -> Result<Self> {
        let window = engine_window(c, lo, hi);
        let nodes = projectives_in(c, lo, hi);
        let eng = AcEngine::new(&window, cone_sources(c, lo, hi))?;
        let pos: HashMap<Point, usize> = nodes.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let arrows: Vec<Vec<usize>> =
            nodes.iter().map(|&x| eng.arrows_from(x).into_iter().filter_map(|y| pos.get(&y).copied()).collect()).collect();
        let n = nodes.len();
        let mut reach = vec![vec![false; n]; n];
        // nodes are sorted by slice, and arrows never lower the slice
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(nodes[i].height(c.tree())));
        for &u in &order {
            reach[u][u] = true;
            for &v in &arrows[u] {
                let row = reach[v].clone();
                for (k, r) in row.into_iter().enumerate() {
                    if r {
                        reach[u][k] = true;
                    }
                }
            }
        }
        Ok(LocalQuiver { nodes, arrows, reach })
    }

    fn neighbours(&self) -> Vec<BTreeSet<usize>> {
        let mut nb = vec![BTreeSet::new(); self.nodes.len()];
        for (u, out) in self.arrows.iter().enumerate() {
            for &v in out {
                nb[u].insert(v);
                nb[v].insert(u);
            }
        }
        nb
    }

    fn is_convex(&self, set: &[usize]) -> bool {
        let inside: BTreeSet<usize> = set.iter().copied().collect();
        for &u in set {
            for &v in set {
                if u == v || !self.reach[u][v] {
                    continue;
                }
                if (0..self.nodes.len()).any(|w| !inside.contains(&w) && self.reach[u][w] && self.reach[w][v]) {
                    return false;
                }
            }
        }
        true
    }

    fn is_connected(&self, set: &[usize]) -> bool {
        let nb = self.neighbours();
        let inside: BTreeSet<usize> = set.iter().copied().collect();
        let mut seen = BTreeSet::from([set[0]]);
        let mut stack = vec![set[0]];
        while let Some(u) = stack.pop() {
            for &v in &nb[u] {
                if inside.contains(&v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.len() == set.len()
    }
}

fn slice_bounds(f: &[Point]) -> (i64, i64) {
    let lo = f.iter().map(|p| p.base().slice).min().unwrap();
    let hi = f.iter().map(|p| p.base().slice).max().unwrap();
    (lo, hi)
}

/// A full subcategory of A(C) that is connected, convex and meets every ν-orbit once.
pub fn is_fundamental(c: &Configuration, f: &[Point]) -> Result<bool> {
    check_points(c, f)?;
    let residues: BTreeSet<(i64, usize)> = f.iter().map(|&p| residue(c, p)).collect();
    if residues.len() != f.len() || f.len() != c.len() {
        return Ok(false);
    }
    let (lo, hi) = slice_bounds(f);
    let lq = LocalQuiver::new(c, lo, hi)?;
    let idx: Vec<usize> = f.iter().map(|p| lq.nodes.iter().position(|q| q == p).expect("in range")).collect();
    Ok(lq.is_connected(&idx) && lq.is_convex(&idx))
}

/// The projectives of the pattern algebra of a section: the points `(j, a)` of C with
/// `l(a) - L ≤ j < l(a)`.
pub fn pattern_algebra(c: &Configuration, s: &Section) -> Vec<Point> {
    let l = l_of(c);
    let mut out: Vec<Point> = c
        .tree()
        .vertices()
        .flat_map(|a| (s.level(a) - l..s.level(a)).map(move |j| StablePoint::new(j, a)))
        .filter(|p| c.contains(*p))
        .map(Point::Proj)
        .collect();
    out.sort();
    out
}

/// Whether some section has `f` as its pattern algebra. Each vertex `a` carrying points of
/// C constrains `l(a)` to an interval; adjacent levels differ by 0 or 1 in the direction
/// fixed by the numbering, so feasibility is an interval propagation over the tree.
fn is_pattern(c: &Configuration, f: &[Point]) -> bool {
    let t = c.tree();
    let l = l_of(c);
    const FREE: (i64, i64) = (i64::MIN / 4, i64::MAX / 4);
    let mut allowed: Vec<(i64, i64)> = Vec::with_capacity(t.rank());
    for a in t.vertices() {
        let on_a: Vec<i64> = f.iter().map(|p| p.base()).filter(|b| b.vertex == a).map(|b| b.slice).collect();
        let count = c.residues().iter().filter(|r| r.1 == a).count();
        if on_a.len() != count {
            return false;
        }
        if on_a.is_empty() {
            allowed.push(FREE);
            continue;
        }
        let (mn, mx) = (*on_a.iter().min().unwrap(), *on_a.iter().max().unwrap());
        if mx - mn >= l {
            return false;
        }
        allowed.push((mx + 1, mn + l));
    }
    // leaves-first elimination towards vertex 1
    fn restrict(t: &DynkinTree, v: usize, parent: usize, allowed: &mut [(i64, i64)]) -> bool {
        for &w in t.neighbors(v) {
            if w == parent {
                continue;
            }
            if !restrict(t, w, v, allowed) {
                return false;
            }
            let (a, b) = allowed[w - 1];
            // l(lo) - l(hi) ∈ {0, 1}
            let (na, nb) = if v < w { (a, b.saturating_add(1)) } else { (a.saturating_sub(1), b) };
            let cur = allowed[v - 1];
            let next = (cur.0.max(na), cur.1.min(nb));
            if next.0 > next.1 {
                return false;
            }
            allowed[v - 1] = next;
        }
        true
    }
    restrict(t, 1, 0, &mut allowed)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FundamentalAlgebra {
    pub points: Vec<Point>,
    /// The algebra is the pattern algebra of some section.
    pub is_pattern: bool,
}

/// All fundamental algebras of A(C) up to ν-translation, normalized so that the least
/// point lies in slices `0..L`.
pub fn fundamental_algebras(c: &Configuration) -> Result<Vec<FundamentalAlgebra>> {
    let l = l_of(c);
    let n = c.len();
    let lq = LocalQuiver::new(c, 0, 3 * l - 1)?;
    let nb = lq.neighbours();
    let res: Vec<(i64, usize)> = lq.nodes.iter().map(|&p| residue(c, p)).collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    // connected sets with the seed as least element, extended by exclusive neighbourhoods
    fn extend(
        lq: &LocalQuiver,
        nb: &[BTreeSet<usize>],
        res: &[(i64, usize)],
        n: usize,
        seed: usize,
        sub: &mut Vec<usize>,
        ext: BTreeSet<usize>,
        found: &mut BTreeSet<Vec<usize>>,
    ) {
        if sub.len() == n {
            let mut s = sub.clone();
            s.sort_unstable();
            if lq.is_convex(&s) {
                found.insert(s);
            }
            return;
        }
        let mut ext = ext;
        while let Some(w) = ext.pop_first() {
            if sub.iter().any(|&u| res[u] == res[w]) {
                continue;
            }
            let mut next = ext.clone();
            for &u in &nb[w] {
                if u > seed && !sub.contains(&u) && u != w && !sub.iter().any(|&s| nb[s].contains(&u)) {
                    next.insert(u);
                }
            }
            sub.push(w);
            extend(lq, nb, res, n, seed, sub, next, found);
            sub.pop();
        }
    }
    for seed in 0..lq.nodes.len() {
        if lq.nodes[seed].base().slice >= l {
            continue;
        }
        let ext: BTreeSet<usize> = nb[seed].iter().copied().filter(|&u| u > seed).collect();
        extend(&lq, &nb, &res, n, seed, &mut vec![seed], ext, &mut found);
    }
    let mut out: Vec<FundamentalAlgebra> = found
        .into_iter()
        .map(|s| {
            let points: Vec<Point> = s.iter().map(|&i| lq.nodes[i]).collect();
            let is_pattern = is_pattern(c, &points);
            FundamentalAlgebra { points, is_pattern }
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Source,
    Sink,
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "source" => Ok(Direction::Source),
            "sink" => Ok(Direction::Sink),
            _ => Err(Error::InvalidPresentation(format!("unknown direction {s}"))),
        }
    }
}

/// Moves a source of F one ν-period up, or a sink one period down.
pub fn reflect_fundamental(c: &Configuration, f: &[Point], x: Point, dir: Direction) -> Result<Vec<Point>> {
    if !is_fundamental(c, f)? {
        return Err(Error::NotFundamental(format!("{} points do not form a fundamental algebra", f.len())));
    }
    if !f.contains(&x) {
        return Err(Error::NotFundamental(format!("{x} is not a point of F")));
    }
    let (lo, hi) = slice_bounds(f);
    let window = engine_window(c, lo, hi);
    let eng = AcEngine::new(&window, cone_sources(c, lo, hi))?;
    let (k, bad) = match dir {
        Direction::Source => (1, f.iter().any(|&y| y != x && eng.arrows_from(y).contains(&x))),
        Direction::Sink => (-1, eng.arrows_from(x).iter().any(|y| f.contains(y))),
    };
    if bad {
        return Err(match dir {
            Direction::Source => Error::NotSource(x.to_string()),
            Direction::Sink => Error::NotSink(x.to_string()),
        });
    }
    let mut out: Vec<Point> = f.iter().map(|&p| if p == x { nu_inv(c, p, k) } else { p }).collect();
    out.sort();
    Ok(out)
}

/// The ν-periodic quiver with relations of A(C), with F as fundamental domain.
///
/// Arrows out of `x ∈ F` end in F or in `ν⁻¹F`; every other arrow is a ν-translate.
/// Relations start in F: minimal vanishing paths, and `p0 = p` for nonzero parallel paths
/// `p` sharing neither first nor last arrow with the least such path `p0`.
pub fn quiver_of_ac(c: &Configuration, f: &[Point]) -> Result<QuiverPresentation> {
    if !is_fundamental(c, f)? {
        return Err(Error::NotFundamental(format!("{} points do not form a fundamental algebra", f.len())));
    }
    let l = l_of(c);
    let mut f = f.to_vec();
    f.sort();
    let (lo, hi) = slice_bounds(&f);
    let window = engine_window(c, lo, hi + l + 1);
    let eng = AcEngine::new(&window, cone_sources(c, lo, hi + l + 1))?;
    let by_residue: HashMap<(i64, usize), Point> = f.iter().map(|&p| (residue(c, p), p)).collect();
    // (F point, shift) of a projective
    let locate = |p: Point| -> (Point, i64) {
        let home = by_residue[&residue(c, p)];
        (home, (p.base().slice - home.base().slice) / l)
    };
    let mut raw: Vec<(Point, Point, i64)> = Vec::new();
    for &x in &f {
        for y in eng.arrows_from(x) {
            let (home, k) = locate(y);
            raw.push((x, home, k));
        }
    }
    raw.sort();
    let arrows: Vec<Arrow> = raw
        .iter()
        .enumerate()
        .map(|(i, &(x, y, k))| Arrow { from: x.to_string(), to: y.to_string(), label: format!("a{}", i + 1), shift: Some(k) })
        .collect();
    let out_of: HashMap<Point, Vec<usize>> = f.iter().map(|&x| (x, (0..raw.len()).filter(|&i| raw[i].0 == x).collect())).collect();
    let target = |from_copy: i64, i: usize| -> (Point, i64) {
        let (_, y, k) = raw[i];
        (nu_inv(c, y, from_copy + k), from_copy + k)
    };

    let mut zeros: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut groups: BTreeMap<(Point, Point), Vec<Vec<usize>>> = BTreeMap::new();
    for &x in &f {
        // (arrow ids, points visited, copy of the current end)
        let mut stack: Vec<(Vec<usize>, Vec<Point>, i64)> = vec![(Vec::new(), vec![x], 0)];
        while let Some((ids, pts, copy)) = stack.pop() {
            let end = *pts.last().unwrap();
            let home = locate(end).0;
            for &i in &out_of[&home] {
                let (y, ycopy) = target(copy, i);
                let mut ids2 = ids.clone();
                ids2.push(i);
                let mut pts2 = pts.clone();
                pts2.push(y);
                if ids2.len() == 1 {
                    stack.push((ids2, pts2, ycopy));
                    continue;
                }
                if eng.nonzero(&pts2) {
                    groups.entry((x, y)).or_default().push(ids2.clone());
                    if ids2.len() <= l as usize {
                        stack.push((ids2, pts2, ycopy));
                    }
                } else if eng.nonzero(&pts2[1..]) {
                    zeros.insert(ids2);
                }
            }
        }
    }
    let label = |ids: &[usize]| -> Vec<String> { ids.iter().map(|&i| arrows[i].label.clone()).collect() };
    let mut relations: Vec<Relation> = zeros.iter().map(|p| Relation::Zero { path: label(p) }).collect();
    for paths in groups.values_mut() {
        paths.sort();
        let p0 = paths[0].clone();
        for p in &paths[1..] {
            if p[0] != p0[0] && p.last() != p0.last() {
                relations.push(Relation::Commute { lhs: label(&p0), rhs: label(p) });
            }
        }
    }
    Ok(QuiverPresentation {
        points: f.iter().map(|p| p.to_string()).collect(),
        arrows,
        relations,
        periodic: Some("nu".into()),
    })
}

/// The trivial extension T(F) ≅ A(C)//⟨ν⟩.
pub fn trivial_extension_presentation(c: &Configuration, f: &[Point]) -> Result<QuiverPresentation> {
    Ok(quiver_of_ac(c, f)?.fold())
}

/// Cartan matrix of A(C)//Π: `c(p, q) = Σ_{g ∈ Π} dim k(ZT_C)(p*, g q*)`, indexed by
/// the projectives of C with height in one fundamental domain of Π.
pub fn cartan_matrix(c: &Configuration, group: &AdmissibleGroup) -> Result<CartanMatrix> {
    let t = c.tree();
    let l = l_of(c);
    let g = group.generator(t)?;
    if g.shift == 0 || !c.is_stabilized_by(&g) {
        return Err(Error::NotAdmissible(format!("{} does not act freely on C", group.describe())));
    }
    let span = g.shift.abs();
    let check = build_window(t, Some(c), -2, (span + 1) / 2 + 2)?;
    if !is_admissible(group, &check)? {
        return Err(Error::NotAdmissible(group.describe()));
    }
    let reps: Vec<Point> = c
        .points_in_slices(-(t.rank() as i64) - 2, span / 2 + 1)
        .into_iter()
        .map(Point::Proj)
        .filter(|p| (0..span).contains(&p.height(t)))
        .collect();
    let (lo, hi) = slice_bounds(&reps);
    let window = build_window(t, Some(c), lo - 1, hi + l + 2)?;
    let eng = AcEngine::new(&window, reps.clone())?;
    let kmax = (2 * l + 8) / span + 2;
    let entries = reps
        .iter()
        .map(|&p| {
            reps.iter()
                .map(|&q| {
                    (-kmax..=kmax)
                        .map(|k| g.pow(k).apply_point(t, q))
                        .filter(|y| window.contains(*y))
                        .map(|y| eng.hom(p, y) as u64)
                        .sum()
                })
                .collect()
        })
        .collect();
    Ok(CartanMatrix { labels: reps.iter().map(|p| p.to_string()).collect(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knitting::knit_and_knot;

    fn tree(s: &str) -> DynkinTree {
        s.parse().unwrap()
    }

    #[test]
    fn a2_fundamental_algebras() {
        let t = tree("A2");
        let c = knit_and_knot(&t, &Section::equioriented(&t), &[1, 2]).unwrap();
        let fs = fundamental_algebras(&c).unwrap();
        assert!(!fs.is_empty());
        for fa in &fs {
            assert_eq!(fa.points.len(), 2);
            assert!(is_fundamental(&c, &fa.points).unwrap());
        }
        let te = trivial_extension_presentation(&c, &fs[0].points).unwrap();
        assert_eq!(te.points.len(), 2);
        assert_eq!(te.arrows.len(), 2);
    }

    #[test]
    fn a1_single_point() {
        let t = tree("A1");
        let c = Configuration::new(&t, [(0, 1)]).unwrap();
        let fs = fundamental_algebras(&c).unwrap();
        assert_eq!(fs.len(), 1);
        assert!(fs[0].is_pattern);
    }
}
