//! Morphism spaces of the mesh categories k(ZT) and k(ZT_C).
//!
//! Two independent computations are provided: the knitting recurrence for starting
//! functions, and an exact construction of each space `k(x, z)` as a quotient of
//! `⊕_{w→z} k(x, w)` by the image of `k(x, τz)` under the mesh map.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};

use crate::config::{Configuration, ZtAut};
use crate::dynkin::DynkinTree;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Reducer, Q};
use crate::quiver::{build_window, Point, QuiverWindow, StablePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomTable {
    pub source: Point,
    /// Nonzero dimensions only.
    pub dims: BTreeMap<Point, usize>,
    /// Representative paths for each basis vector; filled by the exact engine only.
    pub basis_paths: BTreeMap<Point, Vec<Vec<Point>>>,
}

impl HomTable {
    pub fn dim(&self, y: Point) -> usize {
        self.dims.get(&y).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.dims.keys()
    }
}

fn index_of(window: &QuiverWindow, p: Point) -> Result<usize> {
    window
        .index
        .get(&p)
        .copied()
        .ok_or_else(|| Error::WindowTooSmall(format!("{p} lies outside slices [{}, {}]", window.i_min, window.i_max)))
}

/// The knitting recurrence `s(z) = max(0, Σ_{w→z} s(w) - s(τz))`, seeded with `s(x) = 1`.
/// Projectives have no mesh, so `s(c*) = s(c)`. Values are indexed like `window.points`.
pub fn knit_values(window: &QuiverWindow, source: usize) -> Vec<i64> {
    let mut s = vec![0i64; window.len()];
    s[source] = 1;
    for z in source + 1..window.len() {
        let mut acc: i64 = window.pred[z].iter().map(|&w| s[w]).sum();
        if let Some(tz) = window.tau[z] {
            acc -= s[tz];
        }
        s[z] = acc.max(0);
    }
    s
}

/// Starting function `s_x = dim k(x, -)` by the recurrence. Fails when the support
/// reaches the last slice of the window, since it may continue beyond it.
pub fn starting_function(window: &QuiverWindow, x: Point) -> Result<HomTable> {
    let src = index_of(window, x)?;
    let s = knit_values(window, src);
    let mut dims = BTreeMap::new();
    for (k, &v) in s.iter().enumerate() {
        if v > 0 {
            let p = window.points[k];
            if p.base().slice == window.i_max && window.i_max > x.base().slice {
                return Err(Error::WindowTooSmall(format!("support of s_{x} reaches slice {}", window.i_max)));
            }
            dims.insert(p, v as usize);
        }
    }
    Ok(HomTable { source: x, dims, basis_paths: BTreeMap::new() })
}

/// Exact model of the functor `k(x, -)` restricted to a window: a basis of every
/// `k(x, z)` and the matrix of every arrow.
#[derive(Clone, Debug)]
pub struct MeshCone<'w> {
    window: &'w QuiverWindow,
    source: usize,
    dims: Vec<usize>,
    // arrow_mats[z][j] is the action of the arrow pred[z][j] -> z
    arrow_mats: Vec<Vec<Mat>>,
    basis: Vec<Vec<Vec<usize>>>,
}

impl<'w> MeshCone<'w> {
    pub fn new(window: &'w QuiverWindow, x: Point) -> Result<Self> {
        let source = index_of(window, x)?;
        let n = window.len();
        let mut dims = vec![0usize; n];
        let mut arrow_mats: Vec<Vec<Mat>> = (0..n)
            .map(|z| window.pred[z].iter().map(|_| Mat::zeros(0, 0)).collect())
            .collect();
        let mut basis: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        dims[source] = 1;
        basis[source] = vec![vec![source]];
        for z in source + 1..n {
            let preds = &window.pred[z];
            let mut offsets = Vec::with_capacity(preds.len());
            let mut total = 0;
            for &w in preds {
                offsets.push(total);
                total += dims[w];
            }
            if total == 0 {
                arrow_mats[z] = preds.iter().map(|&w| Mat::zeros(0, dims[w])).collect();
                continue;
            }
            let mut relations = Vec::new();
            if let Some(tz) = window.tau[z] {
                for b in 0..dims[tz] {
                    let mut row = vec![Q::zero(); total];
                    for (j, &w) in preds.iter().enumerate() {
                        let pos = window.pred[w].iter().position(|&u| u == tz).expect("mesh middle term");
                        let col = arrow_mats[w][pos].column(b);
                        for (k, v) in col.into_iter().enumerate() {
                            row[offsets[j] + k] = v;
                        }
                    }
                    relations.push(row);
                }
            }
            let red = Reducer::new(relations, total);
            let free: Vec<usize> = (0..total).filter(|c| !red.pivots().contains(c)).collect();
            dims[z] = free.len();
            let mut mats = Vec::with_capacity(preds.len());
            for (j, &w) in preds.iter().enumerate() {
                let mut m = Mat::zeros(free.len(), dims[w]);
                for b in 0..dims[w] {
                    let mut v = vec![Q::zero(); total];
                    v[offsets[j] + b] = Q::one();
                    red.reduce(&mut v);
                    for (r, &c) in free.iter().enumerate() {
                        m.set(r, b, v[c].clone());
                    }
                }
                mats.push(m);
            }
            arrow_mats[z] = mats;
            basis[z] = free
                .iter()
                .map(|&c| {
                    let j = offsets.iter().rposition(|&o| o <= c).expect("offset");
                    let mut path = basis[preds[j]][c - offsets[j]].clone();
                    path.push(z);
                    path
                })
                .collect();
        }
        Ok(MeshCone { window, source, dims, arrow_mats, basis })
    }

    pub fn window(&self) -> &QuiverWindow {
        self.window
    }

    pub fn source(&self) -> Point {
        self.window.points[self.source]
    }

    pub fn dim(&self, y: Point) -> usize {
        self.window.index.get(&y).map_or(0, |&k| self.dims[k])
    }

    /// Basis paths of `k(x, y)`.
    pub fn basis_paths(&self, y: Point) -> Vec<Vec<Point>> {
        self.window.index.get(&y).map_or_else(Vec::new, |&k| {
            self.basis[k].iter().map(|p| p.iter().map(|&i| self.window.points[i]).collect()).collect()
        })
    }

    pub fn arrow_matrix(&self, from: Point, to: Point) -> Option<&Mat> {
        let (&a, &b) = (self.window.index.get(&from)?, self.window.index.get(&to)?);
        let j = self.window.pred[b].iter().position(|&w| w == a)?;
        Some(&self.arrow_mats[b][j])
    }

    /// Post-composes `v ∈ k(x, path[0])` with the path.
    pub fn push_along(&self, v: &[Q], path: &[Point]) -> Vec<Q> {
        let mut cur = v.to_vec();
        for w in path.windows(2) {
            let m = self.arrow_matrix(w[0], w[1]).expect("path arrows lie in the window");
            cur = m.apply(&cur);
        }
        cur
    }

    /// The basis vector `k` of `k(x, y)`.
    pub fn unit(&self, y: Point, k: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim(y)];
        v[k] = Q::one();
        v
    }

    pub fn table(&self) -> HomTable {
        let mut dims = BTreeMap::new();
        let mut basis_paths = BTreeMap::new();
        for (k, &d) in self.dims.iter().enumerate() {
            if d > 0 {
                let p = self.window.points[k];
                dims.insert(p, d);
                basis_paths.insert(p, self.basis_paths(p));
            }
        }
        HomTable { source: self.source(), dims, basis_paths }
    }
}

/// Exact `dim k(x, y)` in the mesh category of the window's quiver.
pub fn hom_dim_oracle(window: &QuiverWindow, x: Point, y: Point) -> Result<usize> {
    index_of(window, y)?;
    Ok(MeshCone::new(window, x)?.dim(y))
}

/// Reachability in the window.
pub fn precedes(window: &QuiverWindow, x: Point, y: Point) -> bool {
    let (Some(&a), Some(&b)) = (window.index.get(&x), window.index.get(&y)) else {
        return false;
    };
    let mut seen = vec![false; window.len()];
    let mut queue = VecDeque::from([a]);
    seen[a] = true;
    while let Some(u) = queue.pop_front() {
        if u == b {
            return true;
        }
        for &v in &window.succ[u] {
            if !seen[v] && window.level[v] <= window.level[b] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    false
}

/// Starting functions of k(ZT), one per vertex, from the source `(0, v)`; translation
/// invariance gives every other source.
#[derive(Clone, Debug)]
pub struct ZtHomTables {
    tree: DynkinTree,
    span: i64,
    // dims[v-1][offset][y-1]
    dims: Vec<Vec<Vec<u32>>>,
}

impl ZtHomTables {
    pub fn new(t: &DynkinTree) -> Self {
        let span = t.loewy_number() as i64 + 1;
        let w = build_window(t, None, 0, span).expect("nonempty");
        let dims = t
            .vertices()
            .map(|v| {
                let s = knit_values(&w, w.index[&Point::stable(0, v)]);
                let mut table = vec![vec![0u32; t.rank()]; span as usize + 1];
                for (k, &val) in s.iter().enumerate() {
                    if val > 0 {
                        let p = w.points[k].base();
                        table[p.slice as usize][p.vertex - 1] = val as u32;
                    }
                }
                table
            })
            .collect();
        ZtHomTables { tree: t.clone(), span, dims }
    }

    pub fn tree(&self) -> &DynkinTree {
        &self.tree
    }

    /// `dim k(ZT)(x, y)`
    pub fn dim(&self, x: StablePoint, y: StablePoint) -> u32 {
        let off = y.slice - x.slice;
        if !(0..=self.span).contains(&off) {
            return 0;
        }
        self.dims[x.vertex - 1][off as usize][y.vertex - 1]
    }

    /// Slice offsets `0..=span` cover the whole support.
    pub fn span(&self) -> i64 {
        self.span
    }
}

/// `ν_T⁻¹` as an automorphism of ZT: raises height by `L - 1`.
pub fn nakayama_inverse_aut(t: &DynkinTree) -> ZtAut {
    let l = t.loewy_number() as i64;
    let tables = ZtHomTables::new(t);
    let images: Vec<usize> = t
        .vertices()
        .map(|v| {
            let x = StablePoint::new(0, v);
            let target_h = x.height(t) + l - 1;
            let hits: Vec<usize> = t
                .vertices()
                .filter_map(|y| StablePoint::at_height(t, y, target_h))
                .filter(|&p| tables.dim(x, p) != 0)
                .map(|p| p.vertex)
                .collect();
            assert_eq!(hits.len(), 1, "unique socle point for {x}");
            hits[0]
        })
        .collect();
    ZtAut::new(t, l - 1, crate::dynkin::TreeAutomorphism::from_images(images)).expect("ν⁻¹ is an automorphism")
}

/// `ν_T x`
pub fn nakayama(t: &DynkinTree, x: StablePoint) -> StablePoint {
    nakayama_inverse_aut(t).inverse().apply(t, x)
}

pub fn nakayama_inverse(t: &DynkinTree, x: StablePoint) -> StablePoint {
    nakayama_inverse_aut(t).apply(t, x)
}

/// A window of ZT_C wide enough for every morphism space between points of slices
/// `lo..=hi`.
pub fn config_window(c: &Configuration, lo: i64, hi: i64) -> QuiverWindow {
    let l = c.period_l() as i64;
    build_window(c.tree(), Some(c), lo - 1, hi + 2 * l + 2).expect("nonempty")
}

/// All pairs of a set of projectives admitting a complete morphism inside it: a nonzero
/// `f: x* → y*` killed by every radical morphism of the set on either side.
pub fn complete_morphisms(c: &Configuration, f: &[Point]) -> Result<Vec<(Point, Point)>> {
    if f.is_empty() || f.iter().any(|p| !p.is_projective() || !c.contains(p.base())) {
        return Err(Error::NotFundamental("expected a nonempty set of projective points of C".into()));
    }
    let lo = f.iter().map(|p| p.base().slice).min().unwrap();
    let hi = f.iter().map(|p| p.base().slice).max().unwrap();
    let window = build_window(c.tree(), Some(c), lo - 1, hi + 2).expect("nonempty");
    let cones: Vec<MeshCone> = f.iter().map(|&p| MeshCone::new(&window, p)).collect::<Result<_>>()?;
    let cone_of = |p: Point| &cones[f.iter().position(|&q| q == p).unwrap()];
    let mut out = Vec::new();
    for &x in f {
        for &y in f {
            let cx = cone_of(x);
            if cx.dim(y) == 0 {
                continue;
            }
            // k(x*, y*) has dimension at most one between projectives
            let fv = cx.unit(y, 0);
            let killed_after = f.iter().filter(|&&z| z != y).all(|&z| {
                cone_of(y).basis_paths(z).iter().all(|path| crate::linalg::is_zero_vec(&cx.push_along(&fv, path)))
            });
            let killed_before = f.iter().filter(|&&w| w != x).all(|&w| {
                let cw = cone_of(w);
                (0..cw.dim(x)).all(|k| {
                    let h = cw.unit(x, k);
                    cx.basis_paths(y).iter().all(|path| crate::linalg::is_zero_vec(&cw.push_along(&h, path)))
                })
            });
            if killed_after && killed_before {
                out.push((x, y));
            }
        }
    }
    out.sort();
    Ok(out)
}
