//! Knitting and knotting: dimension vectors along sections, pattern realization, and the
//! passage between pattern vectors and configurations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::config::Configuration;
use crate::dynkin::DynkinTree;
use crate::error::{Error, Result};
use crate::mesh::knit_values;
use crate::quiver::{build_window, plus_admissible_enumeration, Point, Section, StablePoint};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DimensionVector {
    pub section: Section,
    /// `values[x - 1] = d(x)`
    pub values: Vec<i64>,
}

impl DimensionVector {
    pub fn new(section: &Section, values: Vec<i64>) -> Result<Self> {
        if values.len() != section.tree.rank() {
            return Err(Error::InvalidDimensionVector(format!(
                "expected {} entries, got {}",
                section.tree.rank(),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v < 1) {
            return Err(Error::InvalidDimensionVector(format!("entry {v} is not positive")));
        }
        Ok(DimensionVector { section: section.clone(), values })
    }

    pub fn get(&self, x: usize) -> i64 {
        self.values[x - 1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Knit,
    /// `x(S)` belongs to the configuration; its projective-injective has radical `M(x(S))`.
    Knot,
}

/// One source step: `s = -d(x) + Σ_{x→y} d(y)`. A positive `s` is knitted in as the value
/// at `τ⁻¹x(S)`; `s = -1` is a knot, after which `τ⁻¹x(S)` carries `d(x)` again.
pub fn propagate_dims(d: &DimensionVector, x: usize) -> Result<(Verdict, DimensionVector)> {
    let sec = &d.section;
    if !sec.is_source(x) {
        return Err(Error::NotSource(format!("vertex {x}")));
    }
    let s = -d.get(x) + sec.tree.neighbors(x).iter().map(|&y| d.get(y)).sum::<i64>();
    let mut next = d.clone();
    next.section = sec.moved(x, true)?;
    let verdict = match s {
        s if s > 0 => {
            next.values[x - 1] = s;
            Verdict::Knit
        }
        -1 => Verdict::Knot,
        s => {
            return Err(Error::InvalidDimensionVector(format!("knitting at {} gives {s}", sec.point(x))));
        }
    };
    Ok((verdict, next))
}

/// A point of the finite AR quiver of a pattern algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternPoint {
    pub point: StablePoint,
    pub dim: i64,
    pub projective: bool,
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pattern {
    pub tree: DynkinTree,
    pub section: Section,
    pub projective_points: Vec<StablePoint>,
    /// Sorted by height, then point.
    pub gamma: Vec<PatternPoint>,
}

/// Knits backward from `(S, d)` until every τ-orbit has reached its projective, then
/// forward until every orbit has reached its injective.
pub fn knit_pattern(t: &DynkinTree, s: &Section, d: &[i64]) -> Result<Pattern> {
    let dv = DimensionVector::new(s, d.to_vec())?;
    let n = t.rank();
    let bound = 6 * t.loewy_number() * n;
    let mut vals: BTreeMap<StablePoint, i64> = t.vertices().map(|x| (s.point(x), dv.get(x))).collect();
    let mut projective: BTreeSet<StablePoint> = BTreeSet::new();
    let mut injective: BTreeSet<StablePoint> = BTreeSet::new();
    let height = |p: &StablePoint| p.height(t);
    let preds = |p: StablePoint| -> Vec<StablePoint> {
        t.neighbors(p.vertex)
            .iter()
            .map(|&y| if y < p.vertex { StablePoint::new(p.slice, y) } else { StablePoint::new(p.slice - 1, y) })
            .collect()
    };
    let succs = |p: StablePoint| -> Vec<StablePoint> {
        t.neighbors(p.vertex)
            .iter()
            .map(|&y| if y > p.vertex { StablePoint::new(p.slice, y) } else { StablePoint::new(p.slice + 1, y) })
            .collect()
    };

    // Backward: lowest known point of each orbit, processed from the top height down.
    let mut frozen = vec![false; n];
    let mut steps = 0;
    let top = t.vertices().map(|x| height(&s.point(x))).max().unwrap();
    let mut h = top;
    while frozen.iter().any(|f| !f) {
        for x in t.vertices() {
            if frozen[x - 1] {
                continue;
            }
            let Some(w) = StablePoint::at_height(t, x, h) else { continue };
            let Some(&dw) = vals.get(&w) else { continue };
            steps += 1;
            if steps > bound {
                return Err(Error::InvalidDimensionVector("backward knitting does not terminate".into()));
            }
            let sum: i64 = preds(w).iter().map(|u| vals.get(u).copied().unwrap_or(0)).sum();
            match sum - dw {
                v if v > 0 => {
                    vals.insert(w.tau(1), v);
                }
                -1 => {
                    projective.insert(w);
                    frozen[x - 1] = true;
                }
                v => {
                    return Err(Error::InvalidDimensionVector(format!("backward knitting at {w} gives {v}")));
                }
            }
        }
        h -= 1;
    }

    // Forward: close every orbit at its injective.
    let mut closed = vec![false; n];
    let mut h = t.vertices().map(|x| height(&s.point(x))).min().unwrap();
    steps = 0;
    while closed.iter().any(|c| !c) {
        for x in t.vertices() {
            if closed[x - 1] {
                continue;
            }
            let Some(w) = StablePoint::at_height(t, x, h) else { continue };
            if w.slice < s.level(x) {
                continue;
            }
            let Some(&dw) = vals.get(&w) else { continue };
            steps += 1;
            if steps > bound {
                return Err(Error::InvalidDimensionVector("forward knitting does not terminate".into()));
            }
            let sum: i64 = succs(w).iter().map(|u| vals.get(u).copied().unwrap_or(0)).sum();
            match sum - dw {
                v if v > 0 => {
                    vals.insert(w.tau(-1), v);
                }
                -1 => {
                    injective.insert(w);
                    closed[x - 1] = true;
                }
                v => {
                    return Err(Error::InvalidDimensionVector(format!("forward knitting at {w} gives {v}")));
                }
            }
        }
        h += 1;
    }

    let mut gamma: Vec<PatternPoint> = vals
        .into_iter()
        .map(|(p, dim)| PatternPoint { point: p, dim, projective: projective.contains(&p), injective: injective.contains(&p) })
        .collect();
    gamma.sort_by_key(|q| (q.point.height(t), q.point));
    Ok(Pattern { tree: t.clone(), section: s.clone(), projective_points: projective.into_iter().collect(), gamma })
}

/// One visited point of a knit-and-knot run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CarpetEntry {
    pub point: StablePoint,
    pub dim: i64,
    pub knot: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnitRun {
    pub configuration: Configuration,
    /// Number of L-blocks knitted before `d(τ^{-kL}S) = d(τ^{-(k-1)L}S)` was observed.
    pub blocks_until_periodic: usize,
    pub steps: usize,
    pub carpet: Vec<CarpetEntry>,
}

/// Runs knit-and-knot from `(S, d)`: blocks of `L` rounds, each round one source step per
/// vertex, until `d` repeats across a block (at most six blocks). A final block checks that
/// the knots repeat with period `L`. The knots of the first block are the configuration.
pub fn knit_and_knot_run(t: &DynkinTree, s: &Section, d: &[i64]) -> Result<KnitRun> {
    knit_pattern(t, s, d)?;
    let l = t.loewy_number();
    let order = plus_admissible_enumeration(s);
    let mut cur = DimensionVector::new(s, d.to_vec())?;
    let mut carpet: Vec<CarpetEntry> = t.vertices().map(|x| CarpetEntry { point: s.point(x), dim: cur.get(x), knot: false }).collect();
    let mut blocks: Vec<Vec<StablePoint>> = Vec::new();
    let mut steps = 0;
    let mut periodic_after = None;
    let mut run_block = |cur: &mut DimensionVector, carpet: &mut Vec<CarpetEntry>| -> Result<Vec<StablePoint>> {
        let mut knots = Vec::new();
        for _ in 0..l {
            for &x in &order {
                let p = cur.section.point(x);
                let (verdict, next) = propagate_dims(cur, x)?;
                if verdict == Verdict::Knot {
                    knots.push(p);
                    if let Some(e) = carpet.iter_mut().rev().find(|e| e.point == p) {
                        e.knot = true;
                    }
                }
                *cur = next;
                carpet.push(CarpetEntry { point: cur.section.point(x), dim: cur.get(x), knot: false });
                steps += 1;
            }
        }
        Ok(knots)
    };
    for k in 1..=6 {
        let start = cur.values.clone();
        blocks.push(run_block(&mut cur, &mut carpet)?);
        if cur.values == start {
            periodic_after = Some(k);
            break;
        }
    }
    let Some(periodic_after) = periodic_after else {
        return Err(Error::InvalidDimensionVector("no periodicity within six blocks".into()));
    };
    let verify = run_block(&mut cur, &mut carpet)?;
    let last = blocks.last().unwrap();
    let shifted: Vec<StablePoint> = last.iter().map(|p| p.tau(-(l as i64))).collect();
    if verify != shifted {
        return Err(Error::InvalidDimensionVector("knots do not repeat with period L".into()));
    }
    let first = &blocks[0];
    if first.len() != t.rank() {
        return Err(Error::InvalidDimensionVector(format!("{} knots in one period, expected {}", first.len(), t.rank())));
    }
    let configuration = Configuration::from_points(t, first.iter().copied())?;
    if configuration.len() != t.rank() {
        return Err(Error::InvalidDimensionVector("knots collide modulo L".into()));
    }
    Ok(KnitRun { configuration, blocks_until_periodic: periodic_after, steps, carpet })
}

pub fn knit_and_knot(t: &DynkinTree, s: &Section, d: &[i64]) -> Result<Configuration> {
    Ok(knit_and_knot_run(t, s, d)?.configuration)
}

impl KnitRun {
    /// Text table: one row per vertex (highest first), one column per slice; knots get `*`.
    pub fn render_carpet(&self, t: &DynkinTree) -> String {
        let lo = self.carpet.iter().map(|e| e.point.slice).min().unwrap_or(0);
        let hi = self.carpet.iter().map(|e| e.point.slice).max().unwrap_or(0);
        let mut cells: BTreeMap<StablePoint, String> = BTreeMap::new();
        for e in &self.carpet {
            cells.insert(e.point, format!("{}{}", e.dim, if e.knot { "*" } else { "" }));
        }
        let mut out = String::new();
        for x in t.vertices().rev() {
            let _ = write!(out, "{x:>3} |");
            for i in lo..=hi {
                let c = cells.get(&StablePoint::new(i, x)).map_or(".", |s| s.as_str());
                let _ = write!(out, "{c:>4}");
            }
            out.push('\n');
        }
        out
    }
}

/// `d(S, C)`: for each `x`, the sum of `dim k(ZT_C)(c*, x(S))` over the points `c` of C
/// lying in the L-block of slices strictly before S in the orbit of `c`.
pub fn dims_on_section(c: &Configuration, s: &Section) -> DimensionVector {
    let t = c.tree();
    let l = t.loewy_number() as i64;
    let lo = s.levels.iter().min().unwrap() - l - 1;
    let hi = s.levels.iter().max().unwrap() + 1;
    let window = build_window(t, Some(c), lo, hi).expect("nonempty");
    let mut values = vec![0i64; t.rank()];
    for a in t.vertices() {
        for j in s.level(a) - l..s.level(a) {
            let p = StablePoint::new(j, a);
            if !c.contains(p) {
                continue;
            }
            let vals = knit_values(&window, window.index[&Point::Proj(p)]);
            for x in t.vertices() {
                values[x - 1] += vals[window.index[&Point::Stable(s.point(x))]];
            }
        }
    }
    DimensionVector { section: s.clone(), values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(s: &str) -> DynkinTree {
        s.parse().unwrap()
    }

    #[test]
    fn propagate_examples() {
        let t = tree("A2");
        let s = Section::equioriented(&t);
        let d = DimensionVector::new(&s, vec![1, 2]).unwrap();
        let (v, d2) = propagate_dims(&d, 1).unwrap();
        assert_eq!(v, Verdict::Knit);
        assert_eq!(d2.values, vec![1, 2]);
        assert!(matches!(propagate_dims(&d, 2), Err(Error::NotSource(_))));
    }

    #[test]
    fn a2_patterns() {
        let t = tree("A2");
        let s = Section::equioriented(&t);
        assert_eq!(knit_pattern(&t, &s, &[1, 2]).unwrap().gamma.len(), 3);
        assert!(matches!(knit_pattern(&t, &s, &[1, 1]), Err(Error::InvalidDimensionVector(_))));
        let c = knit_and_knot(&t, &s, &[1, 2]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(dims_on_section(&c, &s).values, vec![1, 2]);
    }

    #[test]
    fn a1_single_residue() {
        let t = tree("A1");
        let s = Section::equioriented(&t);
        let c = knit_and_knot(&t, &s, &[1]).unwrap();
        assert_eq!(c.residues(), &[(0, 1)]);
        assert_eq!(dims_on_section(&c, &s).values, vec![1]);
    }
}
