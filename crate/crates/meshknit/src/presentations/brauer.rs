//! Brauer quivers, their algebras, the exceptional-cycle variants and the D_{3m}
//! quotients A(0), A(1).
//!
//! A Brauer quiver on points `1..=n` is stored as two permutations: `alpha[v-1]` is the
//! α-successor of `v` and `beta[v-1]` its β-successor, a fixed point being a loop. The
//! α-arrow out of `v` is labelled `a{v}`, the β-arrow `b{v}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Arrow, QuiverPresentation, Relation};
use crate::classification::Pedigree;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleKind {
    Alpha,
    Beta,
}

impl CycleKind {
    fn prefix(self) -> char {
        match self {
            CycleKind::Alpha => 'a',
            CycleKind::Beta => 'b',
        }
    }

    fn other(self) -> CycleKind {
        match self {
            CycleKind::Alpha => CycleKind::Beta,
            CycleKind::Beta => CycleKind::Alpha,
        }
    }
}

/// The cycle of the given kind through a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRef {
    pub kind: CycleKind,
    pub point: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrauerQuiver {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    /// A distinguished arrow `(kind, source)`, used as the special arrow γ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special: Option<(CycleKind, usize)>,
}

fn arrow_label(kind: CycleKind, v: usize) -> String {
    format!("{}{v}", kind.prefix())
}

impl BrauerQuiver {
    pub fn new(alpha: Vec<usize>, beta: Vec<usize>) -> Result<Self> {
        let q = BrauerQuiver { alpha, beta, special: None };
        q.validate()?;
        Ok(q)
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn succ(&self, kind: CycleKind, v: usize) -> usize {
        match kind {
            CycleKind::Alpha => self.alpha[v - 1],
            CycleKind::Beta => self.beta[v - 1],
        }
    }

    pub fn pred(&self, kind: CycleKind, v: usize) -> usize {
        (1..=self.len()).find(|&u| self.succ(kind, u) == v).expect("permutation")
    }

    pub fn is_loop(&self, kind: CycleKind, v: usize) -> bool {
        self.succ(kind, v) == v
    }

    /// Points of the cycle of `kind` through `v`, starting at `v`.
    pub fn cycle(&self, kind: CycleKind, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = self.succ(kind, v);
        while cur != v {
            out.push(cur);
            cur = self.succ(kind, cur);
        }
        out
    }

    /// All cycles, each listed from its least point.
    pub fn cycles(&self) -> Vec<(CycleKind, Vec<usize>)> {
        let mut out = Vec::new();
        for kind in [CycleKind::Alpha, CycleKind::Beta] {
            for v in 1..=self.len() {
                let c = self.cycle(kind, v);
                if c.iter().min() == Some(&v) {
                    out.push((kind, c));
                }
            }
        }
        out
    }

    /// Permutations, at most one common point for any two cycles, and a tree of cycles.
    pub fn validate(&self) -> Result<()> {
        let n = self.alpha.len();
        if n == 0 || self.beta.len() != n {
            return Err(Error::InvalidBrauer("alpha and beta must be permutations of the same nonempty point set".into()));
        }
        for perm in [&self.alpha, &self.beta] {
            let set: BTreeSet<usize> = perm.iter().copied().collect();
            if set.len() != n || set.iter().any(|&v| v == 0 || v > n) {
                return Err(Error::InvalidBrauer(format!("{perm:?} is not a permutation of 1..={n}")));
            }
        }
        let cycles = self.cycles();
        for (i, (_, a)) in cycles.iter().enumerate() {
            for (_, b) in &cycles[i + 1..] {
                if a.iter().filter(|v| b.contains(v)).count() > 1 {
                    return Err(Error::InvalidBrauer(format!("cycles {a:?} and {b:?} share more than one point")));
                }
            }
        }
        if cycles.len() != n + 1 {
            return Err(Error::InvalidBrauer(format!("{} cycles on {n} points: the cycle graph is not a tree", cycles.len())));
        }
        // the incidence graph points–cycles has n + |cycles| vertices and 2n edges
        let mut seen_pts = vec![false; n];
        let mut seen_cyc = vec![false; cycles.len()];
        let mut stack = vec![1usize];
        seen_pts[0] = true;
        while let Some(v) = stack.pop() {
            for (k, (_, c)) in cycles.iter().enumerate() {
                if !seen_cyc[k] && c.contains(&v) {
                    seen_cyc[k] = true;
                    for &w in c {
                        if !seen_pts[w - 1] {
                            seen_pts[w - 1] = true;
                            stack.push(w);
                        }
                    }
                }
            }
        }
        if seen_pts.iter().any(|s| !s) {
            return Err(Error::InvalidBrauer("quiver is not connected".into()));
        }
        if let Some((kind, v)) = self.special {
            if v == 0 || v > n || self.is_loop(kind, v) {
                return Err(Error::InvalidBrauer(format!("special arrow {} is not an arrow", arrow_label(kind, v))));
            }
        }
        Ok(())
    }

    /// The non-loop arrows `(kind, source, target)`.
    pub fn arrows(&self) -> Vec<(CycleKind, usize, usize)> {
        let mut out = Vec::new();
        for kind in [CycleKind::Alpha, CycleKind::Beta] {
            for v in 1..=self.len() {
                if !self.is_loop(kind, v) {
                    out.push((kind, v, self.succ(kind, v)));
                }
            }
        }
        out
    }

    /// `ζ(x, Z)`: once around the cycle of `kind` from `x`, as arrow labels.
    pub fn zeta(&self, kind: CycleKind, x: usize) -> Vec<String> {
        self.cycle(kind, x).into_iter().map(|v| arrow_label(kind, v)).collect()
    }

    /// The arrow `(kind, x)` is special: it lies on a cycle of length at least 3 and both
    /// of its end points lie on no other cycle of the reduced quiver.
    pub fn is_special(&self, kind: CycleKind, x: usize) -> bool {
        if self.is_loop(kind, x) {
            return false;
        }
        let y = self.succ(kind, x);
        self.cycle(kind, x).len() >= 3 && self.is_loop(kind.other(), x) && self.is_loop(kind.other(), y)
    }

    /// The marked special arrow if any, else the first special arrow (α before β, by source).
    pub fn special_arrow(&self) -> Result<(CycleKind, usize)> {
        if let Some((kind, v)) = self.special {
            return if self.is_special(kind, v) {
                Ok((kind, v))
            } else {
                Err(Error::NoSpecialArrow(format!("{} is not special", arrow_label(kind, v))))
            };
        }
        [CycleKind::Alpha, CycleKind::Beta]
            .into_iter()
            .flat_map(|k| (1..=self.len()).map(move |v| (k, v)))
            .find(|&(k, v)| self.is_special(k, v))
            .ok_or_else(|| Error::NoSpecialArrow("no arrow on a cycle of length >= 3 joins two points of order 2".into()))
    }
}

/// α-strings become α-cycles closed from their last point back to the first; β-arrows
/// point from child to parent and each β-string is closed from its top to its deepest point.
pub fn brauer_from_pedigree(p: &Pedigree) -> Result<BrauerQuiver> {
    let n = p.size();
    if n < 2 {
        return Err(Error::TooSmall);
    }
    let mut alpha: Vec<usize> = (1..=n).collect();
    let mut beta: Vec<usize> = (1..=n).collect();
    let edges = p.edges();
    let alpha_child = |v: usize| edges.iter().find(|e| e.1 == v && e.2).map(|e| e.0);
    let beta_child = |v: usize| edges.iter().find(|e| e.1 == v && !e.2).map(|e| e.0);
    let is_alpha_child = |v: usize| edges.iter().any(|e| e.0 == v && e.2);
    let is_beta_child = |v: usize| edges.iter().any(|e| e.0 == v && !e.2);
    for top in 1..=n {
        if !is_alpha_child(top) && alpha_child(top).is_some() {
            let mut cur = top;
            while let Some(next) = alpha_child(cur) {
                alpha[cur - 1] = next;
                cur = next;
            }
            alpha[cur - 1] = top;
        }
        if !is_beta_child(top) && beta_child(top).is_some() {
            let mut cur = top;
            while let Some(next) = beta_child(cur) {
                beta[next - 1] = cur;
                cur = next;
            }
            beta[top - 1] = cur;
        }
    }
    BrauerQuiver::new(alpha, beta)
}

/// Walks from ω using α-arrows away from ω and β-arrows towards it, never revisiting a point.
pub fn pedigree_from_brauer(q: &BrauerQuiver, omega: usize) -> Result<Pedigree> {
    q.validate()?;
    if omega == 0 || omega > q.len() {
        return Err(Error::InvalidBrauer(format!("point {omega} does not exist")));
    }
    fn walk(q: &BrauerQuiver, v: usize, seen: &mut [bool]) -> Pedigree {
        let a = q.succ(CycleKind::Alpha, v);
        let alpha = (a != v && !seen[a - 1]).then_some(a);
        let b = q.pred(CycleKind::Beta, v);
        let beta = (b != v && !seen[b - 1]).then_some(b);
        for c in alpha.iter().chain(beta.iter()) {
            seen[c - 1] = true;
        }
        let beta_tree = beta.map(|b| walk(q, b, seen));
        let alpha_tree = alpha.map(|a| walk(q, a, seen));
        Pedigree::with(beta_tree, alpha_tree)
    }
    let mut seen = vec![false; q.len()];
    seen[omega - 1] = true;
    let p = walk(q, omega, &mut seen);
    if p.size() != q.len() {
        return Err(Error::InvalidBrauer(format!("walks from {omega} reach {} of {} points", p.size(), q.len())));
    }
    Ok(p)
}

fn points(n: usize) -> Vec<String> {
    (1..=n).map(|v| v.to_string()).collect()
}

fn arrow(kind: CycleKind, from: usize, to: usize) -> Arrow {
    Arrow { from: from.to_string(), to: to.to_string(), label: arrow_label(kind, from), shift: None }
}

/// Zero relations on every path of length two changing the cycle.
fn crossing_zeros(q: &BrauerQuiver, keep_loop: Option<(CycleKind, usize)>) -> Vec<Relation> {
    let kept = |k: CycleKind, v: usize| !q.is_loop(k, v) || keep_loop == Some((k, v));
    let mut out = Vec::new();
    for k1 in [CycleKind::Alpha, CycleKind::Beta] {
        for v in 1..=q.len() {
            if !kept(k1, v) {
                continue;
            }
            let w = q.succ(k1, v);
            let k2 = k1.other();
            if kept(k2, w) {
                out.push(Relation::Zero { path: vec![arrow_label(k1, v), arrow_label(k2, w)] });
            }
        }
    }
    out
}

/// `B(Q)` on the reduced quiver: length-two paths leaving a cycle vanish,
/// `ζ(x, Z) = ζ(x, Z')` where both cycles are proper, and each `ζ(x, Z)` is killed by arrows.
pub fn brauer_presentation(q: &BrauerQuiver) -> Result<QuiverPresentation> {
    exceptional_cycle_presentation(q, CycleRef { kind: CycleKind::Alpha, point: 1 }, 1)
}

/// `B_{m,Z}(Q)`: as `B(Q)` but with `ζ(x, Z)^m = ζ(x, Z')` for the points `x` of Z.
/// An exceptional loop with `m ≥ 2` stays in the quiver.
pub fn exceptional_cycle_presentation(q: &BrauerQuiver, z: CycleRef, m: usize) -> Result<QuiverPresentation> {
    q.validate()?;
    if q.len() < 2 {
        return Err(Error::TooSmall);
    }
    if m == 0 || z.point == 0 || z.point > q.len() {
        return Err(Error::InvalidBrauer("exceptional cycle needs a point of Q and m >= 1".into()));
    }
    let zpts = q.cycle(z.kind, z.point);
    let exceptional = |k: CycleKind, v: usize| m > 1 && k == z.kind && zpts.contains(&v);
    let keep_loop = (m > 1 && zpts.len() == 1).then_some((z.kind, z.point));
    let kept = |k: CycleKind, v: usize| !q.is_loop(k, v) || keep_loop == Some((k, v));
    let mut arrows: Vec<Arrow> = q.arrows().into_iter().map(|(k, v, w)| arrow(k, v, w)).collect();
    if let Some((k, v)) = keep_loop {
        arrows.push(arrow(k, v, v));
    }
    let mut relations = crossing_zeros(q, keep_loop);
    for x in 1..=q.len() {
        let (ka, kb) = (CycleKind::Alpha, CycleKind::Beta);
        let power = |k: CycleKind| if exceptional(k, x) { q.zeta(k, x).iter().cycle().take(m * q.cycle(k, x).len()).cloned().collect() } else { q.zeta(k, x) };
        if kept(ka, x) && kept(kb, x) {
            if exceptional(ka, x) || exceptional(kb, x) {
                let (e, o) = if exceptional(ka, x) { (ka, kb) } else { (kb, ka) };
                relations.push(Relation::PowerCommute { lhs: q.zeta(e, x), m, rhs: q.zeta(o, x) });
            } else {
                relations.push(Relation::Commute { lhs: q.zeta(ka, x), rhs: q.zeta(kb, x) });
            }
        }
        for k in [ka, kb] {
            if kept(k, x) {
                let mut path = power(k);
                path.push(arrow_label(k, x));
                relations.push(Relation::Zero { path });
            }
        }
    }
    let p = QuiverPresentation { points: points(q.len()), arrows, relations, periodic: None };
    p.validate()?;
    Ok(p)
}

/// The presentations A(0) and A(1) on the quiver Q̄ obtained from Q by identifying the
/// end points of the special arrow γ: x → c0, which becomes a loop at c0.
///
/// With `Z1 = c0 → c1 → … → c_{t-1} → x → c0` and `α_i` the arrow out of `c_{i-1}`:
/// R1(a) `α_1 ⋯ α_t = γ² + a γ³` (plus `γ⁴ = 0` for a ≠ 0), R2 `α_t α_1 = 0`, R3 products
/// of arrows of different kinds vanish, R4 `ζ(p, Z)` is killed by arrows for `p ≠ c0`,
/// R5 `ζ(p, Z) = ζ(p, Z')` for `p ≠ c0` on two cycles. Paths are in traversal order.
pub fn d3m_quotient_presentations(q: &BrauerQuiver) -> Result<(QuiverPresentation, QuiverPresentation)> {
    q.validate()?;
    let (kind, x) = q.special_arrow()?;
    let c0 = q.succ(kind, x);
    let z1 = q.cycle(kind, c0);
    let t = z1.len() - 1;
    let name = |v: usize| if v == x { c0.to_string() } else { v.to_string() };
    let gamma = "gamma".to_string();
    let label = |k: CycleKind, v: usize| if k == kind && v == x { gamma.clone() } else { arrow_label(k, v) };
    let pts: Vec<String> = (1..=q.len()).filter(|&v| v != x).map(|v| v.to_string()).collect();
    let arrows: Vec<Arrow> = q
        .arrows()
        .into_iter()
        .map(|(k, v, w)| Arrow { from: name(v), to: name(w), label: label(k, v), shift: None })
        .collect();
    // α_i leaves c_{i-1}; α_t leaves c_{t-1} and now ends in c0
    let alphas: Vec<String> = z1[..t].iter().map(|&v| label(kind, v)).collect();
    let mut base: Vec<Relation> = Vec::new();
    base.push(Relation::Zero { path: vec![alphas[t - 1].clone(), alphas[0].clone()] });
    let kind_of = |a: &Arrow| if a.label == gamma || a.label.starts_with(kind.prefix()) { kind } else { kind.other() };
    for a in &arrows {
        for b in &arrows {
            if a.to == b.from && kind_of(a) != kind_of(b) {
                base.push(Relation::Zero { path: vec![a.label.clone(), b.label.clone()] });
            }
        }
    }
    // cycles of Q̄ through p ≠ c0, as label paths from p
    let zeta_bar = |k: CycleKind, p: usize| -> Option<Vec<String>> {
        if k == kind && z1.contains(&p) {
            let i = z1.iter().position(|&v| v == p).unwrap();
            let mut path: Vec<String> = alphas[i..].to_vec();
            path.push(gamma.clone());
            path.extend_from_slice(&alphas[..i]);
            Some(path)
        } else if q.is_loop(k, p) {
            None
        } else {
            Some(q.zeta(k, p))
        }
    };
    for p in (1..=q.len()).filter(|&v| v != x && v != c0) {
        let zs: Vec<Vec<String>> = [CycleKind::Alpha, CycleKind::Beta].into_iter().filter_map(|k| zeta_bar(k, p)).collect();
        let ps = p.to_string();
        for z in &zs {
            for a in arrows.iter().filter(|a| a.from == ps) {
                let mut path = z.clone();
                path.push(a.label.clone());
                base.push(Relation::Zero { path });
            }
            for a in arrows.iter().filter(|a| a.to == ps) {
                let mut path = vec![a.label.clone()];
                path.extend(z.iter().cloned());
                base.push(Relation::Zero { path });
            }
        }
        if zs.len() == 2 {
            base.push(Relation::Commute { lhs: zs[0].clone(), rhs: zs[1].clone() });
        }
    }
    let build = |a: u8| -> Result<QuiverPresentation> {
        let mut relations = vec![Relation::ScaledCommute {
            lhs: alphas.clone(),
            rhs: vec![gamma.clone(); 2],
            extra: vec![gamma.clone(); 3],
            a,
        }];
        if a != 0 {
            relations.push(Relation::Zero { path: vec![gamma.clone(); 4] });
        }
        relations.extend(base.iter().cloned());
        let p = QuiverPresentation { points: pts.clone(), arrows: arrows.clone(), relations, periodic: None };
        p.validate()?;
        Ok(p)
    };
    Ok((build(0)?, build(1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::enumerate_pedigrees;
    use crate::presentations::presentation_cartan;

    #[test]
    fn two_point_chain() {
        let p = Pedigree::with(None, Some(Pedigree::leaf()));
        let q = brauer_from_pedigree(&p).unwrap();
        assert_eq!(q.alpha, vec![2, 1]);
        assert_eq!(q.beta, vec![1, 2]);
        for omega in 1..=2 {
            assert_eq!(pedigree_from_brauer(&q, omega).unwrap(), p);
        }
        assert_eq!(brauer_from_pedigree(&Pedigree::leaf()), Err(Error::TooSmall));
    }

    #[test]
    fn roundtrip_small() {
        for n in 2..=5 {
            for p in enumerate_pedigrees(n) {
                let q = brauer_from_pedigree(&p).unwrap();
                assert_eq!(pedigree_from_brauer(&q, p.root_label()).unwrap(), p);
            }
        }
    }

    #[test]
    fn invalid_quivers() {
        assert!(matches!(BrauerQuiver::new(vec![1, 2], vec![1, 2]), Err(Error::InvalidBrauer(_))));
        assert!(matches!(BrauerQuiver::new(vec![2, 1], vec![2, 1]), Err(Error::InvalidBrauer(_))));
        assert!(matches!(BrauerQuiver::new(vec![2, 2], vec![1, 2]), Err(Error::InvalidBrauer(_))));
    }

    #[test]
    fn plain_cartan() {
        let q = BrauerQuiver::new(vec![2, 3, 1], vec![1, 2, 3]).unwrap();
        let c = presentation_cartan(&brauer_presentation(&q).unwrap(), 12).unwrap();
        assert_eq!(c.entries, vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]);
    }

    #[test]
    fn d3m_smallest() {
        let q = BrauerQuiver::new(vec![2, 3, 1], vec![1, 2, 3]).unwrap();
        let (a0, a1) = d3m_quotient_presentations(&q).unwrap();
        assert_eq!(a0.points.len(), 2);
        for p in [&a0, &a1] {
            let c = presentation_cartan(p, 16).unwrap();
            let c0 = c.diagonal().iter().position(|&d| d == 4).expect("c0");
            let other = 1 - c0;
            assert_eq!(c.entries[other][other], 2);
            assert_eq!(c.entries[c0][other], 2);
            assert_eq!(c.entries[other][c0], 2);
        }
        let two_cycle = BrauerQuiver::new(vec![2, 1], vec![1, 2]).unwrap();
        assert!(matches!(d3m_quotient_presentations(&two_cycle), Err(Error::NoSpecialArrow(_))));
    }
}
