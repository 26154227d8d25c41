//! Quivers with relations for the algebras attached to configurations.
//!
//! Paths are lists of arrow labels in traversal order: `[a, b]` is `a` followed by `b`.

pub mod ac;
pub mod brauer;

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, Reducer, Q};

pub use ac::{
    cartan_matrix, fundamental_algebras, is_fundamental, pattern_algebra, quiver_of_ac, reflect_fundamental,
    trivial_extension_presentation, Direction, FundamentalAlgebra,
};
pub use brauer::{
    brauer_from_pedigree, brauer_presentation, d3m_quotient_presentations, exceptional_cycle_presentation,
    pedigree_from_brauer, BrauerQuiver, CycleKind, CycleRef,
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub from: String,
    pub to: String,
    pub label: String,
    /// In a periodic presentation: the arrow ends in the `ν^{-shift}` copy of `to`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Relation {
    Zero { path: Vec<String> },
    Commute { lhs: Vec<String>, rhs: Vec<String> },
    /// `lhs = rhs + a · extra`
    ScaledCommute { lhs: Vec<String>, rhs: Vec<String>, extra: Vec<String>, a: u8 },
    /// `lhs^m = rhs`
    PowerCommute { lhs: Vec<String>, m: usize, rhs: Vec<String> },
}

impl Relation {
    /// The relation as a signed combination of paths, all parallel.
    pub fn terms(&self) -> Vec<(i64, Vec<String>)> {
        match self {
            Relation::Zero { path } => vec![(1, path.clone())],
            Relation::Commute { lhs, rhs } => vec![(1, lhs.clone()), (-1, rhs.clone())],
            Relation::ScaledCommute { lhs, rhs, extra, a } => {
                let mut t = vec![(1, lhs.clone()), (-1, rhs.clone())];
                if *a != 0 {
                    t.push((-i64::from(*a), extra.clone()));
                }
                t
            }
            Relation::PowerCommute { lhs, m, rhs } => vec![(1, lhs.iter().cycle().take(lhs.len() * m).cloned().collect()), (-1, rhs.clone())],
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Relation::Zero { .. } => "zero",
            Relation::Commute { .. } => "commute",
            Relation::ScaledCommute { .. } => "scaled_commute",
            Relation::PowerCommute { .. } => "power_commute",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverPresentation {
    pub points: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    /// `Some("nu")` for the ν-periodic quiver of A(C): the listed points are one
    /// fundamental domain and `Arrow::shift` says which copy an arrow ends in.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodic: Option<String>,
}

impl QuiverPresentation {
    pub fn arrow(&self, label: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.label == label)
    }

    /// Start, end and total shift of a path.
    pub fn endpoints(&self, path: &[String]) -> Result<(String, String, i64)> {
        let first = path.first().ok_or_else(|| Error::InvalidPresentation("empty path".into()))?;
        let mut cur = self.arrow(first).ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow {first}")))?;
        let start = cur.from.clone();
        let mut shift = cur.shift.unwrap_or(0);
        for label in &path[1..] {
            let next = self.arrow(label).ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow {label}")))?;
            if next.from != cur.to {
                return Err(Error::InvalidPresentation(format!("{} does not compose with {}", cur.label, next.label)));
            }
            shift += next.shift.unwrap_or(0);
            cur = next;
        }
        Ok((start, cur.to.clone(), shift))
    }

    /// Every relation path is composable and all terms of a relation are parallel.
    pub fn validate(&self) -> Result<()> {
        for a in &self.arrows {
            if !self.points.contains(&a.from) || !self.points.contains(&a.to) {
                return Err(Error::InvalidPresentation(format!("arrow {} has an unknown endpoint", a.label)));
            }
        }
        for r in &self.relations {
            let ends: Vec<(String, String, i64)> = r.terms().iter().map(|(_, p)| self.endpoints(p)).collect::<Result<_>>()?;
            if ends.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::InvalidPresentation(format!("terms of a {} relation are not parallel", r.kind())));
            }
        }
        Ok(())
    }

    /// Forgets the periodic structure: the quotient by ν.
    pub fn fold(&self) -> QuiverPresentation {
        QuiverPresentation {
            points: self.points.clone(),
            arrows: self.arrows.iter().map(|a| Arrow { shift: None, ..a.clone() }).collect(),
            relations: self.relations.clone(),
            periodic: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    pub labels: Vec<String>,
    /// `entries[p][q]`: dimension of the morphism space from `p` to `q`.
    pub entries: Vec<Vec<u64>>,
}

impl CartanMatrix {
    pub fn get(&self, p: &str, q: &str) -> Option<u64> {
        let i = self.labels.iter().position(|l| l == p)?;
        let j = self.labels.iter().position(|l| l == q)?;
        Some(self.entries[i][j])
    }

    pub fn diagonal(&self) -> Vec<u64> {
        (0..self.labels.len()).map(|i| self.entries[i][i]).collect()
    }

    /// True when some relabelling turns `self` into `other`.
    pub fn equivalent(&self, other: &CartanMatrix) -> bool {
        let n = self.labels.len();
        if n != other.labels.len() {
            return false;
        }
        fn go(a: &CartanMatrix, b: &CartanMatrix, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = perm.len();
            if k == a.labels.len() {
                return true;
            }
            for j in 0..b.labels.len() {
                if used[j] {
                    continue;
                }
                let fits = (0..k).all(|i| a.entries[i][k] == b.entries[perm[i]][j] && a.entries[k][i] == b.entries[j][perm[i]])
                    && a.entries[k][k] == b.entries[j][j];
                if fits {
                    perm.push(j);
                    used[j] = true;
                    if go(a, b, perm, used) {
                        return true;
                    }
                    perm.pop();
                    used[j] = false;
                }
            }
            false
        }
        go(self, other, &mut Vec::new(), &mut vec![false; n])
    }
}

/// Cartan matrix of a finite presentation by linear algebra in the path algebra.
///
/// The quotient `kQ / (I + J^{N+1})` is computed for growing `N` until every path of
/// length `N` lies in the relation span, at which point `J^N ⊆ I` and the quotient is
/// `kQ/I` itself.
pub fn presentation_cartan(p: &QuiverPresentation, max_len: usize) -> Result<CartanMatrix> {
    if p.periodic.is_some() {
        return Err(Error::InvalidPresentation("fold a periodic presentation before computing its Cartan matrix".into()));
    }
    p.validate()?;
    let np = p.points.len();
    let pidx: HashMap<&str, usize> = p.points.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let aidx: HashMap<&str, usize> = p.arrows.iter().enumerate().map(|(i, a)| (a.label.as_str(), i)).collect();
    let src: Vec<usize> = p.arrows.iter().map(|a| pidx[a.from.as_str()]).collect();
    let dst: Vec<usize> = p.arrows.iter().map(|a| pidx[a.to.as_str()]).collect();
    let mut out_arrows = vec![Vec::new(); np];
    for (k, &s) in src.iter().enumerate() {
        out_arrows[s].push(k);
    }
    let relations: Vec<(usize, usize, Vec<(i64, Vec<usize>)>)> = p
        .relations
        .iter()
        .map(|r| {
            let terms: Vec<(i64, Vec<usize>)> =
                r.terms().into_iter().map(|(c, path)| (c, path.iter().map(|l| aidx[l.as_str()]).collect())).collect();
            let first = &terms[0].1;
            (src[first[0]], dst[*first.last().unwrap()], terms)
        })
        .collect();

    for n in 1..=max_len {
        // paths_from[s]: every path of length ≤ n starting at s, grouped by end point
        let mut paths_from: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new(); np]; np];
        for s in 0..np {
            let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
            paths_from[s][s].push(Vec::new());
            for _ in 0..n {
                let mut next = Vec::new();
                for path in &layer {
                    let end = path.last().map_or(s, |&a| dst[a]);
                    for &a in &out_arrows[end] {
                        let mut ext = path.clone();
                        ext.push(a);
                        paths_from[s][dst[a]].push(ext.clone());
                        next.push(ext);
                    }
                }
                layer = next;
            }
        }
        let mut entries = vec![vec![0u64; np]; np];
        let mut saturated = true;
        for s in 0..np {
            for t in 0..np {
                let cols = &paths_from[s][t];
                if cols.is_empty() {
                    continue;
                }
                let col_of: HashMap<&[usize], usize> = cols.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
                let mut rows: Vec<Vec<Q>> = Vec::new();
                for (rs, rt, terms) in &relations {
                    for u in &paths_from[s][*rs] {
                        for v in &paths_from[*rt][t] {
                            let mut row = vec![Q::zero(); cols.len()];
                            let mut any = false;
                            for (coef, term) in terms {
                                let mut w = u.clone();
                                w.extend(term);
                                w.extend(v);
                                if let Some(&c) = col_of.get(w.as_slice()) {
                                    row[c] += q(*coef);
                                    any = true;
                                }
                            }
                            if any {
                                rows.push(row);
                            }
                        }
                    }
                }
                let red = Reducer::new(rows, cols.len());
                entries[s][t] = (cols.len() - red.dim()) as u64;
                for (i, c) in cols.iter().enumerate() {
                    if c.len() == n {
                        let mut v = vec![Q::zero(); cols.len()];
                        v[i] = q(1);
                        red.reduce(&mut v);
                        if !v.iter().all(|x| x.is_zero()) {
                            saturated = false;
                        }
                    }
                }
            }
        }
        if saturated {
            return Ok(CartanMatrix { labels: p.points.clone(), entries });
        }
    }
    Err(Error::InvalidPresentation(format!("radical not nilpotent below length {max_len}")))
}

/// Number of arrows between each ordered pair of points.
pub fn arrow_counts(p: &QuiverPresentation) -> BTreeMap<(String, String), usize> {
    let mut out = BTreeMap::new();
    for a in &p.arrows {
        *out.entry((a.from.clone(), a.to.clone())).or_insert(0) += 1;
    }
    out
}
