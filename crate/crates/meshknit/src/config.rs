//! Configurations (τ^L-periodic point sets stored by residues) and the automorphisms
//! of ZT that act on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynkin::{DynkinTree, TreeAutomorphism};
use crate::error::{Error, Result};
use crate::quiver::{Point, StablePoint};

/// An automorphism of ZT: height shift `c` combined with a tree automorphism `g`,
/// sending the point at height `h` over `x` to the point at height `h + c` over `g x`.
/// `c` must have the parity of `p(gx) - p(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZtAut {
    pub shift: i64,
    pub perm: TreeAutomorphism,
}

impl ZtAut {
    pub fn new(t: &DynkinTree, shift: i64, perm: TreeAutomorphism) -> Result<Self> {
        if (shift - perm.parity_shift(t)).rem_euclid(2) != 0 {
            return Err(Error::NotAdmissible(format!("height shift {shift} has the wrong parity for {:?}", perm.images())));
        }
        Ok(ZtAut { shift, perm })
    }

    /// `τ^k`
    pub fn tau(t: &DynkinTree, k: i64) -> Self {
        ZtAut { shift: -2 * k, perm: TreeAutomorphism::identity(t.rank()) }
    }

    pub fn identity(t: &DynkinTree) -> Self {
        ZtAut::tau(t, 0)
    }

    pub fn apply(&self, t: &DynkinTree, p: StablePoint) -> StablePoint {
        let y = self.perm.apply(p.vertex);
        StablePoint::at_height(t, y, p.height(t) + self.shift).expect("parity checked at construction")
    }

    /// Extends to ZT_C when the automorphism stabilizes C: `c* ↦ (g c)*`.
    pub fn apply_point(&self, t: &DynkinTree, p: Point) -> Point {
        match p {
            Point::Stable(s) => Point::Stable(self.apply(t, s)),
            Point::Proj(c) => Point::Proj(self.apply(t, c)),
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ZtAut) -> ZtAut {
        ZtAut { shift: self.shift + other.shift, perm: self.perm.compose(&other.perm) }
    }

    pub fn inverse(&self) -> ZtAut {
        ZtAut { shift: -self.shift, perm: self.perm.inverse() }
    }

    pub fn pow(&self, k: i64) -> ZtAut {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let m = k.unsigned_abs() as usize;
        ZtAut { shift: base.shift * m as i64, perm: base.perm.pow(m) }
    }
}

/// A configuration of ZT, stored by its residues `(i mod L, x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    tree: DynkinTree,
    residues: Vec<(i64, usize)>,
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    tree: DynkinTree,
    period: usize,
    points: Vec<(i64, usize)>,
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConfigJson { tree: self.tree.clone(), period: self.period_l(), points: self.residues.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ConfigJson::deserialize(d)?;
        if j.period != j.tree.loewy_number() {
            return Err(serde::de::Error::custom(format!(
                "period {} does not match L = {}",
                j.period,
                j.tree.loewy_number()
            )));
        }
        Configuration::new(&j.tree, j.points).map_err(serde::de::Error::custom)
    }
}

impl Configuration {
    /// Residues are reduced mod L, sorted and deduplicated.
    pub fn new(tree: &DynkinTree, points: impl IntoIterator<Item = (i64, usize)>) -> Result<Self> {
        let l = tree.loewy_number() as i64;
        let mut residues = Vec::new();
        for (i, x) in points {
            if x == 0 || x > tree.rank() {
                return Err(Error::InvalidConfiguration(format!("vertex {x} is not in {tree}")));
            }
            residues.push((i.rem_euclid(l), x));
        }
        residues.sort_unstable();
        residues.dedup();
        Ok(Configuration { tree: tree.clone(), residues })
    }

    pub fn from_points(tree: &DynkinTree, points: impl IntoIterator<Item = StablePoint>) -> Result<Self> {
        Configuration::new(tree, points.into_iter().map(|p| (p.slice, p.vertex)))
    }

    pub fn tree(&self) -> &DynkinTree {
        &self.tree
    }

    /// `L(T)`, the period of the residue storage.
    pub fn period_l(&self) -> usize {
        self.tree.loewy_number()
    }

    pub fn residues(&self) -> &[(i64, usize)] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, p: StablePoint) -> bool {
        let l = self.period_l() as i64;
        self.residues.binary_search(&(p.slice.rem_euclid(l), p.vertex)).is_ok()
    }

    /// All points of C with slice in `lo..=hi`, sorted.
    pub fn points_in_slices(&self, lo: i64, hi: i64) -> Vec<StablePoint> {
        let mut out = Vec::new();
        for i in lo..=hi {
            for x in self.tree.vertices() {
                let p = StablePoint::new(i, x);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// `τ^{-k} C`
    pub fn shifted(&self, k: i64) -> Configuration {
        Configuration::new(&self.tree, self.residues.iter().map(|&(i, x)| (i + k, x))).expect("same tree")
    }

    pub fn image(&self, g: &ZtAut) -> Configuration {
        Configuration::from_points(&self.tree, self.residues.iter().map(|&(i, x)| g.apply(&self.tree, StablePoint::new(i, x))))
            .expect("same tree")
    }

    pub fn is_stabilized_by(&self, g: &ZtAut) -> bool {
        &self.image(g) == self
    }

    /// Smallest `e > 0` with `τ^e C = C`; always a divisor of `L`.
    pub fn period(&self) -> usize {
        let l = self.period_l();
        (1..=l).filter(|e| l.is_multiple_of(*e)).find(|&e| self.shifted(e as i64) == *self).unwrap_or(l)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidConfiguration(e.to_string()))
    }
}

pub fn period(c: &Configuration) -> usize {
    c.period()
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.tree)?;
        for (k, (i, x)) in self.residues.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({i},{x})")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let t: DynkinTree = "A2".parse().unwrap();
        let c = Configuration::new(&t, vec![(3, 2), (0, 1)]).unwrap();
        assert_eq!(c.to_json(), r#"{"tree":{"family":"A","rank":2},"period":2,"points":[[0,1],[1,2]]}"#);
        assert_eq!(Configuration::from_json(&c.to_json()).unwrap(), c);
        assert!(Configuration::from_json(r#"{"tree":{"family":"A","rank":2},"period":3,"points":[]}"#).is_err());
        assert!(Configuration::from_json(r#"{"tree":{"family":"D","rank":3},"period":3,"points":[]}"#).is_err());
    }

    #[test]
    fn glide_squares_to_tau() {
        let t: DynkinTree = "A4".parse().unwrap();
        let flip = t.automorphisms().generators[0].clone();
        let rho = ZtAut::new(&t, -1, flip).unwrap();
        let rho2 = rho.compose(&rho);
        for i in -3..3 {
            for x in t.vertices() {
                let p = StablePoint::new(i, x);
                assert_eq!(rho2.apply(&t, p), p.tau(1));
                // ρ(i,x) = (i + x - n - 1, 2n + 1 - x) with n = 2
                assert_eq!(rho.apply(&t, p), StablePoint::new(i + x as i64 - 3, 5 - x));
            }
        }
    }

    #[test]
    fn automorphisms_preserve_arrows() {
        for name in ["A5", "D4", "D5", "E6"] {
            let t: DynkinTree = name.parse().unwrap();
            let amb = crate::quiver::Ambient::new(&t, None);
            for g in t.automorphisms().elements {
                let c = g.parity_shift(&t);
                let a = ZtAut::new(&t, c, g).unwrap();
                for x in t.vertices() {
                    let p = Point::stable(0, x);
                    let mut img: Vec<Point> = amb.successors(p).iter().map(|q| a.apply_point(&t, *q)).collect();
                    let mut direct = amb.successors(a.apply_point(&t, p));
                    img.sort();
                    direct.sort();
                    assert_eq!(img, direct, "{name}");
                }
            }
        }
    }

    #[test]
    fn period_divides_l() {
        let t: DynkinTree = "A4".parse().unwrap();
        let c = Configuration::new(&t, vec![(0, 1), (2, 1), (0, 3), (2, 3)]).unwrap();
        assert_eq!(c.period(), 2);
        let d = Configuration::new(&t, vec![(0, 1)]).unwrap();
        assert_eq!(d.period(), 4);
    }
}
