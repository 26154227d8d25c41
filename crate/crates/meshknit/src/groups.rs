//! Admissible automorphism groups of ZT_C and quotient translation quivers.

use serde::{Deserialize, Serialize};

use crate::config::{Configuration, ZtAut};
use crate::dynkin::{DynkinTree, Family, TreeAutomorphism};
use crate::error::{Error, Result};
use crate::quiver::{Ambient, Point, QuiverWindow, StablePoint};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Twist {
    None,
    Auto(TreeAutomorphism),
    /// The glide reflection ρ of ZA_{2n} with ρ² = τ.
    Glide,
}

/// The infinite cyclic group generated by `τ^r ∘ twist`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdmissibleGroup {
    pub tau_power: i64,
    pub twist: Twist,
}

impl AdmissibleGroup {
    pub fn tau(r: i64) -> Self {
        AdmissibleGroup { tau_power: r, twist: Twist::None }
    }

    pub fn twisted(r: i64, g: TreeAutomorphism) -> Self {
        AdmissibleGroup { tau_power: r, twist: Twist::Auto(g) }
    }

    pub fn glide(r: i64) -> Self {
        AdmissibleGroup { tau_power: r, twist: Twist::Glide }
    }

    /// The generator as an automorphism of ZT. Tree automorphisms are lifted with
    /// height shift equal to their parity change, which is 0 for every twist of the table.
    pub fn generator(&self, t: &DynkinTree) -> Result<ZtAut> {
        let tau = ZtAut::tau(t, self.tau_power);
        let twist = match &self.twist {
            Twist::None => ZtAut::identity(t),
            Twist::Auto(g) => {
                if !g.preserves_edges(t) || g.images().len() != t.rank() {
                    return Err(Error::NotAdmissible(format!("{:?} is not an automorphism of {t}", g.images())));
                }
                ZtAut::new(t, g.parity_shift(t), g.clone())?
            }
            Twist::Glide => {
                if t.family() != Family::A || !t.rank().is_multiple_of(2) {
                    return Err(Error::NotAdmissible(format!("no glide reflection on Z{t}")));
                }
                ZtAut::new(t, -1, t.automorphisms().generators[0].clone())?
            }
        };
        Ok(tau.compose(&twist))
    }

    pub fn describe(&self) -> String {
        match &self.twist {
            Twist::None => format!("tau^{}", self.tau_power),
            Twist::Auto(g) => format!("tau^{} g{:?}", self.tau_power, g.images()),
            Twist::Glide => format!("tau^{} rho", self.tau_power),
        }
    }
}

/// The groups of the classification table for `(T, C)`, for multipliers `s = 1..=s_max`:
/// `⟨τ^{se}⟩` with `e` the period of C, and `⟨τ^{sL} g⟩` for every nontrivial tree
/// automorphism `g` stabilizing C (none for `A_{2n}`, whose flip is not a lift of height 0).
pub fn table_groups(t: &DynkinTree, c: &Configuration, s_max: i64) -> Vec<AdmissibleGroup> {
    let e = c.period() as i64;
    let l = t.loewy_number() as i64;
    let mut out: Vec<AdmissibleGroup> = (1..=s_max).map(|s| AdmissibleGroup::tau(s * e)).collect();
    let even_a = t.family() == Family::A && t.rank().is_multiple_of(2);
    if !even_a {
        for g in t.automorphisms().elements.into_iter().filter(|g| !g.is_identity()) {
            let lift = ZtAut::new(t, g.parity_shift(t), g.clone()).expect("parity lift");
            if c.is_stabilized_by(&lift) {
                out.extend((1..=s_max).map(|s| AdmissibleGroup::twisted(s * l, g.clone())));
            }
        }
    }
    out
}

fn g_power_maps(t: &DynkinTree, g: &ZtAut, u: Point, v: Point) -> bool {
    if u.is_projective() != v.is_projective() {
        return false;
    }
    let dh = v.height(t) - u.height(t);
    if dh % g.shift != 0 {
        return false;
    }
    g.pow(dh / g.shift).apply_point(t, u) == v
}

/// Checks that no g-orbit meets `{x} ∪ x⁺` or `{x} ∪ x⁻` twice, over one fundamental domain.
pub fn is_admissible(group: &AdmissibleGroup, window: &QuiverWindow) -> Result<bool> {
    let t = window.tree();
    let g = group.generator(t)?;
    if g.shift == 0 {
        return Ok(false);
    }
    if let Some(c) = window.config() {
        if !c.is_stabilized_by(&g) {
            return Ok(false);
        }
    }
    let need = (g.shift.abs() + 1) / 2 + 2;
    if window.slice_count() < need {
        return Err(Error::WindowTooSmall(format!("need {need} slices for {}, window has {}", group.describe(), window.slice_count())));
    }
    let amb = &window.ambient;
    for u in fundamental_points(amb, g.shift.abs()) {
        for nbhd in [amb.successors(u), amb.predecessors(u)] {
            let mut set = vec![u];
            set.extend(nbhd);
            for a in 0..set.len() {
                for b in a + 1..set.len() {
                    if set[a] != set[b] && g_power_maps(t, &g, set[a], set[b]) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Points of ZT_C with height in `0..span`.
fn fundamental_points(amb: &Ambient, span: i64) -> Vec<Point> {
    let t = &amb.tree;
    let mut out = Vec::new();
    for h in 0..span {
        for x in t.vertices() {
            if let Some(p) = StablePoint::at_height(t, x, h) {
                out.push(Point::Stable(p));
            }
            if let Some(c) = StablePoint::at_height(t, x, h - 1) {
                if amb.in_config(c) {
                    out.push(Point::Proj(c));
                }
            }
        }
    }
    out.sort_by_key(|p| (p.height(t), *p));
    out
}

/// A finite translation quiver; arrows may repeat and form cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteQuiver {
    /// Orbit representatives, with height in `0..|c|`.
    pub points: Vec<Point>,
    pub arrows: Vec<(usize, usize)>,
    pub tau: Vec<Option<usize>>,
    pub projective: Vec<bool>,
}

pub fn quotient(window: &QuiverWindow, group: &AdmissibleGroup) -> Result<FiniteQuiver> {
    let t = window.tree();
    let g = group.generator(t)?;
    let need = 2 * ((g.shift.abs() + 1) / 2);
    if window.slice_count() < need {
        return Err(Error::WindowTooSmall(format!("quotient needs {need} slices")));
    }
    if !is_admissible(group, window)? {
        return Err(Error::NotAdmissible(group.describe()));
    }
    let amb = &window.ambient;
    let span = g.shift.abs();
    let points = fundamental_points(amb, span);
    let rep = |p: Point| -> usize {
        let h = p.height(t);
        let k = h.div_euclid(span) * span / g.shift;
        let r = g.pow(-k).apply_point(t, p);
        points.binary_search_by_key(&(r.height(t), r), |q| (q.height(t), *q)).expect("representative in domain")
    };
    let mut arrows = Vec::new();
    for (k, &p) in points.iter().enumerate() {
        for q in amb.successors(p) {
            arrows.push((k, rep(q)));
        }
    }
    arrows.sort_unstable();
    let tau = points.iter().map(|&p| amb.tau(p).map(rep)).collect();
    let projective = points.iter().map(|p| p.is_projective()).collect();
    Ok(FiniteQuiver { points, arrows, tau, projective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::build_window;

    fn tree(s: &str) -> DynkinTree {
        s.parse().unwrap()
    }

    #[test]
    fn a2_examples() {
        let t = tree("A2");
        let w = build_window(&t, None, -2, 3).unwrap();
        assert!(is_admissible(&AdmissibleGroup::tau(1), &w).unwrap());
        assert!(!is_admissible(&AdmissibleGroup::glide(0), &w).unwrap());
        let q = quotient(&w, &AdmissibleGroup::tau(1)).unwrap();
        assert_eq!(q.points.len(), 2);
        assert_eq!(q.arrows, vec![(0, 1), (1, 0)]);
        assert!(matches!(quotient(&w, &AdmissibleGroup::glide(0)), Err(Error::NotAdmissible(_))));
        let small = build_window(&t, None, 0, 1).unwrap();
        assert!(matches!(is_admissible(&AdmissibleGroup::tau(3), &small), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn a4_table() {
        let t = tree("A4");
        let c = Configuration::new(&t, vec![(0, 1), (2, 1), (0, 3), (2, 3)]).unwrap();
        assert_eq!(table_groups(&t, &c, 2), vec![AdmissibleGroup::tau(2), AdmissibleGroup::tau(4)]);
    }

    #[test]
    fn e7_table() {
        let t = tree("E7");
        let c = Configuration::new(&t, (1..=7).map(|x| (0, x))).unwrap();
        assert_eq!(table_groups(&t, &c, 1), vec![AdmissibleGroup::tau(17)]);
    }
}
