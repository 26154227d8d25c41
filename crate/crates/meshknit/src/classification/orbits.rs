//! Configurations up to automorphisms of ZT.
//!
//! Modulo τ^L the acting group is finite: pairs `(c, g)` with `g ∈ Aut(T̄)` and a height
//! shift `c` of the parity of `g`, taken mod `2L`. For `A_{2n}` the odd shifts paired
//! with the flip are the powers of the glide reflection.

use serde::Serialize;

use crate::config::{Configuration, ZtAut};
use crate::dynkin::DynkinTree;

pub fn acting_set(t: &DynkinTree) -> Vec<ZtAut> {
    let l2 = 2 * t.loewy_number() as i64;
    let mut out = Vec::new();
    for g in t.automorphisms().elements {
        let p = g.parity_shift(t);
        for c in (p..l2).step_by(2) {
            out.push(ZtAut::new(t, c, g.clone()).expect("parity respected"));
        }
    }
    out
}

/// Lexicographically least residue list over the acting set.
pub fn canonical_form(c: &Configuration, acting: &[ZtAut]) -> Configuration {
    acting.iter().map(|g| c.image(g)).min().expect("acting set contains the identity")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigurationClass {
    pub representative: Configuration,
    /// Elements `(c, g)` of the acting set fixing the representative, as `(height shift, images)`.
    pub stabilizer: Vec<(i64, Vec<usize>)>,
    pub orbit_size: usize,
}

/// Orbit classes of the given configurations, ordered by representative.
pub fn classes(configs: &[Configuration]) -> Vec<ConfigurationClass> {
    let Some(first) = configs.first() else {
        return Vec::new();
    };
    let t = first.tree();
    let acting = acting_set(t);
    let mut reps: Vec<(Configuration, usize)> = Vec::new();
    let mut forms: Vec<Configuration> = configs.iter().map(|c| canonical_form(c, &acting)).collect();
    forms.sort();
    for f in forms {
        match reps.last_mut() {
            Some((r, k)) if *r == f => *k += 1,
            _ => reps.push((f, 1)),
        }
    }
    reps.into_iter()
        .map(|(rep, orbit_size)| {
            let stabilizer = acting
                .iter()
                .filter(|g| rep.is_stabilized_by(g))
                .map(|g| (g.shift, g.perm.images().to_vec()))
                .collect();
            ConfigurationClass { representative: rep, stabilizer, orbit_size }
        })
        .collect()
}
