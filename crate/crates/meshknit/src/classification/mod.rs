//! Enumeration of configurations: pattern vectors, exhaustive C1/C2 search, orbit classes,
//! and the corner analysis of type D.

pub mod check;
pub mod orbits;
pub mod patterns;
pub mod pedigree;
pub mod search;

use serde::Serialize;

pub use check::{check_combinatorial_configuration, Axiom, CheckReport, ResidueGraph};
pub use orbits::{acting_set, canonical_form, ConfigurationClass};
pub use pedigree::{enumerate_pedigrees, pedigree_dimension_vector, pedigree_from_dims, Pedigree};

use crate::config::Configuration;
use crate::dynkin::{DynkinTree, Family};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::quiver::StablePoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Patterns,
    Bruteforce,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "patterns" => Ok(Method::Patterns),
            "bruteforce" => Ok(Method::Bruteforce),
            _ => Err(Error::InvalidConfiguration(format!("unknown method {s}"))),
        }
    }
}

/// All configurations of ZT, sorted by residue list.
pub fn enumerate_configurations(t: &DynkinTree, method: Method, exec_mode: Exec) -> Vec<Configuration> {
    match method {
        Method::Patterns => patterns::pattern_configurations(t, exec_mode),
        Method::Bruteforce => search::bruteforce_configurations(&ResidueGraph::new(t), exec_mode),
    }
}

pub fn configurations_up_to_aut(t: &DynkinTree, exec_mode: Exec) -> Vec<ConfigurationClass> {
    orbits::classes(&enumerate_configurations(t, Method::Patterns, exec_mode))
}

/// Catalan numbers by the pedigree recursion `P(n) = Σ P(i) P(n-1-i)`.
pub fn pedigree_count(n: usize) -> u64 {
    let mut p = vec![1u64; n + 1];
    for m in 1..=n {
        p[m] = (0..m).map(|i| p[i] * p[m - 1 - i]).sum();
    }
    p[n]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerCount {
    pub h: usize,
    pub high_points: Vec<StablePoint>,
    /// Two high points share their slice, three have pairwise different slices.
    pub slice_condition: bool,
}

/// High points `(i, x)` with `x ≥ n - 1` of a D_n configuration (n ≥ 5) in `0 ≤ i < L`.
pub fn dn_corner_count(c: &Configuration) -> Result<CornerCount> {
    let t = c.tree();
    let n = t.rank();
    if t.family() != Family::D || n < 5 {
        return Err(Error::WrongFamily(format!("corner count needs D_n with n >= 5, got {t}")));
    }
    let high_points: Vec<StablePoint> =
        c.residues().iter().filter(|&&(_, x)| x >= n - 1).map(|&(i, x)| StablePoint::new(i, x)).collect();
    let h = high_points.len();
    let mut slices: Vec<i64> = high_points.iter().map(|p| p.slice).collect();
    slices.sort_unstable();
    slices.dedup();
    let slice_condition = match h {
        2 => slices.len() == 1,
        3 => slices.len() == 3,
        _ => false,
    };
    Ok(CornerCount { h, high_points, slice_condition })
}
