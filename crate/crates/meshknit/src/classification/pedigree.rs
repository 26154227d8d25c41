//! Pedigrees: rooted trees in which every node has at most one β-child and one α-child.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pedigree {
    pub beta: Option<Box<Pedigree>>,
    pub alpha: Option<Box<Pedigree>>,
}

impl Pedigree {
    pub fn leaf() -> Self {
        Pedigree::default()
    }

    pub fn with(beta: Option<Pedigree>, alpha: Option<Pedigree>) -> Self {
        Pedigree { beta: beta.map(Box::new), alpha: alpha.map(Box::new) }
    }

    pub fn size(&self) -> usize {
        1 + self.beta.as_ref().map_or(0, |b| b.size()) + self.alpha.as_ref().map_or(0, |a| a.size())
    }

    /// Nodes in walk order (β-subtree, node, α-subtree); entry `k` is the depth of the
    /// node labelled `k + 1`.
    pub fn depths(&self) -> Vec<usize> {
        fn go(p: &Pedigree, depth: usize, out: &mut Vec<usize>) {
            if let Some(b) = &p.beta {
                go(b, depth + 1, out);
            }
            out.push(depth);
            if let Some(a) = &p.alpha {
                go(a, depth + 1, out);
            }
        }
        let mut out = Vec::with_capacity(self.size());
        go(self, 0, &mut out);
        out
    }

    /// Label of the root in walk order.
    pub fn root_label(&self) -> usize {
        self.beta.as_ref().map_or(0, |b| b.size()) + 1
    }

    /// Parent links in walk-order labels: `(child, parent, is_alpha)`.
    pub fn edges(&self) -> Vec<(usize, usize, bool)> {
        fn go(p: &Pedigree, offset: usize, out: &mut Vec<(usize, usize, bool)>) -> usize {
            let bsize = p.beta.as_ref().map_or(0, |b| b.size());
            let me = offset + bsize + 1;
            if let Some(b) = &p.beta {
                let child = go(b, offset, out);
                out.push((child, me, false));
            }
            if let Some(a) = &p.alpha {
                let child = go(a, me, out);
                out.push((child, me, true));
            }
            me
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Pedigree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        if let Some(b) = &self.beta {
            write!(f, "b{b}")?;
        }
        if let Some(a) = &self.alpha {
            write!(f, "a{a}")?;
        }
        write!(f, ")")
    }
}

/// All pedigrees with `n` nodes, ordered by β-subtree size, then β-subtree, then α-subtree.
pub fn enumerate_pedigrees(n: usize) -> Vec<Pedigree> {
    let mut memo: Vec<Vec<Option<Pedigree>>> = vec![vec![None]];
    for m in 1..=n {
        let mut level = Vec::new();
        for i in 0..m {
            for b in &memo[i] {
                for a in &memo[m - 1 - i] {
                    level.push(Some(Pedigree::with(b.clone(), a.clone())));
                }
            }
        }
        memo.push(level);
    }
    if n == 0 {
        return Vec::new();
    }
    memo.swap_remove(n).into_iter().flatten().collect()
}

/// `d(L)`: the number of points on the walk from the root to each node.
pub fn pedigree_dimension_vector(p: &Pedigree) -> Vec<i64> {
    p.depths().into_iter().map(|d| d as i64 + 1).collect()
}

/// Inverse of [`pedigree_dimension_vector`]: split at the unique entry 1.
pub fn pedigree_from_dims(d: &[i64]) -> Result<Pedigree> {
    if d.is_empty() {
        return Err(Error::NotAPedigreeVector("empty vector".into()));
    }
    let ones: Vec<usize> = d.iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| i).collect();
    if ones.len() != 1 || d.iter().any(|&v| v < 1) {
        return Err(Error::NotAPedigreeVector(format!("{d:?} needs exactly one entry 1 and no entry below 1")));
    }
    let i = ones[0];
    let sub = |part: &[i64]| -> Result<Option<Pedigree>> {
        if part.is_empty() {
            return Ok(None);
        }
        let lowered: Vec<i64> = part.iter().map(|v| v - 1).collect();
        pedigree_from_dims(&lowered).map(Some).map_err(|_| Error::NotAPedigreeVector(format!("{d:?}")))
    };
    Ok(Pedigree::with(sub(&d[..i])?, sub(&d[i + 1..])?))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The seven-node pedigree ω →α A, A →β B →β C, A →α D, D →β E, D →α F.
    pub(crate) fn figure_pedigree() -> Pedigree {
        let c = Pedigree::leaf();
        let b = Pedigree::with(Some(c), None);
        let d = Pedigree::with(Some(Pedigree::leaf()), Some(Pedigree::leaf()));
        let a = Pedigree::with(Some(b), Some(d));
        Pedigree::with(None, Some(a))
    }

    #[test]
    fn small_vectors() {
        assert_eq!(pedigree_dimension_vector(&Pedigree::leaf()), vec![1]);
        assert_eq!(pedigree_dimension_vector(&Pedigree::with(None, Some(Pedigree::leaf()))), vec![1, 2]);
        assert_eq!(pedigree_dimension_vector(&Pedigree::with(Some(Pedigree::leaf()), None)), vec![2, 1]);
        assert_eq!(pedigree_dimension_vector(&figure_pedigree()), vec![1, 4, 3, 2, 4, 3, 4]);
        assert_eq!(pedigree_from_dims(&[1, 4, 3, 2, 4, 3, 4]).unwrap(), figure_pedigree());
        assert!(matches!(pedigree_from_dims(&[1, 1]), Err(Error::NotAPedigreeVector(_))));
        assert!(matches!(pedigree_from_dims(&[1, 3]), Err(Error::NotAPedigreeVector(_))));
    }

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_pedigrees(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42]);
    }

    #[test]
    fn edges_in_walk_labels() {
        assert_eq!(figure_pedigree().root_label(), 1);
        assert_eq!(
            figure_pedigree().edges(),
            vec![(2, 3, false), (3, 4, false), (4, 1, true), (5, 6, false), (6, 4, true), (7, 6, true)]
        );
    }
}
