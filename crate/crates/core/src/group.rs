//! Finite group presented by an element list and a multiplication table.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A finite group as an ordered element list plus a multiplication table.
///
/// All grading and action indices elsewhere in the engine refer to positions
/// in `elements`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    /// Display names of the elements, in index order.
    pub elements: Vec<String>,
    /// `mul[g][h]` is the index of the product g·h.
    pub mul: Vec<Vec<usize>>,
    /// Index of the identity element.
    #[serde(skip)]
    pub identity: usize,
    /// `inv[g]` is the index of the two-sided inverse of g.
    #[serde(skip)]
    pub inv: Vec<usize>,
}

impl GroupTable {
    /// Builds the table for the trivial group.
    pub fn trivial() -> Self {
        GroupTable {
            elements: vec!["e".to_string()],
            mul: vec![vec![0]],
            identity: 0,
            inv: vec![0],
        }
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Product of two elements.
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    /// Inverse of an element.
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// Identity element.
    pub fn e(&self) -> usize {
        self.identity
    }

    /// Derives the identity and inverse tables and checks the group axioms.
    pub fn finalize(&mut self) -> Result<()> {
        let n = self.elements.len();
        if n == 0 {
            return Err(Error::Referential("empty group".into()));
        }
        if self.mul.len() != n || self.mul.iter().any(|r| r.len() != n) {
            return Err(Error::Referential("multiplication table shape".into()));
        }
        for row in &self.mul {
            for &v in row {
                if v >= n {
                    return Err(Error::Referential(format!(
                        "group product index {v} out of range"
                    )));
                }
            }
        }
        // Locate a two-sided identity.
        let mut identity = None;
        for e in 0..n {
            if (0..n).all(|g| self.mul[e][g] == g && self.mul[g][e] == g) {
                identity = Some(e);
                break;
            }
        }
        let e = identity
            .ok_or_else(|| Error::Referential("group has no two-sided identity".into()))?;
        self.identity = e;
        // Locate two-sided inverses.
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            for h in 0..n {
                if self.mul[g][h] == e && self.mul[h][g] == e {
                    inv[g] = h;
                    break;
                }
            }
            if inv[g] == usize::MAX {
                return Err(Error::Referential(format!(
                    "group element {g} has no two-sided inverse"
                )));
            }
        }
        self.inv = inv;
        Ok(())
    }

    /// Maximum associativity defect over all triples (0 for a genuine group).
    pub fn associativity_defect(&self) -> usize {
        let n = self.elements.len();
        let mut bad = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// Checks that `subset` is closed under products and inverses and
    /// contains the identity.
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        if !subset.contains(&self.identity) {
            return false;
        }
        for &g in subset {
            if g >= self.order() || !subset.contains(&self.inv[g]) {
                return false;
            }
            for &h in subset {
                if !subset.contains(&self.mul[g][h]) {
                    return false;
                }
            }
        }
        true
    }

    /// Deterministic left-coset representatives of a subgroup: the smallest
    /// element id in each coset gH, in increasing order.
    pub fn coset_reps(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &h in subgroup {
                seen[self.mul[g][h]] = true;
            }
        }
        reps
    }

    /// The cyclic group Z/n with elements named 0..n-1.
    pub fn cyclic(n: usize) -> Self {
        let mut g = GroupTable {
            elements: (0..n).map(|i| i.to_string()).collect(),
            mul: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            identity: 0,
            inv: (0..n).map(|a| (n - a) % n).collect(),
        };
        g.finalize().expect("cyclic group is a group");
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_axioms() {
        let g = GroupTable::cyclic(4);
        assert_eq!(g.associativity_defect(), 0);
        assert_eq!(g.e(), 0);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.mul(2, 3), 1);
    }

    #[test]
    fn subgroup_and_cosets() {
        let g = GroupTable::cyclic(4);
        assert!(g.is_subgroup(&[0, 2]));
        assert!(!g.is_subgroup(&[0, 1]));
        assert_eq!(g.coset_reps(&[0, 2]), vec![0, 1]);
    }
}
