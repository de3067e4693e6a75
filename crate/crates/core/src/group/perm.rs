//! Permutations on `0..degree` and permutation groups given by generators.
//!
//! A permutation is stored as its image vector. Products follow function
//! composition: `compose(p, q)` applies `q` first, so
//! `compose(p, q)[x] == p[q[x]]`.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::{Elem, FiniteGroup};

pub fn identity_perm(degree: usize) -> Vec<u32> {
    (0..degree as u32).collect()
}

/// `p ∘ q`.
pub fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
    q.iter().map(|&x| p[x as usize]).collect()
}

pub fn invert(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

pub fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        match seen.get_mut(x as usize) {
            Some(s) if !*s => *s = true,
            _ => return false,
        }
    }
    true
}

/// Builds a permutation of `0..degree` from disjoint cycles.
pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Vec<u32> {
    let mut p = identity_perm(degree);
    for c in cycles {
        for i in 0..c.len() {
            p[c[i] as usize] = c[(i + 1) % c.len()];
        }
    }
    p
}

/// A permutation group stored as the full list of its elements.
///
/// Element 0 is the identity; the remaining elements appear in breadth-first
/// order of discovery from the generators, which makes indices deterministic.
/// No multiplication table is kept, so large groups (e.g. order 20160 on 15
/// points) are cheap to hold.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, Elem>,
    generators: Vec<Elem>,
}

impl PermGroup {
    pub fn closure(degree: usize, generators: &[Vec<u32>], max_order: usize) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != degree || !is_permutation(g) {
                return Err(Error::InvalidPermutation(format!(
                    "generator {i} is not a bijection on 0..{degree}"
                )));
            }
        }
        let id = identity_perm(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut head = 0;
        while head < elements.len() {
            for g in generators {
                let p = compose(g, &elements[head]);
                if !index.contains_key(&p) {
                    if elements.len() >= max_order {
                        return Err(Error::OrderCapExceeded { cap: max_order });
                    }
                    index.insert(p.clone(), elements.len() as Elem);
                    elements.push(p);
                }
            }
            head += 1;
        }
        let generators = generators.iter().map(|g| index[g]).collect();
        Ok(PermGroup { degree, elements, index, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: Elem) -> &[u32] {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &[u32]) -> Option<Elem> {
        self.index.get(p).copied()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Indices of the elements mapping the point set `points` onto itself.
    pub fn set_stabilizer(&self, points: &[u32]) -> Vec<Elem> {
        let mut inside = vec![false; self.degree];
        for &p in points {
            inside[p as usize] = true;
        }
        (0..self.order() as Elem)
            .filter(|&i| points.iter().all(|&p| inside[self.elements[i as usize][p as usize] as usize]))
            .collect()
    }

    /// Materializes the subgroup on the given element indices as a
    /// [`FiniteGroup`]. Local indices follow the sorted order of `members`, so
    /// the identity stays at 0. The caller guarantees closure.
    pub fn subgroup_group(&self, members: &[Elem]) -> FiniteGroup {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let perms: Vec<Vec<u32>> = members.iter().map(|&m| self.elements[m as usize].clone()).collect();
        FiniteGroup::from_perms_unchecked(perms)
    }

    /// The whole group with a multiplication table.
    pub fn to_finite_group(&self) -> FiniteGroup {
        let mut g = FiniteGroup::from_perms_unchecked(self.elements.clone());
        g.set_input_generators(self.generators.clone());
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let p = vec![1, 2, 0];
        let q = vec![1, 0, 2];
        // q then p: 0 -> 1 -> 2
        assert_eq!(compose(&p, &q), vec![2, 1, 0]);
        assert_eq!(compose(&p, &invert(&p)), identity_perm(3));
    }

    #[test]
    fn closure_respects_cap() {
        let gens = vec![from_cycles(5, &[&[0, 1]]), from_cycles(5, &[&[0, 1, 2, 3, 4]])];
        assert_eq!(PermGroup::closure(5, &gens, 1000).unwrap().order(), 120);
        assert_eq!(
            PermGroup::closure(5, &gens, 100).unwrap_err(),
            Error::OrderCapExceeded { cap: 100 }
        );
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(matches!(
            PermGroup::closure(3, &[vec![0, 0, 1]], 10),
            Err(Error::InvalidPermutation(_))
        ));
    }
}
