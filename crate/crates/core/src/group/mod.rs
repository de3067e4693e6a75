//! Explicit finite groups, subgroups, homomorphisms and automorphism groups.
//!
//! Every group is a dense multiplication table over element indices
//! `0..order`, with the identity fixed at index 0. Groups that come from
//! permutations keep a faithful permutation record of each element.
//!
//! Products of maps follow function composition throughout the crate:
//! for automorphisms `f * g = f ∘ g`, i.e. `g` is applied first.

mod aut;
mod hom;
pub mod perm;

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use aut::{ad_conjugate, automorphisms, find_isomorphism, inner_automorphisms, isomorphisms, AutGroup};
pub use hom::{compose_homs, validate_hom, GroupHom};
pub(crate) use hom::same_group;
pub use perm::PermGroup;

/// Element index inside a [`FiniteGroup`].
pub type Elem = u32;

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    inv: Vec<Elem>,
    element_orders: Vec<u32>,
    name: Option<String>,
    labels: Option<Vec<String>>,
    perms: Option<Vec<Vec<u32>>>,
    input_generators: Option<Vec<Elem>>,
    generators: OnceLock<Vec<Elem>>,
    perm_index: OnceLock<HashMap<Vec<u32>, Elem>>,
    classes: OnceLock<(Vec<u32>, Vec<u32>)>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self::from_table_unchecked(1, vec![0])
    }

    /// Validates a multiplication table and builds the group.
    ///
    /// Checks run in a fixed order (shape, Latin square, associativity,
    /// identity at 0, inverses) and the first failure is reported with the
    /// offending element(s).
    pub fn from_table(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x as usize >= n) {
                return Err(Error::MalformedTable(format!("row {i} contains {x} outside 0..{n}")));
            }
        }
        for i in 0..n {
            let mut seen = vec![false; n];
            for j in 0..n {
                let x = rows[i][j] as usize;
                if seen[x] {
                    return Err(Error::NotLatinSquare(format!("row {i} repeats {x}")));
                }
                seen[x] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in rows {
                let x = row[j] as usize;
                if seen[x] {
                    return Err(Error::NotLatinSquare(format!("column {j} repeats {x}")));
                }
                seen[x] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b] as usize;
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c] as usize] {
                        return Err(Error::NotAssociative { a: a as u32, b: b as u32, c: c as u32 });
                    }
                }
            }
        }
        for x in 0..n {
            if rows[0][x] as usize != x || rows[x][0] as usize != x {
                return Err(Error::IdentityNotAtZero { x: x as u32 });
            }
        }
        for x in 0..n {
            let Some(y) = rows[x].iter().position(|&v| v == 0) else {
                return Err(Error::MissingInverse { x: x as u32 });
            };
            if rows[y][x] != 0 {
                return Err(Error::MissingInverse { x: x as u32 });
            }
        }
        let table = rows.iter().flatten().copied().collect();
        Ok(Self::from_table_unchecked(n, table))
    }

    /// Builds a group from a table known to be valid (identity at 0).
    pub(crate) fn from_table_unchecked(order: usize, table: Vec<Elem>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inv = vec![0; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            inv[x] = row.iter().position(|&v| v == 0).expect("row contains identity") as Elem;
        }
        let mut element_orders = vec![0; order];
        for x in 0..order {
            let mut k = 1;
            let mut p = x;
            while p != 0 {
                p = table[p * order + x] as usize;
                k += 1;
            }
            element_orders[x] = k;
        }
        FiniteGroup {
            order,
            table,
            inv,
            element_orders,
            name: None,
            labels: None,
            perms: None,
            input_generators: None,
            generators: OnceLock::new(),
            perm_index: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    /// Builds a group from a complete list of permutations closed under
    /// composition, with the identity first.
    pub(crate) fn from_perms_unchecked(perms: Vec<Vec<u32>>) -> Self {
        let n = perms.len();
        let index: HashMap<Vec<u32>, Elem> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i as Elem)).collect();
        let mut table = Vec::with_capacity(n * n);
        let mut scratch = vec![0u32; perms.first().map_or(0, |p| p.len())];
        for a in &perms {
            for b in &perms {
                for (s, &x) in scratch.iter_mut().zip(b.iter()) {
                    *s = a[x as usize];
                }
                table.push(index[&scratch]);
            }
        }
        let mut g = Self::from_table_unchecked(n, table);
        g.perms = Some(perms);
        let _ = g.perm_index.set(index);
        g
    }

    /// Closure of permutation generators on `0..degree`.
    pub fn from_permutations(degree: usize, generators: &[Vec<u32>], max_order: usize) -> Result<Self> {
        Ok(PermGroup::closure(degree, generators, max_order)?.to_finite_group())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::Input(format!(
                "{} labels given for a group of order {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub(crate) fn set_input_generators(&mut self, gens: Vec<Elem>) {
        self.input_generators = Some(gens);
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.order as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: Elem, k: u32) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: Elem) -> u32 {
        self.element_orders[x as usize]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.element_orders
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn perms(&self) -> Option<&[Vec<u32>]> {
        self.perms.as_deref()
    }

    pub fn index_of_perm(&self, p: &[u32]) -> Option<Elem> {
        self.perms.as_ref()?;
        let index = self.perm_index.get_or_init(|| {
            self.perms
                .as_ref()
                .map(|ps| ps.iter().enumerate().map(|(i, p)| (p.clone(), i as Elem)).collect())
                .unwrap_or_default()
        });
        index.get(p).copied()
    }

    /// Generators supplied at construction (permutation input), if any.
    pub fn input_generators(&self) -> Option<&[Elem]> {
        self.input_generators.as_deref()
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.order).map(<[u32]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A small generating set, chosen greedily by descending element order.
    /// Deterministic; empty for the trivial group.
    pub fn generators(&self) -> &[Elem] {
        self.generators.get_or_init(|| {
            let mut candidates: Vec<Elem> = self.elements().skip(1).collect();
            candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
            let mut gens = Vec::new();
            let mut inside = vec![false; self.order];
            inside[0] = true;
            let mut size = 1;
            for x in candidates {
                if size == self.order {
                    break;
                }
                if inside[x as usize] {
                    continue;
                }
                gens.push(x);
                let sub = closure_members(self, &gens);
                size = sub.len();
                for m in sub {
                    inside[m as usize] = true;
                }
            }
            gens
        })
    }

    /// Conjugacy class id of each element and the size of each class.
    pub fn conjugacy_classes(&self) -> (&[u32], &[u32]) {
        let (ids, sizes) = self.classes.get_or_init(|| {
            let gens = self.generators().to_vec();
            let mut ids = vec![u32::MAX; self.order];
            let mut sizes = Vec::new();
            for x in self.elements() {
                if ids[x as usize] != u32::MAX {
                    continue;
                }
                let id = sizes.len() as u32;
                ids[x as usize] = id;
                let mut queue = vec![x];
                let mut head = 0;
                while head < queue.len() {
                    let y = queue[head];
                    head += 1;
                    for &g in &gens {
                        let z = self.conj(y, g);
                        if ids[z as usize] == u32::MAX {
                            ids[z as usize] = id;
                            queue.push(z);
                        }
                    }
                }
                sizes.push(queue.len() as u32);
            }
            (ids, sizes)
        });
        (ids, sizes)
    }

    pub fn class_size(&self, x: Elem) -> u32 {
        let (ids, sizes) = self.conjugacy_classes();
        sizes[ids[x as usize] as usize]
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generators();
        let members = self
            .elements()
            .filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup { parent_order: self.order, members }
    }

    /// The subgroup as a group in its own right, together with the embedding
    /// of local indices into `self`. Local order follows the sorted members,
    /// so the identity stays at 0.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
        let members = sub.members().to_vec();
        let mut local = vec![u32::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            local[m as usize] = i as u32;
        }
        let n = members.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &members {
            for &b in &members {
                table.push(local[self.mul(a, b) as usize]);
            }
        }
        let mut g = FiniteGroup::from_table_unchecked(n, table);
        if let Some(perms) = &self.perms {
            g.perms = Some(members.iter().map(|&m| perms[m as usize].clone()).collect());
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(members.iter().map(|&m| labels[m as usize].clone()).collect());
        }
        (g, members)
    }

    /// Exhaustive associativity check.
    pub fn is_associative(&self) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| {
                let ab = self.mul(a, b);
                self.elements().all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }
}

/// Members of the subgroup generated by `seed`, sorted.
fn closure_members(g: &FiniteGroup, seed: &[Elem]) -> Vec<Elem> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut members = vec![0];
    let mut head = 0;
    while head < members.len() {
        let x = members[head];
        head += 1;
        for &s in seed {
            let y = g.mul(x, s);
            if !inside[y as usize] {
                inside[y as usize] = true;
                members.push(y);
            }
        }
    }
    members.sort_unstable();
    members
}

/// A subgroup, stored as the sorted list of its member indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<Elem>,
}

impl Subgroup {
    /// Validates closure of `members` inside `g`.
    pub fn new(g: &FiniteGroup, mut members: Vec<Elem>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&x) = members.iter().find(|&&x| x as usize >= g.order()) {
            return Err(Error::BadSubgroup(x));
        }
        let sub = Subgroup { parent_order: g.order(), members };
        if !sub.contains(0) {
            return Err(Error::Input("subgroup does not contain the identity".into()));
        }
        let mask = sub.mask();
        for &a in &sub.members {
            for &b in &sub.members {
                if !mask[g.mul(a, b) as usize] {
                    return Err(Error::Input(format!("subgroup not closed: {a}*{b} is outside")));
                }
            }
        }
        Ok(sub)
    }

    pub(crate) fn from_sorted_unchecked(parent_order: usize, members: Vec<Elem>) -> Self {
        Subgroup { parent_order, members }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { parent_order: g.order(), members: g.elements().collect() }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup { parent_order: g.order(), members: vec![0] }
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent_order];
        for &x in &self.members {
            m[x as usize] = true;
        }
        m
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        let mask = self.mask();
        g.generators()
            .iter()
            .all(|&s| self.members.iter().all(|&x| mask[g.conj(x, s) as usize]))
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            parent_order: self.parent_order,
            members: self.members.iter().copied().filter(|&x| other.contains(x)).collect(),
        }
    }
}

/// Smallest subgroup of `g` containing `seed`.
pub fn subgroup_closure(g: &FiniteGroup, seed: &[Elem]) -> Subgroup {
    Subgroup { parent_order: g.order(), members: closure_members(g, seed) }
}
