//! Simplicial amalgams: a group on every simplex and injective connecting
//! maps `G_τ -> G_σ` for `σ ⊆ τ`, coherent under composition.

pub mod oracle;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::{compose_homs, same_group, validate_hom, Elem, FiniteGroup, GroupHom, PermGroup, Subgroup};

pub use oracle::{oracle_classes, oracle_enumerate_type, oracle_isomorphic, OracleClass};

#[derive(Clone, Debug)]
pub struct Amalgam {
    complex: SimplicialComplex,
    groups: Vec<Arc<FiniteGroup>>,
    // every pair σ ⊆ τ by complex index, identities included
    maps: HashMap<(usize, usize), GroupHom>,
}

impl PartialEq for Amalgam {
    fn eq(&self, other: &Self) -> bool {
        self.complex == other.complex
            && self.groups.iter().zip(&other.groups).all(|(a, b)| same_group(a, b))
            && self.maps.len() == other.maps.len()
            && self.maps.iter().all(|(k, m)| other.maps.get(k).is_some_and(|n| m.map() == n.map()))
    }
}

impl Eq for Amalgam {}

impl Amalgam {
    /// Builds an amalgam from a group per simplex and element maps for the
    /// covering pairs. Further pairs may be given; they must agree with the
    /// composition of covering maps.
    pub fn new(
        complex: SimplicialComplex,
        groups: &BTreeMap<Simplex, Arc<FiniteGroup>>,
        maps: &BTreeMap<(Simplex, Simplex), Vec<Elem>>,
    ) -> Result<Self> {
        let mut gs = Vec::with_capacity(complex.len());
        for s in complex.simplices() {
            gs.push(groups.get(s).cloned().ok_or_else(|| Error::MissingGroup(s.to_string()))?);
        }
        for s in groups.keys() {
            complex.require(s)?;
        }
        let mut covers = HashMap::new();
        for (s, t) in complex.cover_pairs() {
            let map = maps.get(&(s.clone(), t.clone())).ok_or_else(|| Error::MissingMap {
                from: t.to_string(),
                to: s.to_string(),
            })?;
            let (i, j) = (complex.require(&s)?, complex.require(&t)?);
            covers.insert((i, j), hom_for(&gs, i, j, &s, &t, map.clone())?);
        }
        let amalgam = Self::assemble(complex, gs, covers)?;
        for ((s, t), map) in maps {
            let (i, j) = (amalgam.complex.require(s)?, amalgam.complex.require(t)?);
            if !s.is_face_of(t) {
                return Err(Error::BadConnectingMap {
                    from: t.to_string(),
                    to: s.to_string(),
                    reason: "not a face relation".into(),
                });
            }
            if amalgam.maps[&(i, j)].map() != map.as_slice() {
                return Err(Error::BadConnectingMap {
                    from: t.to_string(),
                    to: s.to_string(),
                    reason: "disagrees with the composition of covering maps".into(),
                });
            }
        }
        Ok(amalgam)
    }

    /// Builds from covering homomorphisms already known to be injective.
    /// Derives all other maps and checks every diamond.
    pub(crate) fn assemble(
        complex: SimplicialComplex,
        groups: Vec<Arc<FiniteGroup>>,
        covers: HashMap<(usize, usize), GroupHom>,
    ) -> Result<Self> {
        let simplices = complex.simplices().to_vec();
        let mut maps = covers;
        for (i, g) in groups.iter().enumerate() {
            maps.insert((i, i), GroupHom::identity(g.clone()));
        }
        for gap in 2..=complex.dimension() + 1 {
            for (j, t) in simplices.iter().enumerate() {
                for (i, s) in simplices.iter().enumerate() {
                    if s.len() + gap != t.len() || !s.is_face_of(t) {
                        continue;
                    }
                    let v = t.vertices().iter().copied().find(|&v| !s.contains(v)).unwrap();
                    let r = complex.require(&s.with(v))?;
                    let m = compose_homs(&maps[&(i, r)], &maps[&(r, j)])?;
                    maps.insert((i, j), m);
                }
            }
        }
        // diamonds σ ⊂ ρ1, ρ2 ⊂ τ
        for (j, t) in simplices.iter().enumerate() {
            if t.len() < 3 {
                continue;
            }
            for (i, s) in simplices.iter().enumerate() {
                if s.len() + 2 != t.len() || !s.is_face_of(t) {
                    continue;
                }
                let extra: Vec<u32> = t.vertices().iter().copied().filter(|&v| !s.contains(v)).collect();
                let r1 = complex.require(&s.with(extra[0]))?;
                let r2 = complex.require(&s.with(extra[1]))?;
                let a = compose_homs(&maps[&(i, r1)], &maps[&(r1, j)])?;
                let b = compose_homs(&maps[&(i, r2)], &maps[&(r2, j)])?;
                if a.map() != b.map() {
                    return Err(Error::DiamondIncoherent {
                        sigma: s.to_string(),
                        rho1: simplices[r1].to_string(),
                        rho2: simplices[r2].to_string(),
                        tau: t.to_string(),
                    });
                }
            }
        }
        Ok(Amalgam { complex, groups, maps })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn group(&self, s: &Simplex) -> Result<&Arc<FiniteGroup>> {
        Ok(&self.groups[self.complex.require(s)?])
    }

    pub(crate) fn group_at(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.groups[i]
    }

    pub fn groups(&self) -> &[Arc<FiniteGroup>] {
        &self.groups
    }

    /// `φ^σ_τ : G_τ -> G_σ`.
    pub fn connecting_map(&self, s: &Simplex, t: &Simplex) -> Result<&GroupHom> {
        let (i, j) = (self.complex.require(s)?, self.complex.require(t)?);
        self.maps.get(&(i, j)).ok_or_else(|| Error::BadConnectingMap {
            from: t.to_string(),
            to: s.to_string(),
            reason: "not a face relation".into(),
        })
    }

    pub(crate) fn map_at(&self, i: usize, j: usize) -> &GroupHom {
        &self.maps[&(i, j)]
    }

    /// `Ḡ_{σ,τ} = φ^σ_τ(G_τ)`.
    pub fn image_subgroup(&self, s: &Simplex, t: &Simplex) -> Result<Subgroup> {
        Ok(self.connecting_map(s, t)?.image())
    }

    /// Images of all strictly larger simplices inside `G_σ`.
    pub fn coface_images(&self, s: &Simplex) -> Result<Vec<Subgroup>> {
        let i = self.complex.require(s)?;
        let mut out = Vec::new();
        for t in self.complex.cofaces(s) {
            let j = self.complex.require(&t)?;
            out.push(self.maps[&(i, j)].image());
        }
        Ok(out)
    }

    /// Covering maps keyed by simplices, in complex order.
    pub fn cover_maps(&self) -> Vec<(Simplex, Simplex, &GroupHom)> {
        self.complex
            .cover_pairs()
            .into_iter()
            .map(|(s, t)| {
                let k = (self.complex.index_of(&s).unwrap(), self.complex.index_of(&t).unwrap());
                (s, t, &self.maps[&k])
            })
            .collect()
    }

    /// The same amalgam with one covering map replaced.
    pub fn with_cover_map(&self, s: &Simplex, t: &Simplex, map: Vec<Elem>) -> Result<Amalgam> {
        let (i, j) = (self.complex.require(s)?, self.complex.require(t)?);
        if t.len() != s.len() + 1 || !s.is_face_of(t) {
            return Err(Error::BadConnectingMap {
                from: t.to_string(),
                to: s.to_string(),
                reason: "not a covering pair".into(),
            });
        }
        let mut covers = HashMap::new();
        for (a, b) in self.complex.cover_pairs() {
            let k = (self.complex.index_of(&a).unwrap(), self.complex.index_of(&b).unwrap());
            covers.insert(k, self.maps[&k].clone());
        }
        covers.insert((i, j), hom_for(&self.groups, i, j, s, t, map)?);
        Amalgam::assemble(self.complex.clone(), self.groups.clone(), covers)
    }

    /// Same groups on every simplex and the same image subgroups for every
    /// face pair.
    pub fn same_type(&self, other: &Amalgam) -> Result<bool> {
        Ok(self.type_difference(other)?.is_none())
    }

    /// First place where the types differ, if any.
    pub fn type_difference(&self, other: &Amalgam) -> Result<Option<String>> {
        if self.complex != other.complex {
            return Err(Error::TypeMismatch("amalgams live on different complexes".into()));
        }
        let simplices = self.complex.simplices();
        for (i, s) in simplices.iter().enumerate() {
            if !same_group(&self.groups[i], &other.groups[i]) {
                return Ok(Some(format!("groups differ at {s}")));
            }
        }
        let mut keys: Vec<&(usize, usize)> = self.maps.keys().collect();
        keys.sort_unstable();
        for &(i, j) in keys {
            if self.maps[&(i, j)].image() != other.maps[&(i, j)].image() {
                return Ok(Some(format!("images differ for {} in {}", simplices[j], simplices[i])));
            }
        }
        Ok(None)
    }

    fn require_type(&self, g0: &Amalgam) -> Result<()> {
        match self.type_difference(g0)? {
            None => Ok(()),
            Some(why) => Err(Error::TypeMismatch(why)),
        }
    }

    /// `φ^{bar τ}_τ = ψ^{bar τ}_τ` for every simplex of positive rank.
    pub fn is_normalized(&self, g0: &Amalgam) -> bool {
        if !matches!(self.type_difference(g0), Ok(None)) {
            return false;
        }
        let simplices = self.complex.simplices();
        for (j, t) in simplices.iter().enumerate().filter(|(_, t)| t.rank() >= 1) {
            let i = self.complex.index_of(&t.bar().unwrap()).unwrap();
            if self.maps[&(i, j)].map() != g0.maps[&(i, j)].map() {
                return false;
            }
        }
        for (&(i, j), m) in &self.maps {
            if simplices[i].max_vertex() == simplices[j].max_vertex() {
                assert_eq!(
                    m.map(),
                    g0.maps[&(i, j)].map(),
                    "normalized amalgam differs from the reference on {} in {}",
                    simplices[j],
                    simplices[i]
                );
            }
        }
        true
    }

    /// An isomorphic normalized amalgam of type `g0` and the isomorphism
    /// from `self` onto it.
    pub fn normalize(&self, g0: &Amalgam) -> Result<(Amalgam, AmalgamIso)> {
        self.require_type(g0)?;
        let simplices = self.complex.simplices();
        let mut comps: Vec<GroupHom> = Vec::with_capacity(simplices.len());
        for (j, t) in simplices.iter().enumerate() {
            if t.rank() == 0 {
                comps.push(GroupHom::identity(self.groups[j].clone()));
                continue;
            }
            let b = self.complex.index_of(&t.bar()?).unwrap();
            let phi = &self.maps[&(b, j)];
            let psi_inv = g0.maps[&(b, j)].partial_inverse();
            let map: Result<Vec<Elem>> = phi
                .map()
                .iter()
                .map(|&x| {
                    psi_inv[comps[b].apply(x) as usize]
                        .ok_or_else(|| Error::Internal(format!("normalization left the image at {t}")))
                })
                .collect();
            comps.push(GroupHom::new_unchecked(self.groups[j].clone(), self.groups[j].clone(), map?));
        }
        let inverses: Vec<GroupHom> = comps.iter().map(GroupHom::inverse).collect::<Result<_>>()?;
        let mut covers = HashMap::new();
        for (s, t) in self.complex.cover_pairs() {
            let (i, j) = (self.complex.index_of(&s).unwrap(), self.complex.index_of(&t).unwrap());
            let m = compose_homs(&comps[i], &compose_homs(&self.maps[&(i, j)], &inverses[j])?)?;
            covers.insert((i, j), m);
        }
        let target = Amalgam::assemble(self.complex.clone(), self.groups.clone(), covers)?;
        let iso = AmalgamIso { components: comps };
        check_iso(self, &target, &iso)?;
        Ok((target, iso))
    }

    /// The amalgam on a larger complex with trivial groups on new simplices.
    pub fn trivial_extension(&self, bigger: &SimplicialComplex) -> Result<Amalgam> {
        if !self.complex.is_subcomplex_of(bigger) {
            return Err(Error::NotSubcomplex("the amalgam's complex is not contained in the target".into()));
        }
        let trivial = Arc::new(FiniteGroup::trivial());
        let groups: Vec<Arc<FiniteGroup>> = bigger
            .simplices()
            .iter()
            .map(|s| match self.complex.index_of(s) {
                Some(i) => self.groups[i].clone(),
                None => trivial.clone(),
            })
            .collect();
        let mut covers = HashMap::new();
        for (s, t) in bigger.cover_pairs() {
            let (i, j) = (bigger.index_of(&s).unwrap(), bigger.index_of(&t).unwrap());
            let m = match (self.complex.index_of(&s), self.complex.index_of(&t)) {
                (Some(a), Some(b)) => self.maps[&(a, b)].clone(),
                _ => GroupHom::trivial(groups[j].clone(), groups[i].clone()),
            };
            covers.insert((i, j), m);
        }
        Amalgam::assemble(bigger.clone(), groups, covers)
    }

    /// Per edge `{i<j}`, the automorphism `(φ^i_{ij})⁻¹ ∘ ψ^i_{ij}` of `G_ij`
    /// as an element map, edges in complex order.
    pub fn edge_twists(&self, g0: &Amalgam) -> Result<Vec<Vec<Elem>>> {
        self.require_type(g0)?;
        let mut out = Vec::new();
        for e in self.complex.edges() {
            let j = self.complex.index_of(e).unwrap();
            let i = self.complex.index_of(&Simplex::vertex(e.min_vertex())).unwrap();
            let back = self.maps[&(i, j)].partial_inverse();
            let twist = g0.maps[&(i, j)]
                .map()
                .iter()
                .map(|&y| back[y as usize].expect("same image"))
                .collect();
            out.push(twist);
        }
        Ok(out)
    }
}

fn hom_for(gs: &[Arc<FiniteGroup>], i: usize, j: usize, s: &Simplex, t: &Simplex, map: Vec<Elem>) -> Result<GroupHom> {
    let bad = |reason: String| Error::BadConnectingMap { from: t.to_string(), to: s.to_string(), reason };
    if map.len() != gs[j].order() {
        return Err(bad(format!("map has length {}, group has order {}", map.len(), gs[j].order())));
    }
    if map.iter().any(|&y| y as usize >= gs[i].order()) {
        return Err(bad("image outside the target group".into()));
    }
    let h = GroupHom::new_unchecked(gs[j].clone(), gs[i].clone(), map);
    validate_hom(&h, true).map_err(|e| bad(e.to_string()))?;
    Ok(h)
}

/// Parabolic amalgam of a permutation group: vertex `v` carries the
/// stabilizer `stabilizers[v - 1]`, a simplex the intersection of its vertex
/// stabilizers, and all maps are inclusions. The complex is the full simplex.
pub fn parabolic_amalgam(g: &PermGroup, stabilizers: &[Vec<Elem>]) -> Result<Amalgam> {
    let complex = SimplicialComplex::full(stabilizers.len() as u32)?;
    let members: Vec<Vec<Elem>> = complex
        .simplices()
        .iter()
        .map(|s| {
            let mut m: Vec<Elem> = stabilizers[s.min_vertex() as usize - 1].clone();
            for &v in &s.vertices()[1..] {
                let other = &stabilizers[v as usize - 1];
                m.retain(|x| other.contains(x));
            }
            m.sort_unstable();
            m
        })
        .collect();
    let groups: Vec<Arc<FiniteGroup>> = members.iter().map(|m| Arc::new(g.subgroup_group(m))).collect();
    let mut covers = HashMap::new();
    for (s, t) in complex.cover_pairs() {
        let (i, j) = (complex.index_of(&s).unwrap(), complex.index_of(&t).unwrap());
        let map = members[j]
            .iter()
            .map(|x| members[i].binary_search(x).map(|p| p as Elem))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Internal("intersection not contained in a face group".into()))?;
        covers.insert((i, j), GroupHom::new_unchecked(groups[j].clone(), groups[i].clone(), map));
    }
    Amalgam::assemble(complex, groups, covers)
}

/// An isomorphism of amalgams over the same complex: one bijective
/// homomorphism `G¹_τ -> G²_τ` per simplex, in complex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamIso {
    pub components: Vec<GroupHom>,
}

impl AmalgamIso {
    pub fn identity(g: &Amalgam) -> Self {
        AmalgamIso { components: g.groups.iter().map(|x| GroupHom::identity(x.clone())).collect() }
    }

    pub fn component(&self, c: &SimplicialComplex, s: &Simplex) -> Result<&GroupHom> {
        Ok(&self.components[c.require(s)?])
    }

    pub fn is_identity(&self) -> bool {
        self.components
            .iter()
            .all(|h| h.map().iter().enumerate().all(|(x, &y)| x as Elem == y))
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &AmalgamIso) -> Result<AmalgamIso> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| compose_homs(a, b))
            .collect::<Result<_>>()?;
        Ok(AmalgamIso { components })
    }

    pub fn inverse(&self) -> Result<AmalgamIso> {
        let components = self.components.iter().map(GroupHom::inverse).collect::<Result<_>>()?;
        Ok(AmalgamIso { components })
    }

    /// Identity components on the simplices added by a trivial extension.
    pub fn extend(&self, small: &SimplicialComplex, bigger: &SimplicialComplex) -> Result<AmalgamIso> {
        if !small.is_subcomplex_of(bigger) {
            return Err(Error::NotSubcomplex("iso complex is not contained in the target".into()));
        }
        let trivial = Arc::new(FiniteGroup::trivial());
        let components = bigger
            .simplices()
            .iter()
            .map(|s| match small.index_of(s) {
                Some(i) => self.components[i].clone(),
                None => GroupHom::identity(trivial.clone()),
            })
            .collect();
        Ok(AmalgamIso { components })
    }
}

/// Verifies that every component is bijective and every square
/// `φ_σ ∘ ¹φ^σ_τ = ²φ^σ_τ ∘ φ_τ` commutes.
pub fn check_iso(source: &Amalgam, target: &Amalgam, iso: &AmalgamIso) -> Result<()> {
    if source.complex != target.complex {
        return Err(Error::IsoViolation("amalgams live on different complexes".into()));
    }
    let simplices = source.complex.simplices();
    if iso.components.len() != simplices.len() {
        return Err(Error::IsoViolation("wrong number of components".into()));
    }
    for (i, s) in simplices.iter().enumerate() {
        let c = &iso.components[i];
        if !same_group(c.domain(), &source.groups[i]) || !same_group(c.codomain(), &target.groups[i]) {
            return Err(Error::IsoViolation(format!("component at {s} has the wrong groups")));
        }
        if c.domain().order() != c.codomain().order() || validate_hom(c, true).is_err() {
            return Err(Error::IsoViolation(format!("component at {s} is not a bijective homomorphism")));
        }
    }
    let mut keys: Vec<&(usize, usize)> = source.maps.keys().collect();
    keys.sort_unstable();
    for &(i, j) in keys {
        let (m1, m2) = (&source.maps[&(i, j)], &target.maps[&(i, j)]);
        let (ci, cj) = (&iso.components[i], &iso.components[j]);
        if source.groups[j].elements().any(|x| ci.apply(m1.apply(x)) != m2.apply(cj.apply(x))) {
            return Err(Error::IsoViolation(format!(
                "square ({}, {}) does not commute",
                simplices[i], simplices[j]
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
