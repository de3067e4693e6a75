//! Coefficient systems on a simplicial complex: a group `A_σ` per simplex and
//! covariant homomorphisms `α^σ_τ : A_σ -> A_τ` for `σ ⊆ τ`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::amalgam::Amalgam;
use crate::budget::Budgets;
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::{ad_conjugate, automorphisms, compose_homs, same_group, validate_hom, AutGroup, Elem, FiniteGroup, GroupHom, Subgroup};

#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    complex: SimplicialComplex,
    groups: Vec<Arc<FiniteGroup>>,
    // present when the system comes from an amalgam
    auts: Option<Vec<AutGroup>>,
    // every pair σ ⊆ τ by complex index, identities included
    alphas: HashMap<(usize, usize), GroupHom>,
}

impl CoefficientSystem {
    /// Builds a system from one group per simplex (complex order) and the
    /// covering homomorphisms, keyed by `(index of σ, index of τ)`.
    /// Longer maps are composed; every map and diamond is validated.
    pub fn new(
        complex: SimplicialComplex,
        groups: Vec<Arc<FiniteGroup>>,
        covers: HashMap<(usize, usize), GroupHom>,
    ) -> Result<Self> {
        Self::assemble(complex, groups, None, covers)
    }

    fn assemble(
        complex: SimplicialComplex,
        groups: Vec<Arc<FiniteGroup>>,
        auts: Option<Vec<AutGroup>>,
        covers: HashMap<(usize, usize), GroupHom>,
    ) -> Result<Self> {
        if groups.len() != complex.len() {
            return Err(Error::InvalidSystem(format!(
                "{} groups for {} simplices",
                groups.len(),
                complex.len()
            )));
        }
        let simplices = complex.simplices().to_vec();
        let mut alphas = HashMap::new();
        for (s, t) in complex.cover_pairs() {
            let (i, j) = (complex.require(&s)?, complex.require(&t)?);
            let a = covers.get(&(i, j)).ok_or_else(|| Error::InvalidSystem(format!("missing alpha {s} -> {t}")))?;
            if !same_group(a.domain(), &groups[i]) || !same_group(a.codomain(), &groups[j]) {
                return Err(Error::InvalidSystem(format!("alpha {s} -> {t} has the wrong domain or codomain")));
            }
            alphas.insert((i, j), a.clone());
        }
        for (i, g) in groups.iter().enumerate() {
            alphas.insert((i, i), GroupHom::identity(g.clone()));
        }
        for gap in 2..=complex.dimension() + 1 {
            for (j, t) in simplices.iter().enumerate() {
                for (i, s) in simplices.iter().enumerate() {
                    if s.len() + gap != t.len() || !s.is_face_of(t) {
                        continue;
                    }
                    let v = t.vertices().iter().copied().find(|&v| !s.contains(v)).unwrap();
                    let r = complex.require(&s.with(v))?;
                    let m = compose_homs(&alphas[&(r, j)], &alphas[&(i, r)])?;
                    alphas.insert((i, j), m);
                }
            }
        }
        let sys = CoefficientSystem { complex, groups, auts, alphas };
        validate_system(&sys)?;
        Ok(sys)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn group(&self, s: &Simplex) -> Result<&Arc<FiniteGroup>> {
        Ok(&self.groups[self.complex.require(s)?])
    }

    pub fn group_at(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.groups[i]
    }

    pub fn groups(&self) -> &[Arc<FiniteGroup>] {
        &self.groups
    }

    /// `α^σ_τ : A_σ -> A_τ`.
    pub fn alpha(&self, s: &Simplex, t: &Simplex) -> Result<&GroupHom> {
        let (i, j) = (self.complex.require(s)?, self.complex.require(t)?);
        self.alphas
            .get(&(i, j))
            .ok_or_else(|| Error::InvalidSystem(format!("{s} is not a face of {t}")))
    }

    pub fn alpha_at(&self, i: usize, j: usize) -> &GroupHom {
        &self.alphas[&(i, j)]
    }

    /// The automorphism group behind `A_σ`, for systems built from an amalgam.
    pub fn aut(&self, s: &Simplex) -> Result<Option<&AutGroup>> {
        let i = self.complex.require(s)?;
        Ok(self.auts.as_ref().map(|a| &a[i]))
    }

    pub fn aut_at(&self, i: usize) -> Option<&AutGroup> {
        self.auts.as_ref().map(|a| &a[i])
    }

    pub fn has_auts(&self) -> bool {
        self.auts.is_some()
    }

    #[cfg(test)]
    pub(crate) fn replace_alpha_unchecked(&mut self, i: usize, j: usize, map: Vec<Elem>) {
        let a = &self.alphas[&(i, j)];
        let h = GroupHom::new_unchecked(a.domain().clone(), a.codomain().clone(), map);
        self.alphas.insert((i, j), h);
    }
}

/// Homomorphism and diamond checks on every stored map.
pub fn validate_system(sys: &CoefficientSystem) -> Result<()> {
    let simplices = sys.complex.simplices();
    for (s, t) in sys.complex.face_pairs() {
        let (i, j) = (sys.complex.require(&s)?, sys.complex.require(&t)?);
        let a = sys
            .alphas
            .get(&(i, j))
            .ok_or_else(|| Error::InvalidSystem(format!("missing alpha {s} -> {t}")))?;
        validate_hom(a, false).map_err(|e| Error::InvalidSystem(format!("alpha {s} -> {t}: {e}")))?;
    }
    for (j, t) in simplices.iter().enumerate() {
        for (i, s) in simplices.iter().enumerate() {
            if s.len() >= t.len() || !s.is_face_of(t) {
                continue;
            }
            for v in t.vertices().iter().copied().filter(|&v| !s.contains(v)) {
                let r = sys.complex.require(&s.with(v))?;
                let via = compose_homs(&sys.alphas[&(r, j)], &sys.alphas[&(i, r)])?;
                if via.map() != sys.alphas[&(i, j)].map() {
                    return Err(Error::InvalidSystem(format!(
                        "diamond fails: alpha {s} -> {t} differs from the composite through {}",
                        simplices[r]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `A_σ` = automorphisms of `G_σ` stabilizing the image of every coface,
/// `α^σ_τ = ad(ψ^σ_τ)`.
pub fn coefficient_system_of(g0: &Amalgam, budgets: &Budgets) -> Result<CoefficientSystem> {
    let complex = g0.complex().clone();
    let mut auts = Vec::with_capacity(complex.len());
    for s in complex.simplices() {
        let stab = g0.coface_images(s)?;
        let aut = automorphisms(g0.group(s)?, &stab, budgets.aut_nodes).map_err(|e| match e {
            Error::AutBudgetExceeded { budget } => Error::AutBudgetAtSimplex { simplex: s.to_string(), budget },
            e => e,
        })?;
        auts.push(aut);
    }
    let mut covers = HashMap::new();
    for (s, t) in complex.cover_pairs() {
        let (i, j) = (complex.require(&s)?, complex.require(&t)?);
        let psi = g0.connecting_map(&s, &t)?;
        let (from, to) = (&auts[i], &auts[j]);
        let mut map = Vec::with_capacity(from.order());
        for p in from.perms() {
            let q = ad_conjugate(psi, p)?;
            let k = to.index_of(&q).ok_or_else(|| {
                Error::Internal(format!("ad of an automorphism of {s} is not in the group at {t}"))
            })?;
            map.push(k);
        }
        covers.insert((i, j), GroupHom::new_unchecked(from.group().clone(), to.group().clone(), map));
    }
    let groups = auts.iter().map(|a| a.group().clone()).collect();
    CoefficientSystem::assemble(complex, groups, Some(auts), covers)
}

/// A normal subgroup `N_σ ⊴ A_σ` per simplex with `α^σ_τ(N_σ) ⊆ N_τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSubsystem {
    members: Vec<Subgroup>,
}

impl NormalSubsystem {
    pub fn new(sys: &CoefficientSystem, members: Vec<Subgroup>) -> Result<Self> {
        if members.len() != sys.complex.len() {
            return Err(Error::NotNormalSubsystem(format!(
                "{} subgroups for {} simplices",
                members.len(),
                sys.complex.len()
            )));
        }
        for (i, s) in sys.complex.simplices().iter().enumerate() {
            let g = &sys.groups[i];
            if members[i].parent_order() != g.order() {
                return Err(Error::NotNormalSubsystem(format!("subgroup at {s} lives in a group of the wrong order")));
            }
            if !members[i].is_normal_in(g) {
                return Err(Error::NotNormalSubsystem(format!("subgroup at {s} is not normal")));
            }
        }
        for (s, t) in sys.complex.cover_pairs() {
            let (i, j) = (sys.complex.require(&s)?, sys.complex.require(&t)?);
            let a = &sys.alphas[&(i, j)];
            if let Some(&x) = members[i].members().iter().find(|&&x| !members[j].contains(a.apply(x))) {
                return Err(Error::NotNormalSubsystem(format!("alpha {s} -> {t} sends {x} outside the subgroup")));
            }
        }
        Ok(NormalSubsystem { members })
    }

    pub fn trivial(sys: &CoefficientSystem) -> Self {
        NormalSubsystem { members: sys.groups.iter().map(|g| Subgroup::trivial(g)).collect() }
    }

    pub fn whole(sys: &CoefficientSystem) -> Self {
        NormalSubsystem { members: sys.groups.iter().map(|g| Subgroup::whole(g)).collect() }
    }

    pub fn member(&self, i: usize) -> &Subgroup {
        &self.members[i]
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    /// The subsystem as a coefficient system in its own right, with the
    /// embeddings of local indices into each `A_σ`.
    pub fn as_system(&self, sys: &CoefficientSystem) -> Result<(CoefficientSystem, Vec<Vec<Elem>>)> {
        let mut groups = Vec::new();
        let mut embeds = Vec::new();
        for (g, n) in sys.groups.iter().zip(&self.members) {
            let (h, e) = g.subgroup_as_group(n);
            groups.push(Arc::new(h));
            embeds.push(e);
        }
        let mut covers = HashMap::new();
        for (s, t) in sys.complex.cover_pairs() {
            let (i, j) = (sys.complex.require(&s)?, sys.complex.require(&t)?);
            let a = &sys.alphas[&(i, j)];
            let map = embeds[i]
                .iter()
                .map(|&x| embeds[j].binary_search(&a.apply(x)).map(|k| k as Elem))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::NotNormalSubsystem(format!("alpha {s} -> {t} leaves the subsystem")))?;
            covers.insert((i, j), GroupHom::new_unchecked(groups[i].clone(), groups[j].clone(), map));
        }
        Ok((CoefficientSystem::new(sys.complex.clone(), groups, covers)?, embeds))
    }

    /// First covering pair on which `α` fails to restrict to a bijection
    /// `N_σ -> N_τ`.
    pub fn non_isomorphic_pair(&self, sys: &CoefficientSystem) -> Option<(Simplex, Simplex)> {
        for (s, t) in sys.complex.cover_pairs() {
            let (i, j) = (sys.complex.index_of(&s)?, sys.complex.index_of(&t)?);
            let a = &sys.alphas[&(i, j)];
            let mut image: Vec<Elem> = self.members[i].members().iter().map(|&x| a.apply(x)).collect();
            image.sort_unstable();
            image.dedup();
            if image.len() != self.members[i].len() || image != self.members[j].members() {
                return Some((s, t));
            }
        }
        None
    }
}

/// Conjugations of `G_σ` by the image of the triangle group, for a system
/// built from an amalgam over the full 2-simplex. Fails if `α` does not
/// restrict to isomorphisms between these subgroups.
pub fn inner_subsystem(sys: &CoefficientSystem, g0: &Amalgam) -> Result<NormalSubsystem> {
    if !sys.complex.is_triangle() || g0.complex() != &sys.complex {
        return Err(Error::NotTriangle);
    }
    let auts = sys
        .auts
        .as_ref()
        .ok_or_else(|| Error::InvalidSystem("inner subsystem needs a system built from an amalgam".into()))?;
    let top = Simplex::new(vec![1, 2, 3]);
    let mut members = Vec::new();
    for (i, s) in sys.complex.simplices().iter().enumerate() {
        let g = g0.group(s)?;
        let gbar = g0.image_subgroup(s, &top)?;
        let mut idx = Vec::with_capacity(gbar.len());
        for &c in gbar.members() {
            let p: Vec<Elem> = g.elements().map(|x| g.conj(x, c)).collect();
            idx.push(auts[i].index_of(&p).ok_or_else(|| {
                Error::Internal(format!("conjugation by the triangle image is not in the group at {s}"))
            })?);
        }
        idx.sort_unstable();
        idx.dedup();
        members.push(Subgroup::new(&sys.groups[i], idx)?);
    }
    let n = NormalSubsystem::new(sys, members)?;
    if let Some((s, t)) = n.non_isomorphic_pair(sys) {
        return Err(Error::InnerNotIsomorphic { from: s.to_string(), to: t.to_string() });
    }
    let ti = sys.complex.require(&top)?;
    let g123 = g0.group(&top)?;
    let centre = g123.center().len();
    if n.members[ti].len() * centre != g123.order() {
        return Err(Error::Internal("subsystem at the triangle is not the inner automorphism group".into()));
    }
    Ok(n)
}

/// `A/N`: per simplex, cosets numbered in order of their minimal element, so
/// the identity coset is 0.
#[derive(Clone, Debug)]
pub struct QuotientSystem {
    system: CoefficientSystem,
    projections: Vec<Vec<Elem>>,
    reps: Vec<Vec<Elem>>,
}

impl QuotientSystem {
    pub fn system(&self) -> &CoefficientSystem {
        &self.system
    }

    /// Coset index of `a ∈ A_σ` at simplex index `i`.
    pub fn project(&self, i: usize, a: Elem) -> Elem {
        self.projections[i][a as usize]
    }

    /// Minimal element of coset `k` at simplex index `i`.
    pub fn rep(&self, i: usize, k: Elem) -> Elem {
        self.reps[i][k as usize]
    }

    pub fn reps(&self, i: usize) -> &[Elem] {
        &self.reps[i]
    }
}

pub fn quotient_system(sys: &CoefficientSystem, n: &NormalSubsystem) -> Result<QuotientSystem> {
    let mut projections = Vec::new();
    let mut reps = Vec::new();
    let mut groups = Vec::new();
    for (i, g) in sys.groups.iter().enumerate() {
        let sub = &n.members[i];
        if sub.parent_order() != g.order() || !sub.is_normal_in(g) {
            return Err(Error::NotNormalSubsystem(format!("subgroup at {} is not normal", sys.complex.simplices()[i])));
        }
        let mut proj = vec![Elem::MAX; g.order()];
        let mut rep = Vec::new();
        for a in g.elements() {
            if proj[a as usize] != Elem::MAX {
                continue;
            }
            let k = rep.len() as Elem;
            rep.push(a);
            for &x in sub.members() {
                proj[g.mul(a, x) as usize] = k;
            }
        }
        let m = rep.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &rep {
            for &b in &rep {
                table.push(proj[g.mul(a, b) as usize]);
            }
        }
        groups.push(Arc::new(FiniteGroup::from_table_unchecked(m, table)));
        projections.push(proj);
        reps.push(rep);
    }
    let mut covers = HashMap::new();
    for (s, t) in sys.complex.cover_pairs() {
        let (i, j) = (sys.complex.require(&s)?, sys.complex.require(&t)?);
        let a = &sys.alphas[&(i, j)];
        let map: Vec<Elem> = reps[i].iter().map(|&r| projections[j][a.apply(r) as usize]).collect();
        for x in sys.groups[i].elements() {
            if projections[j][a.apply(x) as usize] != map[projections[i][x as usize] as usize] {
                return Err(Error::NotNormalSubsystem(format!("induced alpha {s} -> {t} is not well defined on cosets")));
            }
        }
        covers.insert((i, j), GroupHom::new_unchecked(groups[i].clone(), groups[j].clone(), map));
    }
    let system = CoefficientSystem::new(sys.complex.clone(), groups, covers)?;
    Ok(QuotientSystem { system, projections, reps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn budgets() -> Budgets {
        Budgets::default()
    }

    fn orders(sys: &CoefficientSystem) -> Vec<usize> {
        sys.groups().iter().map(|g| g.order()).collect()
    }

    #[test]
    fn trivial_amalgam_has_trivial_system() {
        let x = SimplicialComplex::full(3).unwrap();
        let sys = coefficient_system_of(&catalog::trivial_amalgam(x).unwrap(), &budgets()).unwrap();
        assert!(orders(&sys).iter().all(|&n| n == 1));
    }

    #[test]
    fn cyclic_edge_system() {
        let sys = coefficient_system_of(&catalog::cyclic_edge(), &budgets()).unwrap();
        assert_eq!(orders(&sys), vec![2, 2, 1]);
        let e = Simplex::new(vec![1, 2]);
        for v in [1, 2] {
            assert_eq!(sys.alpha(&Simplex::vertex(v), &e).unwrap().map(), &[0, 0]);
        }
    }

    #[test]
    fn maximal_simplex_gets_full_automorphism_group() {
        let g0 = catalog::dihedral_klein();
        let sys = coefficient_system_of(&g0, &budgets()).unwrap();
        // Aut(V4) = S3
        assert_eq!(sys.group(&Simplex::new(vec![1, 2])).unwrap().order(), 6);
    }

    #[test]
    fn alphas_match_direct_conjugation() {
        let g0 = catalog::s4_d8_triangle();
        let sys = coefficient_system_of(&g0, &budgets()).unwrap();
        for (s, t) in sys.complex().face_pairs() {
            let psi = g0.connecting_map(&s, &t).unwrap();
            let (from, to) = (sys.aut(&s).unwrap().unwrap(), sys.aut(&t).unwrap().unwrap());
            let a = sys.alpha(&s, &t).unwrap();
            for (k, f) in from.perms().iter().enumerate() {
                // ψ(α(f)(y)) = f(ψ(y))
                let g = to.perm(a.apply(k as Elem));
                for y in 0..psi.domain().order() {
                    assert_eq!(psi.apply(g[y]), f[psi.apply(y as Elem) as usize]);
                }
            }
        }
    }

    #[test]
    fn corrupted_alpha_is_reported() {
        let mut sys = coefficient_system_of(&catalog::dihedral_klein(), &budgets()).unwrap();
        let c = sys.complex().clone();
        let (i, j) = (c.index_of(&Simplex::vertex(1)).unwrap(), c.index_of(&Simplex::new(vec![1, 2])).unwrap());
        let n = sys.group_at(i).order();
        let mut map = vec![0; n];
        map[1] = 1;
        sys.replace_alpha_unchecked(i, j, map);
        assert!(matches!(validate_system(&sys), Err(Error::InvalidSystem(_))));
    }

    #[test]
    fn identity_system_validates() {
        let x = SimplicialComplex::full(3).unwrap();
        let g = Arc::new(catalog::symmetric(3));
        let groups = vec![g.clone(); x.len()];
        let mut covers = HashMap::new();
        for (s, t) in x.cover_pairs() {
            covers.insert((x.index_of(&s).unwrap(), x.index_of(&t).unwrap()), GroupHom::identity(g.clone()));
        }
        let sys = CoefficientSystem::new(x, groups, covers).unwrap();
        validate_system(&sys).unwrap();
    }

    #[test]
    fn aut_budget_names_the_simplex() {
        let b = Budgets { aut_nodes: 1, ..Budgets::default() };
        let e = coefficient_system_of(&catalog::s4_s3_triangle(), &b).unwrap_err();
        assert!(matches!(e, Error::AutBudgetAtSimplex { .. }), "{e}");
    }

    /// Conjugation maps of `G_σ` by the triangle image, counted directly.
    fn brute_inner_order(g0: &Amalgam, s: &Simplex) -> usize {
        let g = g0.group(s).unwrap();
        let top = Simplex::new(vec![1, 2, 3]);
        let gbar = g0.image_subgroup(s, &top).unwrap();
        let mut maps: Vec<Vec<Elem>> =
            gbar.members().iter().map(|&c| g.elements().map(|x| g.conj(x, c)).collect()).collect();
        maps.sort();
        maps.dedup();
        maps.len()
    }

    #[test]
    fn inner_subsystem_on_s4_chain() {
        let g0 = catalog::s4_d8_triangle();
        let sys = coefficient_system_of(&g0, &budgets()).unwrap();
        match inner_subsystem(&sys, &g0) {
            Ok(n) => {
                for (i, s) in sys.complex().simplices().iter().enumerate() {
                    assert_eq!(n.member(i).len(), brute_inner_order(&g0, s));
                }
            }
            Err(Error::InnerNotIsomorphic { .. }) => {
                let sizes: Vec<usize> = sys.complex().simplices().iter().map(|s| brute_inner_order(&g0, s)).collect();
                assert!(sizes.iter().any(|&k| k != sizes[0]));
            }
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn inner_subsystem_constant_centreless() {
        let g0 = catalog::constant_s3_triangle();
        let sys = coefficient_system_of(&g0, &budgets()).unwrap();
        let n = inner_subsystem(&sys, &g0).unwrap();
        assert!(n.members().iter().all(|m| m.len() == 6));
        assert!(n.non_isomorphic_pair(&sys).is_none());
    }

    #[test]
    fn inner_subsystem_abelian_central_is_trivial() {
        let x = SimplicialComplex::full(3).unwrap();
        let z6 = catalog::cyclic(6);
        let subs = vec![Subgroup::whole(&z6); x.len()];
        let g0 = catalog::inclusion_amalgam(&z6, x, &subs).unwrap();
        let sys = coefficient_system_of(&g0, &budgets()).unwrap();
        let n = inner_subsystem(&sys, &g0).unwrap();
        assert!(n.members().iter().all(|m| m.len() == 1));
    }

    #[test]
    fn inner_subsystem_needs_a_triangle() {
        let g0 = catalog::dihedral_klein();
        let sys = coefficient_system_of(&g0, &budgets()).unwrap();
        assert_eq!(inner_subsystem(&sys, &g0).unwrap_err(), Error::NotTriangle);
    }

    #[test]
    fn quotients_by_trivial_and_whole() {
        let g0 = catalog::s4_s3_triangle();
        let sys = coefficient_system_of(&g0, &budgets()).unwrap();
        let q = quotient_system(&sys, &NormalSubsystem::trivial(&sys)).unwrap();
        assert_eq!(orders(q.system()), orders(&sys));
        for (i, g) in sys.groups().iter().enumerate() {
            assert_eq!(q.system().group_at(i).as_ref(), g.as_ref());
        }
        let q = quotient_system(&sys, &NormalSubsystem::whole(&sys)).unwrap();
        assert!(orders(q.system()).iter().all(|&n| n == 1));
    }

    #[test]
    fn quotient_by_inner_obeys_lagrange() {
        let g0 = catalog::s4z2_triangle();
        let sys = coefficient_system_of(&g0, &budgets()).unwrap();
        let Ok(n) = inner_subsystem(&sys, &g0) else { return };
        let q = quotient_system(&sys, &n).unwrap();
        for i in 0..sys.complex().len() {
            assert_eq!(q.system().group_at(i).order() * n.member(i).len(), sys.group_at(i).order());
            // projection commutes with alpha
            for (s, t) in sys.complex().face_pairs() {
                let (a, b) = (sys.complex().index_of(&s).unwrap(), sys.complex().index_of(&t).unwrap());
                for x in sys.group_at(a).elements() {
                    let up = q.project(b, sys.alpha_at(a, b).apply(x));
                    assert_eq!(up, q.system().alpha_at(a, b).apply(q.project(a, x)));
                }
            }
        }
    }

    #[test]
    fn non_normal_subsystem_rejected() {
        let sys = coefficient_system_of(&catalog::dihedral_klein(), &budgets()).unwrap();
        // a subgroup of order 2 in Aut(V4) = S3 is not normal
        let c = sys.complex().clone();
        let e = c.index_of(&Simplex::new(vec![1, 2])).unwrap();
        let g = sys.group_at(e).clone();
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let mut members: Vec<Subgroup> = sys.groups().iter().map(|g| Subgroup::trivial(g)).collect();
        members[e] = Subgroup::new(&g, vec![0, t]).unwrap();
        assert!(matches!(NormalSubsystem::new(&sys, members), Err(Error::NotNormalSubsystem(_))));
    }
}
