//! Normalized amalgams of type `G0` correspond to 1-cocycles of the
//! coefficient system of `G0`, and isomorphisms between them to the action
//! of `C⁰`. Classification lists one normalized amalgam per class of `H¹`.

use std::collections::HashMap;

use crate::amalgam::{check_iso, Amalgam, AmalgamIso};
use crate::budget::Budgets;
use crate::coefficients::{coefficient_system_of, CoefficientSystem};
use crate::cohomology::{h1, Cochain, Cochains, CohomologySet};
use crate::complex::Simplex;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupHom, Subgroup};

fn auts_required(sys: &CoefficientSystem) -> Result<()> {
    if sys.has_auts() {
        Ok(())
    } else {
        Err(Error::InvalidSystem("the system was not built from an amalgam".into()))
    }
}

/// `a_ij = (φ^i_ij)⁻¹ ∘ ψ^i_ij` per edge, as elements of `A_ij`.
pub fn cocycle_of(g: &Amalgam, g0: &Amalgam, sys: &CoefficientSystem) -> Result<Cochain> {
    auts_required(sys)?;
    if let Some(why) = g.type_difference(g0)? {
        return Err(Error::TypeMismatch(why));
    }
    if !g.is_normalized(g0) {
        return Err(Error::NotNormalized("a map onto the face without its least vertex differs from the reference".into()));
    }
    let c = Cochains::new(sys);
    let complex = sys.complex();
    let twists = g.edge_twists(g0)?;
    let mut z = Vec::with_capacity(twists.len());
    for (e, t) in complex.edges().zip(&twists) {
        let aut = sys.aut_at(complex.require(e)?).unwrap();
        let k = aut
            .index_of(t)
            .ok_or_else(|| Error::Internal(format!("twist at {e} is not in the automorphism group")))?;
        z.push(k);
    }
    if let Some(t) = c.cocycle_violation(&z) {
        return Err(Error::Internal(format!("twists of a normalized amalgam fail the cocycle condition at {t}")));
    }
    Ok(z)
}

/// The normalized amalgam with cocycle `z`:
/// `φ^σ_τ = ψ^σ_τ` if `max σ = max τ`, otherwise
/// `φ^σ_τ = (ψ^j_σ)⁻¹ ∘ ψ^j_jk ∘ a_jk⁻¹ ∘ ψ^jk_τ` with `j = max σ`, `k = max τ`.
pub fn amalgam_of(z: &[Elem], g0: &Amalgam, sys: &CoefficientSystem) -> Result<Amalgam> {
    auts_required(sys)?;
    if g0.complex() != sys.complex() {
        return Err(Error::TypeMismatch("reference and system live on different complexes".into()));
    }
    let c = Cochains::new(sys);
    c.check1(z)?;
    if let Some(t) = c.cocycle_violation(z) {
        return Err(Error::NotCocycle(t.to_string()));
    }
    let complex = sys.complex();
    let edge_pos: HashMap<usize, usize> =
        complex.edges().enumerate().map(|(p, e)| (complex.index_of(e).unwrap(), p)).collect();
    let formula = |s: &Simplex, t: &Simplex| -> Result<Vec<Elem>> {
        let psi = g0.connecting_map(s, t)?;
        let (j, k) = (s.max_vertex(), t.max_vertex());
        if j == k {
            return Ok(psi.map().to_vec());
        }
        let vj = Simplex::vertex(j);
        let jk = Simplex::new(vec![j, k]);
        let jk_idx = complex.require(&jk)?;
        let aut = sys.aut_at(jk_idx).unwrap();
        let a = z[edge_pos[&jk_idx]];
        let a_inv = aut.perm(aut.group().inv(a));
        let down = g0.connecting_map(&jk, t)?;
        let up = g0.connecting_map(&vj, &jk)?;
        let back = g0.connecting_map(&vj, s)?.partial_inverse();
        down.map()
            .iter()
            .map(|&x| {
                back[up.apply(a_inv[x as usize]) as usize]
                    .ok_or_else(|| Error::Internal(format!("twisted map {t} -> {s} leaves the image")))
            })
            .collect()
    };
    let mut covers = HashMap::new();
    for (s, t) in complex.cover_pairs() {
        let (i, j) = (complex.require(&s)?, complex.require(&t)?);
        let h = GroupHom::new_unchecked(g0.group(&t)?.clone(), g0.group(&s)?.clone(), formula(&s, &t)?);
        covers.insert((i, j), h);
    }
    let g = Amalgam::assemble(complex.clone(), g0.groups().to_vec(), covers)?;
    for (s, t) in complex.face_pairs() {
        if s != t && g.connecting_map(&s, &t)?.map() != formula(&s, &t)?.as_slice() {
            return Err(Error::Internal(format!("composite {t} -> {s} disagrees with the direct formula")));
        }
    }
    Ok(g)
}

/// The isomorphism `amalgam_of(z1) -> amalgam_of(z2)` induced by `f` with
/// `z1 = act(z2, f)`: `φ_τ = α^{max τ}_τ(f_{max τ})`.
pub fn iso_from_coboundary(
    f: &[Elem],
    z1: &[Elem],
    z2: &[Elem],
    g0: &Amalgam,
    sys: &CoefficientSystem,
) -> Result<AmalgamIso> {
    auts_required(sys)?;
    let c = Cochains::new(sys);
    c.check0(f)?;
    c.check1(z1)?;
    c.check1(z2)?;
    if c.act(z2, f) != z1 {
        return Err(Error::ActionMismatch);
    }
    let iso = coboundary_components(f, sys)?;
    check_iso(&amalgam_of(z1, g0, sys)?, &amalgam_of(z2, g0, sys)?, &iso)?;
    Ok(iso)
}

fn coboundary_components(f: &[Elem], sys: &CoefficientSystem) -> Result<AmalgamIso> {
    let complex = sys.complex();
    let vpos: HashMap<u32, usize> = complex.vertices().enumerate().map(|(p, v)| (v.vertices()[0], p)).collect();
    let mut components = Vec::with_capacity(complex.len());
    for (i, t) in complex.simplices().iter().enumerate() {
        let v = t.max_vertex();
        let vi = complex.require(&Simplex::vertex(v))?;
        let a = sys.alpha_at(vi, i).apply(f[vpos[&v]]);
        let aut = sys.aut_at(i).unwrap();
        components.push(GroupHom::new_unchecked(aut.base().clone(), aut.base().clone(), aut.perm(a).to_vec()));
    }
    Ok(AmalgamIso { components })
}

/// `H¹(X, A₀)` of a reference amalgam together with one normalized amalgam
/// per class.
#[derive(Clone, Debug)]
pub struct Classification {
    reference: Amalgam,
    system: CoefficientSystem,
    cohomology: CohomologySet,
    representatives: Vec<Amalgam>,
}

impl Classification {
    pub fn reference(&self) -> &Amalgam {
        &self.reference
    }

    pub fn system(&self) -> &CoefficientSystem {
        &self.system
    }

    pub fn cohomology(&self) -> &CohomologySet {
        &self.cohomology
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[Amalgam] {
        &self.representatives
    }

    /// Isomorphism `amalgam_of(Z¹[i]) -> amalgam_of(Z¹[j])` for two cocycles
    /// (indices into the sorted cocycle list) in the same class.
    pub fn witness(&self, i: usize, j: usize) -> Result<Option<AmalgamIso>> {
        let h = &self.cohomology;
        if h.class_of_index(i) != h.class_of_index(j) {
            return Ok(None);
        }
        let c = Cochains::new(&self.system);
        let (fi, fj) = (h.transporter(&c, i), h.transporter(&c, j));
        let f = c.mul0(&c.inv0(&fj), &fi);
        let (zi, zj) = (&h.cocycles()[i], &h.cocycles()[j]);
        iso_from_coboundary(&f, zi, zj, &self.reference, &self.system).map(Some)
    }

    /// Class of an amalgam of the reference type and an isomorphism from it
    /// onto that class's representative.
    pub fn locate(&self, g: &Amalgam) -> Result<(usize, AmalgamIso)> {
        let (gn, to_normal) = g.normalize(&self.reference)?;
        let z = cocycle_of(&gn, &self.reference, &self.system)?;
        let h = &self.cohomology;
        let i = h
            .index_of(&z)
            .ok_or_else(|| Error::Internal("cocycle of a normalized amalgam is missing from Z1".into()))?;
        let class = h.class_of_index(i);
        let rep = h.classes()[class].representative;
        let to_rep = self.witness(i, rep)?.unwrap();
        let iso = to_rep.after(&to_normal)?;
        check_iso(g, &self.representatives[class], &iso)?;
        Ok((class, iso))
    }

    /// Decides isomorphism of two amalgams of the reference type.
    pub fn isomorphism(&self, g1: &Amalgam, g2: &Amalgam) -> Result<Option<AmalgamIso>> {
        let (c1, i1) = self.locate(g1)?;
        let (c2, i2) = self.locate(g2)?;
        if c1 != c2 {
            return Ok(None);
        }
        let iso = i2.inverse()?.after(&i1)?;
        check_iso(g1, g2, &iso)?;
        Ok(Some(iso))
    }
}

pub fn classify(g0: &Amalgam, budgets: &Budgets) -> Result<Classification> {
    let system = coefficient_system_of(g0, budgets)?;
    classify_with(g0, system, budgets)
}

pub fn classify_with(g0: &Amalgam, system: CoefficientSystem, budgets: &Budgets) -> Result<Classification> {
    let cohomology = h1(&system, budgets)?;
    let representatives = (0..cohomology.len())
        .map(|k| amalgam_of(cohomology.representative(k), g0, &system))
        .collect::<Result<Vec<_>>>()?;
    if representatives.first() != Some(g0) {
        return Err(Error::Internal("the base class does not reproduce the reference amalgam".into()));
    }
    for r in &representatives {
        if !r.is_normalized(g0) {
            return Err(Error::Internal("a representative is not normalized".into()));
        }
    }
    Ok(Classification { reference: g0.clone(), system, cohomology, representatives })
}

/// Double cosets `Ā₂ \ A₁₂ / Ā₁` with `Ā_i = α^i_12(A_i)`.
#[derive(Clone, Debug)]
pub struct Goldschmidt {
    pub image1: Subgroup,
    pub image2: Subgroup,
    /// Sorted members of each double coset, ordered by least member.
    pub cosets: Vec<Vec<Elem>>,
    /// For each double coset, the class of `H¹` with the same members.
    pub classes: Vec<usize>,
}

impl Goldschmidt {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn representatives(&self) -> Vec<Elem> {
        self.cosets.iter().map(|c| c[0]).collect()
    }
}

/// Goldschmidt's double cosets for an amalgam over the edge `{1,2}`, checked
/// against `H¹` class by class.
pub fn goldschmidt(g0: &Amalgam, sys: &CoefficientSystem, h: &CohomologySet) -> Result<Goldschmidt> {
    if !sys.complex().is_edge() {
        return Err(Error::NotEdge);
    }
    let _ = g0;
    let (v1, v2, e) = (Simplex::vertex(1), Simplex::vertex(2), Simplex::new(vec![1, 2]));
    let a12 = sys.group(&e)?.clone();
    let image1 = sys.alpha(&v1, &e)?.image();
    let image2 = sys.alpha(&v2, &e)?.image();
    let gens = |s: &Subgroup| -> Vec<Elem> {
        let (g, embed) = a12.subgroup_as_group(s);
        g.generators().iter().map(|&x| embed[x as usize]).collect()
    };
    let (left, right) = (gens(&image2), gens(&image1));
    let mut seen = vec![false; a12.order()];
    let mut cosets = Vec::new();
    for x in a12.elements() {
        if seen[x as usize] {
            continue;
        }
        seen[x as usize] = true;
        let mut coset = vec![x];
        let mut head = 0;
        while head < coset.len() {
            let y = coset[head];
            head += 1;
            let next = left.iter().map(|&l| a12.mul(l, y)).chain(right.iter().map(|&r| a12.mul(y, r)));
            for w in next.collect::<Vec<_>>() {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    coset.push(w);
                }
            }
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    if cosets.len() != h.len() {
        return Err(Error::Internal(format!("{} double cosets but {} cohomology classes", cosets.len(), h.len())));
    }
    let mut classes = Vec::with_capacity(cosets.len());
    for coset in &cosets {
        let k = h
            .class_of(&[coset[0]])
            .ok_or_else(|| Error::Internal("edge cochain missing from Z1".into()))?;
        let mut orbit: Vec<Elem> = h.orbit(k).iter().map(|z| z[0]).collect();
        orbit.sort_unstable();
        if &orbit != coset {
            return Err(Error::Internal(format!("double coset of {} differs from its cohomology class", coset[0])));
        }
        classes.push(k);
    }
    Ok(Goldschmidt { image1, image2, cosets, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{oracle_classes, oracle_enumerate_type, oracle_isomorphic};
    use crate::catalog;
    use crate::complex::SimplicialComplex;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const ORACLE_FIXTURES: [&str; 7] = [
        "trivial-edge",
        "trivial-triangle",
        "cyclic-edge",
        "cyclic-chain",
        "dihedral-klein",
        "dihedral-quaternion",
        "coxeter-triangle",
    ];

    fn b() -> Budgets {
        Budgets::default()
    }

    #[test]
    fn reference_has_identity_cocycle() {
        for (name, g0) in catalog::fixtures() {
            let sys = coefficient_system_of(&g0, &b()).unwrap();
            let z = cocycle_of(&g0, &g0, &sys).unwrap();
            assert!(z.iter().all(|&x| x == 0), "{name}");
            assert_eq!(amalgam_of(&z, &g0, &sys).unwrap(), g0, "{name}");
        }
    }

    #[test]
    fn round_trip_on_all_cocycles() {
        for (name, g0) in catalog::fixtures() {
            let sys = coefficient_system_of(&g0, &b()).unwrap();
            let h = h1(&sys, &b()).unwrap();
            for z in h.cocycles() {
                let g = amalgam_of(z, &g0, &sys).unwrap();
                assert!(g.is_normalized(&g0), "{name}");
                assert_eq!(&cocycle_of(&g, &g0, &sys).unwrap(), z, "{name}");
            }
        }
    }

    #[test]
    fn twisted_edge_reads_back_its_twist() {
        let g0 = catalog::dihedral_klein();
        let sys = coefficient_system_of(&g0, &b()).unwrap();
        let e = Simplex::new(vec![1, 2]);
        let aut = sys.aut(&e).unwrap().unwrap();
        let v1 = Simplex::vertex(1);
        let psi = g0.connecting_map(&v1, &e).unwrap();
        for k in 0..aut.order() as Elem {
            // φ^1_12 = ψ^1_12 ∘ a⁻¹
            let inv = aut.perm(aut.group().inv(k));
            let map: Vec<Elem> = inv.iter().map(|&x| psi.apply(x)).collect();
            let g = g0.with_cover_map(&v1, &e, map).unwrap();
            assert_eq!(cocycle_of(&g, &g0, &sys).unwrap(), vec![k]);
        }
    }

    #[test]
    fn non_cocycles_rejected() {
        let g0 = catalog::constant_s3_triangle();
        let sys = coefficient_system_of(&g0, &b()).unwrap();
        let mut z = vec![0; 3];
        z[0] = 1;
        assert!(matches!(amalgam_of(&z, &g0, &sys), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn unnormalized_input_rejected() {
        let g0 = catalog::dihedral_klein();
        let sys = coefficient_system_of(&g0, &b()).unwrap();
        let (v2, e) = (Simplex::vertex(2), Simplex::new(vec![1, 2]));
        let psi = g0.connecting_map(&v2, &e).unwrap();
        let aut = sys.aut(&e).unwrap().unwrap();
        let p = aut.perm(1);
        let map: Vec<Elem> = p.iter().map(|&x| psi.apply(x)).collect();
        let g = g0.with_cover_map(&v2, &e, map).unwrap();
        assert!(matches!(cocycle_of(&g, &g0, &sys), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn coboundary_isomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (name, g0) in catalog::fixtures() {
            let sys = coefficient_system_of(&g0, &b()).unwrap();
            let c = Cochains::new(&sys);
            let h = h1(&sys, &b()).unwrap();
            let id = iso_from_coboundary(&c.identity0(), &c.identity1(), &c.identity1(), &g0, &sys).unwrap();
            assert!(id.is_identity(), "{name}");
            for _ in 0..5 {
                let z2 = &h.cocycles()[rng.gen_range(0..h.cocycles().len())];
                let f = c.random0(&mut rng);
                let z1 = c.act(z2, &f);
                iso_from_coboundary(&f, &z1, z2, &g0, &sys).unwrap();
                if z1 != *z2 {
                    assert_eq!(iso_from_coboundary(&c.identity0(), &z1, z2, &g0, &sys).unwrap_err(), Error::ActionMismatch);
                }
            }
        }
    }

    #[test]
    fn classification_matches_oracle() {
        for (name, g0) in catalog::fixtures() {
            if !ORACLE_FIXTURES.contains(&name) {
                continue;
            }
            let cl = classify(&g0, &b()).unwrap();
            let (_, oc) = oracle_classes(&g0, &b()).unwrap();
            assert_eq!(cl.len(), oc.len(), "{name}");
            for (i, r) in cl.representatives().iter().enumerate() {
                for s in &cl.representatives()[i + 1..] {
                    assert!(oracle_isomorphic(r, s, &b()).unwrap().is_none(), "{name}");
                }
            }
        }
    }

    #[test]
    fn witnesses_and_location() {
        let g0 = catalog::dihedral_klein();
        let cl = classify(&g0, &b()).unwrap();
        let h = cl.cohomology();
        for i in 0..h.cocycles().len() {
            for j in 0..h.cocycles().len() {
                assert_eq!(cl.witness(i, j).unwrap().is_some(), h.class_of_index(i) == h.class_of_index(j));
            }
        }
        for g in oracle_enumerate_type(&g0, &b()).unwrap().iter() {
            let (class, _) = cl.locate(g).unwrap();
            let twin = cl.isomorphism(g, &cl.representatives()[class]).unwrap();
            assert!(twin.is_some());
        }
    }

    #[test]
    fn goldschmidt_double_cosets() {
        for g0 in [catalog::dihedral_klein(), catalog::cyclic_edge(), catalog::dihedral_quaternion(), catalog::fano()] {
            let sys = coefficient_system_of(&g0, &b()).unwrap();
            let h = h1(&sys, &b()).unwrap();
            let gs = goldschmidt(&g0, &sys, &h).unwrap();
            assert_eq!(gs.len(), h.len());
            let total: usize = gs.cosets.iter().map(|c| c.len()).sum();
            assert_eq!(total, sys.group(&Simplex::new(vec![1, 2])).unwrap().order());
        }
        let g0 = catalog::constant_s3_triangle();
        let sys = coefficient_system_of(&g0, &b()).unwrap();
        let h = h1(&sys, &b()).unwrap();
        assert_eq!(goldschmidt(&g0, &sys, &h).unwrap_err(), Error::NotEdge);
    }

    #[test]
    fn goldschmidt_full_image_gives_one_coset() {
        // A12 trivial
        let g0 = catalog::cyclic_edge();
        let sys = coefficient_system_of(&g0, &b()).unwrap();
        let h = h1(&sys, &b()).unwrap();
        assert_eq!(goldschmidt(&g0, &sys, &h).unwrap().len(), 1);
    }

    #[test]
    fn classification_survives_trivial_extension() {
        let g0 = catalog::cyclic_chain();
        let bigger = SimplicialComplex::build(4, &[vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        let g1 = g0.trivial_extension(&bigger).unwrap();
        assert_eq!(classify(&g0, &b()).unwrap().len(), classify(&g1, &b()).unwrap().len());
        let full = g0.complex().extend_with_small_subsets(3);
        let g2 = g0.trivial_extension(&full).unwrap();
        assert_eq!(classify(&g0, &b()).unwrap().len(), classify(&g2, &b()).unwrap().len());
    }
}
