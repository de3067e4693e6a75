use std::sync::Arc;

use super::*;
use crate::budget::Budgets;
use crate::catalog;
use crate::group::{automorphisms, Subgroup};

fn s(v: &[u32]) -> Simplex {
    Simplex::from(v)
}

/// `ψ ∘ a` for the cover `(σ, τ)` of `g`, with `a` an automorphism of `G_τ`.
fn twisted(g: &Amalgam, sigma: &[u32], tau: &[u32], a: &[Elem]) -> Result<Amalgam> {
    let psi = g.connecting_map(&s(sigma), &s(tau)).unwrap();
    let map = a.iter().map(|&x| psi.apply(x)).collect();
    g.with_cover_map(&s(sigma), &s(tau), map)
}

fn nontrivial_auts(g: &Arc<FiniteGroup>) -> Vec<Vec<Elem>> {
    automorphisms(g, &[], 100_000).unwrap().perms()[1..].to_vec()
}

#[test]
fn trivial_and_cyclic_amalgams_are_valid() {
    let t = catalog::trivial_amalgam(SimplicialComplex::full(3).unwrap()).unwrap();
    assert!(t.groups().iter().all(|g| g.order() == 1));
    let c = catalog::cyclic_edge();
    assert_eq!(c.group(&s(&[1])).unwrap().order(), 4);
    assert_eq!(c.group(&s(&[1, 2])).unwrap().order(), 2);
}

#[test]
fn perturbed_square_breaks_coherence() {
    let g = catalog::constant_s3_triangle();
    let a = &nontrivial_auts(g.group(&s(&[1, 2, 3])).unwrap())[0];
    let err = twisted(&g, &[1, 2], &[1, 2, 3], a).unwrap_err();
    assert!(matches!(err, Error::DiamondIncoherent { .. }), "{err}");
}

#[test]
fn missing_and_non_injective_maps_are_rejected() {
    let z4 = Arc::new(catalog::cyclic(4));
    let z2 = Arc::new(catalog::cyclic(2));
    let c = SimplicialComplex::build(2, &[vec![1, 2]]).unwrap();
    let groups = BTreeMap::from([(s(&[1]), z4.clone()), (s(&[2]), z4.clone()), (s(&[1, 2]), z2.clone())]);
    let mut maps = BTreeMap::from([((s(&[1]), s(&[1, 2])), vec![0, 2])]);
    assert!(matches!(Amalgam::new(c.clone(), &groups, &maps), Err(Error::MissingMap { .. })));
    maps.insert((s(&[2]), s(&[1, 2])), vec![0, 0]);
    assert!(matches!(Amalgam::new(c.clone(), &groups, &maps), Err(Error::BadConnectingMap { .. })));
    maps.insert((s(&[2]), s(&[1, 2])), vec![0, 2]);
    Amalgam::new(c, &groups, &maps).unwrap();
}

#[test]
fn connecting_maps() {
    let g = catalog::s4_s3_triangle();
    let id = g.connecting_map(&s(&[1]), &s(&[1])).unwrap();
    assert!(id.map().iter().enumerate().all(|(x, &y)| x as Elem == y));
    let (a, b) = (s(&[1]), s(&[1, 2, 3]));
    let via12 = compose_homs(g.connecting_map(&a, &s(&[1, 2])).unwrap(), g.connecting_map(&s(&[1, 2]), &b).unwrap()).unwrap();
    let via13 = compose_homs(g.connecting_map(&a, &s(&[1, 3])).unwrap(), g.connecting_map(&s(&[1, 3]), &b).unwrap()).unwrap();
    assert_eq!(via12, via13);
    assert_eq!(g.connecting_map(&a, &b).unwrap(), &via12);
    assert!(g.connecting_map(&s(&[1, 2]), &s(&[1])).is_err());
}

#[test]
fn image_subgroups() {
    let c = catalog::cyclic_edge();
    assert_eq!(c.image_subgroup(&s(&[1]), &s(&[1])).unwrap().len(), 4);
    assert_eq!(c.image_subgroup(&s(&[1]), &s(&[1, 2])).unwrap().members(), &[0, 2]);
    let t = catalog::coxeter_triangle();
    assert_eq!(t.image_subgroup(&s(&[2]), &s(&[1, 2, 3])).unwrap().members(), &[0]);
}

#[test]
fn same_type_examples() {
    let g = catalog::dihedral_klein();
    assert!(g.same_type(&g).unwrap());
    let v4 = g.group(&s(&[1, 2])).unwrap().clone();
    // keep the image: post-compose by an automorphism of the edge group
    for a in nontrivial_auts(&v4) {
        assert!(twisted(&g, &[1], &[1, 2], &a).unwrap().same_type(&g).unwrap());
    }
    // move the image: the other Klein four subgroup of D8
    let d8 = g.group(&s(&[1])).unwrap();
    let image = g.image_subgroup(&s(&[1]), &s(&[1, 2])).unwrap();
    let other: Vec<Elem> = d8
        .elements()
        .filter(|&x| d8.element_order(x) == 2 && !image.contains(x))
        .collect();
    let c = d8.center().members()[1];
    let moved = vec![0, other[0], c, d8.mul(other[0], c)];
    let psi = g.connecting_map(&s(&[1]), &s(&[1, 2])).unwrap();
    // match the element order of the original map: the central element stays put
    let centre_pos = psi.map().iter().position(|&y| y == c).unwrap();
    let mut map = vec![0; 4];
    let mut rest = moved.iter().copied().filter(|&y| y != 0 && y != c);
    for x in 1..4 {
        map[x] = if x == centre_pos { c } else { rest.next().unwrap() };
    }
    let h = g.with_cover_map(&s(&[1]), &s(&[1, 2]), map).unwrap();
    assert!(!h.same_type(&g).unwrap());
    let other_complex = catalog::cyclic_chain();
    assert!(g.same_type(&other_complex).is_err());
}

#[test]
fn normalization_reads_the_bar_face_only() {
    let g = catalog::dihedral_klein();
    let v4 = g.group(&s(&[1, 2])).unwrap().clone();
    let a = &nontrivial_auts(&v4)[0];
    assert!(g.is_normalized(&g));
    let h1 = twisted(&g, &[1], &[1, 2], a).unwrap();
    assert!(h1.is_normalized(&g));
    let h2 = twisted(&g, &[2], &[1, 2], a).unwrap();
    assert!(!h2.is_normalized(&g));
}

#[test]
fn normalize_examples() {
    let g = catalog::dihedral_klein();
    let (n, iso) = g.normalize(&g).unwrap();
    assert_eq!(n, g);
    assert!(iso.is_identity());

    let v4 = g.group(&s(&[1, 2])).unwrap().clone();
    for a in nontrivial_auts(&v4) {
        let h = twisted(&g, &[2], &[1, 2], &a).unwrap();
        let (n, iso) = h.normalize(&g).unwrap();
        assert!(n.is_normalized(&g));
        check_iso(&h, &n, &iso).unwrap();
        // normalization is idempotent
        let (again, id) = n.normalize(&g).unwrap();
        assert_eq!(again, n);
        assert!(id.is_identity());
    }
}

#[test]
fn normalize_on_a_triangle() {
    let g = catalog::s4_s3_triangle();
    let all = oracle_enumerate_type(&g, &Budgets::default()).unwrap();
    let unnormalized = all.iter().filter(|h| !h.is_normalized(&g)).count();
    assert!(unnormalized > 0);
    for h in all.iter().step_by(53) {
        let (n, iso) = h.normalize(&g).unwrap();
        assert!(n.is_normalized(&g));
        check_iso(h, &n, &iso).unwrap();
    }
}

#[test]
fn check_iso_names_the_broken_square() {
    let g = catalog::dihedral_klein();
    check_iso(&g, &g, &AmalgamIso::identity(&g)).unwrap();
    let mut bad = AmalgamIso::identity(&g);
    let v4 = g.group(&s(&[1, 2])).unwrap().clone();
    let a = nontrivial_auts(&v4).remove(0);
    bad.components[2] = GroupHom::new(v4.clone(), v4, a).unwrap();
    let err = check_iso(&g, &g, &bad).unwrap_err();
    assert!(err.to_string().contains("{1}, {1,2}"), "{err}");
}

#[test]
fn trivial_extension_examples() {
    let g = catalog::cyclic_chain();
    assert_eq!(g.trivial_extension(g.complex()).unwrap(), g);
    let big = g.complex().extend_with_small_subsets(3);
    let e = g.trivial_extension(&big).unwrap();
    assert_eq!(e.group(&s(&[1, 3])).unwrap().order(), 1);
    assert_eq!(e.group(&s(&[1, 2, 3])).unwrap().order(), 1);
    let iso = AmalgamIso::identity(&g).extend(g.complex(), &big).unwrap();
    check_iso(&e, &e, &iso).unwrap();
    assert!(matches!(e.trivial_extension(g.complex()), Err(Error::NotSubcomplex(_))));
}

/// Orbit-stabilizer by brute force: `|G| / |orbit|` for a set of points.
fn stabilizer_order_via_orbit(g: &PermGroup, set: &[u32]) -> usize {
    let mut orbit = vec![set.to_vec()];
    let mut head = 0;
    while head < orbit.len() {
        let cur = orbit[head].clone();
        head += 1;
        for &gen in g.generators() {
            let p = g.element(gen);
            let mut img: Vec<u32> = cur.iter().map(|&x| p[x as usize]).collect();
            img.sort_unstable();
            if !orbit.contains(&img) {
                orbit.push(img);
            }
        }
    }
    g.order() / orbit.len()
}

#[test]
fn fano_parabolic_orders() {
    let g = catalog::special_linear_2(3, 1000).unwrap();
    assert_eq!(g.order(), 168);
    let point = stabilizer_order_via_orbit(&g, &[0]);
    let line = stabilizer_order_via_orbit(&g, &[0, 1, 2]);
    let a = catalog::fano();
    assert_eq!(a.group(&s(&[1])).unwrap().order(), point);
    assert_eq!(a.group(&s(&[2])).unwrap().order(), line);
    assert_eq!((point, line), (24, 24));
    assert_eq!(a.group(&s(&[1, 2])).unwrap().order(), 8);
}

#[test]
fn parabolic_degenerate_cases() {
    let g = catalog::special_linear_2(3, 1000).unwrap();
    let stab = g.set_stabilizer(&[0]);
    let one = parabolic_amalgam(&g, std::slice::from_ref(&stab)).unwrap();
    assert_eq!(one.groups().len(), 1);
    assert_eq!(one.groups()[0].order(), 24);
    let two = parabolic_amalgam(&g, &[stab.clone(), stab]).unwrap();
    assert!(two.groups().iter().all(|x| x.order() == 24));
    assert!(two.cover_maps().iter().all(|(_, _, m)| m.map().iter().enumerate().all(|(x, &y)| x as Elem == y)));
}

#[test]
fn oracle_enumeration_counts() {
    let b = Budgets::default();
    let t = catalog::trivial_amalgam(SimplicialComplex::full(3).unwrap()).unwrap();
    assert_eq!(oracle_enumerate_type(&t, &b).unwrap().len(), 1);
    assert_eq!(oracle_enumerate_type(&catalog::cyclic_edge(), &b).unwrap().len(), 1);
    let g = catalog::dihedral_klein();
    let aut_v4 = automorphisms(g.group(&s(&[1, 2])).unwrap(), &[], 1000).unwrap().order();
    assert_eq!(aut_v4, 6);
    let all = oracle_enumerate_type(&g, &b).unwrap();
    assert_eq!(all.len(), aut_v4 * aut_v4);
    assert!(all.iter().all(|a| a.same_type(&g).unwrap()));
}

#[test]
fn oracle_isomorphism_examples() {
    let b = Budgets::default();
    let g = catalog::dihedral_klein();
    let w = oracle_isomorphic(&g, &g, &b).unwrap().unwrap();
    assert!(w.is_identity());

    let z4 = catalog::cyclic(4);
    let v4 = catalog::klein_four();
    let c = SimplicialComplex::build(2, &[vec![1, 2]]).unwrap();
    let x = catalog::inclusion_amalgam(
        &z4,
        c.clone(),
        &[Subgroup::whole(&z4), Subgroup::whole(&z4), crate::group::subgroup_closure(&z4, &[2])],
    )
    .unwrap();
    let y = catalog::inclusion_amalgam(
        &v4,
        c,
        &[Subgroup::whole(&v4), Subgroup::whole(&v4), crate::group::subgroup_closure(&v4, &[1])],
    )
    .unwrap();
    assert!(oracle_isomorphic(&x, &y, &b).unwrap().is_none());
}

#[test]
fn oracle_witness_matches_normalization() {
    let b = Budgets::default();
    let g = catalog::dihedral_klein();
    for h in oracle_enumerate_type(&g, &b).unwrap() {
        let (n, phi) = h.normalize(&g).unwrap();
        let w = oracle_isomorphic(&h, &n, &b).unwrap().expect("normalization is an isomorphism");
        // w ∘ φ⁻¹ is a self-isomorphism of the normalized amalgam
        let auto = w.after(&phi.inverse().unwrap()).unwrap();
        check_iso(&n, &n, &auto).unwrap();
    }
}

#[test]
fn trivial_extension_preserves_oracle_verdicts() {
    let b = Budgets::default();
    let g = catalog::cyclic_chain();
    let big = g.complex().extend_with_small_subsets(3);
    let all = oracle_enumerate_type(&g, &b).unwrap();
    for x in &all {
        for y in &all {
            let small = oracle_isomorphic(x, y, &b).unwrap().is_some();
            let ext = oracle_isomorphic(&x.trivial_extension(&big).unwrap(), &y.trivial_extension(&big).unwrap(), &b)
                .unwrap()
                .is_some();
            assert_eq!(small, ext);
        }
    }
    let g = catalog::dihedral_klein();
    let all = oracle_enumerate_type(&g, &b).unwrap();
    let big = SimplicialComplex::build(2, &[vec![1, 2]]).unwrap();
    for x in all.iter().take(6) {
        for y in all.iter().take(6) {
            let small = oracle_isomorphic(x, y, &b).unwrap().is_some();
            let ext = oracle_isomorphic(&x.trivial_extension(&big).unwrap(), &y.trivial_extension(&big).unwrap(), &b)
                .unwrap()
                .is_some();
            assert_eq!(small, ext);
        }
    }
}

#[test]
fn oracle_classes_on_goldschmidt_instances() {
    let b = Budgets::default();
    let (_, classes) = oracle_classes(&catalog::dihedral_klein(), &b).unwrap();
    assert_eq!(classes.len(), 2);
    assert!(classes[0].twists.iter().all(|t| t.iter().enumerate().all(|(x, &y)| x as Elem == y)));
    let (_, classes) = oracle_classes(&catalog::fano(), &b).unwrap();
    assert_eq!(classes.len(), 2);
}

#[test]
fn lemma_same_largest_vertex_holds_for_normalized_members() {
    let b = Budgets::default();
    let g = catalog::s4_d8_triangle();
    let all = oracle_enumerate_type(&g, &b).unwrap();
    for h in all.iter().step_by(97) {
        let (n, _) = h.normalize(&g).unwrap();
        for (x, t) in g.complex().face_pairs() {
            if x.max_vertex() == t.max_vertex() {
                assert_eq!(n.connecting_map(&x, &t).unwrap().map(), g.connecting_map(&x, &t).unwrap().map());
            }
        }
    }
}
