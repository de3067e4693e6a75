//! Small named groups used by tests, examples and the fixture suite.

use std::collections::HashMap;
use std::sync::Arc;

use crate::amalgam::{parabolic_amalgam, Amalgam};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::group::perm::{compose, from_cycles, identity_perm};
use crate::group::{subgroup_closure, Elem, FiniteGroup, GroupHom, PermGroup, Subgroup};

const CAP: usize = 1 << 16;

pub fn cyclic(n: usize) -> FiniteGroup {
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect())
        .collect();
    FiniteGroup::from_table(&rows).expect("cyclic table").with_name(format!("C{n}"))
}

pub fn klein_four() -> FiniteGroup {
    let rows: Vec<Vec<u32>> = (0..4u32).map(|a| (0..4u32).map(|b| a ^ b).collect()).collect();
    FiniteGroup::from_table(&rows).expect("klein table").with_name("V4")
}

/// Rotation and reflection of a regular `n`-gon.
pub fn dihedral_generators(n: usize) -> Vec<Vec<u32>> {
    let r: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let s: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    vec![r, s]
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> FiniteGroup {
    FiniteGroup::from_permutations(n, &dihedral_generators(n), CAP)
        .expect("dihedral closure")
        .with_name(format!("D{}", 2 * n))
}

pub fn symmetric_generators(n: usize) -> Vec<Vec<u32>> {
    if n < 2 {
        return vec![identity_perm(n)];
    }
    let cycle: Vec<u32> = (0..n as u32).collect();
    vec![from_cycles(n, &[&[0, 1]]), from_cycles(n, &[&cycle])]
}

pub fn symmetric(n: usize) -> FiniteGroup {
    FiniteGroup::from_permutations(n, &symmetric_generators(n), CAP)
        .expect("symmetric closure")
        .with_name(format!("S{n}"))
}

pub fn alternating(n: usize) -> FiniteGroup {
    let gens: Vec<Vec<u32>> = (2..n as u32).map(|k| from_cycles(n, &[&[0, 1, k]])).collect();
    FiniteGroup::from_permutations(n, &gens, CAP).expect("alternating closure").with_name(format!("A{n}"))
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> FiniteGroup {
    // units 1, i, j, k as 0..4; element = 4 * sign + unit
    let unit = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (0, x),
            (x, y) if x == y => (1, 0),
            (1, 2) => (0, 3),
            (2, 1) => (1, 3),
            (2, 3) => (0, 1),
            (3, 2) => (1, 1),
            (3, 1) => (0, 2),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let rows: Vec<Vec<u32>> = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (s, u) = unit(a % 4, b % 4);
                    let sign = (a / 4 + b / 4 + s) % 2;
                    (4 * sign + u) as u32
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&rows).expect("quaternion table").with_name("Q8")
}

/// Direct product with the table of `a` varying slowest.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (n, m) = (a.order(), b.order());
    let rows: Vec<Vec<u32>> = (0..n * m)
        .map(|x| {
            (0..n * m)
                .map(|y| {
                    let p = a.mul((x / m) as Elem, (y / m) as Elem) as usize;
                    let q = b.mul((x % m) as Elem, (y % m) as Elem) as usize;
                    (p * m + q) as u32
                })
                .collect()
        })
        .collect();
    let name = match (a.name(), b.name()) {
        (Some(x), Some(y)) => format!("{x}x{y}"),
        _ => "product".to_string(),
    };
    FiniteGroup::from_table(&rows).expect("product table").with_name(name)
}

/// The normal Klein four subgroup {1, (01)(23), (02)(13), (03)(12)} of S4.
pub fn normal_klein_in_s4(s4: &FiniteGroup) -> Subgroup {
    let seed: Vec<Elem> = [from_cycles(4, &[&[0, 1], &[2, 3]]), from_cycles(4, &[&[0, 2], &[1, 3]])]
        .iter()
        .map(|p| s4.index_of_perm(p).expect("S4 given as permutations"))
        .collect();
    subgroup_closure(s4, &seed)
}

/// Indices of the given permutations inside a permutation-backed group.
pub fn perm_elements(g: &FiniteGroup, perms: &[Vec<u32>]) -> Vec<Elem> {
    perms
        .iter()
        .map(|p| g.index_of_perm(p).expect("permutation belongs to the group"))
        .collect()
}

/// Subgroup of a permutation-backed group generated by permutations.
pub fn perm_subgroup(g: &FiniteGroup, gens: &[Vec<u32>]) -> Subgroup {
    subgroup_closure(g, &perm_elements(g, gens))
}

/// Product of permutations, rightmost applied first.
pub fn perm_product(ps: &[&[u32]]) -> Vec<u32> {
    let n = ps.first().map_or(0, |p| p.len());
    ps.iter().rev().fold(identity_perm(n), |acc, p| compose(p, &acc))
}

/// `SL_d(2)` acting on the `2^d - 1` nonzero vectors of `F_2^d`; vector `v`
/// (as a bit mask) is point `v - 1`.
pub fn special_linear_2(d: u32, max_order: usize) -> Result<PermGroup> {
    let apply = |cols: &[u32], v: u32| -> u32 { (0..d).filter(|&i| v >> i & 1 == 1).fold(0, |a, i| a ^ cols[i as usize]) };
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                let mut cols: Vec<u32> = (0..d).map(|k| 1 << k).collect();
                cols[i as usize] ^= 1 << j;
                gens.push((1..1u32 << d).map(|v| apply(&cols, v) - 1).collect::<Vec<u32>>());
            }
        }
    }
    PermGroup::closure((1 << d) - 1, &gens, max_order)
}

/// Parabolic amalgam of `SL_d(2)` for the standard flag: vertex `k`
/// stabilizes the span of the first `k` basis vectors.
pub fn linear_flag_amalgam(d: u32, max_order: usize) -> Result<Amalgam> {
    let g = special_linear_2(d, max_order)?;
    let stabilizers: Vec<Vec<Elem>> = (1..d).map(|k| g.set_stabilizer(&((0..(1u32 << k) - 1).collect::<Vec<_>>()))).collect();
    parabolic_amalgam(&g, &stabilizers)
}

/// All groups trivial.
pub fn trivial_amalgam(complex: SimplicialComplex) -> Result<Amalgam> {
    let t = Arc::new(FiniteGroup::trivial());
    let groups = vec![t.clone(); complex.len()];
    let covers = complex
        .cover_pairs()
        .iter()
        .map(|(s, u)| {
            let k = (complex.index_of(s).unwrap(), complex.index_of(u).unwrap());
            (k, GroupHom::identity(t.clone()))
        })
        .collect();
    Amalgam::assemble(complex, groups, covers)
}

/// Subgroups of one ambient group, one per simplex, with inclusions as maps.
pub fn inclusion_amalgam(ambient: &FiniteGroup, complex: SimplicialComplex, subs: &[Subgroup]) -> Result<Amalgam> {
    if subs.len() != complex.len() {
        return Err(Error::Input("one subgroup per simplex required".into()));
    }
    let groups: Vec<Arc<FiniteGroup>> = subs.iter().map(|s| Arc::new(ambient.subgroup_as_group(s).0)).collect();
    let mut covers = HashMap::new();
    for (s, t) in complex.cover_pairs() {
        let (i, j) = (complex.index_of(&s).unwrap(), complex.index_of(&t).unwrap());
        let map = subs[j]
            .members()
            .iter()
            .map(|x| subs[i].members().binary_search(x).map(|p| p as Elem))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Input(format!("subgroup at {t} is not contained in the one at {s}")))?;
        covers.insert((i, j), GroupHom::new_unchecked(groups[j].clone(), groups[i].clone(), map));
    }
    Amalgam::assemble(complex, groups, covers)
}

fn edge() -> SimplicialComplex {
    SimplicialComplex::build(2, &[vec![1, 2]]).expect("edge")
}

fn triangle() -> SimplicialComplex {
    SimplicialComplex::full(3).expect("triangle")
}

/// `Z4` and `Z4` glued along `Z2`.
pub fn cyclic_edge() -> Amalgam {
    let z4 = cyclic(4);
    let (w, h) = (Subgroup::whole(&z4), subgroup_closure(&z4, &[2]));
    inclusion_amalgam(&z4, edge(), &[w.clone(), w, h]).expect("cyclic edge")
}

/// Path `1 - 2 - 3` of copies of `Z4`, glued along `Z2` and along `Z4`.
pub fn cyclic_chain() -> Amalgam {
    let z4 = cyclic(4);
    let complex = SimplicialComplex::build(3, &[vec![1, 2], vec![2, 3]]).expect("path");
    let (w, h) = (Subgroup::whole(&z4), subgroup_closure(&z4, &[2]));
    inclusion_amalgam(&z4, complex, &[w.clone(), w.clone(), w.clone(), h, w]).expect("cyclic chain")
}

/// Two copies of `D8` glued along a Klein four subgroup.
pub fn dihedral_klein() -> Amalgam {
    let d8 = dihedral(4);
    let v4 = perm_subgroup(&d8, &[vec![2, 1, 0, 3], vec![0, 3, 2, 1]]);
    let w = Subgroup::whole(&d8);
    inclusion_amalgam(&d8, edge(), &[w.clone(), w, v4]).expect("dihedral klein")
}

/// `D8` and `Q8` glued along their cyclic subgroup of order 4.
pub fn dihedral_quaternion() -> Amalgam {
    let d8 = Arc::new(dihedral(4));
    let q8 = Arc::new(quaternion());
    let z4 = Arc::new(cyclic(4));
    let r = d8.index_of_perm(&[1, 2, 3, 0]).expect("rotation");
    let into_d8 = GroupHom::from_generator_images(z4.clone(), d8.clone(), &[1], &[r]).expect("z4 in d8");
    let into_q8 = GroupHom::from_generator_images(z4.clone(), q8.clone(), &[1], &[1]).expect("z4 in q8");
    let c = edge();
    let groups = vec![d8, q8, z4];
    let covers = HashMap::from([((0, 2), into_d8), ((1, 2), into_q8)]);
    Amalgam::assemble(c, groups, covers).expect("dihedral quaternion")
}

/// The point/line parabolic amalgam of `SL_3(2)` on the Fano plane.
pub fn fano() -> Amalgam {
    linear_flag_amalgam(3, CAP).expect("fano")
}

/// Constant amalgam of `S3` on the triangle.
pub fn constant_s3_triangle() -> Amalgam {
    let s3 = symmetric(3);
    let w = Subgroup::whole(&s3);
    inclusion_amalgam(&s3, triangle(), &vec![w; 7]).expect("constant triangle")
}

fn s4_sub(s4: &FiniteGroup, gens: &[&[&[u32]]]) -> Subgroup {
    let perms: Vec<Vec<u32>> = gens.iter().map(|c| from_cycles(4, c)).collect();
    perm_subgroup(s4, &perms)
}

/// Parabolic subgroups of `S4` for the Coxeter generators `s1, s2, s3`:
/// simplex `σ` carries the subgroup generated by the `s_j` with `j ∉ σ`.
pub fn coxeter_triangle() -> Amalgam {
    let s4 = symmetric(4);
    let s: [&[&[u32]]; 3] = [&[&[0, 1]], &[&[1, 2]], &[&[2, 3]]];
    let subs: Vec<Subgroup> = triangle()
        .simplices()
        .iter()
        .map(|sigma| {
            let gens: Vec<&[&[u32]]> = (1..=3).filter(|&j| !sigma.contains(j)).map(|j| s[j as usize - 1]).collect();
            s4_sub(&s4, &gens)
        })
        .collect();
    inclusion_amalgam(&s4, triangle(), &subs).expect("coxeter triangle")
}

/// `S4` on the vertices, one `S3` on all edges and on the triangle.
pub fn s4_s3_triangle() -> Amalgam {
    let s4 = symmetric(4);
    let w = Subgroup::whole(&s4);
    let s3 = s4_sub(&s4, &[&[&[0, 1]], &[&[0, 1, 2]]]);
    let subs = vec![w.clone(), w.clone(), w, s3.clone(), s3.clone(), s3.clone(), s3];
    inclusion_amalgam(&s4, triangle(), &subs).expect("s4 s3 triangle")
}

/// `S4` on the vertices, a `D8` on the edges and a non-normal Klein four
/// subgroup of it on the triangle.
pub fn s4_d8_triangle() -> Amalgam {
    let s4 = symmetric(4);
    let w = Subgroup::whole(&s4);
    let d8 = s4_sub(&s4, &[&[&[0, 1, 2, 3]], &[&[0, 2]]]);
    let v4 = s4_sub(&s4, &[&[&[0, 2]], &[&[1, 3]]]);
    let subs = vec![w.clone(), w.clone(), w, d8.clone(), d8.clone(), d8, v4];
    inclusion_amalgam(&s4, triangle(), &subs).expect("s4 d8 triangle")
}

/// Subgroups of `S4 x Z2`: the whole group on the vertices, `S4` and two
/// copies of `S3 x Z2` on the edges, `S3` on the triangle.
pub fn s4z2_triangle() -> Amalgam {
    let s4 = symmetric(4);
    let z2 = cyclic(2);
    let g = direct_product(&s4, &z2);
    let lift = |sub: &Subgroup, with_z2: bool| -> Vec<Elem> {
        sub.members()
            .iter()
            .flat_map(|&p| if with_z2 { vec![2 * p, 2 * p + 1] } else { vec![2 * p] })
            .collect()
    };
    let s3 = s4_sub(&s4, &[&[&[0, 1]], &[&[0, 1, 2]]]);
    let whole = Subgroup::whole(&g);
    let s4_1 = Subgroup::new(&g, lift(&Subgroup::whole(&s4), false)).expect("S4");
    let s3_z2 = Subgroup::new(&g, lift(&s3, true)).expect("S3xZ2");
    let s3_1 = Subgroup::new(&g, lift(&s3, false)).expect("S3");
    let subs = vec![whole.clone(), whole.clone(), whole, s4_1, s3_z2.clone(), s3_z2, s3_1];
    inclusion_amalgam(&g, triangle(), &subs).expect("s4z2 triangle")
}

/// `S3 x Z3` on the vertices, `S3 x 1` on the edges and the triangle.
pub fn s3z3_triangle() -> Amalgam {
    let g = direct_product(&symmetric(3), &cyclic(3));
    let whole = Subgroup::whole(&g);
    let s3 = Subgroup::new(&g, (0..6).map(|p| 3 * p).collect()).expect("S3");
    let subs = vec![whole.clone(), whole.clone(), whole, s3.clone(), s3.clone(), s3.clone(), s3];
    inclusion_amalgam(&g, triangle(), &subs).expect("s3z3 triangle")
}

/// The fixture suite: every group has order at most 48.
pub fn fixtures() -> Vec<(&'static str, Amalgam)> {
    vec![
        ("trivial-edge", trivial_amalgam(edge()).expect("trivial edge")),
        ("trivial-triangle", trivial_amalgam(triangle()).expect("trivial triangle")),
        ("cyclic-edge", cyclic_edge()),
        ("cyclic-chain", cyclic_chain()),
        ("dihedral-klein", dihedral_klein()),
        ("dihedral-quaternion", dihedral_quaternion()),
        ("fano", fano()),
        ("constant-s3-triangle", constant_s3_triangle()),
        ("coxeter-triangle", coxeter_triangle()),
        ("s4-s3-triangle", s4_s3_triangle()),
        ("s4-d8-triangle", s4_d8_triangle()),
        ("s4z2-triangle", s4z2_triangle()),
        ("s3z3-triangle", s3z3_triangle()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(5).order(), 5);
        assert_eq!(klein_four().order(), 4);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(direct_product(&symmetric(3), &cyclic(2)).order(), 12);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion();
        assert!(q.is_associative());
        assert_eq!(q.elements().filter(|&x| q.element_order(x) == 2).count(), 1);
        assert_eq!(q.elements().filter(|&x| q.element_order(x) == 4).count(), 6);
    }

    #[test]
    fn klein_subgroup_is_normal() {
        let s4 = symmetric(4);
        let v = normal_klein_in_s4(&s4);
        assert_eq!(v.len(), 4);
        assert!(v.is_normal_in(&s4));
    }
}
