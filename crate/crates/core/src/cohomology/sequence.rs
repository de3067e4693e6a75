//! Normal subsystems `N ⊴ A`: the action of `H⁰(A/N)` on `H¹(N)`, the
//! six-term exact sequence, and the quotient lemma on the 2-simplex.

use std::collections::HashSet;

use super::{h0, h1, Cochain, Cochains, CohomologySet, H0};
use crate::budget::Budgets;
use crate::coefficients::{quotient_system, CoefficientSystem, NormalSubsystem, QuotientSystem};
use crate::complex::Simplex;
use crate::error::{Error, Result};
use crate::group::Elem;

/// `N ⊴ A` with `N` and `A/N` materialized as coefficient systems.
#[derive(Clone, Debug)]
pub struct Extension<'a> {
    parent: &'a CoefficientSystem,
    sub: CoefficientSystem,
    embeds: Vec<Vec<Elem>>,
    quotient: QuotientSystem,
}

impl<'a> Extension<'a> {
    pub fn new(parent: &'a CoefficientSystem, n: &NormalSubsystem) -> Result<Self> {
        let (sub, embeds) = n.as_system(parent)?;
        let quotient = quotient_system(parent, n)?;
        Ok(Extension { parent, sub, embeds, quotient })
    }

    pub fn parent(&self) -> &'a CoefficientSystem {
        self.parent
    }

    pub fn sub(&self) -> &CoefficientSystem {
        &self.sub
    }

    pub fn quotient(&self) -> &QuotientSystem {
        &self.quotient
    }

    fn include(&self, idx: &[usize], x: &[Elem]) -> Cochain {
        idx.iter().zip(x).map(|(&i, &v)| self.embeds[i][v as usize]).collect()
    }

    fn restrict(&self, idx: &[usize], x: &[Elem]) -> Option<Cochain> {
        idx.iter()
            .zip(x)
            .map(|(&i, &v)| self.embeds[i].binary_search(&v).ok().map(|k| k as Elem))
            .collect()
    }

    fn project(&self, idx: &[usize], x: &[Elem]) -> Cochain {
        idx.iter().zip(x).map(|(&i, &v)| self.quotient.project(i, v)).collect()
    }

    fn lift(&self, idx: &[usize], x: &[Elem]) -> Cochain {
        idx.iter().zip(x).map(|(&i, &v)| self.quotient.rep(i, v)).collect()
    }
}

fn vertex_idx(c: &Cochains) -> Vec<usize> {
    c.vertices.clone()
}

fn edge_idx(c: &Cochains) -> Vec<usize> {
    c.edges.iter().map(|e| e.idx).collect()
}

/// `[n]^ā = [n^a]` for the minimal-representative lift `a` of `ā`.
pub fn h0_action(ext: &Extension, h1n: &CohomologySet, abar: &[Elem], class: usize) -> Result<usize> {
    let cq = Cochains::new(ext.quotient.system());
    cq.check0(abar)?;
    if cq.d0(abar).iter().any(|&x| x != 0) {
        return Err(Error::BadCochain("element is not in H0 of the quotient".into()));
    }
    let ca = Cochains::new(ext.parent);
    let lift = ext.lift(&vertex_idx(&ca), abar);
    h0_action_with_lift(ext, h1n, &lift, class)
}

/// `[n]^ā = [n^a]` for an explicit lift `a ∈ C⁰(A)` of `ā ∈ H⁰(A/N)`.
pub fn h0_action_with_lift(ext: &Extension, h1n: &CohomologySet, a: &[Elem], class: usize) -> Result<usize> {
    let ca = Cochains::new(ext.parent);
    ca.check0(a)?;
    let (vi, ei) = (vertex_idx(&ca), edge_idx(&ca));
    let cq = Cochains::new(ext.quotient.system());
    if cq.d0(&ext.project(&vi, a)).iter().any(|&x| x != 0) {
        return Err(Error::BadCochain("lift does not project into H0 of the quotient".into()));
    }
    let n = ext.include(&ei, h1n.representative(class));
    let moved = ca.act(&n, a);
    let local = ext
        .restrict(&ei, &moved)
        .ok_or_else(|| Error::Internal("action of a lift left the subsystem".into()))?;
    h1n.class_of(&local).ok_or_else(|| Error::Internal("action of a lift left the cocycles of N".into()))
}

/// Outcome of one exactness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exactness {
    pub node: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

/// The sequence `H⁰(N) -> H⁰(A) -> H⁰(A/N) -> H¹(N) -> H¹(A) -> H¹(A/N)`
/// with every map materialized on indices (elements of `H⁰`, classes of
/// `H¹`) and the exactness checks.
#[derive(Clone, Debug)]
pub struct ExactSequence {
    pub h0_sub: H0,
    pub h0_parent: H0,
    pub h0_quotient: H0,
    pub h1_sub: CohomologySet,
    pub h1_parent: CohomologySet,
    pub h1_quotient: CohomologySet,
    pub i0: Vec<usize>,
    pub kappa0: Vec<usize>,
    pub delta: Vec<usize>,
    pub i1: Vec<usize>,
    pub kappa1: Vec<usize>,
    pub checks: Vec<Exactness>,
}

impl ExactSequence {
    pub fn is_exact(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn compare(node: &'static str, image: &HashSet<usize>, kernel: &HashSet<usize>) -> Exactness {
    let mut extra: Vec<usize> = image.symmetric_difference(kernel).copied().collect();
    extra.sort_unstable();
    Exactness {
        node,
        holds: extra.is_empty(),
        witness: extra.first().map(|x| format!("element {x} lies in exactly one of image and kernel")),
    }
}

pub fn exact_sequence(a: &CoefficientSystem, n: &NormalSubsystem, budgets: &Budgets) -> Result<ExactSequence> {
    let ext = Extension::new(a, n)?;
    let ca = Cochains::new(a);
    let (vi, ei) = (vertex_idx(&ca), edge_idx(&ca));
    let h0_sub = h0(&ext.sub, budgets)?;
    let h0_parent = h0(a, budgets)?;
    let h0_quotient = h0(ext.quotient.system(), budgets)?;
    let h1_sub = h1(&ext.sub, budgets)?;
    let h1_parent = h1(a, budgets)?;
    let h1_quotient = h1(ext.quotient.system(), budgets)?;
    let missing = |what: &str| Error::Internal(format!("{what} does not land where expected"));

    let i0 = h0_sub
        .elements()
        .iter()
        .map(|x| h0_parent.index_of(&ext.include(&vi, x)).ok_or_else(|| missing("i0")))
        .collect::<Result<Vec<_>>>()?;
    let kappa0 = h0_parent
        .elements()
        .iter()
        .map(|x| h0_quotient.index_of(&ext.project(&vi, x)).ok_or_else(|| missing("kappa0")))
        .collect::<Result<Vec<_>>>()?;
    let delta = h0_quotient
        .elements()
        .iter()
        .map(|x| {
            let b = ca.d0(&ext.lift(&vi, x));
            let local = ext.restrict(&ei, &b).ok_or_else(|| missing("delta"))?;
            h1_sub.class_of(&local).ok_or_else(|| missing("delta"))
        })
        .collect::<Result<Vec<_>>>()?;
    let i1 = (0..h1_sub.len())
        .map(|k| h1_parent.class_of(&ext.include(&ei, h1_sub.representative(k))).ok_or_else(|| missing("i1")))
        .collect::<Result<Vec<_>>>()?;
    let kappa1 = (0..h1_parent.len())
        .map(|k| h1_quotient.class_of(&ext.project(&ei, h1_parent.representative(k))).ok_or_else(|| missing("kappa1")))
        .collect::<Result<Vec<_>>>()?;

    let set = |v: &[usize]| v.iter().copied().collect::<HashSet<usize>>();
    let preimage = |v: &[usize], base: usize| (0..v.len()).filter(|&k| v[k] == base).collect::<HashSet<usize>>();
    let mut checks = Vec::new();
    let injective = set(&i0).len() == i0.len();
    checks.push(Exactness {
        node: "H0(N)",
        holds: injective,
        witness: (!injective).then(|| "i0 is not injective".to_string()),
    });
    checks.push(compare("H0(A)", &set(&i0), &preimage(&kappa0, 0)));
    checks.push(compare("H0(A/N)", &set(&kappa0), &preimage(&delta, 0)));
    checks.push(compare("H1(N)", &set(&delta), &preimage(&i1, 0)));
    checks.push(compare("H1(A)", &set(&i1), &preimage(&kappa1, 0)));

    // fibers of i1 are the orbits of H0(A/N)
    let mut orbit_of = vec![usize::MAX; h1_sub.len()];
    let mut witness = None;
    for start in 0..h1_sub.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let mut orbit = vec![start];
        orbit_of[start] = start;
        let mut head = 0;
        while head < orbit.len() {
            let k = orbit[head];
            head += 1;
            for x in h0_quotient.elements() {
                let m = h0_action(&ext, &h1_sub, x, k)?;
                if orbit_of[m] == usize::MAX {
                    orbit_of[m] = start;
                    orbit.push(m);
                }
            }
        }
        let fiber = preimage(&i1, i1[start]);
        if set(&orbit) != fiber && witness.is_none() {
            witness = Some(format!("class {start} of H1(N): orbit {} elements, fiber {}", orbit.len(), fiber.len()));
        }
    }
    checks.push(Exactness { node: "H1(N) fibers", holds: witness.is_none(), witness });

    Ok(ExactSequence {
        h0_sub,
        h0_parent,
        h0_quotient,
        h1_sub,
        h1_parent,
        h1_quotient,
        i0,
        kappa0,
        delta,
        i1,
        kappa1,
        checks,
    })
}

/// `H¹(A/N)` on the 2-simplex when `α` restricts to isomorphisms of `N`.
/// With `compare` set, `H¹(A)` is computed too and the counts must agree.
pub fn h1_via_quotient(
    a: &CoefficientSystem,
    n: &NormalSubsystem,
    budgets: &Budgets,
    compare: bool,
) -> Result<CohomologySet> {
    if !a.complex().is_triangle() {
        return Err(Error::NotTriangle);
    }
    if let Some((s, t)) = n.non_isomorphic_pair(a) {
        return Err(Error::QuotientHypothesis { from: s.to_string(), to: t.to_string() });
    }
    let q = quotient_system(a, n)?;
    let hq = h1(q.system(), budgets)?;
    if compare {
        let ha = h1(a, budgets)?;
        if ha.len() != hq.len() {
            return Err(Error::Internal(format!(
                "quotient lemma fails: {} classes over A, {} over A/N",
                ha.len(),
                hq.len()
            )));
        }
    }
    Ok(hq)
}

/// Orbit representatives `(a23, a13, a12)` of `Ā1 x Ā2 x Ā3` on the
/// constrained triples, by direct enumeration over the whole group.
pub fn triangular_reduced(q: &CoefficientSystem, budgets: &Budgets) -> Result<Vec<[Elem; 3]>> {
    if !q.complex().is_triangle() {
        return Err(Error::NotTriangle);
    }
    let s = |v: &[u32]| Simplex::new(v.to_vec());
    let top = s(&[1, 2, 3]);
    let (e23, e13, e12) = (s(&[2, 3]), s(&[1, 3]), s(&[1, 2]));
    let g = q.group(&top)?;
    let (b23, b13, b12) = (q.alpha(&e23, &top)?, q.alpha(&e13, &top)?, q.alpha(&e12, &top)?);
    let (g23, g13, g12) = (q.group(&e23)?, q.group(&e13)?, q.group(&e12)?);
    let mut triples = Vec::new();
    for x in g23.elements() {
        for y in g13.elements() {
            for z in g12.elements() {
                let v = g.mul(g.mul(g.inv(b23.apply(x)), b13.apply(y)), g.inv(b12.apply(z)));
                if v == 0 {
                    if triples.len() >= budgets.cocycles {
                        return Err(Error::CocycleBudgetExceeded { budget: budgets.cocycles });
                    }
                    triples.push([x, y, z]);
                }
            }
        }
    }
    let (v1, v2, v3) = (s(&[1]), s(&[2]), s(&[3]));
    let (d1g, d2g, d3g) = (q.group(&v1)?, q.group(&v2)?, q.group(&v3)?);
    let a3_23 = q.alpha(&v3, &e23)?;
    let a2_23 = q.alpha(&v2, &e23)?;
    let a3_13 = q.alpha(&v3, &e13)?;
    let a1_13 = q.alpha(&v1, &e13)?;
    let a2_12 = q.alpha(&v2, &e12)?;
    let a1_12 = q.alpha(&v1, &e12)?;
    let mut seen: HashSet<[Elem; 3]> = HashSet::new();
    let mut reps = Vec::new();
    let mut moves: u64 = 0;
    for t in &triples {
        if seen.contains(t) {
            continue;
        }
        reps.push(*t);
        for d1 in d1g.elements() {
            for d2 in d2g.elements() {
                for d3 in d3g.elements() {
                    moves += 1;
                    if moves > budgets.orbit_moves {
                        return Err(Error::OrbitBudgetExceeded { budget: budgets.orbit_moves });
                    }
                    let x = g23.mul(g23.mul(g23.inv(a3_23.apply(d3)), t[0]), a2_23.apply(d2));
                    let y = g13.mul(g13.mul(g13.inv(a3_13.apply(d3)), t[1]), a1_13.apply(d1));
                    let z = g12.mul(g12.mul(g12.inv(a2_12.apply(d2)), t[2]), a1_12.apply(d1));
                    let u = [x, y, z];
                    if triples.binary_search(&u).is_err() {
                        return Err(Error::Internal("reduced action left the constrained triples".into()));
                    }
                    seen.insert(u);
                }
            }
        }
    }
    Ok(reps)
}
