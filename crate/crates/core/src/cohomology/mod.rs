//! The cochain complex of pointed sets `C⁰ -> C¹ -> C²` of a coefficient
//! system, its cocycles, and the cohomology sets `H⁰` and `H¹`.
//!
//! A cochain is a vector of element indices, one per simplex of the relevant
//! rank, in the complex's order (vertices ascending, edges and triangles
//! lexicographic). Products in `A_σ` are taken in its structure group, which
//! for automorphism groups is composition with the right factor applied first.

mod sequence;

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::budget::Budgets;
use crate::coefficients::CoefficientSystem;
use crate::complex::Simplex;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupHom};

pub use sequence::{
    exact_sequence, h0_action, h0_action_with_lift, h1_via_quotient, triangular_reduced, ExactSequence,
    Exactness, Extension,
};

/// Element indices per simplex of one rank, in complex order.
pub type Cochain = Vec<Elem>;

#[derive(Clone, Copy, Debug)]
struct Edge {
    idx: usize,
    // vertex positions of i < j
    ends: [usize; 2],
}

#[derive(Clone, Copy, Debug)]
struct Tri {
    idx: usize,
    // edge positions of ij, ik, jk
    edges: [usize; 3],
}

/// The cochain complex of a coefficient system, with the index bookkeeping
/// needed to evaluate `d0`, `d1` and the action.
#[derive(Clone, Debug)]
pub struct Cochains<'a> {
    sys: &'a CoefficientSystem,
    vertices: Vec<usize>,
    edges: Vec<Edge>,
    triangles: Vec<Tri>,
}

impl<'a> Cochains<'a> {
    pub fn new(sys: &'a CoefficientSystem) -> Self {
        let c = sys.complex();
        let vertices: Vec<usize> = c.vertices().map(|s| c.index_of(s).unwrap()).collect();
        let vpos: HashMap<u32, usize> = c.vertices().enumerate().map(|(p, s)| (s.vertices()[0], p)).collect();
        let edges: Vec<Edge> = c
            .edges()
            .map(|s| {
                let v = s.vertices();
                Edge { idx: c.index_of(s).unwrap(), ends: [vpos[&v[0]], vpos[&v[1]]] }
            })
            .collect();
        let epos: HashMap<usize, usize> = edges.iter().enumerate().map(|(p, e)| (e.idx, p)).collect();
        let triangles = c
            .triangles()
            .map(|s| {
                let v = s.vertices();
                let e = |a: u32, b: u32| epos[&c.index_of(&Simplex::new(vec![a, b])).unwrap()];
                Tri { idx: c.index_of(s).unwrap(), edges: [e(v[0], v[1]), e(v[0], v[2]), e(v[1], v[2])] }
            })
            .collect();
        Cochains { sys, vertices, edges, triangles }
    }

    pub fn system(&self) -> &'a CoefficientSystem {
        self.sys
    }

    pub fn vertex_simplices(&self) -> Vec<&Simplex> {
        self.vertices.iter().map(|&i| &self.sys.complex().simplices()[i]).collect()
    }

    pub fn edge_simplices(&self) -> Vec<&Simplex> {
        self.edges.iter().map(|e| &self.sys.complex().simplices()[e.idx]).collect()
    }

    pub fn triangle_simplices(&self) -> Vec<&Simplex> {
        self.triangles.iter().map(|t| &self.sys.complex().simplices()[t.idx]).collect()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertex_group(&self, p: usize) -> &Arc<FiniteGroup> {
        self.sys.group_at(self.vertices[p])
    }

    pub fn edge_group(&self, p: usize) -> &Arc<FiniteGroup> {
        self.sys.group_at(self.edges[p].idx)
    }

    pub fn triangle_group(&self, p: usize) -> &Arc<FiniteGroup> {
        self.sys.group_at(self.triangles[p].idx)
    }

    fn vertex_alpha(&self, e: usize, end: usize) -> &GroupHom {
        let edge = &self.edges[e];
        self.sys.alpha_at(self.vertices[edge.ends[end]], edge.idx)
    }

    fn edge_alpha(&self, t: usize, role: usize) -> &GroupHom {
        let tri = &self.triangles[t];
        self.sys.alpha_at(self.edges[tri.edges[role]].idx, tri.idx)
    }

    pub fn identity0(&self) -> Cochain {
        vec![0; self.vertices.len()]
    }

    pub fn identity1(&self) -> Cochain {
        vec![0; self.edges.len()]
    }

    pub fn identity2(&self) -> Cochain {
        vec![0; self.triangles.len()]
    }

    fn check(&self, c: &[Elem], groups: Vec<&Arc<FiniteGroup>>, what: &str) -> Result<()> {
        if c.len() != groups.len() {
            return Err(Error::BadCochain(format!("{what} has {} entries, expected {}", c.len(), groups.len())));
        }
        for (k, (&x, g)) in c.iter().zip(groups).enumerate() {
            if x as usize >= g.order() {
                return Err(Error::BadCochain(format!("{what} entry {k} is {x}, group has order {}", g.order())));
            }
        }
        Ok(())
    }

    pub fn check0(&self, a: &[Elem]) -> Result<()> {
        self.check(a, (0..self.n_vertices()).map(|p| self.vertex_group(p)).collect(), "0-cochain")
    }

    pub fn check1(&self, b: &[Elem]) -> Result<()> {
        self.check(b, (0..self.n_edges()).map(|p| self.edge_group(p)).collect(), "1-cochain")
    }

    /// `b_ij = α^j_ij(a_j⁻¹) · α^i_ij(a_i)`.
    pub fn d0(&self, a: &[Elem]) -> Cochain {
        self.act(&self.identity1(), a)
    }

    /// `b_ijk = α^jk(a_jk⁻¹) · α^ik(a_ik) · α^ij(a_ij⁻¹)`.
    pub fn d1(&self, b: &[Elem]) -> Cochain {
        (0..self.triangles.len()).map(|t| self.d1_at(b, t)).collect()
    }

    fn d1_at(&self, b: &[Elem], t: usize) -> Elem {
        let g = self.triangle_group(t);
        let e = self.triangles[t].edges;
        let x = g.inv(self.edge_alpha(t, 2).apply(b[e[2]]));
        let y = self.edge_alpha(t, 1).apply(b[e[1]]);
        let z = g.inv(self.edge_alpha(t, 0).apply(b[e[0]]));
        g.mul(g.mul(x, y), z)
    }

    /// First triangle on which `d1` is nontrivial.
    pub fn cocycle_violation(&self, b: &[Elem]) -> Option<&Simplex> {
        (0..self.triangles.len())
            .find(|&t| self.d1_at(b, t) != 0)
            .map(|t| &self.sys.complex().simplices()[self.triangles[t].idx])
    }

    pub fn is_cocycle(&self, b: &[Elem]) -> bool {
        self.cocycle_violation(b).is_none()
    }

    /// Right action `b^a`: `α^j_ij(a_j⁻¹) · b_ij · α^i_ij(a_i)`.
    pub fn act(&self, b: &[Elem], a: &[Elem]) -> Cochain {
        (0..self.edges.len()).map(|e| self.act_at(b[e], a, e)).collect()
    }

    fn act_at(&self, x: Elem, a: &[Elem], e: usize) -> Elem {
        let g = self.edge_group(e);
        let [i, j] = self.edges[e].ends;
        let left = g.inv(self.vertex_alpha(e, 1).apply(a[j]));
        let right = self.vertex_alpha(e, 0).apply(a[i]);
        g.mul(g.mul(left, x), right)
    }

    /// Vertexwise product in `C⁰`.
    pub fn mul0(&self, a: &[Elem], b: &[Elem]) -> Cochain {
        (0..self.vertices.len()).map(|p| self.vertex_group(p).mul(a[p], b[p])).collect()
    }

    pub fn inv0(&self, a: &[Elem]) -> Cochain {
        (0..self.vertices.len()).map(|p| self.vertex_group(p).inv(a[p])).collect()
    }

    /// `|C⁰|`, saturating.
    pub fn c0_size(&self) -> u128 {
        (0..self.n_vertices()).fold(1u128, |acc, p| acc.saturating_mul(self.vertex_group(p).order() as u128))
    }

    /// The `k`-th element of `C⁰` in mixed radix, last vertex fastest.
    pub fn c0_element(&self, mut k: u128) -> Cochain {
        let mut a = self.identity0();
        for p in (0..self.n_vertices()).rev() {
            let n = self.vertex_group(p).order() as u128;
            a[p] = (k % n) as Elem;
            k /= n;
        }
        a
    }

    pub fn random0<R: Rng>(&self, rng: &mut R) -> Cochain {
        (0..self.n_vertices()).map(|p| rng.gen_range(0..self.vertex_group(p).order() as Elem)).collect()
    }

    pub fn random1<R: Rng>(&self, rng: &mut R) -> Cochain {
        (0..self.n_edges()).map(|p| rng.gen_range(0..self.edge_group(p).order() as Elem)).collect()
    }
}

/// Preimage lists of a homomorphism, indexed by codomain element.
pub(crate) fn fibers(h: &GroupHom) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new(); h.codomain().order()];
    for (x, &y) in h.map().iter().enumerate() {
        out[y as usize].push(x as Elem);
    }
    out
}

pub fn d0(sys: &CoefficientSystem, a: &[Elem]) -> Result<Cochain> {
    let c = Cochains::new(sys);
    c.check0(a)?;
    Ok(c.d0(a))
}

pub fn d1(sys: &CoefficientSystem, b: &[Elem]) -> Result<Cochain> {
    let c = Cochains::new(sys);
    c.check1(b)?;
    Ok(c.d1(b))
}

pub fn act(sys: &CoefficientSystem, b: &[Elem], a: &[Elem]) -> Result<Cochain> {
    let c = Cochains::new(sys);
    c.check0(a)?;
    c.check1(b)?;
    Ok(c.act(b, a))
}

struct Step {
    edge: usize,
    // triangle and role of `edge` in it whose constraint fixes the value
    solve: Option<(usize, usize)>,
    // further triangles completed by this step
    checks: Vec<usize>,
}

fn plan_steps(c: &Cochains) -> Vec<Step> {
    let ne = c.n_edges();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ne];
    for (t, tri) in c.triangles.iter().enumerate() {
        for (role, &e) in tri.edges.iter().enumerate() {
            incident[e].push((t, role));
        }
    }
    let mut assigned = vec![false; ne];
    let mut steps = Vec::with_capacity(ne);
    for _ in 0..ne {
        let score = |e: usize| {
            let mut full = 0;
            let mut half = 0;
            for &(t, _) in &incident[e] {
                let k = c.triangles[t].edges.iter().filter(|&&f| f != e && assigned[f]).count();
                if k == 2 {
                    full += 1;
                } else if k == 1 {
                    half += 1;
                }
            }
            (full, half)
        };
        let e = (0..ne)
            .filter(|&e| !assigned[e])
            .max_by(|&a, &b| score(a).cmp(&score(b)).then(b.cmp(&a)))
            .unwrap();
        let done: Vec<(usize, usize)> = incident[e]
            .iter()
            .copied()
            .filter(|&(t, _)| c.triangles[t].edges.iter().all(|&f| f == e || assigned[f]))
            .collect();
        assigned[e] = true;
        steps.push(Step {
            edge: e,
            solve: done.first().copied(),
            checks: done.iter().skip(1).map(|&(t, _)| t).collect(),
        });
    }
    steps
}

struct Enumerator<'c, 'a> {
    c: &'c Cochains<'a>,
    steps: Vec<Step>,
    fibers: HashMap<(usize, usize), Vec<Vec<Elem>>>,
    found: AtomicUsize,
    budget: usize,
}

impl Enumerator<'_, '_> {
    fn candidates(&self, k: usize, b: &[Elem]) -> Vec<Elem> {
        let step = &self.steps[k];
        let Some((t, role)) = step.solve else {
            return self.c.edge_group(step.edge).elements().collect();
        };
        let g = self.c.triangle_group(t);
        let e = self.c.triangles[t].edges;
        let val = |r: usize| self.c.edge_alpha(t, r).apply(b[e[r]]);
        let target = match role {
            0 => g.mul(g.inv(val(2)), val(1)),
            1 => g.mul(val(2), val(0)),
            _ => g.mul(val(1), g.inv(val(0))),
        };
        self.fibers[&(t, role)][target as usize].clone()
    }

    fn dfs(&self, k: usize, b: &mut Vec<Elem>, out: &mut Vec<Cochain>) -> Result<()> {
        if k == self.steps.len() {
            if self.found.fetch_add(1, Ordering::Relaxed) >= self.budget {
                return Err(Error::CocycleBudgetExceeded { budget: self.budget });
            }
            out.push(b.clone());
            return Ok(());
        }
        let step = &self.steps[k];
        for x in self.candidates(k, b) {
            b[step.edge] = x;
            if step.checks.iter().all(|&t| self.c.d1_at(b, t) == 0) {
                self.dfs(k + 1, b, out)?;
            }
        }
        b[step.edge] = 0;
        Ok(())
    }
}

/// All 1-cocycles, sorted lexicographically.
pub fn cocycles_z1(sys: &CoefficientSystem, budgets: &Budgets) -> Result<Vec<Cochain>> {
    let c = Cochains::new(sys);
    enumerate_z1(&c, budgets.cocycles)
}

fn enumerate_z1(c: &Cochains, budget: usize) -> Result<Vec<Cochain>> {
    let steps = plan_steps(c);
    let mut fib = HashMap::new();
    for s in &steps {
        if let Some((t, role)) = s.solve {
            fib.entry((t, role)).or_insert_with(|| fibers(c.edge_alpha(t, role)));
        }
    }
    let en = Enumerator { c, steps, fibers: fib, found: AtomicUsize::new(0), budget };
    if en.steps.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let first = en.steps[0].edge;
    let parts: Vec<Result<Vec<Cochain>>> = c
        .edge_group(first)
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|x| {
            let mut b = c.identity1();
            b[first] = x;
            let mut out = Vec::new();
            en.dfs(1, &mut b, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    all.sort_unstable();
    Ok(all)
}

/// `H⁰ = Z⁰`: the 0-cochains with trivial coboundary, as a group under the
/// vertexwise product.
#[derive(Clone, Debug)]
pub struct H0 {
    elements: Vec<Cochain>,
    group: Arc<FiniteGroup>,
}

impl H0 {
    /// Sorted; the identity is element 0.
    pub fn elements(&self) -> &[Cochain] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, a: &[Elem]) -> Option<usize> {
        self.elements.binary_search_by(|x| x.as_slice().cmp(a)).ok()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
}

/// Largest `H⁰` whose multiplication table is materialized.
const H0_TABLE_LIMIT: usize = 1 << 12;

pub fn h0(sys: &CoefficientSystem, budgets: &Budgets) -> Result<H0> {
    let c = Cochains::new(sys);
    let nv = c.n_vertices();
    // visit vertices along a spanning tree so each new vertex is constrained
    let mut order = vec![0usize];
    let mut seen = vec![false; nv];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for e in &c.edges {
            for (a, b) in [(e.ends[0], e.ends[1]), (e.ends[1], e.ends[0])] {
                if a == u && !seen[b] {
                    seen[b] = true;
                    order.push(b);
                }
            }
        }
    }
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (p, e) in c.edges.iter().enumerate() {
        incident[e.ends[0]].push((p, 0));
        incident[e.ends[1]].push((p, 1));
    }
    let fib: HashMap<(usize, usize), Vec<Vec<Elem>>> = (0..c.n_edges())
        .flat_map(|e| [(e, 0), (e, 1)])
        .map(|(e, end)| ((e, end), fibers(c.vertex_alpha(e, end))))
        .collect();
    let mut placed = vec![false; nv];
    let mut a = c.identity0();
    let mut out = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        order: &[usize],
        c: &Cochains,
        incident: &[Vec<(usize, usize)>],
        fib: &HashMap<(usize, usize), Vec<Vec<Elem>>>,
        placed: &mut [bool],
        a: &mut Vec<Elem>,
        out: &mut Vec<Cochain>,
        budget: usize,
    ) -> Result<()> {
        if k == order.len() {
            if out.len() >= budget {
                return Err(Error::CocycleBudgetExceeded { budget });
            }
            out.push(a.clone());
            return Ok(());
        }
        let v = order[k];
        let fixed = incident[v].iter().find(|&&(e, end)| placed[c.edges[e].ends[1 - end]]);
        let cands: Vec<Elem> = match fixed {
            None => c.vertex_group(v).elements().collect(),
            Some(&(e, end)) => {
                let other = c.edges[e].ends[1 - end];
                let y = c.vertex_alpha(e, 1 - end).apply(a[other]);
                fib[&(e, end)][y as usize].clone()
            }
        };
        placed[v] = true;
        for x in cands {
            a[v] = x;
            let ok = incident[v].iter().all(|&(e, end)| {
                let other = c.edges[e].ends[1 - end];
                !placed[other] || c.vertex_alpha(e, end).apply(x) == c.vertex_alpha(e, 1 - end).apply(a[other])
            });
            if ok {
                rec(k + 1, order, c, incident, fib, placed, a, out, budget)?;
            }
        }
        placed[v] = false;
        a[v] = 0;
        Ok(())
    }
    rec(0, &order, &c, &incident, &fib, &mut placed, &mut a, &mut out, budgets.cocycles)?;
    out.sort_unstable();
    if out.len() > H0_TABLE_LIMIT {
        return Err(Error::CocycleBudgetExceeded { budget: H0_TABLE_LIMIT });
    }
    let n = out.len();
    let mut table = Vec::with_capacity(n * n);
    for x in &out {
        for y in &out {
            let z = c.mul0(x, y);
            let k = out
                .binary_search(&z)
                .map_err(|_| Error::Internal("H0 is not closed under multiplication".into()))?;
            table.push(k as Elem);
        }
    }
    let group = Arc::new(FiniteGroup::from_table_unchecked(n, table));
    Ok(H0 { elements: out, group })
}

/// One orbit of `C⁰` on `Z¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomClass {
    /// Index into [`CohomologySet::cocycles`] of the lexicographically
    /// smallest member.
    pub representative: usize,
    pub size: usize,
}

/// `H¹`: the orbits of `C⁰` on the sorted cocycle list. Class 0 contains the
/// identity cocycle and is the base point.
#[derive(Clone, Debug)]
pub struct CohomologySet {
    cocycles: Vec<Cochain>,
    class_of: Vec<usize>,
    classes: Vec<CohomClass>,
    // how each cocycle was first reached: (parent index, vertex, generator)
    parent: Vec<Option<(usize, usize, Elem)>>,
}

impl CohomologySet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[CohomClass] {
        &self.classes
    }

    pub fn cocycles(&self) -> &[Cochain] {
        &self.cocycles
    }

    pub fn representative(&self, class: usize) -> &Cochain {
        &self.cocycles[self.classes[class].representative]
    }

    pub fn index_of(&self, z: &[Elem]) -> Option<usize> {
        self.cocycles.binary_search_by(|x| x.as_slice().cmp(z)).ok()
    }

    /// Class of a cocycle, `None` if `z` is not a cocycle.
    pub fn class_of(&self, z: &[Elem]) -> Option<usize> {
        self.index_of(z).map(|i| self.class_of[i])
    }

    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn orbit(&self, class: usize) -> Vec<&Cochain> {
        (0..self.cocycles.len())
            .filter(|&i| self.class_of[i] == class)
            .map(|i| &self.cocycles[i])
            .collect()
    }

    /// `f ∈ C⁰` with `cocycles[i] = act(representative, f)`, read off the
    /// search tree.
    pub fn transporter(&self, c: &Cochains, i: usize) -> Cochain {
        let mut moves = Vec::new();
        let mut k = i;
        while let Some((p, v, g)) = self.parent[k] {
            moves.push((v, g));
            k = p;
        }
        let mut f = c.identity0();
        for (v, g) in moves.into_iter().rev() {
            f[v] = c.vertex_group(v).mul(f[v], g);
        }
        f
    }
}

pub fn h1(sys: &CoefficientSystem, budgets: &Budgets) -> Result<CohomologySet> {
    let c = Cochains::new(sys);
    let z1 = enumerate_z1(&c, budgets.cocycles)?;
    orbits(&c, z1, budgets.orbit_moves)
}

pub(crate) fn orbits(c: &Cochains, cocycles: Vec<Cochain>, budget: u64) -> Result<CohomologySet> {
    let n = cocycles.len();
    let gens: Vec<Vec<Elem>> = (0..c.n_vertices()).map(|p| c.vertex_group(p).generators().to_vec()).collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); c.n_vertices()];
    for (e, edge) in c.edges.iter().enumerate() {
        incident[edge.ends[0]].push(e);
        incident[edge.ends[1]].push(e);
    }
    let mut class_of = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    let mut classes = Vec::new();
    let mut moves: u64 = 0;
    let mut queue = Vec::new();
    let mut a = c.identity0();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        queue.clear();
        queue.push(start);
        let mut head = 0;
        while head < queue.len() {
            let i = queue[head];
            head += 1;
            for (v, gs) in gens.iter().enumerate() {
                for &g in gs {
                    moves += 1;
                    if moves > budget {
                        return Err(Error::OrbitBudgetExceeded { budget });
                    }
                    a[v] = g;
                    let mut z = cocycles[i].clone();
                    for &e in &incident[v] {
                        z[e] = c.act_at(z[e], &a, e);
                    }
                    a[v] = 0;
                    let j = cocycles
                        .binary_search(&z)
                        .map_err(|_| Error::Internal("the action left the cocycle set".into()))?;
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        parent[j] = Some((i, v, g));
                        queue.push(j);
                    }
                }
            }
        }
        classes.push(CohomClass { representative: start, size: queue.len() });
    }
    Ok(CohomologySet { cocycles, class_of, classes, parent })
}
