//! Brute-force enumeration and isomorphism testing of amalgams of a fixed
//! type. Uses only group-level searches, never the cohomology machinery.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::budget::Budgets;
use crate::complex::Simplex;
use crate::error::{Error, Result};
use crate::group::{automorphisms, isomorphisms, Elem, GroupHom, Subgroup};

use super::{check_iso, Amalgam, AmalgamIso};

struct Counter {
    used: AtomicU64,
    budget: u64,
}

impl Counter {
    fn new(budget: u64) -> Self {
        Counter { used: AtomicU64::new(0), budget }
    }

    fn tick(&self) -> Result<()> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Error::OracleBudgetExceeded { budget: self.budget });
        }
        Ok(())
    }
}

/// Every amalgam of the type of `g0`.
///
/// Each covering map is `ψ^σ_ρ ∘ a` with `a ∈ Aut(G_ρ)` keeping the image of
/// every coface of `ρ` in place; choices are combined depth first and pruned
/// on diamonds. Output order is deterministic.
pub fn oracle_enumerate_type(g0: &Amalgam, budgets: &Budgets) -> Result<Vec<Amalgam>> {
    let complex = g0.complex();
    let simplices = complex.simplices();
    let n = simplices.len();

    let mut options: HashMap<usize, Vec<Vec<Elem>>> = HashMap::new();
    for (r, rho) in simplices.iter().enumerate().filter(|(_, s)| s.rank() >= 1) {
        let g = g0.group_at(r);
        let aut = automorphisms(g, &[], budgets.aut_nodes)?;
        let cofaces: Vec<Subgroup> = complex
            .cofaces(rho)
            .iter()
            .map(|t| g0.map_at(r, complex.index_of(t).unwrap()).image())
            .collect();
        let keep: Vec<Vec<Elem>> = aut
            .perms()
            .iter()
            .filter(|a| cofaces.iter().all(|s| s.members().iter().all(|&x| s.contains(a[x as usize]))))
            .cloned()
            .collect();
        options.insert(r, keep);
    }

    // covers grouped by their lower simplex, larger lower simplices first
    let mut order: Vec<(usize, usize)> = Vec::new();
    for i in (0..n).rev() {
        for (j, t) in simplices.iter().enumerate() {
            if t.len() == simplices[i].len() + 1 && simplices[i].is_face_of(t) {
                order.push((i, j));
            }
        }
    }
    if order.is_empty() {
        return Ok(vec![g0.clone()]);
    }

    let choice_maps: Vec<Vec<Vec<Elem>>> = order
        .iter()
        .map(|&(i, j)| {
            let psi = g0.map_at(i, j);
            options[&j].iter().map(|a| a.iter().map(|&x| psi.apply(x)).collect()).collect()
        })
        .collect();

    let nodes = Counter::new(budgets.aut_nodes);
    let found = Counter::new(budgets.cocycles as u64);
    let ctx = Enum { g0, order: &order, choices: &choice_maps, nodes: &nodes, found: &found };

    let branches: Vec<Result<Vec<Vec<usize>>>> = (0..choice_maps[0].len())
        .into_par_iter()
        .map(|c| {
            let mut picked = vec![c];
            let mut out = Vec::new();
            ctx.dfs(&mut picked, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut amalgams = Vec::new();
    for b in branches {
        for picked in b? {
            let mut covers = HashMap::new();
            for (k, &(i, j)) in order.iter().enumerate() {
                let map = choice_maps[k][picked[k]].clone();
                covers.insert((i, j), GroupHom::new_unchecked(g0.group_at(j).clone(), g0.group_at(i).clone(), map));
            }
            let a = Amalgam::assemble(complex.clone(), g0.groups().to_vec(), covers)?;
            if !a.same_type(g0)? {
                return Err(Error::Internal("oracle produced an amalgam of the wrong type".into()));
            }
            amalgams.push(a);
        }
    }
    Ok(amalgams)
}

struct Enum<'a> {
    g0: &'a Amalgam,
    order: &'a [(usize, usize)],
    choices: &'a [Vec<Vec<Elem>>],
    nodes: &'a Counter,
    found: &'a Counter,
}

impl Enum<'_> {
    fn map_of(&self, picked: &[usize], i: usize, j: usize) -> Option<&[Elem]> {
        let k = self.order.iter().position(|&p| p == (i, j))?;
        picked.get(k).map(|&c| self.choices[k][c].as_slice())
    }

    /// Diamonds whose last map is the most recently picked one.
    fn diamonds_ok(&self, picked: &[usize]) -> bool {
        let k = picked.len() - 1;
        let (i, r2) = self.order[k];
        let complex = self.g0.complex();
        let simplices = complex.simplices();
        let s = &simplices[i];
        let bottom2 = &self.choices[k][picked[k]];
        for &(i1, r1) in &self.order[..k] {
            if i1 != i {
                continue;
            }
            let extra = simplices[r2].vertices().iter().copied().find(|&v| !s.contains(v)).unwrap();
            let t = simplices[r1].with(extra);
            let Some(j) = complex.index_of(&t) else { continue };
            let (Some(up1), Some(up2), Some(bottom1)) =
                (self.map_of(picked, r1, j), self.map_of(picked, r2, j), self.map_of(picked, i, r1))
            else {
                continue;
            };
            if up1.iter().zip(up2).any(|(&a, &b)| bottom1[a as usize] != bottom2[b as usize]) {
                return false;
            }
        }
        true
    }

    fn dfs(&self, picked: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        self.nodes.tick()?;
        if !self.diamonds_ok(picked) {
            return Ok(());
        }
        if picked.len() == self.order.len() {
            self.found.tick()?;
            out.push(picked.clone());
            return Ok(());
        }
        let k = picked.len();
        for c in 0..self.choices[k].len() {
            picked.push(c);
            self.dfs(picked, out)?;
            picked.pop();
        }
        Ok(())
    }
}

/// Searches for an isomorphism `g1 -> g2` of amalgams over the same complex.
///
/// Vertex components are drawn from the isomorphisms `G¹_v -> G²_v` carrying
/// each coface image onto its partner; all other components are forced by
/// the naturality squares and are checked as soon as they are determined.
pub fn oracle_isomorphic(g1: &Amalgam, g2: &Amalgam, budgets: &Budgets) -> Result<Option<AmalgamIso>> {
    let complex = g1.complex();
    if complex != g2.complex() {
        return Err(Error::TypeMismatch("amalgams live on different complexes".into()));
    }
    let simplices = complex.simplices();
    if (0..simplices.len()).any(|i| g1.group_at(i).order() != g2.group_at(i).order()) {
        return Ok(None);
    }
    let vertices: Vec<usize> = (0..simplices.len()).filter(|&i| simplices[i].rank() == 0).collect();
    let mut candidates: Vec<Vec<Vec<Elem>>> = Vec::new();
    for &v in &vertices {
        let cofaces = complex.cofaces(&simplices[v]);
        let pairs: Vec<(Subgroup, Subgroup)> = cofaces
            .iter()
            .map(|t| {
                let j = complex.index_of(t).unwrap();
                (g1.map_at(v, j).image(), g2.map_at(v, j).image())
            })
            .collect();
        let refs: Vec<(&Subgroup, &Subgroup)> = pairs.iter().map(|(a, b)| (a, b)).collect();
        let isos = isomorphisms(g1.group_at(v), g2.group_at(v), &refs, budgets.aut_nodes)?;
        if isos.is_empty() {
            return Ok(None);
        }
        candidates.push(isos);
    }
    let search = IsoSearch { g1, g2, vertices: &vertices, candidates: &candidates, nodes: Counter::new(budgets.aut_nodes) };
    let mut chosen = Vec::new();
    let Some(comps) = search.dfs(&mut chosen)? else {
        return Ok(None);
    };
    let iso = AmalgamIso {
        components: comps
            .into_iter()
            .enumerate()
            .map(|(i, m)| GroupHom::new_unchecked(g1.group_at(i).clone(), g2.group_at(i).clone(), m))
            .collect(),
    };
    check_iso(g1, g2, &iso)?;
    Ok(Some(iso))
}

struct IsoSearch<'a> {
    g1: &'a Amalgam,
    g2: &'a Amalgam,
    vertices: &'a [usize],
    candidates: &'a [Vec<Vec<Elem>>],
    nodes: Counter,
}

impl IsoSearch<'_> {
    /// `(²φ^v_τ)⁻¹ ∘ f ∘ ¹φ^v_τ`, or `None` if it leaves the image.
    fn transport(&self, v: usize, j: usize, f: &[Elem]) -> Option<Vec<Elem>> {
        let back = self.g2.map_at(v, j).partial_inverse();
        self.g1.map_at(v, j).map().iter().map(|&x| back[f[x as usize] as usize]).collect()
    }

    /// Components determined by the vertices chosen so far must agree.
    fn consistent(&self, chosen: &[usize]) -> bool {
        let complex = self.g1.complex();
        let simplices = complex.simplices();
        let k = chosen.len() - 1;
        let v = self.vertices[k];
        let fv = &self.candidates[k][chosen[k]];
        for t in complex.cofaces(&simplices[v]) {
            let j = complex.index_of(&t).unwrap();
            let Some(mine) = self.transport(v, j, fv) else { return false };
            for (l, &u) in self.vertices[..k].iter().enumerate() {
                if !t.contains(simplices[u].min_vertex()) {
                    continue;
                }
                match self.transport(u, j, &self.candidates[l][chosen[l]]) {
                    Some(theirs) if theirs == mine => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn dfs(&self, chosen: &mut Vec<usize>) -> Result<Option<Vec<Vec<Elem>>>> {
        if chosen.len() == self.vertices.len() {
            let complex = self.g1.complex();
            let simplices = complex.simplices();
            let mut comps = Vec::with_capacity(simplices.len());
            for (j, t) in simplices.iter().enumerate() {
                let k = self.vertices.iter().position(|&v| simplices[v] == Simplex::vertex(t.max_vertex())).unwrap();
                let v = self.vertices[k];
                match self.transport(v, j, &self.candidates[k][chosen[k]]) {
                    Some(m) => comps.push(m),
                    None => return Ok(None),
                }
            }
            let iso = AmalgamIso {
                components: comps
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        GroupHom::new_unchecked(self.g1.group_at(i).clone(), self.g2.group_at(i).clone(), m.clone())
                    })
                    .collect(),
            };
            return Ok(check_iso(self.g1, self.g2, &iso).is_ok().then_some(comps));
        }
        let k = chosen.len();
        for c in 0..self.candidates[k].len() {
            self.nodes.tick()?;
            chosen.push(c);
            if self.consistent(chosen) {
                if let Some(found) = self.dfs(chosen)? {
                    return Ok(Some(found));
                }
            }
            chosen.pop();
        }
        Ok(None)
    }
}

/// One isomorphism class found by the oracle.
#[derive(Debug, Clone)]
pub struct OracleClass {
    /// Positions in the enumerated list.
    pub members: Vec<usize>,
    /// Normalized member with the lexicographically least edge twists.
    pub representative: Arc<Amalgam>,
    pub twists: Vec<Vec<Elem>>,
    /// Number of normalized amalgams in the class.
    pub normalized: usize,
}

/// Partitions all amalgams of the type of `g0` into isomorphism classes.
/// Classes are sorted by the twists of their representatives, so the class
/// of `g0` comes first.
pub fn oracle_classes(g0: &Amalgam, budgets: &Budgets) -> Result<(Vec<Amalgam>, Vec<OracleClass>)> {
    let all = oracle_enumerate_type(g0, budgets)?;
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = vec![usize::MAX; all.len()];
    const CHUNK: usize = 256;
    for start in (0..all.len()).step_by(CHUNK) {
        let end = (start + CHUNK).min(all.len());
        let known = reps.clone();
        let first: Vec<Result<Option<usize>>> = (start..end)
            .into_par_iter()
            .map(|a| {
                for (c, &r) in known.iter().enumerate() {
                    if oracle_isomorphic(&all[r], &all[a], budgets)?.is_some() {
                        return Ok(Some(c));
                    }
                }
                Ok(None)
            })
            .collect();
        for (a, hit) in (start..end).zip(first) {
            match hit? {
                Some(c) => class_of[a] = c,
                None => {
                    let mut found = None;
                    for (c, &r) in reps.iter().enumerate().skip(known.len()) {
                        if oracle_isomorphic(&all[r], &all[a], budgets)?.is_some() {
                            found = Some(c);
                            break;
                        }
                    }
                    class_of[a] = found.unwrap_or_else(|| {
                        reps.push(a);
                        reps.len() - 1
                    });
                }
            }
        }
    }

    let normalized: Vec<Result<(bool, Vec<Vec<Elem>>, Amalgam)>> = all
        .par_iter()
        .map(|a| {
            let is_norm = a.is_normalized(g0);
            let (n, _) = a.normalize(g0)?;
            let tw = n.edge_twists(g0)?;
            Ok((is_norm, tw, n))
        })
        .collect();
    let mut classes: Vec<OracleClass> = Vec::new();
    let mut best: Vec<Option<(Vec<Vec<Elem>>, Amalgam)>> = vec![None; reps.len()];
    let mut members = vec![Vec::new(); reps.len()];
    let mut counts = vec![0; reps.len()];
    for (a, item) in normalized.into_iter().enumerate() {
        let (is_norm, tw, n) = item?;
        let c = class_of[a];
        members[c].push(a);
        if is_norm {
            counts[c] += 1;
        }
        if best[c].as_ref().is_none_or(|(b, _)| tw < *b) {
            best[c] = Some((tw, n));
        }
    }
    for (c, b) in best.into_iter().enumerate() {
        let (twists, rep) = b.expect("class is non-empty");
        classes.push(OracleClass {
            members: std::mem::take(&mut members[c]),
            representative: Arc::new(rep),
            twists,
            normalized: counts[c],
        });
    }
    classes.sort_by(|a, b| a.twists.cmp(&b.twists));
    Ok((all, classes))
}
