//! Isomorphism and automorphism search by backtracking over generator images.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::{subgroup_closure, Elem, FiniteGroup, GroupHom, Subgroup};

const UNSET: Elem = Elem::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Sig {
    order: u32,
    class_size: u32,
    membership: u64,
}

fn signatures(g: &FiniteGroup, subgroups: &[&Subgroup]) -> Vec<Sig> {
    let masks: Vec<Vec<bool>> = subgroups.iter().map(|s| s.mask()).collect();
    g.elements()
        .map(|x| {
            let membership = masks
                .iter()
                .enumerate()
                .filter(|(_, m)| m[x as usize])
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            Sig { order: g.element_order(x), class_size: g.class_size(x), membership }
        })
        .collect()
}

/// Precomputed search plan for isomorphisms `g -> h`.
struct Plan<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    sig_g: Vec<Sig>,
    sig_h: Vec<Sig>,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    // per level: elements of H_k \ H_{k-1} as (x, parent, generator index)
    // with x = parent * gens[j]
    fresh: Vec<Vec<(Elem, Elem, usize)>>,
    // per level: pairs (x, j) whose product x * gens[j] must be respected
    checks: Vec<Vec<(Elem, usize)>>,
    budget: u64,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl<'a> Plan<'a> {
    fn new(
        g: &'a FiniteGroup,
        h: &'a FiniteGroup,
        constraints: &[(&Subgroup, &Subgroup)],
        budget: u64,
    ) -> Option<Self> {
        if g.order() != h.order() || constraints.len() > 64 {
            return None;
        }
        if constraints.iter().any(|(s, t)| s.len() != t.len()) {
            return None;
        }
        let sg: Vec<&Subgroup> = constraints.iter().map(|c| c.0).collect();
        let sh: Vec<&Subgroup> = constraints.iter().map(|c| c.1).collect();
        let sig_g = signatures(g, &sg);
        let sig_h = signatures(h, &sh);
        let mut count: HashMap<Sig, Vec<Elem>> = HashMap::new();
        for y in h.elements() {
            count.entry(sig_h[y as usize]).or_default().push(y);
        }
        let mut a = sig_g.clone();
        let mut b = sig_h.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }

        let cand_len = |x: Elem| count.get(&sig_g[x as usize]).map_or(0, Vec::len);
        let mut order: Vec<Elem> = g.elements().skip(1).collect();
        order.sort_by_key(|&x| (cand_len(x), std::cmp::Reverse(g.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = subgroup_closure(g, &[]);
        for x in order {
            if span.len() == g.order() {
                break;
            }
            if span.contains(x) {
                continue;
            }
            gens.push(x);
            span = subgroup_closure(g, &gens);
        }

        let mut inside = vec![false; g.order()];
        inside[0] = true;
        let mut members = vec![0];
        let mut fresh = Vec::new();
        let mut checks = Vec::new();
        for k in 0..gens.len() {
            let old = members.len();
            let mut level = Vec::new();
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for (j, &s) in gens.iter().enumerate().take(k + 1) {
                    let y = g.mul(x, s);
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        members.push(y);
                        level.push((y, x, j));
                    }
                }
            }
            let mut level_checks = Vec::new();
            for (idx, &x) in members.iter().enumerate() {
                for j in 0..=k {
                    if idx >= old || j == k {
                        level_checks.push((x, j));
                    }
                }
            }
            fresh.push(level);
            checks.push(level_checks);
        }
        let candidates = gens
            .iter()
            .map(|&x| count.get(&sig_g[x as usize]).cloned().unwrap_or_default())
            .collect();
        Some(Plan {
            g,
            h,
            sig_g,
            sig_h,
            gens,
            candidates,
            fresh,
            checks,
            budget,
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        })
    }

    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        if self.exhausted.load(Ordering::Relaxed) {
            return Err(Error::AutBudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    fn fresh_state(&self) -> (Vec<Elem>, Vec<bool>, Vec<Elem>) {
        let mut f = vec![UNSET; self.g.order()];
        f[0] = 0;
        let mut used = vec![false; self.h.order()];
        used[0] = true;
        (f, used, vec![0; self.gens.len()])
    }

    /// Tries `y` as image of generator `k`; on success `f` is extended to
    /// `H_k` and true is returned, otherwise the state is left unchanged.
    fn extend(&self, k: usize, y: Elem, f: &mut [Elem], used: &mut [bool], imgs: &mut [Elem]) -> bool {
        let (g, h) = (self.g, self.h);
        if used[y as usize] {
            return false;
        }
        for j in 0..k {
            let lhs = g.element_order(g.mul(self.gens[j], self.gens[k]));
            if h.element_order(h.mul(imgs[j], y)) != lhs {
                return false;
            }
        }
        imgs[k] = y;
        let level = &self.fresh[k];
        let mut done = 0;
        let mut ok = true;
        for &(x, parent, j) in level {
            let fx = h.mul(f[parent as usize], imgs[j]);
            if used[fx as usize] || self.sig_g[x as usize] != self.sig_h[fx as usize] {
                ok = false;
                break;
            }
            f[x as usize] = fx;
            used[fx as usize] = true;
            done += 1;
        }
        if ok {
            ok = self.checks[k].iter().all(|&(x, j)| {
                f[g.mul(x, self.gens[j]) as usize] == h.mul(f[x as usize], imgs[j])
            });
        }
        if !ok {
            for &(x, _, _) in &level[..done] {
                used[f[x as usize] as usize] = false;
                f[x as usize] = UNSET;
            }
        }
        ok
    }

    fn retract(&self, k: usize, f: &mut [Elem], used: &mut [bool]) {
        for &(x, _, _) in &self.fresh[k] {
            used[f[x as usize] as usize] = false;
            f[x as usize] = UNSET;
        }
    }

    fn dfs(
        &self,
        k: usize,
        f: &mut Vec<Elem>,
        used: &mut Vec<bool>,
        imgs: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
        first_only: bool,
    ) -> Result<()> {
        if k == self.gens.len() {
            out.push(f.clone());
            return Ok(());
        }
        for &y in &self.candidates[k] {
            self.tick()?;
            if self.extend(k, y, f, used, imgs) {
                self.dfs(k + 1, f, used, imgs, out, first_only)?;
                self.retract(k, f, used);
                if first_only && !out.is_empty() {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    fn run(&self, first_only: bool) -> Result<Vec<Vec<Elem>>> {
        if self.gens.is_empty() {
            return Ok(vec![vec![0]]);
        }
        let branch = |&y: &Elem| -> Result<Vec<Vec<Elem>>> {
            let (mut f, mut used, mut imgs) = self.fresh_state();
            let mut out = Vec::new();
            self.tick()?;
            if self.extend(0, y, &mut f, &mut used, &mut imgs) {
                self.dfs(1, &mut f, &mut used, &mut imgs, &mut out, first_only)?;
            }
            Ok(out)
        };
        if first_only {
            let found = self.candidates[0]
                .par_iter()
                .map(branch)
                .find_map_first(|r| match r {
                    Ok(v) if v.is_empty() => None,
                    other => Some(other),
                });
            return found.unwrap_or_else(|| Ok(Vec::new()));
        }
        let parts: Vec<Result<Vec<Vec<Elem>>>> = self.candidates[0].par_iter().map(branch).collect();
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        all.sort_unstable();
        Ok(all)
    }
}

/// All isomorphisms `g -> h` mapping each constraint subgroup `S` of `g` onto
/// its partner `T` in `h`, as element maps sorted lexicographically.
pub fn isomorphisms(
    g: &FiniteGroup,
    h: &FiniteGroup,
    constraints: &[(&Subgroup, &Subgroup)],
    budget: u64,
) -> Result<Vec<Vec<Elem>>> {
    match Plan::new(g, h, constraints, budget) {
        Some(plan) => plan.run(false),
        None => Ok(Vec::new()),
    }
}

/// One isomorphism `g -> h` respecting the constraints, if any exists.
pub fn find_isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    constraints: &[(&Subgroup, &Subgroup)],
    budget: u64,
) -> Result<Option<Vec<Elem>>> {
    match Plan::new(g, h, constraints, budget) {
        Some(plan) => Ok(plan.run(true)?.into_iter().next()),
        None => Ok(None),
    }
}

/// Automorphisms of `g` mapping every listed subgroup onto itself.
pub fn automorphisms(g: &Arc<FiniteGroup>, stabilized: &[Subgroup], budget: u64) -> Result<AutGroup> {
    let pairs: Vec<(&Subgroup, &Subgroup)> = stabilized.iter().map(|s| (s, s)).collect();
    let perms = isomorphisms(g, g, &pairs, budget)?;
    AutGroup::from_sorted_perms(g.clone(), perms)
}

/// Conjugations `x -> s⁻¹ x s` for `s` in `source` (default: all of `g`).
pub fn inner_automorphisms(g: &Arc<FiniteGroup>, source: Option<&Subgroup>) -> Result<AutGroup> {
    let all = Subgroup::whole(g);
    let source = source.unwrap_or(&all);
    let mut perms: Vec<Vec<Elem>> = source
        .members()
        .iter()
        .map(|&s| g.elements().map(|x| g.conj(x, s)).collect())
        .collect();
    perms.sort_unstable();
    perms.dedup();
    AutGroup::from_sorted_perms(g.clone(), perms)
}

/// `ψ⁻¹ ∘ f ∘ ψ` for an injective `psi: G_τ -> G_σ` and an automorphism `f` of
/// `G_σ` (given as an element map) that stabilizes the image of `psi`.
pub fn ad_conjugate(psi: &GroupHom, f: &[Elem]) -> Result<Vec<Elem>> {
    let back = psi.partial_inverse();
    psi.map()
        .iter()
        .map(|&y| back[f[y as usize] as usize].ok_or(Error::ImageNotStabilized))
        .collect()
}

/// A group of automorphisms of `base`.
///
/// Elements are stored as permutations of the base element indices, sorted
/// lexicographically, so the identity automorphism is element 0. The group
/// structure multiplies by composition: `mul(a, b) = a ∘ b` (apply `b` first).
#[derive(Debug, Clone)]
pub struct AutGroup {
    base: Arc<FiniteGroup>,
    perms: Vec<Vec<Elem>>,
    base_gens: Vec<Elem>,
    keys: HashMap<Vec<Elem>, Elem>,
    structure: Arc<FiniteGroup>,
}

impl AutGroup {
    /// Builds the group from a sorted, duplicate-free list of automorphisms
    /// closed under composition.
    pub fn from_sorted_perms(base: Arc<FiniteGroup>, perms: Vec<Vec<Elem>>) -> Result<Self> {
        let id: Vec<Elem> = base.elements().collect();
        if perms.first() != Some(&id) {
            return Err(Error::Internal("automorphism list does not start with the identity".into()));
        }
        let base_gens = base.generators().to_vec();
        let key = |p: &[Elem]| -> Vec<Elem> { base_gens.iter().map(|&s| p[s as usize]).collect() };
        let mut keys = HashMap::with_capacity(perms.len());
        for (i, p) in perms.iter().enumerate() {
            if keys.insert(key(p), i as Elem).is_some() {
                return Err(Error::Internal("duplicate automorphism".into()));
            }
        }
        let n = perms.len();
        let mut table = Vec::with_capacity(n * n);
        let mut scratch = vec![0; base_gens.len()];
        for a in &perms {
            for b in &perms {
                for (s, &x) in scratch.iter_mut().zip(&base_gens) {
                    *s = a[b[x as usize] as usize];
                }
                let Some(&c) = keys.get(&scratch) else {
                    return Err(Error::Internal("automorphism list is not closed under composition".into()));
                };
                table.push(c);
            }
        }
        let structure = Arc::new(FiniteGroup::from_table_unchecked(n, table));
        Ok(AutGroup { base, perms, base_gens, keys, structure })
    }

    /// The subgroup generated by the given automorphisms.
    pub fn generated_by(base: Arc<FiniteGroup>, seeds: &[Vec<Elem>]) -> Result<Self> {
        let id: Vec<Elem> = base.elements().collect();
        let mut all = vec![id];
        let mut seen: std::collections::HashSet<Vec<Elem>> = all.iter().cloned().collect();
        let mut head = 0;
        while head < all.len() {
            let p = all[head].clone();
            head += 1;
            for s in seeds {
                let q: Vec<Elem> = p.iter().map(|&x| s[x as usize]).collect();
                if seen.insert(q.clone()) {
                    all.push(q);
                }
            }
        }
        all.sort_unstable();
        Self::from_sorted_perms(base, all)
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, i: Elem) -> &[Elem] {
        &self.perms[i as usize]
    }

    pub fn perms(&self) -> &[Vec<Elem>] {
        &self.perms
    }

    pub fn index_of(&self, p: &[Elem]) -> Option<Elem> {
        if p.len() != self.base.order() {
            return None;
        }
        let key: Vec<Elem> = self.base_gens.iter().map(|&s| p[s as usize]).collect();
        let i = *self.keys.get(&key)?;
        (self.perms[i as usize] == p).then_some(i)
    }

    /// The abstract group of automorphisms, multiplied by composition.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.structure
    }

    pub fn generators(&self) -> &[Elem] {
        self.structure.generators()
    }

    #[inline]
    pub fn apply(&self, a: Elem, x: Elem) -> Elem {
        self.perms[a as usize][x as usize]
    }

    pub fn contains_group(&self, other: &AutGroup) -> bool {
        other.perms.iter().all(|p| self.index_of(p).is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    /// Brute force over every bijection fixing 0.
    fn oracle_aut_count(g: &FiniteGroup) -> usize {
        fn rec(g: &FiniteGroup, f: &mut Vec<Elem>, used: &mut Vec<bool>, k: usize) -> usize {
            let n = g.order();
            if k == n {
                let ok = g.elements().all(|a| {
                    g.elements().all(|b| f[g.mul(a, b) as usize] == g.mul(f[a as usize], f[b as usize]))
                });
                return ok as usize;
            }
            let mut total = 0;
            for y in 1..n {
                if !used[y] {
                    used[y] = true;
                    f[k] = y as Elem;
                    total += rec(g, f, used, k + 1);
                    used[y] = false;
                }
            }
            total
        }
        let mut f = vec![0; g.order()];
        let mut used = vec![false; g.order()];
        used[0] = true;
        rec(g, &mut f, &mut used, 1)
    }

    #[test]
    fn small_automorphism_groups() {
        let t = Arc::new(FiniteGroup::trivial());
        assert_eq!(automorphisms(&t, &[], 1000).unwrap().order(), 1);
        let z2 = Arc::new(catalog::cyclic(2));
        assert_eq!(automorphisms(&z2, &[], 1000).unwrap().order(), 1);
        let d8 = Arc::new(catalog::dihedral(4));
        let oracle = oracle_aut_count(&d8);
        assert_eq!(oracle, 8);
        assert_eq!(automorphisms(&d8, &[], 1000).unwrap().order(), oracle);
    }

    #[test]
    fn oracle_agrees_on_more_groups() {
        for g in [catalog::cyclic(6), catalog::klein_four(), catalog::symmetric(3), catalog::quaternion()] {
            let g = Arc::new(g);
            assert_eq!(automorphisms(&g, &[], 10_000).unwrap().order(), oracle_aut_count(&g));
        }
    }

    #[test]
    fn inner_automorphism_orders() {
        let z4 = Arc::new(catalog::cyclic(4));
        assert_eq!(inner_automorphisms(&z4, None).unwrap().order(), 1);
        let s3 = Arc::new(catalog::symmetric(3));
        assert_eq!(inner_automorphisms(&s3, None).unwrap().order(), 6);
        let d8 = Arc::new(catalog::dihedral(4));
        let inn = inner_automorphisms(&d8, None).unwrap();
        assert_eq!(inn.order(), d8.order() / d8.center().len());
        assert_eq!(inn.order(), 4);
    }

    #[test]
    fn constrained_search_is_filtered_unconstrained_search() {
        let s4 = Arc::new(catalog::symmetric(4));
        let full = automorphisms(&s4, &[], 100_000).unwrap();
        for seed in s4.elements() {
            let sub = subgroup_closure(&s4, &[seed]);
            let constrained = automorphisms(&s4, &[sub.clone()], 100_000).unwrap();
            let filtered: Vec<&Vec<Elem>> = full
                .perms()
                .iter()
                .filter(|p| sub.members().iter().all(|&x| sub.contains(p[x as usize])))
                .collect();
            assert_eq!(constrained.perms().iter().collect::<Vec<_>>(), filtered);
        }
    }

    #[test]
    fn ad_conjugate_on_center_is_trivial() {
        let d8 = Arc::new(catalog::dihedral(4));
        let z2 = Arc::new(catalog::cyclic(2));
        let c = d8.center().members()[1];
        let psi = GroupHom::new(z2.clone(), d8.clone(), vec![0, c]).unwrap();
        let aut = automorphisms(&d8, &[], 1000).unwrap();
        for p in aut.perms() {
            assert_eq!(ad_conjugate(&psi, p).unwrap(), vec![0, 1]);
        }
    }

    #[test]
    fn ad_conjugate_rejects_unstable_image() {
        let s3 = Arc::new(catalog::symmetric(3));
        let z2 = Arc::new(catalog::cyclic(2));
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let psi = GroupHom::new(z2, s3.clone(), vec![0, t]).unwrap();
        let inn = inner_automorphisms(&s3, None).unwrap();
        let moved = inn.perms().iter().any(|p| ad_conjugate(&psi, p).is_err());
        assert!(moved);
    }

    #[test]
    fn budget_is_enforced() {
        let s4 = Arc::new(catalog::symmetric(4));
        assert_eq!(
            automorphisms(&s4, &[], 3).unwrap_err(),
            Error::AutBudgetExceeded { budget: 3 }
        );
    }

    #[test]
    fn structure_multiplies_by_composition() {
        let d8 = Arc::new(catalog::dihedral(4));
        let aut = automorphisms(&d8, &[], 1000).unwrap();
        let a = aut.group();
        for i in a.elements() {
            for j in a.elements() {
                let k = a.mul(i, j);
                for x in d8.elements() {
                    assert_eq!(aut.apply(k, x), aut.apply(i, aut.apply(j, x)));
                }
            }
        }
    }
}
