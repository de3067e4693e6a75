use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::{Elem, FiniteGroup, Subgroup};

/// A homomorphism stored as a total element map `dom -> cod`.
#[derive(Clone)]
pub struct GroupHom {
    dom: Arc<FiniteGroup>,
    cod: Arc<FiniteGroup>,
    map: Vec<Elem>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupHom")
            .field("dom_order", &self.dom.order())
            .field("cod_order", &self.cod.order())
            .field("map", &self.map)
            .finish()
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && same_group(&self.dom, &other.dom)
            && same_group(&self.cod, &other.cod)
    }
}

impl Eq for GroupHom {}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GroupHom {
    /// Validates multiplicativity of `map` and builds the homomorphism.
    pub fn new(dom: Arc<FiniteGroup>, cod: Arc<FiniteGroup>, map: Vec<Elem>) -> Result<Self> {
        let h = GroupHom { dom, cod, map };
        validate_hom(&h, false)?;
        Ok(h)
    }

    pub(crate) fn new_unchecked(dom: Arc<FiniteGroup>, cod: Arc<FiniteGroup>, map: Vec<Elem>) -> Self {
        debug_assert_eq!(map.len(), dom.order());
        GroupHom { dom, cod, map }
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let map = g.elements().collect();
        GroupHom { dom: g.clone(), cod: g, map }
    }

    pub fn trivial(dom: Arc<FiniteGroup>, cod: Arc<FiniteGroup>) -> Self {
        let map = vec![0; dom.order()];
        GroupHom { dom, cod, map }
    }

    /// Extends generator images to a total map and validates the result.
    pub fn from_generator_images(
        dom: Arc<FiniteGroup>,
        cod: Arc<FiniteGroup>,
        gens: &[Elem],
        images: &[Elem],
    ) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::BadHomomorphism(format!(
                "{} generators but {} images",
                gens.len(),
                images.len()
            )));
        }
        if let Some(&x) = gens.iter().find(|&&x| x as usize >= dom.order()) {
            return Err(Error::BadHomomorphism(format!("generator {x} out of range")));
        }
        if let Some(&y) = images.iter().find(|&&y| y as usize >= cod.order()) {
            return Err(Error::BadHomomorphism(format!("image {y} out of range")));
        }
        let mut map = vec![u32::MAX; dom.order()];
        map[0] = 0;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&s, &t) in gens.iter().zip(images) {
                let y = dom.mul(x, s);
                if map[y as usize] == u32::MAX {
                    map[y as usize] = cod.mul(map[x as usize], t);
                    queue.push(y);
                }
            }
        }
        if queue.len() != dom.order() {
            return Err(Error::BadHomomorphism(format!(
                "given elements generate a subgroup of order {} only",
                queue.len()
            )));
        }
        let h = GroupHom { dom, cod, map };
        // f(x s) = f(x) f(s) for every generator s forces multiplicativity.
        for x in h.dom.elements() {
            for (&s, &t) in gens.iter().zip(images) {
                if h.apply(h.dom.mul(x, s)) != h.cod.mul(h.apply(x), t) {
                    return Err(Error::BadHomomorphism(format!(
                        "generator images are inconsistent at ({x}, {s})"
                    )));
                }
            }
        }
        Ok(h)
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.dom
    }

    pub fn codomain(&self) -> &Arc<FiniteGroup> {
        &self.cod
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    pub fn is_injective(&self) -> bool {
        let mut kernel = 0;
        for &y in &self.map {
            if y == 0 {
                kernel += 1;
            }
        }
        kernel == 1
    }

    pub fn image(&self) -> Subgroup {
        let mut members = self.map.clone();
        members.sort_unstable();
        members.dedup();
        Subgroup::from_sorted_unchecked(self.cod.order(), members)
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &GroupHom) -> Result<GroupHom> {
        compose_homs(self, other)
    }

    /// Inverse of the corestriction onto the image: entries outside the image
    /// are `None`. Only meaningful for injective maps.
    pub fn partial_inverse(&self) -> Vec<Option<Elem>> {
        let mut inv = vec![None; self.cod.order()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize].get_or_insert(x as Elem);
        }
        inv
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<GroupHom> {
        if self.dom.order() != self.cod.order() || !self.is_injective() {
            return Err(Error::BadHomomorphism("map is not bijective".into()));
        }
        let mut map = vec![0; self.cod.order()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y as usize] = x as Elem;
        }
        Ok(GroupHom { dom: self.cod.clone(), cod: self.dom.clone(), map })
    }
}

/// Checks multiplicativity on every pair and, if `injective` is set,
/// injectivity. The first violation found is reported.
pub fn validate_hom(h: &GroupHom, injective: bool) -> Result<()> {
    let (dom, cod) = (&h.dom, &h.cod);
    if h.map.len() != dom.order() {
        return Err(Error::BadHomomorphism(format!(
            "map has length {}, domain has order {}",
            h.map.len(),
            dom.order()
        )));
    }
    if let Some((x, &y)) = h.map.iter().enumerate().find(|(_, &y)| y as usize >= cod.order()) {
        return Err(Error::BadHomomorphism(format!("{x} maps to {y}, outside the codomain")));
    }
    if h.map[0] != 0 {
        return Err(Error::BadHomomorphism("identity is not mapped to identity".into()));
    }
    for a in dom.elements() {
        for b in dom.elements() {
            if h.apply(dom.mul(a, b)) != cod.mul(h.apply(a), h.apply(b)) {
                return Err(Error::BadHomomorphism(format!("not multiplicative on ({a}, {b})")));
            }
        }
    }
    if injective {
        let mut seen = vec![None; cod.order()];
        for (x, &y) in h.map.iter().enumerate() {
            if let Some(w) = seen[y as usize] {
                return Err(Error::BadHomomorphism(format!("not injective: {w} and {x} both map to {y}")));
            }
            seen[y as usize] = Some(x);
        }
    }
    Ok(())
}

/// `g ∘ f`.
pub fn compose_homs(g: &GroupHom, f: &GroupHom) -> Result<GroupHom> {
    if !same_group(&f.cod, &g.dom) {
        return Err(Error::GroupMismatch("codomain of the inner map is not the domain of the outer map".into()));
    }
    let map = f.map.iter().map(|&x| g.apply(x)).collect();
    Ok(GroupHom { dom: f.dom.clone(), cod: g.cod.clone(), map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn identity_and_trivial_maps() {
        let d8 = Arc::new(catalog::dihedral(4));
        let id = GroupHom::identity(d8.clone());
        validate_hom(&id, true).unwrap();
        let t = GroupHom::trivial(d8.clone(), d8.clone());
        validate_hom(&t, false).unwrap();
        assert!(validate_hom(&t, true).is_err());
        assert!(!t.is_injective());
    }

    #[test]
    fn cyclic_four_onto_order_two_is_not_injective() {
        let z4 = Arc::new(catalog::cyclic(4));
        let z2 = Arc::new(catalog::cyclic(2));
        let x = z4.elements().find(|&x| z4.element_order(x) == 4).unwrap();
        let h = GroupHom::from_generator_images(z4, z2, &[x], &[1]).unwrap();
        assert!(!h.is_injective());
        assert_eq!(h.image().len(), 2);
        assert!(validate_hom(&h, true).is_err());
    }

    #[test]
    fn inconsistent_generator_images_are_rejected() {
        let z4 = Arc::new(catalog::cyclic(4));
        let z3 = Arc::new(catalog::cyclic(3));
        let x = z4.elements().find(|&x| z4.element_order(x) == 4).unwrap();
        assert!(GroupHom::from_generator_images(z4, z3, &[x], &[1]).is_err());
    }

    #[test]
    fn composing_inclusions_gives_center() {
        // Z2 -> Z4 -> D8 compared against a direct table computation.
        let d8 = Arc::new(catalog::dihedral(4));
        let z4 = Arc::new(catalog::cyclic(4));
        let z2 = Arc::new(catalog::cyclic(2));
        let r = d8.elements().find(|&x| d8.element_order(x) == 4).unwrap();
        let x = z4.elements().find(|&x| z4.element_order(x) == 4).unwrap();
        let into_d8 = GroupHom::from_generator_images(z4.clone(), d8.clone(), &[x], &[r]).unwrap();
        let into_z4 = GroupHom::from_generator_images(z2.clone(), z4.clone(), &[1], &[z4.mul(x, x)]).unwrap();
        let both = compose_homs(&into_d8, &into_z4).unwrap();
        assert_eq!(both.map(), &[0, d8.mul(r, r)]);
        assert_eq!(both.image(), d8.center());
        assert_eq!(compose_homs(&GroupHom::identity(d8.clone()), &into_d8).unwrap(), into_d8);
        assert_eq!(compose_homs(&into_d8, &GroupHom::identity(z4)).unwrap(), into_d8);
    }
}
