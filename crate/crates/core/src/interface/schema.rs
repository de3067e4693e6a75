//! JSON file schemas for groups, complexes and amalgams.
//!
//! Groups are `{"kind":"permutation","degree":d,"generators":[...]}` or
//! `{"kind":"table","table":[...]}` with optional `name` and `labels`. A
//! permutation group may also list `elements` to fix the element numbering;
//! otherwise elements are numbered in breadth-first closure order from the
//! generators.
//!
//! An amalgam file holds the complex, one group per simplex (inline, or the
//! name of an entry in `library`), and one map per covering pair. A map is a
//! total element list (`map`), images of the source group's generators
//! (`generator_images`), or `"inclusion": true` between permutation groups of
//! the same degree.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::amalgam::Amalgam;
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::perm::{identity_perm, is_permutation};
use crate::group::{Elem, FiniteGroup, GroupHom, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub vertices: u32,
    pub simplices: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Named(String),
    Inline(GroupSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub from: Vec<u32>,
    pub to: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_images: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inclusion: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmalgamSpec {
    pub complex: ComplexSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub library: BTreeMap<String, GroupSpec>,
    pub groups: BTreeMap<String, GroupRef>,
    pub maps: Vec<MapSpec>,
}

fn at(location: &str, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("{location}: {msg}"))
}

/// Prefixes input errors with the location they were found at; other errors
/// keep their own kind.
fn locate<T>(location: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{location}: {m}")),
        other => other,
    })
}

pub fn parse_group(spec: &GroupSpec, max_order: usize, location: &str) -> Result<FiniteGroup> {
    let mut g = match spec.kind.as_str() {
        "permutation" => {
            if spec.table.is_some() {
                return Err(at(location, "field `table` is not allowed for kind \"permutation\""));
            }
            let degree = spec.degree.ok_or_else(|| at(location, "missing field `degree`"))?;
            let gens = spec.generators.clone().unwrap_or_default();
            for (i, p) in gens.iter().enumerate() {
                if p.len() != degree || !is_permutation(p) {
                    return Err(at(&format!("{location}.generators[{i}]"), format!("not a permutation of 0..{degree}")));
                }
            }
            match &spec.elements {
                None => FiniteGroup::from_permutations(degree, &gens, max_order)?,
                Some(elements) => listed_elements(degree, &gens, elements, max_order, location)?,
            }
        }
        "table" => {
            for field in [("degree", spec.degree.is_some()), ("generators", spec.generators.is_some()), ("elements", spec.elements.is_some())] {
                if field.1 {
                    return Err(at(location, format!("field `{}` is not allowed for kind \"table\"", field.0)));
                }
            }
            let rows = spec.table.as_ref().ok_or_else(|| at(location, "missing field `table`"))?;
            if rows.len() > max_order {
                return Err(Error::OrderCapExceeded { cap: max_order });
            }
            locate(location, FiniteGroup::from_table(rows))?
        }
        other => return Err(at(&format!("{location}.kind"), format!("unknown kind {other:?}"))),
    };
    if let Some(name) = &spec.name {
        g = g.with_name(name.clone());
    }
    if let Some(labels) = &spec.labels {
        g = locate(location, g.with_labels(labels.clone()))?;
    }
    Ok(g)
}

fn listed_elements(
    degree: usize,
    gens: &[Vec<u32>],
    elements: &[Vec<u32>],
    max_order: usize,
    location: &str,
) -> Result<FiniteGroup> {
    if elements.len() > max_order {
        return Err(Error::OrderCapExceeded { cap: max_order });
    }
    for (i, p) in elements.iter().enumerate() {
        if p.len() != degree || !is_permutation(p) {
            return Err(at(&format!("{location}.elements[{i}]"), format!("not a permutation of 0..{degree}")));
        }
    }
    if elements.first() != Some(&identity_perm(degree)) {
        return Err(at(&format!("{location}.elements[0]"), "must be the identity"));
    }
    let seeds = if gens.is_empty() { elements } else { gens };
    let closure = PermGroup::closure(degree, seeds, max_order)?;
    let mut seen = HashMap::new();
    for (i, p) in elements.iter().enumerate() {
        if seen.insert(p.clone(), i).is_some() {
            return Err(at(&format!("{location}.elements[{i}]"), "repeated element"));
        }
        if closure.index_of(p).is_none() {
            return Err(at(&format!("{location}.elements[{i}]"), "not generated by the generators"));
        }
    }
    if closure.order() != elements.len() {
        return Err(at(&format!("{location}.elements"), format!("lists {} of {} elements", elements.len(), closure.order())));
    }
    let mut g = FiniteGroup::from_perms_unchecked(elements.to_vec());
    g.set_input_generators(gens.iter().map(|p| seen[p] as Elem).collect());
    Ok(g)
}

/// The schema form of a group. Permutation groups list their elements only
/// when the closure of the generators would number them differently.
pub fn group_spec(g: &FiniteGroup) -> GroupSpec {
    let labels = g.labels().map(<[String]>::to_vec);
    let name = g.name().map(str::to_string);
    match g.perms() {
        Some(perms) => {
            let degree = perms[0].len();
            let gens: Vec<Elem> = match g.input_generators() {
                Some(x) => x.to_vec(),
                None => g.generators().to_vec(),
            };
            let generators: Vec<Vec<u32>> = gens.iter().map(|&x| perms[x as usize].clone()).collect();
            let reproduces = PermGroup::closure(degree, &generators, perms.len())
                .is_ok_and(|c| c.order() == perms.len() && (0..c.order()).all(|i| c.element(i as Elem) == perms[i].as_slice()));
            GroupSpec {
                kind: "permutation".into(),
                name,
                degree: Some(degree),
                generators: Some(generators),
                elements: (!reproduces).then(|| perms.to_vec()),
                table: None,
                labels,
            }
        }
        None => GroupSpec {
            kind: "table".into(),
            name,
            degree: None,
            generators: None,
            elements: None,
            table: Some(g.rows()),
            labels,
        },
    }
}

pub fn parse_complex(spec: &ComplexSpec) -> Result<SimplicialComplex> {
    locate("complex", SimplicialComplex::build(spec.vertices, &spec.simplices))
}

/// Maximal simplices, in complex order.
pub fn complex_spec(c: &SimplicialComplex) -> ComplexSpec {
    let all = c.simplices();
    let simplices = all
        .iter()
        .filter(|s| !all.iter().any(|t| t.len() > s.len() && s.is_face_of(t)))
        .map(|s| s.vertices().to_vec())
        .collect();
    ComplexSpec { vertices: c.n_vertices(), simplices }
}

pub fn parse_amalgam(spec: &AmalgamSpec, max_order: usize) -> Result<Amalgam> {
    let complex = parse_complex(&spec.complex)?;
    let mut library = BTreeMap::new();
    for (name, g) in &spec.library {
        library.insert(name.clone(), Arc::new(parse_group(g, max_order, &format!("library.{name:?}"))?));
    }
    let mut groups = BTreeMap::new();
    for (key, r) in &spec.groups {
        let location = format!("groups.{key:?}");
        let s = locate(&location, Simplex::parse(key))?;
        if !complex.contains(&s) {
            return Err(at(&location, format!("{s} is not a simplex of the complex")));
        }
        let g = match r {
            GroupRef::Named(name) => library
                .get(name)
                .cloned()
                .ok_or_else(|| at(&location, format!("no library group named {name:?}")))?,
            GroupRef::Inline(g) => Arc::new(parse_group(g, max_order, &location)?),
        };
        if groups.insert(s.clone(), g).is_some() {
            return Err(at(&location, format!("second group for {s}")));
        }
    }
    if let Some(s) = complex.simplices().iter().find(|s| !groups.contains_key(*s)) {
        return Err(at("groups", format!("missing group for simplex {}", s.key())));
    }
    let mut maps = BTreeMap::new();
    for (k, m) in spec.maps.iter().enumerate() {
        let location = format!("maps[{k}]");
        let (t, s) = (Simplex::new(m.from.clone()), Simplex::new(m.to.clone()));
        for x in [&s, &t] {
            if !complex.contains(x) {
                return Err(at(&location, format!("{x} is not a simplex of the complex")));
            }
        }
        if !(s.is_face_of(&t) && s.len() < t.len()) {
            return Err(at(&location, format!("{s} is not a proper face of {t}")));
        }
        let (gs, gt) = (&groups[&s], &groups[&t]);
        let given = [m.map.is_some(), m.generator_images.is_some(), m.inclusion.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(at(&location, "exactly one of `map`, `generator_images`, `inclusion` is required"));
        }
        let map = if let Some(map) = &m.map {
            map.clone()
        } else if let Some(images) = &m.generator_images {
            let gens: Vec<Elem> = match gt.input_generators() {
                Some(x) => x.to_vec(),
                None => gt.generators().to_vec(),
            };
            let h = GroupHom::from_generator_images(gt.clone(), gs.clone(), &gens, images)
                .map_err(|e| at(&format!("{location}.generator_images"), e))?;
            h.map().to_vec()
        } else {
            if m.inclusion != Some(true) {
                return Err(at(&format!("{location}.inclusion"), "must be true when present"));
            }
            inclusion_map(gt, gs).map_err(|e| at(&location, e))?
        };
        if maps.insert((s.clone(), t.clone()), map).is_some() {
            return Err(at(&location, format!("second map {} -> {}", t.key(), s.key())));
        }
    }
    Amalgam::new(complex, &groups, &maps)
}

fn inclusion_map(from: &FiniteGroup, to: &FiniteGroup) -> std::result::Result<Vec<Elem>, String> {
    let (Some(src), Some(_)) = (from.perms(), to.perms()) else {
        return Err("inclusion requires permutation groups".into());
    };
    src.iter()
        .enumerate()
        .map(|(i, p)| to.index_of_perm(p).ok_or_else(|| format!("element {i} of the source is not in the target")))
        .collect()
}

/// The schema form of an amalgam. Groups shared between simplices go to the
/// library, named by first use.
pub fn amalgam_spec(g: &Amalgam) -> AmalgamSpec {
    let complex = g.complex();
    let groups = g.groups();
    let mut shared: Vec<usize> = Vec::new();
    let mut names: HashMap<usize, String> = HashMap::new();
    for (i, a) in groups.iter().enumerate() {
        if names.contains_key(&i) {
            continue;
        }
        let twins: Vec<usize> = (i + 1..groups.len()).filter(|&j| Arc::ptr_eq(a, &groups[j])).collect();
        if !twins.is_empty() {
            shared.push(i);
            let name = format!("G{}", shared.len());
            names.insert(i, name.clone());
            for j in twins {
                names.insert(j, name.clone());
            }
        }
    }
    let library = shared.iter().map(|&i| (names[&i].clone(), group_spec(&groups[i]))).collect();
    let group_refs = complex
        .simplices()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let r = match names.get(&i) {
                Some(n) => GroupRef::Named(n.clone()),
                None => GroupRef::Inline(group_spec(&groups[i])),
            };
            (s.key(), r)
        })
        .collect();
    let maps = g
        .cover_maps()
        .into_iter()
        .map(|(s, t, h)| MapSpec {
            from: t.vertices().to_vec(),
            to: s.vertices().to_vec(),
            map: Some(h.map().to_vec()),
            generator_images: None,
            inclusion: None,
        })
        .collect();
    AmalgamSpec { complex: complex_spec(complex), library, groups: group_refs, maps }
}

pub fn read_amalgam_str(text: &str, max_order: usize) -> Result<Amalgam> {
    let spec: AmalgamSpec = serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed amalgam file: {e}")))?;
    parse_amalgam(&spec, max_order)
}

pub fn amalgam_to_json(g: &Amalgam) -> String {
    serde_json::to_string_pretty(&amalgam_spec(g)).expect("amalgam spec serializes")
}
