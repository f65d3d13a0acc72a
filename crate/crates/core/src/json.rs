//! JSON file formats for collections, operads, monoids, algebras and family
//! maps. Elements are referred to by name; tuples of names are written as
//! comma-separated keys such as `"x,y"` (the empty tuple is `""`).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraStructure, FamilyMap, FiniteFamily};
use crate::collection::Collection;
use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};
use crate::operad::{FiniteOperad, Monoid};
use crate::perm::Permutation;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub profile: Profile,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub profile: Profile,
    pub perm: Permutation,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollectionFile {
    pub colours: Vec<Colour>,
    pub components: Vec<ComponentEntry>,
    #[serde(default)]
    pub actions: Vec<ActionEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircEntry {
    pub outer: Profile,
    pub i: usize,
    pub inner: Profile,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperadFile {
    pub colours: Vec<Colour>,
    pub components: Vec<ComponentEntry>,
    #[serde(default)]
    pub actions: Vec<ActionEntry>,
    #[serde(default)]
    pub units: BTreeMap<Colour, String>,
    #[serde(default)]
    pub circ: Vec<CircEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidFile {
    pub carrier: Vec<String>,
    pub unit: String,
    pub mult: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperadRef {
    Path(PathBuf),
    Inline(Box<OperadFile>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraActionEntry {
    pub profile: Profile,
    pub element: String,
    pub table: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub operad: OperadRef,
    pub family: BTreeMap<Colour, Vec<String>>,
    pub action: Vec<AlgebraActionEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub maps: BTreeMap<Colour, BTreeMap<String, String>>,
}

fn check_name(name: &str) -> Result<()> {
    if name.contains(',') {
        return Err(Error::malformed(format!("element name {name:?} contains a comma")));
    }
    Ok(())
}

fn split_key(key: &str, arity: usize) -> Vec<&str> {
    if arity == 0 && key.is_empty() {
        Vec::new()
    } else {
        key.split(',').map(str::trim).collect()
    }
}

fn join_key<S: AsRef<str>>(names: &[S]) -> String {
    names.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(",")
}

/// Fills a table indexed `0..len` from named entries, requiring every index
/// to be given exactly once.
fn fill_table(
    what: &str,
    len: usize,
    entries: &BTreeMap<String, String>,
    key_index: impl Fn(&str) -> Result<usize>,
    value_index: impl Fn(&str) -> Result<usize>,
) -> Result<Vec<usize>> {
    let mut table = vec![None; len];
    for (k, v) in entries {
        let slot = key_index(k)?;
        if table[slot].replace(value_index(v)?).is_some() {
            return Err(Error::malformed(format!("{what}: key {k:?} given twice")));
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(j, v)| v.ok_or_else(|| Error::malformed(format!("{what}: entry #{j} missing"))))
        .collect()
}

fn build_collection(colours: &[Colour], components: &[ComponentEntry], actions: &[ActionEntry]) -> Result<Collection> {
    let mut k = Collection::new(colours.iter().cloned());
    for c in components {
        if k.contains(&c.profile) {
            return Err(Error::malformed(format!("component {} declared twice", c.profile)));
        }
        for name in &c.elements {
            check_name(name)?;
        }
        k.set_component(c.profile.clone(), c.elements.clone())?;
    }
    for a in actions {
        if a.perm.len() != a.profile.arity() {
            return Err(Error::SizeMismatch { expected: a.profile.arity(), found: a.perm.len() });
        }
        let q = a.profile.permuted(&a.perm);
        let map = fill_table(
            &format!("action of {} on {}", a.perm, a.profile),
            k.size(&a.profile),
            &a.map,
            |x| k.index_of(&a.profile, x),
            |y| k.index_of(&q, y),
        )?;
        k.set_action(a.profile.clone(), a.perm.clone(), map);
    }
    Ok(k)
}

fn collection_entries(k: &Collection) -> (Vec<Colour>, Vec<ComponentEntry>, Vec<ActionEntry>) {
    let colours = k.colours().iter().cloned().collect();
    let components = k
        .support()
        .map(|p| ComponentEntry { profile: p.clone(), elements: k.elements(p).to_vec() })
        .collect();
    let actions = k
        .action_tables()
        .map(|((p, alpha), map)| {
            let q = p.permuted(alpha);
            ActionEntry {
                profile: p.clone(),
                perm: alpha.clone(),
                map: map
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| (k.name(p, x).to_string(), k.name(&q, y).to_string()))
                    .collect(),
            }
        })
        .collect();
    (colours, components, actions)
}

pub fn collection_from_json(text: &str) -> Result<Collection> {
    let file: CollectionFile = serde_json::from_str(text)?;
    build_collection(&file.colours, &file.components, &file.actions)
}

pub fn collection_to_json(k: &Collection) -> Result<String> {
    let (colours, components, actions) = collection_entries(k);
    Ok(serde_json::to_string_pretty(&CollectionFile { colours, components, actions })?)
}

fn build_operad(file: &OperadFile) -> Result<FiniteOperad> {
    let base = build_collection(&file.colours, &file.components, &file.actions)?;
    let mut units = BTreeMap::new();
    for (c, name) in &file.units {
        units.insert(c.clone(), base.index_of(&Profile::identity(c.clone()), name)?);
    }
    let mut circ = BTreeMap::new();
    for e in &file.circ {
        let composite = e.outer.graft(e.i, &e.inner).ok_or_else(|| Error::ProfileMismatch {
            position: e.i,
            expected: e.outer.inputs.get(e.i.wrapping_sub(1)).map_or("-".into(), |c| c.to_string()),
            found: e.inner.output.to_string(),
        })?;
        let m = base.size(&e.inner);
        let table = fill_table(
            &format!("∘_{} over {}, {}", e.i, e.outer, e.inner),
            base.size(&e.outer) * m,
            &e.map,
            |key| match split_key(key, 2)[..] {
                [x, y] => Ok(base.index_of(&e.outer, x)? * m + base.index_of(&e.inner, y)?),
                _ => Err(Error::malformed(format!("composition key {key:?} is not a pair"))),
            },
            |z| base.index_of(&composite, z),
        )?;
        if circ.insert((e.outer.clone(), e.i, e.inner.clone()), table).is_some() {
            return Err(Error::malformed(format!("∘_{} over {}, {} given twice", e.i, e.outer, e.inner)));
        }
    }
    Ok(FiniteOperad::from_parts(base, units, circ))
}

fn operad_file(op: &FiniteOperad) -> OperadFile {
    let base = op.base();
    let (colours, components, actions) = collection_entries(base);
    let units = op.units().iter().map(|(c, &u)| (c.clone(), base.name(&Profile::identity(c.clone()), u).to_string())).collect();
    let circ = op
        .circ_tables()
        .iter()
        .map(|((outer, i, inner), table)| {
            let composite = outer.graft(*i, inner).expect("stored triples are composable");
            let m = base.size(inner);
            CircEntry {
                outer: outer.clone(),
                i: *i,
                inner: inner.clone(),
                map: table
                    .iter()
                    .enumerate()
                    .map(|(k, &z)| {
                        let key = join_key(&[base.name(outer, k / m), base.name(inner, k % m)]);
                        (key, base.name(&composite, z).to_string())
                    })
                    .collect(),
            }
        })
        .collect();
    OperadFile { colours, components, actions, units, circ }
}

pub fn operad_from_json(text: &str) -> Result<FiniteOperad> {
    build_operad(&serde_json::from_str(text)?)
}

pub fn operad_to_json(op: &FiniteOperad) -> Result<String> {
    Ok(serde_json::to_string_pretty(&operad_file(op))?)
}

pub fn monoid_from_json(text: &str) -> Result<Monoid> {
    let file: MonoidFile = serde_json::from_str(text)?;
    let index = |name: &str| {
        file.carrier
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::UnknownElement { profile: "monoid".into(), element: name.to_string() })
    };
    for name in &file.carrier {
        check_name(name)?;
    }
    let n = file.carrier.len();
    let mult = fill_table("monoid multiplication", n * n, &file.mult, |key| match split_key(key, 2)[..] {
        [x, y] => Ok(index(x)? * n + index(y)?),
        _ => Err(Error::malformed(format!("multiplication key {key:?} is not a pair"))),
    }, index)?;
    Monoid::new(file.carrier.clone(), mult, index(&file.unit)?)
}

pub fn monoid_to_json(r: &Monoid) -> Result<String> {
    let names = r.carrier();
    let n = names.len();
    let mult = (0..n * n)
        .map(|k| (join_key(&[&names[k / n], &names[k % n]]), names[r.mul(k / n, k % n)].clone()))
        .collect();
    let file = MonoidFile { carrier: names.to_vec(), unit: names[r.unit()].clone(), mult };
    Ok(serde_json::to_string_pretty(&file)?)
}

/// Reads an algebra; a relative operad path is resolved against `base_dir`.
pub fn algebra_from_json(text: &str, base_dir: Option<&Path>) -> Result<AlgebraStructure> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    let operad = match &file.operad {
        OperadRef::Inline(o) => build_operad(o)?,
        OperadRef::Path(p) => {
            let path = match base_dir {
                Some(dir) if p.is_relative() => dir.join(p),
                _ => p.clone(),
            };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::malformed(format!("cannot read operad {}: {e}", path.display())))?;
            operad_from_json(&text)?
        }
    };
    for names in file.family.values() {
        for name in names {
            check_name(name)?;
        }
    }
    let family = FiniteFamily::new(file.family.clone())?;
    let mut action = BTreeMap::new();
    for entry in &file.action {
        let p = &entry.profile;
        let e = operad.base().index_of(p, &entry.element)?;
        let table = fill_table(
            &format!("action of {} in {p}", entry.element),
            family.domain_size(p),
            &entry.table,
            |key| {
                let names = split_key(key, p.arity());
                if names.len() != p.arity() {
                    return Err(Error::malformed(format!("argument key {key:?} has the wrong length")));
                }
                let args = p.inputs.iter().zip(names).map(|(c, x)| family.index_of(c, x)).collect::<Result<Vec<_>>>()?;
                Ok(family.encode(p, &args))
            },
            |y| family.index_of(&p.output, y),
        )?;
        if action.insert((p.clone(), e), table).is_some() {
            return Err(Error::malformed(format!("action of {} in {p} given twice", entry.element)));
        }
    }
    Ok(AlgebraStructure::new(operad, family, action))
}

/// Writes an algebra with its operad inline.
pub fn algebra_to_json(a: &AlgebraStructure) -> Result<String> {
    let op = a.operad();
    let x = a.family();
    let family = x.colours().map(|c| (c.clone(), x.set(c).to_vec())).collect();
    let action = a
        .actions()
        .iter()
        .map(|((p, e), table)| AlgebraActionEntry {
            profile: p.clone(),
            element: op.name(p, *e).to_string(),
            table: table
                .iter()
                .enumerate()
                .map(|(k, &y)| {
                    let args = x.decode(p, k);
                    let names: Vec<&str> = p.inputs.iter().zip(args).map(|(c, v)| x.set(c)[v].as_str()).collect();
                    (join_key(&names), x.set(&p.output)[y].clone())
                })
                .collect(),
        })
        .collect();
    let file = AlgebraFile { operad: OperadRef::Inline(Box::new(operad_file(op))), family, action };
    Ok(serde_json::to_string_pretty(&file)?)
}

/// Reads per-colour maps `X(c) → Y(c)` by element name.
pub fn family_map_from_json(text: &str, x: &FiniteFamily, y: &FiniteFamily) -> Result<FamilyMap> {
    let file: MapFile = serde_json::from_str(text)?;
    let mut out = FamilyMap::new();
    for (c, entries) in &file.maps {
        if !x.contains_colour(c) {
            return Err(Error::malformed(format!("map given on unknown colour {c}")));
        }
        let table = fill_table(&format!("map on {c}"), x.size(c), entries, |v| x.index_of(c, v), |w| y.index_of(c, w))?;
        out.insert(c.clone(), table);
    }
    Ok(out)
}
