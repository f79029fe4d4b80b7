//! Orbit combinatorics of the canonical embedding `CE(G/P^u)` for a
//! parabolic `P = L P^u` of a semisimple group.
//!
//! Dynkin nodes are numbered from 1 (Bourbaki numbering inside each factor,
//! factors concatenated).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::lattice_cone::{cone_from_generators, PolyCone};
use crate::root_system::{GroupType, RootSystem, WeightVector};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolicData {
    pub group: GroupType,
    /// Nodes of the Levi subgroup's Dynkin diagram.
    pub levi_nodes: BTreeSet<usize>,
}

impl ParabolicData {
    pub fn new(group: GroupType, levi_nodes: BTreeSet<usize>) -> Result<Self> {
        if !group.is_semisimple() {
            return Err(Error::invalid(format!(
                "canonical embeddings need a semisimple group, got {group}"
            )));
        }
        let r = group.semisimple_rank();
        if let Some(bad) = levi_nodes.iter().find(|&&i| i == 0 || i > r) {
            return Err(Error::invalid(format!(
                "Levi node {bad} is outside 1..={r}"
            )));
        }
        Ok(ParabolicData { group, levi_nodes })
    }

    fn levi0(&self) -> BTreeSet<usize> {
        self.levi_nodes.iter().map(|i| i - 1).collect()
    }
}

/// Parses `"1,3"`; the empty string is the empty set.
pub fn parse_nodes(s: &str) -> Result<BTreeSet<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::invalid(format!("{t:?} is not a node number")))
        })
        .collect()
}

/// Subdiagrams none of whose connected components lies inside the Levi
/// diagram; they index the `(G × L)`-orbits. Sorted by size, then
/// lexicographically.
pub fn ce_orbit_subdiagrams(data: &ParabolicData) -> Vec<BTreeSet<usize>> {
    let rs = RootSystem::of(&data.group);
    let r = rs.semisimple_rank();
    let levi = data.levi0();
    let mut out: Vec<BTreeSet<usize>> = (0u64..1 << r)
        .map(|mask| {
            (0..r)
                .filter(|i| mask >> i & 1 == 1)
                .collect::<BTreeSet<usize>>()
        })
        .filter(|s| rs.components(s).iter().all(|c| !c.is_subset(&levi)))
        .map(|s| s.into_iter().map(|i| i + 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// `Σ`: the union of the `W_L`-translates of the dominant chamber, as the
/// cone over the `W_L`-orbits of the fundamental weights.
pub fn sigma_cone(data: &ParabolicData, orbit_cap: usize) -> Result<PolyCone> {
    let rs = RootSystem::of(&data.group);
    let r = rs.semisimple_rank();
    let nodes: Vec<usize> = data.levi0().into_iter().collect();
    let mut gens = Vec::new();
    for i in 0..r {
        for w in rs.orbit_under(&rs.fundamental_weight(i), &nodes, orbit_cap)? {
            gens.push(w.to_lattice());
        }
    }
    let cone = cone_from_generators(&gens, r)?;
    debug_assert!(gens.iter().all(|g| cone.contains(g)));
    Ok(cone)
}

/// Smooth iff on every simple factor either `P` contains the factor or the
/// factor is `SL(n)` and `P` stabilizes a hyperplane (Levi = diagram minus
/// an end node), giving `Mat(n, n-1)`.
pub fn ce_smooth(data: &ParabolicData) -> bool {
    let levi = data.levi0();
    data.group
        .factors()
        .iter()
        .zip(data.group.factor_nodes())
        .all(|(f, nodes)| {
            let here: BTreeSet<usize> = nodes.clone().filter(|i| levi.contains(i)).collect();
            if here.len() == nodes.len() {
                return true;
            }
            if !f.is_type_a() || here.len() + 1 != nodes.len() {
                return false;
            }
            let missing = nodes
                .clone()
                .find(|i| !here.contains(i))
                .expect("one node missing");
            missing == nodes.start || missing == nodes.end - 1
        })
}

/// Finitely many `G`-orbits iff on every factor `P` is either everything or
/// a Borel subgroup.
pub fn ce_finite_g_orbits(data: &ParabolicData) -> bool {
    let levi = data.levi0();
    data.group.factor_nodes().into_iter().all(|nodes| {
        let count = nodes.clone().filter(|i| levi.contains(i)).count();
        count == 0 || count == nodes.len()
    })
}

/// Everything computed for one parabolic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CeReport {
    pub group: GroupType,
    pub levi_nodes: BTreeSet<usize>,
    pub orbit_subdiagrams: Vec<BTreeSet<usize>>,
    pub orbit_count: usize,
    pub sigma: PolyCone,
    pub smooth: bool,
    pub finite_g_orbits: bool,
}

pub fn ce_report(data: &ParabolicData, orbit_cap: usize) -> Result<CeReport> {
    let subs = ce_orbit_subdiagrams(data);
    Ok(CeReport {
        group: data.group.clone(),
        levi_nodes: data.levi_nodes.clone(),
        orbit_count: subs.len(),
        orbit_subdiagrams: subs,
        sigma: sigma_cone(data, orbit_cap)?,
        smooth: ce_smooth(data),
        finite_g_orbits: ce_finite_g_orbits(data),
    })
}

/// The reflected fundamental weight `s_i ω_i = ω_i - α_i`, handy when
/// reading off `Σ`.
pub fn reflected_fundamental_weight(g: &GroupType, i: usize) -> Result<WeightVector> {
    let rs = RootSystem::of(g);
    if i == 0 || i > rs.semisimple_rank() {
        return Err(Error::invalid(format!(
            "node {i} is outside 1..={}",
            rs.semisimple_rank()
        )));
    }
    Ok(rs.reflect(&rs.fundamental_weight(i - 1), i - 1))
}
