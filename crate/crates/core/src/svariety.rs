//! S-varieties: closures `X = cl(G v)` of a sum of highest weight vectors
//! `v = v_{λ1*} + ... + v_{λk*}`, with weight semigroup `L(X) = <λ1,...,λk>`.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::lattice_cone::intmat::IVec;
use crate::lattice_cone::semigroup::{cone_lattice_generators, ser_verdict};
use crate::lattice_cone::{is_saturated, AffineSemigroup, LatticeVector, PolyCone, Saturation};
use crate::root_system::{GroupType, RootSystem, WeightVector};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SVarietyData {
    pub group: GroupType,
    pub generators: Vec<WeightVector>,
}

impl SVarietyData {
    pub fn new(group: GroupType, generators: Vec<WeightVector>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::invalid("an S-variety needs at least one generator"));
        }
        let rs = RootSystem::of(&group);
        for g in &generators {
            rs.check_dominant(g)?;
        }
        Ok(SVarietyData { group, generators })
    }

    fn semigroup(&self) -> Result<AffineSemigroup> {
        AffineSemigroup::new(
            self.group.rank(),
            self.generators
                .iter()
                .map(WeightVector::to_lattice)
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factoriality {
    Yes,
    No,
    NotApplicable,
}

impl Serialize for Factoriality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Factoriality::Yes => s.serialize_bool(true),
            Factoriality::No => s.serialize_bool(false),
            Factoriality::NotApplicable => s.serialize_str("not_applicable"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SVarietyReport {
    pub group: GroupType,
    pub cone_k: PolyCone,
    pub orbit_count: usize,
    #[serde(serialize_with = "ser_verdict")]
    pub normal: Saturation,
    pub witness: Option<LatticeVector>,
    /// `ZL(X) ∩ Ξ+ ⊆ Q+ L(X)`: the boundary has codimension at least two.
    pub small_boundary: bool,
    pub factorial: Factoriality,
    pub type_hv: bool,
}

impl SVarietyReport {
    pub fn is_inconclusive(&self) -> bool {
        self.normal == Saturation::Inconclusive
    }
}

pub fn analyze_svariety(data: &SVarietyData, budget: usize) -> Result<SVarietyReport> {
    let sg = data.semigroup()?;
    let cone = sg.cone();
    let orbit_count = cone.face_lattice().len();
    let normal = is_saturated(&sg, budget)?;
    let small_boundary = small_boundary(data, &sg, &cone)?;
    Ok(SVarietyReport {
        group: data.group.clone(),
        orbit_count,
        witness: normal.witness().cloned(),
        normal,
        small_boundary,
        factorial: factoriality(data),
        type_hv: is_type_hv(data),
        cone_k: cone,
    })
}

/// Tests every generator of the semigroup `ZL ∩ Ξ+` for membership in `K`.
fn small_boundary(data: &SVarietyData, sg: &AffineSemigroup, k: &PolyCone) -> Result<bool> {
    let n = data.group.rank();
    let ss = data.group.semisimple_rank();
    let lattice = sg.group();
    if lattice.rank() == 0 {
        return Ok(true);
    }
    crate::lattice_cone::semigroup::check_rank(lattice.rank())?;
    let ineqs: Vec<IVec> = (0..ss).map(|i| unit(n, i)).collect();
    let dominant = PolyCone::from_raw_inequalities(n, &ineqs, &[]);
    Ok(cone_lattice_generators(&dominant, &lattice)
        .iter()
        .all(|h| k.contains(&LatticeVector::new(h.clone()))))
}

fn unit(n: usize, i: usize) -> IVec {
    (0..n).map(|j| BigInt::from(i64::from(i == j))).collect()
}

/// `K[X]` is factorial iff `L(X)` is generated by fundamental weights; stated
/// for semisimple simply connected groups only.
///
/// A fundamental weight is not a sum of two nonzero dominant weights, so
/// `L(X)` is generated by fundamental weights exactly when every generator
/// is supported on the fundamental weights that are themselves generators.
fn factoriality(data: &SVarietyData) -> Factoriality {
    if !data.group.is_semisimple() || data.group.semisimple_rank() == 0 {
        return Factoriality::NotApplicable;
    }
    let fundamental: Vec<usize> = data
        .generators
        .iter()
        .filter_map(|g| {
            let mut nz = g.coords.iter().enumerate().filter(|(_, &x)| x != 0);
            match (nz.next(), nz.next()) {
                (Some((i, 1)), None) => Some(i),
                _ => None,
            }
        })
        .collect();
    let ok = data.generators.iter().all(|g| {
        g.coords
            .iter()
            .enumerate()
            .all(|(i, &x)| x == 0 || fundamental.contains(&i))
    });
    if ok {
        Factoriality::Yes
    } else {
        Factoriality::No
    }
}

/// True iff all generators lie on one ray, so `K[X] = ⊕_{p ∈ P} V(pλ)^*`
/// for a primitive dominant `λ`.
pub fn is_type_hv(data: &SVarietyData) -> bool {
    let mut dirs = data
        .generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.to_lattice().primitive());
    match dirs.next() {
        None => true,
        Some(first) => dirs.all(|d| d == first),
    }
}

/// The closure of the orbit of a highest weight vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HvReport {
    pub group: GroupType,
    pub weight: WeightVector,
    pub dual_weight: WeightVector,
    pub orbits: Vec<String>,
    pub orbit_count: usize,
    pub normal: bool,
    pub factorial: bool,
}

/// `X(λ) = G v_{λ*} ∪ {0}`; factorial iff `λ` is a fundamental weight.
pub fn hv_report(group: &GroupType, lambda: &WeightVector) -> Result<HvReport> {
    let rs = RootSystem::of(group);
    rs.check_dominant(lambda)?;
    if !group.is_semisimple() {
        return Err(Error::invalid(format!(
            "HV-varieties need a semisimple group, got {group}"
        )));
    }
    if lambda.is_zero() {
        return Err(Error::invalid("weight must be nonzero"));
    }
    let dual = rs.dual_weight(lambda)?;
    let factorial = lambda.coords.iter().filter(|&&x| x != 0).count() == 1
        && lambda.coords.iter().sum::<i64>() == 1;
    Ok(HvReport {
        group: group.clone(),
        weight: lambda.clone(),
        orbits: vec![format!("G.v_{dual} (open)"), "{0}".to_string()],
        dual_weight: dual,
        orbit_count: 2,
        normal: true,
        factorial,
    })
}
