use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::dd;
use super::intmat::{dot, hnf, neg, right_kernel, saturation, zero_vec, IVec};
use super::ratlin::{project_out, rank};
use super::LatticeVector;
use crate::{Error, Result};

/// A rational polyhedral cone with both of its descriptions.
///
/// * `rays`: primitive extreme rays, taken modulo the lineality space
///   (each one orthogonal to it), sorted lexicographically.
/// * `lineality`: basis of the largest linear subspace contained in the cone.
/// * `facets`: primitive integer inner normals, one per facet, each lying in
///   the linear span of the cone.
/// * `equations`: basis of the orthogonal complement of the span; empty for
///   solid cones.
///
/// A point `x` lies in the cone iff `e · x = 0` for every equation and
/// `n · x >= 0` for every facet normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyCone {
    ambient_rank: usize,
    rays: Vec<IVec>,
    lineality: Vec<IVec>,
    facets: Vec<IVec>,
    equations: Vec<IVec>,
}

/// A face of a [`PolyCone`]: the lineality space plus the cone over a subset
/// of the extreme rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Face {
    pub dim: usize,
    /// Indices into [`PolyCone::rays`].
    pub rays: Vec<usize>,
    /// Indices into [`PolyCone::facets`] of the facets containing this face.
    pub facets: Vec<usize>,
}

/// Builds the cone generated by `gens` inside `Q^rank`.
///
/// Redundant generators are allowed; the result carries the minimal ray set
/// and an irredundant facet list.
pub fn cone_from_generators(gens: &[LatticeVector], rank: usize) -> Result<PolyCone> {
    if rank == 0 {
        return Err(Error::invalid("cone rank must be positive"));
    }
    if gens.is_empty() {
        return Err(Error::invalid("a cone needs at least one generator"));
    }
    if let Some(g) = gens.iter().find(|g| g.rank() != rank) {
        return Err(Error::invalid(format!(
            "generator {g} has length {}, expected {rank}",
            g.rank()
        )));
    }
    let raw: Vec<IVec> = gens.iter().map(|g| g.coords.clone()).collect();
    Ok(PolyCone::from_raw_generators(rank, &raw))
}

impl PolyCone {
    pub(crate) fn from_raw_generators(n: usize, gens: &[IVec]) -> PolyCone {
        // The dual cone {y : g · y >= 0} has lineality = span(C)^⊥ and
        // extreme rays = facet normals of C.
        let dual = dd::generators_of(n, gens, &[]);
        let equations = hnf(&saturation(&dual.lineality, n), n).rows;

        let mut facets: Vec<IVec> = dual
            .rays
            .iter()
            .map(|r| project_out(r, &equations))
            .collect();
        facets.sort();
        facets.dedup();

        let mut constraints = equations.clone();
        constraints.extend(facets.iter().cloned());
        let lineality = if constraints.is_empty() {
            hnf(&super::intmat::identity(n), n).rows
        } else {
            hnf(&right_kernel(&constraints, n), n).rows
        };

        let lin_dim = lineality.len();
        let target = n.saturating_sub(lin_dim + 1);
        let mut by_tight: BTreeMap<Vec<usize>, IVec> = BTreeMap::new();
        for g in gens {
            let vals: Vec<BigInt> = facets.iter().map(|f| dot(f, g)).collect();
            if vals.iter().all(Zero::is_zero) {
                continue; // in the lineality space
            }
            let tight: Vec<usize> = (0..facets.len()).filter(|&i| vals[i].is_zero()).collect();
            if by_tight.contains_key(&tight) {
                continue;
            }
            let mut rows: Vec<IVec> = equations.clone();
            rows.extend(tight.iter().map(|&i| facets[i].clone()));
            if rank(&rows, n) == target {
                by_tight.insert(tight, project_out(g, &lineality));
            }
        }
        let mut rays: Vec<IVec> = by_tight.into_values().collect();
        rays.sort();
        rays.dedup();

        PolyCone {
            ambient_rank: n,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    /// Cone cut out by `a · x >= 0` (for `a` in `ineqs`) and `e · x = 0`.
    pub fn from_inequalities(
        rank: usize,
        ineqs: &[LatticeVector],
        eqs: &[LatticeVector],
    ) -> Result<PolyCone> {
        if rank == 0 {
            return Err(Error::invalid("cone rank must be positive"));
        }
        if let Some(a) = ineqs.iter().chain(eqs).find(|a| a.rank() != rank) {
            return Err(Error::invalid(format!("covector {a} has wrong length")));
        }
        let ineqs: Vec<IVec> = ineqs.iter().map(|a| a.coords.clone()).collect();
        let eqs: Vec<IVec> = eqs.iter().map(|a| a.coords.clone()).collect();
        Ok(Self::from_raw_inequalities(rank, &ineqs, &eqs))
    }

    pub(crate) fn from_raw_inequalities(n: usize, ineqs: &[IVec], eqs: &[IVec]) -> PolyCone {
        let g = dd::generators_of(n, ineqs, eqs);
        let mut gens = g.rays;
        for l in g.lineality {
            gens.push(neg(&l));
            gens.push(l);
        }
        if gens.is_empty() {
            gens.push(zero_vec(n));
        }
        Self::from_raw_generators(n, &gens)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> Vec<LatticeVector> {
        self.rays.iter().cloned().map(LatticeVector::from).collect()
    }

    pub fn lineality(&self) -> Vec<LatticeVector> {
        self.lineality
            .iter()
            .cloned()
            .map(LatticeVector::from)
            .collect()
    }

    pub fn facet_normals(&self) -> Vec<LatticeVector> {
        self.facets
            .iter()
            .cloned()
            .map(LatticeVector::from)
            .collect()
    }

    pub fn equations(&self) -> Vec<LatticeVector> {
        self.equations
            .iter()
            .cloned()
            .map(LatticeVector::from)
            .collect()
    }

    pub(crate) fn raw_rays(&self) -> &[IVec] {
        &self.rays
    }

    pub(crate) fn raw_facets(&self) -> &[IVec] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.ambient_rank - self.equations.len()
    }

    pub fn is_solid(&self) -> bool {
        self.equations.is_empty()
    }

    /// True iff the cone contains no line.
    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero_cone(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        v.rank() == self.ambient_rank && self.contains_raw(&v.coords)
    }

    pub(crate) fn contains_raw(&self, v: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|f| !dot(f, v).is_negative())
    }

    /// True iff `v` lies in the relative interior of nothing smaller than the
    /// lineality space, i.e. every facet vanishes on it.
    pub(crate) fn in_lineality_raw(&self, v: &[BigInt]) -> bool {
        self.contains_raw(v) && self.facets.iter().all(|f| dot(f, v).is_zero())
    }

    pub fn face_contains(&self, face: &Face, v: &LatticeVector) -> bool {
        self.contains(v)
            && face
                .facets
                .iter()
                .all(|&i| dot(&self.facets[i], &v.coords).is_zero())
    }

    /// Integer covector that is zero on the lineality space and strictly
    /// positive on every other point of the cone.
    pub(crate) fn positive_functional(&self) -> IVec {
        let mut ell = zero_vec(self.ambient_rank);
        for f in &self.facets {
            for (x, y) in ell.iter_mut().zip(f) {
                *x += y;
            }
        }
        ell
    }

    /// Same cone, same facets up to positive scaling.
    pub fn same_cone(&self, other: &PolyCone) -> bool {
        self == other
    }

    /// All faces, from the minimal face (the lineality space) to the cone.
    pub fn face_lattice(&self) -> Vec<Face> {
        let nrays = self.rays.len();
        let facet_rays: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| {
                (0..nrays)
                    .filter(|&i| dot(f, &self.rays[i]).is_zero())
                    .collect()
            })
            .collect();

        let top: BTreeSet<usize> = (0..nrays).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = VecDeque::from([top.clone()]);
        seen.insert(top);
        while let Some(face) = queue.pop_front() {
            for fr in &facet_rays {
                let meet: BTreeSet<usize> = face.intersection(fr).copied().collect();
                if seen.insert(meet.clone()) {
                    queue.push_back(meet);
                }
            }
        }

        let lin_dim = self.lineality.len();
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|rays| {
                let rows: Vec<IVec> = rays.iter().map(|&i| self.rays[i].clone()).collect();
                let dim = lin_dim
                    + if rows.is_empty() {
                        0
                    } else {
                        rank(&rows, self.ambient_rank)
                    };
                let facets = (0..self.facets.len())
                    .filter(|&j| rays.iter().all(|&i| facet_rays[j].contains(&i)))
                    .collect();
                Face {
                    dim,
                    rays: rays.into_iter().collect(),
                    facets,
                }
            })
            .collect();
        faces.sort();
        faces
    }
}

/// Writes a primitive integer covector as rational strings `"p/q"`.
fn rational_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| format!("{x}/1")).collect()
}

impl Serialize for PolyCone {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(5))?;
        map.serialize_entry(
            "equations",
            &self
                .equations
                .iter()
                .map(|e| rational_strings(e))
                .collect::<Vec<_>>(),
        )?;
        map.serialize_entry(
            "facets",
            &self
                .facets
                .iter()
                .map(|f| rational_strings(f))
                .collect::<Vec<_>>(),
        )?;
        map.serialize_entry("lineality", &self.lineality())?;
        map.serialize_entry("pointed", &self.is_pointed())?;
        map.serialize_entry("rays", &self.rays())?;
        map.end()
    }
}
