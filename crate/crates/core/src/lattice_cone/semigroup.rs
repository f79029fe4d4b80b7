//! Affine semigroups: bounded-exact membership, lattice points of cones and
//! the saturation test.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::cone::PolyCone;
use super::dd;
use super::intmat::{add, dot, hnf, identity, is_zero, saturation, sub, zero_vec, IVec};
use super::lattice::Sublattice;
use super::ratlin::{inverse, row_times, to_q};
use super::LatticeVector;
use crate::{Error, Result};

/// Default number of search states before membership gives up.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Lattice-point enumeration (and hence saturation) is limited to lattices
/// of this rank.
pub const SATURATION_RANK_LIMIT: usize = 4;

/// A finitely generated subsemigroup of `Z^n`.
///
/// Generators are sorted and deduplicated; the zero vector is dropped
/// unless it is the only generator. Zero always belongs to the semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineSemigroup {
    ambient_rank: usize,
    generators: Vec<LatticeVector>,
}

impl AffineSemigroup {
    pub fn new(ambient_rank: usize, generators: Vec<LatticeVector>) -> Result<Self> {
        if ambient_rank == 0 {
            return Err(Error::invalid("semigroup rank must be positive"));
        }
        if generators.is_empty() {
            return Err(Error::invalid("a semigroup needs at least one generator"));
        }
        if let Some(g) = generators.iter().find(|g| g.rank() != ambient_rank) {
            return Err(Error::invalid(format!(
                "generator {g} has length {}, expected {ambient_rank}",
                g.rank()
            )));
        }
        let mut gens: Vec<LatticeVector> =
            generators.into_iter().filter(|g| !g.is_zero()).collect();
        gens.sort();
        gens.dedup();
        if gens.is_empty() {
            gens.push(LatticeVector::zero(ambient_rank));
        }
        Ok(AffineSemigroup {
            ambient_rank,
            generators: gens,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// The cone `Q_{>=0} L`.
    pub fn cone(&self) -> PolyCone {
        let raw: Vec<IVec> = self.generators.iter().map(|g| g.coords.clone()).collect();
        PolyCone::from_raw_generators(self.ambient_rank, &raw)
    }

    /// The subgroup `ZL`.
    pub fn group(&self) -> Sublattice {
        Sublattice::generated_by(&self.generators, self.ambient_rank)
    }

    pub fn contains(&self, v: &LatticeVector, budget: usize) -> Result<Membership> {
        semigroup_member(self, v, budget)
    }
}

/// Outcome of a membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Non-negative coefficients, aligned with [`AffineSemigroup::generators`].
    Yes {
        certificate: Vec<BigInt>,
    },
    No,
    Inconclusive,
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes { .. })
    }
}

/// Decides `v ∈ L`.
///
/// Generators are split into those inside the lineality space of the cone
/// (they generate a group `Λ`) and the rest. A covector `ℓ` vanishing on the
/// lineality and positive on every other generator fixes the total weight
/// `ℓ(v)` of any representation, so enumerating the finitely many sums of
/// the remaining generators of that weight (modulo `Λ`, pruned by cone
/// membership of the remainder) is exhaustive. Exceeding `budget` search
/// states yields `Inconclusive`.
pub fn semigroup_member(
    sg: &AffineSemigroup,
    v: &LatticeVector,
    budget: usize,
) -> Result<Membership> {
    if v.rank() != sg.ambient_rank {
        return Err(Error::invalid(format!(
            "vector {v} has length {}, semigroup rank is {}",
            v.rank(),
            sg.ambient_rank
        )));
    }
    if budget == 0 {
        return Err(Error::invalid("membership budget must be positive"));
    }
    let ngens = sg.generators.len();
    if v.is_zero() {
        return Ok(Membership::Yes {
            certificate: vec![BigInt::zero(); ngens],
        });
    }
    if !sg.group().contains(v) {
        return Ok(Membership::No);
    }
    let cone = sg.cone();
    if !cone.contains(v) {
        return Ok(Membership::No);
    }

    let gens: Vec<&IVec> = sg.generators.iter().map(|g| &g.coords).collect();
    let (lin_idx, ray_idx): (Vec<usize>, Vec<usize>) =
        (0..ngens).partition(|&i| cone.in_lineality_raw(gens[i]));

    let n = sg.ambient_rank;
    let lin_gens: Vec<IVec> = lin_idx.iter().map(|&i| gens[i].clone()).collect();
    let lambda = Sublattice::from_raw(&lin_gens, n);
    let ell = cone.positive_functional();
    let target = dot(&ell, &v.coords);
    let weights: Vec<BigInt> = ray_idx.iter().map(|&i| dot(&ell, gens[i])).collect();
    debug_assert!(weights.iter().all(Signed::is_positive));

    // state -> (predecessor, generator index in ray_idx)
    let mut pred: HashMap<IVec, Option<(IVec, usize)>> = HashMap::new();
    let mut queue: BTreeMap<BigInt, Vec<IVec>> = BTreeMap::new();
    let start = zero_vec(n);
    pred.insert(start.clone(), None);
    queue.entry(BigInt::zero()).or_default().push(start);
    let goal = lambda.reduce_raw(&v.coords);

    let mut found = false;
    while let Some((level, states)) = queue.pop_first() {
        if level == target {
            found = states.contains(&goal);
            break;
        }
        for s in states {
            for (j, &gi) in ray_idx.iter().enumerate() {
                let next_level = &level + &weights[j];
                if next_level > target {
                    continue;
                }
                let next = lambda.reduce_raw(&add(&s, gens[gi]));
                if pred.contains_key(&next) || !cone.contains_raw(&sub(&v.coords, &next)) {
                    continue;
                }
                pred.insert(next.clone(), Some((s.clone(), j)));
                if pred.len() > budget {
                    return Ok(Membership::Inconclusive);
                }
                queue.entry(next_level).or_default().push(next);
            }
        }
    }
    if !found {
        return Ok(Membership::No);
    }

    let mut coeffs = vec![BigInt::zero(); ngens];
    let mut cur = goal;
    let mut partial = zero_vec(n);
    while let Some(Some((prev, j))) = pred.get(&cur) {
        coeffs[ray_idx[*j]] += 1;
        partial = add(&partial, gens[ray_idx[*j]]);
        cur = prev.clone();
    }
    let rest = sub(&v.coords, &partial);
    if !lin_idx.is_empty() {
        let lin_coeffs = nonnegative_group_combination(&lin_gens, &rest)
            .expect("remainder lies in the group spanned by lineality generators");
        for (k, &i) in lin_idx.iter().enumerate() {
            coeffs[i] += &lin_coeffs[k];
        }
    } else {
        debug_assert!(is_zero(&rest));
    }
    Ok(Membership::Yes {
        certificate: coeffs,
    })
}

/// Writes `target` as a non-negative integer combination of `gens`, assuming
/// the gens positively span a linear space (so they generate a group).
fn nonnegative_group_combination(gens: &[IVec], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = target.len();
    let k = gens.len();
    let h = hnf(gens, n);
    let lat = Sublattice::from_raw(gens, n);
    let c = lat.coordinates_raw(target)?;
    let mut z = vec![BigInt::zero(); k];
    for (ci, urow) in c.iter().zip(&h.transform) {
        for (zj, u) in z.iter_mut().zip(urow) {
            *zj += ci * u;
        }
    }
    // strictly positive relation Σ m_i g_i = 0
    let eqs: Vec<IVec> = (0..n)
        .map(|d| gens.iter().map(|g| g[d].clone()).collect())
        .collect();
    let rel = dd::generators_of(k, &identity(k), &eqs);
    let mut m = zero_vec(k);
    for r in &rel.rays {
        m = add(&m, r);
    }
    if m.iter().any(|x| !x.is_positive()) {
        return None;
    }
    let t = z
        .iter()
        .zip(&m)
        .filter(|(zi, _)| zi.is_negative())
        .map(|(zi, mi)| (-zi).div_ceil(mi))
        .max()
        .unwrap_or_else(BigInt::zero);
    Some(z.iter().zip(&m).map(|(zi, mi)| zi + &t * mi).collect())
}

/// Outcome of the saturation test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Saturation {
    Saturated,
    /// `witness ∈ Q_{>=0}L ∩ ZL` but not in `L`.
    NotSaturated {
        witness: LatticeVector,
    },
    Inconclusive,
}

impl Saturation {
    /// `Some(true)` when saturated, `None` when inconclusive.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Saturation::Saturated => Some(true),
            Saturation::NotSaturated { .. } => Some(false),
            Saturation::Inconclusive => None,
        }
    }

    pub fn witness(&self) -> Option<&LatticeVector> {
        match self {
            Saturation::NotSaturated { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Serializes a saturation verdict as `true`, `false` or `"inconclusive"`.
pub(crate) fn ser_verdict<S: serde::Serializer>(
    v: &Saturation,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v.verdict() {
        Some(b) => s.serialize_bool(b),
        None => s.serialize_str("inconclusive"),
    }
}

/// Decides whether `χ ∈ ZL` and `nχ ∈ L` (some `n > 0`) force `χ ∈ L`.
///
/// Equivalent to `L = Q_{>=0}L ∩ ZL`; every element of a generating set of
/// the right-hand side is tested for membership. The witness, when there
/// is one, is the first failing element in (ℓ¹-norm, lexicographic) order.
pub fn is_saturated(sg: &AffineSemigroup, budget: usize) -> Result<Saturation> {
    if sg.generators.iter().all(LatticeVector::is_zero) {
        return Ok(Saturation::Saturated);
    }
    let lattice = sg.group();
    let cone = sg.cone();
    if is_unimodular_simplicial(sg, &cone, &lattice) {
        return Ok(Saturation::Saturated);
    }
    check_rank(lattice.rank())?;
    let mut candidates = cone_lattice_generators(&cone, &lattice);
    candidates.sort_by(|a, b| l1(a).cmp(&l1(b)).then_with(|| a.cmp(b)));

    let mut inconclusive = false;
    for c in candidates {
        let v = LatticeVector::new(c);
        match semigroup_member(sg, &v, budget)? {
            Membership::Yes { .. } => {}
            Membership::No => return Ok(Saturation::NotSaturated { witness: v }),
            Membership::Inconclusive => inconclusive = true,
        }
    }
    Ok(if inconclusive {
        Saturation::Inconclusive
    } else {
        Saturation::Saturated
    })
}

/// True when some generators, one on each extreme ray of a pointed simplicial
/// cone, form a basis of `ZL`. Then `Q_{>=0}L ∩ ZL` is generated by them,
/// which decides saturation in any rank.
fn is_unimodular_simplicial(sg: &AffineSemigroup, cone: &PolyCone, lattice: &Sublattice) -> bool {
    let rays = cone.raw_rays();
    if !cone.is_pointed() || rays.len() != lattice.rank() {
        return false;
    }
    let mut basis = Vec::with_capacity(rays.len());
    for r in rays {
        let on_ray = sg
            .generators
            .iter()
            .map(|g| &g.coords)
            .filter(|g| super::intmat::primitive((*g).clone()) == *r)
            .min_by_key(|g| l1(g));
        match on_ray {
            Some(g) => basis.push(g.clone()),
            None => return false,
        }
    }
    let sub = Sublattice::from_raw(&basis, sg.ambient_rank);
    lattice
        .raw_basis()
        .iter()
        .all(|b| sub.coordinates_raw(b).is_some())
}

fn l1(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

pub(crate) fn check_rank(rank: usize) -> Result<()> {
    if rank > SATURATION_RANK_LIMIT {
        return Err(Error::UnsupportedRank {
            rank,
            limit: SATURATION_RANK_LIMIT,
        });
    }
    Ok(())
}

/// Generating set of the semigroup `cone(gens) ∩ Z^n`; this is the Hilbert
/// basis when the cone is pointed.
pub fn lattice_point_generators(gens: &[LatticeVector], rank: usize) -> Result<Vec<LatticeVector>> {
    check_rank(rank)?;
    let cone = super::cone_from_generators(gens, rank)?;
    let whole = Sublattice::from_raw(&identity(rank), rank);
    Ok(cone_lattice_generators(&cone, &whole)
        .into_iter()
        .map(LatticeVector::new)
        .collect())
}

/// Generating set of `cone ∩ lattice`, as ambient vectors, zero excluded.
pub(crate) fn cone_lattice_generators(cone: &PolyCone, lattice: &Sublattice) -> Vec<IVec> {
    let basis = lattice.raw_basis();
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    // pull the cone back to lattice coordinates y (x = Σ y_j b_j)
    let pull = |cov: &IVec| -> IVec { basis.iter().map(|b| dot(b, cov)).collect() };
    let ineqs: Vec<IVec> = cone.raw_facets().iter().map(pull).collect();
    let eqs: Vec<IVec> = cone.equations().iter().map(|e| pull(&e.coords)).collect();
    let pulled = dd::generators_of(k, &ineqs, &eqs);
    let mut gens = pulled.rays;
    for l in pulled.lineality {
        gens.push(l.iter().map(|x| -x).collect());
        gens.push(l);
    }
    let ys = lattice_points_generating(&gens, k);
    let mut out: Vec<IVec> = ys.iter().map(|y| lattice.from_coordinates(y)).collect();
    out.sort();
    out.dedup();
    out
}

/// Generating set of `cone(gens) ∩ Z^k`, zero excluded; minimal when pointed.
fn lattice_points_generating(gens: &[IVec], k: usize) -> Vec<IVec> {
    let gens: Vec<IVec> = gens.iter().filter(|g| !is_zero(g)).cloned().collect();
    if gens.is_empty() {
        return Vec::new();
    }
    // restrict to the saturated lattice of the span
    let span = saturation(&gens, k);
    let span_lat = Sublattice::from_raw(&span, k);
    let coords: Vec<IVec> = gens
        .iter()
        .map(|g| {
            span_lat
                .coordinates_raw(g)
                .expect("generator lies in its own span")
        })
        .collect();
    let d = span.len();
    let points = full_rank_generators(&coords, d);
    points
        .iter()
        .map(|c| span_lat.from_coordinates(c))
        .collect()
}

/// Lattice points generating `cone(gens) ∩ Z^d` for gens spanning `Q^d`.
///
/// Every point of the cone lies in a simplicial cone over some basis drawn
/// from the generators, and the lattice points of a simplicial cone are
/// generated by its rays plus the lattice points of its half-open
/// fundamental parallelepiped.
fn full_rank_generators(gens: &[IVec], d: usize) -> Vec<IVec> {
    let mut gens: Vec<IVec> = gens.to_vec();
    gens.sort();
    gens.dedup();
    let mut points: BTreeSet<IVec> = gens.iter().cloned().collect();

    for basis in gens.iter().combinations(d) {
        let rows: Vec<IVec> = basis.iter().map(|r| (*r).clone()).collect();
        let Some(inv) = inverse(&rows) else { continue };
        let h = hnf(&rows, d);
        let diag: Vec<u64> = (0..d)
            .map(|i| {
                h.rows[i][i]
                    .to_u64()
                    .expect("parallelepiped volume fits in u64")
            })
            .collect();
        for y in residues(&diag) {
            let t = row_times(&to_q(&y), &inv);
            let mut q = vec![BigRational::zero(); d];
            for (ti, r) in t.iter().zip(&rows) {
                let frac = ti - BigRational::from_integer(ti.floor().to_integer());
                if frac.is_zero() {
                    continue;
                }
                for (x, y) in q.iter_mut().zip(r) {
                    *x += &frac * BigRational::from_integer(y.clone());
                }
            }
            let p: IVec = q.iter().map(|x| x.to_integer()).collect();
            if !is_zero(&p) {
                points.insert(p);
            }
        }
    }

    let points: Vec<IVec> = points.into_iter().collect();
    let cone = PolyCone::from_raw_generators(d, &gens);
    if !cone.is_pointed() {
        return points;
    }
    points
        .iter()
        .filter(|h| {
            !points
                .iter()
                .any(|o| o != *h && cone.contains_raw(&sub(h, o)))
        })
        .cloned()
        .collect()
}

/// All integer vectors `y` with `0 <= y_i < diag_i`.
fn residues(diag: &[u64]) -> Vec<IVec> {
    diag.iter()
        .map(|&m| (0..m).map(BigInt::from))
        .multi_cartesian_product()
        .collect()
}
