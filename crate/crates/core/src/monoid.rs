//! Reductive monoids: perfect semigroups of dominant weights and the cone
//! criteria for normal monoids with unit group `G`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::lattice_cone::intmat::{identity, IVec};
use crate::lattice_cone::semigroup::cone_lattice_generators;
use crate::lattice_cone::{
    generated_group, semigroup_member, AffineSemigroup, Membership, PolyCone, Sublattice,
};
use crate::rep_theory::xi_support;
use crate::root_system::{GroupType, RootSystem, WeightVector};
use crate::{Error, Result};

/// Default cap on the number of weights added by [`perfect_closure`].
pub const DEFAULT_MAX_NEW: usize = 1000;

/// A yes/no answer that may be unknown because a membership search ran out
/// of budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Unknown,
        }
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl Serialize for Tri {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Tri::Yes => s.serialize_bool(true),
            Tri::No => s.serialize_bool(false),
            Tri::Unknown => s.serialize_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectClosureResult {
    /// Nonzero generators of the closure; zero is always a member.
    pub closure_generators: Vec<WeightVector>,
    /// Weights adjoined by the closure, in order.
    pub added: Vec<WeightVector>,
    pub is_perfect: Tri,
    pub generates_character_group: bool,
    pub defines_monoid: Tri,
    pub is_trivial_monoid: Tri,
    pub iterations_used: usize,
    /// `false` when `max_new` was reached before a fixpoint.
    pub converged: bool,
}

impl PerfectClosureResult {
    /// Not converged, or some verdict left unknown.
    pub fn is_inconclusive(&self) -> bool {
        !self.converged
            || [self.is_perfect, self.defines_monoid, self.is_trivial_monoid]
                .contains(&Tri::Unknown)
    }
}

struct Closure {
    group: GroupType,
    rank: usize,
    gens: BTreeSet<WeightVector>,
    budget: usize,
}

impl Closure {
    fn semigroup(&self) -> Result<AffineSemigroup> {
        let mut gens: Vec<_> = self.gens.iter().map(WeightVector::to_lattice).collect();
        if gens.is_empty() {
            gens.push(WeightVector::zero(self.rank).to_lattice());
        }
        AffineSemigroup::new(self.rank, gens)
    }

    fn member(&self, w: &WeightVector) -> Result<Tri> {
        if w.is_zero() || self.gens.contains(w) {
            return Ok(Tri::Yes);
        }
        Ok(
            match semigroup_member(&self.semigroup()?, &w.to_lattice(), self.budget)? {
                Membership::Yes { .. } => Tri::Yes,
                Membership::No => Tri::No,
                Membership::Inconclusive => Tri::Unknown,
            },
        )
    }

    /// Elements of `Ξ(a, b)` that are not (or not provably) members.
    fn missing(&self, a: &WeightVector, b: &WeightVector) -> Result<(Vec<WeightVector>, bool)> {
        let mut out = Vec::new();
        let mut unknown = false;
        for nu in xi_support(&self.group, a, b)? {
            match self.member(&nu)? {
                Tri::Yes => {}
                Tri::No => out.push(nu),
                Tri::Unknown => unknown = true,
            }
        }
        Ok((out, unknown))
    }
}

/// Closes `gens` under `(λ, μ) ↦ Ξ(λ, μ)` over generator pairs.
///
/// Round 0 processes all pairs; each later round processes the pairs that
/// involve a weight adjoined in the previous round. Pairs are taken in
/// lexicographic order within a round. A weight is adjoined when the
/// membership search proves it is missing; an inconclusive search leaves
/// the perfectness verdict unknown.
pub fn perfect_closure(
    group: &GroupType,
    gens: &[WeightVector],
    max_new: usize,
    budget: usize,
) -> Result<PerfectClosureResult> {
    if max_new == 0 {
        return Err(Error::invalid("max_new must be positive"));
    }
    if gens.is_empty() {
        return Err(Error::invalid("at least one generator is required"));
    }
    let rs = RootSystem::of(group);
    for g in gens {
        rs.check_dominant(g)?;
    }
    let mut cl = Closure {
        group: group.clone(),
        rank: group.rank(),
        gens: gens.iter().filter(|g| !g.is_zero()).cloned().collect(),
        budget,
    };

    let mut added = Vec::new();
    let mut fresh: BTreeSet<WeightVector> = cl.gens.clone();
    let mut rounds = 0;
    let mut converged = true;
    let mut unknown = false;
    'rounds: while !fresh.is_empty() {
        rounds += 1;
        let current: Vec<WeightVector> = cl.gens.iter().cloned().collect();
        let mut pairs: Vec<(WeightVector, WeightVector)> = Vec::new();
        for (i, a) in current.iter().enumerate() {
            for b in &current[i..] {
                if fresh.contains(a) || fresh.contains(b) {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
        let mut next = BTreeSet::new();
        for (a, b) in pairs {
            let (missing, unk) = cl.missing(&a, &b)?;
            unknown |= unk;
            for nu in missing {
                // an earlier addition in this loop may already cover it
                if cl.member(&nu)? == Tri::Yes {
                    continue;
                }
                if added.len() == max_new {
                    converged = false;
                    break 'rounds;
                }
                cl.gens.insert(nu.clone());
                next.insert(nu.clone());
                added.push(nu);
            }
        }
        fresh = next;
    }

    let is_perfect = if converged {
        if unknown {
            Tri::Unknown
        } else {
            Tri::Yes
        }
    } else {
        pair_check(&cl)?
    };

    let sg = cl.semigroup()?;
    let generates = generated_group(&sg).is_whole_lattice();
    let defines_monoid = is_perfect.and(generates.into());
    let is_trivial_monoid = contains_all_dominant(&cl, &rs)?;

    Ok(PerfectClosureResult {
        closure_generators: cl.gens.iter().cloned().collect(),
        added,
        is_perfect,
        generates_character_group: generates,
        defines_monoid,
        is_trivial_monoid,
        iterations_used: rounds,
        converged,
    })
}

/// Perfectness of the current generator set without adjoining anything.
fn pair_check(cl: &Closure) -> Result<Tri> {
    let current: Vec<WeightVector> = cl.gens.iter().cloned().collect();
    let mut verdict = Tri::Yes;
    for (i, a) in current.iter().enumerate() {
        for b in &current[i..] {
            let (missing, unk) = cl.missing(a, b)?;
            if !missing.is_empty() {
                return Ok(Tri::No);
            }
            if unk {
                verdict = Tri::Unknown;
            }
        }
    }
    Ok(verdict)
}

/// Whether the closure is all of `Ξ+(G)`, generated by the fundamental
/// weights and `±` the central characters.
fn contains_all_dominant(cl: &Closure, rs: &RootSystem) -> Result<Tri> {
    let n = rs.rank();
    let ss = rs.semisimple_rank();
    let mut verdict = Tri::Yes;
    for i in 0..n {
        let e = rs.fundamental_weight(i);
        let probes = if i < ss {
            vec![e]
        } else {
            vec![e.clone(), e.neg()]
        };
        for p in probes {
            verdict = verdict.and(cl.member(&p)?);
            if verdict == Tri::No {
                return Ok(Tri::No);
            }
        }
    }
    Ok(verdict)
}

/// The four conditions of the cone criterion for normal monoids, plus the
/// derived verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalMonoidVerdict {
    /// `-α_i ∈ K` for every simple root.
    pub contains_neg_simple_roots: bool,
    /// `K ∩ C` spans `N`.
    pub dominant_part_generates: bool,
    pub is_normal_monoid: bool,
    /// `K ∩ N_1` is pointed (`N_1` is the central block).
    pub central_part_pointed: bool,
    /// `K ∩ C_0 = {0}`.
    pub semisimple_dominant_trivial: bool,
    pub has_zero: bool,
}

pub fn normal_monoid_check(group: &GroupType, k: &PolyCone) -> Result<NormalMonoidVerdict> {
    let n = group.rank();
    if k.ambient_rank() != n {
        return Err(Error::invalid(format!(
            "cone lives in rank {}, group {group} has rank {n}",
            k.ambient_rank()
        )));
    }
    let rs = RootSystem::of(group);
    let ss = rs.semisimple_rank();
    let contains_neg = (0..ss).all(|j| k.contains(&rs.simple_root(j).neg().to_lattice()));

    let facets = k.facet_normals();
    let eqs: Vec<IVec> = k.equations().into_iter().map(|e| e.coords).collect();
    let mut ineqs: Vec<IVec> = facets.into_iter().map(|f| f.coords).collect();
    let dominance: Vec<IVec> = (0..ss).map(|i| unit(n, i)).collect();

    let kc = {
        let mut a = ineqs.clone();
        a.extend(dominance.iter().cloned());
        PolyCone::from_raw_inequalities(n, &a, &eqs)
    };
    let dominant_part_generates = kc.dim() == n;

    let kn1 = {
        let mut e = eqs.clone();
        e.extend(dominance.iter().cloned());
        PolyCone::from_raw_inequalities(n, &ineqs, &e)
    };
    let central_part_pointed = kn1.is_pointed();

    let kc0 = {
        ineqs.extend(dominance);
        let mut e = eqs;
        e.extend((ss..n).map(|i| unit(n, i)));
        PolyCone::from_raw_inequalities(n, &ineqs, &e)
    };
    let semisimple_dominant_trivial = kc0.is_zero_cone();

    let is_normal_monoid = contains_neg && dominant_part_generates;
    Ok(NormalMonoidVerdict {
        contains_neg_simple_roots: contains_neg,
        dominant_part_generates,
        is_normal_monoid,
        central_part_pointed,
        semisimple_dominant_trivial,
        has_zero: is_normal_monoid && central_part_pointed && semisimple_dominant_trivial,
    })
}

/// Generators of the semigroup `K ∩ Ξ+(G)`.
pub fn dominant_part_generators(group: &GroupType, k: &PolyCone) -> Result<Vec<WeightVector>> {
    let n = group.rank();
    if k.ambient_rank() != n {
        return Err(Error::invalid(format!(
            "cone rank does not match group {group}"
        )));
    }
    crate::lattice_cone::semigroup::check_rank(n)?;
    let ss = group.semisimple_rank();
    let mut ineqs: Vec<IVec> = k.facet_normals().into_iter().map(|f| f.coords).collect();
    ineqs.extend((0..ss).map(|i| unit(n, i)));
    let eqs: Vec<IVec> = k.equations().into_iter().map(|e| e.coords).collect();
    let kc = PolyCone::from_raw_inequalities(n, &ineqs, &eqs);
    let whole = Sublattice::from_raw(&identity(n), n);
    cone_lattice_generators(&kc, &whole)
        .into_iter()
        .map(|v| WeightVector::from_lattice(&v.into()))
        .collect()
}

fn unit(n: usize, i: usize) -> IVec {
    (0..n).map(|j| BigInt::from(i64::from(i == j))).collect()
}
