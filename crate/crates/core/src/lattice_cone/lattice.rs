use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::intmat::{elementary_divisors, hnf, IVec};
use super::{AffineSemigroup, LatticeVector};

/// A subgroup of `Z^n`, stored by a basis in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: Vec<IVec>,
    pivots: Vec<usize>,
}

impl Sublattice {
    pub fn generated_by(gens: &[LatticeVector], ambient_rank: usize) -> Self {
        let raw: Vec<IVec> = gens.iter().map(|g| g.coords.clone()).collect();
        Self::from_raw(&raw, ambient_rank)
    }

    pub(crate) fn from_raw(gens: &[IVec], n: usize) -> Self {
        let h = hnf(gens, n);
        Sublattice {
            ambient_rank: n,
            basis: h.rows,
            pivots: h.pivots,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<LatticeVector> {
        self.basis
            .iter()
            .cloned()
            .map(LatticeVector::from)
            .collect()
    }

    pub(crate) fn raw_basis(&self) -> &[IVec] {
        &self.basis
    }

    /// Integer coordinates of `v` in the Hermite basis, if `v` is in the lattice.
    pub(crate) fn coordinates_raw(&self, v: &[BigInt]) -> Option<IVec> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        v.rank() == self.ambient_rank && self.coordinates_raw(&v.coords).is_some()
    }

    /// Canonical representative of `v + L`.
    pub(crate) fn reduce_raw(&self, v: &[BigInt]) -> IVec {
        let mut rest = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let q = rest[p].div_floor(&row[p]);
            if !q.is_zero() {
                for (x, y) in rest.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
        }
        rest
    }

    /// `Σ c_i b_i` for coordinates in the Hermite basis.
    pub(crate) fn from_coordinates(&self, c: &[BigInt]) -> IVec {
        let mut v = vec![BigInt::zero(); self.ambient_rank];
        for (ci, row) in c.iter().zip(&self.basis) {
            for (x, y) in v.iter_mut().zip(row) {
                *x += ci * y;
            }
        }
        v
    }

    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        elementary_divisors(&self.basis, self.ambient_rank)
    }

    /// `[Z^n : L]`, or `None` when `L` has lower rank.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == self.ambient_rank).then(|| {
            self.elementary_divisors()
                .iter()
                .fold(BigInt::one(), |a, d| a * d)
        })
    }
}

/// The subgroup `ZL` generated by a semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratedGroup {
    pub basis: Vec<LatticeVector>,
    pub rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub elementary_divisors: Vec<BigInt>,
    /// Index in the ambient lattice; `None` means infinite.
    #[serde(serialize_with = "ser_index")]
    pub index: Option<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    LatticeVector::new(v.to_vec()).serialize(s)
}

fn ser_index<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(i) => s.serialize_str(&i.to_string()),
        None => s.serialize_str("infinite"),
    }
}

impl GeneratedGroup {
    pub fn is_whole_lattice(&self) -> bool {
        self.index.as_ref().is_some_and(One::is_one)
    }
}

pub fn generated_group(sg: &AffineSemigroup) -> GeneratedGroup {
    let lat = Sublattice::generated_by(sg.generators(), sg.ambient_rank());
    GeneratedGroup {
        basis: lat.basis(),
        rank: lat.rank(),
        elementary_divisors: lat.elementary_divisors(),
        index: lat.index(),
    }
}
