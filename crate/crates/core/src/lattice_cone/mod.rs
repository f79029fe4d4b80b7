//! Exact lattice and polyhedral-cone arithmetic.
//!
//! Everything here works over arbitrary-precision integers. Cones are built
//! by double description, sublattices are kept in Hermite normal form, and
//! semigroup questions (membership, saturation) are decided by bounded
//! exhaustive search that reports `Inconclusive` rather than guessing when a
//! budget is exhausted.

mod cone;
mod dd;
pub(crate) mod intmat;
mod lattice;
pub(crate) mod ratlin;
pub(crate) mod semigroup;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

pub use cone::{cone_from_generators, Face, PolyCone};
pub use lattice::{generated_group, GeneratedGroup, Sublattice};
pub use semigroup::{
    is_saturated, lattice_point_generators, semigroup_member, AffineSemigroup, Membership,
    Saturation, DEFAULT_BUDGET, SATURATION_RANK_LIMIT,
};

use crate::{Error, Result};

/// An integer vector in `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector {
            coords: coords.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector {
            coords: intmat::zero_vec(rank),
        }
    }

    /// Length of the coordinate list.
    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        intmat::is_zero(&self.coords)
    }

    /// Coordinates as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn primitive(&self) -> LatticeVector {
        LatticeVector::new(intmat::primitive(self.coords.clone()))
    }
}

impl From<Vec<BigInt>> for LatticeVector {
    fn from(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Parses `"[1,-2,3]"` (whitespace tolerated).
impl FromStr for LatticeVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::invalid(format!("vector {s:?} must look like [a,b,...]")))?;
        if inner.trim().is_empty() {
            return Err(Error::invalid(format!("vector {s:?} is empty")));
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::invalid(format!("{t:?} is not an integer in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector::new)
    }
}

/// JSON integer array; entries beyond `i64` are written as decimal strings.
impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for x in &self.coords {
            match x.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

/// Parses a `;`-separated list of vectors, e.g. `"[1,0];[0,1]"`.
pub fn parse_vector_list(s: &str) -> Result<Vec<LatticeVector>> {
    let parts: Vec<&str> = s
        .split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(Error::invalid("empty vector list"));
    }
    parts.into_iter().map(str::parse).collect()
}
