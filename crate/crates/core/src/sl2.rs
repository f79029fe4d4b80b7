//! Normal affine SL(2)-embeddings, classified by their height `h ∈ (0, 1]`.
//!
//! The algebra of `U^-`-invariants is the monomial algebra
//! `A(h) = <A^i B^j : j/i <= h>`; `h = 1` is the smooth two-orbit embedding
//! and `h = p/q < 1` gives `SL(2) ∪ SL(2)/U_{p+q} ∪ {pt}`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// `h = p/q` in lowest terms with `0 < p <= q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Height {
    p: u64,
    q: u64,
}

impl Height {
    /// Reduces `p/q`; errors unless `0 < p/q <= 1`.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 || p > q {
            return Err(Error::invalid(format!("height {p}/{q} is not in (0,1]")));
        }
        let g = p.gcd(&q);
        Ok(Height { p: p / g, q: q / g })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_one(&self) -> bool {
        self.p == self.q
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// Parses `"p/q"` or `"1"`.
impl FromStr for Height {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("height {s:?} must look like p/q"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        Height::new(p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?)
    }
}

impl Serialize for Height {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The monomial `A^i B^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonomialExponent {
    pub i: u64,
    pub j: u64,
}

impl MonomialExponent {
    pub fn new(i: u64, j: u64) -> Self {
        MonomialExponent { i, j }
    }
}

impl fmt::Display for MonomialExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitStructure {
    pub height: Height,
    pub orbits: Vec<String>,
    pub smooth: bool,
}

pub fn orbit_structure(h: Height) -> OrbitStructure {
    let orbits = if h.is_one() {
        vec!["SL(2)".to_string(), "SL(2)/T".to_string()]
    } else {
        vec![
            "SL(2)".to_string(),
            format!("SL(2)/U_{}", h.p + h.q),
            "pt".to_string(),
        ]
    };
    OrbitStructure {
        height: h,
        orbits,
        smooth: h.is_one(),
    }
}

/// Hilbert basis of `{(i, j) ∈ Z^2_{>=0} : q j <= p i}`, sorted.
///
/// Each basis element other than `(1,0)` is the lowest lattice point
/// `(ceil(qj/p), j)` of its row for some `1 <= j <= p`: a point with larger `i` splits off `(1,0)`,
/// and rows above `p` split off `(q,p)`. The staircase points that are sums
/// of two others are then discarded.
pub fn height_algebra_basis(h: Height) -> Vec<MonomialExponent> {
    let (p, q) = (h.p, h.q);
    let stairs: Vec<MonomialExponent> = (0..=p)
        .map(|j| MonomialExponent::new((q * j).div_ceil(p).max(1), j))
        .collect();
    let reducible = |m: &MonomialExponent| {
        stairs
            .iter()
            .filter(|a| a.j >= 1 && a.j < m.j && a.i <= m.i)
            .any(|a| stairs.contains(&MonomialExponent::new(m.i - a.i, m.j - a.j)))
    };
    let mut out: Vec<MonomialExponent> = stairs
        .iter()
        .filter(|m| m.j == 0 || !reducible(m))
        .copied()
        .collect();
    out.sort();
    out
}

/// Smallest `h` with every generator in `A(h)`: the largest `j/i`.
pub fn height_from_monomials(gens: &[MonomialExponent]) -> Result<Height> {
    if gens.is_empty() {
        return Err(Error::NotAHeightAlgebra("no monomials given".into()));
    }
    if let Some(m) = gens.iter().find(|m| m.i == 0) {
        return Err(Error::NotAHeightAlgebra(format!("{m} has no power of A")));
    }
    let best = gens
        .iter()
        .max_by(|a, b| {
            (u128::from(a.j) * u128::from(b.i)).cmp(&(u128::from(b.j) * u128::from(a.i)))
        })
        .expect("nonempty");
    if best.j == 0 {
        return Err(Error::NotAHeightAlgebra(
            "all monomials are powers of A; h would be 0".into(),
        ));
    }
    if best.j > best.i {
        return Err(Error::NotAHeightAlgebra(format!(
            "{best} has ratio above 1"
        )));
    }
    Height::new(best.j, best.i).map_err(|e| Error::NotAHeightAlgebra(e.to_string()))
}

/// Parses `"(1,0);(2,1)"` (brackets optional).
pub fn parse_monomials(s: &str) -> Result<Vec<MonomialExponent>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let inner = t
                .trim_start_matches(['(', '['])
                .trim_end_matches([')', ']']);
            let (i, j) = inner
                .split_once(',')
                .ok_or_else(|| Error::invalid(format!("monomial {t:?} must look like (i,j)")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::invalid(format!("bad exponent {x:?} in {t:?}")))
            };
            Ok(MonomialExponent::new(parse(i)?, parse(j)?))
        })
        .collect()
}
