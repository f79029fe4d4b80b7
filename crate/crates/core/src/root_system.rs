//! Cartan data and Weyl group action for `G = G_1 × ... × G_k × T^z`.
//!
//! Weights are integer vectors in the basis of fundamental weights of each
//! simple factor (in factor order, Bourbaki numbering inside a factor)
//! followed by `z` central characters. Dominance is then a sign check on
//! the semisimple block, and the simple root `α_j` is column `j` of the
//! Cartan matrix `A_ij = <α_i^∨, α_j>` padded with zero central coordinates.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Serialize, Serializer};

use crate::lattice_cone::LatticeVector;
use crate::{Error, Result};

/// Weyl orbits larger than this are refused unless a cap is given.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleFactor {
    pub family: Family,
    pub rank: usize,
}

impl SimpleFactor {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
            Family::G => 2,
        };
        if rank < min || (family == Family::G && rank != 2) {
            return Err(Error::invalid(format!(
                "no simple group of type {family:?}{rank}"
            )));
        }
        Ok(SimpleFactor { family, rank })
    }

    pub fn is_type_a(&self) -> bool {
        self.family == Family::A
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Cartan matrix and Weyl group order of one simple factor.
///
/// This is the only family-specific table; everything else (roots,
/// symmetrizer, orbits) is derived from the matrix.
fn cartan_block(f: SimpleFactor) -> (Vec<Vec<i64>>, u128) {
    let n = f.rank;
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    match f.family {
        Family::A => {
            for i in 0..n - 1 {
                link(i, i + 1, -1, -1);
            }
            (a, fact(n + 1))
        }
        Family::B => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // α_n short
            link(n - 2, n - 1, -1, -2);
            (a, (1u128 << n) * fact(n))
        }
        Family::C => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // α_n long
            link(n - 2, n - 1, -2, -1);
            (a, (1u128 << n) * fact(n))
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
            (a, (1u128 << (n - 1)) * fact(n))
        }
        Family::G => {
            // α_1 short, α_2 long
            link(0, 1, -3, -1);
            (a, 12)
        }
    }
}

/// A reductive group given by its simple factors and central torus rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupType {
    factors: Vec<SimpleFactor>,
    torus: usize,
}

impl GroupType {
    pub fn new(factors: Vec<SimpleFactor>, torus: usize) -> Result<Self> {
        if factors.is_empty() && torus == 0 {
            return Err(Error::invalid("the trivial group has rank 0"));
        }
        Ok(GroupType { factors, torus })
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn torus_rank(&self) -> usize {
        self.torus
    }

    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn rank(&self) -> usize {
        self.semisimple_rank() + self.torus
    }

    pub fn is_semisimple(&self) -> bool {
        self.torus == 0
    }

    /// Node ranges of each simple factor inside the semisimple block.
    pub fn factor_nodes(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.factors
            .iter()
            .map(|f| {
                let r = start..start + f.rank;
                start += f.rank;
                r
            })
            .collect()
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", names.join("x"))?;
        if self.torus > 0 {
            if !self.factors.is_empty() {
                write!(f, "+")?;
            }
            write!(f, "T{}", self.torus)?;
        }
        Ok(())
    }
}

/// Parses `"A2"`, `"A1xB2+T1"`, `"T1"`.
impl FromStr for GroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |why: &str| Error::invalid(format!("group {s:?}: {why}"));
        let (semi, torus) = match s.split_once('+') {
            Some((a, t)) => (a.trim(), Some(t.trim())),
            None if s.starts_with('T') => ("", Some(s)),
            None => (s, None),
        };
        let torus = match torus {
            Some(t) => t
                .strip_prefix('T')
                .and_then(|z| z.parse::<usize>().ok())
                .ok_or_else(|| bad("central torus must look like T<z>"))?,
            None => 0,
        };
        let mut factors = Vec::new();
        if !semi.is_empty() {
            for part in semi.split('x') {
                let part = part.trim();
                let mut chars = part.chars();
                let family = match chars.next() {
                    Some('A') => Family::A,
                    Some('B') => Family::B,
                    Some('C') => Family::C,
                    Some('D') => Family::D,
                    Some('G') => Family::G,
                    _ => return Err(bad(&format!("unknown factor {part:?}"))),
                };
                let rank = chars
                    .as_str()
                    .parse::<usize>()
                    .map_err(|_| bad(&format!("factor {part:?} needs a rank")))?;
                factors.push(
                    SimpleFactor::new(family, rank)
                        .map_err(|_| bad(&format!("unsupported factor {part:?}")))?,
                );
            }
        }
        GroupType::new(factors, torus).map_err(|_| bad("empty group"))
    }
}

impl Serialize for GroupType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An integral weight in fundamental-weight ⊕ central coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    pub coords: Vec<i64>,
}

impl WeightVector {
    pub fn new(coords: Vec<i64>) -> Self {
        WeightVector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        WeightVector {
            coords: vec![0; rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn to_lattice(&self) -> LatticeVector {
        LatticeVector::from_i64(&self.coords)
    }

    pub fn from_lattice(v: &LatticeVector) -> Result<Self> {
        v.to_i64()
            .map(WeightVector::new)
            .ok_or_else(|| Error::invalid(format!("weight {v} does not fit in 64 bits")))
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        WeightVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &WeightVector) -> WeightVector {
        WeightVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> WeightVector {
        WeightVector::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> WeightVector {
        WeightVector::new(self.coords.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for WeightVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: LatticeVector = s.parse()?;
        WeightVector::from_lattice(&v)
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// Parses a `;`-separated list of weights.
pub fn parse_weight_list(s: &str) -> Result<Vec<WeightVector>> {
    crate::lattice_cone::parse_vector_list(s)?
        .iter()
        .map(WeightVector::from_lattice)
        .collect()
}

/// Derived root data of a [`GroupType`]. Obtain through [`RootSystem::of`].
#[derive(Debug)]
pub struct RootSystem {
    group: GroupType,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    /// Positive roots in simple-root coordinates, by height then lex.
    positive_roots: Vec<Vec<i64>>,
    weyl_order: u128,
}

static CACHE: OnceLock<Mutex<HashMap<GroupType, Arc<RootSystem>>>> = OnceLock::new();

impl RootSystem {
    /// Shared, memoized root data of `g`.
    pub fn of(g: &GroupType) -> Arc<RootSystem> {
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rs) = cache.lock().expect("root cache poisoned").get(g) {
            return Arc::clone(rs);
        }
        let rs = Arc::new(RootSystem::build(g));
        let mut map = cache.lock().expect("root cache poisoned");
        Arc::clone(map.entry(g.clone()).or_insert(rs))
    }

    fn build(g: &GroupType) -> RootSystem {
        let n = g.semisimple_rank();
        let mut cartan = vec![vec![0i64; n]; n];
        let mut weyl_order = 1u128;
        for (f, nodes) in g.factors.iter().zip(g.factor_nodes()) {
            let (block, order) = cartan_block(*f);
            for (i, row) in nodes.clone().zip(&block) {
                cartan[i][nodes.clone()].copy_from_slice(row);
            }
            weyl_order *= order;
        }
        let symmetrizer = symmetrizer(&cartan);
        let positive_roots = positive_roots(&cartan);
        RootSystem {
            group: g.clone(),
            cartan,
            symmetrizer,
            positive_roots,
            weyl_order,
        }
    }

    pub fn group(&self) -> &GroupType {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `d_i` with `(α_i, α_j) = d_i A_ij`; the shortest roots have `d = 1`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    /// Positive roots as coefficient vectors over the simple roots.
    pub fn positive_roots_in_simple_coords(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Weight coordinates of `Σ_j c_j α_j`.
    pub fn root_to_weight(&self, c: &[i64]) -> WeightVector {
        let mut w = vec![0i64; self.rank()];
        for (i, row) in self.cartan.iter().enumerate() {
            w[i] = row.iter().zip(c).map(|(a, b)| a * b).sum();
        }
        WeightVector::new(w)
    }

    pub fn simple_root(&self, j: usize) -> WeightVector {
        let mut c = vec![0i64; self.semisimple_rank()];
        c[j] = 1;
        self.root_to_weight(&c)
    }

    pub fn fundamental_weight(&self, i: usize) -> WeightVector {
        let mut w = WeightVector::zero(self.rank());
        w.coords[i] = 1;
        w
    }

    pub fn positive_roots(&self) -> Vec<WeightVector> {
        self.positive_roots
            .iter()
            .map(|c| self.root_to_weight(c))
            .collect()
    }

    /// Checks that `w` has the right length.
    pub fn check(&self, w: &WeightVector) -> Result<()> {
        if w.coords.len() != self.rank() {
            return Err(Error::invalid(format!(
                "weight {w} has length {}, group {} has rank {}",
                w.coords.len(),
                self.group,
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn is_dominant(&self, w: &WeightVector) -> bool {
        w.coords[..self.semisimple_rank()].iter().all(|&x| x >= 0)
    }

    pub fn check_dominant(&self, w: &WeightVector) -> Result<()> {
        self.check(w)?;
        if !self.is_dominant(w) {
            return Err(Error::invalid(format!(
                "weight {w} is not dominant for {}",
                self.group
            )));
        }
        Ok(())
    }

    /// `s_i(w) = w - w_i α_i`.
    pub fn reflect(&self, w: &WeightVector, i: usize) -> WeightVector {
        let wi = w.coords[i];
        let mut out = w.clone();
        if wi != 0 {
            for (k, row) in self.cartan.iter().enumerate() {
                out.coords[k] -= wi * row[i];
            }
        }
        out
    }

    /// Orbit of `w` under the subgroup generated by the reflections `nodes`,
    /// sorted.
    pub fn orbit_under(
        &self,
        w: &WeightVector,
        nodes: &[usize],
        cap: usize,
    ) -> Result<Vec<WeightVector>> {
        self.check(w)?;
        let mut seen: HashSet<WeightVector> = HashSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(v) = queue.pop_front() {
            for &i in nodes {
                if v.coords[i] == 0 {
                    continue;
                }
                let r = self.reflect(&v, i);
                if seen.insert(r.clone()) {
                    if seen.len() > cap {
                        return Err(Error::OrbitTooLarge { cap });
                    }
                    queue.push_back(r);
                }
            }
        }
        let mut out: Vec<WeightVector> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    pub fn weyl_orbit(&self, w: &WeightVector, cap: usize) -> Result<Vec<WeightVector>> {
        let nodes: Vec<usize> = (0..self.semisimple_rank()).collect();
        self.orbit_under(w, &nodes, cap)
    }

    pub fn dominant_representative(&self, w: &WeightVector) -> WeightVector {
        self.dominant_with_length(w).0
    }

    /// Dominant representative together with the number of reflections used,
    /// whose parity is the sign of the Weyl element.
    pub(crate) fn dominant_with_length(&self, w: &WeightVector) -> (WeightVector, usize) {
        let mut v = w.clone();
        let mut len = 0;
        while let Some(i) = (0..self.semisimple_rank()).find(|&i| v.coords[i] < 0) {
            v = self.reflect(&v, i);
            len += 1;
        }
        (v, len)
    }

    /// Highest weight of `V(λ)^*`.
    pub fn dual_weight(&self, lambda: &WeightVector) -> Result<WeightVector> {
        self.check_dominant(lambda)?;
        Ok(self.dominant_representative(&lambda.neg()))
    }

    /// `2(λ, β) / (α_min, α_min)`-style integer pairing `Σ_j c_j d_j λ_j`
    /// of a weight with a root given in simple coordinates.
    pub(crate) fn pairing_with_root(&self, w: &[i64], c: &[i64]) -> i64 {
        c.iter()
            .zip(&self.symmetrizer)
            .zip(w)
            .map(|((cj, dj), wj)| cj * dj * wj)
            .sum()
    }

    /// Coxeter-graph neighbours of node `i`.
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.semisimple_rank())
            .filter(|&j| j != i && self.cartan[i][j] != 0)
            .collect()
    }

    /// Connected components of the Coxeter subgraph induced on `nodes`.
    pub fn components(&self, nodes: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut left = nodes.clone();
        let mut out = Vec::new();
        while let Some(&start) = left.iter().next() {
            let mut comp = BTreeSet::from([start]);
            let mut stack = vec![start];
            left.remove(&start);
            while let Some(i) = stack.pop() {
                for j in self.neighbours(i) {
                    if left.remove(&j) {
                        comp.insert(j);
                        stack.push(j);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

/// Solves `d_i A_ij = d_j A_ji` over the Coxeter graph, normalized so that
/// each component has minimum 1.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    // rational d as (num, den) propagated along a spanning tree
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some((1, 1));
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if j == i || a[i][j] == 0 || d[j].is_some() {
                    continue;
                }
                // d_j = d_i A_ij / A_ji
                let (p, q) = d[i].expect("visited");
                let (p, q) = (p * a[i][j], q * a[j][i]);
                let g = gcd(p.abs(), q.abs());
                let s = if q < 0 { -1 } else { 1 };
                d[j] = Some((s * p / g, s * q / g));
                comp.push(j);
                stack.push(j);
            }
        }
        let lcm_den = comp
            .iter()
            .fold(1, |acc, &i| lcm(acc, d[i].expect("visited").1));
        let scaled: Vec<i64> = comp
            .iter()
            .map(|&i| {
                let (p, q) = d[i].expect("visited");
                p * (lcm_den / q)
            })
            .collect();
        let g = scaled.iter().fold(0, |acc, &x| gcd(acc, x));
        for (&i, x) in comp.iter().zip(scaled) {
            d[i] = Some((x / g, 1));
        }
    }
    d.into_iter()
        .map(|x| x.expect("all nodes visited").0)
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// Positive roots by string closure: for a root `β` and simple `α_i`, the
/// `α_i`-string through `β` runs from `β - rα_i` to `β + qα_i` with
/// `r - q = <β, α_i^∨>`.
fn positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut out = Vec::new();
    while !layer.is_empty() {
        layer.sort();
        for b in &layer {
            all.insert(b.clone());
        }
        out.extend(layer.iter().cloned());
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for b in &layer {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| a[i][j] * b[j]).sum();
                let mut r = 0;
                let mut down = b.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                if r - pairing > 0 {
                    let mut up = b.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    out
}

/// Cartan matrix, simple roots, fundamental weights and positive roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanData {
    pub cartan_matrix: Vec<Vec<i64>>,
    pub fundamental_weights: Vec<WeightVector>,
    pub positive_roots: Vec<WeightVector>,
    pub simple_roots: Vec<WeightVector>,
}

pub fn cartan_data(g: &GroupType) -> CartanData {
    let rs = RootSystem::of(g);
    let n = rs.semisimple_rank();
    CartanData {
        cartan_matrix: rs.cartan.clone(),
        fundamental_weights: (0..n).map(|i| rs.fundamental_weight(i)).collect(),
        positive_roots: rs.positive_roots(),
        simple_roots: (0..n).map(|j| rs.simple_root(j)).collect(),
    }
}

pub fn weyl_orbit(g: &GroupType, w: &WeightVector, cap: usize) -> Result<Vec<WeightVector>> {
    RootSystem::of(g).weyl_orbit(w, cap)
}

pub fn dominant_representative(g: &GroupType, w: &WeightVector) -> Result<WeightVector> {
    let rs = RootSystem::of(g);
    rs.check(w)?;
    Ok(rs.dominant_representative(w))
}

pub fn dual_weight(g: &GroupType, lambda: &WeightVector) -> Result<WeightVector> {
    RootSystem::of(g).dual_weight(lambda)
}

/// Dimension, rank and complexity of `G` acting on itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupInfo {
    pub dim: usize,
    pub rank: usize,
    pub num_positive_roots: usize,
    /// `c(G) = (dim G - rk G) / 2`.
    pub complexity_of_g: usize,
    /// `c(G) - 1`: the most parameters of a family of orbits in an affine
    /// embedding. Zero when `G` is a torus.
    pub affine_parameter_bound: usize,
    #[serde(serialize_with = "ser_u128")]
    pub weyl_order: u128,
}

fn ser_u128<S: Serializer>(v: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(*v) {
        Ok(x) => s.serialize_u64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

pub fn group_info(g: &GroupType) -> GroupInfo {
    let rs = RootSystem::of(g);
    let np = rs.positive_roots.len();
    GroupInfo {
        dim: g.rank() + 2 * np,
        rank: g.rank(),
        num_positive_roots: np,
        complexity_of_g: np,
        affine_parameter_bound: np.saturating_sub(1),
        weyl_order: rs.weyl_order,
    }
}
