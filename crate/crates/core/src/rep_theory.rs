//! Characters of simple modules: Weyl dimension, Freudenthal multiplicities
//! and Brauer–Klimyk tensor product decomposition.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::root_system::{GroupType, RootSystem, WeightVector, DEFAULT_ORBIT_CAP};
use crate::{Error, Result};

/// Largest module whose full weight table is computed by default.
pub const DEFAULT_DIM_CAP: u128 = 100_000;

/// `dim V(λ)`; central coordinates are ignored.
pub fn weyl_dim(g: &GroupType, lambda: &WeightVector) -> Result<u128> {
    let rs = RootSystem::of(g);
    rs.check_dominant(lambda)?;
    Ok(weyl_dim_in(&rs, lambda))
}

pub(crate) fn weyl_dim_in(rs: &RootSystem, lambda: &WeightVector) -> u128 {
    let n = rs.semisimple_rank();
    let shifted: Vec<i64> = lambda.coords[..n].iter().map(|x| x + 1).collect();
    let ones = vec![1i64; n];
    // accumulate as a reduced fraction to keep intermediates small
    let (mut num, mut den) = (1u128, 1u128);
    for b in rs.positive_roots_in_simple_coords() {
        let p = rs.pairing_with_root(&shifted, b) as u128;
        let q = rs.pairing_with_root(&ones, b) as u128;
        num *= p;
        den *= q;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    num
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Weight multiplicities of `V(λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiplicityTable {
    pub highest_weight: WeightVector,
    pub entries: BTreeMap<WeightVector, u64>,
}

impl WeightMultiplicityTable {
    pub fn multiplicity(&self, w: &WeightVector) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u128 {
        self.entries.values().map(|&m| m as u128).sum()
    }
}

#[derive(Serialize)]
struct Term<'a> {
    mult: u64,
    weight: &'a WeightVector,
}

fn terms(map: &BTreeMap<WeightVector, u64>) -> Vec<Term<'_>> {
    map.iter()
        .map(|(weight, &mult)| Term { mult, weight })
        .collect()
}

impl Serialize for WeightMultiplicityTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WeightMultiplicityTable", 2)?;
        st.serialize_field("entries", &terms(&self.entries))?;
        st.serialize_field("highest_weight", &self.highest_weight)?;
        st.end()
    }
}

type DominantTable = Arc<Vec<(WeightVector, u64)>>;

static FREUDENTHAL_CACHE: OnceLock<Mutex<HashMap<(GroupType, WeightVector), DominantTable>>> =
    OnceLock::new();

/// Multiplicities of the dominant weights of `V(λ)`, highest first.
pub(crate) fn dominant_multiplicities(rs: &RootSystem, lambda: &WeightVector) -> DominantTable {
    let key = (rs.group().clone(), lambda.clone());
    let cache = FREUDENTHAL_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("multiplicity cache poisoned").get(&key) {
        return Arc::clone(t);
    }
    let table = Arc::new(freudenthal(rs, lambda));
    let mut map = cache.lock().expect("multiplicity cache poisoned");
    Arc::clone(map.entry(key).or_insert(table))
}

/// Freudenthal's recursion over the dominant weights below `λ`.
///
/// Each weight is tracked with `λ - μ` in simple-root coordinates, which
/// keeps every inner product integral: `(ω_i, α_j) = d_j δ_ij` and
/// `(α_i, α_j) = d_i A_ij`.
fn freudenthal(rs: &RootSystem, lambda: &WeightVector) -> Vec<(WeightVector, u64)> {
    let n = rs.semisimple_rank();
    let a = rs.cartan_matrix();
    let d = rs.symmetrizer();
    let roots = rs.positive_roots_in_simple_coords();
    let root_weights = rs.positive_roots();
    let root_norms: Vec<i64> = roots.iter().map(|b| root_norm(a, d, b)).collect();

    // dominant weights below λ with their depth vectors
    let mut depth: BTreeMap<WeightVector, Vec<i64>> =
        BTreeMap::from([(lambda.clone(), vec![0; n])]);
    let mut stack = vec![lambda.clone()];
    while let Some(mu) = stack.pop() {
        let c = depth[&mu].clone();
        for (b, bw) in roots.iter().zip(&root_weights) {
            let nu = mu.sub(bw);
            if rs.is_dominant(&nu) && !depth.contains_key(&nu) {
                let cn: Vec<i64> = c.iter().zip(b).map(|(x, y)| x + y).collect();
                depth.insert(nu.clone(), cn);
                stack.push(nu);
            }
        }
    }
    let mut order: Vec<(WeightVector, Vec<i64>)> = depth.into_iter().collect();
    order.sort_by(|(w1, c1), (w2, c2)| {
        c1.iter()
            .sum::<i64>()
            .cmp(&c2.iter().sum::<i64>())
            .then_with(|| w2.cmp(w1))
    });

    let nu: Vec<i64> = lambda.coords[..n].iter().map(|x| x + 1).collect();
    let mut mult: HashMap<WeightVector, i64> = HashMap::new();
    let mut out = Vec::with_capacity(order.len());
    for (mu, c) in &order {
        if c.iter().all(|&x| x == 0) {
            mult.insert(mu.clone(), 1);
            out.push((mu.clone(), 1));
            continue;
        }
        // (λ+ρ,λ+ρ) - (μ+ρ,μ+ρ) = 2(λ+ρ, x) - (x, x) with x = λ - μ
        let denom = 2 * rs.pairing_with_root(&nu, c) - root_norm(a, d, c);
        let mut sum = 0i64;
        for ((b, bw), bn) in roots.iter().zip(&root_weights).zip(&root_norms) {
            let mu_b = rs.pairing_with_root(&mu.coords[..n], b);
            let mut k = 1i64;
            loop {
                if c.iter().zip(b).any(|(x, y)| x - k * y < 0) {
                    break;
                }
                let shifted = mu.add(&bw.scale(k));
                let dom = rs.dominant_representative(&shifted);
                if let Some(m) = mult.get(&dom) {
                    sum += m * (mu_b + k * bn);
                }
                k += 1;
            }
        }
        debug_assert!(denom > 0 && (2 * sum) % denom == 0);
        let m = 2 * sum / denom;
        mult.insert(mu.clone(), m);
        if m > 0 {
            out.push((mu.clone(), m as u64));
        }
    }
    out
}

fn root_norm(a: &[Vec<i64>], d: &[i64], c: &[i64]) -> i64 {
    let n = c.len();
    let mut s = 0;
    for i in 0..n {
        if c[i] == 0 {
            continue;
        }
        for j in 0..n {
            s += c[i] * c[j] * d[i] * a[i][j];
        }
    }
    s
}

/// Full weight table of `V(λ)`.
pub fn weight_multiplicities(
    g: &GroupType,
    lambda: &WeightVector,
    cap: u128,
) -> Result<WeightMultiplicityTable> {
    let rs = RootSystem::of(g);
    rs.check_dominant(lambda)?;
    let dim = weyl_dim_in(&rs, lambda);
    if dim > cap {
        return Err(Error::RepresentationTooLarge { dim, cap });
    }
    let mut entries = BTreeMap::new();
    for (mu, m) in dominant_multiplicities(&rs, lambda).iter() {
        for w in rs.weyl_orbit(mu, DEFAULT_ORBIT_CAP)? {
            entries.insert(w, *m);
        }
    }
    Ok(WeightMultiplicityTable {
        highest_weight: lambda.clone(),
        entries,
    })
}

/// `V(λ) ⊗ V(μ)` as a sum of simple modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorDecomposition {
    pub lhs: WeightVector,
    pub rhs: WeightVector,
    pub terms: BTreeMap<WeightVector, u64>,
}

impl TensorDecomposition {
    /// `Ξ(λ, μ)`.
    pub fn support(&self) -> Vec<WeightVector> {
        self.terms.keys().cloned().collect()
    }
}

impl Serialize for TensorDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TensorDecomposition", 3)?;
        st.serialize_field("lhs", &self.lhs)?;
        st.serialize_field("rhs", &self.rhs)?;
        st.serialize_field("terms", &terms(&self.terms))?;
        st.end()
    }
}

/// Brauer–Klimyk: `V(λ) ⊗ V(μ) = Σ_ν m_μ(ν) ε(w) V(w(λ+ν+ρ) - ρ)` over the
/// weights `ν` of the smaller factor.
pub fn tensor_decompose(
    g: &GroupType,
    lambda: &WeightVector,
    mu: &WeightVector,
) -> Result<TensorDecomposition> {
    let rs = RootSystem::of(g);
    rs.check_dominant(lambda)?;
    rs.check_dominant(mu)?;
    let n = rs.semisimple_rank();
    let (big, small) = if weyl_dim_in(&rs, lambda) >= weyl_dim_in(&rs, mu) {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let table = weight_multiplicities(g, small, DEFAULT_DIM_CAP)?;

    let mut acc: BTreeMap<WeightVector, i64> = BTreeMap::new();
    for (nu, &m) in &table.entries {
        let mut shifted = big.add(nu);
        for x in &mut shifted.coords[..n] {
            *x += 1;
        }
        let (dom, len) = rs.dominant_with_length(&shifted);
        if dom.coords[..n].contains(&0) {
            continue;
        }
        let mut top = dom;
        for x in &mut top.coords[..n] {
            *x -= 1;
        }
        let sign = if len % 2 == 0 { 1 } else { -1 };
        *acc.entry(top).or_insert(0) += sign * m as i64;
    }
    let mut terms = BTreeMap::new();
    for (w, m) in acc {
        assert!(m >= 0, "negative multiplicity {m} at {w}");
        if m > 0 {
            terms.insert(w, m as u64);
        }
    }
    Ok(TensorDecomposition {
        lhs: lambda.clone(),
        rhs: mu.clone(),
        terms,
    })
}

/// `Ξ(λ, μ)`: highest weights of the simple submodules of `V(λ) ⊗ V(μ)`.
pub fn xi_support(
    g: &GroupType,
    lambda: &WeightVector,
    mu: &WeightVector,
) -> Result<Vec<WeightVector>> {
    Ok(tensor_decompose(g, lambda, mu)?.support())
}
