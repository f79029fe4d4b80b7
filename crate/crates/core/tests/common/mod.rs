//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the library's root-system or semigroup code:
//! Cartan data is hard-coded, characters come from a separate Freudenthal
//! implementation over all weights, and saturation is decided by brute
//! force inside a box.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_rational::Ratio;

type Q = Ratio<i64>;

/// Cartan matrix `A_ij = <α_i^∨, α_j>` and the symmetrizer `d` with
/// `(α_i, α_i) = 2 d_i`.
pub struct Lie {
    pub cartan: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    ainv: Vec<Vec<Q>>,
    /// Positive roots in fundamental-weight coordinates.
    pub pos_roots: Vec<Vec<i64>>,
    rho: Vec<i64>,
}

impl Lie {
    pub fn new(name: &str) -> Lie {
        let (cartan, d): (Vec<Vec<i64>>, Vec<i64>) = match name {
            "A1" => (vec![vec![2]], vec![1]),
            "A2" => (vec![vec![2, -1], vec![-1, 2]], vec![1, 1]),
            "A3" => (
                vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
                vec![1, 1, 1],
            ),
            "B2" => (vec![vec![2, -1], vec![-2, 2]], vec![2, 1]),
            "G2" => (vec![vec![2, -3], vec![-1, 2]], vec![1, 3]),
            _ => panic!("no oracle data for {name}"),
        };
        let n = cartan.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(d[i] * cartan[i][j], d[j] * cartan[j][i], "symmetrizer");
            }
        }
        let ainv = invert(&cartan);
        let pos_roots = positive_roots(&cartan);
        Lie {
            rho: vec![1; n],
            cartan,
            d,
            ainv,
            pos_roots,
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `α_j` in weight coordinates: column `j` of the Cartan matrix.
    pub fn simple_root(&self, j: usize) -> Vec<i64> {
        self.cartan.iter().map(|row| row[j]).collect()
    }

    /// Coordinates in the basis of simple roots.
    pub fn root_coords(&self, w: &[i64]) -> Vec<Q> {
        self.ainv
            .iter()
            .map(|row| row.iter().zip(w).map(|(a, &x)| *a * x).sum())
            .collect()
    }

    /// `(λ, μ)` normalized by `(ω_i, α_j) = d_j δ_ij`.
    pub fn form(&self, l: &[i64], m: &[i64]) -> Q {
        self.root_coords(l)
            .iter()
            .zip(&self.d)
            .zip(m)
            .map(|((c, &d), &x)| *c * (d * x))
            .sum()
    }

    pub fn height(&self, w: &[i64]) -> Q {
        self.root_coords(w).into_iter().sum()
    }

    /// Weyl dimension formula as a product over positive roots.
    pub fn dim(&self, l: &[i64]) -> i64 {
        let lr: Vec<i64> = add(l, &self.rho);
        let mut num = Q::from_integer(1);
        for a in &self.pos_roots {
            num *= self.form(&lr, a) / self.form(&self.rho, a);
        }
        assert!(num.is_integer());
        num.to_integer()
    }

    /// Character of `V(λ)` by Freudenthal's formula over every weight,
    /// walking down from `λ` one simple root at a time.
    pub fn character(&self, l: &[i64]) -> HashMap<Vec<i64>, i64> {
        let lr = add(l, &self.rho);
        let top = self.form(&lr, &lr);
        let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
        mult.insert(l.to_vec(), 1);
        // depth = sum of simple-root coefficients below λ; process by depth
        let mut layer: Vec<Vec<i64>> = vec![l.to_vec()];
        while !layer.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            let mut seen = HashSet::new();
            for w in &layer {
                for j in 0..self.rank() {
                    let c = sub(w, &self.simple_root(j));
                    if seen.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
            let mut kept = Vec::new();
            for mu in next {
                let mr = add(&mu, &self.rho);
                let denom = top - self.form(&mr, &mr);
                let mut num = Q::from_integer(0);
                for a in &self.pos_roots {
                    let mut k = 1;
                    loop {
                        let up: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x + k * y).collect();
                        match mult.get(&up) {
                            Some(&m) => num += self.form(&up, a) * m,
                            None => break,
                        }
                        k += 1;
                    }
                }
                num *= 2;
                if denom == Q::from_integer(0) {
                    assert_eq!(num, Q::from_integer(0));
                    continue;
                }
                let m = num / denom;
                assert!(
                    m.is_integer() && m >= Q::from_integer(0),
                    "Freudenthal gave {m}"
                );
                if m > Q::from_integer(0) {
                    mult.insert(mu.clone(), m.to_integer());
                    kept.push(mu);
                }
            }
            layer = kept;
        }
        mult
    }

    /// Decomposes `χ_λ · χ_μ` by repeatedly removing the character of the
    /// highest remaining weight.
    pub fn tensor(&self, l: &[i64], m: &[i64]) -> BTreeMap<Vec<i64>, i64> {
        let cl = self.character(l);
        let cm = self.character(m);
        let mut prod: HashMap<Vec<i64>, i64> = HashMap::new();
        for (a, x) in &cl {
            for (b, y) in &cm {
                *prod.entry(add(a, b)).or_default() += x * y;
            }
        }
        let mut cache: HashMap<Vec<i64>, HashMap<Vec<i64>, i64>> = HashMap::new();
        let mut out = BTreeMap::new();
        loop {
            prod.retain(|_, v| *v != 0);
            assert!(prod.values().all(|&v| v > 0), "negative remainder");
            let Some(top) = prod
                .keys()
                .max_by(|a, b| self.height(a).cmp(&self.height(b)).then(a.cmp(b)))
                .cloned()
            else {
                break;
            };
            assert!(
                top.iter().all(|&x| x >= 0),
                "highest remaining weight {top:?} not dominant"
            );
            let k = prod[&top];
            let ch = cache
                .entry(top.clone())
                .or_insert_with(|| self.character(&top));
            for (w, v) in ch.iter() {
                *prod.entry(w.clone()).or_default() -= k * v;
            }
            out.insert(top, k);
        }
        out
    }
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn invert(a: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| Q::from_integer(x)).collect();
            r.extend((0..n).map(|j| Q::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| m[r][c] != Q::from_integer(0))
            .expect("invertible");
        m.swap(c, p);
        let piv = m[c][c];
        for x in m[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = m[r][c];
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Positive roots by root strings: for a root `β` and simple `α_i`,
/// `β + α_i` is a root iff `p - <β, α_i^∨> > 0`, where `p` is how far the
/// string extends below `β`.
fn positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let unit = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
    let mut roots: HashSet<Vec<i64>> = (0..n).map(unit).collect();
    let mut layer: Vec<Vec<i64>> = (0..n).map(unit).collect();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for b in &layer {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| a[i][j] * b[j]).sum();
                let mut p = 0;
                loop {
                    let mut c = b.clone();
                    c[i] -= p + 1;
                    if roots.contains(&c) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if roots.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<Vec<i64>> = roots
        .into_iter()
        .map(|c| {
            (0..n)
                .map(|i| (0..n).map(|j| a[i][j] * c[j]).sum())
                .collect()
        })
        .collect();
    out.sort();
    out
}

/// Every dominant weight of rank `n` with coordinates in `0..=bound`.
pub fn dominant_box(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Brute-force saturation in rank 1 or 2.
pub struct BruteSemigroup {
    n: usize,
    gens: Vec<Vec<i64>>,
    members: HashSet<Vec<i64>>,
    group: HashSet<Vec<i64>>,
}

/// Points are only judged inside `[-BOX, BOX]^n`.
pub const BOX: i64 = 10;
/// Intermediate sums may wander this far; with generator entries bounded
/// by 5 a Steinitz reordering keeps every partial sum of a representation
/// of a point in the box within it.
const REACH: i64 = 40;

impl BruteSemigroup {
    pub fn new(n: usize, gens: &[Vec<i64>]) -> Self {
        assert!(n == 1 || n == 2);
        assert!(gens.iter().flatten().all(|x| x.abs() <= 5));
        let members = closure(n, gens, false);
        let group = closure(n, gens, true);
        BruteSemigroup {
            n,
            gens: gens.to_vec(),
            members,
            group,
        }
    }

    pub fn in_box(v: &[i64]) -> bool {
        v.iter().all(|x| x.abs() <= BOX)
    }

    pub fn member(&self, v: &[i64]) -> bool {
        assert!(Self::in_box(v));
        self.members.contains(v)
    }

    pub fn in_group(&self, v: &[i64]) -> bool {
        assert!(Self::in_box(v));
        self.group.contains(v)
    }

    /// Exact cone membership via Carathéodory: a point of the cone is a
    /// non-negative combination of linearly independent generators.
    pub fn in_cone(&self, v: &[i64]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        let on_ray = |g: &Vec<i64>| {
            let cross = if self.n == 1 {
                0
            } else {
                g[0] * v[1] - g[1] * v[0]
            };
            cross == 0 && g.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() > 0
        };
        if self.gens.iter().any(on_ray) {
            return true;
        }
        if self.n == 1 {
            return false;
        }
        for (i, g) in self.gens.iter().enumerate() {
            for h in &self.gens[i + 1..] {
                let det = g[0] * h[1] - g[1] * h[0];
                if det == 0 {
                    continue;
                }
                // v = a g + b h
                let a = v[0] * h[1] - v[1] * h[0];
                let b = g[0] * v[1] - g[1] * v[0];
                if a * det.signum() >= 0 && b * det.signum() >= 0 {
                    return true;
                }
            }
        }
        false
    }

    /// Every box point in `ZL ∩ cone` outside `L`.
    pub fn failures(&self) -> Vec<Vec<i64>> {
        let pts: Vec<Vec<i64>> = if self.n == 1 {
            (-BOX..=BOX).map(|x| vec![x]).collect()
        } else {
            (-BOX..=BOX)
                .flat_map(|x| (-BOX..=BOX).map(move |y| vec![x, y]))
                .collect()
        };
        pts.into_iter()
            .filter(|p| self.in_group(p) && self.in_cone(p) && !self.member(p))
            .collect()
    }

    pub fn is_saturated(&self) -> bool {
        self.failures().is_empty()
    }
}

fn closure(n: usize, gens: &[Vec<i64>], symmetric: bool) -> HashSet<Vec<i64>> {
    let mut steps: Vec<Vec<i64>> = gens.to_vec();
    if symmetric {
        steps.extend(
            gens.iter()
                .map(|g| g.iter().map(|x| -x).collect::<Vec<_>>()),
        );
    }
    let start = vec![0; n];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for s in &steps {
            let q = add(&p, s);
            if q.iter().all(|x| x.abs() <= REACH) && seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.retain(|p| BruteSemigroup::in_box(p));
    seen
}
