//! Double description: generators of `{x : a_i · x >= 0}`.
//!
//! Inequalities are inserted one at a time. The current cone is kept as a
//! lineality basis plus extreme rays modulo that lineality; each ray carries
//! the set of already-inserted inequalities that are tight on it, and new
//! rays are only formed from combinatorially adjacent pairs.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::intmat::{combine, dot, identity, is_zero, primitive, IVec};

#[derive(Debug, Clone)]
pub(crate) struct Generators {
    pub lineality: Vec<IVec>,
    pub rays: Vec<IVec>,
}

struct Ray {
    v: IVec,
    tight: BTreeSet<usize>,
}

/// Generators of the cone `{x ∈ Q^dim : a · x >= 0 for a in ineqs, e · x = 0 for e in eqs}`.
pub(crate) fn generators_of(dim: usize, ineqs: &[IVec], eqs: &[IVec]) -> Generators {
    let mut rows: Vec<IVec> = Vec::with_capacity(ineqs.len() + 2 * eqs.len());
    for e in eqs {
        rows.push(e.clone());
        rows.push(e.iter().map(|x| -x).collect());
    }
    rows.extend(ineqs.iter().cloned());

    let mut lineality = identity(dim);
    let mut rays: Vec<Ray> = Vec::new();

    for (t, a) in rows.iter().enumerate() {
        if is_zero(a) {
            for r in rays.iter_mut() {
                r.tight.insert(t);
            }
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut al0 = dot(a, &l0);
            if al0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                al0 = -al0;
            }
            for l in lineality.iter_mut() {
                let al = dot(a, l);
                if !al.is_zero() {
                    *l = primitive(combine(&al0, l, &-al, &l0));
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = primitive(combine(&al0, &r.v, &-ar, &l0));
                }
                r.tight.insert(t);
            }
            rays.push(Ray {
                v: l0,
                tight: (0..t).collect(),
            });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        if vals.iter().all(|x| !x.is_negative()) {
            for (r, val) in rays.iter_mut().zip(&vals) {
                if val.is_zero() {
                    r.tight.insert(t);
                }
            }
            continue;
        }

        let mut next: Vec<Ray> = Vec::new();
        for (i, (r, val)) in rays.iter().zip(&vals).enumerate() {
            if val.is_negative() {
                continue;
            }
            let mut tight = r.tight.clone();
            if val.is_zero() {
                tight.insert(t);
            }
            next.push(Ray {
                v: r.v.clone(),
                tight,
            });
            if !val.is_positive() {
                continue;
            }
            for (j, (n, nval)) in rays.iter().zip(&vals).enumerate() {
                if !nval.is_negative() {
                    continue;
                }
                let common: BTreeSet<usize> = r.tight.intersection(&n.tight).copied().collect();
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, other)| k == i || k == j || !common.is_subset(&other.tight));
                if !adjacent {
                    continue;
                }
                let v = primitive(combine(val, &n.v, &-nval, &r.v));
                let mut tight = common;
                tight.insert(t);
                next.push(Ray { v, tight });
            }
        }
        rays = next;
    }

    Generators {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}
