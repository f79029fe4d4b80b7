//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! fails. Run with `cargo test -p embedkit --test acceptance`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use embedkit::lattice_cone::{
    cone_from_generators, is_saturated, AffineSemigroup, LatticeVector, Saturation, DEFAULT_BUDGET,
};
use embedkit::monoid::{
    dominant_part_generators, normal_monoid_check, perfect_closure, Tri, DEFAULT_MAX_NEW,
};
use embedkit::parabolic::{ce_finite_g_orbits, ce_orbit_subdiagrams, ce_smooth, ParabolicData};
use embedkit::rep_theory::{tensor_decompose, weyl_dim};
use embedkit::root_system::{group_info, GroupType, RootSystem, WeightVector};
use embedkit::sl2::{height_algebra_basis, height_from_monomials, orbit_structure, Height};
use embedkit::svariety::{analyze_svariety, SVarietyData};
use embedkit::toric::analyze_toric;

use common::{dominant_box, BruteSemigroup, Lie};

type Outcome = Result<String, String>;

fn g(s: &str) -> GroupType {
    s.parse().unwrap()
}

fn w(v: &[i64]) -> WeightVector {
    WeightVector::new(v.to_vec())
}

fn lv(v: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tensor_oracle() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for name in ["A1", "A2", "B2", "G2"] {
        let lie = Lie::new(name);
        let group = g(name);
        let rs = RootSystem::of(&group);
        ensure(rs.cartan_matrix() == lie.cartan.as_slice(), || {
            format!("{name}: Cartan matrix differs from oracle")
        })?;
        let weights = dominant_box(lie.rank(), 2);
        for l in &weights {
            for m in &weights {
                let got: BTreeMap<Vec<i64>, i64> = tensor_decompose(&group, &w(l), &w(m))
                    .map_err(|e| e.to_string())?
                    .terms
                    .into_iter()
                    .map(|(k, v)| (k.coords, v as i64))
                    .collect();
                let want = lie.tensor(l, m);
                ensure(got == want, || {
                    format!("{name} {l:?}⊗{m:?}: got {got:?}, oracle {want:?}")
                })?;
                pairs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(pairs >= 121, || format!("only {pairs} pairs"))?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{pairs} pairs agree in {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn dimension_conservation() -> Outcome {
    let group = g("A3");
    let lie = Lie::new("A3");
    let mut rng = ChaCha8Rng::seed_from_u64(0xA3);
    for _ in 0..100 {
        let l: Vec<i64> = (0..3).map(|_| rng.gen_range(0..=3)).collect();
        let m: Vec<i64> = (0..3).map(|_| rng.gen_range(0..=3)).collect();
        let dl = weyl_dim(&group, &w(&l)).map_err(|e| e.to_string())?;
        let dm = weyl_dim(&group, &w(&m)).map_err(|e| e.to_string())?;
        ensure(
            dl == lie.dim(&l) as u128 && dm == lie.dim(&m) as u128,
            || format!("dim of {l:?} or {m:?} differs from oracle"),
        )?;
        let d = tensor_decompose(&group, &w(&l), &w(&m)).map_err(|e| e.to_string())?;
        let mut total: u128 = 0;
        for (nu, k) in &d.terms {
            total += u128::from(*k) * weyl_dim(&group, nu).map_err(|e| e.to_string())?;
        }
        ensure(total == dl * dm, || {
            format!("{l:?}⊗{m:?}: {total} != {dl}·{dm}")
        })?;
    }
    Ok("100 random A3 pairs conserve dimension".into())
}

fn toric_golden() -> Outcome {
    for n in 1..=5usize {
        let gens: Vec<LatticeVector> = (0..n)
            .map(|i| lv(&(0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>()))
            .collect();
        let r = analyze_toric(n, &gens, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(r.normal == Saturation::Saturated, || {
            format!("orthant rank {n} not reported normal")
        })?;
        ensure(r.orbit_count == Some(1 << n), || {
            format!("orthant rank {n}: {:?} orbits", r.orbit_count)
        })?;
        ensure(r.ideal_faces.as_ref().map(Vec::len) == Some(1 << n), || {
            "ideal count".into()
        })?;
    }
    let r = analyze_toric(1, &[lv(&[2]), lv(&[3])], DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(r.effective, || "<2,3> should be effective".into())?;
    ensure(
        r.normal == Saturation::NotSaturated { witness: lv(&[1]) },
        || format!("<2,3>: {:?}", r.normal),
    )?;
    Ok("orthants give 2,4,8,16,32 orbits; <2,3> non-normal with witness (1)".into())
}

fn sl2_table() -> Outcome {
    let table: [(&str, &[&str]); 5] = [
        ("1", &["SL(2)", "SL(2)/T"]),
        ("1/2", &["SL(2)", "SL(2)/U_3", "pt"]),
        ("2/3", &["SL(2)", "SL(2)/U_5", "pt"]),
        ("3/5", &["SL(2)", "SL(2)/U_8", "pt"]),
        ("5/7", &["SL(2)", "SL(2)/U_12", "pt"]),
    ];
    for (h, want) in table {
        let h: Height = h.parse().map_err(|e: embedkit::Error| e.to_string())?;
        let got = orbit_structure(h);
        ensure(got.orbits == want, || format!("h={h}: {:?}", got.orbits))?;
        ensure(got.smooth == h.is_one(), || format!("h={h}: smoothness"))?;
    }
    let mut count = 0;
    for q in 1..=30u64 {
        for p in 1..=q {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let h = Height::new(p, q).map_err(|e| e.to_string())?;
            let back =
                height_from_monomials(&height_algebra_basis(h)).map_err(|e| e.to_string())?;
            ensure(back == h, || format!("round trip of {h} gave {back}"))?;
            count += 1;
        }
    }
    Ok(format!("orbit table verbatim; {count} heights round-trip"))
}

fn semisimple_triviality() -> Outcome {
    let mut inputs = 0;
    for name in ["A1", "A2"] {
        let group = g(name);
        for l in dominant_box(group.rank(), 5) {
            let r = perfect_closure(&group, &[w(&l)], DEFAULT_MAX_NEW, DEFAULT_BUDGET)
                .map_err(|e| e.to_string())?;
            ensure(!r.is_inconclusive(), || {
                format!("{name} {l:?}: inconclusive ({r:?})")
            })?;
            ensure(
                r.defines_monoid != Tri::Yes || r.is_trivial_monoid == Tri::Yes,
                || format!("{name} {l:?}: non-trivial monoid {r:?}"),
            )?;
            inputs += 1;
        }
    }
    Ok(format!("{inputs} single generators, no non-trivial monoid"))
}

fn vinberg_cross_validation() -> Outcome {
    let group = g("A1+T1");
    let mut rng = ChaCha8Rng::seed_from_u64(0x71);
    let mut passing = 0;
    let mut tries = 0;
    while passing < 20 {
        tries += 1;
        if tries > 10_000 {
            return Err(format!("only {passing} normal cones found"));
        }
        let mut gens = vec![lv(&[-2, 0])];
        for _ in 0..rng.gen_range(1..=2) {
            gens.push(lv(&[rng.gen_range(-3..=3), rng.gen_range(-3..=3)]));
        }
        let k = cone_from_generators(&gens, 2).map_err(|e| e.to_string())?;
        let verdict = normal_monoid_check(&group, &k).map_err(|e| e.to_string())?;
        if !verdict.is_normal_monoid {
            continue;
        }
        passing += 1;
        let dom = dominant_part_generators(&group, &k).map_err(|e| e.to_string())?;
        let r = perfect_closure(&group, &dom, DEFAULT_MAX_NEW, DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?;
        ensure(
            r.is_perfect == Tri::Yes && r.generates_character_group,
            || format!("K generated by {gens:?}: closure of {dom:?} gave {r:?}"),
        )?;
        ensure(r.added.is_empty(), || {
            format!(
                "K ∩ Ξ+ for {gens:?} was not already perfect: added {:?}",
                r.added
            )
        })?;
    }
    Ok(format!("20 of {tries} random cones are normal; all agree"))
}

fn ce_combinatorics() -> Outcome {
    let count = |grp: &str, levi: &[usize]| {
        ce_orbit_subdiagrams(&ParabolicData::new(g(grp), levi.iter().copied().collect()).unwrap())
            .len()
    };
    ensure(count("A1", &[]) == 2, || "A1 Borel".into())?;
    ensure(count("A2", &[]) == 4, || "A2 Borel".into())?;
    ensure(count("A2", &[1]) == 3, || "A2 {1}".into())?;
    let mut cases = 0;
    for (name, r, type_a) in [
        ("A1", 1usize, true),
        ("A2", 2, true),
        ("A3", 3, true),
        ("B2", 2, false),
    ] {
        for mask in 0u32..(1 << r) {
            let levi: BTreeSet<usize> = (1..=r).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let data = ParabolicData::new(g(name), levi.clone()).map_err(|e| e.to_string())?;
            let all: BTreeSet<usize> = (1..=r).collect();
            let minus = |k: usize| {
                all.iter()
                    .copied()
                    .filter(|&i| i != k)
                    .collect::<BTreeSet<_>>()
            };
            let want_smooth = levi == all || (type_a && (levi == minus(1) || levi == minus(r)));
            let want_finite = levi.is_empty() || levi == all;
            ensure(ce_smooth(&data) == want_smooth, || {
                format!("{name} {levi:?}: smooth")
            })?;
            ensure(ce_finite_g_orbits(&data) == want_finite, || {
                format!("{name} {levi:?}: finiteness")
            })?;
            cases += 1;
        }
    }
    Ok(format!(
        "subdiagram counts 2,4,3; {cases} parabolics classified"
    ))
}

fn complexity_formulas() -> Outcome {
    for (name, c) in [("A1", 1), ("A2", 3), ("B2", 4), ("G2", 6)] {
        let info = group_info(&g(name));
        ensure(info.complexity_of_g == c, || {
            format!("{name}: c(G) = {}", info.complexity_of_g)
        })?;
        ensure(2 * info.complexity_of_g == info.dim - info.rank, || {
            format!("{name}: c(G) formula")
        })?;
    }
    let a2 = group_info(&g("A2"));
    ensure(a2.affine_parameter_bound == 2, || {
        format!("A2 bound {}", a2.affine_parameter_bound)
    })?;
    Ok("c(G) = 1,3,4,6; A2 bound 2".into())
}

/// Returns whether the semigroup is saturated.
fn check_saturation(n: usize, gens: &[Vec<i64>], lib: &Saturation) -> Result<bool, String> {
    let oracle = BruteSemigroup::new(n, gens);
    match lib {
        Saturation::Saturated => ensure(oracle.is_saturated(), || {
            format!(
                "{gens:?}: library saturated, oracle fails at {:?}",
                oracle.failures()
            )
        })
        .map(|()| true),
        Saturation::NotSaturated { witness } => {
            let wv = witness.to_i64().unwrap();
            ensure(
                BruteSemigroup::in_box(&wv) && oracle.failures().contains(&wv),
                || format!("{gens:?}: witness {wv:?} not confirmed by oracle"),
            )
            .map(|()| false)
        }
        Saturation::Inconclusive => Err(format!("{gens:?}: inconclusive")),
    }
}

fn saturation_brute_force() -> Outcome {
    let mut checked = 0;
    let mut unsaturated = 0;
    let lib = |n: usize, gens: &[Vec<i64>]| -> Result<Saturation, String> {
        let sg = AffineSemigroup::new(n, gens.iter().map(|v| lv(v)).collect())
            .map_err(|e| e.to_string())?;
        is_saturated(&sg, DEFAULT_BUDGET).map_err(|e| e.to_string())
    };
    // rank 1: every set of up to three generators
    let line: Vec<Vec<i64>> = (-5..=5).map(|x| vec![x]).collect();
    for a in 0..line.len() {
        for b in a..line.len() {
            for c in b..line.len() {
                let gens: Vec<Vec<i64>> = [&line[a], &line[b], &line[c]]
                    .into_iter()
                    .cloned()
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                unsaturated += usize::from(!check_saturation(1, &gens, &lib(1, &gens)?)?);
                checked += 1;
            }
        }
    }
    // rank 2: every set of one or two generators, plus random triples
    let plane: Vec<Vec<i64>> = (-5..=5)
        .flat_map(|x| (-5..=5).map(move |y| vec![x, y]))
        .collect();
    for a in 0..plane.len() {
        for b in a..plane.len() {
            let gens: Vec<Vec<i64>> = if a == b {
                vec![plane[a].clone()]
            } else {
                vec![plane[a].clone(), plane[b].clone()]
            };
            unsaturated += usize::from(!check_saturation(2, &gens, &lib(2, &gens)?)?);
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..2000 {
        let gens: Vec<Vec<i64>> = (0..3)
            .map(|_| plane[rng.gen_range(0..plane.len())].clone())
            .collect();
        unsaturated += usize::from(!check_saturation(2, &gens, &lib(2, &gens)?)?);
        checked += 1;
    }
    // dominance: S-variety semigroups of A2 with up to three generators
    let a2 = g("A2");
    let dom: Vec<Vec<i64>> = dominant_box(2, 5)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    for a in 0..dom.len() {
        for b in a..dom.len() {
            for c in b..dom.len() {
                let gens: Vec<Vec<i64>> = [&dom[a], &dom[b], &dom[c]]
                    .into_iter()
                    .cloned()
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let data = SVarietyData::new(a2.clone(), gens.iter().map(|v| w(v)).collect())
                    .map_err(|e| e.to_string())?;
                let r = analyze_svariety(&data, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                unsaturated += usize::from(!check_saturation(2, &gens, &r.normal)?);
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} semigroups agree with enumeration, {unsaturated} of them non-saturated"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("tensor oracle equivalence", tensor_oracle),
        ("dimension conservation", dimension_conservation),
        ("toric golden values", toric_golden),
        ("SL(2) table", sl2_table),
        ("semisimple monoid triviality", semisimple_triviality),
        ("cone/semigroup cross-validation", vinberg_cross_validation),
        ("CE combinatorics", ce_combinatorics),
        ("complexity formulas", complexity_formulas),
        ("saturation brute-force equivalence", saturation_brute_force),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
