//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Built with `harness = false`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{group, groups_with_subgroups, rng};
use rand::Rng;
use roth_core::config::*;
use roth_core::encodings::*;
use roth_core::extremal::{max_free_exact, Instance, SearchBudget};
use roth_core::group::library::builtin_groups;
use roth_core::group::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn valid(g: &FiniteGroup, set: SetRef<'_>, h: &Subgroup, w: &ConfigWitness) -> Result<(), String> {
    let v = validate_witness(g, set, h, w, &Policy::default()).map_err(|e| e.to_string())?;
    ensure(v.valid, || {
        format!(
            "{} on {}: {w:?} rejected ({:?})",
            w.kind,
            g.name(),
            v.reason
        )
    })
}

/// Rows and columns of the block `ℓH × Hr`.
fn block_mask(g: &FiniteGroup, h: &Subgroup, l: Elem, r: Elem) -> (Vec<bool>, Vec<bool>) {
    let rows = g.elements().map(|a| h.contains(g.left_div(l, a))).collect();
    let cols = g
        .elements()
        .map(|b| h.contains(g.right_div(b, r)))
        .collect();
    (rows, cols)
}

/// Instances shared by the first two criteria.
fn elso_instances() -> Vec<(FiniteGroup, Subgroup, PairSet)> {
    let mut r = rng(1);
    let mut out = Vec::new();
    for (g, subs) in groups_with_subgroups(12) {
        for h in subs.into_iter().filter(|h| h.order() >= 2) {
            for density in [0.2, 0.5, 0.8] {
                for _ in 0..50 {
                    out.push((
                        g.clone(),
                        h.clone(),
                        PairSet::random(g.order(), density, &mut r),
                    ));
                }
            }
        }
    }
    out
}

fn oracle_equivalence(instances: &[(FiniteGroup, Subgroup, PairSet)]) -> Outcome {
    let start = Instant::now();
    let mut disagreements = 0;
    for (g, h, s) in instances {
        let graph = find_elso_via_graph(g, s, h, ScopePolicy::AllCosetPairs, &Policy::default())
            .map_err(|e| e.to_string())?;
        let mut restricted = false;
        for scope in coset_scopes(g, h).map_err(|e| e.to_string())? {
            let Scope::Coset { l, r, .. } = scope else {
                unreachable!()
            };
            let (rows, cols) = block_mask(g, h, l, r);
            if find_elso(g, &s.restrict(&rows, &cols), h, &Policy::default()).is_some() {
                restricted = true;
                break;
            }
        }
        if graph.witness.is_some() != restricted {
            disagreements += 1;
        }
        if let Some(w) = &graph.witness {
            valid(g, SetRef::Pairs(s), h, w)?;
        }
    }
    let elapsed = start.elapsed();
    ensure(disagreements == 0, || {
        format!("{disagreements} disagreements")
    })?;
    ensure(elapsed <= Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} instances, 0 disagreements, {elapsed:.2?}",
        instances.len()
    ))
}

fn counting_identity(instances: &[(FiniteGroup, Subgroup, PairSet)]) -> Outcome {
    let mut blocks = 0;
    for (g, h, s) in instances {
        let mut total = 0;
        for scope in coset_scopes(g, h).map_err(|e| e.to_string())? {
            let Scope::Coset { l, r, .. } = &scope else {
                unreachable!()
            };
            let (rows, cols) = block_mask(g, h, *l, *r);
            let census = build_stage1_graph(g, s, &scope)
                .map_err(|e| e.to_string())?
                .census();
            let expected = count_elso(g, &s.restrict(&rows, &cols), h, &Policy::default());
            ensure(census.non_generator_count == expected, || {
                format!(
                    "{} H={:?} block ({l},{r}): census {} vs count {expected}",
                    g.name(),
                    h.elements(),
                    census.non_generator_count
                )
            })?;
            total += census.non_generator_count;
            blocks += 1;
        }
        let whole = count_elso(g, s, h, &Policy::default());
        ensure(total == whole, || {
            format!("{}: block sum {total} vs {whole}", g.name())
        })?;
    }
    Ok(format!(
        "{} instances, {blocks} blocks, exact equality",
        instances.len()
    ))
}

fn witness_soundness() -> Outcome {
    let lib = groups_with_subgroups(12);
    let mut r = rng(3);
    let mut checked = 0;
    let p = Policy::default();
    for _ in 0..1000 {
        let (g, subs) = &lib[r.random_range(0..lib.len())];
        let h = &subs[r.random_range(0..subs.len())];
        let n = g.order();
        let density = r.random_range(0.05..1.0);
        let s = PairSet::random(n, density, &mut r);
        let a = ElementSet::random(n, density, &mut r);
        let mut witnesses: Vec<(ConfigWitness, SetRef<'_>)> = Vec::new();
        for kind in [
            ConfigKind::Elso,
            ConfigKind::Harmadik,
            ConfigKind::Quadruple,
            ConfigKind::Corollary,
        ] {
            if let Some(w) =
                find_config(kind, g, SetRef::Pairs(&s), h, &p).map_err(|e| e.to_string())?
            {
                witnesses.push((w, SetRef::Pairs(&s)));
            }
        }
        for kind in [ConfigKind::Ap3, ConfigKind::Ksv] {
            if let Some(w) =
                find_config(kind, g, SetRef::Elements(&a), h, &p).map_err(|e| e.to_string())?
            {
                witnesses.push((w, SetRef::Elements(&a)));
            }
        }
        for sp in [
            ScopePolicy::Pigeonhole,
            ScopePolicy::AllCosetPairs,
            ScopePolicy::Full,
        ] {
            let out = find_elso_via_graph(g, &s, h, sp, &p).map_err(|e| e.to_string())?;
            if let Some(w) = out.witness {
                witnesses.push((w, SetRef::Pairs(&s)));
            }
        }
        let select = if h.is_abelian(g) {
            HSelect::Given(h.clone())
        } else {
            HSelect::Auto
        };
        let hh = match &select {
            HSelect::Given(h) => h.clone(),
            HSelect::Auto => max_abelian_subgroup(g).map_err(|e| e.to_string())?,
        };
        let out = harmadik_pipeline(g, &s, &select, &p).map_err(|e| e.to_string())?;
        if let Some(w) = &out.witness {
            valid(g, SetRef::Pairs(&s), &hh, w)?;
            checked += 1;
        }
        for (w, set) in &witnesses {
            valid(g, *set, h, w)?;
            checked += 1;
        }
        if g.is_abelian() {
            let grid = GridSet::random(n, 2, density, &mut r).map_err(|e| e.to_string())?;
            for bp in [BlockPolicy::Pigeonhole, BlockPolicy::AllBlocks] {
                let out =
                    find_corner_via_hypergraph(g, &grid, h, bp, &p).map_err(|e| e.to_string())?;
                if let Some(w) = &out.witness {
                    valid(g, SetRef::Grid(&grid), h, w)?;
                    checked += 1;
                }
            }
            if let Some(w) = find_corner(g, &grid, h, &p).map_err(|e| e.to_string())? {
                valid(g, SetRef::Grid(&grid), h, &w)?;
                checked += 1;
            }
        }
    }
    Ok(format!("1000 runs, {checked} witnesses, 0 failures"))
}

fn ksv_identity() -> Outcome {
    let groups: Vec<FiniteGroup> = builtin_groups()
        .into_iter()
        .filter(|g| g.order() <= 24)
        .collect();
    for g in &groups {
        let n = g.order() as u64;
        let full = count_ksv(g, &ElementSet::full(g.order()));
        ensure(full == n * n, || {
            format!("{}: {full} != {}", g.name(), n * n)
        })?;
        for x in g.elements() {
            let one = count_ksv(
                g,
                &ElementSet::from_elements(g.order(), [x]).map_err(|e| e.to_string())?,
            );
            ensure(one == 1, || {
                format!("{}: singleton {{{x}}} counts {one}", g.name())
            })?;
        }
    }
    Ok(format!("{} groups", groups.len()))
}

fn boolean_obstruction() -> Outcome {
    let p = Policy::default();
    let g = group("elemab:2:2");
    let h = Subgroup::whole(&g);
    for mask in 0..16u64 {
        let a = ElementSet::from_mask(4, mask);
        ensure(find_ap3(&g, &a, &h, &p).is_none(), || {
            format!("progression in E4 mask {mask:#x}")
        })?;
    }
    let g = group("elemab:2:3");
    let h = Subgroup::whole(&g);
    let mut r = rng(5);
    for i in 0..1000 {
        let a = ElementSet::random(8, r.random_range(0.0..=1.0), &mut r);
        ensure(find_ap3(&g, &a, &h, &p).is_none(), || {
            format!("progression in E8 sample {i}")
        })?;
    }
    Ok("16 subsets of E4 and 1000 of E8, no progressions".into())
}

fn pigeonhole_bound() -> Outcome {
    let lib = groups_with_subgroups(24);
    let mut r = rng(7);
    for i in 0..500 {
        let (g, subs) = &lib[r.random_range(0..lib.len())];
        let h = &subs[r.random_range(0..subs.len())];
        let s = PairSet::random(g.order(), r.random_range(0.0..=1.0), &mut r);
        let p = pigeonhole_coset_pair(g, &s, h).map_err(|e| e.to_string())?;
        let index = h.index();
        let bound = s.size().div_ceil(index * index);
        ensure(p.count >= bound && p.bound == bound, || {
            format!(
                "instance {i} on {}: count {} bound {bound}",
                g.name(),
                p.count
            )
        })?;
    }
    Ok("500 instances, 0 violations".into())
}

fn corner_equivalence() -> Outcome {
    let p = Policy::default();
    let mut r = rng(9);
    let mut instances = 0;
    let groups: Vec<FiniteGroup> = builtin_groups()
        .into_iter()
        .filter(|g| g.order() <= 9 && g.is_abelian())
        .collect();
    for g in &groups {
        let h = Subgroup::whole(g);
        for density in [0.3, 0.6, 0.9] {
            for _ in 0..50 {
                let s =
                    GridSet::random(g.order(), 2, density, &mut r).map_err(|e| e.to_string())?;
                let brute = find_corner(g, &s, &h, &p).map_err(|e| e.to_string())?;
                let out = find_corner_via_hypergraph(g, &s, &h, BlockPolicy::Pigeonhole, &p)
                    .map_err(|e| e.to_string())?;
                ensure(out.witness.is_some() == brute.is_some(), || {
                    format!(
                        "{}: hypergraph {} vs brute {}",
                        g.name(),
                        out.witness.is_some(),
                        brute.is_some()
                    )
                })?;
                if let Some(w) = &out.witness {
                    let delta = w.parameter.ok_or("corner witness without δ")?;
                    ensure(h.contains(delta) && delta != 0, || format!("δ = {delta}"))?;
                    valid(g, SetRef::Grid(&s), &h, w)?;
                }
                let block = pigeonhole_block(g, &s, &h).map_err(|e| e.to_string())?;
                let hyper =
                    build_corner_hypergraph(g, &s, &block.reps, &h).map_err(|e| e.to_string())?;
                let pairs = s.to_pair_set().ok_or("plane grid did not convert")?;
                let scope = Scope::Coset {
                    l: block.reps[0],
                    r: block.reps[1],
                    h: h.clone(),
                };
                let tri = build_stage1_graph(g, &pairs, &scope).map_err(|e| e.to_string())?;
                ensure(hyper.census() == tri.census(), || {
                    format!("{}: {:?} vs {:?}", g.name(), hyper.census(), tri.census())
                })?;
                instances += 1;
            }
        }
    }
    Ok(format!("{} groups, {instances} instances", groups.len()))
}

/// Largest subset of the ground set free of `bad`, by scanning every mask.
fn subset_oracle(items: usize, bad: impl Fn(&[bool]) -> bool) -> usize {
    let mut best = 0;
    let mut member = vec![false; items];
    for mask in 0u64..(1 << items) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        for (i, m) in member.iter_mut().enumerate() {
            *m = mask >> i & 1 == 1;
        }
        if !bad(&member) {
            best = size;
        }
    }
    best
}

fn extremal_exactness() -> Outcome {
    let budget = SearchBudget::default();
    let mut report = Vec::new();
    for n in 3..=13 {
        let g = group(&format!("cyclic:{n}"));
        let h = Subgroup::whole(&g);
        let has_ap = |m: &[bool]| {
            (0..n).any(|b| {
                (1..n).any(|d| {
                    let (x, y) = ((b + d) % n, (b + 2 * d) % n);
                    y != b && m[b] && m[x] && m[y]
                })
            })
        };
        let expected = subset_oracle(n, has_ap);
        let got = max_free_exact(&Instance::new(&g, &h, ConfigKind::Ap3), &budget)
            .map_err(|e| e.to_string())?;
        ensure(got.optimal && got.size == expected, || {
            format!("ap3 on Z{n}: {} vs {expected}", got.size)
        })?;
        report.push(got.size.to_string());
    }
    let g = group("cyclic:2");
    let h = Subgroup::whole(&g);
    // item a·2+b is the pair (a,b); the only nonzero d is 1
    let has_elso = |m: &[bool]| {
        (0..2).any(|a| {
            (0..2).any(|b| m[a * 2 + b] && m[((a + 1) % 2) * 2 + b] && m[a * 2 + (b + 1) % 2])
        })
    };
    let expected = subset_oracle(4, has_elso);
    let got = max_free_exact(&Instance::new(&g, &h, ConfigKind::Elso), &budget)
        .map_err(|e| e.to_string())?;
    ensure(expected == 2 && got.size == 2 && got.optimal, || {
        format!("elso on Z2: {} vs {expected}", got.size)
    })?;
    Ok(format!(
        "ap3 maxima Z3..Z13 = [{}], elso on Z2 = 2",
        report.join(",")
    ))
}

fn group_facts_hold() -> Outcome {
    let groups = builtin_groups();
    for g in &groups {
        let n = g.order();
        for h in all_subgroups(g).map_err(|e| e.to_string())? {
            ensure(n % h.order() == 0, || {
                format!("{}: subgroup of order {}", g.name(), h.order())
            })?;
        }
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                let mut part = 1;
                while m % p == 0 {
                    m /= p;
                    part *= p;
                }
                let sylow = sylow_subgroup(g, p).map_err(|e| e.to_string())?;
                ensure(sylow.order() == part, || {
                    format!("{}: Sylow {p} has order {}", g.name(), sylow.order())
                })?;
            }
            p += 1;
        }
        let a = max_abelian_subgroup(g).map_err(|e| e.to_string())?;
        ensure(
            a.is_abelian(g) && a.order() as f64 >= (n as f64).ln(),
            || format!("{}: max abelian order {}", g.name(), a.order()),
        )?;
    }
    Ok(format!("{} groups, 0 violations", groups.len()))
}

fn census_performance() -> Outcome {
    let g = group("cyclic:64");
    let s = PairSet::full(64);
    let start = Instant::now();
    let census = build_stage1_graph(&g, &s, &Scope::Full)
        .map_err(|e| e.to_string())?
        .census();
    let elapsed = start.elapsed();
    ensure(census.total_count == 64 * 64 * 64, || format!("{census:?}"))?;
    ensure(census.non_generator_count == 64 * 64 * 63, || {
        format!("{census:?}")
    })?;
    ensure(elapsed <= Duration::from_secs(2), || {
        format!("census took {elapsed:?}")
    })?;
    Ok(format!("order-64 census in {elapsed:.2?}"))
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        Err(e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let elapsed = start.elapsed();
    match result {
        Ok(detail) => {
            println!("PASS {label}: {detail} [{elapsed:.2?}]");
            true
        }
        Err(detail) => {
            println!("FAIL {label}: {detail} [{elapsed:.2?}]");
            false
        }
    }
}

fn main() {
    let start = Instant::now();
    let instances = elso_instances();
    let mut ok = true;
    ok &= run("1 oracle equivalence (elso)", || {
        oracle_equivalence(&instances)
    });
    ok &= run("2 counting identity", || counting_identity(&instances));
    ok &= run("3 witness soundness fuzz", witness_soundness);
    ok &= run("4 ksv identity", ksv_identity);
    ok &= run("5 boolean obstruction", boolean_obstruction);
    ok &= run("6 pigeonhole bound", pigeonhole_bound);
    ok &= run("7 corner equivalence", corner_equivalence);
    ok &= run("8 extremal exactness", extremal_exactness);
    ok &= run("9 group facts", group_facts_hold);
    ok &= run("10 performance", || {
        let detail = census_performance()?;
        let total = start.elapsed();
        ensure(total <= Duration::from_secs(300), || {
            format!("suite took {total:?}")
        })?;
        Ok(format!("{detail}, suite total {total:.2?}"))
    });
    if !ok {
        std::process::exit(1);
    }
}
