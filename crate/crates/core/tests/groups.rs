mod common;

use common::{group, groups_with_subgroups};
use proptest::prelude::*;
use roth_core::group::library::builtin_groups;
use roth_core::group::*;

fn small_spec() -> impl Strategy<Value = GroupSpec> {
    let leaf = prop_oneof![
        (1usize..9).prop_map(GroupSpec::Cyclic),
        (3usize..6).prop_map(GroupSpec::Dihedral),
        Just(GroupSpec::Quaternion8),
        (3usize..5).prop_map(GroupSpec::Symmetric),
        Just(GroupSpec::ElementaryAbelian { p: 2, k: 2 }),
    ];
    (leaf.clone(), leaf, any::<bool>()).prop_map(
        |(a, b, prod)| {
            if prod {
                GroupSpec::product(a, b)
            } else {
                a
            }
        },
    )
}

#[test]
fn library_groups_satisfy_the_axioms() {
    for g in builtin_groups().iter().filter(|g| g.order() <= 32) {
        g.check_axioms()
            .unwrap_or_else(|e| panic!("{}: {e}", g.name()));
    }
}

#[test]
fn lagrange_sylow_and_large_abelian_subgroups() {
    for (g, subs) in groups_with_subgroups(64) {
        let n = g.order();
        for h in &subs {
            assert_eq!(n % h.order(), 0);
            h.check_closed(&g).unwrap();
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
                assert_eq!(
                    sylow_subgroup(&g, p).unwrap().order(),
                    part,
                    "{} p={p}",
                    g.name()
                );
            }
            p += 1;
        }
        if n >= 2 {
            let a = max_abelian_subgroup(&g).unwrap();
            assert!(a.is_abelian(&g));
            assert!(a.order() as f64 >= (n as f64).ln(), "{}", g.name());
            let best = subs
                .iter()
                .filter(|h| h.is_abelian(&g))
                .map(|h| h.order())
                .max()
                .unwrap();
            assert_eq!(a.order(), best);
        }
    }
}

#[test]
fn quaternion_lattice_by_brute_force() {
    // closure of every subset of Q8, independent of the library routine
    let g = group("quaternion8");
    let mut found = std::collections::BTreeSet::new();
    for mask in 0u32..256 {
        let mut set: Vec<Elem> = (0..8).filter(|&x| mask >> x & 1 == 1).collect();
        if !set.contains(&0) {
            continue;
        }
        let closed = set
            .iter()
            .all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))));
        if closed {
            set.sort_unstable();
            found.insert(set);
        }
    }
    let lib: std::collections::BTreeSet<Vec<Elem>> = all_subgroups(&g)
        .unwrap()
        .iter()
        .map(|h| h.elements().to_vec())
        .collect();
    assert_eq!(found, lib);
    assert_eq!(lib.len(), 6);
}

#[test]
fn caps_are_enforced() {
    assert!(matches!(
        make_named_group(&"symmetric:6".parse().unwrap()),
        Err(GroupError::UnsupportedParameter(_))
    ));
    assert!(matches!(
        make_named_group(&"cyclic:2000".parse().unwrap()),
        Err(GroupError::OverflowGuard { .. })
    ));
    assert!(matches!(
        all_subgroups(&group("cyclic:65")),
        Err(GroupError::OverflowGuard { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructed_groups_are_groups(spec in small_spec()) {
        let g = make_named_group(&spec).unwrap();
        prop_assert_eq!(Some(g.order()), spec.order());
        prop_assert!(g.check_axioms().is_ok());
    }

    #[test]
    fn table_round_trip_preserves_the_group(spec in small_spec()) {
        let g = make_named_group(&spec).unwrap();
        let back = parse_cayley_table(&g.to_table_text()).unwrap();
        prop_assert_eq!(back.order(), g.order());
        for a in g.elements() {
            prop_assert!(g.row(a).eq(back.row(a)));
        }
    }

    #[test]
    fn cosets_partition_the_group(spec in small_spec(), pick in any::<prop::sample::Index>()) {
        let g = make_named_group(&spec).unwrap();
        prop_assume!(g.order() <= 64);
        let subs = all_subgroups(&g).unwrap();
        let h = pick.get(&subs);
        for side in [Side::Left, Side::Right] {
            let part = cosets(&g, h, side).unwrap();
            prop_assert_eq!(part.len(), g.order() / h.order());
            let mut seen = vec![false; g.order()];
            for (rep, block) in part.representatives.iter().zip(&part.blocks) {
                prop_assert_eq!(block.len(), h.order());
                prop_assert_eq!(block[0], *rep);
                for &x in block {
                    prop_assert!(!seen[x]);
                    seen[x] = true;
                }
            }
            prop_assert!(seen.into_iter().all(|s| s));
        }
    }
}
