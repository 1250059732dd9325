#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use roth_core::group::library::builtin_groups_up_to;
use roth_core::group::{all_subgroups, make_named_group, FiniteGroup, Subgroup};

pub fn group(spec: &str) -> FiniteGroup {
    make_named_group(&spec.parse().unwrap()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Built-in groups up to `max_order`, each with its subgroup lattice.
pub fn groups_with_subgroups(max_order: usize) -> Vec<(FiniteGroup, Vec<Subgroup>)> {
    builtin_groups_up_to(max_order)
        .into_iter()
        .map(|g| {
            let subs = all_subgroups(&g).unwrap();
            (g, subs)
        })
        .collect()
}

/// Picks a group and one of its subgroups from proptest indices.
pub fn pick(
    lib: &[(FiniteGroup, Vec<Subgroup>)],
    gi: usize,
    hi: usize,
) -> (&FiniteGroup, &Subgroup) {
    let (g, subs) = &lib[gi % lib.len()];
    (g, &subs[hi % subs.len()])
}
