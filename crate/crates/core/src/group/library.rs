//! The built-in group library used by the property suites.
//!
//! Every group here has order at most 64, so its full subgroup lattice can be
//! enumerated under the default cap.

use super::{make_named_group, FiniteGroup, GroupSpec};

/// Specs of the built-in groups, in increasing order of group order.
pub fn builtin_specs() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let c = |n| Cyclic(n);
    let mut specs: Vec<GroupSpec> = (1..=24).map(c).collect();
    specs.extend([
        c(27),
        c(32),
        c(64),
        ElementaryAbelian { p: 2, k: 2 },
        ElementaryAbelian { p: 2, k: 3 },
        ElementaryAbelian { p: 2, k: 4 },
        ElementaryAbelian { p: 2, k: 5 },
        ElementaryAbelian { p: 2, k: 6 },
        ElementaryAbelian { p: 3, k: 2 },
        ElementaryAbelian { p: 3, k: 3 },
        ElementaryAbelian { p: 5, k: 2 },
        ElementaryAbelian { p: 7, k: 2 },
        Quaternion8,
        Symmetric(3),
        Symmetric(4),
        GroupSpec::product(c(2), c(4)),
        GroupSpec::product(c(2), c(6)),
        GroupSpec::product(c(4), c(4)),
        GroupSpec::product(c(3), c(9)),
        GroupSpec::product(c(2), Quaternion8),
        GroupSpec::product(c(2), Dihedral(4)),
        GroupSpec::product(c(3), Symmetric(3)),
        GroupSpec::product(c(3), Quaternion8),
        GroupSpec::product(Symmetric(3), Symmetric(3)),
        GroupSpec::product(c(2), Symmetric(4)),
    ]);
    specs.extend((3..=12).map(Dihedral));
    specs.extend([Dihedral(16), Dihedral(32)]);
    specs.sort_by_key(|s| (s.order().unwrap_or(usize::MAX), s.to_string()));
    specs
}

pub fn builtin_groups() -> Vec<FiniteGroup> {
    builtin_specs()
        .iter()
        .map(|s| make_named_group(s).expect("built-in specs are valid"))
        .collect()
}

/// Built-in groups of order at most `max_order`.
pub fn builtin_groups_up_to(max_order: usize) -> Vec<FiniteGroup> {
    builtin_specs()
        .iter()
        .filter(|s| s.order().is_some_and(|n| n <= max_order))
        .map(|s| make_named_group(s).expect("built-in specs are valid"))
        .collect()
}
