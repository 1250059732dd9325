use std::ops::ControlFlow;

use super::{ConfigError, ConfigKind, ConfigWitness, ElementSet, GridSet, PairSet, Policy, SetRef};
use crate::group::{Elem, FiniteGroup, Subgroup};

fn same_order(g: &FiniteGroup, set_order: usize) {
    assert_eq!(
        g.order(),
        set_order,
        "set over a group of order {set_order} used with {}",
        g.name()
    );
}

impl Policy {
    pub(crate) fn parameter_ok(&self, g: &FiniteGroup, d: Elem) -> bool {
        if d == g.identity() {
            return !self.nontrivial_parameter;
        }
        !(self.exclude_involutions && g.mul(d, d) == g.identity())
    }

    pub(crate) fn ap3_ok(&self, g: &FiniteGroup, d: Elem) -> bool {
        self.parameter_ok(g, d)
            && (!self.distinct_points || (d != g.identity() && g.mul(d, d) != g.identity()))
    }
}

/// Visits `(a, b, d)` with `(a,b), (ad,b), (a,db) ∈ S` and `d ∈ H`, in
/// lexicographic order of `(a, b, d)`.
pub fn visit_elso<B>(
    g: &FiniteGroup,
    s: &PairSet,
    h: &Subgroup,
    policy: &Policy,
    mut f: impl FnMut(Elem, Elem, Elem) -> ControlFlow<B>,
) -> ControlFlow<B> {
    same_order(g, s.order());
    for (a, b) in s.iter() {
        for &d in h.elements() {
            if policy.parameter_ok(g, d) && s.contains(g.mul(a, d), b) && s.contains(a, g.mul(d, b))
            {
                f(a, b, d)?;
            }
        }
    }
    ControlFlow::Continue(())
}

pub fn elso_witness(g: &FiniteGroup, a: Elem, b: Elem, d: Elem) -> ConfigWitness {
    ConfigWitness::pairs(
        ConfigKind::Elso,
        &[(a, b), (g.mul(a, d), b), (a, g.mul(d, b))],
        Some(d),
    )
}

pub fn find_elso(
    g: &FiniteGroup,
    s: &PairSet,
    h: &Subgroup,
    policy: &Policy,
) -> Option<ConfigWitness> {
    match visit_elso(g, s, h, policy, |a, b, d| ControlFlow::Break((a, b, d))) {
        ControlFlow::Break((a, b, d)) => Some(elso_witness(g, a, b, d)),
        ControlFlow::Continue(()) => None,
    }
}

/// Number of ordered `(a, b, d)` forming the configuration.
pub fn count_elso(g: &FiniteGroup, s: &PairSet, h: &Subgroup, policy: &Policy) -> u64 {
    let mut n = 0;
    let _ = visit_elso::<()>(g, s, h, policy, |_, _, _| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

/// Visits `(a, b, c, e, f)` with `(a,b), (a,c), (e,f) ∈ S`, `ab = ec` and
/// `ac = ef`, in lexicographic order of `(a, c, e)`.
///
/// With `quadruple` set, `(e,c) ∈ S` is required as well.
fn visit_harmadik<B>(
    g: &FiniteGroup,
    s: &PairSet,
    policy: &Policy,
    quadruple: bool,
    mut f: impl FnMut([Elem; 5]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    same_order(g, s.order());
    for (a, c) in s.iter() {
        let ac = g.mul(a, c);
        let a_inv = g.inv(a);
        for e in g.elements() {
            if policy.distinct_rows && e == a {
                continue;
            }
            if quadruple && !s.contains(e, c) {
                continue;
            }
            let b = g.mul(a_inv, g.mul(e, c));
            let ff = g.left_div(e, ac);
            if s.contains(a, b) && s.contains(e, ff) {
                f([a, b, c, e, ff])?;
            }
        }
    }
    ControlFlow::Continue(())
}

pub fn find_harmadik(g: &FiniteGroup, s: &PairSet, policy: &Policy) -> Option<ConfigWitness> {
    match visit_harmadik(g, s, policy, false, ControlFlow::Break) {
        ControlFlow::Break([a, b, c, e, f]) => Some(ConfigWitness::pairs(
            ConfigKind::Harmadik,
            &[(a, b), (a, c), (e, f)],
            None,
        )),
        ControlFlow::Continue(()) => None,
    }
}

pub fn count_harmadik(g: &FiniteGroup, s: &PairSet, policy: &Policy) -> u64 {
    let mut n = 0;
    let _ = visit_harmadik::<()>(g, s, policy, false, |_| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

pub fn find_quadruple(g: &FiniteGroup, s: &PairSet, policy: &Policy) -> Option<ConfigWitness> {
    match visit_harmadik(g, s, policy, true, ControlFlow::Break) {
        ControlFlow::Break([a, b, c, e, f]) => Some(ConfigWitness::pairs(
            ConfigKind::Quadruple,
            &[(a, b), (a, c), (e, c), (e, f)],
            None,
        )),
        ControlFlow::Continue(()) => None,
    }
}

/// Visits `(a, b, d)` with `(a,b), (a,db), (ad⁻¹,d²b) ∈ S` and `d ∈ H`.
fn visit_corollary<B>(
    g: &FiniteGroup,
    s: &PairSet,
    h: &Subgroup,
    policy: &Policy,
    mut f: impl FnMut(Elem, Elem, Elem) -> ControlFlow<B>,
) -> ControlFlow<B> {
    same_order(g, s.order());
    for (a, b) in s.iter() {
        for &d in h.elements() {
            if !policy.parameter_ok(g, d) || (policy.distinct_rows && d == g.identity()) {
                continue;
            }
            let db = g.mul(d, b);
            if s.contains(a, db) && s.contains(g.right_div(a, d), g.mul(d, db)) {
                f(a, b, d)?;
            }
        }
    }
    ControlFlow::Continue(())
}

pub fn corollary_witness(g: &FiniteGroup, a: Elem, b: Elem, d: Elem) -> ConfigWitness {
    let db = g.mul(d, b);
    ConfigWitness::pairs(
        ConfigKind::Corollary,
        &[(a, b), (a, db), (g.right_div(a, d), g.mul(d, db))],
        Some(d),
    )
}

pub fn find_corollary_triple(
    g: &FiniteGroup,
    s: &PairSet,
    h: &Subgroup,
    policy: &Policy,
) -> Option<ConfigWitness> {
    match visit_corollary(g, s, h, policy, |a, b, d| ControlFlow::Break((a, b, d))) {
        ControlFlow::Break((a, b, d)) => Some(corollary_witness(g, a, b, d)),
        ControlFlow::Continue(()) => None,
    }
}

/// Visits `(b, d)` with `b, db, d²b ∈ A` and `d ∈ H`.
fn visit_ap3<B>(
    g: &FiniteGroup,
    a: &ElementSet,
    h: &Subgroup,
    policy: &Policy,
    mut f: impl FnMut(Elem, Elem) -> ControlFlow<B>,
) -> ControlFlow<B> {
    same_order(g, a.order());
    for b in a.iter() {
        for &d in h.elements() {
            if !policy.ap3_ok(g, d) {
                continue;
            }
            let db = g.mul(d, b);
            if a.contains(db) && a.contains(g.mul(d, db)) {
                f(b, d)?;
            }
        }
    }
    ControlFlow::Continue(())
}

pub fn ap3_witness(g: &FiniteGroup, b: Elem, d: Elem) -> ConfigWitness {
    let db = g.mul(d, b);
    ConfigWitness::new(
        ConfigKind::Ap3,
        vec![vec![b], vec![db], vec![g.mul(d, db)]],
        Some(d),
    )
}

pub fn find_ap3(
    g: &FiniteGroup,
    a: &ElementSet,
    h: &Subgroup,
    policy: &Policy,
) -> Option<ConfigWitness> {
    match visit_ap3(g, a, h, policy, |b, d| ControlFlow::Break((b, d))) {
        ControlFlow::Break((b, d)) => Some(ap3_witness(g, b, d)),
        ControlFlow::Continue(()) => None,
    }
}

pub fn count_ap3(g: &FiniteGroup, a: &ElementSet, h: &Subgroup, policy: &Policy) -> u64 {
    let mut n = 0;
    let _ = visit_ap3::<()>(g, a, h, policy, |_, _| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

/// Visits `(x, y, z) ∈ A³` with `xz = y²`, in lexicographic order of `(x, y)`.
fn visit_ksv<B>(
    g: &FiniteGroup,
    a: &ElementSet,
    policy: &Policy,
    mut f: impl FnMut(Elem, Elem, Elem) -> ControlFlow<B>,
) -> ControlFlow<B> {
    same_order(g, a.order());
    for x in a.iter() {
        let x_inv = g.inv(x);
        for y in a.iter() {
            let z = g.mul(x_inv, g.mul(y, y));
            if !a.contains(z) {
                continue;
            }
            if policy.distinct_points && (x == y || y == z || x == z) {
                continue;
            }
            f(x, y, z)?;
        }
    }
    ControlFlow::Continue(())
}

/// Number of ordered `(x, y, z) ∈ A³` with `x·z = y²`, trivial solutions
/// included.
pub fn count_ksv(g: &FiniteGroup, a: &ElementSet) -> u64 {
    let mut n = 0;
    let _ = visit_ksv::<()>(g, a, &Policy::permissive(), |_, _, _| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

pub fn find_ksv(g: &FiniteGroup, a: &ElementSet, policy: &Policy) -> Option<ConfigWitness> {
    match visit_ksv(g, a, policy, |x, y, z| ControlFlow::Break([x, y, z])) {
        ControlFlow::Break(p) => Some(ConfigWitness::new(
            ConfigKind::Ksv,
            p.iter().map(|&x| vec![x]).collect(),
            None,
        )),
        ControlFlow::Continue(()) => None,
    }
}

/// Translate of `base` by `delta` along axis `axis`.
pub(crate) fn shifted(g: &FiniteGroup, base: &[Elem], axis: usize, delta: Elem) -> Vec<Elem> {
    let mut p = base.to_vec();
    p[axis] = g.mul(p[axis], delta);
    p
}

/// Visits `(base, δ)` forming a corner, in lexicographic order.
fn visit_corner<B>(
    g: &FiniteGroup,
    s: &GridSet,
    h: &Subgroup,
    policy: &Policy,
    mut f: impl FnMut(&[Elem], Elem) -> ControlFlow<B>,
) -> Result<ControlFlow<B>, ConfigError> {
    if g.order() != s.order() {
        return Err(ConfigError::OrderMismatch {
            set: s.order(),
            group: g.order(),
        });
    }
    if !g.is_abelian() {
        return Err(ConfigError::NotAbelian(g.name().to_string()));
    }
    for base in s.iter() {
        for &delta in h.elements() {
            if !policy.parameter_ok(g, delta) {
                continue;
            }
            let all = (0..s.dim()).all(|i| s.contains(&shifted(g, &base, i, delta)));
            if all {
                if let ControlFlow::Break(b) = f(&base, delta) {
                    return Ok(ControlFlow::Break(b));
                }
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

pub fn corner_witness(g: &FiniteGroup, base: &[Elem], delta: Elem) -> ConfigWitness {
    let mut points = vec![base.to_vec()];
    points.extend((0..base.len()).map(|i| shifted(g, base, i, delta)));
    ConfigWitness::new(ConfigKind::Corner, points, Some(delta))
}

pub fn find_corner(
    g: &FiniteGroup,
    s: &GridSet,
    h: &Subgroup,
    policy: &Policy,
) -> Result<Option<ConfigWitness>, ConfigError> {
    Ok(
        match visit_corner(g, s, h, policy, |base, d| {
            ControlFlow::Break((base.to_vec(), d))
        })? {
            ControlFlow::Break((base, d)) => Some(corner_witness(g, &base, d)),
            ControlFlow::Continue(()) => None,
        },
    )
}

pub fn count_corners(
    g: &FiniteGroup,
    s: &GridSet,
    h: &Subgroup,
    policy: &Policy,
) -> Result<u64, ConfigError> {
    let mut n = 0;
    let _ = visit_corner::<()>(g, s, h, policy, |_, _| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

/// Runs the brute-force finder for `kind` on a set of the matching shape.
///
/// `h` is ignored by kinds without a subgroup parameter.
pub fn find_config(
    kind: ConfigKind,
    g: &FiniteGroup,
    set: SetRef<'_>,
    h: &Subgroup,
    policy: &Policy,
) -> Result<Option<ConfigWitness>, ConfigError> {
    let mismatch = || ConfigError::KindMismatch {
        kind,
        context: set.shape_name(),
    };
    Ok(match (kind, set) {
        (ConfigKind::Elso, SetRef::Pairs(s)) => find_elso(g, s, h, policy),
        (ConfigKind::Harmadik, SetRef::Pairs(s)) => find_harmadik(g, s, policy),
        (ConfigKind::Quadruple, SetRef::Pairs(s)) => find_quadruple(g, s, policy),
        (ConfigKind::Corollary, SetRef::Pairs(s)) => find_corollary_triple(g, s, h, policy),
        (ConfigKind::Ap3, SetRef::Elements(a)) => find_ap3(g, a, h, policy),
        (ConfigKind::Ksv, SetRef::Elements(a)) => find_ksv(g, a, policy),
        (ConfigKind::Corner, SetRef::Grid(s)) => find_corner(g, s, h, policy)?,
        _ => return Err(mismatch()),
    })
}

/// Every configuration of `kind` in `set`, in finder order.
pub fn all_witnesses(
    kind: ConfigKind,
    g: &FiniteGroup,
    set: SetRef<'_>,
    h: &Subgroup,
    policy: &Policy,
) -> Result<Vec<ConfigWitness>, ConfigError> {
    let mut out = Vec::new();
    let mismatch = || ConfigError::KindMismatch {
        kind,
        context: set.shape_name(),
    };
    match (kind, set) {
        (ConfigKind::Elso, SetRef::Pairs(s)) => {
            let _ = visit_elso::<()>(g, s, h, policy, |a, b, d| {
                out.push(elso_witness(g, a, b, d));
                ControlFlow::Continue(())
            });
        }
        (ConfigKind::Harmadik | ConfigKind::Quadruple, SetRef::Pairs(s)) => {
            let quad = kind == ConfigKind::Quadruple;
            let _ = visit_harmadik::<()>(g, s, policy, quad, |[a, b, c, e, f]| {
                let pts: Vec<(Elem, Elem)> = if quad {
                    vec![(a, b), (a, c), (e, c), (e, f)]
                } else {
                    vec![(a, b), (a, c), (e, f)]
                };
                out.push(ConfigWitness::pairs(kind, &pts, None));
                ControlFlow::Continue(())
            });
        }
        (ConfigKind::Corollary, SetRef::Pairs(s)) => {
            let _ = visit_corollary::<()>(g, s, h, policy, |a, b, d| {
                out.push(corollary_witness(g, a, b, d));
                ControlFlow::Continue(())
            });
        }
        (ConfigKind::Ap3, SetRef::Elements(a)) => {
            let _ = visit_ap3::<()>(g, a, h, policy, |b, d| {
                out.push(ap3_witness(g, b, d));
                ControlFlow::Continue(())
            });
        }
        (ConfigKind::Ksv, SetRef::Elements(a)) => {
            let _ = visit_ksv::<()>(g, a, policy, |x, y, z| {
                out.push(ConfigWitness::new(
                    ConfigKind::Ksv,
                    vec![vec![x], vec![y], vec![z]],
                    None,
                ));
                ControlFlow::Continue(())
            });
        }
        (ConfigKind::Corner, SetRef::Grid(s)) => {
            let _ = visit_corner::<()>(g, s, h, policy, |base, d| {
                out.push(corner_witness(g, base, d));
                ControlFlow::Continue(())
            })?;
        }
        _ => return Err(mismatch()),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::validate_witness;
    use crate::group::{make_named_group, FiniteGroup};

    fn group(s: &str) -> FiniteGroup {
        make_named_group(&s.parse().unwrap()).unwrap()
    }

    fn pts(w: &ConfigWitness) -> Vec<Vec<Elem>> {
        w.points.clone()
    }

    #[test]
    fn elso_examples() {
        let g = group("cyclic:4");
        let h = Subgroup::whole(&g);
        let p = Policy::default();
        let w = find_elso(&g, &PairSet::full(4), &h, &p).unwrap();
        assert_eq!(pts(&w), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(w.parameter, Some(1));
        assert!(find_elso(&g, &PairSet::empty(4), &h, &p).is_none());
        let column = PairSet::from_fn(4, |a, _| a == 0);
        assert!(find_elso(&g, &column, &h, &p).is_none());
        assert!(find_elso(&g, &column, &h, &Policy::permissive()).is_some());
    }

    #[test]
    fn elso_counts() {
        let g = group("cyclic:4");
        let h = Subgroup::whole(&g);
        assert_eq!(
            count_elso(&g, &PairSet::full(4), &h, &Policy::default()),
            48
        );
        assert_eq!(
            count_elso(&g, &PairSet::empty(4), &h, &Policy::default()),
            0
        );
        assert_eq!(
            count_elso(&g, &PairSet::full(4), &h, &Policy::permissive()),
            64
        );
    }

    #[test]
    fn harmadik_examples() {
        let g = group("cyclic:3");
        let p = Policy::default();
        let w = find_harmadik(&g, &PairSet::full(3), &p).unwrap();
        assert_eq!(pts(&w), vec![vec![0, 1], vec![0, 0], vec![1, 2]]);
        assert!(find_harmadik(&g, &PairSet::empty(3), &p).is_none());
        let single = PairSet::from_pairs(3, [(0, 0)]).unwrap();
        assert!(find_harmadik(&g, &single, &p).is_none());
        assert!(find_harmadik(&g, &single, &Policy::permissive()).is_some());
    }

    #[test]
    fn quadruple_examples() {
        let g = group("cyclic:3");
        let p = Policy::default();
        let w = find_quadruple(&g, &PairSet::full(3), &p).unwrap();
        assert_eq!(
            pts(&w),
            vec![vec![0, 1], vec![0, 0], vec![1, 0], vec![1, 2]]
        );
        assert!(find_quadruple(&g, &PairSet::empty(3), &p).is_none());
    }

    #[test]
    fn smallest_quadruple_set_over_z2() {
        // every subset of Z2×Z2, smallest first
        let g = group("cyclic:2");
        let mut found = None;
        for mask in 0u32..16 {
            let s = PairSet::from_indices(2, (0..4).filter(|i| mask >> i & 1 == 1));
            if let Some(w) = find_quadruple(&g, &s, &Policy::default()) {
                if found.as_ref().is_none_or(|(size, _)| s.size() < *size) {
                    found = Some((s.size(), w));
                }
            }
        }
        let (size, w) = found.unwrap();
        assert_eq!(size, 4);
        assert_eq!(
            pts(&w),
            vec![vec![0, 1], vec![0, 0], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn corollary_examples() {
        let g = group("cyclic:5");
        let h = Subgroup::whole(&g);
        let p = Policy::default();
        let w = find_corollary_triple(&g, &PairSet::full(5), &h, &p).unwrap();
        assert_eq!(pts(&w), vec![vec![0, 0], vec![0, 1], vec![4, 2]]);
        assert_eq!(w.parameter, Some(1));
        assert!(find_corollary_triple(&g, &PairSet::empty(5), &h, &p).is_none());

        let e8 = group("product:elemab:2:3:cyclic:3");
        let boolean = Subgroup::from_elements(&e8, (0..8).map(|x| x * 3)).unwrap();
        let no_involutions = Policy {
            exclude_involutions: true,
            ..Policy::default()
        };
        let full = PairSet::full(24);
        assert!(find_corollary_triple(&e8, &full, &boolean, &no_involutions).is_none());
        assert!(find_corollary_triple(&e8, &full, &boolean, &Policy::default()).is_some());
    }

    #[test]
    fn corollary_triples_are_harmadik_triples() {
        let g = group("dihedral:4");
        let s = PairSet::full(8);
        let h = Subgroup::whole(&g);
        for w in all_witnesses(
            ConfigKind::Corollary,
            &g,
            SetRef::Pairs(&s),
            &h,
            &Policy::default(),
        )
        .unwrap()
        {
            let as_harmadik = ConfigWitness::new(ConfigKind::Harmadik, w.points.clone(), None);
            let v = validate_witness(&g, SetRef::Pairs(&s), &h, &as_harmadik, &Policy::default())
                .unwrap();
            assert!(v.valid, "{w:?}: {:?}", v.reason);
        }
    }

    #[test]
    fn ap3_examples() {
        let z5 = group("cyclic:5");
        let h = Subgroup::whole(&z5);
        let p = Policy::default();
        let a = ElementSet::from_elements(5, [0, 1, 2]).unwrap();
        let w = find_ap3(&z5, &a, &h, &p).unwrap();
        assert_eq!(pts(&w), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(w.parameter, Some(1));
        let a = ElementSet::from_elements(5, [0, 1]).unwrap();
        assert!(find_ap3(&z5, &a, &h, &p).is_none());

        let e8 = group("elemab:2:3");
        let h = Subgroup::whole(&e8);
        assert!(find_ap3(&e8, &ElementSet::full(8), &h, &p).is_none());
    }

    #[test]
    fn ksv_examples() {
        let g = group("cyclic:7");
        assert_eq!(count_ksv(&g, &ElementSet::full(7)), 49);
        assert_eq!(
            count_ksv(&g, &ElementSet::from_elements(7, [3]).unwrap()),
            1
        );
        // enumerate all 27 triples of {0,1,3}: x + z ≡ 2y (mod 7)
        let a = [0usize, 1, 3];
        let mut expected = 0;
        for x in a {
            for y in a {
                for z in a {
                    if (x + z) % 7 == (2 * y) % 7 {
                        expected += 1;
                    }
                }
            }
        }
        assert_eq!(expected, 3);
        let set = ElementSet::from_elements(7, a).unwrap();
        assert_eq!(count_ksv(&g, &set), expected);
        assert!(find_ksv(&g, &set, &Policy::default()).is_none());
        let w = find_ksv(&g, &ElementSet::full(7), &Policy::default()).unwrap();
        assert_eq!(pts(&w), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn corner_examples() {
        let z5 = group("cyclic:5");
        let h = Subgroup::whole(&z5);
        let p = Policy::default();
        let w = find_corner(&z5, &GridSet::full(5, 2).unwrap(), &h, &p)
            .unwrap()
            .unwrap();
        assert_eq!(pts(&w), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(w.parameter, Some(1));

        let line = GridSet::from_fn(5, 2, |x| (x[0] + x[1]) % 5 == 0).unwrap();
        assert_eq!(find_corner(&z5, &line, &h, &p).unwrap(), None);
        assert!(find_corner(&z5, &line, &h, &Policy::permissive())
            .unwrap()
            .is_some());

        let z3 = group("cyclic:3");
        let w = find_corner(
            &z3,
            &GridSet::full(3, 3).unwrap(),
            &Subgroup::whole(&z3),
            &p,
        )
        .unwrap()
        .unwrap();
        assert_eq!(w.parameter, Some(1));
        assert_eq!(w.points.len(), 4);
    }

    #[test]
    fn corners_need_abelian_groups() {
        let d3 = group("dihedral:3");
        let s = GridSet::full(6, 2).unwrap();
        assert!(matches!(
            find_corner(&d3, &s, &Subgroup::whole(&d3), &Policy::default()),
            Err(ConfigError::NotAbelian(_))
        ));
    }

    #[test]
    fn find_config_rejects_mismatched_shapes() {
        let g = group("cyclic:3");
        let h = Subgroup::whole(&g);
        let a = ElementSet::full(3);
        assert!(matches!(
            find_config(
                ConfigKind::Elso,
                &g,
                SetRef::Elements(&a),
                &h,
                &Policy::default()
            ),
            Err(ConfigError::KindMismatch { .. })
        ));
    }
}
