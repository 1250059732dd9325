use serde::{Deserialize, Serialize};

use super::finders::shifted;
use super::{ConfigError, ConfigKind, ConfigWitness, ElementSet, GridSet, Ground, PairSet, Policy};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// Borrowed view of the set a witness is checked against.
#[derive(Debug, Clone, Copy)]
pub enum SetRef<'a> {
    Pairs(&'a PairSet),
    Elements(&'a ElementSet),
    Grid(&'a GridSet),
}

impl SetRef<'_> {
    pub fn shape_name(&self) -> &'static str {
        match self {
            SetRef::Pairs(_) => "pair set",
            SetRef::Elements(_) => "element set",
            SetRef::Grid(_) => "grid set",
        }
    }

    pub fn ground(&self) -> Ground {
        match self {
            SetRef::Pairs(_) => Ground::Pairs,
            SetRef::Elements(_) => Ground::Elements,
            SetRef::Grid(_) => Ground::Grid,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            SetRef::Pairs(s) => s.order(),
            SetRef::Elements(s) => s.order(),
            SetRef::Grid(s) => s.order(),
        }
    }

    fn arity(&self) -> usize {
        match self {
            SetRef::Pairs(_) => 2,
            SetRef::Elements(_) => 1,
            SetRef::Grid(s) => s.dim(),
        }
    }

    fn contains(&self, p: &[Elem]) -> bool {
        match self {
            SetRef::Pairs(s) => s.contains(p[0], p[1]),
            SetRef::Elements(s) => s.contains(p[0]),
            SetRef::Grid(s) => s.contains(p),
        }
    }
}

/// Outcome of [`validate_witness`]: `reason` names the first failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Validation {
    fn from_check(r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Validation {
                valid: true,
                reason: None,
            },
            Err(reason) => Validation {
                valid: false,
                reason: Some(reason),
            },
        }
    }
}

/// Checks membership, the defining identities, `parameter ∈ H` where the
/// kind uses a subgroup, and the nondegeneracy policy.
pub fn validate_witness(
    g: &FiniteGroup,
    set: SetRef<'_>,
    h: &Subgroup,
    w: &ConfigWitness,
    policy: &Policy,
) -> Result<Validation, ConfigError> {
    if w.kind.ground() != set.ground() {
        return Err(ConfigError::KindMismatch {
            kind: w.kind,
            context: set.shape_name(),
        });
    }
    if set.order() != g.order() {
        return Err(ConfigError::OrderMismatch {
            set: set.order(),
            group: g.order(),
        });
    }
    Ok(Validation::from_check(check(g, set, h, w, policy)))
}

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn check(
    g: &FiniteGroup,
    set: SetRef<'_>,
    h: &Subgroup,
    w: &ConfigWitness,
    policy: &Policy,
) -> Result<(), String> {
    let expected_points = match w.kind {
        ConfigKind::Elso | ConfigKind::Harmadik | ConfigKind::Corollary => 3,
        ConfigKind::Ap3 | ConfigKind::Ksv => 3,
        ConfigKind::Quadruple => 4,
        ConfigKind::Corner => set.arity() + 1,
    };
    ensure(w.points.len() == expected_points, || {
        format!(
            "malformed: expected {expected_points} points, found {}",
            w.points.len()
        )
    })?;
    let arity = set.arity();
    for p in &w.points {
        ensure(p.len() == arity, || {
            format!("malformed: point {p:?} should have {arity} coordinates")
        })?;
        ensure(p.iter().all(|&x| x < g.order()), || {
            format!("point {p:?} is outside the group")
        })?;
    }
    for p in &w.points {
        ensure(set.contains(p), || format!("point {p:?} is not in the set"))?;
    }

    let param = || {
        w.parameter
            .filter(|&d| d < g.order())
            .ok_or_else(|| "missing or out-of-range parameter".to_string())
    };
    let in_h = |d: Elem| ensure(h.contains(d), || format!("parameter {d} is not in H"));
    let nontrivial = |d: Elem| {
        ensure(!(policy.nontrivial_parameter && d == g.identity()), || {
            "degenerate d".to_string()
        })?;
        ensure(
            !(policy.exclude_involutions && d != g.identity() && g.mul(d, d) == g.identity()),
            || format!("parameter {d} has order two"),
        )
    };
    let p = |i: usize, j: usize| w.points[i][j];

    match w.kind {
        ConfigKind::Elso => {
            let d = param()?;
            let (a, b) = (p(0, 0), p(0, 1));
            ensure(p(1, 0) == g.mul(a, d) && p(1, 1) == b, || {
                "second point is not (ad, b)".into()
            })?;
            ensure(p(2, 0) == a && p(2, 1) == g.mul(d, b), || {
                "third point is not (a, db)".into()
            })?;
            in_h(d)?;
            nontrivial(d)?;
        }
        ConfigKind::Harmadik | ConfigKind::Quadruple => {
            let quad = w.kind == ConfigKind::Quadruple;
            let (a, b) = (p(0, 0), p(0, 1));
            ensure(p(1, 0) == a, || "first two points must share a".into())?;
            let c = p(1, 1);
            let last = if quad { 3 } else { 2 };
            let (e, f) = (p(last, 0), p(last, 1));
            if quad {
                ensure(p(2, 0) == e && p(2, 1) == c, || {
                    "third point is not (e, c)".into()
                })?;
            }
            ensure(g.mul(a, b) == g.mul(e, c), || "ab ≠ ec".into())?;
            ensure(g.mul(a, c) == g.mul(e, f), || "ac ≠ ef".into())?;
            ensure(!(policy.distinct_rows && e == a), || {
                "degenerate: e = a".into()
            })?;
        }
        ConfigKind::Corollary => {
            let d = param()?;
            let (a, b) = (p(0, 0), p(0, 1));
            let db = g.mul(d, b);
            ensure(p(1, 0) == a && p(1, 1) == db, || {
                "second point is not (a, db)".into()
            })?;
            ensure(
                p(2, 0) == g.right_div(a, d) && p(2, 1) == g.mul(d, db),
                || "third point is not (ad⁻¹, d²b)".into(),
            )?;
            in_h(d)?;
            nontrivial(d)?;
            ensure(!(policy.distinct_rows && d == g.identity()), || {
                "degenerate: e = a".into()
            })?;
        }
        ConfigKind::Ap3 => {
            let d = param()?;
            let b = p(0, 0);
            let db = g.mul(d, b);
            ensure(p(1, 0) == db && p(2, 0) == g.mul(d, db), || {
                "points are not b, db, d²b".into()
            })?;
            in_h(d)?;
            nontrivial(d)?;
            let (x, y, z) = (p(0, 0), p(1, 0), p(2, 0));
            ensure(
                !(policy.distinct_points && (x == y || y == z || x == z)),
                || "progression terms are not distinct".into(),
            )?;
        }
        ConfigKind::Ksv => {
            let (x, y, z) = (p(0, 0), p(1, 0), p(2, 0));
            ensure(g.mul(x, z) == g.mul(y, y), || "xz ≠ y²".into())?;
            ensure(
                !(policy.distinct_points && (x == y || y == z || x == z)),
                || "trivial solution".into(),
            )?;
        }
        ConfigKind::Corner => {
            ensure(g.is_abelian(), || "corners need an abelian group".into())?;
            let delta = param()?;
            let base = &w.points[0];
            for axis in 0..arity {
                ensure(w.points[axis + 1] == shifted(g, base, axis, delta), || {
                    format!(
                        "point {} is not the base shifted along axis {axis}",
                        axis + 1
                    )
                })?;
            }
            in_h(delta)?;
            nontrivial(delta)?;
        }
    }
    Ok(())
}
