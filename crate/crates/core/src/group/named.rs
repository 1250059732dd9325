//! Named group families with a documented element numbering.
//!
//! | family | order | element `i` |
//! |---|---|---|
//! | `cyclic:n` | n | the residue `i mod n`, product is addition |
//! | `elemab:p:k` | p^k | the vector of base-`p` digits of `i` (least significant first), product is coordinatewise addition mod p |
//! | `dihedral:n` | 2n | `r^(i mod n) · s^(i / n)` with `s r s = r⁻¹` |
//! | `quaternion8` | 8 | `1, -1, i, -i, j, -j, k, -k` in that order |
//! | `symmetric:n` | n! | the `i`-th permutation of `0..n` in lexicographic order; `(σ·τ)(x) = σ(τ(x))` |
//! | `product:A:B` | \|A\|·\|B\| | the pair `(i / |B|, i mod |B|)` |
//!
//! The identity is element `0` in every family.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::{is_prime, FiniteGroup, GroupError, DEFAULT_ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    ElementaryAbelian { p: usize, k: u32 },
    Dihedral(usize),
    Quaternion8,
    Symmetric(usize),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::DirectProduct(Box::new(a), Box::new(b))
    }

    /// Order of the described group, or `None` on arithmetic overflow.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::ElementaryAbelian { p, k } => p.checked_pow(*k),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
            GroupSpec::Quaternion8 => Some(8),
            GroupSpec::Symmetric(n) => (1..=*n).try_fold(1usize, |acc, i| acc.checked_mul(i)),
            GroupSpec::DirectProduct(a, b) => a.order()?.checked_mul(b.order()?),
        }
    }

    fn parse_tokens<'a>(tokens: &mut impl Iterator<Item = &'a str>) -> Result<Self, GroupError> {
        let head = tokens
            .next()
            .ok_or_else(|| GroupError::UnsupportedParameter("empty group spec".into()))?;
        let mut number = |what: &str| -> Result<usize, GroupError> {
            let tok = tokens.next().ok_or_else(|| {
                GroupError::UnsupportedParameter(format!("{head}: missing {what}"))
            })?;
            tok.parse().map_err(|_| {
                GroupError::UnsupportedParameter(format!("{head}: bad {what} {tok:?}"))
            })
        };
        Ok(match head {
            "cyclic" | "c" | "z" => GroupSpec::Cyclic(number("order")?),
            "elemab" | "elementary_abelian" => {
                let p = number("prime")?;
                let k = number("rank")? as u32;
                GroupSpec::ElementaryAbelian { p, k }
            }
            "dihedral" | "d" => GroupSpec::Dihedral(number("n")?),
            "quaternion8" | "q8" => GroupSpec::Quaternion8,
            "symmetric" | "s" => GroupSpec::Symmetric(number("degree")?),
            "product" => {
                let a = Self::parse_tokens(tokens)?;
                let b = Self::parse_tokens(tokens)?;
                GroupSpec::product(a, b)
            }
            other => {
                return Err(GroupError::UnsupportedParameter(format!(
                    "unknown group family {other:?}"
                )))
            }
        })
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.trim().split(':');
        let spec = Self::parse_tokens(&mut tokens)?;
        if let Some(extra) = tokens.next() {
            return Err(GroupError::UnsupportedParameter(format!(
                "trailing token {extra:?} in group spec {s:?}"
            )));
        }
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::ElementaryAbelian { p, k } => write!(f, "elemab:{p}:{k}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion8 => write!(f, "quaternion8"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::DirectProduct(a, b) => write!(f, "product:{a}:{b}"),
        }
    }
}

pub fn make_named_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    make_named_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn make_named_group_with_cap(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup, GroupError> {
    validate(spec)?;
    let order = spec.order().ok_or(GroupError::OverflowGuard {
        order: usize::MAX,
        cap,
    })?;
    if order > cap {
        return Err(GroupError::OverflowGuard { order, cap });
    }
    Ok(build(spec))
}

fn validate(spec: &GroupSpec) -> Result<(), GroupError> {
    let bad = |msg: String| Err(GroupError::UnsupportedParameter(msg));
    match spec {
        GroupSpec::Cyclic(0) => bad("cyclic group of order 0".into()),
        GroupSpec::ElementaryAbelian { p, .. } if !is_prime(*p) => {
            bad(format!("elemab needs a prime, got {p}"))
        }
        GroupSpec::Dihedral(0) => bad("dihedral:0".into()),
        GroupSpec::Symmetric(n) if *n == 0 || *n > 5 => {
            bad(format!("symmetric:{n} (supported degrees are 1..=5)"))
        }
        GroupSpec::DirectProduct(a, b) => {
            validate(a)?;
            validate(b)
        }
        _ => Ok(()),
    }
}

fn build(spec: &GroupSpec) -> FiniteGroup {
    let name = spec.to_string();
    match spec {
        GroupSpec::Cyclic(n) => {
            let n = *n;
            FiniteGroup::from_fn_unchecked(name, n, |a, b| (a + b) % n)
        }
        GroupSpec::ElementaryAbelian { p, k } => {
            let p = *p;
            let order = p.pow(*k);
            FiniteGroup::from_fn_unchecked(name, order, |mut a, mut b| {
                let mut out = 0;
                let mut place = 1;
                while a > 0 || b > 0 {
                    out += ((a % p + b % p) % p) * place;
                    a /= p;
                    b /= p;
                    place *= p;
                }
                out
            })
        }
        GroupSpec::Dihedral(n) => {
            let n = *n;
            FiniteGroup::from_fn_unchecked(name, 2 * n, |a, b| {
                let (i, j) = (a % n, a / n);
                let (k, l) = (b % n, b / n);
                let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                rot + n * ((j + l) % 2)
            })
        }
        GroupSpec::Quaternion8 => {
            // units 1, i, j, k as 0..4; UNIT[u][v] = (negate, unit)
            const UNIT: [[(usize, usize); 4]; 4] = [
                [(0, 0), (0, 1), (0, 2), (0, 3)],
                [(0, 1), (1, 0), (0, 3), (1, 2)],
                [(0, 2), (1, 3), (1, 0), (0, 1)],
                [(0, 3), (0, 2), (1, 1), (1, 0)],
            ];
            FiniteGroup::from_fn_unchecked(name, 8, |a, b| {
                let (u, su) = (a / 2, a % 2);
                let (v, sv) = (b / 2, b % 2);
                let (neg, w) = UNIT[u][v];
                2 * w + (su + sv + neg) % 2
            })
        }
        GroupSpec::Symmetric(n) => {
            let perms: Vec<Vec<usize>> = (0..*n).permutations(*n).collect();
            let index: HashMap<&[usize], usize> = perms
                .iter()
                .enumerate()
                .map(|(i, p)| (p.as_slice(), i))
                .collect();
            FiniteGroup::from_fn_unchecked(name, perms.len(), |a, b| {
                let (s, t) = (&perms[a], &perms[b]);
                let composed: Vec<usize> = t.iter().map(|&x| s[x]).collect();
                index[composed.as_slice()]
            })
        }
        GroupSpec::DirectProduct(a, b) => {
            let ga = build(a);
            let gb = build(b);
            let m = gb.order();
            FiniteGroup::from_fn_unchecked(name, ga.order() * m, |x, y| {
                ga.mul(x / m, y / m) * m + gb.mul(x % m, y % m)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> FiniteGroup {
        make_named_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn family_examples() {
        let c6 = group("cyclic:6");
        assert_eq!(c6.order(), 6);
        assert!(c6.is_abelian());

        let d3 = group("dihedral:3");
        assert_eq!(d3.order(), 6);
        assert!(!d3.is_abelian());

        let e8 = group("elemab:2:3");
        assert_eq!(e8.order(), 8);
        assert!((1..8).all(|a| e8.element_order(a) == 2));
    }

    #[test]
    fn every_family_satisfies_the_axioms() {
        for s in [
            "cyclic:1",
            "cyclic:7",
            "elemab:3:2",
            "elemab:2:0",
            "dihedral:1",
            "dihedral:5",
            "quaternion8",
            "symmetric:3",
            "symmetric:4",
            "product:dihedral:3:cyclic:2",
            "product:quaternion8:product:cyclic:2:cyclic:1",
        ] {
            let g = group(s);
            g.check_axioms().unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(g.identity(), 0);
        }
    }

    #[test]
    fn quaternion_relations() {
        let q = group("q8");
        let (minus_one, i, j, k) = (1, 2, 4, 6);
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.mul(j, j), minus_one);
        assert_eq!(q.mul(k, k), minus_one);
        assert_eq!(q.mul(q.mul(i, j), k), minus_one);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), k + 1);
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "cyclic:12",
            "elemab:2:3",
            "dihedral:4",
            "quaternion8",
            "symmetric:4",
            "product:cyclic:3:cyclic:3",
            "product:product:cyclic:2:cyclic:2:dihedral:3",
        ] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("q8".parse::<GroupSpec>().unwrap(), GroupSpec::Quaternion8);
    }

    #[test]
    fn rejects_bad_parameters() {
        let err = |s: &str| make_named_group(&s.parse().unwrap()).unwrap_err();
        assert!(matches!(
            err("symmetric:6"),
            GroupError::UnsupportedParameter(_)
        ));
        assert!(matches!(
            err("cyclic:0"),
            GroupError::UnsupportedParameter(_)
        ));
        assert!(matches!(
            err("elemab:4:2"),
            GroupError::UnsupportedParameter(_)
        ));
        assert!(matches!(
            err("cyclic:2000"),
            GroupError::OverflowGuard {
                order: 2000,
                cap: 1024
            }
        ));
        assert!(matches!(
            err("elemab:2:64"),
            GroupError::OverflowGuard { .. }
        ));
        assert!("cyclic".parse::<GroupSpec>().is_err());
        assert!("cyclic:3:4".parse::<GroupSpec>().is_err());
        assert!("torus:3".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn cap_is_configurable() {
        let spec: GroupSpec = "symmetric:5".parse().unwrap();
        assert!(make_named_group_with_cap(&spec, 100).is_err());
        assert_eq!(make_named_group_with_cap(&spec, 120).unwrap().order(), 120);
    }
}
