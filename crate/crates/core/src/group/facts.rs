use serde::{Deserialize, Serialize};

use super::{factorize, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFacts {
    pub name: String,
    pub order: usize,
    pub is_abelian: bool,
    /// `Some(p)` when the order is a power of the prime `p`.
    pub p_group: Option<usize>,
    pub element_orders: Vec<usize>,
    pub center_size: usize,
    pub exponent: usize,
}

impl GroupFacts {
    pub fn is_p_group(&self) -> bool {
        self.p_group.is_some()
    }
}

pub fn group_facts(g: &FiniteGroup) -> GroupFacts {
    let element_orders: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
    let exponent = element_orders.iter().fold(1, |acc, &k| lcm(acc, k));
    let center_size = g
        .elements()
        .filter(|&a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)))
        .count();
    let primes = factorize(g.order());
    let p_group = match primes.as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    };
    GroupFacts {
        name: g.name().to_string(),
        order: g.order(),
        is_abelian: g.is_abelian(),
        p_group,
        element_orders,
        center_size,
        exponent,
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_named_group;

    fn facts(s: &str) -> GroupFacts {
        group_facts(&make_named_group(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn elementary_abelian_2_3() {
        let f = facts("elemab:2:3");
        assert!(f.is_abelian);
        assert_eq!(f.p_group, Some(2));
        assert_eq!(f.exponent, 2);
        assert_eq!(f.center_size, 8);
    }

    #[test]
    fn dihedral_4() {
        let f = facts("dihedral:4");
        assert!(!f.is_abelian);
        assert_eq!(f.p_group, Some(2));
        assert_eq!(f.center_size, 2);
        assert_eq!(f.exponent, 4);
    }

    #[test]
    fn cyclic_15() {
        let f = facts("cyclic:15");
        assert!(f.is_abelian);
        assert!(!f.is_p_group());
        assert_eq!(f.exponent, 15);
    }

    #[test]
    fn symmetric_3() {
        let f = facts("symmetric:3");
        assert_eq!(f.element_orders, vec![1, 2, 2, 3, 3, 2]);
        assert_eq!(f.center_size, 1);
        assert_eq!(f.exponent, 6);
        assert_eq!(facts("cyclic:1").p_group, None);
    }
}
