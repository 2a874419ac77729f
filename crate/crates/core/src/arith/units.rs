//! Bases of (Z/M)^x built from primitive roots of the prime-power parts.

use super::modular::{inv_mod, mul_mod, primitive_root_prime_power};
use serde::{Deserialize, Serialize};

/// A generator of (Z/M)^x that is trivial away from one prime-power part `q^a` of M.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGenerator {
    pub residue: u64,
    pub order: u64,
    pub prime: u64,
    pub prime_power: u64,
}

/// `[(q, a)]` with `M = prod q^a`.
pub fn factor_small(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= m {
        let mut a = 0;
        while m.is_multiple_of(q) {
            m /= q;
            a += 1;
        }
        if a > 0 {
            out.push((q, a));
        }
        q += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn euler_phi(m: u64) -> u64 {
    factor_small(m).iter().map(|&(q, a)| q.pow(a - 1) * (q - 1)).product()
}

/// The residue mod `m` congruent to `x` mod `part` and to 1 mod `m / part`.
pub fn crt_lift(x: u64, part: u64, m: u64) -> u64 {
    let rest = m / part;
    if rest == 1 {
        return x % m;
    }
    // r = 1 + rest * k with 1 + rest*k = x (mod part).
    let inv = inv_mod(rest % part, part).expect("coprime parts");
    let k = mul_mod((x + part - 1) % part, inv, part);
    (1 + rest * k) % m
}

/// Generators of the cyclic factors of (Z/M)^x, one or two per prime-power part,
/// each lifted to be 1 on the other parts. The product of the orders is phi(M).
pub fn unit_group_generators(m: u64) -> Vec<UnitGenerator> {
    let mut out = Vec::new();
    for (q, a) in factor_small(m) {
        let qa = q.pow(a);
        let mut push = |g: u64, order: u64| {
            out.push(UnitGenerator { residue: crt_lift(g, qa, m), order, prime: q, prime_power: qa });
        };
        if q == 2 {
            if a >= 2 {
                push(qa - 1, 2);
            }
            if a >= 3 {
                push(5, qa / 4);
            }
        } else {
            push(primitive_root_prime_power(q, a), qa / q * (q - 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::modular::{gcd, mult_order};
    use std::collections::HashSet;

    fn generated(m: u64, gens: &[UnitGenerator]) -> usize {
        let mut set: HashSet<u64> = HashSet::from([1 % m]);
        let mut frontier = vec![1 % m];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = mul_mod(x, g.residue, m);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.len()
    }

    #[test]
    fn examples() {
        let g8 = unit_group_generators(8);
        assert_eq!(g8.iter().map(|g| (g.residue, g.order)).collect::<Vec<_>>(), vec![(7, 2), (5, 2)]);
        let g7 = unit_group_generators(7);
        assert_eq!(g7.len(), 1);
        assert_eq!(g7[0].order, 6);
        let mut orders: Vec<u64> = unit_group_generators(15).iter().map(|g| g.order).collect();
        orders.sort();
        assert_eq!(orders, vec![2, 4]);
        assert!(unit_group_generators(1).is_empty());
        assert!(unit_group_generators(2).is_empty());
    }

    #[test]
    fn bases_generate_and_have_stated_orders() {
        for m in 1..400u64 {
            let gens = unit_group_generators(m);
            let phi = euler_phi(m);
            assert_eq!(gens.iter().map(|g| g.order).product::<u64>(), phi, "m = {m}");
            assert_eq!(generated(m, &gens) as u64, phi, "m = {m}");
            for g in &gens {
                assert_eq!(gcd(g.residue, m), 1);
                assert_eq!(mult_order(g.residue, m, phi), g.order);
            }
        }
    }
}
