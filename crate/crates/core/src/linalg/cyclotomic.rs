//! Cyclotomic polynomials and the exact root-of-unity test.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::Poly;
use crate::arith::{divisors, euler_phi};

/// `Φ₁ … Φ_max`, built by `Φ_k = (xᵏ − 1) / ∏_{d | k, d < k} Φ_d`.
pub fn cyclotomic_table(max: u64) -> BTreeMap<u64, Poly<BigInt>> {
    let mut table: BTreeMap<u64, Poly<BigInt>> = BTreeMap::new();
    for k in 1..=max {
        let mut num = Poly::monomial(BigInt::one(), k as usize).sub(&Poly::constant(BigInt::one()));
        for d in divisors(k) {
            if d < k {
                num = num
                    .exact_div(&table[&d])
                    .expect("lower cyclotomic factors divide x^k - 1");
            }
        }
        table.insert(k, num);
    }
    table
}

pub fn cyclotomic(k: u64) -> Poly<BigInt> {
    cyclotomic_table(k).remove(&k).expect("table contains k")
}

/// Orders `k` of roots of unity that can be eigenvalues of a degree-`d`
/// integer polynomial: `φ(k) ≤ d`, searched over `k ≤ 2d²`.
pub fn admissible_orders(d: usize) -> Vec<u64> {
    let bound = (2 * d * d).max(2) as u64;
    (1..=bound).filter(|&k| euler_phi(k) as usize <= d).collect()
}

/// Orders of the roots of unity among the roots of `p`, decided exactly by
/// dividing `p` by each admissible `Φ_k`.
pub fn root_of_unity_orders(p: &Poly<BigInt>) -> Vec<u64> {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return Vec::new();
    }
    let orders = admissible_orders(d);
    let table = cyclotomic_table(*orders.last().unwrap_or(&1));
    orders
        .into_iter()
        .filter(|k| {
            let phi = &table[k];
            p.div_rem_exact(phi).is_some_and(|(_, r)| r.is_zero())
        })
        .collect()
}
