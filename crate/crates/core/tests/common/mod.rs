#![allow(dead_code)]

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toral::linalg::root_of_unity_orders;
use toral::{BlockSpec, CharPoly, IntMatrix};

pub fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

pub fn a() -> IntMatrix {
    mat(&[&[0, 0, 0, -1], &[1, 0, 0, 8], &[0, 1, 0, -6], &[0, 0, 1, 8]])
}

pub fn golden() -> IntMatrix {
    mat(&[&[2, 1], &[1, 1]])
}

pub fn rotation() -> IntMatrix {
    mat(&[&[0, -1], &[1, 0]])
}

pub fn block(powers: &[u32]) -> BlockSpec {
    BlockSpec::new(a(), powers.to_vec()).unwrap()
}

/// Product of random elementary row operations: always in `GL_d(ℤ)`.
pub fn random_unimodular(rng: &mut ChaCha8Rng, d: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(d);
    for _ in 0..steps {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = IntMatrix::identity(d).rows();
        e[i][j] = BigInt::from(c);
        m = m.mul(&IntMatrix::new(e).unwrap());
    }
    if rng.gen_bool(0.5) {
        let mut rows = m.rows();
        rows.swap(0, d - 1);
        m = IntMatrix::new(rows).unwrap();
    }
    m
}

/// `M⁻¹ = det(M)·adj(M)` for `det(M) = ±1`.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let d = m.dim();
    let det = m.det();
    let mut inv = vec![vec![BigInt::from(0); d]; d];
    for i in 0..d {
        for j in 0..d {
            let minor: Vec<Vec<BigInt>> = (0..d)
                .filter(|&r| r != i)
                .map(|r| (0..d).filter(|&c| c != j).map(|c| m.get(r, c).clone()).collect())
                .collect();
            let cof = if d == 1 { BigInt::from(1) } else { IntMatrix::new(minor).unwrap().det() };
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[j][i] = cof * sign * &det;
        }
    }
    IntMatrix::new(inv).unwrap()
}

/// `count` ergodic unimodular `d×d` matrices with small entries, reproducibly.
pub fn random_ergodic(seed: u64, d: usize, count: usize) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let m = random_unimodular(&mut rng, d, 3 * d);
        let small = m.rows().iter().flatten().all(|x| x.magnitude().bits() <= 5);
        if small && root_of_unity_orders(CharPoly::of(&m).poly()).is_empty() {
            out.push(m);
        }
    }
    out
}
