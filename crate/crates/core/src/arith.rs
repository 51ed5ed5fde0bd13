//! Elementary number theory on machine integers.

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "Möbius function is defined for n ≥ 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        let want = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), *w, "n = {}", i + 1);
        }
    }

    #[test]
    fn mobius_sums_to_zero_over_divisors() {
        for n in 2..300u64 {
            let s: i64 = divisors(n).into_iter().map(|d| mobius(d) as i64).sum();
            assert_eq!(s, 0, "n = {n}");
        }
    }

    #[test]
    fn totient_and_divisors() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
        for n in 1..200u64 {
            let s: u64 = divisors(n).into_iter().map(euler_phi).sum();
            assert_eq!(s, n);
        }
    }
}
