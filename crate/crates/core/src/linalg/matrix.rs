//! Dense square matrices over an exact ring.

use std::fmt;

use num_traits::{FromPrimitive, Num, Signed};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Square matrix with entries in an exact ring, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Clone + Num> Matrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Malformed("matrix has no rows".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Malformed(format!(
                    "matrix is not square: row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Matrix { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            entries: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![T::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = T::one();
        }
        Matrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn map<U: Clone + Num>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = T::zero();
                for k in 0..d {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * other.get(k, j).clone();
                }
                entries.push(acc);
            }
        }
        Matrix { dim: d, entries }
    }

    /// `self + c·I`.
    pub fn add_scalar_identity(&self, c: &T) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            let idx = i * self.dim + i;
            out.entries[idx] = out.entries[idx].clone() + c.clone();
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    /// `Mⁿ` by binary exponentiation; `M⁰ = I`.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut result = Matrix::identity(self.dim);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Consecutive powers `M¹, M², …`, each obtained from the previous one.
    pub fn powers(&self) -> PowerChain<'_, T> {
        PowerChain {
            base: self,
            current: None,
        }
    }

    /// Block-diagonal matrix `blocks[0] ⊕ blocks[1] ⊕ …`.
    pub fn direct_sum(blocks: &[Matrix<T>]) -> Self {
        let dim: usize = blocks.iter().map(|b| b.dim).sum();
        let mut entries = vec![T::zero(); dim * dim];
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    entries[(offset + i) * dim + offset + j] = b.get(i, j).clone();
                }
            }
            offset += b.dim;
        }
        Matrix { dim, entries }
    }

    /// Determinant by Bareiss fraction-free elimination. Every division is exact.
    pub fn det(&self) -> T {
        let n = self.dim;
        let mut a: Vec<Vec<T>> = self.rows();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = v / prev.clone();
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            T::zero() - d
        } else {
            d
        }
    }

    /// Determinant by Laplace expansion along the first row. Exponential cost;
    /// intended for small matrices and as a cross-check of [`Matrix::det`].
    pub fn det_cofactor(&self) -> T {
        fn go<T: Clone + Num>(m: &[Vec<T>]) -> T {
            let n = m.len();
            match n {
                1 => return m[0][0].clone(),
                2 => return m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
                _ => {}
            }
            let mut acc = T::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][col].clone() * go(&minor);
                acc = if col % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        go(&self.rows())
    }

    /// `det(Mⁿ − I)`.
    pub fn det_power_minus_identity(&self, n: u64) -> T {
        self.pow(n).add_scalar_identity(&(T::zero() - T::one())).det()
    }
}

impl<T: Clone + Num + FromPrimitive> Matrix<T> {
    /// Characteristic polynomial `det(xI − M)` by the Faddeev–LeVerrier
    /// recurrence. The divisions by `k` are exact over the integers.
    pub fn char_poly(&self) -> Poly<T> {
        let d = self.dim;
        let mut coeffs = vec![T::zero(); d + 1];
        coeffs[d] = T::one();
        let mut aux = Matrix::<T>::zeros(d);
        let mut c_prev = T::one();
        for k in 1..=d {
            aux = self.mul(&aux.add_scalar_identity(&c_prev));
            let kk = T::from_usize(k).expect("dimension fits in the scalar type");
            let c = (T::zero() - aux.trace()) / kk;
            coeffs[d - k] = c.clone();
            c_prev = c;
        }
        Poly::new(coeffs)
    }
}

impl<T: Clone + Num + Signed> Matrix<T> {
    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }
}

/// Iterator over `M¹, M², M³, …`.
pub struct PowerChain<'a, T> {
    base: &'a Matrix<T>,
    current: Option<Matrix<T>>,
}

impl<T: Clone + Num> Iterator for PowerChain<'_, T> {
    type Item = Matrix<T>;

    fn next(&mut self) -> Option<Matrix<T>> {
        let next = match &self.current {
            None => self.base.clone(),
            Some(m) => m.mul(self.base),
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.dim {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.dim {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.entries[i * self.dim + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    }

    fn a() -> Matrix<BigInt> {
        int(&[&[0, 0, 0, -1], &[1, 0, 0, 8], &[0, 1, 0, -6], &[0, 0, 1, 8]])
    }

    #[test]
    fn rejects_ragged_and_empty() {
        assert!(Matrix::<i64>::new(vec![]).is_err());
        assert!(Matrix::new(vec![vec![1i64, 2], vec![3]]).is_err());
    }

    #[test]
    fn power_zero_and_one() {
        assert_eq!(a().pow(0), Matrix::identity(4));
        assert_eq!(a().pow(1), a());
    }

    #[test]
    fn square_matches_naive_triple_loop() {
        let m = a();
        let rows = m.rows();
        let mut naive = vec![vec![BigInt::from(0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    naive[i][j] += &rows[i][k] * &rows[k][j];
                }
            }
        }
        assert_eq!(m.pow(2), Matrix::new(naive).unwrap());
    }

    #[test]
    fn power_chain_agrees_with_binary_powers() {
        let m = a();
        for (n, p) in m.powers().take(12).enumerate() {
            assert_eq!(p, m.pow(n as u64 + 1));
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(Matrix::<BigInt>::identity(5).det(), BigInt::from(1));
        assert_eq!(a().det(), BigInt::from(1));
        assert_eq!(a().det_cofactor(), BigInt::from(1));
        assert_eq!(int(&[&[2, 1], &[1, 1]]).det(), BigInt::from(1));
        // needs a row swap in elimination
        let m = int(&[&[0, 2, 1], &[3, 0, 4], &[1, 1, 0]]);
        assert_eq!(m.det(), m.det_cofactor());
        assert_eq!(m.det(), BigInt::from(11));
    }

    #[test]
    fn det_power_minus_identity_examples() {
        assert_eq!(a().det_power_minus_identity(1), BigInt::from(-8));
        assert_eq!(a().det_power_minus_identity(2), BigInt::from(-192));
        let rot = int(&[&[0, -1], &[1, 0]]);
        assert_eq!(rot.det_power_minus_identity(4), BigInt::from(0));
    }

    #[test]
    fn char_poly_examples() {
        let id = Matrix::<BigInt>::identity(2).char_poly();
        assert_eq!(id, Poly::from_i64(&[1, -2, 1]));
        assert_eq!(a().char_poly(), Poly::from_i64(&[1, -8, 6, -8, 1]));
        assert_eq!(int(&[&[2, 1], &[1, 1]]).char_poly(), Poly::from_i64(&[1, -3, 1]));
    }

    #[test]
    fn generic_over_machine_integers() {
        let m = Matrix::new(vec![vec![2i64, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.pow(5).det(), 1);
        assert_eq!(m.char_poly(), Poly::new(vec![1i64, -3, 1]));
    }

    #[test]
    fn direct_sum_layout() {
        let s = Matrix::direct_sum(&[int(&[&[2]]), int(&[&[1, 1], &[0, 1]])]);
        assert_eq!(s, int(&[&[2, 0, 0], &[0, 1, 1], &[0, 0, 1]]));
        assert_eq!(s.det(), BigInt::from(2));
    }
}
