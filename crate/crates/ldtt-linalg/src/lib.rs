//! Exact dense linear algebra over the prime fields GF(p).
//!
//! Everything here is integer arithmetic modulo a prime; there is no floating
//! point anywhere. Matrices are small (desk scale), stored row-major.

use thiserror::Error;

mod gauss;

pub use gauss::Rref;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is not invertible")]
    NotInvertible,
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// Trial-division primality check; moduli here are tiny.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid; a is nonzero mod p, p prime
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inv_mod of non-unit");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

/// A rows x cols matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    p: u64,
    entries: Vec<u64>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, p: u64, entries: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::DimMismatch(format!(
                "{}x{} needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|e| e % p).collect();
        Ok(Mat { rows, cols, p, entries })
    }

    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        Mat { rows, cols, p, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Mat::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, p: u64, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j) % p);
            }
        }
        Mat { rows, cols, p, entries }
    }

    /// Standard basis column e_i as an n x 1 matrix.
    pub fn basis_col(n: usize, i: usize, p: u64) -> Self {
        let mut m = Mat::zeros(n, 1, p);
        m.set(i, 0, 1);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_mod(&self, other: &Mat) -> Result<()> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_mod(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Ok(Mat { rows: self.rows, cols: self.cols, p: self.p, entries })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.check_mod(other)?;
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        let entries = self.entries.iter().map(|&a| (self.p - a) % self.p).collect();
        Mat { rows: self.rows, cols: self.cols, p: self.p, entries }
    }

    pub fn scale(&self, c: u64) -> Mat {
        let c = c % self.p;
        let entries = self.entries.iter().map(|&a| a * c % self.p).collect();
        Mat { rows: self.rows, cols: self.cols, p: self.p, entries }
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        self.check_mod(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimMismatch(format!(
                "matmul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % self.p;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with lexicographic (left-major) index order:
    /// row (i1, i2) of a (x) b is i1 * b.rows + i2.
    pub fn kron(&self, other: &Mat) -> Result<Mat> {
        self.check_mod(other)?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Mat::zeros(rows, cols, self.p);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let v = a * other.get(i2, j2) % self.p;
                        out.set(i1 * other.rows + i2, j1 * other.cols + j2, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal direct sum.
    pub fn dsum(&self, other: &Mat) -> Result<Mat> {
        self.check_mod(other)?;
        let mut out = Mat::zeros(self.rows + other.rows, self.cols + other.cols, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.p, |i, j| self.get(j, i))
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.check_mod(other)?;
        if self.rows != other.rows {
            return Err(LinalgError::DimMismatch(format!(
                "hstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Mat::from_fn(self.rows, self.cols + other.cols, self.p, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    /// Vertical concatenation [self / other].
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.check_mod(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::DimMismatch(format!(
                "vstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Mat::from_fn(self.rows + other.rows, self.cols, self.p, |i, j| {
            if i < self.rows {
                self.get(i, j)
            } else {
                other.get(i - self.rows, j)
            }
        }))
    }

    pub fn col(&self, j: usize) -> Mat {
        Mat::from_fn(self.rows, 1, self.p, |i, _| self.get(i, j))
    }

    /// Reduced row echelon form, the rank and the pivot columns.
    pub fn rref(&self) -> Rref {
        gauss::rref(self)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns span the null space; rank + nullity = cols.
    pub fn kernel_basis(&self) -> Mat {
        gauss::kernel_basis(self)
    }

    /// A surjection proj with proj * self = 0 and proj of full row rank
    /// rows(self) - rank(self).
    pub fn cokernel(&self) -> (Mat, usize) {
        let proj = self.transpose().kernel_basis().transpose();
        let dim = proj.rows();
        (proj, dim)
    }

    /// Any solution x of self * x = v (column by column), or None.
    pub fn solve(&self, v: &Mat) -> Option<Mat> {
        gauss::solve(self, v)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(LinalgError::DimMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let id = Mat::identity(self.rows, self.p);
        self.solve(&id).ok_or(LinalgError::NotInvertible)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub(crate) fn inv_entry(&self, a: u64) -> u64 {
        inv_mod(a, self.p)
    }

}

impl std::fmt::Display for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation matrix sending basis vector j to basis vector perm[j].
pub fn perm_mat(perm: &[usize], p: u64) -> Mat {
    let n = perm.len();
    let mut m = Mat::zeros(n, n, p);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, 1);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rand_mat(rows: usize, cols: usize, p: u64, seed: &mut u64) -> Mat {
        Mat::from_fn(rows, cols, p, |_, _| {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (*seed >> 33) % p
        })
    }

    #[test]
    fn identity_is_neutral() {
        let mut s = 7;
        let m = rand_mat(3, 4, 5, &mut s);
        assert_eq!(Mat::identity(3, 5).matmul(&m).unwrap(), m);
        assert_eq!(m.matmul(&Mat::identity(4, 5)).unwrap(), m);
    }

    #[test]
    fn kron_dims_multiply() {
        let a = Mat::zeros(2, 3, 2);
        let b = Mat::zeros(5, 7, 2);
        let k = a.kron(&b).unwrap();
        assert_eq!((k.rows(), k.cols()), (10, 21));
    }

    #[test]
    fn kron_on_vectors_is_elementwise() {
        // (a (x) b)(x (x) y) = ax (x) by, checked elementwise at p = 2, dims <= 4
        let mut s = 42;
        for _ in 0..20 {
            let a = rand_mat(3, 4, 2, &mut s);
            let b = rand_mat(2, 3, 2, &mut s);
            let x = rand_mat(4, 1, 2, &mut s);
            let y = rand_mat(3, 1, 2, &mut s);
            let lhs = a.kron(&b).unwrap().matmul(&x.kron(&y).unwrap()).unwrap();
            let rhs = a.matmul(&x).unwrap().kron(&b.matmul(&y).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let z = Mat::zeros(4, 4, 3);
        assert_eq!(z.kernel_basis().cols(), 4);
    }

    #[test]
    fn cokernel_of_identity_is_trivial() {
        let (_, dim) = Mat::identity(5, 2).cokernel();
        assert_eq!(dim, 0);
    }

    #[test]
    fn cokernel_exactness() {
        let mut s = 11;
        for &p in &[2u64, 3, 5] {
            for _ in 0..30 {
                let m = rand_mat(4, 3, p, &mut s);
                let (proj, dim) = m.cokernel();
                assert!(proj.matmul(&m).unwrap().is_zero());
                assert_eq!(dim, m.rows() - m.rank());
                assert_eq!(proj.rank(), dim);
            }
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = Mat::new(2, 2, 5, vec![1, 2, 3, 4]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv).unwrap(), Mat::identity(2, 5));
        assert_eq!(inv.matmul(&m).unwrap(), Mat::identity(2, 5));
        let singular = Mat::new(2, 2, 5, vec![1, 2, 2, 4]).unwrap();
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn modulus_mismatch_reported() {
        let a = Mat::zeros(2, 2, 2);
        let b = Mat::zeros(2, 2, 3);
        assert!(matches!(a.matmul(&b), Err(LinalgError::ModulusMismatch(2, 3))));
    }

    #[test]
    fn perm_mat_permutes() {
        let m = perm_mat(&[2, 0, 1], 2);
        let e0 = Mat::basis_col(3, 0, 2);
        assert_eq!(m.matmul(&e0).unwrap(), Mat::basis_col(3, 2, 2));
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..6, cols in 1usize..6, pi in 0usize..3, seed in any::<u64>()) {
            let p = [2u64, 3, 5][pi];
            let mut s = seed | 1;
            let m = rand_mat(rows, cols, p, &mut s);
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), cols);
            if k.cols() > 0 {
                prop_assert!(m.matmul(&k).unwrap().is_zero());
                prop_assert_eq!(k.rank(), k.cols());
            }
        }

        #[test]
        fn kron_interchange(seed in any::<u64>()) {
            // (a . c) (x) (b . d) = (a (x) b) . (c (x) d)
            let mut s = seed | 1;
            let a = rand_mat(2, 3, 3, &mut s);
            let c = rand_mat(3, 2, 3, &mut s);
            let b = rand_mat(3, 2, 3, &mut s);
            let d = rand_mat(2, 3, 3, &mut s);
            let lhs = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap()).unwrap();
            let rhs = a.kron(&b).unwrap().matmul(&c.kron(&d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rref_is_idempotent(seed in any::<u64>()) {
            let mut s = seed | 1;
            let m = rand_mat(4, 5, 2, &mut s);
            let r1 = m.rref();
            let r2 = r1.mat.rref();
            prop_assert_eq!(r1.mat, r2.mat);
            prop_assert_eq!(r1.rank, r2.rank);
        }
    }
}
