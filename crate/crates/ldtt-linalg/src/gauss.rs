//! Gaussian elimination: rref, null spaces, solving.

use crate::Mat;

/// Result of reduction to reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub(crate) fn rref(m: &Mat) -> Rref {
    let mut a = m.clone();
    let p = a.modulus();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // find pivot in column c at or below row r
        let mut piv = None;
        for i in r..rows {
            if a.get(i, c) != 0 {
                piv = Some(i);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        // swap rows piv and r
        if piv != r {
            for j in 0..cols {
                let x = a.get(r, j);
                let y = a.get(piv, j);
                a.set(r, j, y);
                a.set(piv, j, x);
            }
        }
        // normalize row r
        let inv = a.inv_entry(a.get(r, c));
        for j in 0..cols {
            let v = a.get(r, j) * inv % p;
            a.set(r, j, v);
        }
        // eliminate all other rows
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c);
            if f == 0 {
                continue;
            }
            for j in 0..cols {
                let v = (a.get(i, j) + (p - f) * a.get(r, j)) % p;
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { mat: a, rank: r, pivots }
}

pub(crate) fn kernel_basis(m: &Mat) -> Mat {
    let p = m.modulus();
    let cols = m.cols();
    let r = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !r.pivots.contains(c)).collect();
    let mut out = Mat::zeros(cols, free.len(), p);
    for (k, &fc) in free.iter().enumerate() {
        out.set(fc, k, 1);
        for (row, &pc) in r.pivots.iter().enumerate() {
            let v = r.mat.get(row, fc);
            out.set(pc, k, (p - v) % p);
        }
    }
    out
}

pub(crate) fn solve(m: &Mat, v: &Mat) -> Option<Mat> {
    if m.rows() != v.rows() || m.modulus() != v.modulus() {
        return None;
    }
    let p = m.modulus();
    let aug = m.hstack(v).ok()?;
    let r = rref(&aug);
    // inconsistent if a pivot lands in the augmented block
    if r.pivots.iter().any(|&c| c >= m.cols()) {
        return None;
    }
    let mut x = Mat::zeros(m.cols(), v.cols(), p);
    for (row, &pc) in r.pivots.iter().enumerate() {
        for j in 0..v.cols() {
            x.set(pc, j, r.mat.get(row, m.cols() + j));
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_canonical_small() {
        let m = Mat::new(2, 3, 2, vec![1, 1, 0, 1, 0, 1]).unwrap();
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.mat, Mat::new(2, 3, 2, vec![1, 0, 1, 0, 1, 1]).unwrap());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Mat::new(2, 2, 3, vec![1, 1, 2, 2]).unwrap();
        let good = Mat::new(2, 1, 3, vec![1, 2]).unwrap();
        let x = solve(&m, &good).unwrap();
        assert_eq!(m.matmul(&x).unwrap(), good);
        let bad = Mat::new(2, 1, 3, vec![1, 1]).unwrap();
        assert!(solve(&m, &bad).is_none());
    }
}
