//! Exact linear algebra: fraction-free (Bareiss) integer determinants and
//! rational Gaussian elimination. Everything here is deliberately dense and
//! allocation-heavy; desk-scale exactness beats asymptotic cleverness.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Determinant by the Bareiss one-step fraction-free scheme. All divisions
/// are exact; intermediate entries are minors of the input, so magnitudes
/// stay bounded by the Hadamard bound rather than exploding.
pub fn bareiss_det(mut a: Vec<Vec<Int>>) -> Int {
    let n = a.len();
    if n == 0 {
        return Int::one();
    }
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut sign = 1i64;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                // Still must rescale trailing entries to keep the scheme
                // consistent? No: with a_ik = 0 the update reduces to
                // a_ij <- a_kk * a_ij / prev, which is required.
                for j in k + 1..n {
                    if !a[i][j].is_zero() {
                        a[i][j] = &a[k][k] * &a[i][j] / &prev;
                    }
                }
                continue;
            }
            for j in k + 1..n {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let d = std::mem::take(&mut a[n - 1][n - 1]);
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Solves A·X = B over the rationals by Gauss–Jordan elimination with
/// partial pivoting; returns None when A is singular. Zero multipliers are
/// skipped, which keeps banded inputs (path/cycle/star Laplacians) cheap.
pub fn rat_solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Vec<Rat>>) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    for k in 0..n {
        let pivot_row = (k..n).max_by_key(|&r| a[r][k].abs())?;
        if a[pivot_row][k].is_zero() {
            return None;
        }
        a.swap(k, pivot_row);
        b.swap(k, pivot_row);
        let inv = a[k][k].recip();
        for x in a[k].iter_mut().skip(k) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for x in b[k].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut a[i][k], Rat::zero());
            for j in k + 1..n {
                if !a[k][j].is_zero() {
                    let t = &a[k][j] * &f;
                    a[i][j] -= t;
                }
            }
            for j in 0..b[0].len() {
                if !b[k][j].is_zero() {
                    let t = &b[k][j] * &f;
                    b[i][j] -= t;
                }
            }
        }
    }
    for k in (1..n).rev() {
        for i in 0..k {
            if a[i][k].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut a[i][k], Rat::zero());
            for j in 0..b[0].len() {
                if !b[k][j].is_zero() {
                    let t = &b[k][j] * &f;
                    b[i][j] -= t;
                }
            }
        }
    }
    Some(b)
}

/// Exact inverse of an integer matrix, as rationals.
pub fn rat_inverse(a: &[Vec<Int>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let ar: Vec<Vec<Rat>> = a.iter().map(|r| r.iter().map(rat_int).collect()).collect();
    let mut id = vec![vec![Rat::zero(); n]; n];
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    rat_solve(ar, id)
}
