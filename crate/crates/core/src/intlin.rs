//! Exact integer linear algebra on small matrices: determinants, column
//! Hermite reduction with unimodular tracking, saturated kernels, and
//! rational solves. Everything uses `BigInt`; the matrices in scope have
//! rank at most eight.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;

pub fn mat_from_i64(rows: &[Vec<i64>]) -> IMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IMat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(a: &IMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: IMat = a.to_vec();
    let mut denom = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &denom;
                m[i][j] = v;
            }
        }
        denom = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Column-style Hermite reduction: returns `(h, u)` with `a * u = h`,
/// `u` unimodular, and `h` in column echelon form (pivot columns first,
/// zero columns last).
pub fn column_echelon(a: &IMat) -> (IMat, IMat) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut h: IMat = a.to_vec();
    let mut u = identity(cols);
    let mut pivot_col = 0usize;
    for r in 0..rows {
        if pivot_col >= cols {
            break;
        }
        // gcd out the row r across columns pivot_col..cols
        loop {
            let mut min_col: Option<usize> = None;
            for j in pivot_col..cols {
                if !h[r][j].is_zero() {
                    let better = match min_col {
                        None => true,
                        Some(mc) => h[r][j].abs() < h[r][mc].abs(),
                    };
                    if better {
                        min_col = Some(j);
                    }
                }
            }
            let Some(mc) = min_col else { break };
            swap_cols(&mut h, &mut u, pivot_col, mc);
            let pivot = h[r][pivot_col].clone();
            let mut reduced = false;
            for j in pivot_col + 1..cols {
                if h[r][j].is_zero() {
                    continue;
                }
                let q = div_round(&h[r][j], &pivot);
                if !q.is_zero() {
                    col_axpy(&mut h, &mut u, j, pivot_col, &q);
                }
                if !h[r][j].is_zero() {
                    reduced = true;
                }
            }
            if !reduced {
                break;
            }
        }
        if !h[r][pivot_col].is_zero() {
            if h[r][pivot_col].is_negative() {
                negate_col(&mut h, &mut u, pivot_col);
            }
            pivot_col += 1;
        }
    }
    (h, u)
}

fn swap_cols(h: &mut IMat, u: &mut IMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in h.iter_mut() {
        row.swap(a, b);
    }
    for row in u.iter_mut() {
        row.swap(a, b);
    }
}

fn col_axpy(h: &mut IMat, u: &mut IMat, target: usize, source: usize, q: &BigInt) {
    for row in h.iter_mut() {
        let v = &row[target] - q * &row[source];
        row[target] = v;
    }
    for row in u.iter_mut() {
        let v = &row[target] - q * &row[source];
        row[target] = v;
    }
}

fn negate_col(h: &mut IMat, u: &mut IMat, c: usize) {
    for row in h.iter_mut() {
        row[c] = -row[c].clone();
    }
    for row in u.iter_mut() {
        row[c] = -row[c].clone();
    }
}

/// Rounded division minimizing the remainder.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if (&r * 2u8).abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Saturated integer kernel: a basis of `{v : a v = 0}` over `Z`.
pub fn kernel_basis(a: &IMat) -> Vec<Vec<BigInt>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let (h, u) = column_echelon(a);
    let mut out = Vec::new();
    for j in 0..cols {
        let col_zero = h.iter().all(|row| row[j].is_zero());
        if col_zero {
            out.push(u.iter().map(|row| row[j].clone()).collect());
        }
    }
    out
}

/// Rank over the rationals.
pub fn rank(a: &IMat) -> usize {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    cols - kernel_basis(a).len()
}

/// Divides a vector by the gcd of its entries (primitive representative).
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Solves `a x = b` over the rationals when the solution is unique on the
/// column span; returns `None` if inconsistent or underdetermined entries
/// appear. Used to express vectors in a lattice basis.
pub fn solve_rational(a: &IMat, b: &[BigInt]) -> Option<Vec<crate::Rat>> {
    use crate::Rat;
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            (0..cols + 1)
                .map(|j| {
                    if j < cols {
                        Rat::from_integer(a[i][j].clone())
                    } else {
                        Rat::from_integer(b[i].clone())
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone().recip();
        for j in 0..=cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    if pivots.len() != cols {
        return None; // underdetermined
    }
    let mut x = vec![crate::Rat::zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = m[row][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(&mat_from_i64(&[vec![2, 0], vec![0, 3]])), BigInt::from(6));
        assert_eq!(det(&mat_from_i64(&[vec![0, 1], vec![1, 0]])), BigInt::from(-1));
        assert_eq!(
            det(&mat_from_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]])),
            BigInt::zero()
        );
    }

    #[test]
    fn echelon_is_unimodular() {
        let a = mat_from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let (h, u) = column_echelon(&a);
        assert_eq!(mat_mul(&a, &u), h);
        assert_eq!(det(&u).abs(), BigInt::one());
    }

    #[test]
    fn kernel_of_swap_difference() {
        // M - I for the coordinate swap on Z^2: kernel spanned by (1, 1)
        let a = mat_from_i64(&[vec![-1, 1], vec![1, -1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(primitive(&k[0]).iter().map(|x| x.abs()).collect::<Vec<_>>(),
                   vec![BigInt::one(), BigInt::one()]);
        assert_eq!(k[0][0], k[0][1]);
    }

    #[test]
    fn kernel_is_saturated() {
        // rows span index-2 sublattice tricks: kernel of (2  -2) is (1,1),
        // not (2,2)
        let a = mat_from_i64(&[vec![2, -2]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        let v = primitive(&k[0]);
        assert_eq!(v[0].abs(), BigInt::one());
        assert_eq!(v[0], v[1]);
    }

    #[test]
    fn full_rank_kernel_is_trivial() {
        let a = mat_from_i64(&[vec![-2, 0], vec![0, -2]]); // -I - I
        assert!(kernel_basis(&a).is_empty());
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn rational_solve() {
        let a = mat_from_i64(&[vec![1, 1], vec![0, 2]]);
        let b = vec![BigInt::from(3), BigInt::from(4)];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x[0], crate::rational::rat_int(1));
        assert_eq!(x[1], crate::rational::rat_int(2));
        // inconsistent system
        let a2 = mat_from_i64(&[vec![1], vec![1]]);
        let b2 = vec![BigInt::from(1), BigInt::from(2)];
        assert!(solve_rational(&a2, &b2).is_none());
    }
}
