//! Exact integer and rational linear algebra at desk scale.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Smith normal form carries its
//! unimodular transforms so integer kernels, integer solves and lattice
//! saturation all come from one routine.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Q = BigRational;

pub fn qint(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Identity matrix.
pub fn ident(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0i64; cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] = out[i][j].checked_add(aik.checked_mul(b[k][j]).expect("overflow")).expect("overflow");
            }
        }
    }
    out
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    (0..cols).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Primitive part of an integer vector: divide by the gcd of the entries.
/// The zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let mut g: i64 = 0;
    for &x in v {
        g = num_integer::gcd(g, x);
    }
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Smith normal form `U * A * V = D` with `U`, `V` unimodular and `D`
/// diagonal with nonnegative entries in divisibility order.
pub struct Smith {
    pub d: Vec<Vec<i64>>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> Smith {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d: Vec<Vec<i64>> = a.to_vec();
    let mut u = ident(rows);
    let mut v = ident(cols);

    let mut t = 0usize;
    while t < rows && t < cols {
        // Find a pivot in the submatrix at (t, t).
        let mut pivot = None;
        'outer: for i in t..rows {
            for j in t..cols {
                if d[i][j] != 0 {
                    pivot = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut clean = true;
            // Clear column t below and above the pivot.
            for i in 0..rows {
                if i == t || d[i][t] == 0 {
                    continue;
                }
                let quot = num_integer::Integer::div_floor(&d[i][t], &d[t][t]);
                for j in 0..cols {
                    d[i][j] -= quot * d[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= quot * u[t][j];
                }
                if d[i][t] != 0 {
                    d.swap(t, i);
                    u.swap(t, i);
                    clean = false;
                }
            }
            // Clear row t.
            for j in 0..cols {
                if j == t || d[t][j] == 0 {
                    continue;
                }
                let quot = num_integer::Integer::div_floor(&d[t][j], &d[t][t]);
                for i in 0..rows {
                    d[i][j] -= quot * d[i][t];
                }
                for i in 0..cols {
                    v[i][j] -= quot * v[i][t];
                }
                if d[t][j] != 0 {
                    for row in d.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        t += 1;
    }

    // Nonnegative diagonal.
    let rank = rows.min(cols);
    for i in 0..rank {
        if d[i][i] < 0 {
            for j in 0..cols {
                d[i][j] = -d[i][j];
            }
            for row in v.iter_mut() {
                row[i] = -row[i];
            }
        }
    }
    // Divisibility chain d[i] | d[i+1].
    for i in 0..rank {
        for j in i + 1..rank {
            let (a_, b_) = (d[i][i], d[j][j]);
            if b_ != 0 && a_ != 0 && b_ % a_ != 0 {
                // Standard gcd fix-up: add column j to column i, then re-reduce 2x2 block.
                for r in 0..rows {
                    d[r][i] += d[r][j];
                }
                for r in 0..cols {
                    v[r][i] += v[r][j];
                }
                // Re-run elimination on the 2x2 corner via full pass.
                return smith_continue(d, u, v);
            }
        }
    }
    Smith { d, u, v }
}

fn smith_continue(d: Vec<Vec<i64>>, u0: Vec<Vec<i64>>, v0: Vec<Vec<i64>>) -> Smith {
    let s = smith_normal_form(&d);
    Smith {
        d: s.d,
        u: mat_mul(&s.u, &u0),
        v: mat_mul(&v0, &s.v),
    }
}

/// Elementary divisors (nonzero diagonal of the Smith form).
pub fn elementary_divisors(a: &[Vec<i64>]) -> Vec<i64> {
    let s = smith_normal_form(a);
    let rank = a.len().min(if a.is_empty() { 0 } else { a[0].len() });
    (0..rank).map(|i| s.d[i][i]).filter(|&x| x != 0).collect()
}

pub fn rank(a: &[Vec<i64>]) -> usize {
    elementary_divisors(a).len()
}

/// Basis of the integer kernel `{x : A x = 0}`. The returned basis spans a
/// saturated sublattice (kernels of integer matrices are saturated).
pub fn kernel_basis(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 {
        return ident(cols);
    }
    let s = smith_normal_form(a);
    let mut basis = Vec::new();
    for j in 0..cols {
        let dj = if j < rows { s.d[j][j] } else { 0 };
        if dj == 0 {
            basis.push(s.v.iter().map(|row| row[j]).collect());
        }
    }
    basis
}

/// Kernel basis with an explicit column count, so zero-row systems work.
pub fn kernel_basis_with_dim(a: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    if a.is_empty() {
        return ident(cols);
    }
    kernel_basis(a)
}

/// One integer solution of `A x = b`, if any.
pub fn solve_integer(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 {
        return Some(vec![0; cols]);
    }
    let s = smith_normal_form(a);
    let ub = mat_vec(&s.u, b);
    let mut z = vec![0i64; cols];
    for i in 0..rows {
        let di = if i < cols { s.d[i][i] } else { 0 };
        if di == 0 {
            if ub[i] != 0 {
                return None;
            }
        } else {
            if ub[i] % di != 0 {
                return None;
            }
            z[i] = ub[i] / di;
        }
    }
    Some(mat_vec(&s.v, &z))
}

/// Determinant by Bareiss elimination over i128.
pub fn det(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    assert!(a.iter().all(|r| r.len() == n), "det of non-square matrix");
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    let result = sign * m[n - 1][n - 1];
    i64::try_from(result).expect("determinant overflow")
}

// ---------------------------------------------------------------------------
// Rational elimination
// ---------------------------------------------------------------------------

/// Solve `A x = b` over the rationals. Returns `(particular, kernel_basis)`
/// or `Err` if inconsistent.
pub fn solve_rational(a: &[Vec<Q>], b: &[Q]) -> Result<(Vec<Q>, Vec<Vec<Q>>)> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].clone();
        for j in c..=cols {
            m[r][j] = &m[r][j] / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return Err(Error::NoSolution("inconsistent system".into()));
        }
    }
    let mut particular = vec![Q::zero(); cols];
    for (row_i, &c) in pivots.iter().enumerate() {
        particular[c] = m[row_i][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = Vec::new();
    for &f in &free {
        let mut v = vec![Q::zero(); cols];
        v[f] = Q::one();
        for (row_i, &c) in pivots.iter().enumerate() {
            v[c] = -m[row_i][f].clone();
        }
        kernel.push(v);
    }
    Ok((particular, kernel))
}

/// Inverse of a square rational matrix.
pub fn invert_rational(a: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Q::zero(); n];
        e[j] = Q::one();
        let (sol, kernel) = solve_rational(a, &e)?;
        if !kernel.is_empty() {
            return Err(Error::NoSolution("singular matrix".into()));
        }
        cols.push(sol);
    }
    Ok((0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect())
}

pub fn qmat_vec(a: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| {
            let mut acc = Q::zero();
            for (x, y) in row.iter().zip(v) {
                acc += x * y;
            }
            acc
        })
        .collect()
}

pub fn qdot(a: &[Q], b: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn to_q_vec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| qint(x)).collect()
}

pub fn q_vec_to_int(v: &[Q]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                // Desk scale: entries fit in i64.
                let n = x.to_integer();
                i64::try_from(&n).ok()
            } else {
                None
            }
        })
        .collect()
}

/// Absolute value of a rational.
pub fn qabs(x: &Q) -> Q {
    if x.is_negative() {
        -x.clone()
    } else {
        x.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_diagonal_divides() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let s = smith_normal_form(&a);
        // U*A*V == D
        let uav = mat_mul(&mat_mul(&s.u, &a), &s.v);
        assert_eq!(uav, s.d);
        let divs: Vec<i64> = (0..3).map(|i| s.d[i][i]).collect();
        for w in divs.windows(2) {
            if w[0] != 0 && w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        assert_eq!(det(&s.u).abs(), 1);
        assert_eq!(det(&s.v).abs(), 1);
    }

    #[test]
    fn kernel_of_sum_map() {
        // x + y + z = 0 in Z^3
        let a = vec![vec![1, 1, 1]];
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn integer_solve() {
        let a = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(solve_integer(&a, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve_integer(&a, &[1, 0]), None);
    }

    #[test]
    fn det_values() {
        assert_eq!(det(&vec![vec![1, 0], vec![1, 2]]), 2);
        assert_eq!(det(&vec![vec![1, 1], vec![1, 1]]), 0);
        assert_eq!(det(&ident(4)), 1);
    }

    #[test]
    fn rational_solve_kernel() {
        let a = vec![vec![qint(1), qint(1)]];
        let (p, k) = solve_rational(&a, &[qint(1)]).unwrap();
        assert_eq!(&p[0] + &p[1], qint(1));
        assert_eq!(k.len(), 1);
    }
}
