//! Small dense linear algebra: determinants by partial-pivot elimination,
//! rank with a relative pivot threshold, cofactor vectors, and the
//! least-squares solves used for subspace decompositions.

use crate::error::{Error, Result};

/// Signed determinant of a square matrix given as rows, computed by Gaussian
/// elimination with partial pivoting.
pub fn det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut sign = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            sign = -sign;
        }
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    sign * (0..n).map(|i| a[i][i]).product::<f64>()
}

/// Rank of a rectangular matrix by row elimination. A pivot counts when its
/// magnitude exceeds `tol` times the largest absolute entry of the input.
pub fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let scale = rows
        .iter()
        .flatten()
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let threshold = tol * scale;
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == a.len() {
            break;
        }
        let pivot = (rank..a.len())
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() <= threshold {
            continue;
        }
        a.swap(pivot, rank);
        for row in rank + 1..a.len() {
            let f = a[row][col] / a[rank][col];
            for k in col..ncols {
                a[row][k] -= f * a[rank][k];
            }
        }
        rank += 1;
    }
    rank
}

/// Cofactor vector `v` of the `(n-1) x n` anchor matrix: the unique vector
/// with `det(x, b_2, ..., b_n) = v . x` for every `x`, from first-row
/// cofactor expansion.
pub fn cofactor_vector(anchor_rows: &[Vec<f64>]) -> Vec<f64> {
    let n = anchor_rows.len() + 1;
    debug_assert!(anchor_rows.iter().all(|r| r.len() == n));
    (0..n)
        .map(|i| {
            let minor: Vec<Vec<f64>> = anchor_rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign * det(&minor)
        })
        .collect()
}

/// Solves the square system `A x = b` by partial-pivot elimination.
pub fn solve(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col].abs() < 1e-300 {
            return Err(Error::Decomposition("singular system".into()));
        }
        m.swap(pivot, col);
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = m[row][col] / m[col][col];
            for k in col..=n {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    Ok((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Least-squares coefficients expressing `target` over the given basis rows,
/// via the normal equations. Returns `(coefficients, relative residual)`.
pub fn least_squares(basis_rows: &[Vec<f64>], target: &[f64]) -> Result<(Vec<f64>, f64)> {
    let m = basis_rows.len();
    if m == 0 {
        let norm = target.iter().map(|v| v * v).sum::<f64>().sqrt();
        let scale = norm.max(1.0);
        return Ok((vec![], norm / scale));
    }
    let gram: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| dot(&basis_rows[i], &basis_rows[j]))
                .collect()
        })
        .collect();
    let rhs: Vec<f64> = (0..m).map(|i| dot(&basis_rows[i], target)).collect();
    let coeffs = solve(&gram, &rhs)?;
    let mut residual = 0.0;
    let mut target_norm = 0.0;
    for (k, &t) in target.iter().enumerate() {
        let fit: f64 = (0..m).map(|i| coeffs[i] * basis_rows[i][k]).sum();
        residual += (t - fit) * (t - fit);
        target_norm += t * t;
    }
    let scale = target_norm.sqrt().max(1.0);
    Ok((coeffs, residual.sqrt() / scale))
}

/// Minimum-norm solution `u` of the underdetermined system `B u = values`
/// where `B` has the given independent rows.
pub fn min_norm_solution(rows: &[Vec<f64>], values: &[f64]) -> Result<Vec<f64>> {
    let m = rows.len();
    let d = rows[0].len();
    let gram: Vec<Vec<f64>> = (0..m)
        .map(|i| (0..m).map(|j| dot(&rows[i], &rows[j])).collect())
        .collect();
    let lambda = solve(&gram, values)?;
    Ok((0..d)
        .map(|k| (0..m).map(|i| lambda[i] * rows[i][k]).sum())
        .collect())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
