//! Small dense linear algebra for desk-scale numeric checks: a cyclic
//! Jacobi eigensolver for symmetric matrices, singular values through the
//! Gram matrix, and least-squares residuals via normal equations.
//!
//! None of this backs the symbolic elementary-symmetric path, which works
//! from principal minors and never touches an eigensolver.

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// ascending order. Input is row-major `m x m`.
pub fn symmetric_eigenvalues(matrix: &[Vec<f64>]) -> Vec<f64> {
    let m = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    for row in &a {
        assert_eq!(row.len(), m, "matrix must be square");
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..m {
            for j in (i + 1)..m {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

/// Singular values of a rectangular `rows x cols` matrix, descending,
/// as square roots of the Gram-matrix eigenvalues.
pub fn singular_values(matrix: &[Vec<f64>]) -> Vec<f64> {
    let rows = matrix.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = matrix[0].len();
    // use the smaller Gram matrix
    let k = rows.min(cols);
    let gram: Vec<Vec<f64>> = if rows <= cols {
        (0..rows)
            .map(|i| {
                (0..rows)
                    .map(|j| (0..cols).map(|l| matrix[i][l] * matrix[j][l]).sum())
                    .collect()
            })
            .collect()
    } else {
        (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|j| (0..rows).map(|l| matrix[l][i] * matrix[l][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut sv: Vec<f64> = symmetric_eigenvalues(&gram)
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    sv.reverse();
    sv.truncate(k);
    sv
}

/// Numerical rank: count of singular values above `tol` times the largest
/// (absolute `tol` when the matrix is numerically zero).
pub fn rank_with_tolerance(matrix: &[Vec<f64>], tol: f64) -> usize {
    let sv = singular_values(matrix);
    let top = sv.first().copied().unwrap_or(0.0);
    let cut = if top > tol { tol * top } else { tol };
    sv.iter().filter(|&&s| s > cut).count()
}

/// Least-squares solution of `min_x |A x - b|` by ridge-damped normal
/// equations; adequate for span tests and control initialization.
pub fn least_squares_solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    if cols == 0 {
        return Vec::new();
    }
    // normal matrix with a tiny ridge for rank-deficient spans
    let mut ata = vec![vec![0.0; cols]; cols];
    let mut atb = vec![0.0; cols];
    for i in 0..cols {
        for j in 0..cols {
            ata[i][j] = (0..rows).map(|r| a[r][i] * a[r][j]).sum();
        }
        ata[i][i] += 1e-12;
        atb[i] = (0..rows).map(|r| a[r][i] * b[r]).sum();
    }
    solve_dense(&mut ata, &mut atb)
}

/// Residual norm of the least-squares problem `min_x |A x - b|`.
pub fn least_squares_residual(a: &[Vec<f64>], b: &[f64]) -> f64 {
    let rows = a.len();
    if rows == 0 || a[0].is_empty() {
        return (b.iter().map(|v| v * v).sum::<f64>()).sqrt();
    }
    let cols = a[0].len();
    let x = least_squares_solve(a, b);
    let mut rss = 0.0;
    for r in 0..rows {
        let pred: f64 = (0..cols).map(|cix| a[r][cix] * x[cix]).sum();
        rss += (b[r] - pred) * (b[r] - pred);
    }
    rss.sqrt()
}

/// Gaussian elimination with partial pivoting; consumes its inputs.
pub(crate) fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Vec<f64> {
    let n = a.len();
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        if d.abs() < 1e-300 {
            continue;
        }
        for r in (col + 1)..n {
            let f = a[r][col] / d;
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut s = b[col];
        for c in (col + 1)..n {
            s -= a[col][c] * x[c];
        }
        x[col] = if a[col][col].abs() < 1e-300 {
            0.0
        } else {
            s / a[col][col]
        };
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ];
        let e = symmetric_eigenvalues(&m);
        assert!((e[0] + 1.0).abs() < 1e-12);
        assert!((e[1] - 2.0).abs() < 1e-12);
        assert!((e[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_2x2() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3
        let m = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let e = symmetric_eigenvalues(&m);
        assert!((e[0] - 1.0).abs() < 1e-12);
        assert!((e[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn rank_detects_dependent_columns() {
        let m = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]];
        assert_eq!(rank_with_tolerance(&m, 1e-9), 1);
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_eq!(rank_with_tolerance(&id, 1e-9), 2);
    }

    #[test]
    fn least_squares_exact_span() {
        // b in span of columns -> residual ~ 0
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        let b = [1.0, 2.0, 3.0];
        assert!(least_squares_residual(&a, &b) < 1e-5);
        // b orthogonal to span -> full norm remains
        let a2 = vec![vec![1.0], vec![0.0]];
        let b2 = [0.0, 5.0];
        assert!((least_squares_residual(&a2, &b2) - 5.0).abs() < 1e-6);
    }
}
