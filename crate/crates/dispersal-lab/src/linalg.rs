//! Tridiagonal direct solvers: the Thomas algorithm and its periodic
//! (tridiagonal-plus-corners) variant via the Sherman-Morrison formula.

/// Solve a tridiagonal system. `sub[i]` multiplies `x[i]` in row `i + 1`,
/// `sup[i]` multiplies `x[i + 1]` in row `i`.
pub fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    debug_assert_eq!(sub.len(), n - 1);
    debug_assert_eq!(sup.len(), n - 1);
    debug_assert_eq!(rhs.len(), n);

    let mut c = vec![0.0; n - 1];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i - 1] * c[i - 1];
        if i < n - 1 {
            c[i] = sup[i] / denom;
        }
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        let next = d[i + 1];
        d[i] -= c[i] * next;
    }
    d
}

/// Solve a cyclic tridiagonal system with corner entries
/// `A[0][n-1] = corner_top` and `A[n-1][0] = corner_bottom`.
pub fn solve_periodic_tridiagonal(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    corner_top: f64,
    corner_bottom: f64,
    rhs: &[f64],
) -> Vec<f64> {
    let n = diag.len();
    assert!(n >= 3, "cyclic solve needs at least 3 unknowns");

    // A = T + u v^T with u = (gamma, 0, .., 0, corner_bottom),
    // v = (1, 0, .., 0, corner_top / gamma). A large gamma keeps the first
    // pivot of T well away from zero even when A is nearly singular.
    let scale = diag.iter().fold(0.0f64, |m, d| m.max(d.abs())).max(1.0);
    let gamma = -scale;

    let mut t_diag = diag.to_vec();
    t_diag[0] -= gamma;
    t_diag[n - 1] -= corner_top * corner_bottom / gamma;

    let y = solve_tridiagonal(sub, &t_diag, sup, rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = corner_bottom;
    let z = solve_tridiagonal(sub, &t_diag, sup, &u);

    let vy = y[0] + corner_top / gamma * y[n - 1];
    let vz = z[0] + corner_top / gamma * z[n - 1];
    let factor = vy / (1.0 + vz);
    y.iter().zip(&z).map(|(yi, zi)| yi - factor * zi).collect()
}

pub fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // dense Gaussian-elimination oracle for small systems
    fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
        let n = b.len();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
                .unwrap();
            a.swap(col, pivot);
            b.swap(col, pivot);
            for row in col + 1..n {
                let f = a[row][col] / a[col][col];
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
        let mut x = vec![0.0; n];
        for row in (0..n).rev() {
            let mut s = b[row];
            for k in row + 1..n {
                s -= a[row][k] * x[k];
            }
            x[row] = s / a[row][row];
        }
        x
    }

    #[test]
    fn thomas_matches_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [3usize, 5, 17] {
            let diag: Vec<f64> = (0..n).map(|_| 4.0 + rng.gen::<f64>()).collect();
            let sub: Vec<f64> = (0..n - 1).map(|_| rng.gen::<f64>() - 0.5).collect();
            let sup: Vec<f64> = (0..n - 1).map(|_| rng.gen::<f64>() - 0.5).collect();
            let rhs: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();

            let mut a = vec![vec![0.0; n]; n];
            for i in 0..n {
                a[i][i] = diag[i];
                if i + 1 < n {
                    a[i][i + 1] = sup[i];
                    a[i + 1][i] = sub[i];
                }
            }
            let expect = dense_solve(a, rhs.clone());
            let got = solve_tridiagonal(&sub, &diag, &sup, &rhs);
            for (g, e) in got.iter().zip(&expect) {
                assert!((g - e).abs() < 1e-10, "{g} vs {e}");
            }
        }
    }

    #[test]
    fn cyclic_matches_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [3usize, 6, 21] {
            let diag: Vec<f64> = (0..n).map(|_| 5.0 + rng.gen::<f64>()).collect();
            let sub: Vec<f64> = (0..n - 1).map(|_| rng.gen::<f64>() - 0.5).collect();
            let sup: Vec<f64> = (0..n - 1).map(|_| rng.gen::<f64>() - 0.5).collect();
            let ct = rng.gen::<f64>() - 0.5;
            let cb = rng.gen::<f64>() - 0.5;
            let rhs: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();

            let mut a = vec![vec![0.0; n]; n];
            for i in 0..n {
                a[i][i] = diag[i];
                if i + 1 < n {
                    a[i][i + 1] = sup[i];
                    a[i + 1][i] = sub[i];
                }
            }
            a[0][n - 1] += ct;
            a[n - 1][0] += cb;
            let expect = dense_solve(a, rhs.clone());
            let got = solve_periodic_tridiagonal(&sub, &diag, &sup, ct, cb, &rhs);
            for (g, e) in got.iter().zip(&expect) {
                assert!((g - e).abs() < 1e-9, "n={n}: {g} vs {e}");
            }
        }
    }
}
