//! Small numerical kernels shared across the crate: exactly-folded circular
//! functions, finite-difference derivative estimators, quotient-rule
//! derivative propagation, and tiny dense linear algebra.

/// cos(πx) with argument folding so that the defining symmetries hold
/// bit-for-bit: `cos_pi(-x) == cos_pi(x)` and `cos_pi(1 + x) == cos_pi(1 - x)`.
///
/// The folding keeps radial profiles built on top of it exactly even at the
/// chart cores, which is what makes odd-derivative checks structural instead
/// of approximate.
pub fn cos_pi(x: f64) -> f64 {
    let mut s = x.abs() % 2.0;
    // fold [1,2] -> [0,1]; both subtractions below are exact (Sterbenz)
    if s > 1.0 {
        s = 2.0 - s;
    }
    if s > 0.5 {
        -((std::f64::consts::PI * (1.0 - s)).cos())
    } else {
        (std::f64::consts::PI * s).cos()
    }
}

/// sin(πx) folded like [`cos_pi`]; odd about 0 and about 1, and exactly zero
/// at every integer (`sin_pi(1.0) == 0.0`).
pub fn sin_pi(x: f64) -> f64 {
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let mut s = x.abs() % 2.0;
    let mut sgn = sign;
    if s > 1.0 {
        s = 2.0 - s;
        sgn = -sgn;
    }
    let base = if s > 0.5 {
        (std::f64::consts::PI * (1.0 - s)).sin()
    } else {
        (std::f64::consts::PI * s).sin()
    };
    sgn * base
}

/// Central finite-difference estimate of the k-th derivative (k = 1..=4)
/// with one Richardson extrapolation step. Odd-order stencils are assembled
/// from pair differences f(x+jh) − f(x−jh), so they vanish exactly when f is
/// even about x down to the bit level.
pub fn central_derivative<F: Fn(f64) -> f64>(f: F, x: f64, k: usize, h: f64) -> f64 {
    let d = |h: f64| -> f64 {
        let pair = |j: f64| f(x + j * h) - f(x - j * h);
        match k {
            1 => pair(1.0) / (2.0 * h),
            2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
            3 => (pair(2.0) - 2.0 * pair(1.0)) / (2.0 * h * h * h),
            4 => (f(x + 2.0 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h)
                + f(x - 2.0 * h))
                / (h * h * h * h),
            _ => panic!("central_derivative supports orders 1..=4"),
        }
    };
    // central formulas have error c*h^2 + O(h^4)
    let coarse = d(h);
    let fine = d(h / 2.0);
    (4.0 * fine - coarse) / 3.0
}

/// Central difference for odd orders 5 and 7, in pair-difference form (no
/// Richardson; used where the stencil cancels structurally).
pub fn central_odd_high<F: Fn(f64) -> f64>(f: F, x: f64, k: usize, h: f64) -> f64 {
    let pair = |j: f64| f(x + j * h) - f(x - j * h);
    match k {
        5 => (pair(3.0) - 4.0 * pair(2.0) + 5.0 * pair(1.0)) / (2.0 * h.powi(5)),
        7 => {
            (pair(4.0) - 6.0 * pair(3.0) + 14.0 * pair(2.0) - 14.0 * pair(1.0))
                / (2.0 * h.powi(7))
        }
        _ => panic!("central_odd_high supports orders 5 and 7"),
    }
}

/// Derivatives of a quotient n/d up to `orders`, given derivative arrays of
/// numerator and denominator. Solves Leibniz' rule n^(k) = Σ C(k,j) q^(j) d^(k-j)
/// for q^(k) recursively.
pub fn quotient_derivs(num: &[f64], den: &[f64], orders: usize) -> Vec<f64> {
    const BINOM: [[f64; 5]; 5] = [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0, 0.0],
        [1.0, 3.0, 3.0, 1.0, 0.0],
        [1.0, 4.0, 6.0, 4.0, 1.0],
    ];
    assert!(orders <= 4 && num.len() > orders && den.len() > orders);
    let mut q = vec![0.0; orders + 1];
    for k in 0..=orders {
        let mut acc = num[k];
        for j in 0..k {
            acc -= BINOM[k][j] * q[j] * den[k - j];
        }
        q[k] = acc / den[0];
    }
    q
}

/// Solve a small dense linear system by Gaussian elimination with partial
/// pivoting. Returns `None` on (numerical) singularity.
pub fn solve_dense(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-14 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            let (pivot_rows, rest) = m.split_at_mut(row);
            let pivot_row = &pivot_rows[col];
            for (entry, pivot_entry) in rest[0][col..].iter_mut().zip(&pivot_row[col..]) {
                *entry -= factor * pivot_entry;
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in row + 1..n {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

/// Cholesky factorization test for a symmetric 3×3 matrix; true iff SPD.
pub fn is_spd_3x3(g: &[[f64; 3]; 3]) -> bool {
    let mut l = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..=i {
            let mut sum = g[i][j];
            for (lik, ljk) in l[i][..j].iter().zip(&l[j][..j]) {
                sum -= lik * ljk;
            }
            if i == j {
                if sum <= 0.0 {
                    return false;
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    true
}

/// FNV-1a 64-bit hash, hex-encoded; used for reproducible input digests.
pub fn fnv1a_hex(data: &str) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in data.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_pi_symmetries_are_exact() {
        // evenness about 0 is exact for every argument
        for &h in &[1e-4, 3.7e-4, 0.123, 0.499] {
            assert_eq!(cos_pi(h), cos_pi(-h));
        }
        // reflection about 1 is exact when 1 ± h are exact reflections,
        // i.e. for dyadic offsets
        for &h in &[0.25, 0.0078125, 2.0f64.powi(-20)] {
            assert_eq!(cos_pi(1.0 + h), cos_pi(1.0 - h));
        }
        assert_eq!(cos_pi(0.0), 1.0);
        assert_eq!(cos_pi(1.0), -1.0);
        assert_eq!(sin_pi(1.0), 0.0);
        assert_eq!(sin_pi(0.0), 0.0);
        assert!((cos_pi(0.5)).abs() < 1e-16);
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sin_pi_odd_about_integers() {
        for &h in &[0.25, 0.0078125, 2.0f64.powi(-18)] {
            assert_eq!(sin_pi(1.0 + h), -sin_pi(1.0 - h));
        }
        for &h in &[1e-5, 0.2, 0.49] {
            assert_eq!(sin_pi(-h), -sin_pi(h));
        }
    }

    #[test]
    fn central_derivative_matches_analytic() {
        // steps chosen above the k-th order noise floor eps/h^k
        let f = |x: f64| x.exp();
        let exact = 0.3f64.exp();
        for (k, h, tol) in [
            (1, 1e-3, 1e-10),
            (2, 1e-3, 1e-7),
            (3, 2e-2, 1e-5),
            (4, 5e-2, 1e-4),
        ] {
            let est = central_derivative(f, 0.3, k, h);
            assert!(
                (est - exact).abs() < tol,
                "order {k}: {est} vs {exact}"
            );
        }
    }

    #[test]
    fn quotient_derivs_against_closed_form() {
        // n(x) = x^2, d(x) = 1 + x at x = 0.5; q = x^2/(1+x)
        let x: f64 = 0.5;
        let num = [x * x, 2.0 * x, 2.0, 0.0, 0.0];
        let den = [1.0 + x, 1.0, 0.0, 0.0, 0.0];
        let q = quotient_derivs(&num, &den, 4);
        let f = |x: f64| x * x / (1.0 + x);
        assert!((q[0] - f(x)).abs() < 1e-14);
        for (k, h, tol) in [(1usize, 1e-3, 1e-9), (2, 1e-3, 1e-7), (3, 1e-2, 1e-6)] {
            let fd = central_derivative(f, x, k, h);
            assert!((q[k] - fd).abs() < tol, "k={k}: {} vs {}", q[k], fd);
        }
    }

    #[test]
    fn solve_dense_small_system() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve_dense(&a, &[5.0, 10.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn spd_detects_signature() {
        let good = [[2.0, 0.1, 0.0], [0.1, 1.0, 0.2], [0.0, 0.2, 3.0]];
        let bad = [[1.0, 2.0, 0.0], [2.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert!(is_spd_3x3(&good));
        assert!(!is_spd_3x3(&bad));
    }
}
