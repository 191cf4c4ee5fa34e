//! Eigendecomposition of a real symmetric arrowhead matrix via its secular
//! equation.
//!
//! The matrix is nonzero only in the first row/column and on the diagonal:
//!
//! ```text
//!     [ head  w_0  w_1  ...  w_{m-1} ]
//!     [ w_0   p_0               0    ]
//!     [ w_1        p_1               ]
//!     [ ...             ...          ]
//!     [ w_{m-1}  0          p_{m-1}  ]
//! ```
//!
//! With distinct poles p_0 < p_1 < ... and nonzero couplings, the
//! eigenvalues are the roots of
//!
//! ```text
//!     f(λ) = λ − head − Σ_j w_j² / (λ − p_j)
//! ```
//!
//! and strictly interlace the poles: λ_0 < p_0 < λ_1 < ... < p_{m-1} < λ_m.
//! Each root is bracketed by its two neighbouring poles and solved in the
//! shifted variable μ = λ − p_a, where p_a is the nearer pole. Working in μ
//! keeps the dominant denominator λ − p_a exact, which is what makes the
//! eigenvectors v_j ∝ w_j/(λ − p_j) accurate even when an eigenvalue sits
//! within O(w²) of its pole. Cost is O(m) per eigenvalue, O(m²) total.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::Error;

/// Result of the arrowhead eigendecomposition: ascending eigenvalues and the
/// orthonormal eigenvector matrix (columns, in the input basis order: head
/// first, then poles).
pub struct ArrowheadEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

/// Decompose the arrowhead matrix defined by `head`, `poles` and `couplings`.
///
/// `poles` must be strictly increasing and `couplings` the same length.
/// Zero couplings are deflated exactly: the corresponding pole is its own
/// eigenvalue with a basis eigenvector.
pub fn decompose(head: f64, poles: &[f64], couplings: &[f64]) -> Result<ArrowheadEigen, Error> {
    if poles.len() != couplings.len() {
        return Err(Error::Parameter(
            "poles and couplings must have equal length".into(),
        ));
    }
    if poles.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter("poles must be strictly increasing".into()));
    }
    if !head.is_finite()
        || poles.iter().any(|p| !p.is_finite())
        || couplings.iter().any(|w| !w.is_finite())
    {
        return Err(Error::Parameter("arrowhead entries must be finite".into()));
    }

    // Split off exactly-decoupled levels.
    let active: Vec<usize> = (0..poles.len()).filter(|&j| couplings[j] != 0.0).collect();
    let n_total = poles.len() + 1;

    let ap: Vec<f64> = active.iter().map(|&j| poles[j]).collect();
    let aw: Vec<f64> = active.iter().map(|&j| couplings[j]).collect();
    let core = solve_active(head, &ap, &aw);

    // Merge the active eigenpairs with the deflated (pole, basis vector)
    // pairs into a single ascending spectrum.
    let deflated: Vec<usize> = (0..poles.len()).filter(|&j| couplings[j] == 0.0).collect();
    let mut order: Vec<(f64, Result<usize, usize>)> = Vec::with_capacity(n_total);
    for (i, &lam) in core.eigenvalues.iter().enumerate() {
        order.push((lam, Ok(i)));
    }
    for &j in &deflated {
        order.push((poles[j], Err(j)));
    }
    order.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut eigenvalues = Vec::with_capacity(n_total);
    let mut q = DMatrix::<f64>::zeros(n_total, n_total);
    for (col, (lam, src)) in order.into_iter().enumerate() {
        eigenvalues.push(lam);
        match src {
            Ok(i) => {
                // Active eigenvector: head component plus one entry per
                // active pole, scattered back to the full basis.
                q[(0, col)] = core.head_components[i];
                for (k, &j) in active.iter().enumerate() {
                    q[(j + 1, col)] = core.pole_components[i][k];
                }
            }
            Err(j) => q[(j + 1, col)] = 1.0,
        }
    }

    Ok(ArrowheadEigen {
        eigenvalues,
        eigenvectors: q,
    })
}

struct ActiveEigen {
    eigenvalues: Vec<f64>,
    head_components: Vec<f64>,
    pole_components: Vec<Vec<f64>>,
}

/// Secular-equation solve for the fully-coupled subproblem.
fn solve_active(head: f64, poles: &[f64], couplings: &[f64]) -> ActiveEigen {
    let m = poles.len();
    if m == 0 {
        return ActiveEigen {
            eigenvalues: vec![head],
            head_components: vec![1.0],
            pole_components: vec![vec![]],
        };
    }

    let w2: Vec<f64> = couplings.iter().map(|w| w * w).collect();
    let s2: f64 = w2.iter().sum();

    // 2x2-block bounds for the two exterior eigenvalues.
    let lower = {
        let mid = 0.5 * (head + poles[0]);
        let rad = (0.25 * (head - poles[0]).powi(2) + s2).sqrt();
        mid - rad
    };
    let upper = {
        let mid = 0.5 * (head + poles[m - 1]);
        let rad = (0.25 * (head - poles[m - 1]).powi(2) + s2).sqrt();
        mid + rad
    };

    let roots: Vec<Root> = (0..=m)
        .into_par_iter()
        .map(|i| {
            let (anchor, lo, hi) = bracket(i, head, poles, &w2, lower, upper);
            solve_root(head, poles, &w2, anchor, lo, hi)
        })
        .collect();

    let mut eigenvalues = Vec::with_capacity(m + 1);
    let mut head_components = Vec::with_capacity(m + 1);
    let mut pole_components = Vec::with_capacity(m + 1);
    for root in roots {
        // v = (1, w_j/(λ − p_j)) up to normalization; the shifted form keeps
        // the dominant component accurate.
        let mut v = vec![0.0; m];
        let mut norm2 = 1.0;
        for j in 0..m {
            let d = (poles[root.anchor] - poles[j]) + root.mu;
            v[j] = couplings[j] / d;
            norm2 += v[j] * v[j];
        }
        let inv = 1.0 / norm2.sqrt();
        eigenvalues.push(poles[root.anchor] + root.mu);
        head_components.push(inv);
        pole_components.push(v.into_iter().map(|x| x * inv).collect());
    }

    ActiveEigen {
        eigenvalues,
        head_components,
        pole_components,
    }
}

struct Root {
    anchor: usize,
    mu: f64,
}

/// Choose the anchor pole and the μ-bracket (μ_lo, μ_hi) for root `i`.
///
/// Root 0 lies below the first pole, root m above the last, root i in
/// (p_{i−1}, p_i). The anchor is the nearer bracketing pole, decided by the
/// sign of the secular function at the gap midpoint.
fn bracket(
    i: usize,
    head: f64,
    poles: &[f64],
    w2: &[f64],
    lower: f64,
    upper: f64,
) -> (usize, f64, f64) {
    let m = poles.len();
    if i == 0 {
        (0, lower - poles[0], 0.0)
    } else if i == m {
        (m - 1, 0.0, upper - poles[m - 1])
    } else {
        let (left, right) = (poles[i - 1], poles[i]);
        let mid = 0.5 * (left + right);
        // f increases from −∞ to +∞ across the gap.
        if secular(head, poles, w2, i - 1, mid - left).0 >= 0.0 {
            (i - 1, 0.0, mid - left)
        } else {
            (i, mid - right, 0.0)
        }
    }
}

/// Evaluate f(p_anchor + μ) and f′, plus the absolute-value sum of the terms
/// of f for a floating-point error scale.
fn secular(head: f64, poles: &[f64], w2: &[f64], anchor: usize, mu: f64) -> (f64, f64, f64) {
    let pa = poles[anchor];
    let linear = (pa - head) + mu;
    let mut sum = 0.0;
    let mut deriv = 0.0;
    let mut scale = linear.abs();
    for j in 0..poles.len() {
        let d = (pa - poles[j]) + mu;
        let term = w2[j] / d;
        sum += term;
        deriv += term / d;
        scale += term.abs();
    }
    (linear - sum, 1.0 + deriv, scale)
}

/// Safeguarded Newton iteration for the root anchored at `anchor` with
/// μ ∈ (mu_lo, mu_hi). One bracket end is 0, where f diverges at the pole;
/// with that endpoint the midpoint step automatically halves towards it.
fn solve_root(head: f64, poles: &[f64], w2: &[f64], anchor: usize, mu_lo: f64, mu_hi: f64) -> Root {
    let mut lo = mu_lo;
    let mut hi = mu_hi;
    // Start away from the pole end of the bracket.
    let mut mu = if lo == 0.0 {
        0.75 * hi
    } else if hi == 0.0 {
        0.75 * lo
    } else {
        0.5 * (lo + hi)
    };

    for _ in 0..200 {
        let (f, fp, scale) = secular(head, poles, w2, anchor, mu);
        if f.abs() <= 32.0 * f64::EPSILON * scale {
            break;
        }
        if f > 0.0 {
            hi = mu;
        } else {
            lo = mu;
        }
        let newton = mu - f / fp;
        mu = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= 2.0 * f64::EPSILON * mu.abs() {
            break;
        }
    }

    Root { anchor, mu }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ortho_defect(q: &DMatrix<f64>) -> f64 {
        let g = q.transpose() * q;
        let n = g.nrows();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - target).abs());
            }
        }
        worst
    }

    fn residual(head: f64, poles: &[f64], w: &[f64], eig: &ArrowheadEigen) -> f64 {
        let n = poles.len() + 1;
        let mut a = DMatrix::<f64>::zeros(n, n);
        a[(0, 0)] = head;
        for j in 0..poles.len() {
            a[(j + 1, j + 1)] = poles[j];
            a[(0, j + 1)] = w[j];
            a[(j + 1, 0)] = w[j];
        }
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let v = eig.eigenvectors.column(k);
            let r = &a * v - eig.eigenvalues[k] * v;
            worst = worst.max(r.amax());
        }
        worst
    }

    #[test]
    fn matches_dense_small() {
        let poles: Vec<f64> = (-3..=3).map(|n| n as f64).collect();
        let w = vec![0.3; 7];
        let eig = decompose(0.4, &poles, &w).unwrap();

        let mut a = DMatrix::<f64>::zeros(8, 8);
        a[(0, 0)] = 0.4;
        for j in 0..7 {
            a[(j + 1, j + 1)] = poles[j];
            a[(0, j + 1)] = w[j];
            a[(j + 1, 0)] = w[j];
        }
        let dense = a.symmetric_eigen();
        let mut dense_vals: Vec<f64> = dense.eigenvalues.iter().copied().collect();
        dense_vals.sort_by(f64::total_cmp);

        for (lam, dense_lam) in eig.eigenvalues.iter().zip(&dense_vals) {
            assert_relative_eq!(lam, dense_lam, max_relative = 1e-12, epsilon = 1e-12);
        }
        assert!(ortho_defect(&eig.eigenvectors) < 1e-12);
        assert!(residual(0.4, &poles, &w, &eig) < 1e-12);
    }

    #[test]
    fn interlacing_holds() {
        let poles: Vec<f64> = (-20..=20).map(|n| n as f64 * 0.5).collect();
        let w = vec![0.15; poles.len()];
        let eig = decompose(0.17, &poles, &w).unwrap();
        assert_eq!(eig.eigenvalues.len(), poles.len() + 1);
        for (i, &p) in poles.iter().enumerate() {
            assert!(eig.eigenvalues[i] < p && p < eig.eigenvalues[i + 1]);
        }
    }

    #[test]
    fn weak_coupling_eigenvalues_hug_poles() {
        // Far-from-resonance eigenvalues sit within O(g²/detuning) of their
        // pole; the shifted solve must resolve those tiny gaps.
        let poles: Vec<f64> = (-50..=50).map(|n| n as f64).collect();
        let w = vec![1e-4; poles.len()];
        let eig = decompose(0.5, &poles, &w).unwrap();
        assert!(ortho_defect(&eig.eigenvectors) < 1e-13);
        assert!(residual(0.5, &poles, &w, &eig) < 1e-13);
        // perturbative shift of the pole at 50: g²/(50 − 0.5)
        let shift = eig.eigenvalues[101] - 50.0;
        assert_relative_eq!(shift, 1e-8 / 49.5, max_relative = 1e-4);
    }

    #[test]
    fn deflates_zero_couplings() {
        let poles = vec![-1.0, 0.0, 1.0];
        let w = vec![0.2, 0.0, 0.2];
        let eig = decompose(0.3, &poles, &w).unwrap();
        // pole 0.0 is exactly an eigenvalue with a basis eigenvector
        let idx = eig
            .eigenvalues
            .iter()
            .position(|&l| l == 0.0)
            .expect("deflated eigenvalue present");
        assert_eq!(eig.eigenvectors[(2, idx)], 1.0);
        assert!(ortho_defect(&eig.eigenvectors) < 1e-13);
    }

    #[test]
    fn rejects_unsorted_poles() {
        assert!(decompose(0.0, &[1.0, 0.0], &[0.1, 0.1]).is_err());
        assert!(decompose(0.0, &[0.0, 0.0], &[0.1, 0.1]).is_err());
    }

    #[test]
    fn head_only_matrix() {
        let eig = decompose(2.5, &[], &[]).unwrap();
        assert_eq!(eig.eigenvalues, vec![2.5]);
        assert_eq!(eig.eigenvectors[(0, 0)], 1.0);
    }
}
