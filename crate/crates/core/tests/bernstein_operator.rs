use gbquad::{
    basis_eval, basis_eval_all, collocation_matrix, gb_eval, BooleanSumMatrix, EquispacedGrid,
    GridFunction, Matrix,
};
use proptest::prelude::*;

/// Naive dense product, independent of `Matrix::mul`.
fn naive_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.rows();
    let mut out = Matrix::zeros(n, b.cols());
    for i in 0..n {
        for j in 0..b.cols() {
            let mut s = 0.0;
            for k in 0..a.cols() {
                s += a[(i, k)] * b[(k, j)];
            }
            out[(i, j)] = s;
        }
    }
    out
}

/// Direct-formula collocation matrix for small `m`.
fn direct_collocation(m: usize, a: f64) -> Matrix {
    let binom = |n: usize, k: usize| -> f64 { (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64) };
    let mut out = Matrix::zeros(m + 1, m + 1);
    for i in 0..=m {
        let t = -a + 2.0 * a * i as f64 / m as f64;
        let s = (a + t) / (2.0 * a);
        for j in 0..=m {
            out[(i, j)] = binom(m, j) * s.powi(j as i32) * (1.0 - s).powi((m - j) as i32);
        }
    }
    out
}

fn power_sum(defect: &Matrix, terms: usize) -> Matrix {
    let n = defect.rows();
    let mut total = Matrix::identity(n);
    let mut power = Matrix::identity(n);
    for _ in 1..terms {
        power = naive_mul(&power, defect);
        total = total.add(&power);
    }
    total
}

#[test]
fn basis_matches_fifty_digit_value() {
    // 50-digit evaluation of C(512,256) (2.3/4)^256 (1.7/4)^256.
    let want = 1.039_884_576_107_878_739_220_282_102_63e-4;
    let got = basis_eval(512, 2.0, 256, 0.3).unwrap();
    assert!(((got - want) / want).abs() < 1e-13, "{got:e} vs {want:e}");
}

#[test]
fn batched_matches_single_evaluation() {
    for &(m, a, x) in &[(7usize, 1.0, 0.3), (64, 2.0, -1.1), (512, 1.0, 0.01)] {
        let all = basis_eval_all(m, a, x).unwrap();
        for (k, v) in all.iter().enumerate() {
            let one = basis_eval(m, a, k, x).unwrap();
            assert!((v - one).abs() <= 1e-15 + 1e-13 * one, "m={m} k={k}");
        }
    }
}

#[test]
fn collocation_matches_direct_formula_and_is_stochastic() {
    for m in [1usize, 2, 5, 12, 30] {
        let a_mat = collocation_matrix(m, 1.5).unwrap();
        assert!(a_mat.max_abs_diff(&direct_collocation(m, 1.5)) < 1e-13, "m={m}");
    }
    for m in [4usize, 64, 512] {
        let a_mat = collocation_matrix(m, 1.0).unwrap();
        assert!(a_mat.as_slice().iter().all(|&v| v >= 0.0));
        for s in a_mat.row_sums() {
            assert!((s - 1.0).abs() < 1e-13, "m={m}: {s}");
        }
    }
}

#[test]
fn boolean_sum_matches_naive_power_sum() {
    let (m, a) = (6, 1.0);
    let defect = Matrix::identity(m + 1).sub(&direct_collocation(m, a));
    for ell in [3usize, 5, 8] {
        let c = BooleanSumMatrix::new(m, a, ell).unwrap();
        let diff = c.entries().max_abs_diff(&power_sum(&defect, ell));
        assert!(diff < 1e-12, "ell={ell}: {diff:e}");
    }
}

#[test]
fn doubling_recurrence_holds() {
    for m in [2usize, 5, 9, 16] {
        let a_mat = collocation_matrix(m, 1.0).unwrap();
        let defect = Matrix::identity(m + 1).sub(&a_mat);
        for ell in [1usize, 2, 4] {
            let c = BooleanSumMatrix::new(m, 1.0, ell).unwrap();
            let c2 = BooleanSumMatrix::new(m, 1.0, 2 * ell).unwrap();
            let mut power = Matrix::identity(m + 1);
            for _ in 0..ell {
                power = naive_mul(&power, &defect);
            }
            let want = c.entries().add(&naive_mul(&power, c.entries()));
            assert!(c2.entries().max_abs_diff(&want) < 1e-10, "m={m} ell={ell}");
        }
    }
}

#[test]
fn node_operator_doubling() {
    for m in [3usize, 8, 12] {
        let a_mat = collocation_matrix(m, 1.0).unwrap();
        for ell in [1usize, 2, 3, 4] {
            let v = naive_mul(&a_mat, BooleanSumMatrix::new(m, 1.0, ell).unwrap().entries());
            let v2 = naive_mul(&a_mat, BooleanSumMatrix::new(m, 1.0, 2 * ell).unwrap().entries());
            let want = v.scale(2.0).sub(&naive_mul(&v, &v));
            assert!(v2.max_abs_diff(&want) < 1e-10, "m={m} ell={ell}");
        }
    }
}

#[test]
fn row_sums_and_norm_bound() {
    for m in [4usize, 16, 64] {
        for ell in [1usize, 2, 16, 256] {
            let c = BooleanSumMatrix::new(m, 1.0, ell).unwrap();
            for s in c.entries().row_sums() {
                assert!((s - 1.0).abs() < 1e-8, "m={m} ell={ell}: {s}");
            }
        }
    }
    for m in [4usize, 8, 16] {
        for ell in 1..=4usize {
            let c = BooleanSumMatrix::new(m, 1.0, ell).unwrap();
            let bound = (1u64 << ell) as f64 - 1.0;
            assert!(c.entries().norm_inf() <= bound, "m={m} ell={ell}");
        }
    }
}

#[test]
fn gb_eval_small_cases() {
    let c = BooleanSumMatrix::new(8, 1.0, 2).unwrap();
    let fs = GridFunction::from_fn(EquispacedGrid::new(8, 1.0).unwrap(), |t| t * t).unwrap();
    // Exact rational value of 2 B f - B(B f) at 1/2 for f = t^2.
    let want = 67.0 / 256.0;
    assert!((gb_eval(&c, &fs, 0.5).unwrap() - want).abs() < 1e-12);

    let c = BooleanSumMatrix::new(16, 1.0, 4).unwrap();
    let fs = GridFunction::from_fn(EquispacedGrid::new(16, 1.0).unwrap(), |t| t).unwrap();
    assert!((gb_eval(&c, &fs, 0.3).unwrap() - 0.3).abs() < 1e-10);
}

#[test]
fn gb_operator_definition_oracle() {
    // f - (f - B f)^ell applied literally, evaluated at x, using only the
    // direct Bernstein sum at the nodes.
    let (m, a) = (10usize, 1.0);
    let grid = EquispacedGrid::new(m, a).unwrap();
    let f = |t: f64| (3.0 * t).sin() + t * t;
    let a_mat = direct_collocation(m, a);
    let samples: Vec<f64> = grid.nodes().iter().map(|&t| f(t)).collect();
    let fs = GridFunction::new(grid, samples.clone()).unwrap();
    for ell in [1usize, 2, 3, 6] {
        // residual_q = samples of (I - B)^q f at the nodes
        let mut residual = samples.clone();
        let mut total_bernstein = vec![0.0; m + 1];
        for _ in 0..ell {
            total_bernstein.iter_mut().zip(&residual).for_each(|(t, r)| *t += r);
            let br = a_mat.mul_vec(&residual);
            residual = residual.iter().zip(&br).map(|(r, b)| r - b).collect();
        }
        // B_{m,ell} f = B(f + (I-B)f + ... + (I-B)^{ell-1} f)
        let c = BooleanSumMatrix::new(m, a, ell).unwrap();
        for x in [-0.9, -0.2, 0.45, 1.0] {
            let basis = basis_eval_all(m, a, x).unwrap();
            let want: f64 = basis.iter().zip(&total_bernstein).map(|(p, v)| p * v).sum();
            let got = gb_eval(&c, &fs, x).unwrap();
            assert!((got - want).abs() < 1e-12, "ell={ell} x={x}");
        }
    }
}

#[test]
fn generalized_operator_accelerates_convergence() {
    let a = 2.0;
    let f = |t: f64| (t + 1.0).abs().powf(4.5);
    let node_error = |m: usize, ell: usize| -> f64 {
        let grid = EquispacedGrid::new(m, a).unwrap();
        let samples: Vec<f64> = grid.nodes().iter().map(|&t| f(t)).collect();
        let c = BooleanSumMatrix::new(m, a, ell).unwrap();
        let at_nodes = collocation_matrix(m, a).unwrap().mul_vec(&c.entries().mul_vec(&samples));
        at_nodes.iter().zip(&samples).map(|(v, s)| (v - s).abs()).fold(0.0, f64::max)
    };
    let mut prev = f64::INFINITY;
    for m in [16usize, 32, 64, 128, 256] {
        let e2 = node_error(m, 2);
        assert!(e2 < prev, "m={m}: {e2:e} !< {prev:e}");
        assert!(e2 < node_error(m, 1), "m={m}");
        prev = e2;
    }
}

proptest! {
    #[test]
    fn partition_of_unity(x in -1.0f64..=1.0, m_idx in 0usize..3, a in 0.1f64..5.0) {
        let m = [4usize, 64, 512][m_idx];
        let v = basis_eval_all(m, a, x * a).unwrap();
        prop_assert!(v.iter().all(|&p| p >= 0.0));
        let s: f64 = v.iter().sum();
        prop_assert!((s - 1.0).abs() < 1e-13, "sum {}", s);
    }

    #[test]
    fn reproduces_affine_functions(
        alpha in -10.0f64..10.0,
        beta in -10.0f64..10.0,
        x in -1.0f64..=1.0,
        ell in 1usize..6,
        m in 2usize..24,
    ) {
        let c = BooleanSumMatrix::cached(m, 1.0, ell).unwrap();
        let fs = GridFunction::from_fn(EquispacedGrid::new(m, 1.0).unwrap(), |t| alpha * t + beta).unwrap();
        let got = gb_eval(&c, &fs, x).unwrap();
        prop_assert!((got - (alpha * x + beta)).abs() < 1e-10);
        let ones = GridFunction::from_fn(EquispacedGrid::new(m, 1.0).unwrap(), |_| 1.0).unwrap();
        prop_assert!((gb_eval(&c, &ones, x).unwrap() - 1.0).abs() < 1e-10);
    }
}
