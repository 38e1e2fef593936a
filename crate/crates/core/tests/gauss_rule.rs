use gbquad::gl_rule;

fn monomial_integral(d: usize) -> f64 {
    if d % 2 == 1 {
        0.0
    } else {
        2.0 / (d as f64 + 1.0)
    }
}

#[test]
fn exact_through_degree_two_n_minus_one() {
    for n in [4usize, 16, 64] {
        let r = gl_rule(n).unwrap();
        for d in 0..2 * n {
            let got = r.integrate(-1.0, 1.0, |x| x.powi(d as i32));
            assert!((got - monomial_integral(d)).abs() < 1e-12, "n={n} d={d}: {got}");
        }
    }
}

#[test]
fn symmetric_positive_and_normalized() {
    for n in 1..=130usize {
        let r = gl_rule(n).unwrap();
        assert_eq!(r.len(), n);
        for k in 0..n {
            assert!((r.nodes()[k] + r.nodes()[n - 1 - k]).abs() <= 1e-14);
            assert!((r.weights()[k] - r.weights()[n - 1 - k]).abs() <= 1e-14);
            assert!(r.weights()[k] > 0.0);
        }
        let total: f64 = r.weights().iter().sum();
        assert!((total - 2.0).abs() < 1e-13, "n={n}: {total}");
    }
}

#[test]
fn nodes_interlace() {
    for n in 1..=80usize {
        let lo = gl_rule(n).unwrap();
        let hi = gl_rule(n + 1).unwrap();
        for k in 0..n {
            assert!(hi.nodes()[k] < lo.nodes()[k] && lo.nodes()[k] < hi.nodes()[k + 1], "n={n} k={k}");
        }
    }
}

#[test]
fn agrees_with_golub_welsch_rules() {
    use gauss_quad_check::reference_rule;
    for n in [5usize, 33, 200] {
        let ours = gl_rule(n).unwrap();
        let theirs = reference_rule(n);
        for ((z, w), (zr, wr)) in ours.iter().zip(theirs) {
            assert!((z - zr).abs() < 1e-13);
            assert!((w - wr).abs() < 1e-13);
        }
    }
}

mod gauss_quad_check {
    use std::num::NonZeroUsize;

    pub fn reference_rule(n: usize) -> Vec<(f64, f64)> {
        let mut pairs = gauss_quad::GaussLegendre::new(NonZeroUsize::new(n).unwrap())
            .as_node_weight_pairs()
            .to_vec();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        pairs
    }
}
