use std::f64::consts::PI;

use quantum_axes::merit::{cs_integral, cs_integral_fixed};
use quantum_axes::{c_coeff, eta, s_coeff, wigner_d, Angle, GaussLegendre, HalfInt, Vec2};

fn h(twice: i32) -> HalfInt {
    HalfInt::from_twice(twice)
}

/// Labels `(J', J, k, M)` with `|k|, |M| ≤ min(J, J')`, `J, J' ≤ 2`.
fn label_sweep() -> Vec<(HalfInt, HalfInt, HalfInt, HalfInt)> {
    let mut out = Vec::new();
    for tjp in 0..=4 {
        for tj in (tjp % 2..=4).step_by(2) {
            let lo = h(tjp).min(h(tj));
            for k in lo.projections() {
                for m in lo.projections() {
                    out.push((h(tjp), h(tj), k, m));
                }
            }
        }
    }
    out
}

#[test]
fn cs_integral_matches_simpson_oracle() {
    let intervals = 6000;
    let step = PI / intervals as f64;
    for (jp, j, k, m) in label_sweep() {
        let f = |b: f64| {
            let beta = Angle::new(b.min(PI)).unwrap();
            let dd: f64 = wigner_d(jp, k, m, beta).unwrap() * wigner_d(j, k, m, beta).unwrap();
            Vec2::new(0.5 * b.sin() * b.cos() * dd, 0.5 * b.sin() * b.sin() * dd)
        };
        let mut acc = f(0.0) + f(PI);
        for i in 1..intervals {
            acc += f(i as f64 * step) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let oracle = acc * (step / 3.0);
        let got: Vec2<f64> = cs_integral(jp, j, k, m).unwrap();
        assert!(
            got.max_abs_diff(oracle) < 1e-11,
            "J'={jp} J={j} k={k} M={m}: {got:?} vs {oracle:?}"
        );
    }
}

#[test]
fn cs_integral_exchange_symmetry_and_parity() {
    for (jp, j, k, m) in label_sweep() {
        let a: Vec2<f64> = cs_integral(jp, j, k, m).unwrap();
        let b: Vec2<f64> = cs_integral(j, jp, k, m).unwrap();
        assert!(a.max_abs_diff(b) < 1e-12);
    }
    let v: Vec2<f64> = cs_integral(h(2), h(2), h(0), h(0)).unwrap();
    assert!(v.c.abs() < 1e-15);
}

#[test]
fn doubling_nodes_after_convergence_is_stable() {
    for (jp, j, k, m) in label_sweep() {
        let converged: Vec2<f64> = cs_integral(jp, j, k, m).unwrap();
        for nodes in [256, 1024] {
            let more: Vec2<f64> = cs_integral_fixed(jp, j, k, m, nodes).unwrap();
            assert!(converged.max_abs_diff(more) < 1e-12);
        }
    }
}

#[test]
fn stretched_diagonal_is_proportional_to_c_and_s() {
    for tj in 1..=6 {
        let big = h(tj);
        let norm = f64::from(tj + 1) * (f64::from(tj) / 2.0 + 1.0);
        for k in big.projections() {
            let v: Vec2<f64> = cs_integral(big, big, k, big).unwrap();
            let c: f64 = c_coeff(big, k).unwrap();
            let s: f64 = s_coeff(big, k).unwrap();
            assert!(
                (norm * v.c - c).abs() < 1e-10 && (norm * v.s - s).abs() < 1e-10,
                "J={big} k={k}"
            );
        }
    }
}

#[test]
fn gauss_legendre_is_exact_for_polynomials() {
    let rule = GaussLegendre::<f64>::new(12);
    for p in 0..24 {
        let got = rule.integrate(-1.0, 1.0, |x| x.powi(p));
        let expected = if p % 2 == 0 { 2.0 / f64::from(p + 1) } else { 0.0 };
        assert!((got - expected).abs() < 1e-14, "x^{p}");
    }
}

#[test]
fn eta_domain_conventions() {
    let e: f64 = eta(h(5), h(1), h(4), h(-2)).unwrap();
    assert_eq!(e, 0.0);
    assert!(eta::<f64>(h(3), h(1), h(3), h(1)).is_err());
    assert!(s_coeff::<f64>(h(1), h(3)).is_err());
}
