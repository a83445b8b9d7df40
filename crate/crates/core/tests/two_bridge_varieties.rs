use repvar::cohomology::{classify, RepClass};
use repvar::knots::{relator_trace_polynomial, rep_from_point, two_bridge_polynomial, zero_set};

fn knots(max_a: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in (3..=max_a).step_by(2) {
        for b in (-a + 1..a).filter(|b| b % 2 != 0) {
            if num_integer::gcd(a, b) == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

// Every interior zero of F_{a,b} must be the character of a nonabelian
// representation: the explicit pair satisfies the relator.
#[test]
fn zeros_are_irreducible_representations() {
    for (a, b) in knots(13) {
        let f = two_bridge_polynomial(a, b).unwrap();
        let rel = relator_trace_polynomial(a, b).unwrap();
        let zs = zero_set::<f64>(&f, 48).unwrap();
        let interior: Vec<_> = zs
            .irreducible
            .iter()
            .filter(|(x, y)| x.abs() < 1.999 && *y < 1.999 && *y > x * x - 2.0 + 1e-3)
            .collect();
        assert!(!interior.is_empty(), "no irreducible points for ({a}, {b})");
        for &&(x, y) in &interior {
            let rep = rep_from_point(a, b, x, y)
                .unwrap_or_else(|e| panic!("({a}, {b}) at ({x}, {y}): {e}"));
            assert_eq!(classify(&rep, 1e-8).unwrap(), RepClass::Irreducible);
            assert!(rel.eval_xy(x, y).abs() < 1e-7, "relator trace at ({x}, {y})");
        }
    }
}

// The relator trace vanishes on the abelian parabola y = x² − 2.
#[test]
fn relator_trace_contains_abelian_curve() {
    for (a, b) in knots(9) {
        let rel = relator_trace_polynomial(a, b).unwrap();
        for i in 0..=20 {
            let x = -2.0 + 0.2 * i as f64;
            assert!(rel.eval_xy(x, x * x - 2.0).abs() < 1e-8, "({a}, {b}) at x = {x}");
        }
    }
}

#[test]
fn mirror_images_share_variety_up_to_sign() {
    for (a, b) in knots(11) {
        let (f, g) = (two_bridge_polynomial(a, b).unwrap(), two_bridge_polynomial(a, -b).unwrap());
        for (x, y) in [(0.3_f64, 0.7), (-1.1, 0.2), (1.7, 1.9)] {
            let (u, v) = (f.eval_xy(x, y), g.eval_xy(x, y));
            assert!((u.abs() - v.abs()).abs() < 1e-9, "({a}, {b}): {u} vs {v}");
        }
    }
}
