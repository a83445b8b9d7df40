use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use repvar::cohomology::build_complex;
use repvar::groups::{abelian_torus_rep, random_surface_rep};
use repvar::knots::{arc_representation, rep_from_point, torus_knot_arcs, two_bridge_polynomial, zero_set};
use repvar::su2::Su2;
use repvar::{Presentation, Representation, Word};

fn random_word(rng: &mut ChaCha8Rng, gens: i32, len: usize) -> Word {
    let letters = (0..len)
        .map(|_| {
            let g = rng.random_range(1..=gens);
            if rng.random_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    Word::new(letters).unwrap()
}

// Derivative of ρ_ε(w) ρ(w)⁻¹ along ρ_ε(t_i) = exp(ε u_i) ρ(t_i), by central
// differences, against the assembled Fox blocks.
#[test]
fn fox_blocks_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = 1e-6;
    for _ in 0..25 {
        let n = rng.random_range(1..=3usize);
        let images: Vec<Su2<f64>> = (0..n).map(|_| Su2::random(&mut rng)).collect();
        let rep = Representation::raw(images.clone());
        let len = rng.random_range(1..=9);
        let w = random_word(&mut rng, n as i32, len);
        let u: Vec<[f64; 3]> = (0..n)
            .map(|_| [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
            .collect();
        let moved = |eps: f64| {
            let imgs = images
                .iter()
                .zip(&u)
                .map(|(g, ui)| Su2::exp([eps * ui[0], eps * ui[1], eps * ui[2]]) * *g)
                .collect();
            let r = Representation::raw(imgs).evaluate(&w).unwrap();
            (r * rep.evaluate(&w).unwrap().inverse()).vector_part()
        };
        let (p, m) = (moved(h), moved(-h));
        let fd: Vec<f64> = (0..3).map(|i| (p[i] - m[i]) / (2.0 * h)).collect();
        let mut fox = [0.0; 3];
        for (gen, ui) in u.iter().enumerate() {
            let b = rep.fox_block(&w, gen + 1).unwrap();
            let v = b.mul_vec(ui);
            for i in 0..3 {
                fox[i] += v[i];
            }
        }
        let ext = rep.crossed_extension(&u, &w).unwrap();
        for i in 0..3 {
            assert!((fd[i] - fox[i]).abs() < 1e-7, "word {w}: fd {fd:?} vs fox {fox:?}");
            assert!((ext[i] - fox[i]).abs() < 1e-12);
        }
    }
}

fn cases() -> Vec<(String, Presentation, Representation<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut out = Vec::new();
    for n in 1..=3 {
        let p = Presentation::free_group(n).unwrap();
        for _ in 0..20 {
            let rep = Representation::raw((0..n).map(|_| Su2::random(&mut rng)).collect());
            out.push((format!("F{n}"), p.clone(), rep));
        }
    }
    for g in 1..=3 {
        let p = Presentation::surface_group(g).unwrap();
        for i in 0..20 {
            let rep = if g == 1 {
                abelian_torus_rep(0.1 + 0.14 * i as f64, 2.9 - 0.13 * i as f64)
            } else {
                random_surface_rep(g, &mut rng).unwrap()
            };
            out.push((format!("S{g}"), p.clone(), rep));
        }
    }
    for (a, b) in [(3u32, 2u32), (5, 2), (5, 3)] {
        let p = Presentation::torus_knot_group(a, b).unwrap();
        let arcs = torus_knot_arcs(a, b).unwrap();
        for i in 0..20 {
            let arc = &arcs[i % arcs.len()];
            let s = rng.random_range(0.05..0.95);
            let rep = arc_representation(a, b, arc, arc.eta_at(s)).unwrap();
            out.push((format!("T({a},{b})"), p.clone(), rep));
        }
    }
    for (a, b) in [(3i64, 1i64), (5, 3), (7, 3)] {
        let p = Presentation::two_bridge_group(a, b).unwrap();
        let zs = zero_set::<f64>(&two_bridge_polynomial(a, b).unwrap(), 64).unwrap();
        let pts: Vec<_> = zs
            .irreducible
            .into_iter()
            .filter(|(x, y)| x.abs() < 1.99 && *y < 1.99 && *y > x * x - 1.99)
            .take(20)
            .collect();
        assert!(pts.len() >= 10);
        for (x, y) in pts {
            out.push((format!("K({a},{b})"), p.clone(), rep_from_point(a, b, x, y).unwrap()));
        }
    }
    out
}

#[test]
fn euler_identity_and_cochain_condition() {
    for (name, p, rep) in cases() {
        let c = build_complex(&p, &rep).unwrap();
        assert!(c.cochain_residual() < 1e-8, "{name}: d1 d0 = {}", c.cochain_residual());
        let s = c.cohomology(1e-8);
        assert_eq!(s.euler, 3 * p.euler_characteristic(), "{name}: {:?}", s.dims());
    }
}

#[test]
fn knot_groups_at_irreducibles() {
    for (name, p, rep) in cases() {
        if name.starts_with('T') || name.starts_with('K') {
            let s = build_complex(&p, &rep).unwrap().cohomology(1e-8);
            assert_eq!(s.dims(), (0, 1, 1), "{name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn surface_reps_are_cochain_complexes(seed in any::<u64>(), genus in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = random_surface_rep::<f64, _>(genus, &mut rng).unwrap();
        let p = Presentation::surface_group(genus).unwrap();
        let c = build_complex(&p, &rep).unwrap();
        prop_assert!(c.cochain_residual() < 1e-8);
        let s = c.cohomology(1e-8);
        prop_assert_eq!(s.euler, 3 * s.chi);
        prop_assert_eq!(s.h1, 6 * genus - 6);
    }
}
