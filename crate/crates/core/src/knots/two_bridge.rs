use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groups::{Presentation, Representation, Word};
use crate::scalar::Real;
use crate::su2::{pair_from_angles, AngleTriple};

use super::poly::TracePolynomial;
use super::trace::TraceReducer;

/// Residual accepted by [`rep_from_point`].
pub const POINT_RELATOR_TOL: f64 = 1e-6;

fn validate(a: i64, b: i64) -> Result<()> {
    if a < 1 || a % 2 == 0 {
        return Err(Error::invalid(format!("two-bridge parameter a={a} must be odd and positive")));
    }
    if b % 2 == 0 || b <= -a || b >= a {
        return Err(Error::invalid(format!(
            "two-bridge parameter b={b} must be odd with -{a} < b < {a}"
        )));
    }
    if num_integer::gcd(a, b) != 1 {
        return Err(Error::invalid(format!("two-bridge parameters ({a}, {b}) must be coprime")));
    }
    Ok(())
}

/// Schubert word `w = u^{e_1} v^{e_2} ⋯ v^{e_{a−1}}`, `e_k = (−1)^{⌊kb/a⌋}`.
pub fn two_bridge_word(a: i64, b: i64) -> Result<Word> {
    validate(a, b)?;
    let letters = (1..a)
        .map(|k| {
            let gen = if k % 2 == 1 { 1 } else { 2 };
            let e = if (k * b).div_euclid(a) % 2 == 0 { 1 } else { -1 };
            gen * e
        })
        .collect();
    Word::new(letters)
}

/// Le's alternating sum `F_{a,b} = Σ_{n=0}^{(a−1)/2} (−1)^n F_{w_n}` where
/// `w_n` drops `n` letters from each end of the Schubert word and the empty
/// word contributes 1. Variables: `x = Tr u = Tr v`, `y = Tr uv`.
pub fn two_bridge_polynomial(a: i64, b: i64) -> Result<TracePolynomial> {
    let w = two_bridge_word(a, b)?;
    let mut reducer = TraceReducer::new();
    let mut sum = TracePolynomial::zero();
    for n in 0..=((a - 1) / 2) as usize {
        let wn = w.trim(n);
        let term = if wn.is_empty() {
            TracePolynomial::constant(1)
        } else {
            reducer.trace(&wn)?.collapse_conjugate_generators()
        };
        let signed = if n % 2 == 0 {
            term
        } else {
            term.scale(&BigInt::from(-1))
        };
        sum = &sum + &signed;
    }
    Ok(sum)
}

/// `Tr ρ(r) − 2` for the relator `r = w u w⁻¹ v⁻¹`, in `(x, y)`. Vanishes on
/// the representation variety, abelian part included.
pub fn relator_trace_polynomial(a: i64, b: i64) -> Result<TracePolynomial> {
    let p = Presentation::two_bridge_group(a, b)?;
    let t = TraceReducer::new()
        .trace(&p.relators()[0])?
        .collapse_conjugate_generators();
    Ok(&t - &TracePolynomial::constant(2))
}

/// Whether `(x, y)` lies in `{|x| ≤ 2, x² − 2 ≤ y ≤ 2}` up to `tol`.
pub fn in_trace_region<T: Real>(x: T, y: T, tol: T) -> bool {
    let two = T::lit(2.0);
    x.abs() <= two + tol && y <= two + tol && y >= x * x - two - tol
}

/// Explicit representation of the two-bridge group with `Tr ρ(u) = Tr ρ(v) = x`
/// and `Tr ρ(uv) = y`: `ρ(u)` diagonal, `ρ(v)` its conjugate chosen by the
/// pair-of-angles normal form. Fails if the relator residual exceeds
/// [`POINT_RELATOR_TOL`], i.e. the point is off the variety.
pub fn rep_from_point<T: Real>(a: i64, b: i64, x: T, y: T) -> Result<Representation<T>> {
    let p = Presentation::two_bridge_group(a, b)?;
    if !in_trace_region(x, y, T::lit(1e-12)) {
        return Err(Error::invalid(format!(
            "point ({x}, {y}) lies outside the region x^2 - 2 <= y <= 2"
        )));
    }
    let half = T::lit(0.5);
    let clamp = |v: T| v.max(-T::one()).min(T::one());
    let phi = clamp(x * half).acos();
    let eta = clamp(y * half).acos();
    // Round-off can push η a hair outside [0, 2φ]; project back.
    let eta = eta.min(phi + phi).min(T::PI() + T::PI() - phi - phi);
    let triple = AngleTriple { phi, psi: phi, eta };
    let (u, v) = pair_from_angles(&triple)?;
    Representation::strict(&p, vec![u, v], T::lit(POINT_RELATOR_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::Su2;

    #[test]
    fn schubert_words() {
        assert_eq!(two_bridge_word(5, 3).unwrap().letters(), &[1, -2, -1, 2]);
        assert_eq!(two_bridge_word(5, 1).unwrap().letters(), &[1, 2, 1, 2]);
        assert_eq!(two_bridge_word(3, 1).unwrap().letters(), &[1, 2]);
        assert!(two_bridge_word(1, 0).is_err());
        assert!(two_bridge_word(4, 1).is_err());
        assert!(two_bridge_word(5, 2).is_err());
        assert!(two_bridge_word(5, 5).is_err());
        assert!(two_bridge_word(9, 3).is_err());
    }

    #[test]
    fn negative_b_uses_floor() {
        // ⌊−k/3⌋ = −1 for k = 1, 2.
        assert_eq!(two_bridge_word(3, -1).unwrap().letters(), &[-1, -2]);
    }

    #[test]
    fn known_polynomials() {
        assert_eq!(two_bridge_polynomial(3, 1).unwrap().to_string(), "y - 1");
        assert_eq!(two_bridge_polynomial(5, 1).unwrap().to_string(), "y^2 - y - 1");
        // Figure-eight: this is the sum with all three of Le's terms.
        assert_eq!(
            two_bridge_polynomial(5, 3).unwrap().to_string(),
            "-x^2*y + y^2 + 2*x^2 - y - 1"
        );
    }

    #[test]
    fn trefoil_point_gives_representation() {
        let rep = rep_from_point(3, 1, 0.0_f64, 1.0).unwrap();
        assert!((rep.image(1).angle() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let p = Presentation::two_bridge_group(3, 1).unwrap();
        assert!(rep.relator_residual(&p).unwrap() < 1e-6);
        assert!(((rep.image(1) * rep.image(2)).trace() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn abelian_point_is_diagonal() {
        let rep = rep_from_point(3, 1, 1.0_f64, -1.0).unwrap();
        assert!(rep.image(1).distance(&rep.image(2)) < 1e-6);
        assert!(rep.image(2).y.abs() < 1e-6 && rep.image(2).z.abs() < 1e-6);
        let _: Su2<f64> = rep.image(1);
    }

    #[test]
    fn off_variety_and_outside_region_rejected() {
        let err = rep_from_point(3, 1, 0.0_f64, 1.5).unwrap_err();
        assert!(err.is_numerical());
        let err = rep_from_point(3, 1, 1.9_f64, 0.0).unwrap_err();
        assert!(!err.is_numerical());
    }
}
