//! Cup-product pairing on `H¹(Σ; Ad ρ)` for a one-relator surface presentation.
//!
//! With the relator `r = ℓ_1 ⋯ ℓ_L` read as the boundary of a fan-triangulated
//! disk, the pairing of cocycles `u`, `v` is
//!
//! `Σ_{k=2}^{L} ⟨ u(ℓ_1⋯ℓ_{k−1}), Ad(ℓ_1⋯ℓ_{k−1}) v(ℓ_k) ⟩`
//!
//! where `u(·)` is the crossed-homomorphism extension and
//! `⟨A, B⟩ = Tr(A B̄ᵀ) = 2 (A · B)` in (i, j, k) coordinates.
//!
//! The fan chain `Σ [ℓ_1⋯ℓ_{k−1} | ℓ_k]` has boundary `Σ [ℓ_k]`, which is not
//! zero in the bar complex when the relator contains inverse letters. Each
//! occurrence of `x⁻¹` is closed off with `−[x | x⁻¹]`, contributing
//! `+⟨u(x), v(x)⟩`. Without it the form is not antisymmetric.

use crate::error::{Error, Result};
use crate::groups::{Presentation, Representation, Word};
use crate::linalg::{null_space, Matrix};
use crate::scalar::Real;
use crate::su2::Su2Vec;

use super::complex::TwistedComplex;

/// Residual `‖d¹ u‖` accepted for a cocycle.
pub const COCYCLE_TOL: f64 = 1e-8;

/// The invariant inner product `Tr(A B̄ᵀ)` on su(2).
pub fn killing<T: Real>(a: Su2Vec<T>, b: Su2Vec<T>) -> T {
    let two = T::lit(2.0);
    two * (a[0] * b[0] + a[1] * b[1] + a[2] * b[2])
}

pub fn to_cochain<T: Real>(flat: &[T]) -> Vec<Su2Vec<T>> {
    flat.chunks(3).map(|c| [c[0], c[1], c[2]]).collect()
}

pub fn flatten<T: Real>(u: &[Su2Vec<T>]) -> Vec<T> {
    u.iter().flat_map(|v| v.iter().copied()).collect()
}

fn check_cocycle<T: Real>(c: &TwistedComplex<T>, u: &[Su2Vec<T>], name: &str) -> Result<()> {
    if u.len() != c.n {
        return Err(Error::invalid(format!(
            "cochain {name} has {} entries for {} generators",
            u.len(),
            c.n
        )));
    }
    let r = c.d1.mul_vec(&flatten(u));
    let res = r.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if res > T::lit(COCYCLE_TOL) {
        return Err(Error::invalid(format!("{name} is not a cocycle: |d1 {name}| = {res}")));
    }
    Ok(())
}

/// Fan-triangulation evaluation of `∫ ⟨u ∪ v⟩`.
pub fn cup_pairing<T: Real>(
    p: &Presentation,
    rep: &Representation<T>,
    u: &[Su2Vec<T>],
    v: &[Su2Vec<T>],
) -> Result<T> {
    if p.n_relators() != 1 {
        return Err(Error::invalid(format!(
            "cup pairing needs a one-relator presentation, got {} relators",
            p.n_relators()
        )));
    }
    let c = TwistedComplex::build(p, rep)?;
    check_cocycle(&c, u, "u")?;
    check_cocycle(&c, v, "v")?;
    fan_sum(rep, &p.relators()[0], u, v)
}

fn fan_sum<T: Real>(
    rep: &Representation<T>,
    relator: &Word,
    u: &[Su2Vec<T>],
    v: &[Su2Vec<T>],
) -> Result<T> {
    let letters = relator.letters();
    let mut total = T::zero();
    let mut prefix_u = [T::zero(); 3];
    let mut prefix = crate::su2::Su2::identity();
    for (k, &l) in letters.iter().enumerate() {
        if k > 0 {
            let vl = prefix.ad(rep.crossed_letter(v, l)?);
            total = total + killing(prefix_u, vl);
        }
        // advance u(prefix) and the prefix element by letter l
        let ul = prefix.ad(rep.crossed_letter(u, l)?);
        for i in 0..3 {
            prefix_u[i] = prefix_u[i] + ul[i];
        }
        let g = rep.evaluate(&Word::generator(l))?;
        prefix = prefix.compose(&g);
        if l < 0 {
            let x = (-l) as usize - 1;
            total = total + killing(u[x], v[x]);
        }
    }
    Ok(total)
}

/// Orthonormal representatives of `H¹`: `ker d¹ ∩ (im d⁰)^⊥ = ker [d¹; d⁰ᵀ]`.
pub fn h1_basis<T: Real>(c: &TwistedComplex<T>, tol: T) -> Vec<Vec<T>> {
    let stacked = c.d1.vstack(&c.d0.transpose());
    null_space(&stacked, tol)
}

/// Matrix `Ω_ab = cup_pairing(e_a, e_b)` on a basis of cocycles.
pub fn pairing_matrix<T: Real>(
    p: &Presentation,
    rep: &Representation<T>,
    basis: &[Vec<T>],
) -> Result<Matrix<T>> {
    let k = basis.len();
    let cochains: Vec<_> = basis.iter().map(|b| to_cochain(b)).collect();
    let mut omega = Matrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            omega[(a, b)] = cup_pairing(p, rep, &cochains[a], &cochains[b])?;
        }
    }
    Ok(omega)
}

/// `d⁰ ξ` as a cochain.
pub fn coboundary<T: Real>(c: &TwistedComplex<T>, xi: Su2Vec<T>) -> Vec<Su2Vec<T>> {
    to_cochain(&c.d0.mul_vec(&xi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::random_surface_rep;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(seed: u64) -> (Presentation, Representation<f64>, TwistedComplex<f64>) {
        let p = Presentation::surface_group(2).unwrap();
        let rep = random_surface_rep(2, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let c = TwistedComplex::build(&p, &rep).unwrap();
        (p, rep, c)
    }

    #[test]
    fn killing_form_is_twice_dot() {
        assert_eq!(killing([1.0, 0.0, 0.0], [1.0, 0.0, 0.0]), 2.0);
        assert_eq!(killing([1.0, 2.0, 3.0], [0.5, -1.0, 1.0]), 3.0);
    }

    #[test]
    fn self_pairing_vanishes() {
        let (p, rep, c) = setup(3);
        for b in h1_basis(&c, 1e-8) {
            let u = to_cochain(&b);
            assert!(cup_pairing(&p, &rep, &u, &u).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn coboundaries_pair_to_zero() {
        let (p, rep, c) = setup(4);
        let basis = h1_basis(&c, 1e-8);
        let cob = coboundary(&c, [0.3, -0.2, 0.9]);
        for b in &basis {
            let v = cup_pairing(&p, &rep, &to_cochain(b), &cob).unwrap();
            assert!(v.abs() < 1e-8, "pairing with coboundary = {v}");
        }
    }

    #[test]
    fn genus_two_form_is_symplectic() {
        let (p, rep, c) = setup(5);
        let basis = h1_basis(&c, 1e-8);
        assert_eq!(basis.len(), 6);
        let omega = pairing_matrix(&p, &rep, &basis).unwrap();
        assert!(omega.sub(&omega.transpose().scale(-1.0)).max_abs() < 1e-8, "{omega:?}");
        assert!(omega.determinant().abs() > 1e-6);
    }

    #[test]
    fn rejects_bad_inputs() {
        let (p, rep, _) = setup(6);
        let junk = vec![[1.0, 0.0, 0.0]; 4];
        assert!(cup_pairing(&p, &rep, &junk, &junk).is_err());
        let two = Presentation::new(4, vec![p.relators()[0].clone(), p.relators()[0].clone()])
            .unwrap();
        let zero = vec![[0.0; 3]; 4];
        assert!(cup_pairing(&two, &rep, &zero, &zero).is_err());
    }
}
