//! Finitely presented groups and their SU(2) representations.
//!
//! Words are literal sequences of signed generator indices (`k` or `-k` for
//! `t_k^{±1}`, 1-based). No implicit free reduction is performed: Fox
//! derivatives depend on the exact spelling of a relator.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Real;
use crate::su2::{Su2, Su2Vec};

/// Default residual for accepting a family of matrices as a representation.
pub const RELATOR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::invalid("generator index 0 in word (indices are 1-based)"));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(k: i32) -> Self {
        assert!(k != 0);
        Word(vec![k])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn power(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        Word(
            std::iter::repeat_n(base.0, n.unsigned_abs() as usize)
                .flatten()
                .collect(),
        )
    }

    /// Cancels adjacent `g g⁻¹` pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// The word with `n` letters removed from each end (empty if too short).
    pub fn trim(&self, n: usize) -> Self {
        if 2 * n >= self.0.len() {
            Word::empty()
        } else {
            Word(self.0[n..self.0.len() - n].to_vec())
        }
    }

    pub fn prefix(&self, n: usize) -> Self {
        Word(self.0[..n].to_vec())
    }
}

impl fmt::Display for Word {
    /// Generators 1..=26 print as `a..z`, inverses in upper case.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            let k = l.unsigned_abs();
            if k <= 26 {
                let c = (b'a' + (k - 1) as u8) as char;
                let c = if l < 0 { c.to_ascii_uppercase() } else { c };
                write!(f, "{c}")?;
            } else {
                write!(f, "[{l}]")?;
            }
        }
        Ok(())
    }
}

/// `⟨t_1, …, t_n | R_1, …, R_m⟩`. JSON: `{"generators": n, "relators": [[…]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PresentationJson", into = "PresentationJson")]
pub struct Presentation {
    n_generators: usize,
    relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: usize,
    relators: Vec<Vec<i32>>,
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = Error;
    fn try_from(j: PresentationJson) -> Result<Self> {
        let relators = j
            .relators
            .into_iter()
            .map(Word::new)
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(j.generators, relators)
    }
}

impl From<Presentation> for PresentationJson {
    fn from(p: Presentation) -> Self {
        PresentationJson {
            generators: p.n_generators,
            relators: p.relators.into_iter().map(|w| w.0).collect(),
        }
    }
}

impl Presentation {
    pub fn new(n_generators: usize, relators: Vec<Word>) -> Result<Self> {
        if n_generators == 0 {
            return Err(Error::invalid("a presentation needs at least one generator"));
        }
        if let Some(w) = relators.iter().find(|w| w.max_generator() > n_generators) {
            return Err(Error::invalid(format!(
                "relator {w} uses a generator beyond {n_generators}"
            )));
        }
        Ok(Self {
            n_generators,
            relators,
        })
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn n_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Euler characteristic `1 − n + m` of the presentation 2-complex.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.n_generators as i64 + self.relators.len() as i64
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }

    pub fn free_group(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// `⟨a, b | a b a⁻¹ b⁻¹⟩`.
    pub fn torus_group() -> Self {
        Self::surface_group(1).expect("genus 1 is valid")
    }

    /// Closed orientable surface: `2g` generators, relator `Π [a_i, b_i]`.
    pub fn surface_group(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::invalid("surface genus must be at least 1"));
        }
        let mut rel = Vec::with_capacity(4 * genus);
        for i in 0..genus as i32 {
            let (a, b) = (2 * i + 1, 2 * i + 2);
            rel.extend_from_slice(&[a, b, -a, -b]);
        }
        Self::new(2 * genus, vec![Word(rel)])
    }

    /// Torus knot group `⟨u, v | u^a v^{-b}⟩`.
    pub fn torus_knot_group(a: u32, b: u32) -> Result<Self> {
        if a < 1 || b < 1 || num_integer::gcd(a, b) != 1 {
            return Err(Error::invalid(format!(
                "torus knot parameters ({a}, {b}) must be coprime and positive"
            )));
        }
        let rel = Word::generator(1)
            .power(a as i64)
            .concat(&Word::generator(2).power(-(b as i64)));
        Self::new(2, vec![rel])
    }

    /// Two-bridge knot group `⟨u, v | w u w⁻¹ v⁻¹⟩`, the relator form of `wu = vw`.
    pub fn two_bridge_group(a: i64, b: i64) -> Result<Self> {
        let w = crate::knots::two_bridge_word(a, b)?;
        let rel = w
            .concat(&Word::generator(1))
            .concat(&w.inverse())
            .concat(&Word::generator(-2));
        Self::new(2, vec![rel])
    }
}

/// Images of the generators. Construct with [`Representation::strict`] to
/// enforce the relators or [`Representation::raw`] for search intermediates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct Representation<T> {
    images: Vec<Su2<T>>,
}

impl<T: Real> Representation<T> {
    pub fn raw(images: Vec<Su2<T>>) -> Self {
        Self { images }
    }

    /// Checks generator count and that every relator evaluates within `tol`
    /// of the identity.
    pub fn strict(p: &Presentation, images: Vec<Su2<T>>, tol: T) -> Result<Self> {
        if images.len() != p.n_generators() {
            return Err(Error::invalid(format!(
                "{} images supplied for {} generators",
                images.len(),
                p.n_generators()
            )));
        }
        let rep = Self { images };
        let res = rep.relator_residual(p)?;
        if res > tol {
            return Err(Error::numerical(format!(
                "relator residual {res} exceeds {tol}"
            )));
        }
        Ok(rep)
    }

    pub fn images(&self) -> &[Su2<T>] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> Su2<T> {
        self.images[generator - 1]
    }

    pub fn n_generators(&self) -> usize {
        self.images.len()
    }

    fn letter(&self, l: i32) -> Result<Su2<T>> {
        let k = l.unsigned_abs() as usize;
        let g = self.images.get(k.wrapping_sub(1)).ok_or_else(|| {
            Error::invalid(format!(
                "generator {k} out of range for {} images",
                self.images.len()
            ))
        })?;
        Ok(if l < 0 { g.inverse() } else { *g })
    }

    /// Ordered product of the letters' images.
    pub fn evaluate(&self, w: &Word) -> Result<Su2<T>> {
        w.0.iter()
            .try_fold(Su2::identity(), |acc, &l| Ok(acc.compose(&self.letter(l)?)))
    }

    /// Largest distance of a relator image from the identity.
    pub fn relator_residual(&self, p: &Presentation) -> Result<T> {
        p.relators().iter().try_fold(T::zero(), |m, r| {
            Ok(m.max(self.evaluate(r)?.distance(&Su2::identity())))
        })
    }

    /// Fox block `∂R/∂t_gen`: the sum over occurrences of `gen` in `relator`
    /// of `+Ad(prefix before the letter)` for positive letters and
    /// `−Ad(prefix through the letter)` for inverse letters.
    pub fn fox_block(&self, relator: &Word, gen: usize) -> Result<Matrix<T>> {
        let mut out = Matrix::zeros(3, 3);
        let mut prefix = Su2::identity();
        for &l in relator.letters() {
            let g = self.letter(l)?;
            let hit = l.unsigned_abs() as usize == gen;
            if hit && l > 0 {
                out.add_block(0, 0, &prefix.adjoint_matrix().to_matrix());
            }
            prefix = prefix.compose(&g);
            if hit && l < 0 {
                out.add_block(0, 0, &prefix.adjoint_matrix().to_matrix().scale(-T::one()));
            }
        }
        Ok(out)
    }

    /// Value on a letter of the crossed homomorphism determined by per-generator values.
    pub fn crossed_letter(&self, cochain: &[Su2Vec<T>], l: i32) -> Result<Su2Vec<T>> {
        let k = l.unsigned_abs() as usize;
        let u = *cochain
            .get(k.wrapping_sub(1))
            .ok_or_else(|| Error::invalid(format!("cochain has no value for generator {k}")))?;
        if l > 0 {
            Ok(u)
        } else {
            let v = self.letter(l)?.ad(u);
            Ok([-v[0], -v[1], -v[2]])
        }
    }

    /// Extends a per-generator cochain by `u(gh) = u(g) + Ad_g u(h)` and
    /// `u(g⁻¹) = −Ad_{g⁻¹} u(g)`.
    pub fn crossed_extension(&self, cochain: &[Su2Vec<T>], w: &Word) -> Result<Su2Vec<T>> {
        let mut acc = [T::zero(); 3];
        let mut prefix = Su2::identity();
        for &l in w.letters() {
            let v = prefix.ad(self.crossed_letter(cochain, l)?);
            for i in 0..3 {
                acc[i] = acc[i] + v[i];
            }
            prefix = prefix.compose(&self.letter(l)?);
        }
        Ok(acc)
    }
}

/// Abelian representation of the torus group sending the generators to
/// `diag(e^{iφ})` and `diag(e^{iψ})`.
pub fn abelian_torus_rep<T: Real>(phi: T, psi: T) -> Representation<T> {
    Representation::raw(vec![Su2::diagonal(phi), Su2::diagonal(psi)])
}

/// Random representation of the genus-`g` surface group: the first `g − 1`
/// handle pairs are Haar random and the last pair solves
/// `[a_g, b_g] = (Π_{i<g} [a_i, b_i])⁻¹`. Generically irreducible.
pub fn random_surface_rep<T: Real, R: Rng + ?Sized>(
    genus: usize,
    rng: &mut R,
) -> Result<Representation<T>> {
    let p = Presentation::surface_group(genus)?;
    let mut images = Vec::with_capacity(2 * genus);
    let mut partial = Su2::identity();
    for _ in 1..genus {
        let a = Su2::random(rng);
        let b = Su2::random(rng);
        partial = partial.compose(&a.compose(&b).compose(&a.inverse()).compose(&b.inverse()));
        images.push(a);
        images.push(b);
    }
    let (a, b) = commutator_solution(&partial.inverse(), rng);
    images.push(a);
    images.push(b);
    Representation::strict(&p, images, T::lit(RELATOR_TOL))
}

/// Finds `(a, b)` with `a b a⁻¹ b⁻¹ = target`. `b` is a random pure unit
/// quaternion orthogonal to the axis of `target`, so `target·b` is again pure
/// and `a` rotates `b` onto it.
pub fn commutator_solution<T: Real, R: Rng + ?Sized>(
    target: &Su2<T>,
    rng: &mut R,
) -> (Su2<T>, Su2<T>) {
    let m = target.vector_part();
    let mut n;
    loop {
        let r = Su2::<T>::random(rng).vector_part();
        // r minus its component along m
        let mm = m[0] * m[0] + m[1] * m[1] + m[2] * m[2];
        let c = if mm > T::zero() {
            (r[0] * m[0] + r[1] * m[1] + r[2] * m[2]) / mm
        } else {
            T::zero()
        };
        n = [r[0] - c * m[0], r[1] - c * m[1], r[2] - c * m[2]];
        if crate::su2::norm3(n) > T::lit(1e-3) {
            break;
        }
    }
    let b = Su2::from_angle_axis(T::FRAC_PI_2(), n);
    let p = target.compose(&b).vector_part();
    let nb = b.vector_part();
    let dot = nb[0] * p[0] + nb[1] * p[1] + nb[2] * p[2];
    let cross = [
        nb[1] * p[2] - nb[2] * p[1],
        nb[2] * p[0] - nb[0] * p[2],
        nb[0] * p[1] - nb[1] * p[0],
    ];
    let rot = if dot > T::lit(-1.0 + 1e-9) {
        Su2::new(T::one() + dot, cross[0], cross[1], cross[2])
    } else {
        // antipodal: a half turn about any axis orthogonal to nb
        let e = if nb[0].abs() < T::lit(0.9) {
            [T::one(), T::zero(), T::zero()]
        } else {
            [T::zero(), T::one(), T::zero()]
        };
        let ax = [
            nb[1] * e[2] - nb[2] * e[1],
            nb[2] * e[0] - nb[0] * e[2],
            nb[0] * e[1] - nb[1] * e[0],
        ];
        Su2::new(T::zero(), ax[0], ax[1], ax[2])
    };
    let twist = Su2::from_angle_axis(T::lit(rng.random_range(0.0..std::f64::consts::TAU)), p);
    (twist.compose(&rot), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::haar_random;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(v: &[i32]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    fn random_rep(n: usize, seed: u64) -> Representation<f64> {
        Representation::raw((0..n).map(|i| haar_random(seed * 31 + i as u64)).collect())
    }

    #[test]
    fn evaluate_basic_words() {
        let rep = random_rep(2, 1);
        assert_eq!(rep.evaluate(&Word::empty()).unwrap(), Su2::identity());
        let e = rep.evaluate(&w(&[1, -1])).unwrap();
        assert!(e.distance(&Su2::identity()) < 1e-12);
        assert!(rep.evaluate(&w(&[3])).is_err());
    }

    #[test]
    fn word_rejects_zero_and_prints() {
        assert!(Word::new(vec![1, 0]).is_err());
        assert_eq!(w(&[1, -2, -1, 2]).to_string(), "aBAb");
        assert_eq!(w(&[1, 2, -2, 1]).free_reduce(), w(&[1, 1]));
        assert_eq!(w(&[1, 2, 1, 2]).trim(1), w(&[2, 1]));
        assert_eq!(w(&[1, 2]).trim(1), Word::empty());
    }

    #[test]
    fn torus_knot_relator_holds_at_valid_rep() {
        let p = Presentation::torus_knot_group(3, 2).unwrap();
        assert_eq!(p.relators()[0], w(&[1, 1, 1, -2, -2]));
        // u of angle π/3 and v of angle π/2 cube/square to −1.
        let u = Su2::<f64>::diagonal(std::f64::consts::PI / 3.0);
        let v = haar_random::<f64>(4).conjugate(&Su2::diagonal(std::f64::consts::FRAC_PI_2));
        let rep = Representation::strict(&p, vec![u, v], 1e-8).unwrap();
        assert!(rep.evaluate(&p.relators()[0]).unwrap().distance(&Su2::identity()) < 1e-8);
    }

    #[test]
    fn builder_shapes() {
        let s = Presentation::surface_group(2).unwrap();
        assert_eq!(s.n_generators(), 4);
        assert_eq!(s.relators()[0].len(), 8);
        let tb = Presentation::two_bridge_group(5, 3).unwrap();
        let wd = w(&[1, -2, -1, 2]);
        let expected = wd.concat(&w(&[1])).concat(&wd.inverse()).concat(&w(&[-2]));
        assert_eq!(tb.relators()[0], expected);
        assert!(Presentation::torus_knot_group(4, 2).is_err());
        assert!(Presentation::surface_group(0).is_err());
        assert!(Presentation::two_bridge_group(5, 2).is_err());
        assert_eq!(Presentation::free_group(3).unwrap().n_relators(), 0);
    }

    #[test]
    fn presentation_json_schema() {
        let p = Presentation::from_json(r#"{"generators": 2, "relators": [[1, 2, -1, -2]]}"#)
            .unwrap();
        assert_eq!(p, Presentation::torus_group());
        assert_eq!(p.to_json(), r#"{"generators":2,"relators":[[1,2,-1,-2]]}"#);
        assert!(Presentation::from_json(r#"{"generators": 1, "relators": [[2]]}"#).is_err());
        assert!(Presentation::from_json(r#"{"generators": 0, "relators": []}"#).is_err());
    }

    #[test]
    fn fox_block_trivial_cases() {
        let rep = random_rep(2, 3);
        let single = rep.fox_block(&w(&[1]), 1).unwrap();
        assert!(single.sub(&Matrix::identity(3)).max_abs() < 1e-15);
        let cancel = rep.fox_block(&w(&[1, -1]), 1).unwrap();
        assert!(cancel.max_abs() < 1e-12);
        assert!(rep.fox_block(&w(&[2]), 1).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn crossed_extension_basics() {
        let rep = random_rep(2, 5);
        let u = [[0.1, 0.2, 0.3], [-0.5, 0.4, 1.0]];
        assert_eq!(rep.crossed_extension(&u, &Word::empty()).unwrap(), [0.0; 3]);
        assert_eq!(rep.crossed_extension(&u, &w(&[2])).unwrap(), u[1]);
        let z = rep.crossed_extension(&u, &w(&[1, -1])).unwrap();
        assert!(z.iter().all(|c| c.abs() < 1e-14));
    }

    #[test]
    fn random_surface_reps_satisfy_relator() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for g in 1..=3 {
            let p = Presentation::surface_group(g).unwrap();
            let rep: Representation<f64> = random_surface_rep(g, &mut rng).unwrap();
            assert!(rep.relator_residual(&p).unwrap() < 1e-10);
        }
    }

    #[test]
    fn strict_rejects_non_representations() {
        let p = Presentation::torus_group();
        let imgs = vec![haar_random::<f64>(1), haar_random(2)];
        assert!(matches!(
            Representation::strict(&p, imgs, 1e-8),
            Err(Error::Numerical(_))
        ));
        assert!(Representation::<f64>::strict(&p, vec![Su2::identity()], 1e-8).is_err());
    }

    proptest! {
        #[test]
        fn evaluation_is_multiplicative(
            a in prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..12),
            b in prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..12),
            seed in any::<u64>(),
        ) {
            let rep = random_rep(3, seed % 1000);
            let (wa, wb) = (w(&a), w(&b));
            let lhs = rep.evaluate(&wa.concat(&wb)).unwrap();
            let rhs = rep.evaluate(&wa).unwrap() * rep.evaluate(&wb).unwrap();
            prop_assert!(lhs.distance(&rhs) < 1e-12);
        }

        #[test]
        fn coboundary_extends_to_coboundary(
            word in prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..14),
            seed in any::<u64>(),
        ) {
            let rep = random_rep(3, seed % 1000);
            let xi = [0.4, -0.9, 0.25];
            let u: Vec<Su2Vec<f64>> = rep.images().iter().map(|g| {
                let a = g.ad(xi);
                [xi[0] - a[0], xi[1] - a[1], xi[2] - a[2]]
            }).collect();
            let wd = w(&word);
            let ext = rep.crossed_extension(&u, &wd).unwrap();
            let g = rep.evaluate(&wd).unwrap().ad(xi);
            for i in 0..3 {
                prop_assert!((ext[i] - (xi[i] - g[i])).abs() < 1e-10);
            }
        }
    }
}
