use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, rank, Matrix};
use crate::scalar::Real;

use super::complex::TwistedComplex;

/// Cochain complex `C⁰ → C¹ → ⋯ → C^N` with standard bases, plus a chosen
/// basis of each cohomology group. `maps[i]` is `D_i: C^i → C^{i+1}` as a
/// `dim C^{i+1} × dim C^i` matrix.
#[derive(Debug, Clone)]
pub struct BasedComplex<T> {
    dims: Vec<usize>,
    maps: Vec<Matrix<T>>,
    homology: Vec<Vec<Vec<T>>>,
}

/// `|τ|` and the sign of the product of determinants before taking
/// absolute values.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TorsionValue<T> {
    pub magnitude: T,
    pub sign: i8,
}

/// Order in which columns are tried when choosing lifts of image bases.
#[derive(Debug, Clone, Copy)]
pub enum LiftOrder {
    Natural,
    Shuffled(u64),
}

impl<T: Real> BasedComplex<T> {
    /// `dims` has one entry per degree; maps must chain up and compose to zero.
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix<T>>) -> Result<Self> {
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(Error::invalid(format!(
                "{} maps for {} degrees",
                maps.len(),
                dims.len()
            )));
        }
        for (i, d) in maps.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(Error::invalid(format!(
                    "map {i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for i in 1..maps.len() {
            let comp = &maps[i] * &maps[i - 1];
            let scale = T::one().max(maps[i].max_abs() * maps[i - 1].max_abs());
            if comp.max_abs() > T::lit(1e-8) * scale {
                return Err(Error::invalid(format!("D_{i} D_{} is not zero", i - 1)));
            }
        }
        let homology = vec![Vec::new(); dims.len()];
        Ok(Self { dims, maps, homology })
    }

    pub fn from_twisted(c: &TwistedComplex<T>) -> Result<Self> {
        Self::new(
            vec![3, 3 * c.n, 3 * c.m],
            vec![c.d0.clone(), c.d1.clone()],
        )
    }

    /// Basis of `H^i` as cocycle vectors in `C^i`, one list per degree.
    pub fn with_homology(mut self, bases: Vec<Vec<Vec<T>>>) -> Result<Self> {
        if bases.len() != self.dims.len() {
            return Err(Error::invalid(format!(
                "homology bases given for {} degrees, complex has {}",
                bases.len(),
                self.dims.len()
            )));
        }
        for (i, b) in bases.iter().enumerate() {
            if b.iter().any(|v| v.len() != self.dims[i]) {
                return Err(Error::invalid(format!("homology vector of wrong length in degree {i}")));
            }
        }
        self.homology = bases;
        Ok(self)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<T>] {
        &self.maps
    }

    fn map(&self, i: usize) -> Option<&Matrix<T>> {
        self.maps.get(i)
    }

    fn map_rank(&self, i: usize, tol: T) -> usize {
        self.map(i).map_or(0, |d| rank(d, tol).rank)
    }

    /// `dim H^i` from singular-value ranks.
    pub fn betti(&self, tol: T) -> Vec<usize> {
        (0..self.dims.len())
            .map(|i| {
                let below = if i == 0 { 0 } else { self.map_rank(i - 1, tol) };
                self.dims[i] - self.map_rank(i, tol) - below
            })
            .collect()
    }
}

/// Greedy column pivoting: indices of columns of `d` (tried in `order`)
/// whose images form a basis of the column space.
fn pivot_columns<T: Real>(d: &Matrix<T>, target: usize, order: &[usize], tol: T) -> Vec<usize> {
    let scale = T::one().max(d.max_abs());
    let mut q: Vec<Vec<T>> = Vec::new();
    let mut picked = Vec::new();
    for &j in order {
        if picked.len() == target {
            break;
        }
        let mut v = d.column(j);
        for _ in 0..2 {
            for e in &q {
                let c = dot(&v, e);
                for (vi, ei) in v.iter_mut().zip(e) {
                    *vi = *vi - c * *ei;
                }
            }
        }
        let n = dot(&v, &v).sqrt();
        if n > tol.sqrt() * scale {
            q.push(v.iter().map(|x| *x / n).collect());
            picked.push(j);
        }
    }
    picked
}

/// Projection onto the orthogonal complement of `span(b)`.
fn project_out<T: Real>(v: &[T], b: &[Vec<T>]) -> Vec<T> {
    if b.is_empty() {
        return v.to_vec();
    }
    let bm = Matrix::from_columns(v.len(), b);
    let ortho = crate::linalg::column_space(&bm, T::lit(1e-12));
    let mut out = v.to_vec();
    for _ in 0..2 {
        for e in &ortho {
            let c = dot(&out, e);
            for (o, ei) in out.iter_mut().zip(e) {
                *o = *o - c * *ei;
            }
        }
    }
    out
}

/// Torsion `Π_i |det[b^{i−1} ⊔ h^i ⊔ lift(b^i)]|^{(−1)^{i+1}}` with respect
/// to the standard cochain bases. Image bases `b^i` are columns of `D_i`
/// selected by pivoting, lifts are the corresponding standard basis vectors.
/// Cohomology representatives are first projected off `im D_{i−1}`.
pub fn torsion<T: Real>(c: &BasedComplex<T>, tol: T) -> Result<TorsionValue<T>> {
    torsion_with_order(c, tol, LiftOrder::Natural)
}

pub fn torsion_with_order<T: Real>(
    c: &BasedComplex<T>,
    tol: T,
    order: LiftOrder,
) -> Result<TorsionValue<T>> {
    let n = c.dims.len();
    let betti = c.betti(tol);
    for i in 0..n {
        if c.homology[i].len() != betti[i] {
            return Err(Error::invalid(format!(
                "inconsistent homology bases: degree {i} has dimension {} but {} vectors given",
                betti[i],
                c.homology[i].len()
            )));
        }
    }

    let mut rng = match order {
        LiftOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        LiftOrder::Natural => None,
    };
    // lifts[i]: pivot columns of D_i; images[i]: those columns, living in C^{i+1}
    let mut lifts: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut images: Vec<Vec<Vec<T>>> = Vec::with_capacity(n);
    for i in 0..n {
        match c.map(i) {
            Some(d) => {
                let mut cols: Vec<usize> = (0..d.cols()).collect();
                if let Some(r) = rng.as_mut() {
                    cols.shuffle(r);
                }
                let r = c.map_rank(i, tol);
                let piv = pivot_columns(d, r, &cols, tol);
                if piv.len() != r {
                    return Err(Error::numerical(format!(
                        "column pivoting found {} of {r} image vectors in degree {i}",
                        piv.len()
                    )));
                }
                images.push(piv.iter().map(|&j| d.column(j)).collect());
                lifts.push(piv);
            }
            None => {
                images.push(Vec::new());
                lifts.push(Vec::new());
            }
        }
    }

    let mut magnitude = T::one();
    let mut sign: i8 = 1;
    for i in 0..n {
        let dim = c.dims[i];
        if dim == 0 {
            continue;
        }
        let below: &[Vec<T>] = if i == 0 { &[] } else { &images[i - 1] };
        let mut cols: Vec<Vec<T>> = below.to_vec();
        for h in &c.homology[i] {
            if let Some(d) = c.map(i) {
                let img = d.mul_vec(h);
                let res = img.iter().fold(T::zero(), |m, v| m.max(v.abs()));
                if res > T::lit(1e-8) * T::one().max(d.max_abs()) {
                    return Err(Error::invalid(format!(
                        "homology vector in degree {i} is not a cocycle"
                    )));
                }
            }
            cols.push(project_out(h, below));
        }
        for &j in &lifts[i] {
            let mut e = vec![T::zero(); dim];
            e[j] = T::one();
            cols.push(e);
        }
        debug_assert_eq!(cols.len(), dim);
        let det = Matrix::from_columns(dim, &cols).determinant();
        if det.abs() <= T::lit(1e-300) || !det.is_finite() {
            return Err(Error::invalid(format!(
                "degenerate basis in degree {i}: homology vectors are dependent modulo coboundaries"
            )));
        }
        if det < T::zero() {
            sign = -sign;
        }
        magnitude = if i % 2 == 1 {
            magnitude * det.abs()
        } else {
            magnitude / det.abs()
        };
    }
    Ok(TorsionValue { magnitude, sign })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelian_torus_rep, Presentation};

    fn circle(theta: f64) -> BasedComplex<f64> {
        let (s, c) = theta.sin_cos();
        let d = Matrix::from_rows(&[vec![1.0 - c, s], vec![-s, 1.0 - c]]);
        BasedComplex::new(vec![2, 2], vec![d]).unwrap()
    }

    #[test]
    fn circle_rotation() {
        for theta in [0.3, 1.0, 2.5, std::f64::consts::PI] {
            let t = torsion(&circle(theta), 1e-10).unwrap();
            assert!((t.magnitude - (2.0 - 2.0 * theta.cos())).abs() < 1e-12);
        }
    }

    #[test]
    fn circle_identity_with_homology() {
        let e = |i: usize| {
            let mut v = vec![0.0; 2];
            v[i] = 1.0;
            v
        };
        let c = circle(0.0)
            .with_homology(vec![vec![e(0), e(1)], vec![e(0), e(1)]])
            .unwrap();
        let t = torsion(&c, 1e-10).unwrap();
        assert!((t.magnitude - 1.0).abs() < 1e-14);
    }

    #[test]
    fn acyclic_invertible_map() {
        let d = Matrix::from_rows(&[
            vec![2.0_f64, 1.0, 0.0],
            vec![0.0, 3.0, 1.0],
            vec![1.0, 0.0, 4.0],
        ]);
        let det = d.determinant().abs();
        let c = BasedComplex::new(vec![3, 3], vec![d]).unwrap();
        assert!((torsion(&c, 1e-10).unwrap().magnitude - det).abs() < 1e-10);
    }

    #[test]
    fn missing_homology_is_rejected() {
        assert!(torsion(&circle(0.0), 1e-10).is_err());
    }

    #[test]
    fn lift_choice_does_not_matter() {
        let p = Presentation::torus_group();
        let rep = abelian_torus_rep(0.9_f64, 2.1);
        let tc = TwistedComplex::build(&p, &rep).unwrap();
        let basis = |i: usize, d: usize| {
            let mut v = vec![0.0; d];
            v[i] = 1.0;
            v
        };
        // cohomology of the abelian torus rep is spanned by the diagonal direction
        let h = vec![
            vec![basis(0, 3)],
            vec![basis(0, 6), basis(3, 6)],
            vec![basis(0, 3)],
        ];
        let c = BasedComplex::from_twisted(&tc).unwrap().with_homology(h).unwrap();
        let t0 = torsion(&c, 1e-10).unwrap().magnitude;
        for seed in 0..20 {
            let t = torsion_with_order(&c, 1e-10, LiftOrder::Shuffled(seed)).unwrap();
            assert!((t.magnitude - t0).abs() < 1e-10 * t0.max(1.0));
        }
    }

    #[test]
    fn rejects_non_complex() {
        let a = Matrix::from_rows(&[vec![1.0]]);
        assert!(BasedComplex::new(vec![1, 1, 1], vec![a.clone(), a]).is_err());
    }
}
