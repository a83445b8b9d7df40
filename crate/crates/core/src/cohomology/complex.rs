use log::warn;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Presentation, Representation, Word, RELATOR_TOL};
use crate::linalg::{rank, Matrix, RankInfo};
use crate::scalar::Real;

/// Default relative rank tolerance.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Cochain complex `C⁰ → C¹ → C²` of the presentation 2-complex with
/// coefficients in su(2) twisted by `Ad ρ`. Dimensions `3`, `3n`, `3m`.
#[derive(Debug, Clone)]
pub struct TwistedComplex<T> {
    pub d0: Matrix<T>,
    pub d1: Matrix<T>,
    pub n: usize,
    pub m: usize,
}

impl<T: Real> TwistedComplex<T> {
    /// `d⁰` stacks the blocks `I − Ad ρ(t_i)`; row block `j` of `d¹` holds
    /// the Fox blocks of relator `j`.
    pub fn build(p: &Presentation, rep: &Representation<T>) -> Result<Self> {
        let n = p.n_generators();
        let m = p.n_relators();
        if rep.n_generators() != n {
            return Err(Error::invalid(format!(
                "representation has {} images, presentation has {n} generators",
                rep.n_generators()
            )));
        }
        let mut d0 = Matrix::zeros(3 * n, 3);
        let id = Matrix::identity(3);
        for (i, g) in rep.images().iter().enumerate() {
            d0.add_block(3 * i, 0, &id.sub(&g.adjoint_matrix().to_matrix()));
        }
        let mut d1 = Matrix::zeros(3 * m, 3 * n);
        for (j, r) in p.relators().iter().enumerate() {
            for gen in 1..=n {
                d1.add_block(3 * j, 3 * (gen - 1), &rep.fox_block(r, gen)?);
            }
        }
        Ok(Self { d0, d1, n, m })
    }

    /// Largest entry of `d¹ d⁰`.
    pub fn cochain_residual(&self) -> T {
        if self.m == 0 {
            return T::zero();
        }
        (&self.d1 * &self.d0).max_abs()
    }

    pub fn euler_characteristic(&self) -> i64 {
        1 - self.n as i64 + self.m as i64
    }

    /// Betti numbers from singular-value ranks at threshold
    /// `tol · max(1, σ_max)`.
    pub fn cohomology(&self, tol: T) -> CohomologySummary {
        let r0 = rank(&self.d0, tol);
        let r1 = rank(&self.d1, tol);
        let h0 = 3 - r0.rank;
        let h1 = 3 * self.n - r1.rank - r0.rank;
        let h2 = 3 * self.m - r1.rank;
        let ill = r0.is_ill_conditioned() || r1.is_ill_conditioned();
        if ill {
            warn!(
                "ill-conditioned rank decision: d0 gaps ({}, {}), d1 gaps ({}, {})",
                r0.gap_below, r0.gap_above, r1.gap_below, r1.gap_above
            );
        }
        CohomologySummary {
            h0,
            h1,
            h2,
            euler: h0 as i64 - h1 as i64 + h2 as i64,
            chi: self.euler_characteristic(),
            tolerance: tol.as_f64(),
            d0: RankReport::from(&r0),
            d1: RankReport::from(&r1),
            ill_conditioned: ill,
        }
    }
}

/// Singular values and rank of one differential, for auditing.
#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub threshold: f64,
    pub singular_values: Vec<f64>,
    /// Ratio of the smallest kept singular value to the threshold.
    pub gap_above: f64,
    /// Ratio of the largest dropped singular value to the threshold.
    pub gap_below: f64,
}

impl<T: Real> From<&RankInfo<T>> for RankReport {
    fn from(r: &RankInfo<T>) -> Self {
        RankReport {
            rank: r.rank,
            threshold: r.threshold.as_f64(),
            singular_values: r.singular_values.iter().map(|s| s.as_f64()).collect(),
            gap_above: r.gap_above.as_f64(),
            gap_below: r.gap_below.as_f64(),
        }
    }
}

/// `dim H⁰, H¹, H²` with diagnostics. `euler` always equals `3 · chi`.
#[derive(Debug, Clone, Serialize)]
pub struct CohomologySummary {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub euler: i64,
    pub chi: i64,
    pub tolerance: f64,
    pub d0: RankReport,
    pub d1: RankReport,
    pub ill_conditioned: bool,
}

impl CohomologySummary {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.h0, self.h1, self.h2)
    }
}

pub fn build_complex<T: Real>(
    p: &Presentation,
    rep: &Representation<T>,
) -> Result<TwistedComplex<T>> {
    TwistedComplex::build(p, rep)
}

pub fn cohomology_dims<T: Real>(c: &TwistedComplex<T>, tol: T) -> CohomologySummary {
    c.cohomology(tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepClass {
    Central,
    Abelian,
    Irreducible,
}

/// Classifies by `dim H⁰ = dim ker d⁰`: 3 central, 1 abelian, 0 irreducible.
/// An ill-conditioned rank is an error rather than a guess.
pub fn classify<T: Real>(rep: &Representation<T>, tol: T) -> Result<RepClass> {
    let n = rep.n_generators();
    let free = Presentation::free_group(n.max(1))?;
    let rep = if n == 0 {
        Representation::raw(vec![crate::su2::Su2::identity()])
    } else {
        rep.clone()
    };
    let c = TwistedComplex::build(&free, &rep)?;
    let r0 = rank(&c.d0, tol);
    if r0.is_ill_conditioned() {
        return Err(Error::numerical(format!(
            "ambiguous rank of d0: singular values {:?} near threshold {}",
            r0.singular_values
                .iter()
                .map(|s| s.as_f64())
                .collect::<Vec<_>>(),
            r0.threshold
        )));
    }
    match 3 - r0.rank {
        3 => Ok(RepClass::Central),
        1 => Ok(RepClass::Abelian),
        0 => Ok(RepClass::Irreducible),
        h => Err(Error::numerical(format!("impossible dim H^0 = {h}"))),
    }
}

pub fn is_irreducible<T: Real>(rep: &Representation<T>, tol: T) -> Result<bool> {
    Ok(classify(rep, tol)? == RepClass::Irreducible)
}

pub fn is_central<T: Real>(rep: &Representation<T>, tol: T) -> Result<bool> {
    Ok(classify(rep, tol)? == RepClass::Central)
}

/// Outcome of the regularity test for a 3-manifold group with boundary.
#[derive(Debug, Clone, Serialize)]
pub struct RegularityReport {
    pub class: RepClass,
    pub h1_manifold: usize,
    pub h1_boundary: usize,
    pub regular: bool,
    pub manifold: CohomologySummary,
    pub boundary: CohomologySummary,
}

/// `ρ` is regular when it is irreducible and
/// `dim H¹(M; Ad ρ) = ½ dim H¹(∂M; Ad ρ)`. The boundary representation is
/// the restriction along `peripheral`, one word of the manifold group per
/// boundary generator; it must satisfy the boundary relators.
pub fn regularity<T: Real>(
    manifold: &Presentation,
    boundary: &Presentation,
    rep: &Representation<T>,
    peripheral: &[Word],
    tol: T,
) -> Result<RegularityReport> {
    if peripheral.len() != boundary.n_generators() {
        return Err(Error::invalid(format!(
            "{} peripheral words for {} boundary generators",
            peripheral.len(),
            boundary.n_generators()
        )));
    }
    let images = peripheral
        .iter()
        .map(|w| rep.evaluate(w))
        .collect::<Result<Vec<_>>>()?;
    let boundary_rep =
        Representation::strict(boundary, images, T::lit(RELATOR_TOL)).map_err(|e| {
            Error::invalid(format!("peripheral words do not define a boundary representation: {e}"))
        })?;
    let class = classify(rep, tol)?;
    let msum = TwistedComplex::build(manifold, rep)?.cohomology(tol);
    let bsum = TwistedComplex::build(boundary, &boundary_rep)?.cohomology(tol);
    let regular = class == RepClass::Irreducible && 2 * msum.h1 == bsum.h1;
    Ok(RegularityReport {
        class,
        h1_manifold: msum.h1,
        h1_boundary: bsum.h1,
        regular,
        manifold: msum,
        boundary: bsum,
    })
}

pub fn is_regular<T: Real>(
    manifold: &Presentation,
    boundary: &Presentation,
    rep: &Representation<T>,
    peripheral: &[Word],
    tol: T,
) -> Result<bool> {
    Ok(regularity(manifold, boundary, rep, peripheral, tol)?.regular)
}
