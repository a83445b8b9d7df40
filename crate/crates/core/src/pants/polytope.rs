use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::exact;
use crate::scalar::{rational_string, Field};

use super::graph::TrivalentGraph;

/// Largest dimension accepted by the exact volume routine (genus 3).
pub const EXACT_DIM_CAP: usize = 6;

/// Samples per Monte Carlo work unit. Each unit has its own RNG stream, so
/// results depend only on the seed and sample count.
pub const MC_CHUNK: u64 = 1 << 16;

/// `{t ∈ [0,1]^d : a·t ≤ b for every row}`. Cube bounds are always present.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope<F> {
    dim: usize,
    rows: Vec<(Vec<F>, F)>,
}

impl<F: Field> Polytope<F> {
    /// Adds the cube bounds and drops duplicate rows.
    pub fn new(dim: usize, rows: Vec<(Vec<F>, F)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("polytope of dimension 0"));
        }
        if let Some((a, _)) = rows.iter().find(|(a, _)| a.len() != dim) {
            return Err(Error::invalid(format!(
                "inequality has {} coefficients, dimension is {dim}",
                a.len()
            )));
        }
        let mut out: Vec<(Vec<F>, F)> = Vec::new();
        let cube = (0..dim).flat_map(|i| {
            let mut lo = vec![F::zero(); dim];
            lo[i] = -F::one();
            let mut hi = vec![F::zero(); dim];
            hi[i] = F::one();
            [(lo, F::zero()), (hi, F::one())]
        });
        for row in rows.into_iter().chain(cube) {
            if row.0.iter().all(|c| c.is_negligible()) {
                if row.1 < F::zero() {
                    return Err(Error::invalid("inequality 0 ≤ negative makes the polytope empty"));
                }
                continue;
            }
            if !out.contains(&row) {
                out.push(row);
            }
        }
        Ok(Self { dim, rows: out })
    }

    pub fn unit_cube(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[(Vec<F>, F)] {
        &self.rows
    }

    fn slack(&self, row: usize, t: &[F]) -> F {
        let (a, b) = &self.rows[row];
        let lhs = a
            .iter()
            .zip(t)
            .fold(F::zero(), |s, (c, x)| s + c.clone() * x.clone());
        b.clone() - lhs
    }

    pub fn contains(&self, t: &[F]) -> bool {
        (0..self.rows.len()).all(|r| {
            let s = self.slack(r, t);
            s >= F::zero() || s.is_negligible()
        })
    }

    fn tight(&self, row: usize, t: &[F]) -> bool {
        self.slack(row, t).is_negligible()
    }

    /// Vertices from all `d`-subsets of rows whose system has a unique
    /// feasible solution. Deduplicated, in discovery order. Subsets are
    /// screened in `f64` first; survivors are re-solved and checked in `F`.
    pub fn vertices(&self) -> Vec<Vec<F>> {
        let d = self.dim;
        let subsets = combinations(self.rows.len(), d);
        let approx = self.to_f64();
        let candidates: Vec<(Vec<i64>, &Vec<usize>)> = subsets
            .par_iter()
            .filter_map(|idx| {
                let x = solve_f64(&approx.rows, idx)?;
                let feasible = approx.rows.iter().all(|(a, b)| {
                    let lhs: f64 = a.iter().zip(&x).map(|(c, t)| c * t).sum();
                    lhs <= b + 1e-7 * (1.0 + b.abs())
                });
                let key = x.iter().map(|t| (t * 1e7).round() as i64).collect();
                feasible.then_some((key, idx))
            })
            .collect();
        // degenerate vertices are hit by many subsets; solve each point once
        let mut reps: HashMap<Vec<i64>, &Vec<usize>> = HashMap::new();
        for (key, idx) in candidates {
            reps.entry(key).or_insert(idx);
        }
        let mut reps: Vec<_> = reps.into_iter().collect();
        reps.sort();
        let found: Vec<Vec<F>> = reps
            .par_iter()
            .filter_map(|(_, idx)| {
                let a: Vec<Vec<F>> = idx.iter().map(|&r| self.rows[r].0.clone()).collect();
                let b: Vec<F> = idx.iter().map(|&r| self.rows[r].1.clone()).collect();
                let x = exact::solve(&a, &b)?;
                self.contains(&x).then_some(x)
            })
            .collect();
        let mut out: Vec<Vec<F>> = Vec::new();
        for v in found {
            if !out.iter().any(|w| same_point(w, &v)) {
                out.push(v);
            }
        }
        out
    }

    /// Exact volume by a pulling triangulation: every face is coned from its
    /// lowest-index vertex over the facets not containing it.
    pub fn volume(&self) -> Result<F> {
        if self.dim > EXACT_DIM_CAP {
            return Err(Error::invalid(format!(
                "exact volume refused in dimension {} (cap {EXACT_DIM_CAP})",
                self.dim
            )));
        }
        let verts = self.vertices();
        if verts.is_empty() {
            return Err(Error::invalid("polytope is empty"));
        }
        let tight: Vec<BTreeSet<usize>> = (0..self.rows.len())
            .map(|r| (0..verts.len()).filter(|&v| self.tight(r, &verts[v])).collect())
            .collect();
        let all: BTreeSet<usize> = (0..verts.len()).collect();
        if affine_dim(&verts, &all) < self.dim {
            return Ok(F::zero());
        }
        let mut memo = HashMap::new();
        let simplices = triangulate(&verts, &tight, &all, self.dim, &mut memo);
        let mut fact = F::one();
        for k in 2..=self.dim {
            fact = fact * F::from_ratio(k as i64, 1);
        }
        let mut vol = F::zero();
        for s in simplices.iter() {
            let v0 = &verts[s[0]];
            let m: Vec<Vec<F>> = s[1..]
                .iter()
                .map(|&i| {
                    verts[i]
                        .iter()
                        .zip(v0)
                        .map(|(a, b)| a.clone() - b.clone())
                        .collect()
                })
                .collect();
            vol = vol + exact::determinant(&m).abs();
        }
        Ok(vol / fact)
    }

    /// Converts to `f64` rows for sampling.
    pub fn to_f64(&self) -> Polytope<f64> {
        Polytope {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|(a, b)| (a.iter().map(Field::to_f64).collect(), b.to_f64()))
                .collect(),
        }
    }
}

/// Partial-pivot solve of the selected rows; `None` when (nearly) singular.
fn solve_f64(rows: &[(Vec<f64>, f64)], idx: &[usize]) -> Option<Vec<f64>> {
    let n = idx.len();
    let mut m: Vec<Vec<f64>> = idx
        .iter()
        .map(|&r| {
            let mut v = rows[r].0.clone();
            v.push(rows[r].1);
            v
        })
        .collect();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs()))?;
        if m[p][k].abs() < 1e-9 {
            return None;
        }
        m.swap(k, p);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            if f != 0.0 {
                for j in k..=n {
                    m[i][j] -= f * m[k][j];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| m[k][j] * x[j]).sum();
        x[k] = (m[k][n] - s) / m[k][k];
    }
    Some(x)
}

fn same_point<F: Field>(a: &[F], b: &[F]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x.clone() - y.clone()).is_negligible())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

fn affine_dim<F: Field>(verts: &[Vec<F>], face: &BTreeSet<usize>) -> usize {
    let mut it = face.iter();
    let Some(&first) = it.next() else {
        return 0;
    };
    let diffs: Vec<Vec<F>> = it
        .map(|&v| {
            verts[v]
                .iter()
                .zip(&verts[first])
                .map(|(a, b)| a.clone() - b.clone())
                .collect()
        })
        .collect();
    if diffs.is_empty() {
        0
    } else {
        exact::rank(&diffs)
    }
}

type Memo = HashMap<BTreeSet<usize>, Vec<Vec<usize>>>;

fn triangulate<F: Field>(
    verts: &[Vec<F>],
    tight: &[BTreeSet<usize>],
    face: &BTreeSet<usize>,
    dim: usize,
    memo: &mut Memo,
) -> Vec<Vec<usize>> {
    if let Some(s) = memo.get(face) {
        return s.clone();
    }
    let apex = *face.iter().next().expect("nonempty face");
    let out = if dim == 0 {
        vec![vec![apex]]
    } else {
        let mut facets: Vec<BTreeSet<usize>> = Vec::new();
        for t in tight {
            let sub: BTreeSet<usize> = face.intersection(t).copied().collect();
            if sub.contains(&apex) || sub.len() < dim || facets.contains(&sub) {
                continue;
            }
            if affine_dim(verts, &sub) == dim - 1 {
                facets.push(sub);
            }
        }
        let mut out = Vec::new();
        for f in &facets {
            for mut s in triangulate(verts, tight, f, dim - 1, memo) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    };
    memo.insert(face.clone(), out.clone());
    out
}

/// The moduli polytope of a pants decomposition in `t = α/π` coordinates:
/// at each vertex with incident edges `i, j, k` (with multiplicity)
/// `t_i ≤ t_j + t_k` (all three rotations) and `t_i + t_j + t_k ≤ 2`.
pub fn polytope_from_graph(g: &TrivalentGraph) -> Polytope<BigRational> {
    let e = g.n_edges();
    let mut rows = Vec::new();
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    for v in 0..g.n_vertices() {
        let inc = g.incident_edges(v);
        for r in 0..3 {
            let mut a = vec![0i64; e];
            a[inc[r]] += 1;
            a[inc[(r + 1) % 3]] -= 1;
            a[inc[(r + 2) % 3]] -= 1;
            rows.push((a.into_iter().map(int).collect(), int(0)));
        }
        let mut a = vec![0i64; e];
        for &i in &inc {
            a[i] += 1;
        }
        rows.push((a.into_iter().map(int).collect(), int(2)));
    }
    Polytope::new(e, rows).expect("graph rows have the right length")
}

/// Rational multiple of `π^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiVolume {
    pub coefficient: BigRational,
    pub power: u32,
}

impl PiVolume {
    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64() * std::f64::consts::PI.powi(self.power as i32)
    }
}

impl fmt::Display for PiVolume {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 0 {
            write!(f, "{}", rational_string(&self.coefficient))
        } else {
            write!(f, "{} * pi^{}", rational_string(&self.coefficient), self.power)
        }
    }
}

impl Serialize for PiVolume {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PiVolume", 3)?;
        st.serialize_field("coefficient", &rational_string(&self.coefficient))?;
        st.serialize_field("power", &self.power)?;
        st.serialize_field("value", &self.to_f64())?;
        st.end()
    }
}

/// Exact `Vol(Δ)` in `α`-coordinates: the `t`-volume times `π^d`.
pub fn exact_volume(p: &Polytope<BigRational>) -> Result<PiVolume> {
    Ok(PiVolume {
        coefficient: p.volume()?,
        power: p.dim() as u32,
    })
}

/// Hit-or-miss estimate of the `t`-volume.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct McEstimate {
    pub volume: f64,
    pub std_error: f64,
    pub samples: u64,
    pub hits: u64,
    pub seed: u64,
}

pub fn monte_carlo_volume<F: Field>(p: &Polytope<F>, seed: u64, samples: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::invalid("Monte Carlo needs at least one sample"));
    }
    let q = p.to_f64();
    let chunks = samples.div_ceil(MC_CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let n = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut t = vec![0.0f64; q.dim];
            let mut h = 0u64;
            for _ in 0..n {
                for x in t.iter_mut() {
                    *x = rng.random::<f64>();
                }
                if q.rows
                    .iter()
                    .all(|(a, b)| a.iter().zip(&t).map(|(c, x)| c * x).sum::<f64>() <= *b)
                {
                    h += 1;
                }
            }
            h
        })
        .sum();
    let f = hits as f64 / samples as f64;
    Ok(McEstimate {
        volume: f,
        std_error: (f * (1.0 - f) / samples as f64).sqrt(),
        samples,
        hits,
        seed,
    })
}

#[derive(Debug, Clone, Copy)]
pub enum VolumeMethod {
    Exact,
    MonteCarlo { seed: u64, samples: u64 },
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum VolumeResult {
    Exact(PiVolume),
    MonteCarlo(McEstimate),
}

pub fn polytope_volume(p: &Polytope<BigRational>, method: VolumeMethod) -> Result<VolumeResult> {
    match method {
        VolumeMethod::Exact => exact_volume(p).map(VolumeResult::Exact),
        VolumeMethod::MonteCarlo { seed, samples } => {
            monte_carlo_volume(p, seed, samples).map(VolumeResult::MonteCarlo)
        }
    }
}

/// `1/n` as an exact rational.
pub(crate) fn recip(n: i64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cube_volume_is_one() {
        for d in 1..5 {
            let c = Polytope::<BigRational>::unit_cube(d).unwrap();
            assert_eq!(c.volume().unwrap(), BigRational::one());
            assert_eq!(c.vertices().len(), 1 << d);
        }
    }

    #[test]
    fn simplex_volume() {
        // t1 + t2 + t3 ≤ 1 inside the cube
        let p = Polytope::new(3, vec![(vec![q(1, 1); 3], q(1, 1))]).unwrap();
        assert_eq!(p.volume().unwrap(), q(1, 6));
    }

    #[test]
    fn theta_is_tetrahedron() {
        let p = polytope_from_graph(&TrivalentGraph::theta());
        // both vertices give the same four rows, plus six cube rows
        assert_eq!(p.inequalities().len(), 10);
        let mut v: Vec<Vec<BigRational>> = p.vertices();
        v.sort();
        let expect = vec![
            vec![q(0, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(1, 1)],
            vec![q(1, 1), q(0, 1), q(1, 1)],
            vec![q(1, 1), q(1, 1), q(0, 1)],
        ];
        assert_eq!(v, expect);
        assert_eq!(p.volume().unwrap(), q(1, 3));
    }

    #[test]
    fn dumbbell_loop_rows() {
        let p = polytope_from_graph(&TrivalentGraph::dumbbell());
        // edge order (a, c, b): t_c ≤ 2 t_a and t_a + ... perimeter 2 t_a + t_c ≤ 2
        let rows = p.inequalities();
        assert!(rows.contains(&(vec![q(-2, 1), q(1, 1), q(0, 1)], q(0, 1))));
        assert!(rows.contains(&(vec![q(2, 1), q(1, 1), q(0, 1)], q(2, 1))));
        assert_eq!(p.volume().unwrap(), q(1, 3));
    }

    #[test]
    fn vertices_satisfy_all_rows_exactly() {
        let p = polytope_from_graph(&TrivalentGraph::genus_chain(3).unwrap());
        for v in p.vertices() {
            for (a, b) in p.inequalities() {
                let lhs: BigRational = a.iter().zip(&v).map(|(c, x)| c * x).sum();
                assert!(&lhs <= b);
            }
        }
    }

    #[test]
    fn dimension_cap() {
        let p = Polytope::<BigRational>::unit_cube(7).unwrap();
        assert!(p.volume().is_err());
    }

    #[test]
    fn monte_carlo_is_reproducible_and_close() {
        let p = polytope_from_graph(&TrivalentGraph::theta());
        let a = monte_carlo_volume(&p, 7, 200_000).unwrap();
        let b = monte_carlo_volume(&p, 7, 200_000).unwrap();
        assert_eq!(a.hits, b.hits);
        assert!((a.volume - 1.0 / 3.0).abs() < 5.0 * a.std_error);
    }

    #[test]
    fn pi_volume_display() {
        let v = PiVolume {
            coefficient: recip(3),
            power: 3,
        };
        assert_eq!(v.to_string(), "1/3 * pi^3");
        assert!((v.to_f64() - std::f64::consts::PI.powi(3) / 3.0).abs() < 1e-12);
    }
}
