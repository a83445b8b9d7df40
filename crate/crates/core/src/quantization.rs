//! Bohr–Sommerfeld fibers of the pants fibration at level `K`, the Verlinde
//! count used as an independent check, and two toy quantizations.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pants::{polytope_from_graph, TrivalentGraph};

/// Accepted distance from an integer when rounding the Verlinde sum.
pub const VERLINDE_RESIDUAL_TOL: f64 = 1e-6;

/// Generator loops of the lattice `Λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticePath {
    Edge(usize),
    Vertex(usize),
}

/// A unit complex number stored as its angle in `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolonomyPhase {
    pub angle: f64,
}

impl HolonomyPhase {
    pub fn from_angle(a: f64) -> Self {
        let mut r = a.rem_euclid(2.0 * PI);
        if r > PI {
            r -= 2.0 * PI;
        }
        Self { angle: r }
    }

    pub fn sign(s: i8) -> Self {
        Self::from_angle(if s < 0 { PI } else { 0.0 })
    }

    pub fn mul(self, o: Self) -> Self {
        Self::from_angle(self.angle + o.angle)
    }

    pub fn pow(self, n: i64) -> Self {
        Self::from_angle(self.angle * n as f64)
    }

    /// `(cos, sin)`.
    pub fn value(&self) -> (f64, f64) {
        (self.angle.cos(), self.angle.sin())
    }

    pub fn is_trivial(&self, tol: f64) -> bool {
        self.angle.abs() < tol
    }
}

fn check_alpha(a: f64) -> Result<()> {
    if !(a > 0.0 && a < PI) {
        return Err(Error::invalid(format!(
            "angle {a} outside (0, pi): central holonomy is not in the open stratum"
        )));
    }
    Ok(())
}

/// Holonomy of `L^K` along a lattice loop: `e^{−2iKα_i}` on `e_i`,
/// `e^{−iK(α_i+α_j+α_k)}` on `e_v`.
pub fn prequantum_holonomy(
    g: &TrivalentGraph,
    path: LatticePath,
    alpha: &[f64],
    level: u32,
) -> Result<HolonomyPhase> {
    if level == 0 {
        return Err(Error::invalid("level K must be at least 1"));
    }
    if alpha.len() != g.n_edges() {
        return Err(Error::invalid(format!(
            "{} angles for {} edges",
            alpha.len(),
            g.n_edges()
        )));
    }
    let k = level as f64;
    match path {
        LatticePath::Edge(i) => {
            let a = *alpha
                .get(i)
                .ok_or_else(|| Error::invalid(format!("edge {i} out of range")))?;
            check_alpha(a)?;
            Ok(HolonomyPhase::from_angle(-2.0 * k * a))
        }
        LatticePath::Vertex(v) => {
            if v >= g.n_vertices() {
                return Err(Error::invalid(format!("vertex {v} out of range")));
            }
            let mut s = 0.0;
            for e in g.incident_edges(v) {
                check_alpha(alpha[e])?;
                s += alpha[e];
            }
            Ok(HolonomyPhase::from_angle(-k * s))
        }
    }
}

/// Half-form sign: `+1` on `e_i`, `−1` on `e_v`.
pub fn halfform_holonomy(path: LatticePath) -> i8 {
    match path {
        LatticePath::Edge(_) => 1,
        LatticePath::Vertex(_) => -1,
    }
}

/// Product of `prequantum · halfform` over an integer combination of
/// generator loops.
pub fn composite_holonomy(
    g: &TrivalentGraph,
    path: &[(LatticePath, i64)],
    alpha: &[f64],
    level: u32,
) -> Result<HolonomyPhase> {
    let mut out = HolonomyPhase::from_angle(0.0);
    for &(p, n) in path {
        let h = prequantum_holonomy(g, p, alpha, level)?.mul(HolonomyPhase::sign(halfform_holonomy(p)));
        out = out.mul(h.pow(n));
    }
    Ok(out)
}

/// Edge labels `σ` with `α_i = σ_i π / K`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BSLabeling {
    pub sigma: Vec<u32>,
}

impl BSLabeling {
    pub fn alpha(&self, level: u32) -> Vec<f64> {
        self.sigma
            .iter()
            .map(|&s| s as f64 * PI / level as f64)
            .collect()
    }
}

fn vertex_ok(s: [u32; 3], level: u32) -> bool {
    let sum = s[0] + s[1] + s[2];
    s[0] <= s[1] + s[2]
        && s[1] <= s[0] + s[2]
        && s[2] <= s[0] + s[1]
        && sum % 2 == 1
        && sum <= 2 * level
}

struct Search<'a> {
    level: u32,
    inc: Vec<[usize; 3]>,
    // vertices whose last incident edge (in order) is e
    closes: Vec<Vec<usize>>,
    g: &'a TrivalentGraph,
}

impl<'a> Search<'a> {
    fn new(g: &'a TrivalentGraph, level: u32) -> Self {
        let inc: Vec<[usize; 3]> = (0..g.n_vertices()).map(|v| g.incident_edges(v)).collect();
        let mut closes = vec![Vec::new(); g.n_edges()];
        for (v, e) in inc.iter().enumerate() {
            closes[*e.iter().max().unwrap()].push(v);
        }
        Self { level, inc, closes, g }
    }

    fn run(&self, sigma: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        let e = sigma.len();
        if e == self.g.n_edges() {
            visit(sigma);
            return;
        }
        for s in 1..self.level {
            sigma.push(s);
            let ok = self.closes[e].iter().all(|&v| {
                let i = self.inc[v];
                vertex_ok([sigma[i[0]], sigma[i[1]], sigma[i[2]]], self.level)
            });
            if ok {
                self.run(sigma, visit);
            }
            sigma.pop();
        }
    }

    fn for_first(&self, first: u32, visit: &mut dyn FnMut(&[u32])) {
        let mut sigma = vec![first];
        let ok = self.closes[0].iter().all(|&v| {
            let i = self.inc[v];
            vertex_ok([sigma[i[0]], sigma[i[1]], sigma[i[2]]], self.level)
        });
        if ok {
            self.run(&mut sigma, visit);
        }
    }
}

/// All labelings `1 ≤ σ_i ≤ K−1` satisfying at every vertex the triangle
/// inequalities, odd perimeter and perimeter `≤ 2K`. Sorted.
pub fn bs_fibers(g: &TrivalentGraph, level: u32) -> Result<Vec<BSLabeling>> {
    if level == 0 {
        return Err(Error::invalid("level K must be at least 1"));
    }
    let search = Search::new(g, level);
    let mut out: Vec<BSLabeling> = (1..level)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            search.for_first(first, &mut |s| found.push(BSLabeling { sigma: s.to_vec() }));
            found
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Number of Bohr–Sommerfeld fibers without materializing them.
pub fn bs_count(g: &TrivalentGraph, level: u32) -> Result<u64> {
    if level == 0 {
        return Err(Error::invalid("level K must be at least 1"));
    }
    let search = Search::new(g, level);
    Ok((1..level)
        .into_par_iter()
        .map(|first| {
            let mut n = 0u64;
            search.for_first(first, &mut |_| n += 1);
            n
        })
        .sum())
}

/// Brute-force characterization: `α = σπ/K` lies in the moduli polytope and
/// `prequantum · halfform = 1` on every `e_i` and `e_v`.
pub fn bs_fibers_by_holonomy(g: &TrivalentGraph, level: u32, tol: f64) -> Result<Vec<BSLabeling>> {
    if level == 0 {
        return Err(Error::invalid("level K must be at least 1"));
    }
    let poly = polytope_from_graph(g);
    let e = g.n_edges();
    // the graph polytope has integer rows, so t = σ/K ∈ Δ iff a·σ ≤ b·K
    let rows: Vec<(Vec<i64>, i64)> = poly
        .inequalities()
        .iter()
        .map(|(a, b)| {
            let int = |q: &BigRational| q.to_integer().to_i64().expect("small integer row");
            debug_assert!(a.iter().all(BigRational::is_integer) && b.is_integer());
            (a.iter().map(int).collect(), int(b))
        })
        .collect();
    let paths: Vec<LatticePath> = (0..e)
        .map(LatticePath::Edge)
        .chain((0..g.n_vertices()).map(LatticePath::Vertex))
        .collect();
    let mut out = Vec::new();
    let mut sigma = vec![1u32; e];
    if level < 2 {
        return Ok(out);
    }
    loop {
        let inside = rows.iter().all(|(a, b)| {
            let lhs: i64 = a.iter().zip(&sigma).map(|(c, &s)| c * s as i64).sum();
            lhs <= b * level as i64
        });
        if inside {
            let lab = BSLabeling { sigma: sigma.clone() };
            let alpha = lab.alpha(level);
            let mut trivial = true;
            for &p in &paths {
                let h = composite_holonomy(g, &[(p, 1)], &alpha, level)?;
                if !h.is_trivial(tol) {
                    trivial = false;
                    break;
                }
            }
            if trivial {
                out.push(lab);
            }
        }
        // odometer over [1, K−1]^E
        let mut i = e;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            if sigma[i] + 1 < level {
                sigma[i] += 1;
                break;
            }
            sigma[i] = 1;
        }
    }
}

/// Rounded Verlinde sum and its distance to the nearest integer.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerlindeValue {
    pub genus: usize,
    pub level: u32,
    pub count: u64,
    pub raw: f64,
    pub residual: f64,
}

/// `Σ_{j=1}^{K−1} (K/2)^{g−1} sin(jπ/K)^{2−2g}`, rounded.
pub fn verlinde_count(genus: usize, level: u32) -> Result<VerlindeValue> {
    if genus < 2 {
        return Err(Error::invalid(format!("genus {genus} < 2")));
    }
    if level < 2 {
        return Err(Error::invalid(format!(
            "level {level}: the sum is empty below K = 2 and has no BS counterpart"
        )));
    }
    let k = level as f64;
    let pre = (k / 2.0).powi(genus as i32 - 1);
    // pair j with K−j and add small terms first
    let mut terms: Vec<f64> = (1..level)
        .map(|j| pre * (j as f64 * PI / k).sin().powi(2 - 2 * genus as i32))
        .collect();
    terms.sort_by(f64::total_cmp);
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for t in terms {
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    let rounded = sum.round();
    let residual = (sum - rounded).abs();
    if residual >= VERLINDE_RESIDUAL_TOL {
        return Err(Error::numerical(format!(
            "Verlinde sum {sum} is {residual} from an integer"
        )));
    }
    Ok(VerlindeValue {
        genus,
        level,
        count: rounded as u64,
        raw: sum,
        residual,
    })
}

/// Integers `l` with `|l| ≤ α` and `l ≢ α (mod 2)`; with `corrected = false`
/// the prequantum-only condition `l ≡ α (mod 2)` is used instead.
pub fn sphere_bs(alpha: f64, corrected: bool) -> Result<Vec<i64>> {
    if !(alpha >= 1.0) || alpha.fract() != 0.0 || alpha > i64::MAX as f64 {
        return Err(Error::invalid(format!(
            "alpha = {alpha}: a prequantum bundle needs a positive integer"
        )));
    }
    let a = alpha as i64;
    Ok((-a..=a)
        .filter(|l| ((l - a).rem_euclid(2) == 0) != corrected)
        .collect())
}

/// `{k/c : k odd, 1 ≤ k ≤ max_k}`.
pub fn oscillator_bs(c: f64, max_k: u32) -> Result<Vec<f64>> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::invalid(format!("frequency c = {c} must be positive")));
    }
    Ok((1..=max_k).step_by(2).map(|k| k as f64 / c).collect())
}

/// `4π² / |H|` for a quotient `S³/H`.
pub fn cs_lens_value(order: u64) -> Result<f64> {
    if order == 0 {
        return Err(Error::invalid("group order must be at least 1"));
    }
    Ok(4.0 * PI * PI / order as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigmas(v: &[BSLabeling]) -> Vec<Vec<u32>> {
        v.iter().map(|l| l.sigma.clone()).collect()
    }

    #[test]
    fn prequantum_examples() {
        let g = TrivalentGraph::theta();
        let k = 3;
        let a = PI / k as f64;
        let h = prequantum_holonomy(&g, LatticePath::Edge(0), &[a, 1.0, 1.0], k).unwrap();
        assert!(h.is_trivial(1e-12));
        let third = 2.0 * PI / (3.0 * k as f64);
        let hv = prequantum_holonomy(&g, LatticePath::Vertex(0), &[third; 3], k).unwrap();
        assert!(hv.is_trivial(1e-12));
        assert!(prequantum_holonomy(&g, LatticePath::Edge(0), &[a; 3], 0).is_err());
        assert!(prequantum_holonomy(&g, LatticePath::Edge(0), &[0.0, 1.0, 1.0], 3).is_err());
        assert!(prequantum_holonomy(&g, LatticePath::Edge(0), &[PI, 1.0, 1.0], 3).is_err());
    }

    #[test]
    fn halfform_signs() {
        assert_eq!(halfform_holonomy(LatticePath::Edge(0)), 1);
        assert_eq!(halfform_holonomy(LatticePath::Vertex(1)), -1);
        assert_eq!(
            halfform_holonomy(LatticePath::Edge(2)) * halfform_holonomy(LatticePath::Vertex(0)),
            -1
        );
    }

    #[test]
    fn theta_small_levels() {
        let g = TrivalentGraph::theta();
        assert_eq!(sigmas(&bs_fibers(&g, 2).unwrap()), vec![vec![1, 1, 1]]);
        let k3 = sigmas(&bs_fibers(&g, 3).unwrap());
        assert_eq!(
            k3,
            vec![vec![1, 1, 1], vec![1, 2, 2], vec![2, 1, 2], vec![2, 2, 1]]
        );
        assert_eq!(bs_count(&TrivalentGraph::dumbbell(), 3).unwrap(), 4);
        assert!(bs_fibers(&g, 1).unwrap().is_empty());
        assert!(bs_fibers(&g, 0).is_err());
    }

    #[test]
    fn characterizations_agree() {
        for g in [TrivalentGraph::theta(), TrivalentGraph::dumbbell()] {
            for k in 1..=8 {
                assert_eq!(bs_fibers(&g, k).unwrap(), bs_fibers_by_holonomy(&g, k, 1e-9).unwrap());
            }
        }
    }

    #[test]
    fn verlinde_examples() {
        assert_eq!(verlinde_count(2, 2).unwrap().count, 1);
        assert_eq!(verlinde_count(2, 3).unwrap().count, 4);
        assert!(verlinde_count(2, 1).is_err());
        assert!(verlinde_count(1, 3).is_err());
        let g3 = TrivalentGraph::genus_chain(3).unwrap();
        assert_eq!(verlinde_count(3, 3).unwrap().count, bs_count(&g3, 3).unwrap());
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_bs(3.0, true).unwrap(), vec![-2, 0, 2]);
        assert_eq!(sphere_bs(1.0, true).unwrap(), vec![0]);
        assert_eq!(sphere_bs(2.0, true).unwrap(), vec![-1, 1]);
        assert_eq!(sphere_bs(2.0, false).unwrap(), vec![-2, 0, 2]);
        assert!(sphere_bs(2.5, true).is_err());
        assert!(sphere_bs(0.0, true).is_err());
        for a in 1..=50 {
            assert_eq!(sphere_bs(a as f64, true).unwrap().len(), a);
        }
    }

    #[test]
    fn oscillator_and_lens() {
        assert_eq!(oscillator_bs(1.0, 5).unwrap(), vec![1.0, 3.0, 5.0]);
        assert_eq!(oscillator_bs(2.0, 3).unwrap(), vec![0.5, 1.5]);
        assert!(oscillator_bs(2.0, 0).unwrap().is_empty());
        assert!(oscillator_bs(0.0, 3).is_err());
        assert!((cs_lens_value(1).unwrap() - 4.0 * PI * PI).abs() < 1e-12);
        assert!((cs_lens_value(8).unwrap() - PI * PI / 2.0).abs() < 1e-12);
        assert!(cs_lens_value(0).is_err());
    }

    #[test]
    fn phase_wraps() {
        let h = HolonomyPhase::from_angle(-2.0 * PI);
        assert!(h.is_trivial(1e-12));
        assert!((HolonomyPhase::sign(-1).angle - PI).abs() < 1e-15);
        let z = HolonomyPhase::sign(-1).pow(2);
        assert!(z.is_trivial(1e-12));
    }
}
