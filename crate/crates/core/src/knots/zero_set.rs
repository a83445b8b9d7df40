use crate::error::{Error, Result};
use crate::scalar::Real;

use super::poly::TracePolynomial;

/// Accepted `|F|` at a refined point.
pub const ZERO_TOL: f64 = 1e-9;

/// Real zeros of a two-bridge polynomial inside
/// `{−2 ≤ x ≤ 2, x² − 2 ≤ y ≤ 2}`, plus samples of the abelian locus
/// `y = x² − 2`.
#[derive(Debug, Clone, Default)]
pub struct ZeroSet<T> {
    pub irreducible: Vec<(T, T)>,
    pub abelian: Vec<(T, T)>,
}

impl<T: Real> ZeroSet<T> {
    /// CSV with columns `x,y,branch`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,y,branch\n");
        for (x, y) in &self.irreducible {
            s.push_str(&format!("{:.12},{:.12},irreducible\n", x.as_f64(), y.as_f64()));
        }
        for (x, y) in &self.abelian {
            s.push_str(&format!("{:.12},{:.12},abelian\n", x.as_f64(), y.as_f64()));
        }
        s
    }
}

/// Sign-change search on a `resolution × resolution` grid: every grid edge
/// (clipped to the region) whose endpoint values differ in sign is bisected
/// to machine precision. Tangential zeros of even multiplicity are missed.
pub fn zero_set<T: Real>(poly: &TracePolynomial, resolution: usize) -> Result<ZeroSet<T>> {
    if poly.is_zero() {
        return Err(Error::invalid("zero polynomial has no curve to trace"));
    }
    if poly.degree_in(2) > 0 {
        return Err(Error::invalid("zero_set expects a polynomial in x and y only"));
    }
    if resolution < 16 {
        return Err(Error::invalid(format!("resolution {resolution} below minimum 16")));
    }
    let two = T::lit(2.0);
    let step = T::lit(4.0) / T::from_usize(resolution - 1).unwrap();
    let grid: Vec<T> = (0..resolution)
        .map(|i| -two + step * T::from_usize(i).unwrap())
        .collect();
    let f = |x: T, y: T| poly.eval_xy(x, y);
    let mut pts: Vec<(T, T)> = Vec::new();

    // vertical edges: x fixed, y in [max(y_j, x²−2), y_{j+1}]
    for &x in &grid {
        let floor = x * x - two;
        for pair in grid.windows(2) {
            let lo = pair[0].max(floor);
            let hi = pair[1];
            if lo >= hi {
                continue;
            }
            if let Some(y) = bracket_root(|y| f(x, y), lo, hi) {
                pts.push((x, y));
            }
        }
    }
    // horizontal edges: y fixed, x in [x_i, x_{i+1}] ∩ [−√(y+2), √(y+2)]
    for &y in &grid {
        let reach = (y + two).max(T::zero()).sqrt();
        for pair in grid.windows(2) {
            let lo = pair[0].max(-reach);
            let hi = pair[1].min(reach);
            if lo >= hi {
                continue;
            }
            if let Some(x) = bracket_root(|x| f(x, y), lo, hi) {
                pts.push((x, y));
            }
        }
    }

    let tol = T::lit(ZERO_TOL);
    pts.retain(|&(x, y)| f(x, y).abs() < tol);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < tol && (a.1 - b.1).abs() < tol);

    let abelian = grid.iter().map(|&x| (x, x * x - two)).collect();
    Ok(ZeroSet {
        irreducible: pts,
        abelian,
    })
}

fn bracket_root<T: Real>(g: impl Fn(T) -> T, mut lo: T, mut hi: T) -> Option<T> {
    let (mut glo, ghi) = (g(lo), g(hi));
    if glo == T::zero() {
        return Some(lo);
    }
    if ghi == T::zero() {
        return Some(hi);
    }
    if glo.signum() == ghi.signum() {
        return None;
    }
    let half = T::lit(0.5);
    for _ in 0..200 {
        let mid = (lo + hi) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == T::zero() {
            return Some(mid);
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    Some((lo + hi) * half)
}
