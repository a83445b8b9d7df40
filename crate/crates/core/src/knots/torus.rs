use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Presentation, Representation, Word, RELATOR_TOL};
use crate::scalar::{rational_string, Real};
use crate::su2::{pair_from_angles, AngleTriple};

/// One arc of irreducible representations of `⟨u, v | u^a = v^b⟩`:
/// `ang ρ(u) = kπ/a`, `ang ρ(v) = lπ/b`, and `ang ρ(uv)` ranging over
/// `π·[lo, hi]`. Endpoints are exact rationals in units of π.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcDescription {
    pub k: u32,
    pub l: u32,
    pub lo_over_pi: BigRational,
    pub hi_over_pi: BigRational,
}

#[derive(Serialize)]
struct ArcJson {
    k: u32,
    l: u32,
    lo_over_pi: String,
    hi_over_pi: String,
}

impl Serialize for ArcDescription {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ArcJson {
            k: self.k,
            l: self.l,
            lo_over_pi: rational_string(&self.lo_over_pi),
            hi_over_pi: rational_string(&self.hi_over_pi),
        }
        .serialize(s)
    }
}

impl ArcDescription {
    /// Angle of `ρ(uv)` at parameter `s ∈ [0, 1]` along the arc.
    pub fn eta_at<T: Real>(&self, s: T) -> T {
        let lo = T::lit(self.lo_over_pi.to_f64().unwrap_or(f64::NAN));
        let hi = T::lit(self.hi_over_pi.to_f64().unwrap_or(f64::NAN));
        T::PI() * (lo + (hi - lo) * s)
    }
}

fn check_coprime(a: u32, b: u32) -> Result<()> {
    if a < 2 || b < 2 || num_integer::gcd(a, b) != 1 {
        return Err(Error::invalid(format!(
            "torus knot parameters ({a}, {b}) must be coprime and at least 2"
        )));
    }
    Ok(())
}

/// All `(k, l)` with `0 < k < a`, `0 < l < b`, `k ≡ l (mod 2)`, with their
/// `ang ρ(uv)` intervals `π[|k/a − l/b|, min(k/a + l/b, 2 − k/a − l/b)]`.
pub fn torus_knot_arcs(a: u32, b: u32) -> Result<Vec<ArcDescription>> {
    check_coprime(a, b)?;
    let q = |n: u32, d: u32| BigRational::new(BigInt::from(n), BigInt::from(d));
    let two = BigRational::from_integer(BigInt::from(2));
    let mut arcs = Vec::new();
    for k in 1..a {
        for l in 1..b {
            if (k + l) % 2 != 0 {
                continue;
            }
            let (s, t) = (q(k, a), q(l, b));
            let lo = if s > t { &s - &t } else { &t - &s };
            let sum = &s + &t;
            let hi = std::cmp::min(sum.clone(), &two - &sum);
            debug_assert!(lo < hi);
            arcs.push(ArcDescription {
                k,
                l,
                lo_over_pi: lo,
                hi_over_pi: hi,
            });
        }
    }
    Ok(arcs)
}

/// Irreducible (in the interior) representation on an arc with `ang ρ(uv) = η`.
pub fn arc_representation<T: Real>(
    a: u32,
    b: u32,
    arc: &ArcDescription,
    eta: T,
) -> Result<Representation<T>> {
    let p = Presentation::torus_knot_group(a, b)?;
    let phi = T::PI() * T::lit(arc.k as f64 / a as f64);
    let psi = T::PI() * T::lit(arc.l as f64 / b as f64);
    let (u, v) = pair_from_angles(&AngleTriple::new(phi, psi, eta)?)?;
    Representation::strict(&p, vec![u, v], T::lit(RELATOR_TOL))
}

/// Meridian `u^c v^d` with `c b + d a = 1` and longitude `u^a μ^{−ab}`.
/// `u^a` is central, so the two commute.
pub fn torus_knot_peripheral(a: u32, b: u32) -> Result<(Word, Word)> {
    check_coprime(a, b)?;
    let (a, b) = (a as i64, b as i64);
    // extended Euclid on (b, a)
    let e = num_integer::Integer::extended_gcd(&b, &a);
    debug_assert!(e.gcd.is_one());
    let (c, d) = (e.x, e.y);
    let meridian = Word::generator(1)
        .power(c)
        .concat(&Word::generator(2).power(d));
    let longitude = Word::generator(1).power(a).concat(&meridian.power(-a * b));
    Ok((meridian, longitude))
}
