use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::graph::{rank_mod2, TrivalentGraph};
use super::polytope::{recip, PiVolume};

/// `2^(E − rank₂ M)` for the mod-2 vertex-edge incidence matrix `M`, which is
/// `2^(E − V + 1) = 2^g` for a connected trivalent graph.
pub fn lattice_index(g: &TrivalentGraph) -> u64 {
    let r = rank_mod2(&g.incidence_mod2());
    1u64 << (g.n_edges() - r)
}

/// `Λ = span_Z{e_i, e_v}` with `e_v = (e_i + e_j + e_k)/2` over the edges at
/// `v` (with multiplicity).
#[derive(Debug, Clone, Serialize)]
pub struct BSLattice {
    #[serde(serialize_with = "ser_rows")]
    generators: Vec<Vec<BigRational>>,
    #[serde(skip)]
    incidence: Vec<Vec<u8>>,
}

fn ser_rows<S: serde::Serializer>(
    rows: &[Vec<BigRational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        let v: Vec<String> = r.iter().map(crate::scalar::rational_string).collect();
        seq.serialize_element(&v)?;
    }
    seq.end()
}

impl BSLattice {
    pub fn from_graph(g: &TrivalentGraph) -> Self {
        let e = g.n_edges();
        let mut generators = Vec::with_capacity(e + g.n_vertices());
        for i in 0..e {
            let mut v = vec![BigRational::zero(); e];
            v[i] = BigRational::one();
            generators.push(v);
        }
        let half = recip(2);
        for v in 0..g.n_vertices() {
            let mut row = vec![BigRational::zero(); e];
            for i in g.incident_edges(v) {
                row[i] += &half;
            }
            generators.push(row);
        }
        Self {
            generators,
            incidence: g.incidence_mod2(),
        }
    }

    /// Generators `e_1, …, e_E, e_{v_1}, …` as rows.
    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    /// Order of `Λ / Z^E`. The map `Z_2^V → (½Z/Z)^E` sending `v` to `e_v`
    /// has image spanned by incidence columns mod 2, so this is `2^(V−1)`.
    pub fn quotient_order(&self) -> u64 {
        1u64 << rank_mod2(&self.incidence)
    }

    /// Membership: `2x` integral and `2x mod 2` a sum of vertex incidences.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        if x.len() != self.generators.first().map_or(0, Vec::len) {
            return false;
        }
        let two = BigInt::from(2);
        let mut parity = Vec::with_capacity(x.len());
        for c in x {
            let d = c * BigRational::from_integer(two.clone());
            if !d.is_integer() {
                return false;
            }
            let r = ((d.to_integer() % &two) + &two) % &two;
            parity.push(if r.is_zero() { 0u8 } else { 1 });
        }
        let base = rank_mod2(&self.incidence);
        let mut aug = self.incidence.clone();
        aug.push(parity);
        rank_mod2(&aug) == base
    }
}

/// `Vol(M(Σ)) = (2π)^{3g−3} 2^{2g−3} Vol(Δ)`.
#[derive(Debug, Clone, Serialize)]
pub struct SymplecticVolume {
    pub exact: PiVolume,
    pub value: f64,
}

pub fn symplectic_volume(genus: usize, vol_delta: &PiVolume) -> Result<SymplecticVolume> {
    if genus < 2 {
        return Err(Error::invalid(format!("genus {genus} < 2")));
    }
    let d = 3 * genus - 3;
    let scale = BigInt::one() << (d + 2 * genus - 3);
    let exact = PiVolume {
        coefficient: &vol_delta.coefficient * BigRational::from_integer(scale),
        power: vol_delta.power + d as u32,
    };
    let value = exact.to_f64();
    Ok(SymplecticVolume { exact, value })
}
