use std::path::Path;

use repvar::groups::random_surface_rep;
use repvar::knots::{arc_representation, rep_from_point, torus_knot_arcs, two_bridge_polynomial, zero_set};
use repvar::pants::TrivalentGraph;
use repvar::groups::RELATOR_TOL;
use repvar::{Error, Presentation, Representation, Result, Su2, Word};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::Ctx;

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

/// `theta`, `dumbbell`, `tetrahedron`, `chain:G` or a graph JSON file.
pub fn graph(name: &str) -> Result<TrivalentGraph> {
    match name {
        "theta" => Ok(TrivalentGraph::theta()),
        "dumbbell" => Ok(TrivalentGraph::dumbbell()),
        "tetrahedron" | "k4" => Ok(TrivalentGraph::tetrahedron()),
        _ => {
            if let Some(g) = name.strip_prefix("chain:") {
                let g = g
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad genus in {name:?}")))?;
                return TrivalentGraph::genus_chain(g);
            }
            TrivalentGraph::from_json(&read_file(Path::new(name))?)
        }
    }
}

/// Signed generator indices separated by spaces or commas, e.g. `1 2 -1 -2`.
pub fn word(s: &str) -> Result<Word> {
    let letters = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i32>()
                .map_err(|_| Error::Invalid(format!("bad letter {t:?} in word {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Word::new(letters)
}

/// Words separated by `;`.
pub fn words(s: &str) -> Result<Vec<Word>> {
    s.split(';').map(word).collect()
}

#[derive(clap::Args, Debug, Clone)]
pub struct GroupArgs {
    /// Closed surface group of this genus, with a seeded random representation.
    #[arg(long, conflicts_with_all = ["torus_knot", "two_bridge", "presentation"])]
    pub surface: Option<usize>,
    /// Torus knot group; the representation is taken on an arc.
    #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with_all = ["two_bridge", "presentation"])]
    pub torus_knot: Option<Vec<u32>>,
    /// Index of the arc for --torus-knot.
    #[arg(long, default_value_t = 0)]
    pub arc: usize,
    /// Position along the arc, in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    pub s: f64,
    /// Two-bridge knot group; the representation sits over a zero of its polynomial.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, conflicts_with = "presentation")]
    pub two_bridge: Option<Vec<i64>>,
    /// Point (x, y) on the zero set for --two-bridge. Defaults to a sampled zero.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_hyphen_values = true)]
    pub point: Option<Vec<f64>>,
    /// Presentation JSON file.
    #[arg(long, requires = "rep")]
    pub presentation: Option<std::path::PathBuf>,
    /// Representation JSON file: one [w, x, y, z] per generator.
    #[arg(long)]
    pub rep: Option<std::path::PathBuf>,
}

pub struct Group {
    pub presentation: Presentation,
    pub rep: Representation<f64>,
    pub label: String,
}

pub fn group(a: &GroupArgs, ctx: &Ctx) -> Result<Group> {
    if let Some(g) = a.surface {
        let p = Presentation::surface_group(g)?;
        let rep = match &a.rep {
            Some(path) => rep_file(&p, path)?,
            None => random_surface_rep(g, &mut ChaCha8Rng::seed_from_u64(ctx.seed))?,
        };
        return Ok(Group { presentation: p, rep, label: format!("surface:{g}") });
    }
    if let Some(ab) = &a.torus_knot {
        let (ka, kb) = (ab[0], ab[1]);
        let arcs = torus_knot_arcs(ka, kb)?;
        let arc = arcs.get(a.arc).ok_or_else(|| {
            Error::Invalid(format!("arc {} out of range, T({ka},{kb}) has {}", a.arc, arcs.len()))
        })?;
        if !(a.s > 0.0 && a.s < 1.0) {
            return Err(Error::Invalid(format!("arc position {} outside (0, 1)", a.s)));
        }
        let rep = arc_representation(ka, kb, arc, arc.eta_at(a.s))?;
        let p = Presentation::torus_knot_group(ka, kb)?;
        return Ok(Group { presentation: p, rep, label: format!("torus-knot:{ka},{kb}") });
    }
    if let Some(ab) = &a.two_bridge {
        let (ka, kb) = (ab[0], ab[1]);
        let (x, y) = match &a.point {
            Some(pt) => (pt[0], pt[1]),
            None => sampled_zero(ka, kb)?,
        };
        let rep = rep_from_point(ka, kb, x, y)?;
        let p = Presentation::two_bridge_group(ka, kb)?;
        return Ok(Group {
            presentation: p,
            rep,
            label: format!("two-bridge:{ka},{kb}@{x},{y}"),
        });
    }
    if let (Some(pp), Some(rp)) = (&a.presentation, &a.rep) {
        let p = Presentation::from_json(&read_file(pp)?)?;
        let rep = rep_file(&p, rp)?;
        return Ok(Group { presentation: p, rep, label: pp.display().to_string() });
    }
    Err(Error::Invalid(
        "choose a group: --surface, --torus-knot, --two-bridge or --presentation with --rep".into(),
    ))
}

fn rep_file(p: &Presentation, path: &Path) -> Result<Representation<f64>> {
    let images: Vec<Su2<f64>> = serde_json::from_str(&read_file(path)?)
        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    Representation::strict(p, images, RELATOR_TOL)
}

/// First irreducible zero well inside the trace region.
fn sampled_zero(a: i64, b: i64) -> Result<(f64, f64)> {
    let zs = zero_set::<f64>(&two_bridge_polynomial(a, b)?, 64)?;
    zs.irreducible
        .into_iter()
        .find(|(x, y)| x.abs() < 1.9 && *y < 1.9 && *y > x * x - 1.9)
        .ok_or_else(|| Error::Invalid(format!("no interior zero found for K({a},{b})")))
}
