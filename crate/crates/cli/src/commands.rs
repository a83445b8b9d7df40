use clap::{Args, ValueEnum};
use serde_json::json;

use repvar::cohomology::{self as coh, BasedComplex, CohomologySummary};
use repvar::knots::{self, TracePolynomial, ZERO_TOL};
use repvar::linalg::null_space;
use repvar::pants::{
    lattice_index, polytope_from_graph, polytope_volume, symplectic_volume, VolumeMethod,
    VolumeResult,
};
use repvar::quantization::{self as q, VERLINDE_RESIDUAL_TOL};
use repvar::{Error, Presentation, Result};

use crate::input::{self, GroupArgs};
use crate::{Ctx, Report};

#[derive(Args, Debug)]
pub struct TracePolyArgs {
    /// Two-bridge knot K(A, B).
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, conflicts_with = "word")]
    two_bridge: Option<Vec<i64>>,
    /// With --two-bridge: trace of the relator minus 2 instead of the reduced polynomial.
    #[arg(long, requires = "two_bridge")]
    relator: bool,
    /// Word in generators a = 1, b = 2, e.g. "1 2 -1 -2".
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
}

fn poly_json(p: &TracePolynomial) -> serde_json::Value {
    let terms: Vec<_> = p
        .sorted_terms()
        .into_iter()
        .map(|(e, c)| json!({ "x": e[0], "y": e[1], "z": e[2], "coefficient": c.to_string() }))
        .collect();
    json!({ "polynomial": p.to_string(), "terms": terms })
}

pub fn trace_poly(a: &TracePolyArgs, _: &Ctx) -> Result<Report> {
    let (poly, source) = match (&a.two_bridge, &a.word) {
        (Some(ab), _) if a.relator => {
            (knots::relator_trace_polynomial(ab[0], ab[1])?, format!("relator:{},{}", ab[0], ab[1]))
        }
        (Some(ab), _) => (knots::two_bridge_polynomial(ab[0], ab[1])?, format!("two-bridge:{},{}", ab[0], ab[1])),
        (None, Some(w)) => {
            let w = input::word(w)?;
            if w.max_generator() > 2 {
                return Err(Error::Invalid("trace polynomials use two generators".into()));
            }
            let s = format!("word:{w}");
            (knots::trace_polynomial(&w)?, s)
        }
        (None, None) => return Err(Error::Invalid("give --two-bridge A B or --word".into())),
    };
    Ok(Report::new(format!("{poly}\n"), poly_json(&poly)).with("input", source))
}

#[derive(Args, Debug)]
pub struct TorusKnotArgs {
    a: u32,
    b: u32,
}

pub fn torus_knot(a: &TorusKnotArgs, _: &Ctx) -> Result<Report> {
    let arcs = knots::torus_knot_arcs(a.a, a.b)?;
    let text: String = arcs
        .iter()
        .map(|arc| {
            format!(
                "k={} l={} lo_over_pi={} hi_over_pi={}\n",
                arc.k,
                arc.l,
                repvar::scalar::rational_string(&arc.lo_over_pi),
                repvar::scalar::rational_string(&arc.hi_over_pi)
            )
        })
        .collect();
    let json = json!({ "arcs": arcs, "count": arcs.len() });
    Ok(Report::new(text, json).with("knot", format!("T({},{})", a.a, a.b)))
}

#[derive(Args, Debug)]
pub struct ZeroSetArgs {
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, required = true)]
    two_bridge: Vec<i64>,
    /// Grid cells per side.
    #[arg(long, default_value_t = 128)]
    resolution: usize,
}

pub fn zero_set(a: &ZeroSetArgs, _: &Ctx) -> Result<Report> {
    let poly = knots::two_bridge_polynomial(a.two_bridge[0], a.two_bridge[1])?;
    let zs = knots::zero_set::<f64>(&poly, a.resolution)?;
    let csv = zs.to_csv();
    let json = json!({
        "polynomial": poly.to_string(),
        "irreducible": zs.irreducible,
        "abelian": zs.abelian,
    });
    let mut r = Report::new(csv.clone(), json)
        .with("knot", format!("K({},{})", a.two_bridge[0], a.two_bridge[1]))
        .with("resolution", a.resolution)
        .with("zero_tol", format!("{ZERO_TOL:e}"));
    r.csv = Some(csv);
    Ok(r)
}

fn summary_text(s: &CohomologySummary) -> String {
    let mut t = format!("h0 {}\nh1 {}\nh2 {}\neuler {} chi {}\n", s.h0, s.h1, s.h2, s.euler, s.chi);
    for (name, r) in [("d0", &s.d0), ("d1", &s.d1)] {
        t.push_str(&format!(
            "{name} rank {} threshold {:e} gap_above {:e} gap_below {:e}\n",
            r.rank, r.threshold, r.gap_above, r.gap_below
        ));
    }
    t
}

fn ill_conditioned(s: &CohomologySummary) -> Option<String> {
    s.ill_conditioned.then(|| {
        format!("rank decision within a factor 10 of the threshold at tol {:e}", s.tolerance)
    })
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[command(flatten)]
    group: GroupArgs,
}

pub fn cohomology(a: &CohomologyArgs, ctx: &Ctx) -> Result<Report> {
    let g = input::group(&a.group, ctx)?;
    let c = coh::build_complex(&g.presentation, &g.rep)?;
    let s = c.cohomology(ctx.tol);
    let mut r = Report::new(summary_text(&s), serde_json::to_value(&s)?)
        .with("group", &g.label)
        .with("cochain_residual", format!("{:e}", c.cochain_residual()));
    r.warning = ill_conditioned(&s);
    Ok(r)
}

#[derive(Args, Debug)]
pub struct RegularityArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Boundary presentation JSON file; the torus group when omitted.
    #[arg(long)]
    boundary: Option<std::path::PathBuf>,
    /// Peripheral words separated by ';'. Computed for torus knots.
    #[arg(long, allow_hyphen_values = true)]
    peripheral: Option<String>,
}

pub fn regularity(a: &RegularityArgs, ctx: &Ctx) -> Result<Report> {
    let g = input::group(&a.group, ctx)?;
    let boundary = match &a.boundary {
        Some(path) => Presentation::from_json(&input::read_file(path)?)?,
        None => Presentation::torus_group(),
    };
    let peripheral = match (&a.peripheral, &a.group.torus_knot) {
        (Some(s), _) => input::words(s)?,
        (None, Some(ab)) => {
            let (m, l) = knots::torus_knot_peripheral(ab[0], ab[1])?;
            vec![m, l]
        }
        (None, None) => return Err(Error::Invalid("--peripheral is required for this group".into())),
    };
    let rep = coh::regularity(&g.presentation, &boundary, &g.rep, &peripheral, ctx.tol)?;
    let text = format!(
        "regular {}\nclass {:?}\nh1_manifold {}\nh1_boundary {}\n",
        rep.regular, rep.class, rep.h1_manifold, rep.h1_boundary
    );
    let peripheral_str = peripheral.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";");
    let mut r = Report::new(text, serde_json::to_value(&rep)?)
        .with("group", &g.label)
        .with("peripheral", peripheral_str)
        .with("relator_tol", format!("{:e}", repvar::groups::RELATOR_TOL));
    r.warning = ill_conditioned(&rep.manifold).or_else(|| ill_conditioned(&rep.boundary));
    Ok(r)
}

#[derive(Args, Debug)]
pub struct TorsionArgs {
    #[command(flatten)]
    group: GroupArgs,
}

pub fn torsion(a: &TorsionArgs, ctx: &Ctx) -> Result<Report> {
    let g = input::group(&a.group, ctx)?;
    let c = coh::build_complex(&g.presentation, &g.rep)?;
    let s = c.cohomology(ctx.tol);
    if let Some(w) = ill_conditioned(&s) {
        return Err(Error::Numerical(w));
    }
    // representatives: ker d0, the H^1 basis, and im d1 complemented by ker d1^T
    let h0 = null_space(&c.d0, ctx.tol);
    let h1 = coh::h1_basis(&c, ctx.tol);
    let h2 = null_space(&c.d1.transpose(), ctx.tol);
    let dims = [h0.len(), h1.len(), h2.len()];
    let based = BasedComplex::from_twisted(&c)?.with_homology(vec![h0, h1, h2])?;
    let t = coh::torsion(&based, ctx.tol)?;
    let text = format!("magnitude {:e}\nsign {}\n", t.magnitude, t.sign);
    let json = json!({ "magnitude": t.magnitude, "sign": t.sign, "betti": dims });
    Ok(Report::new(text, json)
        .with("group", &g.label)
        .with("betti", format!("{},{},{}", dims[0], dims[1], dims[2])))
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum VolumeKind {
    Exact,
    Mc,
}

#[derive(Args, Debug)]
pub struct PolytopeArgs {
    /// theta, dumbbell, tetrahedron, chain:G or a graph JSON file.
    #[arg(long)]
    graph: String,
    #[arg(long, value_enum, default_value_t = VolumeKind::Exact)]
    volume: VolumeKind,
    /// Sample count for --volume mc.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
}

pub fn polytope(a: &PolytopeArgs, ctx: &Ctx) -> Result<Report> {
    let graph = input::graph(&a.graph)?;
    let p = polytope_from_graph(&graph);
    let method = match a.volume {
        VolumeKind::Exact => VolumeMethod::Exact,
        VolumeKind::Mc => VolumeMethod::MonteCarlo { seed: ctx.seed, samples: a.samples },
    };
    let d = p.dim();
    let index = lattice_index(&graph);
    let base = |r: Report| {
        r.with("graph", &a.graph)
            .with("genus", graph.genus())
            .with("dim", d)
            .with("lattice_index", index)
    };
    Ok(match polytope_volume(&p, method)? {
        VolumeResult::Exact(v) => {
            let text = format!("{v}\nvalue {}\n", v.to_f64());
            let mut json = json!({ "volume": v, "lattice_index": index });
            if graph.genus() >= 2 {
                json["symplectic_volume"] = serde_json::to_value(symplectic_volume(graph.genus(), &v)?)?;
            }
            base(Report::new(text, json)).with("method", "exact")
        }
        VolumeResult::MonteCarlo(m) => {
            let text = format!(
                "{} * pi^{d}\nvalue {}\nstd_error {}\nhits {} of {}\n",
                m.volume,
                m.volume * std::f64::consts::PI.powi(d as i32),
                m.std_error,
                m.hits,
                m.samples
            );
            base(Report::new(text, serde_json::to_value(m)?))
                .with("method", "mc")
                .with("samples", m.samples)
        }
    })
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum BsMethod {
    Enumerate,
    Holonomy,
}

#[derive(Args, Debug)]
pub struct BsCountArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    level: u32,
    /// Also print the labelings as JSON.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value_t = BsMethod::Enumerate)]
    method: BsMethod,
}

pub fn bs_count(a: &BsCountArgs, ctx: &Ctx) -> Result<Report> {
    let graph = input::graph(&a.graph)?;
    let fibers = match (a.method, a.list) {
        (BsMethod::Enumerate, false) => None,
        (BsMethod::Enumerate, true) => Some(q::bs_fibers(&graph, a.level)?),
        (BsMethod::Holonomy, _) => Some(q::bs_fibers_by_holonomy(&graph, a.level, ctx.tol)?),
    };
    let count = match &fibers {
        Some(f) => f.len() as u64,
        None => q::bs_count(&graph, a.level)?,
    };
    let mut text = format!("{count}\n");
    let mut json = json!({ "count": count });
    if a.list {
        let sigmas: Vec<&Vec<u32>> = fibers.iter().flatten().map(|l| &l.sigma).collect();
        text.push_str(&serde_json::to_string(&sigmas)?);
        text.push('\n');
        json["labelings"] = json!(sigmas);
    }
    let method = match a.method {
        BsMethod::Enumerate => "enumerate",
        BsMethod::Holonomy => "holonomy",
    };
    Ok(Report::new(text, json)
        .with("graph", &a.graph)
        .with("level", a.level)
        .with("method", method))
}

#[derive(Args, Debug)]
pub struct VerlindeArgs {
    #[arg(long)]
    genus: usize,
    #[arg(long)]
    level: u32,
}

pub fn verlinde(a: &VerlindeArgs, _: &Ctx) -> Result<Report> {
    let v = q::verlinde_count(a.genus, a.level)?;
    let text = format!("{}\nresidual {:e}\n", v.count, v.residual);
    Ok(Report::new(text, serde_json::to_value(v)?)
        .with("genus", a.genus)
        .with("level", a.level)
        .with("residual_tol", format!("{VERLINDE_RESIDUAL_TOL:e}")))
}

#[derive(Args, Debug)]
pub struct SphereBsArgs {
    /// Integral symplectic area parameter.
    #[arg(long)]
    alpha: f64,
    /// Use the prequantum-only parity condition.
    #[arg(long)]
    uncorrected: bool,
}

pub fn sphere_bs(a: &SphereBsArgs, _: &Ctx) -> Result<Report> {
    let levels = q::sphere_bs(a.alpha, !a.uncorrected)?;
    let text = levels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ") + "\n";
    Ok(Report::new(text, json!({ "levels": levels }))
        .with("alpha", a.alpha)
        .with("corrected", !a.uncorrected))
}

#[derive(Args, Debug)]
pub struct LensCsArgs {
    /// Order of the finite group H.
    #[arg(long)]
    order: u64,
}

pub fn lens_cs(a: &LensCsArgs, _: &Ctx) -> Result<Report> {
    let v = q::cs_lens_value(a.order)?;
    Ok(Report::new(format!("{v}\n"), json!({ "value": v })).with("order", a.order))
}
