//! Command-line interface. [`run`] executes a parsed [`Cli`] in-process and
//! returns the run report; the binary only prints it and maps errors to exit
//! codes.

use std::f64::consts::SQRT_2;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constructions::{
    brick_cover_on_window, gen_chess_families, gen_comb_cover, gen_comb_set, gen_epsilon_net_capped,
    gen_lattice_window, interval_cover_on_range, WindowSpec, DEFAULT_POINT_CAP,
};
use crate::correspondence::{
    gh_upper_bound_from_correspondence, nearest_point_correspondence, DEFAULT_BUDGET,
};
use crate::covers::{
    check_cover, check_r_disjoint, check_uniform_bound, gh_lower_bound, lookup_model, make_certificate,
    model_registry, multiplicity, scale_ladder, CoverCertificate, ModelSpaceDescriptor, Strictness,
    SubsetFamily,
};
use crate::error::{Error, Result};
use crate::io::{self, CertificateReport, GhReport, Space};
use crate::metric::{hausdorff_report, EuclideanPointSet, Metric, SubsetRef};
use crate::report::{family_svg, ExperimentReport};

#[derive(Debug, Parser)]
#[command(name = "metric-gh", version, about = "Hausdorff / Gromov-Hausdorff distances and cover certificates")]
pub struct Cli {
    /// Also write the run report as JSON to this file
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,
    /// Write a CSV summary of the outputs to this file
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a point set (and cover) and write it to a directory
    Gen(GenArgs),
    /// Hausdorff distance between two subsets
    Hausdorff(HausdorffArgs),
    /// Exact Gromov-Hausdorff distance between two small spaces
    GhExact(GhExactArgs),
    /// Certify a cover and emit the lower bound d_GH >= r/2
    LowerBound(LowerBoundArgs),
    /// Check r-disjointness, boundedness and coverage of families
    VerifyCover(CoverArgs),
    /// Rescale a planar cover repeatedly and re-measure it
    ScaleLadder(LadderArgs),
    /// Run a worked example end to end
    Reproduce(ReproduceArgs),
    /// List the built-in model spaces
    Models,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Lattice,
    Net,
    Chess,
    Comb,
    CombCover,
    Brick,
    Interval,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: GenKind,
    /// `N` for [0,N]^2, or `xmin,xmax,ymin,ymax`
    #[arg(long, value_parser = parse_window)]
    pub window: WindowSpec,
    /// Net spacing
    #[arg(long)]
    pub eps: Option<f64>,
    /// Comb sample spacing (must divide 1)
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    /// Comb piece height
    #[arg(long, default_value_t = 2.0)]
    pub h: f64,
    /// Separation level for brick and interval covers
    #[arg(long)]
    pub r: Option<f64>,
    /// Block length for brick and interval covers (default 3r)
    #[arg(long)]
    pub l: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
    pub cap: usize,
    /// Also draw the families to figure.svg
    #[arg(long)]
    pub svg: bool,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct HausdorffArgs {
    /// Ambient space file
    #[arg(long, requires_all = ["a", "b"], conflicts_with_all = ["points_a", "points_b"])]
    pub space: Option<PathBuf>,
    /// Subset file (sorted index array) or `all`
    #[arg(long, requires = "space")]
    pub a: Option<String>,
    #[arg(long, requires = "space")]
    pub b: Option<String>,
    /// Planar point file for A; merged with B into one ambient space
    #[arg(long, requires = "points_b", required_unless_present = "space")]
    pub points_a: Option<PathBuf>,
    #[arg(long, requires = "points_a")]
    pub points_b: Option<PathBuf>,
    /// Use the quadratic scan even for planar inputs
    #[arg(long)]
    pub brute: bool,
}

#[derive(Debug, Args)]
pub struct GhExactArgs {
    #[arg(long)]
    pub x: PathBuf,
    #[arg(long)]
    pub y: PathBuf,
    /// Search-node budget
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Family files (one family object or an array each)
    #[arg(long, num_args = 1.., required = true)]
    pub families: Vec<PathBuf>,
    #[arg(long)]
    pub r: f64,
    /// Require gaps strictly above r
    #[arg(long)]
    pub strict: bool,
    /// Target subset file, or `all`
    #[arg(long, default_value = "all")]
    pub target: String,
}

#[derive(Debug, Args)]
pub struct LowerBoundArgs {
    #[command(flatten)]
    pub cover: CoverArgs,
    /// Built-in model space (`R<n>`, `Z2`)
    #[arg(long, required_unless_present = "model_file", conflicts_with = "model_file")]
    pub model: Option<String>,
    /// Model descriptor JSON file
    #[arg(long)]
    pub model_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LadderArgs {
    /// Planar space file
    #[arg(long)]
    pub space: PathBuf,
    #[arg(long, num_args = 1.., required = true)]
    pub families: Vec<PathBuf>,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = 5)]
    pub steps: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    /// Lattice chessboard cover, bound sqrt(2)/2
    Example1,
    /// Comb set with a two-family cover, bound 1/2
    Example2,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    pub example: Example,
    /// Window size N (at least 4)
    #[arg(long, default_value_t = 12)]
    pub window: u32,
    /// Comb sample spacing; also the net spacing for example2
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    /// Net spacing for example1
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, value_name = "DIR")]
    pub out_dir: PathBuf,
}

/// Parses `N` as `[0,N]^2` or `xmin,xmax,ymin,ymax`.
pub fn parse_window(s: &str) -> std::result::Result<WindowSpec, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}")))
        .collect::<std::result::Result<_, _>>()?;
    let w = match parts[..] {
        [n] => WindowSpec::square(n),
        [a, b, c, d] => WindowSpec::new(a, b, c, d),
        _ => return Err("expected N or xmin,xmax,ymin,ymax".into()),
    };
    w.map_err(|e| e.to_string())
}

/// Executes `cli`, writing `--report` / `--csv` files when requested.
pub fn run(cli: &Cli) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Gen(a) => gen(a)?,
        Command::Hausdorff(a) => hausdorff_cmd(a)?,
        Command::GhExact(a) => gh_exact_cmd(a)?,
        Command::LowerBound(a) => lower_bound_cmd(a)?,
        Command::VerifyCover(a) => verify_cover_cmd(a)?,
        Command::ScaleLadder(a) => ladder_cmd(a)?,
        Command::Reproduce(a) => reproduce(a)?,
        Command::Models => {
            let mut r = ExperimentReport::new("models");
            r.output("models", model_registry());
            r
        }
    };
    report.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    if let Some(p) = &cli.report {
        io::write_json(p, &report)?;
    }
    if let Some(p) = &cli.csv {
        report.write_csv(p)?;
    }
    Ok(report)
}

fn family_sizes(fams: &[SubsetFamily]) -> serde_json::Value {
    fams.iter().map(|f| (f.label().to_string(), json!(f.len()))).collect()
}

fn write_points(dir: &Path, pts: &EuclideanPointSet) -> Result<PathBuf> {
    let p = dir.join("points.json");
    io::save_space(&p, &Space::Points(pts.clone()))?;
    Ok(p)
}

fn write_families(dir: &Path, fams: &[SubsetFamily]) -> Result<PathBuf> {
    let p = dir.join("families.json");
    io::write_json(&p, fams)?;
    Ok(p)
}

fn gen(a: &GenArgs) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new("gen");
    rep.input("kind", format!("{:?}", a.kind).to_lowercase())
        .input("window", a.window);
    fs::create_dir_all(&a.out)?;
    let need_r = || a.r.ok_or_else(|| Error::InvalidParameter("--r is required".into()));
    // (points, families, advertised (r, C))
    let (pts, fams, advertised): (EuclideanPointSet, Vec<SubsetFamily>, Option<(f64, f64)>) = match a.kind {
        GenKind::Lattice => (gen_lattice_window(&a.window)?, vec![], None),
        GenKind::Net => {
            let eps = a.eps.ok_or_else(|| Error::InvalidParameter("--eps is required".into()))?;
            rep.input("eps", eps);
            (gen_epsilon_net_capped(&a.window, eps, a.cap)?, vec![], None)
        }
        GenKind::Chess => {
            let lattice = gen_lattice_window(&a.window)?;
            let fams = gen_chess_families(&lattice)?.to_vec();
            (lattice, fams, Some((SQRT_2, 0.0)))
        }
        GenKind::Comb => {
            rep.input("delta", a.delta);
            (gen_comb_set(&a.window, a.delta)?, vec![], None)
        }
        GenKind::CombCover => {
            rep.input("delta", a.delta).input("h", a.h);
            let comb = gen_comb_set(&a.window, a.delta)?;
            let fams = gen_comb_cover(&comb, a.h)?.to_vec();
            (comb, fams, Some((1.0, a.h)))
        }
        GenKind::Brick => {
            let r = need_r()?;
            let l = a.l.unwrap_or(3.0 * r);
            rep.input("r", r).input("l", l);
            let (net, fams) = brick_cover_on_window(&a.window, r, l)?;
            (net, fams.to_vec(), Some((r, l * SQRT_2)))
        }
        GenKind::Interval => {
            let r = need_r()?;
            let l = a.l.unwrap_or(3.0 * r);
            rep.input("r", r).input("l", l);
            let (net, fams) = interval_cover_on_range(a.window.xmin, a.window.xmax, r, l)?;
            (net, fams.to_vec(), Some((r, l)))
        }
    };
    rep.output("points", pts.len())
        .output("points_file", write_points(&a.out, &pts)?);
    if !fams.is_empty() {
        rep.output("families_file", write_families(&a.out, &fams)?)
            .output("family_sizes", family_sizes(&fams));
        if let Some((r, c)) = advertised {
            rep.output("advertised_r", r).output("advertised_C", c);
        }
        let mut gap: Option<f64> = None;
        let mut max_diam = 0.0f64;
        for f in &fams {
            if let Some(g) = check_r_disjoint(&pts, f, 0.0, Strictness::NonStrict)?.min_gap {
                gap = Some(gap.map_or(g, |v: f64| v.min(g)));
            }
            max_diam = max_diam.max(check_uniform_bound(&pts, f)?);
        }
        let all = SubsetRef::all(pts.len());
        rep.output("measured_min_gap", gap)
            .output("measured_max_diam", max_diam)
            .output("multiplicity", multiplicity(&pts, &fams, &all)?);
        if a.svg {
            let p = a.out.join("figure.svg");
            fs::write(&p, family_svg(&pts, &fams, &format!("{:?}", a.kind).to_lowercase()))?;
            rep.output("svg_file", p);
        }
    }
    Ok(rep)
}

fn load_points(path: &Path) -> Result<EuclideanPointSet> {
    match io::load_space(path)? {
        Space::Points(p) => Ok(p),
        Space::Matrix(_) => Err(Error::NonEuclideanAmbient),
    }
}

fn hausdorff_cmd(a: &HausdorffArgs) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new("hausdorff");
    let (space, sa, sb) = match (&a.space, &a.points_a, &a.points_b) {
        (Some(s), _, _) => {
            rep.input("space", s)
                .input("a", a.a.as_deref())
                .input("b", a.b.as_deref());
            let space = io::load_space(s)?;
            let n = space.len();
            let sa = io::load_subset(a.a.as_deref().unwrap_or("all"), n)?;
            let sb = io::load_subset(a.b.as_deref().unwrap_or("all"), n)?;
            (space, sa, sb)
        }
        (None, Some(pa), Some(pb)) => {
            rep.input("points_a", pa).input("points_b", pb);
            let (merged, sa, sb) = load_points(pa)?.union(&load_points(pb)?);
            (Space::Points(merged), sa, sb)
        }
        _ => return Err(Error::InvalidParameter("give --space with --a/--b, or --points-a/--points-b".into())),
    };
    let (h, method) = match (&space, a.brute) {
        (Space::Points(p), false) => (p.hausdorff_indexed(&sa, &sb)?, "grid-index"),
        _ => (hausdorff_report(&space, &sa, &sb)?, "brute-force"),
    };
    rep.output("hausdorff", h.value)
        .output("a_to_b", h.a_to_b)
        .output("b_to_a", h.b_to_a)
        .output("size_a", sa.len())
        .output("size_b", sb.len())
        .output("method", method);
    Ok(rep)
}

fn gh_exact_cmd(a: &GhExactArgs) -> Result<ExperimentReport> {
    let x = io::load_space(&a.x)?;
    let y = io::load_space(&a.y)?;
    let r = crate::correspondence::exact_gh(&x, &y, a.budget)?;
    let mut rep = ExperimentReport::new("gh-exact");
    rep.input("x", &a.x).input("y", &a.y).input("budget", a.budget);
    let g = GhReport::from(&r);
    rep.output("dgh", g.dgh)
        .output("dis", g.dis)
        .output("optimal_pairs", g.optimal_pairs)
        .output("nodes", g.nodes)
        .output("optimal", g.optimal);
    Ok(rep)
}

fn strictness(strict: bool) -> Strictness {
    if strict {
        Strictness::Strict
    } else {
        Strictness::NonStrict
    }
}

fn certify(a: &CoverArgs) -> Result<(Space, CoverCertificate)> {
    let space = io::load_space(&a.space)?;
    let fams = io::load_families(&a.families)?;
    let target = io::load_subset(&a.target, space.len())?;
    let cert = make_certificate(&space, fams, a.r, strictness(a.strict), target)?;
    Ok((space, cert))
}

fn cover_inputs(rep: &mut ExperimentReport, a: &CoverArgs) {
    rep.input("space", &a.space)
        .input("families", &a.families)
        .input("r", a.r)
        .input("strictness", strictness(a.strict))
        .input("target", &a.target);
}

fn certificate_outputs(rep: &mut ExperimentReport, space: &Space, cert: &CoverCertificate) -> Result<()> {
    let gaps: serde_json::Value = cert
        .families()
        .iter()
        .zip(cert.gaps())
        .map(|(f, g)| (f.label().to_string(), json!(g.min_gap)))
        .collect();
    rep.output("k", cert.k())
        .output("r", cert.r())
        .output("C", cert.c())
        .output("strictness", cert.strictness())
        .output("min_gaps", gaps)
        .output("family_sizes", family_sizes(cert.families()))
        .output("target_size", cert.target().len())
        .output("multiplicity", multiplicity(space, cert.families(), cert.target())?);
    Ok(())
}

fn load_model(a: &LowerBoundArgs) -> Result<ModelSpaceDescriptor> {
    match (&a.model, &a.model_file) {
        (_, Some(p)) => io::read_json(p),
        (Some(name), None) => lookup_model(name),
        (None, None) => Err(Error::InvalidParameter("--model or --model-file is required".into())),
    }
}

fn lower_bound_cmd(a: &LowerBoundArgs) -> Result<ExperimentReport> {
    let model = load_model(a)?;
    let (space, cert) = certify(&a.cover)?;
    let bound = gh_lower_bound(&cert, &model)?;
    let mut rep = ExperimentReport::new("lower-bound");
    cover_inputs(&mut rep, &a.cover);
    rep.input("model", &model.name);
    certificate_outputs(&mut rep, &space, &cert)?;
    rep.output("certificate", CertificateReport::from(&bound))
        .output("model", &model.name)
        .output("bound", bound.value)
        .output("trace", &bound.trace);
    Ok(rep)
}

fn verify_cover_cmd(a: &CoverArgs) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new("verify-cover");
    cover_inputs(&mut rep, a);
    let space = io::load_space(&a.space)?;
    let fams = io::load_families(&a.families)?;
    let target = io::load_subset(&a.target, space.len())?;
    let cover = check_cover(&space, &fams, &target)?;
    rep.output("covered", cover.covered)
        .output("uncovered", cover.uncovered.len());
    let cert = make_certificate(&space, fams, a.r, strictness(a.strict), target)?;
    certificate_outputs(&mut rep, &space, &cert)?;
    Ok(rep)
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn ladder_cmd(a: &LadderArgs) -> Result<ExperimentReport> {
    let pts = load_points(&a.space)?;
    let fams = io::load_families(&a.families)?;
    let steps = scale_ladder(&pts, &fams, a.lambda, a.steps)?;
    let base = steps[0];
    for s in &steps[1..] {
        let gap_ok = match (base.min_gap, s.min_gap) {
            (Some(g0), Some(g)) => rel_close(g, s.factor * g0, 1e-9),
            (None, None) => true,
            _ => false,
        };
        let diam_ok = rel_close(s.max_diam, s.factor * base.max_diam, 1e-9) || (base.max_diam == 0.0 && s.max_diam == 0.0);
        if !gap_ok || !diam_ok {
            return Err(Error::CheckFailed(format!(
                "step {}: gap {:?} / diameter {} do not scale by {} from {:?} / {}",
                s.m, s.min_gap, s.max_diam, s.factor, base.min_gap, base.max_diam
            )));
        }
    }
    let mut rep = ExperimentReport::new("scale-ladder");
    rep.input("space", &a.space)
        .input("families", &a.families)
        .input("lambda", a.lambda)
        .input("steps", a.steps);
    rep.output("steps", &steps).output("scaling_checked", true);
    Ok(rep)
}

fn reproduce(a: &ReproduceArgs) -> Result<ExperimentReport> {
    if a.window < 4 {
        return Err(Error::InvalidParameter(format!("window must be at least 4, got {}", a.window)));
    }
    let start = Instant::now();
    let n = f64::from(a.window);
    let mut rep = ExperimentReport::new("reproduce");
    rep.input("example", format!("{:?}", a.example).to_lowercase())
        .input("window", a.window)
        .input("out_dir", &a.out_dir);

    // generate: A, its cover, and the fine net standing in for the model plane
    let gen_stage = || -> Result<_> {
        match a.example {
            Example::Example1 => {
                let w = WindowSpec::square(n)?;
                let lattice = gen_lattice_window(&w)?;
                let fams = gen_chess_families(&lattice)?.to_vec();
                let net = gen_epsilon_net_capped(&w, a.eps, DEFAULT_POINT_CAP)?;
                Ok((w, lattice, fams, net, SQRT_2, a.eps))
            }
            Example::Example2 => {
                let w = WindowSpec::new(0.0, n, -n / 2.0, n / 2.0)?;
                let comb = gen_comb_set(&w, a.delta)?;
                let fams = gen_comb_cover(&comb, 2.0)?.to_vec();
                let net = gen_epsilon_net_capped(&w, a.delta, DEFAULT_POINT_CAP)?;
                Ok((w, comb, fams, net, 1.0, a.delta))
            }
        }
    };
    let (window, set, fams, net, r, spacing) = gen_stage().map_err(|e| e.in_stage("generate"))?;
    match a.example {
        Example::Example1 => rep.input("eps", a.eps),
        Example::Example2 => rep.input("delta", a.delta),
    };
    rep.output("set_points", set.len())
        .output("net_points", net.len())
        .output("family_sizes", family_sizes(&fams));

    let cert = make_certificate(&set, fams.clone(), r, Strictness::NonStrict, SubsetRef::all(set.len()))
        .map_err(|e| e.in_stage("certify"))?;
    certificate_outputs(&mut rep, &Space::Points(set.clone()), &cert)?;

    let bound = lookup_model("R2")
        .and_then(|m| gh_lower_bound(&cert, &m))
        .map_err(|e| e.in_stage("lower-bound"))?;
    rep.output("certificate", CertificateReport::from(&bound))
        .output("bound", bound.value);

    let hausdorff_stage = || -> Result<_> {
        let (amb, sa, sb) = set.union(&net);
        let full = amb.hausdorff_indexed(&sa, &sb)?;
        let inner = window
            .shrink(1.0)
            .ok_or_else(|| Error::InvalidParameter("window too small for an interior".into()))?;
        let keep = |s: &SubsetRef| {
            SubsetRef::new(s.iter().filter(|&i| inner.contains(amb.point(i))).collect(), amb.len())
        };
        let interior = amb.hausdorff_indexed(&keep(&sa)?, &keep(&sb)?)?;
        Ok((full, interior))
    };
    let (full, interior) = hausdorff_stage().map_err(|e| e.in_stage("hausdorff"))?;
    rep.output("hausdorff_window", full.value)
        .output("hausdorff_interior", interior.value);

    // A finite upper bound on a small matching sub-window.
    let upper_stage = || -> Result<_> {
        let sub = match a.example {
            Example::Example1 => WindowSpec::square(2.0)?,
            Example::Example2 => WindowSpec::new(0.0, 2.0, -1.0, 1.0)?,
        };
        let small_set = match a.example {
            Example::Example1 => gen_lattice_window(&sub)?,
            Example::Example2 => gen_comb_set(&sub, a.delta)?,
        };
        let small_net = gen_epsilon_net_capped(&sub, spacing, DEFAULT_POINT_CAP)?;
        let corr = nearest_point_correspondence(&small_set, &small_net);
        Ok((sub, gh_upper_bound_from_correspondence(&small_set, &small_net, &corr)?))
    };
    let (sub, upper) = upper_stage().map_err(|e| e.in_stage("upper-bound"))?;
    // The net is only within its covering radius of the plane, so a finite
    // correspondence can undercut the bound by that much.
    let covering_radius = spacing / SQRT_2;
    let consistent = bound.value <= upper + covering_radius + 1e-9;
    rep.output("upper_bound_window", sub)
        .output("gh_upper_bound", upper)
        .output("net_covering_radius", covering_radius)
        .output("bounds_consistent", consistent);

    let tolerance = match a.example {
        Example::Example1 => 1e-9,
        Example::Example2 => a.delta + 2.0 / n,
    };
    let deviation = (bound.value - full.value).abs();
    rep.output("deviation", deviation).output("tolerance", tolerance);

    let write_stage = || -> Result<_> {
        fs::create_dir_all(&a.out_dir)?;
        let points = write_points(&a.out_dir, &set)?;
        let families = write_families(&a.out_dir, &fams)?;
        let svg = a.out_dir.join("figure.svg");
        let title = match a.example {
            Example::Example1 => format!("chess colouring of Z^2 on [0,{n}]^2"),
            Example::Example2 => format!("comb cover, h = 2, on [0,{n}] x [{},{}]", -n / 2.0, n / 2.0),
        };
        fs::write(&svg, family_svg(&set, &fams, &title))?;
        Ok((points, families, svg))
    };
    let (points, families, svg) = write_stage().map_err(|e| e.in_stage("write"))?;
    rep.output("points_file", points)
        .output("families_file", families)
        .output("svg_file", svg);
    rep.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    io::write_json(&a.out_dir.join("report.json"), &rep)?;

    if deviation > tolerance {
        return Err(Error::CheckFailed(format!(
            "|bound - d_H| = {deviation} exceeds {tolerance}"
        ))
        .in_stage("compare"));
    }
    if !consistent {
        return Err(Error::CheckFailed(format!(
            "lower bound {} exceeds window upper bound {upper} plus covering radius {covering_radius}",
            bound.value
        ))
        .in_stage("compare"));
    }
    Ok(rep)
}
