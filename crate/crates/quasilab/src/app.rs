//! Subcommand front end: argument types and the run functions that turn
//! library calls into CSV/JSON/SVG files.
//!
//! Every run writes its data files first, then a manifest naming the
//! subcommand, the full parameter set, the seed when sampling is
//! involved, and a sha256 digest per output.  Outputs are deterministic
//! functions of the manifest, whatever the thread count.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cutproject::{self, CpsScheme};
use crate::diffraction::{self, KGrid, Taper};
use crate::discrepancy::{self, RegionSpec};
use crate::error::{Error, Result};
use crate::gaps;
use crate::graph_spectrum::{graph_operator_spectrum, SpectrumMode};
use crate::io::{self, RunManifest};
use crate::numerics::dd::parse_real;
use crate::schrodinger;
use crate::substitution::Substitution;
use crate::tilings::{PenrosePatch, PenroseVariant, PinwheelPatch, RobinsonKind, TilingGraph};
use crate::words::{self, Convention, PatternVerdict, RotationWord};

#[derive(Parser)]
#[command(
    name = "quasilab",
    version,
    about = "Computational laboratory for aperiodic order: words, spectra, tilings, diffraction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Sample a coded irrational rotation as a binary word
    Sturmian(SturmianArgs),
    /// Factor and pattern complexity of a sampled rotation word
    Complexity(ComplexityArgs),
    /// Analyze a substitution rule: matrix, Perron data, Pisot checks
    Substitution(SubstitutionArgs),
    /// Band spectrum of a periodic approximant to a 1D quasiperiodic operator
    Spectrum1d(Spectrum1dArgs),
    /// Eigenvalues and integrated density of states of a tiling graph operator
    Spectrum2d(Spectrum2dArgs),
    /// Iterate the trace recursion and track its conserved quantity
    Trace(TraceArgs),
    /// Gap classes of one- or two-parameter circle sequences
    Gaps(GapsArgs),
    /// Running minima of n * |n a| * |n b| over n
    Littlewood(LittlewoodArgs),
    /// Generate a cut-and-project point set
    Cps(CpsArgs),
    /// Lift a chosen subset of the integer grid into a slab window construction
    #[command(name = "weiss-window")]
    WeissWindow(WeissWindowArgs),
    /// Substitution tilings: point, tile, and adjacency exports
    Tiling(TilingArgs),
    /// Structure factor of a point set on a k-grid
    Diffract(DiffractArgs),
    /// Detect rings in a radial intensity profile
    Rings(RingsArgs),
    /// Region-count discrepancy sweeps and growth fits
    Discrepancy(DiscrepancyArgs),
    /// Render a CSV data file as an SVG plot
    Plot(PlotArgs),
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Sturmian(a) => run_sturmian(a),
        Command::Complexity(a) => run_complexity(a),
        Command::Substitution(a) => run_substitution(a),
        Command::Spectrum1d(a) => run_spectrum1d(a),
        Command::Spectrum2d(a) => run_spectrum2d(a),
        Command::Trace(a) => run_trace(a),
        Command::Gaps(a) => run_gaps(a),
        Command::Littlewood(a) => run_littlewood(a),
        Command::Cps(a) => run_cps(a),
        Command::WeissWindow(a) => run_weiss_window(a),
        Command::Tiling(a) => run_tiling(a),
        Command::Diffract(a) => run_diffract(a),
        Command::Rings(a) => run_rings(a),
        Command::Discrepancy(a) => run_discrepancy(a),
        Command::Plot(a) => run_plot(a),
    }
}

// ═══════════════════════════════════════════════════════════════════
// Shared helpers
// ═══════════════════════════════════════════════════════════════════

fn fnum(v: f64) -> String {
    format!("{v}")
}

fn manifest_target(out: &Path, explicit: Option<&PathBuf>) -> PathBuf {
    explicit.cloned().unwrap_or_else(|| {
        let mut name = out.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        out.with_file_name(name)
    })
}

fn seal(manifest: &mut RunManifest, outputs: &[&Path], target: &Path) -> Result<()> {
    for out in outputs {
        manifest.record_output(out)?;
    }
    manifest.write_json(target)
}

/// Point sets travel between subcommands as CSV with an `x` column and,
/// in the plane, a `y` column.
fn load_points(path: &Path) -> Result<Vec<Vec<f64>>> {
    let (header, rows) = io::read_csv(path)?;
    let x = header
        .iter()
        .position(|h| h == "x")
        .ok_or_else(|| Error::InvalidInput(format!("{} has no 'x' column", path.display())))?;
    let y = header.iter().position(|h| h == "y");
    rows.iter()
        .map(|row| {
            let mut p = vec![io::parse_f64_field(&row[x])?];
            if let Some(y) = y {
                p.push(io::parse_f64_field(&row[y])?);
            }
            Ok(p)
        })
        .collect()
}

fn parse_vector(s: &str, dim: usize) -> Result<Vec<f64>> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| io::parse_f64_field(t))
        .collect::<Result<_>>()?;
    if parts.len() != dim {
        return Err(Error::InvalidInput(format!(
            "expected {dim} comma-separated coordinates, got '{s}'"
        )));
    }
    Ok(parts)
}

// ═══════════════════════════════════════════════════════════════════
// Words
// ═══════════════════════════════════════════════════════════════════

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    /// Indicator interval closed on the left
    Left,
    /// Indicator interval closed on the right
    Right,
}

impl ConventionArg {
    fn to_convention(self) -> Convention {
        match self {
            ConventionArg::Left => Convention::LeftClosed,
            ConventionArg::Right => Convention::RightClosed,
        }
    }
}

#[derive(Args)]
pub struct SturmianArgs {
    /// Rotation number: golden, sqrt<D>, (p+q*sqrt(D))/r, or a decimal
    #[arg(long, default_value = "golden")]
    pub alpha: String,
    /// Orbit starting phase, same token syntax
    #[arg(long, default_value = "0")]
    pub theta: String,
    #[arg(long, default_value_t = 5000)]
    pub length: usize,
    #[arg(long, value_enum, default_value_t = ConventionArg::Left)]
    pub convention: ConventionArg,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn run_sturmian(a: &SturmianArgs) -> Result<()> {
    let alpha = parse_real(&a.alpha)?;
    let theta = parse_real(&a.theta)?;
    let word = RotationWord::new(alpha, theta, a.convention.to_convention())?;
    let letters = word.prefix(a.length)?;
    let rows: Vec<Vec<String>> = letters
        .iter()
        .enumerate()
        .map(|(i, l)| vec![i.to_string(), l.to_string()])
        .collect();
    io::write_csv(&a.out, &["index", "letter"], &rows)?;
    let mut m = RunManifest::new("sturmian");
    m.param("alpha", &a.alpha)
        .param("theta", &a.theta)
        .param("length", a.length)
        .param("convention", format!("{:?}", a.convention));
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

#[derive(Args)]
pub struct ComplexityArgs {
    #[arg(long, default_value = "golden")]
    pub alpha: String,
    #[arg(long, default_value = "0")]
    pub theta: String,
    /// Sample window length
    #[arg(long, default_value_t = 5000)]
    pub length: usize,
    /// Largest factor length censused
    #[arg(long, default_value_t = 20)]
    pub nmax: usize,
    /// Also probe pattern complexity with this template size
    #[arg(long)]
    pub template_size: Option<usize>,
    /// Largest template offset for the pattern probe
    #[arg(long, default_value_t = 40)]
    pub template_bound: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn run_complexity(a: &ComplexityArgs) -> Result<()> {
    let alpha = parse_real(&a.alpha)?;
    let theta = parse_real(&a.theta)?;
    let word = RotationWord::new(alpha, theta, Convention::LeftClosed)?;
    let letters = word.prefix(a.length)?;
    let rows: Vec<Vec<String>> = (1..=a.nmax)
        .map(|n| {
            vec![
                n.to_string(),
                words::factor_complexity(&letters, n).to_string(),
            ]
        })
        .collect();
    io::write_csv(&a.out, &["n", "factor_count"], &rows)?;
    let mut m = RunManifest::new("complexity");
    m.param("alpha", &a.alpha)
        .param("theta", &a.theta)
        .param("length", a.length)
        .param("nmax", a.nmax);
    if let Some(size) = a.template_size {
        let verdict = words::pattern_verdict(&letters, size, a.template_bound)?;
        let (tag, witness) = match &verdict {
            PatternVerdict::ExcessPatterns(w) => ("excess", w),
            PatternVerdict::DeficientPatterns(w) => ("deficient", w),
            PatternVerdict::Consistent(w) => ("consistent", w),
        };
        m.param("template_size", size)
            .param("template_bound", a.template_bound)
            .param("pattern_verdict", tag)
            .param(
                "pattern_witness_offsets",
                witness
                    .offsets
                    .iter()
                    .map(|o| o.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            )
            .param("pattern_witness_count", witness.count);
    }
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

// ═══════════════════════════════════════════════════════════════════
// Substitutions
// ═══════════════════════════════════════════════════════════════════

#[derive(Args)]
pub struct SubstitutionArgs {
    /// Rule such as "a->ab; b->a"
    #[arg(long)]
    pub rule: String,
    /// Letter seeding the fixed-point sample
    #[arg(long)]
    pub seed_letter: Option<char>,
    /// Length of the sampled fixed-point prefix
    #[arg(long, default_value_t = 0)]
    pub sample_length: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn poly_string(coeffs: &[i128]) -> String {
    coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_substitution(a: &SubstitutionArgs) -> Result<()> {
    let sub = Substitution::parse(&a.rule)?;
    let report = sub.perron_report()?;
    let mut rows: Vec<Vec<String>> = vec![
        vec![
            "matrix".into(),
            report
                .matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("; "),
        ],
        vec![
            "char_poly_ascending".into(),
            poly_string(report.char_poly.coeffs()),
        ],
        vec![
            "min_poly_ascending".into(),
            poly_string(report.min_poly.coeffs()),
        ],
        vec!["lambda".into(), fnum(report.lambda)],
        vec!["lambda_err".into(), fnum(report.lambda_err)],
        vec![
            "conjugate_moduli".into(),
            report
                .conjugate_moduli
                .iter()
                .map(|v| fnum(*v))
                .collect::<Vec<_>>()
                .join(" "),
        ],
        vec!["primitive".into(), report.primitive.to_string()],
        vec!["irreducible".into(), report.irreducible.to_string()],
        vec!["unimodular".into(), report.unimodular.to_string()],
        vec!["is_pisot".into(), report.is_pisot.to_string()],
        vec!["pisot_certified".into(), report.pisot_certified.to_string()],
        vec![
            "conjecture_applies".into(),
            report.conjecture_applies.to_string(),
        ],
    ];
    if a.sample_length > 0 {
        let seed = a
            .seed_letter
            .or_else(|| sub.alphabet().first().copied())
            .ok_or_else(|| Error::InvalidInput("empty alphabet".into()))?;
        let word = sub.fixed_point(seed, a.sample_length)?;
        rows.push(vec!["fixed_point_prefix".into(), sub.word_to_string(&word)]);
    }
    io::write_csv(&a.out, &["key", "value"], &rows)?;
    let mut m = RunManifest::new("substitution");
    m.param("rule", &a.rule).param("sample_length", a.sample_length);
    if let Some(c) = a.seed_letter {
        m.param("seed_letter", c);
    }
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

// ═══════════════════════════════════════════════════════════════════
// 1D spectra
// ═══════════════════════════════════════════════════════════════════

#[derive(Args)]
pub struct Spectrum1dArgs {
    #[arg(long, default_value = "golden")]
    pub alpha: String,
    /// Potential coupling strength
    #[arg(long)]
    pub lambda: f64,
    /// Continued-fraction convergent level (1-based)
    #[arg(long)]
    pub level: usize,
    /// Band-edge bisection tolerance
    #[arg(long, default_value_t = schrodinger::DEFAULT_EDGE_TOL)]
    pub edge_tol: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn run_spectrum1d(a: &Spectrum1dArgs) -> Result<()> {
    let alpha = parse_real(&a.alpha)?;
    let spectrum = schrodinger::sturmian_spectrum_level(&alpha, a.lambda, a.level, a.edge_tol)?;
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (i, band) in spectrum.bands.bands().iter().enumerate() {
        rows.push(vec![
            "band".into(),
            i.to_string(),
            fnum(band.lo),
            fnum(band.hi),
        ]);
    }
    for (i, band) in spectrum.raw_bands.iter().enumerate() {
        rows.push(vec![
            "raw".into(),
            i.to_string(),
            fnum(band.lo),
            fnum(band.hi),
        ]);
    }
    io::write_csv(&a.out, &["kind", "index", "lo", "hi"], &rows)?;
    let mut m = RunManifest::new("spectrum1d");
    m.param("alpha", &a.alpha)
        .param("lambda", fnum(a.lambda))
        .param("level", a.level)
        .param("edge_tol", fnum(a.edge_tol))
        .param("p", spectrum.p)
        .param("q", spectrum.q)
        .param("band_count", spectrum.bands.count())
        .param("total_measure", fnum(spectrum.bands.measure()));
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

// ═══════════════════════════════════════════════════════════════════
// Tiling graph spectra
// ═══════════════════════════════════════════════════════════════════

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RuleArg {
    Pinwheel,
    Penrose,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    /// Merge triangle pairs across shared bases into rhombus faces
    Rhombi,
    /// Keep the half-rhombus triangles as faces
    Triangles,
}

impl VariantArg {
    fn to_variant(self) -> PenroseVariant {
        match self {
            VariantArg::Rhombi => PenroseVariant::Rhombi,
            VariantArg::Triangles => PenroseVariant::Triangles,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SeedArg {
    Acute,
    Obtuse,
}

impl SeedArg {
    fn to_kind(self) -> RobinsonKind {
        match self {
            SeedArg::Acute => RobinsonKind::Acute,
            SeedArg::Obtuse => RobinsonKind::Obtuse,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Dense,
    Iterative,
}

fn build_tiling_graph(
    rule: RuleArg,
    generations: u32,
    seed: SeedArg,
    variant: VariantArg,
) -> Result<(TilingGraph, String)> {
    match rule {
        RuleArg::Pinwheel => {
            let patch = PinwheelPatch::seed().substitute(generations)?;
            Ok((
                patch.graph(),
                // The subdivision point halfway along each long leg is a
                // graph vertex wherever a neighbor's corner lands there.
                "corners plus half-edge meeting points".into(),
            ))
        }
        RuleArg::Penrose => {
            let patch = PenrosePatch::seed(seed.to_kind()).substitute(generations)?;
            Ok((
                patch.graph(variant.to_variant()),
                "tile corners".into(),
            ))
        }
    }
}

#[derive(Args)]
pub struct Spectrum2dArgs {
    #[arg(long, value_enum)]
    pub rule: RuleArg,
    #[arg(long, default_value_t = 4)]
    pub generations: u32,
    /// Seed triangle kind (Penrose only)
    #[arg(long, value_enum, default_value_t = SeedArg::Acute)]
    pub seed: SeedArg,
    /// Penrose adjacency presentation
    #[arg(long, value_enum, default_value_t = VariantArg::Rhombi)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Dense)]
    pub mode: ModeArg,
    /// Eigenvalue tolerance for the iterative route
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn run_spectrum2d(a: &Spectrum2dArgs) -> Result<()> {
    let (graph, convention) =
        build_tiling_graph(a.rule, a.generations, a.seed, a.variant)?;
    let mode = match a.mode {
        ModeArg::Dense => SpectrumMode::Dense,
        ModeArg::Iterative => SpectrumMode::Iterative,
    };
    let spectrum = graph_operator_spectrum(&graph, mode, a.tol)?;
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (i, ev) in spectrum.eigenvalues.iter().enumerate() {
        rows.push(vec!["eigenvalue".into(), i.to_string(), fnum(*ev), String::new()]);
    }
    for (i, (x, f)) in spectrum.ids.iter().enumerate() {
        rows.push(vec!["ids".into(), i.to_string(), fnum(*x), fnum(*f)]);
    }
    io::write_csv(&a.out, &["record", "index", "x", "y"], &rows)?;
    let mut m = RunManifest::new("spectrum2d");
    m.param("rule", format!("{:?}", a.rule))
        .param("generations", a.generations)
        .param("seed", format!("{:?}", a.seed))
        .param("variant", format!("{:?}", a.variant))
        .param("mode", format!("{:?}", a.mode))
        .param("tol", fnum(a.tol))
        .param("vertex_convention", convention)
        .param("vertices", graph.vertices.len())
        .param("edges", spectrum.edge_count)
        .param("disconnected", spectrum.disconnected)
        .param("min_eigenvalue", fnum(spectrum.min_eigenvalue))
        .param("max_eigenvalue", fnum(spectrum.max_eigenvalue));
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

// ═══════════════════════════════════════════════════════════════════
// Trace orbits
// ═══════════════════════════════════════════════════════════════════

#[derive(Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub energy: f64,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = 30)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 10.0)]
    pub escape_radius: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn run_trace(a: &TraceArgs) -> Result<()> {
    let orbit = schrodinger::trace_orbit(a.energy, a.lambda, a.max_iter, a.escape_radius)?;
    let rows = vec![
        vec![
            "escaped_at".into(),
            orbit.escaped_at.map_or(String::new(), |k| k.to_string()),
        ],
        vec!["invariant".into(), fnum(orbit.invariant)],
        vec!["invariant_drift".into(), fnum(orbit.invariant_drift)],
        vec!["iterations".into(), orbit.iterations.to_string()],
    ];
    io::write_csv(&a.out, &["key", "value"], &rows)?;
    let mut m = RunManifest::new("trace");
    m.param("energy", fnum(a.energy))
        .param("lambda", fnum(a.lambda))
        .param("max_iter", a.max_iter)
        .param("escape_radius", fnum(a.escape_radius));
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

// ═══════════════════════════════════════════════════════════════════
// Circle sequences
// ═══════════════════════════════════════════════════════════════════

#[derive(Args)]
pub struct GapsArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "0")]
    pub beta: String,
    /// Rows of the m index (m ranges over 0..M)
    #[arg(long = "M", visible_alias = "m", default_value_t = 10)]
    pub m: usize,
    /// Rows of the n index
    #[arg(long = "N", visible_alias = "n", default_value_t = 10)]
    pub n: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn run_gaps(a: &GapsArgs) -> Result<()> {
    let alpha = parse_real(&a.alpha)?;
    let beta = parse_real(&a.beta)?;
    let points = gaps::torus_points(&alpha, &beta, a.m, a.n)?;
    let classes = gaps::gap_classes(&points)?;
    let rows: Vec<Vec<String>> = classes
        .iter()
        .map(|(c, len)| {
            vec![
                c.dm.to_string(),
                c.dn.to_string(),
                c.dk.to_string(),
                c.multiplicity.to_string(),
                fnum(*len),
            ]
        })
        .collect();
    io::write_csv(&a.out, &["dm", "dn", "dk", "multiplicity", "length"], &rows)?;
    let mut m = RunManifest::new("gaps");
    m.param("alpha", &a.alpha)
        .param("beta", &a.beta)
        .param("M", a.m)
        .param("N", a.n)
        .param("gap_class_count", classes.len());
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

#[derive(Args)]
pub struct LittlewoodArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub beta: String,
    #[arg(long, default_value_t = 100_000)]
    pub nmax: i64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn run_littlewood(a: &LittlewoodArgs) -> Result<()> {
    let alpha = parse_real(&a.alpha)?;
    let beta = parse_real(&a.beta)?;
    let records = gaps::littlewood_scan(&alpha, &beta, a.nmax)?;
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                fnum(r.dist_a),
                fnum(r.dist_b),
                fnum(r.value),
            ]
        })
        .collect();
    io::write_csv(&a.out, &["n", "dist_a", "dist_b", "value"], &rows)?;
    let mut m = RunManifest::new("littlewood");
    m.param("alpha", &a.alpha)
        .param("beta", &a.beta)
        .param("nmax", a.nmax)
        .param("record_count", records.len());
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

// ═══════════════════════════════════════════════════════════════════
// Cut-and-project
// ═══════════════════════════════════════════════════════════════════

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SchemeArg {
    /// 2-to-1 golden-ratio chain
    Fibonacci,
    /// 3-to-2 plane over two independent irrationals
    Planar,
}

#[derive(Args)]
pub struct CpsArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::Fibonacci)]
    pub scheme: SchemeArg,
    /// First slope (planar scheme)
    #[arg(long, default_value = "sqrt2")]
    pub alpha: String,
    /// Second slope (planar scheme)
    #[arg(long, default_value = "sqrt3")]
    pub beta: String,
    /// Physical-space cutoff radius
    #[arg(long, default_value_t = 50.0)]
    pub radius: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn run_cps(a: &CpsArgs) -> Result<()> {
    let scheme = match a.scheme {
        SchemeArg::Fibonacci => CpsScheme::fibonacci_chain(),
        SchemeArg::Planar => CpsScheme::planar(parse_real(&a.alpha)?, parse_real(&a.beta)?)?,
    };
    let window = scheme.canonical_window()?;
    let points = cutproject::generate(&scheme, &window, a.radius)?;
    let phys = scheme.phys_dim();
    let internal = scheme.internal_dim();
    let total = scheme.total_dim();
    let mut header: Vec<String> = Vec::new();
    header.extend(["x", "y", "z"][..phys].iter().map(|s| s.to_string()));
    header.extend((0..internal).map(|i| format!("internal{i}")));
    header.extend((0..total).map(|i| format!("lattice{i}")));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|p| {
            let mut row: Vec<String> = p.position.iter().map(|v| fnum(*v)).collect();
            row.extend(p.internal.iter().map(|v| fnum(*v)));
            row.extend(p.lattice.iter().map(|z| z.to_string()));
            row
        })
        .collect();
    io::write_csv(&a.out, &header_refs, &rows)?;
    let mut m = RunManifest::new("cps");
    m.param("scheme", format!("{:?}", a.scheme))
        .param("alpha", &a.alpha)
        .param("beta", &a.beta)
        .param("radius", fnum(a.radius))
        .param("point_count", points.len());
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SubsetArg {
    /// Keep every index
    Full,
    /// Keep indices with even coordinate sum
    Checkerboard,
    /// Remove a 5x5 block around the origin
    Holes,
}

#[derive(Args)]
pub struct WeissWindowArgs {
    #[arg(long, default_value = "sqrt2")]
    pub alpha: String,
    #[arg(long, default_value = "sqrt3")]
    pub beta: String,
    /// Index square half-width: indices run over [-R, R]^2
    #[arg(long, default_value_t = 50)]
    pub half_range: i64,
    #[arg(long, value_enum, default_value_t = SubsetArg::Full)]
    pub subset: SubsetArg,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn run_weiss_window(a: &WeissWindowArgs) -> Result<()> {
    let alpha = parse_real(&a.alpha)?;
    let beta = parse_real(&a.beta)?;
    let keep: Box<dyn Fn(i64, i64) -> bool> = match a.subset {
        SubsetArg::Full => Box::new(|_, _| true),
        SubsetArg::Checkerboard => Box::new(|m1, m2| (m1 + m2).rem_euclid(2) == 0),
        SubsetArg::Holes => Box::new(|m1, m2| m1.abs() > 2 || m2.abs() > 2),
    };
    let construction = cutproject::slab_window(alpha, beta, keep.as_ref(), a.half_range)?;
    let rows: Vec<Vec<String>> = construction
        .points
        .iter()
        .map(|p| {
            vec![
                p.index.0.to_string(),
                p.index.1.to_string(),
                p.lattice[2].to_string(),
                fnum(p.position[0]),
                fnum(p.position[1]),
                fnum(p.internal),
            ]
        })
        .collect();
    io::write_csv(&a.out, &["m1", "m2", "n3", "x", "y", "internal"], &rows)?;
    // Each projected point sits at chart(m1, m2, a m1 + b m2) plus the
    // internal coordinate times the projected third axis, so its offset
    // from the plane point of its index is internal * |P(e3)|.
    let e3 = construction.scheme.position(&[0, 0, 1]);
    let slab_height = e3.iter().map(|v| v * v).sum::<f64>().sqrt();
    let max_displacement = construction
        .points
        .iter()
        .map(|p| p.internal * slab_height)
        .fold(0.0, f64::max);
    let mut m = RunManifest::new("weiss-window");
    m.param("alpha", &a.alpha)
        .param("beta", &a.beta)
        .param("half_range", a.half_range)
        .param("subset", format!("{:?}", a.subset))
        .param("point_count", construction.points.len())
        .param("slab_height", fnum(slab_height))
        .param("max_displacement", fnum(max_displacement));
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

// ═══════════════════════════════════════════════════════════════════
// Tilings
// ═══════════════════════════════════════════════════════════════════

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExportArg {
    /// Designated point per tile (pinwheel) or deduplicated mesh vertices (Penrose)
    Points,
    /// Exact tile transforms
    Tiles,
    /// Vertex and edge lists of the adjacency graph
    Graph,
}

#[derive(Args)]
pub struct TilingArgs {
    #[arg(long, value_enum)]
    pub rule: RuleArg,
    #[arg(long, default_value_t = 3)]
    pub generations: u32,
    #[arg(long, value_enum, default_value_t = SeedArg::Acute)]
    pub seed: SeedArg,
    #[arg(long, value_enum, default_value_t = VariantArg::Rhombi)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = ExportArg::Points)]
    pub export: ExportArg,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn graph_rows(graph: &TilingGraph) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for (i, v) in graph.vertices.iter().enumerate() {
        rows.push(vec![
            "vertex".into(),
            i.to_string(),
            String::new(),
            fnum(v[0]),
            fnum(v[1]),
        ]);
    }
    for (a, b) in &graph.edges {
        rows.push(vec![
            "edge".into(),
            a.to_string(),
            b.to_string(),
            String::new(),
            String::new(),
        ]);
    }
    rows
}

const GRAPH_HEADER: [&str; 5] = ["record", "i", "j", "x", "y"];

fn run_tiling(a: &TilingArgs) -> Result<()> {
    let mut m = RunManifest::new("tiling");
    m.param("rule", format!("{:?}", a.rule))
        .param("generations", a.generations)
        .param("export", format!("{:?}", a.export));
    match a.rule {
        RuleArg::Pinwheel => {
            let patch = PinwheelPatch::seed().substitute(a.generations)?;
            m.param("tile_count", patch.tile_count())
                .param("orientation_census", patch.orientation_census());
            match a.export {
                ExportArg::Points => {
                    let rows: Vec<Vec<String>> = patch
                        .reference_points()
                        .iter()
                        .map(|p| vec![fnum(p[0]), fnum(p[1])])
                        .collect();
                    io::write_csv(&a.out, &["x", "y"], &rows)?;
                }
                ExportArg::Tiles => {
                    let rows: Vec<Vec<String>> = patch
                        .tiles()
                        .iter()
                        .enumerate()
                        .map(|(i, t)| {
                            vec![
                                i.to_string(),
                                t.reflect.to_string(),
                                t.rot.numerator().re.to_string(),
                                t.rot.numerator().im.to_string(),
                                t.rot.denominator_pow().to_string(),
                                t.trans.numerator().re.to_string(),
                                t.trans.numerator().im.to_string(),
                                t.trans.denominator_pow().to_string(),
                            ]
                        })
                        .collect();
                    io::write_csv(
                        &a.out,
                        &[
                            "index",
                            "reflected",
                            "rot_re",
                            "rot_im",
                            "rot_pow5",
                            "trans_re",
                            "trans_im",
                            "trans_pow5",
                        ],
                        &rows,
                    )?;
                }
                ExportArg::Graph => {
                    let graph = patch.graph();
                    m.param(
                        "vertex_convention",
                        "corners plus half-edge meeting points",
                    );
                    io::write_csv(&a.out, &GRAPH_HEADER, &graph_rows(&graph))?;
                }
            }
        }
        RuleArg::Penrose => {
            let patch = PenrosePatch::seed(a.seed.to_kind()).substitute(a.generations)?;
            let (acute, obtuse) = patch.type_counts();
            m.param("seed", format!("{:?}", a.seed))
                .param("variant", format!("{:?}", a.variant))
                .param("acute_count", acute)
                .param("obtuse_count", obtuse)
                .param("orientation_census", patch.orientation_census());
            match a.export {
                ExportArg::Points => {
                    let graph = patch.graph(a.variant.to_variant());
                    let rows: Vec<Vec<String>> = graph
                        .vertices
                        .iter()
                        .map(|v| vec![fnum(v[0]), fnum(v[1])])
                        .collect();
                    io::write_csv(&a.out, &["x", "y"], &rows)?;
                }
                ExportArg::Tiles => {
                    let rows: Vec<Vec<String>> = patch
                        .tiles()
                        .iter()
                        .enumerate()
                        .map(|(i, t)| {
                            let mut row = vec![
                                i.to_string(),
                                format!("{:?}", t.kind),
                                t.map.reflect.to_string(),
                            ];
                            row.extend(t.map.rot.0.iter().map(|c| c.to_string()));
                            row.extend(t.map.trans.0.iter().map(|c| c.to_string()));
                            row
                        })
                        .collect();
                    io::write_csv(
                        &a.out,
                        &[
                            "index", "kind", "reflected", "rot0", "rot1", "rot2", "rot3",
                            "trans0", "trans1", "trans2", "trans3",
                        ],
                        &rows,
                    )?;
                }
                ExportArg::Graph => {
                    let graph = patch.graph(a.variant.to_variant());
                    io::write_csv(&a.out, &GRAPH_HEADER, &graph_rows(&graph))?;
                }
            }
        }
    }
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

// ═══════════════════════════════════════════════════════════════════
// Diffraction
// ═══════════════════════════════════════════════════════════════════

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GridArg {
    Cartesian,
    Polar,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TaperArg {
    None,
    Gaussian,
}

#[derive(Args)]
pub struct DiffractArgs {
    /// Point-set CSV with an `x` column and optionally `y`
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, value_enum, default_value_t = GridArg::Cartesian)]
    pub grid: GridArg,
    /// Largest |k| component (cartesian) or radius (polar)
    #[arg(long, default_value_t = 2.0)]
    pub extent: f64,
    /// Cartesian node spacing
    #[arg(long, default_value_t = 0.05)]
    pub dk: f64,
    /// Polar radial step
    #[arg(long, default_value_t = 0.05)]
    pub dr: f64,
    /// Polar angular step (radians)
    #[arg(long, default_value_t = 0.0327)]
    pub dtheta: f64,
    #[arg(long, value_enum, default_value_t = TaperArg::None)]
    pub taper: TaperArg,
    /// Gaussian taper width
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Average the intensity over this many random rotations of the set
    #[arg(long, default_value_t = 0)]
    pub rotations: u32,
    /// Rotation ensemble seed (required when rotations > 0)
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the circular average (polar grids only)
    #[arg(long)]
    pub radial_out: Option<PathBuf>,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn run_diffract(a: &DiffractArgs) -> Result<()> {
    let points = load_points(&a.points)?;
    let dim = points.first().map_or(0, Vec::len);
    let grid = match a.grid {
        GridArg::Cartesian => KGrid::cartesian(dim.max(1), a.extent, a.dk)?,
        GridArg::Polar => KGrid::polar(a.extent, a.dr, a.dtheta)?,
    };
    let taper = match a.taper {
        TaperArg::None => Taper::None,
        TaperArg::Gaussian => Taper::Gaussian { sigma: a.sigma },
    };
    let intensity = if a.rotations == 0 {
        diffraction::structure_factor(&points, &grid, taper)?
    } else {
        if dim != 2 {
            return Err(Error::InvalidInput(
                "rotation averaging needs planar points".into(),
            ));
        }
        let seed = a.seed.ok_or_else(|| {
            Error::InvalidInput("--seed is required when --rotations > 0".into())
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mean = vec![0.0; grid.nodes().len()];
        for _ in 0..a.rotations {
            let theta: f64 = rng.r#gen::<f64>() * std::f64::consts::TAU;
            let (s, c) = theta.sin_cos();
            let rotated: Vec<Vec<f64>> = points
                .iter()
                .map(|p| vec![c * p[0] - s * p[1], s * p[0] + c * p[1]])
                .collect();
            let one = diffraction::structure_factor(&rotated, &grid, taper)?;
            for (acc, i) in mean.iter_mut().zip(&one) {
                *acc += i / f64::from(a.rotations);
            }
        }
        mean
    };
    let nodes = grid.nodes();
    let mut header: Vec<&str> = Vec::new();
    header.extend(&["k1", "k2", "k3"][..nodes[0].len()]);
    header.push("intensity");
    let rows: Vec<Vec<String>> = nodes
        .iter()
        .zip(&intensity)
        .map(|(k, i)| {
            let mut row: Vec<String> = k.iter().map(|v| fnum(*v)).collect();
            row.push(fnum(*i));
            row
        })
        .collect();
    io::write_csv(&a.out, &header, &rows)?;

    let mut outputs: Vec<&Path> = vec![&a.out];
    if let Some(radial) = &a.radial_out {
        let profile = diffraction::radial_average(&grid, &intensity)?;
        let rows: Vec<Vec<String>> = profile
            .radii
            .iter()
            .zip(&profile.intensity)
            .zip(&profile.sample_counts)
            .map(|((r, i), n)| vec![fnum(*r), fnum(*i), n.to_string()])
            .collect();
        io::write_csv(radial, &["radius", "intensity", "samples"], &rows)?;
        outputs.push(radial);
    }

    let mut m = RunManifest::new("diffract");
    m.param("points", a.points.display().to_string())
        .param("grid", format!("{:?}", a.grid))
        .param("extent", fnum(a.extent))
        .param("dk", fnum(a.dk))
        .param("dr", fnum(a.dr))
        .param("dtheta", fnum(a.dtheta))
        .param("taper", format!("{:?}", a.taper))
        .param("sigma", fnum(a.sigma))
        .param("rotations", a.rotations)
        .param("point_count", points.len());
    m.seed = a.seed.filter(|_| a.rotations > 0);
    seal(&mut m, &outputs, &manifest_target(&a.out, a.manifest.as_ref()))
}

#[derive(Args)]
pub struct RingsArgs {
    /// Radial profile CSV with `radius` and `intensity` columns
    #[arg(long)]
    pub profile: PathBuf,
    /// Minimum height above the local median baseline
    #[arg(long, default_value_t = 3.0)]
    pub prominence: f64,
    /// Median window width in samples
    #[arg(long, default_value_t = 11)]
    pub window: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn run_rings(a: &RingsArgs) -> Result<()> {
    let (header, rows) = io::read_csv(&a.profile)?;
    let rcol = header
        .iter()
        .position(|h| h == "radius")
        .ok_or_else(|| Error::InvalidInput("profile needs a 'radius' column".into()))?;
    let icol = header
        .iter()
        .position(|h| h == "intensity")
        .ok_or_else(|| Error::InvalidInput("profile needs an 'intensity' column".into()))?;
    let mut radii = Vec::with_capacity(rows.len());
    let mut intensity = Vec::with_capacity(rows.len());
    for row in &rows {
        radii.push(io::parse_f64_field(&row[rcol])?);
        intensity.push(io::parse_f64_field(&row[icol])?);
    }
    let profile = diffraction::RadialProfile {
        sample_counts: vec![1; radii.len()],
        radii,
        intensity,
    };
    let rings = diffraction::ring_detect(&profile, a.prominence, a.window)?;
    let out_rows: Vec<Vec<String>> = rings
        .iter()
        .map(|r| vec![fnum(r.radius), fnum(r.intensity), fnum(r.prominence)])
        .collect();
    io::write_csv(&a.out, &["radius", "intensity", "prominence"], &out_rows)?;
    let mut m = RunManifest::new("rings");
    m.param("profile", a.profile.display().to_string())
        .param("prominence", fnum(a.prominence))
        .param("window", a.window)
        .param("ring_count", rings.len());
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

// ═══════════════════════════════════════════════════════════════════
// Discrepancy
// ═══════════════════════════════════════════════════════════════════

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RegionArg {
    Square,
    Ball,
}

#[derive(Args)]
pub struct DiscrepancyArgs {
    /// Point-set CSV with an `x` column and optionally `y`
    #[arg(long)]
    pub points: PathBuf,
    /// Reference density, or `auto` to estimate from the central region
    #[arg(long, default_value = "auto")]
    pub density: String,
    #[arg(long, value_enum, default_value_t = RegionArg::Square)]
    pub kind: RegionArg,
    /// Common region center, comma-separated coordinates
    #[arg(long, default_value = "0")]
    pub center: String,
    /// Explicit comma-separated size list
    #[arg(long)]
    pub sizes: Option<String>,
    /// Log-spaced size sweep: smallest size
    #[arg(long)]
    pub size_min: Option<f64>,
    /// Log-spaced size sweep: largest size
    #[arg(long)]
    pub size_max: Option<f64>,
    /// Log-spaced size sweep: sample count
    #[arg(long, default_value_t = 32)]
    pub size_count: usize,
    /// Fit the discrepancy growth exponent and record it in the manifest
    #[arg(long, default_value_t = false)]
    pub fit: bool,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn auto_density(points: &[Vec<f64>]) -> Result<f64> {
    let dim = points[0].len();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for p in points {
        for a in 0..dim {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let center: Vec<f64> = lo.iter().zip(&hi).map(|(l, h)| (l + h) / 2.0).collect();
    let side = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| h - l)
        .fold(f64::INFINITY, f64::min)
        * 0.9;
    if !(side > 0.0) {
        return Err(Error::InvalidInput(
            "degenerate footprint, pass --density explicitly".into(),
        ));
    }
    discrepancy::density_estimate(points, &RegionSpec::aligned_square(center, side))
}

fn run_discrepancy(a: &DiscrepancyArgs) -> Result<()> {
    let points = load_points(&a.points)?;
    if points.is_empty() {
        return Err(Error::InvalidInput("empty point file".into()));
    }
    let dim = points[0].len();
    let center = parse_vector(&a.center, dim)?;
    let sizes: Vec<f64> = match (&a.sizes, a.size_min, a.size_max) {
        (Some(list), None, None) => list
            .split(',')
            .map(|t| io::parse_f64_field(t))
            .collect::<Result<_>>()?,
        (None, Some(lo), Some(hi)) => {
            if !(lo > 0.0 && hi > lo && a.size_count >= 2) {
                return Err(Error::InvalidInput(
                    "size sweep needs 0 < size-min < size-max and at least two sizes".into(),
                ));
            }
            (0..a.size_count)
                .map(|i| lo * (hi / lo).powf(i as f64 / (a.size_count - 1) as f64))
                .collect()
        }
        _ => {
            return Err(Error::InvalidInput(
                "pass either --sizes or both --size-min and --size-max".into(),
            ))
        }
    };
    let density = if a.density.trim() == "auto" {
        auto_density(&points)?
    } else {
        io::parse_f64_field(&a.density)?
    };
    let regions: Vec<RegionSpec> = sizes
        .iter()
        .map(|s| match a.kind {
            RegionArg::Square => RegionSpec::aligned_square(center.clone(), *s),
            RegionArg::Ball => RegionSpec::ball(center.clone(), *s),
        })
        .collect();
    let samples = discrepancy::discrepancy_sweep(&points, density, &regions)?;
    let rows: Vec<Vec<String>> = samples
        .iter()
        .map(|s| {
            vec![
                format!("{:?}", s.region.kind),
                a.center.clone(),
                fnum(s.region.size),
                s.count.to_string(),
                fnum(s.expected),
                fnum(s.discrepancy),
                fnum(s.boundary_measure),
            ]
        })
        .collect();
    io::write_csv(
        &a.out,
        &[
            "kind",
            "center",
            "size",
            "count",
            "expected",
            "discrepancy",
            "boundary_measure",
        ],
        &rows,
    )?;
    let mut m = RunManifest::new("discrepancy");
    m.param("points", a.points.display().to_string())
        .param("density", fnum(density))
        .param("kind", format!("{:?}", a.kind))
        .param("center", &a.center)
        .param("region_count", samples.len());
    if a.fit {
        let fit = discrepancy::growth_fit(&samples)?;
        m.param("growth_exponent", fnum(fit.exponent))
            .param("log_correction", fit.log_correction)
            .param("fit_bins", fit.residuals.len());
    }
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}

// ═══════════════════════════════════════════════════════════════════
// Plot
// ═══════════════════════════════════════════════════════════════════

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StyleArg {
    /// x against y on linear axes
    Line,
    /// x against y on log-log axes
    Loglog,
    /// Interval raster from lo/hi columns, one row of bars per label
    Bands,
}

#[derive(Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = StyleArg::Line)]
    pub style: StyleArg,
    /// Abscissa column (line and loglog)
    #[arg(long, default_value = "")]
    pub x: String,
    /// Ordinate column (line and loglog)
    #[arg(long, default_value = "")]
    pub y: String,
    /// Lower-edge column (bands)
    #[arg(long, default_value = "lo")]
    pub lo: String,
    /// Upper-edge column (bands)
    #[arg(long, default_value = "hi")]
    pub hi: String,
    /// Grouping column for bands; one bar row per distinct value
    #[arg(long)]
    pub label: Option<String>,
    #[arg(long, default_value = "")]
    pub title: String,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn column(header: &[String], name: &str, fallback: usize) -> Result<usize> {
    if name.is_empty() {
        if fallback < header.len() {
            return Ok(fallback);
        }
        return Err(Error::InvalidInput("CSV has too few columns".into()));
    }
    header
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::InvalidInput(format!("no column named '{name}'")))
}

fn run_plot(a: &PlotArgs) -> Result<()> {
    let (header, rows) = io::read_csv(&a.input)?;
    if rows.is_empty() {
        return Err(Error::InvalidInput("no data rows to plot".into()));
    }
    let title = if a.title.is_empty() {
        a.input.display().to_string()
    } else {
        a.title.clone()
    };
    match a.style {
        StyleArg::Line | StyleArg::Loglog => {
            let xc = column(&header, &a.x, 0)?;
            let yc = column(&header, &a.y, 1)?;
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .map(|r| {
                    Ok((
                        io::parse_f64_field(&r[xc])?,
                        io::parse_f64_field(&r[yc])?,
                    ))
                })
                .collect::<Result<_>>()?;
            let log = matches!(a.style, StyleArg::Loglog);
            io::svg_line_plot(
                &a.out,
                &title,
                &header[xc],
                &header[yc],
                &[(header[yc].clone(), pts)],
                log,
                log,
            )?;
        }
        StyleArg::Bands => {
            let lc = column(&header, &a.lo, 0)?;
            let hc = column(&header, &a.hi, 1)?;
            let label = a
                .label
                .as_ref()
                .map(|name| column(&header, name, usize::MAX))
                .transpose()?;
            let mut grouped: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
            for r in &rows {
                let key = label.map_or(String::new(), |c| r[c].clone());
                let lo = io::parse_f64_field(&r[lc])?;
                let hi = io::parse_f64_field(&r[hc])?;
                match grouped.iter_mut().find(|(k, _)| *k == key) {
                    Some((_, iv)) => iv.push((lo, hi)),
                    None => grouped.push((key, vec![(lo, hi)])),
                }
            }
            io::svg_interval_raster(&a.out, &title, &header[lc], &grouped)?;
        }
    }
    let mut m = RunManifest::new("plot");
    m.param("input", a.input.display().to_string())
        .param("style", format!("{:?}", a.style))
        .param("title", &title);
    seal(&mut m, &[&a.out], &manifest_target(&a.out, a.manifest.as_ref()))
}
