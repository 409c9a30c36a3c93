//! `fibstab` — exact slope-stability computations on Hirzebruch surfaces and
//! P²-bundles over P¹: slopes and thresholds, line-bundle cohomology, Chern
//! and Riemann-Roch bookkeeping, moduli stratification tables, monad
//! checking/completion, canonical forms of extension data, and the seeded
//! property sweeps.
//!
//! Exit codes: 0 success, 1 mathematical failure (reported by name),
//! 2 usage errors.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fibstab::canonical::{self, MatrixPairE};
use fibstab::cohom;
use fibstab::cox::Multidegree;
use fibstab::files;
use fibstab::geom::{
    canonical_class, chern_from_resolution, euler_characteristic, grr_pushforward,
    relative_canonical_class, ChernData, ChowClass,
};
use fibstab::matrix::RationalMatrix;
use fibstab::monad::{self, FamilyKind, MonadData};
use fibstab::rational::{format_rational, parse_rational, Rational};
use fibstab::stability::{
    compare_bound, discriminant, relative_bounds_mu, slope_lc, slope_usual, threshold_a_f,
    threshold_c_f, threshold_c_f_prime, FibrationFrame, SheafNumData,
};
use fibstab::strata;
use fibstab::sweeps::{self, SweepReport, DEFAULT_SEED};
use fibstab::Variety;

use report::Report;

#[derive(Parser)]
#[command(name = "fibstab", version, about = "Exact stability computations for sheaves on fibrations")]
struct Cli {
    /// Seed for every randomized check
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Render a flat two-column table instead of the key/value tree
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Both slopes of a sheaf against the polarization L + c·π*A
    Slope(SlopeArgs),
    /// Stability thresholds a_F, c_F, c'_F and the subsheaf bounds
    Threshold(ThresholdArgs),
    /// Cohomology of a line bundle O(k·u + l·fiber)
    Cohom(CohomArgs),
    /// Chern data of a resolution, a monad, or an example family
    Chern(ChernArgs),
    /// Grothendieck-Riemann-Roch pushforward to P¹
    Grr(GrrArgs),
    /// Splitting types, b-vectors and dimension tables of the stratification
    Strata(StrataArgs),
    /// Monad file operations
    Monad {
        #[command(subcommand)]
        cmd: MonadCmd,
    },
    /// Canonical forms of matrix-pair files
    Canon {
        #[command(subcommand)]
        cmd: CanonCmd,
    },
    /// Run the seeded property suites
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SlopeArgs {
    /// Fibred variety: hirzebruch:L or p2bundle:A,B
    #[arg(long)]
    variety: String,
    #[arg(long)]
    rank: u32,
    /// Divisor class of c1 as "k,l"
    #[arg(long, default_value = "0,0")]
    c1: String,
    /// Degree-2 class coefficients (pt on a surface; "p,q" for u²,uv on a threefold)
    #[arg(long)]
    c2: Option<String>,
    /// Coefficient of the point class (threefolds)
    #[arg(long, default_value = "0")]
    c3: String,
    /// Polarization parameter c >= 0
    #[arg(long)]
    c: String,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    variety: String,
    /// Rank for monad-type data (c1 = 0, c2 = n·u² or n·pt)
    #[arg(long)]
    r: Option<u32>,
    /// Second Chern number for monad-type data
    #[arg(long)]
    n: Option<i64>,
    /// Full numerical data instead of --r/--n
    #[arg(long)]
    rank: Option<u32>,
    #[arg(long)]
    c1: Option<String>,
    #[arg(long)]
    c2: Option<String>,
    /// L-slope of the maximal destabilizing subsheaf (enables a_F)
    #[arg(long)]
    m_upper: Option<String>,
    /// L-slope of the relative maximal destabilizing subsheaf
    #[arg(long)]
    m_lower: Option<String>,
}

#[derive(Args)]
struct CohomArgs {
    #[arg(long)]
    variety: String,
    /// "k,l" on fibred varieties, "d" on P¹/P²
    #[arg(long)]
    deg: String,
}

#[derive(Args)]
struct ChernArgs {
    #[arg(long)]
    variety: String,
    /// Signed line-bundle terms "+k,l" / "-k,l"; repeat for multiplicity
    #[arg(long)]
    term: Vec<String>,
    /// Monad parameters "r,n": the complex (r+2n)·O - n·O_π(-1) - n·O_π(1)
    #[arg(long)]
    monad: Option<String>,
    /// Example family: "f0ft:r,n" or "serre:n"
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct GrrArgs {
    #[arg(long)]
    variety: String,
    #[arg(long)]
    rank: u32,
    #[arg(long, default_value = "0,0")]
    c1: String,
    #[arg(long)]
    c2: Option<String>,
    #[arg(long, default_value = "0")]
    c3: String,
}

#[derive(Args)]
struct StrataArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u32,
    /// Degree sum n_F of the splitting type (default n)
    #[arg(long)]
    nf: Option<u32>,
    /// Largest enumeration printed in full
    #[arg(long, default_value_t = 30)]
    max_list: usize,
}

#[derive(Subcommand)]
enum MonadCmd {
    /// Verify B·A = 0 (exit 1 when it fails); reports pointwise and Λ checks
    Check {
        file: PathBuf,
        /// Random points for the fiberwise rank checks
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Solve B·A = 0 for B and emit one completed monad document
    Complete {
        file: PathBuf,
        /// Which basis element to emit
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Write the document here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Restrict to a fiber (--fiber w0,w1) or the exceptional line (--lambda)
    Restrict {
        file: PathBuf,
        #[arg(long)]
        fiber: Option<String>,
        #[arg(long)]
        lambda: bool,
    },
}

#[derive(Subcommand)]
enum CanonCmd {
    /// Reduce the left half to the slice form [I]=1, [III]=0, [IV]=1, [V]=0
    Reduce {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve the stabilizer of the datum in the triangular group
    Stabilizer { file: PathBuf },
    /// Torus-normalize the top evaluation row of the right half to ones
    Treduce {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// all, grr, euler, twist, hodge, threshold, strata, canonical, monad, cohom
    #[arg(long, default_value = "all")]
    suite: String,
    /// Smaller case counts for a fast smoke run
    #[arg(long)]
    quick: bool,
}

enum CliError {
    Usage(String),
    Math { name: String, detail: String },
}

fn math_err(e: impl std::fmt::Display) -> CliError {
    let text = e.to_string();
    match text.split_once(':') {
        Some((name, detail)) => CliError::Math {
            name: name.trim().to_string(),
            detail: detail.trim().to_string(),
        },
        None => CliError::Math { name: text, detail: String::new() },
    }
}

fn usage_err(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

struct RunOutput {
    report: Report,
    /// A produced document and its optional target path.
    document: Option<(Option<PathBuf>, String)>,
}

impl RunOutput {
    fn report_only(report: Report) -> Self {
        Self { report, document: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match out.document {
                Some((Some(path), content)) => {
                    if let Err(e) = std::fs::write(&path, content) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                    print!("{}", out.report.render(cli.table));
                }
                Some((None, content)) => {
                    // document on stdout, report on stderr
                    print!("{content}");
                    eprint!("{}", out.report.render(cli.table));
                }
                None => print!("{}", out.report.render(cli.table)),
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Math { name, detail }) => {
            let mut r = Report::new("error");
            r.kv("error", &name);
            if !detail.is_empty() {
                r.kv("detail", &detail);
            }
            print!("{}", r.render(cli.table));
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<RunOutput, CliError> {
    match &cli.command {
        Command::Slope(args) => cmd_slope(args),
        Command::Threshold(args) => cmd_threshold(args),
        Command::Cohom(args) => cmd_cohom(args),
        Command::Chern(args) => cmd_chern(args),
        Command::Grr(args) => cmd_grr(args),
        Command::Strata(args) => cmd_strata(args),
        Command::Monad { cmd } => cmd_monad(cmd, cli.seed),
        Command::Canon { cmd } => cmd_canon(cmd),
        Command::Sweep(args) => cmd_sweep(args, cli.seed),
    }
}

// ---------- parsing helpers ----------

fn parse_variety(s: &str) -> Result<Variety, CliError> {
    Variety::parse(s).map_err(usage_err)
}

fn parse_rat(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(usage_err)
}

fn parse_degree(s: &str) -> Result<Multidegree, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [k] => Ok((k.trim().parse().map_err(usage_err)?, 0)),
        [k, l] => Ok((
            k.trim().parse().map_err(usage_err)?,
            l.trim().parse().map_err(usage_err)?,
        )),
        _ => Err(CliError::Usage(format!("bad degree {s:?}, want \"k\" or \"k,l\""))),
    }
}

/// Degree-2 class from coefficients over the variety's basis:
/// pt (surfaces), h² (P²), or "p,q" for u², uv (threefolds).
fn parse_deg2_class(variety: Variety, s: Option<&str>) -> Result<ChowClass, CliError> {
    let Some(s) = s else {
        return Ok(ChowClass::zero(variety));
    };
    let coeffs: Vec<Rational> = s
        .split(',')
        .map(|p| parse_rat(p.trim()))
        .collect::<Result<_, _>>()?;
    let class = match variety {
        Variety::P2Bundle { .. } => {
            let u2 = ChowClass::divisor(variety, (1, 0)).power(2).map_err(math_err)?;
            let uv = ChowClass::divisor(variety, (1, 0))
                .intersect(&ChowClass::divisor(variety, (0, 1)))
                .map_err(math_err)?;
            match coeffs.as_slice() {
                [p] => u2.scale(p),
                [p, q] => u2.scale(p).add(&uv.scale(q)).map_err(math_err)?,
                _ => return Err(CliError::Usage("threefold c2 wants \"p\" or \"p,q\"".into())),
            }
        }
        _ => match coeffs.as_slice() {
            [p] => ChowClass::point(variety).scale(p),
            _ => return Err(CliError::Usage("surface c2 wants one coefficient".into())),
        },
    };
    Ok(class)
}

fn sheaf_from_parts(
    variety: Variety,
    rank: u32,
    c1: &str,
    c2: Option<&str>,
    c3: &str,
) -> Result<SheafNumData, CliError> {
    if rank == 0 {
        return Err(CliError::Usage("rank must be positive".into()));
    }
    let c1 = ChowClass::divisor(variety, parse_degree(c1)?);
    let c2 = parse_deg2_class(variety, c2)?;
    let c3 = parse_rat(c3)?;
    Ok(SheafNumData::new(rank, c1, c2, c3))
}

// ---------- subcommands ----------

fn cmd_slope(args: &SlopeArgs) -> Result<RunOutput, CliError> {
    let variety = parse_variety(&args.variety)?;
    let frame = FibrationFrame::standard(variety).map_err(math_err)?;
    let sheaf = sheaf_from_parts(variety, args.rank, &args.c1, args.c2.as_deref(), &args.c3)?;
    let c = parse_rat(&args.c)?;
    if c < Rational::from_integer(0.into()) {
        return Err(CliError::Usage("c must be >= 0".into()));
    }
    let mu = slope_lc(&frame, &sheaf, &c).map_err(math_err)?;
    let mu_usual = slope_usual(&frame, &sheaf, &c).map_err(math_err)?;
    let mut r = Report::new("slope");
    r.kv("variety", variety);
    r.group("inputs");
    r.kv_at(1, "rank", sheaf.rank());
    r.kv_at(1, "c1", sheaf.c1());
    r.kv_at(1, "c", format_rational(&c));
    r.group("frame");
    r.kv_at(1, "d_x", frame.d_x());
    r.kv_at(1, "d_y", frame.d_y());
    r.kv_at(1, "a_num", format_rational(frame.a_num()));
    r.kv_at(1, "al_num", format_rational(frame.al_num()));
    r.group("slopes");
    r.kv_at(1, "mu_lc", format_rational(&mu));
    r.kv_at(1, "mu_usual", format_rational(&mu_usual));
    Ok(RunOutput::report_only(r))
}

fn cmd_threshold(args: &ThresholdArgs) -> Result<RunOutput, CliError> {
    let variety = parse_variety(&args.variety)?;
    let frame = FibrationFrame::standard(variety).map_err(math_err)?;
    let sheaf = match (args.r, args.n, args.rank) {
        (Some(r), Some(n), None) => SheafNumData::monad_type(variety, r, n),
        (None, None, Some(rank)) => {
            sheaf_from_parts(variety, rank, args.c1.as_deref().unwrap_or("0,0"), args.c2.as_deref(), "0")?
        }
        _ => {
            return Err(CliError::Usage(
                "give either --r and --n (monad-type data) or --rank with --c1/--c2".into(),
            ))
        }
    };
    let mut r = Report::new("threshold");
    r.kv("variety", variety);
    r.group("inputs");
    r.kv_at(1, "rank", sheaf.rank());
    r.kv_at(1, "c1", sheaf.c1());
    r.kv_at(1, "c2", sheaf.c2());
    r.group("thresholds");
    if sheaf.c1().is_zero() {
        let c_f = threshold_c_f(&frame, &sheaf).map_err(math_err)?;
        r.kv_at(1, "c_F", format_rational(&c_f));
        let usual = compare_bound(1, frame.d_y(), &c_f, sheaf.rank(), &Rational::from_integer(0.into()))
            .map_err(math_err)?;
        r.kv_at(1, "usual_slope_c_F", format_rational(&usual));
    } else {
        r.kv_at(1, "c_F", "undefined (c1 != 0; use c_F_prime)");
    }
    let c_f_prime = threshold_c_f_prime(&frame, &sheaf).map_err(math_err)?;
    r.kv_at(1, "c_F_prime", format_rational(&c_f_prime));
    let delta = discriminant(&sheaf);
    let delta_bracket = frame.bracket(&delta).map_err(math_err)?;
    r.kv_at(1, "discriminant_bracket", format_rational(&delta_bracket));
    if let (Some(upper), Some(lower)) = (&args.m_upper, &args.m_lower) {
        let a_f = threshold_a_f(&frame, sheaf.rank(), &parse_rat(upper)?, &parse_rat(lower)?);
        r.kv_at(1, "a_F", format_rational(&a_f));
    }
    if sheaf.rank() >= 2 {
        let c2b = frame.bracket(sheaf.c2()).map_err(math_err)?;
        let bounds = relative_bounds_mu(&frame, sheaf.rank(), &c2b).map_err(math_err)?;
        r.group("subsheaf_bounds");
        r.kv_at(1, "mu_lower", format_rational(&bounds.mu_lower));
        r.kv_at(1, "mu_lower_any_c1", format_rational(&bounds.mu_lower_any_c1));
        r.kv_at(1, "xi_sq_lower", format_rational(&bounds.xi_sq_lower));
    }
    Ok(RunOutput::report_only(r))
}

fn cmd_cohom(args: &CohomArgs) -> Result<RunOutput, CliError> {
    let variety = parse_variety(&args.variety)?;
    let deg = parse_degree(&args.deg)?;
    if !variety.is_fibred() && deg.1 != 0 {
        return Err(CliError::Usage(format!("{variety} has degrees \"d\", not \"k,l\"")));
    }
    let h = cohom::h_line_bundle(variety, deg);
    let chi: i64 = h.iter().enumerate().map(|(i, x)| if i % 2 == 0 { *x } else { -*x }).sum();
    let mut r = Report::new("cohom");
    r.kv("variety", variety);
    r.kv("degree", format!("({},{})", deg.0, deg.1));
    r.kv(
        "h",
        format!(
            "({})",
            h.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
        ),
    );
    r.kv("chi", chi);
    if variety.is_fibred() && deg.0 >= 0 {
        let split = cohom::pushforward_split(variety, deg.0).map_err(math_err)?;
        r.kv(
            "pushforward_split",
            format!(
                "({})",
                split.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
            ),
        );
    }
    let kappa = canonical_class(variety);
    r.kv("canonical_class", &kappa);
    if let Some(rel) = relative_canonical_class(variety) {
        r.kv("relative_canonical_class", &rel);
    }
    Ok(RunOutput::report_only(r))
}

fn chern_report(name: &str, variety: Variety, ch: &ChernData) -> Result<Report, CliError> {
    let mut r = Report::new(name);
    r.kv("variety", variety);
    r.group("chern");
    r.kv_at(1, "rank", format_rational(&ch.rank()));
    r.kv_at(1, "c1", ch.c1());
    r.kv_at(1, "c2", ch.c2());
    if variety.dim() >= 3 {
        r.kv_at(1, "c3", ch.c3());
    }
    r.group("character");
    r.kv_at(1, "ch1", ch.ch_part(1));
    r.kv_at(1, "ch2", ch.ch_part(2));
    if variety.dim() >= 3 {
        r.kv_at(1, "ch3", ch.ch_part(3));
    }
    let chi = euler_characteristic(ch).map_err(math_err)?;
    r.kv("chi", format_rational(&chi));
    Ok(r)
}

fn cmd_chern(args: &ChernArgs) -> Result<RunOutput, CliError> {
    let variety = parse_variety(&args.variety)?;
    let selectors =
        usize::from(!args.term.is_empty()) + usize::from(args.monad.is_some()) + usize::from(args.family.is_some());
    if selectors != 1 {
        return Err(CliError::Usage(
            "give exactly one of --term..., --monad r,n, --family kind:params".into(),
        ));
    }
    if let Some(spec) = &args.monad {
        let (r_s, n_s) = spec
            .split_once(',')
            .ok_or_else(|| CliError::Usage("--monad wants \"r,n\"".into()))?;
        let rk: u32 = r_s.trim().parse().map_err(usage_err)?;
        let n: u32 = n_s.trim().parse().map_err(usage_err)?;
        let ch = monad::monad_chern(variety, rk, n).map_err(math_err)?;
        let mut r = chern_report("chern", variety, &ch)?;
        r.kv("source", format!("monad r={rk} n={n}"));
        return Ok(RunOutput::report_only(r));
    }
    if let Some(spec) = &args.family {
        let (kind, params) = spec
            .split_once(':')
            .ok_or_else(|| CliError::Usage("--family wants kind:params".into()))?;
        let family = match kind {
            "f0ft" => {
                let (r_s, n_s) = params
                    .split_once(',')
                    .ok_or_else(|| CliError::Usage("f0ft wants r,n".into()))?;
                FamilyKind::F0Ft {
                    r: r_s.trim().parse().map_err(usage_err)?,
                    n: n_s.trim().parse().map_err(usage_err)?,
                }
            }
            "serre" => FamilyKind::SerreRank2 { n: params.trim().parse().map_err(usage_err)? },
            other => return Err(CliError::Usage(format!("unknown family {other:?}"))),
        };
        let rep = monad::family_chern(variety, &family).map_err(math_err)?;
        let mut r = chern_report("chern", variety, &rep.chern)?;
        r.kv("source", format!("family {spec}"));
        if let Some(asserted) = &rep.asserted_c2 {
            r.kv("mechanical_c2", rep.chern.c2());
            r.kv("asserted_c2", asserted);
        }
        return Ok(RunOutput::report_only(r));
    }
    let mut terms = Vec::new();
    for t in &args.term {
        let (sign, rest) = match t.as_bytes().first() {
            Some(b'+') => (1, &t[1..]),
            Some(b'-') => (-1, &t[1..]),
            _ => return Err(CliError::Usage(format!("term {t:?} must start with + or -"))),
        };
        terms.push((sign, ChowClass::divisor(variety, parse_degree(rest)?)));
    }
    let ch = chern_from_resolution(&terms).map_err(math_err)?;
    let mut r = chern_report("chern", variety, &ch)?;
    r.kv("source", format!("{} resolution terms", terms.len()));
    Ok(RunOutput::report_only(r))
}

fn cmd_grr(args: &GrrArgs) -> Result<RunOutput, CliError> {
    let variety = parse_variety(&args.variety)?;
    let sheaf = sheaf_from_parts(variety, args.rank, &args.c1, args.c2.as_deref(), &args.c3)?;
    let ch = sheaf.to_chern().map_err(math_err)?;
    let push = grr_pushforward(&ch).map_err(math_err)?;
    let chi_up = euler_characteristic(&ch).map_err(math_err)?;
    let chi_down = euler_characteristic(&push).map_err(math_err)?;
    let mut r = Report::new("grr");
    r.kv("variety", variety);
    r.group("pushforward");
    r.kv_at(1, "rank", format_rational(&push.rank()));
    r.kv_at(1, "degree", format_rational(&push.ch_part(1).top_coeff()));
    r.kv("chi_upstairs", format_rational(&chi_up));
    r.kv("chi_downstairs", format_rational(&chi_down));
    Ok(RunOutput::report_only(r))
}

fn cmd_strata(args: &StrataArgs) -> Result<RunOutput, CliError> {
    let n_f = args.nf.unwrap_or(args.n);
    if n_f > args.n {
        return Err(CliError::Usage("need n_F <= n".into()));
    }
    let dims = strata::moduli_dims(args.r, args.n).map_err(math_err)?;
    let mut r = Report::new("strata");
    r.kv("r", args.r);
    r.kv("n", args.n);
    r.kv("n_F", n_f);
    r.group("dimensions");
    r.kv_at(1, "moduli_dim", dims.moduli_dim);
    r.kv_at(1, "hilb_fiber_dim", dims.hilb_fiber_dim);
    r.kv_at(1, "group_dim", dims.group_dim);
    r.kv_at(1, "extension_space_dim", dims.extension_space_dim);
    let generic = strata::generic_split(args.r, n_f);
    r.kv("generic_split", &generic);
    r.kv("dim_end_generic", strata::dim_end(&generic));
    r.kv("ext1_Q_piL", strata::ext1_q_pil(args.r, args.n, n_f));
    r.kv("stratum_dim_bound", strata::stratum_dim_bound(args.r, args.n, n_f));
    let splits = strata::enumerate_split_types(args.r, n_f);
    r.group("split_types");
    r.kv_at(1, "count", splits.len());
    if splits.len() <= args.max_list {
        for (i, t) in splits.iter().enumerate() {
            r.kv_at(1, &format!("type_{i}"), format!("{t} (dim End = {})", strata::dim_end(t)));
        }
    }
    if n_f >= 1 {
        let count = strata::binomial(args.n as u64 - 1, n_f as u64 - 1);
        r.group("b_vectors");
        r.kv_at(1, "count", count);
        if count as usize <= args.max_list {
            for (i, v) in strata::enumerate_bvectors(args.n, n_f).iter().enumerate() {
                r.kv_at(
                    1,
                    &format!("b_{i}"),
                    format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
                );
            }
        }
    }
    let slice = canonical::slice_report(args.r, args.n);
    r.group("slice");
    r.kv_at(1, "codim", slice.codim);
    r.kv_at(1, "autL_constraints", slice.autl_constraints);
    r.kv_at(1, "torus_constraints", slice.torus_constraints);
    Ok(RunOutput::report_only(r))
}

fn read_monad(path: &PathBuf) -> Result<MonadData, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    files::monad_from_json(&text).map_err(usage_err)
}

fn cmd_monad(cmd: &MonadCmd, seed: u64) -> Result<RunOutput, CliError> {
    match cmd {
        MonadCmd::Check { file, samples } => {
            let m = read_monad(file)?;
            let compose = monad::monad_compose_check(&m);
            let pointwise = monad::pointwise_check(&m, (*samples).max(1), seed);
            let lambda = monad::restrict_to_lambda(&m);
            let ch = monad::monad_chern(m.variety(), m.r(), m.n()).map_err(math_err)?;
            let mut r = Report::new("monad-check");
            r.kv("variety", m.variety());
            r.kv("r", m.r());
            r.kv("n", m.n());
            r.kv("compose_check", compose.is_monad);
            r.group("pointwise");
            r.kv_at(1, "samples", pointwise.points_checked);
            r.kv_at(1, "a_injective", pointwise.a_injective);
            r.kv_at(1, "b_surjective", pointwise.b_surjective);
            r.kv_at(1, "failures", pointwise.failures.len());
            r.group("lambda");
            r.kv_at(1, "a_const_rank", lambda.a_const.rank());
            r.kv_at(1, "b_const_rank", lambda.b_const.rank());
            r.kv_at(1, "trivial", lambda.trivial_on_lambda);
            r.kv("c2", ch.c2());
            if !compose.is_monad {
                // surface the first nonzero residual entry
                let mut witness = String::new();
                'outer: for i in 0..compose.residual.rows() {
                    for j in 0..compose.residual.cols() {
                        if !compose.residual.entry(i, j).is_zero() {
                            witness = format!("(B·A)[{i}][{j}] = {}", compose.residual.entry(i, j));
                            break 'outer;
                        }
                    }
                }
                return Err(CliError::Math { name: "ComposeCheckFailed".into(), detail: witness });
            }
            Ok(RunOutput::report_only(r))
        }
        MonadCmd::Complete { file, index, output } => {
            let m = read_monad(file)?;
            let basis = monad::monad_complete(m.variety(), m.r(), m.n(), m.a()).map_err(math_err)?;
            if basis.is_empty() {
                return Err(CliError::Math {
                    name: "EmptySolutionSpace".into(),
                    detail: "B·A = 0 has no nonzero solutions".into(),
                });
            }
            if *index >= basis.len() {
                return Err(CliError::Usage(format!(
                    "--index {} out of range (basis size {})",
                    index,
                    basis.len()
                )));
            }
            let completed = MonadData::new(m.variety(), m.r(), m.n(), m.a().clone(), basis[*index].clone())
                .map_err(math_err)?;
            let mut r = Report::new("monad-complete");
            r.kv("variety", m.variety());
            r.kv("basis_size", basis.len());
            r.kv("emitted_index", index);
            r.kv("compose_check", monad::monad_compose_check(&completed).is_monad);
            let doc = files::monad_to_json(&completed);
            Ok(RunOutput { report: r, document: Some((output.clone(), doc)) })
        }
        MonadCmd::Restrict { file, fiber, lambda } => {
            let m = read_monad(file)?;
            match (fiber, lambda) {
                (Some(spec), false) => {
                    let (w0, w1) = spec
                        .split_once(',')
                        .ok_or_else(|| CliError::Usage("--fiber wants \"w0,w1\"".into()))?;
                    let w0 = parse_rat(w0)?;
                    let w1 = parse_rat(w1)?;
                    if w0 == Rational::from_integer(0.into()) && w1 == Rational::from_integer(0.into()) {
                        return Err(CliError::Usage("(0,0) is not a point of P1".into()));
                    }
                    let fib = monad::restrict_to_fiber(&m, &w0, &w1);
                    let mut r = Report::new("monad-restrict-fiber");
                    r.kv("point", format!("({}:{})", format_rational(&w0), format_rational(&w1)));
                    r.kv("compose_check", fib.compose_residual().is_zero());
                    r.group("a");
                    for i in 0..fib.a.rows() {
                        let row: Vec<String> =
                            (0..fib.a.cols()).map(|j| fib.a.entry(i, j).to_string()).collect();
                        r.kv_at(1, &format!("row_{i}"), format!("[{}]", row.join(", ")));
                    }
                    r.group("b");
                    for i in 0..fib.b.rows() {
                        let row: Vec<String> =
                            (0..fib.b.cols()).map(|j| fib.b.entry(i, j).to_string()).collect();
                        r.kv_at(1, &format!("row_{i}"), format!("[{}]", row.join(", ")));
                    }
                    Ok(RunOutput::report_only(r))
                }
                (None, true) => {
                    let lam = monad::restrict_to_lambda(&m);
                    let mut r = Report::new("monad-restrict-lambda");
                    r.kv("trivial", lam.trivial_on_lambda);
                    r.kv("a_const_rank", lam.a_const.rank());
                    r.kv("b_const_rank", lam.b_const.rank());
                    r.group("a_const");
                    push_matrix_rows_at(&mut r, 1, &lam.a_const);
                    r.group("b_const");
                    push_matrix_rows_at(&mut r, 1, &lam.b_const);
                    Ok(RunOutput::report_only(r))
                }
                _ => Err(CliError::Usage("give exactly one of --fiber w0,w1 or --lambda".into())),
            }
        }
    }
}

fn read_pair(path: &PathBuf) -> Result<MatrixPairE, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    files::pair_from_json(&text).map_err(usage_err)
}

fn cmd_canon(cmd: &CanonCmd) -> Result<RunOutput, CliError> {
    match cmd {
        CanonCmd::Reduce { file, output } => {
            let e = read_pair(file)?;
            let red = canonical::autl_reduce(&e).map_err(math_err)?;
            let mut r = Report::new("canon-reduce");
            r.kv("r", e.r());
            r.kv("n", e.n());
            r.kv("r1", e.r1());
            r.kv("r2", e.r2());
            r.kv(
                "canonical",
                canonical::is_autl_canonical(&red.canonical).map_err(math_err)?,
            );
            r.group("g_used");
            r.group_at(1, "a");
            push_matrix_rows_at(&mut r, 2, &red.g_used.a);
            r.group_at(1, "b");
            push_matrix_rows_at(&mut r, 2, &red.g_used.b);
            r.group_at(1, "h0");
            push_matrix_rows_at(&mut r, 2, &red.g_used.h0);
            r.group_at(1, "h1");
            push_matrix_rows_at(&mut r, 2, &red.g_used.h1);
            let doc = files::pair_to_json(&red.canonical);
            Ok(RunOutput { report: r, document: Some((output.clone(), doc)) })
        }
        CanonCmd::Stabilizer { file } => {
            let e = read_pair(file)?;
            let stab = canonical::stabilizer_solve(&e).map_err(math_err)?;
            let mut r = Report::new("canon-stabilizer");
            r.kv("r", e.r());
            r.kv("n", e.n());
            r.kv(
                "canonical",
                canonical::is_autl_canonical(&e).map_err(math_err)?,
            );
            r.kv("solution_basis_size", stab.len() - 1);
            r.kv("trivial", stab.len() == 1);
            Ok(RunOutput::report_only(r))
        }
        CanonCmd::Treduce { file, output } => {
            let e = read_pair(file)?;
            let red = canonical::t_reduce(&e).map_err(math_err)?;
            let mut r = Report::new("canon-treduce");
            r.kv("r", e.r());
            r.kv("n", e.n());
            r.kv("basis", "point-evaluation");
            r.kv("c", format_rational(&red.c));
            r.kv(
                "t",
                format!(
                    "({})",
                    red.t.iter().map(format_rational).collect::<Vec<_>>().join(", ")
                ),
            );
            let doc = files::pair_to_json(&red.scaled);
            Ok(RunOutput { report: r, document: Some((output.clone(), doc)) })
        }
    }
}

fn push_matrix_rows_at(report: &mut Report, depth: usize, m: &RationalMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
        report.kv_at(depth, &format!("row_{i}"), format!("[{}]", row.join(", ")));
    }
}

fn cmd_sweep(args: &SweepArgs, seed: u64) -> Result<RunOutput, CliError> {
    let quick = args.quick;
    let hodge_n = if quick { 50 } else { 1000 };
    let canon_seeds = if quick { 5 } else { 50 };
    let canon_orbit = if quick { 5 } else { 20 };
    let monad_seeds = if quick { 3 } else { 20 };
    let monad_samples = if quick { 50 } else { 500 };
    let cohom_n = if quick { 30 } else { 200 };
    let reports: Vec<SweepReport> = match args.suite.as_str() {
        "grr" => vec![sweeps::grr_sweep(true)],
        "euler" => vec![sweeps::euler_end_sweep(true)],
        "twist" => vec![sweeps::twist_vanishing_sweep(true)],
        "hodge" => vec![sweeps::hodge_sweep(seed, hodge_n, true)],
        "threshold" => vec![sweeps::threshold_sweep(true)],
        "strata" => vec![sweeps::strata_sweep(true)],
        "canonical" => vec![sweeps::canonical_sweep(seed, canon_seeds, canon_orbit, true)],
        "monad" => vec![sweeps::monad_sweep(seed, monad_seeds, monad_samples, true)],
        "cohom" => vec![sweeps::cohom_sweep(seed, cohom_n, true)],
        "all" => vec![
            sweeps::grr_sweep(true),
            sweeps::euler_end_sweep(true),
            sweeps::twist_vanishing_sweep(true),
            sweeps::hodge_sweep(seed, hodge_n, true),
            sweeps::threshold_sweep(true),
            sweeps::strata_sweep(true),
            sweeps::canonical_sweep(seed, canon_seeds, canon_orbit, true),
            sweeps::monad_sweep(seed, monad_seeds, monad_samples, true),
            sweeps::cohom_sweep(seed, cohom_n, true),
        ],
        other => return Err(CliError::Usage(format!("unknown suite {other:?}"))),
    };
    let mut r = Report::new("sweep");
    r.kv("seed", seed);
    r.kv("quick", quick);
    let mut all_ok = true;
    for rep in &reports {
        r.group(rep.name);
        r.kv_at(1, "cases", rep.cases);
        r.kv_at(1, "failures", rep.failures.len());
        r.kv_at(1, "status", if rep.passed() { "pass" } else { "fail" });
        if let Some(first) = rep.failures.first() {
            r.kv_at(1, "first_failure", first);
        }
        all_ok &= rep.passed();
    }
    if !all_ok {
        // still print the full report before signalling failure
        print!("{}", r.render(false));
        return Err(CliError::Math {
            name: "SweepFailed".into(),
            detail: "one or more property suites reported failures".into(),
        });
    }
    Ok(RunOutput::report_only(r))
}
