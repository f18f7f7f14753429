//! The `bircalc` command line.
//!
//! Exit codes: 0 on success, 1 on a domain error (message on stderr), 2 on a
//! usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::curve_catalog::{Catalog, CurveClass};
use crate::error::Error;
use crate::graded_poly::{parse_weights, GradedPolynomial};
use crate::picard_lattice::{link_degree, AmbientSpace, BlowupLattice};
use crate::verify;
use crate::weighted_blowup::{flopped_normal_bundles, WeightedBlowup};
use crate::word_engine::{IndexPermutation, NonInnerCertificate, Word, WordEngine};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    JsonLines,
}

#[derive(Debug, Parser)]
#[command(
    name = "bircalc",
    version,
    about = "Exact calculator for Sarkisov involutions of P^3 and the cubic threefold"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: OutputFormat,

    /// Curve catalog file; overrides BIRCALC_CATALOG.
    #[arg(long, env = "BIRCALC_CATALOG", global = true)]
    catalog: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CurveArgs {
    /// p3 or cubic
    #[arg(long)]
    space: AmbientSpace,
    #[arg(long)]
    genus: u32,
    #[arg(long)]
    degree: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree of the involution chi_C with respect to H.
    Degree(CurveArgs),
    /// Anticanonical ring profile of the blowup along C.
    Acprofile {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
    },
    /// Picard lattice of the blowup along C.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// (1,a,b)-blowups of a smooth threefold point.
    #[command(subcommand)]
    Blowup(BlowupCommand),
    /// Weighted polynomial valuations.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Curve catalogs and Hilbert scheme bounds.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Words in G * (*_J Z/2).
    #[command(subcommand)]
    Word(WordCommand),
    /// Run the full numeric reproduction.
    Verify,
}

#[derive(Debug, Subcommand)]
enum LatticeCommand {
    /// (-K_X)^3
    Cube(CurveArgs),
    /// Flop action on N^1(X) in the basis (K_X, H).
    Flop(CurveArgs),
    /// h^0(X, -nK_X)
    Rr {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        n: u32,
    },
    /// Sextic double solid certificate.
    Certify(CurveArgs),
}

#[derive(Debug, Args)]
struct BlowupWeights {
    /// a,b (coprime)
    #[arg(long)]
    weights: String,
}

#[derive(Debug, Subcommand)]
enum BlowupCommand {
    /// Discrepancy a + b.
    Disc(BlowupWeights),
    /// E . C~ for the curve f = g = 0.
    Exc {
        #[command(flatten)]
        weights: BlowupWeights,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// n (2 - (a+b)^2/(ab) v_H)
    Defect {
        #[command(flatten)]
        weights: BlowupWeights,
        #[arg(long)]
        vh: u64,
        #[arg(long)]
        n: u64,
    },
    /// (a+b)^2/(ab) - 2
    Gap(BlowupWeights),
    /// Normal bundles of flopped curves.
    Bundles,
}

#[derive(Debug, Args)]
struct PolyArgs {
    /// Comma-separated variable weights.
    #[arg(long)]
    weights: String,
    #[arg(allow_hyphen_values = true)]
    poly: String,
}

#[derive(Debug, Subcommand)]
enum PolyCommand {
    Valuation(PolyArgs),
    Decompose(PolyArgs),
    Pullback(PolyArgs),
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// Validate a catalog file.
    Check { file: PathBuf },
    /// Hilbert scheme dimension bounds.
    Bounds(CurveArgs),
}

#[derive(Debug, Args)]
struct WordArg {
    /// Letters `g:<symbol>^<exp>` and `chi:<label>`.
    letters: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum WordCommand {
    Normalize(WordArg),
    Invert(WordArg),
    Psi(WordArg),
    Section(WordArg),
    Decompose(WordArg),
    Phi {
        #[arg(long)]
        perm: String,
        letters: Vec<String>,
    },
    Order {
        #[arg(long)]
        perm: String,
    },
    /// `word conj <w1> -- <w2>`
    Conj {
        w1: Vec<String>,
        #[arg(last = true)]
        w2: Vec<String>,
    },
    /// Certify that phi(rho) is not inner.
    Certify {
        #[arg(long)]
        perm: String,
    },
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.into())
    }
}

type CmdResult = Result<i32, Failure>;

struct Output<'a> {
    format: OutputFormat,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    /// One result line: `human` in text mode, `record` in json-lines mode.
    fn emit(&mut self, human: impl std::fmt::Display, record: impl Serialize) -> std::io::Result<()> {
        match self.format {
            OutputFormat::Human => writeln!(self.out, "{human}"),
            OutputFormat::JsonLines => {
                let line = serde_json::to_string(&record).expect("records serialize");
                writeln!(self.out, "{line}")
            }
        }
    }
}

fn words(tokens: &[String]) -> Result<Word, Error> {
    tokens.join(" ").parse()
}

fn engine(catalog: Option<&Catalog>) -> WordEngine {
    catalog.map_or_else(WordEngine::permissive, WordEngine::with_catalog)
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Option<Catalog>, Error> {
    path.as_deref().map(Catalog::load_path).transpose()
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut output = Output {
        format: cli.format,
        out,
    };
    match dispatch(&cli, &mut output) {
        Ok(code) => code,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, o: &mut Output) -> CmdResult {
    match &cli.command {
        Command::Degree(c) => {
            let deg = link_degree(c.space, c.genus, c.degree)?;
            o.emit(
                deg,
                json!({"space": c.space, "genus": c.genus, "degree": c.degree, "link_degree": deg}),
            )?;
        }
        Command::Acprofile { curve: c, nmax } => {
            let profile = BlowupLattice::new(c.space, c.genus, c.degree).graded_ring_profile(*nmax)?;
            if o.format == OutputFormat::Human {
                writeln!(
                    o.out,
                    "{:>4} {:>12} {:>12} {:>6} {:>6}",
                    "n", "rr", "free", "gens", "rels"
                )?;
                for r in &profile.rows {
                    writeln!(
                        o.out,
                        "{:>4} {:>12} {:>12} {:>6} {:>6}",
                        r.n, r.rr, r.free, r.gens, r.rels
                    )?;
                }
            } else {
                for r in &profile.rows {
                    o.emit("", r)?;
                }
            }
        }
        Command::Lattice(cmd) => lattice(cmd, o)?,
        Command::Blowup(cmd) => blowup(cmd, o)?,
        Command::Poly(cmd) => poly(cmd, o)?,
        Command::Catalog(CatalogCommand::Check { file }) => {
            let catalog = Catalog::load_path(file)?;
            let free = catalog.entries().iter().filter(|e| e.automorphism_free).count();
            o.emit(
                format!("ok: {} curves, {} automorphism_free", catalog.len(), free),
                json!({"curves": catalog.len(), "automorphism_free": free}),
            )?;
        }
        Command::Catalog(CatalogCommand::Bounds(c)) => {
            let b = CurveClass::new(c.space, c.genus, c.degree, "query").hilbert_dim_bounds()?;
            o.emit(format!("{} {} {}", b.lower, b.upper, b.exceeds_aut), b)?;
        }
        Command::Word(cmd) => return word(cmd, &cli.catalog, o),
        Command::Verify => {
            let report = verify::run();
            for c in &report.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                o.emit(
                    format!("{status} {}: expected {}, got {}", c.check, c.expected, c.actual),
                    json!({"check": c.check, "expected": c.expected, "actual": c.actual, "status": status.to_lowercase()}),
                )?;
            }
            return Ok(if report.all_pass() { EXIT_OK } else { EXIT_DOMAIN });
        }
    }
    Ok(EXIT_OK)
}

fn lattice(cmd: &LatticeCommand, o: &mut Output) -> Result<(), Failure> {
    let lat = |c: &CurveArgs| BlowupLattice::new(c.space, c.genus, c.degree);
    match cmd {
        LatticeCommand::Cube(c) => {
            let v = lat(c).anticanonical_cube();
            o.emit(v, json!({"anticanonical_cube": v}))?;
        }
        LatticeCommand::Flop(c) => {
            let m = lat(c).flop_action()?;
            o.emit(m, json!({"matrix": m.0}))?;
        }
        LatticeCommand::Rr { curve, n } => {
            let v = lat(curve).rr_dimension(*n)?;
            o.emit(v, json!({"n": n, "rr": v}))?;
        }
        LatticeCommand::Certify(c) => {
            let v = lat(c).sextic_double_solid_certificate();
            o.emit(v, json!({"sextic_double_solid": v}))?;
        }
    }
    Ok(())
}

fn blowup(cmd: &BlowupCommand, o: &mut Output) -> Result<(), Failure> {
    match cmd {
        BlowupCommand::Disc(w) => {
            let bl = WeightedBlowup::parse(&w.weights)?;
            o.emit(
                bl.discrepancy(),
                json!({"weights": bl.to_string(), "discrepancy": bl.discrepancy()}),
            )?;
        }
        BlowupCommand::Exc { weights, f, g } => {
            let bl = WeightedBlowup::parse(&weights.weights)?;
            let w = bl.weights();
            let v = bl.exceptional_intersection(&GradedPolynomial::parse(f, &w)?, &GradedPolynomial::parse(g, &w)?)?;
            o.emit(&v, json!({"weights": bl.to_string(), "intersection": v.to_string()}))?;
        }
        BlowupCommand::Defect { weights, vh, n } => {
            if *vh == 0 || *n == 0 {
                return Err(Failure::Usage("--vh and --n must be positive".into()));
            }
            let bl = WeightedBlowup::parse(&weights.weights)?;
            let v = bl.anticanonical_defect(*vh, *n);
            o.emit(
                &v,
                json!({"weights": bl.to_string(), "vh": vh, "n": n, "defect": v.to_string()}),
            )?;
        }
        BlowupCommand::Gap(w) => {
            let bl = WeightedBlowup::parse(&w.weights)?;
            let c = bl.strict_positivity_check();
            o.emit(
                format!("{} {}", c.holds, c.gap),
                json!({"holds": c.holds, "gap": c.gap.to_string(), "excess_over_four": c.excess_over_four.to_string()}),
            )?;
        }
        BlowupCommand::Bundles => {
            for (a, b) in flopped_normal_bundles() {
                o.emit(format!("{a} {b}"), json!({"a": a, "b": b}))?;
            }
        }
    }
    Ok(())
}

fn poly(cmd: &PolyCommand, o: &mut Output) -> Result<(), Failure> {
    let parse = |a: &PolyArgs| -> Result<GradedPolynomial, Error> {
        GradedPolynomial::parse(&a.poly, &parse_weights(&a.weights)?)
    };
    match cmd {
        PolyCommand::Valuation(a) => {
            let v = parse(a)?.weighted_valuation()?;
            o.emit(v, json!({"valuation": v}))?;
        }
        PolyCommand::Decompose(a) => {
            for (d, part) in parse(a)?.homogeneous_decomposition()? {
                o.emit(format!("{d}: {part}"), json!({"degree": d, "part": part.to_string()}))?;
            }
        }
        PolyCommand::Pullback(a) => {
            let p = parse(a)?.chart_pullback()?;
            o.emit(
                format!("u^{} * ({p})", p.power),
                json!({"power": p.power, "strict_transform": p.to_string()}),
            )?;
        }
    }
    Ok(())
}

fn word(cmd: &WordCommand, catalog_path: &Option<PathBuf>, o: &mut Output) -> CmdResult {
    let catalog = load_catalog(catalog_path)?;
    let eng = engine(catalog.as_ref());
    let emit_word = |o: &mut Output, key: &str, w: &Word| o.emit(w, json!({ key: w.to_string() }));
    match cmd {
        WordCommand::Normalize(w) => emit_word(o, "word", &eng.normalize(&words(&w.letters)?)?)?,
        WordCommand::Invert(w) => emit_word(o, "word", &eng.invert(&words(&w.letters)?)?)?,
        WordCommand::Psi(w) => emit_word(o, "word", &eng.psi(&words(&w.letters)?)?)?,
        WordCommand::Section(w) => emit_word(o, "word", &eng.section(&words(&w.letters)?)?)?,
        WordCommand::Decompose(w) => {
            let (n, s) = eng.kernel_decompose(&words(&w.letters)?)?;
            o.emit(
                format!("kernel: {n}\nsection: {s}"),
                json!({"kernel": n.to_string(), "section": s.to_string()}),
            )?;
        }
        WordCommand::Phi { perm, letters } => {
            let rho: IndexPermutation = perm.parse()?;
            emit_word(o, "word", &eng.phi_automorphism(&rho, &words(letters)?)?)?;
        }
        WordCommand::Order { perm } => {
            let rho: IndexPermutation = perm.parse()?;
            let k = eng.automorphism_order(&rho);
            o.emit(k, json!({"perm": rho.to_string(), "order": k}))?;
        }
        WordCommand::Conj { w1, w2 } => {
            let c = eng.conjugate_in_free_product(&words(w1)?, &words(w2)?)?;
            o.emit(c, json!({"conjugate": c}))?;
        }
        WordCommand::Certify { perm } => {
            let Some(catalog) = catalog else {
                return Err(Failure::Usage(
                    "word certify needs a catalog (--catalog or BIRCALC_CATALOG)".into(),
                ));
            };
            let rho: IndexPermutation = perm.parse()?;
            let cert = eng.non_inner_certificate(&rho, &catalog)?;
            let human = match &cert {
                NonInnerCertificate::Certified {
                    witness,
                    image,
                    conjugate,
                    field_automorphism_obstruction,
                } => format!(
                    "not inner: chi:{witness} -> chi:{image}, conjugate={conjugate}, field_automorphism_obstruction={field_automorphism_obstruction}"
                ),
                NonInnerCertificate::Refused { reason } => format!("refused: {reason}"),
            };
            o.emit(human, &cert)?;
        }
    }
    Ok(EXIT_OK)
}
