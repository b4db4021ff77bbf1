//! The `cone-codes` command line.
//!
//! Exit codes: 0 success, 1 a construction or check failed, 2 usage or parse error.

pub mod alist;
pub mod doc;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::BasedComplex;
use crate::constructions::{
    barycentric_cone, hastings_cone, honeycomb_cone, l_subdivision, layer_code, random_css, steane, toric,
    triangular_cone, weight_reduce, x_reduce, xxx_ziz, z_thicken, Boundary, Construction, HeightFunction,
    SimplicialComplex,
};
use crate::css::{CssCode, DEFAULT_DISTANCE_CAP};
use crate::f2linalg::BitMatrix;

pub use alist::{read_alist, write_alist, AlistError};
pub use doc::{BlockDocument, ComplexDocument, ConeDocument, DeclaredDocument, Document, DocumentError, LevelDocument};

/// Environment variable that overrides the default worker-thread count.
pub const THREADS_ENV: &str = "CONE_CODES_THREADS";

#[derive(Debug, Parser)]
#[command(name = "cone-codes", version, about = "Build and check mapping-cone constructions of CSS codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named construction and write its document.
    Build(BuildArgs),
    /// Check a document: chain condition, regularity, embedded complex, homology isomorphism.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        /// Regular degree to check instead of the declared ones.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Report n, k, weights and distances of a length-2 complex or assembled cone.
    Params {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_CAP)]
        distance_cap: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run X-reduction, Z-thickening and coning, then check the weight bounds.
    WeightReduce {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write a length-2 complex as JSON or as a pair of alist files.
    Export {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file for json, file prefix for alist.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Read a JSON document or a pair of alist files and write a JSON document.
    Import {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long, required_if_eq("format", "json"))]
        input: Option<PathBuf>,
        #[arg(long, required_if_eq("format", "alist"))]
        hx: Option<PathBuf>,
        #[arg(long, required_if_eq("format", "alist"))]
        hz: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Alist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildKind {
    Toric,
    Honeycomb,
    Triangular,
    Barycentric,
    Layer,
    Subdivision,
    XReduce,
    ZThicken,
    Hastings,
    Steane,
    XxxZiz,
    Random,
}

#[derive(Debug, Args)]
struct BuildArgs {
    construction: BuildKind,
    /// Input CSS code document.
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Boundary conditions `x,y`, each cyclic, smooth or rough.
    #[arg(long, default_value = "cyclic,cyclic")]
    bc: String,
    /// Toric size `lx,ly`.
    #[arg(long, default_value = "3,3")]
    size: String,
    /// Repetition length for subdivision and Z-thickening.
    #[arg(long = "L", alias = "length")]
    length: Option<usize>,
    /// Z-thickening heights, one per Z generator (default: 1, 2, ...).
    #[arg(long, value_delimiter = ',')]
    heights: Option<Vec<usize>>,
    /// Generators to cone (default: all).
    #[arg(long, value_delimiter = ',')]
    reduce: Option<Vec<usize>>,
    /// Facets as `0,1,2;2,3`.
    #[arg(long)]
    facets: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let (Failure::Usage(msg) | Failure::Domain(msg)) = &f;
            let _ = writeln!(stderr, "error: {msg}");
            f.code()
        }
    }
}

/// Entry point for the binary.
#[must_use]
pub fn main() -> std::process::ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::ExitCode::from(u8::try_from(code).unwrap_or(1))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Build(args) => build(&args, out, err),
        Command::Verify { input, degree } => verify(&read_document(&input)?, degree, out),
        Command::Params {
            input,
            distance_cap,
            json,
            threads,
        } => params(&read_document(&input)?, distance_cap, json, threads, out),
        Command::WeightReduce { input, out: path } => reduce(&read_document(&input)?, path.as_deref(), out),
        Command::Export { input, format, out: path } => export(&read_document(&input)?, format, path.as_deref(), out),
        Command::Import {
            format,
            input,
            hx,
            hz,
            out: path,
        } => {
            let doc = match format {
                Format::Json => {
                    let input = input.ok_or_else(|| usage("--input is required"))?;
                    let doc = read_document(&input)?;
                    match &doc {
                        Document::Complex(c) => c.to_complex().map_err(usage)?.validate().map_err(domain)?,
                        Document::Cone(c) => drop(c.to_spec().map_err(usage)?),
                    }
                    doc
                }
                Format::Alist => {
                    let (hx, hz) = hx.zip(hz).ok_or_else(|| usage("--hx and --hz are required"))?;
                    let h_x = read_alist(&read_text(&hx)?).map_err(usage)?;
                    let h_z = read_alist(&read_text(&hz)?).map_err(usage)?;
                    let code = CssCode::from_parity_checks(&h_x.transpose(), &h_z.transpose()).map_err(domain)?;
                    Document::Complex(ComplexDocument::from_complex(code.complex()))
                }
            };
            emit(&doc.to_json(), path.as_deref(), out)?;
            Ok(0)
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_document(path: &Path) -> Result<Document, Failure> {
    Document::parse(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| domain(format!("cannot write {}: {e}", path.display())))
}

/// Writes to `path`, or to stdout when absent.
fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => write_file(p, text),
        None => out.write_all(text.as_bytes()).map_err(domain),
    }
}

fn css_of(doc: &Document) -> Result<CssCode, Failure> {
    let c = doc.total_complex().map_err(domain)?;
    if c.top_degree() > 2 {
        return Err(domain(format!("complex has top degree {}, expected at most 2", c.top_degree())));
    }
    CssCode::from_complex(c.padded(2)).map_err(domain)
}

fn input_code(args: &BuildArgs) -> Result<CssCode, Failure> {
    let path = args.input.as_deref().ok_or_else(|| usage("this construction needs --input"))?;
    css_of(&read_document(path)?)
}

fn pair<T: std::str::FromStr>(s: &str, what: &str) -> Result<(T, T), Failure>
where
    T::Err: std::fmt::Display,
{
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts[..] else {
        return Err(usage(format!("--{what} expects two comma-separated values, got '{s}'")));
    };
    let parse = |x: &str| x.trim().parse::<T>().map_err(|e| usage(format!("--{what}: {e}")));
    Ok((parse(a)?, parse(b)?))
}

fn parse_facets(s: &str) -> Result<Vec<Vec<i64>>, Failure> {
    s.split(';')
        .map(|f| {
            f.split(',')
                .map(|v| v.trim().parse::<i64>().map_err(|e| usage(format!("--facets: {e}"))))
                .collect()
        })
        .collect()
}

fn summary(c: &BasedComplex) -> String {
    let k = if c.top_degree() <= 2 {
        CssCode::from_complex(c.padded(2)).map(|code| format!(", k = {}", code.k())).unwrap_or_default()
    } else {
        String::new()
    };
    format!("dims {:?}{k}", c.dims())
}

fn build(args: &BuildArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let torus = || -> Result<_, Failure> {
        let (bx, by) = pair::<Boundary>(&args.bc, "bc")?;
        let (lx, ly) = pair::<usize>(&args.size, "size")?;
        toric(bx, by, lx, ly).map_err(domain)
    };
    let cone = |c: Construction| -> Result<(Document, String), Failure> {
        let total = c.assemble().map_err(domain)?;
        let line = format!("{}: {} levels, {}", c.name, c.spec.num_levels(), summary(&total));
        Ok((Document::Cone(ConeDocument::from_construction(&c)), line))
    };
    let complex = |name: &str, c: &BasedComplex| {
        (Document::Complex(ComplexDocument::from_complex(c)), format!("{name}: {}", summary(c)))
    };
    let (doc, line) = match args.construction {
        BuildKind::Toric => complex("toric", &torus()?.complex),
        BuildKind::Steane => complex("steane", steane().complex()),
        BuildKind::XxxZiz => complex("xxx-ziz", xxx_ziz().complex()),
        BuildKind::Random => complex(
            &format!("random (seed {})", args.seed),
            random_css(&mut ChaCha8Rng::seed_from_u64(args.seed)).complex(),
        ),
        BuildKind::Honeycomb => cone(honeycomb_cone(&torus()?).map_err(domain)?)?,
        BuildKind::Triangular => cone(triangular_cone(&torus()?).map_err(domain)?)?,
        BuildKind::Barycentric => {
            let facets = parse_facets(args.facets.as_deref().ok_or_else(|| usage("barycentric needs --facets"))?)?;
            let k = SimplicialComplex::from_facets(&facets).map_err(usage)?;
            cone(barycentric_cone(&k).map_err(domain)?)?
        }
        BuildKind::Layer => cone(layer_code(&input_code(args)?).map_err(domain)?)?,
        BuildKind::Subdivision => {
            let l = args.length.ok_or_else(|| usage("subdivision needs --L"))?;
            cone(l_subdivision(&input_code(args)?, l).map_err(domain)?)?
        }
        BuildKind::XReduce => cone(x_reduce(&input_code(args)?).map_err(domain)?)?,
        BuildKind::ZThicken => {
            let a = input_code(args)?;
            let l = args.length.unwrap_or_else(|| a.n_z().max(3));
            let h = match &args.heights {
                Some(h) => HeightFunction::new(h.clone(), l),
                None => HeightFunction::identity(a.n_z(), l),
            }
            .map_err(usage)?;
            cone(z_thicken(&a, l, &h).map_err(domain)?)?
        }
        BuildKind::Hastings => {
            let a = input_code(args)?;
            let all: Vec<usize> = (0..a.n_z()).collect();
            cone(hastings_cone(&a, args.reduce.as_deref().unwrap_or(&all)).map_err(domain)?)?
        }
    };
    match &args.out {
        Some(path) => {
            write_file(path, &doc.to_json())?;
            writeln!(out, "{line}").map_err(domain)?;
        }
        None => {
            out.write_all(doc.to_json().as_bytes()).map_err(domain)?;
            writeln!(err, "{line}").map_err(domain)?;
        }
    }
    Ok(0)
}

fn verify(doc: &Document, degree: Option<usize>, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut ok = true;
    let mut report = |pass: bool, what: String| -> Result<(), Failure> {
        ok &= pass;
        writeln!(out, "{} {what}", if pass { "PASS" } else { "FAIL" }).map_err(domain)
    };
    let cone = match doc {
        Document::Complex(c) => {
            let complex = c.to_complex().map_err(usage)?;
            match complex.validate() {
                Ok(()) => report(true, format!("chain-condition: dims {:?}", complex.dims()))?,
                Err(e) => report(false, format!("chain-condition: {e}"))?,
            }
            return Ok(i32::from(!ok));
        }
        Document::Cone(c) => c,
    };
    let construction = cone.to_construction().map_err(usage)?;
    let spec = cone.to_spec().map_err(usage)?;
    match spec.assemble() {
        Ok(total) => report(true, format!("chain-condition: total dims {:?}", total.dims()))?,
        Err(e) => {
            report(false, format!("chain-condition: {e}"))?;
            return Ok(1);
        }
    }
    let degrees = degree.map_or_else(|| cone.regular_degrees.clone(), |m| vec![m]);
    let mut regular = Vec::new();
    for &m in &degrees {
        let failing = spec.regularity_failures(m);
        if failing.is_empty() {
            regular.push(m);
            report(true, format!("regularity at degree {m}"))?;
        } else {
            let list: Vec<String> = failing.iter().map(|(s, i, d)| format!("(level {s}, degree {i}, dim {d})")).collect();
            report(false, format!("regularity at degree {m}: {}", list.join(", ")))?;
        }
    }
    let analysis = match spec.analyze() {
        Ok(a) => {
            report(true, format!("embedded complex: dims {:?}", a.embedded().complex.dims()))?;
            a
        }
        Err(e) => {
            report(false, format!("embedded complex: {e}"))?;
            return Ok(1);
        }
    };
    for m in regular {
        match analysis.embedding_iso(m) {
            Ok(iso) => report(true, format!("embedding isomorphism at degree {m}: {}x{}", iso.rows(), iso.cols()))?,
            Err(e) => report(false, format!("embedding isomorphism at degree {m}: {e}"))?,
        }
    }
    if let Some(c) = construction {
        match analysis.verify_declared(&c.declared, &c.declared_reps) {
            Ok(()) => report(true, format!("declared embedded code: dims {:?}", c.declared.dims()))?,
            Err(e) => report(false, format!("declared embedded code: {e}"))?,
        }
    }
    Ok(i32::from(!ok))
}

fn thread_count(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok())
        .or_else(|| std::thread::available_parallelism().ok().map(usize::from))
        .unwrap_or(1)
        .max(1)
}

fn params(doc: &Document, cap: usize, json: bool, threads: Option<usize>, out: &mut dyn Write) -> Result<i32, Failure> {
    let code = css_of(doc)?;
    let p = code.parameters_with_threads(cap, thread_count(threads));
    if json {
        let mut s = serde_json::to_string_pretty(&p).map_err(domain)?;
        s.push('\n');
        out.write_all(s.as_bytes()).map_err(domain)?;
    } else {
        let w = p.weights;
        writeln!(
            out,
            "n={} k={} d_Z={} d_X={} w_Z={} w_X={} q_Z={} q_X={}",
            p.n, p.k, p.d_z, p.d_x, w.w_z, w.w_x, w.q_z, w.q_x
        )
        .map_err(domain)?;
    }
    Ok(0)
}

fn reduce(doc: &Document, path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let a = css_of(doc)?;
    let r = weight_reduce(&a).map_err(domain)?;
    let mut text = String::from("stage           n  w_Z  w_X  q_Z  q_X\n");
    let mut row = |name: &str, n: Option<usize>, w: &crate::chain::WeightReport| {
        let n = n.map_or_else(|| "-".to_string(), |n| n.to_string());
        text.push_str(&format!("{name:<10} {n:>6} {:>4} {:>4} {:>4} {:>4}\n", w.w_z, w.w_x, w.q_z, w.q_x));
    };
    row("input", Some(a.n()), &r.input);
    row("x-reduce", None, &r.x_reduced);
    row("z-thicken", None, &r.thickened);
    row("output", Some(r.output.dim(1)), &r.output_weights);
    text.push_str(&format!("k: {} -> {}\n", r.k_input, r.k_output));
    for c in &r.checks {
        text.push_str(&format!("{} {c}\n", if c.holds() { "PASS" } else { "FAIL" }));
    }
    out.write_all(text.as_bytes()).map_err(domain)?;
    if let Some(p) = path {
        write_file(p, &Document::Complex(ComplexDocument::from_complex(&r.output)).to_json())?;
    }
    r.check().map_err(domain)?;
    Ok(0)
}

fn export(doc: &Document, format: Format, path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let code = css_of(doc)?;
    match format {
        Format::Json => emit(&Document::Complex(ComplexDocument::from_complex(code.complex())).to_json(), path, out)?,
        Format::Alist => {
            let prefix = path.ok_or_else(|| usage("alist export needs --out PREFIX"))?;
            let h_x: BitMatrix = code.complex().diff(1);
            let h_z: BitMatrix = code.h_z().transpose();
            let with = |ext: &str| {
                let mut p = prefix.as_os_str().to_owned();
                p.push(ext);
                PathBuf::from(p)
            };
            write_file(&with(".hx.alist"), &write_alist(&h_x))?;
            write_file(&with(".hz.alist"), &write_alist(&h_z))?;
            writeln!(out, "n={} m_X={} m_Z={}", code.n(), code.n_x(), code.n_z()).map_err(domain)?;
        }
    }
    Ok(0)
}
