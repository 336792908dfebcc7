use clap::{Args, Parser, Subcommand, ValueEnum};
use dpcurves::enumeration::{enumerate_raw, irreducible_families, CurveFamily, EnumerationQuery};
use dpcurves::lattice::canonical_class;
use dpcurves::positivity::{adjoint_is_nef, adjoint_self_intersection, classify_boundary, PositivityVerdict};
use dpcurves::rational::{self, Rational};
use dpcurves::report::{build_report, render_family_form, Format};
use dpcurves::zariski::{zariski_decompose, Verification, ZariskiDecomposition};
use dpcurves::{DivisorClass, Error, SurfaceModel};
use serde::Serialize;
use std::fmt::Write as _;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 2;
const EXIT_EMPTY: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_DOMAIN: u8 = 5;

#[derive(Parser)]
#[command(name = "dpcurves", version, about = "Low degree curves and boundary positivity on del Pezzo surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the curve classes with given -K.C and C^2.
    Enumerate {
        #[command(flatten)]
        cell: CellArgs,
        /// Every integral solution instead of irreducible families.
        #[arg(long)]
        raw: bool,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Positivity of -(K + eps D) for every family of a cell.
    Classify {
        #[command(flatten)]
        cell: CellArgs,
        /// Weight as p/q in (0, 1).
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// The full table for a range of degrees.
    Table {
        /// A degree or range, e.g. 3, 1..5 or 2,4.
        #[arg(short, long, default_value = "1..5")]
        d: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Md)]
        format: TableFormat,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Zariski decomposition of a class given as a,b1,...,bk.
    Zariski {
        #[arg(short, long)]
        d: i64,
        #[arg(allow_hyphen_values = true)]
        class: String,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
}

#[derive(Args)]
struct CellArgs {
    #[arg(short, long)]
    d: i64,
    #[arg(short, long)]
    m: i64,
    #[arg(short, long, allow_hyphen_values = true)]
    n: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
    Md,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedDegree(_) | Error::InvalidDegree(_) | Error::Length { .. } | Error::Parse(_) => {
                EXIT_USAGE
            }
            _ => EXIT_DOMAIN,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Output and exit code of a successful run.
struct Output {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Enumerate { cell, raw, format } => enumerate(&cell, raw, format),
        Command::Classify { cell, epsilon, format } => classify(&cell, &epsilon, format),
        Command::Table { d, format, out } => table(&d, format, out.as_deref()),
        Command::Zariski { d, class, format } => zariski(d, &class, format),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn families(cell: &CellArgs) -> Result<(SurfaceModel, Vec<CurveFamily>), Failure> {
    let s = SurfaceModel::new(cell.d)?;
    Ok((s, irreducible_families(&EnumerationQuery::new(s, cell.m, cell.n))))
}

#[derive(Serialize)]
struct FamilyLine {
    form: String,
    representative: DivisorClass,
    orbit_size: u64,
}

fn enumerate(cell: &CellArgs, raw: bool, format: TextFormat) -> Result<Output, Failure> {
    let header = format!("d={} m={} n={}", cell.d, cell.m, cell.n);
    let (text, empty) = if raw {
        let s = SurfaceModel::new(cell.d)?;
        let classes = enumerate_raw(&EnumerationQuery::new(s, cell.m, cell.n));
        let text = match format {
            TextFormat::Json => json(&classes),
            TextFormat::Text => {
                let mut t = format!("{header}: {} classes\n", classes.len());
                for c in &classes {
                    writeln!(t, "{c}").unwrap();
                }
                t
            }
        };
        (text, classes.is_empty())
    } else {
        let (_, fams) = families(cell)?;
        let lines: Vec<FamilyLine> = fams
            .iter()
            .map(|f| FamilyLine {
                form: render_family_form(&f.representative),
                representative: f.representative.clone(),
                orbit_size: f.orbit_size,
            })
            .collect();
        let text = match format {
            TextFormat::Json => json(&lines),
            TextFormat::Text => {
                let total: u64 = lines.iter().map(|l| l.orbit_size).sum();
                let mut t = format!("{header}: {} forms, {total} curves\n", lines.len());
                for l in &lines {
                    writeln!(t, "{}  ({})", l.form, l.orbit_size).unwrap();
                }
                t
            }
        };
        (text, lines.is_empty())
    };
    Ok(Output { text, code: if empty { EXIT_EMPTY } else { 0 } })
}

#[derive(Serialize)]
struct ClassifyLine {
    form: String,
    orbit_size: u64,
    #[serde(flatten)]
    positivity: PositivityVerdict,
    #[serde(with = "dpcurves::rational::serde_rational")]
    epsilon: Rational,
    #[serde(with = "dpcurves::rational::serde_rational")]
    adjoint_self_intersection: Rational,
    nef_at_epsilon: bool,
}

fn parse_epsilon(s: &str) -> Result<Rational, Failure> {
    let eps = rational::parse(s).ok_or_else(|| Failure::usage(format!("cannot parse epsilon {s:?}")))?;
    if eps <= rational::int(0) || eps >= rational::int(1) {
        return Err(Failure::usage(format!("epsilon {s} is not in (0, 1)")));
    }
    Ok(eps)
}

fn classify(cell: &CellArgs, epsilon: &str, format: TextFormat) -> Result<Output, Failure> {
    let eps = parse_epsilon(epsilon)?;
    let (_, fams) = families(cell)?;
    if fams.is_empty() {
        return Ok(Output { text: format!("d={} m={} n={}: no curve\n", cell.d, cell.m, cell.n), code: EXIT_EMPTY });
    }
    let mut lines = Vec::new();
    for f in &fams {
        let c = &f.representative;
        lines.push(ClassifyLine {
            form: render_family_form(c),
            orbit_size: f.orbit_size,
            positivity: classify_boundary(c)?,
            adjoint_self_intersection: adjoint_self_intersection(c, &eps),
            nef_at_epsilon: adjoint_is_nef(c, &eps),
            epsilon: eps.clone(),
        });
    }
    let text = match format {
        TextFormat::Json => json(&lines),
        TextFormat::Text => {
            let e = rational::format(&eps);
            let mut t = String::new();
            for l in &lines {
                writeln!(
                    t,
                    "{}  ({}): mu = {}, threshold = {}, verdict = {}, (-(K + {e}D))^2 = {}, nef at {e}: {}",
                    l.form,
                    l.orbit_size,
                    l.positivity.mu,
                    l.positivity.nef_threshold,
                    l.positivity.verdict,
                    rational::format(&l.adjoint_self_intersection),
                    if l.nef_at_epsilon { "yes" } else { "no" },
                )
                .unwrap();
            }
            t
        }
    };
    Ok(Output { text, code: 0 })
}

/// `3`, `1..5`, `1..=5` or `2,4`.
fn parse_degrees(s: &str) -> Result<Vec<i64>, Failure> {
    let bad = || Failure::usage(format!("cannot parse degree range {s:?}"));
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    let mut out = Vec::new();
    for part in s.split(',') {
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(num(part)?);
        }
    }
    if let Some(&d) = out.iter().find(|&&d| !(1..=5).contains(&d)) {
        return Err(Failure::usage(format!("table covers degrees 1 to 5, got {d}")));
    }
    Ok(out)
}

fn table(d: &str, format: TableFormat, out: Option<&std::path::Path>) -> Result<Output, Failure> {
    let degrees = parse_degrees(d)?;
    let doc = build_report(&degrees)?;
    let fmt = match format {
        TableFormat::Json => Format::Json,
        TableFormat::Csv => Format::Csv,
        TableFormat::Md => Format::Markdown,
    };
    let text = doc.render(fmt);
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Failure { code: EXIT_IO, message: format!("cannot write {}: {e}", path.display()) })?;
            Ok(Output { text: String::new(), code: 0 })
        }
        None => Ok(Output { text, code: 0 }),
    }
}

#[derive(Serialize)]
struct ZariskiOutput<'a> {
    input: &'a DivisorClass,
    #[serde(flatten)]
    decomposition: &'a ZariskiDecomposition,
    verification: Verification,
}

fn zariski(d: i64, class: &str, format: TextFormat) -> Result<Output, Failure> {
    let s = SurfaceModel::new(d)?;
    let c = DivisorClass::parse(s, class)?;
    let z = zariski_decompose(&c)?;
    let v = z.verify(&c.to_rational());
    let text = match format {
        TextFormat::Json => json(&ZariskiOutput { input: &c, decomposition: &z, verification: v }),
        TextFormat::Text => {
            let yes = |b: bool| if b { "yes" } else { "no" };
            let mut t = format!("D = {c}\nP = {}\n", z.positive_part);
            writeln!(t, "P^2 = {}, -K.P = {}", rational::format(&z.positive_part.square()), {
                let k = canonical_class(s).to_rational();
                rational::format(&-z.positive_part.dot(&k))
            })
            .unwrap();
            writeln!(t, "N: {} curves", z.negative_part.len()).unwrap();
            for comp in &z.negative_part {
                writeln!(t, "  {}  {}", rational::format(&comp.coefficient), comp.curve).unwrap();
            }
            writeln!(t, "P nef: {}", yes(v.positive_part_nef)).unwrap();
            writeln!(t, "P.N_i = 0: {}", yes(v.orthogonal)).unwrap();
            writeln!(t, "support negative definite: {}", yes(v.negative_definite)).unwrap();
            writeln!(t, "D = P + N: {}", yes(v.reconstructs)).unwrap();
            t
        }
    };
    Ok(Output { text, code: 0 })
}
