//! `gnk`: braid images in `G_n^k`, parity images, lower-bound certificates
//! and self-check suites.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context as _;
use clap::{Parser, Subcommand, ValueEnum};
use gnk_core::certificate::{gnk_report, unknotting_report, Certificate, DEFAULT_BUDGET};
use gnk_core::geometry::appendix::{
    circle_through, concyclic_on_parabola, delta_det, fourth_intersection, slope_kappa,
};
use gnk_core::geometry::growth::{crossing_order, growth_sequence_both};
use gnk_core::geometry::simulate::{traced_bij_circle, traced_bij_parabola};
use gnk_core::geometry::trace::{events_json, trace_events, SecantKind};
use gnk_core::geometry::trajectory::Trajectory;
use gnk_core::geometry::{parse_rat, Rat};
use gnk_core::gnk::{Context, GnkWord, Subset};
use gnk_core::parity::BaseChoice;
use gnk_core::pure_braid::{map_pb, map_pb_unreduced, CircleCase, EvenWord, PbWord};
use gnk_core::verify::{run_suite, same_parity_images, Suite};
use gnk_core::words::ToyWord;
use gnk_core::Error;
use serde_json::json;
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "gnk", version, about = "Braid complexity bounds through the groups G_n^k")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Number of strands (inferred from the word when omitted).
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Subset size of the target group, 3 or 4.
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Base choice m, such as `123` or `1,2,3`; every base when omitted.
    #[arg(long, global = true)]
    base: Option<String>,

    /// Largest number of switches the exact search tries.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Directory for certificate files.
    #[arg(long, global = true, default_value = "certificates")]
    out_dir: PathBuf,

    /// Seed of the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a word and print its complexity.
    Reduce {
        word: String,
        #[arg(long, value_enum, default_value_t = Alphabet::Gnk)]
        alphabet: Alphabet,
        /// Shorthand for `--alphabet gnk`.
        #[arg(long, conflicts_with_all = ["toy", "even"])]
        gnk: bool,
        /// Shorthand for `--alphabet toy`.
        #[arg(long, conflicts_with = "even")]
        toy: bool,
        /// Shorthand for `--alphabet even`.
        #[arg(long)]
        even: bool,
    },
    /// Image of a pure braid word in G_n^k.
    Map { word: String },
    /// Parity image of an even G_n^k word.
    Phi { word: String },
    /// Certificate of lower bounds for a pure braid or an even G_n^k word.
    Bounds {
        word: String,
        /// Record the running time in the certificate.
        #[arg(long)]
        timing: bool,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
    },
    /// Trace the motion of a generator b_ij, or a trajectory file.
    Simulate {
        /// The generator as `ij`, such as `13`.
        #[arg(long, required_unless_present = "file")]
        pair: Option<String>,
        #[arg(long, value_enum, default_value_t = Motion::Circle)]
        motion: Motion,
        /// Trace this trajectory file instead.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Event kind when tracing a file.
        #[arg(long, value_enum, default_value_t = Kind::Trisecant)]
        kind: Kind,
        /// Write the simulated trajectory here.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Exact computations on the parabola y = x^2.
    Geometry {
        #[command(subcommand)]
        op: GeometryOp,
    },
}

#[derive(Subcommand)]
enum GeometryOp {
    /// Delta determinant and concyclicity of four abscissas.
    #[command(allow_negative_numbers = true)]
    Delta { xs: Vec<String> },
    /// Circle through three points given as six coordinates.
    #[command(allow_negative_numbers = true)]
    Circle { coords: Vec<String> },
    /// Tangent slope at P_k of the circle through P_k, P_l, P_m.
    #[command(allow_negative_numbers = true)]
    Kappa { tk: String, tl: String, tm: String },
    /// Fourth intersection of the circle through three parabola points.
    #[command(allow_negative_numbers = true)]
    Fourth { ti: String, tj: String, tk: String },
    /// Crossing order of the circles through P_j, case 1, 2 or 3.
    Order {
        #[arg(long)]
        j: usize,
        #[arg(long)]
        case: u8,
    },
    /// A parameter sequence meeting both growth conditions.
    Growth,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alphabet {
    Gnk,
    Toy,
    Even,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Motion {
    Circle,
    Parabola,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Trisecant,
    Concyclic,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a suite, as opposed to an error.
#[derive(Debug)]
struct SuiteFailed;

impl std::fmt::Display for SuiteFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("suite failed")
    }
}

impl std::error::Error for SuiteFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<SuiteFailed>().is_some() {
        return 1;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::Parse(_) | Error::InvalidLetter { .. } | Error::InvalidPair { .. } | Error::InvalidContext { .. },
        ) => 2,
        Some(_) => 3,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if err.downcast_ref::<SuiteFailed>().is_none() {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::Reduce { word, alphabet, gnk, toy, even } => {
            let alphabet = if *toy {
                Alphabet::Toy
            } else if *even {
                Alphabet::Even
            } else if *gnk {
                Alphabet::Gnk
            } else {
                *alphabet
            };
            reduce(cli, word, alphabet)
        }
        Command::Map { word } => map(cli, word),
        Command::Phi { word } => phi(cli, word),
        Command::Bounds { word, timing } => bounds(cli, word, *timing),
        Command::Verify { suite } => verify(cli, *suite),
        Command::Simulate { pair, motion, file, kind, save } => match file {
            Some(path) => trace_file(path, *kind),
            None => simulate(cli, pair.as_deref().unwrap_or_default(), *motion, save.as_deref()),
        },
        Command::Geometry { op } => geometry(cli, op),
    }
}

/// Writes one line to stdout. A closed pipe (`gnk ... | head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn print_json(value: &serde_json::Value) {
    emit(&serde_json::to_string_pretty(value).expect("json"));
}

fn is_gnk_text(word: &str) -> bool {
    word.split_whitespace().next().is_some_and(|t| t.starts_with('a'))
}

/// Parses a `G_n^k` word; `n` and `k` default to the largest index and the
/// letter size.
fn parse_gnk(cli: &Cli, word: &str) -> anyhow::Result<GnkWord> {
    let letters = word.split_whitespace().map(Subset::parse_letter).collect::<Result<Vec<_>, _>>()?;
    let n = cli.n.or_else(|| letters.iter().map(Subset::max).max()).unwrap_or(3);
    let k = cli.k.or_else(|| letters.first().map(Subset::len)).unwrap_or(3);
    Ok(GnkWord::new(Context::new(n, k)?, letters)?)
}

/// Parses a pure braid word; `n` defaults to the largest index, at least 3.
fn parse_pb(cli: &Cli, word: &str) -> anyhow::Result<PbWord> {
    let n = match cli.n {
        Some(n) => n,
        None => PbWord::parse(word, 64)?.letters().iter().map(|l| l.j).max().unwrap_or(3).max(3),
    };
    Ok(PbWord::parse(word, n)?)
}

fn parse_base(text: &str, ctx: Context) -> anyhow::Result<BaseChoice> {
    let indices: Vec<usize> = if text.contains(',') {
        text.split(',')
            .map(|p| p.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad base `{text}`")))?
    } else {
        text.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse(format!("bad base `{text}`")))?
    };
    Ok(BaseChoice::new(ctx, Subset::new(indices)?)?)
}

fn bases(cli: &Cli, ctx: Context) -> anyhow::Result<Vec<BaseChoice>> {
    match &cli.base {
        Some(text) => Ok(vec![parse_base(text, ctx)?]),
        None => Ok(BaseChoice::all(ctx)?),
    }
}

fn reduce(cli: &Cli, word: &str, alphabet: Alphabet) -> anyhow::Result<()> {
    match alphabet {
        Alphabet::Gnk => {
            let w = parse_gnk(cli, word)?;
            let r = w.reduced();
            print_json(&json!({ "reduced": r.to_string(), "complexity": r.len(), "even": r.is_even() }));
        }
        Alphabet::Even => {
            let w = EvenWord::parse(word)?.reduced();
            print_json(&json!({ "reduced": w.to_string(), "complexity": w.len() }));
        }
        Alphabet::Toy => {
            let w: ToyWord = word.parse()?;
            let normal = w.normal_form();
            let feasible = normal.switch_feasible();
            let lower = if feasible { json!(normal.switch_lower_bound()) } else { json!("infinity") };
            print_json(&json!({
                "reduced": normal.to_string(),
                "complexity": normal.mod2_image().len(),
                "feasible": feasible,
                "lower": lower,
            }));
        }
    }
    Ok(())
}

fn map(cli: &Cli, word: &str) -> anyhow::Result<()> {
    let w = parse_pb(cli, word)?;
    let k = cli.k.unwrap_or(3);
    let unreduced = map_pb_unreduced(&w, k)?;
    let image = map_pb(&w, k)?;
    print_json(&json!({
        "n": w.n(),
        "k": k,
        "image": image.to_string(),
        "length": image.len(),
        "unreduced_length": unreduced.len(),
        "even": image.is_even(),
    }));
    Ok(())
}

fn phi(cli: &Cli, word: &str) -> anyhow::Result<()> {
    let w = parse_gnk(cli, word)?;
    let mut out = Vec::new();
    for base in bases(cli, w.context())? {
        let image = base.phi(&w)?;
        out.push(json!({
            "base": base.m().to_string(),
            "psi": base.psi_word(&w).bit_string(),
            "phi": image.to_string(),
            "complexity": image.len(),
        }));
    }
    print_json(&json!(out));
    Ok(())
}

/// File name of a certificate: SHA-256 of the input descriptor.
fn certificate_key(cert: &Certificate) -> String {
    let descriptor = format!("{:?}|n={}|budget={}|{}", cert.input_kind, cert.n, cert.budget, cert.input_word);
    Sha256::digest(descriptor.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn bounds(cli: &Cli, word: &str, timing: bool) -> anyhow::Result<()> {
    let start = Instant::now();
    let mut cert = if is_gnk_text(word) {
        gnk_report(&parse_gnk(cli, word)?, cli.budget)?
    } else {
        unknotting_report(&parse_pb(cli, word)?, cli.budget)?
    };
    if timing {
        cert.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    fs::create_dir_all(&cli.out_dir).with_context(|| format!("creating {}", cli.out_dir.display()))?;
    let path = cli.out_dir.join(format!("{}.json", certificate_key(&cert)));
    let text = cert.to_json();
    fs::write(&path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
    emit(&text);
    eprintln!("certificate written to {}", path.display());
    Ok(())
}

fn verify(cli: &Cli, suite: Suite) -> anyhow::Result<()> {
    let report = run_suite(suite, cli.n.unwrap_or(4), cli.k.unwrap_or(3), cli.seed)?;
    emit(&report.to_json());
    if report.passed() {
        Ok(())
    } else {
        Err(SuiteFailed.into())
    }
}

fn simulate(cli: &Cli, pair: &str, motion: Motion, save: Option<&Path>) -> anyhow::Result<()> {
    let digits: Vec<usize> = pair.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect();
    let [i, j] = digits[..] else {
        return Err(Error::Parse(format!("pair `{pair}` must be two digits")).into());
    };
    let (k, default_n) = match motion {
        Motion::Circle => (3, 4),
        Motion::Parabola => (4, 4),
    };
    let n = cli.n.unwrap_or(default_n.max(j));
    let (traj, word) = match motion {
        Motion::Circle => traced_bij_circle(i, j, n)?,
        Motion::Parabola => traced_bij_parabola(i, j, n)?,
    };
    if let Some(path) = save {
        fs::write(path, traj.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    let generator = PbWord::parse(&format!("b{i}{j}"), n)?;
    let formula = map_pb_unreduced(&generator, k)?;
    let agrees = word.is_even() && same_parity_images(&word, &formula)?;
    print_json(&json!({
        "generator": generator.to_string(),
        "n": n,
        "k": k,
        "traced": word.to_string(),
        "events": word.len(),
        "reduced": word.reduced().to_string(),
        "formula": formula.to_string(),
        "letter_exact": word == formula,
        "parity_images_agree": agrees,
    }));
    Ok(())
}

fn trace_file(path: &Path, kind: Kind) -> anyhow::Result<()> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let traj = Trajectory::from_json(&text)?;
    let kind = match kind {
        Kind::Trisecant => SecantKind::Trisecant,
        Kind::Concyclic => SecantKind::Concyclic,
    };
    emit(&events_json(&trace_events(&traj, kind)?));
    Ok(())
}

fn rats(texts: &[String], count: usize) -> anyhow::Result<Vec<Rat>> {
    if texts.len() != count {
        return Err(Error::Parse(format!("expected {count} numbers, got {}", texts.len())).into());
    }
    Ok(texts.iter().map(|t| parse_rat(t)).collect::<Result<_, _>>()?)
}

fn geometry(cli: &Cli, op: &GeometryOp) -> anyhow::Result<()> {
    match op {
        GeometryOp::Delta { xs } => {
            let x = rats(xs, 4)?;
            let concyclic = concyclic_on_parabola(&x[0], &x[1], &x[2], &x[3])?;
            print_json(&json!({
                "delta": delta_det(&x[0], &x[1], &x[2], &x[3]).to_string(),
                "concyclic": concyclic,
            }));
        }
        GeometryOp::Circle { coords } => {
            let c = rats(coords, 6)?;
            let ((a, b), r2) = circle_through(
                &(c[0].clone(), c[1].clone()),
                &(c[2].clone(), c[3].clone()),
                &(c[4].clone(), c[5].clone()),
            )?;
            print_json(&json!({ "center": [a.to_string(), b.to_string()], "radius_sq": r2.to_string() }));
        }
        GeometryOp::Kappa { tk, tl, tm } => {
            let t = rats(&[tk.clone(), tl.clone(), tm.clone()], 3)?;
            print_json(&json!({ "kappa": slope_kappa(&t[0], &t[1], &t[2])?.to_string() }));
        }
        GeometryOp::Fourth { ti, tj, tk } => {
            let t = rats(&[ti.clone(), tj.clone(), tk.clone()], 3)?;
            print_json(&json!({ "abscissa": fourth_intersection(&t[0], &t[1], &t[2]).to_string() }));
        }
        GeometryOp::Order { j, case } => {
            let n = cli.n.unwrap_or(5);
            let case =
                CircleCase::from_number(*case).ok_or_else(|| Error::Parse(format!("case {case} is not 1, 2 or 3")))?;
            let cfg = growth_sequence_both(n)?;
            let order = crossing_order(&cfg, *j, case)?;
            print_json(&json!({ "n": n, "j": j, "case": case.number(), "order": order }));
        }
        GeometryOp::Growth => {
            let cfg = growth_sequence_both(cli.n.unwrap_or(5))?;
            print_json(&json!({ "t": cfg.params().iter().map(Rat::to_string).collect::<Vec<_>>() }));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse("x".into()).into()), 2);
        assert_eq!(exit_code(&Error::NotEven("a123".into()).into()), 3);
        assert_eq!(exit_code(&SuiteFailed.into()), 1);
        assert_eq!(exit_code(&anyhow::anyhow!("io")), 2);
    }

    #[test]
    fn detects_alphabet() {
        assert!(is_gnk_text("a123 a124"));
        assert!(!is_gnk_text("b12 B13"));
        assert!(!is_gnk_text(""));
    }

    #[test]
    fn base_syntax() {
        let ctx = Context::new(5, 3).unwrap();
        assert_eq!(parse_base("135", ctx).unwrap().m(), &Subset::new([1, 3, 5]).unwrap());
        assert_eq!(parse_base("1,3,5", ctx).unwrap().m(), &Subset::new([1, 3, 5]).unwrap());
        assert!(parse_base("1x", ctx).is_err());
    }
}
