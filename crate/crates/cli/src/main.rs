//! `bicover`: constructions, verifiers and searches for depth-3 circuits
//! computing `S_n^2` and biclique covers of `K_n`.
//!
//! Exit status: 0 success, 1 verified false (or a search exceeded its
//! `--r-max`), 2 usage or input error, 3 search guard exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bicover::analysis::{
    self, column_equations, extract_vanishing_substitution, gf2_diagnostics, predicted_bounds,
    search_equidistant_system, search_min_circuit_gf2, search_min_cover, search_vanishing_gf2, AnalysisError,
    FieldFamily, SearchOptions, Variant,
};
use bicover::circuits::{
    circuit_from_cover, computes_s2, even_construction, gf2_lift, odd_construction, Circuit, CircuitError,
};
use bicover::covers::{delete_vertex, pairs_construction, star_decomposition, verify_cover, Cover, Mode};
use bicover::fields::{parse_rational, Field, FieldDesc};
use bicover::matrices::{
    good_from_skew, is_good, is_good_for_p, skew_family_power2, symmetric_design_matrix, Congruence, SignMatrix,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bicover", version, about = "Biclique covers of K_n and depth-3 circuits for S_n^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a good (or good-for-p) sign matrix.
    Goodmat(GoodmatArgs),
    /// Build a cover of K_n.
    Cover(CoverArgs),
    /// Build a circuit for S_n^2.
    Circuit(CircuitArgs),
    /// Check a matrix, cover or circuit.
    Verify(VerifyArgs),
    /// Extract a vanishing substitution from a circuit.
    Extract(ExtractArgs),
    /// Exhaustive searches.
    Search(SearchArgs),
    /// Known lower and upper bounds on the gate count.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Out {
    /// Write the artifact here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixConstruction {
    /// F_n − I from the skew family of order n = 2^t.
    Skew2,
    /// Quadratic characters over PG(2, q).
    Design,
}

#[derive(Args)]
struct GoodmatArgs {
    #[arg(long, value_enum)]
    construction: MatrixConstruction,
    /// Order of the skew matrix (power of two, at least 4).
    #[arg(long)]
    n: Option<usize>,
    /// Odd prime power for the design construction.
    #[arg(long)]
    q: Option<u64>,
    /// Build a good-for-p matrix instead of a good one.
    #[arg(long)]
    p: Option<u64>,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct CoverArgs {
    /// Pairs construction from a matrix file.
    #[arg(long, conflicts_with = "star")]
    from_goodmat: Option<PathBuf>,
    /// The star decomposition of K_n.
    #[arg(long)]
    star: Option<usize>,
    /// Delete this vertex afterwards (K_n → K_{n−1}).
    #[arg(long)]
    delete_vertex: Option<usize>,
    #[command(flatten)]
    out: Out,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CircuitConstruction {
    /// k + 1 gates for S_{2k+1}^2.
    Odd,
    /// k gates for S_{2k}^2.
    Even,
    /// One gate per bipartite graph of --cover.
    FromCover,
    /// GF(2) lift of --circuit from S_n^2 to S_{n+1}^2.
    Lift,
}

#[derive(Args)]
struct CircuitArgs {
    #[arg(long, value_enum)]
    construction: CircuitConstruction,
    #[arg(long)]
    k: Option<usize>,
    /// Field: gf<q>, q, or q(d1,d2,..) for Q with square roots adjoined.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    cover: Option<PathBuf>,
    #[arg(long)]
    circuit: Option<PathBuf>,
    /// Re-expand the result and fail unless it computes S_n^2.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, group = "artifact")]
    cover: Option<PathBuf>,
    #[arg(long, group = "artifact")]
    circuit: Option<PathBuf>,
    #[arg(long, group = "artifact")]
    goodmat: Option<PathBuf>,
    /// Multiplicity mode for covers: exact-once, odd, one-mod-<p>.
    #[arg(long, default_value = "odd")]
    mode: Mode,
    /// Size of K_n (defaults to the cover's own n).
    #[arg(long)]
    n: Option<usize>,
    /// Check goodness for p instead of plain goodness.
    #[arg(long)]
    p: Option<u64>,
    /// Include every per-edge count in the report.
    #[arg(long)]
    full: bool,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
#[group(id = "kind", required = true, multiple = false)]
struct SearchKind {
    #[arg(long)]
    min_cover: bool,
    #[arg(long)]
    min_circuit: bool,
    #[arg(long)]
    vanishing_gf2: bool,
    #[arg(long)]
    equidistant: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Even,
    Odd,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    kind: SearchKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "odd")]
    mode: Mode,
    #[arg(long)]
    r_max: Option<usize>,
    /// Only homogeneous forms (--min-circuit).
    #[arg(long)]
    homogeneous: bool,
    #[arg(long)]
    field: Option<String>,
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Resumable checkpoint file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct BoundsArgs {
    /// gf2, gf<q> (q an odd prime power), q, r, c.
    #[arg(long)]
    field: String,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    out: Out,
}

/// A failed run, carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Failure {
        let code = match e {
            AnalysisError::SearchSpaceTooLarge(_) => 3,
            AnalysisError::Exceeded { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Failure {
                usage(e)
            }
        }
    )*};
}
input_error!(CircuitError, bicover::matrices::MatrixError, bicover::covers::CoverError, bicover::fields::FieldError);

/// What a command produced: the artifact, and whether it verified.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Outcome {
        Outcome { json, text, ok: true }
    }
}

fn require<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<SignMatrix, Failure> {
    serde_json::from_value(read_json(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_cover(path: &Path) -> Result<Cover, Failure> {
    Cover::from_json(&read_json(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    Circuit::from_json(&read_json(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// `gf<q>`, `gf(<q>)`, `q`, `rational`, or `q(d1,d2,..)`.
fn parse_field(s: &str) -> Result<Field, Failure> {
    let t = s.trim().to_ascii_lowercase();
    if t == "q" || t == "rational" {
        return Ok(Field::rational());
    }
    if let Some(inner) = t.strip_prefix("q(").and_then(|r| r.strip_suffix(')')) {
        let ds = inner.split(',').map(|d| parse_rational(d.trim())).collect::<Result<Vec<_>, _>>()?;
        return Ok(Field::tower(&ds)?);
    }
    let digits = t
        .strip_prefix("gf(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("gf"))
        .ok_or_else(|| usage(format!("unrecognised field {s:?}")))?;
    let q: u64 = digits.parse().map_err(|_| usage(format!("unrecognised field {s:?}")))?;
    Ok(Field::gf(q)?)
}

fn cover_text(c: &Cover) -> String {
    let mut s = format!("cover of K_{} by {} graphs\n", c.n(), c.graphs().len());
    for g in c.graphs() {
        s += &format!("{g}\n");
    }
    s
}

fn circuit_text(c: &Circuit) -> String {
    let mut s = format!("circuit over {} in {} variables, {} gates\n", c.field(), c.n(), c.gate_count());
    for (i, g) in c.gates().iter().enumerate() {
        let forms: Vec<String> = g.forms.iter().map(|f| format!("({})", f.to_poly())).collect();
        s += &format!("gate {}: {}\n", i + 1, forms.join(" * "));
    }
    s
}

fn goodmat(a: &GoodmatArgs) -> Result<Outcome, Failure> {
    let m = match a.construction {
        MatrixConstruction::Skew2 => good_from_skew(&skew_family_power2(require(a.n, "n")?)?)?,
        MatrixConstruction::Design => {
            let congruence = a.p.map_or(Congruence::OddCover, Congruence::ModP);
            symmetric_design_matrix(require(a.q, "q")?, congruence)?
        }
    };
    Ok(Outcome::ok(serde_json::to_value(&m).expect("matrix serializes"), m.to_text()))
}

fn cover(a: &CoverArgs) -> Result<Outcome, Failure> {
    let mut c = match (&a.from_goodmat, a.star) {
        (Some(path), None) => pairs_construction(&read_matrix(path)?)?,
        (None, Some(n)) => star_decomposition(n)?,
        _ => return Err(usage("give one of --from-goodmat or --star")),
    };
    if let Some(v) = a.delete_vertex {
        c = delete_vertex(&c, v)?;
    }
    Ok(Outcome::ok(c.to_json(), cover_text(&c.sorted())))
}

fn circuit(a: &CircuitArgs) -> Result<Outcome, Failure> {
    let field = || parse_field(&require(a.field.clone(), "field")?);
    let c = match a.construction {
        CircuitConstruction::Odd => odd_construction(require(a.k, "k")?, &field()?)?,
        CircuitConstruction::Even => even_construction(require(a.k, "k")?, &field()?)?,
        CircuitConstruction::FromCover => {
            circuit_from_cover(&read_cover(&require(a.cover.clone(), "cover")?)?, &field()?)
        }
        CircuitConstruction::Lift => gf2_lift(&read_circuit(&require(a.circuit.clone(), "circuit")?)?)?,
    };
    let ok = !a.verify || computes_s2(&c)?.ok;
    Ok(Outcome { json: c.to_json(), text: circuit_text(&c), ok })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    if let Some(path) = &a.cover {
        let c = read_cover(path)?;
        let report = verify_cover(&c, a.n.unwrap_or(c.n()), a.mode);
        let json = report.to_json(a.full);
        let text = format!(
            "{} cover of K_{}: {} ({} violations)\n",
            a.mode,
            a.n.unwrap_or(c.n()),
            if report.ok { "ok" } else { "not ok" },
            report.violations.len()
        );
        return Ok(Outcome { json, text, ok: report.ok });
    }
    if let Some(path) = &a.circuit {
        let c = read_circuit(path)?;
        let check = computes_s2(&c)?;
        let json = json!({ "ok": check.ok, "gates": c.gate_count(), "difference": check.difference.to_json() });
        let text = format!(
            "computes S_{}^2: {}\n",
            c.n(),
            if check.ok { "yes".to_string() } else { format!("no, off by {}", check.difference) }
        );
        return Ok(Outcome { json, text, ok: check.ok });
    }
    if let Some(path) = &a.goodmat {
        let m = read_matrix(path)?;
        let verdict = match a.p {
            Some(p) => is_good_for_p(&m, p)?,
            None => is_good(&m),
        };
        let text = format!("good{}: {}\n", a.p.map(|p| format!(" for {p}")).unwrap_or_default(), verdict.ok);
        return Ok(Outcome { json: serde_json::to_value(&verdict).expect("verdict serializes"), text, ok: verdict.ok });
    }
    Err(usage("give one of --cover, --circuit or --goodmat"))
}

fn extract(a: &ExtractArgs) -> Result<Outcome, Failure> {
    let c = read_circuit(&a.circuit)?;
    let s = extract_vanishing_substitution(&c)?;
    let eqs = column_equations(&s);
    let mut json = json!({
        "substitution": s.to_json(),
        "equations": serde_json::to_value(&eqs).expect("report serializes"),
    });
    let mut text = format!("substitution: n = {}, r = {}, {} free variables\n", s.n(), s.r(), s.free());
    for i in 0..s.r() {
        text += &format!("l{} = {}\n", i + 1, s.form(i));
    }
    text += &format!("column equations hold: {}\n", eqs.ok);
    if *s.field().desc() == (FieldDesc::Prime { p: 2 }) {
        let d = gf2_diagnostics(&s)?;
        text += &format!("weights mod 4: {:?}; s = {}, t = {}; diagnostics ok: {}\n", d.weights_mod4, d.s, d.t, d.ok());
        json["gf2"] = serde_json::to_value(&d).expect("diagnostics serialize");
    }
    Ok(Outcome { json, text, ok: eqs.ok })
}

fn search(a: &SearchArgs) -> Result<Outcome, Failure> {
    let opts = SearchOptions {
        workers: a.workers,
        checkpoint: a.checkpoint.clone(),
        lift_guards: analysis::guards_overridden(),
    };
    let k = &a.kind;
    if k.min_cover {
        let n = require(a.n, "n")?;
        let r_max = a.r_max.unwrap_or(n.saturating_sub(1));
        let (r, c) = search_min_cover(n, a.mode, r_max, &opts)?;
        let json =
            json!({ "search": "min-cover", "n": n, "mode": a.mode.to_string(), "min": r, "witness": c.to_json() });
        return Ok(Outcome::ok(json, format!("{r}\n")));
    }
    if k.min_circuit {
        let n = require(a.n, "n")?;
        let r_max = a.r_max.unwrap_or(3);
        let (r, c) = search_min_circuit_gf2(n, r_max, a.homogeneous, &opts)?;
        let json = json!({
            "search": "min-circuit-gf2", "n": n, "homogeneous": a.homogeneous, "min": r, "witness": c.to_json()
        });
        return Ok(Outcome::ok(json, format!("{r}\n")));
    }
    if k.vanishing_gf2 {
        let (n, r) = (require(a.n, "n")?, require(a.r, "r")?);
        let found = search_vanishing_gf2(n, r, &opts)?;
        let json = json!({
            "search": "vanishing-gf2", "n": n, "r": r,
            "found": found.is_some(), "witness": found.as_ref().map(|s| s.to_json()),
        });
        let text = if found.is_some() { "found\n" } else { "not-found\n" };
        return Ok(Outcome::ok(json, text.into()));
    }
    let kk = require(a.k, "k")?;
    let field = parse_field(&require(a.field.clone(), "field")?)?;
    let variant = match require(a.variant, "variant")? {
        VariantArg::Even => Variant::Even,
        VariantArg::Odd => Variant::Odd,
    };
    let found = search_equidistant_system(kk, &field, variant, &opts)?;
    let json = json!({
        "search": "equidistant", "k": kk, "field": field.to_json(), "variant": variant.to_string(),
        "found": found.is_some(), "witness": found.as_ref().map(|s| s.to_json()),
    });
    let text = if found.is_some() { "found\n" } else { "not-found\n" };
    Ok(Outcome::ok(json, text.into()))
}

fn bounds(a: &BoundsArgs) -> Result<Outcome, Failure> {
    let family: FieldFamily = a.field.parse()?;
    let e = predicted_bounds(family, a.n);
    let best = e.best_upper();
    let text = format!(
        "{} n = {}: lower {} ({:?}), upper {} ({:?}, {:?})\n",
        e.family, e.n, e.lower.value, e.lower.model, best.value, best.model, best.applicability
    );
    Ok(Outcome::ok(serde_json::to_value(&e).expect("bounds serialize"), text))
}

fn emit(out: &Out, default: Format, o: &Outcome) -> Result<(), Failure> {
    let body = match out.format.unwrap_or(default) {
        Format::Json => serde_json::to_string_pretty(&o.json).expect("JSON serializes") + "\n",
        Format::Text => o.text.clone(),
    };
    match &out.output {
        Some(path) => fs::write(path, body).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let (outcome, out, default) = match &cli.command {
        Command::Goodmat(a) => (goodmat(a)?, &a.out, Format::Json),
        Command::Cover(a) => (cover(a)?, &a.out, Format::Json),
        Command::Circuit(a) => (circuit(a)?, &a.out, Format::Json),
        Command::Verify(a) => (verify(a)?, &a.out, Format::Text),
        Command::Extract(a) => (extract(a)?, &a.out, Format::Json),
        Command::Search(a) => (search(a)?, &a.out, Format::Text),
        Command::Bounds(a) => (bounds(a)?, &a.out, Format::Json),
    };
    emit(out, default, &outcome)?;
    Ok(outcome.ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("bicover: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
