use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use xorideal::gf2::{assemble, rref, RrefOutcome};
use xorideal::grlexconv::{convert, convert_with_trace, TruncatedBasis};
use xorideal::imp::{basis_for_outcome, decide_with_basis, ImpError};
use xorideal::lexgb::{build_g1, g1_polynomials, LexError, DEFAULT_EXPANSION_CAP};
use xorideal::oracle::{cross_check, random_feasible_instance, seeded_rng, OracleError, RandomParams};
use xorideal::{ConvError, Gf2Error, Instance, PolyError, Polynomial};

#[derive(Parser)]
#[command(name = "xorideal", version, about = "Degree-bounded ideal membership for XOR constraint systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report whether the instance has a solution.
    Feasible(Common),
    /// Print the lex Gröbner basis read off the echelon form.
    GbLex(Common),
    /// Print the degree-truncated grlex basis and its standard monomials.
    GbGrlex(Common),
    /// Print the remainder of --poly modulo the truncated basis.
    Reduce(Common),
    /// Decide membership of --poly; exit 1 if it is not a member.
    Member(Common),
    /// Compare the conversion with a Buchberger run (small instances only).
    Verify(Common),
    /// Print one line per processed candidate monomial.
    Trace(Common),
}

#[derive(Args)]
struct Common {
    /// Instance file; omitted for `verify --seed`.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Degree bound d (defaults to 2 for `verify`).
    #[arg(long)]
    degree: Option<u32>,
    /// Query polynomial, inline or as a path to a file holding it.
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for `verify` without --instance: draws a random feasible instance.
    #[arg(long)]
    seed: Option<u64>,
    /// Variable count of the random instance drawn by `verify --seed`.
    #[arg(long, default_value_t = 8)]
    vars: usize,
    /// Largest XOR support expanded into an explicit polynomial.
    #[arg(long, default_value_t = DEFAULT_EXPANSION_CAP)]
    cap: usize,
    /// For `gb-lex`: also print the expanded polynomials.
    #[arg(long)]
    expand: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Parse(String),
    Resource(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<Gf2Error> for CliError {
    fn from(e: Gf2Error) -> Self {
        match e {
            Gf2Error::ScopeOutOfRange { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Parse { .. } => CliError::Parse(e.to_string()),
            PolyError::ResourceLimit(_) => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<LexError> for CliError {
    fn from(e: LexError) -> Self {
        CliError::Resource(e.to_string())
    }
}

impl From<ConvError> for CliError {
    fn from(e: ConvError) -> Self {
        match e {
            ConvError::InvalidDegree => CliError::Usage(e.to_string()),
            _ => CliError::Resource(e.to_string()),
        }
    }
}

impl From<ImpError> for CliError {
    fn from(e: ImpError) -> Self {
        match e {
            ImpError::Instance(e) => e.into(),
            ImpError::Conversion(e) => e.into(),
            ImpError::Poly(e) => e.into(),
            ImpError::DegreeTooHigh { .. } | ImpError::InvalidDegree => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Instance(e) => e.into(),
            OracleError::Conversion(e) => e.into(),
            OracleError::Expansion(e) => e.into(),
            OracleError::Poly(e) => e.into(),
            OracleError::TooLarge { .. } => CliError::Resource(e.to_string()),
        }
    }
}

/// What a command produced: text lines, a JSON result, and the exit status.
struct Outcome {
    text: Vec<String>,
    result: Value,
    status: u8,
}

impl Outcome {
    fn ok(text: Vec<String>, result: Value) -> Self {
        Self { text, result, status: 0 }
    }
}

struct Inputs {
    instance: Instance,
    digest_source: Vec<u8>,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(args: &Common) -> Result<Inputs, CliError> {
    let path = args
        .instance
        .as_ref()
        .ok_or_else(|| CliError::Usage("--instance is required".into()))?;
    let text = read_file(path)?;
    let instance: Instance = text.parse()?;
    Ok(Inputs {
        instance,
        digest_source: text.into_bytes(),
    })
}

fn require_degree(args: &Common) -> Result<u32, CliError> {
    match args.degree {
        None => Err(CliError::Usage("--degree is required".into())),
        Some(0) => Err(CliError::Usage("--degree must be at least 1".into())),
        Some(d) => Ok(d),
    }
}

fn load_poly(args: &Common, digest: &mut Vec<u8>) -> Result<Polynomial, CliError> {
    let raw = args
        .poly
        .as_ref()
        .ok_or_else(|| CliError::Usage("--poly is required".into()))?;
    let text = if Path::new(raw).is_file() {
        read_file(Path::new(raw))?
    } else {
        raw.clone()
    };
    digest.push(0);
    digest.extend_from_slice(text.as_bytes());
    Ok(text.trim().parse()?)
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(T::to_string).collect()
}

fn basis_text(basis: &TruncatedBasis) -> Vec<String> {
    let mut out = vec!["G2:".to_string()];
    out.extend(basis.elements.iter().map(|g| format!("  {g}")));
    out.push(format!("B(G2): {}", strings(&basis.standard_monomials).join(", ")));
    out
}

fn run(command: &Command, inputs_digest: &mut Vec<u8>) -> Result<Outcome, CliError> {
    match command {
        Command::Feasible(args) => {
            let inputs = load_instance(args)?;
            *inputs_digest = inputs.digest_source;
            match rref(&assemble(&inputs.instance)?) {
                RrefOutcome::Feasible(sys) => Ok(Outcome::ok(
                    vec!["SAT".into()],
                    json!({"feasible": true, "rank": sys.pivots.len(), "free_vars": sys.free_vars}),
                )),
                RrefOutcome::Infeasible => Ok(Outcome::ok(
                    vec!["UNSAT".into(), "reduced Gröbner basis: {1}".into()],
                    json!({"feasible": false, "basis": ["1"]}),
                )),
            }
        }
        Command::GbLex(args) => {
            let inputs = load_instance(args)?;
            *inputs_digest = inputs.digest_source;
            let Some(sys) = rref(&assemble(&inputs.instance)?).feasible() else {
                return Ok(Outcome::ok(vec!["1".into()], json!({"feasible": false, "basis": ["1"]})));
            };
            let g1 = build_g1(&sys);
            let mut text: Vec<String> = g1.pivot_rows().map(|(p, f)| format!("x{p} = {f}")).collect();
            let free: Vec<String> = g1.free_vars().iter().map(|v| format!("x{v}")).collect();
            text.push(format!("free: {}", free.join(" ")));
            let pivots: Vec<Value> = g1
                .pivot_rows()
                .map(|(p, f)| json!({"var": p, "function": f.to_string()}))
                .collect();
            let mut result = json!({"feasible": true, "pivots": pivots, "free_vars": g1.free_vars()});
            if args.expand {
                let polys = g1_polynomials(&g1, args.cap)?;
                text.push("expanded:".into());
                text.extend(polys.iter().map(|g| format!("  {}", g.display_in(xorideal::MonomialOrder::Lex))));
                result["polynomials"] = json!(strings(&polys));
            }
            Ok(Outcome::ok(text, result))
        }
        Command::GbGrlex(args) => {
            let d = require_degree(args)?;
            let inputs = load_instance(args)?;
            *inputs_digest = inputs.digest_source;
            let basis = basis_for_outcome(&rref(&assemble(&inputs.instance)?), d)?;
            let result = json!({
                "degree": d,
                "elements": strings(&basis.elements),
                "standard_monomials": strings(&basis.standard_monomials),
            });
            Ok(Outcome::ok(basis_text(&basis), result))
        }
        Command::Reduce(args) | Command::Member(args) => {
            let d = require_degree(args)?;
            let inputs = load_instance(args)?;
            let mut digest = inputs.digest_source;
            let f = load_poly(args, &mut digest)?;
            *inputs_digest = digest;
            let basis = basis_for_outcome(&rref(&assemble(&inputs.instance)?), d)?;
            let v = decide_with_basis(&basis, &f)?;
            let result = json!({
                "member": v.member,
                "remainder": v.remainder.to_string(),
                "basis_size": v.basis_size,
                "infeasible_instance": v.infeasible_instance,
            });
            if matches!(command, Command::Reduce(_)) {
                return Ok(Outcome::ok(vec![v.remainder.to_string()], result));
            }
            let verdict = if v.member { "member" } else { "not a member" };
            Ok(Outcome {
                text: vec![verdict.into(), format!("remainder: {}", v.remainder)],
                result,
                status: if v.member { 0 } else { 1 },
            })
        }
        Command::Verify(args) => {
            let d = args.degree.unwrap_or(2);
            if d == 0 {
                return Err(CliError::Usage("--degree must be at least 1".into()));
            }
            let instance = match (&args.instance, args.seed) {
                (Some(_), _) => {
                    let inputs = load_instance(args)?;
                    *inputs_digest = inputs.digest_source;
                    inputs.instance
                }
                (None, Some(seed)) => {
                    if args.vars == 0 || args.vars > 12 {
                        return Err(CliError::Usage("--vars must be in 1..=12".into()));
                    }
                    let params = RandomParams {
                        n: args.vars,
                        rows: args.vars / 2 + 1,
                        max_support: 4,
                    };
                    let inst = random_feasible_instance(&mut seeded_rng(seed), params);
                    *inputs_digest = inst.to_string().into_bytes();
                    inst
                }
                (None, None) => return Err(CliError::Usage("verify needs --instance or --seed".into())),
            };
            let mut report = cross_check(&instance, d)?;
            report.seed = args.seed;
            let mut text = vec![if report.matched { "match".into() } else { "MISMATCH".into() }];
            text.extend(report.missing.iter().map(|g| format!("missing: {g}")));
            text.extend(report.extra.iter().map(|g| format!("extra: {g}")));
            let status = if report.matched { 0 } else { 1 };
            let result = serde_json::to_value(&report).expect("report serializes");
            Ok(Outcome { text, result, status })
        }
        Command::Trace(args) => {
            let d = require_degree(args)?;
            let inputs = load_instance(args)?;
            *inputs_digest = inputs.digest_source;
            let Some(sys) = rref(&assemble(&inputs.instance)?).feasible() else {
                return Ok(Outcome::ok(
                    vec!["infeasible: basis {1}".into()],
                    json!({"feasible": false, "lines": []}),
                ));
            };
            let (basis, lines) = convert_with_trace(&build_g1(&sys), d)?;
            debug_assert_eq!(basis, convert(&build_g1(&sys), d)?);
            let result = json!({"feasible": true, "lines": lines});
            Ok(Outcome::ok(lines, result))
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Feasible(_) => "feasible",
        Command::GbLex(_) => "gb-lex",
        Command::GbGrlex(_) => "gb-grlex",
        Command::Reduce(_) => "reduce",
        Command::Member(_) => "member",
        Command::Verify(_) => "verify",
        Command::Trace(_) => "trace",
    }
}

fn format_of(command: &Command) -> Format {
    match command {
        Command::Feasible(a)
        | Command::GbLex(a)
        | Command::GbGrlex(a)
        | Command::Reduce(a)
        | Command::Member(a)
        | Command::Verify(a)
        | Command::Trace(a) => a.format,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let mut digest_source = Vec::new();
    match run(&cli.command, &mut digest_source) {
        Ok(outcome) => {
            match format_of(&cli.command) {
                Format::Text => {
                    for line in &outcome.text {
                        println!("{line}");
                    }
                }
                Format::Json => {
                    let doc = json!({
                        "command": command_name(&cli.command),
                        "input_digest": hex::encode(Sha256::digest(&digest_source)),
                        "result": outcome.result,
                        "timings_ms": start.elapsed().as_secs_f64() * 1e3,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("json serializes"));
                }
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
