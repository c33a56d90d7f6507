//! Command-line front end for `circuit-feas`.
//!
//! [`run`] takes the argument list and I/O handles and returns the process
//! exit code: 0 when a result was produced, 1 when an oracle cross-check
//! disagrees with the decision, 2 for malformed input, 3 when the input is
//! outside the supported sparsity or a resource cap was hit.

pub mod formats;

use std::io::{Read, Write};
use std::path::PathBuf;

use circuit_feas::circuit::{
    adisc_sign, adisc_vanishes, classify_circuit, CircuitKind, DiscriminantSign,
};
use circuit_feas::feasibility::{
    decide_with, Certificate, DecideOptions, Domain, FeasibilityVerdict,
};
use circuit_feas::lattice::reduce_to_honest;
use circuit_feas::oracle::{grid_sample, OracleVerdict, Witness};
use circuit_feas::reductions::{build_fb, build_fb_system, build_gb, build_hb};
use circuit_feas::{parse_polynomial, BigInt, BigRational, Error, SparsePolynomial};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use formats::{parse_dimacs, parse_json_poly, parse_rational, JsonPoly};

pub const SCHEMA: &str = "circuit-feas/1";

#[derive(Parser, Debug)]
#[command(
    name = "circuit-feas",
    version,
    about = "Exact real feasibility for sparse integer polynomials"
)]
struct Cli {
    /// Input format of the polynomial.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: InputFormat,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the orthant and subspace enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Most variables an orthant or subspace enumeration may range over.
    #[arg(long = "cap-n", global = true, default_value_t = 12)]
    cap_n: usize,
    /// Largest padding block `M` the SAT encodings may create.
    #[arg(long = "cap-M", global = true, default_value_t = 4096)]
    cap_m: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the polynomial has a root in the chosen domain.
    Feas {
        #[arg(long, value_enum, default_value = "positive")]
        domain: DomainArg,
        /// Cross-check against grid sampling (at most 4 variables).
        #[arg(long)]
        oracle: bool,
        input: Option<PathBuf>,
    },
    /// Vanishing or sign of the circuit discriminant.
    Disc {
        #[arg(long, value_enum, default_value = "vanish")]
        mode: Mode,
        /// Report `Undefined` unless all sign(b_i c_i) agree.
        #[arg(long)]
        geometric: bool,
        input: Option<PathBuf>,
    },
    /// Circuit vector and kind of the support.
    Classify { input: Option<PathBuf> },
    /// Rewrite as an honest polynomial by a monomial change of variables.
    Reduce { input: Option<PathBuf> },
    /// Polynomial encodings of a 3-CNF formula in DIMACS form.
    Sat2poly {
        #[arg(long, value_enum, default_value = "gb")]
        target: Target,
        #[arg(long, default_value = "1")]
        epsilon: String,
        input: Option<PathBuf>,
    },
    /// Compare the positive-orthant decision with grid sampling.
    OracleCheck {
        #[arg(long = "per-axis", default_value_t = 9)]
        per_axis: usize,
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DomainArg {
    Positive,
    Nonzero,
    Real,
}

impl DomainArg {
    fn domain(self) -> Domain {
        match self {
            DomainArg::Positive => Domain::PositiveOrthant,
            DomainArg::Nonzero => Domain::NonzeroOrthants,
            DomainArg::Real => Domain::AllReal,
        }
    }

    fn name(self) -> &'static str {
        match self {
            DomainArg::Positive => "positive",
            DomainArg::Nonzero => "nonzero",
            DomainArg::Real => "real",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Vanish,
    Sign,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    #[value(name = "fb")]
    FbPoly,
    #[value(name = "gb")]
    Gb,
    #[value(name = "hb")]
    Hb,
    #[value(name = "FB")]
    FbSystem,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedSparsity { .. } | Error::ResourceLimit(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Runs the tool. `args` includes the program name.
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    // Worker threads need a `Send` reader, so stdin is buffered up front.
    let mut buffered = Vec::new();
    if uses_stdin(&cli.command) {
        if let Err(e) = stdin.read_to_end(&mut buffered) {
            let _ = writeln!(stderr, "error: stdin: {e}");
            return 2;
        }
    }
    let stdin = &mut &buffered[..];
    let result = match cli.jobs {
        Some(k) => match rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
        {
            Ok(pool) => pool.install(|| execute(&cli, stdin)),
            Err(e) => Err(input_error(format!("cannot start {k} worker threads: {e}"))),
        },
        None => execute(&cli, stdin),
    };
    match result {
        Ok((code, out)) => {
            let _ = stdout.write_all(out.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn uses_stdin(c: &Command) -> bool {
    let input = match c {
        Command::Feas { input, .. }
        | Command::Disc { input, .. }
        | Command::Classify { input }
        | Command::Reduce { input }
        | Command::Sat2poly { input, .. }
        | Command::OracleCheck { input, .. } => input,
    };
    input.as_ref().is_none_or(|p| p.as_os_str() == "-")
}

fn read_input(path: &Option<PathBuf>, stdin: &mut &[u8]) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| input_error(format!("{}: {e}", p.display())))?;
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| input_error(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_poly(
    cli: &Cli,
    path: &Option<PathBuf>,
    stdin: &mut &[u8],
) -> Result<SparsePolynomial, Failure> {
    let text = read_input(path, stdin)?;
    match cli.format {
        InputFormat::Text => {
            parse_polynomial(text.trim_end()).map_err(|e| input_error(e.to_string()))
        }
        InputFormat::Json => {
            // Also accept the wrapped output of `sat2poly --json`.
            let direct = parse_json_poly(&text);
            if direct.is_ok() {
                return direct.map_err(input_error);
            }
            let wrapped = serde_json::from_str::<Value>(&text)
                .ok()
                .and_then(|v| v.get("polynomial").cloned())
                .map(|p| parse_json_poly(&p.to_string()));
            match wrapped {
                Some(r) => r.map_err(input_error),
                None => direct.map_err(input_error),
            }
        }
    }
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn ordering_name(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "less",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "greater",
    }
}

fn sign_name(s: DiscriminantSign) -> &'static str {
    match s {
        DiscriminantSign::Negative => "Negative",
        DiscriminantSign::Zero => "Zero",
        DiscriminantSign::Positive => "Positive",
        DiscriminantSign::Undefined => "Undefined",
    }
}

fn kind_name(k: CircuitKind) -> &'static str {
    match k {
        CircuitKind::NonDegenerateCircuit => "NonDegenerateCircuit",
        CircuitKind::DegenerateCircuit => "DegenerateCircuit",
        CircuitKind::NotHonest => "NotHonest",
    }
}

fn certificate_json(c: &Certificate) -> Value {
    let mut m = Map::new();
    if let Some(ell) = c.ell {
        m.insert("ell".into(), json!(ell));
    }
    if let Some(b) = &c.b {
        m.insert("b".into(), ints(b));
    }
    if let Some(beta) = &c.beta {
        m.insert("beta".into(), json!(beta.to_string()));
    }
    if let Some(j) = c.interior_index {
        m.insert("interior_index".into(), json!(j));
    }
    if let Some(o) = c.comparison {
        m.insert("comparison".into(), json!(ordering_name(o)));
    }
    if let Some(s) = &c.compare_stats {
        m.insert("precision_bits".into(), json!(s.bits));
    }
    if let Some(d) = c.discriminant {
        m.insert("discriminant".into(), json!(sign_name(d)));
    }
    if let Some(o) = &c.orthant {
        m.insert("orthant".into(), json!(o));
    }
    if let Some(r) = &c.restricted {
        m.insert(
            "restricted".into(),
            json!(r.iter().map(|k| k + 1).collect::<Vec<_>>()),
        );
    }
    if let Some(d) = c.reduced_dimension {
        m.insert("reduced_dimension".into(), json!(d));
    }
    Value::Object(m)
}

fn with_schema(command: &str, mut body: Map<String, Value>) -> Value {
    body.insert("schema".into(), json!(SCHEMA));
    body.insert("command".into(), json!(command));
    Value::Object(body)
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn point_json(p: &[BigRational]) -> Value {
    Value::Array(p.iter().map(|x| json!(x.to_string())).collect())
}

fn oracle_json(v: &OracleVerdict) -> Value {
    match v {
        OracleVerdict::FeasibleWitness(Witness::Zero(p)) => {
            json!({"outcome": "FeasibleWitness", "zero": point_json(p)})
        }
        OracleVerdict::FeasibleWitness(Witness::SignChange(p, q)) => {
            json!({"outcome": "FeasibleWitness", "positive_at": point_json(p), "negative_at": point_json(q)})
        }
        OracleVerdict::InfeasibleExhausted => json!({"outcome": "InfeasibleExhausted"}),
        OracleVerdict::Inconclusive => json!({"outcome": "Inconclusive"}),
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Grid sampling over boxes inside the requested domain.
fn oracle_for(
    f: &SparsePolynomial,
    domain: Domain,
    per_axis: usize,
) -> Result<OracleVerdict, Error> {
    let n = f.nvars();
    let pos = (rat(1, 16), rat(16, 1));
    let neg = (rat(-16, 1), rat(-1, 16));
    match domain {
        Domain::PositiveOrthant => grid_sample(f, &vec![pos; n], per_axis),
        Domain::AllReal => grid_sample(f, &vec![(rat(-16, 1), rat(16, 1)); n], per_axis),
        Domain::NonzeroOrthants => {
            if n > 4 {
                return grid_sample(f, &vec![pos; n], per_axis);
            }
            for mask in 0..1u32 << n {
                let bounds: Vec<_> = (0..n)
                    .map(|k| {
                        if mask >> k & 1 == 1 {
                            neg.clone()
                        } else {
                            pos.clone()
                        }
                    })
                    .collect();
                if let v @ OracleVerdict::FeasibleWitness(_) = grid_sample(f, &bounds, per_axis)? {
                    return Ok(v);
                }
            }
            Ok(OracleVerdict::Inconclusive)
        }
    }
}

fn consistent(v: &FeasibilityVerdict, o: &OracleVerdict) -> bool {
    match o {
        OracleVerdict::FeasibleWitness(_) => v.feasible,
        OracleVerdict::InfeasibleExhausted => !v.feasible,
        OracleVerdict::Inconclusive => true,
    }
}

fn execute(cli: &Cli, stdin: &mut &[u8]) -> Result<(i32, String), Failure> {
    let opts = DecideOptions { cap_n: cli.cap_n };
    match &cli.command {
        Command::Feas {
            domain,
            oracle,
            input,
        } => {
            let f = read_poly(cli, input, stdin)?;
            let v = decide_with(&f, domain.domain(), &opts)?;
            let mut code = 0;
            let mut body = Map::new();
            body.insert("domain".into(), json!(domain.name()));
            body.insert("feasible".into(), json!(v.feasible));
            body.insert("rule".into(), json!(v.rule.name()));
            body.insert("certificate".into(), certificate_json(&v.certificate));
            body.insert(
                "topology_note".into(),
                json!(v.topology_note.map(|t| t.name())),
            );
            if *oracle {
                let o = oracle_for(&f, domain.domain(), 9)?;
                let ok = consistent(&v, &o);
                if !ok {
                    code = 1;
                }
                let mut oj = oracle_json(&o);
                oj["consistent"] = json!(ok);
                body.insert("oracle".into(), oj);
            }
            let out = if cli.json {
                render_json(&with_schema("feas", body))
            } else {
                let mut s = format!(
                    "{} over the {} domain\nrule: {}\n",
                    if v.feasible { "feasible" } else { "infeasible" },
                    domain.name(),
                    v.rule.name()
                );
                if let Some(t) = v.topology_note {
                    s += &format!("topology: {}\n", t.name());
                }
                if let Value::Object(c) = certificate_json(&v.certificate) {
                    for (k, val) in c {
                        s += &format!("{k}: {val}\n");
                    }
                }
                if let Some(o) = body.get("oracle") {
                    s += &format!("oracle: {o}\n");
                }
                s
            };
            Ok((code, out))
        }
        Command::Disc {
            mode,
            geometric,
            input,
        } => {
            let f = read_poly(cli, input, stdin)?;
            let (key, val) = match mode {
                Mode::Vanish => ("vanishes", json!(adisc_vanishes(&f)?)),
                Mode::Sign => ("sign", json!(sign_name(adisc_sign(&f, *geometric)?))),
            };
            let out = if cli.json {
                let mut body = Map::new();
                body.insert(key.into(), val);
                render_json(&with_schema("disc", body))
            } else {
                format!(
                    "{key}: {}\n",
                    val.as_str()
                        .map(str::to_string)
                        .unwrap_or_else(|| val.to_string())
                )
            };
            Ok((0, out))
        }
        Command::Classify { input } => {
            let f = read_poly(cli, input, stdin)?;
            let c = classify_circuit(&f.support())?;
            let mut body = Map::new();
            body.insert("kind".into(), json!(kind_name(c.kind)));
            body.insert("b".into(), ints(&c.b));
            body.insert("beta".into(), json!(c.beta.to_string()));
            body.insert("subcircuit".into(), json!(c.subcircuit));
            body.insert("interior_index".into(), json!(c.interior_index));
            let out = if cli.json {
                render_json(&with_schema("classify", body))
            } else {
                let b: Vec<String> = c.b.iter().map(ToString::to_string).collect();
                format!(
                    "kind: {}\nb: [{}]\nbeta: {}\nsubcircuit: {:?}\ninterior_index: {}\n",
                    kind_name(c.kind),
                    b.join(", "),
                    c.beta,
                    c.subcircuit,
                    c.interior_index
                        .map_or("none".to_string(), |j| j.to_string())
                )
            };
            Ok((0, out))
        }
        Command::Reduce { input } => {
            let f = read_poly(cli, input, stdin)?;
            let r = reduce_to_honest(&f)?;
            let u = r.u.as_matrix().to_rows();
            let out = if cli.json {
                let mut body = Map::new();
                body.insert("d".into(), json!(r.dimension));
                body.insert(
                    "g".into(),
                    serde_json::to_value(JsonPoly::from_poly(&r.g)).expect("serializable"),
                );
                body.insert(
                    "u".into(),
                    Value::Array(u.iter().map(|row| ints(row)).collect()),
                );
                body.insert("base".into(), json!(r.base.0));
                render_json(&with_schema("reduce", body))
            } else {
                let rows: Vec<String> = u
                    .iter()
                    .map(|row| {
                        format!(
                            "[{}]",
                            row.iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                                .join(", ")
                        )
                    })
                    .collect();
                format!("d: {}\ng: {}\nU: [{}]\n", r.dimension, r.g, rows.join(", "))
            };
            Ok((0, out))
        }
        Command::Sat2poly {
            target,
            epsilon,
            input,
        } => {
            let text = read_input(input, stdin)?;
            let inst = parse_dimacs(&text).map_err(input_error)?;
            let eps = parse_rational(epsilon).map_err(input_error)?;
            let single = match target {
                Target::FbPoly => Some(build_fb(&inst, &eps, cli.cap_m)?),
                Target::Gb => Some(build_gb(&inst, &eps, cli.cap_m)?),
                Target::Hb => Some(build_hb(&inst, &eps, cli.cap_m)?),
                Target::FbSystem => None,
            };
            let target_name = match target {
                Target::FbPoly => "fb",
                Target::Gb => "gb",
                Target::Hb => "hb",
                Target::FbSystem => "FB",
            };
            let out = match (single, cli.json) {
                (Some(p), true) => {
                    let mut body = Map::new();
                    body.insert("target".into(), json!(target_name));
                    body.insert(
                        "polynomial".into(),
                        serde_json::to_value(JsonPoly::from_poly(&p)).expect("serializable"),
                    );
                    render_json(&with_schema("sat2poly", body))
                }
                (Some(p), false) => format!("{p}\n"),
                (None, json_out) => {
                    let sys = build_fb_system(&inst)?;
                    if json_out {
                        let mut body = Map::new();
                        body.insert("target".into(), json!(target_name));
                        body.insert("nvars".into(), json!(sys.nvars));
                        body.insert(
                            "polynomials".into(),
                            Value::Array(
                                sys.polynomials
                                    .iter()
                                    .map(|p| {
                                        serde_json::to_value(JsonPoly::from_poly(p))
                                            .expect("serializable")
                                    })
                                    .collect(),
                            ),
                        );
                        render_json(&with_schema("sat2poly", body))
                    } else {
                        sys.polynomials.iter().map(|p| format!("{p}\n")).collect()
                    }
                }
            };
            Ok((0, out))
        }
        Command::OracleCheck { per_axis, input } => {
            let f = read_poly(cli, input, stdin)?;
            let v = decide_with(&f, Domain::PositiveOrthant, &opts)?;
            let o = oracle_for(&f, Domain::PositiveOrthant, *per_axis)?;
            let ok = consistent(&v, &o);
            let out = if cli.json {
                let mut body = Map::new();
                body.insert("feasible".into(), json!(v.feasible));
                body.insert("rule".into(), json!(v.rule.name()));
                body.insert("oracle".into(), oracle_json(&o));
                body.insert("consistent".into(), json!(ok));
                render_json(&with_schema("oracle-check", body))
            } else {
                format!(
                    "decision: {} ({})\noracle: {}\nconsistent: {ok}\n",
                    if v.feasible { "feasible" } else { "infeasible" },
                    v.rule.name(),
                    oracle_json(&o)
                )
            };
            Ok((if ok { 0 } else { 1 }, out))
        }
    }
}
