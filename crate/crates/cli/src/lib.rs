//! Command-line frontend. [`run`] parses arguments, performs the
//! computation and returns the exit code together with the rendered
//! output, so the binary and the tests share one code path.

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vstrip_llt::harmonics::{self, SurveyReport};
use vstrip_llt::llt::{self, COLORING_BOUND};
use vstrip_llt::relations::{self, Oracle, RecursionEvaluator, RelationReport, Suite};
use vstrip_llt::schroeder::{enumerate, enumerate_dyck, nu_alpha, p_mu};
use vstrip_llt::schur;
use vstrip_llt::{Basis, BigRational, Error, Partition, SchroederPath, Sym};

/// Version tag of the JSON envelope.
pub const SCHEMA: &str = "vstrip-llt/1";

#[derive(Parser, Debug)]
#[command(name = "llt", version, about = "Vertical-strip LLT polynomials of Schröder paths")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include supporting data (paths, graphs, failing instances).
    #[arg(long, global = true)]
    witness: bool,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Raise the size guard for coloring enumeration.
    #[arg(long, global = true, value_name = "N")]
    unsafe_max_n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count or list Schröder paths of size n.
    Paths {
        n: usize,
        #[arg(long)]
        dyck: bool,
    },
    /// Expand the LLT polynomial of a path.
    Expand {
        word: String,
        #[arg(long, value_enum, default_value = "m")]
        basis: BasisArg,
        /// Substitute q ↦ q + c before printing.
        #[arg(long, allow_hyphen_values = true)]
        shift_q: Option<i64>,
        #[arg(long, value_enum, default_value = "colorings")]
        method: Method,
    },
    /// Check G_P(x; q+1) against the orientation expansion for all paths.
    Equality {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Run relation suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, value_enum)]
        oracle: Option<OracleArg>,
    },
    /// Schur expansion by one of three routes.
    Schur {
        word: String,
        #[arg(long, value_enum, default_value = "elw")]
        method: SchurMethod,
    },
    /// ∇e_n from the shuffle formula.
    NablaE { n: usize },
    /// (-1)^(n-1) ∇p_n from the square-path formula.
    NablaP { n: usize },
    /// Modified Hall–Littlewood function for the conjugate of μ.
    Hl {
        #[arg(required = true)]
        parts: Vec<usize>,
    },
    /// Chromatic quasisymmetric function of a Dyck path.
    Chromatic {
        word: String,
        #[arg(long, value_enum, default_value = "e")]
        basis: BasisArg,
    },
    /// Unimodality and log-concavity of the e-coefficients of G_P(x; q+1).
    Survey {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    M,
    E,
    H,
    P,
    S,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::M => Basis::M,
            BasisArg::E => Basis::E,
            BasisArg::H => Basis::H,
            BasisArg::P => Basis::P,
            BasisArg::S => Basis::S,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Colorings,
    Orientations,
    Recursion,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchurMethod {
    Elw,
    Kostka,
    Convert,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleArg {
    Llt,
    Orientations,
    Recursion,
    Chromatic,
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failed command: exit code and message.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Coeff(_) | Error::NonTermination(_) => 1,
            _ => 2,
        };
        Failure(code, e.to_string())
    }
}

/// What a subcommand produced: its text rendering, JSON payload and
/// whether a checked property held.
struct Rendered {
    text: String,
    params: Value,
    result: Value,
    ok: bool,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let pool = match cli.global.threads {
        Some(0) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: "--threads must be positive\n".into(),
            }
        }
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("{e}\n"),
            }
        }
    };
    let start = Instant::now();
    let result = pool.install(|| execute(&cli));
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(r) => {
            let code = if r.ok { 0 } else { 1 };
            let stdout = if cli.global.json {
                let doc = json!({
                    "schema": SCHEMA,
                    "command": command_name(&cli.command),
                    "params": r.params,
                    "ok": r.ok,
                    "result": r.result,
                    "elapsed_ms": elapsed_ms,
                });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
            } else {
                r.text
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure(code, msg)) => {
            let stdout = if cli.global.json {
                let doc = json!({"schema": SCHEMA, "command": command_name(&cli.command), "ok": false, "error": msg});
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
            } else {
                String::new()
            };
            Outcome {
                code,
                stdout,
                stderr: format!("error: {msg}\n"),
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Paths { .. } => "paths",
        Command::Expand { .. } => "expand",
        Command::Equality { .. } => "equality",
        Command::Verify { .. } => "verify",
        Command::Schur { .. } => "schur",
        Command::NablaE { .. } => "nabla-e",
        Command::NablaP { .. } => "nabla-p",
        Command::Hl { .. } => "hl",
        Command::Chromatic { .. } => "chromatic",
        Command::Survey { .. } => "survey",
    }
}

fn parse_path(word: &str, g: &Global) -> Result<SchroederPath, Failure> {
    let p = SchroederPath::parse(word)?;
    let bound = g.unsafe_max_n.unwrap_or(COLORING_BOUND);
    if p.size() > bound {
        return Err(Error::BoundExceeded {
            what: "path size",
            value: p.size(),
            bound,
        }
        .into());
    }
    Ok(p)
}

fn sym_json(f: &Sym) -> Value {
    serde_json::to_value(f).expect("serializable")
}

fn graph_text(p: &SchroederPath) -> String {
    let g = p.graph();
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            if g.is_strict(a, b) {
                format!("{a}=>{b}")
            } else {
                format!("{a}-{b}")
            }
        })
        .collect();
    format!(
        "graph: {} vertices, area {}, edges {}\n",
        g.n(),
        p.area(),
        edges.join(" ")
    )
}

fn execute(cli: &Cli) -> Result<Rendered, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Paths { n, dyck } => {
            let paths = if *dyck { enumerate_dyck(*n)? } else { enumerate(*n)? };
            let words: Vec<String> = paths.iter().map(SchroederPath::word).collect();
            let mut text = format!("{}\n", words.len());
            if g.witness {
                for w in &words {
                    text.push_str(w);
                    text.push('\n');
                }
            }
            let mut result = json!({"count": words.len()});
            if g.witness {
                result["paths"] = json!(words);
            }
            Ok(Rendered {
                text,
                params: json!({"n": n, "dyck": dyck}),
                result,
                ok: true,
            })
        }
        Command::Expand {
            word,
            basis,
            shift_q,
            method,
        } => {
            let p = parse_path(word, g)?;
            let bound = g.unsafe_max_n.unwrap_or(COLORING_BOUND);
            let f: Sym = match method {
                Method::Colorings => llt::llt_bounded(&p, bound)?,
                Method::Orientations => llt::llt_via_orientations(&p)?,
                Method::Recursion => RecursionEvaluator::new().eval(&p)?,
            };
            let mut f = f.convert((*basis).into());
            if let Some(c) = shift_q {
                f = f.shift_q(*c)?;
            }
            let mut text = format!("{f}\n");
            if g.witness {
                text.push_str(&graph_text(&p));
            }
            let params = json!({
                "word": p.word(),
                "basis": Basis::from(*basis).letter(),
                "shift_q": shift_q,
                "method": format!("{method:?}").to_lowercase(),
            });
            Ok(Rendered {
                text,
                params,
                result: sym_json(&f),
                ok: true,
            })
        }
        Command::Equality { max_n } => equality(*max_n, g.witness),
        Command::Verify { suite, max_n, oracle } => verify(suite, *max_n, *oracle, g.witness),
        Command::Schur { word, method } => {
            let p = parse_path(word, g)?;
            let f: Sym = match method {
                SchurMethod::Elw => schur::elw_schur(&p)?,
                SchurMethod::Kostka => schur::kostka_schur(&p)?,
                SchurMethod::Convert => {
                    llt::llt_bounded::<BigRational>(&p, g.unsafe_max_n.unwrap_or(COLORING_BOUND))?.convert(Basis::S)
                }
            };
            let mut text = format!("{f}\n");
            let mut result = json!({"expansion": sym_json(&f)});
            if g.witness && matches!(method, SchurMethod::Elw) {
                let perms = schur::permutation_colorings(&p)?;
                for (sigma, asc) in &perms {
                    text.push_str(&format!("coloring {sigma:?} asc {asc}\n"));
                }
                result["colorings"] = json!(perms);
            }
            let params = json!({"word": p.word(), "method": format!("{method:?}").to_lowercase()});
            Ok(Rendered {
                text,
                params,
                result,
                ok: true,
            })
        }
        Command::NablaE { n } => {
            let f = harmonics::nabla_e(*n)?;
            let mut text = format!("nabla e_{n} = {f}\n");
            let mut result = json!({"expansion": sym_json(&f), "bounce": "haglund"});
            if g.witness {
                let mut rows = Vec::new();
                for p in enumerate_dyck(*n)? {
                    let (star, b) = (p.dyck_star()?, p.haglund_bounce()?);
                    text.push_str(&format!("{p}  bounce {b}  star {star}\n"));
                    rows.push(json!({"path": p.word(), "bounce": b, "star": star.word()}));
                }
                result["paths"] = json!(rows);
            }
            Ok(Rendered {
                text,
                params: json!({"n": n}),
                result,
                ok: true,
            })
        }
        Command::NablaP { n } => {
            let f = harmonics::nabla_p(*n)?;
            let mut text = format!("(-1)^({n}-1) nabla p_{n} = {f}\n");
            let mut result = json!({"label": format!("(-1)^({n}-1) nabla p_{n}"), "expansion": sym_json(&f)});
            if g.witness {
                let mut rows = Vec::new();
                for alpha in vstrip_llt::partitions::weak_compositions(*n, *n) {
                    let d = nu_alpha(&alpha)?;
                    text.push_str(&format!(
                        "{alpha:?}  area {}  below {}  path {}\n",
                        d.area, d.below, d.path
                    ));
                    rows.push(json!({"alpha": alpha, "area": d.area, "below": d.below, "path": d.path.word()}));
                }
                result["compositions"] = json!(rows);
            }
            Ok(Rendered {
                text,
                params: json!({"n": n}),
                result,
                ok: true,
            })
        }
        Command::Hl { parts } => {
            let mu = Partition::from_unsorted(parts.clone());
            let f = harmonics::hall_littlewood(&mu)?;
            let mut text = format!("H_{} = {f}\n", mu.conjugate());
            let path = p_mu(&mu)?;
            if g.witness {
                text.push_str(&format!("path {path}\n"));
            }
            let result = json!({"conjugate": mu.conjugate(), "path": path.word(), "expansion": sym_json(&f)});
            Ok(Rendered {
                text,
                params: json!({"mu": mu}),
                result,
                ok: true,
            })
        }
        Command::Chromatic { word, basis } => {
            let p = parse_path(word, g)?;
            let f: Sym = llt::chromatic_bounded(&p, g.unsafe_max_n.unwrap_or(COLORING_BOUND))?;
            let f = f.convert((*basis).into());
            let mut text = format!("{f}\n");
            if g.witness {
                text.push_str(&graph_text(&p));
            }
            let params = json!({"word": p.word(), "basis": Basis::from(*basis).letter()});
            Ok(Rendered {
                text,
                params,
                result: sym_json(&f),
                ok: true,
            })
        }
        Command::Survey { max_n } => {
            let r = harmonics::survey_e_coefficients(*max_n)?;
            let text = survey_text(&r, g.witness);
            let mut result = serde_json::to_value(&r).expect("serializable");
            if !g.witness {
                result.as_object_mut().expect("object").remove("entries");
            }
            Ok(Rendered {
                text,
                params: json!({"max_n": max_n}),
                result,
                ok: true,
            })
        }
    }
}

fn survey_text(r: &SurveyReport, witness: bool) -> String {
    let mut text = format!(
        "{} paths, {} coefficients; nonnegative: {}; not unimodal: {}; not log-concave: {}\n",
        r.paths,
        r.entries.len(),
        r.nonnegative,
        r.not_unimodal,
        r.not_log_concave
    );
    for e in &r.entries {
        if witness || !e.unimodal || !e.log_concave {
            text.push_str(&format!(
                "{} e{}: {:?} mode {} unimodal {} log-concave {}\n",
                e.path, e.partition, e.coefficients, e.mode, e.unimodal, e.log_concave
            ));
        }
    }
    text
}

/// Largest size accepted by `equality`.
const EQUALITY_BOUND: usize = 6;

fn equality(max_n: usize, witness: bool) -> Result<Rendered, Failure> {
    if max_n > EQUALITY_BOUND {
        return Err(Error::BoundExceeded {
            what: "max-n",
            value: max_n,
            bound: EQUALITY_BOUND,
        }
        .into());
    }
    use rayon::prelude::*;
    let mut paths = Vec::new();
    for n in 1..=max_n {
        paths.extend(enumerate(n)?);
    }
    let failures: Vec<(String, Sym)> = paths
        .par_iter()
        .map(|p| -> Result<Option<(String, Sym)>, Error> {
            let lhs: Sym = llt::llt::<BigRational>(p)?.shift_q(1)?.convert(Basis::E);
            let rhs: Sym = llt::orientation_e_expansion(p)?;
            let d = &lhs - &rhs;
            Ok((!d.is_zero()).then(|| (p.word(), d)))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let ok = failures.is_empty();
    let mut text = format!(
        "main identity: {} paths (n <= {max_n}), {} failures: {}\n",
        paths.len(),
        failures.len(),
        if ok { "pass" } else { "FAIL" }
    );
    for (w, d) in failures.iter().take(if witness { usize::MAX } else { 1 }) {
        text.push_str(&format!("  {w}: difference {d}\n"));
    }
    let result = json!({
        "paths": paths.len(),
        "failures": failures.iter().map(|(w, d)| json!({"path": w, "discrepancy": sym_json(d)})).collect::<Vec<_>>(),
    });
    Ok(Rendered {
        text,
        params: json!({"max_n": max_n}),
        result,
        ok,
    })
}

fn oracle_for(suite: Suite, choice: Option<OracleArg>) -> Oracle {
    match choice {
        None => suite.default_oracle(),
        Some(OracleArg::Llt) => Oracle::llt(),
        Some(OracleArg::Orientations) => Oracle::orientations(),
        Some(OracleArg::Chromatic) => Oracle::chromatic(),
        Some(OracleArg::Recursion) => {
            let ev = RecursionEvaluator::new();
            Oracle::new("recursion", move |p| ev.eval(p))
        }
    }
}

fn verify(suite: &str, max_n: usize, oracle: Option<OracleArg>, witness: bool) -> Result<Rendered, Failure> {
    let suites: Vec<Suite> = if suite.eq_ignore_ascii_case("all") {
        Suite::REQUIRED.iter().copied().chain([Suite::Chromatic]).collect()
    } else {
        vec![suite.parse::<Suite>().map_err(|e| Failure(2, e))?]
    };
    let mut reports: Vec<RelationReport> = Vec::new();
    for s in &suites {
        // The chromatic suite enumerates proper colorings and stops at 5.
        let n = if *s == Suite::Chromatic && suites.len() > 1 {
            max_n.min(5)
        } else {
            max_n
        };
        reports.push(relations::verify(*s, &oracle_for(*s, oracle), n)?);
    }
    let ok = reports.iter().all(|r| r.passed() || r.suite == Suite::Extended.name());
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{r}\n"));
        let shown = if witness {
            r.failures.len()
        } else {
            r.failures.len().min(1)
        };
        for f in &r.failures[..shown] {
            text.push_str(&format!("  {} {:?} at {:?}", f.kind, f.paths, f.point));
            if let Some(d) = &f.discrepancy {
                text.push_str(&format!(": {d}"));
            }
            if let Some(note) = &f.note {
                text.push_str(&format!(" ({note})"));
            }
            text.push('\n');
        }
    }
    let mut result = json!({"reports": reports});
    if !witness {
        for r in result["reports"].as_array_mut().expect("array") {
            if let Some(fs) = r["failures"].as_array_mut() {
                fs.truncate(1);
            }
        }
    }
    let params = json!({"suite": suite, "max_n": max_n, "oracle": oracle.map(|o| format!("{o:?}").to_lowercase())});
    Ok(Rendered {
        text,
        params,
        result,
        ok,
    })
}
