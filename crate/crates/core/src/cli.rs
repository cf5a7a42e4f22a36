//! Command-line driver.

use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chevalley::build_chevalley;
use crate::error::Error;
use crate::integral::IntegralForm;
use crate::integral_verify::{
    verify_integral_basis, verify_lambda_reduce, verify_prop_arrange, verify_prop_generators,
    verify_prop_repeat, Bounds,
};
use crate::multiloop::LoopAlgebra;
use crate::parse::{parse_element, parse_generators};
use crate::report::Report;
use crate::roots::{build_root_system, TypeLabel};
use crate::structure_verify::{verify_chevalley, verify_folding, verify_sigma};
use crate::twisted::{build_standard, OrbitRepChoice, TwistedTable};
use crate::twisted_verify::{chevalley_basis_g0, verify_grels, verify_integrality, verify_lemma_brackets};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INVALID_SYMBOL: i32 = 65;
pub const EXIT_INTERNAL: i32 = 70;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "TWISTFORM_THREADS";

const GRAMMAR: &str = "\
Element grammar (bracket):
  element := term (('+' | '-') term)*
  term    := [coeff '·' | coeff '*'] symbol      coeff: integer or p/q
  symbol  := 'x+' '[' weight ';' exps ']'  |  'x-' '[' weight ';' exps ']'
           | 'h' '[' (weight | vertex) ';' exps ']'
  weight  := [n] 'mu' i ('+' [n] 'mu' j)*      e.g. mu1, 2mu1+mu2
  exps    := '(' int (',' int)* ')'            one entry per loop variable
Monomial grammar (straighten):
  monomial := factor (' ' factor)*
  factor   := '(' x-symbol ')^(' n ')' | x-symbol
            | 'Λ[' i ';' exps ';' n ']'  (or 'L[...]')
            | 'B[' i ';' n ']'  |  'h[' i ';(0)]'
Restricted weights mu1, mu2, ... are numbered in folded-basis order.";

#[derive(Parser, Debug)]
#[command(name = "twistform", version, about = "Twisted multiloop algebras and their integral forms", after_help = GRAMMAR)]
struct Cli {
    #[command(flatten)]
    cfg: ConfigArgs,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct ConfigArgs {
    /// Algebra type, e.g. A3, D4, E6, or a bare letter together with --rank.
    #[arg(long = "type", global = true, default_value = "A2")]
    type_: String,
    #[arg(long, global = true)]
    rank: Option<usize>,
    /// Order of the diagram automorphism.
    #[arg(long, global = true, default_value_t = 2)]
    k: u32,
    /// Number of loop variables.
    #[arg(long, global = true, default_value_t = 1)]
    m: usize,
    /// Degree bound (suite default when absent).
    #[arg(long, global = true)]
    deg: Option<u32>,
    /// Exponent window [-w, w]^m.
    #[arg(long, global = true)]
    expwin: Option<i64>,
    /// Case cap before sampling.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long = "orbit-rep", global = true, value_enum, default_value_t = OrbitRep::Default)]
    orbit_rep: OrbitRep,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OrbitRep {
    Default,
    Alternate,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Folding data of the configured type.
    Roots,
    /// Chevalley basis structure constants and σ.
    Chevalley,
    /// Bracket of two loop-algebra elements.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Straightens a product of generators into ordered integral coordinates.
    Straighten {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Multipliers d for lambda-reduce.
        #[arg(long, value_delimiter = ',')]
        d: Vec<u32>,
        /// Degrees l for lambda-reduce.
        #[arg(long, value_delimiter = ',')]
        l: Vec<u32>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Grels,
    LemmaBrackets,
    PropRepeat,
    PropArrange,
    LambdaReduce,
    IntegralBasis,
    PropGenerators,
    G0Chevalley,
    Folding,
    Chevalley,
    Sigma,
    Integrality,
}

/// Validated configuration.
#[derive(Clone, Debug)]
pub struct Config {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub k: u32,
    pub m: usize,
    pub orbit_rep: OrbitRepChoice,
    pub deg: Option<u32>,
    pub expwin: Option<i64>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub json: bool,
}

fn parse_type(s: &str, rank: Option<usize>) -> Result<(TypeLabel, usize), String> {
    let s = s.trim();
    let mut chars = s.chars();
    let t = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => TypeLabel::A,
        Some('D') => TypeLabel::D,
        Some('E') => TypeLabel::E,
        _ => return Err(format!("unsupported type {s:?}; expected A, D or E")),
    };
    let rest = chars.as_str();
    let n = match (rest.is_empty(), rank) {
        (true, Some(n)) => n,
        (true, None) => return Err(format!("type {s:?} needs --rank")),
        (false, r) => {
            let n: usize = rest.parse().map_err(|_| format!("bad rank in type {s:?}"))?;
            if r.is_some_and(|r| r != n) {
                return Err(format!("--rank {} disagrees with --type {s}", r.unwrap()));
            }
            n
        }
    };
    Ok((t, n))
}

fn legal(t: TypeLabel, n: usize, k: u32) -> bool {
    matches!(
        (t, n, k),
        (TypeLabel::A, 2.., 2) | (TypeLabel::D, 4.., 2) | (TypeLabel::D, 4, 3) | (TypeLabel::E, 6, 2)
    )
}

impl Config {
    fn from_args(a: &ConfigArgs) -> Result<Self, String> {
        let (type_label, rank) = parse_type(&a.type_, a.rank)?;
        if !legal(type_label, rank, a.k) {
            return Err(format!(
                "{type_label}{rank} with k={} is not supported; legal: A_n (k=2), D_n (k=2), D4 (k=3), E6 (k=2)",
                a.k
            ));
        }
        if a.m == 0 {
            return Err("--m must be at least 1".into());
        }
        Ok(Config {
            type_label,
            rank,
            k: a.k,
            m: a.m,
            orbit_rep: match a.orbit_rep {
                OrbitRep::Default => OrbitRepChoice::Default,
                OrbitRep::Alternate => OrbitRepChoice::Alternate,
            },
            deg: a.deg,
            expwin: a.expwin,
            samples: a.samples,
            seed: a.seed,
            json: a.json,
        })
    }

    pub fn twisted(&self) -> crate::Result<TwistedTable> {
        build_standard(self.type_label, self.rank, self.k, self.orbit_rep)
    }

    pub fn integral_form(&self) -> crate::Result<IntegralForm> {
        let alg = LoopAlgebra::new(Arc::new(self.twisted()?), self.m)?;
        Ok(IntegralForm::new(alg))
    }

    /// Bounds for a suite, with per-suite defaults for absent flags.
    pub fn bounds(&self, suite: Suite) -> Bounds {
        let (deg, expwin, samples) = match suite {
            Suite::PropRepeat => (6, 2, 400),
            Suite::PropArrange => (5, 2, usize::MAX),
            Suite::IntegralBasis => (4, 2, 2000),
            _ => (4, 2, 400),
        };
        Bounds {
            deg: self.deg.unwrap_or(deg),
            expwin: self.expwin.unwrap_or(expwin),
            samples: self.samples.unwrap_or(samples),
            seed: self.seed,
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Unsupported(_) => EXIT_USAGE,
        Error::InvalidSymbol(_)
        | Error::NotARoot(_)
        | Error::WrongKind
        | Error::UseBinomialInstead
        | Error::InvalidShift(_)
        | Error::InvalidSubstitution(_) => EXIT_INVALID_SYMBOL,
        Error::IntegralityViolation(_) => 1,
        _ => EXIT_INTERNAL,
    }
}

/// Runs one suite and returns its report plus any text printed before it.
pub fn run_suite(cfg: &Config, suite: Suite, ds: &[u32], ls: &[u32]) -> crate::Result<(Report, Vec<String>)> {
    let (t, n, k) = (cfg.type_label, cfg.rank, cfg.k);
    let mut rep = match suite {
        Suite::Folding => verify_folding(t, n, k)?,
        Suite::Chevalley => verify_chevalley(t, n, cfg.samples.unwrap_or(10_000), cfg.seed)?,
        Suite::Sigma => verify_sigma(t, n, k)?,
        Suite::Grels => verify_grels(&cfg.twisted()?),
        Suite::LemmaBrackets => verify_lemma_brackets(&cfg.twisted()?),
        Suite::Integrality => verify_integrality(&cfg.twisted()?),
        Suite::G0Chevalley => chevalley_basis_g0(&cfg.twisted()?).1,
        Suite::PropRepeat => verify_prop_repeat(&cfg.integral_form()?, &cfg.bounds(suite)),
        Suite::PropArrange => verify_prop_arrange(&cfg.integral_form()?, &cfg.bounds(suite)),
        Suite::IntegralBasis => verify_integral_basis(&cfg.integral_form()?, &cfg.bounds(suite)),
        Suite::PropGenerators => verify_prop_generators(&cfg.integral_form()?, &cfg.bounds(suite)),
        Suite::LambdaReduce => {
            let ds = if ds.is_empty() { vec![2, 3] } else { ds.to_vec() };
            let ls = if ls.is_empty() { vec![1, 2, 3, 4] } else { ls.to_vec() };
            let (mut rep, shown) = verify_lambda_reduce(&cfg.integral_form()?, &ds, &ls);
            let lines: Vec<String> = shown.iter().map(|r| r.to_string()).collect();
            for (red, line) in shown.iter().zip(&lines) {
                rep.finding(&format!("formula d={} l={}", red.d, red.l), line.clone());
            }
            return Ok((rep, lines));
        }
    };
    if cfg.orbit_rep == OrbitRepChoice::Alternate {
        rep.bound("orbit-rep", "alternate");
    }
    Ok((rep, Vec::new()))
}

#[derive(Serialize)]
struct BracketOut<'a> {
    a: &'a str,
    b: &'a str,
    result: String,
}

#[derive(Serialize)]
struct StraightenOut {
    input: String,
    ordered: String,
    coords: serde_json::Value,
    integral: bool,
    degree: u32,
    leading: String,
}

#[derive(Serialize)]
struct RootsOut {
    instance: String,
    folded_type: Option<String>,
    folded: crate::roots::FoldedDatum,
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn execute(cfg: &Config, cmd: Command, out: &mut dyn Write) -> crate::Result<i32> {
    let mut emit = |s: String| -> crate::Result<()> {
        out.write_all(s.as_bytes()).map_err(|e| Error::Internal(e.to_string()))
    };
    match cmd {
        Command::Roots => {
            let tt = cfg.twisted()?;
            let rep = verify_folding(cfg.type_label, cfg.rank, cfg.k)?;
            let folded_type = rep.findings.get("folded-type").cloned();
            if cfg.json {
                emit(json_line(&RootsOut { instance: tt.instance(), folded_type, folded: tt.folded }))?;
            } else {
                let f = &tt.folded;
                let mut s = format!("{}\n", tt.instance());
                if let Some(ft) = folded_type {
                    s.push_str(&format!("folded type: {ft}\n"));
                }
                s.push_str(&format!("vertex orbits: {:?}\n", f.vertex_orbits));
                s.push_str(&format!("folded cartan: {:?}\n", f.cartan));
                for (eps, ws) in f.weights_by_eps.iter().enumerate() {
                    let names: Vec<String> =
                        ws.iter().map(|&w| crate::twisted::weight_name(&f.restricted[w])).collect();
                    s.push_str(&format!("weights eps={eps}: {}\n", names.join(" ")));
                }
                emit(s)?;
            }
            Ok(0)
        }
        Command::Chevalley => {
            let ct = build_chevalley(&build_root_system(cfg.type_label, cfg.rank)?);
            let ct = crate::chevalley::extend_sigma(&ct, &crate::roots::DiagramAut::standard(&ct.rd, cfg.k)?)?;
            let ex = ct.export();
            if cfg.json {
                emit(json_line(&ex))?;
            } else {
                let mut s = format!("{} ({}; {})\n", ex.type_label, ex.root_order, ex.sign_convention);
                for row in &ex.brackets {
                    let rhs: Vec<String> = row.result.iter().map(|(n, c)| format!("{c}·{n}")).collect();
                    s.push_str(&format!("[{}, {}] = {}\n", row.a, row.b, rhs.join(" + ")));
                }
                emit(s)?;
            }
            Ok(0)
        }
        Command::Bracket { a, b } => {
            let alg = LoopAlgebra::new(Arc::new(cfg.twisted()?), cfg.m)?;
            let ea = parse_element(&alg, &a)?;
            let eb = parse_element(&alg, &b)?;
            let result = alg.render(&alg.loop_bracket(&ea, &eb));
            if cfg.json {
                emit(json_line(&BracketOut { a: &a, b: &b, result }))?;
            } else {
                emit(result + "\n")?;
            }
            Ok(0)
        }
        Command::Straighten { expr } => {
            let f = cfg.integral_form()?;
            let gens = parse_generators(&f, &expr)?;
            let cert = f.certify_product(&gens);
            let word: Vec<String> = gens.iter().map(|g| f.render_generator(g)).collect();
            let o = StraightenOut {
                input: word.join(" "),
                ordered: f.render_coords(&cert.coords),
                coords: f.coords_to_json(&cert.coords),
                integral: cert.integral,
                degree: cert.degree,
                leading: f.render_ordered(&cert.lead),
            };
            if cfg.json {
                emit(json_line(&o))?;
            } else {
                emit(format!("{}\nintegral={}\n", o.ordered, o.integral))?;
            }
            Ok(if cert.integral { 0 } else { 1 })
        }
        Command::Verify { suite, d, l } => {
            let (rep, lines) = run_suite(cfg, suite, &d, &l)?;
            if cfg.json {
                emit(rep.to_json() + "\n")?;
            } else {
                let mut s = String::new();
                for line in lines {
                    s.push_str(&line);
                    s.push('\n');
                }
                s.push_str(&rep.to_text());
                emit(s)?;
            }
            Ok(rep.verdict.exit_code())
        }
    }
}

fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process fails harmlessly
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let cfg = match Config::from_args(&cli.cfg) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    init_threads();
    match execute(&cfg, cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_parsing() {
        assert_eq!(parse_type("A3", None).unwrap(), (TypeLabel::A, 3));
        assert_eq!(parse_type("d", Some(5)).unwrap(), (TypeLabel::D, 5));
        assert!(parse_type("A", None).is_err());
        assert!(parse_type("A3", Some(4)).is_err());
        assert!(parse_type("B3", None).is_err());
        assert!(legal(TypeLabel::D, 4, 3));
        assert!(!legal(TypeLabel::D, 5, 3));
        assert!(!legal(TypeLabel::A, 1, 2));
        assert!(!legal(TypeLabel::E, 7, 2));
    }
}
