//! `braidrep` command-line front end.
//!
//! Every command prints one JSON document on stdout. Exit status: 0 when all
//! checks pass, 1 when a check fails, 2 on bad input, 3 when a size cap is
//! exceeded.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use braidrep::chars::{self, CharError, CharTable};
use braidrep::esgroup::{self, EsError, EsGroup, Nu};
use braidrep::invariants::{self, InvError};
use braidrep::rep::{self, mats, RepError, RepKind, Representation};
use braidrep::{BraidError, BraidWord, CycloNum};

/// Strand cap for commands that build the full `2^n`-dimensional image.
const EVAL_CAP: usize = 10;
const BRAID_CAP: usize = 10;
const LEMMA22_CAP: usize = 8;
const TL_CAP: usize = 8;
/// Strand cap for the character suite (`E_{n-1}` tables).
const CHARS_CAP: usize = 10;
const DECOMPOSE_CAP: usize = 11;

#[derive(Parser)]
#[command(
    name = "braidrep",
    version,
    about = "Exact braid representations, extraspecial 2-groups and the 4th-root Jones invariant"
)]
struct Cli {
    /// Add floating-point renderings next to the exact values.
    #[arg(long, global = true)]
    approx: bool,
    /// Print compact JSON instead of pretty-printed JSON.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// T_R, J4 and the Arf invariant of a braid closure.
    Invariant {
        /// Braid word such as "s1 s2^-1 s1"; the empty string is the identity.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        strands: usize,
        /// Also report T_R and J4 for one enhancement sign.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<i64>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Orders and structure of the image groups.
    Group {
        #[arg(long)]
        strands: usize,
        #[arg(long, value_enum, default_value = "pi")]
        kind: GroupKind,
    },
    /// Multiplicities of the irreducibles of E_{n-1} in pi_n.
    Decompose {
        #[arg(long)]
        strands: usize,
    },
    /// Traces of pi_n and of the reduced model rho1_hat.
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        strands: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Ybe,
    Braid,
    Lemma22,
    Tl,
    Chars,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupKind {
    Pi,
    PiPrime,
}

enum Failure {
    Input(String),
    Cap(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Cap(m) | Failure::Check(m) => m,
        }
    }
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<EsError> for Failure {
    fn from(e: EsError) -> Self {
        match e {
            EsError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<CharError> for Failure {
    fn from(e: CharError) -> Self {
        match e {
            CharError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            CharError::Es(inner) => inner.into(),
            CharError::NonIntegral { .. } => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<InvError> for Failure {
    fn from(e: InvError) -> Self {
        match e {
            InvError::TooManyCrossings { .. } => Failure::Cap(e.to_string()),
            InvError::AlphaDependent { .. }
            | InvError::NotTrichotomous { .. }
            | InvError::OddPowers => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn cap(what: &str, value: usize, limit: usize) -> Result<(), Failure> {
    if value > limit {
        return Err(Failure::Cap(format!(
            "{what} = {value} exceeds the cap {limit}"
        )));
    }
    Ok(())
}

fn approx(x: &CycloNum) -> Value {
    let c = x.approx();
    json!({ "re": c.re, "im": c.im })
}

/// A command's JSON output and whether all its checks passed.
type Report = (Value, bool);

fn invariant(
    word: &str,
    strands: usize,
    alpha: Option<i64>,
    with_approx: bool,
) -> Result<Report, Failure> {
    let w = BraidWord::parse(word, strands)?;
    cap("strands", strands, EVAL_CAP)?;
    let result = invariants::evaluate(&w)?;
    let mut out = serde_json::to_value(&result).expect("serializable");
    if let Some(a) = alpha {
        let t = invariants::t_r(&w, a)?;
        let j = invariants::jones4_from_t_r(&w, a, &t)?;
        out["alpha"] = json!(a);
        out["t_r"] = json!(t.to_string());
        out["j4_from_t_r"] = json!(j.to_string());
    }
    if with_approx {
        let v = invariants::t_r_values(&w)?;
        out["approx"] = json!({
            "t_r_plus": approx(&v.t_r_plus),
            "t_r_minus": approx(&v.t_r_minus),
            "j4": approx(&v.j4),
        });
    }
    Ok((out, true))
}

fn verify(suite: Suite, max_n: Option<usize>) -> Result<Report, Failure> {
    match suite {
        Suite::Ybe => {
            let checks = [
                ("R", rep::satisfies_ybe(&mats::r())),
                ("R'", rep::satisfies_ybe(&mats::r_prime())),
            ];
            let passed = checks.iter().all(|c| c.1);
            let list: Vec<Value> = checks
                .iter()
                .map(|(m, ok)| json!({ "matrix": m, "passed": ok }))
                .collect();
            Ok((
                json!({ "suite": "ybe", "passed": passed, "checks": list }),
                passed,
            ))
        }
        Suite::Braid => {
            let top = max_n.unwrap_or(8);
            cap("max-n", top, BRAID_CAP)?;
            let mut list = Vec::new();
            let mut passed = true;
            for kind in RepKind::ALL {
                for n in 2..=top {
                    let Ok(r) = Representation::new(kind, n) else {
                        continue;
                    };
                    let failures = r.braid_relation_failures()?;
                    passed &= failures.is_empty();
                    list.push(json!({ "kind": kind, "n": n, "passed": failures.is_empty(), "failures": failures }));
                }
            }
            Ok((
                json!({ "suite": "braid", "max_n": top, "passed": passed, "checks": list }),
                passed,
            ))
        }
        Suite::Lemma22 => {
            let top = max_n.unwrap_or(6);
            cap("max-n", top, LEMMA22_CAP)?;
            let mut list = Vec::new();
            let mut passed = true;
            for n in 2..=top {
                let r = rep::verify_lemma22(n)?;
                passed &= r.passed();
                list.push(serde_json::to_value(&r).expect("serializable"));
            }
            Ok((
                json!({ "suite": "lemma22", "max_n": top, "passed": passed, "reports": list }),
                passed,
            ))
        }
        Suite::Tl => {
            let top = max_n.unwrap_or(5);
            cap("max-n", top, TL_CAP)?;
            let mut list = Vec::new();
            let mut passed = true;
            for n in 3..=top {
                let r = invariants::verify_tl_relations(n)?;
                passed &= r.passed();
                list.push(serde_json::to_value(&r).expect("serializable"));
            }
            let r_fails = !invariants::tl1_holds_for_r();
            Ok((
                json!({
                    "suite": "tl",
                    "max_n": top,
                    "passed": passed && r_fails,
                    "tl1_fails_for_r": r_fails,
                    "reports": list,
                }),
                passed && r_fails,
            ))
        }
        Suite::Chars => {
            let top = max_n.unwrap_or(6);
            cap("max-n", top, CHARS_CAP)?;
            let mut list = Vec::new();
            let mut passed = true;
            for n in 2..=top {
                for nu in [Nu::Minus, Nu::Plus] {
                    let table = CharTable::new(EsGroup::new(n - 1, nu)?)?;
                    let rows = table.row_orthogonality()?;
                    let cols = table.column_orthogonality()?;
                    let square = table.irreps().len() == table.classes().len();
                    passed &= rows && cols && square;
                    list.push(json!({
                        "m": n - 1,
                        "nu": nu,
                        "classes": table.classes().len(),
                        "square": square,
                        "row_orthogonality": rows,
                        "column_orthogonality": cols,
                    }));
                }
            }
            let mut restriction = Vec::new();
            for k in (1..).take_while(|k| 2 * k < top && *k <= 5) {
                let ok = chars::restriction_check(k)?;
                passed &= ok;
                restriction.push(json!({ "k": k, "passed": ok }));
            }
            Ok((
                json!({ "suite": "chars", "max_n": top, "passed": passed, "tables": list, "restriction": restriction }),
                passed,
            ))
        }
    }
}

fn group(strands: usize, kind: GroupKind) -> Result<Report, Failure> {
    let kind = match kind {
        GroupKind::Pi => RepKind::Pi,
        GroupKind::PiPrime => RepKind::PiPrime,
    };
    let report = esgroup::group_report(kind, strands)?;
    let passed = report.phi_injective && report.relation_pattern.matches(report.nu);
    Ok((serde_json::to_value(&report).expect("serializable"), passed))
}

fn decompose(strands: usize) -> Result<Report, Failure> {
    cap("strands", strands, DECOMPOSE_CAP)?;
    let d = chars::decompose_pi(strands)?;
    let passed = d.total_dim == d.expected_dim;
    Ok((serde_json::to_value(&d).expect("serializable"), passed))
}

fn trace(word: &str, strands: usize, with_approx: bool) -> Result<Report, Failure> {
    let w = BraidWord::parse(word, strands)?;
    cap("strands", strands, EVAL_CAP)?;
    let pi = invariants::trace_pi(&w)?;
    let rho = invariants::trace_rho_hat(&w)?;
    let mult = 1i64 << strands.div_ceil(2);
    let holds = pi == CycloNum::from_integer(mult) * &rho;
    let mut out = json!({
        "word": w.to_string(),
        "strands": strands,
        "trace_pi": pi.to_string(),
        "trace_rho_hat": rho.to_string(),
        "multiplicity": mult,
        "relation_holds": holds,
    });
    if with_approx {
        out["approx"] = json!({ "trace_pi": approx(&pi), "trace_rho_hat": approx(&rho) });
    }
    Ok((out, holds))
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
    let result = match &cli.command {
        Command::Invariant {
            word,
            strands,
            alpha,
        } => invariant(word, *strands, *alpha, cli.approx),
        Command::Verify { suite, max_n } => verify(*suite, *max_n),
        Command::Group { strands, kind } => group(*strands, *kind),
        Command::Decompose { strands } => decompose(*strands),
        Command::Trace { word, strands } => trace(word, *strands, cli.approx),
    };
    match result {
        Ok((value, passed)) => {
            let text = if cli.compact {
                serde_json::to_string(&value)
            } else {
                serde_json::to_string_pretty(&value)
            };
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{}", text.expect("serializable"));
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
