//! Command dispatch. Results go to stdout as JSON; timing goes to stderr so
//! stdout is byte-identical across runs on the same input.

use std::io::Read;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use qpsurf_core::{
    alexander_from_braid, expand_bands, nabla, pad_into_nabla, q_rep, quasipositize, verify_fiber,
    BandRepresentation, BraidWord, BraidedSurface, CombedGraph,
};

use crate::error::CliError;
use crate::json::{GraphDoc, RepDoc, SiteDoc, SummaryDoc, WordDoc};
use crate::selftest;

#[derive(Debug, Parser)]
#[command(name = "qpsurf", version, about = "Braided Seifert surfaces and quasipositive band representations")]
pub struct Cli {
    /// Wrap the result in a report with the command, input digest and checks.
    #[arg(long, global = true)]
    pub report: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Band representation of the fiber surface of O{n,n}, one band per letter.
    Nabla {
        #[arg(long)]
        n: usize,
    },
    /// The quasipositive representation q_n of the same fiber.
    Qrep {
        #[arg(long)]
        n: usize,
    },
    /// Embed a positive braid word as a full graph on S(nabla_n).
    Pad {
        #[arg(long)]
        input: String,
    },
    /// Expand a quasipositive representation into a positive word and a graph on its surface.
    Expand {
        #[arg(long)]
        input: String,
    },
    /// Euler characteristic, components, boundary and Alexander polynomial of a representation.
    Invariants {
        #[arg(long)]
        input: String,
    },
    /// Compare S(q_n) with S(nabla_n).
    VerifyFiber {
        #[arg(long)]
        n: usize,
    },
    /// Whitehead-reduce a full combed graph.
    Reduce {
        #[arg(long)]
        input: String,
    },
    /// Quasipositive representation of a full subsurface of S(q_n).
    Quasipositize {
        #[arg(long)]
        n: usize,
        /// Combed graph on S(q_n).
        #[arg(long, conflicts_with = "subset", required_unless_present = "subset")]
        input: Option<String>,
        /// Use the spine of these 1-handles instead of a graph file.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Run the built-in verification suites.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Exit code and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct CheckDoc {
    name: String,
    passed: bool,
}

#[derive(Serialize)]
struct RunReport {
    command: Vec<String>,
    input_sha256: Option<String>,
    result: Value,
    checks: Vec<CheckDoc>,
    passed: bool,
}

struct Run {
    input_digest: Option<String>,
    checks: Vec<(String, bool)>,
}

impl Run {
    fn read(&mut self, path: &str, stdin: &mut dyn Read) -> Result<Vec<u8>, CliError> {
        let bytes = if path == "-" {
            let mut buf = Vec::new();
            stdin.read_to_end(&mut buf)?;
            buf
        } else {
            std::fs::read(path)?
        };
        self.input_digest = Some(hex::encode(Sha256::digest(&bytes)));
        Ok(bytes)
    }

    fn check(&mut self, name: &str, passed: bool) {
        self.checks.push((name.to_string(), passed));
    }
}

fn parse<T: serde::de::DeserializeOwned>(bytes: &[u8]) -> Result<T, CliError> {
    Ok(serde_json::from_slice(bytes)?)
}

fn execute(cmd: &Command, run: &mut Run, stdin: &mut dyn Read) -> Result<Value, CliError> {
    Ok(match cmd {
        Command::Nabla { n } => serde_json::to_value(RepDoc::from(&nabla(*n)?))?,
        Command::Qrep { n } => serde_json::to_value(RepDoc::from(&q_rep(*n)?))?,
        Command::Pad { input } => {
            let w = BraidWord::try_from(&parse::<WordDoc>(&run.read(input, stdin)?)?)?;
            let p = pad_into_nabla(&w)?;
            let target = BraidedSurface::new(BandRepresentation::from_word(&w)).summary();
            run.check("full", p.graph.is_full()?);
            run.check("summary_matches", p.graph.neighborhood_summary()? == target);
            json!({"n": p.n, "marked": p.marked, "graph": GraphDoc::from(&p.graph)})
        }
        Command::Expand { input } => {
            let r = BandRepresentation::try_from(&parse::<RepDoc>(&run.read(input, stdin)?)?)?;
            let e = expand_bands(&r)?;
            run.check("positive", e.word.is_positive());
            run.check("full", e.graph.is_full()?);
            run.check("summary_matches", e.graph.neighborhood_summary()? == BraidedSurface::new(r).summary());
            json!({"word": WordDoc::from(&e.word), "graph": GraphDoc::from(&e.graph)})
        }
        Command::Invariants { input } => {
            let r = BandRepresentation::try_from(&parse::<RepDoc>(&run.read(input, stdin)?)?)?;
            let s = BraidedSurface::new(r.clone());
            let summary = SummaryDoc::from(&s.summary());
            let beta = r.beta();
            json!({
                "chi": summary.chi,
                "components": summary.components,
                "boundary": s.summary().boundary_circles(),
                "exponent_sum": beta.exponent_sum(),
                "alexander": alexander_from_braid(&beta)?.coefficient_string(),
            })
        }
        Command::VerifyFiber { n } => {
            let f = verify_fiber(*n)?;
            run.check("euler_characteristic", f.chi_agrees());
            run.check("components", f.components_agree());
            run.check("alexander", f.alexander_agrees());
            json!({
                "n": f.n,
                "chi": {"q": f.chi_q, "nabla": f.chi_nabla},
                "components": {"q": f.components_q, "nabla": f.components_nabla},
                "alexander": {"q": f.alexander_q.coefficient_string(), "nabla": f.alexander_nabla.coefficient_string()},
            })
        }
        Command::Reduce { input } => {
            let g = CombedGraph::try_from(&parse::<GraphDoc>(&run.read(input, stdin)?)?)?;
            let (r, trace) = g.reduce_traced()?;
            run.check("summary_preserved", r.neighborhood_summary()? == g.neighborhood_summary()?);
            run.check("reduced", r.eligible_sites().is_empty());
            json!({"graph": GraphDoc::from(&r), "trace": trace.iter().map(SiteDoc::from).collect::<Vec<_>>()})
        }
        Command::Quasipositize { n, input, subset } => {
            let g = match (input, subset) {
                (Some(path), None) => CombedGraph::try_from(&parse::<GraphDoc>(&run.read(path, stdin)?)?)?,
                (None, Some(sel)) => BraidedSurface::new(q_rep(*n)?).handle_spine(sel)?,
                _ => return Err(CliError::Usage("give exactly one of --input and --subset".into())),
            };
            let r = quasipositize(*n, &g)?;
            run.check("quasipositive", r.output.is_quasipositive());
            run.check("summary_matches", r.output_summary == r.input_summary);
            json!({
                "output": RepDoc::from(&r.output),
                "summary": SummaryDoc::from(&r.output_summary),
                "trace": r.steps.iter().map(SiteDoc::from).collect::<Vec<_>>(),
            })
        }
        Command::Selftest { seed } => {
            let checks = selftest::run_all(*seed);
            for c in &checks {
                run.check(c.name, c.passed);
            }
            let passed = checks.iter().all(|c| c.passed);
            let doc = json!({"seed": seed, "checks": checks, "passed": passed});
            if !passed {
                let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
                return Err(CliError::SelfTest(format!("{} ({doc})", failed.join(", "))));
            }
            doc
        }
    })
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Runs one command line (including the program name) to completion.
pub fn run(argv: &[String], stdin: &mut dyn Read) -> Outcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    let start = Instant::now();
    let mut run = Run { input_digest: None, checks: Vec::new() };
    let result = execute(&cli.command, &mut run, stdin);
    let elapsed = format!("elapsed_ms: {}\n", start.elapsed().as_millis());
    match result {
        Ok(value) => {
            let passed = run.checks.iter().all(|c| c.1);
            let stdout = if cli.report {
                pretty(&RunReport {
                    command: argv.iter().skip(1).cloned().collect(),
                    input_sha256: run.input_digest,
                    result: value,
                    checks: run.checks.into_iter().map(|(name, passed)| CheckDoc { name, passed }).collect(),
                    passed,
                })
            } else {
                pretty(&value)
            };
            // a failed consistency check after a successful computation is an internal error
            let code = if passed { 0 } else { 3 };
            Outcome { code, stdout, stderr: elapsed }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: pretty(&json!({"error": e.kind(), "message": e.to_string()})),
            stderr: format!("error: {e}\n{elapsed}"),
        },
    }
}
