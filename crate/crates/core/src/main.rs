use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use syncreach::families::{Family, DEFAULT_LETTER_CAP};
use syncreach::power::{
    don_audit, is_completely_reachable, power_bfs, shortest_reaching_word, shortest_synchronizing_word,
    shortest_word_into, DEFAULT_FRONTIER_CAP,
};
use syncreach::rank::{gamma1, is_strongly_connected, DEFAULT_CLOSURE_CAP};
use syncreach::verify::{run_all, VerifyConfig, CHECK_NAMES};
use syncreach::{Dfa, Error, StateSet, Word};

#[derive(Parser)]
#[command(
    name = "syncreach",
    version,
    about = "Subset reachability and synchronization in complete DFAs"
)]
struct Cli {
    /// Cap on visited subsets and on closure size
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Print only the essential result
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named automaton in the text format
    Gen {
        /// cerny, fig2, p2n, p3n, fig5 or bv
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_LETTER_CAP)]
        letter_cap: usize,
    },
    /// Shortest synchronizing word
    Sync {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Shortest word reaching a subset (or landing inside it with --into)
    Reach {
        file: String,
        /// Comma-separated 1-indexed states
        #[arg(long)]
        target: String,
        #[arg(long)]
        into: bool,
        #[arg(long)]
        json: bool,
    },
    /// Edges of the Gamma-1 graph
    Gamma1 {
        file: String,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        witnesses: bool,
        #[arg(long)]
        check_scc: bool,
        #[arg(long)]
        json: bool,
    },
    /// Complete reachability verdict
    Cr {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Subsets whose shortest word exceeds n(n-k)
    AuditDon {
        file: String,
        #[arg(long)]
        into: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the reproduction checks
    Verify {
        /// Comma-separated check names
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        json: bool,
        /// Include per-check runtimes
        #[arg(long)]
        timings: bool,
    },
    /// Re-emit an automaton, as DOT with --dot
    Export {
        file: String,
        #[arg(long)]
        dot: bool,
    },
}

fn read_dfa(path: &str) -> Result<Dfa, String> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    Dfa::parse(&text).map_err(|e| format!("{path}: {e}"))
}

fn parse_target(dfa: &Dfa, text: &str) -> Result<StateSet, Error> {
    let states = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::InvalidStateSet(format!("`{s}` is not a state number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let set = StateSet::from_states(dfa.n(), states)?;
    if set.is_empty() {
        return Err(Error::InvalidStateSet("the target set is empty".into()));
    }
    Ok(set)
}

fn show_word(dfa: &Dfa, w: &Word) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        dfa.format_word(w)
    }
}

enum Failure {
    Usage(String),
    Analysis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Analysis(e.to_string())
    }
}

fn run(cli: Cli, out: &mut String) -> Result<ExitCode, Failure> {
    let frontier_cap = cli.cap.unwrap_or(DEFAULT_FRONTIER_CAP);
    let closure_cap = cli.cap.unwrap_or(DEFAULT_CLOSURE_CAP);
    let quiet = cli.quiet;
    macro_rules! emit {
        ($($arg:tt)*) => { out.push_str(&format!($($arg)*)); out.push('\n'); };
    }

    match cli.command {
        Command::Gen {
            family,
            n,
            output,
            letter_cap,
        } => {
            let family: Family = family.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let dfa = family.generate(n, letter_cap)?;
            match output {
                Some(path) => std::fs::write(&path, dfa.serialize())
                    .map_err(|e| Failure::Analysis(format!("{}: {e}", path.display())))?,
                None => out.push_str(&dfa.serialize()),
            }
        }
        Command::Sync { file, json } => {
            let dfa = read_dfa(&file).map_err(Failure::Analysis)?;
            let w = shortest_synchronizing_word(&dfa, frontier_cap)?;
            if json {
                emit!(
                    "{}",
                    json!({
                        "synchronizing": w.is_some(),
                        "length": w.as_ref().map(Word::len),
                        "word": w.as_ref().map(|w| dfa.format_word(w)),
                    })
                );
            } else {
                match (&w, quiet) {
                    (Some(w), true) => {
                        emit!("{}", show_word(&dfa, w));
                    }
                    (Some(w), false) => {
                        emit!("synchronizing: true");
                        emit!("length: {}", w.len());
                        emit!("word: {}", show_word(&dfa, w));
                    }
                    (None, _) => {
                        emit!("synchronizing: false");
                    }
                }
            }
        }
        Command::Reach {
            file,
            target,
            into,
            json,
        } => {
            let dfa = read_dfa(&file).map_err(Failure::Analysis)?;
            let target = parse_target(&dfa, &target).map_err(|e| Failure::Usage(e.to_string()))?;
            let w = if into {
                shortest_word_into(&dfa, target, frontier_cap)?
            } else {
                let index = power_bfs(&dfa, dfa.states(), frontier_cap)?;
                shortest_reaching_word(&index, target)
            };
            let image = match &w {
                Some(w) => Some(dfa.apply(dfa.states(), w)?),
                None => None,
            };
            if json {
                emit!(
                    "{}",
                    json!({
                        "target": target.to_vec(),
                        "mode": if into { "into" } else { "exact" },
                        "reachable": w.is_some(),
                        "length": w.as_ref().map(Word::len),
                        "word": w.as_ref().map(|w| dfa.format_word(w)),
                        "image": image.map(StateSet::to_vec),
                    })
                );
            } else if quiet {
                emit!("{}", w.as_ref().map_or("none".to_string(), |w| show_word(&dfa, w)));
            } else {
                emit!("target: {target}");
                emit!("mode: {}", if into { "into" } else { "exact" });
                match (&w, image) {
                    (Some(w), Some(image)) => {
                        emit!("reachable: true");
                        emit!("length: {}", w.len());
                        emit!("word: {}", show_word(&dfa, w));
                        emit!("image: {image}");
                    }
                    _ => {
                        emit!("reachable: false");
                    }
                }
            }
        }
        Command::Gamma1 {
            file,
            dot,
            witnesses,
            check_scc,
            json,
        } => {
            let dfa = read_dfa(&file).map_err(Failure::Analysis)?;
            let g = gamma1(&dfa, closure_cap)?;
            let scc = is_strongly_connected(&g);
            if json {
                let mut v = g.to_json(&dfa);
                v["strongly_connected"] = scc.into();
                emit!("{v}");
            } else if dot {
                out.push_str(&g.to_dot(&dfa));
            } else {
                if !(quiet && check_scc) {
                    for e in g.edges() {
                        if witnesses {
                            emit!("{} {} {}", e.from, e.to, show_word(&dfa, &e.witness));
                        } else {
                            emit!("{} {}", e.from, e.to);
                        }
                    }
                }
                if check_scc {
                    emit!("strongly connected: {scc}");
                }
            }
        }
        Command::Cr { file, json } => {
            let dfa = read_dfa(&file).map_err(Failure::Analysis)?;
            let cr = is_completely_reachable(&dfa, frontier_cap)?;
            if json {
                emit!(
                    "{}",
                    json!({
                        "completely_reachable": cr.complete,
                        "missing": cr.missing.map(StateSet::to_vec),
                        "reachable_subsets": cr.reachable,
                    })
                );
            } else {
                emit!("completely reachable: {}", cr.complete);
                if !quiet {
                    if let Some(m) = cr.missing {
                        emit!("missing: {m}");
                    }
                    emit!("reachable subsets: {}", cr.reachable);
                }
            }
        }
        Command::AuditDon { file, into, json } => {
            let dfa = read_dfa(&file).map_err(Failure::Analysis)?;
            let report = don_audit(&dfa, frontier_cap)?;
            if into && report.included.is_none() {
                return Err(Failure::Analysis(format!(
                    "the included-subset audit enumerates all 2^{} subsets; too many states",
                    dfa.n()
                )));
            }
            let checked = if into {
                report.included.as_ref().map_or(0, Vec::len)
            } else {
                report.reachable.len()
            };
            let violations = report.violations(into);
            let variant = if into { "included" } else { "exact" };
            if json {
                emit!(
                    "{}",
                    json!({
                        "n": report.n,
                        "variant": variant,
                        "checked": checked,
                        "violations": violations,
                    })
                );
            } else {
                if !quiet {
                    emit!(
                        "# variant={variant} n={} checked={checked} violations={}",
                        report.n,
                        violations.len()
                    );
                }
                emit!("subset\tsize\tdist\tbound\tviolated");
                for e in violations {
                    let subset: Vec<String> = e.subset.iter().map(usize::to_string).collect();
                    emit!(
                        "{}\t{}\t{}\t{}\t{}",
                        subset.join(","),
                        e.size,
                        e.dist,
                        e.bound,
                        e.violated
                    );
                }
            }
        }
        Command::Verify {
            only,
            seed,
            trials,
            json,
            timings,
        } => {
            let only = match only {
                Some(list) => {
                    let names: Vec<String> = list
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                    if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(&n.as_str())) {
                        return Err(Failure::Usage(format!(
                            "unknown check `{bad}` (known: {})",
                            CHECK_NAMES.join(", ")
                        )));
                    }
                    Some(names)
                }
                None => None,
            };
            let config = VerifyConfig {
                only,
                seed,
                trials,
                frontier_cap,
                closure_cap,
                ..VerifyConfig::default()
            };
            let report = run_all(&config);
            if json {
                emit!("{}", report.to_json(timings));
            } else {
                out.push_str(&report.to_text(timings));
            }
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Export { file, dot } => {
            let dfa = read_dfa(&file).map_err(Failure::Analysis)?;
            out.push_str(&if dot { dfa.to_dot() } else { dfa.serialize() });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = run(cli, &mut out);
    let _ = io::stdout().write_all(out.as_bytes());
    match code {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Analysis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
