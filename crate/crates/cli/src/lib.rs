//! Command-line front end for truecon-core.
//!
//! [`run_command`] parses an argument vector, runs it against the library and
//! returns the exit code with the text to print: 0 when the checked property
//! holds, 1 when it does not, 2 on usage or input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use truecon_core::action::parse_action_list;
use truecon_core::equivalences::{frb_brm_proc, frb_brm_scs, hhpb, EquivalenceWitness, Failure, Side, TraceStep};
use truecon_core::harness::{cross_validate, GeneratorConfig};
use truecon_core::logics::{
    eval_brm, mc_brm_process, mc_eil_model, mc_eil_process, parse_brm, parse_eil, translate_brm_to_eil, Environment,
    HistorySequence, Ident,
};
use truecon_core::model::StructureModel;
use truecon_core::semantics::{brm_process, build_lts};
use truecon_core::structures::{
    brm_config, denote, denote_initial, is_conflict_local, load_scs, save_scs, validate_stable, ConfigStructure, EventId,
};
use truecon_core::syntax::{parse_process, parse_proof_term};
use truecon_core::{Action, Process};

#[derive(Parser, Debug)]
#[command(name = "truecon", version, about = "Reversible processes, configuration structures and their logics")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LtsFormat {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Relation {
    FrbBrm,
    Hhpb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Logic {
    Brm,
    Eil,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a process and print it back in canonical form.
    Parse { process: String },
    /// Build the proved transition system of an initial process.
    Lts {
        process: String,
        #[arg(long, value_enum, default_value = "text")]
        format: LtsFormat,
    },
    /// Denotation of a process as a configuration structure with cursor.
    Denote { process: String },
    /// Backward ready multiset of a process or of a structure configuration.
    Brm {
        process: Option<String>,
        #[arg(long, conflicts_with = "process")]
        scs: Option<PathBuf>,
        #[arg(long, requires = "scs")]
        config: Option<String>,
    },
    /// Check that a structure file is a stable configuration structure.
    Stable { file: PathBuf },
    /// Check conflict locality of a structure file or of a process denotation.
    Locality {
        file: Option<PathBuf>,
        #[arg(long = "proc", conflicts_with = "file")]
        process: Option<String>,
        /// Also require a common cause for cliques without causes.
        #[arg(long)]
        strict: bool,
    },
    /// Decide an equivalence between two processes or two structures.
    Check {
        #[arg(value_enum)]
        relation: Relation,
        #[arg(long = "proc", num_args = 2, value_names = ["P1", "P2"], conflicts_with = "scs")]
        process: Option<Vec<String>>,
        #[arg(long, num_args = 2, value_names = ["F1", "F2"])]
        scs: Option<Vec<PathBuf>>,
    },
    /// Model check a formula.
    Mc {
        #[arg(long, value_enum)]
        logic: Logic,
        #[arg(long = "proc", conflicts_with = "scs")]
        process: Option<String>,
        #[arg(long)]
        scs: Option<PathBuf>,
        /// Comma-separated event ids of the configuration to check at.
        #[arg(long, requires = "scs")]
        config: Option<String>,
        #[arg(long)]
        formula: String,
        /// Bindings `x=EVENTID,...`.
        #[arg(long)]
        env: Option<String>,
    },
    /// Translate a BRM formula into EIL.
    Translate {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        actions: String,
        /// Stack entries `x:a,...`, bottom first.
        #[arg(long, default_value = "")]
        history: String,
    },
    /// Cross-validate history-preserving and ready-multiset bisimilarity on random pairs.
    Xvalidate {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        local_only: bool,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[arg(long, default_value_t = 3)]
        max_width: usize,
        #[arg(long, default_value_t = 3)]
        max_actions: usize,
    },
}

/// Exit code and captured output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type Res = Result<Outcome, Fail>;

fn done(holds: bool, output: String) -> Res {
    Ok(Outcome { code: if holds { 0 } else { 1 }, output })
}

pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, output: e.to_string() };
        }
    };
    match run(&cli) {
        Ok(o) => o,
        Err(Fail(msg)) => Outcome { code: 2, output: format!("error: {msg}\n") },
    }
}

fn run(cli: &Cli) -> Res {
    let json = cli.json;
    match &cli.command {
        Command::Parse { process } => cmd_parse(process, json),
        Command::Lts { process, format } => cmd_lts(process, if json { LtsFormat::Json } else { *format }),
        Command::Denote { process } => cmd_denote(process, json),
        Command::Brm { process, scs, config } => cmd_brm(process.as_deref(), scs.as_deref(), config.as_deref(), json),
        Command::Stable { file } => cmd_stable(file, json),
        Command::Locality { file, process, strict } => cmd_locality(file.as_deref(), process.as_deref(), *strict, json),
        Command::Check { relation, process, scs } => cmd_check(*relation, process.as_deref(), scs.as_deref(), json),
        Command::Mc { logic, process, scs, config, formula, env } => {
            cmd_mc(*logic, process.as_deref(), scs.as_deref(), config.as_deref(), formula, env.as_deref(), json)
        }
        Command::Translate { formula, actions, history } => cmd_translate(formula, actions, history, json),
        Command::Xvalidate { seed, count, local_only, max_depth, max_width, max_actions } => {
            let cfg = GeneratorConfig {
                seed: *seed,
                count: *count,
                max_prefix_depth: *max_depth,
                max_parallel_width: *max_width,
                max_actions: *max_actions,
                local_only: *local_only,
            };
            cmd_xvalidate(&cfg, json)
        }
    }
}

fn read_scs(path: &Path) -> Result<(ConfigStructure, Option<usize>), Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
    load_scs(&text).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn process(text: &str) -> Result<Process, Fail> {
    let p = parse_process(text)?;
    if !p.is_well_formed() {
        return Err(Fail(format!("`{text}` is not well formed")));
    }
    Ok(p)
}

/// Splits on commas outside brackets, so printed proof terms survive.
fn split_top(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' | '<' | '{' => depth += 1,
            ')' | ']' | '>' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn scs_event(c: &ConfigStructure, id: &str) -> Result<u32, Fail> {
    (0..c.event_count() as u32).find(|&e| c.event(e).to_string() == id).ok_or_else(|| Fail(format!("unknown event `{id}`")))
}

fn scs_config(c: &ConfigStructure, cursor: Option<usize>, ids: Option<&str>) -> Result<usize, Fail> {
    match ids {
        Some(ids) => {
            let evs = split_top(ids).iter().map(|id| scs_event(c, id)).collect::<Result<Vec<_>, _>>()?;
            c.find_config(&evs).ok_or_else(|| Fail(format!("{{{ids}}} is not a configuration")))
        }
        None => cursor.or_else(|| c.root()).ok_or_else(|| Fail("structure has no empty configuration".into())),
    }
}

fn cmd_parse(text: &str, json: bool) -> Res {
    let p = parse_process(text)?;
    let (initial, wf) = (p.is_initial(), p.is_well_formed());
    let out = if json {
        json!({ "process": p.to_string(), "initial": initial, "wellFormed": wf }).to_string() + "\n"
    } else {
        format!("{p}\ninitial: {initial}\nwell-formed: {wf}\n")
    };
    done(wf, out)
}

fn cmd_lts(text: &str, format: LtsFormat) -> Res {
    let p = process(text)?;
    let lts = build_lts(&p)?;
    let out = match format {
        LtsFormat::Dot => lts.to_dot(),
        LtsFormat::Json => lts.to_json().to_string() + "\n",
        LtsFormat::Text => {
            let mut s = format!(
                "states: {}\nedges: {}\nmaximal paths: {}\n",
                lts.state_count(),
                lts.edges().len(),
                lts.maximal_path_count()
            );
            for e in lts.edges() {
                let _ = writeln!(s, "{} --{}--> {}", e.src, e.label, e.dst);
            }
            s
        }
    };
    done(true, out)
}

fn cmd_denote(text: &str, json: bool) -> Res {
    let d = denote(&process(text)?)?;
    let c = &d.structure;
    let out = if json {
        save_scs(c, Some(d.cursor)) + "\n"
    } else {
        let mut s = format!("events: {}\nconfigurations: {}\n", c.event_count(), c.config_count());
        for e in 0..c.event_count() as u32 {
            let _ = writeln!(s, "  {} : {}", c.event(e), c.label(e));
        }
        for x in 0..c.config_count() {
            let mark = if x == d.cursor { " <- cursor" } else { "" };
            let _ = writeln!(s, "  {}{mark}", c.format_config(x));
        }
        s
    };
    done(true, out)
}

fn cmd_brm(text: Option<&str>, scs: Option<&Path>, config: Option<&str>, json: bool) -> Res {
    let m = match (text, scs) {
        (Some(t), None) => brm_process(&process(t)?)?,
        (None, Some(path)) => {
            let (c, cursor) = read_scs(path)?;
            let x = scs_config(&c, cursor, config)?;
            brm_config(&c, x)?
        }
        _ => return Err(Fail("give a process or --scs FILE".into())),
    };
    let out = if json { json!({ "brm": m.to_string() }).to_string() } else { m.to_string() };
    done(true, out + "\n")
}

fn cmd_stable(path: &Path, json: bool) -> Res {
    let (c, _) = read_scs(path)?;
    let report = validate_stable(&c);
    let violations: Vec<String> = report.violations.iter().map(|v| format!("{v:?}")).collect();
    let out = if json {
        json!({ "stable": report.is_stable(), "violations": violations }).to_string() + "\n"
    } else if report.is_stable() {
        "stable\n".to_string()
    } else {
        format!("not stable\n{}\n", violations.join("\n"))
    };
    done(report.is_stable(), out)
}

fn cmd_locality(file: Option<&Path>, text: Option<&str>, strict: bool, json: bool) -> Res {
    let c = match (file, text) {
        (Some(f), None) => read_scs(f)?.0,
        (None, Some(t)) => denote_initial(&process(t)?.to_initial())?,
        _ => return Err(Fail("give a structure file or --proc P".into())),
    };
    let r = is_conflict_local(&c, strict);
    let names = |v: &[u32]| v.iter().map(|&e| c.event(e).to_string()).collect::<Vec<_>>();
    let witness = r.witness.as_deref().map(names);
    let out = if json {
        json!({ "local": r.local, "witness": witness, "violations": r.violations.len() }).to_string() + "\n"
    } else if r.local {
        "local\n".to_string()
    } else {
        format!("not local\nwitness: {{{}}}\n", witness.unwrap_or_default().join(", "))
    };
    done(r.local, out)
}

fn describe_failure(f: &Failure) -> String {
    match f {
        Failure::BrmMismatch(l, r) => format!("brm mismatch: {l} vs {r}"),
        Failure::NotHistoryPreserving => "event bijection is not history preserving".into(),
        Failure::NoAnswer => "defender has no matching move".into(),
    }
}

fn render_witness<R>(w: &EquivalenceWitness<R>, json: bool) -> String {
    if json {
        return w.to_json().to_string() + "\n";
    }
    let mut s = String::from(if w.verdict { "equivalent\n" } else { "not equivalent\n" });
    for (i, TraceStep { side, dir, action, .. }) in w.trace.iter().flatten().enumerate() {
        let side = if *side == Side::Left { "left" } else { "right" };
        let dir = format!("{dir:?}").to_lowercase();
        let _ = writeln!(s, "  {}. {side} {dir} {action}", i + 1);
    }
    if let Some(f) = &w.failure {
        let _ = writeln!(s, "{}", describe_failure(f));
    }
    s
}

fn initial_process(text: &str) -> Result<Process, Fail> {
    let p = process(text)?;
    if !p.is_initial() {
        return Err(Fail(format!("`{text}` is not initial; hhpb compares structures from their empty configuration")));
    }
    Ok(p)
}

fn cmd_check(rel: Relation, procs: Option<&[String]>, files: Option<&[PathBuf]>, json: bool) -> Res {
    let out = match (rel, procs, files) {
        (Relation::FrbBrm, Some([a, b]), None) => {
            let w = frb_brm_proc(&process(a)?, &process(b)?)?;
            (w.verdict, render_witness(&w, json))
        }
        (Relation::Hhpb, Some([a, b]), None) => {
            let c1 = denote_initial(&initial_process(a)?)?;
            let c2 = denote_initial(&initial_process(b)?)?;
            let w = hhpb(&c1, &c2)?;
            (w.verdict, render_witness(&w, json))
        }
        (rel, None, Some([f1, f2])) => {
            let (c1, _) = read_scs(f1)?;
            let (c2, _) = read_scs(f2)?;
            if rel == Relation::FrbBrm {
                let w = frb_brm_scs(&c1, &c2)?;
                (w.verdict, render_witness(&w, json))
            } else {
                let w = hhpb(&c1, &c2)?;
                (w.verdict, render_witness(&w, json))
            }
        }
        _ => return Err(Fail("give --proc P1 P2 or --scs F1 F2".into())),
    };
    done(out.0, out.1)
}

fn parse_env(text: Option<&str>, as_term: bool) -> Result<Environment, Fail> {
    let mut env = Environment::new();
    for binding in split_top(text.unwrap_or("")) {
        let (x, id) = binding.split_once('=').ok_or_else(|| Fail(format!("binding `{binding}` lacks `=`")))?;
        let x = Ident::new(x.trim())?;
        let id = id.trim();
        let id = if as_term { EventId::Term(parse_proof_term(id)?) } else { EventId::Name(id.to_string()) };
        env.insert(x, id);
    }
    Ok(env)
}

fn cmd_mc(
    logic: Logic,
    text: Option<&str>,
    scs: Option<&Path>,
    config: Option<&str>,
    formula: &str,
    env: Option<&str>,
    json: bool,
) -> Res {
    let holds = match (logic, text, scs) {
        (Logic::Brm, Some(t), None) => {
            if env.is_some() {
                return Err(Fail("BRM formulas take no environment".into()));
            }
            mc_brm_process(&process(t)?, &parse_brm(formula)?)?
        }
        (Logic::Eil, Some(t), None) => mc_eil_process(&process(t)?, &parse_env(env, true)?, &parse_eil(formula)?)?,
        (logic, None, Some(path)) => {
            let (c, cursor) = read_scs(path)?;
            let x = scs_config(&c, cursor, config)?;
            let m = StructureModel::new(&c);
            match logic {
                Logic::Brm => eval_brm(&m, x, &parse_brm(formula)?),
                Logic::Eil => {
                    // Structure files name their events; bind by printed id.
                    let names = parse_env(env, false)?;
                    let mut resolved = Environment::new();
                    for (k, v) in names {
                        resolved.insert(k, c.event(scs_event(&c, &v.to_string())?).clone());
                    }
                    mc_eil_model(&m, x, &resolved, &parse_eil(formula)?)?
                }
            }
        }
        _ => return Err(Fail("give --proc P or --scs FILE".into())),
    };
    let out = if json {
        json!({ "satisfied": holds }).to_string()
    } else if holds {
        "satisfied".to_string()
    } else {
        "not satisfied".to_string()
    };
    done(holds, out + "\n")
}

fn cmd_translate(formula: &str, actions: &str, history: &str, json: bool) -> Res {
    let f = parse_brm(formula)?;
    let actions = parse_action_list(actions)?;
    let mut h = HistorySequence::new();
    for entry in split_top(history) {
        let (x, a) = entry.split_once(':').ok_or_else(|| Fail(format!("history entry `{entry}` lacks `:`")))?;
        h.0.push((Ident::new(x.trim())?, Action::new(a.trim())?));
    }
    let t = translate_brm_to_eil(&f, &actions, &h)?;
    let out = if json { json!({ "formula": t.to_string() }).to_string() } else { t.to_string() };
    done(true, out + "\n")
}

fn cmd_xvalidate(cfg: &GeneratorConfig, json: bool) -> Res {
    let r = cross_validate(cfg)?;
    let out = if json {
        serde_json::to_string(&r)? + "\n"
    } else {
        let mut s = format!(
            "pairs checked: {}\nagreements: {}\ndisagreements: {}\nequivalent pairs: {}\n",
            r.pairs_checked, r.agreements, r.disagreements, r.equivalent_pairs
        );
        for d in &r.dumps {
            let _ = writeln!(
                s,
                "  {} / {}: hhpb {}, frb-brm {}, local {}/{}",
                d.p1, d.p2, d.hhpb, d.frb, d.local1, d.local2
            );
        }
        if r.disagreements > 0 {
            let _ = writeln!(s, "every disagreement involves a non-local structure: {}", r.disagreements_explained());
        }
        s
    };
    done(r.disagreements == 0, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_level_split_keeps_terms() {
        assert_eq!(split_top("x=<a,a>[a],y=b"), ["x=<a,a>[a]", "y=b"]);
        assert!(split_top("").is_empty());
    }
}
