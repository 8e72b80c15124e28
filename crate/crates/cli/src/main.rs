use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mknf::engine::{Engine, EngineConfig, QueryResult};
use mknf::oracle::{Oracle, WellFoundedModel};
use mknf::parser::{load, parse_atom, parse_literal, validate_dl_safety, Literal, SourceBundle};
use mknf::tableau::{AboxView, EntailmentQuery, Reasoner};
use mknf::model::Substitution;
use mknf::{Atom, AtomSet, EngineError, GroundAtom, KnowledgeBase, ModelError, TruthValue};

#[derive(Parser, Debug)]
#[command(name = "mknf", version, about = "Well-founded query answering over hybrid MKNF knowledge bases")]
struct Cli {
    /// Rules file.
    #[arg(long, global = true)]
    rules: Option<PathBuf>,
    /// Ontology file.
    #[arg(long, global = true)]
    onto: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = EngineChoice::Goal)]
    engine: EngineChoice,
    /// 1 prints statistics, 2 also prints one line per iteration layer (to stderr).
    #[arg(long, global = true, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=2))]
    trace: u8,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true)]
    max_individuals: Option<usize>,
    #[arg(long, global = true)]
    max_outer: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse both files and report diagnostics.
    Check,
    /// Answer a ground or open query.
    Query { query: String },
    /// Print the well-founded partition of every rule atom.
    Model,
    /// Check a literal against the ontology alone.
    Entails { literal: String },
    /// Read queries from standard input, one per line.
    Repl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EngineChoice {
    Goal,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

/// A failed command and its exit status.
#[derive(Debug)]
enum Failure {
    Input(String),
    Safety(String),
    Mismatch(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Safety(_) => 3,
            Failure::Mismatch(_) => 4,
            Failure::Cap(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Safety(m) | Failure::Mismatch(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::TooManyIndividuals(_) | EngineError::TooManyOuterIterations(_) => Failure::Cap(e.to_string()),
            EngineError::Model(mknf::ModelError::Unsafe { .. }) => Failure::Safety(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        Failure::from(EngineError::from(e))
    }
}

type CmdResult = Result<(), Failure>;

struct Session<'a> {
    cli: &'a Cli,
    kb: KnowledgeBase,
    engine: Engine,
    out: String,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn display(path: &Option<PathBuf>) -> String {
    path.as_ref().map_or_else(|| "<none>".to_string(), |p| p.display().to_string())
}

/// Loads the knowledge base, printing diagnostics to stderr.
fn load_kb(cli: &Cli, require_both: bool) -> Result<KnowledgeBase, Failure> {
    if require_both && (cli.rules.is_none() || cli.onto.is_none()) {
        return Err(Failure::Input("both --rules and --onto are required".into()));
    }
    if cli.rules.is_none() && cli.onto.is_none() {
        return Err(Failure::Input("at least one of --rules and --onto is required".into()));
    }
    let bundle = SourceBundle {
        rules_text: cli.rules.as_deref().map(read).transpose()?.unwrap_or_default(),
        ontology_text: cli.onto.as_deref().map(read).transpose()?.unwrap_or_default(),
    };
    let loaded = load(&bundle);
    let mut stderr = io::stderr().lock();
    for d in &loaded.rule_diagnostics {
        let _ = writeln!(stderr, "{}: {d}", display(&cli.rules));
    }
    for d in &loaded.ontology_diagnostics {
        let _ = writeln!(stderr, "{}: {d}", display(&cli.onto));
    }
    if loaded.has_errors() {
        return Err(Failure::Input("the input has errors".into()));
    }
    let kb = loaded.kb.expect("no errors means a knowledge base");
    let safety = validate_dl_safety(&kb, &loaded.rule_lines);
    for d in &safety {
        let _ = writeln!(stderr, "{}: {d}", display(&cli.rules));
    }
    if safety.iter().any(|d| d.is_error()) {
        return Err(Failure::Safety("the rules are not DL-safe".into()));
    }
    Ok(kb)
}

fn engine_config(cli: &Cli) -> EngineConfig {
    let mut config = EngineConfig { max_outer: cli.max_outer, ..Default::default() };
    if let Some(n) = cli.max_individuals {
        config.max_individuals = n;
    }
    config
}

fn format_substitution(s: &Substitution) -> String {
    s.iter().map(|(v, i)| format!("{v}={i}")).collect::<Vec<_>>().join(", ")
}

impl Session<'_> {
    fn trace(&self, r: &QueryResult) {
        if self.cli.trace == 0 {
            return;
        }
        let mut stderr = io::stderr().lock();
        if self.cli.trace >= 2 {
            for (o, i, n) in r.table.layer_growth() {
                let _ = writeln!(stderr, "outer {o} inner {i}: {n} new");
            }
        }
        let s = &r.stats;
        let _ = writeln!(
            stderr,
            "tableau calls: {}, outer iterations: {}, inner iterations: {}, relevant individuals: {}",
            s.tableau_calls,
            s.outer_iterations,
            s.inner_iterations,
            r.relevant.len()
        );
    }

    fn oracle(&self, extra: &BTreeSet<mknf::Individual>) -> Result<(Oracle, WellFoundedModel), Failure> {
        let oracle = Oracle::new(&self.kb, extra)?;
        let model = oracle.well_founded_model()?;
        if self.cli.trace >= 1 {
            eprintln!("oracle: {} iterations, {} tableau calls", model.sequence.len(), model.tableau_calls);
        }
        Ok((oracle, model))
    }

    /// Answers for `targets` from the selected engine(s).
    fn answers(&self, targets: &[GroundAtom], goal: impl FnOnce() -> Result<QueryResult, EngineError>) -> Result<(Vec<TruthValue>, bool), Failure> {
        let mut goal_values = None;
        let mut inconsistent = false;
        if self.cli.engine != EngineChoice::Oracle {
            let r = goal()?;
            self.trace(&r);
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            inconsistent |= r.inconsistent;
            goal_values = Some(r.answers.iter().map(|a| a.value).collect::<Vec<_>>());
        }
        let mut oracle_values = None;
        if self.cli.engine != EngineChoice::Goal {
            let extra = targets.iter().flat_map(|a| a.args.iter().cloned()).collect();
            let (_, model) = self.oracle(&extra)?;
            inconsistent |= model.inconsistent;
            oracle_values = Some(targets.iter().map(|a| model.truth(a)).collect::<Vec<_>>());
        }
        if let (Some(g), Some(o)) = (&goal_values, &oracle_values) {
            let diffs: Vec<String> = targets
                .iter()
                .zip(g.iter().zip(o))
                .filter(|(_, (x, y))| x != y)
                .map(|(a, (x, y))| format!("{a}: goal {x}, oracle {y}"))
                .collect();
            if !diffs.is_empty() {
                return Err(Failure::Mismatch(format!("engines disagree\n{}", diffs.join("\n"))));
            }
        }
        Ok((goal_values.or(oracle_values).expect("one engine ran"), inconsistent))
    }

    fn query(&mut self, text: &str) -> CmdResult {
        let query: Atom = parse_atom(text).map_err(|d| Failure::Input(format!("query: {}", d.message)))?;
        let bindings = self.engine.bindings(&query);
        let targets: Vec<GroundAtom> = bindings.iter().map(|s| query.substitute(s)).collect();
        let (values, inconsistent) = self.answers(&targets, || self.engine.answer(&query))?;
        if inconsistent {
            eprintln!("warning: the knowledge base is inconsistent");
        }
        if query.is_ground() && self.cli.format == Format::Text {
            let _ = writeln!(self.out, "{}", values[0]);
            return Ok(());
        }
        for ((s, atom), v) in bindings.iter().zip(&targets).zip(&values) {
            match self.cli.format {
                Format::Text => {
                    let _ = writeln!(self.out, "{}: {v}", format_substitution(s));
                }
                Format::Tsv => {
                    let _ = writeln!(self.out, "{atom}\t{v}");
                }
            }
        }
        Ok(())
    }

    fn model(&mut self) -> CmdResult {
        let atoms: Vec<GroundAtom> = self.kb.ground(&self.kb.individuals()).k_atoms()?.into_iter().collect();
        let (values, inconsistent) = self.answers(&atoms, || self.engine.answer_atoms(&atoms))?;
        if inconsistent {
            eprintln!("warning: the knowledge base is inconsistent");
        }
        for section in [TruthValue::True, TruthValue::Undefined, TruthValue::False] {
            let members = atoms.iter().zip(&values).filter(|(_, v)| **v == section).map(|(a, _)| a);
            match self.cli.format {
                Format::Text => {
                    let _ = writeln!(self.out, "{section}:");
                    for a in members {
                        let _ = writeln!(self.out, "  {a}");
                    }
                }
                Format::Tsv => {
                    for a in members {
                        let _ = writeln!(self.out, "{a}\t{section}");
                    }
                }
            }
        }
        Ok(())
    }

    fn entails(&mut self, text: &str) -> CmdResult {
        let literal = parse_literal(text).map_err(|d| Failure::Input(format!("literal: {}", d.message)))?;
        let ground = |a: Atom| a.to_ground().ok_or_else(|| Failure::Input("the literal must be ground".into()));
        let query = match literal {
            Literal::Positive(a) => EntailmentQuery::Positive(ground(a)?),
            Literal::Negative(a) => EntailmentQuery::Negative(ground(a)?),
            Literal::Equality(x, y) => EntailmentQuery::Equality(x, y),
        };
        if let EntailmentQuery::Positive(a) | EntailmentQuery::Negative(a) = &query {
            if !self.kb.is_dl(&a.predicate) {
                let in_rules = self.kb.predicates().iter().any(|p| p.name == a.predicate);
                if in_rules {
                    return Err(Failure::Input(format!("`{}` is not a DL predicate", a.predicate)));
                }
                eprintln!("warning: predicate `{}` does not occur in the knowledge base", a.predicate);
                let _ = writeln!(self.out, "not-entailed");
                return Ok(());
            }
        }
        let reasoner = Reasoner::new(&self.kb.ontology, &self.kb.signature);
        let view = AboxView::new(&self.kb.ontology, AtomSet::new());
        let entailed = reasoner.entails(&view, &query).map_err(|e| Failure::Input(e.to_string()))?;
        let _ = writeln!(self.out, "{}", if entailed { "entailed" } else { "not-entailed" });
        Ok(())
    }

    fn flush(&mut self) {
        let mut stdout = io::stdout().lock();
        let _ = stdout.write_all(self.out.as_bytes());
        let _ = stdout.flush();
        self.out.clear();
    }

    fn repl(&mut self) -> CmdResult {
        let stdin = io::stdin();
        let mut worst: Option<Failure> = None;
        for line in stdin.lock().lines() {
            let line = line.map_err(|e| Failure::Input(e.to_string()))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            if line == "quit" || line == "exit" {
                break;
            }
            if let Err(f) = self.query(line) {
                eprintln!("error: {}", f.message());
                if f.code() == 4 || worst.is_none() {
                    worst = Some(f);
                }
            }
            self.flush();
        }
        worst.map_or(Ok(()), Err)
    }
}

fn run(cli: &Cli) -> CmdResult {
    if let Command::Check = cli.command {
        let kb = load_kb(cli, false)?;
        println!("ok: {} rules, {} axioms", kb.program.len(), kb.ontology.len());
        return Ok(());
    }
    let kb = load_kb(cli, true)?;
    let engine = Engine::new(&kb, engine_config(cli))?;
    let mut session = Session { cli, kb, engine, out: String::new() };
    let result = match &cli.command {
        Command::Check => unreachable!("handled above"),
        Command::Query { query } => session.query(query),
        Command::Model => session.model(),
        Command::Entails { literal } => session.entails(literal),
        Command::Repl => session.repl(),
    };
    session.flush();
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
