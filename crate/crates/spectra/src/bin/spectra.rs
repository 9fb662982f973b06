//! Command-line entry point: structure generators, axiom printing, model
//! checking, machine search and encoding, Hanf censuses, spectrum search,
//! and the sentence/structure transforms.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.  All output is
//! deterministic for fixed inputs.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spectra::axioms;
use spectra::gens;
use spectra::hanf;
use spectra::logic::{self, closure, Assignment, Evaluator, Formula, Vocabulary};
use spectra::machine::{self, TmSearchResult};
use spectra::planarity;
use spectra::search::{self, Outcome, SearchMode};
use spectra::structure::{self, FiniteStructure};

#[derive(Parser)]
#[command(name = "spectra", version, about = "PIF structures, axioms and spectra", max_term_width = 100)]
struct Cli {
    /// Output format for result records.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a structure from one of the built-in families.
    Gen(GenArgs),
    /// Evaluate a sentence on a structure file.
    Check(CheckArgs),
    /// Print an axiom family as a formula file.
    Axioms(AxiomsArgs),
    /// Decide spectrum membership over a range of sizes.
    Spectrum(SpectrumArgs),
    /// Turing machines: accepting-run search and trace encoding.
    Tm(TmArgs),
    /// Queue machines: exhaustive runs and trace encoding.
    Queue(QueueArgs),
    /// Print the capped census of r-neighborhood types.
    HanfCensus(HanfArgs),
    /// Structure and sentence transforms.
    Transform(TransformArgs),
    /// Test the Gaifman graph of a structure for planarity.
    Planarity(PlanarityArgs),
}

#[derive(Args)]
struct GenArgs {
    /// spiral | powers | multiplication | fibonacci | binary | forcing-grid
    family: String,
    /// Universe size N.
    n: usize,
    /// Constant C (multiplication only).
    #[arg(long)]
    c: Option<usize>,
    /// Drop the doubling function (fibonacci only).
    #[arg(long)]
    planar_variant: bool,
    /// Digit base d (forcing-grid only).
    #[arg(long)]
    d: Option<usize>,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Structure file.
    #[arg(short, long)]
    structure: PathBuf,
    /// Built-in axiom family to check (see `axioms`).
    #[arg(short, long, conflicts_with = "formula")]
    axioms: Option<String>,
    /// Formula file to check.
    #[arg(short, long)]
    formula: Option<PathBuf>,
    /// Machine file (tm/queue axiom families).
    #[arg(long)]
    machine: Option<PathBuf>,
    /// Initial word (queue axiom family).
    #[arg(long)]
    initial: Option<String>,
    /// Drop the doubling function (fib axiom family).
    #[arg(long)]
    planar_variant: bool,
}

#[derive(Args)]
struct AxiomsArgs {
    /// phi-m | powers | composite | fib | binary | tm | queue
    family: String,
    /// Machine file (tm and queue).
    #[arg(long)]
    machine: Option<PathBuf>,
    /// Initial word (queue).
    #[arg(long)]
    initial: Option<String>,
    /// Drop the doubling function (fib).
    #[arg(long)]
    planar_variant: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Formula file.
    #[arg(long)]
    formula: PathBuf,
    /// Size range `a..b` (inclusive).
    #[arg(long)]
    range: String,
    /// all | planar | deg:<d> | planar-deg:<d>
    #[arg(long, default_value = "all")]
    mode: String,
    /// Search node budget per size.
    #[arg(long, default_value_t = search::DEFAULT_BUDGET)]
    budget: u64,
    /// Worker thread cap.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Directory for witness structure files.
    #[arg(long)]
    witness_dir: Option<PathBuf>,
}

#[derive(Args)]
struct TmArgs {
    #[command(subcommand)]
    command: TmCommand,
}

#[derive(Subcommand)]
enum TmCommand {
    /// Search for an accepting run.
    Search(TmRunArgs),
    /// Search for an accepting run and encode its trace as a structure.
    Encode(TmEncodeArgs),
}

#[derive(Args)]
struct TmRunArgs {
    /// Machine file.
    #[arg(short, long)]
    machine: PathBuf,
    /// Input word (may be empty).
    #[arg(long, default_value = "")]
    input: String,
    /// Time bound (steps).
    #[arg(long, default_value_t = 200)]
    time: usize,
    /// Space bound (cells).
    #[arg(long, default_value_t = 200)]
    space: usize,
}

#[derive(Args)]
struct TmEncodeArgs {
    #[command(flatten)]
    run: TmRunArgs,
    /// Padding per side (default ceil(log2(T+2))).
    #[arg(long)]
    pad: Option<usize>,
    /// Pad the universe to exactly S + 4T + 2 pad elements.
    #[arg(long)]
    exact_four: bool,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct QueueArgs {
    #[command(subcommand)]
    command: QueueCommand,
}

#[derive(Subcommand)]
enum QueueCommand {
    /// Exhaustively enumerate achievable final tape lengths.
    Run(QueueRunArgs),
    /// Encode the witness run of one achievable length as a structure.
    Encode(QueueEncodeArgs),
}

#[derive(Args)]
struct QueueRunArgs {
    /// Machine file.
    #[arg(short, long)]
    machine: PathBuf,
    /// Initial tape word.
    #[arg(long)]
    initial: String,
    /// Tape length cap.
    #[arg(long)]
    max_len: usize,
}

#[derive(Args)]
struct QueueEncodeArgs {
    #[command(flatten)]
    run: QueueRunArgs,
    /// Final tape length to encode.
    #[arg(long)]
    length: usize,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct HanfArgs {
    /// Structure file.
    #[arg(short, long)]
    structure: PathBuf,
    /// Neighborhood radius.
    #[arg(short, long)]
    radius: usize,
    /// Census count cap M.
    #[arg(short = 'M', long)]
    cap: usize,
    /// Degree bound d.
    #[arg(short, long)]
    degree: usize,
}

#[derive(Args)]
struct TransformArgs {
    #[command(subcommand)]
    command: TransformCommand,
}

#[derive(Subcommand)]
enum TransformCommand {
    /// Replace each element by a path gadget; output has degree at most 3.
    Deg3(Deg3Args),
    /// Invert deg3 using the vocabulary of a reference structure file.
    Decode3(Decode3Args),
    /// Add one size to a sentence's spectrum.
    UnionSize(SizeArgs),
    /// Remove one size from a sentence's spectrum.
    MinusSize(SizeArgs),
    /// Shift a sentence's spectrum up by one.
    ShiftUp(FormulaOnlyArgs),
    /// Shift a sentence's spectrum down by one.
    ShiftDown(FormulaOnlyArgs),
}

#[derive(Args)]
struct Deg3Args {
    /// Structure file.
    #[arg(short, long)]
    structure: PathBuf,
    /// Number of isolated padding vertices.
    #[arg(long, default_value_t = 0)]
    isolated: usize,
    /// Order gadget slots along a planar embedding.
    #[arg(long)]
    planar_order: bool,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Decode3Args {
    /// Gadget structure file.
    #[arg(short, long)]
    structure: PathBuf,
    /// Structure file whose vocabulary the output should use.
    #[arg(long)]
    vocab_from: PathBuf,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SizeArgs {
    /// Formula file.
    #[arg(long)]
    formula: PathBuf,
    /// The size to add or remove.
    #[arg(short, long)]
    n: usize,
}

#[derive(Args)]
struct FormulaOnlyArgs {
    /// Formula file.
    #[arg(long)]
    formula: PathBuf,
}

#[derive(Args)]
struct PlanarityArgs {
    /// Structure file.
    #[arg(short, long)]
    structure: PathBuf,
    /// Also print the rotation system of an embedding.
    #[arg(long)]
    embedding: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Check(a) => check(a, cli.format),
        Command::Axioms(a) => {
            let (vocab, phi) = axioms_family(&a)?;
            print!("{}", formula_file(&vocab, &phi));
            Ok(())
        }
        Command::Spectrum(a) => spectrum(a, cli.format),
        Command::Tm(a) => match a.command {
            TmCommand::Search(r) => tm_search_cmd(r, cli.format),
            TmCommand::Encode(e) => tm_encode_cmd(e),
        },
        Command::Queue(a) => match a.command {
            QueueCommand::Run(r) => queue_run_cmd(r, cli.format),
            QueueCommand::Encode(e) => queue_encode_cmd(e),
        },
        Command::HanfCensus(a) => hanf_census(a, cli.format),
        Command::Transform(a) => match a.command {
            TransformCommand::Deg3(d) => deg3(d),
            TransformCommand::Decode3(d) => decode3(d),
            TransformCommand::UnionSize(s) => size_transform(s, true),
            TransformCommand::MinusSize(s) => size_transform(s, false),
            TransformCommand::ShiftUp(f) => shift(f, true),
            TransformCommand::ShiftDown(f) => shift(f, false),
        },
        Command::Planarity(a) => planarity_cmd(a, cli.format),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_structure(path: &PathBuf) -> Result<FiniteStructure, String> {
    structure::deserialize(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Formula files: optional `unary`/`pif`/`const` directives naming the
// vocabulary, then `formula:` followed by the sentence.
// ---------------------------------------------------------------------------

fn parse_formula_file(text: &str) -> Result<(Vocabulary, Formula), String> {
    let mut unary = Vec::new();
    let mut pifs = Vec::new();
    let mut consts = Vec::new();
    let mut body = None;
    let mut rest = String::new();
    for (i, raw) in text.lines().enumerate() {
        if body.is_some() {
            rest.push_str(raw);
            rest.push('\n');
            continue;
        }
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(names) = line.strip_prefix("unary ") {
            unary.extend(names.split_whitespace().map(str::to_string));
        } else if let Some(names) = line.strip_prefix("pif ") {
            pifs.extend(names.split_whitespace().map(str::to_string));
        } else if let Some(names) = line.strip_prefix("const ") {
            consts.extend(names.split_whitespace().map(str::to_string));
        } else if line == "formula:" {
            body = Some(());
        } else {
            return Err(format!("line {}: expected a vocabulary directive or `formula:`", i + 1));
        }
    }
    if body.is_none() {
        return Err("missing `formula:` line".into());
    }
    let vocab = Vocabulary::new(unary, pifs, consts).map_err(err)?;
    let phi = logic::parse_formula(&rest, &vocab).map_err(err)?;
    Ok((vocab, phi))
}

fn formula_file(vocab: &Vocabulary, phi: &Formula) -> String {
    let mut out = String::new();
    if !vocab.unary_symbols().is_empty() {
        let _ = writeln!(out, "unary {}", vocab.unary_symbols().join(" "));
    }
    if !vocab.pif_symbols().is_empty() {
        let _ = writeln!(out, "pif {}", vocab.pif_symbols().join(" "));
    }
    if !vocab.constant_symbols().is_empty() {
        let _ = writeln!(out, "const {}", vocab.constant_symbols().join(" "));
    }
    let _ = writeln!(out, "formula:");
    let _ = writeln!(out, "{phi}");
    out
}

fn load_formula_file(path: &PathBuf) -> Result<(Vocabulary, Formula), String> {
    parse_formula_file(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn gen(a: GenArgs) -> Result<(), String> {
    let s = match a.family.as_str() {
        "spiral" => gens::spiral(a.n).map_err(err)?,
        "powers" => gens::powers_structure(a.n).map_err(err)?,
        "multiplication" => {
            let c = a.c.ok_or("multiplication needs --c")?;
            gens::multiplication_structure(a.n, c).map_err(err)?
        }
        "fibonacci" => gens::fibonacci_structure(a.n, a.planar_variant).map_err(err)?,
        "binary" => gens::binary_rep_structure(a.n).map_err(err)?,
        "forcing-grid" => {
            let d = a.d.ok_or("forcing-grid needs --d")?;
            gens::forcing_grid(a.n, d).map_err(err)?.0
        }
        other => return Err(format!("unknown family `{other}`")),
    };
    emit(&structure::serialize(&s), &a.output)
}

fn axioms_family(a: &AxiomsArgs) -> Result<(Vocabulary, Formula), String> {
    Ok(match a.family.as_str() {
        "phi-m" => (gens::spiral_vocabulary(), axioms::phi_m()),
        "powers" => (gens::powers_vocabulary(), axioms::powers_axioms()),
        "composite" => (gens::multiplication_vocabulary(), axioms::composite_axioms()),
        "fib" => (
            gens::fibonacci_vocabulary(a.planar_variant),
            axioms::fib_axioms(a.planar_variant),
        ),
        "binary" => (gens::binary_vocabulary(), axioms::binary_axioms()),
        "tm" => {
            let path = a.machine.as_ref().ok_or("tm needs --machine")?;
            let m = machine::parse_turing_machine(&read(path)?).map_err(err)?;
            (machine::tm_vocabulary(&m), axioms::tm_axioms(&m))
        }
        "queue" => {
            let path = a.machine.as_ref().ok_or("queue needs --machine")?;
            let initial = a.initial.as_ref().ok_or("queue needs --initial")?;
            let m = machine::parse_queue_machine(&read(path)?).map_err(err)?;
            (machine::queue_vocabulary(&m), axioms::queue_axioms(&m, initial))
        }
        other => return Err(format!("unknown axiom family `{other}`")),
    })
}

fn check(a: CheckArgs, format: Format) -> Result<(), String> {
    let s = load_structure(&a.structure)?;
    let phi = if let Some(family) = &a.axioms {
        let args = AxiomsArgs {
            family: family.clone(),
            machine: a.machine.clone(),
            initial: a.initial.clone(),
            planar_variant: a.planar_variant,
        };
        axioms_family(&args)?.1
    } else if let Some(path) = &a.formula {
        load_formula_file(path)?.1
    } else {
        return Err("need --axioms or --formula".into());
    };
    let ev = Evaluator::new(s.vocab(), &phi, vec![]).map_err(err)?;
    let holds = ev.eval(&s, &Assignment::new()).map_err(err)?;
    match format {
        Format::Text => println!("{holds}"),
        Format::Json => println!("{}", serde_json::json!({ "holds": holds })),
    }
    Ok(())
}

fn parse_mode(text: &str) -> Result<SearchMode, String> {
    if text == "all" {
        return Ok(SearchMode::All);
    }
    if text == "planar" {
        return Ok(SearchMode::Planar);
    }
    let deg = |s: &str| s.parse::<usize>().map_err(|_| format!("bad degree in mode `{text}`"));
    if let Some(d) = text.strip_prefix("planar-deg:") {
        return Ok(SearchMode::PlanarAndDegree(deg(d)?));
    }
    if let Some(d) = text.strip_prefix("deg:") {
        return Ok(SearchMode::DegreeAtMost(deg(d)?));
    }
    Err(format!("unknown mode `{text}`; use all, planar, deg:<d> or planar-deg:<d>"))
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = text.split_once("..").ok_or_else(|| format!("bad range `{text}`"))?;
    let lo = lo.parse().map_err(|_| format!("bad range `{text}`"))?;
    let hi = hi.parse().map_err(|_| format!("bad range `{text}`"))?;
    if lo < 1 || lo > hi {
        return Err(format!("need 1 <= a <= b in range `{text}`"));
    }
    Ok((lo, hi))
}

fn spectrum(a: SpectrumArgs, format: Format) -> Result<(), String> {
    let (vocab, phi) = load_formula_file(&a.formula)?;
    let (lo, hi) = parse_range(&a.range)?;
    let mode = parse_mode(&a.mode)?;
    let jobs = a.jobs.max(1).min(hi - lo + 1);

    let next = AtomicUsize::new(lo);
    let results: Mutex<Vec<(usize, Result<Outcome, String>)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let n = next.fetch_add(1, Ordering::SeqCst);
                if n > hi {
                    break;
                }
                let out = search::model_exists(&phi, &vocab, n, mode, a.budget)
                    .map(|(o, _)| o)
                    .map_err(err);
                results.lock().unwrap().push((n, out));
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(n, _)| *n);

    if let Some(dir) = &a.witness_dir {
        std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    }
    for (n, out) in results {
        let out = out?;
        let (verdict, witness) = match out {
            Outcome::Witness(s) => {
                let path = a.witness_dir.as_ref().map(|dir| {
                    let path = dir.join(format!("witness_{n}.fm"));
                    std::fs::write(&path, structure::serialize(&s)).map(|()| path)
                });
                match path {
                    Some(Ok(path)) => ("member", Some(path.display().to_string())),
                    Some(Err(e)) => return Err(format!("writing witness for n={n}: {e}")),
                    None => ("member", None),
                }
            }
            Outcome::NoModel => ("nonmember", None),
            Outcome::Unknown => ("unknown", None),
        };
        match format {
            Format::Text => match &witness {
                Some(path) => println!("n={n} {verdict} witness={path}"),
                None => println!("n={n} {verdict}"),
            },
            Format::Json => println!(
                "{}",
                serde_json::json!({ "n": n, "verdict": verdict, "witness": witness })
            ),
        }
    }
    Ok(())
}

fn tm_run(a: &TmRunArgs) -> Result<(machine::TuringMachine, TmSearchResult), String> {
    let m = machine::parse_turing_machine(&read(&a.machine)?).map_err(err)?;
    let r = machine::tm_search(&m, &a.input, a.time, a.space).map_err(err)?;
    Ok((m, r))
}

fn tm_search_cmd(a: TmRunArgs, format: Format) -> Result<(), String> {
    let (_, r) = tm_run(&a)?;
    let record = match &r {
        TmSearchResult::Accepting(t) => {
            serde_json::json!({ "result": "accepting", "time": t.time(), "space": t.space() })
        }
        TmSearchResult::Rejecting => serde_json::json!({ "result": "rejecting" }),
        TmSearchResult::BoundsExceeded => serde_json::json!({ "result": "bounds-exceeded" }),
    };
    match format {
        Format::Json => println!("{record}"),
        Format::Text => match &r {
            TmSearchResult::Accepting(t) => {
                println!("accepting time={} space={}", t.time(), t.space())
            }
            TmSearchResult::Rejecting => println!("rejecting"),
            TmSearchResult::BoundsExceeded => println!("bounds-exceeded"),
        },
    }
    Ok(())
}

fn tm_encode_cmd(a: TmEncodeArgs) -> Result<(), String> {
    let (m, r) = tm_run(&a.run)?;
    let TmSearchResult::Accepting(t) = r else {
        return Err("no accepting run within the bounds".into());
    };
    let pad = a.pad.unwrap_or_else(|| machine::default_pad(t.time()));
    let enc = machine::encode_trace(&m, &t, pad, a.exact_four).map_err(err)?;
    emit(&structure::serialize(&enc.structure), &a.output)
}

fn queue_run_cmd(a: QueueRunArgs, format: Format) -> Result<(), String> {
    let m = machine::parse_queue_machine(&read(&a.machine)?).map_err(err)?;
    let r = machine::queue_run(&m, &a.initial, a.max_len).map_err(err)?;
    match format {
        Format::Text => {
            for len in &r.lengths {
                println!("length={len} tape={}", r.witnesses[len].final_tape);
            }
        }
        Format::Json => {
            for len in &r.lengths {
                println!(
                    "{}",
                    serde_json::json!({ "length": len, "tape": r.witnesses[len].final_tape })
                );
            }
        }
    }
    Ok(())
}

fn queue_encode_cmd(a: QueueEncodeArgs) -> Result<(), String> {
    let m = machine::parse_queue_machine(&read(&a.run.machine)?).map_err(err)?;
    let r = machine::queue_run(&m, &a.run.initial, a.run.max_len).map_err(err)?;
    let t = r
        .witnesses
        .get(&a.length)
        .ok_or_else(|| format!("length {} is not achievable within the cap", a.length))?;
    let s = machine::encode_queue_trace(&m, t).map_err(err)?;
    emit(&structure::serialize(&s), &a.output)
}

fn hanf_census(a: HanfArgs, format: Format) -> Result<(), String> {
    let s = load_structure(&a.structure)?;
    let census = hanf::type_census(&s, a.radius, a.cap, a.degree).map_err(err)?;
    for (t, count) in &census.counts {
        match format {
            Format::Text => {
                println!("type {} count {count}", t.fingerprint());
                for line in t.dump().lines() {
                    println!("  {line}");
                }
            }
            Format::Json => println!(
                "{}",
                serde_json::json!({
                    "type": t.fingerprint(),
                    "count": count,
                    "dump": t.dump(),
                })
            ),
        }
    }
    Ok(())
}

fn deg3(a: Deg3Args) -> Result<(), String> {
    let s = load_structure(&a.structure)?;
    let t = search::pif_to_degree3(&s, a.isolated, a.planar_order).map_err(err)?;
    emit(&structure::serialize(&t), &a.output)
}

fn decode3(a: Decode3Args) -> Result<(), String> {
    let t = load_structure(&a.structure)?;
    let reference = load_structure(&a.vocab_from)?;
    let s = search::decode_degree3(&t, reference.vocab()).map_err(err)?;
    emit(&structure::serialize(&s), &a.output)
}

fn size_transform(a: SizeArgs, union: bool) -> Result<(), String> {
    let (vocab, phi) = load_formula_file(&a.formula)?;
    let out = if union {
        closure::union_size(&phi, a.n).map_err(err)?
    } else {
        closure::minus_size(&phi, a.n).map_err(err)?
    };
    print!("{}", formula_file(&vocab, &out));
    Ok(())
}

fn shift(a: FormulaOnlyArgs, up: bool) -> Result<(), String> {
    let (vocab, phi) = load_formula_file(&a.formula)?;
    let (out, new_vocab) = if up {
        closure::shift_up_transform(&phi, &vocab).map_err(err)?
    } else {
        closure::delete_element_transform(&phi, &vocab).map_err(err)?
    };
    print!("{}", formula_file(&new_vocab, &out));
    Ok(())
}

fn planarity_cmd(a: PlanarityArgs, format: Format) -> Result<(), String> {
    let s = load_structure(&a.structure)?;
    let g = structure::gaifman_graph(&s);
    let emb = planarity::planar_embedding(&g);
    let planar = emb.is_some();
    match format {
        Format::Text => {
            println!("{}", if planar { "planar" } else { "nonplanar" });
            if a.embedding {
                if let Some(emb) = &emb {
                    for v in 1..=g.vertex_count() {
                        let rot: Vec<String> =
                            emb.rotation(v).iter().map(usize::to_string).collect();
                        println!("rotation {v}: {}", rot.join(" "));
                    }
                }
            }
        }
        Format::Json => {
            let rotations: Option<Vec<Vec<usize>>> = emb.as_ref().map(|emb| {
                (1..=g.vertex_count()).map(|v| emb.rotation(v).to_vec()).collect()
            });
            println!(
                "{}",
                serde_json::json!({
                    "planar": planar,
                    "rotations": if a.embedding { rotations } else { None },
                })
            );
        }
    }
    Ok(())
}
