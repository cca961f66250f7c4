//! Command-line front end.
//!
//! Commands write results to the given writer and return errors instead of
//! exiting, so they can be driven from tests; [`run`] maps them to exit
//! codes. File outputs are written to a temporary file in the target
//! directory and renamed into place, so a failed command leaves nothing
//! behind.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use tempfile::NamedTempFile;

use crate::approx_mapper::PhonemeSpace;
use crate::corpus_select::{coverage_sort, select_top_k, CoverageReport, CoverageUnit};
use crate::encoder::encode_utterance;
use crate::error::{Error, Result};
use crate::export::{self, Matrix};
use crate::inventory::Inventories;
use crate::ipa_parser::{parse_phoneme, tokenize, ParseMode, PhonemeToken};
use crate::metrics::{upr_corpus, wer_counts};
use crate::schema::FeatureTable;

pub const DATA_ENV: &str = "PHONFEAT_DATA";
pub const DEFAULT_DATA_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
pub const FEATURE_TABLE_FILE: &str = "feature_table.tsv";
pub const INVENTORY_DIR: &str = "inventories";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Bin,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Mode {
    #[default]
    Strict,
    Lenient,
}

impl From<Mode> for ParseMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Strict => ParseMode::Strict,
            Mode::Lenient => ParseMode::Lenient,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Unit {
    #[default]
    Phoneme,
    Diphone,
}

impl From<Unit> for CoverageUnit {
    fn from(u: Unit) -> Self {
        match u {
            Unit::Phoneme => CoverageUnit::Phoneme,
            Unit::Diphone => CoverageUnit::Diphone,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "phonfeat",
    version,
    about = "Phonological feature compiler for IPA transcriptions"
)]
pub struct Cli {
    /// Directory holding feature_table.tsv and inventories/
    #[arg(long, global = true, env = DATA_ENV)]
    pub data_dir: Option<PathBuf>,

    /// How to treat unsupported diacritics
    #[arg(long, global = true, value_enum, default_value_t = Mode::Strict)]
    pub mode: Mode,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode an utterance file into a feature matrix plus index sidecar
    Encode(EncodeArgs),
    /// Unseen phoneme rate of a test corpus against training languages
    Upr(UprArgs),
    /// Rank sentences by phonetic coverage and print the top k
    Select(SelectArgs),
    /// Nearest in-inventory phoneme for a phoneme
    Nearest(NearestArgs),
    /// Word error rate between line-aligned transcript files
    Wer(WerArgs),
    /// Inspect shipped or custom inventories
    Inventory {
        #[command(subcommand)]
        action: InventoryAction,
    },
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long)]
    pub lang: String,
    #[arg(long)]
    pub input: PathBuf,
    /// Matrix output; the index is written next to it with `.idx` appended
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Bin)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct UprArgs {
    /// Comma-separated training language codes
    #[arg(long, value_delimiter = ',', required = true)]
    pub train: Vec<String>,
    #[arg(long)]
    pub test: PathBuf,
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Unit::Phoneme)]
    pub unit: Unit,
    /// Write records here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NearestArgs {
    /// Comma-separated language codes forming the inventory
    #[arg(long, value_delimiter = ',', required = true)]
    pub lang: Vec<String>,
    pub phoneme: String,
    /// Also print runners-up
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct WerArgs {
    #[arg(long)]
    pub reference: PathBuf,
    #[arg(long)]
    pub hypothesis: PathBuf,
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum InventoryAction {
    List,
    Show { code: String },
    Validate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub data_dir: PathBuf,
    pub mode: ParseMode,
    pub output_format: OutputFormat,
}

impl RunConfig {
    /// Flag, then `PHONFEAT_DATA`, then the bundled data directory.
    pub fn resolve_data_dir(flag: Option<PathBuf>) -> PathBuf {
        flag.or_else(|| std::env::var_os(DATA_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DATA_DIR))
    }
}

/// Feature table and inventories loaded from a data directory.
#[derive(Debug)]
pub struct Context {
    pub config: RunConfig,
    pub table: FeatureTable,
    pub inventories: Inventories,
}

impl Context {
    pub fn load(config: RunConfig) -> Result<Self> {
        let table = FeatureTable::load(config.data_dir.join(FEATURE_TABLE_FILE))?;
        let inv_dir = config.data_dir.join(INVENTORY_DIR);
        let inventories = if inv_dir.is_dir() {
            Inventories::load_dir(&inv_dir, &table)?
        } else {
            Inventories::default()
        };
        Ok(Context {
            config,
            table,
            inventories,
        })
    }

    fn tokenize_lines(&self, path: &Path) -> Result<Vec<Vec<PhonemeToken>>> {
        read_lines(path)?
            .iter()
            .enumerate()
            .map(|(i, line)| {
                tokenize(line, self.config.mode, &self.table)
                    .map(|t| t.tokens)
                    .map_err(|e| e.at_line(i + 1))
            })
            .collect()
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    BufReader::new(file)
        .lines()
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(|e| Error::io(path, e))
}

fn temp_beside(path: &Path) -> Result<NamedTempFile> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))
}

/// Writes every `(path, bytes)` pair to temporaries first and renames them
/// only once all writes succeeded.
fn write_atomically(files: &[(&Path, &[u8])]) -> Result<()> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, bytes) in files {
        let mut tmp = temp_beside(path)?;
        tmp.write_all(bytes).map_err(|e| Error::io(*path, e))?;
        tmp.flush().map_err(|e| Error::io(*path, e))?;
        staged.push((tmp, *path));
    }
    for (tmp, path) in staged {
        tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    }
    Ok(())
}

pub fn index_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".idx");
    PathBuf::from(s)
}

pub fn cmd_encode(ctx: &Context, args: &EncodeArgs) -> Result<Matrix> {
    ctx.inventories.get(&args.lang)?;
    let utterances = ctx.tokenize_lines(&args.input)?;
    let mut matrix = Matrix::default();
    let mut lengths = Vec::with_capacity(utterances.len());
    for (i, tokens) in utterances.iter().enumerate() {
        let encoded =
            encode_utterance(tokens, &ctx.table, Some(&args.lang)).map_err(|e| e.at_line(i + 1))?;
        lengths.push(encoded.n_rows());
        matrix.push_utterance(&encoded);
    }

    let mut body = Vec::new();
    match args.format {
        OutputFormat::Bin => export::write_bin(&matrix, &mut body)?,
        OutputFormat::Csv => export::write_csv(&matrix, &mut body)?,
    }
    let mut index = Vec::new();
    export::write_index(&export::index_records(lengths), &mut index)?;
    write_atomically(&[(&args.out, &body), (&index_path(&args.out), &index)])?;
    Ok(matrix)
}

pub fn cmd_upr(ctx: &Context, args: &UprArgs, out: &mut dyn Write) -> Result<()> {
    let train = ctx.inventories.union_of(&args.train)?;
    let corpus = ctx.tokenize_lines(&args.test)?;
    let report = upr_corpus(&corpus, &train)?;
    let io = |e| Error::io("<stdout>", e);
    if args.verbose {
        for (i, v) in report.per_utterance.iter().enumerate() {
            writeln!(out, "{i}\t{:.2}", v * 100.0).map_err(io)?;
        }
    }
    writeln!(out, "{}", report.display_percent()).map_err(io)?;
    Ok(())
}

pub fn select_report(ctx: &Context, input: &Path, unit: CoverageUnit) -> Result<CoverageReport> {
    coverage_sort(&ctx.tokenize_lines(input)?, unit)
}

pub fn cmd_select(ctx: &Context, args: &SelectArgs, out: &mut dyn Write) -> Result<()> {
    let report = select_report(ctx, &args.input, args.unit.into())?;
    let k = select_top_k(&report, args.k)?.len();
    let top = CoverageReport {
        order: report.order[..k].to_vec(),
        gains: report.gains[..k].to_vec(),
        rounds: report.rounds[..k].to_vec(),
        unit: report.unit,
    };
    let mut buf = Vec::new();
    top.write_tsv(&mut buf).expect("write to vec");
    match &args.out {
        Some(path) => write_atomically(&[(path, &buf)]),
        None => out.write_all(&buf).map_err(|e| Error::io("<stdout>", e)),
    }
}

pub fn cmd_nearest(ctx: &Context, args: &NearestArgs, out: &mut dyn Write) -> Result<()> {
    let inventory = ctx.inventories.union_of(&args.lang)?;
    let space = PhonemeSpace::new(&inventory, &ctx.table)?;
    let source = parse_phoneme(&args.phoneme, &ctx.table)?;
    let result = space.nearest(&source)?;
    let io = |e| Error::io("<stdout>", e);
    writeln!(out, "{result}").map_err(io)?;
    if args.verbose {
        for (c, d) in &result.runners_up {
            writeln!(out, "#\t{c}\t{d:.6}").map_err(io)?;
        }
    }
    Ok(())
}

/// Corpus WER: total edits over total reference words, in percent.
pub fn cmd_wer(args: &WerArgs, out: &mut dyn Write) -> Result<()> {
    let refs = read_lines(&args.reference)?;
    let hyps = read_lines(&args.hypothesis)?;
    if refs.len() != hyps.len() {
        return Err(Error::Format(format!(
            "reference has {} lines, hypothesis has {}",
            refs.len(),
            hyps.len()
        )));
    }
    if refs.is_empty() {
        return Err(Error::Empty("transcript file"));
    }
    let io = |e| Error::io("<stdout>", e);
    let (mut edits, mut words) = (0, 0);
    for (i, (r, h)) in refs.iter().zip(&hyps).enumerate() {
        let c = wer_counts(r, h).map_err(|e| e.at_line(i + 1))?;
        if args.verbose {
            writeln!(out, "{i}\t{:.2}", c.rate() * 100.0).map_err(io)?;
        }
        edits += c.edits;
        words += c.reference_words;
    }
    writeln!(out, "{:.2}", edits as f64 / words as f64 * 100.0).map_err(io)?;
    Ok(())
}

pub fn cmd_inventory(ctx: &Context, action: &InventoryAction, out: &mut dyn Write) -> Result<()> {
    let io = |e| Error::io("<stdout>", e);
    match action {
        InventoryAction::List => {
            for inv in ctx.inventories.iter() {
                let reference = inv
                    .reference_count
                    .map_or("-".to_string(), |n| n.to_string());
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    inv.code,
                    inv.display_name,
                    inv.len(),
                    reference
                )
                .map_err(io)?;
            }
        }
        InventoryAction::Show { code } => {
            let inv = ctx.inventories.get(code)?;
            for p in &inv.phonemes {
                writeln!(out, "{p}").map_err(io)?;
            }
        }
        InventoryAction::Validate => {
            if ctx.inventories.is_empty() {
                return Err(Error::Empty("inventory directory"));
            }
            let mut n = 0;
            for inv in ctx.inventories.iter() {
                for p in &inv.phonemes {
                    let phone = parse_phoneme(p, &ctx.table)?;
                    crate::encoder::encode_phone(&phone, &ctx.table)?;
                    n += 1;
                }
            }
            writeln!(
                out,
                "ok: {} inventories, {} phonemes, {} table symbols",
                ctx.inventories.len(),
                n,
                ctx.table.len()
            )
            .map_err(io)?;
        }
    }
    Ok(())
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    if let Command::Wer(args) = &cli.command {
        return cmd_wer(args, out);
    }
    let output_format = match &cli.command {
        Command::Encode(a) => a.format,
        _ => OutputFormat::default(),
    };
    let ctx = Context::load(RunConfig {
        data_dir: RunConfig::resolve_data_dir(cli.data_dir.clone()),
        mode: cli.mode.into(),
        output_format,
    })?;
    match &cli.command {
        Command::Encode(args) => {
            let m = cmd_encode(&ctx, args)?;
            writeln!(out, "wrote {} rows to {}", m.n_rows(), args.out.display())
                .map_err(|e| Error::io("<stdout>", e))
        }
        Command::Upr(args) => cmd_upr(&ctx, args, out),
        Command::Select(args) => cmd_select(&ctx, args, out),
        Command::Nearest(args) => cmd_nearest(&ctx, args, out),
        Command::Inventory { action } => cmd_inventory(&ctx, action, out),
        Command::Wer(_) => unreachable!(),
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
