use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abwt::rankinv::{check_rank_invertible, predict_rank_invertible, Status};
use abwt::reference::{bwt_k_naive, invert_generic, rotation_matrix};
use abwt::stats::{check_entropy_factorization, check_run_bound};
use abwt::{
    find_galois_rotation, h0, hk, hk_circular, is_sentinel_terminated, ByteAbwtIndex, ByteAlphabet,
    ByteOrderSpec, ByteTransform,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Core(#[from] abwt::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "abwt", version, about = "Alternating and generalized Burrows-Wheeler transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SentinelMode {
    /// Append 0x00 when the input has none; strip it again on invert.
    Auto,
    /// The input must end with a single 0x00.
    Require,
    /// The input must not contain 0x00 and must be primitive.
    Forbid,
}

#[derive(Subcommand)]
enum Command {
    /// Write L to OUTPUT and n, I, K, sentinel to a sidecar file.
    Transform {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Sidecar path, defaults to OUTPUT.meta.
        #[arg(long)]
        meta: Option<PathBuf>,
        #[arg(long, default_value = "id:rev", value_parser = parse_order)]
        order: ByteOrderSpec,
        #[arg(long, value_enum, default_value_t = SentinelMode::Forbid)]
        sentinel: SentinelMode,
        /// Sort the rotation matrix instead of taking a fast path.
        #[arg(long)]
        naive: bool,
    },
    /// Recover the input from a payload and its sidecar.
    Invert {
        payload: PathBuf,
        #[arg(long)]
        meta: Option<PathBuf>,
        /// Defaults to standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Rebuild the matrix column by column even for id and id:rev.
        #[arg(long)]
        naive: bool,
    },
    /// Build a searchable alternating index.
    Index {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Keep the row to text position map so occurrences can be located.
        #[arg(long)]
        locate: bool,
        #[arg(long, value_enum, default_value_t = SentinelMode::Forbid)]
        sentinel: SentinelMode,
    },
    /// Count, and optionally locate, a pattern in an index.
    Search {
        index: PathBuf,
        pattern: String,
        #[arg(long)]
        positions: bool,
    },
    /// Rotation of the input that is a Galois word.
    Galois { input: PathBuf },
    /// Runs, entropies and the run and entropy checks for one order.
    Stats {
        input: PathBuf,
        #[arg(long, default_value = "id:rev", value_parser = parse_order)]
        order: ByteOrderSpec,
        /// Context length for the entropy factorization check.
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Search all primitive words up to a length for a rank-invertibility witness.
    Rankinv {
        #[arg(long, value_parser = parse_order)]
        order: ByteOrderSpec,
        /// Symbols of the alphabet, e.g. `abc`.
        #[arg(long)]
        alphabet: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

fn parse_order(s: &str) -> std::result::Result<ByteOrderSpec, String> {
    s.parse().map_err(|e: abwt::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("abwt: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Transform { input, output, meta, order, sentinel, naive } => {
            let (word, appended) = prepare(fs::read(&input)?, sentinel)?;
            let out = if naive { bwt_k_naive(&word, &order)? } else { abwt::transform(&word, &order)? };
            fs::write(&output, &out.last_column)?;
            let meta = meta.unwrap_or_else(|| sidecar_path(&output));
            fs::write(meta, Metadata { n: out.len(), row: out.row_index, order, appended }.render())?;
            Ok(())
        }
        Command::Invert { payload, meta, output, naive } => {
            let l = fs::read(&payload)?;
            let meta = Metadata::parse(&fs::read_to_string(meta.unwrap_or_else(|| sidecar_path(&payload)))?)?;
            if meta.n != l.len() {
                return Err(CliError::Data(format!("sidecar says n={} but payload has {} bytes", meta.n, l.len())));
            }
            if meta.row >= meta.n {
                return Err(CliError::Data(format!("row index I={} out of range for n={}", meta.row, meta.n)));
            }
            let out = ByteTransform::new(l, meta.row);
            let mut w = if naive { invert_generic(&out, &meta.order)? } else { abwt::invert(&out, &meta.order)? };
            if meta.appended {
                if w.last() != Some(&0) {
                    return Err(CliError::Data("recovered text does not end with the sentinel".into()));
                }
                w.pop();
            }
            match output {
                Some(path) => fs::write(path, w)?,
                None => io::stdout().lock().write_all(&w)?,
            }
            Ok(())
        }
        Command::Index { input, output, locate, sentinel } => {
            let (word, _) = prepare(fs::read(&input)?, sentinel)?;
            let index = ByteAbwtIndex::build(&word, locate)?;
            let mut file = BufWriter::new(fs::File::create(&output)?);
            index.write_to(&mut file)?;
            file.flush()?;
            Ok(())
        }
        Command::Search { index, pattern, positions } => {
            let index = ByteAbwtIndex::read_from(BufReader::new(fs::File::open(&index)?))?;
            let p = pattern.as_bytes();
            let mut report = format!("count={}\n", index.count(p));
            if positions {
                let found = index.locate(p)?;
                let list: Vec<String> = found.iter().map(usize::to_string).collect();
                writeln!(report, "positions={}", list.join(",")).unwrap();
            }
            print!("{report}");
            Ok(())
        }
        Command::Galois { input } => {
            let w = fs::read(&input)?;
            let g = find_galois_rotation(&w)?;
            let mut rotated = w[g.start..].to_vec();
            rotated.extend_from_slice(&w[..g.start]);
            println!("k={}", g.start);
            println!("rotation={}", String::from_utf8_lossy(&rotated));
            println!("comparisons={}", g.comparisons);
            Ok(())
        }
        Command::Stats { input, order, r } => {
            print!("{}", stats_report(&fs::read(&input)?, &order, r)?);
            Ok(())
        }
        Command::Rankinv { order, alphabet, max_len } => {
            let alphabet = ByteAlphabet::new(alphabet.into_bytes()).map_err(|e| CliError::Usage(format!("--alphabet: {e}")))?;
            if max_len < 2 {
                return Err(CliError::Usage("--max-len must be at least 2".into()));
            }
            print!("{}", rankinv_report(&order, &alphabet, max_len)?);
            Ok(())
        }
    }
}

fn sidecar_path(payload: &Path) -> PathBuf {
    let mut name = payload.as_os_str().to_owned();
    name.push(".meta");
    PathBuf::from(name)
}

/// Applies the sentinel policy. Returns the word to transform and whether a
/// sentinel was appended.
fn prepare(mut w: Vec<u8>, mode: SentinelMode) -> Result<(Vec<u8>, bool)> {
    if w.is_empty() {
        return Err(abwt::Error::EmptyWord.into());
    }
    let zero = w.iter().position(|&c| c == 0);
    match mode {
        SentinelMode::Forbid => match zero {
            Some(pos) => Err(CliError::Data(format!("input contains 0x00 at byte {pos}; it is reserved for the sentinel"))),
            None => Ok((w, false)),
        },
        SentinelMode::Require if is_sentinel_terminated(&w) => Ok((w, false)),
        SentinelMode::Require => {
            Err(CliError::Data("input must end with a single 0x00 byte and contain no other".into()))
        }
        SentinelMode::Auto => match zero {
            None => {
                w.push(0);
                Ok((w, true))
            }
            Some(_) if is_sentinel_terminated(&w) => Ok((w, false)),
            Some(pos) => Err(CliError::Data(format!("input contains 0x00 at byte {pos}, before the end"))),
        },
    }
}

struct Metadata {
    n: usize,
    row: usize,
    order: ByteOrderSpec,
    appended: bool,
}

impl Metadata {
    fn render(&self) -> String {
        format!("n={}\nI={}\nK={}\nsentinel={}\n", self.n, self.row, self.order, u8::from(self.appended))
    }

    fn parse(text: &str) -> Result<Self> {
        let (mut n, mut row, mut order, mut appended) = (None, None, None, None);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, value) =
                line.split_once('=').ok_or_else(|| CliError::Data(format!("bad sidecar line `{line}`")))?;
            let bad = || CliError::Data(format!("bad sidecar value `{line}`"));
            match key {
                "n" => n = Some(value.parse().map_err(|_| bad())?),
                "I" => row = Some(value.parse().map_err(|_| bad())?),
                "K" => order = Some(value.parse::<ByteOrderSpec>()?),
                "sentinel" => {
                    appended = Some(match value {
                        "0" => false,
                        "1" => true,
                        _ => return Err(bad()),
                    })
                }
                _ => return Err(CliError::Data(format!("unknown sidecar key `{key}`"))),
            }
        }
        let missing = |k: &str| CliError::Data(format!("sidecar is missing `{k}`"));
        Ok(Metadata {
            n: n.ok_or_else(|| missing("n"))?,
            row: row.ok_or_else(|| missing("I"))?,
            order: order.ok_or_else(|| missing("K"))?,
            appended: appended.unwrap_or(false),
        })
    }
}

fn stats_report(w: &[u8], order: &ByteOrderSpec, r: usize) -> Result<String> {
    let mut s = String::new();
    let bound = check_run_bound(w, order)?;
    writeln!(s, "n={}", w.len()).unwrap();
    writeln!(s, "order={order}").unwrap();
    writeln!(s, "rho_input={}", bound.rho_in).unwrap();
    writeln!(s, "rho_transform={}", bound.rho_out).unwrap();
    writeln!(s, "rho_bound={}", 2 * bound.rho_in).unwrap();
    writeln!(s, "run_bound={}", if bound.holds { "holds" } else { "violated" }).unwrap();
    writeln!(s, "H0={:.6}", h0::<f64, u8>(w)).unwrap();
    writeln!(s, "k\tHk\tHk_circular").unwrap();
    for k in 1..=4.min(w.len().saturating_sub(1)) {
        writeln!(s, "{k}\t{:.6}\t{:.6}", hk::<f64, u8>(w, k), hk_circular::<f64, u8>(w, k)).unwrap();
    }
    let check = check_entropy_factorization::<f64, u8>(w, order, r)?;
    writeln!(s, "r={r}").unwrap();
    writeln!(s, "Hr_circular={:.9}", check.lhs).unwrap();
    writeln!(s, "Hr_linear={:.9}", check.lhs_linear).unwrap();
    writeln!(s, "block_entropy={:.9}", check.rhs).unwrap();
    writeln!(s, "blocks={}", check.blocks).unwrap();
    writeln!(s, "entropy_factorization={}", if check.equal { "equal" } else { "differs" }).unwrap();
    Ok(s)
}

fn rankinv_report(order: &ByteOrderSpec, alphabet: &ByteAlphabet, max_len: usize) -> Result<String> {
    let verdict = check_rank_invertible(order, alphabet, max_len)?;
    let mut s = String::new();
    writeln!(s, "order={order}").unwrap();
    writeln!(s, "predicted={}", if predict_rank_invertible(order, alphabet) { "invertible" } else { "not-invertible" })
        .unwrap();
    writeln!(s, "words_checked={}", verdict.words_checked).unwrap();
    match verdict.status {
        Status::Consistent => writeln!(s, "status=consistent").unwrap(),
        Status::Violated => writeln!(s, "status=violated").unwrap(),
    }
    if let Some(wit) = verdict.witness {
        let text = |w: &[u8]| String::from_utf8_lossy(w).into_owned();
        writeln!(s, "first={}", text(&wit.first)).unwrap();
        writeln!(s, "second={}", text(&wit.second)).unwrap();
        writeln!(s, "symbol={}", wit.symbol as char).unwrap();
        writeln!(s, "occurrence={}", wit.occurrence).unwrap();
        writeln!(s, "rows={},{}", wit.rows.0, wit.rows.1).unwrap();
        writeln!(s, "targets={},{}", wit.targets.0, wit.targets.1).unwrap();
        let left = rotation_matrix(&wit.first, order)?;
        let right = rotation_matrix(&wit.second, order)?;
        writeln!(s, "row\tfirst\tsecond").unwrap();
        for (i, (a, b)) in left.iter().zip(&right).enumerate() {
            writeln!(s, "{i}\t{}\t{}", text(a), text(b)).unwrap();
        }
    }
    Ok(s)
}
