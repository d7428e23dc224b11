use std::fs;
use std::io::{self, BufRead, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use piotp::digit_source::write_pi_digits;
use piotp::hex;
use piotp::stats::BINS;
use piotp::{
    apply_pad, byte_histogram, chi_square_uniform, generate_pad, hash_passphrase, open_source,
    select_words, summarize, DigitSourceSpec, DocumentText, OneTimePad, PadConfig, Passphrase,
    PhraseSelector, PiEngine, Summary,
};

mod exit;

use exit::CliError;

#[derive(Parser)]
#[command(
    name = "pi-otp",
    version,
    about = "One-time pads from the hexadecimal digits of pi"
)]
struct Cli {
    /// Report timings and progress on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a pad, one round per passphrase.
    Genpad(GenpadArgs),
    /// Print hex digits of pi computed at a position.
    Digits {
        #[arg(long)]
        at: u64,
        #[arg(long)]
        count: usize,
    },
    /// Write a digit file of the first COUNT hex digits of pi.
    Mkdigits {
        #[arg(long)]
        count: u64,
        /// Output path, or "-" for stdout.
        #[arg(long)]
        out: PathBuf,
    },
    /// XOR a message with a pad.
    Encrypt(CryptArgs),
    /// Same operation as encrypt.
    Decrypt(CryptArgs),
    /// Select words from a document as a passphrase.
    Phrase(PhraseArgs),
    /// Byte histogram summary of pad files or hex streams.
    Stats {
        /// Input path, or "-" for stdin.
        #[arg(long = "in")]
        input: PathBuf,
        /// Also write 256 lines of "value count" here.
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenpadArgs {
    /// Passphrases, one per round.
    #[arg(conflicts_with_all = ["env", "stdin"])]
    passphrases: Vec<String>,

    /// Read a passphrase from this environment variable (repeat per round).
    #[arg(long, value_name = "VAR", conflicts_with = "stdin")]
    env: Vec<String>,

    /// Read passphrases from stdin, one per line.
    #[arg(long)]
    stdin: bool,

    /// computed | pi-file PATH | pool-file PATH
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "PATH"], default_value = "computed")]
    source: Vec<String>,

    #[arg(long, default_value_t = piotp::pad::DEFAULT_PAD_NIBBLES)]
    nibbles: usize,

    /// Defaults to OTP_YYYYmmdd-HHMMSS.txt in the current directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CryptArgs {
    #[arg(long)]
    pad: PathBuf,
    /// Message path, or "-" for stdin.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output path, or "-" for stdout.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PhraseArgs {
    /// Plain-text document, or "-" for stdin. Form feeds separate pages.
    #[arg(long)]
    doc: PathBuf,
    #[arg(long)]
    page: Option<usize>,
    /// 1-based index of the first word.
    #[arg(long)]
    start: usize,
    #[arg(long)]
    words: usize,
    /// Also print the SHA-256 digest of the phrase.
    #[arg(long)]
    hash: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pi-otp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let verbose = cli.verbose;
    match cli.command {
        Command::Genpad(args) => genpad(args, verbose),
        Command::Digits { at, count } => {
            let block = PiEngine::default().pi_hex_at_parallel(at, count)?;
            println!("{block}");
            Ok(())
        }
        Command::Mkdigits { count, out } => mkdigits(count, &out, verbose),
        Command::Encrypt(args) | Command::Decrypt(args) => crypt(args),
        Command::Phrase(args) => phrase(args),
        Command::Stats { input, histogram } => stats(&input, histogram.as_deref()),
    }
}

fn is_dash(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    if is_dash(path) {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::io("<stdin>", e))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| CliError::io(path, e))
    }
}

fn write_output(path: &Path, data: &[u8]) -> Result<(), CliError> {
    if is_dash(path) {
        let mut out = io::stdout().lock();
        out.write_all(data)
            .and_then(|_| out.flush())
            .map_err(|e| CliError::io("<stdout>", e))
    } else {
        fs::write(path, data).map_err(|e| CliError::io(path, e))
    }
}

fn parse_source(values: &[String]) -> Result<DigitSourceSpec, CliError> {
    match values {
        [kind] if kind == "computed" => Ok(DigitSourceSpec::computed()),
        [kind, path] if kind == "pi-file" => Ok(DigitSourceSpec::pi_file(path)),
        [kind, path] if kind == "pool-file" => Ok(DigitSourceSpec::pool_file(path)),
        [kind] if kind == "pi-file" || kind == "pool-file" => {
            Err(CliError::Usage(format!("--source {kind} needs a PATH")))
        }
        _ => Err(CliError::Usage(format!(
            "unknown --source {:?}; expected computed, pi-file PATH or pool-file PATH",
            values.join(" ")
        ))),
    }
}

fn collect_passphrases(args: &GenpadArgs) -> Result<Vec<Passphrase>, CliError> {
    let phrases: Vec<Passphrase> = if args.stdin {
        io::stdin()
            .lock()
            .lines()
            .map(|line| line.map_err(|e| CliError::io("<stdin>", e)))
            .filter(|line| !matches!(line, Ok(l) if l.trim_end_matches('\r').is_empty()))
            .map(|line| line.map(|l| Passphrase::from(l.trim_end_matches('\r'))))
            .collect::<Result<_, _>>()?
    } else if !args.env.is_empty() {
        args.env
            .iter()
            .map(|var| {
                std::env::var_os(var)
                    .map(|v| Passphrase::new(v.into_encoded_bytes()))
                    .ok_or_else(|| {
                        CliError::Usage(format!("environment variable {var} is not set"))
                    })
            })
            .collect::<Result<_, _>>()?
    } else {
        args.passphrases
            .iter()
            .map(|p| Passphrase::from(p.as_str()))
            .collect()
    };
    if phrases.is_empty() {
        return Err(CliError::Usage(
            "no passphrases given (arguments, --env VAR or --stdin)".into(),
        ));
    }
    Ok(phrases)
}

fn default_pad_name() -> PathBuf {
    PathBuf::from(
        chrono::Local::now()
            .format("OTP_%Y%m%d-%H%M%S.txt")
            .to_string(),
    )
}

fn genpad(args: GenpadArgs, verbose: bool) -> Result<(), CliError> {
    let begin = Instant::now();
    let phrases = collect_passphrases(&args)?;
    let spec = parse_source(&args.source)?;
    let source = open_source(&spec)?;
    let config = PadConfig {
        pad_nibbles: args.nibbles,
        rounds: phrases.len(),
    };
    if verbose {
        eprintln!("Rounds = {}", config.rounds);
        eprintln!("Source = {}", spec.kind);
    }
    let pad = generate_pad(&phrases, &config, &source)?;
    let out = args.out.unwrap_or_else(default_pad_name);
    pad.write_file(&out)?;
    println!("{}", out.display());
    if verbose {
        eprintln!(
            "Computation time = {:.3} seconds",
            begin.elapsed().as_secs_f64()
        );
    }
    Ok(())
}

fn mkdigits(count: u64, out: &Path, verbose: bool) -> Result<(), CliError> {
    let begin = Instant::now();
    let engine = PiEngine::default();
    let mut report = |n: u64| {
        if verbose {
            eprintln!("{n}/{count} digits");
        }
    };
    if is_dash(out) {
        write_pi_digits(&engine, count, io::stdout().lock(), &mut report)?;
    } else {
        let file = fs::File::create(out).map_err(|e| CliError::io(out, e))?;
        write_pi_digits(&engine, count, io::BufWriter::new(file), &mut report)?;
    }
    if verbose {
        eprintln!(
            "Computation time = {:.3} seconds",
            begin.elapsed().as_secs_f64()
        );
    }
    Ok(())
}

fn crypt(args: CryptArgs) -> Result<(), CliError> {
    let pad = OneTimePad::read_file(&args.pad)?;
    let message = read_input(&args.input)?;
    let output = apply_pad(&message, &pad)?;
    write_output(&args.out, &output)
}

fn phrase(args: PhraseArgs) -> Result<(), CliError> {
    let raw = read_input(&args.doc)?;
    let text = String::from_utf8(raw)
        .map_err(|_| CliError::Usage(format!("{} is not UTF-8 text", args.doc.display())))?;
    let doc = DocumentText::from_form_feeds(text);
    let sel = PhraseSelector {
        page: args.page,
        start_word: args.start,
        word_count: args.words,
    };
    let words = select_words(&doc, &sel)?;
    println!("{words}");
    if args.hash {
        println!("{}", hash_passphrase(&Passphrase::from(words.as_str()))?);
    }
    Ok(())
}

fn stats(input: &Path, histogram_out: Option<&Path>) -> Result<(), CliError> {
    let nibbles = hex::parse_nibbles(&read_input(input)?)?;
    if nibbles.len() % 2 != 0 {
        return Err(piotp::Error::OddNibbleCount(nibbles.len()).into());
    }
    let bytes = hex::nibbles_to_bytes(&nibbles);
    let h = byte_histogram(&bytes);
    let s: Summary = summarize(&h)?;
    let chi = chi_square_uniform::<f64>(&h).ok();
    let poisson_cv = 1.0 / s.mean.sqrt();

    println!("bytes        {}", h.total());
    println!("mean         {}", s.mean);
    println!("stddev       {:.3}", s.stddev);
    println!("cv           {:.4} ({:.2}%)", s.cv, 100.0 * s.cv);
    println!("poisson cv   {poisson_cv:.4}");
    match chi {
        Some(c) => println!("chi-square   {c:.2} (255 degrees of freedom)"),
        None => println!(
            "chi-square   n/a (needs at least {} bytes)",
            BINS as u64 * piotp::stats::MIN_EXPECTED_PER_BIN
        ),
    }
    println!();
    println!("total={}", h.total());
    println!("mean={}", s.mean);
    println!("stddev={}", s.stddev);
    println!("cv={}", s.cv);
    println!("poisson_cv={poisson_cv}");
    match chi {
        Some(c) => println!("chi_square={c}"),
        None => println!("chi_square=nan"),
    }
    println!("dof=255");

    if let Some(path) = histogram_out {
        let dump: String = h
            .counts()
            .iter()
            .enumerate()
            .map(|(v, c)| format!("{v} {c}\n"))
            .collect();
        write_output(path, dump.as_bytes())?;
    }
    Ok(())
}
