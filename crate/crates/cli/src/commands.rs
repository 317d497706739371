use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rankgpt_core::field::Field;
use rankgpt_core::gpt::{self, GptParams, GptPublicKey, XMode};
use rankgpt_core::overbeck::{distinguisher_attack, security_report, work_factor_log2, SECURITY_THRESHOLD_BITS};
use rankgpt_core::reference;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::CliError;
use crate::formats::{elems, values, CiphertextFile, ParamsFile, PrivateKeyFile, PublicKeyFile, ReportFile};
use crate::packing;

pub const WARNING: &str = "warning: research tool. GPT with these parameters is NOT a secure encryption scheme.";

/// Exit status when the kernel distinguisher recovers the secret code.
pub const EXIT_BROKEN: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "rankgpt", version, about = "GPT rank-metric cryptosystem toolkit and distinguisher audit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a key pair
    Keygen(KeygenArgs),
    /// Encrypt a file under a public key
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext file with a private key
    Decrypt(DecryptArgs),
    /// Audit a key against the Frobenius-kernel distinguisher
    Analyze(AnalyzeArgs),
    /// Rebuild the two worked distortion examples and compare with frozen values
    PaperExamples(PaperExamplesArgs),
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Extension degree of the field
    #[arg(long = "N", default_value_t = 8)]
    pub degree: u32,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// Number of distortion columns
    #[arg(long, default_value_t = 4)]
    pub t1: usize,
    /// Designed rank deficiency of Y_ext
    #[arg(long, default_value_t = 2)]
    pub a: usize,
    /// Rank of the errors senders add
    #[arg(long, default_value_t = 2)]
    pub t2: usize,
    #[arg(long = "x-mode", default_value = "smart_simple", value_parser = parse_mode)]
    pub x_mode: XMode,
}

fn parse_mode(s: &str) -> Result<XMode, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = XMode::ALL.iter().map(|m| m.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "pub", default_value = "rankgpt.pub.json")]
    pub public: PathBuf,
    #[arg(long = "priv", default_value = "rankgpt.priv.json")]
    pub private: PathBuf,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    #[arg(long = "pub")]
    pub public: PathBuf,
    /// Plaintext file; stdin when omitted
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Ciphertext file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Error rank per block, at most the key's t2
    #[arg(long)]
    pub t2: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    #[arg(long = "priv")]
    pub private: PathBuf,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("key").required(true).args(["private", "public"])))]
pub struct AnalyzeArgs {
    /// Private key: full audit including rank(Y_ext)
    #[arg(long = "priv")]
    pub private: Option<PathBuf>,
    /// Public key: kernel distinguisher only
    #[arg(long = "pub")]
    pub public: Option<PathBuf>,
    /// Print only the JSON report
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct PaperExamplesArgs {
    #[arg(long)]
    pub json: bool,
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Keygen(args) => keygen(args),
        Command::Encrypt(args) => encrypt(args),
        Command::Decrypt(args) => decrypt(args),
        Command::Analyze(args) => analyze(args),
        Command::PaperExamples(args) => paper_examples(args),
    }
}

fn keygen(args: KeygenArgs) -> Result<u8, CliError> {
    let p = &args.params;
    let field = Field::with_degree(p.degree)?;
    let params = GptParams {
        degree: p.degree,
        n: p.n,
        k: p.k,
        t1: p.t1,
        a: p.a,
        t2_max: p.t2,
        x_mode: p.x_mode,
    };
    params.validate()?;
    let seed = args.seed.unwrap_or_else(rand::random);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let (public, private) = gpt::keygen(&field, &params, &mut rng)?;

    eprintln!("{WARNING}");
    write_json(&args.public, &PublicKeyFile::new(&public, seed))?;
    write_json(&args.private, &PrivateKeyFile::new(&private, seed))?;
    println!("seed: {seed}");
    println!("public key size V = k(t1+n)N = {} bits", params.public_key_bits());
    println!("rate R = k/(t1+n) = {:.3}", params.rate());
    println!("public key: {}", args.public.display());
    println!("private key: {}", args.private.display());
    Ok(0)
}

fn encrypt(args: EncryptArgs) -> Result<u8, CliError> {
    let file: PublicKeyFile = read_json(&args.public, "public key")?;
    let key = file.to_core()?;
    let payload = read_input(args.input.as_deref())?;
    let seed = args.seed.unwrap_or_else(rand::random);

    let blocks = packing::pack(key.field(), key.params().k, &payload)
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut rng = block_rng(seed, i);
            gpt::encrypt(&key, m, args.t2, &mut rng).map(|c| values(&c))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let out = CiphertextFile { params: file.params, seed, blocks };
    eprintln!("{WARNING}");
    eprintln!("seed: {seed}");
    match &args.out {
        Some(path) => write_json(path, &out),
        None => {
            println!("{}", to_json(&out)?);
            Ok(())
        }
    }?;
    Ok(0)
}

/// Independent stream per block, so blocks can be produced in any order.
pub fn block_rng(seed: u64, block: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(block as u64);
    rng
}

fn decrypt(args: DecryptArgs) -> Result<u8, CliError> {
    let key = read_json::<PrivateKeyFile>(&args.private, "private key")?.to_core()?;
    let bytes = read_input(args.input.as_deref())?;
    let ct: CiphertextFile = serde_json::from_slice(&bytes).map_err(|e| CliError::malformed("ciphertext", e))?;
    let (_, ct_params) = ct.params.to_core()?;
    if ct_params != *key.params() || ct.params.primitive_poly != key.field().modulus() {
        return Err(CliError::Usage("ciphertext was made for different parameters".into()));
    }

    let field = key.field();
    let blocks = ct
        .blocks
        .iter()
        .enumerate()
        .map(|(i, block)| {
            let c = elems(field, block, "ciphertext")?;
            gpt::decrypt(&key, &c).map_err(|e| CliError::Decode(format!("block {i}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let payload = packing::unpack(field, key.params().k, &blocks).map_err(|e| CliError::Decode(e.to_string()))?;
    match &args.out {
        Some(path) => fs::write(path, &payload).map_err(|e| CliError::io(path, e))?,
        None => io::stdout().write_all(&payload).map_err(|e| CliError::io("<stdout>", e))?,
    }
    Ok(0)
}

fn analyze(args: AnalyzeArgs) -> Result<u8, CliError> {
    let report = match (&args.private, &args.public) {
        (Some(path), _) => {
            let file: PrivateKeyFile = read_json(path, "private key")?;
            let key = file.to_core()?;
            match security_report(&key) {
                Ok(report) => ReportFile::from_report(key.field(), &report, file.seed),
                // without X only the public part can be audited
                Err(rankgpt_core::error::Error::DistortionScrubbed) => public_report(&key.public_key()?, file.seed),
                Err(e) => return Err(e.into()),
            }
        }
        (None, Some(path)) => {
            let file: PublicKeyFile = read_json(path, "public key")?;
            public_report(&file.to_core()?, file.seed)
        }
        (None, None) => unreachable!("clap requires one key"),
    };

    if args.json {
        println!("{}", to_json(&report)?);
    } else {
        let p = &report.params;
        println!("parameters: N={} n={} k={} t1={} a={} t2={} x_mode={}", p.degree, p.n, p.k, p.t1, p.a, p.t2_max, p.x_mode);
        println!("seed: {}", report.seed);
        match report.rk_y_ext {
            Some(rk) => println!("rank(Y_ext) = {rk}, a_effective = {}", report.a_effective),
            None => println!("rank(Y_ext) unavailable, kernel estimate a_effective = {}", report.a_effective),
        }
        println!("public GF(2) column rank = {}", report.public_column_rank);
        println!("distinguisher kernel dimension = {}", report.kernel_dim);
        println!("work factor = 2^{:.2}", report.work_factor_log2);
        println!(
            "secure (aN >= {SECURITY_THRESHOLD_BITS}): {}",
            if report.secure { "yes" } else { "no" }
        );
        if report.distinguisher_succeeds {
            println!("distinguisher SUCCEEDS: the secret code is recoverable in polynomial time");
        } else {
            println!("distinguisher fails: exhaustive search over 2^{} candidates required", report.a_effective * p.degree as usize);
        }
    }
    Ok(if report.distinguisher_succeeds { EXIT_BROKEN } else { 0 })
}

/// The kernel has dimension `a + 1` for a designed deficiency `a`, so the
/// public data alone estimates `a` as `dim − 1`.
fn public_report(key: &GptPublicKey, seed: u64) -> ReportFile {
    let params = *key.params();
    let d = distinguisher_attack(key);
    let a_effective = d.kernel_dim().saturating_sub(1);
    let search = d.search_space_log2(params.degree);
    ReportFile {
        rk_y_ext: None,
        a_effective,
        kernel_dim: d.kernel_dim(),
        public_column_rank: d.public_column_rank,
        work_factor_log2: work_factor_log2(a_effective, params.degree, params.n, params.t1),
        secure: search >= SECURITY_THRESHOLD_BITS,
        distinguisher_succeeds: d.attack_feasible(),
        params: ParamsFile::new(key.field(), &params),
        seed,
    }
}

fn paper_examples(args: PaperExamplesArgs) -> Result<u8, CliError> {
    let checks = reference::all_checks();
    let all_passed = checks.iter().all(|c| c.passed);
    if args.json {
        let rows: Vec<_> = checks
            .iter()
            .map(|c| serde_json::json!({ "example": c.example, "check": c.name, "passed": c.passed }))
            .collect();
        println!("{}", to_json(&rows)?);
    } else {
        let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            println!("{:<10} {:<width$}  {status}", c.example, c.name);
        }
        let passed = checks.iter().filter(|c| c.passed).count();
        println!("{passed}/{} checks passed", checks.len());
    }
    if !all_passed {
        return Err(CliError::Assertion("worked examples do not match their frozen values".into()));
    }
    Ok(0)
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>, CliError> {
    match path {
        Some(p) => fs::read(p).map_err(|e| CliError::io(p, e)),
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf).map_err(|e| CliError::io("<stdin>", e))?;
            Ok(buf)
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path, what: &'static str) -> Result<T, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| CliError::malformed(what, e))
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Assertion(e.to_string()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = to_json(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}
