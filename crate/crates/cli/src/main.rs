//! `grand-turbo`: list-decoding and turbo campaigns, guesswork runs and code
//! inspection.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grand_turbo::codes::{BuiltCode, CodeSpec, LinearCode};
use grand_turbo::sim::{
    guesswork_experiment, run_campaign, CampaignConfig, CampaignResult, DecoderSpec, SimError,
};
use grand_turbo::turbo::{ComponentDecoder, TurboConfig};

#[derive(Parser)]
#[command(
    name = "grand-turbo",
    version,
    about = "Soft-decision list and block turbo decoding campaigns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Block error rate of a list decoder on a single code.
    ListBler(CampaignArgs),
    /// Bit error rate of block turbo decoding on a square product code.
    TurboBer(TurboArgs),
    /// Mean queries needed to collect 2^l codewords of a random codebook.
    Guesswork(GuessworkArgs),
    /// Print the parameters of a code.
    CodeInfo {
        /// Code spec, for example `ebch:32,26` or `product:ebch:32,26^2`.
        spec: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DecoderKind {
    Orbgrand,
    Orbgrand1,
    Chase,
}

#[derive(Args)]
struct CampaignArgs {
    /// JSON campaign config; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Code spec, for example `ebch:32,26` or `rlc:31,21,4,7`.
    #[arg(long)]
    code: Option<String>,
    #[arg(long, value_enum)]
    decoder: Option<DecoderKind>,
    /// List size L for the ORBGRAND decoders.
    #[arg(long)]
    list_size: Option<usize>,
    /// Number of least reliable positions flipped by Chase.
    #[arg(long)]
    rho: Option<usize>,
    /// Eb/N0 grid in dB: `start:stop:step` (inclusive) or a comma list.
    #[arg(long)]
    ebn0: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV; a JSON sidecar with the same stem is written next to it.
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long)]
    min_block_errors: Option<u64>,
    #[arg(long)]
    max_frames: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    /// GRAND query budget per word.
    #[arg(long)]
    query_cap: Option<u64>,
}

#[derive(Args)]
struct TurboArgs {
    #[command(flatten)]
    campaign: CampaignArgs,
    /// Full iterations (one column and one row pass each).
    #[arg(long)]
    iters: Option<usize>,
    /// Extrinsic weights per half-iteration, comma separated; the last repeats.
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    /// No-competitor reliabilities per half-iteration, comma separated.
    #[arg(long, value_delimiter = ',')]
    beta: Option<Vec<f64>>,
    #[arg(long)]
    no_early_stop: bool,
    /// Write the per-half-iteration reliability profile CSV here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct GuessworkArgs {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    k: usize,
    /// log2 of the list size.
    #[arg(short)]
    l: usize,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Io { .. } => Failure::Runtime(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::ListBler(a) => list_bler(&a),
        Command::TurboBer(a) => turbo_ber(&a),
        Command::Guesswork(a) => guesswork(&a),
        Command::CodeInfo { spec } => code_info(&spec),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

/// Parses `start:stop:step` (endpoints inclusive within 1e-9) or `a,b,c`.
fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("bad number {s:?} in Eb/N0 grid"))
    };
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if step <= 0.0 || stop < start {
                return Err("Eb/N0 grid needs step > 0 and stop >= start".into());
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize;
            if count > 10_000 {
                return Err("Eb/N0 grid has too many points".into());
            }
            Ok((0..=count)
                .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
                .collect())
        }
        [list] => list.split(',').map(num).collect(),
        _ => Err(format!(
            "Eb/N0 grid {text:?} is not start:stop:step or a list"
        )),
    }
}

fn parse_code(text: &str) -> Result<CodeSpec, Failure> {
    text.parse().map_err(|e| Failure::Usage(format!("{e}")))
}

fn base_config(a: &CampaignArgs) -> Result<Option<CampaignConfig>, Failure> {
    let Some(path) = &a.config else {
        return Ok(None);
    };
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))
}

fn component(
    a: &CampaignArgs,
    base: Option<ComponentDecoder>,
) -> Result<ComponentDecoder, Failure> {
    let kind = match (a.decoder, base) {
        (Some(k), _) => k,
        (None, Some(ComponentDecoder::Orbgrand { .. })) => DecoderKind::Orbgrand,
        (None, Some(ComponentDecoder::Orbgrand1 { .. })) => DecoderKind::Orbgrand1,
        (None, Some(ComponentDecoder::Chase { .. })) => DecoderKind::Chase,
        (None, None) => return Err(Failure::Usage("--decoder is required".into())),
    };
    let base_list = match base {
        Some(
            ComponentDecoder::Orbgrand { list_size } | ComponentDecoder::Orbgrand1 { list_size },
        ) => Some(list_size),
        _ => None,
    };
    let base_rho = match base {
        Some(ComponentDecoder::Chase { rho }) => Some(rho),
        _ => None,
    };
    let list = || {
        a.list_size
            .or(base_list)
            .ok_or_else(|| Failure::Usage("--list-size is required for ORBGRAND".into()))
    };
    Ok(match kind {
        DecoderKind::Orbgrand => ComponentDecoder::Orbgrand { list_size: list()? },
        DecoderKind::Orbgrand1 => ComponentDecoder::Orbgrand1 { list_size: list()? },
        DecoderKind::Chase => ComponentDecoder::Chase {
            rho: a
                .rho
                .or(base_rho)
                .ok_or_else(|| Failure::Usage("--rho is required for chase".into()))?,
        },
    })
}

/// Applies the shared flags on top of `base`, which supplies anything not
/// given on the command line.
fn campaign_config(
    a: &CampaignArgs,
    base: Option<CampaignConfig>,
    decoder: DecoderSpec,
) -> Result<CampaignConfig, Failure> {
    let code = match (&a.code, &base) {
        (Some(c), _) => parse_code(c)?,
        (None, Some(b)) => b.code.clone(),
        (None, None) => return Err(Failure::Usage("--code is required".into())),
    };
    let grid = match (&a.ebn0, &base) {
        (Some(g), _) => parse_grid(g).map_err(Failure::Usage)?,
        (None, Some(b)) => b.eb_n0_db.clone(),
        (None, None) => return Err(Failure::Usage("--ebn0 is required".into())),
    };
    let mut c =
        base.unwrap_or_else(|| CampaignConfig::new(code.clone(), decoder.clone(), grid.clone()));
    c.code = code;
    c.decoder = decoder;
    c.eb_n0_db = grid;
    if let Some(v) = a.seed {
        c.master_seed = v;
    }
    if let Some(v) = a.min_block_errors {
        c.min_block_errors = v;
    }
    if let Some(v) = a.max_frames {
        c.max_frames = v;
    }
    if a.workers.is_some() {
        c.workers = a.workers;
    }
    if a.query_cap.is_some() {
        c.query_cap = a.query_cap;
    }
    c.validate()?;
    Ok(c)
}

fn print_summary(r: &CampaignResult) {
    println!(
        "{} n={} k={} seed={} hash={}",
        r.code_label, r.n, r.k, r.master_seed, r.config_hash
    );
    println!(
        "{:>8} {:>10} {:>8} {:>12} {:>12}",
        "Eb/N0", "frames", "errors", "BER", "BLER"
    );
    for p in &r.points {
        println!(
            "{:>8.3} {:>10} {:>8} {:>12.4e} {:>12.4e}",
            p.eb_n0_db,
            p.frames,
            p.block_errors,
            p.ber(),
            p.bler()
        );
    }
}

fn write_result(r: &CampaignResult, out: &Path) -> Result<(), Failure> {
    let json = r.write(out)?;
    print_summary(r);
    println!("wrote {} and {}", out.display(), json.display());
    Ok(())
}

fn list_bler(a: &CampaignArgs) -> Result<(), Failure> {
    let base = base_config(a)?;
    let base_decoder = match base.as_ref().map(|b| &b.decoder) {
        Some(DecoderSpec::List(d)) => Some(*d),
        Some(DecoderSpec::Turbo(_)) => {
            return Err(Failure::Usage("config describes a turbo campaign".into()))
        }
        None => None,
    };
    let decoder = DecoderSpec::List(component(a, base_decoder)?);
    let c = campaign_config(a, base, decoder)?;
    let r = run_campaign(&c)?;
    write_result(&r, &a.output)
}

fn turbo_ber(t: &TurboArgs) -> Result<(), Failure> {
    let a = &t.campaign;
    let base = base_config(a)?;
    let base_turbo = match base.as_ref().map(|b| &b.decoder) {
        Some(DecoderSpec::Turbo(tc)) => Some(tc.clone()),
        Some(DecoderSpec::List(_)) => {
            return Err(Failure::Usage("config describes a list campaign".into()))
        }
        None => None,
    };
    let comp = component(a, base_turbo.as_ref().map(|b| b.decoder))?;
    let mut tc = base_turbo.unwrap_or_else(|| TurboConfig::new(comp));
    tc.decoder = comp;
    if let Some(v) = t.iters {
        tc.iterations = v;
    }
    if let Some(v) = &t.alpha {
        tc.alpha = v.clone();
    }
    if let Some(v) = &t.beta {
        tc.beta = v.clone();
    }
    if t.no_early_stop {
        tc.early_stop = false;
    }
    let mut c = campaign_config(a, base, DecoderSpec::Turbo(tc))?;
    if t.trace.is_some() {
        c.trace = true;
    }
    let r = run_campaign(&c)?;
    write_result(&r, &a.output)?;
    if let (Some(path), Some(csv)) = (&t.trace, r.trace_csv()) {
        fs::write(path, csv)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn guesswork(a: &GuessworkArgs) -> Result<(), Failure> {
    let g = guesswork_experiment(a.n, a.k, a.l, a.trials, a.seed)?;
    println!("n={} k={} l={} trials={}", g.n, g.k, g.l, g.trials);
    println!("measured mean {:.3} (std err {:.3})", g.mean, g.std_err);
    println!("95% interval [{:.3}, {:.3}]", g.ci95.0, g.ci95.1);
    println!("predicted 2^(n-k+l) = {}", g.predicted);
    Ok(())
}

fn distance(code: &LinearCode) -> String {
    match code.d_min() {
        Some(d) => d.to_string(),
        None => code
            .min_distance()
            .map_or_else(|_| "unknown".to_string(), |d| d.to_string()),
    }
}

fn code_info(spec: &str) -> Result<(), Failure> {
    let spec = parse_code(spec)?;
    let built = spec.build().map_err(|e| Failure::Usage(e.to_string()))?;
    match built {
        BuiltCode::Linear(code) => {
            println!("{}", code.label());
            println!(
                "n={} k={} rate={:.6} d={}",
                code.n(),
                code.k(),
                code.rate(),
                distance(&code)
            );
        }
        BuiltCode::Product(pc) => {
            let comp = pc.row_code();
            let d = distance(comp);
            let d_prod = d
                .parse::<usize>()
                .map_or_else(|_| "unknown".to_string(), |d| (d * d).to_string());
            println!("{}", pc.label());
            println!(
                "n={} k={} rate={:.6} d={}",
                pc.n(),
                pc.k(),
                pc.rate(),
                d_prod
            );
            println!(
                "component {} n={} k={} d={}",
                comp.label(),
                comp.n(),
                comp.k(),
                d
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::parse_grid;

    #[test]
    fn grid_is_inclusive() {
        let g = parse_grid("3:7:0.5").unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[8], 7.0);
        assert_eq!(parse_grid("0:0.3:0.1").unwrap(), vec![0.0, 0.1, 0.2, 0.3]);
        assert_eq!(parse_grid("4,4.5").unwrap(), vec![4.0, 4.5]);
        assert_eq!(parse_grid("2").unwrap(), vec![2.0]);
    }

    #[test]
    fn bad_grids() {
        assert!(parse_grid("3:1:0.5").is_err());
        assert!(parse_grid("1:2:0").is_err());
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("a").is_err());
    }
}
