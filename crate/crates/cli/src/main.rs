use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use grsse_core::bounds::rate_bounds;
use grsse_core::channel::NoiseModel;
use grsse_core::codec::prefix::LCoder;
use grsse_core::codec::stream::{decode_stream, encode_stream, pack_blocks};
use grsse_core::codes::CodeRegistry;
use grsse_core::gf::Modulus;
use grsse_core::planner::{AnyPlan, Backend, CodeSchedule, DEFAULT_CAP, DEFAULT_EPSILON};
use grsse_core::sweep::{emit_csv, run_sweep, SweepSpec};
use grsse_core::with_plan;

/// Exact channel simulation and lossy compression by greedy rejection-sampled
/// syndrome coding.
#[derive(Parser)]
#[command(name = "grsse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect linear codes.
    #[command(subcommand)]
    Codes(CodesCommand),
    /// Precompute an acceptance plan for a channel and code schedule.
    Plan(PlanArgs),
    /// Encode a file block by block.
    Encode(CodecArgs),
    /// Decode a message file into the simulated channel outputs.
    Decode(CodecArgs),
    /// Print rate bounds for a channel and code as JSON.
    Bounds(BoundsArgs),
    /// Run a parameter sweep and write CSV.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum CodesCommand {
    /// List codes with length, dimension, distance and type-set count.
    List {
        #[arg(long, default_value_t = 24)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Code specs to list instead of the built-in families.
        #[arg(long = "code")]
        codes: Vec<String>,
    },
}

#[derive(Args)]
struct ChannelArgs {
    /// bsc, symmetric, ball or constant-weight.
    #[arg(long)]
    channel: String,
    #[arg(long)]
    w: Option<u32>,
    /// Crossover probability, e.g. 11/100 or 0.11.
    #[arg(long)]
    alpha: Option<String>,
    /// Block length; defaults to the code length.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 2)]
    q: u32,
}

impl ChannelArgs {
    fn modulus(&self) -> Result<Modulus> {
        Ok(Modulus::new(self.q)?)
    }

    fn model(&self, code_len: usize) -> Result<NoiseModel> {
        let n = self.n.unwrap_or(code_len as u32);
        if n as usize != code_len {
            bail!("channel length {n} differs from code length {code_len}");
        }
        Ok(NoiseModel::parse(&self.channel, n, self.modulus()?, self.w, self.alpha.as_deref())?)
    }
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Comma-separated code specs, e.g. golay,3*rep:8,trivial:24.
    #[arg(long, value_delimiter = ',', required = true)]
    codes: Vec<String>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// auto, exact, f64 or f32.
    #[arg(long, default_value = "auto")]
    backend: String,
}

#[derive(Args)]
struct CodecArgs {
    #[arg(long)]
    plan: PathBuf,
    #[arg(long)]
    seed: u64,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// huffman or elias-gamma.
    #[arg(long, default_value = "huffman")]
    coder: String,
    /// Also write the simulated outputs when encoding.
    #[arg(long)]
    yhat: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long)]
    code: String,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

fn list_codes(registry: &CodeRegistry, n: usize, q: u32, specs: Vec<String>) -> Result<()> {
    let q = Modulus::new(q)?;
    let specs = if specs.is_empty() {
        let mut specs = Vec::new();
        if n == 24 && q == Modulus::BINARY {
            specs.push("golay".to_string());
        }
        for family in ["rep", "parity"] {
            specs.push(format!("{family}:{n}"));
            for r in (2..=n / 3).filter(|r| n.is_multiple_of(*r)) {
                specs.push(format!("{r}*{family}:{}", n / r));
            }
        }
        specs.push(format!("trivial:{n}"));
        specs.push(format!("complete:{n}"));
        specs
    } else {
        specs
    };
    println!("name,n,k,d,type_sets");
    for spec in specs {
        let code = registry.get(&spec, q).with_context(|| format!("code `{spec}`"))?;
        let d = code.distance().map(|d| d.to_string()).unwrap_or_else(|| "?".into());
        let sets = match code.type_set_distribution() {
            Ok(t) => t.len().to_string(),
            Err(_) => "?".into(),
        };
        println!("{},{},{},{},{}", code.name(), code.n(), code.k(), d, sets);
    }
    Ok(())
}

fn plan(registry: &CodeRegistry, args: PlanArgs) -> Result<()> {
    let q = args.channel.modulus()?;
    let codes = args
        .codes
        .iter()
        .map(|c| registry.get(c, q).with_context(|| format!("code `{c}`")))
        .collect::<Result<Vec<_>>>()?;
    let channel = args.channel.model(codes[0].n())?;
    let schedule = CodeSchedule::new(codes, args.epsilon, args.cap)?;
    let plan = AnyPlan::build(&channel, &schedule, args.backend.parse::<Backend>()?)?;
    plan.save(&args.out).with_context(|| format!("writing {}", args.out.display()))?;
    let rate = with_plan!(&plan, p => p.expected_rate(LCoder::Huffman))?;
    println!("{} iterations, {} backend, expected rate {rate} bits/symbol", plan.len(), plan.backend());
    Ok(())
}

fn encode(registry: &CodeRegistry, args: CodecArgs) -> Result<()> {
    let plan = AnyPlan::load(&args.plan, registry).with_context(|| format!("reading {}", args.plan.display()))?;
    let coder: LCoder = args.coder.parse()?;
    let data = fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let stream = with_plan!(&plan, p => encode_stream(p, args.seed, coder, &data))?;
    fs::write(&args.out, &stream.file)?;
    if let Some(path) = args.yhat {
        fs::write(path, pack_blocks(&stream.outputs))?;
    }
    let blocks = stream.iterations.len().max(1) as f64;
    eprintln!(
        "{} blocks, {} message bytes, mean L {}",
        stream.iterations.len(),
        stream.file.len(),
        stream.iterations.iter().sum::<u64>() as f64 / blocks
    );
    Ok(())
}

fn decode(registry: &CodeRegistry, args: CodecArgs) -> Result<()> {
    let plan = AnyPlan::load(&args.plan, registry).with_context(|| format!("reading {}", args.plan.display()))?;
    let coder: LCoder = args.coder.parse()?;
    let file = fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let outputs = with_plan!(&plan, p => decode_stream(p, args.seed, coder, &file))?;
    fs::write(&args.out, pack_blocks(&outputs))?;
    Ok(())
}

fn bounds(registry: &CodeRegistry, args: BoundsArgs) -> Result<()> {
    let code = registry.get(&args.code, args.channel.modulus()?)?;
    let channel = args.channel.model(code.n())?;
    let report = rate_bounds(&channel, &code)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn sweep(registry: &CodeRegistry, args: SweepArgs) -> Result<bool> {
    let text = fs::read_to_string(&args.spec).with_context(|| format!("reading {}", args.spec.display()))?;
    let spec = SweepSpec::from_json(&text)?;
    let rows = run_sweep(&spec, registry)?;
    let out = fs::File::create(&args.out).with_context(|| format!("writing {}", args.out.display()))?;
    emit_csv(&rows, out)?;
    let mut clean = true;
    for r in &rows {
        if let Some(e) = &r.error {
            eprintln!("{}: {e}", r.param);
        }
        if r.flagged() {
            eprintln!("{}: invariant flags {}", r.param, r.flags.join(";"));
            clean = false;
        }
    }
    Ok(clean)
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let registry = CodeRegistry::new();
    match cli.command {
        Command::Codes(CodesCommand::List { n, q, codes }) => list_codes(&registry, n, q, codes)?,
        Command::Plan(args) => plan(&registry, args)?,
        Command::Encode(args) => encode(&registry, args)?,
        Command::Decode(args) => decode(&registry, args)?,
        Command::Bounds(args) => bounds(&registry, args)?,
        Command::Sweep(args) => {
            if !sweep(&registry, args)? {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
