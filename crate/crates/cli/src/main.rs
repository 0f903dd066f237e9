//! `monfiber`: evaluate ideal programs, compute invariants, and run the
//! formula-check suite from the command line.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or parse error,
//! 3 resource budget exceeded.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use monfiber::lang::{self, emit, Format, LangError, Program, Value};
use monfiber::resolution::cache::BettiCache;
use monfiber::resolution::{show_reg, BettiOptions, FieldChar};
use monfiber::symbolic::{symbolic_power, SymbolicMode};
use monfiber::verify::explore::{explore, Question};
use monfiber::verify::generate::{GeneratorConfig, Structure};
use monfiber::verify::{self, CheckId, SuiteConfig, Witness};
use monfiber::{fiber, Error, MonomialIdeal};

#[derive(Parser)]
#[command(
    name = "monfiber",
    version,
    about = "Monomial ideals, fiber products and their invariants"
)]
#[command(args_override_self = true)]
struct Cli {
    /// File of extra flags for the subcommand, one or more per line; flags
    /// given on the command line win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a program and print its value.
    Eval {
        #[arg(short, long)]
        file: PathBuf,
        #[arg(long = "char", default_value = "101")]
        char: u32,
        #[arg(long, default_value = "text")]
        format: String,
        /// Cap on multidegrees enumerated per Betti table.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Depth, projective dimension and regularity of the program's ideal.
    Invariants {
        #[arg(short, long)]
        file: PathBuf,
        /// Comma-separated characteristics.
        #[arg(long, default_value = "2,3,101")]
        chars: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Symbolic power of the program's ideal.
    SymbolicPower {
        #[arg(short, long)]
        file: PathBuf,
        #[arg(short, long)]
        s: u32,
        #[arg(long, default_value = "ass")]
        mode: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Fiber product of the bindings `I` and `J` of a two-block program:
    /// its ordinary and symbolic powers with depth and regularity.
    Fiber {
        #[arg(short, long)]
        file: PathBuf,
        #[arg(short, long)]
        s: u32,
        #[arg(long = "char", default_value = "101")]
        char: u32,
    },
    /// Run formula checks over generated instances.
    Verify(VerifyArgs),
    /// Re-run the check recorded in a witness file.
    Replay {
        #[arg(short, long)]
        witness: PathBuf,
    },
    /// Collect evidence on an open question.
    Explore {
        #[arg(long)]
        question: String,
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long)]
        log: PathBuf,
        #[command(flatten)]
        gen: GenArgs,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value = "2,3,101")]
    chars: String,
    #[arg(long, default_value_t = 3)]
    s_max: u32,
    /// Maximum variables per factor.
    #[arg(long, default_value_t = 4)]
    nvars: usize,
    #[arg(long, default_value_t = 5)]
    max_degree: u32,
    #[arg(long, default_value_t = 6)]
    max_gens: usize,
    #[arg(long, default_value = "mixed")]
    structure: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// `all` or a comma-separated list such as `C1,C15`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 500)]
    instances: usize,
    #[command(flatten)]
    gen: GenArgs,
    /// Cap on multidegrees enumerated per Betti table.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the full report as JSON.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write one JSON file per failure witness.
    #[arg(long, value_name = "DIR")]
    witness_dir: Option<PathBuf>,
    /// Disable the thread pool.
    #[arg(long)]
    sequential: bool,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(anyhow::Error),
    Resource(anyhow::Error),
    Check,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let resource = e.chain().any(|c| {
            c.downcast_ref::<Error>().is_some_and(Error::is_resource)
                || c.downcast_ref::<LangError>()
                    .and_then(LangError::kernel)
                    .is_some_and(Error::is_resource)
        });
        if resource {
            Failure::Resource(e)
        } else {
            Failure::Usage(e)
        }
    }
}

impl From<LangError> for Failure {
    fn from(e: LangError) -> Self {
        Failure::from(anyhow::Error::new(e))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::new(e))
    }
}

type Outcome = Result<(), Failure>;

fn parse_chars(text: &str) -> anyhow::Result<Vec<FieldChar>> {
    text.split(',')
        .map(|t| {
            let p: u32 = t
                .trim()
                .parse()
                .with_context(|| format!("bad characteristic `{t}`"))?;
            Ok(FieldChar::new(p)?)
        })
        .collect()
}

fn field_char(p: u32) -> anyhow::Result<FieldChar> {
    Ok(FieldChar::new(p)?)
}

fn load(path: &Path) -> Result<Program, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    lang::parse_program(&text).map_err(|e| Failure::Usage(anyhow!("{}:{e}", path.display())))
}

fn cache(chars: Vec<FieldChar>) -> BettiCache {
    BettiCache::new(chars, BettiOptions::default()).with_env_dir()
}

fn result_ideal(p: &Program, char: FieldChar, c: &BettiCache) -> Result<MonomialIdeal, Failure> {
    match lang::evaluate_with(p, char, c)? {
        Value::Ideal(a) => Ok(a),
        _ => Err(Failure::Usage(anyhow!(
            "the program must evaluate to an ideal"
        ))),
    }
}

fn binding(
    p: &Program,
    name: &str,
    char: FieldChar,
    c: &BettiCache,
) -> Result<MonomialIdeal, Failure> {
    let Some(idx) = p.bindings.iter().position(|b| b.name == name) else {
        return Err(Failure::Usage(anyhow!("the program must bind `{name}`")));
    };
    // evaluate a truncated program ending at the binding
    let mut q = p.clone();
    q.result = q.bindings[idx].expr.clone();
    q.bindings.truncate(idx);
    result_ideal(&q, char, c)
}

fn gen_config(g: &GenArgs) -> anyhow::Result<GeneratorConfig> {
    let cfg = GeneratorConfig {
        nvars: g.nvars,
        max_degree: g.max_degree,
        max_gens: g.max_gens,
        structure: g.structure.parse::<Structure>()?,
        s_max: g.s_max,
        chars: parse_chars(&g.chars)?,
        seed: g.seed,
        ..GeneratorConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn run(cmd: Cmd) -> Outcome {
    let mut out = io::stdout().lock();
    match cmd {
        Cmd::Eval {
            file,
            char,
            format,
            budget,
        } => {
            let p = load(&file)?;
            let fmt: Format = format.parse().map_err(anyhow::Error::new)?;
            let char = field_char(char)?;
            let mut opts = BettiOptions::default();
            if let Some(b) = budget {
                opts.budget = b;
            }
            let c = BettiCache::new(vec![char], opts).with_env_dir();
            let v = lang::evaluate_with(&p, char, &c)?;
            write!(out, "{}", emit(&v, fmt)).context("writing output")?;
        }
        Cmd::Invariants {
            file,
            chars,
            format,
        } => {
            let p = load(&file)?;
            let chars = parse_chars(&chars)?;
            let c = cache(chars.clone());
            let a = result_ideal(&p, chars[0], &c)?;
            let mut reports = Vec::new();
            for &q in &chars {
                reports.push(c.invariants(&a, q)?);
            }
            match format.as_str() {
                "json" => writeln!(out, "{}", serde_json::to_string(&reports).context("json")?)
                    .context("writing")?,
                "text" | "tsv" => {
                    writeln!(out, "ideal {a}").context("writing")?;
                    for r in &reports {
                        writeln!(
                            out,
                            "p={}\tdepth R/I={}\tpd R/I={}\treg I={}\treg R/I={}",
                            r.char,
                            r.depth_quotient,
                            r.pd_quotient,
                            show_reg(r.reg_ideal),
                            r.reg_quotient
                        )
                        .context("writing")?;
                    }
                }
                f => return Err(Failure::Usage(anyhow!("unknown format `{f}`"))),
            }
        }
        Cmd::SymbolicPower {
            file,
            s,
            mode,
            format,
        } => {
            let p = load(&file)?;
            let fmt: Format = format.parse().map_err(anyhow::Error::new)?;
            let mode = match mode.as_str() {
                "ass" => SymbolicMode::Ass,
                "min" => SymbolicMode::Min,
                m => return Err(Failure::Usage(anyhow!("unknown mode `{m}` (ass or min)"))),
            };
            let char = FieldChar::new(101)?;
            let a = result_ideal(&p, char, &cache(vec![char]))?;
            let sym = symbolic_power(&a, s, mode)?;
            write!(out, "{}", emit(&Value::Ideal(sym), fmt)).context("writing output")?;
        }
        Cmd::Fiber { file, s, char } => {
            let p = load(&file)?;
            let char = field_char(char)?;
            let c = cache(vec![char]);
            let i = binding(&p, "I", char, &c)?;
            let j = binding(&p, "J", char, &c)?;
            let inst = fiber::make_fiber_in(&p.ring, &i, &j)?;
            writeln!(out, "{inst}").context("writing")?;
            writeln!(out, "F = {}", inst.f).context("writing")?;
            let rows = [
                (format!("F^{s}"), inst.f.power(s)?),
                (
                    format!("F^({s})"),
                    symbolic_power(&inst.f, s, SymbolicMode::Ass)?,
                ),
            ];
            for (name, a) in rows {
                let r = c.invariants(&a, char)?;
                writeln!(out, "{name} = {a}").context("writing")?;
                writeln!(
                    out,
                    "  depth T/{name} = {}  reg {name} = {}",
                    r.depth_quotient,
                    show_reg(r.reg_ideal)
                )
                .context("writing")?;
            }
        }
        Cmd::Verify(v) => return verify_cmd(v, &mut out),
        Cmd::Replay { witness } => {
            let text = fs::read_to_string(&witness)
                .with_context(|| format!("reading {}", witness.display()))?;
            let w: Witness = serde_json::from_str(&text).context("parsing witness")?;
            let r = verify::replay(&w)?;
            writeln!(out, "{} s={} p={}: {}", r.check, r.s, r.p, r.status).context("writing")?;
            if !r.detail.is_empty() {
                writeln!(out, "{}", r.detail).context("writing")?;
            }
            if r.status == verify::Status::Fail {
                return Err(Failure::Check);
            }
        }
        Cmd::Explore {
            question,
            budget,
            log,
            gen,
        } => {
            let q: Question = question.parse().map_err(anyhow::Error::new)?;
            let cfg = gen_config(&gen)?;
            let file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&log)
                .with_context(|| format!("opening {}", log.display()))?;
            let mut w = io::BufWriter::new(file);
            let sum = explore(q, &cfg, budget, BettiOptions::default(), &mut w)?;
            w.flush().context("flushing log")?;
            writeln!(out, "{sum}").context("writing")?;
        }
    }
    Ok(())
}

fn verify_cmd(v: VerifyArgs, out: &mut impl Write) -> Outcome {
    if v.sequential {
        monfiber::par::set_sequential(true);
    }
    let mut betti = BettiOptions::default();
    if let Some(b) = v.budget {
        betti.budget = b;
    }
    let cfg = SuiteConfig {
        checks: CheckId::parse_list(&v.suite)?,
        instances: v.instances,
        generator: gen_config(&v.gen)?,
        betti,
        cache_dir: std::env::var_os(monfiber::resolution::cache::CACHE_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(PathBuf::from),
    };
    let report = verify::run_suite(&cfg)?;
    writeln!(out, "{report}").context("writing")?;
    if let Some(path) = &v.json {
        fs::write(path, serde_json::to_string_pretty(&report).context("json")?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(dir) = &v.witness_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (k, w) in report.failures.iter().enumerate() {
            let path = dir.join(format!("{}-s{}-p{}-{k}.json", w.check, w.s, w.p));
            fs::write(&path, serde_json::to_string_pretty(w).context("json")?)
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

/// Splices the flags of `--config PATH` in right after the subcommand name.
fn expand_config(args: Vec<String>) -> anyhow::Result<Vec<String>> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or_else(|| anyhow!("--config needs a path"))?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = fs::read_to_string(&path).with_context(|| format!("reading config {path}"))?;
    let extra: Vec<String> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace().map(str::to_string).collect::<Vec<_>>())
        .collect();
    // subcommand is the first positional after the program name
    let Some(pos) = rest
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map(|k| k + 2)
    else {
        bail!("--config needs a subcommand");
    };
    let mut out: Vec<String> = rest[..pos].to_vec();
    out.extend(extra);
    out.extend(rest[pos..].iter().cloned());
    Ok(out)
}

fn main() -> ExitCode {
    let args = match expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(args);
    let _ = cli.config;
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
