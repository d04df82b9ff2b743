use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use urep_core::boundary::{self, BoundaryPoint, BoundaryPointJson, Mode};
use urep_core::markov::{self, simulate_many, simulation_domain};
use urep_core::orthopoly::{hahn_poly, jacobi_poly, HahnJacobiParams};
use urep_core::ring::lr_coefficient;
use urep_core::scalar::parse_rational;
use urep_core::suites::{run_suite, Suite, SuiteConfig};
use urep_core::{Params, Scalar, Signature, Window};

/// Exact computations on the unitary-group representation ring and its Markov dynamics.
#[derive(Parser, Debug)]
#[command(name = "urep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an identity suite and print its JSON report.
    Verify(VerifyArgs),
    /// Simulate the chain on GT_N and write trajectories as CSV.
    Simulate(SimulateArgs),
    /// Evaluate a single quantity.
    Eval(EvalArgs),
}

#[derive(Args, Debug, Default, Clone)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w2: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Truncation window `lo:hi`.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON file with defaults for the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, hide = true, allow_hyphen_values = true)]
    inject_fault: Option<String>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long = "N")]
    n: Option<usize>,
    /// Initial signature, e.g. `0,0`; defaults to zeros.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    #[arg(long)]
    horizon: Option<f64>,
    #[arg(long)]
    trajectories: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(value_enum)]
    what: EvalWhat,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Degree.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long = "M")]
    big_m: Option<u64>,
    /// Index range `lo:hi`.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    alpha_plus: Vec<String>,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    beta_plus: Vec<String>,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    alpha_minus: Vec<String>,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    beta_minus: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta_plus: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta_minus: Option<String>,
    /// Boundary point as a JSON file.
    #[arg(long)]
    point: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EvalWhat {
    PhiHat,
    SigmaHat,
    Link,
    Hahn,
    Jacobi,
    Lr,
}

/// Contents of `--config`; command-line flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    z: Option<String>,
    z2: Option<String>,
    w: Option<String>,
    w2: Option<String>,
    #[serde(rename = "N")]
    n: Option<usize>,
    m: Option<usize>,
    window: Option<String>,
    mode: Option<ModeArg>,
    tol: Option<f64>,
    seed: Option<u64>,
    start: Option<String>,
    horizon: Option<f64>,
    trajectories: Option<usize>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_window(s: &str) -> anyhow::Result<Window> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| anyhow!("window must look like lo:hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().with_context(|| format!("bad window bound {lo:?}"))?;
    let hi: i64 = hi.trim().parse().with_context(|| format!("bad window bound {hi:?}"))?;
    Ok(Window::new(lo, hi)?)
}

fn parse_signature(name: &str, s: Option<&String>) -> anyhow::Result<Signature> {
    let s = s.ok_or_else(|| anyhow!("--{name} is required"))?;
    s.parse().with_context(|| format!("bad --{name}"))
}

fn read_config(path: Option<&PathBuf>) -> anyhow::Result<ConfigFile> {
    let Some(path) = path else { return Ok(ConfigFile::default()) };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn params_from(args: &ParamArgs, cfg: &ConfigFile) -> anyhow::Result<Option<Params>> {
    let pick = |flag: &Option<String>, file: &Option<String>| flag.clone().or_else(|| file.clone());
    let vals = [pick(&args.z, &cfg.z), pick(&args.z2, &cfg.z2), pick(&args.w, &cfg.w), pick(&args.w2, &cfg.w2)];
    if vals.iter().all(Option::is_none) {
        return Ok(None);
    }
    let [Some(z), Some(z2), Some(w), Some(w2)] = vals else {
        bail!("give all four of --z --z2 --w --w2");
    };
    Ok(Some(Params::parse(&z, &z2, &w, &w2)?))
}

fn mode_from(mode: Option<ModeArg>, tol: Option<f64>) -> anyhow::Result<Mode> {
    let tol = tol.unwrap_or(1e-12);
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("--tol must be positive");
    }
    Ok(match mode.unwrap_or(ModeArg::Exact) {
        ModeArg::Exact => Mode::Exact { tol },
        ModeArg::Float => Mode::Float { tol },
    })
}

fn output(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn verify(args: VerifyArgs) -> anyhow::Result<u8> {
    let file = read_config(args.config.as_ref())?;
    let setup = || -> anyhow::Result<SuiteConfig> {
        Ok(SuiteConfig {
            params: params_from(&args.params, &file)?.map(|p| vec![p]),
            n: args.n.or(file.n),
            m: args.m.or(file.m),
            window: args.window.as_ref().or(file.window.as_ref()).map(|w| parse_window(w)).transpose()?,
            mode: mode_from(args.mode.or(file.mode), args.tol.or(file.tol))?,
            seed: args.seed.or(file.seed).unwrap_or(SuiteConfig::default().seed),
            fault: args.inject_fault.as_deref().map(str::parse::<Scalar>).transpose()?,
        })
    };
    let cfg = setup()?;
    let report = run_suite(args.suite, &cfg)?;
    let mut out = output(args.out.as_ref())?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    if let Some(bad) = report.first_failure() {
        eprintln!(
            "{} of {} instances failed; first: {} ({}) {}",
            report.failed,
            report.instances.len(),
            bad.id,
            bad.identity,
            bad.detail.as_deref().unwrap_or("")
        );
        if let Some(d) = &bad.first_discrepancy {
            eprintln!("first discrepancy: {d}");
        }
        return Ok(1);
    }
    eprintln!("{}: {} instances passed", report.suite, report.passed);
    Ok(0)
}

fn simulate(args: SimulateArgs) -> anyhow::Result<u8> {
    let file = read_config(args.config.as_ref())?;
    let setup = || -> anyhow::Result<_> {
        let p = params_from(&args.params, &file)?.ok_or_else(|| anyhow!("simulate needs --z --z2 --w --w2"))?;
        let n = args.n.or(file.n).unwrap_or(1);
        if n == 0 {
            bail!("--N must be at least 1");
        }
        let start = match args.start.as_ref().or(file.start.as_ref()) {
            Some(s) => s.parse::<Signature>()?,
            None => Signature::new(vec![0; n])?,
        };
        let horizon = args.horizon.or(file.horizon).unwrap_or(1.0);
        if !(horizon > 0.0 && horizon.is_finite()) {
            bail!("--horizon must be positive");
        }
        let count = args.trajectories.or(file.trajectories).unwrap_or(1);
        if count == 0 {
            bail!("--trajectories must be at least 1");
        }
        let seed = args.seed.or(file.seed).unwrap_or(0);
        let domain = simulation_domain(&p, n, &start)?;
        Ok((p, n, start, horizon, count, seed, domain))
    };
    let (p, n, start, horizon, count, seed, domain) = setup()?;
    let trajs = simulate_many(&p, n, &start, horizon, seed, count)?;

    let mut out = output(args.out.as_ref())?;
    writeln!(out, "# N={n} z={} z2={} w={} w2={} start={start} horizon={horizon} seed={seed}", p.z, p.z2, p.w, p.w2)?;
    {
        let mut csv = csv::Writer::from_writer(&mut out);
        csv.write_record(["trajectory", "jump", "time", "state"])?;
        for (i, tr) in trajs.iter().enumerate() {
            for (j, (t, s)) in tr.times.iter().zip(&tr.states).enumerate() {
                csv.write_record([i.to_string(), j.to_string(), t.to_string(), s.to_string()])?;
            }
        }
        csv.flush()?;
    }

    let f = |s: &Signature| s.sum() as f64;
    let exact = markov::apply_generator(&p, &start, |s| Scalar::from_int(s.sum()))?;
    let est = markov::empirical_generator(&trajs, horizon, f);
    let finals: Vec<String> = trajs.iter().take(5).map(|t| t.final_state().to_string()).collect();
    let summary = json!({
        "domain": domain,
        "trajectories": trajs.len(),
        "jumps": trajs.iter().map(|t| t.jumps()).sum::<usize>(),
        "truncated": trajs.iter().filter(|t| t.truncated).count(),
        "final_states": finals,
        "generator_check": {
            "f": "|nu|",
            "exact": exact.to_string(),
            "estimate": est.estimate,
            "std_error": est.std_error,
        },
    });
    eprintln!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(0)
}

fn boundary_point(args: &EvalArgs) -> anyhow::Result<BoundaryPoint> {
    let j = match &args.point {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => BoundaryPointJson {
            alpha_plus: args.alpha_plus.clone(),
            beta_plus: args.beta_plus.clone(),
            alpha_minus: args.alpha_minus.clone(),
            beta_minus: args.beta_minus.clone(),
            delta_plus: args.delta_plus.clone(),
            delta_minus: args.delta_minus.clone(),
        },
    };
    Ok(BoundaryPoint::try_from(&j)?)
}

fn has_point(args: &EvalArgs) -> bool {
    args.point.is_some()
        || !(args.alpha_plus.is_empty()
            && args.beta_plus.is_empty()
            && args.alpha_minus.is_empty()
            && args.beta_minus.is_empty()
            && args.delta_plus.is_none()
            && args.delta_minus.is_none())
}

/// Index range wide enough for determinants of `lambda`.
fn det_range(args: &EvalArgs, lambda: &Signature) -> anyhow::Result<(i64, i64)> {
    if let Some(w) = &args.window {
        let w = parse_window(w)?;
        return Ok((w.lo, w.hi));
    }
    let n = lambda.len() as i64;
    Ok((lambda.last().unwrap_or(0) - n, lambda.first().unwrap_or(0) + n))
}

fn rational_arg(name: &str, v: &Option<String>) -> anyhow::Result<urep_core::Rational> {
    let v = v.as_ref().ok_or_else(|| anyhow!("--{name} is required"))?;
    Ok(parse_rational(v)?)
}

fn eval(args: EvalArgs) -> anyhow::Result<u8> {
    let mode = mode_from(Some(args.mode), Some(args.tol))?;
    let value = match args.what {
        EvalWhat::Lr => {
            let lam = parse_signature("lambda", args.lambda.as_ref())?;
            let mu = parse_signature("mu", args.mu.as_ref())?;
            let nu = parse_signature("nu", args.nu.as_ref())?;
            json!(lr_coefficient(&lam, &mu, &nu)?)
        }
        EvalWhat::Jacobi => {
            let n = args.n.ok_or_else(|| anyhow!("--n is required"))?;
            let (a, b) = (rational_arg("a", &args.a)?, rational_arg("b", &args.b)?);
            HahnJacobiParams::jacobi(a.clone(), b.clone())?;
            json!(jacobi_poly(n, &a, &b).display_in("t"))
        }
        EvalWhat::Hahn => {
            let n = args.n.ok_or_else(|| anyhow!("--n is required"))?;
            let big_m = args.big_m.ok_or_else(|| anyhow!("--M is required"))?;
            let params = HahnJacobiParams::hahn(rational_arg("a", &args.a)?, rational_arg("b", &args.b)?, big_m)?;
            json!(hahn_poly(n, &params)?.display_in("x"))
        }
        EvalWhat::PhiHat => {
            let omega = boundary_point(&args)?;
            let w = parse_window(args.window.as_deref().unwrap_or("-3:3"))?;
            let tab = boundary::phi_hat_table(&omega, w.lo, w.hi, mode)?;
            json!(tab
                .into_iter()
                .map(|(n, v)| (n.to_string(), json!(v.to_string())))
                .collect::<serde_json::Map<_, _>>())
        }
        EvalWhat::SigmaHat => {
            let omega = boundary_point(&args)?;
            let lam = parse_signature("lambda", args.lambda.as_ref())?;
            let (lo, hi) = det_range(&args, &lam)?;
            json!(boundary::sigma_hat(&omega, &lam, lo, hi, mode)?.to_string())
        }
        EvalWhat::Link => {
            let lam = parse_signature("lambda", args.lambda.as_ref())?;
            if let Some(n) = args.big_n {
                if n != lam.len() {
                    bail!("--lambda {lam} does not have length --N {n}");
                }
            }
            if has_point(&args) {
                let omega = boundary_point(&args)?;
                let (lo, hi) = det_range(&args, &lam)?;
                json!(boundary::link_infinity(&omega, &lam, lo, hi, mode)?.to_string())
            } else {
                if lam.len() < 2 {
                    bail!("the link Λ^N_(N-1) needs N ≥ 2");
                }
                let row = markov::link_row(lam.len() - 1, &lam)?;
                json!(row
                    .entries
                    .iter()
                    .map(|(mu, q)| (mu.to_string(), json!(q.to_string())))
                    .collect::<serde_json::Map<_, _>>())
            }
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &value {
        serde_json::Value::Object(map) if !args.json => {
            for (k, v) in map {
                writeln!(out, "{k}\t{}", v.as_str().unwrap_or_default())?;
            }
        }
        serde_json::Value::String(s) if !args.json => writeln!(out, "{s}")?,
        _ => writeln!(out, "{value}")?,
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Simulate(a) => simulate(a),
        Command::Eval(a) => eval(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        // usage, configuration and domain errors alike
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
