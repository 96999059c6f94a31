//! Command-line front end: space descriptors in, reports out.
//!
//! Scalar commands print plain values unless a report format is requested;
//! `indices` emits CSV, while `optimal`, `criteria`, and `classify` emit
//! JSON. Every JSON/CSV report embeds the run configuration, and identical
//! command line + config + seed reproduce byte-identical output.

mod config;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use config::{Format, RunConfig};
use optseq::criteria::{self, Verdict};
use optseq::fundidx;
use optseq::optimal;
use optseq::spaces::WeightKind;
use optseq::verify;
use optseq::{Error, FiniteSeq, SpaceDescriptor};

#[derive(Parser)]
#[command(name = "optseq", version, about = "Symmetric sequence space toolkit")]
struct Cli {
    /// Config file with one `key = value` per line; `#` comments.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Inline cap overrides, e.g. `--caps n_cap=14,m_cap=4096`.
    #[arg(long, global = true)]
    caps: Option<String>,
    /// Grid resolution for Orlicz criteria.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Seed for all randomized search and sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report format for scalar commands (plain text when omitted).
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Exit nonzero when any criterion verdict is inconclusive.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct VecInput {
    /// Inline vector, e.g. `--vec 3,4`.
    #[arg(long, value_name = "CSV")]
    vec: Option<String>,
    /// File with one decimal per line.
    #[arg(long, value_name = "FILE")]
    vec_file: Option<PathBuf>,
}

impl VecInput {
    fn read(&self) -> Result<FiniteSeq, Error> {
        let values: Vec<f64> = if let Some(inline) = &self.vec {
            parse_float_list(inline)?
        } else if let Some(path) = &self.vec_file {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(parse_float)
                .collect::<Result<_, _>>()?
        } else {
            return Err(Error::invalid("provide --vec or --vec-file"));
        };
        FiniteSeq::new(values)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a space descriptor and print its canonical form.
    Describe { space: String },
    /// Norm of a vector in a space.
    Norm {
        space: String,
        #[command(flatten)]
        input: VecInput,
    },
    /// Decreasing rearrangement of a vector.
    Rearrange {
        #[command(flatten)]
        input: VecInput,
    },
    /// Tensor product of two vectors.
    Tensor {
        /// First factor, comma-separated.
        #[arg(long)]
        a: String,
        /// Second factor, comma-separated.
        #[arg(long)]
        b: String,
        /// Use the shifted-block representation.
        #[arg(long)]
        blocks: bool,
        /// Print the decreasing rearrangement of the product.
        #[arg(long)]
        rearranged: bool,
    },
    /// Fundamental function values.
    Phi {
        space: String,
        #[arg(long)]
        n: Option<u64>,
        /// Comma-separated list of arguments.
        #[arg(long, value_name = "CSV")]
        n_list: Option<String>,
    },
    /// Truncated dilation functions at one dilation factor.
    Dilation {
        space: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m_cap: Option<u64>,
    },
    /// Fundamental and Grobler-Dodds indices, one CSV row per space.
    Indices {
        #[arg(required = true)]
        spaces: Vec<String>,
    },
    /// Search estimate of an optimal-space norm.
    Optimal {
        space: String,
        #[command(flatten)]
        input: VecInput,
        /// Use the flat vector `1^n` instead of an explicit vector.
        #[arg(long)]
        ones: Option<usize>,
        #[arg(long, value_enum, default_value = "upper")]
        estimator: Estimator,
    },
    /// All criteria applicable to a space.
    Criteria {
        space: String,
        /// Substring filter on criterion ids.
        #[arg(long)]
        criterion: Option<String>,
        /// Random sample count for sample-based checks.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Identify the optimal upper and lower spaces.
    Classify { space: String },
    /// Run the acceptance suite; nonzero exit on any failure.
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Estimator {
    Upper,
    Phi,
    Lower,
}

fn parse_float(tok: &str) -> Result<f64, Error> {
    if tok == "inf" {
        return Ok(f64::INFINITY);
    }
    tok.trim()
        .parse::<f64>()
        .map_err(|_| Error::invalid(format!("bad numeric token `{tok}`")))
}

fn parse_float_list(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',').map(parse_float).collect()
}

/// 17 significant digits: round-trips every double exactly.
fn fmt17(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.16e}")
}

fn config_comment_lines(cfg: &RunConfig) -> String {
    let json = serde_json::to_value(cfg).unwrap();
    let mut out = String::new();
    for (k, v) in json.as_object().unwrap() {
        out.push_str(&format!("# {k} = {v}\n"));
    }
    out
}

#[derive(Serialize)]
struct ScalarReport<'a> {
    config: &'a RunConfig,
    command: String,
    values: Vec<(String, f64)>,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Scalar results as plain text, or wrapped in a config-carrying report.
fn emit_values(
    cfg: &RunConfig,
    format: Option<FormatArg>,
    out: &Option<PathBuf>,
    command: &str,
    values: &[(String, f64)],
) -> Result<(), Error> {
    let text = match format {
        None => {
            let mut s = String::new();
            for (_, v) in values {
                s.push_str(&format!("{v}\n"));
            }
            s
        }
        Some(FormatArg::Json) => {
            let report = ScalarReport {
                config: cfg,
                command: command.to_string(),
                values: values.to_vec(),
            };
            format!("{}\n", serde_json::to_string_pretty(&report).unwrap())
        }
        Some(FormatArg::Csv) => {
            let mut s = config_comment_lines(cfg);
            s.push_str("label,value\n");
            for (k, v) in values {
                s.push_str(&format!("{k},{}\n", fmt17(*v)));
            }
            s
        }
    };
    emit(out, &text)
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        cfg.load_file(&text)?;
    }
    if let Some(caps) = &cli.caps {
        for pair in caps.split(',') {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("expected key=value in --caps, got `{pair}`")))?;
            cfg.assign(k.trim(), v.trim())?;
        }
    }
    if let Some(grid) = cli.grid {
        cfg.grid = grid;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(fmt) = cli.format {
        cfg.format = match fmt {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        };
    }
    cfg.validate()?;

    let parse_space = |s: &str| -> Result<SpaceDescriptor, Error> {
        s.parse::<SpaceDescriptor>()?
            .with_bisection_tol(cfg.bisection_tol)
    };

    match &cli.command {
        Command::Describe { space } => {
            let d = parse_space(space)?;
            emit(&cli.out, &format!("{d}\n"))?;
        }
        Command::Norm { space, input } => {
            let d = parse_space(space)?;
            let a = input.read()?;
            let v = d.norm(&a)?;
            emit_values(&cfg, cli.format, &cli.out, "norm", &[("norm".into(), v)])?;
        }
        Command::Rearrange { input } => {
            let a = input.read()?;
            let r = optseq::rearrange(&a);
            let line = r
                .entries()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",");
            emit(&cli.out, &format!("{line}\n"))?;
        }
        Command::Tensor {
            a,
            b,
            blocks,
            rearranged,
        } => {
            let a = FiniteSeq::new(parse_float_list(a)?)?;
            let b = FiniteSeq::new(parse_float_list(b)?)?;
            let t = if *blocks {
                optseq::tensor_blocks(&a, &b)?
            } else {
                optseq::tensor(&a, &b)?
            };
            let entries: Vec<f64> = if *rearranged {
                optseq::rearrange(&t).entries().to_vec()
            } else {
                t.entries().to_vec()
            };
            let line = entries
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",");
            emit(&cli.out, &format!("{line}\n"))?;
        }
        Command::Phi { space, n, n_list } => {
            let d = parse_space(space)?;
            let ns: Vec<u64> = if let Some(n) = n {
                vec![*n]
            } else if let Some(list) = n_list {
                list.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::invalid(format!("bad integer `{t}`")))
                    })
                    .collect::<Result<_, _>>()?
            } else {
                return Err(Error::invalid("provide --n or --n-list"));
            };
            let mut values = Vec::new();
            for n in ns {
                values.push((format!("phi({n})"), fundidx::fundamental_function(&d, n)?));
            }
            emit_values(&cfg, cli.format, &cli.out, "phi", &values)?;
        }
        Command::Dilation { space, n, m_cap } => {
            let d = parse_space(space)?;
            let m_cap = m_cap.unwrap_or(cfg.m_cap);
            let (m0, minf) = fundidx::dilation_functions(&d, *n, m_cap)?;
            emit_values(
                &cfg,
                cli.format,
                &cli.out,
                "dilation",
                &[("M0".into(), m0), ("Minf".into(), minf)],
            )?;
        }
        Command::Indices { spaces } => {
            let mut body = String::new();
            for s in spaces {
                let d = parse_space(s)?;
                let row = indices_row(&d, &cfg)?;
                body.push_str(&row);
            }
            let text = match cfg.format {
                Format::Csv => format!(
                    "{}family,params,mu,nu,delta,sigma,method,residual\n{}",
                    config_comment_lines(&cfg),
                    body
                ),
                Format::Json => {
                    // CSV is the natural format here; JSON wraps the same rows.
                    let rows: Vec<&str> = body.lines().collect();
                    let doc = serde_json::json!({
                        "config": &cfg,
                        "header": "family,params,mu,nu,delta,sigma,method,residual",
                        "rows": rows,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
                }
            };
            emit(&cli.out, &text)?;
        }
        Command::Optimal {
            space,
            input,
            ones,
            estimator,
        } => {
            let d = parse_space(space)?;
            let a = match ones {
                Some(0) => return Err(Error::invalid("--ones needs n >= 1")),
                Some(n) => FiniteSeq::ones(*n),
                None => input.read()?,
            };
            let search = cfg.search_config();
            let est = match estimator {
                Estimator::Upper => optimal::upper_norm_estimate(&d, &a, &search)?,
                Estimator::Phi => optimal::phi_n_estimate(&d, &a, &search)?,
                Estimator::Lower => optimal::lower_norm_estimate(&d, &a, &search)?,
            };
            let doc = serde_json::json!({
                "config": &cfg,
                "space": d.to_string(),
                "estimate": est,
            });
            emit(&cli.out, &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
        }
        Command::Criteria {
            space,
            criterion,
            samples,
        } => {
            let d = parse_space(space)?;
            let reports = criteria_for(&d, &cfg, *samples)?;
            let filtered: Vec<_> = reports
                .into_iter()
                .filter(|r| {
                    criterion
                        .as_ref()
                        .map(|needle| r.id.contains(needle.as_str()))
                        .unwrap_or(true)
                })
                .collect();
            if filtered.is_empty() {
                return Err(Error::invalid("no criterion matched the filter"));
            }
            let inconclusive = filtered.iter().any(|r| r.verdict == Verdict::Inconclusive);
            let doc = serde_json::json!({
                "config": &cfg,
                "space": d.to_string(),
                "reports": filtered,
            });
            emit(&cli.out, &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
            if cli.strict && inconclusive {
                return Ok(4);
            }
        }
        Command::Classify { space } => {
            let d = parse_space(space)?;
            let c = criteria::classify_optimal_spaces(&d, cfg.grid, &cfg.verdict_rules())?;
            let inconclusive = c.inconclusive;
            let doc = serde_json::json!({
                "config": &cfg,
                "classification": c,
            });
            emit(&cli.out, &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
            if cli.strict && inconclusive {
                return Ok(4);
            }
        }
        Command::Verify => {
            let report = verify::run_all(&verify::VerifyConfig { seed: cfg.seed });
            let mut lines = String::new();
            for o in &report.outcomes {
                lines.push_str(&format!(
                    "criterion {:2}: {} - {} ({})\n",
                    o.index,
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                ));
            }
            lines.push_str(&format!(
                "verify: {}\n",
                if report.passed { "PASS" } else { "FAIL" }
            ));
            print!("{lines}");
            if let Some(path) = &cli.out {
                fs::write(path, verify::render_json(&report))
                    .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?;
            }
            if !report.passed {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn indices_row(space: &SpaceDescriptor, cfg: &RunConfig) -> Result<String, Error> {
    let (mu, nu) = match space {
        SpaceDescriptor::Orlicz { n } => fundidx::orlicz_indices(n, cfg.grid)?,
        SpaceDescriptor::LorentzLambda { q, weight } => {
            fundidx::lorentz_indices(*q, weight, cfg.n_cap, cfg.m_cap)?
        }
        _ => fundidx::fundamental_indices(space, cfg.n_cap, cfg.m_cap)?,
    };
    let gd = fundidx::grobler_dodds(space)?;
    let full = space.to_string();
    let params = full.split_once(':').map(|x| x.1).unwrap_or("").to_string();
    let quoted = if params.contains(',') {
        format!("\"{params}\"")
    } else {
        params
    };
    let method = serde_json::to_value(mu.method).unwrap();
    Ok(format!(
        "{},{},{},{},{},{},{},{}\n",
        space.family(),
        quoted,
        fmt17(mu.value),
        fmt17(nu.value),
        fmt17(gd.delta),
        fmt17(gd.sigma),
        method.as_str().unwrap(),
        fmt17(mu.residual.max(nu.residual)),
    ))
}

fn criteria_for(
    space: &SpaceDescriptor,
    cfg: &RunConfig,
    samples: usize,
) -> Result<Vec<criteria::CriterionReport>, Error> {
    let rules = cfg.verdict_rules();
    let search = cfg.search_config();
    let mut out = Vec::new();
    match space {
        SpaceDescriptor::Lp { p } => {
            if p.is_finite() && *p > 1.0 {
                out.push(criteria::equal_norm_upper_constant(space, *p, &search, &rules)?);
                out.push(criteria::equal_norm_lower_constant(space, *p, &search, &rules)?);
                out.push(criteria::holder_pairing_check(space, samples, cfg.seed, &rules)?);
            }
            for dir in [
                criteria::EstimateDirection::Upper,
                criteria::EstimateDirection::Lower,
            ] {
                out.push(criteria::tensor_inequality_check(
                    space, samples.max(1), dir, cfg.seed, &rules,
                )?);
            }
        }
        SpaceDescriptor::Lpq { p, q } => {
            out.push(criteria::equal_norm_upper_constant(space, p.min(*q), &search, &rules)?);
            if p.max(*q).is_finite() {
                out.push(criteria::equal_norm_lower_constant(space, p.max(*q), &search, &rules)?);
            }
            out.push(criteria::holder_pairing_check(space, samples, cfg.seed, &rules)?);
        }
        SpaceDescriptor::LorentzLambda { q, weight } => {
            let mu = match weight.kind() {
                WeightKind::PowerAlpha { alpha } => alpha / q,
                WeightKind::Constant => 1.0 / q,
                _ => fundidx::lorentz_indices(*q, weight, cfg.n_cap, cfg.m_cap)?.0.value,
            };
            out.push(criteria::lorentz_assump_constant(
                *q, weight, mu, cfg.l_cap, cfg.l_cap, &rules,
            )?);
            out.push(criteria::lorentz_did_ratio(weight, 100_000, &rules)?);
        }
        SpaceDescriptor::Orlicz { n } => {
            out.push(criteria::orlicz_submultiplicative_constant(n, cfg.grid, &rules)?);
            out.push(criteria::orlicz_supermultiplicative_constant(n, cfg.grid, &rules)?);
            let (mu, nu) = fundidx::orlicz_indices(n, cfg.grid)?;
            out.push(criteria::orlicz_estimate_constant(
                n,
                1.0f64.max(1.0 / nu.value),
                cfg.grid,
                criteria::EstimateDirection::Upper,
                &rules,
            )?);
            out.push(criteria::orlicz_estimate_constant(
                n,
                1.0f64.max(1.0 / mu.value),
                cfg.grid,
                criteria::EstimateDirection::Lower,
                &rules,
            )?);
            for dir in [
                criteria::EstimateDirection::Upper,
                criteria::EstimateDirection::Lower,
            ] {
                out.push(criteria::tensor_inequality_check(
                    space, samples.max(1), dir, cfg.seed, &rules,
                )?);
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InvalidArgument(_) => 2,
                Error::ResourceLimit(_) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
