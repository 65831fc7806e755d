//! Command-line interface.
//!
//! Every subcommand computes one result and prints it to stdout in the
//! format selected by the global `--format` flag: pretty-printed JSON (the
//! default, with keys in stable alphabetical order), `csv`, or `text`.
//!
//! Exit status: 0 on success; 1 on a domain failure, reported to stderr as
//! one `error[CODE]: message` line where `CODE` is the stable error code;
//! 2 on a usage error (unknown flags, missing arguments), reported by the
//! argument parser.
//!
//! Randomized commands resolve their seed in precedence order: the `--seed`
//! flag, then the `JURISTAT_SEED` environment variable, then 42. A
//! `JURISTAT_SEED` value that is not an unsigned integer is a domain error.

mod chart;

pub use chart::render_forecast_svg;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::data;
use crate::decision::{
    bayes_update_discrete, beta_from_opinion, beta_update, conviction_rate, expected_daily_loss,
    hand_rule, DiscreteBelief, HandInputs,
};
use crate::error::{Error, Result};
use crate::forecast::{self, derived_seed, FitsOptions, ForecastReport};
use crate::jury::{majority_prob, majority_prob_mc, min_panel_size, PanelSpec};
use crate::series::{self, SplitSpec, TimeSeries};
use crate::textassoc::{count_pair, stiles_association, tfidf, Corpus};

const DEFAULT_SEED: u64 = 42;
const SEED_ENV_VAR: &str = "JURISTAT_SEED";

/// Runs the CLI on the given argument list (including the program name) and
/// returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests land here too; clap assigns them
            // exit status 0 and errors status 2.
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(&cli) {
        Ok(rendered) => {
            // A downstream reader closing early (`juristat ... | head`) is
            // not a failure; anything else on stdout is.
            let mut stdout = io::stdout().lock();
            match writeln!(stdout, "{}", rendered.for_format(cli.format)) {
                Ok(()) => 0,
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => 0,
                Err(e) => {
                    eprintln!("error[IO]: {e}");
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            1
        }
    }
}

#[derive(Parser)]
#[command(
    name = "juristat",
    version,
    about = "Quantitative legal analytics: panel reliability, liability rules, \
             belief updating, term association, and caseload forecasting"
)]
struct Cli {
    /// Output format for results printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compare four forecasting models on a CSV series and forecast ahead
    Forecast(ForecastArgs),
    /// Majority reliability of an odd panel of independent deciders
    Jury(JuryArgs),
    /// Negligence test: liable when burden < probability * loss
    HandRule(HandRuleArgs),
    /// Expected monetary loss per business day
    ExpectedLoss(ExpectedLossArgs),
    /// Fraction of accused persons convicted
    ConvictionRate(ConvictionRateArgs),
    /// Posterior from a discrete prior and per-hypothesis likelihoods
    BayesUpdate(BayesUpdateArgs),
    /// Beta prior from an opinion level, optionally updated with counts
    BetaOpinion(BetaOpinionArgs),
    /// Association between two terms across the documents of a corpus
    Assoc(AssocArgs),
    /// Per-document term weights for a corpus
    Tfidf(TfidfArgs),
    /// Embedded dataset operations
    Data(DataArgs),
}

#[derive(Args)]
struct ForecastArgs {
    /// CSV series file with header `yearMonth,count`
    #[arg(long)]
    input: PathBuf,
    /// Fraction of the series used to train the model comparison
    #[arg(long, default_value_t = 0.8)]
    train: f64,
    /// Forecast horizon; defaults to the holdout length
    #[arg(long)]
    steps: Option<usize>,
    /// Keep only the most recent points before splitting
    #[arg(long, default_value_t = 500)]
    max_points: usize,
    /// Seed for the randomized models
    #[arg(long)]
    seed: Option<u64>,
    /// Attach residual-bootstrap prediction intervals (NNAR winner only)
    #[arg(long)]
    pi: bool,
    /// Write an SVG chart of the series and forecast to this file
    #[arg(long)]
    chart: Option<PathBuf>,
    /// Write one SVG per candidate's holdout forecast into this directory
    #[arg(long)]
    chart_intermediate: Option<PathBuf>,
    /// Fit the candidates one after another instead of in parallel
    #[arg(long)]
    serial: bool,
}

#[derive(Args)]
struct JuryArgs {
    /// Panel size (odd)
    #[arg(long, required_unless_present = "target", conflicts_with = "target")]
    n: Option<u64>,
    /// Probability that one member decides correctly
    #[arg(long)]
    theta: f64,
    /// Report the smallest odd panel whose majority reaches this reliability
    #[arg(long)]
    target: Option<f64>,
    /// Add a Monte Carlo estimate from this many simulated panels
    #[arg(long, conflicts_with = "target")]
    mc_trials: Option<u64>,
    /// Seed for the Monte Carlo estimate
    #[arg(long, requires = "mc_trials")]
    seed: Option<u64>,
}

#[derive(Args)]
struct HandRuleArgs {
    /// Cost of the untaken precaution
    #[arg(long)]
    burden: f64,
    /// Probability of the harm without the precaution
    #[arg(long)]
    prob: f64,
    /// Size of the harm
    #[arg(long)]
    loss: f64,
}

#[derive(Args)]
struct ExpectedLossArgs {
    /// Client consultations per month
    #[arg(long)]
    consultations: f64,
    /// Probability that a consultation becomes a hire
    #[arg(long)]
    hire_rate: f64,
    /// Average ticket per hired case
    #[arg(long)]
    avg_ticket: f64,
    /// Business days per month
    #[arg(long, default_value_t = 22.0)]
    business_days: f64,
}

#[derive(Args)]
struct ConvictionRateArgs {
    /// Number of convicted persons
    #[arg(long)]
    convicted: u64,
    /// Number of accused persons
    #[arg(long)]
    accused: u64,
}

#[derive(Args)]
struct BayesUpdateArgs {
    /// Prior weights, comma-separated; normalized before the update
    #[arg(long, value_delimiter = ',', required = true)]
    prior: Vec<f64>,
    /// Likelihood of the evidence under each hypothesis, comma-separated
    #[arg(long, value_delimiter = ',', required = true)]
    likelihood: Vec<f64>,
}

#[derive(Args)]
struct BetaOpinionArgs {
    /// Opinion level: 0 for no opinion, 1 (strongest yes) through 5
    /// (strongest no)
    #[arg(long)]
    level: u32,
    /// Observed successes to fold into the prior
    #[arg(long, default_value_t = 0)]
    successes: u64,
    /// Observed failures to fold into the prior
    #[arg(long, default_value_t = 0)]
    failures: u64,
}

#[derive(Args)]
struct AssocArgs {
    /// Corpus file: one document per line, whitespace-separated terms
    #[arg(long)]
    input: PathBuf,
    /// First term
    #[arg(long)]
    term1: String,
    /// Second term
    #[arg(long)]
    term2: String,
}

#[derive(Args)]
struct TfidfArgs {
    /// Corpus file: one document per line, whitespace-separated terms
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct DataArgs {
    #[command(subcommand)]
    command: DataCommand,
}

#[derive(Subcommand)]
enum DataCommand {
    /// Print an embedded dataset as CSV
    Export {
        /// Dataset name; see `data list`
        name: String,
        /// Write to this file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List embedded dataset names
    List,
}

/// One result in all three output formats.
struct Rendered {
    json: Value,
    csv: String,
    text: String,
}

impl Rendered {
    fn for_format(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).unwrap(),
            Format::Csv => self.csv.trim_end().to_string(),
            Format::Text => self.text.trim_end().to_string(),
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::Forecast(args) => run_forecast(args),
        Command::Jury(args) => run_jury(args),
        Command::HandRule(args) => run_hand_rule(args),
        Command::ExpectedLoss(args) => run_expected_loss(args),
        Command::ConvictionRate(args) => run_conviction_rate(args),
        Command::BayesUpdate(args) => run_bayes_update(args),
        Command::BetaOpinion(args) => run_beta_opinion(args),
        Command::Assoc(args) => run_assoc(args),
        Command::Tfidf(args) => run_tfidf(args),
        Command::Data(args) => run_data(args),
    }
}

/// Seed precedence: flag, then environment, then the fixed default.
fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV_VAR) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            Error::InvalidInput(format!(
                "{SEED_ENV_VAR} must be an unsigned integer, got {raw:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEED),
        Err(e) => Err(Error::InvalidInput(format!("{SEED_ENV_VAR}: {e}"))),
    }
}

fn read_to_string(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(Error::from)
}

/// `YYYY-MM-01` for monthly and yearly series, `YYYY-Pnn` otherwise.
fn period_label(year: i32, period: u32, frequency: u32) -> String {
    match frequency {
        12 => format!("{year:04}-{period:02}-01"),
        1 => format!("{year:04}-01-01"),
        _ => format!("{year:04}-P{period:02}"),
    }
}

fn run_forecast(args: &ForecastArgs) -> Result<Rendered> {
    let text_in = read_to_string(&args.input)?;
    let input = series::parse_series_csv(&text_in)?;
    let opts = FitsOptions {
        train_fraction: args.train,
        steps: args.steps,
        max_points: args.max_points,
        seed: resolve_seed(args.seed)?,
        intervals: args.pi,
        parallel: !args.serial,
    };
    let report = forecast::fits(&input, &opts)?;

    if let Some(path) = &args.chart {
        render_forecast_svg(&input, &report, path)?;
    }
    if let Some(dir) = &args.chart_intermediate {
        render_intermediate_charts(&input, &report, &opts, dir)?;
    }

    let fc = &report.point_forecasts;
    let freq = fc.frequency();
    let mut csv = String::from("period,forecast");
    if report.intervals.is_some() {
        csv.push_str(",lower,upper");
    }
    csv.push('\n');
    for (i, v) in fc.values().iter().enumerate() {
        let (year, period) = fc.period_at(i);
        csv.push_str(&format!("{},{v}", period_label(year, period, freq)));
        if let Some(pi) = &report.intervals {
            csv.push_str(&format!(",{},{}", pi.lower[i], pi.upper[i]));
        }
        csv.push('\n');
    }

    let mut text = format!("best model: {}\nholdout mean squared error:\n", report.best_model);
    for (id, mse) in &report.mse_per_model {
        text.push_str(&format!("  {:<14} {mse:.6}\n", id.name()));
    }
    let (fy, fp) = fc.period_at(0);
    let (ly, lp) = fc.period_at(fc.len() - 1);
    text.push_str(&format!(
        "forecast {} .. {}:\n",
        period_label(fy, fp, freq),
        period_label(ly, lp, freq)
    ));
    for (i, v) in fc.values().iter().enumerate() {
        let (year, period) = fc.period_at(i);
        text.push_str(&format!("  {} {v:.2}\n", period_label(year, period, freq)));
    }
    text.push_str(&format!("runtime: {:.3}s\n", report.runtime_seconds));

    Ok(Rendered {
        json: serde_json::to_value(&report).expect("report serializes"),
        csv,
        text,
    })
}

/// One chart per surviving candidate: the truncated series plus that
/// model's holdout-period forecast, written as `<dir>/<model>.svg`.
fn render_intermediate_charts(
    input: &TimeSeries,
    report: &ForecastReport,
    opts: &FitsOptions,
    dir: &std::path::Path,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let truncated = input.last_points(opts.max_points);
    let (train, test) = series::split(&truncated, &SplitSpec::new(opts.train_fraction)?)?;
    for &id in report.mse_per_model.keys() {
        let model = forecast::fit(&train, id, derived_seed(opts.seed, id))?;
        let (year, period) = train.period_after_end();
        let holdout_fc = TimeSeries::new(
            model.forecast(test.len()),
            year,
            period,
            train.frequency(),
        )?;
        let svg = chart::forecast_svg(&truncated, &holdout_fc);
        let path = dir.join(format!("{}.svg", id.name().to_lowercase()));
        std::fs::write(path, svg)?;
    }
    Ok(())
}

fn run_jury(args: &JuryArgs) -> Result<Rendered> {
    if let Some(target) = args.target {
        let n = min_panel_size(args.theta, target)?;
        return Ok(Rendered {
            json: json!({ "min_panel_size": n }),
            csv: format!("metric,value\nmin_panel_size,{n}\n"),
            text: format!(
                "smallest odd panel with majority reliability >= {target}: {n}"
            ),
        });
    }
    let spec = PanelSpec::new(args.n.unwrap(), args.theta)?;
    let p = majority_prob(&spec);
    let mut json = json!({ "p_majority": p });
    let mut csv = format!("metric,value\np_majority,{p}\n");
    let mut text = format!("P(majority correct) = {p:.6}");
    if let Some(trials) = args.mc_trials {
        let estimate = majority_prob_mc(&spec, trials, resolve_seed(args.seed)?)?;
        json["p_majority_mc"] = json!(estimate);
        csv.push_str(&format!("p_majority_mc,{estimate}\n"));
        text.push_str(&format!(
            "\nMonte Carlo estimate over {trials} trials = {estimate:.6}"
        ));
    }
    Ok(Rendered { json, csv, text })
}

fn run_hand_rule(args: &HandRuleArgs) -> Result<Rendered> {
    let inputs = HandInputs::new(args.burden, args.prob, args.loss)?;
    let ruling = hand_rule(&inputs);
    let verdict = if ruling.liable { "liable" } else { "not liable" };
    let relation = if ruling.liable { "<" } else { ">=" };
    Ok(Rendered {
        json: json!({ "liable": ruling.liable, "expected_harm": ruling.expected_harm }),
        csv: format!(
            "metric,value\nliable,{}\nexpected_harm,{}\n",
            ruling.liable, ruling.expected_harm
        ),
        text: format!(
            "{verdict}: burden {} {relation} expected harm {}",
            args.burden, ruling.expected_harm
        ),
    })
}

fn run_expected_loss(args: &ExpectedLossArgs) -> Result<Rendered> {
    let loss = expected_daily_loss(
        args.consultations,
        args.hire_rate,
        args.avg_ticket,
        args.business_days,
    )?;
    Ok(Rendered {
        json: json!({ "value": loss.value, "text": loss.text }),
        csv: format!("metric,value\nexpected_daily_loss,{}\n", loss.value),
        text: loss.text,
    })
}

fn run_conviction_rate(args: &ConvictionRateArgs) -> Result<Rendered> {
    let rate = conviction_rate(args.convicted, args.accused)?;
    Ok(Rendered {
        json: json!({ "rate": rate }),
        csv: format!("metric,value\nrate,{rate}\n"),
        text: format!(
            "conviction rate: {rate:.4} ({} of {} accused)",
            args.convicted, args.accused
        ),
    })
}

fn run_bayes_update(args: &BayesUpdateArgs) -> Result<Rendered> {
    let prior = DiscreteBelief::normalized(args.prior.clone())?;
    let posterior = bayes_update_discrete(&prior, &args.likelihood)?;
    let weights = posterior.weights();
    let mut csv = String::from("hypothesis,posterior\n");
    for (i, w) in weights.iter().enumerate() {
        csv.push_str(&format!("{i},{w}\n"));
    }
    let text = format!(
        "posterior: [{}]",
        weights
            .iter()
            .map(|w| format!("{w:.6}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(Rendered {
        json: json!({ "posterior": weights }),
        csv,
        text,
    })
}

fn run_beta_opinion(args: &BetaOpinionArgs) -> Result<Rendered> {
    let prior = beta_from_opinion(args.level)?;
    let belief = beta_update(&prior, args.successes, args.failures);
    Ok(Rendered {
        json: json!({ "alpha": belief.alpha, "beta": belief.beta, "mean": belief.mean() }),
        csv: format!(
            "metric,value\nalpha,{}\nbeta,{}\nmean,{}\n",
            belief.alpha,
            belief.beta,
            belief.mean()
        ),
        text: format!(
            "Beta(alpha = {}, beta = {}), mean {:.6}",
            belief.alpha,
            belief.beta,
            belief.mean()
        ),
    })
}

fn run_assoc(args: &AssocArgs) -> Result<Rendered> {
    let corpus = Corpus::from_lines(&read_to_string(&args.input)?)?;
    let counts = count_pair(&corpus, &args.term1, &args.term2);
    let assoc = stiles_association(&counts)?;
    let direction = if assoc.negative { "negative" } else { "positive" };
    Ok(Rendered {
        json: json!({
            "a": counts.a,
            "b": counts.b,
            "f": counts.f,
            "n": counts.n,
            "magnitude": assoc.magnitude,
            "negative": assoc.negative,
        }),
        csv: format!(
            "metric,value\na,{}\nb,{}\nf,{}\nn,{}\nmagnitude,{}\nnegative,{}\n",
            counts.a, counts.b, counts.f, counts.n, assoc.magnitude, assoc.negative
        ),
        text: format!(
            "association({}, {}): magnitude {:.4}, {direction} \
             (a = {}, b = {}, f = {}, n = {})",
            args.term1, args.term2, assoc.magnitude, counts.a, counts.b, counts.f, counts.n
        ),
    })
}

fn run_tfidf(args: &TfidfArgs) -> Result<Rendered> {
    let corpus = Corpus::from_lines(&read_to_string(&args.input)?)?;
    let weights = tfidf(&corpus);
    let mut csv = String::from("document,term,weight\n");
    let mut text = String::new();
    for (i, doc) in weights.iter().enumerate() {
        text.push_str(&format!("document {i}:\n"));
        for (term, w) in doc {
            csv.push_str(&format!("{i},{term},{w}\n"));
            text.push_str(&format!("  {term} {w:.6}\n"));
        }
    }
    Ok(Rendered {
        json: json!({ "documents": weights }),
        csv,
        text,
    })
}

fn run_data(args: &DataArgs) -> Result<Rendered> {
    match &args.command {
        DataCommand::Export { name, output } => {
            let fixture = data::by_name(name).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown dataset {name:?}; available: {}",
                    data::names().join(", ")
                ))
            })?;
            let csv = fixture.to_csv()?;
            if let Some(path) = output {
                std::fs::write(path, &csv)?;
                let note = format!("wrote {} ({} rows) to {}", name, fixture.series.len(), path.display());
                return Ok(Rendered {
                    json: json!({ "written": path.display().to_string(), "rows": fixture.series.len() }),
                    csv: note.clone(),
                    text: note,
                });
            }
            Ok(Rendered {
                json: json!({ "name": name, "csv": csv }),
                csv: csv.clone(),
                text: csv,
            })
        }
        DataCommand::List => {
            let names = data::names();
            let mut csv = String::from("name,points,start,frequency\n");
            let mut text = String::new();
            let mut entries = Vec::new();
            for name in names {
                let fixture = data::by_name(name).unwrap();
                let (year, period) = fixture.series.period_at(0);
                let freq = fixture.series.frequency();
                csv.push_str(&format!(
                    "{name},{},{},{freq}\n",
                    fixture.series.len(),
                    period_label(year, period, freq)
                ));
                text.push_str(&format!(
                    "{name}: {} points from {}, frequency {freq}\n",
                    fixture.series.len(),
                    period_label(year, period, freq)
                ));
                entries.push(json!({
                    "name": name,
                    "points": fixture.series.len(),
                    "start": period_label(year, period, freq),
                    "frequency": freq,
                }));
            }
            Ok(Rendered {
                json: json!({ "datasets": entries }),
                csv,
                text,
            })
        }
    }
}
