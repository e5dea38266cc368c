//! `score` command-line tool: reject curves, confusion stacks and pies from
//! prediction CSVs or synthetic Gaussian-mixture data.

pub mod error;
pub mod input;
pub mod output;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use score_core::render::{render_curves, render_pie, render_stack, ChartStyle};
use score_core::synth::{generate_predictions, paper_spec, GaussianMixtureSpec};
use score_core::{
    build_stack, reject_curve, Align, MetricSpec, Order, PredictionSet, RejectCurve, StackOptions,
};

pub use error::CliError;
pub use input::{ingest_csv, parse_predictions, predictions_csv};

#[derive(Debug, Parser)]
#[command(name = "score", version, about = "Reject-option curves and stacked confusion reject plots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Accuracy, precision and recall over acceptance rate (SVG + CSV).
    Curves(CurvesArgs),
    /// Stacked confusion plot (SVG + JSON).
    Stack(StackArgs),
    /// Radial stacked confusion plot (SVG + JSON).
    Pie(PieArgs),
    /// Confusion matrix at every threshold (CSV).
    Table(TableArgs),
    /// Sample a mixture, classify it and write the predictions CSV.
    Generate(GenerateArgs),
    /// Reference figures for the built-in two-class mixture.
    PaperFigures(FiguresArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Prediction CSV with header `true,pred,certainty`.
    #[arg(long, value_name = "CSV")]
    pub input: Option<PathBuf>,
    /// Built-in two-class Gaussian mixture, classified by the Bayes rule.
    #[arg(long)]
    pub paper: bool,
    /// Gaussian mixture spec (JSON), classified by the Bayes rule.
    #[arg(long, value_name = "JSON")]
    pub mixture: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Seed for synthetic data.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of classes, when the largest class id never occurs in the CSV.
    #[arg(long)]
    pub num_classes: Option<usize>,
}

#[derive(Debug, Args)]
pub struct StyleArgs {
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub height: Option<f64>,
    #[arg(long)]
    pub title: Option<String>,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// accuracy, precision[:CLASS] or recall[:CLASS]; repeatable. Without a
    /// class, precision and recall are emitted for every class. Defaults to
    /// all three.
    #[arg(long = "metric")]
    pub metrics: Vec<String>,
    #[arg(long, value_name = "SVG")]
    pub out: PathBuf,
    /// CSV output path (defaults to the SVG path with a .csv extension).
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub style: StyleArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ChartType {
    Stack,
    Pie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum OrderArg {
    Natural,
    CorrectLast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum AlignArg {
    Bottom,
    CorrectStart,
    CorrectCenter,
}

#[derive(Debug, Args)]
pub struct StackArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long = "type", value_enum, ignore_case = true, default_value = "stack")]
    pub chart_type: ChartType,
    #[arg(long, value_enum, ignore_case = true, default_value = "natural")]
    pub order: OrderArg,
    /// Divide counts by the number of accepted samples.
    #[arg(long)]
    pub normalize: bool,
    #[arg(long, value_enum, ignore_case = true, default_value = "bottom")]
    pub align: AlignArg,
    /// Merge all errors of a true class into one cell.
    #[arg(long)]
    pub condense: bool,
    #[arg(long, value_name = "SVG")]
    pub out: PathBuf,
    /// JSON output path (defaults to the SVG path with a .json extension).
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub style: StyleArgs,
}

#[derive(Debug, Args)]
pub struct PieArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub condense: bool,
    #[arg(long, value_name = "SVG")]
    pub out: PathBuf,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub style: StyleArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_name = "CSV")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Gaussian mixture spec (JSON); the built-in mixture when absent.
    #[arg(long, value_name = "JSON")]
    pub mixture: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "CSV")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

/// File names written by `paper-figures`, in order.
pub const FIGURE_FILES: [&str; 6] = [
    "fig1a_reject_curves.svg",
    "fig1b_stack.svg",
    "fig2a_stack_correct_last.svg",
    "fig2b_stack_correct_start.svg",
    "fig2c_stack_normalized.svg",
    "fig2d_pie.svg",
];

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Natural => Order::Natural,
            OrderArg::CorrectLast => Order::CorrectLast,
        }
    }
}

impl From<AlignArg> for Align {
    fn from(a: AlignArg) -> Self {
        match a {
            AlignArg::Bottom => Align::Bottom,
            AlignArg::CorrectStart => Align::CorrectStart,
            AlignArg::CorrectCenter => Align::CorrectCenter,
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Curves(args) => run_curves(args),
        Command::Stack(args) => run_stack(args),
        Command::Pie(args) => run_pie(args),
        Command::Table(args) => {
            let preds = load_predictions(&args.input)?;
            output::write_atomic(&args.out, &output::table_csv(&preds))
        }
        Command::Generate(args) => {
            let spec = match &args.mixture {
                Some(path) => input::load_mixture(path)?,
                None => paper_spec(),
            };
            let preds = generate_predictions(&spec, args.seed)?;
            output::write_atomic(&args.out, &predictions_csv(&preds))
        }
        Command::PaperFigures(args) => paper_figures(args.seed, &args.out),
    }
}

pub fn load_predictions(args: &InputArgs) -> Result<PredictionSet, CliError> {
    let synthetic = |spec: GaussianMixtureSpec| -> Result<PredictionSet, CliError> {
        if args.num_classes.is_some() {
            return Err(CliError::Usage("--num-classes only applies to --input".into()));
        }
        Ok(generate_predictions(&spec, args.seed)?)
    };
    let src = &args.source;
    match (&src.input, src.paper, &src.mixture) {
        (Some(path), false, None) => ingest_csv(path, args.num_classes),
        (None, true, None) => synthetic(paper_spec()),
        (None, false, Some(path)) => synthetic(input::load_mixture(path)?),
        _ => Err(CliError::Usage("give exactly one of --input, --paper, --mixture".into())),
    }
}

/// Expands `--metric` values against the class count.
pub fn parse_metrics(values: &[String], num_classes: usize) -> Result<Vec<MetricSpec>, CliError> {
    let defaults = ["accuracy".to_string(), "precision".to_string(), "recall".to_string()];
    let values = if values.is_empty() { &defaults[..] } else { values };
    let mut out = Vec::new();
    for v in values {
        let v = v.trim().to_ascii_lowercase();
        let (kind, class) = match v.split_once([':', '_']) {
            Some((k, c)) => {
                let c: usize = c
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad class in metric '{v}'")))?;
                (k.to_string(), Some(c))
            }
            None => (v.clone(), None),
        };
        let classes: Vec<usize> = match class {
            Some(c) => vec![c],
            None => (1..=num_classes).collect(),
        };
        match kind.as_str() {
            "accuracy" if class.is_none() => out.push(MetricSpec::Accuracy),
            "precision" => out.extend(classes.into_iter().map(MetricSpec::Precision)),
            "recall" => out.extend(classes.into_iter().map(MetricSpec::Recall)),
            _ => return Err(CliError::Usage(format!("unknown metric '{v}'"))),
        }
    }
    Ok(out)
}

fn style_from(base: ChartStyle, args: &StyleArgs) -> ChartStyle {
    let mut style = base;
    if let Some(w) = args.width {
        style.width = w;
    }
    if let Some(h) = args.height {
        style.height = h;
    }
    if let Some(t) = &args.title {
        style.title = Some(t.clone());
    }
    style
}

fn sibling(path: &Path, explicit: &Option<PathBuf>, ext: &str) -> PathBuf {
    explicit.clone().unwrap_or_else(|| path.with_extension(ext))
}

pub fn compute_curves(preds: &PredictionSet, metrics: &[MetricSpec]) -> Result<Vec<RejectCurve>, CliError> {
    metrics
        .iter()
        .map(|&m| reject_curve(preds, m).map_err(CliError::from))
        .collect()
}

fn run_curves(args: &CurvesArgs) -> Result<(), CliError> {
    let preds = load_predictions(&args.input)?;
    let metrics = parse_metrics(&args.metrics, preds.num_classes())?;
    let curves = compute_curves(&preds, &metrics)?;
    // undefined-only curves stay in the CSV but cannot be drawn
    let drawable: Vec<RejectCurve> =
        curves.iter().filter(|c| c.defined_points().next().is_some()).cloned().collect();
    let shown = if drawable.is_empty() { &curves } else { &drawable };
    let svg = render_curves(shown, &style_from(ChartStyle::default(), &args.style))?;
    let csv = output::curves_csv(&curves);
    output::write_atomic(&sibling(&args.out, &args.csv, "csv"), &csv)?;
    output::write_atomic(&args.out, svg.as_str())
}

fn run_stack(args: &StackArgs) -> Result<(), CliError> {
    let preds = load_predictions(&args.input)?;
    let opts = StackOptions {
        order: args.order.into(),
        normalize: args.normalize,
        align: args.align.into(),
        condense_errors: args.condense,
    };
    let stack = build_stack(&preds, opts)?;
    let (svg, kind) = match args.chart_type {
        ChartType::Stack => (render_stack(&stack, &style_from(ChartStyle::default(), &args.style))?, "stack"),
        ChartType::Pie => (render_pie(&stack, &style_from(ChartStyle::pie(), &args.style))?, "pie"),
    };
    output::write_atomic(&sibling(&args.out, &args.json, "json"), &output::stack_json(&stack, kind))?;
    output::write_atomic(&args.out, svg.as_str())
}

fn run_pie(args: &PieArgs) -> Result<(), CliError> {
    let preds = load_predictions(&args.input)?;
    let opts = StackOptions { condense_errors: args.condense, ..StackOptions::pie() };
    let stack = build_stack(&preds, opts)?;
    let svg = render_pie(&stack, &style_from(ChartStyle::pie(), &args.style))?;
    output::write_atomic(&sibling(&args.out, &args.json, "json"), &output::stack_json(&stack, "pie"))?;
    output::write_atomic(&args.out, svg.as_str())
}

fn caption(chart: &str, opts: StackOptions) -> String {
    format!(
        "type={} order={} normalize={} align={}",
        chart,
        opts.order.as_str().to_ascii_uppercase(),
        opts.normalize.to_string().to_ascii_uppercase(),
        opts.align.as_str().to_ascii_uppercase()
    )
}

/// Writes the six reference figures for the built-in mixture into `dir`.
pub fn paper_figures(seed: u64, dir: &Path) -> Result<(), CliError> {
    let preds = generate_predictions(&paper_spec(), seed)?;
    let metrics = parse_metrics(&[], preds.num_classes())?;
    let curves = compute_curves(&preds, &metrics)?;
    let drawable: Vec<RejectCurve> =
        curves.into_iter().filter(|c| c.defined_points().next().is_some()).collect();
    let svg = render_curves(&drawable, &ChartStyle::default().with_title("ARC, PRC and RRC"))?;
    output::write_atomic(&dir.join(FIGURE_FILES[0]), svg.as_str())?;

    let stacks = [
        StackOptions::default(),
        StackOptions { order: Order::CorrectLast, ..Default::default() },
        StackOptions { order: Order::CorrectLast, align: Align::CorrectStart, ..Default::default() },
        StackOptions { order: Order::CorrectLast, normalize: true, align: Align::CorrectStart, condense_errors: false },
    ];
    for (opts, file) in stacks.into_iter().zip(&FIGURE_FILES[1..5]) {
        let stack = build_stack(&preds, opts)?;
        let style = ChartStyle::default().with_title(caption("STACK", opts));
        output::write_atomic(&dir.join(file), render_stack(&stack, &style)?.as_str())?;
    }

    let pie = build_stack(&preds, StackOptions::pie())?;
    let style = ChartStyle::pie().with_title(caption("PIE", StackOptions::pie()));
    output::write_atomic(&dir.join(FIGURE_FILES[5]), render_pie(&pie, &style)?.as_str())
}
