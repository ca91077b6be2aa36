//! `nested-squares`: build, verify, render and fuzz the nested-square figures.

use std::fmt::Write as _;
use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nested_squares::{
    build_bhaskara, build_choupei, build_proof2, ratio, run_suite, verify::SuiteParams, Family,
    Figure, OrientationString, Rational, RenderFormat, RenderOptions, TriangleSides,
    VerificationReport,
};

#[derive(Parser, Debug)]
#[command(name = "nested-squares", version, about = "Exact nested-square Pythagoras figures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every identity check for one figure.
    Verify {
        #[command(flatten)]
        figure: FigureArgs,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Write a figure as SVG or TikZ.
    Render {
        #[command(flatten)]
        figure: FigureArgs,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Defaults to the output extension (.tex means tikz), else svg.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Canvas size in pixels (SVG only).
        #[arg(long, default_value_t = 512)]
        canvas: u32,
        #[arg(long, default_value_t = 1.0)]
        stroke: f64,
        /// Decimal places in emitted coordinates.
        #[arg(long, default_value_t = 6)]
        precision: u32,
        #[arg(long)]
        no_labels: bool,
        /// Emit a bare tikzpicture instead of a standalone document.
        #[arg(long)]
        fragment: bool,
    },
    /// Run the suite on randomly generated figures.
    Sweep {
        #[arg(long, default_value_t = 100)]
        cases: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_depth: usize,
    },
    /// Print the per-layer exact quantities.
    Info {
        #[command(flatten)]
        figure: FigureArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct FigureArgs {
    #[arg(long, default_value = "choupei")]
    family: Family,
    /// First leg, as an integer or p/q.
    #[arg(long = "a", value_name = "A1", allow_hyphen_values = true)]
    a: Rational,
    /// Second leg, as an integer or p/q.
    #[arg(long = "b", value_name = "B1", allow_hyphen_values = true)]
    b: Rational,
    /// Orientation string (choupei only).
    #[arg(long)]
    string: Option<OrientationString>,
    /// Depth (proof2 and bhaskara; choupei in `info`).
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Svg,
    Tikz,
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

type Outcome = Result<ExitCode, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { figure, json } => cmd_verify(&figure, json),
        Command::Render { figure, output, format, canvas, stroke, precision, no_labels, fragment } => {
            let format = match format {
                Some(FormatArg::Svg) => RenderFormat::Svg,
                Some(FormatArg::Tikz) => RenderFormat::Tikz,
                None if output.extension().is_some_and(|e| e == "tex") => RenderFormat::Tikz,
                None => RenderFormat::Svg,
            };
            let opts = RenderOptions {
                canvas_size: canvas,
                stroke_width: stroke,
                precision,
                show_labels: !no_labels,
                format,
                tikz_standalone: !fragment,
            };
            cmd_render(&figure, &output, &opts)
        }
        Command::Sweep { cases, seed, max_depth } => cmd_sweep(cases, seed, max_depth),
        Command::Info { figure, json } => cmd_info(&figure, json),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn sides(args: &FigureArgs) -> Result<TriangleSides, Failure> {
    TriangleSides::new(args.a.clone(), args.b.clone()).map_err(|e| usage(e.to_string()))
}

/// Checks the string/depth pairing for the family.
fn suite_params(args: &FigureArgs) -> Result<SuiteParams, Failure> {
    match (args.family, &args.string, args.depth) {
        (Family::Choupei, Some(s), None) => Ok(SuiteParams::Choupei(s.clone())),
        (Family::Choupei, _, _) => Err(usage("choupei takes --string (and not --depth)")),
        (_, Some(_), _) => Err(usage(format!("{} takes --depth, not --string", args.family.name()))),
        (_, None, None) => Err(usage(format!("{} needs --depth", args.family.name()))),
        (_, None, Some(0)) => Err(usage("depth must be at least 1")),
        (Family::Proof2, None, Some(d)) => Ok(SuiteParams::Proof2(d)),
        (Family::Bhaskara, None, Some(d)) => Ok(SuiteParams::Bhaskara(d)),
    }
}

fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

fn paint_report(report: &VerificationReport) -> String {
    let text = report.to_string();
    if !color_enabled() {
        return text;
    }
    text.lines()
        .map(|line| {
            if let Some(rest) = line.strip_prefix("  PASS") {
                format!("  \x1b[32mPASS\x1b[0m{rest}")
            } else if let Some(rest) = line.strip_prefix("  FAIL") {
                format!("  \x1b[31mFAIL\x1b[0m{rest}")
            } else {
                line.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_verify(args: &FigureArgs, json: bool) -> Outcome {
    let sides = sides(args)?;
    let params = suite_params(args)?;
    let report = run_suite(&sides, &params).context("building the figure")?;
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{}", paint_report(&report));
    }
    Ok(if report.all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn build_figure(sides: &TriangleSides, params: &SuiteParams) -> anyhow::Result<Figure> {
    Ok(match params {
        SuiteParams::Choupei(s) => build_choupei(sides, s)?.into(),
        SuiteParams::Proof2(d) => build_proof2(sides, *d)?.into(),
        SuiteParams::Bhaskara(d) => build_bhaskara(sides, *d)?.into(),
    })
}

fn cmd_render(args: &FigureArgs, output: &PathBuf, opts: &RenderOptions) -> Outcome {
    let sides = sides(args)?;
    let params = suite_params(args)?;
    opts.validate().map_err(|e| usage(e.to_string()))?;
    let figure = build_figure(&sides, &params)?;
    let text = nested_squares::render::render_figure(&figure, opts).context("rendering")?;
    std::fs::write(output, text).with_context(|| format!("writing {}", output.display()))?;
    println!("{}", output.display());
    Ok(ExitCode::SUCCESS)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(1..=10_000i64);
    let d = rng.gen_range(1..=10_000i64);
    ratio(n, d)
}

fn random_case(rng: &mut ChaCha8Rng, max_depth: usize) -> (TriangleSides, SuiteParams) {
    let a = random_rational(rng);
    let b = random_rational(rng);
    let sides = TriangleSides::new(a, b).expect("generated sides are positive");
    let depth = rng.gen_range(1..=max_depth);
    let params = match rng.gen_range(0..3u8) {
        0 => {
            let bits = (0..depth).map(|_| rng.gen::<bool>()).collect();
            SuiteParams::Choupei(OrientationString::new(bits).expect("non-empty"))
        }
        1 => SuiteParams::Proof2(depth),
        _ => SuiteParams::Bhaskara(depth),
    };
    (sides, params)
}

fn describe(sides: &TriangleSides, params: &SuiteParams) -> String {
    let tail = match params {
        SuiteParams::Choupei(s) => format!("--string {s}"),
        SuiteParams::Proof2(d) | SuiteParams::Bhaskara(d) => format!("--depth {d}"),
    };
    format!("--family {} --a {} --b {} {}", params.family().name(), sides.a1(), sides.b1(), tail)
}

fn cmd_sweep(cases: u64, seed: u64, max_depth: usize) -> Outcome {
    if cases == 0 {
        return Err(usage("--cases must be at least 1"));
    }
    if max_depth == 0 {
        return Err(usage("--max-depth must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0u64;
    let mut first_failure: Option<String> = None;
    for case in 0..cases {
        let (sides, params) = random_case(&mut rng, max_depth);
        let outcome = run_suite(&sides, &params);
        match outcome {
            Ok(report) if report.all_pass => passed += 1,
            Ok(report) => {
                if first_failure.is_none() {
                    let mut msg = format!("case {case}: {}", describe(&sides, &params));
                    for c in report.failures() {
                        let _ = write!(msg, "\n  FAIL {}  {} = {}  (residual {})", c.name, c.lhs, c.rhs, c.residual);
                    }
                    first_failure = Some(msg);
                }
            }
            Err(e) => {
                if first_failure.is_none() {
                    first_failure = Some(format!("case {case}: {}\n  error: {e}", describe(&sides, &params)));
                }
            }
        }
    }
    println!("seed {seed}, {cases} cases, max depth {max_depth}");
    println!("{passed}/{cases} pass");
    match first_failure {
        None => Ok(ExitCode::SUCCESS),
        Some(msg) => {
            println!("first counterexample: {msg}");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_info(args: &FigureArgs, json: bool) -> Outcome {
    let sides = sides(args)?;
    let depth = args.depth.unwrap_or(1);
    if depth == 0 {
        return Err(usage("depth must be at least 1"));
    }
    let params = match (args.family, &args.string) {
        (Family::Choupei, Some(_)) if args.depth.is_some() => return Err(usage("give either --string or --depth")),
        (Family::Choupei, Some(s)) => SuiteParams::Choupei(s.clone()),
        (Family::Choupei, None) => SuiteParams::Choupei(OrientationString::new(vec![true; depth]).expect("non-empty")),
        (family, Some(_)) => return Err(usage(format!("{} takes --depth, not --string", family.name()))),
        (Family::Proof2, None) => SuiteParams::Proof2(depth),
        (Family::Bhaskara, None) => SuiteParams::Bhaskara(depth),
    };
    let figure = build_figure(&sides, &params)?;
    let rows: Vec<[String; 3]> = match &figure {
        Figure::Choupei(f) => f.layers.iter().map(|l| [l.a_n_sq.to_string(), l.b_n_sq.to_string(), l.c_n_sq.to_string()]).collect(),
        Figure::Proof2(f) => f.base.layers.iter().map(|l| [l.a_n_sq.to_string(), l.b_n_sq.to_string(), l.c_n_sq.to_string()]).collect(),
        Figure::Bhaskara(f) => f.layers.iter().map(|l| [l.a_n_sq.to_string(), l.b_n_sq.to_string(), l.c_n_sq.to_string()]).collect(),
    };
    let d_values: Vec<String> = match &figure {
        Figure::Proof2(f) => f.feet.iter().map(|s| s.d.to_string()).collect(),
        _ => Vec::new(),
    };
    let r_sq = matches!(figure, Figure::Bhaskara(_)).then(|| sides.bhaskara_r_sq().to_string());

    if json {
        let layers: Vec<_> = rows
            .iter()
            .enumerate()
            .map(|(i, [a, b, c])| serde_json::json!({"n": i + 1, "a_sq": a, "b_sq": b, "c_sq": c}))
            .collect();
        let mut value = serde_json::json!({
            "family": params.family().name(),
            "a1": sides.a1().to_string(),
            "b1": sides.b1().to_string(),
            "q_sq": sides.q_sq().to_string(),
            "layers": layers,
        });
        if !d_values.is_empty() {
            value["d"] = serde_json::json!(d_values);
        }
        if let Some(r) = &r_sq {
            value["r_sq"] = serde_json::json!(r);
        }
        println!("{value}");
        return Ok(ExitCode::SUCCESS);
    }

    println!("{}", describe(&sides, &params));
    println!("q^2 = {}", sides.q_sq());
    if let Some(r) = &r_sq {
        println!("r^2 = {r}");
    }
    let header = ["n".to_string(), "a_n^2".into(), "b_n^2".into(), "c_n^2".into()];
    let table: Vec<[String; 4]> = rows
        .into_iter()
        .enumerate()
        .map(|(i, [a, b, c])| [(i + 1).to_string(), a, b, c])
        .collect();
    let widths: Vec<usize> = (0..4)
        .map(|j| table.iter().map(|r| r[j].len()).chain([header[j].len()]).max().unwrap_or(0))
        .collect();
    for row in std::iter::once(&header).chain(&table) {
        let line: Vec<String> = row.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
        println!("{}", line.join("  ").trim_end());
    }
    for (k, d) in d_values.iter().enumerate() {
        println!("d_{} = {d}", k + 1);
    }
    Ok(ExitCode::SUCCESS)
}
