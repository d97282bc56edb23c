use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use slicealg::algebra::DegreeWindow;
use slicealg::chart::Chart;
use slicealg::config::Config;
use slicealg::report::{CheckId, Report, Status};
use slicealg::run::{run_check, schedule, window_for};
use slicealg::Error;

#[derive(Parser)]
#[command(name = "slicealg", version, about = "Exact checks for slice spectral sequence pages and the Weierstrass Hopf algebroid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks and write one JSON report line per check.
    Verify {
        #[arg(required = true)]
        checks: Vec<String>,
        #[arg(long)]
        height: Option<u32>,
        #[arg(long)]
        max_underlying: Option<i64>,
        /// Write reports here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Record wall time in the reports.
        #[arg(long)]
        timing: bool,
    },
    /// Draw the integer part of E2, E4 or E8.
    Chart {
        page: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        height: Option<u32>,
        #[arg(long)]
        max_underlying: Option<i64>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print the check ids.
    ListChecks,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Text,
}

fn load_config(path: Option<&Path>, height: Option<u32>) -> Result<Config, Error> {
    let mut cfg = match path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::Config {
                path: p.display().to_string(),
                message: e.to_string(),
            })?;
            Config::parse(&text)?
        }
        None => Config::default(),
    };
    if height.is_some() {
        cfg.height = height;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn with_max_underlying(id: CheckId, cfg: &Config, d: Option<i64>) -> Config {
    let mut cfg = cfg.clone();
    if let Some(d) = d {
        let mut w = window_for(id, &cfg);
        w.max_underlying = d;
        cfg.window = Some(w);
    }
    cfg
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Config {
            path: p.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            std::io::stdout().write_all(text.as_bytes()).ok();
            Ok(())
        }
    }
}

fn verify(
    checks: &[String],
    height: Option<u32>,
    max_underlying: Option<i64>,
    report: Option<&Path>,
    config: Option<&Path>,
    timing: bool,
) -> Result<Status, Error> {
    let ids: Vec<CheckId> = checks.iter().map(|c| c.parse()).collect::<Result<_, _>>()?;
    let cfg = load_config(config, height)?;
    let mut lines = String::new();
    let mut worst = Status::Pass;
    for id in ids {
        let t = Instant::now();
        let mut r: Report = run_check(id, &with_max_underlying(id, &cfg, max_underlying))?;
        if timing {
            r.timing_ms = Some(t.elapsed().as_millis() as u64);
        }
        match r.first_witness() {
            Some(d) => eprintln!("{id}: {} (first witness {d})", r.status.as_str()),
            None => eprintln!("{id}: {}", r.status.as_str()),
        }
        worst = worst.max(r.status);
        lines.push_str(&r.to_json_line());
        lines.push('\n');
    }
    write_out(report, &lines)?;
    Ok(worst)
}

fn chart(
    page: &str,
    format: Format,
    out: Option<&Path>,
    height: Option<u32>,
    max_underlying: Option<i64>,
    config: Option<&Path>,
) -> Result<(), Error> {
    let cfg = load_config(config, height)?;
    let mut w = cfg.window.clone().unwrap_or_else(|| DegreeWindow::integer_part(16));
    if let Some(d) = max_underlying {
        w.max_underlying = d;
    }
    let s = schedule(cfg.height.unwrap_or(2), &w, &cfg)?;
    let c = Chart::of_page(&s, page, &w)?;
    let text = match format {
        Format::Svg => c.to_svg(),
        Format::Text => c.to_text(),
    };
    write_out(out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { checks, height, max_underlying, report, config, timing } => {
            verify(&checks, height, max_underlying, report.as_deref(), config.as_deref(), timing).map(|s| s.exit_code())
        }
        Command::Chart { page, format, out, height, max_underlying, config } => {
            chart(&page, format, out.as_deref(), height, max_underlying, config.as_deref()).map(|_| 0)
        }
        Command::ListChecks => {
            let mut out = std::io::stdout().lock();
            for id in CheckId::ALL {
                if writeln!(out, "{:<22}{}", id.as_str(), id.summary()).is_err() {
                    break;
                }
            }
            Ok(0)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
