//! `qample`: exact partial-positivity toolbox.
//!
//! Exit codes: 0 success, 1 computation failure or suite FAIL, 2 usage.

use clap::{Args, Parser, Subcommand};
use qample::cohomology::{CharLabel, Engine};
use qample::error::Error;
use qample::frobenius::{frobenius_tor, ordinary_frobenius_tor, preset_names, FinAlgebra};
use qample::geometry::Geometry;
use qample::positivity::{
    cone_scan_rank2, n_minus_1_ample, naive_probe, q_nef, q_nef_interior, qtample_certificate,
    uniform_probe, QTVerdict, ScanPredicate,
};
use qample::ring::{certify_n_koszul, GradedRing};
use qample::suite::{run_all, run_criterion, CRITERIA_COUNT};
use qample::svg::emit_chart;
use num::{BigInt, BigRational};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qample", version, about = "Exact q-ampleness certificates, cone charts, Koszul section rings, and Frobenius Tor probes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSONL cohomology cache file (created if absent).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Disable the cohomology cache even if --cache is given.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    format: String,
}

#[derive(Args)]
struct GeomArgs {
    /// Built-in geometry: p1, p2, p1xp1, hirzebruch1, totaro3fold, sl3b.
    #[arg(long, default_value = "p1xp1")]
    geometry: String,
    /// JSON fan file (rays + maximal cones) instead of a built-in.
    #[arg(long)]
    fan_file: Option<PathBuf>,
}

impl GeomArgs {
    fn build(&self) -> Result<Geometry, Error> {
        match &self.fan_file {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
                let v: serde_json::Value = serde_json::from_str(&text)
                    .map_err(|e| Error::Usage(format!("{} is not JSON: {e}", path.display())))?;
                Geometry::from_fan(qample::lattice::Fan::from_json_value(&v)?)
            }
            None => Geometry::builtin(&self.geometry),
        }
    }
}

fn parse_divisor(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Usage(format!("divisor coordinate {t:?} is not an integer")))
        })
        .collect()
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology table of a line bundle.
    Cohomology {
        #[command(flatten)]
        geom: GeomArgs,
        /// Class coordinates, comma separated, e.g. 1,-2.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        /// Characteristic: 0 or a prime.
        #[arg(long, default_value_t = 0)]
        char: u64,
    },
    /// Search for a q-ampleness certificate.
    Check {
        #[command(flatten)]
        geom: GeomArgs,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 64)]
        n_max: u64,
    },
    /// Scan the rank-2 class lattice and chart the chambers.
    Scan {
        #[command(flatten)]
        geom: GeomArgs,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 8)]
        resolution: u32,
        #[arg(long, default_value_t = 24)]
        n_max: u64,
        /// Chart predicate.
        #[arg(long, default_value = "qtample", value_parser = ["qtample", "qnef"])]
        predicate: String,
        /// Write the chart as an SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Exact q-nef verdict (orbit-closure bigness test).
    Nef {
        #[command(flatten)]
        geom: GeomArgs,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
    /// Naive and uniform vanishing probes.
    Probe {
        #[command(flatten)]
        geom: GeomArgs,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 32)]
        m_max: i64,
    },
    /// Certify the polarization section ring as N-Koszul.
    Koszul {
        #[command(flatten)]
        geom: GeomArgs,
        /// Koszul level N (default 2 * dim).
        #[arg(long)]
        n: Option<usize>,
        /// Degree window (default 2N).
        #[arg(long)]
        window: Option<usize>,
    },
    /// Frobenius Tor tables for a preset F_p-algebra.
    Frobenius {
        /// Preset algebra name (see --list).
        #[arg(long, default_value = "k[x]/x^2")]
        algebra: String,
        /// The prime p.
        #[arg(long, default_value_t = 2)]
        char: u64,
        /// Frobenius power N.
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Compute Tor over A of the Frobenius pushforward against k
        /// instead of the twisted Hochschild table.
        #[arg(long)]
        ordinary: bool,
        /// List preset names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Run the reproduction suite (one line per criterion).
    ReproducePaper {
        /// Run a single criterion (1-13).
        #[arg(long)]
        criterion: Option<usize>,
    },
}

fn emit<T: Serialize + std::fmt::Debug>(format: &str, value: &T) {
    if format == "json" {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
    } else {
        println!("{value:#?}");
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let mut engine = Engine::new();
    if let (Some(path), false) = (&cli.cache, cli.no_cache) {
        engine = engine.with_disk_cache(path.clone())?;
    }
    let format = cli.format.as_str();
    match cli.command {
        Command::Cohomology { geom, divisor, char } => {
            let g = geom.build()?;
            let d = parse_divisor(&divisor)?;
            let ch = if char == 0 { CharLabel::Zero } else { CharLabel::Prime(char) };
            let dims = g.cohomology(&engine, &d, ch)?;
            #[derive(Serialize, Debug)]
            struct Report {
                geometry: String,
                class: Vec<i64>,
                characteristic: u64,
                dims: Vec<u64>,
            }
            emit(format, &Report { geometry: g.name(), class: d, characteristic: char, dims });
        }
        Command::Check { geom, divisor, q, n_max } => {
            let g = geom.build()?;
            let d = parse_divisor(&divisor)?;
            let mut rep = qtample_certificate(&g, &engine, &d, q, n_max)?;
            // At the top nontrivial level the certificate search is
            // complemented by the exact pseudoeffectivity criterion.
            if q + 1 == g.dim()
                && matches!(rep.verdict, QTVerdict::NoCertificateUpTo { .. })
                && !n_minus_1_ample(&g, &d)?
            {
                rep.verdict = QTVerdict::ExactFalse;
            }
            emit(format, &rep);
        }
        Command::Scan { geom, q, resolution, n_max, predicate, svg } => {
            let g = geom.build()?;
            let pred = if predicate == "qnef" {
                ScanPredicate::QNef
            } else {
                ScanPredicate::QTAmple { n_max }
            };
            let chart = cone_scan_rank2(&g, &engine, q, resolution, pred)?;
            if let Some(path) = svg {
                std::fs::write(&path, emit_chart(&chart))
                    .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
                println!("wrote {}", path.display());
            } else {
                emit(format, &chart);
            }
        }
        Command::Nef { geom, divisor, q } => {
            let g = geom.build()?;
            let d = parse_divisor(&divisor)?;
            let rational: Vec<BigRational> =
                d.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            let mut rep = q_nef(&g, &rational, q)?;
            let interior = q_nef_interior(&g, &d, q)?;
            rep.assumptions.push(format!("interior (radius-1/2 axis probe): {interior}"));
            emit(format, &rep);
        }
        Command::Probe { geom, divisor, q, m_max } => {
            let g = geom.build()?;
            let d = parse_divisor(&divisor)?;
            let h = g.polarization();
            let twists: Vec<Vec<i64>> =
                (0..=3).map(|j| h.iter().map(|&c| -j * c).collect()).collect();
            let naive = naive_probe(&g, &engine, &d, q, &twists, m_max)?;
            let uniform = uniform_probe(&g, &engine, &d, q, 4, m_max, None)?;
            #[derive(Serialize, Debug)]
            struct Report<A: Serialize + std::fmt::Debug, B: Serialize + std::fmt::Debug> {
                naive: A,
                uniform: B,
            }
            emit(format, &Report { naive, uniform });
        }
        Command::Koszul { geom, n, window } => {
            let g = geom.build()?;
            let n = n.unwrap_or(2 * g.dim());
            let window = window.unwrap_or(2 * n);
            let ring = GradedRing::section_ring(&g, &engine, &g.polarization(), window)?;
            let cert = certify_n_koszul(&ring, n, window)?;
            emit(format, &cert);
        }
        Command::Frobenius { algebra, char, power, n_max, ordinary, list } => {
            if list {
                for name in preset_names() {
                    println!("{name}");
                }
                return Ok(true);
            }
            let a = FinAlgebra::preset(&algebra, char)?;
            let rep = if ordinary {
                ordinary_frobenius_tor(&a, power, n_max)?
            } else {
                frobenius_tor(&a, power, n_max)?
            };
            emit(format, &rep);
        }
        Command::ReproducePaper { criterion } => {
            let results = match criterion {
                Some(id) => vec![run_criterion(id, &engine)?],
                None => run_all(&engine),
            };
            let mut all_pass = true;
            for r in &results {
                all_pass &= r.passed;
                println!(
                    "criterion {:2}/{}: {} - {} ({})",
                    r.id,
                    CRITERIA_COUNT,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.details
                );
            }
            println!("suite: {}", if all_pass { "PASS" } else { "FAIL" });
            return Ok(all_pass);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::Usage(_) | Error::UnsupportedGeometry(_))) => {
            eprintln!("usage error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
