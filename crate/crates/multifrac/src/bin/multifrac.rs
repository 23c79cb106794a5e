//! Command-line front end: parse one JSON scene, run the requested
//! pipeline, emit CSV/JSON artifacts. Exit codes: 0 success, 1 I/O,
//! 2 config or validation failure, 3 numerical failure. Diagnostics
//! go to stderr as a single machine-parseable line.

use clap::{Parser, Subcommand};
use multifrac::config::{config_digest, SceneConfig};
use multifrac::conjugacy::{functional_equation_residual, theta, ConjugacyPair};
use multifrac::distribution::{coarse_spectrum, pointwise_hoelder, staircase};
use multifrac::emit::{stamp_standard_meta, CsvDoc};
use multifrac::spectrum::{
    classify_spectrum, legendre_spectrum, pressure_curve, solve_t, spectrum_range,
    SpectrumClass,
};
use multifrac::thermo::{pressure_spectral, CombinedPotential, MarkovMeasure};
use multifrac::{Error, PotentialSpec, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "multifrac",
    version,
    about = "Pressure curves, multifractal spectra, and singular distribution \
             functions of expanding interval systems"
)]
struct Cli {
    /// Scene configuration, one JSON document
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (overrides the config's out_dir)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads; falls back to env MULTIFRAC_THREADS
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Replace the command's configured depth
    #[arg(long, global = true)]
    depth_override: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the configured system(s), printing every validation step
    Validate,
    /// Pressure curve, Legendre spectrum, and spectrum range
    Spectrum,
    /// Distribution function at every cylinder endpoint
    Staircase,
    /// Windowed Hoelder slope estimates at chosen points
    Hoelder {
        /// Point to analyze; repeatable. Defaults to the leftmost
        /// attractor point.
        #[arg(long = "point")]
        points: Vec<f64>,
    },
    /// Partition-function exponents, compared against the pressure route
    Coarse,
    /// Conjugacy map samples and its Hoelder spectrum
    Conjugacy,
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Io(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl Failure {
    fn kind_and_code(&self) -> (&'static str, u8) {
        match self {
            Failure::Io(_) => ("io", 1),
            Failure::Lib(e) => match e {
                Error::Budget { .. } | Error::Invalid(_) | Error::Validation(_) => {
                    ("validation", 2)
                }
                Error::GapPoint { .. } | Error::Numerical(_) => ("numerical", 3),
            },
        }
    }

    fn message(&self) -> String {
        let raw = match self {
            Failure::Io(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        };
        raw.replace('\n', " | ")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("MULTIFRAC_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        // A second build_global in one process is harmless here: the
        // pool stays as first configured.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (kind, code) = f.kind_and_code();
            eprintln!("multifrac: kind={kind} code={code} msg=\"{}\"", f.message());
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let config_path = cli
        .config
        .as_ref()
        .ok_or_else(|| Failure::Lib(Error::invalid("--config is required")))?;
    let raw = std::fs::read_to_string(config_path)?;
    let cfg = SceneConfig::from_json(&raw)?;
    let hash = config_digest(&raw);
    let out_dir = cli
        .out
        .clone()
        .or_else(|| cfg.out_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out_dir)?;
    match &cli.command {
        Command::Validate => cmd_validate(&cfg),
        Command::Spectrum => cmd_spectrum(&cfg, &out_dir, &hash, cli.depth_override),
        Command::Staircase => cmd_staircase(&cfg, &out_dir, &hash, cli.depth_override),
        Command::Hoelder { points } => {
            cmd_hoelder(&cfg, points, &out_dir, &hash, cli.depth_override)
        }
        Command::Coarse => cmd_coarse(&cfg, &out_dir, &hash, cli.depth_override),
        Command::Conjugacy => cmd_conjugacy(&cfg, &out_dir, &hash, cli.depth_override),
    }
}

fn write_artifact(out_dir: &Path, name: &str, content: &str) -> Result<(), Failure> {
    let path = out_dir.join(name);
    std::fs::write(&path, content)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_validate(cfg: &SceneConfig) -> Result<(), Failure> {
    let report = cfg.ifs.definition()?.validate();
    println!("base system:");
    print!("{report}");
    let mut pass = report.pass;
    if let Some(g_cfg) = &cfg.ifs_g {
        let g_report = g_cfg.definition()?.validate();
        println!("target system:");
        print!("{g_report}");
        pass &= g_report.pass;
        if pass {
            match ConjugacyPair::new(cfg.ifs.build()?, g_cfg.build()?) {
                Ok(_) => println!("conjugacy pairing: ok"),
                Err(e) => {
                    println!("conjugacy pairing: {e}");
                    pass = false;
                }
            }
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Lib(Error::Validation(
            "system failed validation".into(),
        )))
    }
}

/// Cycle length for the range estimate: as long as the cycle budget
/// allows without enumerating more than a few thousand words.
fn range_cycle_length(s: usize) -> usize {
    let mut l = 1usize;
    let mut count = s;
    while count * s <= 4096 {
        count *= s;
        l += 1;
    }
    l
}

#[derive(Serialize)]
struct RangeOut {
    alpha_minus: f64,
    alpha_plus: f64,
    cycle: [f64; 2],
    asymptotic: [f64; 2],
    cycle_length: usize,
    beta_max: f64,
    disagreement: f64,
    degenerate: bool,
    /// Pressure of the second potential alone. The anchor check
    /// "degenerate spectra sit at t(0)" applies only when this is 0.
    psi_pressure: f64,
    t0: f64,
    tool_version: &'static str,
    config_hash: String,
}

fn cmd_spectrum(
    cfg: &SceneConfig,
    out_dir: &Path,
    hash: &str,
    depth_override: Option<usize>,
) -> Result<(), Failure> {
    let ifs = cfg.ifs.build()?;
    let phi = PotentialSpec::geometric(ifs.clone());
    let psi = cfg.potential_for(&ifs)?;
    let depth = depth_override.unwrap_or_else(|| cfg.pressure_depth(&phi, &psi));
    let grid = cfg.beta_values()?;
    let curve = pressure_curve(&phi, &psi, &grid, depth)?;
    let spectrum = legendre_spectrum(&curve)?;

    let mut pressure_doc = CsvDoc::new(&["beta", "t", "alpha", "err"]);
    for i in 0..curve.len() {
        pressure_doc.push_row(&[curve.beta[i], curve.t[i], curve.alpha[i], curve.err[i]])?;
    }
    stamp_standard_meta(&mut pressure_doc, hash);
    pressure_doc.meta("depth", depth.to_string());
    write_artifact(out_dir, "pressure.csv", &pressure_doc.render())?;

    let mut spectrum_doc = CsvDoc::new(&["beta", "t", "alpha", "f", "err"]);
    let mut clamped = 0usize;
    let mut f_raw_min = f64::INFINITY;
    for (i, s) in spectrum.samples.iter().enumerate() {
        if s.f_raw < 0.0 {
            clamped += 1;
        }
        f_raw_min = f_raw_min.min(s.f_raw);
        spectrum_doc.push_row(&[s.beta, curve.t[i], s.alpha, s.f, curve.err[i]])?;
    }
    stamp_standard_meta(&mut spectrum_doc, hash);
    spectrum_doc.meta("depth", depth.to_string());
    spectrum_doc.meta("clamped_rows", clamped.to_string());
    spectrum_doc.meta_float("f_raw_min", f_raw_min);
    spectrum_doc.meta_float("apex_alpha", spectrum.apex.0);
    spectrum_doc.meta_float("apex_f", spectrum.apex.1);
    write_artifact(out_dir, "spectrum.csv", &spectrum_doc.render())?;

    let beta_max = grid[0].abs().max(grid[grid.len() - 1].abs()).max(1.0);
    let cycle_length = range_cycle_length(ifs.branch_count());
    let range = spectrum_range(&phi, &psi, cycle_length, beta_max, depth)?;
    let t0 = spectrum.apex.1;
    let psi_pressure =
        pressure_spectral(&CombinedPotential::new(phi.clone(), psi.clone(), 0.0, 1.0)?, depth)?
            .value;
    let degenerate = if psi_pressure.abs() <= 1e-8 {
        matches!(classify_spectrum(&range, t0)?, SpectrumClass::Degenerate)
    } else {
        range.alpha_plus - range.alpha_minus <= 1e-6
    };
    let out = RangeOut {
        alpha_minus: range.alpha_minus,
        alpha_plus: range.alpha_plus,
        cycle: [range.cycle.0, range.cycle.1],
        asymptotic: [range.asymptotic.0, range.asymptotic.1],
        cycle_length: range.cycle_length,
        beta_max: range.beta_max,
        disagreement: range.disagreement,
        degenerate,
        psi_pressure,
        t0,
        tool_version: env!("CARGO_PKG_VERSION"),
        config_hash: hash.to_string(),
    };
    let json = serde_json::to_string_pretty(&out)
        .map_err(|e| Error::numerical(format!("range serialization: {e}")))?;
    write_artifact(out_dir, "range.json", &format!("{json}\n"))
}

fn cmd_staircase(
    cfg: &SceneConfig,
    out_dir: &Path,
    hash: &str,
    depth_override: Option<usize>,
) -> Result<(), Failure> {
    let ifs = cfg.ifs.build()?;
    let psi = cfg.potential_for(&ifs)?;
    let m = cfg.measure_depth(&psi);
    let mu = MarkovMeasure::new(&psi, m)?;
    let depth = depth_override.unwrap_or_else(|| cfg.staircase_depth());
    let samples = staircase(&mu, &ifs, depth)?;
    let mut doc = CsvDoc::new(&["x", "F", "err"]);
    for s in &samples {
        doc.push_row(&[s.x, s.f, s.error])?;
    }
    stamp_standard_meta(&mut doc, hash);
    doc.meta("depth", depth.to_string());
    doc.meta("measure_depth", m.to_string());
    write_artifact(out_dir, "staircase.csv", &doc.render())
}

fn cmd_hoelder(
    cfg: &SceneConfig,
    points: &[f64],
    out_dir: &Path,
    hash: &str,
    depth_override: Option<usize>,
) -> Result<(), Failure> {
    if depth_override.is_some() {
        return Err(Failure::Lib(Error::invalid(
            "hoelder depths follow the radius schedule; --depth-override does not apply",
        )));
    }
    let ifs = cfg.ifs.build()?;
    let psi = cfg.potential_for(&ifs)?;
    let m = cfg.measure_depth(&psi);
    let mu = MarkovMeasure::new(&psi, m)?;
    let schedule = cfg.schedule()?;
    let default_point;
    let points = if points.is_empty() {
        let first = Word::new(&ifs.alphabet(), vec![1])?;
        default_point = [ifs.composition_fixed_point(&first)?];
        &default_point[..]
    } else {
        points
    };
    for (i, &x) in points.iter().enumerate() {
        let est = pointwise_hoelder(&mu, &ifs, x, &schedule)?;
        let mut doc = CsvDoc::new(&["logr", "logmass_lo", "logmass_hi"]);
        for s in &est.samples {
            doc.push_row(&[s.log_r, s.log_mass_lo, s.log_mass_hi])?;
        }
        stamp_standard_meta(&mut doc, hash);
        doc.meta_float("x", est.x);
        doc.meta_float("liminf_est", est.liminf_est);
        doc.meta_float("limsup_est", est.limsup_est);
        doc.meta_float("uncertainty", est.uncertainty);
        doc.meta("window", est.window.to_string());
        doc.meta("truncated", est.truncated.to_string());
        write_artifact(out_dir, &format!("hoelder_{i}.csv"), &doc.render())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CoarseComparisonRow {
    q: f64,
    t_coarse: f64,
    t_pressure: f64,
    deviation: f64,
}

#[derive(Serialize)]
struct CoarseComparison {
    depth: usize,
    max_abs_deviation: f64,
    per_q: Vec<CoarseComparisonRow>,
    tool_version: &'static str,
    config_hash: String,
}

fn cmd_coarse(
    cfg: &SceneConfig,
    out_dir: &Path,
    hash: &str,
    depth_override: Option<usize>,
) -> Result<(), Failure> {
    let ifs = cfg.ifs.build()?;
    let psi = cfg.potential_for(&ifs)?;
    let m = cfg.measure_depth(&psi);
    let mu = MarkovMeasure::new(&psi, m)?;
    let depth = depth_override.unwrap_or_else(|| cfg.coarse_depth());
    let q = cfg.q_values()?;
    let cs = coarse_spectrum(&mu, &ifs, depth, &q)?;
    let mut doc = CsvDoc::new(&["q", "T", "alpha", "f"]);
    for i in 0..cs.q.len() {
        doc.push_row(&[cs.q[i], cs.t[i], cs.alpha[i], cs.f[i]])?;
    }
    stamp_standard_meta(&mut doc, hash);
    doc.meta("depth", depth.to_string());
    doc.meta("measure_depth", m.to_string());
    write_artifact(out_dir, "coarse.csv", &doc.render())?;

    // Independent check: the same exponents through the pressure
    // equation, computed from the potentials rather than the measure.
    let phi = PotentialSpec::geometric(ifs.clone());
    let pressure_depth = cfg.pressure_depth(&phi, &psi);
    let mut rows = Vec::with_capacity(q.len());
    let mut max_dev = 0.0f64;
    for (i, &qi) in q.iter().enumerate() {
        let (t_pressure, _) = solve_t(&phi, &psi, qi, pressure_depth)?;
        let deviation = (cs.t[i] - t_pressure).abs();
        max_dev = max_dev.max(deviation);
        rows.push(CoarseComparisonRow {
            q: qi,
            t_coarse: cs.t[i],
            t_pressure,
            deviation,
        });
    }
    let cmp = CoarseComparison {
        depth,
        max_abs_deviation: max_dev,
        per_q: rows,
        tool_version: env!("CARGO_PKG_VERSION"),
        config_hash: hash.to_string(),
    };
    let json = serde_json::to_string_pretty(&cmp)
        .map_err(|e| Error::numerical(format!("comparison serialization: {e}")))?;
    write_artifact(out_dir, "comparison.json", &format!("{json}\n"))
}

fn cmd_conjugacy(
    cfg: &SceneConfig,
    out_dir: &Path,
    hash: &str,
    depth_override: Option<usize>,
) -> Result<(), Failure> {
    let g_cfg = cfg
        .ifs_g
        .as_ref()
        .ok_or_else(|| Failure::Lib(Error::invalid("conjugacy needs ifs_g in the config")))?;
    let pair = ConjugacyPair::new(cfg.ifs.build()?, g_cfg.build()?)?;
    let depth = depth_override.unwrap_or_else(|| cfg.staircase_depth());

    let (hull_lo, hull_hi) = pair.base().hull();
    let mut doc = CsvDoc::new(&["x", "theta", "err"]);
    let mut skipped = 0usize;
    let samples = 257usize;
    for k in 0..samples {
        let x = hull_lo + (hull_hi - hull_lo) * k as f64 / (samples - 1) as f64;
        match theta(&pair, x, depth) {
            Ok(s) => doc.push_row(&[s.x, s.value, s.error])?,
            Err(Error::GapPoint { .. }) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }

    // Conjugacy equation residual over seeded attractor points.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
    let word_depth = depth.min(20);
    let count = pair.base().alphabet().count_words(word_depth)?;
    let points: Vec<f64> = (0..50)
        .map(|_| {
            let rank = rng.gen_range(0..count);
            let w = pair.base().alphabet().word_from_rank(word_depth, rank);
            pair.base().coding_point(&w).0
        })
        .collect();
    let residual = functional_equation_residual(&pair, &points, depth)?;

    stamp_standard_meta(&mut doc, hash);
    doc.meta("depth", depth.to_string());
    doc.meta("skipped_gap_points", skipped.to_string());
    doc.meta_float("functional_equation_max_residual", residual);
    doc.meta("functional_equation_points", points.len().to_string());
    write_artifact(out_dir, "theta.csv", &doc.render())?;

    let (phi, psi) = pair.potentials();
    let spectrum_depth = cfg.pressure_depth(&phi, &psi);
    let grid = cfg.beta_values()?;
    let (curve, spectrum) = multifrac::conjugacy::conjugacy_spectrum(&pair, &grid, spectrum_depth)?;
    let mut sdoc = CsvDoc::new(&["beta", "t", "alpha", "f", "err"]);
    for (i, s) in spectrum.samples.iter().enumerate() {
        sdoc.push_row(&[s.beta, curve.t[i], s.alpha, s.f, curve.err[i]])?;
    }
    stamp_standard_meta(&mut sdoc, hash);
    sdoc.meta("depth", spectrum_depth.to_string());
    sdoc.meta_float("apex_alpha", spectrum.apex.0);
    sdoc.meta_float("apex_f", spectrum.apex.1);
    write_artifact(out_dir, "spectrum.csv", &sdoc.render())
}
