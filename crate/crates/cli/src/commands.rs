use std::fs;
use std::path::Path;

use modalid_core::backbone::Vec3;
use modalid_core::format::fmt17;
use modalid_core::objectives::{mse_shape, mse_tcp};
use modalid_core::report;
use modalid_core::targets::{load_target, save_target, synth_target, SynthOptions};
use modalid_core::{
    evaluate, integrate_backbone, run_parallel, CoefficientSet, EvalSettings, IntegrationMode, KinematicParams, RunResult,
    TargetConfiguration,
};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{self, ConfigFile, Overrides};
use crate::error::{CliError, CliResult};
use crate::geometry::GeometryFile;
use crate::{CoeffArgs, ShapeArgs};

pub const THREADS_ENV: &str = "MODALID_THREADS";

fn coefficients(args: &CoeffArgs) -> CliResult<CoefficientSet> {
    Ok(CoefficientSet::new(args.cx.clone(), args.cy.clone())?)
}

pub fn simulate(coeffs: &CoeffArgs, shape: &ShapeArgs, samples: usize, mode: IntegrationMode, out: &Path) -> CliResult<()> {
    let c = coefficients(coeffs)?;
    let params = KinematicParams {
        length: shape.length,
        scale: shape.scale,
        sample_count: samples,
        mode,
    };
    let curve = integrate_backbone(&c, &params)?;
    GeometryFile::from_curve(&curve, &c, shape.n_divisions)?.save(out)
}

pub fn target_synth(coeffs: &CoeffArgs, shape: &ShapeArgs, noise: f64, seed: u64, samples: usize, out: &Path) -> CliResult<()> {
    let opts = SynthOptions {
        length: shape.length,
        scale: shape.scale,
        n: shape.n_divisions,
        noise_sigma: noise,
        seed,
        sample_count: samples,
    };
    let target = synth_target(&coefficients(coeffs)?, &opts)?;
    Ok(save_target(&target, out)?)
}

fn import_csv(path: &Path, shape: &ShapeArgs) -> CliResult<TargetConfiguration> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => CliError::Io(format!("{}: {e}", path.display())),
            _ => CliError::validation(e.to_string()),
        })?;
    let mut rows: Vec<[f64; 3]> = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::validation(format!("parse error: {e}")))?;
        let values: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match values {
            Ok(v) if v.len() == 3 => rows.push([v[0], v[1], v[2]]),
            // a non-numeric first row is a header
            Err(_) if line == 0 => continue,
            _ => {
                return Err(CliError::validation(format!(
                    "parse error: row {} must hold three numbers x,y,z",
                    line + 1
                )))
            }
        }
    }
    let n = shape.n_divisions;
    if rows.len() != n + 2 {
        return Err(modalid_core::Error::Schema(format!(
            "n = {n} requires {} point rows plus one tcp row, found {} rows",
            n + 1,
            rows.len()
        ))
        .into());
    }
    let tcp = rows.pop().expect("checked length");
    Ok(TargetConfiguration::imported(
        rows.into_iter().map(Vec3::from).collect(),
        Vec3::from(tcp),
        shape.length,
        shape.scale,
    )?)
}

pub fn target_import(input: &Path, shape: &ShapeArgs, out: &Path) -> CliResult<()> {
    let is_csv = input
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let target = if is_csv { import_csv(input, shape)? } else { load_target(input)? };
    Ok(save_target(&target, out)?)
}

pub fn eval(
    target_path: &Path,
    coeffs: &CoeffArgs,
    geometry: Option<&Path>,
    samples: usize,
    mode: IntegrationMode,
    n_divisions: Option<usize>,
) -> CliResult<()> {
    let target = load_target(target_path)?;
    if let Some(n) = n_divisions {
        if n != target.n {
            return Err(CliError::validation(format!(
                "division count mismatch: requested {n}, target has {}",
                target.n
            )));
        }
    }
    let fitness = match geometry {
        Some(path) => {
            let g = GeometryFile::load(path)?;
            let divisions = g.divisions(target.n)?;
            (
                mse_shape(&divisions, &target.division_points, target.n)?,
                mse_tcp(&g.tangent()?, &target.tcp_vector)?,
            )
        }
        None => {
            let f = evaluate(&coefficients(coeffs)?, &target, &EvalSettings { sample_count: samples, mode })?;
            (f.mse1, f.mse2)
        }
    };
    println!("{} {}", fmt17(fitness.0), fmt17(fitness.1));
    Ok(())
}

fn threads_from_env() -> CliResult<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::validation(format!("{THREADS_ENV} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(0, |n| n.get())),
    }
}

fn sha256_file(path: &Path) -> CliResult<String> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

#[derive(Debug, Serialize)]
struct Timestamps {
    /// Taken from `SOURCE_DATE_EPOCH` so reruns stay byte-identical.
    source_date_epoch: Option<u64>,
}

#[derive(Debug, Serialize)]
struct RunManifest {
    tool: &'static str,
    version: &'static str,
    target_path: String,
    target_sha256: String,
    config_path: Option<String>,
    config_sha256: Option<String>,
    effective_config: &'static str,
    output_dir: String,
    seed: u64,
    timestamps: Timestamps,
    reproduce: String,
}

const CONFIG_ECHO: &str = "config.toml";

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn identify(target_path: &Path, config_path: Option<&Path>, out: &Path, flags: &Overrides) -> CliResult<()> {
    let target = load_target(target_path)?;
    let file = match config_path {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let config = config::resolve(file, flags, target.n)?;
    let threads = threads_from_env()?;
    let result = run_parallel(&config, &target, threads)?;

    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    report::write_stats(&result, out)?;
    report::render_charts(&result, out)?;
    let mut json = serde_json::to_string_pretty(&result).expect("result serializes");
    json.push('\n');
    write(&out.join("result.json"), &json)?;
    write(&out.join(CONFIG_ECHO), &config::to_toml(&config))?;

    let manifest = RunManifest {
        tool: "modalid",
        version: env!("CARGO_PKG_VERSION"),
        target_path: target_path.display().to_string(),
        target_sha256: sha256_file(target_path)?,
        config_path: config_path.map(|p| p.display().to_string()),
        config_sha256: config_path.map(sha256_file).transpose()?,
        effective_config: CONFIG_ECHO,
        output_dir: out.display().to_string(),
        seed: config.seed,
        timestamps: Timestamps {
            source_date_epoch: std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|v| v.parse().ok()),
        },
        reproduce: format!(
            "modalid identify --target {} --config {} --out <dir>",
            target_path.display(),
            out.join(CONFIG_ECHO).display()
        ),
    };
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    json.push('\n');
    write(&out.join("manifest.json"), &json)?;

    print_summary(&result);
    Ok(())
}

fn print_summary(result: &RunResult) {
    println!("pareto front ({} individuals):", result.pareto_front.len());
    println!("generation index mse1 mse2 genome");
    for ind in &result.pareto_front {
        let f = ind.fitness.expect("evaluated");
        let genome: Vec<String> = ind.genome.iter().map(|g| fmt17(*g)).collect();
        println!(
            "{} {} {} {} [{}]",
            ind.generation,
            ind.index,
            fmt17(f.mse1),
            fmt17(f.mse2),
            genome.join(", ")
        );
    }
    let best = result.best();
    let f = best.fitness.expect("evaluated");
    let c = best.coefficients();
    println!(
        "best (min mse1+mse2): cx = [{}], cy = [{}], mse1 = {}, mse2 = {}",
        c.cx.iter().map(|v| fmt17(*v)).collect::<Vec<_>>().join(", "),
        c.cy.iter().map(|v| fmt17(*v)).collect::<Vec<_>>().join(", "),
        fmt17(f.mse1),
        fmt17(f.mse2)
    );
}
