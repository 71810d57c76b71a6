//! Run history as CSV tables and SVG convergence charts.

mod svg;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::evolution::RunResult;
use crate::format::fmt17;

pub use svg::{generation_color, LineChart, ScatterChart};

pub const GENERATIONS_CSV: &str = "generations.csv";
pub const INDIVIDUALS_CSV: &str = "individuals.csv";

pub const GENERATIONS_HEADER: &str = "generation,mean_mse1,std_mse1,min_mse1,mean_mse2,std_mse2,min_mse2";
pub const INDIVIDUALS_HEADER: &str = "generation,index,cx0,cx1,cx2,cy0,cy1,cy2,mse1,mse2,rank";

/// Rendered tables and charts for one run, ready to write.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportBundle {
    pub stats_csv: String,
    pub scatter_csv: String,
    /// `(file name, SVG document)`.
    pub charts: Vec<(String, String)>,
}

impl ReportBundle {
    pub fn new(result: &RunResult) -> Self {
        Self {
            stats_csv: generations_csv(result),
            scatter_csv: individuals_csv(result),
            charts: charts(result),
        }
    }
}

/// Ordinary least-squares line `y = slope·x + intercept`. A single point or
/// constant `x` yields slope 0.
pub fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}

pub fn generations_csv(result: &RunResult) -> String {
    let mut out = String::from(GENERATIONS_HEADER);
    out.push('\n');
    for h in &result.history {
        let cols = [h.mse1.mean, h.mse1.std, h.mse1.min, h.mse2.mean, h.mse2.std, h.mse2.min];
        write!(out, "{}", h.generation).unwrap();
        for c in cols {
            write!(out, ",{}", fmt17(c)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn individuals_csv(result: &RunResult) -> String {
    let mut out = String::from(INDIVIDUALS_HEADER);
    out.push('\n');
    for ind in &result.archive {
        write!(out, "{},{}", ind.generation, ind.index).unwrap();
        for g in ind.genome {
            write!(out, ",{}", fmt17(g)).unwrap();
        }
        let f = ind.fitness.expect("archived individuals are evaluated");
        writeln!(out, ",{},{},{}", fmt17(f.mse1), fmt17(f.mse2), ind.rank).unwrap();
    }
    out
}

fn charts(result: &RunResult) -> Vec<(String, String)> {
    let gens: Vec<f64> = result.history.iter().map(|h| h.generation as f64).collect();
    let mut out = Vec::new();
    for (label, pick) in [
        ("mse1", (|h: &crate::evolution::GenerationStats| h.mse1) as fn(&_) -> _),
        ("mse2", |h| h.mse2),
    ] {
        let std: Vec<f64> = result.history.iter().map(|h| pick(h).std).collect();
        let chart = LineChart {
            title: format!("Standard deviation of {}", label.to_uppercase()),
            y_label: "standard deviation".into(),
            xs: gens.clone(),
            ys: std,
            trend: None,
        };
        out.push((format!("std_{label}.svg"), chart.render()));

        let mean: Vec<f64> = result.history.iter().map(|h| pick(h).mean).collect();
        let trend = ols(&gens, &mean);
        let chart = LineChart {
            title: format!("Mean {} with trendline", label.to_uppercase()),
            y_label: "mean fitness".into(),
            xs: gens.clone(),
            ys: mean,
            trend: Some(trend),
        };
        out.push((format!("mean_{label}.svg"), chart.render()));
    }

    let scatter = ScatterChart {
        title: "Fitness of all individuals by generation".into(),
        points: result
            .archive
            .iter()
            .filter_map(|i| i.fitness.map(|f| (f.mse1, f.mse2, i.generation)))
            .collect(),
        generations: result.config.generation_count,
    };
    out.push(("scatter.svg".into(), scatter.render()));
    out
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// Writes `generations.csv` and `individuals.csv`.
pub fn write_stats(result: &RunResult, out_dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(out_dir)?;
    Ok(vec![
        write_file(out_dir, GENERATIONS_CSV, &generations_csv(result))?,
        write_file(out_dir, INDIVIDUALS_CSV, &individuals_csv(result))?,
    ])
}

/// Writes the four per-objective line charts and the generation scatter.
pub fn render_charts(result: &RunResult, out_dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(out_dir)?;
    charts(result)
        .iter()
        .map(|(name, doc)| write_file(out_dir, name, doc))
        .collect()
}
