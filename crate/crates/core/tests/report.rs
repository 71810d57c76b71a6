mod common;

use std::fs;
use std::path::Path;

use modalid_core::report::{self, ols};
use modalid_core::*;

fn target() -> TargetConfiguration {
    let gt = CoefficientSet::new(vec![0.8, -0.6, 0.3], vec![-0.4, 1.2, -0.2]).unwrap();
    synth_target(&gt, &SynthOptions::default()).unwrap()
}

fn read_rows(path: &Path) -> (String, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn csv_row_counts_and_headers() {
    let dir = tempfile::tempdir().unwrap();
    for count in [1usize, 10] {
        let cfg = EAConfig { generation_count: count, seed: 5, ..Default::default() };
        let res = run(&cfg, &target()).unwrap();
        let out = dir.path().join(format!("g{count}"));
        report::write_stats(&res, &out).unwrap();
        let (h, rows) = read_rows(&out.join("generations.csv"));
        assert_eq!(h, "generation,mean_mse1,std_mse1,min_mse1,mean_mse2,std_mse2,min_mse2");
        assert_eq!(rows.len(), count);
        let (h, rows) = read_rows(&out.join("individuals.csv"));
        assert_eq!(h, "generation,index,cx0,cx1,cx2,cy0,cy1,cy2,mse1,mse2,rank");
        assert_eq!(rows.len(), 20 * count);
    }
}

#[test]
fn generation_stats_recompute_from_individuals() {
    let dir = tempfile::tempdir().unwrap();
    let res = run(&EAConfig { seed: 9, ..Default::default() }, &target()).unwrap();
    report::write_stats(&res, dir.path()).unwrap();
    let (_, gens) = read_rows(&dir.path().join("generations.csv"));
    let (_, inds) = read_rows(&dir.path().join("individuals.csv"));
    for row in &gens {
        let g = row[0];
        let m1: Vec<f64> = inds.iter().filter(|r| r[0] == g).map(|r| r[8]).collect();
        let m2: Vec<f64> = inds.iter().filter(|r| r[0] == g).map(|r| r[9]).collect();
        let (a, b, c) = common::mean_std_min(&m1);
        let (d, e, f) = common::mean_std_min(&m2);
        for (got, want) in row[1..].iter().zip([a, b, c, d, e, f]) {
            assert!((got - want).abs() <= 1e-12, "generation {g}: {got} vs {want}");
        }
    }
}

#[test]
fn files_are_byte_identical_on_rewrite() {
    let res = run(&EAConfig { seed: 2, ..Default::default() }, &target()).unwrap();
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let mut names = Vec::new();
    for dir in [&a, &b] {
        names = report::write_stats(&res, dir.path()).unwrap();
        names.extend(report::render_charts(&res, dir.path()).unwrap());
    }
    assert_eq!(names.len(), 7);
    for p in names {
        let name = p.file_name().unwrap();
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
    }
}

#[test]
fn five_well_formed_charts() {
    let dir = tempfile::tempdir().unwrap();
    let res = run(&EAConfig { seed: 4, ..Default::default() }, &target()).unwrap();
    let files = report::render_charts(&res, dir.path()).unwrap();
    assert_eq!(files.len(), 5);
    for f in &files {
        let text = fs::read_to_string(f).unwrap();
        let doc = roxmltree::Document::parse(&text).unwrap();
        assert_eq!(doc.root_element().tag_name().name(), "svg");
        assert!(!text.contains("NaN"));
    }
    let scatter = fs::read_to_string(dir.path().join("scatter.svg")).unwrap();
    assert_eq!(scatter.matches("<circle").count(), 200);
    assert!(scatter.contains("#ff0000") && scatter.contains("#0000ff"));
    assert_eq!(ReportBundle::new(&res).charts.len(), 5);
}

#[test]
fn trendline_matches_closed_form_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let res = run(&EAConfig { seed: 42, ..Default::default() }, &target()).unwrap();
    report::write_stats(&res, dir.path()).unwrap();
    let (_, gens) = read_rows(&dir.path().join("generations.csv"));
    let xs: Vec<f64> = gens.iter().map(|r| r[0]).collect();
    for col in [1, 4] {
        let ys: Vec<f64> = gens.iter().map(|r| r[col]).collect();
        let independent = common::slope(&xs, &ys);
        let (lib, _) = ols(&xs, &ys);
        assert!((independent - lib).abs() <= 1e-12);
    }
    let ys: Vec<f64> = gens.iter().map(|r| r[1]).collect();
    assert!(common::slope(&xs, &ys) <= 0.0);
}

#[test]
fn constant_fitness_run_is_flat() {
    let mut cfg = EAConfig { seed: 1, ..Default::default() };
    cfg.set_uniform_bounds(0.0, 0.0);
    let res = run(&cfg, &target()).unwrap();
    for h in &res.history {
        assert_eq!(h.mse1.std, 0.0);
        assert_eq!(h.mse2.std, 0.0);
    }
    let xs: Vec<f64> = (0..10).map(|g| g as f64).collect();
    let ys: Vec<f64> = res.history.iter().map(|h| h.mse1.mean).collect();
    assert_eq!(ols(&xs, &ys).0, 0.0);
    let dir = tempfile::tempdir().unwrap();
    for f in report::render_charts(&res, dir.path()).unwrap() {
        roxmltree::Document::parse(&fs::read_to_string(f).unwrap()).unwrap();
    }
}

#[test]
fn unwritable_directory_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let res = run(&EAConfig { generation_count: 1, ..Default::default() }, &target()).unwrap();
    let err = report::write_stats(&res, &blocker.join("sub")).unwrap_err();
    assert!(err.is_io());
}
