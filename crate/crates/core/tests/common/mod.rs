//! Reference computations kept independent of the library: plain arrays, no
//! nalgebra, written line by line after the reference script.
#![allow(dead_code)]

pub type M3 = [[f64; 3]; 3];

pub fn matmul(a: &M3, b: &M3) -> M3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn rx(t: f64) -> M3 {
    [[1.0, 0.0, 0.0], [0.0, t.cos(), -t.sin()], [0.0, t.sin(), t.cos()]]
}

fn ry(t: f64) -> M3 {
    [[t.cos(), 0.0, t.sin()], [0.0, 1.0, 0.0], [-t.sin(), 0.0, t.cos()]]
}

fn chebyshev_polynomials(n: usize, x: f64) -> Vec<f64> {
    let mut t = vec![0.0; n + 1];
    t[0] = 1.0;
    if n > 0 {
        t[1] = x;
    }
    for i in 2..=n {
        t[i] = 2.0 * x * t[i - 1] - t[i - 2];
    }
    t
}

fn curvature(coeffs: &[f64], s: &[f64], length: f64) -> Vec<f64> {
    s.iter()
        .map(|si| {
            let x = 2.0 * si / length - 1.0;
            let t = chebyshev_polynomials(coeffs.len() - 1, x);
            coeffs.iter().zip(&t).map(|(c, t)| c * t).sum()
        })
        .collect()
}

/// Backbone points exactly as the reference listing computes them.
pub fn script_points(cx: &[f64], cy: &[f64], length: f64, scale: f64, count: usize) -> Vec<[f64; 3]> {
    let s: Vec<f64> = (0..count).map(|i| i as f64 / (count - 1) as f64 * length).collect();
    let ux = curvature(cx, &s, length);
    let uy = curvature(cy, &s, length);
    let mut t: M3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut points = vec![[0.0; 3]];
    for i in 1..count {
        let ds = s[i] - s[i - 1];
        t = matmul(&matmul(&t, &rx(ux[i] * ds)), &ry(uy[i] * ds));
        let p = [t[0][2] * s[i], t[1][2] * s[i], t[2][2] * s[i]];
        points.push([p[0] * scale, p[1] * scale, p[2] * scale]);
    }
    points
}

pub fn dist2(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (0..3).map(|k| (a[k] - b[k]).powi(2)).sum()
}

/// Shape objective by direct summation over `round(i·(count-1)/n)` samples.
pub fn shape_mse(a: &[[f64; 3]], b: &[[f64; 3]], n: usize) -> f64 {
    let span = a.len() - 1;
    let idx = |i: usize| ((i * span) as f64 / n as f64 + 0.5).floor() as usize;
    (0..=n).map(|i| dist2(&a[idx(i)], &b[idx(i)])).sum::<f64>() / n as f64
}

pub fn tip_tangent(p: &[[f64; 3]]) -> [f64; 3] {
    let (a, b) = (p[p.len() - 2], p[p.len() - 1]);
    let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let n = dist2(&a, &b).sqrt();
    [d[0] / n, d[1] / n, d[2] / n]
}

/// Two objectives of `cand` against the noiseless target built from `truth`,
/// on the default 101-sample grid.
pub fn objectives(cand: ([f64; 3], [f64; 3]), truth: ([f64; 3], [f64; 3]), length: f64, n: usize) -> (f64, f64) {
    let a = script_points(&cand.0, &cand.1, length, 1.0, 101);
    let b = script_points(&truth.0, &truth.1, length, 1.0, 101);
    (shape_mse(&a, &b, n), dist2(&tip_tangent(&a), &tip_tangent(&b)))
}

/// Exhaustive 41×41 search over (cx1, cy1) ∈ [-2, 2]² with the other genes 0.
/// Returns the grid of mse1 values, indexed `[i][j]` for cx1 = -2 + 0.1 i, cy1 = -2 + 0.1 j.
pub fn grid_mse1(truth: ([f64; 3], [f64; 3])) -> Vec<Vec<f64>> {
    (0..41)
        .map(|i| {
            (0..41)
                .map(|j| {
                    let a = -2.0 + 0.1 * i as f64;
                    let b = -2.0 + 0.1 * j as f64;
                    objectives(([0.0, a, 0.0], [0.0, b, 0.0]), truth, 1.0, 8).0
                })
                .collect()
        })
        .collect()
}

/// `(grid minimum, largest max-min spread over any grid cell's four corners)`.
pub fn grid_min_and_slack(grid: &[Vec<f64>]) -> (f64, f64) {
    let min = grid.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let mut slack: f64 = 0.0;
    for i in 0..grid.len() - 1 {
        for j in 0..grid[i].len() - 1 {
            let c = [grid[i][j], grid[i + 1][j], grid[i][j + 1], grid[i + 1][j + 1]];
            let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
            slack = slack.max(hi - lo);
        }
    }
    (min, slack)
}

/// Per-objective population statistics recomputed from raw values.
pub fn mean_std_min(v: &[f64]) -> (f64, f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let std = (v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n).sqrt();
    (mean, std, v.iter().copied().fold(f64::INFINITY, f64::min))
}

/// Closed-form least-squares slope.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let den = n * sxx - sx * sx;
    if den == 0.0 {
        0.0
    } else {
        (n * sxy - sx * sy) / den
    }
}
