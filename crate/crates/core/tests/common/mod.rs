//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use voronoi_distill::distiller::DistilledPolicy;
use voronoi_distill::envs::Interval;
use voronoi_distill::linear_policy::LinearPolicy;
use voronoi_distill::partition::VoronoiPartition;
use voronoi_distill::teachers::mlp::{Activation, Layer, MlpPolicy};

/// Linear scan; ties go to the lowest index.
pub fn brute_nearest(points: &[Vec<f64>], q: &[f64]) -> usize {
    let mut best = (0, f64::INFINITY);
    for (k, p) in points.iter().enumerate() {
        let d: f64 = p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum();
        if d < best.1 {
            best = (k, d);
        }
    }
    best.0
}

fn orient(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Whether `d` lies strictly inside the circumcircle of `a, b, c`.
fn in_circumcircle(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> bool {
    let row = |p: &[f64]| {
        let (x, y) = (p[0] - d[0], p[1] - d[1]);
        [x, y, x * x + y * y]
    };
    let (r1, r2, r3) = (row(a), row(b), row(c));
    let det = r1[0] * (r2[1] * r3[2] - r2[2] * r3[1]) - r1[1] * (r2[0] * r3[2] - r2[2] * r3[0])
        + r1[2] * (r2[0] * r3[1] - r2[1] * r3[0]);
    let o = orient(a, b, c);
    det * o.signum() > 0.0
}

/// Delaunay edges of a point set in general position: `{i, j}` is an edge
/// iff some triangle `i, j, k` has an empty circumcircle. O(n⁴).
pub fn brute_delaunay(points: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let edge = (0..n).any(|k| {
                k != i
                    && k != j
                    && orient(&points[i], &points[j], &points[k]) != 0.0
                    && (0..n).all(|m| {
                        m == i
                            || m == j
                            || m == k
                            || !in_circumcircle(&points[i], &points[j], &points[k], &points[m])
                    })
            });
            if edge {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

/// Least squares `a ≈ W s + b` for one action component, by the normal
/// equations solved with Gaussian elimination (partial pivoting).
pub fn normal_equations(states: &[Vec<f64>], targets: &[f64]) -> Vec<f64> {
    let d = states[0].len() + 1;
    let mut m = vec![vec![0.0; d + 1]; d];
    for (s, &t) in states.iter().zip(targets) {
        let x: Vec<f64> = s.iter().copied().chain([1.0]).collect();
        for r in 0..d {
            for c in 0..d {
                m[r][c] += x[r] * x[c];
            }
            m[r][d] += x[r] * t;
        }
    }
    for col in 0..d {
        let piv = (col..d)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, piv);
        for r in 0..d {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..=d {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    (0..d).map(|r| m[r][d] / m[r][r]).collect()
}

/// Sort + direct formulas.
pub struct RefStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub std: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub outliers: usize,
}

pub fn ref_stats(xs: &[f64]) -> RefStats {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    let q = |p: f64| {
        let h = (n as f64 - 1.0) * p;
        let (f, c) = (h.floor() as usize, h.ceil() as usize);
        v[f] + (h - f as f64) * (v[c] - v[f])
    };
    let mean = v.iter().sum::<f64>() / n as f64;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
    let (q1, q3) = (q(0.25), q(0.75));
    let iqr = q3 - q1;
    let outliers = v
        .iter()
        .filter(|&&x| x < q1 - 1.5 * iqr || x > q3 + 1.5 * iqr)
        .count();
    let median = if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    };
    RefStats {
        min: v[0],
        max: v[n - 1],
        mean,
        std: var.sqrt(),
        q1,
        median,
        q3,
        outliers,
    }
}

/// Single identity layer: `a = W s + b`.
pub fn linear_teacher(w: Vec<Vec<f64>>, b: Vec<f64>) -> MlpPolicy {
    let (a, d) = (w.len(), w[0].len());
    MlpPolicy::new(
        vec![Layer {
            w,
            b,
            act: Activation::Identity,
        }],
        false,
        d,
        a,
    )
    .unwrap()
}

/// Published best SimpleGoal policy: codeword, Δx formula, Δy formula.
pub const SIMPLEGOAL_TABLE: [([f64; 2], &str, &str); 13] = [
    ([0.891, 0.628], "-0.148x-0.021y-0.055", "-0.420x+0.231y-1.095"),
    ([0.826, 0.460], "-0.347x+0.305y-0.212", "-1.087x-1.370y-0.319"),
    ([0.407, 0.150], "3.175y-1.000", "-4.127y-0.710"),
    ([0.181, 0.326], "-4.588x+0.045y-0.620", "3.134x-0.082y-0.978"),
    ([0.425, 0.568], "-1.267x+0.966y-0.056", "-0.281x-0.967y-0.702"),
    ([0.292, 0.765], "-1.657x-0.271y+0.147", "0.433x-0.602y-0.484"),
    ([0.154, 0.051], "-5.328x+5.256y+0.191", "-2.583x-4.501y-0.461"),
    ([0.545, 0.817], "-0.124x-0.035y-0.964", "0.082x-1.027y+0.226"),
    ([0.842, 0.153], "-0.628x+0.406y-0.385", "-0.536x-0.010y+0.663"),
    ([0.034, 0.496], "-0.649x-0.652y-0.076", "0.706x-0.6946y-0.463"),
    ([0.583, 0.303], "-0.290x-0.470y-0.855", "0.103x-3.580y+0.991"),
    ([0.824, 0.969], "0.266x-0.424y-0.684", "-0.598x-0.256y-0.420"),
    ([0.195, 0.970], "0.327x-0.246y+0.349", "0.620x-0.077y-0.882"),
];

/// Parses `"-0.148x-0.021y-0.055"` (spaces allowed, missing terms are zero)
/// into `(weights, bias)` for the given variable names.
pub fn parse_formula(text: &str, vars: &[&str]) -> (Vec<f64>, f64) {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut weights = vec![0.0; vars.len()];
    let mut bias = 0.0;
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if i > 0 && (c == '+' || c == '-') {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    for t in terms {
        let split = t
            .find(|c: char| c.is_ascii_alphabetic())
            .unwrap_or(t.len());
        let (num, var) = t.split_at(split);
        let v: f64 = num.parse().unwrap_or_else(|_| panic!("bad term {t:?}"));
        match vars.iter().position(|n| *n == var) {
            Some(k) => weights[k] = v,
            None if var.is_empty() => bias = v,
            None => panic!("unknown variable {var:?}"),
        }
    }
    (weights, bias)
}

pub fn published_simplegoal_policy() -> DistilledPolicy {
    let mut codewords = Vec::new();
    let mut subs = Vec::new();
    for (cw, dx, dy) in SIMPLEGOAL_TABLE {
        let (wx, bx) = parse_formula(dx, &["x", "y"]);
        let (wy, by) = parse_formula(dy, &["x", "y"]);
        codewords.push(cw.to_vec());
        subs.push(LinearPolicy::new(vec![wx, wy], vec![bx, by]).unwrap());
    }
    DistilledPolicy::new(
        VoronoiPartition::from_codewords(2, codewords).unwrap(),
        subs,
        vec![Interval::new(-1.0, 1.0); 2],
    )
    .unwrap()
}

/// Drops spaces and trailing fractional zeros: `"-0.1480x -0.0210y"` →
/// `"-0.148x-0.021y"`.
pub fn compact_formula(text: &str) -> String {
    let mut out = String::new();
    let mut num = String::new();
    let flush = |num: &mut String, out: &mut String| {
        if num.contains('.') {
            while num.ends_with('0') {
                num.pop();
            }
            if num.ends_with('.') {
                num.pop();
            }
        }
        out.push_str(num);
        num.clear();
    };
    for c in text.chars().filter(|c| !c.is_whitespace()) {
        if c.is_ascii_digit() || c == '.' {
            num.push(c);
        } else {
            flush(&mut num, &mut out);
            out.push(c);
        }
    }
    flush(&mut num, &mut out);
    out
}
