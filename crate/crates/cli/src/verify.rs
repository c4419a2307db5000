//! Invariant checks on any file the tool reads or writes.

use anyhow::{Context, Result};
use combmetric::coalescent::PointProcessSample;
use combmetric::contour::four_points_check;
use combmetric::ultrametric::MatrixCsv;
use combmetric::{Comb, CombPoint, Contour, Tooth};

use crate::output::Violation;

/// Violations listed before the report is cut.
const MAX_LISTED: usize = 20;
/// Zeros of a comb checked for the strong triangle inequality.
const COMB_POINTS: usize = 64;
/// Contour times whose quadruples are checked.
const CONTOUR_TIMES: usize = 24;

enum Kind {
    Comb,
    Json,
    Contour,
    Matrix,
}

fn detect(text: &str) -> Kind {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with("comb") {
        Kind::Comb
    } else if first.starts_with('{') {
        Kind::Json
    } else if first.starts_with("time,") || first.split(',').count() == 3 && !is_square_csv(text) {
        Kind::Contour
    } else {
        Kind::Matrix
    }
}

fn is_square_csv(text: &str) -> bool {
    MatrixCsv::parse(text).is_ok_and(|m| m.is_square())
}

/// Returns the report, or a [`Violation`] listing what failed.
pub fn check(text: &str) -> Result<String> {
    let failures = match detect(text) {
        Kind::Comb => return comb(&Comb::parse(text)?),
        Kind::Json => return json(text),
        Kind::Contour => return contour(&Contour::parse_csv(text)?),
        Kind::Matrix => matrix(&MatrixCsv::parse(text)?),
    };
    match failures {
        Ok(report) => Ok(report),
        Err(lines) => Err(Violation(lines.join("\n")).into()),
    }
}

fn spread<T: Copy>(items: &[T], limit: usize) -> Vec<T> {
    if items.len() <= limit {
        return items.to_vec();
    }
    (0..limit).map(|i| items[i * items.len() / limit]).collect()
}

fn comb(comb: &Comb) -> Result<String> {
    let mut points: Vec<CombPoint> = spread(&comb.gap_midpoints(), COMB_POINTS)
        .into_iter()
        .map(CombPoint::interior)
        .collect();
    for t in spread(comb.teeth(), COMB_POINTS / 4) {
        points.push(CombPoint::left(t.position));
        points.push(CombPoint::right(t.position));
    }
    if !comb.verify_ultrametric(&points)? {
        return Err(Violation("comb distances fail the strong triangle inequality".into()).into());
    }
    Ok(format!(
        "ok: comb with {} teeth, {} points checked\n",
        comb.len(),
        points.len()
    ))
}

fn matrix(m: &MatrixCsv) -> Result<String, Vec<String>> {
    let n = m.rows.len();
    let mut bad = Vec::new();
    for (i, row) in m.rows.iter().enumerate() {
        if row.len() != n {
            bad.push(format!("row {i} has {} entries, expected {n}", row.len()));
        }
    }
    if !bad.is_empty() {
        return Err(bad);
    }
    let d = |i: usize, j: usize| m.rows[i][j];
    for i in 0..n {
        if d(i, i) != 0.0 {
            bad.push(format!("d({i},{i}) = {} is not zero", d(i, i)));
        }
        for j in i + 1..n {
            if !(d(i, j).is_finite() && d(i, j) >= 0.0) {
                bad.push(format!("d({i},{j}) = {} is not a finite nonnegative number", d(i, j)));
            }
            if d(i, j) != d(j, i) {
                bad.push(format!("d({i},{j}) = {} but d({j},{i}) = {}", d(i, j), d(j, i)));
            }
        }
    }
    let mut triples = 0usize;
    for i in 0..n {
        for k in 0..n {
            if k == i || k < i && d(i, k) == d(k, i) {
                continue;
            }
            for j in 0..n {
                if d(i, k) > d(i, j).max(d(j, k)) {
                    triples += 1;
                    if triples <= MAX_LISTED {
                        bad.push(format!(
                            "d({i},{k}) = {} > max(d({i},{j}) = {}, d({j},{k}) = {})",
                            d(i, k),
                            d(i, j),
                            d(j, k)
                        ));
                    }
                }
            }
        }
    }
    if triples > MAX_LISTED {
        bad.push(format!("... {} more violating triples", triples - MAX_LISTED));
    }
    if let Some(masses) = &m.masses {
        if masses.len() != n {
            bad.push(format!("{} masses for {n} points", masses.len()));
        }
    }
    if bad.is_empty() {
        Ok(format!("ok: {n} x {n} ultrametric matrix\n"))
    } else {
        Err(bad)
    }
}

fn contour(h: &Contour) -> Result<String> {
    let mut times: Vec<f64> = Vec::new();
    for w in h.breakpoints().windows(2) {
        times.push(w[0].time);
        times.push(0.5 * (w[0].time + w[1].time));
    }
    times.push(h.end());
    let times = spread(&times, CONTOUR_TIMES);
    let n = times.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            d[i * n + j] = h.tree_distance(times[i], times[j])?;
        }
    }
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for e in c + 1..n {
                    let q = [a, b, c, e];
                    let mut m = [[0.0; 4]; 4];
                    for (r, &x) in q.iter().enumerate() {
                        for (s, &y) in q.iter().enumerate() {
                            m[r][s] = d[x * n + y];
                        }
                    }
                    checked += 1;
                    if !four_points_check(&m) && bad.len() < MAX_LISTED {
                        bad.push(format!(
                            "four-point condition fails at times {}, {}, {}, {}",
                            times[a], times[b], times[c], times[e]
                        ));
                    }
                }
            }
        }
    }
    if !bad.is_empty() {
        return Err(Violation(bad.join("\n")).into());
    }
    Ok(format!(
        "ok: contour with {} breakpoints, {checked} quadruples checked\n",
        h.breakpoints().len()
    ))
}

fn json(text: &str) -> Result<String> {
    let value: serde_json::Value = serde_json::from_str(text).context("reading JSON")?;
    if value.get("kind").is_some() {
        let interval: [f64; 2] = serde_json::from_value(value["interval"].clone())
            .context("`interval` must be [lo, hi]")?;
        let teeth: Vec<[f64; 2]> = serde_json::from_value(value["teeth"].clone())
            .context("`teeth` must be a list of [position, height]")?;
        let comb = Comb::new(
            interval[0],
            interval[1],
            teeth.iter().map(|t| Tooth::new(t[0], t[1])).collect(),
        )
        .map_err(|e| Violation(e.to_string()))?;
        return self::comb(&comb);
    }
    let s = PointProcessSample::from_json(text)?;
    let mut bad = Vec::new();
    let mut last = 0.0;
    for (i, &(x, h)) in s.atoms.iter().enumerate() {
        if !(x > last) {
            bad.push(format!("atom {i} at {x} is not after {last}"));
        }
        if !(h >= s.epsilon && h <= s.level) {
            bad.push(format!(
                "atom {i} has height {h} outside [{}, {}]",
                s.epsilon, s.level
            ));
        }
        last = x;
    }
    if !(s.terminal.0 > last) {
        bad.push(format!("terminal atom at {} is not after {last}", s.terminal.0));
    }
    if !(s.terminal.1 > s.level) {
        bad.push(format!(
            "terminal height {} does not exceed {}",
            s.terminal.1, s.level
        ));
    }
    if !bad.is_empty() {
        return Err(Violation(bad.join("\n")).into());
    }
    let report = comb(&s.comb()?)?;
    Ok(report.replacen("ok: comb", "ok: point process sample", 1))
}
