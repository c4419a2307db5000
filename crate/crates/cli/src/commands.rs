use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use combmetric::coalescent::{
    sample_cpp, sample_kingman_comb, sample_splitting_depths, BrownianIntensity, ExponentialJumps,
};
use combmetric::contour::sphere_comb;
use combmetric::numfmt::{format_exact, parse_exact};
use combmetric::padic::{chi, chi_inverse, d_p, phi, v_p};
use combmetric::rng::seeded;
use combmetric::ultrametric::{comb_from_ordered, order_ultrametric, ordered_positions, MatrixCsv};
use combmetric::{Comb, CombPoint, Contour, Face, FacePoint, UltrametricMatrix};
use num_rational::BigRational;

use crate::output::{fmt, read, write, Precision, Violation};
use crate::{plot, verify, Cli, Command, DistArgs, PadicQuery, SampleKind};

pub fn run(cli: Cli) -> Result<()> {
    let precision = cli.precision;
    match cli.command {
        Command::Order {
            matrix,
            output,
            order_out,
        } => order(&matrix, output.as_deref(), order_out.as_deref(), precision),
        Command::Dist(args) => dist(&args, precision),
        Command::Sample { kind } => sample(kind, precision),
        Command::Sphere {
            contour,
            level,
            epsilon,
            output,
            excursions,
            staircase,
        } => {
            let h = Contour::parse_csv(&read(&contour)?)?;
            let s = sphere_comb(&h, level, epsilon)?;
            if let Some(p) = excursions {
                write(Some(&p), &s.excursions.to_csv(precision))?;
            }
            if let Some(p) = staircase {
                let mut text = String::from("x,value\n");
                for (x, v) in s.staircase.breakpoints() {
                    let _ = writeln!(text, "{},{}", fmt(x, precision), format_exact(&v));
                }
                write(Some(&p), &text)?;
            }
            write(output.as_deref(), &s.comb.to_text(precision))
        }
        Command::Padic { p, query } => {
            println!("{}", padic(p, query)?);
            Ok(())
        }
        Command::Plot {
            input,
            output,
            dendrogram,
            level,
        } => {
            let svg = plot::render(&read(&input)?, dendrogram, level)?;
            write(output.as_deref(), &svg)
        }
        Command::Verify { input } => {
            let report = verify::check(&read(&input)?)?;
            print!("{report}");
            Ok(())
        }
    }
}

/// Reads a matrix, reporting a violated triple with its distances.
fn read_matrix(path: &Path) -> Result<UltrametricMatrix> {
    let text = read(path)?;
    match UltrametricMatrix::parse_csv(&text) {
        Err(combmetric::Error::NotUltrametric { i, j, k }) => {
            let rows = MatrixCsv::parse(&text)?.rows;
            Err(Violation(format!(
                "matrix is not ultrametric: d({i},{k}) = {} > max(d({i},{j}) = {}, d({j},{k}) = {})",
                rows[i][k], rows[i][j], rows[j][k]
            ))
            .into())
        }
        other => Ok(other?),
    }
}

fn order(
    matrix: &Path,
    output: Option<&Path>,
    order_out: Option<&Path>,
    precision: Precision,
) -> Result<()> {
    let m = read_matrix(matrix)?;
    let order = order_ultrametric(&m);
    let comb = comb_from_ordered(&m, &order)?;
    if let Some(p) = order_out {
        let text: String = order.iter().map(|i| format!("{i}\n")).collect();
        write(Some(p), &text)?;
    }
    write(output, &comb.to_text(precision))
}

/// `x`, `x:l`, `x:r` or `x:i`.
fn parse_point(token: &str) -> Result<CombPoint> {
    let (x, face) = match token.rsplit_once(':') {
        Some((x, f)) => (x, f),
        None => (token, "i"),
    };
    let face = parse_face(face)?;
    let x: f64 = x.trim().parse().with_context(|| format!("bad position `{x}`"))?;
    Ok(FacePoint::new(x, face))
}

fn parse_face(face: &str) -> Result<Face> {
    Ok(match face.trim() {
        "l" | "left" => Face::Left,
        "r" | "right" => Face::Right,
        "i" | "interior" => Face::Interior,
        other => bail!("bad face `{other}`: expected l, r or i"),
    })
}

fn dist(args: &DistArgs, precision: Precision) -> Result<()> {
    let comb = Comb::parse(&read(&args.comb)?)?;
    let points: Vec<CombPoint> = if let Some(path) = &args.order {
        let order = read(path)?
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.trim().parse::<usize>().with_context(|| format!("bad index `{l}`")))
            .collect::<Result<Vec<_>>>()?;
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != (0..order.len()).collect::<Vec<_>>() {
            bail!("order file is not a permutation of 0..{}", order.len());
        }
        ordered_positions(&order).into_iter().map(CombPoint::interior).collect()
    } else {
        let mut tokens = args.at.clone();
        if let Some(path) = &args.positions {
            tokens.extend(
                read(path)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from),
            );
        }
        tokens.iter().map(|t| parse_point(t)).collect::<Result<_>>()?
    };
    if points.is_empty() {
        bail!("no points given: use --at, --positions or --order");
    }
    let mut text = String::new();
    for a in &points {
        let row = points
            .iter()
            .map(|b| Ok(fmt(comb.distance(a, b)?, precision)))
            .collect::<Result<Vec<_>>>()?;
        let _ = writeln!(text, "{}", row.join(","));
    }
    write(args.output.as_deref(), &text)
}

fn teeth_json(comb: &Comb) -> Vec<[f64; 2]> {
    comb.teeth().iter().map(|t| [t.position, t.height]).collect()
}

fn sample(kind: SampleKind, precision: Precision) -> Result<()> {
    let (comb, json, output, json_path) = match kind {
        SampleKind::Kingman {
            n,
            seed,
            output,
            json,
        } => {
            let comb = sample_kingman_comb(n, &mut seeded(seed))?;
            let doc = serde_json::json!({
                "kind": "kingman",
                "n": n,
                "seed": seed,
                "interval": [comb.lo(), comb.hi()],
                "teeth": teeth_json(&comb),
            });
            (comb, serde_json::to_string_pretty(&doc)?, output, json)
        }
        SampleKind::Cpp {
            level,
            epsilon,
            seed,
            output,
            json,
        } => {
            let (comb, mut s) = sample_cpp(level, epsilon, &BrownianIntensity, &mut seeded(seed))?;
            s.seed = Some(seed);
            (comb, s.to_json(), output, json)
        }
        SampleKind::Splitting {
            level,
            birth_rate,
            lifetime_mean,
            n,
            seed,
            output,
            json,
        } => {
            if !(lifetime_mean > 0.0) {
                return Err(combmetric::Error::InvalidParameter(format!(
                    "lifetime mean must be positive, got {lifetime_mean}"
                ))
                .into());
            }
            let law = ExponentialJumps {
                mean: lifetime_mean,
            };
            let comb = sample_splitting_depths(level, birth_rate, &law, n, &mut seeded(seed))?;
            let doc = serde_json::json!({
                "kind": "splitting",
                "T": level,
                "birth_rate": birth_rate,
                "lifetime_mean": lifetime_mean,
                "seed": seed,
                "interval": [comb.lo(), comb.hi()],
                "teeth": teeth_json(&comb),
            });
            (comb, serde_json::to_string_pretty(&doc)?, output, json)
        }
    };
    if let Some(p) = json_path {
        write(Some(&p), &(json + "\n"))?;
    }
    write(output.as_deref(), &comb.to_text(precision))
}

fn rational(s: &str) -> Result<BigRational> {
    parse_exact(s).with_context(|| format!("bad rational `{s}`: expected a/b or a decimal"))
}

fn face_name(face: Face) -> &'static str {
    match face {
        Face::Left => "l",
        Face::Right => "r",
        Face::Interior => "i",
    }
}

fn padic(p: u32, query: PadicQuery) -> Result<String> {
    Ok(match query {
        PadicQuery::Dist { a, b } => format_exact(&d_p(&rational(&a)?, &rational(&b)?, p)?),
        PadicQuery::Val { q } => v_p(&rational(&q)?, p)?.to_string(),
        PadicQuery::Chi { q } => {
            let x = chi(&rational(&q)?, p)?;
            format!("{} {}", format_exact(&x.position), face_name(x.face))
        }
        PadicQuery::ChiInv { t, face } => {
            let point = FacePoint::new(rational(&t)?, parse_face(&face)?);
            format_exact(&chi_inverse(&point, p)?)
        }
        PadicQuery::Gap { t } => {
            let t = rational(&t)?;
            let left = chi_inverse(&FacePoint::left(t.clone()), p)?;
            let right = chi_inverse(&FacePoint::right(t), p)?;
            format!(
                "left {}\nright {}\ndifference {}",
                format_exact(&left),
                format_exact(&right),
                format_exact(&(&left - &right))
            )
        }
        PadicQuery::Expand { t } => phi(&rational(&t)?, p)?.to_string(),
    })
}
