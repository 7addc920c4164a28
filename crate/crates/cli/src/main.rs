mod args;
mod config;
mod svg;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use num_complex::Complex64;
use serde_json::{json, Value};

use quadzero::{
    circle_image, critical_radius, find_zeros, modular_root_census, radius_bound, run_sweep, verify_critical_circle,
    Axis, Contour, CriticalCircle, HarmonicMap, HarmonicQuadrinomial, RadiusSource, SweepSpec,
};

use quadzero::contour::winding_number_with;

use args::{Cli, Command, Format};

enum Failure {
    Quad(quadzero::Error),
    Usage(String),
}

impl From<quadzero::Error> for Failure {
    fn from(e: quadzero::Error) -> Self {
        Failure::Quad(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn json_line(v: Value) -> String {
    format!("{v}\n")
}

fn cmd_radius(a: &args::InstanceArgs) -> CmdResult {
    let p = a.build()?;
    let disk = radius_bound(&p);
    if disk.source == RadiusSource::Unavailable {
        return Err(quadzero::Error::BoundUnavailable.into());
    }
    Ok(json_line(json!({
        "radius": disk.radius,
        "delta": disk.delta,
        "source": disk.source.wire_name(),
    })))
}

fn critical_circle_of(p: &HarmonicQuadrinomial) -> Option<f64> {
    if p.n() != p.k() || p.m() != 1 {
        return None;
    }
    critical_radius(p.b(), p.c(), p.k())
        .ok()
        .filter(|c| c.exists)
        .map(|c| c.radius)
}

fn cmd_zeros(a: &args::ZerosArgs) -> CmdResult {
    let p = a.instance.build()?;
    let report = find_zeros(&p, &a.solve.config())?;
    if report.unconverged_leaves > 0 {
        eprintln!(
            "warning: {} quadtree leaves had no converged Newton start",
            report.unconverged_leaves
        );
    }
    if report.exceeds_conjectural_bound() {
        eprintln!("note: count {} exceeds the conjectural bound", report.count);
    }

    if let Some(path) = &a.svg {
        let extent = report.disk.radius * 1.1;
        fs::write(
            path,
            svg::zeros_plot(&report.zeros, Some(report.disk.radius), critical_circle_of(&p), extent),
        )?;
    }

    let mut out = String::new();
    match a.format {
        Format::Csv => {
            out.push_str("re,im,residual,jacobian,orientation\n");
            for z in &report.zeros {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    num(z.location.re),
                    num(z.location.im),
                    num(z.residual),
                    num(z.jacobian),
                    z.orientation.as_str()
                );
            }
        }
        Format::Json => {
            let zeros: Vec<Value> = report
                .zeros
                .iter()
                .map(|z| {
                    json!({
                        "re": z.location.re,
                        "im": z.location.im,
                        "residual": z.residual,
                        "jacobian": z.jacobian,
                        "orientation": z.orientation.as_str(),
                        "multiplicity_hint": z.multiplicity_hint,
                    })
                })
                .collect();
            let bound = report.bound.map(|b| {
                json!({
                    "upper": b.upper,
                    "upper_is_proven": b.upper_is_proven,
                    "lower": b.lower,
                    "branch": b.branch.wire_name(),
                })
            });
            out = json_line(json!({
                "count": report.count,
                "n_plus": report.n_plus,
                "n_minus": report.n_minus,
                "n_singular": report.n_singular,
                "radius": report.disk.radius,
                "radius_source": report.disk.source.wire_name(),
                "bound": bound,
                "winding": report.winding,
                "winding_check": report.winding_check.as_str(),
                "unconverged_leaves": report.unconverged_leaves,
                "zeros": zeros,
            }));
        }
    }
    Ok(out)
}

fn cmd_classify(a: &args::ClassifyArgs) -> CmdResult {
    let p = a.instance.build()?;
    let z = Complex64::new(a.re, a.im);
    let value = p.evaluate(z);
    let dilatation = p.dilatation(z).ok().map(|w| w.norm());
    Ok(json_line(json!({
        "re": a.re,
        "im": a.im,
        "value_re": value.re,
        "value_im": value.im,
        "jacobian": p.jacobian(z),
        "dilatation_modulus": dilatation,
        "orientation": p.classify_point(z, a.singular_tol).as_str(),
    })))
}

fn cmd_winding(a: &args::WindingArgs) -> CmdResult {
    let p = a.instance.build()?;
    let contour = match (a.lo_re, a.lo_im, a.hi_re, a.hi_im) {
        (Some(lr), Some(li), Some(hr), Some(hi)) => Contour::rectangle(Complex64::new(lr, li), Complex64::new(hr, hi))?,
        _ => {
            let radius = match a.radius {
                Some(r) => r,
                None => {
                    let disk = radius_bound(&p);
                    if disk.source == RadiusSource::Unavailable {
                        return Err(quadzero::Error::BoundUnavailable.into());
                    }
                    disk.radius + 1.0
                }
            };
            Contour::circle(Complex64::new(a.center_re, a.center_im), radius)?
        }
    };
    let r = winding_number_with(&p, &contour, a.samples)?;
    let contour_json = match contour {
        Contour::Circle { center, radius } => {
            json!({"kind": "circle", "center_re": center.re, "center_im": center.im, "radius": radius})
        }
        Contour::Rectangle { lo, hi } => {
            json!({"kind": "rectangle", "lo_re": lo.re, "lo_im": lo.im, "hi_re": hi.re, "hi_im": hi.im})
        }
    };
    Ok(json_line(json!({
        "winding": r.winding,
        "min_modulus": r.min_modulus,
        "samples_used": r.samples_used,
        "refined": r.refined,
        "contour": contour_json,
    })))
}

fn cmd_critical_circle(a: &args::CriticalArgs) -> CmdResult {
    let check = verify_critical_circle(a.b, a.c, a.k, a.tol)?;
    let rays: Vec<Value> = check
        .rays
        .iter()
        .map(|&(theta, on, off)| json!({"theta": theta, "on_circle": on, "off_circle": off}))
        .collect();
    let mut v = json!({
        "b": a.b,
        "c": a.c,
        "k": a.k,
        "radius": check.circle.radius,
        "radius_factored": CriticalCircle::radius_factored(a.b, a.c, a.k),
        "tol": a.tol,
        "max_on_circle": check.max_on_circle(),
        "min_off_circle": finite(check.min_off_circle()),
        "passed": check.passed(),
        "rays": rays,
    });
    if let Some(band) = a.census {
        let p = HarmonicQuadrinomial::new(a.b, a.c, a.k, a.k, 1)?;
        let (_, census) = modular_root_census(&p, &a.solve.config(), band)?;
        v["census"] = json!({
            "band": band,
            "on_circle": census.on_circle,
            "inside": census.inside,
            "outside": census.outside,
        });
    }
    Ok(json_line(v))
}

fn cmd_circle_image(a: &args::CircleImageArgs) -> CmdResult {
    let p = a.instance.build()?;
    let image = circle_image(&p, a.radius, a.samples)?;
    let mut out = String::from("theta,re,im\n");
    for (j, w) in image.iter().enumerate() {
        let theta = std::f64::consts::TAU * j as f64 / a.samples as f64;
        let _ = writeln!(out, "{},{},{}", num(theta), num(w.re), num(w.im));
    }
    Ok(out)
}

fn cmd_sweep(a: &args::SweepArgs) -> CmdResult {
    let spec = SweepSpec {
        b_axis: Axis {
            lo: a.b_lo,
            hi: a.b_hi,
            steps: a.b_steps,
        },
        c_axis: Axis {
            lo: a.c_lo,
            hi: a.c_hi,
            steps: a.c_steps,
        },
        k: a.k,
        n: a.n,
        m: a.m,
        config: a.solve.config(),
    };
    let threads = a
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let grid = run_sweep(&spec, threads)?;

    let mut out =
        String::from("b,c,count,n_plus,n_minus,n_singular,bound_upper,bound_proven,radius,winding_check,violation\n");
    for cell in &grid.cells {
        if let Some(e) = &cell.error {
            eprintln!("cell b={} c={}: {e}", cell.b, cell.c);
        }
        if cell.violation == quadzero::Violation::Proven {
            eprintln!("cell b={} c={}: count exceeds a proven bound", cell.b, cell.c);
        }
        let solved = cell.count.is_some();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            num(cell.b),
            num(cell.c),
            cell.count.map(|c| c.to_string()).unwrap_or_default(),
            if solved { cell.n_plus.to_string() } else { String::new() },
            if solved {
                cell.n_minus.to_string()
            } else {
                String::new()
            },
            if solved {
                cell.n_singular.to_string()
            } else {
                String::new()
            },
            cell.bound_upper.map(|u| u.to_string()).unwrap_or_default(),
            cell.bound_proven.map(|p| p.to_string()).unwrap_or_default(),
            opt_num(cell.radius),
            cell.winding_check.map(|w| w.as_str()).unwrap_or(""),
            cell.violation.as_str(),
        );
    }
    if let Some(path) = &a.svg {
        fs::write(path, svg::sweep_heatmap(&grid))?;
    }
    Ok(out)
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Radius(a) => cmd_radius(a),
        Command::Zeros(a) => cmd_zeros(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Winding(a) => cmd_winding(a),
        Command::CriticalCircle(a) => cmd_critical_circle(a),
        Command::CircleImage(a) => cmd_circle_image(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args_os().collect()) {
        Ok(argv) => argv,
        Err(msg) => {
            eprintln!("quadzero: {msg}");
            return ExitCode::from(2);
        }
    };
    // clap exits with status 2 on parse errors
    let cli = Cli::parse_from(argv);
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Quad(e)) => {
            eprintln!("quadzero: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("quadzero: {msg}");
            ExitCode::from(2)
        }
    }
}
