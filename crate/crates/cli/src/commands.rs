use std::fs;
use std::path::Path;

use geomquant::cbcst::{Cbcst, CbcstBuilder};
use geomquant::cybe::GeomRMatrix;
use geomquant::example::{verify_example, EpsMode, ExampleConfig};
use geomquant::io;
use geomquant::quantize::{quantize, QuantumTuple};
use geomquant::report::{CheckItem, Report};

use crate::{Cli, Command, Format};

pub const PASS: u8 = 0;
pub const FAIL: u8 = 1;
pub const INPUT_ERROR: u8 = 2;

/// A finished run: its report and, for building commands, the produced file.
struct Outcome {
    report: Report,
    artifact: Option<String>,
}

type Run = Result<Outcome, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))
}

fn input<T>(path: &Path, r: geomquant::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{}: {}", path.display(), e))
}

fn load_rmatrix(path: &Path, eps: &EpsMode) -> Result<GeomRMatrix, String> {
    Ok(eps.apply_r(&input(path, io::read_rmatrix(&read(path)?))?))
}

fn load_cbcst(path: &Path, eps: &EpsMode) -> Result<Cbcst, String> {
    Ok(eps.apply_c(&input(path, io::read_cbcst(&read(path)?))?))
}

enum Source {
    RMatrix(GeomRMatrix),
    Cbcst(Cbcst),
}

/// An r-matrix file has term lists; a 7-tuple file has actions.
fn load_any(path: &Path, eps: &EpsMode) -> Result<Source, String> {
    let text = read(path)?;
    let value: serde_json::Value = input(path, serde_json::from_str(&text).map_err(geomquant::Error::from))?;
    if value.get("rho_a").is_some() {
        Ok(Source::Cbcst(eps.apply_c(&input(path, io::read_cbcst(&text))?)))
    } else {
        Ok(Source::RMatrix(eps.apply_r(&input(path, io::read_rmatrix(&text))?)))
    }
}

fn failed(report: &mut Report, name: &str, e: geomquant::Error) {
    report.push(CheckItem::fail(name, e.to_string()));
}

/// CYBE and construction of the 7-tuple, recorded in `report`.
fn construct(report: &mut Report, r: &GeomRMatrix) -> Option<CbcstBuilder> {
    let cy = r.check_cybe();
    let ok = cy.passed;
    report.push(cy);
    if !ok {
        return None;
    }
    match CbcstBuilder::from_rmatrix(r) {
        Ok(b) => {
            match b.validate() {
                Ok(v) => report.extend(v),
                Err(e) => failed(report, "lemma suite", e),
            }
            Some(b)
        }
        Err(e) => {
            failed(report, "construction of the 7-tuple", e);
            None
        }
    }
}

fn check_cybe(path: &Path, eps: &EpsMode) -> Run {
    let r = load_rmatrix(path, eps)?;
    let mut report = Report::new(format!("classical Yang-Baxter equation, {}", eps));
    report.push(r.check_cybe());
    Ok(Outcome { report, artifact: None })
}

fn build_cbcst(path: &Path, eps: &EpsMode) -> Run {
    let r = load_rmatrix(path, eps)?;
    let mut report = Report::new(format!("7-tuple construction, {}", eps));
    let b = construct(&mut report, &r);
    let artifact = b.filter(|_| report.passed()).map(|b| io::write_cbcst(b.cbcst()));
    Ok(Outcome { report, artifact })
}

fn to_rmatrix(path: &Path, eps: &EpsMode) -> Run {
    let c = load_cbcst(path, eps)?;
    let mut report = Report::new(format!("r-matrix of a 7-tuple, {}", eps));
    report.extend(c.validate());
    let mut artifact = None;
    if report.passed() {
        match c.to_rmatrix() {
            Ok(r) => {
                report.push(r.check_cybe());
                artifact = Some(io::write_rmatrix(&r));
            }
            Err(e) => failed(&mut report, "r-matrix construction", e),
        }
    }
    Ok(Outcome { report, artifact })
}

fn quantize_cmd(path: &Path, order: usize, eps: &EpsMode, verify: bool, closed_form: Option<&Path>) -> Run {
    if order < 2 {
        return Err("--order must be at least 2".into());
    }
    let closed = match closed_form {
        Some(p) => Some(input(p, io::read_closed_form(&read(p)?))?),
        None => None,
    };
    let mut report = Report::new(format!("quantization, order {}, {}", order, eps));
    let (c, r, builder) = match load_any(path, eps)? {
        Source::RMatrix(r) => match construct(&mut report, &r) {
            Some(b) => (b.cbcst().clone(), r, Some(b)),
            None => return Ok(Outcome { report, artifact: None }),
        },
        Source::Cbcst(c) => {
            report.extend(c.validate());
            if !report.passed() {
                return Ok(Outcome { report, artifact: None });
            }
            match c.to_rmatrix() {
                Ok(r) => {
                    let b = if verify { CbcstBuilder::from_rmatrix(&r).ok() } else { None };
                    (c, r, b)
                }
                Err(e) => {
                    failed(&mut report, "r-matrix construction", e);
                    return Ok(Outcome { report, artifact: None });
                }
            }
        }
    };
    let rq = match quantize(&c, order) {
        Ok(rq) => rq,
        Err(e) => {
            failed(&mut report, "quantization", e);
            return Ok(Outcome { report, artifact: None });
        }
    };
    if verify {
        report.push(rq.check_classical_limit(&r));
        let checks = [
            ("braid equation", rq.check_braid()),
            ("first-order terms", builder.as_ref().map_or_else(|| Ok(CheckItem::fail("first-order terms", "no construction from r")), |b| rq.check_first_order(b))),
        ];
        for (name, item) in checks {
            match item {
                Ok(i) => report.push(i),
                Err(e) => failed(&mut report, name, e),
            }
        }
        match rq.is_unitary() {
            Ok(u) => {
                let classical = r.check_unitarity();
                let name = "quantum unitarity agrees with classical unitarity";
                report.push(if u == classical {
                    CheckItem::pass(name).with_detail(format!("unitary: {}", u))
                } else {
                    CheckItem::fail(name, format!("quantum {}, classical {}", u, classical))
                });
            }
            Err(e) => failed(&mut report, "quantum unitarity", e),
        }
        match QuantumTuple::new(&c, order).and_then(|q| Ok([q.check_psi_equivariance()?, q.check_inverse_action()?])) {
            Ok(items) => items.into_iter().for_each(|i| report.push(i)),
            Err(e) => failed(&mut report, "exponentiated 7-tuple", e),
        }
    }
    if let Some(cf) = closed {
        match cf.expand(c.n(), order) {
            Ok(want) => report.push(match rq.map().first_difference(want.map()) {
                None => CheckItem::pass("R matches closed form"),
                Some((k, i)) => {
                    CheckItem::fail("R matches closed form", format!("first difference at order h^{} in image {}", k, i + 1))
                }
            }),
            Err(e) => return Err(format!("{}: {}", closed_form.expect("given").display(), e)),
        }
    }
    Ok(Outcome { report, artifact: Some(io::write_series(&rq)) })
}

fn check_braid(path: &Path) -> Run {
    let rq = input(path, io::read_series(&read(path)?))?;
    let mut report = Report::new(format!("braid equation, order {}", rq.order()));
    match rq.check_braid() {
        Ok(i) => report.push(i),
        Err(e) => failed(&mut report, "braid equation", e),
    }
    Ok(Outcome { report, artifact: None })
}

fn verify_example5(order: usize, eps: &[EpsMode], corrupt: bool) -> Run {
    let mut cfg = ExampleConfig { order, corrupt, ..Default::default() };
    if !eps.is_empty() {
        cfg.eps = eps.to_vec();
    }
    let report = verify_example(&cfg).map_err(|e| e.to_string())?;
    Ok(Outcome { report, artifact: None })
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Human => report.to_human(),
        Format::Structured => report.to_json() + "\n",
    }
}

pub fn run(cli: &Cli) -> u8 {
    let outcome = match &cli.command {
        Command::CheckCybe { input, epsilon } => check_cybe(input, epsilon),
        Command::BuildCbcst { input, epsilon } => build_cbcst(input, epsilon),
        Command::ToRmatrix { input, epsilon } => to_rmatrix(input, epsilon),
        Command::Quantize { input, order, epsilon, verify, closed_form } => {
            quantize_cmd(input, *order, epsilon, *verify, closed_form.as_deref())
        }
        Command::CheckBraid { input } => check_braid(input),
        Command::VerifyExample5 { order, epsilon, corrupt } => verify_example5(*order, epsilon, *corrupt),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("geomquant: {}", msg);
            return INPUT_ERROR;
        }
    };
    let text = render(&outcome.report, cli.format);
    match (&outcome.artifact, &cli.output) {
        (Some(a), Some(path)) => {
            if let Err(e) = fs::write(path, a) {
                eprintln!("geomquant: {}: {}", path.display(), e);
                return INPUT_ERROR;
            }
            print!("{}", text);
        }
        (Some(a), None) => {
            print!("{}", a);
            eprint!("{}", text);
        }
        (None, Some(path)) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("geomquant: {}: {}", path.display(), e);
                return INPUT_ERROR;
            }
        }
        (None, None) => print!("{}", text),
    }
    if outcome.report.passed() {
        PASS
    } else {
        FAIL
    }
}
