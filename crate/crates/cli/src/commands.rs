use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use sgfrac::acceptance::{self, Criterion};
use sgfrac::error_model::{advise_params, error_report, AdviceMode, BoundConstants, ParamAdvice, ReportInput};
use sgfrac::io::{load_fsgim_file, save_fsgim_file};
use sgfrac::{build_fsgim, FracOrder, Grid, GridSpec, QuadRule, QuadSpec, SampleVector};

use crate::args::*;
use crate::builtin::Builtin;
use crate::failure::{param, CliResult, Failure, Kind};
use crate::samples::{read_samples, write_samples};
use crate::table::{write_rows, write_sweep, Document, Row, SweepRow, ROWS_SCHEMA_VERSION};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

fn open_sink<'a>(path: Option<&Path>, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| Failure::from(e).context(format!("creating {}", p.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(stdout),
    })
}

fn order(alpha: f64) -> CliResult<FracOrder> {
    param(FracOrder::new(alpha))
}

fn quad_rule(q: &Quad) -> CliResult<QuadRule> {
    param(QuadRule::new(q.n_q, q.lambda_q))
}

fn check_points(points: &[f64]) -> CliResult<()> {
    match points.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        Some(t) => Err(Failure::usage(format!("point {t} outside [0, 1]"))),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct EvalParams<'a> {
    function: String,
    alpha: f64,
    grid: GridSpec,
    quad: QuadSpec,
    matrix: Option<&'a str>,
}

fn emit_rows(command: &str, params: EvalParams, rows: &[Row], out: &Output, stdout: &mut dyn Write) -> CliResult<()> {
    let mut sink = open_sink(out.output.as_deref(), stdout)?;
    match out.format {
        Format::Csv => write_rows(rows, &mut sink)?,
        Format::Json => {
            let doc =
                Document { schema_version: ROWS_SCHEMA_VERSION, command: command.into(), params, rows: rows.to_vec() };
            serde_json::to_writer_pretty(&mut sink, &doc)?;
            writeln!(sink)?;
        }
    }
    sink.flush()?;
    Ok(())
}

fn load_samples(path: &Path) -> CliResult<SampleVector> {
    let f = File::open(path).map_err(|e| Failure::from(e).context(format!("opening {}", path.display())))?;
    read_samples(BufReader::new(f)).map_err(|e| e.context(format!("reading {}", path.display())))
}

pub fn eval(a: &EvalArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let alpha = order(a.alpha)?;
    let points = a.points.list();
    check_points(&points)?;
    let quad = quad_rule(&a.quad)?;

    let (grid, samples, exact) = match (&a.func, &a.samples) {
        (Some(f), None) => {
            let grid = param(Grid::new(a.n.unwrap_or(16), a.lambda.unwrap_or(0.0)))?;
            let samples = SampleVector::from_fn(&grid, |t| f.eval(t))?;
            (grid, samples, Some(*f))
        }
        (None, Some(path)) => {
            let samples = load_samples(path)?;
            let id = samples.grid();
            if a.n.is_some_and(|n| n != id.n) || a.lambda.is_some_and(|l| l != id.lambda) {
                return Err(Failure::usage(format!(
                    "--n/--lambda disagree with the samples file grid (n = {}, lambda = {})",
                    id.n, id.lambda
                )));
            }
            (param(Grid::new(id.n, id.lambda))?, samples, None)
        }
        _ => return Err(Failure::usage("give exactly one of --fn and --samples")),
    };

    let values = build_fsgim(&grid, &quad, alpha, &points)?.apply(&samples)?;
    let rows = points
        .iter()
        .zip(values)
        .map(|(&t, v)| Ok(Row::new(t, v, exact.map(|f| f.exact(a.alpha, t)).transpose()?)))
        .collect::<CliResult<Vec<_>>>()?;
    let params = EvalParams {
        function: exact.map_or_else(|| "samples".to_string(), |f| f.to_string()),
        alpha: a.alpha,
        grid: grid.spec(),
        quad: quad.spec(),
        matrix: None,
    };
    emit_rows("eval", params, &rows, &a.out, stdout)
}

pub fn matrix(a: &MatrixArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let alpha = order(a.alpha)?;
    let points = a.points.list();
    check_points(&points)?;
    let grid = param(Grid::new(a.grid.n, a.grid.lambda))?;
    let q = build_fsgim(&grid, &quad_rule(&a.quad)?, alpha, &points)?;
    save_fsgim_file(&q, &a.output).map_err(|e| Failure::from(e).context(format!("writing {}", a.output.display())))?;
    writeln!(stdout, "wrote {} x {} matrix to {}", q.rows(), q.cols(), a.output.display())?;
    Ok(())
}

pub fn apply(a: &ApplyArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let q =
        load_fsgim_file(&a.matrix).map_err(|e| Failure::from(e).context(format!("reading {}", a.matrix.display())))?;
    let samples = load_samples(&a.samples)?;
    let values = q.apply(&samples)?;
    let rows: Vec<Row> = q.points().iter().zip(values).map(|(&t, v)| Row::new(t, v, None)).collect();
    let params = EvalParams {
        function: "samples".into(),
        alpha: q.alpha().value(),
        grid: q.grid_spec(),
        quad: q.quad_spec(),
        matrix: a.matrix.to_str(),
    };
    emit_rows("apply", params, &rows, &a.out, stdout)
}

pub fn sample(a: &SampleArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let grid = param(Grid::new(a.grid.n, a.grid.lambda))?;
    let samples = SampleVector::from_fn(&grid, |t| a.func.eval(t))?;
    let mut sink = open_sink(a.output.as_deref(), stdout)?;
    write_samples(&samples, &mut sink)?;
    sink.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SweepParams {
    function: String,
    alpha: f64,
    t: f64,
    over: &'static str,
    grid: GridSpec,
    quad: QuadSpec,
}

fn as_degree(v: f64) -> CliResult<usize> {
    if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
        Ok(v as usize)
    } else {
        Err(Failure::usage(format!("degree {v} is not a non-negative integer")))
    }
}

fn sweep_one(a: &SweepArgs, f: Builtin, alpha: FracOrder, exact: f64, value: f64) -> CliResult<SweepRow> {
    let (mut n, mut lambda, mut n_q, mut lambda_q) = (a.grid.n, a.grid.lambda, a.quad.n_q, a.quad.lambda_q);
    match a.over {
        SweepParam::N => n = as_degree(value)?,
        SweepParam::Nq => n_q = as_degree(value)?,
        SweepParam::Lambda => lambda = value,
        SweepParam::Lambdaq => lambda_q = value,
    }
    let grid = param(Grid::new(n, lambda))?;
    let quad = param(QuadRule::new(n_q, lambda_q))?;
    let samples = SampleVector::from_fn(&grid, |t| f.eval(t))?;
    let approx = build_fsgim(&grid, &quad, alpha, &[a.t])?.apply(&samples)?[0];
    let row = Row::new(a.t, approx, Some(exact));
    Ok(SweepRow {
        param: a.over.name().into(),
        value,
        point: a.t,
        approx,
        exact,
        abs_err: row.abs_err.expect("exact known"),
        rel_err: row.rel_err,
    })
}

pub fn sweep(a: &SweepArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let alpha = order(a.alpha)?;
    check_points(&[a.t])?;
    let exact = param(a.func.exact(a.alpha, a.t))?;
    let rows = a.values.0.iter().map(|&v| sweep_one(a, a.func, alpha, exact, v)).collect::<CliResult<Vec<_>>>()?;
    let mut sink = open_sink(a.out.output.as_deref(), stdout)?;
    match a.out.format {
        Format::Csv => write_sweep(&rows, &mut sink)?,
        Format::Json => {
            let params = SweepParams {
                function: a.func.to_string(),
                alpha: a.alpha,
                t: a.t,
                over: a.over.name(),
                grid: GridSpec::new(a.grid.n, a.grid.lambda),
                quad: QuadSpec::new(a.quad.n_q, a.quad.lambda_q),
            };
            let doc = Document { schema_version: ROWS_SCHEMA_VERSION, command: "sweep".into(), params, rows };
            serde_json::to_writer_pretty(&mut sink, &doc)?;
            writeln!(sink)?;
        }
    }
    sink.flush()?;
    Ok(())
}

/// Runs the acceptance suite; a failed criterion is a numeric failure.
pub fn bench(a: &BenchArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let criteria = if a.criterion.is_empty() {
        Criterion::ALL.to_vec()
    } else {
        a.criterion
            .iter()
            .map(|k| {
                Criterion::from_key(k).ok_or_else(|| {
                    let keys: Vec<&str> = Criterion::ALL.iter().map(|c| c.key()).collect();
                    Failure::usage(format!("unknown criterion {k:?}; expected one of {}", keys.join(", ")))
                })
            })
            .collect::<CliResult<Vec<_>>>()?
    };
    let report = acceptance::report(&criteria);
    if a.json {
        serde_json::to_writer_pretty(&mut *stdout, &report)?;
        writeln!(stdout)?;
    } else {
        for o in &report.outcomes {
            writeln!(stdout, "{}", o.line())?;
        }
        let passed = report.outcomes.iter().filter(|o| o.passed).count();
        let verdict = if report.all_passed { "PASS" } else { "FAIL" };
        writeln!(stdout, "verdict: {verdict} ({passed}/{})", report.outcomes.len())?;
    }
    if report.all_passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report.outcomes.iter().filter(|o| !o.passed).map(|o| o.key).collect();
        Err(Failure::new(Kind::Numeric, anyhow::anyhow!("failed criteria: {}", failed.join(", "))))
    }
}

fn render_advice(p: &ParamAdvice, out: &mut dyn Write) -> std::io::Result<()> {
    let mode = match p.mode {
        AdviceMode::Standard => "standard",
        AdviceMode::Precision => "precision",
    };
    writeln!(out, "mode          {mode}")?;
    writeln!(out, "lambda        {}", p.lambda)?;
    writeln!(out, "lambda_q      {}", p.lambda_q)?;
    writeln!(
        out,
        "regime        {}",
        serde_json::to_value(p.regime).map_err(std::io::Error::other)?.as_str().unwrap_or("?")
    )?;
    writeln!(out, "lambda range  [{}, {}]", p.lambda_range.0, p.lambda_range.1)?;
    writeln!(out, "avoid         ({:.4}, {:.4})", p.excluded.0, p.excluded.1)?;
    for c in &p.constraints {
        writeln!(out, "constraint    {c}")?;
    }
    writeln!(out, "rationale     {}", p.rationale)
}

pub fn advise(a: &AdviseArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let mode = match a.mode {
        Mode::Standard => AdviceMode::Standard,
        Mode::Precision => AdviceMode::Precision,
    };
    let p = advise_params(a.n, a.n_q, mode);
    match a.format {
        TextFormat::Text => render_advice(&p, stdout)?,
        TextFormat::Json => {
            serde_json::to_writer_pretty(&mut *stdout, &p)?;
            writeln!(stdout)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ReportDoc<R> {
    schema_version: u32,
    input: ReportInput,
    report: R,
}

pub fn report(a: &ReportArgs, stdout: &mut dyn Write) -> CliResult<()> {
    order(a.alpha)?;
    let input = ReportInput {
        n: a.grid.n,
        n_q: a.quad.n_q,
        alpha: a.alpha,
        lambda: a.grid.lambda,
        lambda_q: a.quad.lambda_q,
        t: a.t,
        eta: a.eta,
        deriv_bound: a.deriv_bound,
        sup_f: a.sup_f,
        constants: BoundConstants::default(),
    };
    let report = param(error_report(&input))?;
    serde_json::to_writer_pretty(&mut *stdout, &ReportDoc { schema_version: REPORT_SCHEMA_VERSION, input, report })?;
    writeln!(stdout)?;
    Ok(())
}
