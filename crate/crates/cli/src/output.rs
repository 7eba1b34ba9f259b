use std::fmt::Write as _;

use acobs::acx::Class;
use acobs::obstructure::{Record, Skip, Summary, SweepReport};
use serde_json::{json, Value};

pub const CSV_HEADER: &str = "identity,scenario,point_index,frame_index,residual,class";

fn compact(descriptor: &str) -> String {
    descriptor
        .lines()
        .filter(|l| !l.trim().is_empty())
        .collect::<Vec<_>>()
        .join(", ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn header_line(command: &str, rep: &SweepReport) -> String {
    format!(
        "# acobs {command} scenario={} seed={} samples={} frames={}",
        rep.scenario, rep.seed, rep.samples, rep.frames
    )
}

fn record_json(r: &Record, label: &str, eps: Option<f64>) -> Value {
    let mut v = serde_json::to_value(r).expect("record serializes");
    v["kind"] = json!("residual");
    v["scenario"] = json!(label);
    if let Some(e) = eps {
        v["eps"] = json!(e);
    }
    v
}

fn skip_json(s: &Skip, rep: &SweepReport) -> Value {
    json!({"kind": "skip", "identity": s.identity, "scenario": rep.scenario, "seed": rep.seed, "reason": s.reason})
}

fn run_json(command: &str, rep: &SweepReport) -> Value {
    json!({
        "kind": "run",
        "command": command,
        "scenario": rep.scenario,
        "descriptor": compact(&rep.descriptor),
        "seed": rep.seed,
        "samples": rep.samples,
        "frames": rep.frames,
        "hypotheses": rep.hypotheses,
        "gate": rep.gate,
    })
}

fn summary_json(s: &Summary, rep: &SweepReport) -> Value {
    let mut v = serde_json::to_value(s).expect("summary serializes");
    v["kind"] = json!("summary");
    v["scenario"] = json!(rep.scenario);
    v["seed"] = json!(rep.seed);
    v
}

fn class_line(rep: &SweepReport) -> String {
    let n = rep.classification.len();
    let count = |c: Class| rep.classification.iter().filter(|k| k.class == c).count();
    let closed = rep.classification.iter().filter(|k| k.closed).count();
    let mut parts = vec![];
    for c in [Class::Kahler, Class::NearlyKahler, Class::General] {
        let k = count(c);
        if k > 0 {
            parts.push(format!("{c} at {k}/{n} points"));
        }
    }
    format!("structure: {}; d∇A closed at {closed}/{n}", parts.join(", "))
}

fn summary_table(out: &mut String, rep: &SweepReport, structured: bool) {
    let _ = write!(
        out,
        "{:<28} {:<8} {:>11} {:>11} {:>9}",
        "identity", "class", "max", "mean", "tol"
    );
    if structured {
        let _ = write!(out, " {:>13}", "(X,Y,AX,AY)");
    }
    let _ = writeln!(out, "  {:<8} hypotheses", "result");
    for s in &rep.summaries {
        let _ = write!(
            out,
            "{:<28} {:<8} {:>11.3e} {:>11.3e} {:>9.1e}",
            s.identity, s.class, s.max, s.mean, s.tol
        );
        if structured {
            match structured_mean(rep, s.identity) {
                Some(v) => {
                    let _ = write!(out, " {v:>13.6}");
                }
                None => {
                    let _ = write!(out, " {:>13}", "-");
                }
            }
        }
        let _ = writeln!(out, "  {:<8} {}", s.outcome.to_string(), s.hypotheses);
    }
    if !rep.skips.is_empty() {
        let _ = writeln!(out, "\nnot evaluated:");
        for s in &rep.skips {
            let _ = writeln!(out, "  {:<26} {}", s.identity, s.reason);
        }
    }
}

/// Mean of the signed frame-0 residuals.
fn structured_mean(rep: &SweepReport, identity: &str) -> Option<f64> {
    let vs: Vec<f64> = rep
        .records
        .iter()
        .filter(|r| r.identity == identity && r.frame_index == 0)
        .map(|r| r.residual)
        .collect();
    (!vs.is_empty()).then(|| vs.iter().sum::<f64>() / vs.len() as f64)
}

fn tally(rep: &SweepReport) -> String {
    use acobs::obstructure::Outcome;
    let n = |o: Outcome| rep.summaries.iter().filter(|s| s.outcome == o).count();
    format!(
        "checks: {} passed, {} failed; witnesses: {}; not evaluated: {}",
        n(Outcome::Pass),
        n(Outcome::Fail),
        n(Outcome::Witness),
        rep.skips.len()
    )
}

fn preamble(out: &mut String, command: &str, rep: &SweepReport) {
    let h = &rep.hypotheses;
    let _ = writeln!(out, "{}", header_line(command, rep));
    let _ = writeln!(out, "scenario: {}", compact(&rep.descriptor));
    let _ = writeln!(out, "{}", class_line(rep));
    let _ = writeln!(out, "curvature: {}", rep.gate.reason());
    let _ = writeln!(
        out,
        "hypotheses: orthogonal {}, integrable {}, constant-curvature {}, kahler {}, nearly-kahler {}\n",
        yes(h.orthogonal),
        yes(h.integrable),
        yes(h.constant_curvature),
        yes(h.kahler),
        yes(h.nearly_kahler)
    );
}

fn summary_csv(out: &mut String, command: &str, rep: &SweepReport) {
    let _ = writeln!(out, "{}", header_line(command, rep));
    let _ = writeln!(out, "identity,scenario,class,count,max,mean,tol,outcome");
    for s in &rep.summaries {
        let _ = writeln!(
            out,
            "{},{},{},{},{:e},{:e},{:e},{}",
            s.identity,
            rep.scenario,
            s.class,
            s.count,
            s.max,
            s.mean,
            s.tol,
            serde_json::to_value(s.outcome).unwrap().as_str().unwrap()
        );
    }
}

fn summary_records(out: &mut String, command: &str, rep: &SweepReport) {
    let _ = writeln!(out, "{}", run_json(command, rep));
    for s in &rep.summaries {
        let _ = writeln!(out, "{}", summary_json(s, rep));
    }
    for s in &rep.skips {
        let _ = writeln!(out, "{}", skip_json(s, rep));
    }
}

pub fn verify_text(rep: &SweepReport) -> String {
    let mut out = String::new();
    preamble(&mut out, "verify", rep);
    summary_table(&mut out, rep, false);
    let _ = writeln!(out, "\n{}", tally(rep));
    out
}

pub fn obstruct_text(rep: &SweepReport) -> String {
    let mut out = String::new();
    preamble(&mut out, "obstruct", rep);
    summary_table(&mut out, rep, true);
    let _ = writeln!(out, "\n{}", tally(rep));
    out
}

pub fn summary(command: &str, rep: &SweepReport, format: crate::args::Format) -> String {
    use crate::args::Format;
    let mut out = String::new();
    match format {
        Format::Text if command == "obstruct" => return obstruct_text(rep),
        Format::Text => return verify_text(rep),
        Format::Csv => summary_csv(&mut out, command, rep),
        Format::Records => summary_records(&mut out, command, rep),
    }
    out
}

/// Residual rows for one or more sweeps, labelled by perturbation size when
/// given.
pub fn scan(reps: &[(Option<f64>, SweepReport)], format: crate::args::Format) -> String {
    use crate::args::Format;
    let mut out = String::new();
    let label = |rep: &SweepReport, eps: Option<f64>| match eps {
        Some(e) => format!("{}(eps={e})", rep.scenario),
        None => rep.scenario.to_string(),
    };
    match format {
        Format::Csv => {
            for (i, (eps, rep)) in reps.iter().enumerate() {
                let mut h = header_line("scan", rep);
                if let Some(e) = eps {
                    let _ = write!(h, " eps={e}");
                }
                let _ = writeln!(out, "{h}");
                if i == 0 {
                    let _ = writeln!(out, "{CSV_HEADER}");
                }
            }
            for (eps, rep) in reps {
                let l = label(rep, *eps);
                for r in &rep.records {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{:e},{}",
                        r.identity, l, r.point_index, r.frame_index, r.residual, r.class
                    );
                }
            }
        }
        Format::Records => {
            for (eps, rep) in reps {
                let mut run = run_json("scan", rep);
                if let Some(e) = eps {
                    run["eps"] = json!(e);
                }
                let _ = writeln!(out, "{run}");
                let l = label(rep, *eps);
                for r in &rep.records {
                    let _ = writeln!(out, "{}", record_json(r, &l, *eps));
                }
                for s in &rep.skips {
                    let _ = writeln!(out, "{}", skip_json(s, rep));
                }
            }
        }
        Format::Text => {
            for (eps, rep) in reps {
                let mut h = header_line("scan", rep);
                if let Some(e) = eps {
                    let _ = write!(h, " eps={e}");
                }
                let _ = writeln!(out, "{h}");
            }
            if reps.len() > 1 || reps[0].0.is_some() {
                eps_table(&mut out, reps);
            } else {
                let rep = &reps[0].1;
                let _ = writeln!(
                    out,
                    "{:<28} {:>5} {:>5} {:>13}  class",
                    "identity", "point", "frame", "residual"
                );
                for r in &rep.records {
                    let _ = writeln!(
                        out,
                        "{:<28} {:>5} {:>5} {:>13.6e}  {}",
                        r.identity, r.point_index, r.frame_index, r.residual, r.class
                    );
                }
                for s in &rep.skips {
                    let _ = writeln!(out, "# {} not evaluated: {}", s.identity, s.reason);
                }
            }
        }
    }
    out
}

/// Max residual per identity (columns) against perturbation size (rows).
fn eps_table(out: &mut String, reps: &[(Option<f64>, SweepReport)]) {
    let names: Vec<&str> = reps[0].1.summaries.iter().map(|s| s.identity).collect();
    let _ = write!(out, "{:>10}", "eps");
    for n in &names {
        let _ = write!(out, " {:>22}", n);
    }
    let _ = writeln!(out);
    for (eps, rep) in reps {
        let _ = write!(out, "{:>10}", eps.map(|e| e.to_string()).unwrap_or_default());
        for n in &names {
            match rep.summary(n) {
                Some(s) => {
                    let _ = write!(out, " {:>22.6e}", s.max);
                }
                None => {
                    let _ = write!(out, " {:>22}", "-");
                }
            }
        }
        let _ = writeln!(out);
    }
}
