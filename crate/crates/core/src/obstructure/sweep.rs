use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::registry::{identity, EvalContext, Hypotheses, Identity, IdentityKind, Requirement, IDENTITIES};
use super::ObstructureAt;
use crate::acx::{classify, Classification, CLASSIFY_TOL};
use crate::error::{Error, Result};
use crate::geometry::{metric_fd_residual, sample_point, sectional, Chart};
use crate::zoo::Scenario;

/// Relative sectional-curvature variance allowed before the
/// constant-curvature hypothesis is refused.
pub const GATE_TOL: f64 = 1e-6;
const GATE_PLANES: usize = 12;
const FD_STEP: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub samples: usize,
    /// Frames per point; frame 0 is the structured frame.
    pub frames: usize,
    pub seed: u64,
    /// Identity names; empty selects every registered identity.
    pub identities: Vec<String>,
    pub tol: BTreeMap<String, f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            samples: 20,
            frames: 4,
            seed: 0,
            identities: vec![],
            tol: BTreeMap::new(),
        }
    }
}

impl SweepConfig {
    /// Resolve names to identities, failing on the first unknown name or
    /// tolerance key.
    pub fn selection(&self) -> Result<Vec<&'static Identity>> {
        for k in self.tol.keys() {
            identity(k).ok_or_else(|| Error::UnknownIdentity(k.clone()))?;
        }
        if self.identities.is_empty() {
            return Ok(IDENTITIES.iter().collect());
        }
        let mut out: Vec<&'static Identity> = vec![];
        for name in &self.identities {
            let id = identity(name).ok_or_else(|| Error::UnknownIdentity(name.clone()))?;
            if !out.iter().any(|o| o.name == id.name) {
                out.push(id);
            }
        }
        Ok(out)
    }

    fn tol_for(&self, id: &Identity) -> f64 {
        self.tol.get(id.name).copied().unwrap_or(id.tol)
    }
}

/// Result of the sectional-curvature variance test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvatureGate {
    /// Curvature constant supplied by the scenario, if any.
    pub nominal: Option<f64>,
    /// Largest relative variance over sampled points.
    pub variance: f64,
    pub passed: bool,
}

impl CurvatureGate {
    pub fn reason(&self) -> String {
        match self.nominal {
            None => format!(
                "hypotheses unmet: curvature not constant (variance {:.3e})",
                self.variance
            ),
            Some(c) if !self.passed => format!(
                "hypotheses unmet: curvature not constant (variance {:.3e}); evaluated with nominal c = {c}",
                self.variance
            ),
            Some(c) => format!("constant curvature c = {c} (variance {:.3e})", self.variance),
        }
    }
}

/// Relative variance of sectional curvatures over random planes at `x`.
fn point_variance<R: Rng>(ob: &ObstructureAt, rng: &mut R) -> f64 {
    let n = ob.acs.dim();
    let g = ob.acs.metric();
    let mut ks = Vec::with_capacity(GATE_PLANES);
    while ks.len() < GATE_PLANES {
        let u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        if let Ok(k) = sectional(&ob.acs.geo.curv, g, &u, &v) {
            ks.push(k);
        }
    }
    let mean = ks.iter().sum::<f64>() / ks.len() as f64;
    let var = ks.iter().map(|k| (k - mean).powi(2)).sum::<f64>() / ks.len() as f64;
    var / mean.powi(2).max(1.0)
}

/// Gate over a set of per-point variances.
pub fn gate(sc: &Scenario, variances: &[f64]) -> CurvatureGate {
    let variance = variances.iter().fold(0.0f64, |m, v| m.max(*v));
    let nominal = sc.nominal_curvature();
    CurvatureGate {
        nominal,
        variance,
        passed: nominal.is_some() && sc.properties().constant_curvature.is_some() && variance <= GATE_TOL,
    }
}

/// `(X, Y, AX, AY)` with `X` unit and `Y` unit, orthogonal to `X` and `AX`.
pub fn structured_frame(ob: &ObstructureAt, x: &[f64], y: &[f64]) -> [Vec<f64>; 4] {
    let acs = &ob.acs;
    let e = acs.metric().orthonormalize(&[x.to_vec(), acs.apply(x), y.to_vec()]);
    let (x, y) = (e[0].clone(), e[2].clone());
    let (ax, ay) = (acs.apply(&x), acs.apply(&y));
    [x, y, ax, ay]
}

fn random_frame<R: Rng>(ob: &ObstructureAt, rng: &mut R) -> [Vec<f64>; 4] {
    let n = ob.acs.dim();
    loop {
        let vs: Vec<Vec<f64>> = (0..4)
            .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let e = ob.acs.metric().orthonormalize(&vs);
        if e.len() == 4 {
            return [e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()];
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Witness,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Witness => "witness",
        })
    }
}

/// One residual at one point and frame.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub identity: &'static str,
    pub scenario: &'static str,
    pub seed: u64,
    pub point_index: usize,
    pub frame_index: usize,
    pub point: Vec<f64>,
    pub residual: f64,
    /// "check" or "witness"
    pub class: &'static str,
    pub tol: f64,
    pub hypotheses: String,
}

/// An identity that could not be evaluated on this scenario.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Skip {
    pub identity: &'static str,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub identity: &'static str,
    pub class: &'static str,
    pub hypotheses: String,
    pub count: usize,
    pub max: f64,
    pub mean: f64,
    pub tol: f64,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub scenario: &'static str,
    pub descriptor: String,
    pub seed: u64,
    pub samples: usize,
    pub frames: usize,
    pub hypotheses: Hypotheses,
    pub gate: CurvatureGate,
    /// Pointwise classification of the structure at each sample.
    pub classification: Vec<Classification>,
    pub records: Vec<Record>,
    pub skips: Vec<Skip>,
    pub summaries: Vec<Summary>,
}

impl SweepReport {
    /// True when no check exceeded its tolerance.
    pub fn passed(&self) -> bool {
        self.summaries.iter().all(|s| s.outcome != Outcome::Fail)
    }

    pub fn summary(&self, name: &str) -> Option<&Summary> {
        self.summaries.iter().find(|s| s.identity == name)
    }
}

fn hypothesis_status(id: &Identity, h: &Hypotheses) -> String {
    if id.requires.is_empty() {
        return "none".into();
    }
    id.requires
        .iter()
        .map(|r| format!("{r}:{}", if h.holds(*r) { "yes" } else { "no" }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn skip_reason(id: &Identity, sc: &Scenario, gate: &CurvatureGate) -> String {
    if id.needs_curvature_constant() && gate.nominal.is_none() {
        gate.reason()
    } else if id.requires.contains(&Requirement::Orthogonal) && !sc.properties().orthogonal {
        "hypotheses unmet: structure not orthogonal, no fundamental form".into()
    } else {
        "not evaluable at the sampled points".into()
    }
}

struct PointData {
    x: Vec<f64>,
    ob: ObstructureAt,
    variance: f64,
    fd: Option<f64>,
    class: Classification,
    frames: Vec<[Vec<f64>; 4]>,
}

/// Evaluate the selected identities over seeded sample points and frames.
/// Output is ordered by point, then frame, then registry order.
pub fn sweep(sc: &Scenario, cfg: &SweepConfig) -> Result<SweepReport> {
    let selection = cfg.selection()?;
    let want_fd = selection.iter().any(|i| i.name == "ad_vs_fd");
    let frames = cfg.frames.max(1);

    let points: Vec<PointData> = (0..cfg.samples)
        .into_par_iter()
        .map(|k| -> Result<PointData> {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(k as u64);
            let x = sample_point(sc, &mut rng);
            let ob = ObstructureAt::at(sc, &x)?;
            let variance = point_variance(&ob, &mut rng);
            let fd = if want_fd {
                Some(metric_fd_residual(sc, &x, FD_STEP)?)
            } else {
                None
            };
            let n = sc.dim();
            let u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mut fs = vec![structured_frame(&ob, &u, &v)];
            while fs.len() < frames {
                fs.push(random_frame(&ob, &mut rng));
            }
            let class = classify(&ob.acs, CLASSIFY_TOL);
            Ok(PointData {
                x,
                ob,
                variance,
                fd,
                class,
                frames: fs,
            })
        })
        .collect::<Result<_>>()?;

    let variances: Vec<f64> = points.iter().map(|p| p.variance).collect();
    let gate = gate(sc, &variances);
    let classification = points.iter().map(|p| p.class).collect();
    let props = sc.properties();
    let hypotheses = Hypotheses {
        orthogonal: props.orthogonal,
        integrable: props.integrable,
        constant_curvature: gate.passed,
        kahler: props.kahler,
        nearly_kahler: props.nearly_kahler,
    };

    let per_point: Vec<Vec<Record>> = points
        .par_iter()
        .enumerate()
        .map(|(k, p)| {
            let ctx = EvalContext {
                ob: &p.ob,
                c: gate.nominal,
                fd_residual: p.fd,
                sectional_variance: p.variance,
            };
            let mut out = vec![];
            for (f, frame) in p.frames.iter().enumerate() {
                let fr: [&[f64]; 4] = [&frame[0], &frame[1], &frame[2], &frame[3]];
                for id in &selection {
                    if id.kind == IdentityKind::Pointwise && f > 0 {
                        continue;
                    }
                    if let Some(residual) = id.evaluate(&ctx, &fr) {
                        out.push(Record {
                            identity: id.name,
                            scenario: sc.name(),
                            seed: cfg.seed,
                            point_index: k,
                            frame_index: f,
                            point: p.x.clone(),
                            residual,
                            class: if id.is_check(&hypotheses) { "check" } else { "witness" },
                            tol: cfg.tol_for(id),
                            hypotheses: hypothesis_status(id, &hypotheses),
                        });
                    }
                }
            }
            out
        })
        .collect();
    let records: Vec<Record> = per_point.into_iter().flatten().collect();

    let mut skips = vec![];
    let mut summaries = vec![];
    for id in &selection {
        let rs: Vec<f64> = records
            .iter()
            .filter(|r| r.identity == id.name)
            .map(|r| r.residual)
            .collect();
        if rs.is_empty() {
            skips.push(Skip {
                identity: id.name,
                reason: skip_reason(id, sc, &gate),
            });
            continue;
        }
        let max = if rs.iter().any(|v| v.is_nan()) {
            f64::NAN
        } else {
            rs.iter().fold(0.0f64, |m, v| m.max(v.abs()))
        };
        let mean = rs.iter().map(|v| v.abs()).sum::<f64>() / rs.len() as f64;
        let tol = cfg.tol_for(id);
        let check = id.is_check(&hypotheses);
        let outcome = match (check, max <= tol) {
            (false, _) => Outcome::Witness,
            (true, true) => Outcome::Pass,
            (true, false) => Outcome::Fail,
        };
        summaries.push(Summary {
            identity: id.name,
            class: if check { "check" } else { "witness" },
            hypotheses: hypothesis_status(id, &hypotheses),
            count: rs.len(),
            max,
            mean,
            tol,
            outcome,
        });
    }

    Ok(SweepReport {
        scenario: sc.name(),
        descriptor: sc.descriptor().to_toml(),
        seed: cfg.seed,
        samples: cfg.samples,
        frames,
        hypotheses,
        gate,
        classification,
        records,
        skips,
        summaries,
    })
}
