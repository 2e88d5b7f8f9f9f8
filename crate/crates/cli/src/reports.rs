//! Input schemas, the report envelope, and the fixed-format text renderer.
//! Rendering is deterministic and byte-identical across runs on identical
//! inputs; numbers carry 12 significant digits.

use pickfactor::beurling::FactorizationT1;
use pickfactor::cnp::{CnpFactorization, CnpSpace};
use pickfactor::fock::FreeVector;
use pickfactor::mult::ColRowReport;
use pickfactor::symfock::SymVector;
use pickfactor::weakprod::FactorizationT2;
use serde::{Deserialize, Serialize};

#[derive(Deserialize)]
pub struct SequenceInput {
    pub functions: Vec<SymVector>,
}

#[derive(Deserialize)]
pub struct PairEntry {
    pub f: SymVector,
    pub g: SymVector,
}

#[derive(Deserialize)]
pub struct PairsInput {
    pub pairs: Vec<PairEntry>,
}

#[derive(Deserialize)]
pub struct SampledInput {
    pub coeffs: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
pub struct CnpFactorInput {
    pub space: CnpSpace,
    pub functions: Vec<SampledInput>,
}

#[derive(Serialize, Default)]
pub struct ConfigEcho {
    pub d: u32,
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dm: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dc: Option<u32>,
    pub tol: f64,
}

#[derive(Serialize)]
pub struct LiftReport {
    pub input_norm: f64,
    pub fock_norm: f64,
    pub roundtrip_error: f64,
    pub norm_rel_error: f64,
    pub lift: FreeVector,
}

#[derive(Serialize)]
pub struct KernelReport {
    pub size: usize,
    pub gram: Vec<Vec<[f64; 2]>>,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub psd: bool,
}

#[derive(Serialize)]
pub struct CnpFactorReport {
    pub labels: Vec<String>,
    /// Values of each multiplier at the sample points, as [re, im] pairs.
    pub phi_values: Vec<Vec<[f64; 2]>>,
    pub f_values: Vec<[f64; 2]>,
    pub diagnostics: pickfactor::beurling::T1Diagnostics,
    pub max_pointwise_error: f64,
    pub extension_bounds: Vec<f64>,
}

impl CnpFactorReport {
    pub fn from_result(space: &CnpSpace, out: CnpFactorization) -> Self {
        let labels = space.points().iter().map(|p| p.label.clone()).collect();
        let phi_values = out
            .phi
            .iter()
            .map(|s| s.values().iter().map(|v| [v.re, v.im]).collect())
            .collect();
        let f_values = out.big_f.values().iter().map(|v| [v.re, v.im]).collect();
        CnpFactorReport {
            labels,
            phi_values,
            f_values,
            diagnostics: out.diagnostics,
            max_pointwise_error: out.max_pointwise_error,
            extension_bounds: out.extension_bounds,
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Report {
    Lift(LiftReport),
    FactorSeq(FactorizationT1),
    FactorWp(FactorizationT2),
    Colrow(ColRowReport),
    Kernel(KernelReport),
    CnpFactor(CnpFactorReport),
}

#[derive(Serialize)]
pub struct Envelope {
    pub command: String,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub report: Report,
    /// Point-evaluation spot checks, when the command runs them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spot_check: Option<pickfactor::weakprod::VerifyReport>,
}

impl Envelope {
    pub fn new(command: &str, config: ConfigEcho, report: Report) -> Self {
        Envelope { command: command.into(), config, note: None, report, spot_check: None }
    }

    pub fn with_note(command: &str, config: ConfigEcho, report: Report, note: &str) -> Self {
        Envelope { command: command.into(), config, note: Some(note.into()), report, spot_check: None }
    }
}

fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn line(out: &mut String, key: &str, value: String) {
    out.push_str(&format!("{key:<24} {value}\n"));
}

/// Fixed-format summary of a report envelope.
pub fn render(envelope: &Envelope) -> String {
    let mut out = String::new();
    line(&mut out, "command", envelope.command.clone());
    line(&mut out, "d", envelope.config.d.to_string());
    line(&mut out, "degree", envelope.config.degree.to_string());
    if let Some(dm) = envelope.config.dm {
        line(&mut out, "dm", dm.to_string());
    }
    if let Some(dc) = envelope.config.dc {
        line(&mut out, "dc", dc.to_string());
    }
    line(&mut out, "tol", sig12(envelope.config.tol));
    match &envelope.report {
        Report::Lift(r) => {
            line(&mut out, "input_norm", sig12(r.input_norm));
            line(&mut out, "fock_norm", sig12(r.fock_norm));
            line(&mut out, "roundtrip_error", sig12(r.roundtrip_error));
            line(&mut out, "norm_rel_error", sig12(r.norm_rel_error));
            line(&mut out, "lift_terms", r.lift.support_len().to_string());
        }
        Report::FactorSeq(r) => {
            line(&mut out, "column_norm", sig12(r.diagnostics.column_norm));
            line(&mut out, "F_norm_sq", sig12(r.diagnostics.f_norm_sq));
            line(&mut out, "input_norm_sq", sig12(r.diagnostics.input_norm_sq));
            line(&mut out, "max_residual", sig12(r.diagnostics.max_residual));
            line(&mut out, "wandering_gap", sig12(r.diagnostics.wandering_gap));
            line(&mut out, "cyclic_residual", sig12(r.diagnostics.cyclic_residual));
        }
        Report::FactorWp(r) => {
            line(&mut out, "residual", sig12(r.certificates.residual));
            line(&mut out, "product_norm", sig12(r.certificates.product_norm));
            line(&mut out, "rep_cost", sig12(r.certificates.rep_cost));
            out.push_str(&format!(
                "product_norm / rep_cost = {}\n",
                sig12(r.certificates.ratio)
            ));
            line(&mut out, "m_norm_bound", sig12(r.certificates.m_norm_bound));
        }
        Report::Colrow(r) => {
            line(&mut out, "column_norm", sig12(r.column_norm));
            line(&mut out, "row_norm", sig12(r.row_norm));
            line(&mut out, "ratio", sig12(r.ratio));
        }
        Report::Kernel(r) => {
            line(&mut out, "points", r.size.to_string());
            line(&mut out, "min_eigenvalue", sig12(r.min_eigenvalue));
            line(&mut out, "max_eigenvalue", sig12(r.max_eigenvalue));
            line(&mut out, "psd", r.psd.to_string());
        }
        Report::CnpFactor(r) => {
            line(&mut out, "points", r.labels.len().to_string());
            line(&mut out, "functions", r.phi_values.len().to_string());
            line(&mut out, "column_norm", sig12(r.diagnostics.column_norm));
            line(&mut out, "F_norm_sq", sig12(r.diagnostics.f_norm_sq));
            line(&mut out, "max_residual", sig12(r.diagnostics.max_residual));
            line(&mut out, "max_pointwise_error", sig12(r.max_pointwise_error));
        }
    }
    if let Some(spot) = &envelope.spot_check {
        line(&mut out, "spot_residual", sig12(spot.residual));
        line(&mut out, "spot_max_point_error", sig12(spot.max_point_error));
    }
    if let Some(note) = &envelope.note {
        line(&mut out, "note", note.clone());
    }
    out
}
