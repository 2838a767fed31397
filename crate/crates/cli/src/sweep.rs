//! Grid evaluation and CSV output.
//!
//! Each grid point is bound to effective channel coefficients, evaluated
//! through both the closed forms and the numeric engine, and recorded as
//! one CSV row. Unphysical points are recorded with a rejection note, never
//! dropped, so row count always equals the grid size. Points evaluate
//! concurrently; output order stays the deterministic grid order.

use crate::config::{Param, SweepConfig, ALL_PARAMS};
use qfi_core::channels::{ChannelKind, LiteralCoeffs, SgadParams, ThermalCoeffs};
use qfi_core::closed_form::{self, ClosedFormInput, ThetaSgadVariant};
use qfi_core::family::LiteralFamilySpec;
use qfi_core::qfi::{qfi_sld, ParamLabel};
use qfi_core::Error as CoreError;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::io::Write;

/// Fixed CSV header.
pub const CSV_HEADER: &str = "channel,theta,phi,T_C,T_H,r,Phi,Q,gamma0,omega,lambda,mu,v,qfi_theta_closed,qfi_theta_numeric,qfi_phi_closed,qfi_phi_numeric,status,note";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    RejectedUnphysical,
    DegenerateSkipped,
}

impl RowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::RejectedUnphysical => "rejected_unphysical",
            RowStatus::DegenerateSkipped => "degenerate_skipped",
        }
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub channel: ChannelKind,
    pub params: BTreeMap<Param, f64>,
    pub lambda: f64,
    pub mu: f64,
    pub v: f64,
    pub qfi_theta_closed: f64,
    pub qfi_theta_numeric: f64,
    pub qfi_phi_closed: f64,
    pub qfi_phi_numeric: f64,
    pub status: RowStatus,
    pub note: String,
}

/// Real formatter: 12 significant digits, `nan`/`inf` spelled out.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{x:.11e}")
    }
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        let mut fields: Vec<String> = Vec::with_capacity(19);
        fields.push(self.channel.to_string());
        for p in ALL_PARAMS.iter().take(9) {
            fields.push(fmt_real(self.params[p]));
        }
        for x in [self.lambda, self.mu, self.v] {
            fields.push(fmt_real(x));
        }
        for x in [
            self.qfi_theta_closed,
            self.qfi_theta_numeric,
            self.qfi_phi_closed,
            self.qfi_phi_numeric,
        ] {
            fields.push(fmt_real(x));
        }
        fields.push(self.status.as_str().to_string());
        fields.push(self.note.replace(',', ";"));
        fields.join(",")
    }

    /// Aligned human-readable block for `eval`.
    pub fn aligned_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("{:<18} {}\n", "channel", self.channel));
        for p in ALL_PARAMS.iter().take(9) {
            s.push_str(&format!("{:<18} {}\n", p.name(), fmt_real(self.params[p])));
        }
        s.push_str(&format!("{:<18} {}\n", "lambda (effective)", fmt_real(self.lambda)));
        s.push_str(&format!("{:<18} {}\n", "mu (effective)", fmt_real(self.mu)));
        s.push_str(&format!("{:<18} {}\n", "v (effective)", fmt_real(self.v)));
        s.push_str(&format!("{:<18} {}\n", "qfi_theta_closed", fmt_real(self.qfi_theta_closed)));
        s.push_str(&format!("{:<18} {}\n", "qfi_theta_numeric", fmt_real(self.qfi_theta_numeric)));
        s.push_str(&format!("{:<18} {}\n", "qfi_phi_closed", fmt_real(self.qfi_phi_closed)));
        s.push_str(&format!("{:<18} {}\n", "qfi_phi_numeric", fmt_real(self.qfi_phi_numeric)));
        s.push_str(&format!("{:<18} {}\n", "status", self.status.as_str()));
        if !self.note.is_empty() {
            s.push_str(&format!("{:<18} {}\n", "note", self.note));
        }
        s
    }
}

/// Effective channel coefficients for one grid point.
struct Binding {
    lambda: f64,
    mu: f64,
    v: f64,
    q: f64,
    squeezing_angle: f64,
}

fn unphysical_note(e: &CoreError) -> String {
    match e {
        CoreError::Unphysical { name, value } => format!("{name}={value:.6e}"),
        CoreError::ParamDomain { term, .. } => format!("domain:{term}"),
        other => other.to_string(),
    }
}

/// Bind (λ, μ, v, Q) from the grid point. On rejection, the raw coefficient
/// values (when computable) are still reported so the CSV records what was
/// rejected.
fn bind_channel(
    channel: ChannelKind,
    point: &BTreeMap<Param, f64>,
) -> Result<Binding, (f64, f64, f64, String)> {
    let q = point[&Param::Coupling];
    match channel {
        ChannelKind::Ad => Ok(Binding {
            lambda: point[&Param::Lambda],
            mu: 0.0,
            v: point[&Param::Lambda],
            q: 1.0,
            squeezing_angle: 0.0,
        }),
        ChannelKind::Gad | ChannelKind::Sgad => {
            let r = if channel == ChannelKind::Gad {
                0.0
            } else {
                point[&Param::SqueezeR]
            };
            let angle = if channel == ChannelKind::Gad {
                0.0
            } else {
                point[&Param::SqueezeAngle]
            };
            let params = SgadParams::new(
                q,
                r,
                angle,
                point[&Param::Gamma0],
                point[&Param::Omega],
                point[&Param::ChannelTemp],
            )
            .map_err(|e| (f64::NAN, f64::NAN, f64::NAN, unphysical_note(&e)))?;
            let raw = match ThermalCoeffs::compute(&params) {
                Ok(c) => c,
                Err(e) => return Err((f64::NAN, f64::NAN, f64::NAN, unphysical_note(&e))),
            };
            match ThermalCoeffs::validated(&params) {
                Ok(c) => {
                    let (mu, v) = if channel == ChannelKind::Gad {
                        // Operator-level substitution v -> lambda, mu -> 0.
                        (0.0, c.lambda)
                    } else {
                        (c.mu, c.v)
                    };
                    Ok(Binding {
                        lambda: c.lambda,
                        mu,
                        v,
                        q,
                        squeezing_angle: angle,
                    })
                }
                Err(e) => Err((raw.lambda, raw.mu, raw.v, unphysical_note(&e))),
            }
        }
    }
}

/// Evaluate one grid point into a row.
pub fn evaluate_point(
    channel: ChannelKind,
    point: &BTreeMap<Param, f64>,
    fd_step: f64,
    support_eps: f64,
    variant: ThetaSgadVariant,
) -> SweepRow {
    let mut row = SweepRow {
        channel,
        params: point.clone(),
        lambda: f64::NAN,
        mu: f64::NAN,
        v: f64::NAN,
        qfi_theta_closed: f64::NAN,
        qfi_theta_numeric: f64::NAN,
        qfi_phi_closed: f64::NAN,
        qfi_phi_numeric: f64::NAN,
        status: RowStatus::Ok,
        note: String::new(),
    };
    // For the zero-temperature channel Q is pinned to 1 in the output.
    if channel == ChannelKind::Ad {
        row.params.insert(Param::Coupling, 1.0);
        row.params.insert(Param::SqueezeR, 0.0);
        row.params.insert(Param::SqueezeAngle, 0.0);
    }
    if channel == ChannelKind::Gad {
        row.params.insert(Param::SqueezeR, 0.0);
        row.params.insert(Param::SqueezeAngle, 0.0);
    }

    let binding = match bind_channel(channel, &row.params) {
        Ok(b) => b,
        Err((lambda, mu, v, note)) => {
            row.lambda = lambda;
            row.mu = mu;
            row.v = v;
            row.status = RowStatus::RejectedUnphysical;
            row.note = note;
            return row;
        }
    };
    row.lambda = binding.lambda;
    row.mu = binding.mu;
    row.v = binding.v;

    let theta = row.params[&Param::Theta];
    let phi = row.params[&Param::Phi];
    let omega = row.params[&Param::Omega];
    let hawking = row.params[&Param::HawkingTemp];

    // Closed forms. The μ entering the printed expressions is the bath μ
    // even for the thermal channel (where it is zero by construction).
    let input = ClosedFormInput {
        theta,
        phi,
        w_over_t: omega / hawking,
        lambda: binding.lambda,
        mu: binding.mu,
        q: binding.q,
        squeezing_angle: binding.squeezing_angle,
    };
    let closed_theta = match channel {
        ChannelKind::Ad => closed_form::theta_ad(&input),
        ChannelKind::Gad => closed_form::theta_gad(&input),
        ChannelKind::Sgad => closed_form::theta_sgad_variant(&input, variant),
    };
    let closed_phi = match channel {
        ChannelKind::Ad => closed_form::phi_ad(&input),
        ChannelKind::Gad => closed_form::phi_gad(&input),
        ChannelKind::Sgad => closed_form::phi_sgad(&input),
    };

    // Numeric engine on the literal family.
    let numeric = LiteralCoeffs::new(
        binding.lambda,
        binding.mu,
        binding.q,
        binding.squeezing_angle,
    )
    .map(|coeffs| LiteralFamilySpec {
        theta,
        phi,
        omega,
        hawking_temp: hawking,
        coeffs,
    });

    let mut failures: Vec<String> = Vec::new();
    match closed_theta {
        Ok(v) => row.qfi_theta_closed = v,
        Err(e) => failures.push(format!("theta_closed: {e}")),
    }
    match closed_phi {
        Ok(v) => row.qfi_phi_closed = v,
        Err(e) => failures.push(format!("phi_closed: {e}")),
    }
    match &numeric {
        Ok(spec) => {
            match qfi_sld(&spec.family(ParamLabel::Theta), theta, fd_step, support_eps) {
                Ok(r) => row.qfi_theta_numeric = r.value,
                Err(e) => failures.push(format!("theta_numeric: {e}")),
            }
            match qfi_sld(&spec.family(ParamLabel::Phi), phi, fd_step, support_eps) {
                Ok(r) => row.qfi_phi_numeric = r.value,
                Err(e) => failures.push(format!("phi_numeric: {e}")),
            }
        }
        Err(e) => failures.push(format!("family: {e}")),
    }

    if !failures.is_empty() {
        row.status = RowStatus::DegenerateSkipped;
        row.note = failures.join("; ");
    }
    row
}

/// Evaluate the whole grid; concurrent, order-preserving.
pub fn run_sweep(cfg: &SweepConfig) -> Vec<SweepRow> {
    let points = cfg.grid_points();
    let rows: Vec<SweepRow> = points
        .par_iter()
        .map(|p| evaluate_point(cfg.channel, p, cfg.fd_step, cfg.support_eps, cfg.variant))
        .collect();
    assert_eq!(rows.len(), cfg.grid_len(), "row count equals grid size");
    rows
}

/// Write header and rows to any sink.
pub fn write_csv<W: Write>(mut w: W, rows: &[SweepRow]) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(w, "{}", row.csv_line())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::VaryAxis;

    fn point_with(channel: ChannelKind, over: &[(Param, f64)]) -> BTreeMap<Param, f64> {
        let mut m: BTreeMap<Param, f64> =
            ALL_PARAMS.iter().map(|&p| (p, p.default_value())).collect();
        for &(p, v) in over {
            m.insert(p, v);
        }
        let _ = channel;
        m
    }

    #[test]
    fn fmt_real_is_stable() {
        assert_eq!(fmt_real(f64::NAN), "nan");
        assert_eq!(fmt_real(0.0), "0.00000000000e0");
        assert_eq!(fmt_real(0.8446375965030364), "8.44637596503e-1");
    }

    #[test]
    fn ad_point_at_identity_matches_reference() {
        let p = point_with(
            ChannelKind::Ad,
            &[
                (Param::Theta, std::f64::consts::FRAC_PI_4),
                (Param::Lambda, 0.0),
            ],
        );
        let row = evaluate_point(
            ChannelKind::Ad,
            &p,
            qfi_core::qfi::DEFAULT_FD_STEP,
            qfi_core::qfi::DEFAULT_SUPPORT_EPS,
            ThetaSgadVariant::Regrouped,
        );
        assert_eq!(row.status, RowStatus::Ok);
        assert!((row.qfi_phi_closed - 0.8446375965030364).abs() < 1e-12);
        assert!((row.qfi_phi_numeric - 0.8446375965030364).abs() < 1e-8);
        assert_eq!(row.params[&Param::Coupling], 1.0);
    }

    #[test]
    fn sgad_default_point_is_rejected_with_coefficients_recorded() {
        // The default bath point (Q=0.5, γ₀=1, ω=1, T_C=1, r=0) has
        // λ ≈ 1.294: rejected but recorded.
        let p = point_with(ChannelKind::Sgad, &[]);
        let row = evaluate_point(
            ChannelKind::Sgad,
            &p,
            1e-4,
            1e-10,
            ThetaSgadVariant::Regrouped,
        );
        assert_eq!(row.status, RowStatus::RejectedUnphysical);
        assert!(row.note.starts_with("lambda="));
        assert!((row.lambda - 1.294163623180819).abs() < 1e-9);
        assert!(row.qfi_theta_numeric.is_nan());
    }

    #[test]
    fn sgad_physical_point_is_ok() {
        let p = point_with(
            ChannelKind::Sgad,
            &[
                (Param::Coupling, 0.6),
                (Param::SqueezeR, 0.3),
                (Param::Gamma0, 0.4),
                (Param::ChannelTemp, 1.2),
                (Param::Theta, 0.7),
            ],
        );
        let row = evaluate_point(
            ChannelKind::Sgad,
            &p,
            1e-4,
            1e-10,
            ThetaSgadVariant::Regrouped,
        );
        assert_eq!(row.status, RowStatus::Ok, "note: {}", row.note);
        assert!(row.qfi_theta_closed.is_finite());
        assert!(row.qfi_theta_numeric.is_finite());
        assert!(row.qfi_phi_numeric >= 0.0);
    }

    #[test]
    fn eval_endpoint_theta_half_pi_kills_phase_qfi() {
        let p = point_with(
            ChannelKind::Ad,
            &[
                (Param::Theta, std::f64::consts::FRAC_PI_2),
                (Param::Lambda, 0.3),
            ],
        );
        let row = evaluate_point(ChannelKind::Ad, &p, 1e-4, 1e-10, ThetaSgadVariant::Regrouped);
        assert_eq!(row.status, RowStatus::Ok);
        assert!(row.qfi_phi_closed.abs() < 1e-12);
        assert!(row.qfi_phi_numeric.abs() < 1e-8);
    }

    #[test]
    fn sweep_rows_match_grid_and_are_deterministic() {
        let mut cfg = SweepConfig::default();
        cfg.channel = ChannelKind::Ad;
        cfg.vary.push(VaryAxis {
            param: Param::Lambda,
            start: 0.0,
            stop: 0.8,
            count: 3,
        });
        cfg.vary.push(VaryAxis {
            param: Param::HawkingTemp,
            start: 0.5,
            stop: 2.0,
            count: 2,
        });
        cfg.validate().unwrap();
        let rows_a = run_sweep(&cfg);
        let rows_b = run_sweep(&cfg);
        assert_eq!(rows_a.len(), 6);
        let mut buf_a = Vec::new();
        let mut buf_b = Vec::new();
        write_csv(&mut buf_a, &rows_a).unwrap();
        write_csv(&mut buf_b, &rows_b).unwrap();
        assert_eq!(buf_a, buf_b, "byte-identical CSV across runs");
        assert!(String::from_utf8(buf_a).unwrap().starts_with(CSV_HEADER));
    }
}
