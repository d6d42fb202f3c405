//! Executes a resolved job and assembles its document.

use casimir_wedge::green::{green_partial_sum, PolarPoint};
use casimir_wedge::wedge::{
    limit_table, tphiphi_closed, tphiphi_renormalized, torque_density, PhysicalConstants,
    StressMethod, WedgeGeometry,
};
use serde_json::{json, Value};

use crate::config::{Job, Method, Task, Units};
use crate::error::trace_json;
use crate::output::{Cell, Document, Table};
use crate::verify;
use crate::{CliError, VERSION};

/// Units string for stress in SI mode.
pub const SI_STRESS_UNITS: &str = "J/m^3 per unit solid measure";
/// Units string for torque density in SI mode.
pub const SI_TORQUE_UNITS: &str = "N";
/// Units string for anything reported in natural units.
pub const NATURAL_UNITS: &str = "natural";
/// Units string for the normalized `limit-table` column.
pub const NORMALIZED_UNITS: &str = "hbar c / d^4";

/// A finished run.
#[derive(Clone, Debug)]
pub struct Outcome {
    /// The document to emit.
    pub document: Document,
    /// Exit status: 0, or 2 when a verification check failed.
    pub status: u8,
}

/// Runs `job`.
pub fn execute(job: &Job) -> Result<Outcome, CliError> {
    let (results, diagnostics, table, status) = match job.task {
        Task::Stress { beta, rho, method } => stress(job, beta, rho, method)?,
        Task::Torque { beta, rho } => torque(job, beta, rho)?,
        Task::LimitTable { d, beta_start, beta_end, steps } => {
            limit(d, beta_start, beta_end, steps)?
        }
        Task::Green { beta, phi, phi_prime, rho, rho_prime, lambda, m_max } => {
            green(job, beta, phi, phi_prime, rho, rho_prime, lambda, m_max)?
        }
        Task::Verify { suite } => {
            let report = verify::run(suite, job.common.tol);
            let status = if report.all_passed() { 0 } else { 2 };
            (report.results(), json!({}), report.table(), status)
        }
    };
    Ok(Outcome {
        document: Document {
            inputs: job.echo(),
            results,
            diagnostics,
            version: VERSION,
            table,
        },
        status,
    })
}

type Parts = (Value, Value, Table, u8);

fn constants(units: Units) -> PhysicalConstants {
    match units {
        Units::Natural => PhysicalConstants::natural(),
        Units::Si => PhysicalConstants::si(),
    }
}

fn stress(job: &Job, beta: f64, rho: f64, method: Method) -> Result<Parts, CliError> {
    let geom = WedgeGeometry::new(beta, rho)?;
    let consts = constants(job.common.units);
    let (value, error_estimate, tag, diagnostics) = match method {
        Method::Closed => {
            let r = tphiphi_closed(&geom, &consts);
            (r.value, r.error_estimate, r.method, json!({}))
        }
        Method::Series => {
            let (r, trace) = tphiphi_renormalized(&geom, job.common.tol)?;
            let h = consts.hbar_c();
            (
                h * r.value,
                h * r.error_estimate,
                r.method,
                json!({ "extrapolation": trace_json(&trace) }),
            )
        }
    };
    let units = match job.common.units {
        Units::Natural => NATURAL_UNITS,
        Units::Si => SI_STRESS_UNITS,
    };
    let results = json!({
        "value": value,
        "error_estimate": error_estimate,
        "method": tag.as_str(),
        "units": units,
    });
    let table = Table {
        header: vec!["beta", "rho", "value", "error_estimate", "method", "units"],
        rows: vec![vec![
            Cell::Num(beta),
            Cell::Num(rho),
            Cell::Num(value),
            Cell::Num(error_estimate),
            Cell::Text(tag.as_str().into()),
            Cell::Text(units.into()),
        ]],
    };
    Ok((results, diagnostics, table, 0))
}

fn torque(job: &Job, beta: f64, rho: f64) -> Result<Parts, CliError> {
    let geom = WedgeGeometry::new(beta, rho)?;
    let r = torque_density(&geom, &constants(job.common.units));
    let caveat = r.at_flat_angle();
    let units = match job.common.units {
        Units::Natural => NATURAL_UNITS,
        Units::Si => SI_TORQUE_UNITS,
    };
    let method = StressMethod::ClosedForm.as_str();
    let results = json!({
        "value": r.value,
        "error_estimate": 0.0,
        "method": method,
        "units": units,
    });
    let mut diagnostics = json!({ "flat_angle_caveat": caveat });
    if caveat {
        diagnostics["note"] = json!(
            "beta = pi: the stress vanishes identically here, but the torque formula is nonzero and is reported as written"
        );
    }
    let table = Table {
        header: vec![
            "beta",
            "rho",
            "value",
            "error_estimate",
            "method",
            "units",
            "flat_angle_caveat",
        ],
        rows: vec![vec![
            Cell::Num(beta),
            Cell::Num(rho),
            Cell::Num(r.value),
            Cell::Num(0.0),
            Cell::Text(method.into()),
            Cell::Text(units.into()),
            Cell::Bool(caveat),
        ]],
    };
    Ok((results, diagnostics, table, 0))
}

fn limit(d: f64, beta_start: f64, beta_end: f64, steps: usize) -> Result<Parts, CliError> {
    let rows = limit_table(d, beta_start, beta_end, steps)?;
    let last = rows[rows.len() - 1];
    let results = json!({
        "rows": rows
            .iter()
            .map(|r| json!({
                "beta": r.beta,
                "rho": r.rho,
                "normalized_stress": r.normalized_stress,
                "deviation": r.deviation,
            }))
            .collect::<Vec<_>>(),
        "value": last.normalized_stress,
        "error_estimate": 0.0,
        "method": StressMethod::ClosedForm.as_str(),
        "units": NORMALIZED_UNITS,
    });
    let table = Table {
        header: vec!["beta", "rho", "normalized_stress", "deviation"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Num(r.beta),
                    Cell::Num(r.rho),
                    Cell::Num(r.normalized_stress),
                    Cell::Num(r.deviation),
                ]
            })
            .collect(),
    };
    Ok((results, json!({}), table, 0))
}

#[allow(clippy::too_many_arguments)]
fn green(
    job: &Job,
    beta: f64,
    phi: f64,
    phi_prime: f64,
    rho: f64,
    rho_prime: f64,
    lambda: f64,
    m_max: u64,
) -> Result<Parts, CliError> {
    WedgeGeometry::new(beta, rho)?;
    // the library reports both angles as `phi`
    if !(phi_prime >= 0.0 && phi_prime <= beta) {
        return Err(CliError::invalid(
            "phi-prime",
            format!("{phi_prime} is not an angle in [0, beta]"),
        ));
    }
    let point = PolarPoint { rho, phi };
    let source = PolarPoint {
        rho: rho_prime,
        phi: phi_prime,
    };
    let sum = green_partial_sum(beta, point, source, lambda, m_max)?;
    let previous = if m_max > 1 {
        green_partial_sum(beta, point, source, lambda, m_max - 1)?.value
    } else {
        0.0
    };
    let error_estimate = (sum.value - previous).abs();
    let results = json!({
        "value": sum.value,
        "error_estimate": error_estimate,
        "method": "mode_sum",
        "units": NATURAL_UNITS,
        "coincident": sum.coincident,
    });
    let mut diagnostics = json!({ "coincident": sum.coincident });
    if sum.coincident {
        diagnostics["warning"] = json!(
            "coincident points: the mode sum diverges and the partial sum does not converge in m_max"
        );
    }
    if job.common.units == Units::Si {
        diagnostics["note"] = json!("the Green function is always reported in natural units");
    }
    let table = Table {
        header: vec![
            "beta",
            "phi",
            "phi_prime",
            "rho",
            "rho_prime",
            "lambda",
            "m_max",
            "value",
            "error_estimate",
            "coincident",
        ],
        rows: vec![vec![
            Cell::Num(beta),
            Cell::Num(phi),
            Cell::Num(phi_prime),
            Cell::Num(rho),
            Cell::Num(rho_prime),
            Cell::Num(lambda),
            Cell::Int(m_max),
            Cell::Num(sum.value),
            Cell::Num(error_estimate),
            Cell::Bool(sum.coincident),
        ]],
    };
    Ok((results, diagnostics, table, 0))
}
