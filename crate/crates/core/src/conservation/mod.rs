//! Conservation laws: the catalog of densities and multipliers, their exact
//! verification in jet space, and conserved-quantity evaluation.

mod catalog;
mod homotopy;
pub mod quantities;
mod residual;

pub use catalog::{
    catalog, catalog_all, entry, links, literal,
    CatalogEntry, EntryKind, Link,
};
pub use homotopy::{equivalent, homotopy_density, homotopy_raw, link_factor, reduce_order, variational_link};
pub use residual::{
    conservation_residual, determining_residual, flux_from_complex_density, flux_from_density, helmholtz_residuals, is_variational,
    HelmholtzOrder,
};

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::jet::JetError;
use crate::model::{self, Coefficients};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConservationError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("density is not conserved: {0}")]
    NotConserved(String),
    #[error("multiplier is not variational: {0}")]
    NotVariational(String),
    #[error("multiplier of order {order} does not fit the order-{system} Helmholtz system")]
    OrderMismatch { order: usize, system: usize },
    #[error("entry {0} has no displayed flux")]
    NoFlux(&'static str),
    #[error("unknown catalog entry {0}")]
    UnknownEntry(String),
}

/// One exact identity check; `residual_terms` counts the terms of the residual
/// (zero exactly when the identity holds).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
    pub residual_terms: usize,
}

impl Check {
    fn of(name: &'static str, terms: usize) -> Self {
        Self { name, holds: terms == 0, residual_terms: terms }
    }
}

/// Named checks for one catalog entry.
pub fn verify_entry(e: &CatalogEntry, coeffs: &Coefficients) -> Result<Vec<Check>, ConservationError> {
    let mut checks = Vec::new();
    match e.kind {
        EntryKind::Density => {
            if let Some(x) = &e.flux {
                checks.push(Check::of("conservation_residual_zero", conservation_residual(&e.body, x, coeffs)?.term_count()));
            } else {
                let terms = match flux_from_complex_density(&e.body, coeffs) {
                    Ok(x) => conservation_residual(&e.body, &x, coeffs)?.term_count(),
                    Err(ConservationError::NotConserved(_)) => {
                        let (p, q) = model::total_t_derivative(&e.body.re, coeffs)?.euler_pair()?;
                        (p.term_count() + q.term_count()).max(1)
                    }
                    Err(err) => return Err(err),
                };
                checks.push(Check::of("reconstructed_flux_zero_residual", terms));
            }
        }
        EntryKind::Multiplier => {
            checks.push(Check::of("determining_residual_zero", determining_residual(&e.body, coeffs)?.term_count()));
            let order = if e.helmholtz_order == Some(4) { HelmholtzOrder::Four } else { HelmholtzOrder::Two };
            let terms = helmholtz_residuals(&e.body, order)?.iter().map(|(_, r)| r.term_count()).sum();
            checks.push(Check::of("helmholtz_zero", terms));
            let round_trip = match homotopy_density(&e.body) {
                Ok(t) => (&variational_link(&t)? - &e.body).term_count(),
                Err(ConservationError::NotVariational(_)) => 1,
                Err(err) => return Err(err),
            };
            checks.push(Check::of("homotopy_round_trip", round_trip));
        }
    }
    Ok(checks)
}

/// Which part of the catalog a symbolic verification covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// Multipliers of the first-order densities.
    Multipliers,
    /// Densities with displayed fluxes.
    Densities,
    /// Higher-order densities and their multipliers.
    Higher,
    All,
}

impl Scope {
    pub fn includes(self, e: &CatalogEntry) -> bool {
        let higher = e.id.starts_with('H') || matches!(e.id, "M9" | "M10" | "M11");
        match self {
            Scope::All => true,
            Scope::Higher => higher,
            Scope::Multipliers => e.kind == EntryKind::Multiplier && !higher,
            Scope::Densities => e.kind == EntryKind::Density && !higher,
        }
    }
}

impl std::str::FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "multipliers" => Ok(Scope::Multipliers),
            "densities" => Ok(Scope::Densities),
            "higher" => Ok(Scope::Higher),
            "all" => Ok(Scope::All),
            _ => Err(format!("unknown scope `{s}` (multipliers, densities, higher, all)")),
        }
    }
}

/// JSON report over the catalog at `coeffs` within `scope`: admissible entries are
/// verified, the rest are listed as skipped. Links are checked between verified entries.
pub fn scoped_report(coeffs: &Coefficients, scope: Scope) -> Result<(Value, bool), ConservationError> {
    let all_entries: Vec<CatalogEntry> = catalog_all(coeffs).into_iter().filter(|e| scope.includes(e)).collect();
    let mut all = true;
    let mut rows = Vec::new();
    for e in &all_entries {
        let mut row = json!({
            "id": e.id,
            "kind": e.kind,
            "condition": e.condition,
            "body_terms": e.body.term_count(),
        });
        if e.admissible {
            let checks = verify_entry(e, coeffs)?;
            let ok = checks.iter().all(|c| c.holds);
            all &= ok;
            row["status"] = json!(if ok { "verified" } else { "failed" });
            row["checks"] = serde_json::to_value(&checks).expect("checks serialize");
        } else {
            row["status"] = json!("skipped");
        }
        rows.push(row);
    }
    let mut link_rows = Vec::new();
    for l in links() {
        let find = |id: &str| all_entries.iter().find(|e| e.id == id && e.admissible);
        let (Some(d), Some(m)) = (find(l.density), find(l.multiplier)) else {
            continue;
        };
        let got = link_factor(&d.body.re, &m.body)?;
        let ok = got.as_ref() == Some(&l.factor);
        all &= ok;
        link_rows.push(json!({ "density": l.density, "multiplier": l.multiplier, "factor": crate::exact::format_rational(&l.factor), "holds": ok }));
    }
    Ok((json!({ "scope": scope, "entries": rows, "links": link_rows, "all_pass": all }), all))
}

/// [`scoped_report`] over the whole catalog.
pub fn verification_report(coeffs: &Coefficients) -> Result<(Value, bool), ConservationError> {
    scoped_report(coeffs, Scope::All)
}
