//! JSON form `{"basis": "schur", "degree": n, "coeffs": {"[2,1]": "num|den"}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::basis::{convert_basis, Basis, BasisExpansion};
use super::{SymError, SymFunc};
use crate::qt::QtRational;
use crate::shapes::Partition;

#[derive(Serialize, Deserialize)]
struct Wire {
    basis: String,
    degree: usize,
    coeffs: BTreeMap<String, String>,
}

/// Serializes a homogeneous function in the given basis. Zero serializes
/// with degree 0 and no coefficients.
pub fn to_json(f: &SymFunc<QtRational>, basis: Basis) -> Result<String, SymError> {
    let degree = f.homogeneous_degree()?.unwrap_or(0);
    let exp = convert_basis(f, basis)?;
    let coeffs = exp
        .coeffs
        .iter()
        .map(|(lam, c)| (lam.to_string(), c.render()))
        .collect();
    let wire = Wire {
        basis: basis.name().to_string(),
        degree,
        coeffs,
    };
    serde_json::to_string(&wire).map_err(|e| SymError::Json(e.to_string()))
}

pub fn from_json(s: &str) -> Result<SymFunc<QtRational>, SymError> {
    let wire: Wire = serde_json::from_str(s).map_err(|e| SymError::Json(e.to_string()))?;
    let basis: Basis = wire.basis.parse()?;
    let mut coeffs = BTreeMap::new();
    for (k, v) in wire.coeffs {
        let lam: Partition = k.parse().map_err(|e| SymError::Json(format!("{e}")))?;
        if lam.size() != wire.degree {
            return Err(SymError::Json(format!("{lam} has size other than {}", wire.degree)));
        }
        let c = QtRational::parse(&v).map_err(|e| SymError::Json(format!("{e}")))?;
        coeffs.insert(lam, c);
    }
    BasisExpansion { basis, coeffs }.to_symfunc()
}
