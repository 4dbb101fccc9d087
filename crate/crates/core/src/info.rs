//! Closed-form information quantities, all exact integers in log_q units.

use serde::Serialize;

use crate::access;
use crate::code::{LinearCode, NestedPair, ShareSet};
use crate::error::{Error, Result};

/// Holevo information of J for the uniform ensemble of basis secrets:
/// `dim P_J(C₁) − dim P_J(C₂)`.
pub fn holevo_closed(pair: &NestedPair, j: &ShareSet) -> i64 {
    pair.c1().projected_dim(j) as i64 - pair.c2().projected_dim(j) as i64
}

/// `(H(Γ_J(|s⟩⟨s|)), H(average over s of Γ_J(|s⟩⟨s|)))`.
///
/// The first is `dim P_J(C₂) − dim P_J(C₂ ∩ ker P_{J̄})`, the second
/// `dim P_J(C₁) − dim P_J(C₂ ∩ ker P_{J̄})`.
pub fn entropy_terms(pair: &NestedPair, j: &ShareSet) -> (i64, i64) {
    let shortened = pair.c2().vanishing_on(&j.complement()).dim() as i64;
    let single = pair.c2().projected_dim(j) as i64 - shortened;
    let mixture = pair.c1().projected_dim(j) as i64 - shortened;
    (single, mixture)
}

/// Coherent information of `Γ_J` on the completely mixed secret, for an
/// arbitrary upper code `upper ⊇ c2` in place of C₁.
pub fn coherent_info_for(upper: &LinearCode, c2: &LinearCode, j: &ShareSet) -> i64 {
    let jc = j.complement();
    let a = upper.projected_dim(j) as i64 - c2.vanishing_on(&jc).dim() as i64;
    let b = upper.projected_dim(&jc) as i64 - c2.vanishing_on(j).dim() as i64;
    a - b
}

pub fn coherent_info_closed(pair: &NestedPair, j: &ShareSet) -> i64 {
    coherent_info_for(pair.c1(), pair.c2(), j)
}

/// The intermediate code `C₂ + (D ∩ ker P_{J̄})`, which leaves the coherent
/// information of `D` unchanged.
pub fn reduced_intermediate(d: &LinearCode, c2: &LinearCode, j: &ShareSet) -> LinearCode {
    c2.sum(&d.vanishing_on(&j.complement())).expect("same length")
}

/// Maximum coherent information over intermediate codes `C₂ ⊆ D ⊆ C₁`,
/// attained by `D = C₂ + (C₁ ∩ ker P_{J̄})`. Returns the value and `D`.
pub fn max_coherent_info(pair: &NestedPair, j: &ShareSet) -> Result<(i64, LinearCode)> {
    let d = reduced_intermediate(pair.c1(), pair.c2(), j);
    if !pair.c2().is_subcode_of(&d) || !d.is_subcode_of(pair.c1()) {
        return Err(Error::InternalInconsistency("maximizer is not intermediate".into()));
    }
    let value = coherent_info_for(&d, pair.c2(), j);
    let recon = access::reconstructible_qudits(pair, j) as i64;
    if value != recon {
        return Err(Error::InternalInconsistency(format!(
            "max coherent information {value} differs from reconstructible qudits {recon} for J = {j}"
        )));
    }
    Ok((value, d))
}

#[derive(Clone, Debug, Serialize)]
pub struct InfoSummary {
    pub j: Vec<usize>,
    pub holevo: i64,
    pub entropy_single: i64,
    pub entropy_mixture: i64,
    pub coherent_info: i64,
    pub max_coherent_info: i64,
}

pub fn summarize(pair: &NestedPair, j: &ShareSet) -> Result<InfoSummary> {
    let holevo = holevo_closed(pair, j);
    let (entropy_single, entropy_mixture) = entropy_terms(pair, j);
    if holevo != entropy_mixture - entropy_single || holevo < 0 {
        return Err(Error::InternalInconsistency(format!("Holevo terms disagree for J = {j}")));
    }
    let (max_coherent_info, _) = max_coherent_info(pair, j)?;
    Ok(InfoSummary {
        j: j.members().iter().map(|i| i + 1).collect(),
        holevo,
        entropy_single,
        entropy_mixture,
        coherent_info: coherent_info_closed(pair, j),
        max_coherent_info,
    })
}
