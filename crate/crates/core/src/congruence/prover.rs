//! Sturm-bound certificates for `MO(a; pn + r) ≡ 0` and `M(a; pn + r) ≡ 0 (mod p)`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use super::forms::{
    grade_mod_p, grade_weights, is_prime, projector, projector_coefficients, sturm_bound, FormSum,
    HistoryStep,
};
use crate::error::{Error, Result};
use crate::macmahon::{direct_in, eisenstein_expansion, Family};
use crate::ring::{Coefficient, CoefficientRing};
use crate::series::ModSeries;

pub const CERTIFICATE_SCHEMA: &str = "v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub family: Family,
    pub a: u32,
    pub modulus: u64,
    pub progression: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificatePiece {
    pub weight: u32,
    pub sturm_bound: u32,
    pub checked_coefficients: usize,
    pub all_zero: bool,
    /// First non-zero coefficient below the Sturm bound, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_nonzero: Option<usize>,
    pub history: Vec<HistoryStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Proven,
    Inconclusive,
    CounterexampleFound { n: u64, residue: u64 },
}

/// Direct recomputation of the progression up to `checked_up_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuardCheck {
    pub checked_up_to: u64,
    pub terms: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_nonzero: Option<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceCertificate {
    pub schema: &'static str,
    pub claim: Claim,
    pub precision: usize,
    pub graded_weights: Vec<u32>,
    pub projector: Vec<u64>,
    pub pieces: Vec<CertificatePiece>,
    pub guard: GuardCheck,
    pub verdict: Verdict,
}

impl CongruenceCertificate {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificate serializes")
    }

    pub fn final_weights(&self) -> Vec<u32> {
        self.pieces.iter().map(|p| p.weight).collect()
    }
}

/// Weights of the projected pieces, computed from the graded weights alone.
pub fn projected_weights(graded: &[u32], p: u64, r: u64) -> Vec<u32> {
    let coeffs = projector_coefficients(p, r);
    let mut classes: BTreeMap<u32, u32> = BTreeMap::new();
    for &w in graded {
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let wk = w + k as u32 * (p as u32 + 1);
            let slot = classes.entry(wk % (p as u32 - 1)).or_insert(0);
            *slot = (*slot).max(wk);
        }
    }
    classes.into_values().collect()
}

/// Checks `a(n) ≡ 0` for `n ≤ guard_n`, `n ≡ r (mod p)`, from the direct sum.
pub fn guard_check(family: Family, a: u32, p: u64, r: u64, guard_n: u64) -> GuardCheck {
    let ring = CoefficientRing::IntegerMod(p);
    let s: ModSeries = direct_in(family, a, guard_n as usize + 1, ring);
    let mut terms = 0;
    let mut first_nonzero = None;
    for n in (r..=guard_n).step_by(p as usize) {
        terms += 1;
        let v = s.coeff(n as usize);
        if !v.is_zero() {
            first_nonzero = Some((n, v.value()));
            break;
        }
    }
    GuardCheck {
        checked_up_to: guard_n,
        terms,
        passed: first_nonzero.is_none(),
        first_nonzero,
    }
}

/// Grades the Eisenstein expansion mod `p`, projects onto `n ≡ r`, and checks
/// every resulting piece up to its Sturm bound. Working precision is
/// `max sturm_bound + 1`, fixed before any series is built.
pub fn prove_progression(
    family: Family,
    a: u32,
    p: u64,
    r: u64,
    guard_n: u64,
) -> Result<CongruenceCertificate> {
    if p < 5 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!(
            "modulus must be a prime >= 5, got {p}"
        )));
    }
    if r >= p {
        return Err(Error::InvalidArgument(format!("residue {r} not below {p}")));
    }
    let e = eisenstein_expansion(family, a);
    let graded: Vec<u32> = grade_weights(&e, p).into_values().collect();
    let target = projected_weights(&graded, p, r);
    let precision = target
        .iter()
        .map(|&w| sturm_bound(w) as usize + 1)
        .max()
        .unwrap_or(1);

    let pieces = grade_mod_p(&e, p, precision)?;
    let projected = projector(&FormSum { p, pieces }, r)?;
    if projected.weights() != target {
        return Err(Error::Consistency(format!(
            "projected weights {:?} differ from the predicted {target:?}",
            projected.weights()
        )));
    }

    let mut cert_pieces = Vec::new();
    for f in &projected.pieces {
        let bound = f.sturm_bound();
        let all_zero = f.vanishes_to_sturm_bound().ok_or_else(|| {
            Error::Consistency(format!(
                "precision {} below Sturm bound {bound} for weight {}",
                f.series().precision(),
                f.weight()
            ))
        })?;
        let first_nonzero = (0..=bound as usize).find(|&n| !f.series().coeff(n).is_zero());
        cert_pieces.push(CertificatePiece {
            weight: f.weight(),
            sturm_bound: bound,
            checked_coefficients: bound as usize + 1,
            all_zero,
            first_nonzero,
            history: f.history().to_vec(),
        });
    }

    let guard = guard_check(family, a, p, r, guard_n);
    let proven = cert_pieces.iter().all(|c| c.all_zero);
    let verdict = if proven {
        if !guard.passed {
            return Err(Error::Consistency(format!(
                "Sturm checks vanish but the direct sum has {:?}",
                guard.first_nonzero
            )));
        }
        Verdict::Proven
    } else if let Some((n, residue)) = guard.first_nonzero {
        Verdict::CounterexampleFound { n, residue }
    } else {
        Verdict::Inconclusive
    };

    Ok(CongruenceCertificate {
        schema: CERTIFICATE_SCHEMA,
        claim: Claim {
            family,
            a,
            modulus: p,
            progression: r,
        },
        precision,
        graded_weights: graded,
        projector: projector_coefficients(p, r),
        pieces: cert_pieces,
        guard,
        verdict,
    })
}

/// Replays every piece history and checks it reproduces the recorded weight.
pub fn audit_certificate(c: &CongruenceCertificate) -> Result<()> {
    for piece in &c.pieces {
        let w = super::forms::replay_weight(c.claim.modulus, &piece.history)?;
        if w != piece.weight {
            return Err(Error::Consistency(format!(
                "history replays to weight {w}, recorded {}",
                piece.weight
            )));
        }
    }
    Ok(())
}

/// Compact summary used by the command-line front end.
pub fn summary(c: &CongruenceCertificate) -> Value {
    json!({
        "claim": c.claim,
        "verdict": c.verdict,
        "weights": c.final_weights(),
        "sturm_bounds": c.pieces.iter().map(|p| p.sturm_bound).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mo_10_mod_11_class_7() {
        let c = prove_progression(Family::Mo, 10, 11, 7, 500).unwrap();
        assert_eq!(c.verdict, Verdict::Proven);
        assert_eq!(c.graded_weights, [120, 72, 84, 96, 108]);
        audit_certificate(&c).unwrap();
        for p in &c.pieces {
            assert!(p.all_zero);
            assert!(p.checked_coefficients as u32 > p.sturm_bound);
        }
    }

    #[test]
    fn mo_1_mod_5_class_1_has_counterexample() {
        let c = prove_progression(Family::Mo, 1, 5, 1, 50).unwrap();
        assert_eq!(c.verdict, Verdict::CounterexampleFound { n: 1, residue: 1 });
        let c = prove_progression(Family::Mo, 1, 5, 1, 50).unwrap();
        assert!(!c.guard.passed);
    }

    #[test]
    fn mo_2_mod_5_class_2() {
        let c = prove_progression(Family::Mo, 2, 5, 2, 500).unwrap();
        assert!(matches!(c.verdict, Verdict::Proven | Verdict::Inconclusive));
        assert!(c.guard.passed);
    }

    #[test]
    fn certificate_json_has_schema_and_history() {
        let c = prove_progression(Family::Mo, 2, 5, 2, 50).unwrap();
        let v = c.to_json();
        assert_eq!(v["schema"], "v1");
        assert_eq!(v["claim"]["family"], "mo");
        assert!(v["pieces"][0]["history"].is_array());
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(prove_progression(Family::Mo, 2, 3, 1, 10).is_err());
        assert!(prove_progression(Family::Mo, 2, 9, 1, 10).is_err());
        assert!(prove_progression(Family::Mo, 2, 5, 7, 10).is_err());
    }
}
