//! Congruences for the coefficients of `U_a` and `U_a*` modulo primes.

pub mod checks;
pub mod forms;
pub mod hecke;
pub mod prover;

pub use checks::{
    corollary_applies, corollary_check, lemma2_check, scan, sigma_expansion, ScanCandidate,
};
pub use forms::{
    grade_mod_p, grade_weights, is_prime, projector, projector_coefficients, replay_weight,
    sturm_bound, theta_modp, FormSum, HistoryStep, ModularFormModP,
};
pub use hecke::{
    c3_congruence_checks, gordon_collapse, hecke_annihilation_check, hecke_tp, hecke_tp_in,
    monomial_hecke_report,
};
pub use prover::{
    audit_certificate, guard_check, projected_weights, prove_progression, Claim,
    CongruenceCertificate, Verdict,
};
