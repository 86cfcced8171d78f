//! Bernoulli numbers, Eisenstein series, and the quasimodular expansions of
//! `U_a` and `U_a*`.

pub mod expansion;
pub mod tables;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::SeriesError;
use crate::partitions::enumerate;
use crate::report::Report;
use crate::ring::{q, qi, Coefficient, CoefficientRing};
use crate::series::{psi_tilde, sigma_series, QSeries, Series};

pub use expansion::{
    expansion_eval, monomial_expansion, MonomialEvaluator, MonomialKey, QuasimodularExpansion,
    QuasimodularMonomial,
};
pub use tables::{b, binomial, c_table, factorial, w, w_star, CTable, ConstantTables};

const QR: CoefficientRing = CoefficientRing::ExactRational;

/// `B_0, …, B_n` from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(n: u32) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n as usize + 1);
    b.push(BigRational::one());
    for m in 1..=n as u64 {
        let s: BigRational = (0..m)
            .map(|j| BigRational::from_integer(binomial(m + 1, j)) * &b[j as usize])
            .sum();
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `B_n`.
pub fn bernoulli(n: u32) -> BigRational {
    bernoulli_numbers(n).pop().expect("non-empty")
}

/// `-4k / B_{2k}` for weight `2k`: the scale on `Σ σ_{2k-1}(n) q^n` in `E_{2k}`.
pub fn eisenstein_scale(weight: u32) -> BigRational {
    assert!(weight >= 2 && weight.is_multiple_of(2));
    -qi(2 * weight as i64) / bernoulli(weight)
}

/// `E_{2k}(q) = 1 - (4k / B_{2k}) Σ σ_{2k-1}(n) q^n` in any coefficient ring.
pub fn eisenstein_in<R: Coefficient>(
    weight: u32,
    precision: usize,
    ring: CoefficientRing,
) -> Result<Series<R>, SeriesError> {
    let scale = eisenstein_scale(weight);
    let c = R::from_rational(&scale, ring).ok_or_else(|| SeriesError::NonIntegralScalar {
        value: crate::ring::render_rational(&scale),
        modulus: ring.modulus().unwrap_or(0),
    })?;
    let sig = sigma_series::<R>(weight - 1, precision, ring);
    let mut e = sig.scale(&c);
    if precision > 0 {
        e.set(0, R::one_in(ring));
    }
    Ok(e)
}

/// `E_{weight}` over the rationals.
pub fn eisenstein(weight: u32, precision: usize) -> QSeries {
    eisenstein_in(weight, precision, QR).expect("rational Eisenstein series")
}

/// Verifies Ramanujan's three derivative identities to the given precision.
pub fn ramanujan_check(precision: usize) -> Report {
    let e2 = eisenstein(2, precision);
    let e4 = eisenstein(4, precision);
    let e6 = eisenstein(6, precision);
    let mut r = Report::new(format!("ramanujan N={precision}"));
    let lhs = e2.theta();
    let rhs = (&(&e2 * &e2) - &e4).scale(&q(1, 12));
    r.check("theta(E2) = (E2^2 - E4)/12", lhs == rhs);
    let lhs = e4.theta();
    let rhs = (&(&e2 * &e4) - &e6).scale(&q(1, 3));
    r.check("theta(E4) = (E2 E4 - E6)/3", lhs == rhs);
    let lhs = e6.theta();
    let rhs = (&(&e2 * &e6) - &(&e4 * &e4)).scale(&q(1, 2));
    r.check("theta(E6) = (E2 E6 - E4^2)/2", lhs == rhs);
    r
}

/// `(-8)^t Θ^t(η³)/η³`, with `η³` represented by `psi_tilde` and `Θ` acting
/// on the stripped series as `Θ + 1/8`.
pub fn script_e(t: u32, precision: usize) -> QSeries {
    let psi: QSeries = psi_tilde(precision, QR);
    let mut acc = psi.clone();
    let eighth = q(1, 8);
    for _ in 0..t {
        acc = acc.theta_shifted(&eighth);
    }
    let inv = psi.try_invert().expect("psi_tilde has constant term 1");
    (&acc * &inv).scale(&BigRational::from_integer(BigInt::from(-8).pow(t)))
}

/// `Σ_{α+2β+3γ=t} c(α,β,γ) E_2^α E_4^β E_6^γ`.
pub fn c_expansion(t: u32, table: &CTable) -> QuasimodularExpansion {
    assert!(t <= table.t_max());
    let mut e = QuasimodularExpansion::new(format!("c-cone t={t}"));
    for (a, b, g) in CTable::cone(t) {
        e.add_term(
            MonomialKey::e246(a, b, g),
            table.get(a as i64, b as i64, g as i64),
        );
    }
    e
}

/// Cycle-index sum over `λ ⊢ t` of `∏_j (sign · B_{2j} E_{2j} / (2j (2j)!))^{m_j} / m_j!`.
fn cycle_index_expansion(t: u32, sign: i64, name: &str) -> QuasimodularExpansion {
    let bern = bernoulli_numbers(2 * t.max(1));
    let mut e = QuasimodularExpansion::new(format!("{name} t={t}"));
    for lambda in enumerate(t) {
        let mut coeff = BigRational::one();
        let mut key = MonomialKey::constant();
        for (&j, &m) in &lambda.multiplicities() {
            let y = qi(sign) * &bern[2 * j as usize]
                / BigRational::from_integer(BigInt::from(2 * j) * factorial(2 * j as u64));
            let mut ym = BigRational::one();
            for _ in 0..m {
                ym *= &y;
            }
            coeff *= ym / BigRational::from_integer(factorial(m as u64));
            key = key.mul(&MonomialKey::eisenstein_power(2 * j, m));
        }
        e.add_term(key, coeff);
    }
    e
}

/// Symbolic `𝔼_{2t}`.
pub fn bbe_expansion(t: u32) -> QuasimodularExpansion {
    cycle_index_expansion(t, 1, "bbE")
}

/// Symbolic `𝔼*_{2t}` (the same cycle index with `-B_{2j}`).
pub fn bbe_star_expansion(t: u32) -> QuasimodularExpansion {
    cycle_index_expansion(t, -1, "bbE*")
}

pub fn bbe(t: u32, precision: usize) -> QSeries {
    expansion_eval(&bbe_expansion(t), precision)
}

pub fn bbe_star(t: u32, precision: usize) -> QSeries {
    expansion_eval(&bbe_star_expansion(t), precision)
}

/// `Θ(𝔼_{2t-2}) = t(2t+1) 𝔼_{2t} - 3 𝔼_2 𝔼_{2t-2}`.
pub fn theta_bbe_check(t: u32, precision: usize) -> Report {
    assert!(t >= 1);
    let prev = bbe(t - 1, precision);
    let cur = bbe(t, precision);
    let e2 = bbe(1, precision);
    let lhs = prev.theta();
    let rhs = &cur.scale(&qi((t * (2 * t + 1)) as i64)) - &(&e2 * &prev).scale(&qi(3));
    let mut r = Report::new(format!("theta-bbE t={t} N={precision}"));
    r.check(format!("theta(bbE_{}) recurrence", 2 * t - 2), lhs == rhs);
    r
}

/// `𝔼_{2t} = (-1)^t / (4^t (2t+1)!) · 𝓔_t`.
pub fn bbe_eta_check(t: u32, precision: usize) -> Report {
    let lhs = bbe(t, precision);
    let scale = qi(if t.is_multiple_of(2) { 1 } else { -1 })
        / BigRational::from_integer(BigInt::from(4).pow(t) * factorial(2 * t as u64 + 1));
    let rhs = script_e(t, precision).scale(&scale);
    let mut r = Report::new(format!("bbE-eta t={t} N={precision}"));
    r.check(format!("bbE_{} from eta derivatives", 2 * t), lhs == rhs);
    r
}

/// `U_a = Σ_t w_t(a) Σ c(α,β,γ) E_2^α E_4^β E_6^γ`.
pub fn u_expansion(a: u32) -> QuasimodularExpansion {
    let table = c_table(a);
    let mut e = QuasimodularExpansion::new(format!("U_{a} eisenstein"));
    for t in 0..=a {
        let wt = w(t, a);
        if Zero::is_zero(&wt) {
            continue;
        }
        e = e.add(&c_expansion(t, &table).scale(&wt));
    }
    e.with_provenance(format!("U_{a} eisenstein"))
}

/// `U_a* = Σ_t w*_t(a) 𝔼*_{2t}`, expanded into Eisenstein monomials.
pub fn u_star_expansion(a: u32) -> QuasimodularExpansion {
    let mut e = QuasimodularExpansion::new(format!("U*_{a} eisenstein"));
    for t in 0..=a {
        e = e.add(&bbe_star_expansion(t).scale(&w_star(t, a)));
    }
    e.with_provenance(format!("U*_{a} eisenstein"))
}
