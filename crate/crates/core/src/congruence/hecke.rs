//! Hecke operators on q-expansions, the collapse of the single-sum formula
//! modulo `ℓ`, and the 3-coloured partition congruences.

use num_bigint::BigInt;

use super::forms::{grade_mod_p, grade_weights, is_prime, sturm_bound};
use crate::eisenstein::{eisenstein_in, MonomialEvaluator, MonomialKey};
use crate::error::{Error, Result};
use crate::macmahon::{
    direct_in, eisenstein_expansion, mo_direct_in, single_sum_coefficient, Family,
};
use crate::partitions::enumerate;
use crate::report::Report;
use crate::ring::{Coefficient, CoefficientRing, ModInt};
use crate::series::{colored_partition_series, delta, euler_product, ModSeries, Series};

/// `f | T_p` in weight `k`: `b(n) = a(pn) + p^{k-1} a(n/p)`, the second term
/// only when `p | n`. Output precision is `ceil(N / p)`. Needs `k ≥ 1`; lift
/// constants first.
pub fn hecke_tp_in<R: Coefficient>(f: &Series<R>, k: u32, p: u64) -> Series<R> {
    assert!(k >= 1, "T_p needs weight at least 1");
    let ring = f.ring();
    let pu = p as usize;
    let out_prec = f.precision().div_ceil(pu);
    let pk = R::from_bigint(&BigInt::from(p).pow(k.saturating_sub(1)), ring);
    Series::from_fn(ring, out_prec, |n| {
        let mut b = f.coeff(pu * n).clone();
        if n % pu == 0 {
            b.add_assign(&pk.ring_mul(f.coeff(n / pu)));
        }
        b
    })
}

/// `T_p` followed by reduction mod `m`.
pub fn hecke_tp(f: &crate::series::QSeries, k: u32, p: u64, m: u64) -> Result<ModSeries> {
    let reduced = crate::series::reduce_mod(f, m)?;
    Ok(hecke_tp_in(&reduced, k, p))
}

/// `P_3(q) = ∏ (1 - q^n)^{-3}` modulo `ℓ`.
fn p3_mod(l: u64, precision: usize) -> ModSeries {
    colored_partition_series(3, precision, CoefficientRing::IntegerMod(l))
}

/// Classes `r` with `MO(a; ℓ n + r) ≡ 0` predicted by the collapse.
pub fn gordon_classes(l: u64) -> Option<Vec<u64>> {
    match l {
        3 => Some(vec![1, 2]),
        11 => Some(vec![7]),
        17 => Some(vec![15]),
        _ => None,
    }
}

/// For `a ≡ -1 (mod ℓ)`, `ℓ ∈ {3, 11, 17}`: the single-sum coefficients
/// vanish off `ℓ | n(n+1)/2`, `U_a ≡ P_3(q) A(q^ℓ)`, and the resulting
/// progressions of `MO(a; ·)` vanish up to `N`.
pub fn gordon_collapse(l: u64, a: u32, precision: usize) -> Result<Report> {
    let classes = gordon_classes(l).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "collapse is implemented for l in {{3, 11, 17}}, got {l}"
        ))
    })?;
    if !(a as u64 + 1).is_multiple_of(l) {
        return Err(Error::InvalidArgument(format!(
            "need a = -1 mod {l}, got a = {a}"
        )));
    }
    let ring = CoefficientRing::IntegerMod(l);
    let mut r = Report::new(format!("gordon collapse l={l} a={a} N={precision}"));

    let mut bad_coeff = None;
    let mut n = 0u64;
    while n * (n + 1) / 2 < precision as u64 {
        let e = n * (n + 1) / 2;
        if !e.is_multiple_of(l) && (single_sum_coefficient(a, n) % l) != BigInt::from(0) {
            bad_coeff = Some(n);
            break;
        }
        n += 1;
    }
    r.check_with(
        "single-sum coefficients vanish off l | n(n+1)/2",
        bad_coeff.is_none(),
        match bad_coeff {
            None => format!("checked n with n(n+1)/2 < {precision}"),
            Some(n) => format!("non-zero at n = {n}"),
        },
    );

    let u: ModSeries = mo_direct_in(a, precision, ring);
    let eta3 = euler_product::<ModInt>(precision, ring).pow(3);
    let quotient = &u * &eta3;
    let stray = quotient.support().find(|&e| !(e as u64).is_multiple_of(l));
    r.check_with(
        "U_a / P_3 is a series in q^l",
        stray.is_none(),
        match stray {
            None => "support in multiples of l".to_string(),
            Some(e) => format!("non-zero at q^{e}"),
        },
    );
    let rebuilt = &quotient * &p3_mod(l, precision);
    r.check("U_a = P_3 times the quotient", rebuilt == u);

    for class in classes {
        let failure = (class as usize..precision)
            .step_by(l as usize)
            .find(|&e| !u.coeff(e).is_zero());
        r.check_with(
            format!("MO({a}; {l}n+{class}) = 0 mod {l}"),
            failure.is_none(),
            match failure {
                None => format!("all exponents below {precision}"),
                Some(e) => format!("non-zero at {e}"),
            },
        );
    }
    Ok(r)
}

/// `c_3(n) ≡ 0 (mod 3)` for `3 ∤ n`, `c_3(11n+7) ≡ 0 (mod 11)`, and
/// `c_3(17n+15) ≡ 0 (mod 17)` through `Δ² | T_17`.
pub fn c3_congruence_checks(precision: usize) -> Result<Report> {
    if precision < 34 {
        return Err(Error::InvalidArgument(format!(
            "need at least 34 coefficients, got {precision}"
        )));
    }
    let mut r = Report::new(format!("c3 congruences N={precision}"));

    let p3 = p3_mod(3, precision);
    let m3 = CoefficientRing::IntegerMod(3);
    let partitions = euler_product::<ModInt>(precision, m3)
        .try_invert()?
        .stretch(3)
        .truncate(precision);
    r.check("P_3 = sum p(n) q^{3n} mod 3", p3 == partitions);
    r.check(
        "c_3(n) = 0 mod 3 when 3 does not divide n",
        (0..precision)
            .filter(|n| n % 3 != 0)
            .all(|n| p3.coeff(n).is_zero()),
    );
    let literal_count = enumerate(4).len();
    r.check(
        "p(4) = 5 inside the mod-3 identity",
        *p3.coeff(12) == ModInt::from_u64(literal_count as u64, 3),
    );

    let p11 = p3_mod(11, precision);
    r.check(
        "c_3(11n+7) = 0 mod 11",
        (7..precision).step_by(11).all(|n| p11.coeff(n).is_zero()),
    );

    let m17 = CoefficientRing::IntegerMod(17);
    let p17 = p3_mod(17, precision);
    let eta17_cubed = euler_product::<ModInt>(precision, m17)
        .pow(3)
        .stretch(17)
        .truncate(precision);
    let lhs = (&p17 * &eta17_cubed).shift_up(2);
    let d = delta::<ModInt>(precision, m17);
    let d2 = &d * &d;
    r.check("q^2 P_3(q) prod (1-q^{17n})^3 = Delta^2 mod 17", lhs == d2);

    let bound = sturm_bound(24) as usize;
    let d2_long = {
        let d = delta::<ModInt>(17 * (bound + 1), m17);
        &d * &d
    };
    let t17 = hecke_tp_in(&d2_long, 24, 17);
    r.check_with(
        "Delta^2 | T_17 = 0 mod 17 to its Sturm bound",
        (0..=bound).all(|n| t17.coeff(n).is_zero()),
        format!("coefficients 0..={bound}"),
    );
    r.check(
        "c_3(17n+15) = 0 mod 17",
        (15..precision).step_by(17).all(|n| p17.coeff(n).is_zero()),
    );
    Ok(r)
}

/// Grades `U_a` (or `U_a*`) mod `ℓ`, applies `T_p` to every piece at its
/// weight, and checks each image vanishes to its Sturm bound; also checks
/// the coefficients at multiples of `p` from the direct sum.
pub fn hecke_annihilation_check(family: Family, a: u32, l: u64, primes: &[u64]) -> Result<Report> {
    if l < 5 || !is_prime(l) {
        return Err(Error::InvalidArgument(format!(
            "need a prime l >= 5, got {l}"
        )));
    }
    let e = eisenstein_expansion(family, a);
    let weights = grade_weights(&e, l);
    let max_bound = weights.values().map(|&w| sturm_bound(w)).max().unwrap_or(0) as usize;
    let max_p = primes.iter().copied().max().unwrap_or(2) as usize;
    let precision = max_p * (max_bound + 1);
    let pieces = grade_mod_p(&e, l, precision)?;
    let direct: ModSeries = direct_in(family, a, precision, CoefficientRing::IntegerMod(l));
    let mut r = Report::new(format!("{family}({a}; pn) mod {l} via T_p"));
    for &p in primes {
        for f in &pieces {
            let f = if f.weight() == 0 {
                f.lift(1)
            } else {
                f.clone()
            };
            let g = hecke_tp_in(f.series(), f.weight(), p);
            let zero = (0..=f.sturm_bound() as usize).all(|n| g.coeff(n).is_zero());
            r.check(format!("weight {} piece | T_{p}", f.weight()), zero);
        }
        let bad = (p as usize..precision)
            .step_by(p as usize)
            .find(|&n| !direct.coeff(n).is_zero());
        r.check_with(
            format!("{family}({a}; {p}n) = 0 mod {l}"),
            bad.is_none(),
            match bad {
                None => format!("exponents below {precision}"),
                Some(n) => format!("non-zero at {n}"),
            },
        );
    }
    Ok(r)
}

/// `T_p` on each monomial `E_2^α E_4^β E_6^γ`, `α + 2β + 3γ ≤ t_max`, mod `ℓ`,
/// after `E_2 -> E_{ℓ+1}`. Weight-12 monomials carry a `Δ` component, so
/// they are annihilated only when `τ(p) ≡ 0`.
pub fn monomial_hecke_report(l: u64, primes: &[u64], t_max: u32) -> Result<Report> {
    if l < 5 || !is_prime(l) {
        return Err(Error::InvalidArgument(format!(
            "need a prime l >= 5, got {l}"
        )));
    }
    let mut r = Report::new(format!("T_p on monomials mod {l}, t <= {t_max}"));
    let max_weight = 2 * t_max + t_max * (l as u32 - 1);
    let max_p = primes.iter().copied().max().unwrap_or(2);
    let precision = max_p as usize * (sturm_bound(max_weight) as usize + 1);
    let ring = CoefficientRing::IntegerMod(l);
    let mut eval = MonomialEvaluator::<ModInt>::new(ring, precision);
    for t in 1..=t_max {
        for (alpha, beta, gamma) in crate::eisenstein::CTable::cone(t) {
            let key = MonomialKey::e246(alpha, beta, gamma);
            let weight = key.weight() + alpha * (l as u32 - 1);
            let f = eval.monomial(&key)?;
            for &p in primes {
                let need = p as usize * (sturm_bound(weight) as usize + 1);
                let g = hecke_tp_in(&f.truncate(need), weight, p);
                let zero = (0..=sturm_bound(weight) as usize).all(|n| g.coeff(n).is_zero());
                r.check(format!("E2^{alpha} E4^{beta} E6^{gamma} | T_{p}"), zero);
            }
        }
    }
    Ok(r)
}

/// `E_k` mod `m` as a rational-free convenience.
pub fn eisenstein_mod(weight: u32, precision: usize, m: u64) -> Result<ModSeries> {
    Ok(eisenstein_in(
        weight,
        precision,
        CoefficientRing::IntegerMod(m),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::eisenstein;

    #[test]
    fn e4_t2_constant_term() {
        let e4 = eisenstein(4, 40);
        let t = hecke_tp(&e4, 4, 2, 1_000_003).unwrap();
        assert_eq!(t.coeff(0).value(), 9);
        // E_4 is an eigenform with eigenvalue σ_3(2) = 9
        let e4m = crate::series::reduce_mod(&e4, 1_000_003).unwrap();
        assert_eq!(t, e4m.truncate(20).scale_i64(9));
    }

    #[test]
    fn delta_is_tau_eigenform() {
        let d: ModSeries = delta(60, CoefficientRing::IntegerMod(1_000_003));
        let t = hecke_tp_in(&d, 12, 2);
        // τ(2) = -24
        assert_eq!(t, d.truncate(30).scale_i64(-24));
    }

    #[test]
    fn u_after_v_is_identity() {
        let ring = CoefficientRing::IntegerMod(101);
        let f: ModSeries = Series::from_i64s(ring, &[3, 1, 4, 1, 5, 9, 2, 6, 5, 3]);
        assert_eq!(f.stretch(7).compress(7), f);
    }

    #[test]
    fn gordon_small() {
        assert!(gordon_collapse(3, 2, 60).unwrap().passed());
        assert!(gordon_collapse(3, 5, 60).unwrap().passed());
        assert!(gordon_collapse(3, 4, 60).is_err());
        assert!(gordon_collapse(5, 4, 60).is_err());
    }

    #[test]
    fn c3_checks() {
        let r = c3_congruence_checks(120).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(c3_congruence_checks(10).is_err());
    }

    #[test]
    fn monomials_mod_17() {
        let r = monomial_hecke_report(17, &[67], 6).unwrap();
        let failed: Vec<_> = r.failures().map(|c| c.label.clone()).collect();
        // every weight-12 monomial fails since τ(67) = 16 mod 17
        assert_eq!(failed.len(), 7, "{failed:?}");
        assert!(failed
            .iter()
            .all(|l| l.contains("E2^6") || !l.contains("E2^0 E4^1")));
        let r = monomial_hecke_report(17, &[67, 101], 5).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn u6_mod_17_t67() {
        let r = hecke_annihilation_check(Family::Mo, 6, 17, &[67]).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn u6_mod_17_all_primes() {
        for family in [Family::Mo, Family::M] {
            let r = hecke_annihilation_check(family, 6, 17, &[67, 101, 271, 373]).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
