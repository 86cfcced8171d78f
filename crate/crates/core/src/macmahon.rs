//! MacMahon's series `U_a(q) = Σ MO(a;n) q^n` and `U_a*(q) = Σ M(a;n) q^n`,
//! computed by independent methods, and the identities tying them together.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::eisenstein::tables::{binomial, factorial};
use crate::eisenstein::{expansion_eval, u_expansion, u_star_expansion, QuasimodularExpansion};
use crate::error::{Error, Result};
use crate::partitions::colored3;
use crate::report::Report;
use crate::ring::{qi, Coefficient, CoefficientRing};
use crate::series::{colored_partition_series, euler_product, sigma_series, QSeries, Series};

const QR: CoefficientRing = CoefficientRing::ExactRational;

/// Strict (`MO`, series `U_a`) or weak (`M`, series `U_a*`) index chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Mo,
    M,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Mo => "mo",
            Family::M => "m",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mo" => Ok(Family::Mo),
            "m" => Ok(Family::M),
            other => Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    SingleSum,
    Recursion,
    Eisenstein,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Direct,
        Method::SingleSum,
        Method::Recursion,
        Method::Eisenstein,
    ];

    /// Methods implemented for a family (`M` has no recursion).
    pub fn available(family: Family) -> Vec<Method> {
        Method::ALL
            .into_iter()
            .filter(|m| family == Family::Mo || *m != Method::Recursion)
            .collect()
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::SingleSum => "single-sum",
            Method::Recursion => "recursion",
            Method::Eisenstein => "eisenstein",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "single-sum" => Ok(Method::SingleSum),
            "recursion" => Ok(Method::Recursion),
            "eisenstein" => Ok(Method::Eisenstein),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MacMahonSeries {
    pub family: Family,
    pub a: u32,
    pub method: Method,
    pub series: QSeries,
}

impl MacMahonSeries {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.to_string(),
            "a": self.a,
            "method": self.method.to_string(),
            "precision": self.series.precision(),
            "coeffs": self.series.coeffs().iter().map(Coefficient::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Exponent where `U_a` starts: `a(a+1)/2`.
pub fn mo_start(a: u32) -> usize {
    (a as usize) * (a as usize + 1) / 2
}

/// Core dynamic programme: sweeps the index `K = 1, 2, …` and multiplies the
/// generating polynomial in `s` by `1 + s g_K` (strict) or `1/(1 - s g_K)`
/// (weak), `g_K = q^K/(1-q^K)^2`. Row `j` holds the chains of length `j`.
fn chain_rows<R: Coefficient>(
    family: Family,
    a: u32,
    precision: usize,
    ring: CoefficientRing,
) -> Vec<Vec<R>> {
    let a = a as usize;
    let zero = R::zero_in(ring);
    let mut rows = vec![vec![zero.clone(); precision]; a + 1];
    if precision == 0 {
        return rows;
    }
    rows[0][0] = R::one_in(ring);
    let mut tmp = vec![zero.clone(); precision];
    for k in 1..precision {
        let order: Vec<usize> = match family {
            Family::Mo => (1..=a).rev().collect(),
            Family::M => (1..=a).collect(),
        };
        for j in order {
            // smallest exponent reachable by a chain of length j - 1
            let lowest = match family {
                Family::Mo => (j - 1) * j / 2,
                Family::M => j - 1,
            };
            if lowest + k >= precision {
                continue;
            }
            tmp[..k].fill(zero.clone());
            tmp[k..].clone_from_slice(&rows[j - 1][..precision - k]);
            for _ in 0..2 {
                for n in k..precision {
                    let prev = tmp[n - k].clone();
                    tmp[n].add_assign(&prev);
                }
            }
            for (dst, src) in rows[j].iter_mut().zip(&tmp) {
                dst.add_assign(src);
            }
        }
    }
    rows
}

/// `Σ_{0<k_1<…<k_a} ∏ q^{k_i}/(1-q^{k_i})^2` in any ring.
pub fn mo_direct_in<R: Coefficient>(a: u32, precision: usize, ring: CoefficientRing) -> Series<R> {
    let rows = chain_rows::<R>(Family::Mo, a, precision, ring);
    Series::from_vec(ring, rows.into_iter().nth(a as usize).expect("row a"))
}

/// `Σ_{1≤k_1≤…≤k_a} ∏ q^{k_i}/(1-q^{k_i})^2` in any ring.
pub fn m_direct_in<R: Coefficient>(a: u32, precision: usize, ring: CoefficientRing) -> Series<R> {
    let rows = chain_rows::<R>(Family::M, a, precision, ring);
    Series::from_vec(ring, rows.into_iter().nth(a as usize).expect("row a"))
}

pub fn direct_in<R: Coefficient>(
    family: Family,
    a: u32,
    precision: usize,
    ring: CoefficientRing,
) -> Series<R> {
    match family {
        Family::Mo => mo_direct_in(a, precision, ring),
        Family::M => m_direct_in(a, precision, ring),
    }
}

/// All of `U_0, …, U_a` (or the starred series) from one sweep.
pub fn direct_all(family: Family, a: u32, precision: usize) -> Vec<QSeries> {
    chain_rows::<BigRational>(family, a, precision, QR)
        .into_iter()
        .map(|r| Series::from_vec(QR, r))
        .collect()
}

pub fn mo_direct(a: u32, precision: usize) -> MacMahonSeries {
    MacMahonSeries {
        family: Family::Mo,
        a,
        method: Method::Direct,
        series: mo_direct_in(a, precision, QR),
    }
}

pub fn m_direct(a: u32, precision: usize) -> MacMahonSeries {
    MacMahonSeries {
        family: Family::M,
        a,
        method: Method::Direct,
        series: m_direct_in(a, precision, QR),
    }
}

/// `(2n+1) (n+a)! / ((2a+1)! (n-a)!)`, an integer; zero for `n < a`.
pub fn single_sum_coefficient(a: u32, n: u64) -> BigInt {
    let a = a as u64;
    if n < a {
        return BigInt::zero();
    }
    // (n+a)!/(n-a)! as a product of 2a consecutive integers
    let falling: BigInt = (n - a + 1..=n + a).map(BigInt::from).product();
    let num = falling * (2 * n + 1);
    let den = factorial(2 * a + 1);
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `(-1)^a Σ_n (-1)^n (2n+1) (n+a)!/((2a+1)!(n-a)!) q^{n(n+1)/2}`, the
/// numerator of the single-sum formula.
pub fn single_sum_numerator<R: Coefficient>(
    a: u32,
    precision: usize,
    ring: CoefficientRing,
) -> Series<R> {
    let mut s = Series::zero(ring, precision);
    let mut n = 0u64;
    loop {
        let e = (n * (n + 1) / 2) as usize;
        if e >= precision {
            break;
        }
        let c = single_sum_coefficient(a, n);
        let c = if (n + a as u64).is_multiple_of(2) {
            c
        } else {
            -c
        };
        s.set(e, R::from_bigint(&c, ring));
        n += 1;
    }
    s
}

/// `U_a` as the single sum divided by `∏(1-q^n)^3`.
pub fn mo_single_sum_in<R: Coefficient>(
    a: u32,
    precision: usize,
    ring: CoefficientRing,
) -> Series<R> {
    let num = single_sum_numerator::<R>(a, precision, ring);
    &num * &colored_partition_series::<R>(3, precision, ring)
}

/// `U_a* = Σ_{k≥1} (-1)^{k-1} (1+q^k) q^{C(k,2)+ak} / (1-q^k)^{2a}`.
pub fn m_single_sum_in<R: Coefficient>(
    a: u32,
    precision: usize,
    ring: CoefficientRing,
) -> Series<R> {
    let mut total = Series::zero(ring, precision);
    if a == 0 {
        return Series::one(ring, precision);
    }
    for k in 1.. {
        let e = k * (k - 1) / 2 + a as usize * k;
        if e >= precision {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let mut term = Series::monomial(ring, R::from_i64(sign, ring), e, precision);
        if e + k < precision {
            term.set(e + k, R::from_i64(sign, ring));
        }
        for _ in 0..2 * a {
            term = term.divide_by_one_minus_qk(k);
        }
        total = &total + &term;
    }
    total
}

pub fn mo_single_sum(a: u32, precision: usize) -> MacMahonSeries {
    MacMahonSeries {
        family: Family::Mo,
        a,
        method: Method::SingleSum,
        series: if a == 0 {
            QSeries::rational_one(precision)
        } else {
            mo_single_sum_in(a, precision, QR)
        },
    }
}

pub fn m_single_sum(a: u32, precision: usize) -> MacMahonSeries {
    MacMahonSeries {
        family: Family::M,
        a,
        method: Method::SingleSum,
        series: m_single_sum_in(a, precision, QR),
    }
}

/// `U_a = [(6 U_1 + a(a-1)) U_{a-1} - 2 Θ U_{a-1}] / (2a(2a+1))`, from `U_1 = Σ σ_1(n) q^n`.
pub fn mo_recursion(a: u32, precision: usize) -> MacMahonSeries {
    let u1: QSeries = sigma_series(1, precision, QR);
    let mut u = if a == 0 {
        QSeries::rational_one(precision)
    } else {
        u1.clone()
    };
    for aa in 2..=a as i64 {
        let lhs =
            &(&u1.scale_i64(6) + &QSeries::rational_one(precision).scale_i64(aa * (aa - 1))) * &u;
        let num = &lhs - &u.theta().scale_i64(2);
        u = num.scale(&(BigRational::one() / qi(2 * aa * (2 * aa + 1))));
    }
    MacMahonSeries {
        family: Family::Mo,
        a,
        method: Method::Recursion,
        series: u,
    }
}

/// The symbolic Eisenstein expansion of `U_a` or `U_a*`.
pub fn eisenstein_expansion(family: Family, a: u32) -> QuasimodularExpansion {
    match family {
        Family::Mo => u_expansion(a),
        Family::M => u_star_expansion(a),
    }
}

pub fn mo_eisenstein(a: u32, precision: usize) -> (MacMahonSeries, QuasimodularExpansion) {
    eisenstein_method(Family::Mo, a, precision)
}

pub fn m_eisenstein(a: u32, precision: usize) -> (MacMahonSeries, QuasimodularExpansion) {
    eisenstein_method(Family::M, a, precision)
}

fn eisenstein_method(
    family: Family,
    a: u32,
    precision: usize,
) -> (MacMahonSeries, QuasimodularExpansion) {
    let e = eisenstein_expansion(family, a);
    let series = expansion_eval(&e, precision);
    (
        MacMahonSeries {
            family,
            a,
            method: Method::Eisenstein,
            series,
        },
        e,
    )
}

/// Dispatches on `(family, method)`.
pub fn compute(family: Family, a: u32, method: Method, precision: usize) -> Result<MacMahonSeries> {
    Ok(match (family, method) {
        (Family::Mo, Method::Direct) => mo_direct(a, precision),
        (Family::M, Method::Direct) => m_direct(a, precision),
        (Family::Mo, Method::SingleSum) => mo_single_sum(a, precision),
        (Family::M, Method::SingleSum) => m_single_sum(a, precision),
        (Family::Mo, Method::Recursion) => mo_recursion(a, precision),
        (Family::M, Method::Recursion) => {
            return Err(Error::InvalidArgument(
                "the recursion method exists only for family mo".into(),
            ))
        }
        (family, Method::Eisenstein) => eisenstein_method(family, a, precision).0,
    })
}

/// Lowest exponent where two series differ, if any.
pub fn first_disagreement(f: &QSeries, g: &QSeries) -> Option<usize> {
    let n = f.precision().min(g.precision());
    (0..n).find(|&i| f.coeff(i) != g.coeff(i))
}

/// Runs every available method and compares each with the direct sum.
pub fn method_agreement(family: Family, a: u32, precision: usize) -> Report {
    let mut report = Report::new(format!("{family} a={a} N={precision} method agreement"));
    let reference = compute(family, a, Method::Direct, precision).expect("direct always exists");
    for method in Method::available(family).into_iter().skip(1) {
        let other = compute(family, a, method, precision).expect("available method");
        match first_disagreement(&reference.series, &other.series) {
            None => report.check(format!("direct = {method}"), true),
            Some(n) => report.check_with(
                format!("direct = {method}"),
                false,
                format!(
                    "first disagreement at q^{n}: {} vs {}",
                    reference.series.coeff(n),
                    other.series.coeff(n)
                ),
            ),
        };
    }
    report
}

/// `Σ_{i=0}^a (-1)^i U_i U_{a-i}* = 0`.
pub fn convolution_check(a: u32, precision: usize) -> Report {
    let u = direct_all(Family::Mo, a, precision);
    let us = direct_all(Family::M, a, precision);
    let mut total = QSeries::rational_zero(precision);
    for i in 0..=a as usize {
        let term = &u[i] * &us[a as usize - i];
        total = if i % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    let mut r = Report::new(format!("convolution a={a} N={precision}"));
    let detail = match total.valuation() {
        None => "vanishes".to_string(),
        Some(n) => format!("non-zero at q^{n}"),
    };
    r.check_with("alternating convolution vanishes", total.is_zero(), detail);
    r
}

/// Valid range of `n` for the hook formula: `a(a+1)/2 ≤ n ≤ a + a(a+1)/2`.
pub fn hook_limit_window(a: u32) -> std::ops::RangeInclusive<usize> {
    let start = mo_start(a);
    start..=start + a as usize
}

/// `MO(a;n) = Σ_{λ ⊢ n - a(a+1)/2} ∏_{h} (2/h² + 1) = c_3(n - a(a+1)/2)`
/// inside the window.
pub fn hook_limit_value(a: u32, n: usize) -> Result<BigInt> {
    let window = hook_limit_window(a);
    if !window.contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "n = {n} lies outside the window {}..={} for a = {a}",
            window.start(),
            window.end()
        )));
    }
    colored3((n - window.start()) as u32)
}

/// Compares the hook formula with the direct sum across the whole window.
pub fn hook_limit_check(a: u32) -> Result<Report> {
    let window = hook_limit_window(a);
    let direct = mo_direct(a, window.end() + 1).series;
    let mut r = Report::new(format!("hook limit a={a}"));
    for n in window {
        let v = hook_limit_value(a, n)?;
        let d = direct.coeff(n);
        r.check_with(
            format!("MO({a};{n})"),
            *d == BigRational::from_integer(v.clone()),
            format!("hook sum {v}, direct {d}"),
        );
    }
    Ok(r)
}

/// `q^{-a(a+1)/2} U_a ∏(1-q^n)^3 = Σ_j (-1)^j (2j+2a+1)/(2a+1) C(j+2a, j) q^{aj + j(j+1)/2}`,
/// plus the window `q^{-a(a+1)/2} U_a = ∏(1-q^n)^{-3} + O(q^{a+1})` and the
/// two marker coefficients.
pub fn limit_expansion_check(a: u32, precision: usize) -> Report {
    let start = mo_start(a);
    let u = mo_direct(a, precision + start).series;
    let shifted = u.shift_down(start).expect("U_a starts at a(a+1)/2");
    let eta3 = euler_product::<BigRational>(precision, QR).pow(3);
    let lhs = &shifted * &eta3;
    let mut rhs = QSeries::rational_zero(precision);
    for j in 0u64.. {
        let e = (a as u64 * j + j * (j + 1) / 2) as usize;
        if e >= precision {
            break;
        }
        let c = BigRational::new(
            BigInt::from(2 * j + 2 * a as u64 + 1) * binomial(j + 2 * a as u64, j),
            BigInt::from(2 * a + 1),
        );
        rhs.set(e, if j % 2 == 0 { c } else { -c });
    }
    let mut r = Report::new(format!("limit expansion a={a} N={precision}"));
    r.check_with(
        "shifted U_a times eta^3 equals the theta-type sum",
        lhs == rhs,
        match first_disagreement(&lhs, &rhs) {
            None => "exact".to_string(),
            Some(n) => format!("first disagreement at q^{n}"),
        },
    );
    let p3: QSeries = colored_partition_series(3, precision, QR);
    let window = (a as usize + 1).min(precision);
    r.check(
        format!("agrees with 3-coloured partitions below q^{}", a + 1),
        (0..window).all(|n| shifted.coeff(n) == p3.coeff(n)),
    );
    let m1 = a as usize + 1;
    if m1 < precision {
        r.check_with(
            format!("marker q^{m1}"),
            *lhs.coeff(m1) == -qi(2 * a as i64 + 3),
            format!("{}", lhs.coeff(m1)),
        );
    }
    let m2 = 2 * a as usize + 3;
    if m2 < precision {
        r.check_with(
            format!("marker q^{m2}"),
            *lhs.coeff(m2) == qi((a as i64 + 1) * (2 * a as i64 + 5)),
            format!("{}", lhs.coeff(m2)),
        );
    }
    r
}

/// Coefficients (constant term first) of `p_n(x) = C(2x+n-1, n) + C(2x+n-2, n-1)`.
pub fn p_polynomial(n: u32) -> Vec<BigRational> {
    if n == 0 {
        return vec![BigRational::one()];
    }
    // C(2x + c, k) = ∏_{i<k} (2x + c - i) / k!
    let binom_poly = |c: i64, k: u32| -> Vec<BigRational> {
        let mut poly = vec![BigRational::one()];
        for i in 0..k as i64 {
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (d, coef) in poly.iter().enumerate() {
                next[d] += coef * qi(c - i);
                next[d + 1] += coef * qi(2);
            }
            poly = next;
        }
        let kf = BigRational::from_integer(factorial(k as u64));
        poly.into_iter().map(|c| c / &kf).collect()
    };
    let first = binom_poly(n as i64 - 1, n);
    let second = binom_poly(n as i64 - 2, n - 1);
    first
        .iter()
        .enumerate()
        .map(|(d, c)| c + second.get(d).cloned().unwrap_or_else(BigRational::zero))
        .collect()
}

/// `p_n(x)` at a rational point.
pub fn p_poly(n: u32, x: &BigRational) -> BigRational {
    p_polynomial(n)
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// `M(a;n) = C(a+n-1, n-a) + C(a+n-2, n-a-1)` for `a ≤ n ≤ 2a`.
pub fn m_closed_form(a: u32, n: u32) -> Result<BigInt> {
    if n < a || n > 2 * a {
        return Err(Error::InvalidArgument(format!(
            "closed form needs {a} <= n <= {}, got {n}",
            2 * a
        )));
    }
    let (a, n) = (a as u64, n as u64);
    let second = if n > a {
        binomial(a + n - 2, n - a - 1)
    } else {
        BigInt::zero()
    };
    Ok(binomial(a + n - 1, n - a) + second)
}

/// `∏_k (1 + 4 s q^k/(1-q^k)^2) = Σ 4^a U_a s^a` and its reciprocal
/// `Σ (-4)^a U_a* s^a`, with `s = sin² x`.
pub fn bivariate_identity_check(s_degree: u32, precision: usize) -> Report {
    let deg = s_degree as usize;
    let mut product = crate::series::BivariateSeries::one(deg, precision);
    for k in 1..precision {
        let mut g = QSeries::monomial(QR, qi(4), k, precision);
        g = g.divide_by_one_minus_qk(k).divide_by_one_minus_qk(k);
        product = product.mul(&crate::series::BivariateSeries::one_plus_s_times(&g, deg));
    }
    let reciprocal = product.invert().expect("s^0 row is 1");
    let u = direct_all(Family::Mo, s_degree, precision);
    let us = direct_all(Family::M, s_degree, precision);
    let mut r = Report::new(format!("bivariate A={s_degree} N={precision}"));
    for a in 0..=deg {
        let four = BigRational::from_integer(BigInt::from(4).pow(a as u32));
        r.check(
            format!("s^{a} row = 4^{a} U_{a}"),
            *product.row(a) == u[a].scale(&four),
        );
        let sign = if a % 2 == 0 { four } else { -four };
        r.check(
            format!("reciprocal s^{a} row = (-4)^{a} U*_{a}"),
            *reciprocal.row(a) == us[a].scale(&sign),
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, ModInt};

    fn ints(s: &QSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    /// Sum over index chains and multiplicities `m_i ≥ 1` of `∏ m_i`.
    fn brute(strict: bool, a: usize, n: usize) -> i64 {
        fn go(strict: bool, left: usize, min_k: usize, rest: usize) -> i64 {
            if left == 0 {
                return (rest == 0) as i64;
            }
            let mut total = 0;
            for k in min_k.max(1)..=rest {
                for m in 1..=rest / k {
                    let next = if strict { k + 1 } else { k };
                    total += m as i64 * go(strict, left - 1, next, rest - m * k);
                }
            }
            total
        }
        go(strict, a, 1, n)
    }

    #[test]
    fn direct_matches_naive_chains() {
        for a in 1..=3 {
            let mo = mo_direct(a, 40).series;
            let m = m_direct(a, 40).series;
            for n in 0..40 {
                assert_eq!(*mo.coeff(n), qi(brute(true, a as usize, n)), "MO({a};{n})");
                assert_eq!(*m.coeff(n), qi(brute(false, a as usize, n)), "M({a};{n})");
            }
        }
    }

    #[test]
    fn displayed_series() {
        assert_eq!(ints(&mo_direct(1, 8).series), [0, 1, 3, 4, 7, 6, 12, 8]);
        assert_eq!(
            ints(&mo_direct(2, 10).series),
            [0, 0, 0, 1, 3, 9, 15, 30, 45, 67]
        );
        assert_eq!(
            ints(&mo_direct(4, 17).series)[10..],
            [1, 3, 9, 22, 51, 97, 188]
        );
        assert_eq!(ints(&m_direct(2, 8).series), [0, 0, 1, 5, 14, 29, 55, 86]);
        assert_eq!(
            ints(&m_direct(3, 9).series),
            [0, 0, 0, 1, 7, 27, 77, 181, 378]
        );
        assert_eq!(
            ints(&m_direct(4, 10).series)[4..],
            [1, 9, 44, 156, 450, 1121]
        );
        assert_eq!(m_direct(1, 30).series, mo_direct(1, 30).series);
    }

    #[test]
    fn leading_terms() {
        for a in 1..=6u32 {
            let mo = mo_direct(a, 40).series;
            assert_eq!(mo.valuation(), Some(mo_start(a)));
            assert_eq!(*mo.coeff(mo_start(a)), qi(1));
            let m = m_direct(a, 40).series;
            assert_eq!(m.valuation(), Some(a as usize));
            assert_eq!(*m.coeff(a as usize + 1), qi(2 * a as i64 + 1));
        }
    }

    #[test]
    fn methods_agree_small() {
        for a in 0..=4 {
            assert!(method_agreement(Family::Mo, a, 40).passed(), "mo a={a}");
            assert!(method_agreement(Family::M, a, 40).passed(), "m a={a}");
        }
    }

    #[test]
    fn modular_direct_is_reduction() {
        let ring = CoefficientRing::IntegerMod(11);
        let exact = mo_direct(3, 60).series;
        let modular: Series<ModInt> = mo_direct_in(3, 60, ring);
        assert_eq!(crate::series::reduce_mod(&exact, 11).unwrap(), modular);
        let exact = m_single_sum(3, 60).series;
        let modular: Series<ModInt> = m_single_sum_in(3, 60, ring);
        assert_eq!(crate::series::reduce_mod(&exact, 11).unwrap(), modular);
    }

    #[test]
    fn single_sum_coefficients_are_integers() {
        for a in 1..=6u32 {
            for n in 0..60u64 {
                let a64 = a as u64;
                let exact = if n < a64 {
                    BigRational::zero()
                } else {
                    BigRational::new(
                        factorial(n + a64) * (2 * n + 1),
                        factorial(2 * a64 + 1) * factorial(n - a64),
                    )
                };
                assert!(exact.is_integer());
                assert_eq!(
                    BigRational::from_integer(single_sum_coefficient(a, n)),
                    exact
                );
            }
        }
    }

    #[test]
    fn eisenstein_route_returns_both_forms() {
        let (s, e) = mo_eisenstein(3, 20);
        assert_eq!(s.series, mo_direct(3, 20).series);
        assert!(e.max_weight() <= 6);
        let (s, e) = m_eisenstein(5, 20);
        assert_eq!(s.series, m_direct(5, 20).series);
        assert!(e.max_weight() <= 10);
    }

    #[test]
    fn convolution_small() {
        for a in 1..=4 {
            assert!(convolution_check(a, 40).passed());
        }
    }

    #[test]
    fn hook_limit_examples() {
        assert_eq!(hook_limit_value(3, 7).unwrap(), BigInt::from(3));
        assert_eq!(hook_limit_value(4, 14).unwrap(), BigInt::from(51));
        assert_eq!(hook_limit_value(2, 5).unwrap(), BigInt::from(9));
        assert!(hook_limit_value(2, 2).is_err());
        assert!(hook_limit_value(2, 6).is_err());
        assert!(hook_limit_check(3).unwrap().passed());
    }

    #[test]
    fn literal_index_reading_disagrees() {
        // Summing over partitions of n - a instead of n - a(a+1)/2.
        let literal = colored3(5 - 2).unwrap();
        assert_eq!(literal, BigInt::from(22));
        assert_eq!(*mo_direct(2, 6).series.coeff(5), qi(9));
    }

    #[test]
    fn p_polynomials() {
        assert_eq!(p_polynomial(0), vec![qi(1)]);
        assert_eq!(p_polynomial(1), vec![qi(1), qi(2)]);
        assert_eq!(p_polynomial(3), vec![qi(0), q(5, 3), qi(4), q(4, 3)]);
        assert_eq!(p_poly(2, &qi(4)), qi(44));
        assert_eq!(*m_direct(4, 7).series.coeff(6), qi(44));
    }

    #[test]
    fn p_poly_gives_initial_m_values() {
        for a in 1..=6u32 {
            let m = m_direct(a, 2 * a as usize + 1).series;
            for n in 0..=a {
                assert_eq!(p_poly(n, &qi(a as i64)), *m.coeff((a + n) as usize));
            }
        }
    }

    #[test]
    fn limit_expansion_small() {
        for a in 1..=3 {
            let r = limit_expansion_check(a, 40);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn bivariate_small() {
        assert!(bivariate_identity_check(3, 20).passed());
    }

    #[test]
    fn json_shape() {
        let s = mo_direct(1, 3);
        assert_eq!(
            s.to_json().to_string(),
            r#"{"a":1,"coeffs":["0","1","3"],"family":"mo","method":"direct","precision":3}"#
        );
    }

    #[test]
    fn parse_names() {
        assert_eq!("mo".parse::<Family>().unwrap(), Family::Mo);
        assert_eq!("single-sum".parse::<Method>().unwrap(), Method::SingleSum);
        assert!("x".parse::<Family>().is_err());
        assert!(compute(Family::M, 2, Method::Recursion, 5).is_err());
    }
}
