//! Truncated formal power series in `q` over a [`Coefficient`] ring.
//!
//! A series knows exactly `precision` coefficients, for the exponents
//! `0..precision`. Binary operations truncate to the smaller precision of
//! their operands and never claim more.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::SeriesError;
use crate::ring::{Coefficient, CoefficientRing, ModInt};

#[derive(Clone, Debug, PartialEq)]
pub struct Series<R> {
    ring: CoefficientRing,
    coeffs: Vec<R>,
}

/// Series over the exact rationals.
pub type QSeries = Series<BigRational>;
/// Series over `Z/mZ`.
pub type ModSeries = Series<ModInt>;

impl<R: Coefficient> Series<R> {
    /// Builds a series from explicit coefficients; every entry must live in `ring`.
    pub fn new(ring: CoefficientRing, coeffs: Vec<R>) -> Result<Self, SeriesError> {
        if let Some(bad) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(SeriesError::RingMismatch {
                left: ring,
                right: bad.ring(),
            });
        }
        Ok(Series { ring, coeffs })
    }

    pub(crate) fn from_vec(ring: CoefficientRing, coeffs: Vec<R>) -> Self {
        Series { ring, coeffs }
    }

    pub fn zero(ring: CoefficientRing, precision: usize) -> Self {
        Series {
            ring,
            coeffs: vec![R::zero_in(ring); precision],
        }
    }

    pub fn one(ring: CoefficientRing, precision: usize) -> Self {
        let mut s = Self::zero(ring, precision);
        if precision > 0 {
            s.coeffs[0] = R::one_in(ring);
        }
        s
    }

    /// `c * q^k` to the given precision.
    pub fn monomial(ring: CoefficientRing, c: R, k: usize, precision: usize) -> Self {
        let mut s = Self::zero(ring, precision);
        if k < precision {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_fn(ring: CoefficientRing, precision: usize, f: impl FnMut(usize) -> R) -> Self {
        Series {
            ring,
            coeffs: (0..precision).map(f).collect(),
        }
    }

    pub fn from_i64s(ring: CoefficientRing, values: &[i64]) -> Self {
        Series {
            ring,
            coeffs: values.iter().map(|&v| R::from_i64(v, ring)).collect(),
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `q^n`; panics past the known precision.
    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&R> {
        self.coeffs.get(n)
    }

    pub fn set(&mut self, n: usize, c: R) {
        self.coeffs[n] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_zero)
    }

    /// Smallest exponent with a non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exponents carrying non-zero coefficients.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, _)| n)
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let n = precision.min(self.precision());
        Series {
            ring: self.ring,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ring != other.ring {
            return Err(SeriesError::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let n = self.precision().min(other.precision());
        Ok(Series {
            ring: self.ring,
            coeffs: (0..n)
                .map(|i| self.coeffs[i].ring_add(&other.coeffs[i]))
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let n = self.precision().min(other.precision());
        Ok(Series {
            ring: self.ring,
            coeffs: (0..n)
                .map(|i| self.coeffs[i].ring_sub(&other.coeffs[i]))
                .collect(),
        })
    }

    /// Truncated Cauchy product (schoolbook).
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let n = self.precision().min(other.precision());
        let mut out = vec![R::zero_in(self.ring); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j].add_assign(&a.ring_mul(b));
                }
            }
        }
        Ok(Series {
            ring: self.ring,
            coeffs: out,
        })
    }

    pub fn neg(&self) -> Self {
        Series {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(Coefficient::ring_neg).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Series {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|x| x.ring_mul(c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&R::from_i64(c, self.ring))
    }

    /// Multiplies by `q^k`, keeping the precision.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.precision();
        Series::from_fn(self.ring, n, |i| {
            if i >= k {
                self.coeffs[i - k].clone()
            } else {
                R::zero_in(self.ring)
            }
        })
    }

    /// Divides by `q^k`; the first `k` coefficients must vanish. Loses `k` of precision.
    pub fn shift_down(&self, k: usize) -> Result<Self, SeriesError> {
        if let Some(bad) = self.coeffs.iter().take(k).position(|c| !c.is_zero()) {
            return Err(SeriesError::NonZeroLeadingTerm(bad));
        }
        Ok(Series {
            ring: self.ring,
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    /// `Θ = q d/dq`: multiplies the coefficient of `q^n` by `n`.
    pub fn theta(&self) -> Self {
        Series::from_fn(self.ring, self.precision(), |n| {
            self.coeffs[n].ring_mul(&R::from_i64(n as i64, self.ring))
        })
    }

    /// `(Θ + c) f`.
    pub fn theta_shifted(&self, c: &R) -> Self {
        Series::from_fn(self.ring, self.precision(), |n| {
            let factor = R::from_i64(n as i64, self.ring).ring_add(c);
            self.coeffs[n].ring_mul(&factor)
        })
    }

    pub fn theta_pow(&self, k: u32) -> Self {
        Series::from_fn(self.ring, self.precision(), |n| {
            let mut factor = R::one_in(self.ring);
            let nn = R::from_i64(n as i64, self.ring);
            for _ in 0..k {
                factor = factor.ring_mul(&nn);
            }
            self.coeffs[n].ring_mul(&factor)
        })
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn try_invert(&self) -> Result<Self, SeriesError> {
        let n = self.precision();
        if n == 0 {
            return Ok(self.clone());
        }
        let c0_inv = self.coeffs[0]
            .inverse()
            .ok_or(SeriesError::NonUnitConstant(self.ring))?;
        let mut out: Vec<R> = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            let mut acc = R::zero_in(self.ring);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc.add_assign(&self.coeffs[j].ring_mul(&out[k - j]));
                }
            }
            out.push(acc.ring_neg().ring_mul(&c0_inv));
        }
        Ok(Series {
            ring: self.ring,
            coeffs: out,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Series::one(self.ring, self.precision());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f | V_d`: substitutes `q -> q^d`. Precision becomes `d * precision`.
    pub fn stretch(&self, d: usize) -> Self {
        assert!(d >= 1);
        let n = self.precision() * d;
        let mut out = vec![R::zero_in(self.ring); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * d] = c.clone();
        }
        Series {
            ring: self.ring,
            coeffs: out,
        }
    }

    /// `f | U_d`: keeps the coefficients `a(d n)`.
    pub fn compress(&self, d: usize) -> Self {
        assert!(d >= 1);
        Series {
            ring: self.ring,
            coeffs: self.coeffs.iter().step_by(d).cloned().collect(),
        }
    }

    /// Multiplies by `1 / (1 - q^k)` in place of an explicit inverse.
    pub fn divide_by_one_minus_qk(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = self.coeffs.clone();
        for n in k..out.len() {
            let prev = out[n - k].clone();
            out[n].add_assign(&prev);
        }
        Series {
            ring: self.ring,
            coeffs: out,
        }
    }

    /// Multiplies by `(1 - q^k)`.
    pub fn times_one_minus_qk(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = self.coeffs.clone();
        for n in (k..out.len()).rev() {
            out[n] = out[n].ring_sub(&self.coeffs[n - k]);
        }
        Series {
            ring: self.ring,
            coeffs: out,
        }
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs.iter().map(Coefficient::to_json).collect();
        match self.ring {
            CoefficientRing::ExactRational => json!({
                "ring": self.ring.name(),
                "precision": self.precision(),
                "coeffs": coeffs,
            }),
            CoefficientRing::IntegerMod(m) => json!({
                "ring": self.ring.name(),
                "modulus": m,
                "precision": self.precision(),
                "coeffs": coeffs,
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, SeriesError> {
        let bad = |msg: &str| SeriesError::Json(msg.to_string());
        let ring = match v.get("ring").and_then(Value::as_str) {
            Some("rational") => CoefficientRing::ExactRational,
            Some("integer_mod") => {
                let m = v
                    .get("modulus")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("missing modulus"))?;
                CoefficientRing::integer_mod(m)?
            }
            _ => return Err(bad("unknown ring")),
        };
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing coeffs"))?;
        let precision = v
            .get("precision")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing precision"))?;
        if precision as usize != coeffs.len() {
            return Err(bad("precision does not match coefficient count"));
        }
        let parsed = coeffs
            .iter()
            .map(|c| R::from_json(c, ring).ok_or_else(|| bad("bad coefficient")))
            .collect::<Result<Vec<_>, _>>()?;
        Series::new(ring, parsed)
    }
}

impl<R: Coefficient> Serialize for Series<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl QSeries {
    pub fn rational_zero(precision: usize) -> Self {
        Series::zero(CoefficientRing::ExactRational, precision)
    }

    pub fn rational_one(precision: usize) -> Self {
        Series::one(CoefficientRing::ExactRational, precision)
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Series::from_i64s(CoefficientRing::ExactRational, values)
    }

    /// `exp(f)` for `f` with zero constant term, via `Θ exp(f) = exp(f) Θf`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let n = self.precision();
        if n == 0 {
            return Ok(self.clone());
        }
        if !Zero::is_zero(&self.coeffs[0]) {
            return Err(SeriesError::NonZeroConstant);
        }
        let mut out = vec![BigRational::zero(); n];
        out[0] = BigRational::one();
        for m in 1..n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !Zero::is_zero(&self.coeffs[k]) {
                    acc += &self.coeffs[k] * BigRational::from_integer(k.into()) * &out[m - k];
                }
            }
            out[m] = acc / BigRational::from_integer(m.into());
        }
        Ok(Series::from_vec(CoefficientRing::ExactRational, out))
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

/// Coefficient-wise reduction of a rational series into `Z/mZ`.
pub fn reduce_mod(f: &QSeries, m: u64) -> Result<ModSeries, SeriesError> {
    let ring = CoefficientRing::integer_mod(m)?;
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| {
            ModInt::from_rational(c, ring).ok_or_else(|| SeriesError::NonIntegralCoefficient {
                exponent: n,
                denominator: c.denom().clone(),
                modulus: m,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Series::from_vec(ring, coeffs))
}

/// `σ_ν(n) = Σ_{d | n} d^ν`.
pub fn sigma(nu: u32, n: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(nu);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(nu);
            }
        }
        d += 1;
    }
    total
}

/// `Σ_{n≥1} σ_ν(n) q^n` to the given precision (divisor sieve).
pub fn sigma_series<R: Coefficient>(nu: u32, precision: usize, ring: CoefficientRing) -> Series<R> {
    let mut acc = vec![BigInt::zero(); precision];
    for d in 1..precision {
        let dp = BigInt::from(d).pow(nu);
        for m in (d..precision).step_by(d) {
            acc[m] += &dp;
        }
    }
    Series::from_vec(ring, acc.iter().map(|v| R::from_bigint(v, ring)).collect())
}

/// `Σ_{n≥0} (-1)^n (2n+1) q^{n(n+1)/2}`: `η(q)^3` with its `q^{1/8}` removed.
pub fn psi_tilde<R: Coefficient>(precision: usize, ring: CoefficientRing) -> Series<R> {
    let mut s = Series::zero(ring, precision);
    let mut n = 0usize;
    loop {
        let e = n * (n + 1) / 2;
        if e >= precision {
            break;
        }
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        s.coeffs[e] = R::from_i64(sign * (2 * n as i64 + 1), ring);
        n += 1;
    }
    s
}

/// `∏_{n≥1} (1 - q^n)` by direct multiplication of the factors.
pub fn euler_product<R: Coefficient>(precision: usize, ring: CoefficientRing) -> Series<R> {
    let mut s = Series::one(ring, precision);
    for k in 1..precision {
        s = s.times_one_minus_qk(k);
    }
    s
}

/// `∏_{n≥1} (1 - q^n)^{-k}`: the `k`-coloured partition generating function.
pub fn colored_partition_series<R: Coefficient>(
    k: u32,
    precision: usize,
    ring: CoefficientRing,
) -> Series<R> {
    let mut s = Series::one(ring, precision);
    for n in 1..precision {
        for _ in 0..k {
            s = s.divide_by_one_minus_qk(n);
        }
    }
    s
}

/// `Δ = q ∏ (1 - q^n)^24`.
pub fn delta<R: Coefficient>(precision: usize, ring: CoefficientRing) -> Series<R> {
    let eta24 = euler_product::<R>(precision, ring).pow(24);
    eta24.shift_up(1)
}

impl<R: Coefficient> Add for &Series<R> {
    type Output = Series<R>;
    fn add(self, rhs: Self) -> Series<R> {
        self.try_add(rhs).expect("series ring mismatch")
    }
}

impl<R: Coefficient> Sub for &Series<R> {
    type Output = Series<R>;
    fn sub(self, rhs: Self) -> Series<R> {
        self.try_sub(rhs).expect("series ring mismatch")
    }
}

impl<R: Coefficient> Mul for &Series<R> {
    type Output = Series<R>;
    fn mul(self, rhs: Self) -> Series<R> {
        self.try_mul(rhs).expect("series ring mismatch")
    }
}

impl<R: Coefficient> Neg for &Series<R> {
    type Output = Series<R>;
    fn neg(self) -> Series<R> {
        Series::neg(self)
    }
}

/// Power series in `s` (degree `≤ s_degree`) whose coefficients are q-series.
///
/// `s` stands for `sin² x`; identities in `x` are checked as identities in `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries {
    q_precision: usize,
    rows: Vec<QSeries>,
}

impl BivariateSeries {
    pub fn one(s_degree: usize, q_precision: usize) -> Self {
        let mut rows = vec![QSeries::rational_zero(q_precision); s_degree + 1];
        rows[0] = QSeries::rational_one(q_precision);
        BivariateSeries { q_precision, rows }
    }

    /// `1 + s * g`.
    pub fn one_plus_s_times(g: &QSeries, s_degree: usize) -> Self {
        let mut b = Self::one(s_degree, g.precision());
        if s_degree >= 1 {
            b.rows[1] = g.clone();
        }
        b
    }

    pub fn s_degree(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn q_precision(&self) -> usize {
        self.q_precision
    }

    /// Coefficient of `s^a` (a q-series).
    pub fn row(&self, a: usize) -> &QSeries {
        &self.rows[a]
    }

    /// Coefficient of `s^a q^n`.
    pub fn coeff(&self, a: usize, n: usize) -> &BigRational {
        self.rows[a].coeff(n)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let deg = self.s_degree().min(other.s_degree());
        let qp = self.q_precision.min(other.q_precision);
        let mut rows = vec![QSeries::rational_zero(qp); deg + 1];
        for (i, a) in self.rows.iter().take(deg + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.rows.iter().take(deg + 1 - i).enumerate() {
                if !b.is_zero() {
                    rows[i + j] = &rows[i + j] + &(a * b);
                }
            }
        }
        BivariateSeries {
            q_precision: qp,
            rows,
        }
    }

    /// Reciprocal as a power series in `s`; the `s^0` row must be invertible.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let inv0 = self.rows[0].try_invert()?;
        let deg = self.s_degree();
        let mut out: Vec<QSeries> = Vec::with_capacity(deg + 1);
        out.push(inv0.clone());
        for a in 1..=deg {
            let mut acc = QSeries::rational_zero(self.q_precision);
            for i in 1..=a {
                acc = &acc + &(&self.rows[i] * &out[a - i]);
            }
            out.push(&(-&acc) * &inv0);
        }
        Ok(BivariateSeries {
            q_precision: self.q_precision,
            rows: out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, qi};

    const QR: CoefficientRing = CoefficientRing::ExactRational;

    fn ints(s: &QSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn add_cancels() {
        let f = QSeries::from_integers(&[1, 1, 0]);
        let g = QSeries::from_integers(&[1, -1, 0]);
        assert_eq!(ints(&(&f + &g)), vec![2, 0, 0]);
    }

    #[test]
    fn add_of_u1_doubles() {
        let u1: QSeries = sigma_series(1, 8, QR);
        assert_eq!(ints(&(&u1 + &u1)), vec![0, 2, 6, 8, 14, 12, 24, 16]);
    }

    #[test]
    fn geometric_inverse() {
        let f = QSeries::from_integers(&[1, -1, 0, 0, 0, 0]);
        let g = QSeries::from_integers(&[1, 1, 1, 1, 1, 1]);
        assert_eq!(ints(&(&f * &g)), vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn three_colored_partitions() {
        let p3: QSeries = colored_partition_series(3, 7, QR);
        assert_eq!(ints(&p3), vec![1, 3, 9, 22, 51, 108, 221]);
        let inv = euler_product::<BigRational>(7, QR)
            .pow(3)
            .try_invert()
            .unwrap();
        assert_eq!(inv, p3);
    }

    #[test]
    fn precision_is_min_of_operands() {
        let f = QSeries::rational_one(10);
        let g = QSeries::rational_one(4);
        assert_eq!((&f * &g).precision(), 4);
        assert_eq!((&f + &g).precision(), 4);
        assert_eq!((&g - &f).precision(), 4);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ModSeries::one(CoefficientRing::IntegerMod(5), 3);
        let b = ModSeries::one(CoefficientRing::IntegerMod(7), 3);
        assert!(matches!(
            a.try_mul(&b),
            Err(SeriesError::RingMismatch { .. })
        ));
        assert!(matches!(
            a.try_add(&b),
            Err(SeriesError::RingMismatch { .. })
        ));
    }

    #[test]
    fn invert_requires_unit_constant() {
        let f = QSeries::from_integers(&[0, 1, 2]);
        assert!(matches!(
            f.try_invert(),
            Err(SeriesError::NonUnitConstant(_))
        ));
        let r = CoefficientRing::IntegerMod(6);
        let g = ModSeries::from_i64s(r, &[3, 1, 1]);
        assert!(g.try_invert().is_err());
        let h = ModSeries::from_i64s(r, &[5, 1, 1]);
        let prod = &h * &h.try_invert().unwrap();
        assert_eq!(prod, ModSeries::one(r, 3));
    }

    #[test]
    fn theta_examples() {
        assert!(QSeries::rational_one(5).theta().is_zero());
        let u1: QSeries = sigma_series(1, 5, QR);
        assert_eq!(ints(&u1.theta()), vec![0, 1, 6, 12, 28]);
    }

    #[test]
    fn sigma_examples() {
        let s1: QSeries = sigma_series(1, 8, QR);
        assert_eq!(ints(&s1), vec![0, 1, 3, 4, 7, 6, 12, 8]);
        let s3: QSeries = sigma_series(3, 3, QR);
        assert_eq!(*s3.coeff(2), qi(9));
        let s5: QSeries = sigma_series(5, 5, QR);
        assert_eq!(*s5.coeff(4), qi(1 + 32 + 1024));
        assert_eq!(sigma(5, 4), BigInt::from(1057));
    }

    #[test]
    fn psi_tilde_terms() {
        let p: QSeries = psi_tilde(11, QR);
        assert_eq!(ints(&p), vec![1, -3, 0, 5, 0, 0, -7, 0, 0, 0, 9]);
    }

    #[test]
    fn psi_tilde_is_cube_of_euler_product() {
        let n = 60;
        let p: QSeries = psi_tilde(n, QR);
        let p3: QSeries = colored_partition_series(3, n, QR);
        assert_eq!(&p * &p3, QSeries::rational_one(n));
    }

    #[test]
    fn shift_down_checks_leading_zeros() {
        let f = QSeries::from_integers(&[0, 0, 3, 4]);
        assert_eq!(ints(&f.shift_down(2).unwrap()), vec![3, 4]);
        assert!(matches!(
            f.shift_down(3),
            Err(SeriesError::NonZeroLeadingTerm(2))
        ));
    }

    #[test]
    fn reduce_mod_reports_denominators() {
        let f = Series::new(QR, vec![qi(1), q(1, 3), q(2, 11)]).unwrap();
        let err = reduce_mod(&f, 11).unwrap_err();
        assert_eq!(
            err,
            SeriesError::NonIntegralCoefficient {
                exponent: 2,
                denominator: BigInt::from(11),
                modulus: 11
            }
        );
        let g = reduce_mod(&f.truncate(2), 11).unwrap();
        assert_eq!(g.coeff(1).value(), 4); // 3 * 4 = 12 = 1
    }

    #[test]
    fn exp_of_log_geometric() {
        // exp(Σ q^i / i) = 1/(1-q)
        let n = 8;
        let log = Series::from_fn(QR, n, |i| if i == 0 { qi(0) } else { q(1, i as i64) });
        let e = log.exp().unwrap();
        assert_eq!(e, QSeries::from_integers(&[1; 8]));
    }

    #[test]
    fn u_and_v_operators() {
        let f = QSeries::from_integers(&[1, 2, 3, 4]);
        let v = f.stretch(3);
        assert_eq!(v.precision(), 12);
        assert_eq!(v.compress(3), f);
    }

    #[test]
    fn json_shape() {
        let f = Series::new(QR, vec![qi(1), q(-1, 24)]).unwrap();
        assert_eq!(
            f.to_json().to_string(),
            r#"{"coeffs":["1","-1/24"],"precision":2,"ring":"rational"}"#
        );
        let g = ModSeries::from_i64s(CoefficientRing::IntegerMod(7), &[1, -1]);
        assert_eq!(
            g.to_json().to_string(),
            r#"{"coeffs":[1,6],"modulus":7,"precision":2,"ring":"integer_mod"}"#
        );
        assert_eq!(ModSeries::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn bivariate_reciprocal() {
        let g = QSeries::from_integers(&[0, 1, 1, 1]);
        let b = BivariateSeries::one_plus_s_times(&g, 3);
        let prod = b.mul(&b.invert().unwrap());
        assert_eq!(prod, BivariateSeries::one(3, 4));
    }
}
