//! The divisor-sum congruence families for `a ≤ 5`, the `E_2` congruences
//! modulo prime powers, and an empirical search for progressions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::forms::is_prime;
use crate::eisenstein::eisenstein;
use crate::error::{Error, Result};
use crate::macmahon::{direct_in, mo_direct, mo_start, Family};
use crate::report::Report;
use crate::ring::{valuation, Coefficient, CoefficientRing, ModInt};
use crate::series::{reduce_mod, sigma, ModSeries, QSeries, Series};

/// `(k, polynomial)` pairs; the polynomial multiplies `σ_k(n)` and lists its
/// constant term first.
pub type SigmaTerms = Vec<(u32, Vec<i64>)>;

/// `N_a` together with the polynomial multiplying `σ_k(n)`, `k = 1, 3, …`.
pub fn sigma_expansion_table(a: u32) -> Option<(u64, SigmaTerms)> {
    let t = match a {
        2 => (8, vec![(1, vec![1, -2]), (3, vec![1])]),
        3 => (
            1920,
            vec![(1, vec![37, -100, 40]), (3, vec![50, -30]), (5, vec![3])],
        ),
        4 => (
            967680,
            vec![
                (1, vec![3229, -9870, 5880, -840]),
                (3, vec![4935, -4410, 756]),
                (5, vec![441, -126]),
                (7, vec![5]),
            ],
        ),
        5 => (
            154828800,
            vec![
                (1, vec![96111, -314200, 223440, -50400, 3360]),
                (3, vec![157100, -167580, 45360, -3360]),
                (5, vec![16758, -7560, 720]),
                (7, vec![300, -50]),
                (9, vec![1]),
            ],
        ),
        _ => return None,
    };
    Some(t)
}

fn eval_poly(poly: &[i64], n: u64) -> BigInt {
    let x = BigInt::from(n);
    poly.iter()
        .rev()
        .fold(BigInt::zero(), |acc, &c| acc * &x + BigInt::from(c))
}

/// `U_a` from its divisor-sum expansion, with `σ_k(0) = 0`.
pub fn sigma_expansion(a: u32, precision: usize) -> Result<QSeries> {
    let (denom, terms) = sigma_expansion_table(a).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "divisor-sum expansion tabulated for a in 2..=5, got {a}"
        ))
    })?;
    let d = BigInt::from(denom);
    Ok(Series::from_fn(
        CoefficientRing::ExactRational,
        precision,
        |n| {
            if n == 0 {
                return BigRational::zero();
            }
            let num: BigInt = terms
                .iter()
                .map(|(k, poly)| eval_poly(poly, n as u64) * sigma(*k, n as u64))
                .sum();
            BigRational::new(num, d.clone())
        },
    ))
}

/// Whether `p` meets the hypothesis of the congruence family for `(a, ℓ)`.
pub fn corollary_applies(a: u32, l: u64, p: u64) -> Result<bool> {
    let (denom, _) = sigma_expansion_table(a)
        .ok_or_else(|| Error::InvalidArgument(format!("a must lie in 2..=5, got {a}")))?;
    if !is_prime(l) || !is_prime(p) {
        return Err(Error::InvalidArgument(format!(
            "need primes, got l={l}, p={p}"
        )));
    }
    let modulus = if l <= 7 {
        l.pow(valuation(&BigInt::from(denom), l) + 1)
    } else {
        l
    };
    Ok((p + 1).is_multiple_of(modulus))
}

/// Checks the divisor-sum expansion of `U_a` against the direct sum to `N`
/// terms, then `MO(a; pn) ≡ 0 (mod ℓ)` for every `pn < N` with `p ∤ n`.
pub fn corollary_check(a: u32, l: u64, p: u64, precision: usize) -> Result<Report> {
    if !corollary_applies(a, l, p)? {
        return Err(Error::InvalidArgument(format!(
            "p = {p} is not -1 modulo the required power of {l} for a = {a}"
        )));
    }
    let mut r = Report::new(format!(
        "divisor-sum congruences a={a} l={l} p={p} N={precision}"
    ));

    let expansion_n = precision.clamp(2, 100);
    let direct = mo_direct(a, expansion_n).series;
    let closed = sigma_expansion(a, expansion_n)?;
    r.check_with(
        "divisor-sum expansion equals U_a",
        direct == closed,
        format!("{expansion_n} coefficients"),
    );

    let s: ModSeries = direct_in(Family::Mo, a, precision, CoefficientRing::IntegerMod(l));
    let mut terms = 0usize;
    let mut failure = None;
    for n in 1..=(precision as u64 - 1) / p {
        if n % p == 0 {
            continue;
        }
        terms += 1;
        if !s.coeff((p * n) as usize).is_zero() {
            failure = Some(p * n);
            break;
        }
    }
    r.check_with(
        format!("MO({a}; {p}n) = 0 mod {l} for n prime to {p}"),
        failure.is_none(),
        match failure {
            None => format!("{terms} exponents below {precision}"),
            Some(e) => format!("non-zero at {e}"),
        },
    );

    let mut example = None;
    let mut example_terms = 0usize;
    for t in 1..p {
        for e in (p * t..precision as u64).step_by((p * p) as usize) {
            example_terms += 1;
            if !s.coeff(e as usize).is_zero() {
                example = example.or(Some(e));
            }
        }
    }
    r.check_with(
        format!("MO({a}; {p}^2 n + {p} t) = 0 mod {l}, 1 <= t < {p}"),
        example.is_none(),
        match example {
            None => format!("{example_terms} exponents"),
            Some(e) => format!("non-zero at {e}"),
        },
    );
    Ok(r)
}

/// Weight and scalar of the `E_2` congruence modulo `p^m`.
fn e2_congruence_data(p: u64, m: u32) -> (u32, BigRational) {
    let pm = BigInt::from(p).pow(m);
    match p {
        2 => (
            2 + 3 * 2u32.pow(m + 1),
            BigRational::new(BigInt::one(), pm - 1),
        ),
        3 => (
            2 + 4 * 3u32.pow(m),
            BigRational::new(BigInt::from(2), pm - 1),
        ),
        _ => (
            2 + (p as u32 - 1) * (p as u32).pow(m - 1),
            BigRational::new(BigInt::from(p - 1), pm - 1),
        ),
    }
}

/// `c Σ_{i=1}^m p^{i-1} E_k | V_{d_i}` mod `p^m`, with `d_i = p^{i-1}`, or
/// `d_i = p^{m-1}` for every `i` when `fixed_stretch` is set.
fn e2_congruence_rhs(p: u64, m: u32, precision: usize, fixed_stretch: bool) -> Result<ModSeries> {
    let modulus = p.pow(m);
    let ring = CoefficientRing::integer_mod(modulus)?;
    let (k, scalar) = e2_congruence_data(p, m);
    let ek = reduce_mod(&eisenstein(k, precision), modulus)?;
    let c = ModInt::from_rational(&scalar, ring).ok_or_else(|| {
        Error::Consistency(format!("scalar {scalar} not invertible mod {modulus}"))
    })?;
    let mut acc = ModSeries::zero(ring, precision);
    for i in 1..=m {
        let d = if fixed_stretch {
            p.pow(m - 1)
        } else {
            p.pow(i - 1)
        };
        let term = ek
            .stretch(d as usize)
            .truncate(precision)
            .scale(&ModInt::from_u64(p.pow(i - 1), modulus));
        acc = acc.try_add(&term)?;
    }
    Ok(acc.scale(&c))
}

/// Finite-precision check of `E_2 mod p^m` as a sum of stretched `E_k`.
pub fn lemma2_check(p: u64, m: u32, precision: usize) -> Result<Report> {
    if !is_prime(p) || m == 0 || precision == 0 {
        return Err(Error::InvalidArgument(format!(
            "need a prime p, m >= 1 and N >= 1; got p={p}, m={m}, N={precision}"
        )));
    }
    let modulus = p
        .checked_pow(m)
        .filter(|&q| q < 1 << 31)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{m} is too large")))?;
    let (k, _) = e2_congruence_data(p, m);
    let mut r = Report::new(format!("E_2 mod {p}^{m}, weight {k}, N={precision}"));
    let e2 = reduce_mod(&eisenstein(2, precision), modulus)?;
    let rhs = e2_congruence_rhs(p, m, precision, false)?;
    r.check_with(
        format!("E_2 = c sum p^(i-1) E_{k} | V_(p^(i-1)) mod {modulus}"),
        e2 == rhs,
        format!("{precision} coefficients"),
    );
    if p >= 5 {
        r.check(
            format!("E_{} = 1 mod {modulus}", (p - 1) * p.pow(m - 1)),
            reduce_mod(
                &eisenstein(((p - 1) * p.pow(m - 1)) as u32, precision),
                modulus,
            )? == ModSeries::one(CoefficientRing::IntegerMod(modulus), precision),
        );
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanCandidate {
    pub family: Family,
    pub a: u32,
    pub modulus: u64,
    pub t: u64,
    pub r: u64,
    /// Largest `n` with `tn + r` inside the computed range.
    pub n_max_checked: u64,
}

impl ScanCandidate {
    pub const CSV_HEADER: &'static str = "family,a,modulus,t,r,n_max_checked";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.family, self.a, self.modulus, self.t, self.r, self.n_max_checked
        )
    }
}

/// Progressions `tn + r`, `2 ≤ t ≤ ℓ²`, on which every computed coefficient
/// below `N` vanishes mod `ℓ`. At least two terms past the leading zeros are
/// required, and a progression is dropped when a coarser one already covers it.
/// These are candidates only.
pub fn scan(family: Family, a: u32, l: u64, precision: usize) -> Result<Vec<ScanCandidate>> {
    if l < 2 || precision < 2 {
        return Err(Error::InvalidArgument(format!(
            "need l >= 2 and N >= 2, got l={l}, N={precision}"
        )));
    }
    let ring = CoefficientRing::integer_mod(l)?;
    let s: ModSeries = direct_in(family, a, precision, ring);
    let start = match family {
        Family::Mo => mo_start(a),
        Family::M => a as usize,
    } as u64;
    let top = precision as u64 - 1;
    let mut found: Vec<ScanCandidate> = Vec::new();
    for t in 2..=(l * l).min(top) {
        for r in 0..t {
            let covered = found.iter().any(|c| t % c.t == 0 && r % c.t == c.r);
            if covered || r > top {
                continue;
            }
            let mut live = 0;
            let mut ok = true;
            for e in (r..=top).step_by(t as usize) {
                if !s.coeff(e as usize).is_zero() {
                    ok = false;
                    break;
                }
                if e >= start {
                    live += 1;
                }
            }
            if ok && live >= 2 {
                found.push(ScanCandidate {
                    family,
                    a,
                    modulus: l,
                    t,
                    r,
                    n_max_checked: (top - r) / t,
                });
            }
        }
    }
    Ok(found)
}
