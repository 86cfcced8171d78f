//! Integer partitions, hook lengths, and the Nekrasov–Okounkov hook products.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;
use crate::ring::{qi, CoefficientRing};
use crate::series::{colored_partition_series, QSeries, Series};

/// A partition as a non-increasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Exponential form `(1^{m_1}, 2^{m_2}, ...)` as a map part -> multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }
}

/// All partitions of `n`, in reverse-lexicographic order.
pub fn enumerate(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Multiset of hook lengths, stored sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HookMultiset {
    hooks: Vec<u32>,
}

impl HookMultiset {
    pub fn hooks(&self) -> &[u32] {
        &self.hooks
    }

    pub fn len(&self) -> usize {
        self.hooks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hooks.is_empty()
    }
}

/// Hook lengths `λ_i - j + λ'_j - i + 1` for every box `(i, j)`.
pub fn hook_multiset(lambda: &Partition) -> HookMultiset {
    let conj = lambda.conjugate();
    let mut hooks = Vec::with_capacity(lambda.size() as usize);
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row as usize {
            let arm = row - j as u32 - 1;
            let leg = conj.parts[j] - i as u32 - 1;
            hooks.push(arm + leg + 1);
        }
    }
    hooks.sort_unstable_by(|a, b| b.cmp(a));
    HookMultiset { hooks }
}

/// `∏_{h ∈ H(λ)} (z / h² + 1)`.
pub fn no_weight(lambda: &Partition, z: &BigRational) -> BigRational {
    hook_multiset(lambda)
        .hooks
        .iter()
        .map(|&h| z / qi(i64::from(h) * i64::from(h)) + BigRational::one())
        .product()
}

/// `∏_s C(2 + m_s, 2)` over the part sizes of `λ`.
pub fn multiplicity_weight(lambda: &Partition) -> BigInt {
    lambda
        .multiplicities()
        .values()
        .map(|&m| {
            let m = BigInt::from(m);
            (&m + 2u32) * (&m + 1u32) / 2u32
        })
        .product()
}

/// `∏_{j≥1} (1 - q^j)^{-e}` for rational `e`, as `exp(e Σ_n σ_1(n)/n q^n)`.
pub fn euler_power_rational(e: &BigRational, precision: usize) -> QSeries {
    let sig: QSeries = crate::series::sigma_series(1, precision, CoefficientRing::ExactRational);
    let log = Series::from_fn(CoefficientRing::ExactRational, precision, |n| {
        if n == 0 {
            BigRational::zero()
        } else {
            e * sig.coeff(n) / qi(n as i64)
        }
    });
    log.exp().expect("log has zero constant term")
}

/// Checks, for every `m < precision`, that `[q^m] ∏(1-q^j)^{-(z+1)}` equals
/// `Σ_{λ ⊢ m} no_weight(λ, z)`.
pub fn nekrasov_okounkov_check(z: &BigRational, precision: usize) -> Report {
    let mut report = Report::new(format!("nekrasov-okounkov z={z}"));
    let lhs = euler_power_rational(&(z + BigRational::one()), precision);
    for m in 0..precision {
        let rhs: BigRational = enumerate(m as u32).iter().map(|l| no_weight(l, z)).sum();
        report.check_with(
            format!("q^{m}"),
            *lhs.coeff(m) == rhs,
            format!("product {} vs hook sum {}", lhs.coeff(m), rhs),
        );
    }
    report
}

/// `c_3(m)`, the number of 3-coloured partitions of `m`, computed from the
/// product expansion and from the `z = 2` hook sum; the two must agree.
pub fn colored3(m: u32) -> Result<BigInt> {
    let p3: QSeries = colored_partition_series(3, m as usize + 1, CoefficientRing::ExactRational);
    let product = p3.coeff(m as usize).clone();
    let hook_sum: BigRational = enumerate(m).iter().map(|l| no_weight(l, &qi(2))).sum();
    if product != hook_sum {
        return Err(Error::Consistency(format!(
            "c3({m}): product gives {product}, hook sum gives {hook_sum}"
        )));
    }
    Ok(product.to_integer())
}

/// The `{partition, hooks, weight}` record used in JSON hook reports.
#[derive(Clone, Debug, Serialize)]
pub struct HookReport {
    pub partition: Partition,
    pub hooks: HookMultiset,
    pub weight: String,
}

pub fn hook_report(lambda: &Partition, z: &BigRational) -> HookReport {
    HookReport {
        partition: lambda.clone(),
        hooks: hook_multiset(lambda),
        weight: crate::ring::render_rational(&no_weight(lambda, z)),
    }
}
