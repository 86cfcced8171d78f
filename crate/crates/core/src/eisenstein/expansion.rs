//! Rational linear combinations of Eisenstein monomials
//! `E_2^α E_4^β E_6^γ ∏ E_{2j}^{m_j}`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::eisenstein_in;
use crate::error::SeriesError;
use crate::ring::{render_rational, Coefficient, CoefficientRing};
use crate::series::{QSeries, Series};

/// Exponent data of one monomial. `factors` maps an index `2j ≥ 8` to its multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonomialKey {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub factors: BTreeMap<u32, u32>,
}

impl MonomialKey {
    pub fn constant() -> Self {
        MonomialKey::default()
    }

    pub fn e246(alpha: u32, beta: u32, gamma: u32) -> Self {
        MonomialKey {
            alpha,
            beta,
            gamma,
            factors: BTreeMap::new(),
        }
    }

    /// The single factor `E_{index}^{mult}`.
    pub fn eisenstein_power(index: u32, mult: u32) -> Self {
        assert!(
            index >= 2 && index.is_multiple_of(2),
            "Eisenstein index must be even and positive"
        );
        let mut k = MonomialKey::default();
        if mult == 0 {
            return k;
        }
        match index {
            2 => k.alpha = mult,
            4 => k.beta = mult,
            6 => k.gamma = mult,
            _ => {
                k.factors.insert(index, mult);
            }
        }
        k
    }

    pub fn weight(&self) -> u32 {
        2 * self.alpha
            + 4 * self.beta
            + 6 * self.gamma
            + self.factors.iter().map(|(i, m)| i * m).sum::<u32>()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (i, m) in &other.factors {
            *factors.entry(*i).or_insert(0) += m;
        }
        MonomialKey {
            alpha: self.alpha + other.alpha,
            beta: self.beta + other.beta,
            gamma: self.gamma + other.gamma,
            factors,
        }
    }

    /// `(index, multiplicity)` pairs over every Eisenstein series present, E_2 first.
    pub fn all_factors(&self) -> Vec<(u32, u32)> {
        let mut v = Vec::new();
        for (i, m) in [(2, self.alpha), (4, self.beta), (6, self.gamma)] {
            if m > 0 {
                v.push((i, m));
            }
        }
        v.extend(self.factors.iter().map(|(i, m)| (*i, *m)));
        v
    }

    pub fn is_constant(&self) -> bool {
        self.weight() == 0
    }
}

impl Ord for MonomialKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.alpha.cmp(&self.alpha))
            .then_with(|| other.beta.cmp(&self.beta))
            .then_with(|| other.gamma.cmp(&self.gamma))
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for MonomialKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasimodularMonomial {
    pub coeff: BigRational,
    pub key: MonomialKey,
}

impl QuasimodularMonomial {
    pub fn weight(&self) -> u32 {
        self.key.weight()
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .key
            .factors
            .iter()
            .map(|(i, m)| json!({"index": i, "multiplicity": m}))
            .collect();
        json!({
            "alpha": self.key.alpha,
            "beta": self.key.beta,
            "gamma": self.key.gamma,
            "factors": factors,
            "coeff": render_rational(&self.coeff),
        })
    }
}

impl Serialize for QuasimodularMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl Serialize for MonomialKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        json!({"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma,
               "factors": self.factors.iter().map(|(i, m)| json!([i, m])).collect::<Vec<_>>()})
        .serialize(s)
    }
}

/// Sum of monomials with distinct exponent data and non-zero coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct QuasimodularExpansion {
    terms: BTreeMap<MonomialKey, BigRational>,
    provenance: String,
}

impl QuasimodularExpansion {
    pub fn new(provenance: impl Into<String>) -> Self {
        QuasimodularExpansion {
            terms: BTreeMap::new(),
            provenance: provenance.into(),
        }
    }

    pub fn constant(c: BigRational, provenance: impl Into<String>) -> Self {
        let mut e = Self::new(provenance);
        e.add_term(MonomialKey::constant(), c);
        e
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = p.into();
        self
    }

    pub fn add_term(&mut self, key: MonomialKey, coeff: BigRational) {
        if Zero::is_zero(&coeff) {
            return;
        }
        let slot = self
            .terms
            .entry(key.clone())
            .or_insert_with(BigRational::zero);
        *slot += coeff;
        if Zero::is_zero(slot) {
            self.terms.remove(&key);
        }
    }

    /// Coefficient of a monomial, zero if absent.
    pub fn coefficient(&self, key: &MonomialKey) -> BigRational {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = QuasimodularMonomial> + '_ {
        self.terms.iter().map(|(k, c)| QuasimodularMonomial {
            coeff: c.clone(),
            key: k.clone(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MonomialKey, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_weight(&self) -> u32 {
        self.terms
            .keys()
            .map(MonomialKey::weight)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::new(self.provenance.clone());
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new(self.provenance.clone());
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                out.add_term(k1.mul(k2), v1 * v2);
            }
        }
        out
    }

    /// Only the terms of the given weight.
    pub fn homogeneous_part(&self, weight: u32) -> Self {
        let mut out = Self::new(self.provenance.clone());
        for (k, v) in &self.terms {
            if k.weight() == weight {
                out.add_term(k.clone(), v.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms().map(|t| t.to_json()).collect())
    }
}

/// Evaluates monomials by substituting Eisenstein q-expansions, caching powers.
pub struct MonomialEvaluator<R: Coefficient> {
    ring: CoefficientRing,
    precision: usize,
    powers: HashMap<(u32, u32), Series<R>>,
}

impl<R: Coefficient> MonomialEvaluator<R> {
    pub fn new(ring: CoefficientRing, precision: usize) -> Self {
        MonomialEvaluator {
            ring,
            precision,
            powers: HashMap::new(),
        }
    }

    /// `E_index^mult`; fails if `E_index` is not integral at the modulus.
    pub fn power(&mut self, index: u32, mult: u32) -> Result<Series<R>, SeriesError> {
        if mult == 0 {
            return Ok(Series::one(self.ring, self.precision));
        }
        if let Some(s) = self.powers.get(&(index, mult)) {
            return Ok(s.clone());
        }
        let s = if mult == 1 {
            eisenstein_in::<R>(index, self.precision, self.ring)?
        } else {
            let half = self.power(index, mult / 2)?;
            let sq = &half * &half;
            if mult % 2 == 1 {
                &sq * &self.power(index, 1)?
            } else {
                sq
            }
        };
        self.powers.insert((index, mult), s.clone());
        Ok(s)
    }

    pub fn monomial(&mut self, key: &MonomialKey) -> Result<Series<R>, SeriesError> {
        let mut acc: Option<Series<R>> = None;
        for (i, m) in key.all_factors() {
            let p = self.power(i, m)?;
            acc = Some(match acc {
                None => p,
                Some(a) => &a * &p,
            });
        }
        Ok(acc.unwrap_or_else(|| Series::one(self.ring, self.precision)))
    }

    pub fn evaluate(&mut self, e: &QuasimodularExpansion) -> Result<Series<R>, SeriesError> {
        let mut total = Series::zero(self.ring, self.precision);
        for (key, c) in e.iter() {
            let coeff =
                R::from_rational(c, self.ring).ok_or_else(|| SeriesError::NonIntegralScalar {
                    value: render_rational(c),
                    modulus: self.ring.modulus().unwrap_or(0),
                })?;
            let m = self.monomial(key)?;
            total = &total + &m.scale(&coeff);
        }
        Ok(total)
    }
}

/// Numeric realization of an expansion over the rationals.
pub fn expansion_eval(e: &QuasimodularExpansion, precision: usize) -> QSeries {
    MonomialEvaluator::<BigRational>::new(CoefficientRing::ExactRational, precision)
        .evaluate(e)
        .expect("rational evaluation cannot fail")
}

/// Monomial `E_2^α E_4^β E_6^γ` with coefficient one.
pub fn monomial_expansion(key: MonomialKey) -> QuasimodularExpansion {
    let mut e = QuasimodularExpansion::new("monomial");
    e.add_term(key, BigRational::one());
    e
}
