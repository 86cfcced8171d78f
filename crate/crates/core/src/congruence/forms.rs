//! Modular forms mod `p` with weight bookkeeping, grading of quasimodular
//! expansions, the theta operator and progression projectors.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::eisenstein::{eisenstein_in, expansion_eval, MonomialEvaluator, QuasimodularExpansion};
use crate::error::{Error, Result, SeriesError};
use crate::ring::{Coefficient, CoefficientRing, ModInt};
use crate::series::{reduce_mod, ModSeries, Series};

/// Level-one Sturm bound `floor(k/12)`.
pub fn sturm_bound(k: u32) -> u32 {
    k / 12
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// One recorded operation. Replaying a history recomputes the weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum HistoryStep {
    Source { label: String, weight: u32 },
    Theta,
    Lift { power: u32 },
    Scale { factor: u64 },
    Sum { terms: Vec<Vec<HistoryStep>> },
}

/// Replays a history for the prime `p`; fails on an inconsistent sum.
pub fn replay_weight(p: u64, history: &[HistoryStep]) -> Result<u32> {
    let mut weight: Option<u32> = None;
    for step in history {
        weight = Some(match (step, weight) {
            (HistoryStep::Source { weight, .. }, None) => *weight,
            (HistoryStep::Sum { terms }, None) => {
                let ws = terms
                    .iter()
                    .map(|t| replay_weight(p, t))
                    .collect::<Result<Vec<_>>>()?;
                let first = *ws
                    .first()
                    .ok_or_else(|| Error::Consistency("empty sum in history".into()))?;
                if ws.iter().any(|&w| w != first) {
                    return Err(Error::Consistency(format!(
                        "sum of forms with weights {ws:?}"
                    )));
                }
                first
            }
            (HistoryStep::Theta, Some(w)) => w + p as u32 + 1,
            (HistoryStep::Lift { power }, Some(w)) => w + power * (p as u32 - 1),
            (HistoryStep::Scale { .. }, Some(w)) => w,
            _ => {
                return Err(Error::Consistency(
                    "history must start with a source or a sum".into(),
                ))
            }
        });
    }
    weight.ok_or_else(|| Error::Consistency("empty history".into()))
}

/// A q-expansion mod `p` together with a weight it is known to carry.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularFormModP {
    p: u64,
    weight: u32,
    series: ModSeries,
    history: Vec<HistoryStep>,
}

impl ModularFormModP {
    pub fn new(p: u64, weight: u32, series: ModSeries, label: impl Into<String>) -> Result<Self> {
        if series.ring() != CoefficientRing::IntegerMod(p) {
            return Err(SeriesError::RingMismatch {
                left: CoefficientRing::IntegerMod(p),
                right: series.ring(),
            }
            .into());
        }
        Ok(ModularFormModP {
            p,
            weight,
            series,
            history: vec![HistoryStep::Source {
                label: label.into(),
                weight,
            }],
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Weight class modulo `p - 1`.
    pub fn class(&self) -> u32 {
        self.weight % (self.p as u32 - 1)
    }

    pub fn series(&self) -> &ModSeries {
        &self.series
    }

    pub fn history(&self) -> &[HistoryStep] {
        &self.history
    }

    pub fn sturm_bound(&self) -> u32 {
        sturm_bound(self.weight)
    }

    /// Coefficients `0..=sturm_bound` are known and all vanish.
    pub fn vanishes_to_sturm_bound(&self) -> Option<bool> {
        let b = self.sturm_bound() as usize;
        (self.series.precision() > b).then(|| (0..=b).all(|n| self.series.coeff(n).is_zero()))
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = self.clone();
        out.series = self.series.scale(&ModInt::from_u64(c, self.p));
        out.history.push(HistoryStep::Scale { factor: c % self.p });
        out
    }

    /// Multiplies by `E_{p-1}^power ≡ 1`, raising the weight by `power (p-1)`.
    pub fn lift(&self, power: u32) -> Self {
        if power == 0 {
            return self.clone();
        }
        let mut out = self.clone();
        out.weight += power * (self.p as u32 - 1);
        out.history.push(HistoryStep::Lift { power });
        out
    }

    pub fn lift_to(&self, weight: u32) -> Result<Self> {
        let step = self.p as u32 - 1;
        if weight < self.weight || !(weight - self.weight).is_multiple_of(step) {
            return Err(Error::Consistency(format!(
                "cannot lift weight {} to {weight} mod {}",
                self.weight, self.p
            )));
        }
        Ok(self.lift((weight - self.weight) / step))
    }

    /// Sum of forms sharing a weight class, each lifted to the largest weight.
    pub fn sum(terms: &[ModularFormModP]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty sum of forms".into()))?;
        let p = first.p;
        let target = terms.iter().map(|t| t.weight).max().unwrap_or(0);
        let mut series = Series::zero(first.series.ring(), first.series.precision());
        let mut histories = Vec::with_capacity(terms.len());
        for t in terms {
            if t.p != p {
                return Err(Error::InvalidArgument("forms for different primes".into()));
            }
            let lifted = t.lift_to(target)?;
            series = series.try_add(&lifted.series)?;
            histories.push(lifted.history);
        }
        Ok(ModularFormModP {
            p,
            weight: target,
            series,
            history: vec![HistoryStep::Sum { terms: histories }],
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "weight": self.weight,
            "series": self.series.to_json(),
            "history": self.history,
        })
    }
}

/// `Θ f`, of weight `k + p + 1`.
pub fn theta_modp(f: &ModularFormModP) -> ModularFormModP {
    let mut out = f.clone();
    out.series = f.series.theta();
    out.weight += f.p as u32 + 1;
    out.history.push(HistoryStep::Theta);
    out
}

/// Forms of pairwise distinct weight classes whose sum is the object of interest.
#[derive(Clone, Debug, PartialEq)]
pub struct FormSum {
    pub p: u64,
    pub pieces: Vec<ModularFormModP>,
}

impl FormSum {
    pub fn single(f: ModularFormModP) -> Self {
        FormSum {
            p: f.p,
            pieces: vec![f],
        }
    }

    /// Groups forms by weight class and sums each group.
    pub fn regroup(p: u64, forms: Vec<ModularFormModP>) -> Result<Self> {
        let mut classes: BTreeMap<u32, Vec<ModularFormModP>> = BTreeMap::new();
        for f in forms {
            classes.entry(f.class()).or_default().push(f);
        }
        let pieces = classes
            .values()
            .map(|fs| ModularFormModP::sum(fs))
            .collect::<Result<Vec<_>>>()?;
        Ok(FormSum { p, pieces })
    }

    pub fn series(&self) -> ModSeries {
        let first = &self.pieces[0].series;
        self.pieces
            .iter()
            .skip(1)
            .fold(first.clone(), |acc, f| &acc + &f.series)
    }

    pub fn weights(&self) -> Vec<u32> {
        self.pieces.iter().map(|f| f.weight).collect()
    }
}

fn monomial_weight_mod_p(key: &crate::eisenstein::MonomialKey, p: u64) -> u32 {
    // E_2 is replaced by E_{p+1}
    key.weight() + key.alpha * (p as u32 - 1)
}

/// Weight class and lifted weight of each graded piece, without evaluating.
pub fn grade_weights(e: &QuasimodularExpansion, p: u64) -> BTreeMap<u32, u32> {
    let mut out: BTreeMap<u32, u32> = BTreeMap::new();
    for (key, _) in e.iter() {
        let w = monomial_weight_mod_p(key, p);
        let slot = out.entry(w % (p as u32 - 1)).or_insert(0);
        *slot = (*slot).max(w);
    }
    out
}

/// Splits `e` into its weight classes mod `p - 1` and evaluates each class
/// mod `p`, going through `Q` when a class has non-integral coefficients. Each piece carries the largest weight in its
/// class after `E_2 -> E_{p+1}`.
pub fn grade_mod_p(
    e: &QuasimodularExpansion,
    p: u64,
    precision: usize,
) -> Result<Vec<ModularFormModP>> {
    if p < 5 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!(
            "grading needs a prime p >= 5, got {p}"
        )));
    }
    let ring = CoefficientRing::IntegerMod(p);
    let e_lift: ModSeries = eisenstein_in(p as u32 - 1, precision, ring)?;
    if e_lift != Series::one(ring, precision) {
        return Err(Error::Consistency(format!("E_{} is not 1 mod {p}", p - 1)));
    }
    let weights = grade_weights(e, p);
    let mut eval = MonomialEvaluator::<ModInt>::new(ring, precision);
    let mut out = Vec::with_capacity(weights.len());
    for (&class, &weight) in &weights {
        let mut part = QuasimodularExpansion::new(format!("class {class} mod {}", p - 1));
        let mut count = 0;
        for (key, c) in e.iter() {
            if monomial_weight_mod_p(key, p) % (p as u32 - 1) == class {
                part.add_term(key.clone(), c.clone());
                count += 1;
            }
        }
        let series = match eval.evaluate(&part) {
            Ok(s) => s,
            Err(_) => reduce_mod(&expansion_eval(&part, precision), p)?,
        };
        out.push(ModularFormModP::new(
            p,
            weight,
            series,
            format!("{} class {class}: {count} monomials", e.provenance()),
        )?);
    }
    Ok(out)
}

/// Coefficients `c_k` with `Σ_k c_k n^k ≡ 1 - (n - r)^{p-1} (mod p)`.
pub fn projector_coefficients(p: u64, r: u64) -> Vec<u64> {
    let m = CoefficientRing::IntegerMod(p);
    let minus_r = ModInt::from_i64(-(r as i64), m);
    let mut c: Vec<u64> = (0..p)
        .map(|k| {
            let binom = ModInt::from_bigint(&crate::eisenstein::binomial(p - 1, k), p);
            binom.ring_mul(&minus_r.pow(p - 1 - k)).ring_neg().value()
        })
        .collect();
    c[0] = (c[0] + 1) % p;
    c
}

/// `Π_r` applied to every piece: keeps the coefficients with `n ≡ r (mod p)`.
/// The theta iterates are regrouped by weight class.
pub fn projector(f: &FormSum, r: u64) -> Result<FormSum> {
    let p = f.p;
    if r >= p {
        return Err(Error::InvalidArgument(format!("residue {r} not below {p}")));
    }
    let coeffs = projector_coefficients(p, r);
    let mut terms = Vec::new();
    for piece in &f.pieces {
        let mut cur = piece.clone();
        for (k, &c) in coeffs.iter().enumerate() {
            if k > 0 {
                cur = theta_modp(&cur);
            }
            if c != 0 {
                terms.push(cur.scale(c));
            }
        }
    }
    FormSum::regroup(p, terms)
}

/// Exact projection of the coefficients, for comparison.
pub fn progression_part(f: &ModSeries, p: u64, r: u64) -> ModSeries {
    let mut out = f.clone();
    for n in 0..f.precision() {
        if n as u64 % p != r {
            out.set(n, ModInt::from_u64(0, p));
        }
    }
    out
}

/// `Σ_n P(n) a(n) q^n` for a polynomial `P` given by its coefficients mod `p`.
pub fn apply_theta_polynomial(f: &ModSeries, coeffs: &[i64]) -> ModSeries {
    let ring = f.ring();
    let mut out = Series::zero(ring, f.precision());
    let mut cur = f.clone();
    for (k, &c) in coeffs.iter().enumerate() {
        if k > 0 {
            cur = cur.theta();
        }
        if c != 0 {
            out = &out + &cur.scale(&ModInt::from_i64(c, ring));
        }
    }
    out
}

/// Rational `c / d` reduced mod `p`, if `p ∤ d`.
pub fn reduce_scalar(c: &BigRational, p: u64) -> Option<ModInt> {
    ModInt::from_rational(c, CoefficientRing::IntegerMod(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::{u_expansion, MonomialKey};
    use crate::macmahon::mo_direct_in;

    fn ints(s: &ModSeries) -> Vec<u64> {
        s.coeffs().iter().map(|c| c.value()).collect()
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_bound(120), 10);
        assert_eq!(sturm_bound(228), 19);
        assert_eq!(sturm_bound(24), 2);
    }

    #[test]
    fn u10_grading_mod_11() {
        let e = u_expansion(10);
        let w = grade_weights(&e, 11);
        assert_eq!(
            w.values().copied().collect::<Vec<_>>(),
            [120, 72, 84, 96, 108]
        );
        let pieces = grade_mod_p(&e, 11, 10).unwrap();
        let expect: [[u64; 7]; 5] = [
            [2, 6, 7, 8, 5, 2, 2],
            [6, 7, 10, 7, 8, 7, 6],
            [7, 10, 8, 2, 0, 4, 7],
            // q^5 is 2: the five pieces must sum to MO(10;5) = 0
            [10, 8, 2, 10, 1, 4, 10],
            [8, 2, 6, 6, 8, 5, 8],
        ];
        for (piece, exp) in pieces.iter().zip(expect) {
            assert_eq!(ints(piece.series())[..3], [0, 0, 0]);
            assert_eq!(ints(piece.series())[3..], exp);
        }
        let total = FormSum {
            p: 11,
            pieces: pieces.clone(),
        }
        .series();
        let direct: ModSeries = mo_direct_in(10, 10, CoefficientRing::IntegerMod(11));
        assert_eq!(total, direct);
    }

    #[test]
    fn single_e4_at_five_is_weight_class_zero() {
        let mut e = QuasimodularExpansion::new("E4");
        e.add_term(
            MonomialKey::e246(0, 1, 0),
            num_rational::BigRational::from_integer(1.into()),
        );
        let pieces = grade_mod_p(&e, 5, 50).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].class(), 0);
        assert_eq!(
            *pieces[0].series(),
            Series::one(CoefficientRing::IntegerMod(5), 50)
        );
    }

    #[test]
    fn grading_rejects_small_primes() {
        assert!(grade_mod_p(&u_expansion(2), 3, 10).is_err());
        assert!(grade_mod_p(&u_expansion(2), 9, 10).is_err());
    }

    #[test]
    fn projector_coefficients_are_the_indicator() {
        for p in [5u64, 7, 11, 13] {
            for r in 0..p {
                let c = projector_coefficients(p, r);
                for n in 0..p {
                    let v = c.iter().enumerate().fold(0u64, |acc, (k, &ck)| {
                        (acc + ck * ModInt::from_u64(n, p).pow(k as u64).value()) % p
                    });
                    assert_eq!(v, (n == r) as u64, "p={p} r={r} n={n}");
                }
            }
        }
    }

    #[test]
    fn u10_projection_matches_direct() {
        let ring = CoefficientRing::IntegerMod(11);
        let pieces = grade_mod_p(&u_expansion(10), 11, 120).unwrap();
        let sum = FormSum { p: 11, pieces };
        let proj = projector(&sum, 7).unwrap();
        let direct: ModSeries = mo_direct_in(10, 120, ring);
        assert_eq!(proj.series(), progression_part(&direct, 11, 7));
        for piece in &proj.pieces {
            assert_eq!(replay_weight(11, piece.history()).unwrap(), piece.weight());
        }
    }

    /// The hand-built combination `(1 - Θ^5)(-4 + Θ - 3Θ² + 9Θ³ - 5Θ⁴)` is
    /// `4` on `n ≡ 7` and `7` on `n ≡ 0` modulo 11, and zero elsewhere.
    #[test]
    fn degree_nine_combination_keeps_multiples_of_eleven() {
        let ring = CoefficientRing::IntegerMod(11);
        let q_poly = [-4i64, 1, -3, 9, -5];
        let mut poly = vec![0i64; 10];
        for (i, &c) in q_poly.iter().enumerate() {
            poly[i] += c;
            poly[i + 5] -= c;
        }
        let direct: ModSeries = mo_direct_in(10, 300, ring);
        let combined = apply_theta_polynomial(&direct, &poly);
        let zero_part = progression_part(&direct, 11, 0);
        let seven_part = progression_part(&direct, 11, 7);
        let expected = &seven_part.scale_i64(4) + &zero_part.scale_i64(7);
        assert_eq!(combined, expected);
        assert!(!zero_part.is_zero());
    }

    #[test]
    fn history_replay_detects_tampering() {
        let ring = CoefficientRing::IntegerMod(7);
        let f = ModularFormModP::new(7, 4, Series::one(ring, 5), "one").unwrap();
        let g = theta_modp(&f).lift(2).scale(3);
        assert_eq!(replay_weight(7, g.history()).unwrap(), g.weight());
        assert_eq!(g.weight(), 4 + 8 + 12);
        let bad = vec![HistoryStep::Sum {
            terms: vec![f.history().to_vec(), g.history().to_vec()],
        }];
        assert!(replay_weight(7, &bad).is_err());
    }
}
