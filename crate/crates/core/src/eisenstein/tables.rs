//! Rational constant tables: `c(α,β,γ)`, `w_t(a)`, `w*_t(a)`, `b_t(a)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::bernoulli;
use crate::ring::{q, qi, render_rational};

/// `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn pow_i(base: i64, e: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(base).pow(e))
}

/// The coefficients `c(α,β,γ)` on the cone `α + 2β + 3γ ≤ t_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct CTable {
    t_max: u32,
    values: BTreeMap<(u32, u32, u32), BigRational>,
}

impl CTable {
    pub fn t_max(&self) -> u32 {
        self.t_max
    }

    /// `c(α,β,γ)`; zero for negative or unfilled arguments.
    pub fn get(&self, alpha: i64, beta: i64, gamma: i64) -> BigRational {
        if alpha < 0 || beta < 0 || gamma < 0 {
            return BigRational::zero();
        }
        self.values
            .get(&(alpha as u32, beta as u32, gamma as u32))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Exponent triples with `α + 2β + 3γ = t`, in a fixed order.
    pub fn cone(t: u32) -> Vec<(u32, u32, u32)> {
        let mut out = Vec::new();
        for gamma in 0..=t / 3 {
            for beta in 0..=(t - 3 * gamma) / 2 {
                let alpha = t - 3 * gamma - 2 * beta;
                out.push((alpha, beta, gamma));
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32, u32), &BigRational)> {
        self.values.iter()
    }
}

/// Fills `c` in order of increasing `t = α + 2β + 3γ`; every right-hand
/// lookup sits on the cone `t - 1`.
pub fn c_table(t_max: u32) -> CTable {
    let mut table = CTable {
        t_max,
        values: BTreeMap::new(),
    };
    table.values.insert((0, 0, 0), BigRational::one());
    for t in 1..=t_max {
        for (a, b, g) in CTable::cone(t) {
            let (ai, bi, gi) = (a as i64, b as i64, g as i64);
            let v = -q(2 * ai + 8 * bi + 12 * gi + 1, 3) * table.get(ai - 1, bi, gi)
                + q(2 * (ai + 1), 3) * table.get(ai + 1, bi - 1, gi)
                + q(8 * (bi + 1), 3) * table.get(ai, bi + 1, gi - 1)
                + qi(4 * (gi + 1)) * table.get(ai, bi - 2, gi + 1);
            table.values.insert((a, b, g), v);
        }
    }
    table
}

/// `e_t` of the numbers `1/(2ℓ+1)²`, `0 ≤ ℓ < a`.
fn odd_square_elementary(t: u32, a: u32) -> BigRational {
    let mut e = vec![BigRational::zero(); t as usize + 1];
    e[0] = BigRational::one();
    for l in 0..a {
        let x = q(1, (2 * l as i64 + 1).pow(2));
        for j in (1..=t as usize).rev() {
            let add = &e[j - 1] * &x;
            e[j] += add;
        }
    }
    e[t as usize].clone()
}

/// `w_t(a) = C(2a,a)/(16^a (2a+1)) · Σ_{0≤ℓ_1<…<ℓ_t<a} ∏ 1/(2ℓ_j+1)²`.
pub fn w(t: u32, a: u32) -> BigRational {
    assert!(t <= a, "w_t(a) needs t <= a");
    let prefactor = BigRational::new(
        binomial(2 * a as u64, a as u64),
        BigInt::from(16).pow(a) * (2 * a + 1),
    );
    prefactor * odd_square_elementary(t, a)
}

/// `b_t(a)` from its two-term recursion in `a`, seeded by `b_0(0) = 1`.
pub fn b(t: i64, a: i64) -> BigRational {
    if t < 0 || a < 0 || t > a {
        return BigRational::zero();
    }
    let mut table: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for aa in 1..=a {
        let prev = &table[aa as usize - 1];
        let get = |tt: i64| -> BigRational {
            if tt < 0 || tt > aa - 1 {
                BigRational::zero()
            } else {
                prev[tt as usize].clone()
            }
        };
        let row: Vec<BigRational> = (0..=aa)
            .map(|tt| {
                (qi((2 * aa - 1).pow(2)) * get(tt) - qi(8 * tt * (2 * tt + 1)) * get(tt - 1))
                    / qi(8 * aa * (2 * aa + 1))
            })
            .collect();
        table.push(row);
    }
    table[a as usize][t as usize].clone()
}

/// `w*_t(a)`: the `t = 0` values come from the convolution recursion,
/// the rest from `w_{t-1}(a-1)`.
pub fn w_star(t: u32, a: u32) -> BigRational {
    assert!(t <= a, "w*_t(a) needs t <= a");
    if t == 0 {
        return w_star_zero(a);
    }
    let sign = if (a + t).is_multiple_of(2) { 1 } else { -1 };
    let scale = qi(sign) * pow_i(4, t - 1) * BigRational::from_integer(factorial(2 * t as u64 - 1));
    scale * w(t - 1, a - 1)
}

fn w_star_zero(a: u32) -> BigRational {
    let mut vals = vec![BigRational::one()];
    for aa in 1..=a as usize {
        let mut acc = BigRational::zero();
        for i in 1..=aa {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let term = BigRational::new(
                binomial(2 * i as u64, i as u64),
                BigInt::from(16).pow(i as u32) * (2 * i + 1),
            );
            acc += qi(sign) * term * &vals[aa - i];
        }
        vals.push(acc);
    }
    vals[a as usize].clone()
}

/// All the constant tables up to a given order, built once.
#[derive(Clone, Debug)]
pub struct ConstantTables {
    pub a_max: u32,
    pub c: CTable,
    pub w: BTreeMap<(u32, u32), BigRational>,
    pub w_star: BTreeMap<(u32, u32), BigRational>,
    pub b: BTreeMap<(u32, u32), BigRational>,
    pub bernoulli: BTreeMap<u32, BigRational>,
}

impl ConstantTables {
    pub fn build(a_max: u32) -> Self {
        let mut wt = BTreeMap::new();
        let mut ws = BTreeMap::new();
        let mut bt = BTreeMap::new();
        for a in 0..=a_max {
            for t in 0..=a {
                wt.insert((t, a), w(t, a));
                ws.insert((t, a), w_star(t, a));
                bt.insert((t, a), b(t as i64, a as i64));
            }
        }
        let bern = (1..=a_max.max(1))
            .map(|k| (2 * k, bernoulli(2 * k)))
            .collect();
        ConstantTables {
            a_max,
            c: c_table(a_max),
            w: wt,
            w_star: ws,
            b: bt,
            bernoulli: bern,
        }
    }

    /// `b_t(a) = (-4)^t (2t+1)! w_t(a)` on every filled entry.
    pub fn b_w_consistent(&self) -> bool {
        self.w.iter().all(|(&(t, a), wv)| {
            let scaled = pow_i(-4, t) * BigRational::from_integer(factorial(2 * t as u64 + 1)) * wv;
            self.b[&(t, a)] == scaled
        })
    }

    pub fn to_json(&self) -> Value {
        let render = |m: &BTreeMap<(u32, u32), BigRational>| -> Vec<Value> {
            m.iter()
                .map(|((t, a), v)| json!({"t": t, "a": a, "value": render_rational(v)}))
                .collect()
        };
        json!({
            "a_max": self.a_max,
            "c": self.c.iter().map(|((al, be, ga), v)| json!({
                "alpha": al, "beta": be, "gamma": ga, "value": render_rational(v)
            })).collect::<Vec<_>>(),
            "w": render(&self.w),
            "w_star": render(&self.w_star),
            "b": render(&self.b),
            "bernoulli": self.bernoulli.iter().map(|(k, v)| json!({"index": k, "value": render_rational(v)})).collect::<Vec<_>>(),
        })
    }
}
