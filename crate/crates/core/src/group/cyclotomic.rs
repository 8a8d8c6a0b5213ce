use std::fmt;

use serde::{Deserialize, Serialize};

/// Coefficients of the cyclotomic polynomial `Phi_e`, constant term first.
pub fn cyclotomic_poly(e: usize) -> Vec<i64> {
    assert!(e >= 1);
    // x^e - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; e + 1];
    num[0] = -1;
    num[e] = 1;
    for d in (1..e).filter(|d| e.is_multiple_of(*d)) {
        num = exact_div(&num, &cyclotomic_poly(d));
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut quot = vec![0i64; num.len() + 1 - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl - 1];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// An element of `Z[zeta_e]` in the power basis `1, zeta, ..., zeta^{phi(e)-1}`.
///
/// Every value is kept reduced modulo `Phi_e`, so equality is coefficient-wise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cyclotomic {
    order: usize,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    /// `sum_k counts[k] * zeta_e^k` for `counts` of length `e`.
    pub fn from_power_sums(order: usize, counts: &[i64]) -> Self {
        let mut poly = vec![0i64; order];
        for (k, &c) in counts.iter().enumerate() {
            poly[k % order] += c;
        }
        Self::reduce(order, poly)
    }

    pub fn integer(order: usize, value: i64) -> Self {
        Self::from_power_sums(order, &[value])
    }

    /// `zeta_e^k`.
    pub fn root_power(order: usize, k: usize) -> Self {
        let mut counts = vec![0; order];
        counts[k % order] = 1;
        Self::from_power_sums(order, &counts)
    }

    fn reduce(order: usize, mut poly: Vec<i64>) -> Self {
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        for i in (deg..poly.len()).rev() {
            let c = poly[i];
            if c != 0 {
                for (j, &pj) in phi.iter().enumerate() {
                    poly[i - deg + j] -= c * pj;
                }
            }
        }
        poly.truncate(deg);
        poly.resize(deg, 0);
        Self {
            order,
            coeffs: poly,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    fn expand(&self) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        v.resize(self.order, 0);
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            order: self.order,
            coeffs,
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        let e = self.order;
        let mut prod = vec![0i64; e];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[(i + j) % e] += a * b;
            }
        }
        Self::reduce(e, prod)
    }

    /// Complex conjugate, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let e = self.order;
        let mut out = vec![0i64; e];
        for (k, c) in self.expand().into_iter().enumerate() {
            out[(e - k) % e] += c;
        }
        Self::reduce(e, out)
    }
}

impl fmt::Display for Cyclotomic {
    /// GAP-style: `E(e)` denotes `exp(2*pi*i/e)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let term = match (k, mag) {
                (0, m) => m.to_string(),
                (1, 1) => format!("E({})", self.order),
                (1, m) => format!("{m}*E({})", self.order),
                (k, 1) => format!("E({})^{k}", self.order),
                (k, m) => format!("{m}*E({})^{k}", self.order),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        Ok(())
    }
}
