//! Cardinalities attached to a finite extension `F` of `Q_p`.
//!
//! A field is described only by its invariants `(p, e, f, a)`: residue
//! characteristic, ramification index, residue degree, and the largest `a`
//! with `mu_{p^a} ⊂ F`. The roots of unity of `F` are `mu_{q-1} × mu_{p^a}`
//! with `q = p^f`, which is all the structure the closed forms below need.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{self, factorize, gcd, is_prime, pow_mod, valuation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldObject")]
pub struct PAdicField {
    p: u64,
    e: u32,
    f: u32,
    wild_exponent: u32,
}

impl PAdicField {
    /// Validates the invariants. Besides primality and positivity this
    /// rejects impossible root-of-unity data: `-1` always lies in `F`, so
    /// `a >= 1` when `p = 2`, and `mu_{p^a} ⊂ F` forces `phi(p^a) | e`.
    pub fn new(p: u64, e: u32, f: u32, wild_exponent: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::domain(format!("p = {p} is not prime")));
        }
        if e == 0 || f == 0 {
            return Err(Error::domain(
                "ramification index and residue degree must be >= 1",
            ));
        }
        if p == 2 && wild_exponent == 0 {
            return Err(Error::domain(
                "p = 2 requires a >= 1 since -1 is a root of unity",
            ));
        }
        if wild_exponent >= 1 {
            let phi = (p - 1)
                .checked_mul(
                    p.checked_pow(wild_exponent - 1)
                        .ok_or_else(|| Error::domain("wild exponent too large"))?,
                )
                .ok_or_else(|| Error::domain("wild exponent too large"))?;
            if u64::from(e) % phi != 0 {
                return Err(Error::domain(format!(
                    "mu_{{{p}^{wild_exponent}}} needs ramification divisible by {phi}, got e = {e}"
                )));
            }
        }
        Ok(Self {
            p,
            e,
            f,
            wild_exponent,
        })
    }

    /// `Q_p` itself.
    pub fn rational(p: u64) -> Result<Self> {
        Self::new(p, 1, 1, u32::from(p == 2))
    }

    /// The unramified extension with residue field of cardinality `q`.
    pub fn unramified(q: u64) -> Result<Self> {
        let (p, f) = arith::prime_power(q)
            .ok_or_else(|| Error::domain(format!("q = {q} is not a prime power")))?;
        Self::new(p, 1, f, u32::from(p == 2))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn wild_exponent(&self) -> u32 {
        self.wild_exponent
    }

    /// Residue field cardinality `q = p^f`.
    pub fn q(&self) -> BigUint {
        BigUint::from(self.p).pow(self.f)
    }

    /// `q mod m` without forming `q`.
    pub fn q_mod(&self, m: u64) -> u64 {
        pow_mod(self.p, u64::from(self.f), m)
    }

    /// `v_F(n) = e * v_p(n)`, so that `|n|_F = q^{-v_F(n)}`.
    pub fn field_valuation(&self, n: i64) -> Result<u64> {
        if n == 0 {
            return Err(Error::domain("valuation of 0 is undefined"));
        }
        Ok(u64::from(self.e) * u64::from(valuation(self.p, n.unsigned_abs())))
    }

    /// `|mu_n(F)| = gcd(n, q - 1) * p^{min(v_p(n), a)}`.
    pub fn mu_card(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::domain("n must be positive"));
        }
        let q_minus_one = (self.q_mod(n) + n - 1) % n;
        let tame = gcd(n, q_minus_one);
        let wild = self.p.pow(valuation(self.p, n).min(self.wild_exponent));
        Ok(tame * wild)
    }

    /// `|F^× / (F^×)^n| = n * |mu_n(F)| * |n|_F^{-1}`.
    pub fn coset_card(&self, n: u64) -> Result<BigUint> {
        let mu = self.mu_card(n)?;
        let v = self.field_valuation(n as i64)?;
        Ok(BigUint::from(n) * BigUint::from(mu) * self.q().pow(v as u32))
    }

    /// Prime factorization of `coset_card(n)`, assembled from its three factors.
    pub fn coset_card_factored(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        let mu = self.mu_card(n)?;
        let v = self.field_valuation(n as i64)?;
        let mut exps = std::collections::BTreeMap::new();
        for (r, k) in factorize(n).into_iter().chain(factorize(mu)) {
            *exps.entry(r).or_insert(0u32) += k;
        }
        if v > 0 {
            *exps.entry(self.p).or_insert(0) += self.f * v as u32;
        }
        Ok(exps.into_iter().collect())
    }

    /// `A_{(G,F)}`: the largest `A` with `A^2 | coset_card(n)`.
    pub fn coset_square_bound(&self, n: u64) -> Result<BigUint> {
        Ok(arith::square_divisor_bound_factored(
            &self.coset_card_factored(n)?,
        ))
    }

    /// Wildly ramified inputs (`p | n` with `e > 1`) fall outside every
    /// worked example; reports flag them.
    pub fn is_wild_for(&self, n: u64) -> bool {
        self.e > 1 && n.is_multiple_of(self.p)
    }
}

/// Largest `A` with `A^2 | c`.
pub fn square_divisor_bound(c: &BigUint) -> Result<BigUint> {
    if c == &BigUint::default() {
        return Err(Error::domain("square_divisor_bound requires c >= 1"));
    }
    Ok(arith::square_divisor_bound(c))
}

impl fmt::Display for PAdicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={},e={},f={},a={}",
            self.p, self.e, self.f, self.wild_exponent
        )
    }
}

impl FromStr for PAdicField {
    type Err = Error;

    /// Parses `"p=5,e=1,f=1,a=0"`. `e` and `f` default to 1; `a` defaults to
    /// 1 for `p = 2` and 0 otherwise.
    fn from_str(s: &str) -> Result<Self> {
        let (mut p, mut e, mut f, mut a) = (None, None, None, None);
        let mut col = 1;
        for part in s.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::parse_at(col, format!("expected key=value, got {part:?}")))?;
            let value_col = col + key.len() + 1;
            let parsed: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::parse_at(value_col, format!("invalid integer {value:?}")))?;
            let slot = match key.trim() {
                "p" => &mut p,
                "e" => &mut e,
                "f" => &mut f,
                "a" => &mut a,
                other => return Err(Error::parse_at(col, format!("unknown key {other:?}"))),
            };
            if slot.replace(parsed).is_some() {
                return Err(Error::parse_at(
                    col,
                    format!("duplicate key {:?}", key.trim()),
                ));
            }
            col += part.len() + 1;
        }
        let p = p.ok_or_else(|| Error::parse_at(1, "missing p"))?;
        let narrow = |v: u64, name: &str| {
            u32::try_from(v).map_err(|_| Error::domain(format!("{name} = {v} is too large")))
        };
        Self::new(
            p,
            narrow(e.unwrap_or(1), "e")?,
            narrow(f.unwrap_or(1), "f")?,
            narrow(a.unwrap_or(u64::from(p == 2)), "a")?,
        )
    }
}

#[derive(Serialize, Deserialize)]
struct FieldObject {
    p: u64,
    e: u32,
    f: u32,
    a: u32,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Text(String),
    Object(FieldObject),
}

impl From<PAdicField> for FieldObject {
    fn from(k: PAdicField) -> Self {
        FieldObject {
            p: k.p,
            e: k.e,
            f: k.f,
            a: k.wild_exponent,
        }
    }
}

impl TryFrom<FieldRepr> for PAdicField {
    type Error = Error;

    fn try_from(repr: FieldRepr) -> Result<Self> {
        match repr {
            FieldRepr::Text(s) => s.parse(),
            FieldRepr::Object(o) => PAdicField::new(o.p, o.e, o.f, o.a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64, e: u32, f: u32, a: u32) -> PAdicField {
        PAdicField::new(p, e, f, a).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(k(2, 1, 1, 1).field_valuation(8).unwrap(), 3);
        assert_eq!(k(2, 2, 1, 1).field_valuation(2).unwrap(), 2);
        assert_eq!(k(2, 1, 1, 1).field_valuation(3).unwrap(), 0);
        assert_eq!(k(3, 1, 1, 0).field_valuation(-9).unwrap(), 2);
        assert!(matches!(
            k(2, 1, 1, 1).field_valuation(0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(k(5, 1, 1, 0).mu_card(2).unwrap(), 2);
        assert_eq!(k(3, 1, 1, 0).mu_card(4).unwrap(), 2);
        assert_eq!(k(7, 3, 2, 0).mu_card(1).unwrap(), 1);
        assert_eq!(k(2, 1, 1, 1).mu_card(4).unwrap(), 2);
        // Q_3(zeta_3): e = 2, a = 1.
        assert_eq!(k(3, 2, 1, 1).mu_card(3).unwrap(), 3);
    }

    #[test]
    fn coset_examples() {
        assert_eq!(k(5, 1, 1, 0).coset_card(2).unwrap(), BigUint::from(4u32));
        assert_eq!(k(2, 1, 1, 1).coset_card(2).unwrap(), BigUint::from(8u32));
        assert_eq!(k(13, 1, 1, 0).coset_card(4).unwrap(), BigUint::from(16u32));
        assert_eq!(k(7, 1, 1, 0).coset_card(4).unwrap(), BigUint::from(8u32));
        assert_eq!(k(3, 1, 2, 0).coset_card(4).unwrap(), BigUint::from(16u32));
        assert_eq!(k(11, 1, 1, 0).coset_card(1).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn factored_coset_matches() {
        for field in [k(2, 1, 1, 1), k(3, 2, 1, 1), k(5, 1, 3, 0), k(2, 4, 2, 2)] {
            for n in 1..=24 {
                let direct = field.coset_card(n).unwrap();
                let product = field
                    .coset_card_factored(n)
                    .unwrap()
                    .iter()
                    .fold(BigUint::from(1u32), |acc, &(r, e)| {
                        acc * BigUint::from(r).pow(e)
                    });
                assert_eq!(direct, product);
                assert_eq!(
                    field.coset_square_bound(n).unwrap(),
                    square_divisor_bound(&direct).unwrap()
                );
            }
        }
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(PAdicField::new(4, 1, 1, 0).is_err());
        assert!(PAdicField::new(3, 0, 1, 0).is_err());
        assert!(PAdicField::new(2, 1, 1, 0).is_err());
        assert!(PAdicField::new(3, 1, 1, 1).is_err());
        assert!(PAdicField::new(3, 2, 1, 1).is_ok());
        assert!(PAdicField::new(3, 2, 1, 2).is_err());
    }

    #[test]
    fn parse_text_form() {
        let field: PAdicField = "p=5,e=1,f=1,a=0".parse().unwrap();
        assert_eq!(field, k(5, 1, 1, 0));
        let field: PAdicField = "p=2".parse().unwrap();
        assert_eq!(field, k(2, 1, 1, 1));
        match "p=5,e=x".parse::<PAdicField>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!("p=5,z=1".parse::<PAdicField>().is_err());
        assert!("p=5,p=7".parse::<PAdicField>().is_err());
    }

    #[test]
    fn json_forms() {
        let a: PAdicField = serde_json::from_str(r#""p=3,f=2""#).unwrap();
        let b: PAdicField = serde_json::from_str(r#"{"p":3,"e":1,"f":2,"a":0}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"p":3,"e":1,"f":2,"a":0}"#
        );
    }

    #[test]
    fn wild_flag() {
        assert!(k(2, 2, 1, 1).is_wild_for(4));
        assert!(!k(2, 1, 1, 1).is_wild_for(4));
        assert!(!k(3, 2, 1, 1).is_wild_for(4));
    }
}
