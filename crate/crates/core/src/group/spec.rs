//! Named group constructions and their compact text grammar.
//!
//! ```text
//! spec    := atom (('x' | '×' | '*') atom)*
//! atom    := '(' spec ')' | 'C' k | 'Z' k | 'D' m | 'Q8' | 'quaternion8'
//!          | 'Dic' k | 'heisenberg(' l ')' | 'extraspecial(' l ',' type ')'
//!          | '2T' | '2O' | '2I' | 'trivial'
//! type    := 'l' | 'exp-l' | '+' | 'l2' | 'exp-l2' | '-'
//! ```
//!
//! `D m` is the dihedral group of order `2m`, so `D2` is the Klein four
//! group and `D4` has order 8. `Dic k` is the dicyclic (binary dihedral)
//! group of order `4k`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{check_cap, order_cap, FiniteGroup};
use crate::arith::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtraspecialType {
    /// Exponent `l` for odd `l`; the dihedral group `D4` for `l = 2`.
    ExponentL,
    /// Exponent `l^2`; the quaternion group for `l = 2`.
    ExponentL2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryPolyhedral {
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of order `2m`.
    Dihedral(usize),
    Quaternion8,
    /// Dicyclic group of order `4k`.
    Dicyclic(usize),
    /// The exponent-`l` extraspecial group of order `l^3`; `Q8` for `l = 2`.
    Heisenberg(u64),
    Extraspecial(u64, ExtraspecialType),
    BinaryPolyhedral(BinaryPolyhedral),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    Table(FiniteGroup),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::DirectProduct(Box::new(a), Box::new(b))
    }

    /// Order of the group the spec describes, without building it.
    pub fn order(&self) -> Option<usize> {
        Some(match self {
            GroupSpec::Cyclic(k) => *k,
            GroupSpec::Dihedral(m) => m.checked_mul(2)?,
            GroupSpec::Quaternion8 => 8,
            GroupSpec::Dicyclic(k) => k.checked_mul(4)?,
            GroupSpec::Heisenberg(l) | GroupSpec::Extraspecial(l, _) => {
                usize::try_from(l.checked_pow(3)?).ok()?
            }
            GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Tetrahedral) => 24,
            GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Octahedral) => 48,
            GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Icosahedral) => 120,
            GroupSpec::DirectProduct(a, b) => a.order()?.checked_mul(b.order()?)?,
            GroupSpec::Table(g) => g.order(),
        })
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    build_group_capped(spec, order_cap())
}

pub fn build_group_capped(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    validate_params(spec)?;
    let order = spec.order().ok_or(Error::OrderCap {
        order: usize::MAX,
        cap,
    })?;
    check_cap(order, cap)?;
    Ok(construct(spec).with_label(spec.to_string()))
}

fn validate_params(spec: &GroupSpec) -> Result<()> {
    match spec {
        GroupSpec::Cyclic(0) | GroupSpec::Dihedral(0) | GroupSpec::Dicyclic(0) => {
            Err(Error::domain("group parameters must be positive"))
        }
        GroupSpec::Heisenberg(l) | GroupSpec::Extraspecial(l, _) if !is_prime(*l) => {
            Err(Error::domain(format!("l = {l} is not prime")))
        }
        GroupSpec::DirectProduct(a, b) => validate_params(a).and(validate_params(b)),
        _ => Ok(()),
    }
}

fn construct(spec: &GroupSpec) -> FiniteGroup {
    match spec {
        GroupSpec::Cyclic(k) => cyclic(*k),
        GroupSpec::Dihedral(m) => dihedral(*m),
        GroupSpec::Quaternion8 => dicyclic(2),
        GroupSpec::Dicyclic(k) => dicyclic(*k),
        GroupSpec::Heisenberg(2) => dicyclic(2),
        GroupSpec::Heisenberg(l) => heisenberg_odd(*l as usize),
        GroupSpec::Extraspecial(2, ExtraspecialType::ExponentL) => dihedral(4),
        GroupSpec::Extraspecial(2, ExtraspecialType::ExponentL2) => dicyclic(2),
        GroupSpec::Extraspecial(l, ExtraspecialType::ExponentL) => heisenberg_odd(*l as usize),
        GroupSpec::Extraspecial(l, ExtraspecialType::ExponentL2) => metacyclic_odd(*l as usize),
        GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Tetrahedral) => special_linear_2(3),
        GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Icosahedral) => special_linear_2(5),
        GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Octahedral) => binary_octahedral(),
        GroupSpec::DirectProduct(a, b) => construct(a).direct_product(&construct(b)),
        GroupSpec::Table(g) => g.clone(),
    }
}

fn cyclic(k: usize) -> FiniteGroup {
    FiniteGroup::from_fn(k, 0, "C", |a, b| (a + b) % k)
}

/// `r^i s^j` at index `i + m*j`.
fn dihedral(m: usize) -> FiniteGroup {
    FiniteGroup::from_fn(2 * m, 0, "D", |x, y| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        let rot = if j == 0 { i + k } else { i + m - k };
        rot % m + m * ((j + l) % 2)
    })
}

/// `a^i x^j` at index `i + 2k*j`, with `x^2 = a^k` and `x a x^-1 = a^-1`.
/// For `k = 2` this is `Q8` with `-1` at index 2.
fn dicyclic(k: usize) -> FiniteGroup {
    let n = 2 * k;
    FiniteGroup::from_fn(2 * n, 0, "Dic", |x, y| {
        let (i, j) = (x % n, x / n);
        let (a, b) = (y % n, y / n);
        match (j, b) {
            (0, _) => (i + a) % n + n * b,
            (_, 0) => (i + n - a) % n + n,
            _ => (i + n - a + k) % n,
        }
    })
}

/// `(a, b, c)` at index `a + l*b + l^2*c` with
/// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')`.
fn heisenberg_odd(l: usize) -> FiniteGroup {
    let split = |x: usize| (x % l, (x / l) % l, x / (l * l));
    FiniteGroup::from_fn(l * l * l, 0, "heisenberg", |x, y| {
        let (a, b, c) = split(x);
        let (a2, b2, c2) = split(y);
        (a + a2) % l + l * ((b + b2) % l) + l * l * ((c + c2 + a * b2) % l)
    })
}

/// `Z/l^2 ⋊ Z/l` with the generator acting by `x -> (1+l) x`; `(x, y)` at
/// index `x + l^2*y`.
fn metacyclic_odd(l: usize) -> FiniteGroup {
    let n = l * l;
    let twist: Vec<usize> = (0..l)
        .scan(1usize, |acc, _| {
            let cur = *acc;
            *acc = *acc * (1 + l) % n;
            Some(cur)
        })
        .collect();
    FiniteGroup::from_fn(n * l, 0, "extraspecial", |u, v| {
        let (x, y) = (u % n, u / n);
        let (x2, y2) = (v % n, v / n);
        (x + twist[y] * x2) % n + n * ((y + y2) % l)
    })
}

type Mat2 = [u64; 4];

fn mat_mul(a: &Mat2, b: &Mat2, p: u64) -> Mat2 {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

fn sl2_elements(p: u64) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out.sort_by_key(|m| *m != [1, 0, 0, 1]);
    out
}

fn matrix_group(elems: &[Mat2], p: u64, label: &str) -> FiniteGroup {
    let index: HashMap<Mat2, usize> = elems.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    FiniteGroup::from_fn(elems.len(), 0, label, |x, y| {
        index[&mat_mul(&elems[x], &elems[y], p)]
    })
}

/// `SL(2, p)`, identity at index 0.
fn special_linear_2(p: u64) -> FiniteGroup {
    matrix_group(&sl2_elements(p), p, "SL2")
}

/// The binary octahedral group, realized as an order-48 subgroup of
/// `SL(2, 7)`.
fn binary_octahedral() -> FiniteGroup {
    let sl = special_linear_2(7);
    let orders = sl.element_orders();
    let eights: Vec<usize> = sl.elements().filter(|&x| orders[x] == 8).collect();
    let x = eights[0];
    let sub = sl
        .elements()
        .filter(|&y| orders[y] == 4)
        .map(|y| sl.generated_subgroup(&[x, y]))
        .find(|s| s.len() == 48)
        .expect("SL(2,7) contains the binary octahedral group");
    let pos: HashMap<usize, usize> = sub.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    FiniteGroup::from_fn(48, pos[&sl.identity()], "2O", |a, b| {
        pos[&sl.mul(sub[a], sub[b])]
    })
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "C{k}"),
            GroupSpec::Dihedral(m) => write!(f, "D{m}"),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
            GroupSpec::Dicyclic(k) => write!(f, "Dic{k}"),
            GroupSpec::Heisenberg(l) => write!(f, "heisenberg({l})"),
            GroupSpec::Extraspecial(l, ExtraspecialType::ExponentL) => {
                write!(f, "extraspecial({l},l)")
            }
            GroupSpec::Extraspecial(l, ExtraspecialType::ExponentL2) => {
                write!(f, "extraspecial({l},l2)")
            }
            GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Tetrahedral) => write!(f, "2T"),
            GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Octahedral) => write!(f, "2O"),
            GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Icosahedral) => write!(f, "2I"),
            GroupSpec::DirectProduct(a, b) => {
                let wrap = |s: &GroupSpec| matches!(s, GroupSpec::DirectProduct(..));
                if wrap(b) {
                    write!(f, "{a}x({b})")
                } else {
                    write!(f, "{a}x{b}")
                }
            }
            GroupSpec::Table(g) => write!(f, "{}", g.label().unwrap_or("table")),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const KEYWORDS: &[&str] = &[
    "quaternion8",
    "heisenberg",
    "extraspecial",
    "trivial",
    "dic",
    "q8",
    "2t",
    "2o",
    "2i",
    "c",
    "z",
    "d",
];

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse_at(
            self.src[..self.pos].chars().count() + 1,
            msg,
        ))
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected {token:?}"))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: String = self
            .rest()
            .chars()
            .take_while(char::is_ascii_digit)
            .collect();
        if digits.is_empty() {
            return self.err("expected a number");
        }
        let value = digits.parse().or_else(|_| self.err("number too large"))?;
        self.pos += digits.len();
        Ok(value)
    }

    fn size(&mut self) -> Result<usize> {
        let n = self.number()?;
        usize::try_from(n).or_else(|_| self.err("number too large"))
    }

    fn product(&mut self) -> Result<GroupSpec> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            if self.eat("x") || self.eat("×") || self.eat("*") {
                let rhs = self.atom()?;
                acc = GroupSpec::product(acc, rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        if self.eat("(") {
            let inner = self.product()?;
            self.expect(")")?;
            return Ok(inner);
        }
        let lower = self.rest().to_ascii_lowercase();
        let Some(kw) = KEYWORDS.iter().find(|k| lower.starts_with(**k)) else {
            return self.err("expected a group name");
        };
        self.pos += kw.len();
        Ok(match *kw {
            "quaternion8" | "q8" => GroupSpec::Quaternion8,
            "trivial" => GroupSpec::Cyclic(1),
            "2t" => GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Tetrahedral),
            "2o" => GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Octahedral),
            "2i" => GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Icosahedral),
            "c" | "z" => GroupSpec::Cyclic(self.size()?),
            "d" => GroupSpec::Dihedral(self.size()?),
            "dic" => GroupSpec::Dicyclic(self.size()?),
            "heisenberg" => {
                self.expect("(")?;
                let l = self.number()?;
                self.expect(")")?;
                GroupSpec::Heisenberg(l)
            }
            "extraspecial" => {
                self.expect("(")?;
                let l = self.number()?;
                self.expect(",")?;
                self.skip_ws();
                let kind = ["exp-l2", "l2", "-", "exp-l", "l", "+"]
                    .into_iter()
                    .find(|t| self.rest().starts_with(t));
                let kind = match kind {
                    Some(t) => {
                        self.pos += t.len();
                        if matches!(t, "exp-l2" | "l2" | "-") {
                            ExtraspecialType::ExponentL2
                        } else {
                            ExtraspecialType::ExponentL
                        }
                    }
                    None => return self.err("expected extraspecial type l or l2"),
                };
                self.expect(")")?;
                GroupSpec::Extraspecial(l, kind)
            }
            _ => unreachable!(),
        })
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser { src: s, pos: 0 };
        let spec = parser.product()?;
        parser.skip_ws();
        if !parser.rest().is_empty() {
            return parser.err(format!("unexpected trailing input {:?}", parser.rest()));
        }
        Ok(spec)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SpecRepr {
    Text(String),
    Table(FiniteGroup),
}

impl From<GroupSpec> for SpecRepr {
    fn from(spec: GroupSpec) -> Self {
        match spec {
            GroupSpec::Table(g) => SpecRepr::Table(g),
            other => SpecRepr::Text(other.to_string()),
        }
    }
}

impl TryFrom<SpecRepr> for GroupSpec {
    type Error = Error;

    fn try_from(repr: SpecRepr) -> Result<Self> {
        match repr {
            SpecRepr::Text(s) => s.parse(),
            SpecRepr::Table(g) => Ok(GroupSpec::Table(g)),
        }
    }
}
