//! Finite groups given by explicit multiplication tables.

mod chartable;
mod classes;
mod cyclotomic;
mod iso;
mod spec;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chartable::{
    character_table, irr_with_central_character, CentralCharacterQuery, CharacterTable,
    ConjugacyClass,
};
pub use classes::ClassMap;
pub use cyclotomic::Cyclotomic;
pub use iso::{are_isomorphic, find_isomorphism, fingerprint, Fingerprint};
pub use spec::{build_group, build_group_capped, BinaryPolyhedral, ExtraspecialType, GroupSpec};

pub const DEFAULT_ORDER_CAP: usize = 400;
pub const ORDER_CAP_ENV: &str = "PACKETMULT_ORDER_CAP";

/// Group-order cap, read once from `PACKETMULT_ORDER_CAP` (default 400).
pub fn order_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(ORDER_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_ORDER_CAP)
    })
}

pub(crate) fn check_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        Err(Error::OrderCap { order, cap })
    } else {
        Ok(())
    }
}

/// A finite group on the elements `0..order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    label: Option<String>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table, checking every axiom.
    pub fn from_table(
        order: usize,
        mul: Vec<u32>,
        identity: usize,
        label: Option<String>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("order must be positive".into()));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if identity >= order {
            return Err(Error::InvalidGroup(format!(
                "identity {identity} out of range"
            )));
        }
        if let Some(bad) = mul.iter().find(|&&x| x as usize >= order) {
            return Err(Error::InvalidGroup(format!(
                "table entry {bad} out of range"
            )));
        }
        let g = Self::from_table_unchecked(order, mul, identity, label)?;
        g.check_associative()?;
        Ok(g)
    }

    /// Trusted constructor for tables produced by this crate. Identity and
    /// inverses are still verified since they are needed anyway.
    pub(crate) fn from_table_unchecked(
        order: usize,
        mul: Vec<u32>,
        identity: usize,
        label: Option<String>,
    ) -> Result<Self> {
        for x in 0..order {
            if mul[identity * order + x] as usize != x || mul[x * order + identity] as usize != x {
                return Err(Error::InvalidGroup(format!(
                    "{identity} is not a two-sided identity (fails at {x})"
                )));
            }
        }
        let mut inverse = vec![u32::MAX; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            match row.iter().position(|&y| y as usize == identity) {
                Some(y) if mul[y * order + x] as usize == identity => inverse[x] = y as u32,
                _ => return Err(Error::InvalidGroup(format!("element {x} has no inverse"))),
            }
        }
        Ok(Self {
            order,
            mul,
            identity,
            inverse,
            label,
        })
    }

    /// Builds the table from a multiplication closure on `0..order`.
    pub(crate) fn from_fn(
        order: usize,
        identity: usize,
        label: impl Into<String>,
        op: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                mul.push(op(a, b) as u32);
            }
        }
        Self::from_table_unchecked(order, mul, identity, Some(label.into()))
            .expect("constructed group tables are valid")
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Full axiom check: closure, identity, inverses, associativity.
    pub fn validate(&self) -> Result<()> {
        Self::from_table(self.order, self.mul.clone(), self.identity, None).map(|_| ())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.identity;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|a| self.element_order(a)).collect()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.element_orders().into_iter().fold(1, num_integer::lcm)
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|a| self.element_order(a) == self.order)
    }

    /// Elements commuting with every element, ascending.
    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&z| self.elements().all(|g| self.commutes(z, g)))
            .collect()
    }

    pub fn is_central(&self, z: usize) -> bool {
        self.elements().all(|g| self.commutes(z, g))
    }

    /// `[g, g^2, ..., identity]` rotated so the identity comes first.
    pub fn cyclic_subgroup(&self, g: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut x = g;
        while x != self.identity {
            out.push(x);
            x = self.mul(x, g);
        }
        out
    }

    /// The subgroup generated by `gens`, sorted ascending.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut frontier = vec![self.identity];
        let mut all = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    all.push(y);
                    frontier.push(y);
                }
            }
        }
        all.sort_unstable();
        all
    }

    /// The commutator subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.order];
        for a in self.elements() {
            for b in self.elements() {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.generated_subgroup(&comms)
    }

    /// Quotient by a normal subgroup: the quotient group and the projection.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut in_n = vec![false; self.order];
        for &x in normal {
            in_n[x] = true;
        }
        for &x in normal {
            for g in self.elements() {
                if !in_n[self.conjugate(x, g)] {
                    return Err(Error::domain("subgroup is not normal"));
                }
            }
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &x in normal {
                coset_of[self.mul(g, x)] = idx;
            }
        }
        let k = reps.len();
        let q = FiniteGroup::from_fn(k, coset_of[self.identity], "quotient", |a, b| {
            coset_of[self.mul(reps[a], reps[b])]
        });
        Ok((q, coset_of))
    }

    /// Direct product, element `(a, b)` stored at `a * |H| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order;
        let label = format!(
            "{}x{}",
            self.label().unwrap_or("G"),
            other.label().unwrap_or("H")
        );
        FiniteGroup::from_fn(
            self.order * m,
            self.identity * m + other.identity,
            label,
            |x, y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m),
        )
    }
}

/// JSON form: `{order, mul (row-major), identity, label}`.
#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct GroupJson {
    order: usize,
    mul: Vec<u32>,
    identity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl From<FiniteGroup> for GroupJson {
    fn from(g: FiniteGroup) -> Self {
        GroupJson {
            order: g.order,
            mul: g.mul,
            identity: g.identity,
            label: g.label,
        }
    }
}

impl TryFrom<GroupJson> for FiniteGroup {
    type Error = Error;

    fn try_from(j: GroupJson) -> Result<Self> {
        check_cap(j.order, order_cap())?;
        FiniteGroup::from_table(j.order, j.mul, j.identity, j.label)
    }
}
