//! `H^2(S, Z/n)` with trivial action, on normalized bar cochains.

use serde::Serialize;

use super::snf::{diagonalize, kernel_generators, ModMatrix};
use super::Cocycle2;
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const MAX_QUOTIENT_ORDER: usize = 16;
pub const MAX_MODULUS: u64 = 6;

/// `H^2(S, Z/n)` together with explicit cocycle representatives.
#[derive(Debug, Clone, Serialize)]
pub struct SecondCohomology {
    pub modulus: u64,
    /// Invariant factors `d_1 | d_2 | ...`, all greater than 1.
    pub invariants: Vec<u64>,
    pub order: u64,
    /// Generating cocycles and the orders of their classes.
    #[serde(skip)]
    generators: Vec<(Cocycle2, u64)>,
    #[serde(skip)]
    group: FiniteGroup,
}

impl SecondCohomology {
    pub fn generators(&self) -> &[(Cocycle2, u64)] {
        &self.generators
    }

    /// One normalized representative per class, in mixed-radix order over
    /// the generators (first generator varies fastest). Index 0 is split.
    pub fn class_representatives(&self) -> Vec<Cocycle2> {
        let total = self.order as usize;
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut rest = idx as u64;
            let mut acc = Cocycle2::zero(self.group.clone(), self.modulus);
            for (gen, ord) in &self.generators {
                let digit = rest % ord;
                rest /= ord;
                acc = acc.added(&gen.scaled(digit));
            }
            out.push(acc);
        }
        out
    }
}

pub(crate) fn check_caps(s: &FiniteGroup, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("modulus n must be positive"));
    }
    if s.order() > MAX_QUOTIENT_ORDER {
        return Err(Error::OrderCap {
            order: s.order(),
            cap: MAX_QUOTIENT_ORDER,
        });
    }
    if n > MAX_MODULUS {
        return Err(Error::domain(format!(
            "modulus {n} exceeds the supported maximum {MAX_MODULUS}"
        )));
    }
    Ok(())
}

struct Cochains<'a> {
    s: &'a FiniteGroup,
    /// Non-identity elements.
    nz: Vec<usize>,
    /// Position in `nz`, or `usize::MAX` for the identity.
    pos: Vec<usize>,
}

impl<'a> Cochains<'a> {
    fn new(s: &'a FiniteGroup) -> Self {
        let nz: Vec<usize> = s.elements().filter(|&x| x != s.identity()).collect();
        let mut pos = vec![usize::MAX; s.order()];
        for (i, &x) in nz.iter().enumerate() {
            pos[x] = i;
        }
        Self { s, nz, pos }
    }

    fn pair(&self, a: usize, b: usize) -> Option<usize> {
        let (pa, pb) = (self.pos[a], self.pos[b]);
        (pa != usize::MAX && pb != usize::MAX).then(|| pa * self.nz.len() + pb)
    }

    /// `(delta f)(a, b) = f(a) + f(b) - f(ab)`.
    fn delta1(&self, n: u64) -> ModMatrix {
        let k = self.nz.len();
        let mut m = ModMatrix::zeros(k * k, k, n);
        for &a in &self.nz {
            for &b in &self.nz {
                let row = self.pair(a, b).expect("non-identity pair");
                m.add_int(row, self.pos[a], 1);
                m.add_int(row, self.pos[b], 1);
                let ab = self.s.mul(a, b);
                if ab != self.s.identity() {
                    m.add_int(row, self.pos[ab], -1);
                }
            }
        }
        m
    }

    /// `(delta c)(a, b, d) = c(b, d) - c(ab, d) + c(a, bd) - c(a, b)`.
    fn delta2(&self, n: u64) -> ModMatrix {
        let k = self.nz.len();
        let mut m = ModMatrix::zeros(k * k * k, k * k, n);
        let mut row = 0;
        for &a in &self.nz {
            for &b in &self.nz {
                let ab = self.s.mul(a, b);
                for &d in &self.nz {
                    let bd = self.s.mul(b, d);
                    let terms = [((b, d), 1), ((ab, d), -1), ((a, bd), 1), ((a, b), -1)];
                    for ((x, y), sign) in terms {
                        if let Some(col) = self.pair(x, y) {
                            m.add_int(row, col, sign);
                        }
                    }
                    row += 1;
                }
            }
        }
        m
    }

    fn to_cocycle(&self, v: &[u64], n: u64) -> Cocycle2 {
        let order = self.s.order();
        let mut table = vec![0u64; order * order];
        for &a in &self.nz {
            for &b in &self.nz {
                table[a * order + b] = v[self.pair(a, b).expect("non-identity pair")];
            }
        }
        Cocycle2::from_parts(self.s.clone(), n, table)
    }
}

/// Computes `H^2(S, Z/n)` for the trivial action. Requires `|S| <= 16` and
/// `n <= 6`.
pub fn second_cohomology(s: &FiniteGroup, n: u64) -> Result<SecondCohomology> {
    check_caps(s, n)?;
    let cochains = Cochains::new(s);
    let n2 = cochains.nz.len().pow(2);

    let cocycles = kernel_generators(&cochains.delta2(n));
    let k = cocycles.len();
    let mut generators = Vec::new();
    if k > 0 {
        let kmat = ModMatrix::from_columns(&cocycles, n2, n);
        let mut neg_b = cochains.delta1(n);
        for i in 0..neg_b.rows {
            for j in 0..neg_b.cols {
                let v = neg_b.get(i, j);
                neg_b.set(i, j, (n - v) % n);
            }
        }
        // Relations among cocycle generators: y with K y in the image of B.
        let relations: Vec<Vec<u64>> = kernel_generators(&kmat.hconcat(&neg_b))
            .into_iter()
            .map(|v| v[..k].to_vec())
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        let rel = ModMatrix::from_columns(&relations, k, n);
        let d = diagonalize(rel, true, false);
        let orders = d.cokernel_orders(k, n);
        let p_inv = d.p_inv.expect("requested");
        for (i, &ord) in orders.iter().enumerate() {
            if ord <= 1 {
                continue;
            }
            let v = kmat.mul_vec(&p_inv.column(i));
            generators.push((cochains.to_cocycle(&v, n), ord));
        }
    }
    let orders: Vec<u64> = generators.iter().map(|(_, o)| *o).collect();
    Ok(SecondCohomology {
        modulus: n,
        invariants: invariant_factors(&orders),
        order: orders.iter().product(),
        generators,
        group: s.clone(),
    })
}

/// Invariant factors of `Z/o_1 x Z/o_2 x ...`, ascending, without 1s.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &o in orders {
        for (p, e) in factorize(o) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for mut powers in by_prime.into_values() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.into_iter().enumerate() {
            factors[len - 1 - i] *= q;
        }
    }
    factors
}
