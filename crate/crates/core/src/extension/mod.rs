//! Central extensions `1 -> Z/n -> A -> S -> 1` with trivial action.

mod cohomology;
mod sl2;
pub mod snf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{check_cap, find_isomorphism, fingerprint, order_cap, FiniteGroup, GroupJson};

pub use cohomology::{
    invariant_factors, second_cohomology, SecondCohomology, MAX_MODULUS, MAX_QUOTIENT_ORDER,
};
pub use sl2::sl2_finite_subgroup_check;

/// A 2-cochain `S x S -> Z/n`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    group: FiniteGroup,
    modulus: u64,
    table: Vec<u64>,
}

impl Cocycle2 {
    /// Checks shape, range and the cocycle identity.
    pub fn new(group: FiniteGroup, modulus: u64, table: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus n must be positive"));
        }
        let s = group.order();
        if table.len() != s * s {
            return Err(Error::domain(format!(
                "cocycle table has {} entries, expected {}",
                table.len(),
                s * s
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x >= modulus) {
            return Err(Error::domain(format!(
                "cocycle entry {bad} not reduced mod {modulus}"
            )));
        }
        let c = Self::from_parts(group, modulus, table);
        if !c.is_cocycle() {
            return Err(Error::domain("table violates the cocycle identity"));
        }
        Ok(c)
    }

    pub(crate) fn from_parts(group: FiniteGroup, modulus: u64, table: Vec<u64>) -> Self {
        Self {
            group,
            modulus,
            table,
        }
    }

    pub fn zero(group: FiniteGroup, modulus: u64) -> Self {
        let s = group.order();
        Self::from_parts(group, modulus, vec![0; s * s])
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    #[inline]
    pub fn value(&self, a: usize, b: usize) -> u64 {
        self.table[a * self.group.order() + b]
    }

    /// `c(a,b) + c(ab,d) = c(b,d) + c(a,bd)` for all triples.
    pub fn is_cocycle(&self) -> bool {
        let g = &self.group;
        let n = self.modulus;
        g.elements().all(|a| {
            g.elements().all(|b| {
                let ab = g.mul(a, b);
                g.elements().all(|d| {
                    let lhs = self.value(a, b) + self.value(ab, d);
                    let rhs = self.value(b, d) + self.value(a, g.mul(b, d));
                    lhs % n == rhs % n
                })
            })
        })
    }

    /// `c(1, s) = c(s, 1) = 0`.
    pub fn is_normalized(&self) -> bool {
        let e = self.group.identity();
        self.group
            .elements()
            .all(|s| self.value(e, s) == 0 && self.value(s, e) == 0)
    }

    pub fn scaled(&self, k: u64) -> Self {
        let n = self.modulus;
        let table = self.table.iter().map(|&x| x * (k % n) % n).collect();
        Self::from_parts(self.group.clone(), n, table)
    }

    pub fn added(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        let n = self.modulus;
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(a, b)| (a + b) % n)
            .collect();
        Self::from_parts(self.group.clone(), n, table)
    }
}

/// A central extension with its distinguished cyclic subgroup and projection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExtensionJson", into = "ExtensionJson")]
pub struct CentralExtension {
    total: FiniteGroup,
    /// `central[j] = z^j` for the distinguished generator `z`.
    central: Vec<usize>,
    /// Image in `quotient` of each element of `total`.
    projection: Vec<usize>,
    quotient: FiniteGroup,
}

impl CentralExtension {
    /// Twisted product on `Z/n x S`: `(z, s)(z', s') = (z + z' + c(s, s'), ss')`,
    /// with `(z, s)` stored at `z + n*s`.
    pub fn from_cocycle(c: &Cocycle2) -> Result<Self> {
        let s = c.group();
        let n = c.modulus() as usize;
        let order = n * s.order();
        check_cap(order, order_cap())?;
        let shift = c.value(s.identity(), s.identity()) as usize;
        if shift != 0 || !c.is_normalized() {
            return Err(Error::domain("cocycle must be normalized"));
        }
        let label = format!("Z/{n}.{}", s.label().unwrap_or("S"));
        let total = FiniteGroup::from_fn(order, n * s.identity(), label, |x, y| {
            let (z1, s1) = (x % n, x / n);
            let (z2, s2) = (y % n, y / n);
            (z1 + z2 + c.value(s1, s2) as usize) % n + n * s.mul(s1, s2)
        });
        let central = (0..n).map(|j| j + n * s.identity()).collect();
        let projection = (0..order).map(|x| x / n).collect();
        Ok(Self {
            total,
            central,
            projection,
            quotient: s.clone(),
        })
    }

    /// Extension of `total / <generator>` by the cyclic group `<generator>`,
    /// which must be central.
    pub fn from_generator(total: FiniteGroup, generator: usize) -> Result<Self> {
        if generator >= total.order() {
            return Err(Error::domain(format!("element {generator} out of range")));
        }
        if !total.is_central(generator) {
            return Err(Error::domain(format!("element {generator} is not central")));
        }
        let central = total.cyclic_subgroup(generator);
        let (quotient, projection) = total.quotient(&central)?;
        Ok(Self {
            total,
            central,
            projection,
            quotient,
        })
    }

    pub fn total(&self) -> &FiniteGroup {
        &self.total
    }

    pub fn central_subgroup(&self) -> &[usize] {
        &self.central
    }

    /// Distinguished generator of the central subgroup.
    pub fn generator(&self) -> usize {
        self.central
            .get(1)
            .copied()
            .unwrap_or(self.total.identity())
    }

    pub fn n(&self) -> usize {
        self.central.len()
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    /// Checks centrality, cyclicity, the homomorphism property of the
    /// projection, surjectivity and the kernel.
    pub fn validate(&self) -> Result<()> {
        let t = &self.total;
        let z = self.generator();
        if t.cyclic_subgroup(z) != self.central {
            return Err(Error::domain(
                "central subgroup is not generated by its first power",
            ));
        }
        if !t.is_central(z) {
            return Err(Error::domain("distinguished subgroup is not central"));
        }
        if self.projection.len() != t.order() {
            return Err(Error::domain("projection has the wrong length"));
        }
        let q = &self.quotient;
        if self.projection.iter().any(|&x| x >= q.order()) {
            return Err(Error::domain("projection value out of range"));
        }
        for x in t.elements() {
            for y in t.elements() {
                if self.projection[t.mul(x, y)] != q.mul(self.projection[x], self.projection[y]) {
                    return Err(Error::domain("projection is not a homomorphism"));
                }
            }
        }
        let mut hit = vec![false; q.order()];
        for &v in &self.projection {
            hit[v] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::domain("projection is not surjective"));
        }
        let mut kernel: Vec<usize> = t
            .elements()
            .filter(|&x| self.projection[x] == q.identity())
            .collect();
        let mut central = self.central.clone();
        kernel.sort_unstable();
        central.sort_unstable();
        if kernel != central {
            return Err(Error::domain(
                "projection kernel differs from the central subgroup",
            ));
        }
        Ok(())
    }

    /// Isomorphism of total groups carrying one distinguished generator to
    /// the other.
    pub fn is_equivalent(&self, other: &CentralExtension) -> bool {
        self.n() == other.n()
            && find_isomorphism(
                &self.total,
                &other.total,
                &[(self.generator(), other.generator())],
            )
            .is_some()
    }
}

/// One extension per class of `H^2(S, Z/n)`, in canonical class order.
pub fn extensions_by_class(s: &FiniteGroup, n: u64) -> Result<Vec<CentralExtension>> {
    check_enumeration_caps(s, n)?;
    second_cohomology(s, n)?
        .class_representatives()
        .iter()
        .map(CentralExtension::from_cocycle)
        .collect()
}

/// Extensions up to isomorphism of the total group carrying the embedded
/// generator to the embedded generator. The first class representative of
/// each type is kept.
pub fn enumerate_central_extensions(s: &FiniteGroup, n: u64) -> Result<Vec<CentralExtension>> {
    let all = extensions_by_class(s, n)?;
    let mut kept: Vec<(CentralExtension, crate::group::Fingerprint)> = Vec::new();
    for ext in all {
        let fp = fingerprint(ext.total());
        let seen = kept
            .iter()
            .any(|(k, kfp)| *kfp == fp && k.is_equivalent(&ext));
        if !seen {
            kept.push((ext, fp));
        }
    }
    Ok(kept.into_iter().map(|(e, _)| e).collect())
}

fn check_enumeration_caps(s: &FiniteGroup, n: u64) -> Result<()> {
    cohomology::check_caps(s, n)?;
    let order = s.order() * n as usize;
    check_cap(order, crate::group::DEFAULT_ORDER_CAP.min(order_cap()))
}

#[derive(Serialize, Deserialize)]
struct ExtensionJson {
    #[serde(flatten)]
    total: GroupJson,
    central_subgroup: Vec<usize>,
    projection: Vec<usize>,
}

impl From<CentralExtension> for ExtensionJson {
    fn from(e: CentralExtension) -> Self {
        Self {
            total: e.total.into(),
            central_subgroup: e.central,
            projection: e.projection,
        }
    }
}

impl TryFrom<ExtensionJson> for CentralExtension {
    type Error = Error;

    fn try_from(j: ExtensionJson) -> Result<Self> {
        let total = FiniteGroup::try_from(j.total)?;
        let central = j.central_subgroup;
        if central.is_empty() || central.iter().any(|&x| x >= total.order()) {
            return Err(Error::domain(
                "central_subgroup must list elements of the total group",
            ));
        }
        if central[0] != total.identity() {
            return Err(Error::domain(
                "central_subgroup must start with the identity",
            ));
        }
        let gen = central.get(1).copied().unwrap_or(total.identity());
        if total.cyclic_subgroup(gen) != central {
            return Err(Error::domain(
                "central_subgroup must list the powers of one generator",
            ));
        }
        if j.projection.len() != total.order() {
            return Err(Error::domain("projection has the wrong length"));
        }
        // Quotient table transported along the given labels.
        let k = j.projection.iter().copied().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; k];
        for (x, &v) in j.projection.iter().enumerate() {
            if rep[v] == usize::MAX {
                rep[v] = x;
            }
        }
        if rep.contains(&usize::MAX) {
            return Err(Error::domain("projection is not surjective onto 0..k"));
        }
        let proj = &j.projection;
        let quotient = FiniteGroup::from_fn(k, proj[total.identity()], "quotient", |a, b| {
            proj[total.mul(rep[a], rep[b])]
        });
        let ext = Self {
            total,
            central,
            projection: j.projection,
            quotient,
        };
        ext.validate()?;
        Ok(ext)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{are_isomorphic, build_group, GroupSpec};

    fn g(s: &str) -> FiniteGroup {
        build_group(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    fn matches_any(ext: &CentralExtension, names: &[&str]) -> Option<usize> {
        names
            .iter()
            .position(|s| are_isomorphic(ext.total(), &g(s)))
    }

    #[test]
    fn klein_four_extensions() {
        let exts = enumerate_central_extensions(&g("C2xC2"), 2).unwrap();
        assert_eq!(exts.len(), 4);
        let names = ["C2xC2xC2", "C4xC2", "D4", "Q8"];
        let mut found: Vec<usize> = exts
            .iter()
            .map(|e| matches_any(e, &names).unwrap())
            .collect();
        found.sort_unstable();
        assert_eq!(found, vec![0, 1, 2, 3]);
        for e in &exts {
            e.validate().unwrap();
            assert!(are_isomorphic(e.quotient(), &g("C2xC2")));
        }
    }

    #[test]
    fn cyclic_and_trivial_quotients() {
        let exts = enumerate_central_extensions(&g("C2"), 2).unwrap();
        assert_eq!(exts.len(), 2);
        assert!(matches_any(&exts[0], &["C2xC2"]).is_some());
        assert!(matches_any(&exts[1], &["C4"]).is_some());
        for n in 1..=6u64 {
            let exts = enumerate_central_extensions(&g("C1"), n).unwrap();
            assert_eq!(exts.len(), 1);
            assert!(exts[0].total().is_cyclic());
            assert_eq!(exts[0].total().order(), n as usize);
        }
    }

    #[test]
    fn class_level_extensions_are_valid() {
        let exts = extensions_by_class(&g("C2xC2"), 2).unwrap();
        assert_eq!(exts.len(), 8);
        for e in &exts {
            e.total().validate().unwrap();
            e.validate().unwrap();
        }
    }

    #[test]
    fn from_generator_recovers_quotient() {
        let q8 = g("Q8");
        let e = CentralExtension::from_generator(q8, 2).unwrap();
        assert_eq!(e.n(), 2);
        assert!(are_isomorphic(e.quotient(), &g("C2xC2")));
        assert!(CentralExtension::from_generator(g("D3"), 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let e = enumerate_central_extensions(&g("C2xC2"), 2)
            .unwrap()
            .pop()
            .unwrap();
        let text = serde_json::to_string(&e).unwrap();
        assert!(text.contains("\"central_subgroup\""));
        assert!(text.contains("\"projection\""));
        let back: CentralExtension = serde_json::from_str(&text).unwrap();
        assert_eq!(back.total(), e.total());
        assert_eq!(back.projection(), e.projection());
        let broken = text.replace("\"projection\":[0,", "\"projection\":[1,");
        assert!(serde_json::from_str::<CentralExtension>(&broken).is_err());
    }

    #[test]
    fn cocycle_validation() {
        let c2 = g("C2");
        assert!(Cocycle2::new(c2.clone(), 2, vec![0, 0, 0, 1]).is_ok());
        assert!(Cocycle2::new(c2.clone(), 2, vec![0, 0, 0, 2]).is_err());
        // c(1,1)=1 on a nonidentity pair only in one slot of C3 breaks the identity.
        let c3 = g("C3");
        let mut t = vec![0u64; 9];
        t[4] = 1;
        assert!(Cocycle2::new(c3, 3, t).is_err());
    }
}
