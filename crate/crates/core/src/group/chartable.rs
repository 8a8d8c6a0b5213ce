//! Character tables by the Burnside–Dixon method.
//!
//! Class-sum multiplication matrices are diagonalized simultaneously over a
//! prime field `F_p` with `p ≡ 1 (mod exponent)` and `p > 2 sqrt|G|`. Each
//! joint eigenvector is a central character mod `p`; degrees follow from
//! the orthogonality relation and the values are lifted to `Z[zeta_e]` by
//! recovering eigenvalue multiplicities with a discrete Fourier transform
//! over the cyclic subgroup generated by each class representative.

use num_integer::Roots;
use serde::Serialize;

use super::classes::ClassMap;
use super::cyclotomic::Cyclotomic;
use super::{check_cap, order_cap, FiniteGroup};
use crate::arith::{inv_mod_prime, is_prime, pow_mod, primitive_root};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    group_order: usize,
    exponent: usize,
    classes: Vec<ConjugacyClass>,
    #[serde(skip)]
    class_of: Vec<usize>,
    #[serde(skip)]
    inverse_class: Vec<usize>,
    degrees: Vec<u64>,
    /// `characters[i][c]` is the value of the i-th irreducible on class `c`.
    characters: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn characters(&self) -> &[Vec<Cyclotomic>] {
        &self.characters
    }

    pub fn value(&self, character: usize, element: usize) -> &Cyclotomic {
        &self.characters[character][self.class_of[element]]
    }

    /// `|G| * <chi_i, chi_j>`, i.e. `sum_c |c| chi_i(c) conj(chi_j(c))`.
    pub fn scaled_inner_product(&self, i: usize, j: usize) -> Cyclotomic {
        self.classes.iter().enumerate().fold(
            Cyclotomic::integer(self.exponent, 0),
            |acc, (c, class)| {
                let term = self.characters[i][c].mul(&self.characters[j][c].conj());
                acc.add(&term.scale(class.size as i64))
            },
        )
    }

    /// Exact row orthogonality `<chi_i, chi_j> = delta_ij`.
    pub fn rows_orthonormal(&self) -> bool {
        let n = self.group_order as i64;
        (0..self.characters.len()).all(|i| {
            (i..self.characters.len()).all(|j| {
                self.scaled_inner_product(i, j).as_integer() == Some(if i == j { n } else { 0 })
            })
        })
    }

    /// Degrees of the irreducibles whose restriction to the query's cyclic
    /// central subgroup is `zeta`-isotypic.
    pub fn degrees_with_central_character(&self, query: &CentralCharacterQuery) -> Vec<u64> {
        let z_order = query.subgroup.len();
        let step = self.exponent / z_order;
        self.degrees
            .iter()
            .enumerate()
            .filter(|&(i, &deg)| {
                query.subgroup.iter().enumerate().all(|(j, &z)| {
                    let scalar = Cyclotomic::root_power(
                        self.exponent,
                        step * ((query.zeta_exponent as usize * j) % z_order),
                    );
                    *self.value(i, z) == scalar.scale(deg as i64)
                })
            })
            .map(|(_, &deg)| deg)
            .collect()
    }
}

/// A cyclic central subgroup `Z = <g>` and the character `g^j -> zeta_{|Z|}^{k j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharacterQuery {
    /// `subgroup[j] = g^j`.
    subgroup: Vec<usize>,
    zeta_exponent: u64,
}

impl CentralCharacterQuery {
    pub fn from_generator(
        group: &FiniteGroup,
        generator: usize,
        zeta_exponent: u64,
    ) -> Result<Self> {
        if generator >= group.order() {
            return Err(Error::domain(format!("element {generator} out of range")));
        }
        if !group.is_central(generator) {
            return Err(Error::domain(format!("element {generator} is not central")));
        }
        let subgroup = group.cyclic_subgroup(generator);
        if zeta_exponent >= subgroup.len() as u64 {
            return Err(Error::domain(format!(
                "zeta exponent {zeta_exponent} must be below |Z| = {}",
                subgroup.len()
            )));
        }
        Ok(Self {
            subgroup,
            zeta_exponent,
        })
    }

    /// Accepts the subgroup as an unordered element list; the generator is
    /// the least-index element that generates it.
    pub fn from_subgroup(
        group: &FiniteGroup,
        elements: &[usize],
        zeta_exponent: u64,
    ) -> Result<Self> {
        let mut sorted: Vec<usize> = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&x| x >= group.order()) {
            return Err(Error::domain("subgroup element out of range"));
        }
        let generator = sorted
            .iter()
            .copied()
            .find(|&g| {
                let mut cyc = group.cyclic_subgroup(g);
                cyc.sort_unstable();
                cyc == sorted
            })
            .ok_or_else(|| Error::domain("subgroup is not cyclic (or not a subgroup)"))?;
        Self::from_generator(group, generator, zeta_exponent)
    }

    /// The whole center, which must be cyclic.
    pub fn center(group: &FiniteGroup, zeta_exponent: u64) -> Result<Self> {
        Self::from_subgroup(group, &group.center(), zeta_exponent)
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn generator(&self) -> usize {
        self.subgroup.get(1).copied().unwrap_or(self.subgroup[0])
    }

    pub fn zeta_exponent(&self) -> u64 {
        self.zeta_exponent
    }

    pub fn with_zeta(&self, zeta_exponent: u64) -> Self {
        assert!(zeta_exponent < self.subgroup.len() as u64);
        Self {
            subgroup: self.subgroup.clone(),
            zeta_exponent,
        }
    }
}

pub fn irr_with_central_character(
    group: &FiniteGroup,
    query: &CentralCharacterQuery,
) -> Result<Vec<u64>> {
    Ok(character_table(group)?.degrees_with_central_character(query))
}

pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    check_cap(group.order(), order_cap())?;
    Ok(Dixon::new(group).run())
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2 sqrt(n)`.
fn choose_prime(e: usize, n: usize) -> u64 {
    let floor = 2 * (n.sqrt() as u64 + 1);
    let e = e as u64;
    let mut p = e + 1;
    while p <= floor || !is_prime(p) {
        p += e;
    }
    p
}

struct Dixon<'a> {
    group: &'a FiniteGroup,
    classes: ClassMap,
    p: u64,
    exponent: usize,
    omega: u64,
}

impl<'a> Dixon<'a> {
    fn new(group: &'a FiniteGroup) -> Self {
        let exponent = group.exponent();
        let p = choose_prime(exponent, group.order());
        let omega = pow_mod(primitive_root(p), (p - 1) / exponent as u64, p);
        Self {
            group,
            classes: group.conjugacy_classes(),
            p,
            exponent,
            omega,
        }
    }

    /// `M[i][l] = #{x in C_i : x^-1 z_l in C_j}` for a fixed `z_l in C_l`.
    #[allow(clippy::needless_range_loop)]
    fn class_matrix(&self, j: usize) -> Vec<Vec<u64>> {
        let k = self.classes.len();
        let g = self.group;
        let mut m = vec![vec![0u64; k]; k];
        for l in 0..k {
            let z = self.classes.representative(l);
            for x in g.elements() {
                let y = g.mul(g.inv(x), z);
                if self.classes.class_of(y) == j {
                    m[self.classes.class_of(x)][l] += 1;
                }
            }
        }
        m
    }

    fn joint_eigenvectors(&self) -> Vec<Vec<u64>> {
        let k = self.classes.len();
        let p = self.p;
        let id_class = self.classes.class_of(self.group.identity());
        let mut pending: Vec<Subspace> = vec![Subspace::full(k)];
        let mut done: Vec<Vec<u64>> = Vec::new();
        for j in 0..k {
            if pending.is_empty() {
                break;
            }
            if j == id_class {
                continue;
            }
            let m = self.class_matrix(j);
            let mut next = Vec::new();
            for space in pending {
                for part in space.split(&m, p) {
                    if part.dim() == 1 {
                        done.push(part.rows.into_iter().next().unwrap());
                    } else {
                        next.push(part);
                    }
                }
            }
            pending = next;
        }
        for space in pending {
            assert_eq!(space.dim(), 1, "class sums failed to separate characters");
            done.push(space.rows.into_iter().next().unwrap());
        }
        assert_eq!(done.len(), k);
        done
    }

    fn run(self) -> CharacterTable {
        let g = self.group;
        let n = g.order();
        let p = self.p;
        let k = self.classes.len();
        let sizes = self.classes.sizes();
        let id_class = self.classes.class_of(g.identity());
        let inverse_class: Vec<usize> = (0..k)
            .map(|c| self.classes.class_of(g.inv(self.classes.representative(c))))
            .collect();
        let reps: Vec<usize> = (0..k).map(|c| self.classes.representative(c)).collect();
        let orders: Vec<usize> = reps.iter().map(|&r| g.element_order(r)).collect();
        // power_class[c][t] = class of rep_c^t
        let power_class: Vec<Vec<usize>> = reps
            .iter()
            .zip(&orders)
            .map(|(&r, &o)| {
                let mut x = g.identity();
                (0..o)
                    .map(|_| {
                        let c = self.classes.class_of(x);
                        x = g.mul(x, r);
                        c
                    })
                    .collect()
            })
            .collect();

        let mut rows: Vec<(u64, Vec<Cyclotomic>)> = Vec::with_capacity(k);
        for w in self.joint_eigenvectors() {
            let scale = inv_mod_prime(w[id_class], p);
            let w: Vec<u64> = w.iter().map(|&x| x * scale % p).collect();
            // sum_c w_c w_{c*} / |C_c| = |G| / chi(1)^2
            let s = (0..k).fold(0u64, |acc, c| {
                let t = w[c] * w[inverse_class[c]] % p * inv_mod_prime(sizes[c] as u64 % p, p) % p;
                (acc + t) % p
            });
            let target = n as u64 % p * inv_mod_prime(s, p) % p;
            let degree = (1..=n.sqrt() as u64)
                .find(|d| d * d % p == target)
                .expect("degree squared must be a square below |G|");
            let values_mod_p: Vec<u64> = (0..k)
                .map(|c| w[c] * degree % p * inv_mod_prime(sizes[c] as u64 % p, p) % p)
                .collect();
            let values = (0..k)
                .map(|c| self.lift(&values_mod_p, &power_class[c], degree))
                .collect();
            rows.push((degree, values));
        }

        let trivial: Vec<Cyclotomic> = (0..k)
            .map(|_| Cyclotomic::integer(self.exponent, 1))
            .collect();
        rows.sort_by(|a, b| {
            let key = |r: &(u64, Vec<Cyclotomic>)| (r.0, r.1 != trivial);
            key(a).cmp(&key(b)).then_with(|| {
                let ca: Vec<&[i64]> = a.1.iter().map(Cyclotomic::coeffs).collect();
                let cb: Vec<&[i64]> = b.1.iter().map(Cyclotomic::coeffs).collect();
                ca.cmp(&cb)
            })
        });

        let classes = (0..k)
            .map(|c| ConjugacyClass {
                representative: reps[c],
                size: sizes[c],
                element_order: orders[c],
            })
            .collect();
        let class_of = g.elements().map(|x| self.classes.class_of(x)).collect();
        CharacterTable {
            group_order: n,
            exponent: self.exponent,
            classes,
            class_of,
            inverse_class,
            degrees: rows.iter().map(|r| r.0).collect(),
            characters: rows.into_iter().map(|r| r.1).collect(),
        }
    }

    /// Recovers `chi(g) = sum_j m_j zeta_o^j` from values mod `p` on the
    /// powers of `g`, where `m_j` is the multiplicity of the eigenvalue
    /// `zeta_o^j` of `g` (order `o`).
    fn lift(&self, values: &[u64], powers: &[usize], degree: u64) -> Cyclotomic {
        let p = self.p;
        let o = powers.len();
        let step = self.exponent / o;
        let root = pow_mod(self.omega, step as u64, p);
        let root_inv = inv_mod_prime(root, p);
        let o_inv = inv_mod_prime(o as u64 % p, p);
        let mut counts = vec![0i64; self.exponent];
        let mut total = 0u64;
        for j in 0..o {
            let twist = pow_mod(root_inv, j as u64, p);
            let mut acc = 0u64;
            let mut tw = 1u64;
            for &c in powers {
                acc = (acc + values[c] * tw) % p;
                tw = tw * twist % p;
            }
            let m = acc * o_inv % p;
            assert!(
                m <= degree,
                "eigenvalue multiplicity {m} exceeds degree {degree}"
            );
            counts[j * step] = m as i64;
            total += m;
        }
        assert_eq!(
            total, degree,
            "eigenvalue multiplicities must sum to the degree"
        );
        Cyclotomic::from_power_sums(self.exponent, &counts)
    }
}

/// A subspace of `F_p^k` held as a basis in reduced row echelon form.
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn full(k: usize) -> Self {
        let rows = (0..k)
            .map(|i| {
                let mut v = vec![0; k];
                v[i] = 1;
                v
            })
            .collect();
        Self {
            rows,
            pivots: (0..k).collect(),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn from_vectors(mut rows: Vec<Vec<u64>>, p: u64) -> Self {
        let pivots = rref(&mut rows, p);
        Self { rows, pivots }
    }

    /// Splits an invariant subspace into the eigenspaces of `m` (acting on
    /// column vectors).
    fn split(self, m: &[Vec<u64>], p: u64) -> Vec<Subspace> {
        let d = self.dim();
        // Matrix of m restricted to the subspace: column t holds the
        // coordinates of m * b_t, read off at the pivot columns.
        let images: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|b| {
                m.iter()
                    .map(|row| row.iter().zip(b).fold(0, |acc, (x, y)| (acc + x * y) % p))
                    .collect()
            })
            .collect();
        let restricted: Vec<Vec<u64>> = (0..d)
            .map(|s| (0..d).map(|t| images[t][self.pivots[s]]).collect())
            .collect();
        let poly = charpoly(&restricted, p);
        let roots: Vec<u64> = (0..p).filter(|&x| eval(&poly, x, p) == 0).collect();
        if roots.len() == 1 {
            return vec![self];
        }
        let mut parts = Vec::new();
        let mut found = 0;
        for lambda in roots {
            let shifted: Vec<Vec<u64>> = restricted
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, &x)| if i == j { (x + p - lambda) % p } else { x })
                        .collect()
                })
                .collect();
            let kernel = nullspace(shifted, p);
            found += kernel.len();
            let vectors: Vec<Vec<u64>> = kernel
                .iter()
                .map(|c| {
                    let mut v = vec![0u64; self.rows[0].len()];
                    for (coef, b) in c.iter().zip(&self.rows) {
                        for (vi, bi) in v.iter_mut().zip(b) {
                            *vi = (*vi + coef * bi) % p;
                        }
                    }
                    v
                })
                .collect();
            parts.push(Subspace::from_vectors(vectors, p));
        }
        assert_eq!(found, d, "class matrix must be diagonalizable");
        parts
    }
}

/// In-place reduced row echelon form; returns pivot columns. Zero rows are
/// dropped.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod_prime(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : a x = 0}`.
fn nullspace(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let pivots = rref(&mut a, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial via Hessenberg reduction, constant term first.
#[allow(clippy::needless_range_loop)]
fn charpoly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    for c in 0..n.saturating_sub(2) {
        let Some(r) = (c + 1..n).find(|&i| h[i][c] != 0) else {
            continue;
        };
        if r != c + 1 {
            h.swap(r, c + 1);
            for row in h.iter_mut() {
                row.swap(r, c + 1);
            }
        }
        let inv = inv_mod_prime(h[c + 1][c], p);
        for i in c + 2..n {
            let f = h[i][c] * inv % p;
            if f == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + p - f * h[c + 1][j] % p) % p;
            }
            for row in h.iter_mut() {
                row[c + 1] = (row[c + 1] + f * row[i]) % p;
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m_idx in 1..=n {
        let prev = &polys[m_idx - 1];
        let mut cur = vec![0u64; m_idx + 1];
        let diag = h[m_idx - 1][m_idx - 1];
        for (i, &c) in prev.iter().enumerate() {
            cur[i + 1] = (cur[i + 1] + c) % p;
            cur[i] = (cur[i] + p - c * diag % p) % p;
        }
        let mut t = 1u64;
        for i in 1..m_idx {
            t = t * h[m_idx - i][m_idx - i - 1] % p;
            let coef = t * h[m_idx - i - 1][m_idx - 1] % p;
            if coef == 0 {
                continue;
            }
            for (deg, &c) in polys[m_idx - i - 1].iter().enumerate() {
                cur[deg] = (cur[deg] + p - coef * c % p) % p;
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}

fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn table(s: &str) -> CharacterTable {
        character_table(&build_group(&s.parse::<GroupSpec>().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn charpoly_small() {
        // [[2,1],[1,2]] over F_7: x^2 - 4x + 3
        assert_eq!(charpoly(&[vec![2, 1], vec![1, 2]], 7), vec![3, 3, 1]);
        // companion-like 3x3 with zero subdiagonal entries
        let m = vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]];
        let poly = charpoly(&m, 11);
        for r in [1, 2, 3] {
            assert_eq!(eval(&poly, r, 11), 0);
        }
    }

    #[test]
    fn quaternion_table() {
        let t = table("Q8");
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
        assert!(t.rows_orthonormal());
        // The 2-dimensional character is -2 at -1 (element 2) and 0 off the center.
        assert_eq!(t.value(4, 2).as_integer(), Some(-2));
        assert_eq!(t.value(4, 1).as_integer(), Some(0));
    }

    #[test]
    fn heisenberg_table() {
        let t = table("heisenberg(3)");
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3]);
        assert!(t.rows_orthonormal());
    }

    #[test]
    fn cyclic_tables() {
        for n in [1usize, 2, 5, 6, 12] {
            let t = table(&format!("C{n}"));
            assert_eq!(t.degrees(), vec![1; n].as_slice());
            assert!(t.rows_orthonormal());
        }
    }

    #[test]
    fn trivial_character_first_and_sum_of_squares() {
        for s in ["D5", "2T", "Dic3", "C3xD3", "extraspecial(3,l2)", "2O"] {
            let t = table(s);
            assert!(
                t.characters()[0].iter().all(|v| v.as_integer() == Some(1)),
                "{s}"
            );
            let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
            assert_eq!(sum as usize, t.group_order(), "{s}");
            assert!(t.rows_orthonormal(), "{s}");
            assert!(t.degrees().windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn binary_tetrahedral_has_irrational_values() {
        let t = table("2T");
        assert_eq!(t.degrees(), &[1, 1, 1, 2, 2, 2, 3]);
        assert!(t
            .characters()
            .iter()
            .flatten()
            .any(|v| v.as_integer().is_none()));
    }

    #[test]
    fn central_character_filter() {
        let g = build_group(&GroupSpec::Quaternion8).unwrap();
        let t = character_table(&g).unwrap();
        let sign = CentralCharacterQuery::center(&g, 1).unwrap();
        assert_eq!(t.degrees_with_central_character(&sign), vec![2]);
        let trivial = sign.with_zeta(0);
        assert_eq!(t.degrees_with_central_character(&trivial), vec![1, 1, 1, 1]);

        let h = build_group(&GroupSpec::Heisenberg(3)).unwrap();
        let q = CentralCharacterQuery::center(&h, 2).unwrap();
        assert_eq!(irr_with_central_character(&h, &q).unwrap(), vec![3]);
    }

    #[test]
    fn query_validation() {
        let g = build_group(&"D3".parse().unwrap()).unwrap();
        // element 3 is a reflection: not central
        assert!(CentralCharacterQuery::from_generator(&g, 3, 0).is_err());
        let k = build_group(&"C2xC2".parse().unwrap()).unwrap();
        assert!(CentralCharacterQuery::center(&k, 0).is_err());
        let c4 = build_group(&"C4".parse().unwrap()).unwrap();
        assert!(CentralCharacterQuery::from_generator(&c4, 1, 4).is_err());
        assert!(CentralCharacterQuery::from_subgroup(&c4, &[0, 1], 0).is_err());
        let q = CentralCharacterQuery::from_subgroup(&c4, &[2, 0], 1).unwrap();
        assert_eq!(q.subgroup(), &[0, 2]);
    }
}
