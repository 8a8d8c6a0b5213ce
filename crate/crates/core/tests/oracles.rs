//! Library results checked against independent brute-force computations.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use packetmult::arith::gcd;
use packetmult::extension::{
    enumerate_central_extensions, extensions_by_class, second_cohomology, sl2_finite_subgroup_check,
};
use packetmult::group::{
    are_isomorphic, build_group, character_table, fingerprint, FiniteGroup, GroupSpec,
};
use packetmult::padic::PAdicField;

fn g(s: &str) -> FiniteGroup {
    build_group(&s.parse::<GroupSpec>().unwrap()).unwrap()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn vp(p: u64, mut n: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `|Z_p^x / (Z_p^x)^n|` read off `(Z/p^K)^x` for `K` large enough that
/// every unit which is an n-th power mod p^K is one in `Z_p`.
fn brute_unit_index(p: u64, n: u64) -> u64 {
    let k = 2 * vp(p, n) + 3;
    let modulus = p.pow(k);
    let units: Vec<u64> = (1..modulus).filter(|x| x % p != 0).collect();
    let powers: HashSet<u64> = units.iter().map(|&x| pow_mod(x, n, modulus)).collect();
    units.len() as u64 / powers.len() as u64
}

/// `|mu_n(Q_p)|`: residues mod p^K of solutions of `x^n = 1` mod a much
/// higher power, which discards solutions that do not lift.
fn brute_mu(p: u64, n: u64) -> u64 {
    let k = 2;
    let k_high = k + vp(p, n) + 2;
    let high = p.pow(k_high);
    let low = p.pow(k);
    (1..high)
        .filter(|x| x % p != 0 && pow_mod(*x, n, high) == 1)
        .map(|x| x % low)
        .collect::<HashSet<_>>()
        .len() as u64
}

#[test]
fn coset_cardinality_matches_unit_group_oracle() {
    for p in [2u64, 3, 5, 7] {
        let field = PAdicField::rational(p).unwrap();
        for n in 1..=12u64 {
            // Q_p^x = p^Z x Z_p^x.
            let expected = n * brute_unit_index(p, n);
            assert_eq!(
                field.coset_card(n).unwrap(),
                BigUint::from(expected),
                "p={p} n={n}"
            );
        }
    }
}

#[test]
fn roots_of_unity_match_lifting_oracle() {
    for p in [2u64, 3, 5, 7] {
        let field = PAdicField::rational(p).unwrap();
        for n in 1..=12u64 {
            assert_eq!(field.mu_card(n).unwrap(), brute_mu(p, n), "p={p} n={n}");
        }
    }
}

#[test]
fn square_bound_matches_search() {
    for c in 1..=3000u64 {
        let expected = (1..=c).rev().find(|a| c % (a * a) == 0).unwrap();
        let got = packetmult::padic::square_divisor_bound(&BigUint::from(c)).unwrap();
        assert_eq!(got, BigUint::from(expected), "c={c}");
    }
}

/// Rank over `F_p` by plain Gaussian elimination.
#[allow(clippy::needless_range_loop)]
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for j in 0..cols {
                    rows[r][j] = (rows[r][j] + p * p - f * rows[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim Z^2 - dim B^2` on all (unnormalized) cochains over `F_p`.
fn h2_dimension_mod_p(s: &FiniteGroup, p: u64) -> u32 {
    let k = s.order();
    let idx2 = |a: usize, b: usize| a * k + b;
    // delta2: rows indexed by triples.
    let mut d2 = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let mut row = vec![0u64; k * k];
                let ab = s.mul(a, b);
                let bc = s.mul(b, c);
                row[idx2(b, c)] = (row[idx2(b, c)] + 1) % p;
                row[idx2(ab, c)] = (row[idx2(ab, c)] + p - 1) % p;
                row[idx2(a, bc)] = (row[idx2(a, bc)] + 1) % p;
                row[idx2(a, b)] = (row[idx2(a, b)] + p - 1) % p;
                d2.push(row);
            }
        }
    }
    let dim_z = k * k - rank_mod_p(d2, p);
    // delta1 as a map C^1 -> C^2; its rank is dim B^2.
    let mut d1 = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let mut row = vec![0u64; k];
            row[a] = (row[a] + 1) % p;
            row[b] = (row[b] + 1) % p;
            let ab = s.mul(a, b);
            row[ab] = (row[ab] + p - 1) % p;
            d1.push(row);
        }
    }
    let dim_b = rank_mod_p(d1, p);
    (dim_z - dim_b) as u32
}

#[test]
fn cohomology_matches_field_rank_count() {
    for spec in [
        "C1", "C2", "C4", "C6", "C2xC2", "C3xC3", "D3", "Q8", "D4", "C2xC2xC2",
    ] {
        let s = g(spec);
        for p in [2u64, 3, 5] {
            let h = second_cohomology(&s, p).unwrap();
            let dim = h2_dimension_mod_p(&s, p);
            assert_eq!(h.order, p.pow(dim), "S={spec} p={p}");
        }
    }
}

/// `|H^2(S, Z/n)| = |Hom(H_2 S, Z/n)| * |Ext(H_1 S, Z/n)|` from known
/// abelianizations and Schur multipliers.
#[test]
fn cohomology_matches_universal_coefficients() {
    // (spec, invariant factors of H_1, invariant factors of H_2)
    let table: &[(&str, &[u64], &[u64])] = &[
        ("C5", &[5], &[]),
        ("C2xC4", &[2, 4], &[2]),
        ("C2xC6", &[2, 6], &[2]),
        ("C4xC4", &[4, 4], &[4]),
        ("C2xC2xC2", &[2, 2, 2], &[2, 2, 2]),
        ("D3", &[2], &[]),
        ("D4", &[2, 2], &[2]),
        ("D5", &[2], &[]),
        ("D6", &[2, 2], &[2]),
        ("Q8", &[2, 2], &[]),
        ("Dic3", &[4], &[]),
        ("C2xQ8", &[2, 2, 2], &[2, 2]),
        ("D8", &[2, 2], &[2]),
        ("C2xC2xC2xC2", &[2, 2, 2, 2], &[2, 2, 2, 2, 2, 2]),
    ];
    for &(spec, h1, h2) in table {
        let s = g(spec);
        for n in 1..=6u64 {
            let expected: u64 = h1.iter().chain(h2).map(|&a| gcd(a, n)).product();
            let h = second_cohomology(&s, n).unwrap();
            assert_eq!(h.order, expected, "S={spec} n={n}");
            assert_eq!(h.invariants.iter().product::<u64>(), h.order);
            assert!(h.invariants.windows(2).all(|w| w[1] % w[0] == 0));
        }
    }
}

#[test]
fn klein_four_classes_by_type() {
    // 8 classes: split, three C4xC2, three D4, one Q8.
    let exts = extensions_by_class(&g("C2xC2"), 2).unwrap();
    assert_eq!(exts.len(), 8);
    let refs = [("C2xC2xC2", 1), ("C4xC2", 3), ("D4", 3), ("Q8", 1)];
    let mut counts = BTreeMap::new();
    for e in &exts {
        let fp = fingerprint(e.total());
        let name = refs
            .iter()
            .find(|(r, _)| fingerprint(&g(r)) == fp)
            .map(|(r, _)| *r)
            .expect("known type");
        *counts.entry(name).or_insert(0) += 1;
    }
    for (name, expected) in refs {
        assert_eq!(counts[name], expected, "{name}");
    }
}

#[test]
fn enumerated_extensions_are_well_formed() {
    for (spec, n) in [
        ("C2", 2),
        ("C2xC2", 2),
        ("C3", 3),
        ("C2", 4),
        ("C4", 2),
        ("C3xC3", 3),
        ("D3", 2),
        ("Q8", 2),
    ] {
        let s = g(spec);
        let h = second_cohomology(&s, n).unwrap();
        let exts = enumerate_central_extensions(&s, n).unwrap();
        assert!(exts.len() as u64 <= h.order, "S={spec} n={n}");
        for e in &exts {
            e.total().validate().unwrap();
            e.validate().unwrap();
            assert_eq!(e.n() as u64, n);
            let (q, _) = e.total().quotient(e.central_subgroup()).unwrap();
            assert!(are_isomorphic(&q, &s), "S={spec} n={n}");
        }
        // Distinct entries are pairwise inequivalent.
        for i in 0..exts.len() {
            for j in i + 1..exts.len() {
                assert!(!exts[i].is_equivalent(&exts[j]));
            }
        }
    }
}

#[test]
fn extension_types_of_small_cases() {
    let types = |spec: &str, n: u64| -> Vec<FiniteGroup> {
        enumerate_central_extensions(&g(spec), n)
            .unwrap()
            .into_iter()
            .map(|e| e.total().clone())
            .collect()
    };
    let c3 = types("C3", 3);
    assert_eq!(c3.len(), 2);
    assert!(are_isomorphic(&c3[0], &g("C3xC3")));
    assert!(are_isomorphic(&c3[1], &g("C9")));
    // H^2((Z/3)^2, Z/3) has order 27; the non-abelian classes give both
    // groups of order 27 and exponent 3 or 9.
    let nine = types("C3xC3", 3);
    assert!(nine.iter().any(|t| are_isomorphic(t, &g("heisenberg(3)"))));
    assert!(nine
        .iter()
        .any(|t| are_isomorphic(t, &g("extraspecial(3,l2)"))));
}

#[test]
fn sl2_filter_against_element_structure() {
    // Among order-16 groups in the corpus only the cyclic and binary
    // dihedral ones embed in SL(2, C).
    for (spec, expected) in [
        ("C16", true),
        ("Dic4", true),
        ("C4xC4", false),
        ("Q8xC2", false),
        ("D8", false),
        ("C8xC2", false),
    ] {
        assert_eq!(
            sl2_finite_subgroup_check(&g(spec)).unwrap(),
            expected,
            "{spec}"
        );
    }
    // A finite subgroup of SL(2, C) has at most one involution.
    for spec in ["C2xC2", "D3", "D4", "C2xC6"] {
        assert!(!sl2_finite_subgroup_check(&g(spec)).unwrap());
    }
}

/// Column orthogonality and class-size consistency of computed tables.
#[test]
fn character_tables_satisfy_column_orthogonality() {
    for spec in [
        "Q8",
        "D5",
        "heisenberg(3)",
        "2T",
        "Dic3",
        "C3xD3",
        "D4xC2",
        "2O",
    ] {
        let grp = g(spec);
        let t = character_table(&grp).unwrap();
        let order = grp.order() as i64;
        let k = t.classes().len();
        assert_eq!(t.characters().len(), k);
        for a in 0..k {
            for b in 0..k {
                let mut acc = packetmult::group::Cyclotomic::integer(t.exponent(), 0);
                for row in t.characters() {
                    acc = acc.add(&row[a].mul(&row[b].conj()));
                }
                let expected = if a == b {
                    order / t.classes()[a].size as i64
                } else {
                    0
                };
                assert_eq!(acc.as_integer(), Some(expected), "{spec} columns {a},{b}");
            }
        }
    }
}
