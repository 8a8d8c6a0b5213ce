//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::Ratio;
use packetmult::cases::{sl2_case, sl4_enumerate, sl_prime_case};
use packetmult::engine::{
    analyze_parameter, formal_degree_ratio, multiplicity_from_packet_cards, steinberg_report,
    NoteKind, ParameterScenario,
};
use packetmult::extension::{
    enumerate_central_extensions, extensions_by_class, second_cohomology,
    sl2_finite_subgroup_check, CentralExtension,
};
use packetmult::group::{
    are_isomorphic, build_group, character_table, irr_with_central_character,
    CentralCharacterQuery, FiniteGroup, GroupSpec,
};
use packetmult::padic::PAdicField;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn g(s: &str) -> FiniteGroup {
    build_group(&s.parse::<GroupSpec>().unwrap()).unwrap()
}

fn center_ext(spec: &str) -> CentralExtension {
    let grp = g(spec);
    let center = grp.center();
    let z = *center
        .iter()
        .find(|&&z| grp.element_order(z) == center.len())
        .expect("cyclic center");
    CentralExtension::from_generator(grp, z).unwrap()
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

/// `n * |Z_p^x / (Z_p^x)^n|` counted in `(Z/p^K)^x`.
fn brute_coset(p: u64, n: u64) -> u64 {
    let modulus = p.pow(2 * vp(p, n) + 3);
    let units: Vec<u64> = (1..modulus).filter(|x| x % p != 0).collect();
    let powers: HashSet<u64> = units.iter().map(|&x| pow_mod(x, n, modulus)).collect();
    n * (units.len() / powers.len()) as u64
}

fn criterion_1() -> Check {
    for p in [2u64, 3, 5, 7] {
        let field = PAdicField::rational(p).unwrap();
        for n in 1..=12u64 {
            let got = field.coset_card(n).unwrap();
            let want = brute_coset(p, n);
            ensure!(
                got == BigUint::from(want),
                "p={p} n={n}: {got} vs oracle {want}"
            );
        }
        let want = if p == 2 { 8u64 } else { 4 };
        ensure!(
            field.coset_card(2).unwrap() == BigUint::from(want),
            "square classes of Q_{p}"
        );
    }
    let mut seen = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        for e in 1..=3 {
            for f in 1..=3 {
                let field = PAdicField::new(p, e, f, 0).unwrap();
                let q = p.pow(f);
                let want = if q % 4 == 1 { 16u64 } else { 8 };
                ensure!(
                    field.coset_card(4).unwrap() == BigUint::from(want),
                    "n=4 p={p} e={e} f={f}"
                );
                seen.push(want);
            }
        }
    }
    ensure!(
        seen.contains(&8) && seen.contains(&16),
        "both n=4 values exercised"
    );
    Ok("oracle agreement for p in {2,3,5,7}, n <= 12; n=4 gives 8 or 16 by q mod 4".into())
}

fn criterion_2() -> Check {
    let q8 = g("Q8");
    let mut degrees = character_table(&q8).unwrap().degrees().to_vec();
    degrees.sort_unstable();
    ensure!(degrees == [1, 1, 1, 1, 2], "degrees {degrees:?}");
    let sign =
        irr_with_central_character(&q8, &CentralCharacterQuery::center(&q8, 1).unwrap()).unwrap();
    ensure!(sign == [2], "sign-isotypic degrees {sign:?}");
    let ext = center_ext("Q8");
    let field = PAdicField::rational(3).unwrap();
    let r = analyze_parameter(&ParameterScenario::new("q8", 1, 2, ext, 1, Some(field)).unwrap())
        .unwrap();
    let triple = (r.card_star, r.card_g, r.multiplicity);
    ensure!(triple == (4, 1, 2), "triple {triple:?}");
    Ok("degrees [1,1,1,1,2], sign -> [2], triple (4,1,2)".into())
}

fn criterion_3() -> Check {
    for (l, q) in [(2u64, 3u64), (3, 7), (5, 11)] {
        let pair: [&str; 2] = if l == 2 {
            ["D4", "Q8"]
        } else {
            ["heisenberg", "extraspecial_l2"]
        };
        for name in pair {
            let spec = match name {
                "heisenberg" => format!("heisenberg({l})"),
                "extraspecial_l2" => format!("extraspecial({l},l2)"),
                other => other.to_string(),
            };
            let grp = g(&spec);
            ensure!(
                grp.order() as u64 == l.pow(3) && !grp.is_abelian(),
                "{spec} shape"
            );
            let table = character_table(&grp).unwrap();
            let k = table.classes().len() as u64;
            ensure!(k == l * l + l - 1, "{spec}: {k} classes");
            if l > 2 {
                let ones = table.degrees().iter().filter(|&&d| d == 1).count() as u64;
                let ls = table.degrees().iter().filter(|&&d| d == l).count() as u64;
                ensure!(
                    ones == l * l && ls == l - 1 && ones + ls == k,
                    "{spec} degrees"
                );
            }
            let ext = center_ext(&spec);
            let base = CentralCharacterQuery::from_generator(&grp, ext.generator(), 0).unwrap();
            for zeta in 1..l {
                let degs = table.degrees_with_central_character(&base.with_zeta(zeta));
                ensure!(degs == [l], "{spec} zeta={zeta}: {degs:?}");
                let field = PAdicField::unramified(q).unwrap();
                let scenario =
                    ParameterScenario::new(&spec, 1, l, ext.clone(), zeta as i64, Some(field))
                        .unwrap();
                let r = analyze_parameter(&scenario).unwrap();
                let triple = (r.card_star, r.card_g, r.multiplicity);
                ensure!(triple == (l * l, 1, l), "{spec} zeta={zeta}: {triple:?}");
            }
        }
        let r = sl_prime_case(l, q, true).unwrap();
        ensure!(
            (r.card_star, r.card_g, r.multiplicity) == (l * l, 1, l),
            "sl_prime_case({l},{q})"
        );
    }
    Ok(
        "l^2+l-1 classes, degree pattern, one degree-l irreducible per zeta, triple (l^2,1,l)"
            .into(),
    )
}

fn criterion_4() -> Check {
    let nine = vec![
        (1, 1, 1),
        (2, 2, 1),
        (4, 1, 2),
        (4, 4, 1),
        (8, 2, 2),
        (8, 8, 1),
        (16, 1, 4),
        (16, 4, 2),
        (16, 16, 1),
    ];
    let got16 = sl4_enumerate(16).unwrap();
    ensure!(got16 == nine, "coset 16: {got16:?}");
    let got8 = sl4_enumerate(8).unwrap();
    let six: Vec<_> = nine.iter().copied().filter(|t| t.0 <= 8).collect();
    ensure!(got8 == six, "coset 8: {got8:?}");
    Ok("nine triples for 16, six for 8".into())
}

fn criterion_5() -> Check {
    let mut count = 0usize;
    let mut nonabelian = 0usize;
    for s in ["C2", "C2xC2", "C3", "C3xC3", "C4"] {
        let quotient = g(s);
        for n in 1..=4u64 {
            let exts = extensions_by_class(&quotient, n).unwrap();
            for ext in &exts {
                for d in (1..=n).filter(|d| n % d == 0) {
                    let m = n / d;
                    let zetas = if d == 1 { 0..1 } else { 0..n };
                    for zeta in zetas {
                        let scenario = ParameterScenario::new(
                            format!("{s}/{n}"),
                            m,
                            d,
                            ext.clone(),
                            zeta as i64,
                            None,
                        )
                        .unwrap();
                        let r =
                            analyze_parameter(&scenario).map_err(|e| format!("{s} n={n}: {e}"))?;
                        let ctx = format!("S={s} n={n} m={m} d={d} zeta={zeta}");
                        ensure!(
                            r.card_star == r.card_g * r.multiplicity * r.multiplicity,
                            "{ctx}: |X| identity"
                        );
                        ensure!(
                            multiplicity_from_packet_cards(r.card_star, r.card_g).ok()
                                == Some(r.multiplicity),
                            "{ctx}: round trip"
                        );
                        ensure!(r.card_star == quotient.order() as u64, "{ctx}: card_star");
                        if ext.total().is_abelian() {
                            ensure!(
                                r.multiplicity == 1,
                                "{ctx}: abelian with mult {}",
                                r.multiplicity
                            );
                        } else {
                            nonabelian += 1;
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    ensure!(count >= 200, "only {count} scenarios");
    ensure!(nonabelian > 0, "no non-abelian scenarios");
    Ok(format!(
        "{count} scenarios ({nonabelian} with non-abelian A)"
    ))
}

const BLOCK_CORPUS: &[&str] = &[
    "C1",
    "C2",
    "C3",
    "C4",
    "C6",
    "C8",
    "C12",
    "C2xC2",
    "C2xC4",
    "C4xC4",
    "C2xC2xC2",
    "C3xC3",
    "D3",
    "D4",
    "D5",
    "D6",
    "D8",
    "Q8",
    "Dic3",
    "Dic4",
    "Dic5",
    "heisenberg(3)",
    "extraspecial(3,l2)",
    "2T",
    "2O",
    "C3xD3",
    "Q8xC2",
    "D4xC2",
    "Q8xC3",
    "D4xC4",
    "Q8xC4",
    "D4xC2xC2",
    "Q8xQ8",
    "D4xD4",
    "D16",
    "Dic8",
    "C8xC8",
];

fn criterion_6() -> Check {
    let mut checks = 0usize;
    for spec in BLOCK_CORPUS {
        let grp = g(spec);
        ensure!(grp.order() <= 64, "{spec} too large");
        let table = character_table(&grp).unwrap();
        for z in grp.center() {
            let base = CentralCharacterQuery::from_generator(&grp, z, 0).unwrap();
            let k = base.subgroup().len();
            for zeta in 0..k as u64 {
                let degs = table.degrees_with_central_character(&base.with_zeta(zeta));
                let sum: u64 = degs.iter().map(|d| d * d).sum();
                ensure!(sum as usize * k == grp.order(), "{spec} z={z} zeta={zeta}");
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{} groups, {checks} (Z, zeta) pairs",
        BLOCK_CORPUS.len()
    ))
}

fn criterion_7() -> Check {
    let klein = g("C2xC2");
    let h = second_cohomology(&klein, 2).unwrap();
    ensure!(h.order == 8, "|H^2| = {}", h.order);
    let exts = enumerate_central_extensions(&klein, 2).unwrap();
    let mut types: Vec<FiniteGroup> = Vec::new();
    for e in &exts {
        if !types.iter().any(|t| are_isomorphic(t, e.total())) {
            types.push(e.total().clone());
        }
    }
    ensure!(types.len() == 4, "{} isomorphism types", types.len());
    let survivors: Vec<&FiniteGroup> = types
        .iter()
        .filter(|t| !t.is_abelian() && sl2_finite_subgroup_check(t).unwrap())
        .collect();
    ensure!(
        survivors.len() == 1 && are_isomorphic(survivors[0], &g("Q8")),
        "survivors"
    );
    let abelian_survivors = types
        .iter()
        .filter(|t| t.is_abelian() && sl2_finite_subgroup_check(t).unwrap())
        .count();
    ensure!(
        abelian_survivors == 0,
        "an abelian extension of the Klein group embeds in SL(2)"
    );
    Ok("|H^2| = 8, 4 types, Q8 the only survivor".into())
}

fn criterion_8() -> Check {
    for n in 1..=12u64 {
        let st = steinberg_report(n).unwrap();
        ensure!(
            (st.multiplicity, st.degree_factor) == (1, n),
            "steinberg n={n}"
        );
    }
    let q8 = sl2_case(1, &PAdicField::rational(3).unwrap()).unwrap();
    ensure!(
        q8.degree_ratio == Ratio::new(1, 2),
        "quaternion ratio {}",
        q8.degree_ratio
    );
    ensure!(
        formal_degree_ratio(4, 2).unwrap() == Ratio::new(1, 2),
        "direct quaternion ratio"
    );
    for (l, q) in [(2u64, 3u64), (3, 7), (5, 11)] {
        let r = sl_prime_case(l, q, true).unwrap();
        ensure!(
            r.degree_ratio == Ratio::new(1, l),
            "l={l} ratio {}",
            r.degree_ratio
        );
    }
    Ok("steinberg (1,n) for n <= 12; ratios 1/2 and 1/l".into())
}

fn criterion_9() -> Check {
    for n in [2u64, 3, 5] {
        let sign = if n % 2 == 0 { -1i64 } else { 1 };
        let abelian =
            CentralExtension::from_generator(g(&format!("C{n}xC{n}")), n as usize).unwrap();
        ensure!(
            abelian.n() as u64 == n && abelian.total().is_abelian(),
            "abelian setup n={n}"
        );
        let r = analyze_parameter(&ParameterScenario::new("ab", 1, n, abelian, 1, None).unwrap())
            .unwrap();
        ensure!(
            r.endoscopic_coefficient == sign,
            "abelian n={n}: {}",
            r.endoscopic_coefficient
        );
        let heis = center_ext(&format!("heisenberg({n})"));
        let r = analyze_parameter(&ParameterScenario::new("heis", 1, n, heis, 1, None).unwrap())
            .unwrap();
        ensure!(
            r.endoscopic_coefficient == sign * n as i64,
            "heisenberg n={n}: {}",
            r.endoscopic_coefficient
        );
    }
    Ok("(-1)^(n-1) and (-1)^(n-1) n for n in {2,3,5}".into())
}

fn criterion_10() -> Check {
    let field = PAdicField::rational(5).unwrap();
    for r in 2..=6 {
        let report = sl2_case(r, &field).unwrap();
        ensure!(report.card_g == 2, "r={r}: card_g {}", report.card_g);
        ensure!(
            report.has_note(NoteKind::Discrepancy),
            "r={r}: no discrepancy note"
        );
        let text = report
            .notes
            .iter()
            .find(|n| n.kind == NoteKind::Discrepancy)
            .map(|n| n.text.clone())
            .unwrap_or_default();
        ensure!(
            text.contains("square-root ratio theorem"),
            "r={r}: note text {text}"
        );
        ensure!(
            (report.card_star, report.multiplicity) == (2, 1),
            "r={r}: triple"
        );
    }
    let first = sl2_case(1, &field).unwrap();
    ensure!(
        !first.has_note(NoteKind::Discrepancy),
        "r=1 should not be flagged"
    );
    Ok("r > 1 flagged with card_g = 2".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("coset cardinalities", criterion_1),
        ("quaternion case", criterion_2),
        ("order l^3 groups", criterion_3),
        ("SL(4) table", criterion_4),
        ("identity suite", criterion_5),
        ("sum-of-squares block law", criterion_6),
        ("second cohomology of the Klein group", criterion_7),
        ("Steinberg and degree ratios", criterion_8),
        ("endoscopic coefficients", criterion_9),
        ("divergence flag", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS: {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL: {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
