//! Worked families: `SL(2)`, `SL(l)` for a prime `l`, and the `SL(4)`
//! possibilities table.

use std::fmt::Write as _;

use crate::arith::{is_perfect_square, is_prime, square_divisor_bound};
use crate::engine::{analyze_parameter, NoteKind, PacketReport, ParameterScenario, ReportNote};
use crate::error::{Error, Finding, Result};
use crate::extension::CentralExtension;
use crate::group::{build_group, FiniteGroup, GroupSpec};
use crate::padic::PAdicField;

fn extension_of(
    spec: &GroupSpec,
    generator: impl Fn(&FiniteGroup) -> usize,
) -> Result<CentralExtension> {
    let g = build_group(spec)?;
    let z = generator(&g);
    CentralExtension::from_generator(g, z)
}

/// Generator of the center, assumed cyclic.
fn center_generator(g: &FiniteGroup) -> usize {
    let center = g.center();
    center
        .iter()
        .copied()
        .find(|&z| g.element_order(z) == center.len())
        .expect("cyclic center")
}

/// `SL(1, D)` with `D` a quaternion algebra, for a parameter whose
/// centralizer `S` is `(Z/2)^2` (`r = 1`) or `Z/2` (`r > 1`).
pub fn sl2_case(r: u64, field: &PAdicField) -> Result<PacketReport> {
    if field.p() == 2 {
        return Err(Error::precondition("the SL(2) case requires p != 2"));
    }
    if r == 0 {
        return Err(Error::precondition("r must be positive"));
    }
    if r == 1 {
        let ext = extension_of(&GroupSpec::Quaternion8, center_generator)?;
        let scenario = ParameterScenario::new("sl2 r=1", 1, 2, ext, 1, Some(*field))?;
        let mut report = analyze_parameter(&scenario)?;
        report.depth_zero_flag = Some(true);
        return Ok(report);
    }
    // A = Z/2 x Z/2 with the distinguished Z/2 as the second factor.
    let spec = GroupSpec::DirectProduct(
        Box::new(GroupSpec::Cyclic(2)),
        Box::new(GroupSpec::Cyclic(2)),
    );
    let ext = extension_of(&spec, |_| 1)?;
    let scenario = ParameterScenario::new(format!("sl2 r={r}"), 1, 2, ext, 1, Some(*field))?;
    let mut report = analyze_parameter(&scenario)?;
    report.notes.push(ReportNote::new(
        NoteKind::Discrepancy,
        format!(
            "stated |Pi(G)| = 1 for r > 1 contradicts the square-root ratio theorem \
             <sigma,pi> = sqrt(|Pi(G*)| / |Pi(G)|): sqrt({}/1) is not an integer; \
             two characters of Z/2 x Z/2 restrict to the sign character, so |Pi(G)| = {} is reported",
            report.card_star, report.card_g
        ),
    ));
    Ok(report)
}

/// `SL(1, D)` with `D` of index `l` over the unramified field with residue
/// field of size `q`. The non-abelian branch uses the Heisenberg group.
pub fn sl_prime_case(l: u64, q: u64, nonabelian: bool) -> Result<PacketReport> {
    if !is_prime(l) {
        return Err(Error::domain(format!("l = {l} is not prime")));
    }
    let field = PAdicField::unramified(q)?;
    if field.p() == l {
        return Err(Error::precondition(format!(
            "p = {} must differ from l = {l}",
            field.p()
        )));
    }
    let splits = (q - 1).is_multiple_of(l);
    if nonabelian {
        if !splits {
            return Err(Finding::ViolatesNumericalBound(format!(
                "multiplicity {l} needs a square divisor {l}^2 of the coset count, \
                 but l = {l} does not divide q - 1 = {} so the count is {l}",
                q - 1
            ))
            .into());
        }
        let ext = extension_of(&GroupSpec::Heisenberg(l), center_generator)?;
        let scenario = ParameterScenario::new(
            format!("slprime l={l} q={q} nonabelian"),
            1,
            l,
            ext,
            1,
            Some(field),
        )?;
        return analyze_parameter(&scenario);
    }
    // A = Z/l x (Z/l)^k, the distinguished Z/l as the first factor.
    let k = if splits { 2 } else { 1 };
    let mut spec = GroupSpec::Cyclic(l as usize);
    for _ in 0..k {
        spec = GroupSpec::DirectProduct(Box::new(spec), Box::new(GroupSpec::Cyclic(l as usize)));
    }
    let quotient = (l as usize).pow(k);
    let ext = extension_of(&spec, |_| quotient)?;
    let scenario = ParameterScenario::new(
        format!("slprime l={l} q={q} abelian"),
        1,
        l,
        ext,
        1,
        Some(field),
    )?;
    analyze_parameter(&scenario)
}

/// Triples `(|Pi(G*)|, |Pi(G)|, multiplicity)` admissible for `SL(4)` when
/// the coset count `|F^x / (F^x)^4|` is 8 or 16.
pub fn sl4_enumerate(coset: u64) -> Result<Vec<(u64, u64, u64)>> {
    if coset != 8 && coset != 16 {
        return Err(Error::domain(format!(
            "coset count must be 8 or 16, got {coset}"
        )));
    }
    let bound = square_divisor_bound(&coset.into());
    let bound: u64 = bound.try_into().expect("small");
    let mut out = Vec::new();
    for card_star in (1..=coset).filter(|c| coset.is_multiple_of(*c)) {
        for card_g in (1..=card_star).filter(|g| card_star % g == 0 && coset.is_multiple_of(*g)) {
            if let Some(mult) = is_perfect_square(card_star / card_g) {
                if bound.is_multiple_of(mult) {
                    out.push((card_star, card_g, mult));
                }
            }
        }
    }
    Ok(out)
}

/// Three-row table with one column per triple.
pub fn render_sl4_table(rows: &[(u64, u64, u64)]) -> String {
    let heads = ["|Pi(G*)|", "|Pi(G)|", "<sigma,pi>"];
    let head_w = heads.iter().map(|h| h.len()).max().unwrap_or(0);
    let widths: Vec<usize> = rows
        .iter()
        .map(|&(a, b, c)| {
            [a, b, c]
                .iter()
                .map(|v| v.to_string().len())
                .max()
                .unwrap_or(1)
        })
        .collect();
    let mut out = String::new();
    for (i, head) in heads.iter().enumerate() {
        let _ = write!(out, "{head:<head_w$} ||");
        for (&(a, b, c), &w) in rows.iter().zip(&widths) {
            let v = [a, b, c][i];
            let _ = write!(out, " {v:>w$} |");
        }
        out.push('\n');
    }
    out
}
