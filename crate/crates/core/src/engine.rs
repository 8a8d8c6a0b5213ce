//! Packet cardinalities, multiplicities and the derived invariants of a
//! parameter scenario.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::is_perfect_square;
use crate::error::{Error, Finding, Result};
use crate::extension::CentralExtension;
use crate::group::{character_table, CentralCharacterQuery};
use crate::padic::PAdicField;

/// The finite data attached to a parameter for an inner form with
/// invariants `(m, d)`, `n = m*d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterScenario {
    label: String,
    m: u64,
    d: u64,
    extension: CentralExtension,
    zeta_exponent: u64,
    field: Option<PAdicField>,
}

impl ParameterScenario {
    /// `zeta_exponent` is taken mod `n`. The split form (`d = 1`) requires
    /// the trivial character.
    pub fn new(
        label: impl Into<String>,
        m: u64,
        d: u64,
        extension: CentralExtension,
        zeta_exponent: i64,
        field: Option<PAdicField>,
    ) -> Result<Self> {
        if m == 0 || d == 0 {
            return Err(Error::precondition("m and d must be positive"));
        }
        let n = m
            .checked_mul(d)
            .ok_or_else(|| Error::precondition("m*d overflows"))?;
        if extension.n() as u64 != n {
            return Err(Error::precondition(format!(
                "central subgroup has order {}, expected n = m*d = {n}",
                extension.n()
            )));
        }
        let zeta_exponent = zeta_exponent.rem_euclid(n as i64) as u64;
        if d == 1 && zeta_exponent != 0 {
            return Err(Error::precondition(
                "the split form (d = 1) requires zeta_exponent = 0",
            ));
        }
        Ok(Self {
            label: label.into(),
            m,
            d,
            extension,
            zeta_exponent,
            field,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn n(&self) -> u64 {
        self.m * self.d
    }

    pub fn extension(&self) -> &CentralExtension {
        &self.extension
    }

    pub fn zeta_exponent(&self) -> u64 {
        self.zeta_exponent
    }

    /// Order of `zeta` as a character of `Z/n`.
    pub fn zeta_order(&self) -> u64 {
        self.n() / self.zeta_exponent.gcd(&self.n())
    }

    pub fn field(&self) -> Option<&PAdicField> {
        self.field.as_ref()
    }

    pub fn with_field(mut self, field: Option<PAdicField>) -> Self {
        self.field = field;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoteKind {
    /// The order of `zeta` differs from `d`.
    ZetaOrder,
    /// `p` divides `n` over a ramified field; the bound is still exact.
    WildField,
    /// A reference value disagrees with the identities; the consistent
    /// value is reported.
    Discrepancy,
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportNote {
    pub kind: NoteKind,
    pub text: String,
}

impl ReportNote {
    pub fn new(kind: NoteKind, text: impl Into<String>) -> Self {
        Self {
            kind,
            text: text.into(),
        }
    }
}

/// Divisibility checks against the unit-group coset count of a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityAudit {
    pub field: PAdicField,
    pub n: u64,
    #[serde(with = "decimal")]
    pub coset_card: BigUint,
    #[serde(with = "decimal")]
    pub square_bound: BigUint,
    /// `mult | A(G,F)`.
    pub mult_divides_bound: bool,
    /// `mult | n`, checked only when `p` does not divide `n`.
    pub mult_divides_n: Option<bool>,
    pub card_g_divides_coset: bool,
    pub card_star_divides_coset: bool,
}

impl DivisibilityAudit {
    pub fn all_pass(&self) -> bool {
        self.mult_divides_bound
            && self.mult_divides_n.unwrap_or(true)
            && self.card_g_divides_coset
            && self.card_star_divides_coset
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PacketReport {
    pub label: String,
    pub m: u64,
    pub d: u64,
    pub card_star: u64,
    pub card_g: u64,
    pub multiplicity: u64,
    pub s_card: u64,
    pub common_dim_ok: bool,
    pub kottwitz_sign: i64,
    pub endoscopic_coefficient: i64,
    #[serde(with = "ratio_string")]
    pub degree_ratio: Ratio<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisibility: Option<DivisibilityAudit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth_zero_flag: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<ReportNote>,
}

impl PacketReport {
    pub fn has_note(&self, kind: NoteKind) -> bool {
        self.notes.iter().any(|n| n.kind == kind)
    }
}

/// `sqrt(card_star / card_g)`, the multiplicity forced by the packet sizes.
pub fn multiplicity_from_packet_cards(card_star: u64, card_g: u64) -> Result<u64> {
    if card_star == 0 || card_g == 0 {
        return Err(Error::precondition("packet cardinalities must be positive"));
    }
    if card_g > card_star {
        return Err(Finding::InnerPacketExceedsSplit { card_star, card_g }.into());
    }
    if !card_star.is_multiple_of(card_g) {
        return Err(Finding::InconsistentPacketData { card_star, card_g }.into());
    }
    is_perfect_square(card_star / card_g)
        .ok_or_else(|| Finding::ViolatesXIdentity { card_star, card_g }.into())
}

/// `(-1)^(m(d-1))`, the sign `(-1)^(rk G* - rk G)` for `n = m*d`.
pub fn kottwitz_sign(m: u64, d: u64) -> i64 {
    if (m % 2 == 1) && d.is_multiple_of(2) {
        -1
    } else {
        1
    }
}

/// `Deg(sigma) / Deg(pi) = multiplicity / |S|`.
pub fn formal_degree_ratio(s_card: u64, multiplicity: u64) -> Result<Ratio<u64>> {
    if s_card == 0 || multiplicity == 0 {
        return Err(Error::precondition("inputs must be positive"));
    }
    Ok(Ratio::new(multiplicity, s_card))
}

pub fn endoscopic_coefficient(scenario: &ParameterScenario, report: &PacketReport) -> i64 {
    kottwitz_sign(scenario.m(), scenario.d()) * report.multiplicity as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergReport {
    pub multiplicity: u64,
    /// `deg(St_G) / deg(St_G~)`.
    pub degree_factor: u64,
}

pub fn steinberg_report(n: u64) -> Result<SteinbergReport> {
    if n == 0 {
        return Err(Error::precondition("n must be positive"));
    }
    Ok(SteinbergReport {
        multiplicity: 1,
        degree_factor: n,
    })
}

/// Checks the report against the coset count of `field` for `n`. Failures
/// are recorded in the audit, not returned as errors.
pub fn divisibility_report(
    field: &PAdicField,
    n: u64,
    report: &PacketReport,
) -> Result<DivisibilityAudit> {
    let coset_card = field.coset_card(n)?;
    let square_bound = field.coset_square_bound(n)?;
    let divides = |a: u64, b: &BigUint| (b % BigUint::from(a)) == BigUint::from(0u32);
    let tame = !n.is_multiple_of(field.p());
    Ok(DivisibilityAudit {
        field: *field,
        n,
        mult_divides_bound: divides(report.multiplicity, &square_bound),
        mult_divides_n: tame.then(|| n.is_multiple_of(report.multiplicity)),
        card_g_divides_coset: divides(report.card_g, &coset_card),
        card_star_divides_coset: divides(report.card_star, &coset_card),
        coset_card,
        square_bound,
    })
}

/// Computes the packet report of a scenario from the characters of `A`.
pub fn analyze_parameter(scenario: &ParameterScenario) -> Result<PacketReport> {
    let ext = scenario.extension();
    if !ext.quotient().is_abelian() {
        return Err(Finding::NonAbelianQuotient.into());
    }
    let total = ext.total();
    let table = character_table(total)?;
    let trivial = CentralCharacterQuery::from_generator(total, ext.generator(), 0)?;
    let twisted = trivial.with_zeta(scenario.zeta_exponent());
    let star_degrees = table.degrees_with_central_character(&trivial);
    let mut degrees = table.degrees_with_central_character(&twisted);
    degrees.sort_unstable();

    let card_star = star_degrees.len() as u64;
    let card_g = degrees.len() as u64;
    let multiplicity = degrees[0];
    if degrees.iter().any(|&x| x != multiplicity) {
        return Err(Finding::NoCommonMultiplicity { degrees }.into());
    }
    if card_star != card_g * multiplicity * multiplicity {
        return Err(Finding::ViolatesXIdentity { card_star, card_g }.into());
    }
    let s_card = ext.quotient().order() as u64;

    let mut notes = Vec::new();
    if scenario.zeta_order() != scenario.d() {
        notes.push(ReportNote::new(
            NoteKind::ZetaOrder,
            format!(
                "zeta has order {} but d = {}",
                scenario.zeta_order(),
                scenario.d()
            ),
        ));
    }
    let sign = kottwitz_sign(scenario.m(), scenario.d());
    let mut report = PacketReport {
        label: scenario.label().to_string(),
        m: scenario.m(),
        d: scenario.d(),
        card_star,
        card_g,
        multiplicity,
        s_card,
        common_dim_ok: true,
        kottwitz_sign: sign,
        endoscopic_coefficient: sign * multiplicity as i64,
        degree_ratio: formal_degree_ratio(s_card, multiplicity)?,
        divisibility: None,
        depth_zero_flag: None,
        notes,
    };
    if let Some(field) = scenario.field() {
        let n = scenario.n();
        if field.is_wild_for(n) {
            report.notes.push(ReportNote::new(
                NoteKind::WildField,
                format!("p = {} divides n = {n} over a ramified field; wild case without reference values", field.p()),
            ));
        }
        report.divisibility = Some(divisibility_report(field, n, &report)?);
    }
    Ok(report)
}

/// Analyzes scenarios in parallel; results are in input order.
pub fn analyze_batch(scenarios: &[ParameterScenario]) -> Vec<Result<PacketReport>> {
    scenarios.par_iter().map(analyze_parameter).collect()
}

impl fmt::Display for PacketReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: |Pi(G*)| = {}, |Pi(G)| = {}, <sigma,pi> = {}, |S| = {}, e(G) = {:+}, coefficient = {}, Deg ratio = {}",
            self.label,
            self.card_star,
            self.card_g,
            self.multiplicity,
            self.s_card,
            self.kottwitz_sign,
            self.endoscopic_coefficient,
            self.degree_ratio
        )
    }
}

mod ratio_string {
    use num_rational::Ratio;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let text = String::deserialize(d)?;
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (text.trim(), "1"),
        };
        let num: u64 = num.parse().map_err(D::Error::custom)?;
        let den: u64 = den.parse().map_err(D::Error::custom)?;
        if den == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(num, den))
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}
