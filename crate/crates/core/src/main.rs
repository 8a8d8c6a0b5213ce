use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use packetmult::cases::{render_sl4_table, sl2_case, sl4_enumerate, sl_prime_case};
use packetmult::engine::{analyze_parameter, PacketReport};
use packetmult::extension::{
    enumerate_central_extensions, extensions_by_class, second_cohomology, sl2_finite_subgroup_check,
};
use packetmult::group::{
    build_group, character_table, fingerprint, CentralCharacterQuery, FiniteGroup, GroupSpec,
};
use packetmult::padic::PAdicField;
use packetmult::scenario::{
    load_scenarios, render_reports, ReportEntry, ReportFile, SCHEMA_VERSION,
};
use packetmult::{Error, Result};

#[derive(Parser)]
#[command(
    name = "packetmult",
    version,
    about = "Restriction multiplicities for inner forms of SL(n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Unit-group data of a p-adic field: q, v_F(n), |mu_n|, |F^x/(F^x)^n| and its square bound.
    Field(FieldArgs),
    /// Character table of a group, or the degrees with a given central character.
    Group(GroupArgs),
    /// H^2(S, Z/n) and the central extensions of S by Z/n.
    Extensions(ExtensionArgs),
    /// Packet reports for every scenario in a JSON file.
    Analyze(AnalyzeArgs),
    /// Worked families.
    Cases {
        #[command(subcommand)]
        case: CaseCommand,
    },
}

#[derive(Args)]
struct FieldArgs {
    /// Field as text, e.g. "p=3,e=1,f=2,a=0".
    #[arg(long, conflicts_with_all = ["p", "e", "f", "a"])]
    field: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// Largest a with a primitive p^a-th root of unity (defaults to 1 for p = 2).
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GroupArgs {
    /// Group, e.g. Q8, heisenberg(3), C4xC2, D5, 2T.
    spec: String,
    /// Central character on the center: sign, trivial, or an exponent k.
    #[arg(long)]
    central_char: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExtensionArgs {
    /// Quotient group S.
    spec: String,
    #[arg(long)]
    n: u64,
    /// List one extension per cohomology class instead of per isomorphism type.
    #[arg(long)]
    all_classes: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Run the divisibility audit for scenarios with field data.
    #[arg(long)]
    audit_field: bool,
    #[arg(long, conflicts_with = "table")]
    json: bool,
    #[arg(long)]
    table: bool,
    /// Process every record even after a failure.
    #[arg(long)]
    keep_going: bool,
}

#[derive(Subcommand)]
enum CaseCommand {
    /// SL(1, D) for a quaternion algebra D.
    Sl2 {
        #[arg(long)]
        r: u64,
        #[arg(long, default_value = "p=3,e=1,f=1,a=0")]
        field: String,
        #[arg(long)]
        json: bool,
    },
    /// SL(1, D) for D of prime index l over the unramified field of residue size q.
    Slprime {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        q: u64,
        /// Only the non-abelian branch.
        #[arg(long, conflicts_with = "abelian")]
        nonabelian: bool,
        /// Only the abelian branch.
        #[arg(long)]
        abelian: bool,
        #[arg(long)]
        json: bool,
    },
    /// Admissible packet triples for SL(4) with coset count 8 or 16.
    Sl4 {
        #[arg(long)]
        coset: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Normal output plus whether every computation succeeded.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Field(a) => cmd_field(a),
        Command::Group(a) => cmd_group(a),
        Command::Extensions(a) => cmd_extensions(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Cases { case } => cmd_cases(case),
    };
    match result {
        Ok(out) => {
            let _ = std::io::stdout().lock().write_all(out.text.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn parse_group(spec: &str) -> Result<FiniteGroup> {
    build_group(&spec.parse::<GroupSpec>()?)
}

fn cmd_field(a: FieldArgs) -> Result<Outcome> {
    let field = match (a.field, a.p) {
        (Some(text), _) => text.parse::<PAdicField>()?,
        (None, Some(p)) => PAdicField::new(p, a.e, a.f, a.a.unwrap_or(u32::from(p == 2)))?,
        (None, None) => return Err(Error::Precondition("give --field or --p".into())),
    };
    let n = a.n;
    let q = field.q();
    let v = field.field_valuation(n as i64)?;
    let mu = field.mu_card(n)?;
    let coset = field.coset_card(n)?;
    let bound = field.coset_square_bound(n)?;
    let text = if a.json {
        to_json(&json!({
            "field": field,
            "n": n,
            "q": q.to_string(),
            "v_F(n)": v,
            "mu_n": mu,
            "coset": coset.to_string(),
            "bound": bound.to_string(),
            "wild": field.is_wild_for(n),
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "field     {field}");
        let _ = writeln!(s, "n         {n}");
        let _ = writeln!(s, "q         {q}");
        let _ = writeln!(s, "v_F(n)    {v}");
        let _ = writeln!(s, "|mu_n(F)| {mu}");
        let _ = writeln!(s, "coset     {coset}");
        let _ = writeln!(s, "bound     {bound}");
        if field.is_wild_for(n) {
            let _ = writeln!(s, "note      p divides n over a ramified field");
        }
        s
    };
    Ok(Outcome::ok(text))
}

fn central_query(g: &FiniteGroup, which: &str) -> Result<CentralCharacterQuery> {
    let base = CentralCharacterQuery::center(g, 0)?;
    let z = base.subgroup().len() as u64;
    let k = match which {
        "trivial" => 0,
        "sign" => {
            if !z.is_multiple_of(2) {
                return Err(Error::Domain(format!(
                    "center of order {z} has no sign character"
                )));
            }
            z / 2
        }
        other => other.parse::<u64>().map_err(|_| {
            Error::Domain(format!(
                "central character {other:?}: expected sign, trivial or an integer"
            ))
        })?,
    };
    if k >= z {
        return Err(Error::Domain(format!(
            "exponent {k} must be below |Z| = {z}"
        )));
    }
    Ok(base.with_zeta(k))
}

fn cmd_group(a: GroupArgs) -> Result<Outcome> {
    let g = parse_group(&a.spec)?;
    let table = character_table(&g)?;
    if let Some(which) = a.central_char {
        let query = central_query(&g, &which)?;
        let degrees = table.degrees_with_central_character(&query);
        let text = if a.json {
            to_json(&json!({
                "group": a.spec,
                "center_order": query.subgroup().len(),
                "zeta_exponent": query.zeta_exponent(),
                "degrees": degrees,
            }))
        } else {
            format!("{degrees:?}\n")
        };
        return Ok(Outcome::ok(text));
    }
    if a.json {
        return Ok(Outcome::ok(to_json(
            &json!({ "group": a.spec, "table": table }),
        )));
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} (order {}, {} classes)",
        a.spec,
        g.order(),
        table.classes().len()
    );
    let degrees: Vec<String> = table.degrees().iter().map(u64::to_string).collect();
    let _ = writeln!(s, "degrees: {}", degrees.join(" "));
    let mut rows: Vec<Vec<String>> = vec![
        std::iter::once("class".to_string())
            .chain(table.classes().iter().map(|c| c.representative.to_string()))
            .collect(),
        std::iter::once("size".to_string())
            .chain(table.classes().iter().map(|c| c.size.to_string()))
            .collect(),
        std::iter::once("order".to_string())
            .chain(table.classes().iter().map(|c| c.element_order.to_string()))
            .collect(),
    ];
    for (i, row) in table.characters().iter().enumerate() {
        rows.push(
            std::iter::once(format!("X.{}", i + 1))
                .chain(row.iter().map(ToString::to_string))
                .collect(),
        );
    }
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    for row in &rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(j, (c, &w))| {
                if j == 0 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect();
        let _ = writeln!(s, "{}", cells.join("  "));
    }
    Ok(Outcome::ok(s))
}

fn cmd_extensions(a: ExtensionArgs) -> Result<Outcome> {
    let s_group = parse_group(&a.spec)?;
    let h2 = second_cohomology(&s_group, a.n)?;
    let exts = if a.all_classes {
        extensions_by_class(&s_group, a.n)?
    } else {
        enumerate_central_extensions(&s_group, a.n)?
    };
    let mut described = Vec::new();
    for e in &exts {
        described.push((
            fingerprint(e.total()),
            sl2_finite_subgroup_check(e.total())?,
            e,
        ));
    }
    if a.json {
        let list: Vec<_> = described
            .iter()
            .map(|(fp, sl2, e)| {
                json!({
                    "abelian": e.total().is_abelian(),
                    "fingerprint": fp,
                    "sl2_member": sl2,
                    "extension": e,
                })
            })
            .collect();
        return Ok(Outcome::ok(to_json(&json!({
            "quotient": a.spec,
            "n": a.n,
            "cohomology": h2,
            "extensions": list,
        }))));
    }
    let mut s = String::new();
    let inv: Vec<String> = h2.invariants.iter().map(|d| format!("Z/{d}")).collect();
    let _ = writeln!(
        s,
        "H^2({}, Z/{}) = {} (order {})",
        a.spec,
        a.n,
        if inv.is_empty() {
            "0".to_string()
        } else {
            inv.join(" x ")
        },
        h2.order
    );
    for (i, (fp, sl2, e)) in described.iter().enumerate() {
        let stats: Vec<String> = fp
            .order_stats
            .iter()
            .map(|(o, c)| format!("{o}^{c}"))
            .collect();
        let _ = writeln!(
            s,
            "#{i}: order {}, {}, |Z(A)| = {}, |A'| = {}, classes {}, element orders [{}], SL(2,C): {}",
            fp.order,
            if e.total().is_abelian() { "abelian" } else { "non-abelian" },
            fp.center_size,
            fp.derived_size,
            fp.class_count,
            stats.join(" "),
            if *sl2 { "yes" } else { "no" }
        );
    }
    Ok(Outcome::ok(s))
}

fn entry(label: String, result: Result<PacketReport>) -> ReportEntry {
    match result {
        Ok(r) => ReportEntry {
            label,
            report: Some(r),
            error: None,
        },
        Err(e) => ReportEntry {
            label,
            report: None,
            error: Some(e.to_string()),
        },
    }
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(&a.file)
        .map_err(|e| Error::Domain(format!("{}: {e}", a.file.display())))?;
    let records = load_scenarios(&text)?;
    let audit = a.audit_field;
    let results: Vec<Result<PacketReport>> = records
        .par_iter()
        .map(|rec| {
            let scenario = rec.scenario.as_ref().map_err(Clone::clone)?;
            if audit {
                analyze_parameter(scenario)
            } else {
                analyze_parameter(&scenario.clone().with_field(None))
            }
        })
        .collect();
    let mut entries = Vec::new();
    for (rec, res) in records.into_iter().zip(results) {
        let failed = res.is_err();
        entries.push(entry(rec.label, res));
        if failed && !a.keep_going {
            break;
        }
    }
    let ok = entries.iter().all(|e| e.error.is_none());
    let text = if a.json {
        to_json(&ReportFile {
            schema: SCHEMA_VERSION,
            reports: entries,
        })
    } else {
        render_reports(&entries)
    };
    Ok(Outcome { text, ok })
}

fn cmd_cases(case: CaseCommand) -> Result<Outcome> {
    match case {
        CaseCommand::Sl2 { r, field, json } => {
            let field: PAdicField = field.parse()?;
            let report = sl2_case(r, &field)?;
            let entries = vec![entry(report.label.clone(), Ok(report))];
            Ok(Outcome::ok(render_entries(entries, json)))
        }
        CaseCommand::Slprime {
            l,
            q,
            nonabelian,
            abelian,
            json,
        } => {
            let mut entries = Vec::new();
            let mut notes = Vec::new();
            let mut ok = true;
            if !nonabelian {
                entries.push(entry(
                    format!("slprime l={l} q={q} abelian"),
                    sl_prime_case(l, q, false),
                ));
            }
            if !abelian {
                match sl_prime_case(l, q, true) {
                    Err(Error::Finding(f)) if !nonabelian => {
                        notes.push(format!("non-abelian branch excluded: {f}"));
                    }
                    res => entries.push(entry(format!("slprime l={l} q={q} nonabelian"), res)),
                }
            }
            if let Some(e) = entries.iter().find_map(|e| e.error.as_ref()) {
                if entries.len() == 1 && notes.is_empty() {
                    return Err(Error::Domain(e.clone()));
                }
                ok = false;
            }
            let mut text = render_entries(entries, json);
            if !json {
                for n in notes {
                    let _ = writeln!(text, "note: {n}");
                }
            }
            Ok(Outcome { text, ok })
        }
        CaseCommand::Sl4 { coset, json } => {
            let rows = sl4_enumerate(coset)?;
            let text = if json {
                let list: Vec<_> = rows
                    .iter()
                    .map(|&(s, g, m)| json!({"card_star": s, "card_g": g, "mult": m}))
                    .collect();
                to_json(&json!({ "coset": coset, "triples": list }))
            } else {
                render_sl4_table(&rows)
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn render_entries(entries: Vec<ReportEntry>, json: bool) -> String {
    if json {
        to_json(&ReportFile {
            schema: SCHEMA_VERSION,
            reports: entries,
        })
    } else {
        render_reports(&entries)
    }
}
