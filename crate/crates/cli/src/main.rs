//! `mubound` — multiplicity-bound tables, single queries, scans, family
//! verdicts, and the one-shot certificate bundle.
//!
//! Exit codes: 0 success, 1 a verification certificate failed
//! (`verify-paper` only), 2 malformed arguments or domain errors.

mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mubound_core::{analytic, checker, global, local, polytope, verify, words};
use mubound_core::{FamilyParams, LocalPair};
use render::{Document, Format};

#[derive(Parser)]
#[command(
    name = "mubound",
    about = "Exact multiplicity bounds for complete intersections of quadrics and cubics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "markdown")]
    format: Format,
    /// Write the document to a file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// The local bound mubar(a, b); prints `*` outside the admissible domain
    Mubar {
        a: u32,
        b: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The local bound table with column maxima emphasized
    LocalTable {
        #[arg(long, default_value_t = 36)]
        a_max: u32,
        #[arg(long, default_value_t = 7)]
        b_max: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The global bound table with maximizer profiles and discrepancy notes
    GlobalTable {
        #[arg(long, default_value_t = 36)]
        a_max: u32,
        /// Include maximizer profiles in the markdown table
        #[arg(long)]
        show_profiles: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The global bound at a single codimension, with all maximizers
    MubarTotal {
        a: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The worst-case word set of an admissible pair
    Words {
        a: u32,
        b: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Lattice-point count, enlarged volume, and their comparison certificate
    Lattice {
        a: u32,
        b: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The analytic majorants and closed-form bounds at one pair
    Analytic {
        a: u32,
        b: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Applicability verdict for the family of k1 quadrics and k2 cubics
    CheckFamily {
        k1: u32,
        k2: u32,
        /// Evaluate the global bound directly up to this dimension
        #[arg(long, default_value_t = 40)]
        a_max_direct: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run every verification certificate; exit 0 iff all hold
    VerifyPaper {
        /// Scale factor for the sweep grids
        #[arg(long, default_value_t = 1.0)]
        grid_scale: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Mubar { a, b, common } => {
            let doc = mubar_doc(a, b);
            emit(&doc, &common)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::LocalTable { a_max, b_max, common } => {
            let table = local::local_table(a_max, b_max).map_err(|e| e.to_string())?;
            let doc = local_table_doc(&table);
            emit(&doc, &common)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::GlobalTable { a_max, show_profiles, common } => {
            let rows = global::global_table(a_max).map_err(|e| e.to_string())?;
            let doc = global_table_doc(&rows, show_profiles);
            emit(&doc, &common)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::MubarTotal { a, common } => {
            let row = global::annotated_row(a).map_err(|e| e.to_string())?;
            let doc = mubar_total_doc(&row);
            emit(&doc, &common)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Words { a, b, common } => {
            let set = words::worst_case_words(LocalPair::new(a, b)).map_err(|e| e.to_string())?;
            let doc = words_doc(a, b, &set);
            emit(&doc, &common)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lattice { a, b, common } => {
            let doc = lattice_doc(a, b)?;
            emit(&doc, &common)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Analytic { a, b, common } => {
            let doc = analytic_doc(a, b)?;
            emit(&doc, &common)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckFamily { k1, k2, a_max_direct, common } => {
            let family = FamilyParams::new(k1, k2).map_err(|e| e.to_string())?;
            let verdict =
                checker::theorem1_check(&family, a_max_direct).map_err(|e| e.to_string())?;
            let ledger = checker::hypertangent_ledger(&family).ok();
            let doc = check_family_doc(&verdict, ledger.as_ref(), a_max_direct);
            emit(&doc, &common)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper { grid_scale, common } => {
            if !(grid_scale.is_finite() && grid_scale > 0.0) {
                return Err(format!("grid scale must be positive and finite, got {grid_scale}"));
            }
            let report = verify::run_verification(grid_scale).map_err(|e| e.to_string())?;
            let doc = verify_doc(&report, grid_scale);
            emit(&doc, &common)?;
            Ok(if report.all_hold() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn emit(doc: &Document, common: &CommonOpts) -> Result<(), String> {
    let rendered = doc.render(common.format);
    match &common.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            f.write_all(rendered.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

fn mubar_doc(a: u32, b: u32) -> Document {
    let value = local::mubar(LocalPair::new(a, b))
        .map(|v| v.to_string())
        .unwrap_or_else(|_| "*".to_string());
    Document {
        kind: "mubar".to_string(),
        parameters: vec![("a".to_string(), json!(a)), ("b".to_string(), json!(b))],
        payload: json!({ "a": a, "b": b, "value": value }),
        markdown: format!("{value}\n"),
        csv: vec![
            vec!["a".to_string(), "b".to_string(), "value".to_string()],
            vec![a.to_string(), b.to_string(), value],
        ],
    }
}

fn local_table_doc(table: &local::LocalTable) -> Document {
    let mut cells = Vec::new();
    let mut csv = vec![vec![
        "a".to_string(),
        "b".to_string(),
        "value".to_string(),
        "column_max".to_string(),
    ]];
    for ((a, b), value) in &table.cells {
        let bold = value.is_some() && table.column_max[a] == *b;
        cells.push(json!({
            "a": a,
            "b": b,
            "defined": value.is_some(),
            "value": value.as_ref().map(|v| v.to_string()),
            "column_max": bold,
        }));
        csv.push(vec![
            a.to_string(),
            b.to_string(),
            value.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "*".to_string()),
            bold.to_string(),
        ]);
    }

    // markdown in table orientation: rows are defects, columns are budgets
    let mut md = String::new();
    md.push_str("| b \\ a |");
    for a in 1..=table.a_max {
        md.push_str(&format!(" {a} |"));
    }
    md.push_str("\n|---|");
    md.push_str(&"---|".repeat(table.a_max as usize));
    md.push('\n');
    for b in 0..=table.b_max {
        md.push_str(&format!("| {b} |"));
        for a in 1..=table.a_max {
            match table.value(a, b) {
                Some(v) if table.column_max[&a] == b => md.push_str(&format!(" **{v}** |")),
                Some(v) => md.push_str(&format!(" {v} |")),
                None => md.push_str(" * |"),
            }
        }
        md.push('\n');
    }
    md.push_str(&format!("\n{} defined cells\n", table.defined_count()));

    Document {
        kind: "local-table".to_string(),
        parameters: vec![
            ("a_max".to_string(), json!(table.a_max)),
            ("b_max".to_string(), json!(table.b_max)),
        ],
        payload: json!({
            "a_max": table.a_max,
            "b_max": table.b_max,
            "defined_cells": table.defined_count(),
            "cells": cells,
        }),
        markdown: md,
        csv,
    }
}

fn global_row_markdown(row: &global::AnnotatedRow, show_profiles: bool) -> String {
    let mut line = format!("| {} | {} |", row.row.a, row.row.value);
    if show_profiles {
        let profiles = row
            .row
            .maximizers
            .iter()
            .map(|m| format!("r={}, b={}", m.r(), m.compact()))
            .collect::<Vec<_>>()
            .join(" ; ");
        line.push_str(&format!(" {profiles} |"));
    }
    match &row.discrepancy {
        Some(d) => line.push_str(&format!(" {d} |")),
        None => line.push_str("  |"),
    }
    line.push('\n');
    line
}

fn global_table_doc(rows: &[global::AnnotatedRow], show_profiles: bool) -> Document {
    let mut md = String::new();
    if show_profiles {
        md.push_str("| a | value | maximizers | note |\n|---|---|---|---|\n");
    } else {
        md.push_str("| a | value | note |\n|---|---|---|\n");
    }
    let mut csv = vec![vec![
        "a".to_string(),
        "value".to_string(),
        "maximizers".to_string(),
        "note".to_string(),
    ]];
    for row in rows {
        md.push_str(&global_row_markdown(row, show_profiles));
        csv.push(vec![
            row.row.a.to_string(),
            row.row.value.to_string(),
            row.row
                .maximizers
                .iter()
                .map(|m| format!("r={} {}", m.r(), m.compact()))
                .collect::<Vec<_>>()
                .join(" ; "),
            row.discrepancy.clone().unwrap_or_default(),
        ]);
    }
    let a_max = rows.last().map(|r| r.row.a).unwrap_or(0);
    Document {
        kind: "global-table".to_string(),
        parameters: vec![
            ("a_max".to_string(), json!(a_max)),
            ("show_profiles".to_string(), json!(show_profiles)),
        ],
        payload: json!({
            "rows": rows.iter().map(render::global_row_json).collect::<Vec<_>>(),
        }),
        markdown: md,
        csv,
    }
}

fn mubar_total_doc(row: &global::AnnotatedRow) -> Document {
    let mut md = format!("mubar_total({}) = {}\n", row.row.a, row.row.value);
    for m in &row.row.maximizers {
        md.push_str(&format!("  maximizer: r={}, b={}\n", m.r(), m.compact()));
    }
    if let Some(d) = &row.discrepancy {
        md.push_str(&format!("  note: {d}\n"));
    }
    Document {
        kind: "mubar-total".to_string(),
        parameters: vec![("a".to_string(), json!(row.row.a))],
        payload: render::global_row_json(row),
        markdown: md,
        csv: vec![
            vec!["a".to_string(), "value".to_string(), "maximizers".to_string()],
            vec![
                row.row.a.to_string(),
                row.row.value.to_string(),
                row.row
                    .maximizers
                    .iter()
                    .map(|m| format!("r={} {}", m.r(), m.compact()))
                    .collect::<Vec<_>>()
                    .join(" ; "),
            ],
        ],
    }
}

fn words_doc(a: u32, b: u32, set: &[words::Word]) -> Document {
    let prefix_free = words::check_prefix_free(set);
    let rendered: Vec<String> = set.iter().map(|w| w.to_string()).collect();
    let mut md = format!(
        "{} words at (a, b) = ({a}, {b}); nu-images prefix-free: {prefix_free}\n\n",
        set.len()
    );
    for w in &rendered {
        md.push_str(&format!("- {w}\n"));
    }
    let mut csv = vec![vec!["word".to_string(), "nu".to_string()]];
    for w in set {
        csv.push(vec![w.to_string(), words::nu_project(w)]);
    }
    Document {
        kind: "words".to_string(),
        parameters: vec![("a".to_string(), json!(a)), ("b".to_string(), json!(b))],
        payload: json!({
            "a": a,
            "b": b,
            "count": set.len(),
            "prefix_free": prefix_free,
            "words": rendered,
        }),
        markdown: md,
        csv,
    }
}

fn lattice_doc(a: u32, b: u32) -> Result<Document, String> {
    let count = polytope::lattice_count(a, b).map_err(|e| e.to_string())?;
    let volume = polytope::volume_plus(a, b).map_err(|e| e.to_string())?;
    let cert = polytope::verify_lemma_4_3(a, b).map_err(|e| e.to_string())?;
    let md = format!(
        "lattice points: {count}\nenlarged volume: {}\n{}",
        render::rat_str(&volume),
        render::cert_markdown_line(&cert)
    ) + "\n";
    Ok(Document {
        kind: "lattice".to_string(),
        parameters: vec![("a".to_string(), json!(a)), ("b".to_string(), json!(b))],
        payload: json!({
            "a": a,
            "b": b,
            "lattice_count": count.to_string(),
            "volume_plus": render::rat_str(&volume),
            "certificate": render::cert_json(&cert),
        }),
        markdown: md,
        csv: vec![
            vec![
                "a".to_string(),
                "b".to_string(),
                "lattice_count".to_string(),
                "volume_plus".to_string(),
                "holds".to_string(),
            ],
            vec![
                a.to_string(),
                b.to_string(),
                count.to_string(),
                render::rat_str(&volume),
                cert.holds.to_string(),
            ],
        ],
    })
}

fn analytic_doc(a: u32, b: u32) -> Result<Document, String> {
    let report = analytic::analytic_report(a, b).map_err(|e| e.to_string())?;
    let cert = analytic::verify_u_dominates_stirling(a, b).map_err(|e| e.to_string())?;
    let fmt_opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_else(|| "-".to_string());
    let md = format!(
        "analytic bounds at (a, b) = ({a}, {b})\n\
         u: {u}\nv: {v}\nw: {w}\nstirling (exact): {s}\n\
         closed-form bound: {t4}\nrefined bound (a >= 17): {t5}\n{cert}\n",
        u = report.u,
        v = fmt_opt(report.v),
        w = report.w,
        s = render::rat_str(&report.stirling),
        t4 = report.theorem4,
        t5 = fmt_opt(report.theorem5),
        cert = render::cert_markdown_line(&cert),
    );
    Ok(Document {
        kind: "analytic".to_string(),
        parameters: vec![("a".to_string(), json!(a)), ("b".to_string(), json!(b))],
        payload: json!({
            "a": a,
            "b": b,
            "u": render::float_json(report.u),
            "v": report.v.map(render::float_json),
            "w": render::float_json(report.w),
            "stirling": render::rat_str(&report.stirling),
            "theorem4": render::float_json(report.theorem4),
            "theorem5": report.theorem5.map(render::float_json),
            "u_dominates_stirling": render::cert_json(&cert),
        }),
        markdown: md,
        csv: vec![
            vec![
                "a".to_string(),
                "b".to_string(),
                "u".to_string(),
                "v".to_string(),
                "w".to_string(),
                "stirling".to_string(),
                "theorem4".to_string(),
                "theorem5".to_string(),
            ],
            vec![
                a.to_string(),
                b.to_string(),
                report.u.to_string(),
                fmt_opt(report.v),
                report.w.to_string(),
                render::rat_str(&report.stirling),
                report.theorem4.to_string(),
                fmt_opt(report.theorem5),
            ],
        ],
    })
}

fn check_family_doc(
    verdict: &checker::Verdict,
    ledger: Option<&checker::LedgerReport>,
    a_max_direct: u32,
) -> Document {
    let f = &verdict.family;
    let mut md = format!(
        "family 2^{k1}*3^{k2}: k = {k}, M = {m}, d = {d}\nverdict: {status}\nmargin (per unit degree): {margin}\n\nevidence:\n",
        k1 = f.k1(),
        k2 = f.k2(),
        k = f.k(),
        m = f.m(),
        d = f.degree(),
        status = verdict.status,
        margin = render::rat_str(&verdict.margin),
    );
    for c in &verdict.evidence {
        md.push_str(&render::cert_markdown_line(c));
        md.push('\n');
    }
    if let Some(l) = ledger {
        md.push_str(&format!(
            "\nhypertangent ledger: ratio {} -> closing coefficient {} (contradiction: {})\n",
            render::rat_str(&l.post_hypertangent_ratio),
            render::rat_str(&l.final_coefficient),
            l.contradiction
        ));
        for n in &l.notes {
            md.push_str(&format!("  note: {n}\n"));
        }
    }
    let mut csv = vec![vec![
        "k1".to_string(),
        "k2".to_string(),
        "M".to_string(),
        "d".to_string(),
        "status".to_string(),
        "margin".to_string(),
    ]];
    csv.push(vec![
        f.k1().to_string(),
        f.k2().to_string(),
        f.m().to_string(),
        f.degree().to_string(),
        verdict.status.to_string(),
        render::rat_str(&verdict.margin),
    ]);
    Document {
        kind: "check-family".to_string(),
        parameters: vec![
            ("k1".to_string(), json!(f.k1())),
            ("k2".to_string(), json!(f.k2())),
            ("a_max_direct".to_string(), json!(a_max_direct)),
        ],
        payload: json!({
            "verdict": render::verdict_json(verdict),
            "ledger": ledger.map(render::ledger_json).unwrap_or(Value::Null),
        }),
        markdown: md,
        csv,
    }
}

fn verify_doc(report: &verify::VerifyReport, grid_scale: f64) -> Document {
    let mut csv = vec![{
        let mut h = vec!["criterion".to_string()];
        h.extend(render::cert_csv_header());
        h
    }];
    for c in &report.criteria {
        for cert in &c.certificates {
            let mut row = vec![c.index.to_string()];
            row.extend(render::cert_csv_row(cert));
            csv.push(row);
        }
    }
    Document {
        kind: "verify-paper".to_string(),
        parameters: vec![("grid_scale".to_string(), render::float_json(grid_scale))],
        payload: render::verify_report_json(report),
        markdown: render::verify_report_markdown(report),
        csv,
    }
}
