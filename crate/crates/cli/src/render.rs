//! Text, markdown, CSV and JSON renderings of command results.

use std::fmt::Write as _;

use qadd_core::designs::{CostMode, Discrepancy};
use qadd_core::errata::ErrataEntry;
use qadd_core::netlist::{CostBreakdown, VerifyReport};
use qadd_core::tables::{CellValue, CostTable, Status};
use serde::Serialize;

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn csv_text(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn assignment(names: &[String], values: &[qadd_core::catalog::Signal]) -> String {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn verify_text(r: &VerifyReport, outs: &[String], limit: usize) -> String {
    let mut s = format!("{}: {}\n", r.design, r.summary());
    for m in r.mismatches.iter().take(limit) {
        let ins = m
            .inputs
            .iter()
            .map(|(n, v)| format!("{n}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            s,
            "  {ins}: expected {}, got {}",
            assignment(outs, &m.expected),
            assignment(outs, &m.got)
        );
    }
    if r.mismatches.len() > limit {
        let _ = writeln!(s, "  ... {} more", r.mismatches.len() - limit);
    }
    s
}

pub fn cost_markdown(
    title: &str,
    mode: CostMode,
    b: &CostBreakdown,
    discrepancies: &[Discrepancy],
) -> String {
    let mut s = format!(
        "## {title} ({} count)\n\n| item | block | T |\n|---|---|---:|\n",
        mode.keyword()
    );
    for i in &b.items {
        let _ = writeln!(s, "| {} | {} | {} |", i.label, i.block, i.cost);
    }
    s.push_str("\n| block | T |\n|---|---:|\n");
    for (block, t) in &b.by_block {
        let _ = writeln!(s, "| {block} | {t} |");
    }
    let _ = writeln!(s, "\ntotal: {} T", b.total);
    if !discrepancies.is_empty() {
        s.push_str("\nprinted count differs from the netlist:\n");
        for d in discrepancies {
            let _ = writeln!(
                s,
                "- {} ({}): as built {} T, printed {} T [{}]",
                d.item, d.block, d.asbuilt, d.published, d.erratum
            );
        }
    }
    s
}

pub fn cost_csv(b: &CostBreakdown) -> String {
    let mut rows = vec![vec![
        "item".to_string(),
        "block".to_string(),
        "transistors".to_string(),
    ]];
    rows.extend(
        b.items
            .iter()
            .map(|i| vec![i.label.clone(), i.block.clone(), i.cost.to_string()]),
    );
    rows.push(vec![
        "total".to_string(),
        String::new(),
        b.total.to_string(),
    ]);
    csv_text(rows)
}

fn value_text(v: &CellValue) -> String {
    match (v.status, v.printed) {
        (Status::Mismatch, Some(p)) => format!("{} (printed {p})", v.computed),
        (Status::Unprinted, _) => format!("{} (not printed)", v.computed),
        _ => v.computed.to_string(),
    }
}

pub fn table_markdown(t: &CostTable) -> String {
    let mut s = format!(
        "## {}: {} ({} count)\n\n",
        t.id.keyword(),
        t.title,
        t.mode.keyword()
    );
    let _ = writeln!(s, "| {} |", t.columns.join(" | "));
    let _ = writeln!(s, "|{}", "---|".repeat(t.columns.len()));
    for row in &t.rows {
        let mut cells = vec![row.label.clone()];
        for c in &row.cells {
            let text = c
                .values
                .iter()
                .map(value_text)
                .collect::<Vec<_>>()
                .join("/");
            cells.push(if text.is_empty() {
                "-".to_string()
            } else {
                text
            });
        }
        cells.resize(t.columns.len(), "-".to_string());
        let _ = writeln!(s, "| {} |", cells.join(" | "));
    }

    let (mut matched, mut mismatched, mut unprinted) = (0, 0, 0);
    for (_, v) in t.values() {
        match v.status {
            Status::Match => matched += 1,
            Status::Mismatch => mismatched += 1,
            Status::Unprinted => unprinted += 1,
        }
    }
    let _ = writeln!(
        s,
        "\n{matched} match, {mismatched} mismatch, {unprinted} not printed"
    );

    let mut notes = Vec::new();
    for row in &t.rows {
        for (ci, c) in row.cells.iter().enumerate() {
            let column = t.columns.get(ci + 1).map(String::as_str).unwrap_or("");
            for v in &c.values {
                for f in &v.flags {
                    let place = [row.label.as_str(), column, v.label.as_str()]
                        .into_iter()
                        .filter(|p| !p.is_empty())
                        .collect::<Vec<_>>()
                        .join(" / ");
                    notes.push(format!(
                        "- {place} [{}]: printed {}, computed {}; {}",
                        f.erratum, f.printed, f.computed, f.note
                    ));
                }
            }
        }
    }
    if !notes.is_empty() {
        s.push_str("\nnotes:\n");
        for n in notes {
            s.push_str(&n);
            s.push('\n');
        }
    }
    s
}

pub fn table_csv(t: &CostTable) -> String {
    let header = [
        "table", "row", "column", "value", "printed", "computed", "status", "errata",
    ];
    let mut rows = vec![header.map(String::from).to_vec()];
    for row in &t.rows {
        for (ci, c) in row.cells.iter().enumerate() {
            let column = t.columns.get(ci + 1).cloned().unwrap_or_default();
            for v in &c.values {
                let status = match v.status {
                    Status::Match => "match",
                    Status::Mismatch => "mismatch",
                    Status::Unprinted => "not printed",
                };
                let errata = v
                    .flags
                    .iter()
                    .map(|f| f.erratum.as_str())
                    .collect::<Vec<_>>()
                    .join(" ");
                rows.push(vec![
                    t.id.keyword().to_string(),
                    row.label.clone(),
                    column.clone(),
                    v.label.clone(),
                    v.printed.map(|p| p.to_string()).unwrap_or_default(),
                    v.computed.to_string(),
                    status.to_string(),
                    errata,
                ]);
            }
        }
    }
    csv_text(rows)
}

pub fn errata_markdown(list: &[ErrataEntry]) -> String {
    let mut s = format!("## errata ({} entries)\n", list.len());
    for e in list {
        let _ = write!(
            s,
            "\n### {}\n\n- source: {}\n- printed: {}\n- computed: {}\n- method: {}\n- confirmed: {}\n",
            e.id,
            e.source,
            e.printed,
            e.computed,
            e.method.keyword(),
            if e.confirmed { "yes" } else { "no" }
        );
        for ev in &e.evidence {
            let _ = writeln!(s, "  - {ev}");
        }
    }
    s
}

pub fn errata_csv(list: &[ErrataEntry]) -> String {
    let header = [
        "id",
        "source",
        "printed",
        "computed",
        "method",
        "confirmed",
        "evidence",
    ];
    let mut rows = vec![header.map(String::from).to_vec()];
    for e in list {
        rows.push(vec![
            e.id.clone(),
            e.source.clone(),
            e.printed.clone(),
            e.computed.clone(),
            e.method.keyword().to_string(),
            e.confirmed.to_string(),
            e.evidence.join("; "),
        ]);
    }
    csv_text(rows)
}
