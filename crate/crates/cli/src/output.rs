use augq::augring::ValidationReport;
use augq::constructors::MarksMatrix;
use augq::stabilize::{csv_field, CSV_HEADER};
use augq::{AugmentedRing, FinAbGroup, QuotientResult, StabilizationReport};
use serde_json::{json, Value};

#[derive(Clone, Copy)]
pub enum Format {
    Json,
    Csv,
    Table,
}

fn bracketed(g: &FinAbGroup) -> String {
    let parts: Vec<String> = g.invariant_factors().iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn piped(g: &FinAbGroup) -> String {
    let parts: Vec<String> = g.invariant_factors().iter().map(u64::to_string).collect();
    parts.join("|")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn validation(ring: &AugmentedRing, report: &ValidationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({"check": c.kind.name(), "passed": c.passed, "detail": c.detail}))
                .collect();
            pretty(&json!({"ring_id": ring.name(), "valid": report.is_valid(), "checks": checks}))
        }
        Format::Csv => {
            let mut out = String::from("ring_id,check,passed,detail\n");
            for c in &report.checks {
                let detail = c.detail.as_deref().unwrap_or("");
                out += &format!("{},{},{},{}\n", csv_field(ring.name()), c.kind.name(), c.passed, csv_field(detail));
            }
            out
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.kind.name().to_string(),
                        if c.passed { "ok" } else { "FAILED" }.to_string(),
                        c.detail.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            format!("{}\n{}", ring.name(), table(&["check", "result", "detail"], &rows))
        }
    }
}

pub fn quotients(ring: &AugmentedRing, qs: &[QuotientResult], format: Format) -> String {
    match format {
        Format::Json => pretty(
            &json!({"ring_id": ring.name(), "quotients": serde_json::to_value(qs).expect("quotients serialize")}),
        ),
        Format::Csv => {
            let mut out = String::from("ring_id,n,invariants,order\n");
            for q in qs {
                out += &format!("{},{},{},{}\n", csv_field(ring.name()), q.n, piped(&q.group), q.order);
            }
            out
        }
        Format::Table => {
            let rows: Vec<Vec<String>> =
                qs.iter().map(|q| vec![q.n.to_string(), bracketed(&q.group), q.order.to_string()]).collect();
            table(&["n", "invariants", "order"], &rows)
        }
    }
}

pub fn report(r: &StabilizationReport, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", r.to_json()),
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for row in r.csv_rows() {
                out += &row;
                out.push('\n');
            }
            out
        }
        Format::Table => {
            let mut out =
                format!("ring     {}\nd        {}\nr        {}\nbound    {}\n", r.ring_id, r.d, r.r, r.bound());
            match r.n0_candidate {
                Some(n0) => out += &format!("n0       {n0} (tail of {} observed, not certified)\n", r.window),
                None => out += &format!("n0       inconclusive (tail of {} observed)\n", r.window),
            }
            out.push('\n');
            let rows: Vec<Vec<String>> = r
                .quotients
                .iter()
                .zip(&r.bound_ok)
                .map(|(q, ok)| {
                    vec![
                        q.n.to_string(),
                        bracketed(&q.group),
                        q.order.to_string(),
                        if *ok { "ok" } else { "VIOLATED" }.into(),
                    ]
                })
                .collect();
            out += &table(&["n", "invariants", "order", "bound"], &rows);
            if !r.lambda_table.is_empty() {
                out.push('\n');
                let rows: Vec<Vec<String>> = r
                    .lambda_table
                    .iter()
                    .map(|(&(p, s), row)| {
                        let values: Vec<String> = row.iter().map(u64::to_string).collect();
                        let constant = r.lambda_constant.get(&(p, s)).copied().unwrap_or(false);
                        vec![p.to_string(), s.to_string(), values.join(" "), if constant { "yes" } else { "no" }.into()]
                    })
                    .collect();
                out += &table(&["p", "s", "lambda_p(p^s Q_n), n = 1..", "constant on tail"], &rows);
            }
            out
        }
    }
}

pub fn group(g: &FinAbGroup, format: Format) -> String {
    match format {
        Format::Json | Format::Table => format!("{}\n", bracketed(g)),
        Format::Csv => format!("invariants\n{}\n", piped(g)),
    }
}

pub fn marks(m: &MarksMatrix, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({"labels": m.labels, "marks": m.marks})),
        Format::Csv => {
            let mut out = format!("class,{}\n", m.labels.join(","));
            for (label, row) in m.labels.iter().zip(&m.marks) {
                let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                out += &format!("{label},{}\n", cells.join(","));
            }
            out
        }
        Format::Table => {
            let mut header = vec![""];
            header.extend(m.labels.iter().map(String::as_str));
            let rows: Vec<Vec<String>> = m
                .labels
                .iter()
                .zip(&m.marks)
                .map(|(label, row)| std::iter::once(label.clone()).chain(row.iter().map(u64::to_string)).collect())
                .collect();
            table(&header, &rows)
        }
    }
}

pub struct CorpusRow {
    pub line: usize,
    pub id: String,
    pub result: Result<StabilizationReport, String>,
}

impl CorpusRow {
    pub fn ok(&self) -> bool {
        self.result.as_ref().is_ok_and(|r| r.stabilized() && r.all_bounds_hold())
    }

    fn status(&self) -> &'static str {
        match &self.result {
            Ok(r) if r.stabilized() => "stabilized",
            Ok(_) => "inconclusive",
            Err(_) => "error",
        }
    }
}

pub const CORPUS_HEADER: &str = "line,ring_id,status,n0,window,d,r,stable_invariants,stable_order,bound_ok,error";

/// One summary row per ring; the JSON format carries the full reports.
pub fn corpus(rows: &[CorpusRow], format: Format) -> String {
    match format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|row| match &row.result {
                    Ok(r) => json!({"line": row.line, "ring_id": row.id, "status": row.status(),
                        "report": serde_json::to_value(r).expect("report serializes")}),
                    Err(e) => json!({"line": row.line, "ring_id": row.id, "status": row.status(), "error": e}),
                })
                .collect();
            pretty(&Value::Array(items))
        }
        Format::Csv | Format::Table => {
            let mut out = format!("{CORPUS_HEADER}\n");
            for row in rows {
                let cells = match &row.result {
                    Ok(r) => {
                        let last = r.quotients.last().expect("max_n >= 1");
                        [
                            r.n0_candidate.map(|n| n.to_string()).unwrap_or_default(),
                            r.window.to_string(),
                            r.d.to_string(),
                            r.r.to_string(),
                            piped(&last.group),
                            last.order.to_string(),
                            r.all_bounds_hold().to_string(),
                            String::new(),
                        ]
                    }
                    Err(e) => {
                        let mut cells: [String; 8] = Default::default();
                        cells[7] = csv_field(e);
                        cells
                    }
                };
                out += &format!("{},{},{},{}\n", row.line, csv_field(&row.id), row.status(), cells.join(","));
            }
            out
        }
    }
}
