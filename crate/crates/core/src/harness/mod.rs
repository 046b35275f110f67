//! Instance generation, the system file format and report rendering.

pub mod generators;
pub mod text;

use std::fmt::Write;

use crate::invariants::{DegreeReport, Verdict};

fn show(v: Option<u32>) -> String {
    v.map_or_else(|| "-".to_string(), |d| d.to_string())
}

/// JSON form of a report.
pub fn render_report(report: &DegreeReport) -> String {
    report.to_json()
}

/// Plain-text form of a report.
pub fn render_report_text(report: &DegreeReport) -> String {
    let mut out = String::new();
    let h = &report.hypothesis;
    let _ = writeln!(out, "order      {}", report.order);
    let _ = writeln!(out, "system     n={} k={} max deg={}", h.nvars, h.npolys, h.max_degree);
    let _ = writeln!(out, "d_reg      {}", report.d_reg);
    let _ = writeln!(out, "gbd        {}", show(report.gbd));
    let _ = writeln!(out, "sd         {}", show(report.sd));
    let _ = writeln!(out, "lfd        {}", show(report.lfd));
    let _ = writeln!(
        out,
        "hypothesis {}",
        if h.dreg_finite && h.max_deg_le_dreg {
            "holds"
        } else {
            "fails"
        }
    );
    if !report.dims.is_empty() {
        let _ = writeln!(out, "e\tdim V\tdim (F)<=e");
        for row in &report.dims {
            let _ = writeln!(out, "{}\t{}\t{}", row.e, row.v_dim, row.ideal_dim);
        }
    }
    for c in &report.certificates {
        let verdict = match c.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIP",
        };
        let _ = write!(out, "{verdict} {}", c.id);
        if c.verdict != Verdict::Skipped {
            let rhs = c.rhs.map_or("+inf".into(), |r| r.to_string());
            let _ = write!(out, " ({} vs {rhs})", show(c.lhs));
        }
        if let Some(r) = &c.reason {
            let _ = write!(out, ": {r}");
        }
        out.push('\n');
    }
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}
