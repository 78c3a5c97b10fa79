use std::fmt::Write;

use super::AnalysabilityReport;

fn pct(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.1}")).unwrap_or_else(|| "-".into())
}

/// Human-readable summary table with a footer and a diagnostics section.
pub fn render_text(report: &AnalysabilityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Analysability report for {}", report.project.root);
    let _ = writeln!(
        out,
        "{} circuit file(s), {} classical file(s){}",
        report.project.circuit_files,
        report.project.classical_files,
        if report.project.expand_gates {
            ", user gates expanded"
        } else {
            ""
        }
    );
    out.push('\n');

    let name_width = report
        .properties
        .iter()
        .map(|p| p.property_name.len())
        .max()
        .unwrap_or(8)
        .max("property".len());
    let _ = writeln!(
        out,
        "{:<name_width$}  {:>14}  {:>20}  {:>4}  {:>9}",
        "property", "NC (1/2/3)", "DC % (1/2/3)", "band", "quality"
    );
    let _ = writeln!(out, "{}", "-".repeat(name_width + 57));
    for p in &report.properties {
        let nc = format!("{}/{}/{}", p.nc1, p.nc2, p.nc3);
        let (dc, band, quality) = if p.applicable {
            (
                format!("{}/{}/{}", pct(p.dc1), pct(p.dc2), pct(p.dc3)),
                p.band.map(|b| b.to_string()).unwrap_or_default(),
                p.quality.map(|q| format!("{q:.2}")).unwrap_or_default(),
            )
        } else {
            ("n/a".into(), "-".into(), "n/a".into())
        };
        let _ = writeln!(
            out,
            "{:<name_width$}  {:>14}  {:>20}  {:>4}  {:>9}",
            p.property_name, nc, dc, band, quality
        );
    }
    out.push('\n');
    let _ = writeln!(
        out,
        "Analysability value: {:.2} / 100",
        report.analysability_value
    );
    let _ = writeln!(
        out,
        "Analysability level: {} of 5",
        report.analysability_level
    );

    if !report.diagnostics.is_empty() || !report.project.skipped.is_empty() {
        out.push('\n');
        let _ = writeln!(out, "Diagnostics:");
        for d in &report.diagnostics {
            let _ = writeln!(out, "  {d}");
        }
        for s in &report.project.skipped {
            let _ = writeln!(out, "  {}: skipped ({})", s.path, s.reason);
        }
    }
    out
}
