use crate::entanglement::{EntanglementReport, McEstimate};

fn clamp_display(x: f64, hi: f64) -> f64 {
    x.clamp(0.0, hi)
}

/// Human-readable report, values at 12 decimal places.
///
/// Entanglement values are clamped to their admissible range here only; the
/// report fields themselves keep the raw numbers.
pub fn render_report(
    report: &EntanglementReport,
    name: Option<&str>,
    mc: Option<&McEstimate>,
) -> String {
    let d = report.d as f64;
    let e_max = 1.0 - 1.0 / (d * d);
    let mut out = String::new();
    if let Some(name) = name {
        out.push_str(&format!("{:<12}{name}\n", "name:"));
    }
    out.push_str(&format!("{:<12}{}\n", "d:", report.d));
    out.push_str(&format!(
        "{:<12}{} (defect {:.3e})\n",
        "unitary:",
        if report.unitarity_ok { "yes" } else { "NO" },
        report.unitarity_defect
    ));
    let rows = [
        ("E(U):", report.e_op),
        ("E(S12 U):", report.e_op_swapped),
        ("E(U S12):", report.e_op_swapped_right),
        ("E(S12):", report.e_swap),
    ];
    for (label, value) in rows {
        out.push_str(&format!("{label:<12}{:.12}\n", clamp_display(value, e_max)));
    }
    match report.e_power {
        Some(ep) => out.push_str(&format!(
            "{:<12}{:.12}\n",
            "e_p(U):",
            clamp_display(ep, 1.0)
        )),
        None => out.push_str("e_p(U):     undefined (not unitary)\n"),
    }
    if let Some(mc) = mc {
        out.push_str(&format!(
            "e_p(MC):    {:.12} +/- {:.12} (n={}, seed={})\n",
            mc.mean, mc.stderr, mc.n_samples, mc.seed
        ));
    }
    out
}
