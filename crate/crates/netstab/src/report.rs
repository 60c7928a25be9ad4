//! Aggregated stability reports: a per-mode table, the overall verdict and
//! notes on how far the closed-form shortcut conditions and the reference
//! coefficient route drift from the authoritative determinant-backed table.

use std::fmt::Write as _;

use serde::Serialize;

use netstab_core::dispersion::{coefficient_discrepancies, NetworkVerdict};
use netstab_core::rh::{compare_conditions, ClosedFormInputs};
use netstab_core::{JacobianEntries, TransportParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeRow {
    pub index: usize,
    pub re: f64,
    pub im: f64,
    pub stable: bool,
    pub margin: f64,
    pub growth_rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub stable: bool,
    pub dominant: Option<usize>,
    pub modes: Vec<ModeRow>,
    pub discrepancy_notes: Vec<String>,
}

impl ReportRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}

pub fn build_report(
    j: &JacobianEntries,
    t: &TransportParams,
    verdict: &NetworkVerdict,
) -> ReportRecord {
    let modes = verdict
        .modes
        .iter()
        .enumerate()
        .map(|(index, m)| ModeRow {
            index,
            re: m.eigenvalue.re,
            im: m.eigenvalue.im,
            stable: m.stable,
            margin: m.rh_margin,
            growth_rate: m.growth_rate,
        })
        .collect();

    let n = verdict.modes.len();
    let mut condition_misses = [0usize; 3];
    let mut coeff_misses = 0usize;
    let mut worst_gap = 0.0f64;
    let mut worst_index = 0usize;
    for m in &verdict.modes {
        let inputs = ClosedFormInputs {
            tau_u: t.tau_u,
            tau_v: t.tau_v,
            d_u: t.d_u,
            d_v: t.d_v,
            f_u: j.f_u,
            g_v: j.g_v,
            lambda_re: m.eigenvalue.re,
            lambda_im: m.eigenvalue.im,
        };
        for cmp in compare_conditions(&m.quartic, t.epsilon(), &inputs) {
            if !cmp.agrees {
                condition_misses[cmp.condition - 1] += 1;
            }
        }
        let gaps = coefficient_discrepancies(j, t, m.eigenvalue);
        if !gaps.is_empty() {
            coeff_misses += 1;
            for g in gaps {
                if g.gap > worst_gap {
                    worst_gap = g.gap;
                    worst_index = g.index;
                }
            }
        }
    }

    let mut notes = Vec::new();
    if condition_misses.iter().all(|&k| k == 0) {
        notes.push(format!(
            "closed-form conditions agree in sign with the table pivots on all {n} modes"
        ));
    } else {
        for (i, &k) in condition_misses.iter().enumerate() {
            if k > 0 {
                notes.push(format!(
                    "closed-form condition {} disagrees in sign with its table pivot on {k} of {n} modes",
                    i + 1
                ));
            }
        }
    }
    if coeff_misses == 0 {
        notes.push(format!(
            "reference coefficient route matches the determinant-derived quartic on all {n} modes"
        ));
    } else {
        notes.push(format!(
            "reference coefficient route deviates from the determinant-derived quartic on \
             {coeff_misses} of {n} modes (worst gap {worst_gap:.3e} at coefficient {worst_index})"
        ));
    }

    ReportRecord {
        stable: verdict.stable,
        dominant: verdict.dominant,
        modes,
        discrepancy_notes: notes,
    }
}

/// Fixed-width table plus verdict and notes, one line per mode.
pub fn render_text(r: &ReportRecord) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:>5}  {:>22}  {:>8}  {:>12}  {:>12}",
        "mode", "eigenvalue", "stable", "margin", "growth_rate"
    )
    .unwrap();
    for m in &r.modes {
        let rate = match m.growth_rate {
            Some(v) => format!("{v:+.4e}"),
            None => String::from("-"),
        };
        let marker = if r.dominant == Some(m.index) {
            "*"
        } else {
            " "
        };
        writeln!(
            out,
            "{:>4}{marker}  {:>+10.4} {:>+9.4}i  {:>8}  {:>12}  {:>12}",
            m.index,
            m.re,
            m.im,
            if m.stable { "yes" } else { "no" },
            format!("{:+.4e}", m.margin),
            rate
        )
        .unwrap();
    }
    match (r.stable, r.dominant) {
        (true, _) => writeln!(out, "verdict: stable (all modes pass the pivot test)").unwrap(),
        (false, Some(d)) => {
            let rate = r.modes[d]
                .growth_rate
                .map(|v| format!("{v:+.4e}"))
                .unwrap_or_else(|| String::from("-"));
            writeln!(
                out,
                "verdict: unstable (dominant mode {d}, growth rate {rate})"
            )
            .unwrap();
        }
        (false, None) => writeln!(out, "verdict: unstable").unwrap(),
    }
    for note in &r.discrepancy_notes {
        writeln!(out, "note: {note}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use netstab_core::dispersion::network_verdict;
    use netstab_core::models::brusselator;
    use netstab_core::network::{directed_laplacian, newman_watts_directed, spectrum};
    use netstab_core::BrusselatorParams;

    fn demo_report() -> ReportRecord {
        let j = brusselator(&BrusselatorParams::new(1.3, 14.0).unwrap()).jacobian();
        let t = TransportParams::new(0.5, 0.5, 2.0, 1.0).unwrap();
        let a = newman_watts_directed(12, 3, 0.01, 3).unwrap();
        let s = spectrum(&directed_laplacian(&a)).unwrap();
        build_report(&j, &t, &network_verdict(&j, &t, &s))
    }

    #[test]
    fn report_mirrors_the_verdict_and_counts_modes() {
        let r = demo_report();
        assert_eq!(r.modes.len(), 12);
        assert_eq!(r.stable, r.modes.iter().all(|m| m.stable));
        assert!(r.dominant.is_some());
        assert!(!r.discrepancy_notes.is_empty());
    }

    #[test]
    fn rendered_table_has_one_row_per_mode_and_a_verdict() {
        let r = demo_report();
        let text = render_text(&r);
        assert_eq!(
            text.lines().count(),
            1 + r.modes.len() + 1 + r.discrepancy_notes.len()
        );
        assert!(text.contains("verdict:"));
        assert!(text.contains("note:"));
    }

    #[test]
    fn report_serializes_with_mode_rows() {
        let r = demo_report();
        let value: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(value["modes"].as_array().unwrap().len(), 12);
        assert!(value["stable"].is_boolean());
        assert!(value["discrepancy_notes"].is_array());
    }
}
