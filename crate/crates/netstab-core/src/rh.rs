//! Routh-Hurwitz stability test for monic quartics with complex
//! coefficients.
//!
//! The classical table only handles real coefficients. The variant used here
//! interleaves the real parts `a_j` and imaginary parts `b_j` into one table
//! of 19 cells built from 2x2-determinant recurrences; the quartic is Hurwitz
//! stable (all roots in the open left half-plane) exactly when the four
//! first-column pivots are positive.
//!
//! [`closed_form_conditions`] evaluates an equivalent set of three closed-form
//! inequalities published for the transport dispersion problem. They are kept
//! verbatim as a cross-check route; [`compare_conditions`] reports sign
//! disagreements against the table pivots, which are the authoritative
//! verdict.

use crate::polynomial::ComplexQuartic;

/// All 19 cells of the stability table for a complex quartic.
///
/// Field `aJ_K`/`bJ_K` is the cell written a_J^(K) (resp. b_J^(K)) in the
/// recurrence notation: row 1 holds the raw coefficients and their first
/// combinations, each later row is built from the previous one. Construction
/// is pure arithmetic and cannot fail, but overflow can drive cells to
/// infinity; [`is_stable`] treats non-finite pivots as unstable.
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(non_snake_case)]
pub struct RhTable {
    pub a1_1: f64,
    pub b2_1: f64,
    pub a3_1: f64,
    pub b4_1: f64,
    pub b1_1: f64,
    pub a2_1: f64,
    pub b3_1: f64,
    pub a4_1: f64,

    pub a2_2: f64,
    pub b3_2: f64,
    pub a4_2: f64,
    pub b2_2: f64,
    pub a3_2: f64,
    pub b4_2: f64,

    pub a3_3: f64,
    pub b4_3: f64,
    pub b3_3: f64,
    pub a4_3: f64,

    pub a4_4: f64,
}

impl RhTable {
    /// First-column pivots in row order. All positive iff the quartic is
    /// Hurwitz stable.
    pub fn pivots(&self) -> [f64; 4] {
        [self.a1_1, self.a2_2, self.a3_3, self.a4_4]
    }
}

/// Builds the full stability table for `q`.
pub fn build_table(q: &ComplexQuartic) -> RhTable {
    let (a1, a2, a3, a4) = (q.a1, q.a2, q.a3, q.a4);
    let (b1, b2, b3, b4) = (q.b1, q.b2, q.b3, q.b4);

    let a1_1 = a1;
    let b2_1 = b2;
    let a3_1 = a3;
    let b4_1 = b4;
    let b1_1 = a1 * b1 - b2;
    let a2_1 = a1 * a2 - a3;
    let b3_1 = a1 * b3 - b4;
    let a4_1 = a1 * a4;

    let a2_2 = a1_1 * a2_1 + b1_1 * b2_1;
    let b3_2 = a1_1 * b3_1 - b1_1 * a3_1;
    let a4_2 = a1_1 * a4_1 + b1_1 * b4_1;
    let b2_2 = a2_2 * b2_1 - a1_1 * b3_2;
    let a3_2 = a2_2 * a3_1 - a1_1 * a4_2;
    let b4_2 = a2_2 * b4_1;

    let a3_3 = a2_2 * a3_2 + b2_2 * b3_2;
    let b4_3 = a2_2 * b4_2 - b2_2 * a4_2;
    let b3_3 = a3_3 * b3_2 - a2_2 * b4_3;
    let a4_3 = a3_3 * a4_2;

    let a4_4 = a3_3 * a4_3 + b3_3 * b4_3;

    RhTable {
        a1_1,
        b2_1,
        a3_1,
        b4_1,
        b1_1,
        a2_1,
        b3_1,
        a4_1,
        a2_2,
        b3_2,
        a4_2,
        b2_2,
        a3_2,
        b4_2,
        a3_3,
        b4_3,
        b3_3,
        a4_3,
        a4_4,
    }
}

/// Outcome of the pivot test.
///
/// `margin` is the smallest pivot: positive with room to spare means robustly
/// stable, near zero means marginal, negative means unstable. Note the pivots
/// are polynomial (degree up to 7) in the coefficients, so the margin is a
/// qualitative distance to the stability boundary, not a root distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub pivots: [f64; 4],
    pub margin: f64,
    /// First pivot (0-based) that is not strictly positive and finite.
    pub failing_index: Option<usize>,
}

/// Pivot test for `q`. A non-finite pivot is never reported stable.
pub fn is_stable(q: &ComplexQuartic) -> StabilityVerdict {
    let pivots = build_table(q).pivots();
    let failing_index = pivots.iter().position(|&p| !(p.is_finite() && p > 0.0));
    let margin = pivots.iter().copied().fold(f64::INFINITY, f64::min);
    StabilityVerdict {
        stable: failing_index.is_none(),
        pivots,
        margin,
        failing_index,
    }
}

/// Model-side quantities the closed-form conditions are written in.
///
/// These are the same numbers the dispersion module folds into the quartic;
/// they are passed separately here because the closed forms use them
/// directly rather than through the coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormInputs {
    pub tau_u: f64,
    pub tau_v: f64,
    pub d_u: f64,
    pub d_v: f64,
    pub f_u: f64,
    pub g_v: f64,
    pub lambda_re: f64,
    pub lambda_im: f64,
}

/// The three published closed-form stability conditions, evaluated verbatim.
///
/// Stability is claimed iff `upsilon > 0`, `gamma > 0` and `third > 0`
/// (`alpha = epsilon^2 * upsilon` carries the first condition's sign).
/// In exact arithmetic these mirror the table pivots `a2_2`, `a3_3`, `a4_4`;
/// the published first condition is however not algebraically identical to
/// `a2_2` for `lambda_im != 0`, which is exactly what [`compare_conditions`]
/// makes visible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormConditions {
    pub upsilon: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub third: f64,
}

impl ClosedFormConditions {
    pub fn all_positive(&self) -> bool {
        self.upsilon > 0.0 && self.gamma > 0.0 && self.third > 0.0
    }
}

/// Evaluates the closed-form conditions for `q` with the supplied `epsilon`
/// (the quartic's overall 1/(tau_u tau_v) scale) and model inputs.
pub fn closed_form_conditions(
    q: &ComplexQuartic,
    epsilon: f64,
    inputs: &ClosedFormInputs,
) -> ClosedFormConditions {
    let ClosedFormInputs {
        tau_u,
        tau_v,
        d_u,
        d_v,
        f_u,
        g_v,
        lambda_re,
        lambda_im,
    } = *inputs;

    let bracket = tau_u + tau_v
        - g_v * tau_u * tau_u
        - f_u * tau_v * tau_v
        - tau_u * tau_u * d_v * lambda_re
        - tau_v * tau_v * d_u * lambda_re;
    let upsilon = epsilon * (tau_u + tau_v) * bracket - lambda_im * (d_u + d_v) * (d_u + d_v);

    let alpha = epsilon * epsilon * upsilon;
    let (a1, a3, a4) = (q.a1, q.a3, q.a4);
    let (b2, b3, b4) = (q.b2, q.b3, q.b4);
    let beta = a1 * (a1 * b3 - b4) + a3 * b2;
    let gamma =
        alpha * (a3 * alpha - a1 * a1 * a1 * a4 + a1 * b2 * b4) + (alpha * b2 - a1 * beta) * beta;
    let third = (gamma * beta - alpha)
        * (alpha * alpha * b4 - (a1 * a1 * b4 - b2 * b4) * (alpha * b2 - a1 * beta))
        + (a1 * a1 * a4 - b2 * b4) * gamma * gamma;

    ClosedFormConditions {
        upsilon,
        alpha,
        beta,
        gamma,
        third,
    }
}

/// Sign comparison of one closed-form condition against its table pivot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionComparison {
    /// 1-based condition number (1 = upsilon/alpha, 2 = gamma, 3 = third).
    pub condition: usize,
    pub closed_form: f64,
    pub pivot: f64,
    pub agrees: bool,
}

/// Compares the closed-form conditions with pivots `a2_2`, `a3_3`, `a4_4`.
///
/// The pivot signs are the authoritative verdict; a disagreement flags the
/// closed form, not the table.
pub fn compare_conditions(
    q: &ComplexQuartic,
    epsilon: f64,
    inputs: &ClosedFormInputs,
) -> [ConditionComparison; 3] {
    let table = build_table(q);
    let forms = closed_form_conditions(q, epsilon, inputs);
    let pairs = [
        (1, forms.alpha, table.a2_2),
        (2, forms.gamma, table.a3_3),
        (3, forms.third, table.a4_4),
    ];
    pairs.map(|(condition, closed_form, pivot)| ConditionComparison {
        condition,
        closed_form,
        pivot,
        agrees: (closed_form > 0.0) == (pivot > 0.0),
    })
}
