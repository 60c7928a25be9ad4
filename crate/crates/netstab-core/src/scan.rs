//! Stability-region scans over two-parameter grids.
//!
//! A scan fixes everything except two chosen quantities, marches a uniform
//! `resolution` x `resolution` grid over their ranges (endpoints inclusive)
//! and records per cell the pivot-test verdict, its margin and the fitted
//! growth rate of the dominant root. Two flavours: the complex-eigenvalue
//! plane of a fixed model, and a model/transport parameter plane judged
//! against a fixed set of Laplacian eigenvalue samples.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dispersion::{self, TransportParams};
use crate::models::{brusselator, BrusselatorParams, JacobianEntries};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScanError {
    #[error("grid resolution must be at least 2, got {resolution}")]
    ResolutionTooSmall { resolution: usize },
    #[error("axis {axis} range [{min}, {max}] is invalid: {reason}")]
    InvalidRange {
        axis: &'static str,
        min: f64,
        max: f64,
        reason: &'static str,
    },
    #[error("the two scan axes must differ")]
    DuplicateAxes,
    #[error("unknown axis name {0:?}")]
    UnknownAxis(String),
    #[error("at least one Laplacian eigenvalue sample is required")]
    EmptyLambdaSamples,
    #[error("eigenvalue samples must be finite")]
    NonFiniteSample,
}

/// Quantities a parameter-plane scan can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanAxis {
    B,
    C,
    TauU,
    TauV,
    DU,
    DV,
    LambdaRe,
    LambdaIm,
}

impl ScanAxis {
    pub fn name(&self) -> &'static str {
        match self {
            ScanAxis::B => "b",
            ScanAxis::C => "c",
            ScanAxis::TauU => "tau_u",
            ScanAxis::TauV => "tau_v",
            ScanAxis::DU => "d_u",
            ScanAxis::DV => "d_v",
            ScanAxis::LambdaRe => "lambda_re",
            ScanAxis::LambdaIm => "lambda_im",
        }
    }

    pub fn parse(name: &str) -> Result<Self, ScanError> {
        match name {
            "b" => Ok(ScanAxis::B),
            "c" => Ok(ScanAxis::C),
            "tau_u" => Ok(ScanAxis::TauU),
            "tau_v" => Ok(ScanAxis::TauV),
            "d_u" => Ok(ScanAxis::DU),
            "d_v" => Ok(ScanAxis::DV),
            "lambda_re" => Ok(ScanAxis::LambdaRe),
            "lambda_im" => Ok(ScanAxis::LambdaIm),
            other => Err(ScanError::UnknownAxis(String::from(other))),
        }
    }
}

impl core::str::FromStr for ScanAxis {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScanAxis::parse(s)
    }
}

/// One scan axis: which quantity varies and over which closed interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub axis: ScanAxis,
    pub min: f64,
    pub max: f64,
}

impl AxisSpec {
    fn validate(&self) -> Result<(), ScanError> {
        let fail = |reason| {
            Err(ScanError::InvalidRange {
                axis: self.axis.name(),
                min: self.min,
                max: self.max,
                reason,
            })
        };
        if !self.min.is_finite() || !self.max.is_finite() {
            return fail("bounds must be finite");
        }
        if self.min > self.max {
            return fail("min exceeds max");
        }
        match self.axis {
            ScanAxis::B | ScanAxis::C | ScanAxis::TauU | ScanAxis::TauV => {
                if self.min <= 0.0 {
                    return fail("must stay positive");
                }
            }
            ScanAxis::DU | ScanAxis::DV => {
                if self.min < 0.0 {
                    return fail("must stay nonnegative");
                }
            }
            ScanAxis::LambdaRe => {
                if self.max > 0.0 {
                    return fail("mode real parts are nonpositive");
                }
            }
            ScanAxis::LambdaIm => {}
        }
        Ok(())
    }

    /// Grid coordinate `idx` of `resolution` points, endpoints inclusive.
    pub fn value(&self, idx: usize, resolution: usize) -> f64 {
        self.min + (self.max - self.min) * (idx as f64) / ((resolution - 1) as f64)
    }
}

/// Verdict for one grid cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub stable: bool,
    /// Smallest pivot over all judged modes.
    pub margin: f64,
    /// Largest spectral abscissa over all judged modes, `None` if root
    /// finding failed anywhere in the cell.
    pub growth_rate: Option<f64>,
}

/// Scan output: the two axis specs, the square grid of cells (row-major,
/// axis1 indexes rows) and the fixed-parameter context that, together with
/// the axes, fully determines a rerun.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMap {
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub resolution: usize,
    cells: Vec<Cell>,
    pub fixed: Vec<(String, f64)>,
}

impl RegionMap {
    pub fn cell(&self, i1: usize, i2: usize) -> &Cell {
        &self.cells[i1 * self.resolution + i2]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn value1(&self, i1: usize) -> f64 {
        self.axis1.value(i1, self.resolution)
    }

    pub fn value2(&self, i2: usize) -> f64 {
        self.axis2.value(i2, self.resolution)
    }

    /// Fraction of cells judged stable.
    pub fn stable_fraction(&self) -> f64 {
        let stable = self.cells.iter().filter(|c| c.stable).count();
        stable as f64 / self.cells.len() as f64
    }
}

fn check_resolution(resolution: usize) -> Result<(), ScanError> {
    if resolution < 2 {
        return Err(ScanError::ResolutionTooSmall { resolution });
    }
    Ok(())
}

/// Maps the stability region in the Laplacian eigenvalue plane for a fixed
/// model: axis1 is Re Λ (restricted to nonpositive values), axis2 is Im Λ.
pub fn scan_lambda_plane(
    j: &JacobianEntries,
    t: &TransportParams,
    re_range: (f64, f64),
    im_range: (f64, f64),
    resolution: usize,
) -> Result<RegionMap, ScanError> {
    check_resolution(resolution)?;
    let axis1 = AxisSpec {
        axis: ScanAxis::LambdaRe,
        min: re_range.0,
        max: re_range.1,
    };
    let axis2 = AxisSpec {
        axis: ScanAxis::LambdaIm,
        min: im_range.0,
        max: im_range.1,
    };
    axis1.validate()?;
    axis2.validate()?;

    let mut cells = Vec::with_capacity(resolution * resolution);
    for i1 in 0..resolution {
        let re = axis1.value(i1, resolution);
        for i2 in 0..resolution {
            let im = axis2.value(i2, resolution);
            let m = dispersion::mode_verdict(j, t, Complex64::new(re, im));
            cells.push(Cell {
                stable: m.stable,
                margin: m.rh_margin,
                growth_rate: m.growth_rate,
            });
        }
    }

    let fixed = alloc::vec![
        (String::from("f_u"), j.f_u),
        (String::from("f_v"), j.f_v),
        (String::from("g_u"), j.g_u),
        (String::from("g_v"), j.g_v),
        (String::from("d_u"), t.d_u),
        (String::from("d_v"), t.d_v),
        (String::from("tau_u"), t.tau_u),
        (String::from("tau_v"), t.tau_v),
    ];
    Ok(RegionMap {
        axis1,
        axis2,
        resolution,
        cells,
        fixed,
    })
}

/// Maps a stability region over two model/transport parameters, judging each
/// grid point against every eigenvalue in `lambda_samples` (a point is stable
/// only if all samples are). `lambda_re`/`lambda_im` axes override that
/// component of every sample.
pub fn scan_parameter_plane(
    base: &BrusselatorParams,
    t: &TransportParams,
    axis1: AxisSpec,
    axis2: AxisSpec,
    resolution: usize,
    lambda_samples: &[Complex64],
) -> Result<RegionMap, ScanError> {
    check_resolution(resolution)?;
    if axis1.axis == axis2.axis {
        return Err(ScanError::DuplicateAxes);
    }
    axis1.validate()?;
    axis2.validate()?;
    if lambda_samples.is_empty() {
        return Err(ScanError::EmptyLambdaSamples);
    }
    if lambda_samples
        .iter()
        .any(|l| !l.re.is_finite() || !l.im.is_finite())
    {
        return Err(ScanError::NonFiniteSample);
    }

    let mut cells = Vec::with_capacity(resolution * resolution);
    for i1 in 0..resolution {
        let v1 = axis1.value(i1, resolution);
        for i2 in 0..resolution {
            let v2 = axis2.value(i2, resolution);
            cells.push(evaluate_point(
                base,
                t,
                &axis1,
                v1,
                &axis2,
                v2,
                lambda_samples,
            ));
        }
    }

    let axes = [axis1.axis, axis2.axis];
    let mut fixed = Vec::new();
    let mut keep = |axis: ScanAxis, value: f64| {
        if !axes.contains(&axis) {
            fixed.push((String::from(axis.name()), value));
        }
    };
    keep(ScanAxis::B, base.b);
    keep(ScanAxis::C, base.c);
    keep(ScanAxis::TauU, t.tau_u);
    keep(ScanAxis::TauV, t.tau_v);
    keep(ScanAxis::DU, t.d_u);
    keep(ScanAxis::DV, t.d_v);
    for (i, l) in lambda_samples.iter().enumerate() {
        if !axes.contains(&ScanAxis::LambdaRe) {
            fixed.push((format!("lambda_{i}_re"), l.re));
        }
        if !axes.contains(&ScanAxis::LambdaIm) {
            fixed.push((format!("lambda_{i}_im"), l.im));
        }
    }

    Ok(RegionMap {
        axis1,
        axis2,
        resolution,
        cells,
        fixed,
    })
}

fn evaluate_point(
    base: &BrusselatorParams,
    t: &TransportParams,
    axis1: &AxisSpec,
    v1: f64,
    axis2: &AxisSpec,
    v2: f64,
    lambda_samples: &[Complex64],
) -> Cell {
    let mut b = base.b;
    let mut c = base.c;
    let mut transport = *t;
    let mut lambda_re_override = None;
    let mut lambda_im_override = None;

    for (axis, v) in [(axis1.axis, v1), (axis2.axis, v2)] {
        match axis {
            ScanAxis::B => b = v,
            ScanAxis::C => c = v,
            ScanAxis::TauU => transport.tau_u = v,
            ScanAxis::TauV => transport.tau_v = v,
            ScanAxis::DU => transport.d_u = v,
            ScanAxis::DV => transport.d_v = v,
            ScanAxis::LambdaRe => lambda_re_override = Some(v),
            ScanAxis::LambdaIm => lambda_im_override = Some(v),
        }
    }

    let params = BrusselatorParams { b, c };
    let j = brusselator(&params).jacobian();

    let mut stable = true;
    let mut margin = f64::INFINITY;
    let mut growth: Option<f64> = Some(f64::NEG_INFINITY);
    for sample in lambda_samples {
        let lambda = Complex64::new(
            lambda_re_override.unwrap_or(sample.re),
            lambda_im_override.unwrap_or(sample.im),
        );
        let m = dispersion::mode_verdict(&j, &transport, lambda);
        stable &= m.stable;
        margin = margin.min(m.rh_margin);
        growth = match (growth, m.growth_rate) {
            (Some(g), Some(r)) => Some(g.max(r)),
            _ => None,
        };
    }
    Cell {
        stable,
        margin,
        growth_rate: growth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::brusselator;

    fn demo() -> (JacobianEntries, TransportParams) {
        let j = brusselator(&BrusselatorParams::new(1.3, 14.0).unwrap()).jacobian();
        let t = TransportParams::new(0.5, 0.5, 2.0, 1.0).unwrap();
        (j, t)
    }

    #[test]
    fn axis_names_round_trip() {
        for axis in [
            ScanAxis::B,
            ScanAxis::C,
            ScanAxis::TauU,
            ScanAxis::TauV,
            ScanAxis::DU,
            ScanAxis::DV,
            ScanAxis::LambdaRe,
            ScanAxis::LambdaIm,
        ] {
            assert_eq!(ScanAxis::parse(axis.name()).unwrap(), axis);
        }
        assert!(matches!(
            ScanAxis::parse("diffusion"),
            Err(ScanError::UnknownAxis(_))
        ));
    }

    #[test]
    fn lambda_plane_rejects_bad_ranges() {
        let (j, t) = demo();
        assert!(matches!(
            scan_lambda_plane(&j, &t, (-1.0, 0.0), (0.0, 1.0), 1),
            Err(ScanError::ResolutionTooSmall { .. })
        ));
        assert!(matches!(
            scan_lambda_plane(&j, &t, (-1.0, 0.5), (0.0, 1.0), 4),
            Err(ScanError::InvalidRange { .. })
        ));
        assert!(matches!(
            scan_lambda_plane(&j, &t, (0.0, -1.0), (0.0, 1.0), 4),
            Err(ScanError::InvalidRange { .. })
        ));
    }

    #[test]
    fn lambda_plane_grid_layout() {
        let (j, t) = demo();
        let map = scan_lambda_plane(&j, &t, (-2.0, 0.0), (-1.0, 1.0), 5).unwrap();
        assert_eq!(map.cells().len(), 25);
        assert_eq!(map.value1(0), -2.0);
        assert_eq!(map.value1(4), 0.0);
        assert_eq!(map.value2(0), -1.0);
        assert_eq!(map.value2(2), 0.0);
        // Every cell verdict must match a directly computed one.
        let probe = dispersion::mode_verdict(&j, &t, Complex64::new(-1.0, 0.5));
        let cell = map.cell(2, 3);
        assert_eq!(cell.stable, probe.stable);
        assert_eq!(cell.margin, probe.rh_margin);
    }

    #[test]
    fn lambda_plane_symmetric_under_conjugation() {
        let (j, t) = demo();
        let map = scan_lambda_plane(&j, &t, (-3.0, 0.0), (-2.5, 2.5), 11).unwrap();
        for i1 in 0..11 {
            for i2 in 0..11 {
                let a = map.cell(i1, i2);
                let b = map.cell(i1, 10 - i2);
                assert_eq!(a.stable, b.stable);
                assert_eq!(a.margin, b.margin);
                if let (Some(ga), Some(gb)) = (a.growth_rate, b.growth_rate) {
                    assert!((ga - gb).abs() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn lambda_plane_finds_the_instability_tongue() {
        // At the demo parameters the real axis is stable but large
        // imaginary parts destabilize.
        let (j, t) = demo();
        let map = scan_lambda_plane(&j, &t, (-3.0, 0.0), (0.0, 3.0), 13).unwrap();
        for i1 in 0..13 {
            assert!(map.cell(i1, 0).stable, "real axis cell {i1}");
        }
        assert!(map.stable_fraction() < 1.0, "tongue missing");
    }

    #[test]
    fn parameter_plane_validates_input() {
        let base = BrusselatorParams::new(1.3, 14.0).unwrap();
        let t = TransportParams::new(0.5, 0.5, 2.0, 1.0).unwrap();
        let ax = |axis, min, max| AxisSpec { axis, min, max };
        assert!(matches!(
            scan_parameter_plane(
                &base,
                &t,
                ax(ScanAxis::B, 0.5, 2.0),
                ax(ScanAxis::B, 0.5, 2.0),
                4,
                &[Complex64::new(-1.0, 0.0)],
            ),
            Err(ScanError::DuplicateAxes)
        ));
        assert!(matches!(
            scan_parameter_plane(
                &base,
                &t,
                ax(ScanAxis::TauU, 0.0, 2.0),
                ax(ScanAxis::B, 0.5, 2.0),
                4,
                &[Complex64::new(-1.0, 0.0)],
            ),
            Err(ScanError::InvalidRange { .. })
        ));
        assert!(matches!(
            scan_parameter_plane(
                &base,
                &t,
                ax(ScanAxis::TauU, 0.5, 2.0),
                ax(ScanAxis::B, 0.5, 2.0),
                4,
                &[],
            ),
            Err(ScanError::EmptyLambdaSamples)
        ));
    }

    #[test]
    fn parameter_plane_is_deterministic_and_contextful() {
        let base = BrusselatorParams::new(1.3, 14.0).unwrap();
        let t = TransportParams::new(0.5, 0.5, 2.0, 1.0).unwrap();
        let a1 = AxisSpec {
            axis: ScanAxis::TauU,
            min: 0.5,
            max: 4.0,
        };
        let a2 = AxisSpec {
            axis: ScanAxis::TauV,
            min: 0.5,
            max: 4.0,
        };
        let samples = [Complex64::new(-2.0, 0.0), Complex64::new(-1.0, 0.5)];
        let m1 = scan_parameter_plane(&base, &t, a1, a2, 6, &samples).unwrap();
        let m2 = scan_parameter_plane(&base, &t, a1, a2, 6, &samples).unwrap();
        assert_eq!(m1, m2);
        // Context lists everything not on an axis.
        let names: Vec<&str> = m1.fixed.iter().map(|(n, _)| n.as_str()).collect();
        assert!(names.contains(&"b"));
        assert!(names.contains(&"c"));
        assert!(names.contains(&"d_u"));
        assert!(!names.contains(&"tau_u"));
        assert!(names.contains(&"lambda_0_re"));
        assert!(names.contains(&"lambda_1_im"));
    }

    #[test]
    fn lambda_axis_overrides_samples() {
        // Scanning (b, lambda_im) with one sample: the cell at b = base.b
        // must match a direct mode_verdict at the overridden eigenvalue.
        let base = BrusselatorParams::new(1.3, 14.0).unwrap();
        let t = TransportParams::new(0.5, 0.5, 2.0, 1.0).unwrap();
        let a1 = AxisSpec {
            axis: ScanAxis::B,
            min: 1.3,
            max: 2.3,
        };
        let a2 = AxisSpec {
            axis: ScanAxis::LambdaIm,
            min: 0.0,
            max: 2.0,
        };
        let sample = [Complex64::new(-0.5, -123.0)];
        let map = scan_parameter_plane(&base, &t, a1, a2, 5, &sample).unwrap();
        let j = brusselator(&base).jacobian();
        let probe = dispersion::mode_verdict(&j, &t, Complex64::new(-0.5, 2.0));
        let cell = map.cell(0, 4);
        assert_eq!(cell.stable, probe.stable);
        assert_eq!(cell.margin, probe.rh_margin);
    }

    #[test]
    fn refined_grid_keeps_shared_points() {
        let (j, t) = demo();
        let coarse = scan_lambda_plane(&j, &t, (-2.0, 0.0), (0.0, 2.0), 5).unwrap();
        let fine = scan_lambda_plane(&j, &t, (-2.0, 0.0), (0.0, 2.0), 9).unwrap();
        for i1 in 0..5 {
            for i2 in 0..5 {
                let a = coarse.cell(i1, i2);
                let b = fine.cell(2 * i1, 2 * i2);
                assert_eq!(a.stable, b.stable);
                assert_eq!(a.margin, b.margin);
            }
        }
    }
}
