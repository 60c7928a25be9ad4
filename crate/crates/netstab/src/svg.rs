//! Static SVG heatmaps of region maps. Presentation only: one fill for
//! stable cells, another for unstable ones, optional eigenvalue markers.

use std::fmt::Write as _;

use netstab_core::scan::RegionMap;
use netstab_core::Complex64;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 560.0;
const PLOT: (f64, f64, f64, f64) = (80.0, 30.0, 670.0, 490.0);
const STABLE_FILL: &str = "#4878b0";
const UNSTABLE_FILL: &str = "#c8503c";

/// Renders the map with axis1 horizontal and axis2 vertical (increasing
/// upward). `overlay` points outside the scanned ranges are dropped.
pub fn render_region_svg(map: &RegionMap, overlay: &[Complex64]) -> String {
    let (x0, y0, x1, y1) = PLOT;
    let res = map.resolution;
    let cell_w = (x1 - x0) / res as f64;
    let cell_h = (y1 - y0) / res as f64;

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"sans-serif\" font-size=\"13\">"
    )
    .unwrap();
    writeln!(
        out,
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    )
    .unwrap();

    for i1 in 0..res {
        for i2 in 0..res {
            let cell = map.cell(i1, i2);
            let fill = if cell.stable {
                STABLE_FILL
            } else {
                UNSTABLE_FILL
            };
            let x = x0 + i1 as f64 * cell_w;
            let y = y1 - (i2 + 1) as f64 * cell_h;
            writeln!(
                out,
                "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{fill}\"/>",
                cell_w + 0.5,
                cell_h + 0.5
            )
            .unwrap();
        }
    }

    let span1 = map.axis1.max - map.axis1.min;
    let span2 = map.axis2.max - map.axis2.min;
    for z in overlay {
        if z.re < map.axis1.min
            || z.re > map.axis1.max
            || z.im < map.axis2.min
            || z.im > map.axis2.max
        {
            continue;
        }
        let x = x0 + (z.re - map.axis1.min) / span1 * (x1 - x0);
        let y = y1 - (z.im - map.axis2.min) / span2 * (y1 - y0);
        writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3.5\" fill=\"#111\" stroke=\"white\" stroke-width=\"1\"/>"
        )
        .unwrap();
    }

    writeln!(
        out,
        "<rect x=\"{x0}\" y=\"{y0}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333\"/>",
        x1 - x0,
        y1 - y0
    )
    .unwrap();
    let label = |v: f64| {
        format!("{v:.3}")
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    };
    writeln!(
        out,
        "<text x=\"{x0}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
        y1 + 20.0,
        label(map.axis1.min)
    )
    .unwrap();
    writeln!(
        out,
        "<text x=\"{x1}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
        y1 + 20.0,
        label(map.axis1.max)
    )
    .unwrap();
    writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
        (x0 + x1) / 2.0,
        y1 + 40.0,
        map.axis1.axis.name()
    )
    .unwrap();
    writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>",
        x0 - 8.0,
        y1,
        label(map.axis2.min)
    )
    .unwrap();
    writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>",
        x0 - 8.0,
        y0 + 12.0,
        label(map.axis2.max)
    )
    .unwrap();
    writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 {} {})\">{}</text>",
        x0 - 50.0,
        (y0 + y1) / 2.0,
        x0 - 50.0,
        (y0 + y1) / 2.0,
        map.axis2.axis.name()
    )
    .unwrap();

    let fixed: Vec<String> = map
        .fixed
        .iter()
        .map(|(name, value)| format!("{name}={}", label(*value)))
        .collect();
    writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"#555\">{}</text>",
        (x0 + x1) / 2.0,
        HEIGHT - 10.0,
        fixed.join("  ")
    )
    .unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}
