//! Deterministic SVG rendering of an environment with path overlays:
//! a cost heatmap, filled obstacle squares, one polyline per path through
//! the cell centers, and a legend of `name: cost` entries.

use crate::environment::GridEnvironment;
use crate::grid::GridPos;

/// Pixel size of one grid cell.
const CELL_PX: f64 = 12.0;
/// Outer margin around the grid.
const MARGIN_PX: f64 = 10.0;
/// Vertical space per legend line.
const LEGEND_LINE_PX: f64 = 16.0;

/// Fixed stroke palette; paths cycle through it in order.
const PALETTE: [&str; 9] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#17becf",
    "#555555",
];

const OBSTACLE_FILL: &str = "#1a1a1a";

/// One path overlay: polyline through the cell centers plus a legend entry
/// rendered as `label: cost`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotPath {
    pub label: String,
    pub positions: Vec<GridPos>,
    pub cost: f64,
}

fn escape_xml(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Linear light-to-dark blue ramp over the normalized cost.
fn heat_color(t: f64) -> String {
    let lerp = |a: f64, b: f64| a + (b - a) * t;
    format!(
        "rgb({},{},{})",
        lerp(235.0, 8.0).round() as u8,
        lerp(244.0, 64.0).round() as u8,
        lerp(255.0, 129.0).round() as u8
    )
}

/// Renders the SVG document. Output bytes are a pure function of the inputs:
/// identical environment and paths give identical files.
pub fn emit_plot(env: &GridEnvironment, paths: &[PlotPath]) -> String {
    let (n_x, n_y) = (env.n_x(), env.n_y());
    let legend_px = LEGEND_LINE_PX * paths.len() as f64;
    let width = 2.0 * MARGIN_PX + n_x as f64 * CELL_PX;
    let height = 2.0 * MARGIN_PX + legend_px + n_y as f64 * CELL_PX;
    let grid_top = MARGIN_PX + legend_px;

    // Row 0 is drawn at the bottom, chart-style.
    let cell_x = |col: i64| MARGIN_PX + col as f64 * CELL_PX;
    let cell_y = |row: i64| grid_top + (n_y as i64 - 1 - row) as f64 * CELL_PX;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.1}\" height=\"{height:.1}\" \
         viewBox=\"0 0 {width:.1} {height:.1}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{width:.1}\" height=\"{height:.1}\" fill=\"#ffffff\"/>\n"
    ));

    let (lo, hi) = env.cost_range();
    let span = hi - lo;
    for row in 0..n_y as i64 {
        for col in 0..n_x as i64 {
            let pos = GridPos::new(col, row);
            let fill = if env.is_obstacle(&pos) {
                OBSTACLE_FILL.to_string()
            } else {
                let t = if span > 0.0 {
                    (env.cost_at(&pos) - lo) / span
                } else {
                    0.5
                };
                heat_color(t)
            };
            svg.push_str(&format!(
                "  <rect x=\"{:.1}\" y=\"{:.1}\" width=\"{CELL_PX:.1}\" height=\"{CELL_PX:.1}\" \
                 fill=\"{fill}\"/>\n",
                cell_x(col),
                cell_y(row)
            ));
        }
    }

    for (i, path) in paths.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = path
            .positions
            .iter()
            .map(|p| {
                format!(
                    "{:.1},{:.1}",
                    cell_x(p.col) + CELL_PX / 2.0,
                    cell_y(p.row) + CELL_PX / 2.0
                )
            })
            .collect();
        svg.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\" points=\"{}\"/>\n",
            points.join(" ")
        ));
    }

    for (i, path) in paths.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = MARGIN_PX + i as f64 * LEGEND_LINE_PX;
        svg.push_str(&format!(
            "  <rect x=\"{MARGIN_PX:.1}\" y=\"{:.1}\" width=\"10.0\" height=\"10.0\" fill=\"{color}\"/>\n",
            y + 1.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"11\">{}: {:.3}</text>\n",
            MARGIN_PX + 14.0,
            y + 10.0,
            escape_xml(&path.label),
            path.cost
        ));
    }

    svg.push_str("</svg>\n");
    svg
}
