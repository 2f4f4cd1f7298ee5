//! Minimal SVG 1.1 emitter: nested range boundaries as polylines, axes, and
//! "+" markers at the maximum-modulus eigenvalues.

use num_complex::Complex64;

use numrange::range::ConvexRegion;

const WIDTH: f64 = 640.0;
const MARGIN_FRACTION: f64 = 0.05;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
    height: f64,
}

impl Frame {
    fn fit(points: &[Complex64]) -> Frame {
        let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            min_x = min_x.min(p.re);
            max_x = max_x.max(p.re);
            min_y = min_y.min(p.im);
            max_y = max_y.max(p.im);
        }
        if !min_x.is_finite() {
            (min_x, max_x, min_y, max_y) = (-1.0, 1.0, -1.0, 1.0);
        }
        let span_x = (max_x - min_x).max(1e-9);
        let span_y = (max_y - min_y).max(1e-9);
        let margin = MARGIN_FRACTION * span_x.max(span_y);
        min_x -= margin;
        max_x += margin;
        min_y -= margin;
        max_y += margin;
        let scale = WIDTH / (max_x - min_x);
        Frame {
            min_x,
            min_y,
            scale,
            height: (max_y - min_y) * scale,
        }
    }

    fn x(&self, v: f64) -> f64 {
        (v - self.min_x) * self.scale
    }

    /// SVG y grows downward.
    fn y(&self, v: f64) -> f64 {
        self.height - (v - self.min_y) * self.scale
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.6}")
}

/// Renders nested boundaries (one polyline per rank) plus one "+" marker
/// per eigenvalue of maximum modulus.
pub fn render_ranges(
    boundaries: &[(usize, &ConvexRegion)],
    eigenvalue_markers: &[Complex64],
) -> String {
    let mut all_points: Vec<Complex64> = Vec::new();
    for (_, region) in boundaries {
        all_points.extend(region.vertices.iter().copied());
    }
    all_points.extend(eigenvalue_markers.iter().copied());
    let frame = Frame::fit(&all_points);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        fmt(WIDTH),
        fmt(frame.height),
        fmt(WIDTH),
        fmt(frame.height)
    ));

    // Axes through the origin, when visible.
    out.push_str(&format!(
        "  <g stroke=\"#999999\" stroke-width=\"1\">\n    \
         <line x1=\"0\" y1=\"{y0}\" x2=\"{w}\" y2=\"{y0}\"/>\n    \
         <line x1=\"{x0}\" y1=\"0\" x2=\"{x0}\" y2=\"{h}\"/>\n  </g>\n",
        y0 = fmt(frame.y(0.0)),
        x0 = fmt(frame.x(0.0)),
        w = fmt(WIDTH),
        h = fmt(frame.height)
    ));

    for (idx, (k, region)) in boundaries.iter().enumerate() {
        if region.empty || region.vertices.is_empty() {
            continue;
        }
        let color = PALETTE[idx % PALETTE.len()];
        let mut points: Vec<String> = region
            .vertices
            .iter()
            .map(|v| format!("{},{}", fmt(frame.x(v.re)), fmt(frame.y(v.im))))
            .collect();
        // Close the boundary.
        points.push(points[0].clone());
        out.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" \
             data-rank=\"{k}\" points=\"{}\"/>\n",
            points.join(" ")
        ));
    }

    for z in eigenvalue_markers {
        let (cx, cy) = (frame.x(z.re), frame.y(z.im));
        let arm = 5.0;
        out.push_str(&format!(
            "  <path stroke=\"#000000\" stroke-width=\"1.5\" d=\"M {x1} {cy} L {x2} {cy} M {cx} {y1} L {cx} {y2}\"/>\n",
            x1 = fmt(cx - arm),
            x2 = fmt(cx + arm),
            y1 = fmt(cy - arm),
            y2 = fmt(cy + arm),
            cx = fmt(cx),
            cy = fmt(cy)
        ));
    }

    out.push_str("</svg>\n");
    out
}

/// Renders a lattice scan: inside cells as filled squares plus the
/// bounding circle.
pub fn render_lattice(points: &[Complex64], delta: f64, bounding_radius: f64) -> String {
    let corners = [
        Complex64::new(-bounding_radius, -bounding_radius),
        Complex64::new(bounding_radius, bounding_radius),
    ];
    let mut all: Vec<Complex64> = points.to_vec();
    all.extend_from_slice(&corners);
    let frame = Frame::fit(&all);
    let cell = delta * frame.scale;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        fmt(WIDTH),
        fmt(frame.height),
        fmt(WIDTH),
        fmt(frame.height)
    ));
    out.push_str(&format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#999999\"/>\n",
        fmt(frame.x(0.0)),
        fmt(frame.y(0.0)),
        fmt(bounding_radius * frame.scale)
    ));
    out.push_str("  <g fill=\"#1f77b4\">\n");
    for p in points {
        out.push_str(&format!(
            "    <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>\n",
            fmt(frame.x(p.re) - cell / 2.0),
            fmt(frame.y(p.im) - cell / 2.0),
            fmt(cell),
            fmt(cell)
        ));
    }
    out.push_str("  </g>\n</svg>\n");
    out
}
