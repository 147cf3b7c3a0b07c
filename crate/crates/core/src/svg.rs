//! Static SVG line plots: polylines, axes, and an optional diagonal.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Upper limits of the axes; both start at zero.
    pub x_max: f64,
    pub y_max: f64,
    pub diagonal: bool,
}

impl Plot {
    /// Axis limits from the data: the 75th percentile of all coordinates,
    /// times 1.5, so that curves escaping to infinity do not flatten the rest.
    pub fn auto(title: &str, series: &[Series]) -> Self {
        let mut coords: Vec<f64> = series
            .iter()
            .flat_map(|s| s.points.iter().flat_map(|&(x, y)| [x, y]))
            .filter(|v| v.is_finite())
            .collect();
        coords.sort_by(f64::total_cmp);
        let q = coords.get(coords.len() * 3 / 4).copied().unwrap_or(1.0);
        let max = if q > 0.0 { 1.5 * q } else { 1.0 };
        Plot {
            title: title.into(),
            x_label: "a".into(),
            y_label: "b".into(),
            x_max: max,
            y_max: max,
            diagonal: true,
        }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (WIDTH - 2.0 * MARGIN) * x / self.x_max
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * y / self.y_max
    }

    pub fn render(&self, series: &[Series]) -> String {
        let mut out = String::new();
        let (x0, x1, y0, y1) = (self.px(0.0), self.px(self.x_max), self.py(0.0), self.py(self.y_max));
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        let _ = writeln!(
            out,
            r#"<defs><clipPath id="plot"><rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}"/></clipPath></defs>"#,
            x1 - x0,
            y0 - y1
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            out,
            r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" stroke="black" fill="none"/>"#
        );
        for i in 0..=4 {
            let (tx, ty) = (self.x_max * i as f64 / 4.0, self.y_max * i as f64 / 4.0);
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
                self.px(tx),
                y0 + 16.0,
                tick(tx)
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#,
                x0 - 6.0,
                self.py(ty) + 4.0,
                tick(ty)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
            (x0 + x1) / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 16 {:.2})">{}</text>"#,
            (y0 + y1) / 2.0,
            (y0 + y1) / 2.0,
            escape(&self.y_label)
        );
        let _ = writeln!(out, r#"<g clip-path="url(#plot)" fill="none" stroke-width="1.5">"#);
        if self.diagonal {
            let m = self.x_max.min(self.y_max);
            let _ = writeln!(
                out,
                r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 4"/>"#,
                self.px(m),
                self.py(m)
            );
        }
        for (i, s) in series.iter().enumerate() {
            let pts: Vec<String> = s
                .points
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|&(x, y)| format!("{:.2},{:.2}", self.px(x), self.py(y)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline stroke="{}" points="{}"><title>{}</title></polyline>"#,
                PALETTE[i % PALETTE.len()],
                pts.join(" "),
                escape(&s.label)
            );
        }
        let _ = writeln!(out, "</g>");
        for (i, s) in series.iter().enumerate() {
            let y = MARGIN + 14.0 * i as f64;
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{y:.2}" font-family="sans-serif" font-size="11" fill="{}">{}</text>"#,
                x1 - 90.0,
                PALETTE[i % PALETTE.len()],
                escape(&s.label)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn tick(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1000.0 || v.abs() < 0.01 {
        format!("{v:.1e}")
    } else {
        format!("{}", (v * 100.0).round() / 100.0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_one_polyline_per_series() {
        let series = vec![
            Series {
                label: "k=1 <+>".into(),
                points: vec![(1.0, 5.0), (2.0, 2.0), (5.0, 1.0)],
            },
            Series {
                label: "k=1 -".into(),
                points: vec![(0.0, 0.0), (f64::NAN, 1.0), (3.0, 3.0)],
            },
        ];
        let svg = Plot::auto("curves", &series).render(&series);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("k=1 &lt;+&gt;"));
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn auto_limits_ignore_outliers() {
        let mut pts: Vec<(f64, f64)> = (1..=20).map(|i| (i as f64, i as f64)).collect();
        pts.push((1e9, 1.0));
        let plot = Plot::auto("t", &[Series { label: "s".into(), points: pts }]);
        assert!(plot.x_max < 100.0);
    }
}
