//! Minimal deterministic SVG line charts: fixed canvas, optional log axes,
//! one polyline per series plus an optional reference curve.

pub struct Series {
    pub label: String,
    pub color: String,
    pub points: Vec<(f64, f64)>,
}

pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    pub series: Vec<Series>,
    pub reference: Option<Series>,
}

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 78.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 44.0;
const BOTTOM: f64 = 56.0;

/// Grey shade for the i-th of n series, lightest first, black last.
pub fn grey_shade(index: usize, count: usize) -> String {
    let level = if count <= 1 {
        0
    } else {
        (204.0 * (1.0 - index as f64 / (count - 1) as f64)).round() as u8
    };
    format!("#{level:02x}{level:02x}{level:02x}")
}

impl Chart {
    pub fn render(&self) -> String {
        let tx = |v: f64| if self.log_x { v.log10() } else { v };
        let ty = |v: f64| if self.log_y { v.log10() } else { v };

        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for s in self.series.iter().chain(self.reference.iter()) {
            for &(x, y) in &s.points {
                xs.push(tx(x));
                ys.push(ty(y));
            }
        }
        let (x_min, x_max) = padded_range(&xs);
        let (y_min, y_max) = padded_range(&ys);

        let plot_w = WIDTH - LEFT - RIGHT;
        let plot_h = HEIGHT - TOP - BOTTOM;
        let px = |v: f64| LEFT + (v - x_min) / (x_max - x_min) * plot_w;
        let py = |v: f64| TOP + plot_h - (v - y_min) / (y_max - y_min) * plot_h;

        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"monospace\" font-size=\"12\">\n"
        ));
        svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
            LEFT + plot_w / 2.0,
            escape(&self.title)
        ));

        // Frame and ticks.
        svg.push_str(&format!(
            "<rect x=\"{LEFT:.2}\" y=\"{TOP:.2}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" \
             fill=\"none\" stroke=\"black\"/>\n"
        ));
        for k in 0..=4 {
            let fx = x_min + (x_max - x_min) * k as f64 / 4.0;
            let fy = y_min + (y_max - y_min) * k as f64 / 4.0;
            let xp = px(fx);
            let yp = py(fy);
            svg.push_str(&format!(
                "<line x1=\"{xp:.2}\" y1=\"{:.2}\" x2=\"{xp:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
                TOP + plot_h,
                TOP + plot_h + 5.0
            ));
            svg.push_str(&format!(
                "<text x=\"{xp:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
                TOP + plot_h + 20.0,
                tick_label(fx, self.log_x)
            ));
            svg.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{yp:.2}\" x2=\"{LEFT:.2}\" y2=\"{yp:.2}\" stroke=\"black\"/>\n",
                LEFT - 5.0
            ));
            svg.push_str(&format!(
                "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
                LEFT - 9.0,
                yp + 4.0,
                tick_label(fy, self.log_y)
            ));
        }
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            LEFT + plot_w / 2.0,
            HEIGHT - 12.0,
            escape(&self.x_label)
        ));
        svg.push_str(&format!(
            "<text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{}</text>\n",
            TOP + plot_h / 2.0,
            TOP + plot_h / 2.0,
            escape(&self.y_label)
        ));

        // Reference first so data draws on top of it.
        let mut legend_y = TOP + 10.0;
        let legend_x = WIDTH - RIGHT + 16.0;
        for (s, width) in self
            .reference
            .iter()
            .map(|s| (s, 1.5))
            .chain(self.series.iter().map(|s| (s, 1.0)))
        {
            let path: Vec<String> = s
                .points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", px(tx(x)), py(ty(y))))
                .collect();
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{width}\"/>\n",
                path.join(" "),
                s.color
            ));
            svg.push_str(&format!(
                "<line x1=\"{legend_x:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\" stroke-width=\"{width}\"/>\n",
                legend_y - 4.0,
                legend_x + 22.0,
                legend_y - 4.0,
                s.color
            ));
            svg.push_str(&format!(
                "<text x=\"{:.2}\" y=\"{legend_y:.2}\">{}</text>\n",
                legend_x + 28.0,
                escape(&s.label)
            ));
            legend_y += 18.0;
        }

        svg.push_str("</svg>\n");
        svg
    }
}

fn padded_range(values: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        if v.is_finite() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 0.5 * lo.abs().max(1.0) };
    (lo - pad, hi + pad)
}

fn tick_label(transformed: f64, log: bool) -> String {
    let v = if log { 10f64.powf(transformed) } else { transformed };
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs();
    if (0.001..10000.0).contains(&magnitude) {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
