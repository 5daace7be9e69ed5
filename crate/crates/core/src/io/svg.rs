//! Self-contained SVG line charts.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: [f64; 4] = [60.0, 150.0, 40.0, 55.0]; // left, right, top, bottom
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self { name: name.into(), points }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    pub series: Vec<Series>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl LineChart {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Self { title: title.into(), x_label: x_label.into(), y_label: y_label.into(), log_x: false, log_y: false, series: Vec::new() }
    }

    pub fn log_log(mut self) -> Self {
        self.log_x = true;
        self.log_y = true;
        self
    }

    pub fn with_series(mut self, s: Series) -> Self {
        self.series.push(s);
        self
    }

    fn tx(&self, x: f64) -> f64 {
        if self.log_x { x.log10() } else { x }
    }

    fn ty(&self, y: f64) -> f64 {
        if self.log_y { y.log10() } else { y }
    }

    /// Points that survive the axis transforms.
    fn plotted(&self, s: &Series) -> Vec<(f64, f64)> {
        s.points.iter().map(|&(x, y)| (self.tx(x), self.ty(y))).filter(|p| p.0.is_finite() && p.1.is_finite()).collect()
    }

    fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let mut bx = [f64::INFINITY, f64::NEG_INFINITY];
        let mut by = bx;
        for s in &self.series {
            for (x, y) in self.plotted(s) {
                bx = [bx[0].min(x), bx[1].max(x)];
                by = [by[0].min(y), by[1].max(y)];
            }
        }
        let fix = |b: [f64; 2]| {
            if !b[0].is_finite() {
                [0.0, 1.0]
            } else if b[1] - b[0] < 1e-300 {
                [b[0] - 0.5, b[1] + 0.5]
            } else {
                let pad = 0.04 * (b[1] - b[0]);
                [b[0] - pad, b[1] + pad]
            }
        };
        (fix(bx), fix(by))
    }

    fn tick_label(v: f64, log: bool) -> String {
        let v = if log { 10f64.powf(v) } else { v };
        if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) { format!("{v:.2e}") } else { format!("{v:.3}") }
    }

    pub fn render(&self) -> String {
        let (bx, by) = self.bounds();
        let pw = WIDTH - MARGIN[0] - MARGIN[1];
        let ph = HEIGHT - MARGIN[2] - MARGIN[3];
        let px = |x: f64| MARGIN[0] + (x - bx[0]) / (bx[1] - bx[0]) * pw;
        let py = |y: f64| MARGIN[2] + (by[1] - y) / (by[1] - by[0]) * ph;
        let mut o = String::new();
        let _ = writeln!(o, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#);
        let _ = writeln!(o, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(o, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, MARGIN[0] + pw / 2.0, escape(&self.title));
        let _ = writeln!(o, r#"<rect x="{}" y="{}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#, MARGIN[0], MARGIN[2]);
        for i in 0..=4 {
            let f = i as f64 / 4.0;
            let (xv, yv) = (bx[0] + f * (bx[1] - bx[0]), by[0] + f * (by[1] - by[0]));
            let _ = writeln!(o, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, px(xv), HEIGHT - MARGIN[3] + 16.0, Self::tick_label(xv, self.log_x));
            let _ = writeln!(o, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#, MARGIN[0] - 4.0, py(yv) + 4.0, Self::tick_label(yv, self.log_y));
        }
        let _ = writeln!(o, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, MARGIN[0] + pw / 2.0, HEIGHT - 12.0, escape(&self.x_label));
        let _ = writeln!(o, r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#, MARGIN[2] + ph / 2.0, MARGIN[2] + ph / 2.0, escape(&self.y_label));
        for (i, s) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let pts: Vec<String> = self.plotted(s).iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
            if !pts.is_empty() {
                let _ = writeln!(o, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
            }
            let ly = MARGIN[2] + 14.0 + 16.0 * i as f64;
            let lx = WIDTH - MARGIN[1] + 10.0;
            let _ = writeln!(o, r#"<line x1="{lx}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="2"/>"#, ly - 4.0, lx + 18.0, ly - 4.0);
            let _ = writeln!(o, r#"<text x="{}" y="{ly}">{}</text>"#, lx + 22.0, escape(&s.name));
        }
        o.push_str("</svg>\n");
        o
    }
}
