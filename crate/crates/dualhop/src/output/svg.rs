use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"];

/// Axis label and scale.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    /// Axis title.
    pub label: String,
    /// Base-10 logarithmic scale; non-positive values are dropped.
    pub log: bool,
}

/// One polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    /// Legend entry.
    pub label: String,
    /// (x, y) points in drawing order.
    pub points: Vec<(f64, f64)>,
    /// Dashed stroke.
    pub dashed: bool,
}

/// A line chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    /// Title above the plot.
    pub title: String,
    /// Horizontal axis.
    pub x: Axis,
    /// Vertical axis.
    pub y: Axis,
    /// Lines.
    pub lines: Vec<Line>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let f = raw / mag;
    mag * if f < 1.5 {
        1.0
    } else if f < 3.5 {
        2.0
    } else if f < 7.5 {
        5.0
    } else {
        10.0
    }
}

/// Lower bound, upper bound and labelled ticks, all in transformed coordinates.
type Scale = (f64, f64, Vec<(f64, String)>);

/// Range and tick positions in transformed coordinates.
fn scale(values: impl Iterator<Item = f64>, log: bool) -> Option<Scale> {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        return None;
    }
    if log {
        let (a, b) = (lo.floor(), hi.ceil().max(lo.floor() + 1.0));
        let every = ((b - a) / 8.0).ceil().max(1.0);
        let mut ticks = Vec::new();
        let mut k = a;
        while k <= b + 1e-9 {
            ticks.push((k, format!("1e{k}")));
            k += every;
        }
        return Some((a, b, ticks));
    }
    if hi - lo < 1e-12 {
        lo -= 0.5;
        hi += 0.5;
    }
    let step = nice_step(hi - lo);
    let (a, b) = ((lo / step).floor() * step, (hi / step).ceil() * step);
    let n = ((b - a) / step).round() as usize;
    let ticks = (0..=n)
        .map(|i| {
            let t = a + i as f64 * step;
            let t = if t.abs() < step * 1e-9 { 0.0 } else { t };
            (t, format!("{}", (t * 1e6).round() / 1e6))
        })
        .collect();
    Some((a, b, ticks))
}

/// Renders a chart as a standalone SVG document.
pub fn line_chart(chart: &Chart) -> String {
    let tx = |v: f64| if chart.x.log { v.log10() } else { v };
    let ty = |v: f64| if chart.y.log { v.log10() } else { v };
    let keep = |(x, y): &(f64, f64)| {
        x.is_finite() && y.is_finite() && (!chart.x.log || *x > 0.0) && (!chart.y.log || *y > 0.0)
    };
    let pts: Vec<Vec<(f64, f64)>> = chart
        .lines
        .iter()
        .map(|l| l.points.iter().filter(|p| keep(p)).map(|(x, y)| (tx(*x), ty(*y))).collect())
        .collect();
    let all = || pts.iter().flatten();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        LEFT + (WIDTH - LEFT - RIGHT) / 2.0,
        escape(&chart.title)
    );
    let (Some((x0, x1, xt)), Some((y0, y1, yt))) =
        (scale(all().map(|p| p.0), chart.x.log), scale(all().map(|p| p.1), chart.y.log))
    else {
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">no data</text>"#, WIDTH / 2.0, HEIGHT / 2.0);
        s.push_str("</svg>\n");
        return s;
    };
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let py = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

    for (t, label) in &xt {
        let x = px(*t);
        let _ = writeln!(s, r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#e0e0e0"/>"##, TOP + ph);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#, TOP + ph + 16.0);
    }
    for (t, label) in &yt {
        let y = py(*t);
        let _ = writeln!(s, r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e0e0e0"/>"##, LEFT + pw);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"#, LEFT - 6.0, y + 4.0);
    }
    let _ = writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 12.0,
        escape(&chart.x.label)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(&chart.y.label)
    );

    for (i, (line, p)) in chart.lines.iter().zip(&pts).enumerate() {
        let color = COLORS[i % COLORS.len()];
        let dash = if line.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        if !p.is_empty() {
            let path: Vec<String> = p.iter().map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y))).collect();
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.6"{dash}/>"#,
                path.join(" ")
            );
        }
        let ly = TOP + 14.0 + 18.0 * i as f64;
        let lx = LEFT + pw + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="1.6"{dash}/>"#,
            lx + 24.0
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 30.0, ly + 4.0, escape(&line.label));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_lines_and_skips_nonpositive_on_log_axis() {
        let chart = Chart {
            title: "a < b".into(),
            x: Axis { label: "x".into(), log: false },
            y: Axis { label: "y".into(), log: true },
            lines: vec![Line { label: "l".into(), points: vec![(0.0, 1.0), (1.0, 0.0), (2.0, 0.01)], dashed: true }],
        };
        let svg = line_chart(&chart);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(svg.contains("a &lt; b"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        let poly = svg.lines().find(|l| l.starts_with("<polyline")).unwrap();
        assert_eq!(poly.split(' ').filter(|t| t.contains(',')).count(), 2);
    }

    #[test]
    fn empty_chart_says_so() {
        let chart = Chart {
            title: String::new(),
            x: Axis { label: String::new(), log: false },
            y: Axis { label: String::new(), log: false },
            lines: vec![],
        };
        assert!(line_chart(&chart).contains("no data"));
    }
}
