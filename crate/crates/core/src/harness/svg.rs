//! Minimal SVG line plots of seed-averaged complexity series.

use std::fmt::Write as _;

use super::report::RuleSummary;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 52.0;

const C_Q_COLOUR: &str = "#1f77b4";
const C_MU_COLOUR: &str = "#d62728";

struct Axes {
    x_max: f64,
    y_max: f64,
}

impl Axes {
    fn x(&self, t: usize) -> f64 {
        LEFT + (t as f64).log10() / self.x_max * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - v.clamp(0.0, self.y_max) / self.y_max * (HEIGHT - TOP - BOTTOM)
    }
}

fn series_max(mean: &[f64], std: &[f64]) -> f64 {
    mean.iter().zip(std).map(|(m, s)| m + s).fold(0.0, f64::max)
}

/// Mean `C_q` and `C_mu` against log-scaled `t`, each with a translucent
/// one-standard-deviation band.
pub fn render_rule_plot(summary: &RuleSummary) -> String {
    let t_last = summary.t.last().copied().unwrap_or(1).max(1);
    let mut y_top = series_max(&summary.c_q_mean, &summary.c_q_std);
    if let (Some(m), Some(s)) = (&summary.c_mu_mean, &summary.c_mu_std) {
        y_top = y_top.max(series_max(m, s));
    }
    let axes = Axes {
        x_max: (t_last as f64).log10().max(1.0),
        y_max: ((y_top * 2.0).ceil() / 2.0).max(1.0),
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">Rule {}</text>"#,
        WIDTH / 2.0,
        summary.rule
    );

    // axes frame
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        svg,
        r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" fill="none" stroke="black"/>"#
    );

    // decade ticks on t
    let mut decade = 1usize;
    while decade as f64 <= 10f64.powf(axes.x_max) + 0.5 {
        let x = axes.x(decade);
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{decade}</text>"##,
            y0 + 5.0,
            y0 + 19.0
        );
        decade = match decade.checked_mul(10) {
            Some(d) => d,
            None => break,
        };
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">t</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 10.0
    );

    // value ticks
    let steps = 5;
    for i in 0..=steps {
        let v = axes.y_max * i as f64 / steps as f64;
        let y = axes.y(v);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{v:.2}</text>"##,
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">bits</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    let mut series = vec![("C_q", C_Q_COLOUR, &summary.c_q_mean, &summary.c_q_std)];
    if let (Some(m), Some(s)) = (&summary.c_mu_mean, &summary.c_mu_std) {
        series.push(("C_mu", C_MU_COLOUR, m, s));
    }
    for (idx, (label, colour, mean, std)) in series.into_iter().enumerate() {
        let upper = summary
            .t
            .iter()
            .zip(mean.iter().zip(std))
            .map(|(&t, (m, s))| (t, m + s));
        let lower = summary
            .t
            .iter()
            .zip(mean.iter().zip(std))
            .rev()
            .map(|(&t, (m, s))| (t, m - s));
        let band: Vec<String> = upper
            .chain(lower)
            .map(|(t, v)| format!("{:.2},{:.2}", axes.x(t), axes.y(v)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polygon points="{}" fill="{colour}" fill-opacity="0.2" stroke="none"/>"#,
            band.join(" ")
        );
        let line: Vec<String> = summary
            .t
            .iter()
            .zip(mean)
            .map(|(&t, &m)| format!("{:.2},{:.2}", axes.x(t), axes.y(m)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
            line.join(" ")
        );
        let ly = TOP + 12.0 + 16.0 * idx as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{colour}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{label}</text>"#,
            x0 + 12.0,
            x0 + 32.0,
            x0 + 38.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}
