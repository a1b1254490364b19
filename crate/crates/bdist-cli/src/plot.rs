//! Waveform rendering for step functions: a compact two-row ASCII trace or
//! a standalone SVG. Filled dots mark distinguished point values, open dots
//! mark excluded interval endpoints.

use bdist::rational::Rational;
use bdist::step_fn::StepFunction;
use bdist::window::Window;

/// Column layout: window edge, then alternating midpoint and breakpoint
/// columns for every breakpoint inside the window, then the far edge.
fn columns(f: &StepFunction, w: &Window) -> (Vec<Rational>, Vec<bool>) {
    let inner: Vec<Rational> = f
        .breakpoints()
        .iter()
        .filter(|t| w.contains(t))
        .cloned()
        .collect();
    let mut cols = vec![w.lo().clone()];
    let mut is_bp = vec![false];
    let mut prev = w.lo().clone();
    for t in &inner {
        if *t != prev {
            cols.push(Rational::midpoint(&prev, t));
            is_bp.push(false);
        }
        cols.push(t.clone());
        is_bp.push(true);
        prev = t.clone();
    }
    if *w.hi() != prev {
        cols.push(Rational::midpoint(&prev, w.hi()));
        is_bp.push(false);
        cols.push(w.hi().clone());
        is_bp.push(false);
    }
    (cols, is_bp)
}

pub fn render_ascii(f: &StepFunction, w: &Window) -> String {
    let (cols, is_bp) = columns(f, w);
    let mut row1 = String::new();
    let mut row0 = String::new();
    let mut marks = String::new();
    for (i, t) in cols.iter().enumerate() {
        let v = f.eval(t);
        if is_bp[i] {
            let l = f.left_limit(t);
            let r = f.right_limit(t);
            let distinguished = v != l || v != r;
            let (c1, c0) = if v.is_one() {
                (
                    if distinguished { '\u{25CF}' } else { '\u{2500}' },
                    if l.is_zero() || r.is_zero() { '\u{25CB}' } else { ' ' },
                )
            } else {
                (
                    if l.is_one() || r.is_one() { '\u{25CB}' } else { ' ' },
                    if distinguished { '\u{25CF}' } else { '\u{2500}' },
                )
            };
            row1.push(c1);
            row0.push(c0);
            marks.push('^');
        } else {
            row1.push(if v.is_one() { '\u{2500}' } else { ' ' });
            row0.push(if v.is_zero() { '\u{2500}' } else { ' ' });
            marks.push(' ');
        }
    }
    let labels: Vec<String> = cols
        .iter()
        .zip(&is_bp)
        .filter(|(_, bp)| **bp)
        .map(|(t, _)| t.to_string())
        .collect();
    let mut out = String::new();
    out.push_str(&format!("1: {row1}\n"));
    out.push_str(&format!("0: {row0}\n"));
    out.push_str(&format!("   {marks}\n"));
    out.push_str(&format!("t: {}\n", labels.join(", ")));
    out
}

pub fn render_svg(f: &StepFunction, w: &Window) -> String {
    let (cols, is_bp) = columns(f, w);
    let span = w.hi() - w.lo();
    let scale_x = |t: &Rational| -> f64 {
        let frac = if span.is_zero() {
            0.5
        } else {
            ratio_to_f64(&((t - w.lo()) / span.clone()))
        };
        40.0 + 720.0 * frac
    };
    let y_of = |one: bool| -> f64 { if one { 40.0 } else { 100.0 } };
    let mut body = String::new();
    // horizontal segments per constant piece between adjacent columns
    let mut seg_start = scale_x(&cols[0]);
    let mut seg_y = y_of(f.eval(&cols[0]).is_one());
    for col in cols.iter().skip(1) {
        let x = scale_x(col);
        let y = y_of(f.eval(col).is_one());
        if (y - seg_y).abs() > f64::EPSILON {
            body.push_str(&format!(
                "  <line x1=\"{seg_start:.2}\" y1=\"{seg_y}\" x2=\"{x:.2}\" y2=\"{seg_y}\" stroke=\"black\"/>\n"
            ));
            body.push_str(&format!(
                "  <line x1=\"{x:.2}\" y1=\"{seg_y}\" x2=\"{x:.2}\" y2=\"{y}\" stroke=\"black\" stroke-dasharray=\"3 3\"/>\n"
            ));
            seg_start = x;
            seg_y = y;
        }
    }
    let end = scale_x(&cols[cols.len() - 1]);
    body.push_str(&format!(
        "  <line x1=\"{seg_start:.2}\" y1=\"{seg_y}\" x2=\"{end:.2}\" y2=\"{seg_y}\" stroke=\"black\"/>\n"
    ));
    // dots at breakpoints
    for (i, t) in cols.iter().enumerate() {
        if !is_bp[i] {
            continue;
        }
        let x = scale_x(t);
        let v = f.eval(t);
        let l = f.left_limit(t);
        let r = f.right_limit(t);
        if v != l || v != r {
            body.push_str(&format!(
                "  <circle cx=\"{x:.2}\" cy=\"{}\" r=\"4\" fill=\"black\"/>\n",
                y_of(v.is_one())
            ));
        }
        for side in [l, r] {
            if side != v {
                body.push_str(&format!(
                    "  <circle cx=\"{x:.2}\" cy=\"{}\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n",
                    y_of(side.is_one())
                ));
            }
        }
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 140\">\n\
         \x20 <text x=\"10\" y=\"44\" font-size=\"12\">1</text>\n\
         \x20 <text x=\"10\" y=\"104\" font-size=\"12\">0</text>\n\
         {body}</svg>\n"
    )
}

fn ratio_to_f64(r: &Rational) -> f64 {
    // safe for display purposes only
    let num: f64 = r.numerator().to_string().parse().unwrap_or(0.0);
    let den: f64 = r.denominator().to_string().parse().unwrap_or(1.0);
    num / den
}
