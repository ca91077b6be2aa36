//! SVG and TikZ output.
//!
//! Coordinates stay exact through the viewport transform and are rounded to
//! fixed decimals (half-to-even) only when written. Values in Q(√d) are
//! bracketed with integer square roots until both ends of the bracket round
//! to the same decimal, so output never depends on platform floating point.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use thiserror::Error;

use crate::constructions::{Family, NestedFigure, Proof2Figure};
use crate::exact::{QuadExt, Rational, Scalar, Sign};
use crate::geometry::{Point, Polygon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("precision must be at least 1")]
    Precision,
    #[error("canvas size must be at least 16, got {0}")]
    CanvasSize(u32),
    #[error("stroke width must be positive and finite")]
    StrokeWidth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Tikz,
}

impl RenderFormat {
    pub fn extension(self) -> &'static str {
        match self {
            RenderFormat::Svg => "svg",
            RenderFormat::Tikz => "tex",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Width and height of the SVG canvas in pixels.
    pub canvas_size: u32,
    /// SVG stroke width in pixels; TikZ uses `0.4pt` times this.
    pub stroke_width: f64,
    /// Decimal places written for every coordinate.
    pub precision: u32,
    pub show_labels: bool,
    pub format: RenderFormat,
    /// Wrap TikZ output in a `standalone` document.
    pub tikz_standalone: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            canvas_size: 512,
            stroke_width: 1.0,
            precision: 6,
            show_labels: true,
            format: RenderFormat::Svg,
            tikz_standalone: true,
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), RenderError> {
        if self.precision < 1 {
            return Err(RenderError::Precision);
        }
        if self.canvas_size < 16 {
            return Err(RenderError::CanvasSize(self.canvas_size));
        }
        if !(self.stroke_width.is_finite() && self.stroke_width > 0.0) {
            return Err(RenderError::StrokeWidth);
        }
        Ok(())
    }
}

/// Anything the renderer can draw.
#[derive(Debug, Clone, PartialEq)]
pub enum Figure {
    Choupei(NestedFigure<Rational>),
    Proof2(Proof2Figure),
    Bhaskara(NestedFigure<QuadExt>),
}

impl Figure {
    pub fn family(&self) -> Family {
        match self {
            Figure::Choupei(_) => Family::Choupei,
            Figure::Proof2(_) => Family::Proof2,
            Figure::Bhaskara(_) => Family::Bhaskara,
        }
    }

    /// `<family>_<a1>_<b1>_<string|depth>.<ext>`, with `/` in fractions
    /// written as `-`.
    pub fn file_name(&self, format: RenderFormat) -> String {
        let (sides, tail) = match self {
            Figure::Choupei(f) => (&f.sides, f.string.as_ref().map(|s| s.to_string()).unwrap_or_default()),
            Figure::Proof2(f) => (&f.base.sides, f.depth().to_string()),
            Figure::Bhaskara(f) => (&f.sides, f.depth().to_string()),
        };
        let num = |r: &Rational| r.to_string().replace('/', "-");
        format!("{}_{}_{}_{}.{}", self.family(), num(sides.a1()), num(sides.b1()), tail, format.extension())
    }
}

impl From<NestedFigure<Rational>> for Figure {
    fn from(f: NestedFigure<Rational>) -> Self {
        Figure::Choupei(f)
    }
}

impl From<Proof2Figure> for Figure {
    fn from(f: Proof2Figure) -> Self {
        Figure::Proof2(f)
    }
}

impl From<NestedFigure<QuadExt>> for Figure {
    fn from(f: NestedFigure<QuadExt>) -> Self {
        Figure::Bhaskara(f)
    }
}

/// Round `value` to `digits` decimals, ties to even.
pub fn round_half_even(value: &Rational, digits: u32) -> BigInt {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled_num = value.numer() * &scale;
    let den = value.denom();
    let (q, r) = scaled_num.div_mod_floor(den);
    let twice: BigInt = &r * 2u32;
    match twice.cmp(den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_odd() {
                q + 1
            } else {
                q
            }
        }
    }
}

fn format_fixed(units: &BigInt, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let neg = units.is_negative();
    let (whole, frac) = units.abs().div_rem(&scale);
    let frac = frac.to_string();
    let pad = "0".repeat(digits as usize - frac.len());
    format!("{}{}.{}{}", if neg { "-" } else { "" }, whole, pad, frac)
}

/// Fixed-point decimal of an exact scalar.
pub fn to_decimal<S: Scalar>(value: &S, digits: u32) -> String {
    let mut guard = digits + 4;
    loop {
        let (lo, hi) = value.enclose(guard);
        let a = round_half_even(&lo, digits);
        let b = round_half_even(&hi, digits);
        if a == b {
            return format_fixed(&a, digits);
        }
        // An irrational value is never exactly on a tie, so this terminates.
        guard *= 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Anchor {
    Centre,
    Dir(i8, i8),
}

impl Anchor {
    fn from_signs(x: Sign, y: Sign) -> Anchor {
        match (x.as_i8(), y.as_i8()) {
            (0, 0) => Anchor::Centre,
            (dx, dy) => Anchor::Dir(dx, dy),
        }
    }

    fn tikz(self) -> &'static str {
        match self {
            Anchor::Centre | Anchor::Dir(0, 0) => "",
            Anchor::Dir(0, 1) => "above",
            Anchor::Dir(0, _) => "below",
            Anchor::Dir(1, 0) => "right",
            Anchor::Dir(_, 0) => "left",
            Anchor::Dir(1, 1) => "above right",
            Anchor::Dir(_, 1) => "above left",
            Anchor::Dir(1, _) => "below right",
            Anchor::Dir(_, _) => "below left",
        }
    }
}

struct Label<S> {
    at: Point<S>,
    text: &'static str,
    anchor: Anchor,
}

struct Foot<S> {
    corner: Point<S>,
    foot: Point<S>,
    along: Point<S>,
}

/// Renderer-neutral description of a figure.
struct Scene<S> {
    side: S,
    outer: Polygon<S>,
    layers: Vec<(Vec<Polygon<S>>, Polygon<S>)>,
    feet: Vec<Foot<S>>,
    labels: Vec<Label<S>>,
}

fn centre_anchor<S: Scalar>(p: &Point<S>, centre: &Point<S>) -> Anchor {
    let d = p.sub(centre);
    Anchor::from_signs(d.x.sign(), d.y.sign())
}

/// Outward normal of the square edge that `p` was cut from.
fn edge_anchor<S: Scalar>(square: &Polygon<S>, i: usize) -> Anchor {
    let v = square.vertices();
    let e = v[(i + 1) % 4].sub(&v[i]);
    Anchor::from_signs(e.y.sign(), (-e.x).sign())
}

fn scene_from_nested<S: Scalar>(fig: &NestedFigure<S>, show_labels: bool) -> Scene<S> {
    let outer = fig.outer_square().clone();
    let v = outer.vertices();
    let side = v[1].x.clone() - &v[0].x;
    let layers = fig.layers.iter().map(|l| (l.triangles.clone(), l.inner.clone())).collect();
    let mut labels = Vec::new();
    if show_labels && fig.depth() <= 2 {
        let centre = Point::new(side.scale(&crate::exact::ratio(1, 2)), side.scale(&crate::exact::ratio(1, 2)));
        for (p, text) in v.iter().zip(["D", "C", "B", "A"]) {
            labels.push(Label { at: p.clone(), text, anchor: centre_anchor(p, &centre) });
        }
        if fig.family != Family::Bhaskara {
            let names: [[&'static str; 4]; 2] = [["G", "F", "E", "H"], ["J", "I", "L", "K"]];
            for (layer, names) in fig.layers.iter().zip(names) {
                for (i, (p, text)) in layer.inner.vertices().iter().zip(names).enumerate() {
                    labels.push(Label { at: p.clone(), text, anchor: edge_anchor(&layer.square, i) });
                }
            }
        }
    }
    Scene { side, outer, layers, feet: Vec::new(), labels }
}

fn scene_from_proof2(fig: &Proof2Figure, show_labels: bool) -> Scene<Rational> {
    let mut scene = scene_from_nested(&fig.base, show_labels);
    for stage in &fig.feet {
        for i in 0..4 {
            let (from, to) = &stage.carriers[i];
            let foot = stage.feet[i].clone();
            let along = if &foot == to { from.sub(&foot) } else { to.sub(&foot) };
            scene.feet.push(Foot { corner: stage.corners[i].clone(), foot, along });
        }
    }
    if show_labels && fig.depth() == 1 {
        let stage = &fig.feet[0];
        for (i, text) in [(2usize, "M"), (0, "N")] {
            let d = stage.feet[i].sub(&stage.corners[i]);
            scene.labels.push(Label {
                at: stage.feet[i].clone(),
                text,
                anchor: Anchor::from_signs(d.x.sign(), d.y.sign()),
            });
        }
    }
    scene
}

/// Vector scaled so its larger coordinate has magnitude 1 (a unit vector
/// whenever it is axis-aligned, which holds for every foot segment here).
fn max_norm_unit<S: Scalar>(v: &Point<S>) -> Point<S> {
    let abs = |x: &S| if x.sign() == Sign::Negative { -x.clone() } else { x.clone() };
    let (ax, ay) = (abs(&v.x), abs(&v.y));
    let m = if (ax.clone() - &ay).sign() == Sign::Negative { ay } else { ax };
    match (v.x.checked_div(&m), v.y.checked_div(&m)) {
        (Ok(x), Ok(y)) => Point::new(x, y),
        _ => v.clone(),
    }
}

struct Viewport<S> {
    margin: S,
    factor: S,
    height: S,
    digits: u32,
}

impl<S: Scalar> Viewport<S> {
    fn new(side: &S, canvas: u32, margin: u32, flip: bool, digits: u32) -> Self {
        let inner = side.lift(&Rational::from(i64::from(canvas - 2 * margin)));
        let factor = inner.checked_div(side).expect("figure side is positive");
        let height = if flip { side.clone() } else { side.zero_like() };
        Viewport { margin: side.lift(&Rational::from(i64::from(margin))), factor, height, digits }
    }

    fn map(&self, p: &Point<S>) -> Point<S> {
        let y = if self.height.is_zero() {
            p.y.clone()
        } else {
            self.height.clone() - &p.y
        };
        Point::new(
            self.margin.clone() + p.x.clone() * &self.factor,
            self.margin.clone() + y * &self.factor,
        )
    }

    fn coord(&self, p: &Point<S>) -> (String, String) {
        let q = self.map(p);
        (to_decimal(&q.x, self.digits), to_decimal(&q.y, self.digits))
    }

    /// Length in output units converted back to figure units.
    fn figure_length(&self, out: &Rational) -> S {
        self.factor.lift(out).checked_div(&self.factor).expect("factor is positive")
    }
}

fn svg_points<S: Scalar>(vp: &Viewport<S>, pts: &[Point<S>]) -> String {
    pts.iter()
        .map(|p| {
            let (x, y) = vp.coord(p);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn right_angle_glyph<S: Scalar>(f: &Foot<S>, size: &S) -> Vec<Point<S>> {
    let u = max_norm_unit(&f.corner.sub(&f.foot)).scale(size);
    let w = max_norm_unit(&f.along).scale(size);
    vec![f.foot.add(&u), f.foot.add(&u).add(&w), f.foot.add(&w)]
}

fn emit_svg<S: Scalar>(scene: &Scene<S>, opts: &RenderOptions) -> String {
    let canvas = opts.canvas_size;
    let vp = Viewport::new(&scene.side, canvas, canvas / 16, true, opts.precision);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{canvas}\" height=\"{canvas}\" viewBox=\"0 0 {canvas} {canvas}\">"
    );
    let _ = writeln!(
        out,
        "  <g fill=\"none\" stroke=\"black\" stroke-width=\"{}\" stroke-linejoin=\"round\">",
        opts.stroke_width
    );
    let _ = writeln!(out, "    <polygon class=\"outer\" points=\"{}\"/>", svg_points(&vp, scene.outer.vertices()));
    for (k, (triangles, inner)) in scene.layers.iter().enumerate() {
        let _ = writeln!(out, "    <g class=\"layer\" id=\"layer-{}\">", k + 1);
        for t in triangles {
            let _ = writeln!(out, "      <polygon class=\"triangle\" points=\"{}\"/>", svg_points(&vp, t.vertices()));
        }
        let _ = writeln!(out, "      <polygon class=\"square\" points=\"{}\"/>", svg_points(&vp, inner.vertices()));
        out.push_str("    </g>\n");
    }
    if !scene.feet.is_empty() {
        let glyph = vp.figure_length(&Rational::new(i64::from(canvas), 100).expect("nonzero"));
        out.push_str("    <g class=\"feet\">\n");
        for f in &scene.feet {
            let (x1, y1) = vp.coord(&f.corner);
            let (x2, y2) = vp.coord(&f.foot);
            let _ = writeln!(out, "      <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>");
            let _ = writeln!(
                out,
                "      <polyline class=\"right-angle\" points=\"{}\"/>",
                svg_points(&vp, &right_angle_glyph(f, &glyph))
            );
        }
        out.push_str("    </g>\n");
    }
    out.push_str("  </g>\n");
    if !scene.labels.is_empty() {
        let offset = vp.figure_length(&Rational::new(i64::from(canvas), 32).expect("nonzero"));
        let font = Rational::new(i64::from(canvas), 28).expect("nonzero");
        let _ = writeln!(
            out,
            "  <g font-family=\"serif\" font-style=\"italic\" font-size=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\">",
            to_decimal(&font, opts.precision)
        );
        for label in &scene.labels {
            let shift = match label.anchor {
                Anchor::Centre => label.at.x.zero_like(),
                Anchor::Dir(..) => offset.clone(),
            };
            let (dx, dy) = match label.anchor {
                Anchor::Centre => (0, 0),
                Anchor::Dir(dx, dy) => (dx, dy),
            };
            let step = |s: i8| shift.lift(&Rational::from(i64::from(s))) * &shift;
            let at = label.at.add(&Point::new(step(dx), step(dy)));
            let (x, y) = vp.coord(&at);
            let _ = writeln!(out, "    <text x=\"{x}\" y=\"{y}\">{}</text>", label.text);
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn tikz_coord<S: Scalar>(vp: &Viewport<S>, p: &Point<S>) -> String {
    let (x, y) = vp.coord(p);
    format!("({x},{y})")
}

fn tikz_path<S: Scalar>(vp: &Viewport<S>, pts: &[Point<S>], closed: bool) -> String {
    let mut s = pts.iter().map(|p| tikz_coord(vp, p)).collect::<Vec<_>>().join(" -- ");
    if closed {
        s.push_str(" -- cycle");
    }
    format!("\\draw {s};")
}

fn emit_tikz<S: Scalar>(scene: &Scene<S>, opts: &RenderOptions) -> String {
    // The outer square spans 9 units, as in the hand-drawn reference figures.
    let vp = Viewport::new(&scene.side, 9, 0, false, opts.precision);
    let mut out = String::new();
    if opts.tikz_standalone {
        out.push_str("\\documentclass[tikz]{standalone}\n\\begin{document}\n");
    }
    let _ = writeln!(out, "\\begin{{tikzpicture}}[line width={}pt, line join=round]", 0.4 * opts.stroke_width);
    let _ = writeln!(out, "{}", tikz_path(&vp, scene.outer.vertices(), true));
    for (k, (triangles, inner)) in scene.layers.iter().enumerate() {
        let _ = writeln!(out, "% layer {}", k + 1);
        for t in triangles {
            let _ = writeln!(out, "{}", tikz_path(&vp, t.vertices(), true));
        }
        let _ = writeln!(out, "{}", tikz_path(&vp, inner.vertices(), true));
    }
    if !scene.feet.is_empty() {
        out.push_str("% perpendiculars\n");
        let glyph = vp.figure_length(&crate::exact::ratio(9, 100));
        for f in &scene.feet {
            let _ = writeln!(out, "{}", tikz_path(&vp, &[f.corner.clone(), f.foot.clone()], false));
            let _ = writeln!(out, "{}", tikz_path(&vp, &right_angle_glyph(f, &glyph), false));
        }
    }
    for label in &scene.labels {
        let anchor = label.anchor.tikz();
        let opt = if anchor.is_empty() { String::new() } else { format!("[{anchor}]") };
        let _ = writeln!(out, "\\node{opt} at {} {{${}$}};", tikz_coord(&vp, &label.at), label.text);
    }
    out.push_str("\\end{tikzpicture}\n");
    if opts.tikz_standalone {
        out.push_str("\\end{document}\n");
    }
    out
}

fn render_scene<S: Scalar>(scene: &Scene<S>, opts: &RenderOptions, format: RenderFormat) -> String {
    match format {
        RenderFormat::Svg => emit_svg(scene, opts),
        RenderFormat::Tikz => emit_tikz(scene, opts),
    }
}

fn render(figure: &Figure, opts: &RenderOptions, format: RenderFormat) -> Result<String, RenderError> {
    opts.validate()?;
    Ok(match figure {
        Figure::Choupei(f) => render_scene(&scene_from_nested(f, opts.show_labels), opts, format),
        Figure::Proof2(f) => render_scene(&scene_from_proof2(f, opts.show_labels), opts, format),
        Figure::Bhaskara(f) => render_scene(&scene_from_nested(f, opts.show_labels), opts, format),
    })
}

/// SVG 1.1 document for the figure. `opts.format` is ignored.
pub fn to_svg(figure: &Figure, opts: &RenderOptions) -> Result<String, RenderError> {
    render(figure, opts, RenderFormat::Svg)
}

/// TikZ picture for the figure. `opts.format` is ignored.
pub fn to_tikz(figure: &Figure, opts: &RenderOptions) -> Result<String, RenderError> {
    render(figure, opts, RenderFormat::Tikz)
}

/// Dispatches on `opts.format`.
pub fn render_figure(figure: &Figure, opts: &RenderOptions) -> Result<String, RenderError> {
    render(figure, opts, opts.format)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_bhaskara, build_choupei, build_proof2, TriangleSides};
    use crate::exact::ratio;

    fn choupei(a: i64, b: i64, s: &str) -> Figure {
        build_choupei(&TriangleSides::from_integers(a, b).unwrap(), &s.parse().unwrap()).unwrap().into()
    }

    #[test]
    fn half_even_rounding() {
        assert_eq!(round_half_even(&ratio(5, 2), 0), BigInt::from(2));
        assert_eq!(round_half_even(&ratio(7, 2), 0), BigInt::from(4));
        assert_eq!(round_half_even(&ratio(-5, 2), 0), BigInt::from(-2));
        assert_eq!(round_half_even(&ratio(-7, 2), 0), BigInt::from(-4));
        assert_eq!(round_half_even(&ratio(1, 3), 2), BigInt::from(33));
        assert_eq!(round_half_even(&ratio(2, 3), 2), BigInt::from(67));
        assert_eq!(round_half_even(&ratio(125, 1000), 2), BigInt::from(12));
        assert_eq!(round_half_even(&ratio(135, 1000), 2), BigInt::from(14));
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&ratio(1, 3), 6), "0.333333");
        assert_eq!(to_decimal(&ratio(-1, 8), 2), "-0.12");
        assert_eq!(to_decimal(&ratio(-1, 1000), 2), "0.00");
        assert_eq!(to_decimal(&Rational::from(12), 3), "12.000");
        let sqrt2 = QuadExt::sqrt_of(&2.into()).unwrap();
        assert_eq!(to_decimal(&sqrt2, 6), "1.414214");
        assert_eq!(to_decimal(&-sqrt2.clone(), 10), "-1.4142135624");
        let q = QuadExt::new(1.into(), (-1).into(), 2.into()).unwrap();
        assert_eq!(to_decimal(&q, 4), "-0.4142");
        // Rational square radicand: exact path.
        let five = QuadExt::sqrt_of(&25.into()).unwrap();
        assert_eq!(to_decimal(&five, 2), "5.00");
    }

    #[test]
    fn element_counts_for_one_layer() {
        let svg = to_svg(&choupei(3, 4, "1"), &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<polygon class=\"outer\"").count(), 1);
        assert_eq!(svg.matches("<polygon class=\"square\"").count(), 1);
        assert_eq!(svg.matches("<polygon class=\"triangle\"").count(), 4);
        assert_eq!(svg.matches("<polygon").count(), 6);
        assert_eq!(svg.matches("<text").count(), 8);
        let tikz = to_tikz(&choupei(3, 4, "1"), &RenderOptions::default()).unwrap();
        assert_eq!(tikz.matches("\\draw").count(), 6);
    }

    #[test]
    fn deterministic_and_pure() {
        let fig = choupei(3, 7, "010101");
        let before = fig.clone();
        let opts = RenderOptions::default();
        assert_eq!(to_svg(&fig, &opts).unwrap(), to_svg(&fig, &opts).unwrap());
        assert_eq!(to_tikz(&fig, &opts).unwrap(), to_tikz(&fig, &opts).unwrap());
        assert_eq!(fig, before);
    }

    #[test]
    fn labels_only_for_shallow_figures() {
        let svg = to_svg(&choupei(3, 4, "111"), &RenderOptions::default()).unwrap();
        assert!(!svg.contains("<text"));
        let svg = to_svg(&choupei(3, 4, "10"), &RenderOptions { show_labels: false, ..Default::default() }).unwrap();
        assert!(!svg.contains("<text"));
        let svg = to_svg(&choupei(3, 4, "10"), &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<text").count(), 12);
        assert!(svg.contains(">L</text>"));
    }

    #[test]
    fn label_anchors() {
        let tikz = to_tikz(&choupei(3, 4, "1"), &RenderOptions::default()).unwrap();
        assert!(tikz.contains("\\node[above] at (3.857143,9.000000) {$E$};"), "{tikz}");
        assert!(tikz.contains("\\node[below left] at (0.000000,0.000000) {$D$};"));
        let p2: Figure = build_proof2(&TriangleSides::from_integers(3, 6).unwrap(), 1).unwrap().into();
        let tikz = to_tikz(&p2, &RenderOptions::default()).unwrap();
        // Scale 9/9: M = (3,7) below, N = (6,2) above, I up-right.
        assert!(tikz.contains("\\node[below] at (3.000000,7.000000) {$M$};"), "{tikz}");
        assert!(tikz.contains("\\node[above] at (6.000000,2.000000) {$N$};"));
        assert!(tikz.contains("\\node[above right] at (7.000000,7.000000) {$I$};"));
        // Foot EM and its right-angle mark.
        assert!(tikz.contains("\\draw (3.000000,9.000000) -- (3.000000,7.000000);"));
        assert!(tikz.contains("\\draw (3.000000,7.090000) -- (2.910000,7.090000) -- (2.910000,7.000000);"), "{tikz}");
    }

    #[test]
    fn coordinates_inside_viewbox() {
        let figs = [
            choupei(3, 4, "1"),
            build_proof2(&TriangleSides::from_integers(5, 12).unwrap(), 1).unwrap().into(),
            build_bhaskara(&TriangleSides::new(ratio(1, 2), 2.into()).unwrap(), 3).unwrap().into(),
        ];
        let opts = RenderOptions::default();
        for fig in &figs {
            let svg = to_svg(fig, &opts).unwrap();
            for tok in svg.split(['"', ' ', ',']) {
                if let Ok(v) = tok.parse::<f64>() {
                    if tok.contains('.') {
                        assert!((0.0..=512.0).contains(&v), "{tok} outside viewBox");
                    }
                }
            }
        }
    }

    #[test]
    fn bhaskara_renders_irrational_coordinates() {
        let fig: Figure = build_bhaskara(&TriangleSides::from_integers(1, 2).unwrap(), 2).unwrap().into();
        let tikz = to_tikz(&fig, &RenderOptions::default()).unwrap();
        // Outer square side 9; the first right-angle vertex is at 9·(1/5, 2/5).
        assert!(tikz.contains("(1.800000,3.600000)"), "{tikz}");
        assert!(tikz.starts_with("\\documentclass[tikz]{standalone}"));
    }

    #[test]
    fn option_validation() {
        let fig = choupei(3, 4, "1");
        assert_eq!(to_svg(&fig, &RenderOptions { precision: 0, ..Default::default() }).unwrap_err(), RenderError::Precision);
        assert_eq!(
            to_svg(&fig, &RenderOptions { canvas_size: 15, ..Default::default() }).unwrap_err(),
            RenderError::CanvasSize(15)
        );
        assert!(to_svg(&fig, &RenderOptions { stroke_width: 0.0, ..Default::default() }).is_err());
    }

    #[test]
    fn file_names() {
        assert_eq!(choupei(3, 7, "000000").file_name(RenderFormat::Svg), "choupei_3_7_000000.svg");
        let p2: Figure = build_proof2(&TriangleSides::new(ratio(3, 2), 4.into()).unwrap(), 2).unwrap().into();
        assert_eq!(p2.file_name(RenderFormat::Tikz), "proof2_3-2_4_2.tex");
    }

    #[test]
    fn tikz_is_structurally_complete() {
        let figs = [
            choupei(3, 7, "010101"),
            build_proof2(&TriangleSides::from_integers(3, 6).unwrap(), 2).unwrap().into(),
            build_bhaskara(&TriangleSides::from_integers(1, 2).unwrap(), 3).unwrap().into(),
        ];
        for fig in &figs {
            let tex = to_tikz(fig, &RenderOptions::default()).unwrap();
            let mut depth = 0i32;
            for ch in tex.chars() {
                match ch {
                    '{' => depth += 1,
                    '}' => depth -= 1,
                    _ => {}
                }
                assert!(depth >= 0);
            }
            assert_eq!(depth, 0);
            for env in ["document", "tikzpicture"] {
                assert_eq!(tex.matches(&format!("\\begin{{{env}}}")).count(), 1);
                assert_eq!(tex.matches(&format!("\\end{{{env}}}")).count(), 1);
            }
            assert!(tex.starts_with("\\documentclass[tikz]{standalone}"));
            assert!(tex.lines().filter(|l| l.starts_with("\\draw")).all(|l| l.ends_with(';')));
        }
    }
}
