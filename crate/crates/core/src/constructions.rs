//! Exact constructions of the nested-square figures.
//!
//! All figures live in the frame D = (0,0), C = (s,0), B = (s,s), A = (0,s)
//! where `s` is the outer side, and every square is stored counterclockwise
//! starting from its D-corner analogue.
//!
//! Coefficient size grows linearly with depth times the bit length of q², so
//! very deep figures are slow but never inexact.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactError, QuadExt, Rational, Scalar};
use crate::geometry::{
    perpendicular_foot, section_point, shoelace_area, squared_distance, GeometryError, Point,
    Polygon,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("sides must be positive (got a = {0}, b = {1})")]
    NonPositiveSide(String, String),
    #[error("orientation string must not be empty")]
    EmptyOrientation,
    #[error("orientation string may only contain 0 and 1, found {0:?}")]
    BadOrientationDigit(char),
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Legs of the generating right triangle plus the exact derived quantities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleSides {
    a1: Rational,
    b1: Rational,
    c1_sq: Rational,
    q_sq: Rational,
}

impl TriangleSides {
    pub fn new(a1: Rational, b1: Rational) -> Result<Self, ConstructionError> {
        if !a1.is_positive() || !b1.is_positive() {
            return Err(ConstructionError::NonPositiveSide(a1.to_string(), b1.to_string()));
        }
        let c1_sq = a1.square() + b1.square();
        let q_sq = &c1_sq / &(&a1 + &b1).square();
        debug_assert!(q_sq < Rational::one());
        Ok(TriangleSides { a1, b1, c1_sq, q_sq })
    }

    pub fn from_integers(a1: i64, b1: i64) -> Result<Self, ConstructionError> {
        TriangleSides::new(a1.into(), b1.into())
    }

    pub fn a1(&self) -> &Rational {
        &self.a1
    }

    pub fn b1(&self) -> &Rational {
        &self.b1
    }

    pub fn c1_sq(&self) -> &Rational {
        &self.c1_sq
    }

    /// `q² = c₁² / (a₁+b₁)²`, the per-layer area ratio of the Chou-pei family.
    pub fn q_sq(&self) -> &Rational {
        &self.q_sq
    }

    pub fn sum(&self) -> Rational {
        &self.a1 + &self.b1
    }

    pub fn is_isoceles(&self) -> bool {
        self.a1 == self.b1
    }

    /// `r² = (b₁−a₁)² / c₁²`, the per-layer area ratio of the Bhāskara family.
    pub fn bhaskara_r_sq(&self) -> Rational {
        (&self.b1 - &self.a1).square() / &self.c1_sq
    }

    pub fn scaled(&self, k: &Rational) -> Result<Self, ConstructionError> {
        TriangleSides::new(&self.a1 * k, &self.b1 * k)
    }
}

/// One bit per nested square, leftmost bit for the outermost layer.
///
/// Bit 1 places each new vertex `aₙ` from the clockwise-first corner of its
/// edge (the layout of the single-layer Chou-pei figure, E on AB with
/// |AE| = a₁); bit 0 is the mirror image.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientationString(Vec<bool>);

impl OrientationString {
    pub fn new(bits: Vec<bool>) -> Result<Self, ConstructionError> {
        if bits.is_empty() {
            return Err(ConstructionError::EmptyOrientation);
        }
        Ok(OrientationString(bits))
    }

    /// `1010…` of the given length.
    pub fn alternating(len: usize) -> Result<Self, ConstructionError> {
        OrientationString::new((0..len).map(|i| i % 2 == 0).collect())
    }

    /// All strings of a given length, in binary counting order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = OrientationString> {
        assert!(len > 0 && len < usize::BITS as usize);
        (0..1usize << len).map(move |m| {
            OrientationString((0..len).map(|i| (m >> (len - 1 - i)) & 1 == 1).collect())
        })
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }
}

/// Accepts `0`/`1` digits; whitespace and `_` separators are ignored.
impl FromStr for OrientationString {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ConstructionError::BadOrientationDigit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        OrientationString::new(bits)
    }
}

impl fmt::Display for OrientationString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for OrientationString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Choupei,
    Proof2,
    Bhaskara,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Choupei => "choupei",
            Family::Proof2 => "proof2",
            Family::Bhaskara => "bhaskara",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "choupei" | "chou-pei" => Ok(Family::Choupei),
            "proof2" => Ok(Family::Proof2),
            "bhaskara" => Ok(Family::Bhaskara),
            _ => Err(format!("unknown family {s:?} (expected choupei, proof2 or bhaskara)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarKind {
    Rational,
    QuadExt,
}

/// One nesting step: a square, the four corner triangles cut from it, and
/// the next square inside. The squared lengths are measured from the
/// constructed points, not taken from formulas.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Layer<S> {
    /// Orientation bit for Chou-pei layers; `None` for Bhāskara layers.
    pub bit: Option<bool>,
    pub square: Polygon<S>,
    pub triangles: Vec<Polygon<S>>,
    pub inner: Polygon<S>,
    pub a_n_sq: S,
    pub b_n_sq: S,
    pub c_n_sq: S,
    pub triangle_area: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NestedFigure<S> {
    pub family: Family,
    pub scalar_kind: ScalarKind,
    pub sides: TriangleSides,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub string: Option<OrientationString>,
    pub layers: Vec<Layer<S>>,
}

impl<S: Scalar> NestedFigure<S> {
    pub fn outer_square(&self) -> &Polygon<S> {
        &self.layers[0].square
    }

    /// The square left over inside the deepest layer.
    pub fn innermost(&self) -> &Polygon<S> {
        &self.layers.last().expect("figures have at least one layer").inner
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }
}

fn canonical_square<S: Scalar>(side: S) -> Result<Polygon<S>, GeometryError> {
    let z = side.zero_like();
    Polygon::new(vec![
        Point::new(z.clone(), z.clone()),
        Point::new(side.clone(), z.clone()),
        Point::new(side.clone(), side.clone()),
        Point::new(z, side),
    ])
}

fn choupei_layer(
    square: Polygon<Rational>,
    sides: &TriangleSides,
    bit: bool,
) -> Result<Layer<Rational>, ConstructionError> {
    // Parameter along each counterclockwise edge.
    let t = if bit { sides.b1() / &sides.sum() } else { sides.a1() / &sides.sum() };
    let v = square.vertices();
    let p: Vec<Point<Rational>> = square.edges().map(|(u, w)| section_point(u, w, &t)).collect();
    // Triangle at corner i: (p[i-1], v[i], p[i]).
    let triangles = (0..4)
        .map(|i| Polygon::new(vec![p[(i + 3) % 4].clone(), v[i].clone(), p[i].clone()]))
        .collect::<Result<Vec<_>, _>>()?;
    let before = squared_distance(&p[3], &v[0]);
    let after = squared_distance(&v[0], &p[0]);
    let (a_n_sq, b_n_sq) = if bit { (before, after) } else { (after, before) };
    let c_n_sq = squared_distance(&p[0], &p[1]);
    let triangle_area = shoelace_area(&triangles[0]);
    Ok(Layer {
        bit: Some(bit),
        square,
        triangles,
        inner: Polygon::new(p)?,
        a_n_sq,
        b_n_sq,
        c_n_sq,
        triangle_area,
    })
}

/// Chou-pei nested squares, one layer per bit of `s`.
pub fn build_choupei(
    sides: &TriangleSides,
    s: &OrientationString,
) -> Result<NestedFigure<Rational>, ConstructionError> {
    let mut layers = Vec::with_capacity(s.len());
    let mut square = canonical_square(sides.sum())?;
    for &bit in s.bits() {
        let layer = choupei_layer(square, sides, bit)?;
        square = layer.inner.clone();
        layers.push(layer);
    }
    Ok(NestedFigure {
        family: Family::Choupei,
        scalar_kind: ScalarKind::Rational,
        sides: sides.clone(),
        string: Some(s.clone()),
        layers,
    })
}

/// Perpendiculars of one stage of the second construction.
///
/// Index `i` refers to corner `i` of the stage's tilted square; the foot lies
/// on the hypotenuse `carriers[i]` of the triangle at that corner. In the
/// first stage corner 2 is E (foot M on LI) and corner 0 is G (foot N on JK).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FootStage {
    pub level: usize,
    /// `d_k = a_{2k−1} b_{2k−1} / (a_{2k−1} + b_{2k−1})`.
    pub d: Rational,
    pub corners: Vec<Point<Rational>>,
    pub feet: Vec<Point<Rational>>,
    pub carriers: Vec<(Point<Rational>, Point<Rational>)>,
}

impl FootStage {
    pub fn m(&self) -> &Point<Rational> {
        &self.feet[2]
    }

    pub fn n(&self) -> &Point<Rational> {
        &self.feet[0]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Proof2Figure {
    pub base: NestedFigure<Rational>,
    pub feet: Vec<FootStage>,
}

impl Proof2Figure {
    pub fn depth(&self) -> usize {
        self.feet.len()
    }
}

/// `d_k` from its closed form.
pub fn d_closed_form(sides: &TriangleSides, k: usize) -> Rational {
    assert!(k >= 1);
    let decay = sides.q_sq().pow((k - 1) as u32);
    sides.a1() * sides.b1() * decay / sides.sum()
}

/// The second construction: two nested squares per stage with opposite
/// splits (`1010…`), plus the perpendiculars dropped from the corners of
/// every tilted square onto the hypotenuses of its corner triangles.
pub fn build_proof2(sides: &TriangleSides, depth: usize) -> Result<Proof2Figure, ConstructionError> {
    if depth == 0 {
        return Err(ConstructionError::ZeroDepth);
    }
    let base = build_choupei(sides, &OrientationString::alternating(2 * depth)?)?;
    let mut feet = Vec::with_capacity(depth);
    for k in 1..=depth {
        let layer = &base.layers[2 * k - 1];
        let v = layer.square.vertices();
        let p = layer.inner.vertices();
        let mut stage = FootStage {
            level: k,
            d: d_closed_form(sides, k),
            corners: v.to_vec(),
            feet: Vec::with_capacity(4),
            carriers: Vec::with_capacity(4),
        };
        for i in 0..4 {
            let (from, to) = (&p[(i + 3) % 4], &p[i]);
            stage.feet.push(perpendicular_foot(&v[i], from, to)?);
            stage.carriers.push((from.clone(), to.clone()));
        }
        feet.push(stage);
    }
    Ok(Proof2Figure { base, feet })
}

/// Bhāskara's square of side c₁ tiled by four right triangles with their
/// hypotenuses on the edges, iterated inside the central square.
///
/// Each right-angle vertex sits at `V + α·e + β·e⊥` for the edge vector `e`,
/// with rational `α = a²/c²` and `β = ab/c²`, so every coordinate stays in
/// Q(√c₁²). Equal legs collapse the central square to a point, so the depth
/// is clamped to 1 in that case.
pub fn build_bhaskara(
    sides: &TriangleSides,
    depth: usize,
) -> Result<NestedFigure<QuadExt>, ConstructionError> {
    if depth == 0 {
        return Err(ConstructionError::ZeroDepth);
    }
    let depth = if sides.is_isoceles() { 1 } else { depth };
    let radicand = sides.c1_sq();
    let alpha = sides.a1().square() / radicand;
    let beta = sides.a1() * sides.b1() / radicand;

    let mut square = canonical_square(QuadExt::sqrt_of(radicand)?)?;
    let mut layers = Vec::with_capacity(depth);
    for _ in 0..depth {
        let v = square.vertices();
        let p: Vec<Point<QuadExt>> = square
            .edges()
            .map(|(u, w)| {
                let e = w.sub(u);
                u.add(&e.scale_rational(&alpha)).add(&e.perp().scale_rational(&beta))
            })
            .collect();
        let triangles = (0..4)
            .map(|i| Polygon::new(vec![v[i].clone(), v[(i + 1) % 4].clone(), p[i].clone()]))
            .collect::<Result<Vec<_>, _>>()?;
        let inner = if sides.is_isoceles() {
            Polygon::new_unchecked(p.clone())
        } else {
            Polygon::new(p.clone())?
        };
        let layer = Layer {
            bit: None,
            a_n_sq: squared_distance(&v[0], &p[0]),
            b_n_sq: squared_distance(&p[0], &v[1]),
            c_n_sq: squared_distance(&v[0], &v[1]),
            triangle_area: shoelace_area(&triangles[0]),
            square,
            triangles,
            inner,
        };
        square = layer.inner.clone();
        layers.push(layer);
    }
    Ok(NestedFigure {
        family: Family::Bhaskara,
        scalar_kind: ScalarKind::QuadExt,
        sides: sides.clone(),
        string: None,
        layers,
    })
}

/// `(aₙ², bₙ², cₙ²) = (a₁², b₁², c₁²) · (q²)^(n−1)`.
pub fn closed_form_lengths(sides: &TriangleSides, n: usize) -> (Rational, Rational, Rational) {
    assert!(n >= 1, "layers are numbered from 1");
    let decay = sides.q_sq().pow((n - 1) as u32);
    (
        sides.a1().square() * &decay,
        sides.b1().square() * &decay,
        sides.c1_sq() * &decay,
    )
}

/// Bhāskara analogue: legs and hypotenuse scale by `r² = (b₁−a₁)²/c₁²` per layer.
pub fn bhaskara_closed_form(sides: &TriangleSides, n: usize) -> (Rational, Rational, Rational) {
    assert!(n >= 1, "layers are numbered from 1");
    let decay = sides.bhaskara_r_sq().pow((n - 1) as u32);
    (
        sides.a1().square() * &decay,
        sides.b1().square() * &decay,
        sides.c1_sq() * &decay,
    )
}
