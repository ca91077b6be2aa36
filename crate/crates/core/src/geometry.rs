//! Exact planar primitives, generic over the scalar field.
//!
//! Every predicate here is an exact test against zero. Lengths are compared
//! squared so that nothing needs a square root, which keeps the same code
//! valid over Q and over Q(√d).

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{ExactError, Rational, Scalar, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("expected {expected} vertices, got {got}")]
    WrongVertexCount { expected: usize, got: usize },
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("consecutive vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn add(&self, v: &Point<S>) -> Point<S> {
        Point::new(self.x.clone() + &v.x, self.y.clone() + &v.y)
    }

    pub fn sub(&self, v: &Point<S>) -> Point<S> {
        Point::new(self.x.clone() - &v.x, self.y.clone() - &v.y)
    }

    pub fn scale(&self, k: &S) -> Point<S> {
        Point::new(self.x.clone() * k, self.y.clone() * k)
    }

    pub fn scale_rational(&self, k: &Rational) -> Point<S> {
        Point::new(self.x.scale(k), self.y.scale(k))
    }

    pub fn dot(&self, v: &Point<S>) -> S {
        self.x.clone() * &v.x + self.y.clone() * &v.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(&self, v: &Point<S>) -> S {
        self.x.clone() * &v.y - self.y.clone() * &v.x
    }

    /// The vector rotated a quarter turn counterclockwise.
    pub fn perp(&self) -> Point<S> {
        Point::new(-self.y.clone(), self.x.clone())
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// Vertices in order; counterclockwise for everything the constructors emit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polygon<S> {
    vertices: Vec<Point<S>>,
}

impl<S: Scalar> Polygon<S> {
    pub fn new(vertices: Vec<Point<S>>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i].sub(&vertices[j]).is_origin() {
                return Err(GeometryError::RepeatedVertex(i, j));
            }
        }
        Ok(Polygon { vertices })
    }

    /// Skips the repeated-vertex check. Used for the collapsed core of a
    /// configuration whose inner square has shrunk to a point.
    pub(crate) fn new_unchecked(vertices: Vec<Point<S>>) -> Self {
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[Point<S>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v[i], v[i+1])`, wrapping around.
    pub fn edges(&self) -> impl Iterator<Item = (&Point<S>, &Point<S>)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&Point<S>) -> Point<T>) -> Polygon<T> {
        Polygon { vertices: self.vertices.iter().map(f).collect() }
    }
}

pub fn section_point<S: Scalar>(p: &Point<S>, q: &Point<S>, t: &Rational) -> Point<S> {
    p.add(&q.sub(p).scale_rational(t))
}

/// Signed area; positive for counterclockwise vertex order.
pub fn shoelace_area<S: Scalar>(poly: &Polygon<S>) -> S {
    let first = &poly.vertices()[0];
    let twice = poly
        .edges()
        .fold(first.x.zero_like(), |acc, (a, b)| acc + (a.x.clone() * &b.y - a.y.clone() * &b.x));
    twice.scale(&crate::exact::ratio(1, 2))
}

pub fn squared_distance<S: Scalar>(p: &Point<S>, q: &Point<S>) -> S {
    let v = p.sub(q);
    v.dot(&v)
}

/// Foot of the perpendicular from `p` to the line through `q` and `r`.
pub fn perpendicular_foot<S: Scalar>(
    p: &Point<S>,
    q: &Point<S>,
    r: &Point<S>,
) -> Result<Point<S>, GeometryError> {
    let dir = r.sub(q);
    let len_sq = dir.dot(&dir);
    if len_sq.is_zero() {
        return Err(GeometryError::DegenerateSegment);
    }
    let t = p.sub(q).dot(&dir).checked_div(&len_sq)?;
    Ok(q.add(&dir.scale(&t)))
}

pub fn is_collinear<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> bool {
    q.sub(p).cross(&r.sub(p)).is_zero()
}

/// True iff `x` lies on the closed segment `pq`.
pub fn lies_on_segment<S: Scalar>(x: &Point<S>, p: &Point<S>, q: &Point<S>) -> bool {
    if !is_collinear(p, q, x) {
        return false;
    }
    let along = x.sub(p).dot(&q.sub(p));
    let len_sq = squared_distance(p, q);
    along.sign() != Sign::Negative && (len_sq - along).sign() != Sign::Negative
}

pub(crate) fn cmp_exact<S: Scalar>(a: &S, b: &S) -> Ordering {
    match (a.clone() - b).sign() {
        Sign::Negative => Ordering::Less,
        Sign::Zero => Ordering::Equal,
        Sign::Positive => Ordering::Greater,
    }
}

fn expect_vertices<S>(poly: &Polygon<S>, expected: usize) -> Result<(), GeometryError> {
    if poly.vertices.len() != expected {
        return Err(GeometryError::WrongVertexCount { expected, got: poly.vertices.len() });
    }
    Ok(())
}

/// Four equal sides and equal diagonals.
pub fn is_square<S: Scalar>(poly: &Polygon<S>) -> Result<bool, GeometryError> {
    expect_vertices(poly, 4)?;
    let v = poly.vertices();
    let side = squared_distance(&v[0], &v[1]);
    let sides_equal = poly.edges().skip(1).all(|(a, b)| squared_distance(a, b) == side);
    let diagonals_equal = squared_distance(&v[0], &v[2]) == squared_distance(&v[1], &v[3]);
    Ok(sides_equal && diagonals_equal)
}

fn sorted_squared_sides<S: Scalar>(t: &Polygon<S>) -> Result<Vec<S>, GeometryError> {
    expect_vertices(t, 3)?;
    let mut sides: Vec<S> = t.edges().map(|(a, b)| squared_distance(a, b)).collect();
    sides.sort_by(cmp_exact);
    Ok(sides)
}

/// SSS congruence on squared side lengths; ignores orientation.
pub fn are_congruent_triangles<S: Scalar>(
    t1: &Polygon<S>,
    t2: &Polygon<S>,
) -> Result<bool, GeometryError> {
    let s1 = sorted_squared_sides(t1)?;
    let s2 = sorted_squared_sides(t2)?;
    Ok(s1.iter().zip(&s2).all(|(a, b)| a == b))
}

fn check_nondegenerate<S: Scalar>(t: &Polygon<S>) -> Result<(), GeometryError> {
    if shoelace_area(t).is_zero() {
        return Err(GeometryError::DegenerateTriangle);
    }
    Ok(())
}

/// The common ratio of squared sides `t2 / t1` if the triangles are similar.
pub fn similarity_ratio<S: Scalar>(
    t1: &Polygon<S>,
    t2: &Polygon<S>,
) -> Result<Option<S>, GeometryError> {
    let s1 = sorted_squared_sides(t1)?;
    let s2 = sorted_squared_sides(t2)?;
    check_nondegenerate(t1)?;
    check_nondegenerate(t2)?;
    let proportional = (1..3).all(|i| s1[i].clone() * &s2[0] == s2[i].clone() * &s1[0]);
    if !proportional {
        return Ok(None);
    }
    Ok(Some(s2[0].checked_div(&s1[0])?))
}

pub fn are_similar_triangles<S: Scalar>(
    t1: &Polygon<S>,
    t2: &Polygon<S>,
) -> Result<bool, GeometryError> {
    Ok(similarity_ratio(t1, t2)?.is_some())
}

pub fn are_parallel<S: Scalar>(
    p1: &Point<S>,
    p2: &Point<S>,
    q1: &Point<S>,
    q2: &Point<S>,
) -> Result<bool, GeometryError> {
    let u = p2.sub(p1);
    let v = q2.sub(q1);
    if u.is_origin() || v.is_origin() {
        return Err(GeometryError::DegenerateSegment);
    }
    Ok(u.cross(&v).is_zero())
}
