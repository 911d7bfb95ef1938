//! Mixed volumes of segments, zonotopes and convex polygons.
//!
//! A segment `[0, u]` is identified with its direction `u`. Zonotopes are lists of
//! segments. The mixed volume of zonotopes expands by Minkowski multilinearity into
//! a sum over one generator per body.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::exact::{det, factorial, rational_from_json, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    direction: Vec<Rational>,
}

impl Segment {
    /// The segment `[0, u]`. The zero vector is a legal (degenerate) segment.
    pub fn new(direction: Vec<Rational>) -> Self {
        Segment { direction }
    }

    pub fn direction(&self) -> &[Rational] {
        &self.direction
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    pub fn scaled(&self, lambda: &Rational) -> Segment {
        Segment { direction: self.direction.iter().map(|x| x * lambda).collect() }
    }
}

/// Minkowski sum of finitely many segments; no generators means a single point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zonotope {
    dim: usize,
    generators: Vec<Segment>,
}

impl Zonotope {
    pub fn new(dim: usize, generators: Vec<Segment>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: g.dim() });
        }
        Ok(Zonotope { dim, generators })
    }

    pub fn from_vectors(dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        Zonotope::new(dim, vectors.into_iter().map(Segment::new).collect())
    }

    pub fn segment(direction: Vec<Rational>) -> Self {
        Zonotope { dim: direction.len(), generators: vec![Segment::new(direction)] }
    }

    pub fn point(dim: usize) -> Self {
        Zonotope { dim, generators: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Segment] {
        &self.generators
    }

    /// `λZ` for `λ ≥ 0`: scales every generator.
    pub fn scaled(&self, lambda: &Rational) -> Zonotope {
        Zonotope { dim: self.dim, generators: self.generators.iter().map(|g| g.scaled(lambda)).collect() }
    }

    /// Minkowski sum: concatenation of generator lists.
    pub fn minkowski_add(&self, other: &Zonotope) -> Result<Zonotope> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(Zonotope { dim: self.dim, generators })
    }

    /// Vertex representation of a planar zonotope placed with its first vertex sum at the origin.
    pub fn to_polygon(&self) -> Result<ConvexPolygon> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: self.dim });
        }
        let origin = [Rational::zero(), Rational::zero()];
        let mut acc = ConvexPolygon::point(origin.clone());
        for g in &self.generators {
            let u = [g.direction[0].clone(), g.direction[1].clone()];
            let seg = if u[0].is_zero() && u[1].is_zero() {
                ConvexPolygon::point(origin.clone())
            } else {
                ConvexPolygon { vertices: vec![origin.clone(), u] }
            };
            acc = minkowski_sum(&acc, &seg);
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.generators
                .iter()
                .map(|g| json!(g.direction.iter().map(ToString::to_string).collect::<Vec<_>>()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let coords = coordinate_list(v)?;
        let dim = coords
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Parse("zonotope needs at least one generator (use \"point\")".into()))?;
        Zonotope::from_vectors(dim, coords)
    }
}

fn coordinate_list(v: &Value) -> Result<Vec<Vec<Rational>>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("expected a list of coordinates, found {v}")))?;
    arr.iter()
        .map(|p| {
            p.as_array()
                .ok_or_else(|| Error::Parse(format!("expected a coordinate tuple, found {p}")))?
                .iter()
                .map(rational_from_json)
                .collect()
        })
        .collect()
}

pub type Point2 = [Rational; 2];

fn sub(a: &Point2, b: &Point2) -> Point2 {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn add(a: &Point2, b: &Point2) -> Point2 {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

fn cross(a: &Point2, b: &Point2) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn dot2(a: &Point2, b: &Point2) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

/// Planar convex polygon: counterclockwise vertices in strictly convex position, or a
/// point (one vertex) or segment (two vertices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        match vertices.len() {
            0 => return Err(Error::InvalidPolygon("no vertices".into())),
            1 => {}
            2 => {
                if vertices[0] == vertices[1] {
                    return Err(Error::InvalidPolygon("repeated vertex".into()));
                }
            }
            n => {
                for i in 0..n {
                    let a = &vertices[i];
                    let e = sub(&vertices[(i + 1) % n], a);
                    for (j, v) in vertices.iter().enumerate() {
                        if j != i && j != (i + 1) % n && !cross(&e, &sub(v, a)).is_positive() {
                            return Err(Error::InvalidPolygon(format!(
                                "vertex {j} is not strictly left of edge {i}; vertices must be \
                                 counterclockwise in strictly convex position"
                            )));
                        }
                    }
                }
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn point(p: Point2) -> Self {
        ConvexPolygon { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn translated(&self, v: &Point2) -> ConvexPolygon {
        ConvexPolygon { vertices: self.vertices.iter().map(|p| add(p, v)).collect() }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let coords = coordinate_list(v)?;
        let pts = coords
            .into_iter()
            .map(|c| match <[Rational; 2]>::try_from(c) {
                Ok(p) => Ok(p),
                Err(c) => Err(Error::DimensionMismatch { expected: 2, found: c.len() }),
            })
            .collect::<Result<Vec<_>>>()?;
        ConvexPolygon::new(pts)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.vertices
                .iter()
                .map(|p| json!([p[0].to_string(), p[1].to_string()]))
                .collect(),
        )
    }

    /// Index of the lowest vertex, ties broken by smallest x.
    fn bottom_left(&self) -> usize {
        (0..self.vertices.len())
            .min_by(|&i, &j| {
                let (a, b) = (&self.vertices[i], &self.vertices[j]);
                a[1].cmp(&b[1]).then_with(|| a[0].cmp(&b[0]))
            })
            .unwrap_or(0)
    }

    /// Edge vectors in counterclockwise order starting at the bottom-left vertex.
    /// A segment contributes its two opposite edges; a point contributes none.
    fn edges_from_bottom(&self) -> (Point2, Vec<Point2>) {
        let n = self.vertices.len();
        let s = self.bottom_left();
        let start = self.vertices[s].clone();
        let edges = match n {
            1 => Vec::new(),
            2 => {
                let e = sub(&self.vertices[1 - s], &start);
                let back = [-e[0].clone(), -e[1].clone()];
                vec![e, back]
            }
            _ => (0..n)
                .map(|k| sub(&self.vertices[(s + k + 1) % n], &self.vertices[(s + k) % n]))
                .collect(),
        };
        (start, edges)
    }
}

/// 0 for directions in `[0, π)`, 1 for `[π, 2π)`.
fn half_plane(v: &Point2) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: &Point2, b: &Point2) -> Ordering {
    half_plane(a).cmp(&half_plane(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Exact Minkowski sum by merging the two edge sequences by angle.
pub fn minkowski_sum(p: &ConvexPolygon, q: &ConvexPolygon) -> ConvexPolygon {
    let (sp, ep) = p.edges_from_bottom();
    let (sq, eq) = q.edges_from_bottom();
    let mut merged = Vec::with_capacity(ep.len() + eq.len());
    let (mut i, mut j) = (0, 0);
    while i < ep.len() || j < eq.len() {
        let take_p = j == eq.len() || (i < ep.len() && angle_cmp(&ep[i], &eq[j]) != Ordering::Greater);
        if take_p {
            merged.push(ep[i].clone());
            i += 1;
        } else {
            merged.push(eq[j].clone());
            j += 1;
        }
    }
    let mut walk = vec![add(&sp, &sq)];
    for e in &merged {
        let next = add(walk.last().expect("walk starts nonempty"), e);
        walk.push(next);
    }
    if !merged.is_empty() {
        walk.pop(); // closes back at the start
    }
    clean_polygon(walk)
}

/// Removes repeated and collinear vertices from a closed convex walk.
fn clean_polygon(walk: Vec<Point2>) -> ConvexPolygon {
    let mut pts: Vec<Point2> = Vec::with_capacity(walk.len());
    for p in walk {
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    if pts.len() <= 2 {
        return ConvexPolygon { vertices: pts };
    }
    let base = pts[0].clone();
    let flat = pts.iter().all(|p| cross(&sub(&pts[1], &base), &sub(p, &base)).is_zero());
    if flat {
        let lo = pts.iter().min_by(|a, b| a.cmp(b)).cloned().expect("nonempty");
        let hi = pts.iter().max_by(|a, b| a.cmp(b)).cloned().expect("nonempty");
        return ConvexPolygon { vertices: vec![lo, hi] };
    }
    loop {
        let n = pts.len();
        let drop = (0..n).find(|&i| {
            let prev = &pts[(i + n - 1) % n];
            let next = &pts[(i + 1) % n];
            let a = sub(&pts[i], prev);
            let b = sub(next, &pts[i]);
            cross(&a, &b).is_zero() && dot2(&a, &b).is_positive()
        });
        match drop {
            Some(i) => {
                pts.remove(i);
            }
            None => break,
        }
    }
    ConvexPolygon { vertices: pts }
}

/// Shoelace area; 0 for points and segments.
pub fn polygon_area(p: &ConvexPolygon) -> Rational {
    let v = &p.vertices;
    if v.len() < 3 {
        return Rational::zero();
    }
    let twice: Rational = (0..v.len())
        .map(|i| cross(&v[i], &v[(i + 1) % v.len()]))
        .fold(Rational::zero(), |a, b| a + b);
    twice / Rational::from_integer(2.into())
}

/// Mixed area `V(P, Q) = (Area(P+Q) − Area(P) − Area(Q)) / 2`.
pub fn mv_polygons(p: &ConvexPolygon, q: &ConvexPolygon) -> Rational {
    let s = polygon_area(&minkowski_sum(p, q));
    (s - polygon_area(p) - polygon_area(q)) / Rational::from_integer(2.into())
}

/// `V(L₁,…,L_d) = |det(u₁,…,u_d)| / d!` for `d` segments in `ℚ^d`.
pub fn mv_segments(segments: &[Segment]) -> Result<Rational> {
    let d = segments.len();
    if let Some(s) = segments.iter().find(|s| s.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: s.dim() });
    }
    Ok(abs_det_of(segments.iter().map(Segment::direction)) / Rational::from_integer(factorial(d)))
}

fn abs_det_of<'a>(columns: impl Iterator<Item = &'a [Rational]>) -> Rational {
    // det(M) = det(Mᵀ), so the vectors may be passed as rows
    let rows: Vec<Vec<Rational>> = columns.map(<[Rational]>::to_vec).collect();
    det(&rows).abs()
}

/// Mixed volume of `d` zonotopes in `ℚ^d`, expanded over one generator per body.
pub fn mv_zonotopes(bodies: &[Zonotope]) -> Result<Rational> {
    let d = bodies.len();
    if let Some(b) = bodies.iter().find(|b| b.dim != d) {
        if bodies.iter().all(|c| c.dim == b.dim) {
            return Err(Error::Arity { expected: b.dim, found: d });
        }
        return Err(Error::DimensionMismatch { expected: d, found: b.dim });
    }
    if bodies.iter().any(|b| b.generators.is_empty()) {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    let mut pick = vec![0usize; d];
    loop {
        total += abs_det_of(pick.iter().zip(bodies).map(|(&g, b)| b.generators[g].direction()));
        // odometer over the generator choices
        let mut slot = 0;
        loop {
            if slot == d {
                return Ok(total / Rational::from_integer(factorial(d)));
            }
            pick[slot] += 1;
            if pick[slot] < bodies[slot].generators.len() {
                break;
            }
            pick[slot] = 0;
            slot += 1;
        }
    }
}
