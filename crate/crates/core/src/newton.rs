//! Newton polygon at infinity of a plane polynomial and the Kouchnirenko
//! number `ν = 2S - a - b + 1`.
//!
//! The polygon is the convex hull of the support together with the origin.
//! Its faces at infinity are the edges whose supporting line misses the
//! origin. All geometry is on integer lattice points.

use crate::error::{Error, Result};
use crate::field::{Rat, Ring};
use crate::poly::{Monomial, Poly};
use crate::upoly::UPoly;

pub type Point = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygonInf {
    /// Exponent pairs of `f`, sorted.
    pub support: Vec<Point>,
    /// Hull vertices, counterclockwise, starting at the origin.
    pub vertices: Vec<Point>,
    pub faces_at_infinity: Vec<(Point, Point)>,
    /// Largest `a` with `x^a` in the support, if any.
    pub x_intercept: Option<i64>,
    pub y_intercept: Option<i64>,
}

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Strictly convex hull, counterclockwise from the lexicographically
/// smallest point.
fn convex_hull(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn support(f: &Poly<Rat>) -> Result<Vec<Point>> {
    if f.nvars() != 2 {
        return Err(Error::Structural("Newton polygons are implemented for two variables".into()));
    }
    if f.is_zero() {
        return Err(Error::Degenerate("the zero polynomial has no Newton polygon".into()));
    }
    let mut s: Vec<Point> = f.terms().map(|(m, _)| (m.exps()[0] as i64, m.exps()[1] as i64)).collect();
    s.sort();
    Ok(s)
}

pub fn newton_polygon(f: &Poly<Rat>) -> Result<NewtonPolygonInf> {
    let support = support(f)?;
    let mut pts = support.clone();
    pts.push((0, 0));
    let vertices = convex_hull(pts);
    let mut faces_at_infinity = Vec::new();
    if vertices.len() >= 2 {
        let n = vertices.len();
        let edges = if n == 2 { 1 } else { n };
        for i in 0..edges {
            let (p, q) = (vertices[i], vertices[(i + 1) % n]);
            if cross((0, 0), p, q) != 0 {
                faces_at_infinity.push((p, q));
            }
        }
    }
    let x_intercept = support.iter().filter(|p| p.1 == 0 && p.0 > 0).map(|p| p.0).max();
    let y_intercept = support.iter().filter(|p| p.0 == 0 && p.1 > 0).map(|p| p.1).max();
    let poly = NewtonPolygonInf { support, vertices, faces_at_infinity, x_intercept, y_intercept };
    poly.check_hull()?;
    Ok(poly)
}

impl NewtonPolygonInf {
    /// Every support point satisfies every edge inequality.
    fn check_hull(&self) -> Result<()> {
        let n = self.vertices.len();
        if n < 3 {
            return Ok(());
        }
        for i in 0..n {
            let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
            if self.support.iter().any(|&s| cross(p, q, s) < 0) {
                return Err(Error::Internal("support point outside the Newton polygon".into()));
            }
        }
        Ok(())
    }

    /// Twice the enclosed area (shoelace).
    pub fn doubled_area(&self) -> i64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0;
        }
        (0..n).map(|i| cross((0, 0), self.vertices[i], self.vertices[(i + 1) % n])).sum()
    }
}

pub fn is_convenient(f: &Poly<Rat>) -> Result<bool> {
    let np = newton_polygon(f)?;
    Ok(np.x_intercept.is_some() && np.y_intercept.is_some())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Coefficients of `f` along the lattice points of the segment `p → q`.
fn along_segment(f: &Poly<Rat>, p: Point, q: Point) -> Vec<Rat> {
    let g = gcd(q.0 - p.0, q.1 - p.1);
    let (dx, dy) = ((q.0 - p.0) / g, (q.1 - p.1) / g);
    (0..=g)
        .map(|k| f.coeff(&Monomial::new(vec![(p.0 + k * dx) as u32, (p.1 + k * dy) as u32])))
        .collect()
}

fn segment_poly(f: &Poly<Rat>, p: Point, q: Point) -> Poly<Rat> {
    let g = gcd(q.0 - p.0, q.1 - p.1);
    let (dx, dy) = ((q.0 - p.0) / g, (q.1 - p.1) / g);
    let terms = along_segment(f, p, q).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
        let k = k as i64;
        (Monomial::new(vec![(p.0 + k * dx) as u32, (p.1 + k * dy) as u32]), c)
    });
    let mut out = f.zero_like();
    for (m, c) in terms {
        out = out.add(&f.constant_like(c).mul_term(&m, &Rat::int(1))).expect("same ring");
    }
    out
}

/// `f_γ` for every face at infinity `γ`, in hull order.
pub fn face_polynomials(f: &Poly<Rat>) -> Result<Vec<Poly<Rat>>> {
    let np = newton_polygon(f)?;
    Ok(np.faces_at_infinity.iter().map(|&(p, q)| segment_poly(f, p, q)).collect())
}

/// No face polynomial has a critical point in the torus.
///
/// Along a face from `p` with primitive step `(dx, dy)` the face polynomial
/// is `x^p₀ y^p₁ · h(x^dx y^dy)` with `h(z) = Σ c_k z^k`, `h(0) ≠ 0`. The
/// monomial `x^dx y^dy` is a submersion on the torus, so torus critical
/// points of `f_γ` are exactly the multiple roots of `h`.
pub fn is_nondegenerate(f: &Poly<Rat>) -> Result<bool> {
    let np = newton_polygon(f)?;
    for &(p, q) in &np.faces_at_infinity {
        let h = UPoly::new(along_segment(f, p, q), ());
        if !h.is_squarefree()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ν = 2S - a - b + 1`; equals the total Milnor number for convenient
/// nondegenerate `f`.
pub fn kouchnirenko_number(f: &Poly<Rat>) -> Result<i64> {
    let np = newton_polygon(f)?;
    match (np.x_intercept, np.y_intercept) {
        (Some(a), Some(b)) => Ok(np.doubled_area() - a - b + 1),
        _ => Err(Error::Precondition("f is not convenient: it needs pure powers of both x and y".into())),
    }
}

/// Compact faces of the local Newton polyhedron `conv(supp f + R²₊)`, the
/// polygon used for singularities at the origin rather than at infinity.
pub fn local_face_polynomials(f: &Poly<Rat>) -> Result<Vec<Poly<Rat>>> {
    let pts = support(f)?;
    let mut chain: Vec<Point> = Vec::new();
    for &p in &pts {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0 {
            chain.pop();
        }
        chain.push(p);
    }
    let mut faces = Vec::new();
    for w in chain.windows(2) {
        if w[1].1 >= w[0].1 {
            break;
        }
        faces.push(segment_poly(f, w[0], w[1]));
    }
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial as p;

    #[test]
    fn polygons() {
        let np = newton_polygon(&p("x^2 + y^2").unwrap()).unwrap();
        assert_eq!(np.vertices, vec![(0, 0), (2, 0), (0, 2)]);
        assert_eq!(np.faces_at_infinity.len(), 1);
        let np = newton_polygon(&p("x^2*y - x").unwrap()).unwrap();
        assert_eq!(np.support, vec![(1, 0), (2, 1)]);
        assert_eq!(np.vertices, vec![(0, 0), (1, 0), (2, 1)]);
        let np = newton_polygon(&p("x").unwrap()).unwrap();
        assert_eq!(np.vertices, vec![(0, 0), (1, 0)]);
        assert!(np.faces_at_infinity.is_empty());
        assert!(newton_polygon(&p("0").unwrap()).is_err());
    }

    #[test]
    fn convenience_and_faces() {
        assert!(is_convenient(&p("x^2 + y^2").unwrap()).unwrap());
        assert!(!is_convenient(&p("x^2*y - x").unwrap()).unwrap());
        assert!(is_convenient(&p("y^2 - x^3").unwrap()).unwrap());
        assert_eq!(face_polynomials(&p("y^2 - x^3").unwrap()).unwrap(), vec![p("y^2 - x^3").unwrap()]);
        let f = p("x^3 + x*y + y^3").unwrap();
        // (1,1) lies strictly inside the triangle, so only one face at infinity
        assert_eq!(face_polynomials(&f).unwrap(), vec![p("x^3 + y^3").unwrap()]);
        assert_eq!(local_face_polynomials(&f).unwrap(), vec![p("x*y + y^3").unwrap(), p("x^3 + x*y").unwrap()]);
    }

    #[test]
    fn nondegeneracy() {
        assert!(is_nondegenerate(&p("x^2 + y^2").unwrap()).unwrap());
        assert!(!is_nondegenerate(&p("x^2 + 2*x*y + y^2").unwrap()).unwrap());
        assert!(is_nondegenerate(&p("y^2 - x^3").unwrap()).unwrap());
    }

    #[test]
    fn kouchnirenko() {
        assert_eq!(kouchnirenko_number(&p("x^2 + y^2").unwrap()).unwrap(), 1);
        assert_eq!(kouchnirenko_number(&p("y^2 - x^3").unwrap()).unwrap(), 2);
        assert_eq!(kouchnirenko_number(&p("x^2 + y^3").unwrap()).unwrap(), 2);
        assert!(matches!(kouchnirenko_number(&p("x^2*y - x").unwrap()), Err(Error::Precondition(_))));
        for a in 2..=6 {
            for b in 2..=6 {
                let f = p(&format!("x^{a} + y^{b}")).unwrap();
                assert_eq!(kouchnirenko_number(&f).unwrap(), (a - 1) * (b - 1));
            }
        }
    }
}
