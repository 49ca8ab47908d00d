//! Lower convex hulls with exact rational heights.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Height<T: Clone + num_integer::Integer> {
    Finite(Ratio<T>),
    Infinite,
}

impl<T: Scalar> Height<T> {
    pub fn finite(&self) -> Option<&Ratio<T>> {
        match self {
            Height::Finite(r) => Some(r),
            Height::Infinite => None,
        }
    }
}

impl<T: Scalar> fmt::Display for Height<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Height::Infinite => write!(f, "inf"),
        }
    }
}

impl<T: Scalar> Serialize for Height<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Newton polygon: the input points and the vertices of their lower convex
/// hull. Points at infinite height never support the hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon<T: Clone + num_integer::Integer> {
    points: Vec<(u64, Height<T>)>,
    vertices: Vec<(u64, Ratio<T>)>,
}

impl<T: Scalar> Polygon<T> {
    /// Lower hull of `points`, which must contain `(0, 0)` and have distinct
    /// abscissae. Collinear interior points are not vertices.
    pub fn lower_hull(points: Vec<(u64, Height<T>)>) -> Result<Self> {
        let mut points = points;
        points.sort_by_key(|(x, _)| *x);
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("polygon abscissae must be distinct"));
        }
        match points.first() {
            Some((0, Height::Finite(h))) if h.is_zero() => {}
            _ => return Err(Error::invalid("polygon points must include (0, 0)")),
        }
        let mut hull: Vec<(u64, Ratio<T>)> = Vec::new();
        for (x, h) in &points {
            let Height::Finite(y) = h else { continue };
            while hull.len() >= 2 {
                let (x0, y0) = &hull[hull.len() - 2];
                let (x1, y1) = &hull[hull.len() - 1];
                // drop (x1, y1) unless it lies strictly below the chord
                let lhs = (y1.clone() - y0.clone()) * Ratio::from_integer(T::of_u64(x - x0));
                let rhs = (y.clone() - y0.clone()) * Ratio::from_integer(T::of_u64(x1 - x0));
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((*x, y.clone()));
        }
        Ok(Polygon { points, vertices: hull })
    }

    pub fn points(&self) -> &[(u64, Height<T>)] {
        &self.points
    }

    pub fn vertices(&self) -> &[(u64, Ratio<T>)] {
        &self.vertices
    }

    /// Slopes of consecutive hull segments, strictly increasing.
    pub fn slopes(&self) -> Vec<Ratio<T>> {
        self.vertices
            .windows(2)
            .map(|w| (w[1].1.clone() - w[0].1.clone()) / Ratio::from_integer(T::of_u64(w[1].0 - w[0].0)))
            .collect()
    }

    /// The vertex after `(0, 0)`.
    pub fn first_vertex(&self) -> Result<(u64, Ratio<T>)> {
        self.vertices
            .get(1)
            .cloned()
            .ok_or_else(|| Error::Degenerate("no finite point beyond the origin".into()))
    }

    pub fn first_slope(&self) -> Result<Ratio<T>> {
        let (x, y) = self.first_vertex()?;
        Ok(y / Ratio::from_integer(T::of_u64(x)))
    }

    /// Height of the hull at integer abscissa `x`, if `x` is within range.
    pub fn height_at(&self, x: u64) -> Option<Ratio<T>> {
        let w = self.vertices.windows(2).find(|w| w[0].0 <= x && x <= w[1].0)?;
        let (x0, y0) = &w[0];
        let (x1, y1) = &w[1];
        let t = Ratio::new(T::of_u64(x - x0), T::of_u64(x1 - x0));
        Some(y0.clone() + (y1.clone() - y0.clone()) * t)
    }
}

impl<T: Scalar> Serialize for Polygon<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let points: Vec<(u64, String)> = self.points.iter().map(|(x, h)| (*x, h.to_string())).collect();
        let vertices: Vec<(u64, String)> = self
            .vertices
            .iter()
            .map(|(x, y)| (*x, format!("{}/{}", y.numer(), y.denom())))
            .collect();
        let mut st = s.serialize_struct("Polygon", 2)?;
        st.serialize_field("points", &points)?;
        st.serialize_field("vertices", &vertices)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Polygon<i64>;

    fn fin(n: i64, d: i64) -> Height<i64> {
        Height::Finite(Ratio::new(n, d))
    }

    #[test]
    fn hull_examples() {
        let a = P::lower_hull(vec![(0, fin(0, 1)), (1, Height::Infinite), (2, fin(1, 1))]).unwrap();
        assert_eq!(a.vertices(), &[(0, Ratio::from(0)), (2, Ratio::from(1))]);
        let b = P::lower_hull(vec![(0, fin(0, 1)), (1, fin(1, 1)), (2, fin(2, 1))]).unwrap();
        assert_eq!(b.vertices(), &[(0, Ratio::from(0)), (2, Ratio::from(2))]);
        assert_eq!(b.slopes(), vec![Ratio::from(1)]);
        let c = P::lower_hull(vec![(0, fin(0, 1)), (1, fin(1, 1)), (2, fin(1, 1))]).unwrap();
        assert_eq!(c.first_vertex().unwrap(), (2, Ratio::from(1)));
        assert_eq!(c.first_slope().unwrap(), Ratio::new(1, 2));
        assert_eq!(c.height_at(1), Some(Ratio::new(1, 2)));
    }

    #[test]
    fn first_vertex_of_multi_segment_hull() {
        let a = P::lower_hull(vec![(0, fin(0, 1)), (2, fin(1, 1)), (3, fin(2, 1))]).unwrap();
        assert_eq!(a.first_vertex().unwrap(), (2, Ratio::from(1)));
        assert_eq!(a.vertices().len(), 3);
    }

    #[test]
    fn missing_origin_or_all_infinite() {
        assert!(P::lower_hull(vec![(1, fin(0, 1))]).is_err());
        assert!(P::lower_hull(vec![(0, fin(1, 2))]).is_err());
        let d = P::lower_hull(vec![(0, fin(0, 1)), (1, Height::Infinite)]).unwrap();
        assert!(matches!(d.first_vertex(), Err(Error::Degenerate(_))));
    }
}
