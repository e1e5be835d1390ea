//! Genus-0 and genus-1 curve models over prime fields.
//!
//! The projective line has points `[α:1]` and `[1:0]`; short Weierstrass curves
//! `y^2 = x^3 + ax + b` have affine points and the point at infinity `[0:1:0]`.
//! No group law is provided.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldError, Polynomial, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("singular curve: 4a^3 + 27b^2 = 0")]
    SingularCurve,
    #[error("operation needs an elliptic curve")]
    WrongCurveKind,
    #[error("q = {q} is too large for exhaustive curve enumeration (limit {limit})")]
    FieldTooLarge { q: u64, limit: u64 },
    #[error("no curve over F_{q} has at least {min_points} points")]
    NoSuchCurve { q: u64, min_points: u64 },
}

/// Largest `q` accepted by [`attained_traces`].
pub const TRACE_SCAN_MAX_Q: u64 = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveKind {
    ProjectiveLine,
    /// `y^2 = x^3 + ax + b`
    Elliptic { a: FieldElement, b: FieldElement },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveModel {
    field: PrimeField,
    kind: CurveKind,
}

/// A rational point. Ordering is canonical: infinity first, then by coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    /// `[x:1]` on the projective line.
    Line(FieldElement),
    Affine(FieldElement, FieldElement),
}

impl CurvePoint {
    pub fn x(&self) -> Option<FieldElement> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Line(x) | CurvePoint::Affine(x, _) => Some(*x),
        }
    }

    pub fn y(&self) -> Option<FieldElement> {
        match self {
            CurvePoint::Affine(_, y) => Some(*y),
            _ => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    /// Coordinates as integers: `[]` for infinity, `[x]` on the line, `[x, y]` otherwise.
    pub fn coords(&self) -> Vec<u64> {
        match self {
            CurvePoint::Infinity => vec![],
            CurvePoint::Line(x) => vec![x.value()],
            CurvePoint::Affine(x, y) => vec![x.value(), y.value()],
        }
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Line(x) => write!(f, "[{x}:1]"),
            CurvePoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

/// How the fiber of `x = α` decomposes on an elliptic curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fiber {
    /// Two rational points `(α, β)`, `(α, -β)` with `β ≠ 0`; `β` is the smaller root.
    Split(FieldElement),
    /// `f(α) = 0`: the single point `(α, 0)`.
    Ramified,
    /// `f(α)` is a non-square: one place of degree 2.
    Inert,
}

impl CurveModel {
    pub fn projective_line(field: PrimeField) -> Self {
        Self {
            field,
            kind: CurveKind::ProjectiveLine,
        }
    }

    pub fn elliptic(field: PrimeField, a: FieldElement, b: FieldElement) -> Result<Self, CurveError> {
        let disc = field.elem(4) * a.pow(3) + field.elem(27) * b * b;
        if disc.is_zero() {
            return Err(CurveError::SingularCurve);
        }
        Ok(Self {
            field,
            kind: CurveKind::Elliptic { a, b },
        })
    }

    /// Convenience constructor from integers.
    pub fn weierstrass(p: u64, a: u64, b: u64) -> Result<Self, CurveError> {
        let field = PrimeField::new(p)?;
        Self::elliptic(field, field.elem(a), field.elem(b))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn genus(&self) -> u8 {
        match self.kind {
            CurveKind::ProjectiveLine => 0,
            CurveKind::Elliptic { .. } => 1,
        }
    }

    pub fn is_elliptic(&self) -> bool {
        self.genus() == 1
    }

    /// `(a, b)` for elliptic curves.
    pub fn coefficients(&self) -> Option<(FieldElement, FieldElement)> {
        match self.kind {
            CurveKind::ProjectiveLine => None,
            CurveKind::Elliptic { a, b } => Some((a, b)),
        }
    }

    /// The cubic `x^3 + ax + b` of an elliptic curve.
    pub fn cubic(&self) -> Option<Polynomial> {
        self.coefficients()
            .map(|(a, b)| Polynomial::new(self.field, vec![b, a, self.field.zero(), self.field.one()]))
    }

    fn cubic_at(&self, x: FieldElement) -> FieldElement {
        let (a, b) = self.coefficients().expect("elliptic curve");
        x * x * x + a * x + b
    }

    pub fn contains(&self, point: &CurvePoint) -> bool {
        match (self.kind, point) {
            (_, CurvePoint::Infinity) => true,
            (CurveKind::ProjectiveLine, CurvePoint::Line(_)) => true,
            (CurveKind::Elliptic { .. }, CurvePoint::Affine(x, y)) => *y * *y == self.cubic_at(*x),
            _ => false,
        }
    }

    pub fn fiber(&self, alpha: FieldElement) -> Result<Fiber, CurveError> {
        if !self.is_elliptic() {
            return Err(CurveError::WrongCurveKind);
        }
        let v = self.cubic_at(alpha);
        if v.is_zero() {
            return Ok(Fiber::Ramified);
        }
        Ok(match v.sqrt().first() {
            Some(&beta) => Fiber::Split(beta),
            None => Fiber::Inert,
        })
    }

    /// All rational points in canonical order: infinity, then `(x, y)` ascending.
    pub fn enumerate_points(&self) -> Vec<CurvePoint> {
        let mut points = vec![CurvePoint::Infinity];
        match self.kind {
            CurveKind::ProjectiveLine => {
                points.extend(self.field.elements().map(CurvePoint::Line));
            }
            CurveKind::Elliptic { .. } => {
                for x in self.field.elements() {
                    for y in self.cubic_at(x).sqrt() {
                        points.push(CurvePoint::Affine(x, y));
                    }
                }
            }
        }
        points
    }

    /// Number of rational points, using a table of squares.
    pub fn point_count(&self) -> u64 {
        match self.kind {
            CurveKind::ProjectiveLine => self.field.modulus() + 1,
            CurveKind::Elliptic { .. } => count_with_table(self, &self.field.square_table()),
        }
    }

    /// Points `(r, 0)` for each rational root `r` of the cubic.
    pub fn rational_zeros_of_y(&self) -> Result<Vec<CurvePoint>, CurveError> {
        let cubic = self.cubic().ok_or(CurveError::WrongCurveKind)?;
        let roots = cubic.roots()?;
        Ok(roots
            .into_iter()
            .map(|r| CurvePoint::Affine(r, self.field.zero()))
            .collect())
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CurveKind::ProjectiveLine => write!(f, "P^1 over {}", self.field),
            CurveKind::Elliptic { a, b } => write!(f, "y^2 = x^3 + {a}x + {b} over {}", self.field),
        }
    }
}

fn count_with_table(curve: &CurveModel, squares: &[bool]) -> u64 {
    let (a, b) = curve.coefficients().expect("elliptic curve");
    let p = curve.field.modulus();
    let (a, b) = (a.value() as u128, b.value() as u128);
    let mut count = 1;
    for x in 0..p as u128 {
        let v = ((x * x % p as u128 * x + a * x + b) % p as u128) as usize;
        count += if v == 0 {
            1
        } else if squares[v] {
            2
        } else {
            0
        };
    }
    count
}

/// Inclusive Hasse interval `[q + 1 - ⌊2√q⌋, q + 1 + ⌊2√q⌋]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HasseWindow {
    pub lo: u64,
    pub hi: u64,
}

impl HasseWindow {
    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && n <= self.hi
    }
}

/// `⌊2√q⌋`, computed exactly as `⌊√(4q)⌋`.
pub fn hasse_radius(q: u64) -> u64 {
    (4 * q).isqrt()
}

pub fn hasse_window(q: u64) -> HasseWindow {
    let r = hasse_radius(q);
    HasseWindow {
        lo: q + 1 - r,
        hi: q + 1 + r,
    }
}

/// Every smooth short Weierstrass curve over `F_q` in lexicographic `(a, b)` order.
pub fn all_curves(field: PrimeField) -> impl Iterator<Item = CurveModel> {
    let p = field.modulus();
    (0..p).flat_map(move |a| {
        (0..p).filter_map(move |b| CurveModel::elliptic(field, field.elem(a), field.elem(b)).ok())
    })
}

/// Traces `a` such that some curve over `F_q` has exactly `q + 1 - a` points,
/// found by enumerating every smooth `(a, b)`.
pub fn attained_traces(q: u64) -> Result<BTreeSet<i64>, CurveError> {
    if q > TRACE_SCAN_MAX_Q {
        return Err(CurveError::FieldTooLarge {
            q,
            limit: TRACE_SCAN_MAX_Q,
        });
    }
    let field = PrimeField::new(q)?;
    let squares = field.square_table();
    Ok(all_curves(field)
        .map(|c| q as i64 + 1 - count_with_table(&c, &squares) as i64)
        .collect())
}

/// Traces predicted by the existence theorem for prime `q`: every `a` with
/// `|a| ≤ 2√q` and `gcd(a, q) = 1`, plus `a = 0` (supersingular curves exist
/// over every prime field).
pub fn predicted_traces(q: u64) -> BTreeSet<i64> {
    let r = hasse_radius(q) as i64;
    (-r..=r)
        .filter(|&a| a == 0 || gcd(a.unsigned_abs(), q) == 1)
        .collect()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// First curve in lexicographic `(a, b)` order with at least `min_points` points.
pub fn find_curve(q: u64, min_points: u64) -> Result<CurveModel, CurveError> {
    find_curve_where(q, min_points, |_| true)
}

/// Like [`find_curve`] with an extra acceptance predicate on the candidate.
pub fn find_curve_where(
    q: u64,
    min_points: u64,
    mut accept: impl FnMut(&CurveModel) -> bool,
) -> Result<CurveModel, CurveError> {
    let field = PrimeField::new(q)?;
    let none = CurveError::NoSuchCurve { q, min_points };
    if min_points > hasse_window(q).hi {
        return Err(none);
    }
    let squares = field.square_table();
    all_curves(field)
        .find(|c| count_with_table(c, &squares) >= min_points && accept(c))
        .ok_or(none)
}

/// A curve with the most points; ties go to the smallest `(a, b)`.
pub fn find_max_curve(q: u64) -> Result<CurveModel, CurveError> {
    let field = PrimeField::new(q)?;
    let squares = field.square_table();
    let mut best: Option<(u64, CurveModel)> = None;
    for c in all_curves(field) {
        let n = count_with_table(&c, &squares);
        if best.is_none_or(|(m, _)| n > m) {
            best = Some((n, c));
        }
    }
    best.map(|(_, c)| c).ok_or(CurveError::NoSuchCurve { q, min_points: 1 })
}

/// Point count and rational zeros of `y`, as printed by `count-points`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSummary {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub points: u64,
    #[serde(rename = "Z")]
    pub z: u64,
}

impl CurveSummary {
    pub fn of(curve: &CurveModel) -> Result<Self, CurveError> {
        let (a, b) = curve.coefficients().ok_or(CurveError::WrongCurveKind)?;
        Ok(Self {
            p: curve.field().modulus(),
            a: a.value(),
            b: b.value(),
            points: curve.point_count(),
            z: curve.rational_zeros_of_y()?.len() as u64,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(p: u64, a: u64, b: u64) -> u64 {
        // independent oracle: test every (x, y) pair
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                if (y * y) % p == (x * x * x + a * x + b) % p {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn point_counts() {
        let c = CurveModel::weierstrass(43, 0, 9).unwrap();
        assert_eq!(c.enumerate_points().len(), 57);
        assert_eq!(c.point_count(), 57);
        let c = CurveModel::weierstrass(127, 1, 33).unwrap();
        assert_eq!(c.enumerate_points().len(), 150);
        let c = CurveModel::weierstrass(5, 0, 1).unwrap();
        assert_eq!(c.enumerate_points().len(), brute_count(5, 0, 1) as usize);
        assert_eq!(c.point_count(), 6);
    }

    #[test]
    fn enumeration_is_canonical_and_on_curve() {
        for (p, a, b) in [(43, 0, 9), (13, 2, 5), (7, 1, 0)] {
            let c = CurveModel::weierstrass(p, a, b).unwrap();
            let pts = c.enumerate_points();
            assert_eq!(pts[0], CurvePoint::Infinity);
            assert_eq!(pts.iter().filter(|p| p.is_infinity()).count(), 1);
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
            for pt in &pts[1..] {
                let (x, y) = (pt.x().unwrap().value(), pt.y().unwrap().value());
                assert_eq!((y * y) % p, (x * x * x + a * x + b) % p);
            }
            assert_eq!(pts.len() as u64, brute_count(p, a, b));
        }
    }

    #[test]
    fn projective_line() {
        let f = PrimeField::new(11).unwrap();
        let line = CurveModel::projective_line(f);
        assert_eq!(line.enumerate_points().len(), 12);
        assert_eq!(line.point_count(), 12);
        assert_eq!(line.genus(), 0);
        assert_eq!(line.rational_zeros_of_y(), Err(CurveError::WrongCurveKind));
    }

    #[test]
    fn zeros_of_y() {
        let c = CurveModel::weierstrass(43, 0, 9).unwrap();
        assert!(c.rational_zeros_of_y().unwrap().is_empty());
        let c = CurveModel::weierstrass(127, 1, 33).unwrap();
        assert_eq!(c.rational_zeros_of_y().unwrap().len(), 1);
        let c = CurveModel::weierstrass(5, 0, 1).unwrap();
        let f = c.field();
        assert_eq!(
            c.rational_zeros_of_y().unwrap(),
            vec![CurvePoint::Affine(f.elem(4), f.zero())]
        );
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(CurveModel::weierstrass(7, 0, 0), Err(CurveError::SingularCurve));
        // 4(-3)^3 + 27(2)^2 = 0: y^2 = x^3 - 3x + 2 is nodal
        assert_eq!(CurveModel::weierstrass(43, 40, 2), Err(CurveError::SingularCurve));
    }

    #[test]
    fn hasse() {
        assert_eq!(hasse_window(43), HasseWindow { lo: 31, hi: 57 });
        assert_eq!(hasse_window(127), HasseWindow { lo: 106, hi: 150 });
        assert_eq!(hasse_window(5), HasseWindow { lo: 2, hi: 10 });
    }

    #[test]
    fn traces_fill_predicted_set() {
        for q in [5u64, 7] {
            let attained = attained_traces(q).unwrap();
            assert_eq!(attained, predicted_traces(q));
            let w = hasse_window(q);
            assert!(attained.iter().all(|&a| w.contains((q as i64 + 1 - a) as u64)));
        }
        let attained = attained_traces(7).unwrap();
        assert!(attained.contains(&-5)); // 13 = 7 + 1 + 5 points
        assert!(matches!(
            attained_traces(509),
            Err(CurveError::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn curve_search() {
        let c = find_curve(43, 57).unwrap();
        assert_eq!(c.point_count(), 57);
        assert_eq!(CurveModel::weierstrass(43, 0, 9).unwrap().point_count(), 57);
        let c = find_curve(127, 150).unwrap();
        assert_eq!(c.point_count(), 150);
        assert_eq!(
            find_curve(43, 60),
            Err(CurveError::NoSuchCurve { q: 43, min_points: 60 })
        );
        assert_eq!(find_max_curve(43).unwrap().point_count(), 57);
    }

    #[test]
    fn fibers() {
        let c = CurveModel::weierstrass(5, 0, 1).unwrap();
        let f = c.field();
        assert_eq!(c.fiber(f.elem(4)).unwrap(), Fiber::Ramified);
        // f(0) = 1 = 1^2
        assert_eq!(c.fiber(f.zero()).unwrap(), Fiber::Split(f.one()));
        // f(1) = 2, a non-square mod 5
        assert_eq!(c.fiber(f.one()).unwrap(), Fiber::Inert);
    }
}
