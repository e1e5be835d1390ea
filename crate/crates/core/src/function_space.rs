//! Rational functions on the projective line and on short Weierstrass curves,
//! divisor bookkeeping, Riemann-Roch dimensions and the explicit bases used by
//! the retrieval schemes.
//!
//! Functions are kept in factored form `c · Π (x - α)^e · y^k` whenever
//! possible. Valuations and divisors are only available in that form. Every
//! function also carries an expanded form `(u(x) + y·v(x)) / den(x)`, used for
//! evaluation of functions that were built without factors.
//!
//! Places on a genus-1 curve are rational points, the point at infinity, the
//! degree-2 place over an `x = α` whose fiber has no rational point, and the
//! aggregate place `YZeros` standing for the degree-3 divisor `(y)_0`. The `y`
//! atom contributes only to `YZeros`; a factor `(x - r)` with `r` a root of the
//! cubic contributes `2·(r, 0)`. Valuations at rational points are always exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, CurveModel, CurvePoint, Fiber};
use crate::field::{FieldElement, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("scalar must be non-zero")]
    ZeroScalar,
    #[error("function has no factored form")]
    NotFactored,
    #[error("function has a pole at {0:?}")]
    PoleAtPoint(CurvePoint),
    #[error("evaluation at the point at infinity is not supported")]
    InfinityUnsupported,
    #[error("point {0:?} is not on the curve")]
    PointNotOnCurve(CurvePoint),
    #[error("{0:?} is not a place of this curve")]
    InvalidPlace(Place),
    #[error("the coordinate y does not exist on the projective line")]
    NoYOnLine,
    #[error("functions live on different curves")]
    CurveMismatch,
    #[error("pole order must be non-negative, got {0}")]
    NegativeOrder(i64),
    #[error("duplicate interpolation node {0}")]
    DuplicateAlpha(FieldElement),
    #[error("genus-1 interpolation needs odd L, got {0}")]
    EvenL(usize),
    #[error("{0:?} is a 2-torsion point (y = 0)")]
    TwoTorsionPoint(CurvePoint),
    #[error("{0:?} and {1:?} are not conjugate points (α, ±β)")]
    MismatchedPair(CurvePoint, CurvePoint),
    #[error("expected {expected} point pairs, got {got}")]
    PairCount { expected: usize, got: usize },
    #[error("operation needs genus {expected}")]
    WrongGenus { expected: u8 },
    #[error("ℓ(D) of a non-zero degree-0 divisor on genus 1 needs a principality test")]
    UnsupportedDivisor,
    #[error("expanded form has a zero denominator or numerator")]
    DegenerateExpansion,
}

/// A place of the function field, see the module docs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Point(CurvePoint),
    /// The degree-2 place above `x = α` when `f(α)` is a non-square.
    XFiber(FieldElement),
    /// The zero divisor of `y`, taken as one place of degree 3.
    YZeros,
}

impl Place {
    /// Maps `CurvePoint::Infinity` to [`Place::Infinity`].
    pub fn point(p: CurvePoint) -> Place {
        if p.is_infinity() {
            Place::Infinity
        } else {
            Place::Point(p)
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            Place::Infinity | Place::Point(_) => 1,
            Place::XFiber(_) => 2,
            Place::YZeros => 3,
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "P∞"),
            Place::Point(p) => write!(f, "{p:?}"),
            Place::XFiber(a) => write!(f, "(x-{a})_0"),
            Place::YZeros => write!(f, "(y)_0"),
        }
    }
}

/// Finite formal sum of places.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    genus: u8,
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero(genus: u8) -> Self {
        Self {
            genus,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(genus: u8, terms: impl IntoIterator<Item = (Place, i64)>) -> Self {
        let mut d = Self::zero(genus);
        for (place, c) in terms {
            d.add_term(place, c);
        }
        d
    }

    /// `m·P∞`.
    pub fn at_infinity(genus: u8, m: i64) -> Self {
        Self::from_terms(genus, [(Place::Infinity, m)])
    }

    pub fn add_term(&mut self, place: Place, c: i64) {
        let entry = self.coeffs.entry(place).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&place);
        }
    }

    pub fn genus(&self) -> u8 {
        self.genus
    }

    pub fn coefficient(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().map(|(p, c)| c * p.degree()).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// Coefficientwise `self ≤ other`.
    pub fn is_le(&self, other: &Divisor) -> bool {
        (other - self).is_effective()
    }

    /// Riemann-Roch dimension `ℓ(D)` for genus 0 and 1.
    ///
    /// On genus 0 the canonical divisor is `-2P∞`, on genus 1 it is `0`.
    pub fn rr_dim(&self) -> Result<i64, FunctionError> {
        let deg = self.degree();
        if deg < 0 {
            return Ok(0);
        }
        match self.genus {
            0 => Ok(deg + 1),
            _ if deg >= 1 => Ok(deg),
            _ if self.is_zero() => Ok(1),
            _ => Err(FunctionError::UnsupportedDivisor),
        }
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(p, c)| format!("{c}·{p:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (&p, &c) in &rhs.coeffs {
            out.add_term(p, c);
        }
        out
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        self + &(-rhs)
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|(&p, &c)| (p, -c)).collect(),
        }
    }
}

/// Exponents of the atoms `(x - α)` and `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factors {
    x: BTreeMap<FieldElement, i64>,
    y: i64,
}

impl Factors {
    pub fn x_factors(&self) -> impl Iterator<Item = (FieldElement, i64)> + '_ {
        self.x.iter().map(|(&a, &e)| (a, e))
    }

    pub fn x_exponent(&self, alpha: FieldElement) -> i64 {
        self.x.get(&alpha).copied().unwrap_or(0)
    }

    pub fn y_power(&self) -> i64 {
        self.y
    }

    fn mul(&self, other: &Factors) -> Factors {
        let mut x = self.x.clone();
        for (&a, &e) in &other.x {
            let entry = x.entry(a).or_insert(0);
            *entry += e;
            if *entry == 0 {
                x.remove(&a);
            }
        }
        Factors { x, y: self.y + other.y }
    }

    fn total_x_degree(&self) -> i64 {
        self.x.values().sum()
    }
}

/// `(u(x) + y·v(x)) / den(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expanded {
    pub u: Polynomial,
    pub v: Polynomial,
    pub den: Polynomial,
}

/// Serializable atom list of a factored function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionDescriptor {
    pub scalar: u64,
    /// `[α, exponent]` pairs, ascending in `α`.
    pub x_factors: Vec<(u64, i64)>,
    pub y_power: i64,
}

#[derive(Clone)]
pub struct RationalFunction {
    curve: CurveModel,
    scalar: FieldElement,
    factors: Option<Factors>,
    // derived from `factors` on first use when those are present
    expanded: OnceLock<Expanded>,
}

impl RationalFunction {
    /// `scalar · Π (x - α)^e · y^k`.
    pub fn monomial(
        curve: CurveModel,
        scalar: FieldElement,
        x_factors: impl IntoIterator<Item = (FieldElement, i64)>,
        y_power: i64,
    ) -> Result<Self, FunctionError> {
        if scalar.is_zero() {
            return Err(FunctionError::ZeroScalar);
        }
        if y_power != 0 && !curve.is_elliptic() {
            return Err(FunctionError::NoYOnLine);
        }
        let mut factors = Factors {
            x: BTreeMap::new(),
            y: y_power,
        };
        for (a, e) in x_factors {
            factors = factors.mul(&Factors {
                x: BTreeMap::from([(a, e)]),
                y: 0,
            });
        }
        Ok(Self::from_factors(curve, scalar, factors))
    }

    fn from_factors(curve: CurveModel, scalar: FieldElement, factors: Factors) -> Self {
        Self {
            curve,
            scalar,
            factors: Some(factors),
            expanded: OnceLock::new(),
        }
    }

    /// A function given only by its expanded form; it has no valuations.
    pub fn from_expanded(
        curve: CurveModel,
        u: Polynomial,
        v: Polynomial,
        den: Polynomial,
    ) -> Result<Self, FunctionError> {
        if den.is_zero() || (u.is_zero() && v.is_zero()) {
            return Err(FunctionError::DegenerateExpansion);
        }
        if !v.is_zero() && !curve.is_elliptic() {
            return Err(FunctionError::NoYOnLine);
        }
        Ok(Self {
            curve,
            scalar: curve.field().one(),
            factors: None,
            expanded: OnceLock::from(Expanded { u, v, den }),
        })
    }

    pub fn constant(curve: CurveModel, c: FieldElement) -> Result<Self, FunctionError> {
        Self::monomial(curve, c, [], 0)
    }

    pub fn one(curve: CurveModel) -> Self {
        Self::from_factors(curve, curve.field().one(), Factors::default())
    }

    pub fn x_minus(curve: CurveModel, alpha: FieldElement) -> Self {
        Self::monomial(curve, curve.field().one(), [(alpha, 1)], 0).expect("valid monomial")
    }

    /// `x^i`, i.e. the atom `(x - 0)` raised to `i`.
    pub fn x_pow(curve: CurveModel, i: i64) -> Self {
        Self::monomial(curve, curve.field().one(), [(curve.field().zero(), i)], 0)
            .expect("valid monomial")
    }

    pub fn y(curve: CurveModel) -> Result<Self, FunctionError> {
        Self::monomial(curve, curve.field().one(), [], 1)
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn scalar(&self) -> FieldElement {
        self.scalar
    }

    pub fn factors(&self) -> Option<&Factors> {
        self.factors.as_ref()
    }

    pub fn expanded(&self) -> &Expanded {
        self.expanded.get_or_init(|| {
            let f = self.factors.as_ref().expect("expanded-only functions are initialised");
            expand(&self.curve, self.scalar, f)
        })
    }

    pub fn is_factored(&self) -> bool {
        self.factors.is_some()
    }

    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction, FunctionError> {
        if self.curve != other.curve {
            return Err(FunctionError::CurveMismatch);
        }
        if let (Some(a), Some(b)) = (&self.factors, &other.factors) {
            return Ok(Self::from_factors(
                self.curve,
                self.scalar * other.scalar,
                a.mul(b),
            ));
        }
        let (e1, e2) = (self.expanded(), other.expanded());
        let cubic = self
            .curve
            .cubic()
            .unwrap_or_else(|| Polynomial::zero(self.curve.field()));
        let u = &(&e1.u * &e2.u) + &(&cubic * &(&e1.v * &e2.v));
        let v = &(&e1.u * &e2.v) + &(&e2.u * &e1.v);
        let den = &e1.den * &e2.den;
        Self::from_expanded(self.curve, u, v, den)
    }

    pub fn scale(&self, c: FieldElement) -> Result<RationalFunction, FunctionError> {
        if c.is_zero() {
            return Err(FunctionError::ZeroScalar);
        }
        Ok(match &self.factors {
            Some(f) => Self::from_factors(self.curve, self.scalar * c, f.clone()),
            None => {
                let e = self.expanded();
                Self::from_expanded(self.curve, e.u.scale(c), e.v.scale(c), e.den.clone())?
            }
        })
    }

    /// Multiplicative inverse; needs the factored form.
    pub fn inverse(&self) -> Result<RationalFunction, FunctionError> {
        let f = self.factors.as_ref().ok_or(FunctionError::NotFactored)?;
        let inv = Factors {
            x: f.x.iter().map(|(&a, &e)| (a, -e)).collect(),
            y: -f.y,
        };
        Ok(Self::from_factors(
            self.curve,
            self.scalar.inv().expect("scalar is non-zero"),
            inv,
        ))
    }

    /// Value at an affine point.
    pub fn eval(&self, point: &CurvePoint) -> Result<FieldElement, FunctionError> {
        if point.is_infinity() {
            return Err(FunctionError::InfinityUnsupported);
        }
        if !self.curve.contains(point) {
            return Err(FunctionError::PointNotOnCurve(*point));
        }
        match &self.factors {
            Some(f) => self.eval_factored(f, point),
            None => self.eval_expanded(point),
        }
    }

    /// Value from the expanded form; fails whenever the denominator vanishes.
    pub fn eval_expanded(&self, point: &CurvePoint) -> Result<FieldElement, FunctionError> {
        let x0 = point.x().ok_or(FunctionError::InfinityUnsupported)?;
        let e = self.expanded();
        let den = e.den.eval(x0);
        if den.is_zero() {
            return Err(FunctionError::PoleAtPoint(*point));
        }
        let mut num = e.u.eval(x0);
        if let Some(y0) = point.y() {
            num += y0 * e.v.eval(x0);
        }
        Ok(num * den.inv().expect("non-zero denominator"))
    }

    fn eval_factored(&self, f: &Factors, point: &CurvePoint) -> Result<FieldElement, FunctionError> {
        let x0 = point.x().expect("affine point");
        let v = self.valuation(&Place::Point(*point))?;
        if v < 0 {
            return Err(FunctionError::PoleAtPoint(*point));
        }
        if v > 0 {
            return Ok(self.curve.field().zero());
        }
        let mut value = self.scalar;
        for (&a, &e) in &f.x {
            if a != x0 {
                value *= (x0 - a).pow_signed(e).expect("non-zero base");
            }
        }
        match point.y() {
            Some(y0) if y0.is_zero() => {
                // (x - x0)^e y^(-2e) is a unit at (x0, 0) with value f'(x0)^(-e)
                let e = f.x_exponent(x0);
                let slope = self.curve.cubic().expect("elliptic").derivative().eval(x0);
                value *= slope.pow_signed(-e).expect("smooth curve");
            }
            Some(y0) => value *= y0.pow_signed(f.y).expect("non-zero y"),
            None => {}
        }
        Ok(value)
    }

    /// Order of vanishing at `place`.
    pub fn valuation(&self, place: &Place) -> Result<i64, FunctionError> {
        let f = self.factors.as_ref().ok_or(FunctionError::NotFactored)?;
        let elliptic = self.curve.is_elliptic();
        match place {
            Place::Infinity if elliptic => Ok(-2 * f.total_x_degree() - 3 * f.y),
            Place::Infinity => Ok(-f.total_x_degree()),
            Place::Point(p) => {
                if !self.curve.contains(p) || p.is_infinity() {
                    return Err(FunctionError::InvalidPlace(*place));
                }
                let x0 = p.x().expect("affine");
                match p.y() {
                    Some(y0) if y0.is_zero() => Ok(2 * f.x_exponent(x0) + f.y),
                    _ => Ok(f.x_exponent(x0)),
                }
            }
            Place::XFiber(a) if elliptic && self.curve.fiber(*a)? == Fiber::Inert => {
                Ok(f.x_exponent(*a))
            }
            Place::YZeros if elliptic => Ok(f.y),
            _ => Err(FunctionError::InvalidPlace(*place)),
        }
    }

    /// Principal divisor, see the module docs for the `YZeros` convention.
    pub fn divisor(&self) -> Result<Divisor, FunctionError> {
        let f = self.factors.as_ref().ok_or(FunctionError::NotFactored)?;
        let genus = self.curve.genus();
        let mut d = Divisor::zero(genus);
        for (&a, &e) in &f.x {
            if genus == 0 {
                d.add_term(Place::Point(CurvePoint::Line(a)), e);
                d.add_term(Place::Infinity, -e);
                continue;
            }
            match self.curve.fiber(a)? {
                Fiber::Split(beta) => {
                    d.add_term(Place::Point(CurvePoint::Affine(a, beta)), e);
                    d.add_term(Place::Point(CurvePoint::Affine(a, -beta)), e);
                }
                Fiber::Ramified => {
                    d.add_term(Place::Point(CurvePoint::Affine(a, self.curve.field().zero())), 2 * e)
                }
                Fiber::Inert => d.add_term(Place::XFiber(a), e),
            }
            d.add_term(Place::Infinity, -2 * e);
        }
        if f.y != 0 {
            d.add_term(Place::YZeros, f.y);
            d.add_term(Place::Infinity, -3 * f.y);
        }
        Ok(d)
    }

    /// `f ∈ L(D)`, i.e. `(f) + D ≥ 0`.
    pub fn in_space(&self, d: &Divisor) -> Result<bool, FunctionError> {
        Ok((&self.divisor()? + d).is_effective())
    }

    pub fn descriptor(&self) -> Result<FunctionDescriptor, FunctionError> {
        let f = self.factors.as_ref().ok_or(FunctionError::NotFactored)?;
        Ok(FunctionDescriptor {
            scalar: self.scalar.value(),
            x_factors: f.x.iter().map(|(a, &e)| (a.value(), e)).collect(),
            y_power: f.y,
        })
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(f) = &self.factors else {
            return write!(fm, "{:?}", self.expanded());
        };
        write!(fm, "{}", self.scalar)?;
        for (a, e) in &f.x {
            write!(fm, "·(x-{a})^{e}")?;
        }
        if f.y != 0 {
            write!(fm, "·y^{}", f.y)?;
        }
        Ok(())
    }
}

fn expand(curve: &CurveModel, scalar: FieldElement, f: &Factors) -> Expanded {
    let field = curve.field();
    let mut num = Polynomial::constant(scalar);
    let mut den = Polynomial::one(field);
    for (&a, &e) in &f.x {
        let lin = Polynomial::x_minus(a).pow(e.unsigned_abs() as u32);
        if e > 0 {
            num = &num * &lin;
        } else {
            den = &den * &lin;
        }
    }
    let zero = Polynomial::zero(field);
    if f.y == 0 {
        return Expanded { u: num, v: zero, den };
    }
    let cubic = curve.cubic().expect("y only exists on elliptic curves");
    let k = f.y.unsigned_abs() as u32;
    // y^k = f^(k/2) · y^(k mod 2), and y^(-k) = y^k / f^k
    num = &num * &cubic.pow(k / 2);
    if f.y < 0 {
        den = &den * &cubic.pow(k);
    }
    if k % 2 == 1 {
        Expanded { u: zero, v: num, den }
    } else {
        Expanded { u: num, v: zero, den }
    }
}

/// Basis of `L(m·P∞)`: `{x^i}` on genus 0, `{x^i : 2i ≤ m} ∪ {y·x^i : 2i + 3 ≤ m}` on genus 1.
pub fn basis_poles_at_infinity(curve: &CurveModel, m: i64) -> Result<Vec<RationalFunction>, FunctionError> {
    if m < 0 {
        return Err(FunctionError::NegativeOrder(m));
    }
    if !curve.is_elliptic() {
        return Ok((0..=m).map(|i| RationalFunction::x_pow(*curve, i)).collect());
    }
    let zero = curve.field().zero();
    let one = curve.field().one();
    let mut basis: Vec<_> = (0..=m / 2)
        .map(|i| RationalFunction::x_pow(*curve, i))
        .collect();
    if m >= 3 {
        for i in 0..=(m - 3) / 2 {
            basis.push(RationalFunction::monomial(*curve, one, [(zero, i)], 1)?);
        }
    }
    Ok(basis)
}

/// `h_ℓ = 1 / (x - α_ℓ)` for each node, each with divisor `P∞ - P_ℓ`.
pub fn interp_basis_g0(curve: &CurveModel, alphas: &[FieldElement]) -> Result<Vec<RationalFunction>, FunctionError> {
    if curve.is_elliptic() {
        return Err(FunctionError::WrongGenus { expected: 0 });
    }
    check_distinct(alphas)?;
    Ok(alphas
        .iter()
        .map(|&a| {
            RationalFunction::monomial(*curve, curve.field().one(), [(a, -1)], 0)
                .expect("valid monomial")
        })
        .collect())
}

fn check_distinct(alphas: &[FieldElement]) -> Result<(), FunctionError> {
    for (i, a) in alphas.iter().enumerate() {
        if alphas[..i].contains(a) {
            return Err(FunctionError::DuplicateAlpha(*a));
        }
    }
    Ok(())
}

/// Genus-1 interpolation basis for `L = 2J - 1` fragments.
///
/// With `h = 1 / Π_j (x - α_j)`, returns
/// `h^(1)_j = h · Π_{j' ≠ j} (x - α_j')` for `j = 1..J` followed by
/// `h^(2)_j = h · y · Π_{j' ∈ [J-1], j' ≠ j} (x - α_j')` for `j = 1..J-1`.
pub fn interp_basis_g1(
    curve: &CurveModel,
    l: usize,
    pairs: &[(CurvePoint, CurvePoint)],
) -> Result<Vec<RationalFunction>, FunctionError> {
    if !curve.is_elliptic() {
        return Err(FunctionError::WrongGenus { expected: 1 });
    }
    if l.is_multiple_of(2) {
        return Err(FunctionError::EvenL(l));
    }
    let j_count = l.div_ceil(2);
    if pairs.len() != j_count {
        return Err(FunctionError::PairCount {
            expected: j_count,
            got: pairs.len(),
        });
    }
    let mut alphas = Vec::with_capacity(j_count);
    for (p, pbar) in pairs {
        for q in [p, pbar] {
            if !curve.contains(q) || q.is_infinity() {
                return Err(FunctionError::PointNotOnCurve(*q));
            }
        }
        let (x, y) = (p.x().unwrap(), p.y().unwrap());
        if y.is_zero() {
            return Err(FunctionError::TwoTorsionPoint(*p));
        }
        if pbar.x() != Some(x) || pbar.y() != Some(-y) {
            return Err(FunctionError::MismatchedPair(*p, *pbar));
        }
        alphas.push(x);
    }
    check_distinct(&alphas)?;

    let one = curve.field().one();
    let h = RationalFunction::monomial(*curve, one, alphas.iter().map(|&a| (a, -1)), 0)?;
    let interp = |nodes: &[FieldElement], skip: usize| {
        RationalFunction::monomial(
            *curve,
            one,
            nodes
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &a)| (a, 1)),
            0,
        )
    };
    let y = RationalFunction::y(*curve)?;
    let mut basis = Vec::with_capacity(l);
    for j in 0..j_count {
        basis.push(h.mul(&interp(&alphas, j)?)?);
    }
    for j in 0..j_count - 1 {
        basis.push(h.mul(&y)?.mul(&interp(&alphas[..j_count - 1], j)?)?);
    }
    Ok(basis)
}

/// Basis of `L(m·P∞ + (y)_0)` on genus 1: `{x^i : 2i ≤ m} ∪ {x^j / y : 2j ≤ m + 3}`.
///
/// The two families live in `F(x)` and `y·F(x)` respectively, so they are
/// independent; together they have `m + 3 = ℓ(m·P∞ + (y)_0)` members.
pub fn noise_basis_g1(curve: &CurveModel, m: i64) -> Result<Vec<RationalFunction>, FunctionError> {
    if !curve.is_elliptic() {
        return Err(FunctionError::WrongGenus { expected: 1 });
    }
    if m < 0 {
        return Err(FunctionError::NegativeOrder(m));
    }
    let zero = curve.field().zero();
    let one = curve.field().one();
    let mut basis: Vec<_> = (0..=m / 2)
        .map(|i| RationalFunction::x_pow(*curve, i))
        .collect();
    for j in 0..=(m + 3) / 2 {
        basis.push(RationalFunction::monomial(*curve, one, [(zero, j)], -1)?);
    }
    Ok(basis)
}

/// `(y)_0` as a divisor.
pub fn y_zero_divisor() -> Divisor {
    Divisor::from_terms(1, [(Place::YZeros, 1)])
}
