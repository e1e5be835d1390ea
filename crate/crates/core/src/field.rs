//! Prime fields `F_p` (p > 3) and univariate polynomials over them.
//!
//! Elements carry their modulus so that arithmetic can use ordinary operators.
//! Mixing elements of different fields is a programming error and panics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand_core::RngCore;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported (need p > 3)")]
    CharTooSmall(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero polynomial has every element as a root")]
    ZeroPolynomial,
}

/// Below this bound square roots are found by exhaustive search.
pub const EXHAUSTIVE_SQRT_BOUND: u64 = 1 << 16;

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p == 2 || p == 3 {
            return Err(FieldError::CharTooSmall(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces `v` into the canonical range `[0, p)`.
    pub fn elem(&self, v: u64) -> FieldElement {
        FieldElement {
            value: v % self.p,
            modulus: self.p,
        }
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        let r = v.rem_euclid(self.p as i64) as u64;
        self.elem(r)
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// All elements in ascending canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.p).map(move |v| self.elem(v))
    }

    /// Uniform element by rejection sampling on 64-bit words.
    ///
    /// The sampling procedure is fixed here rather than delegated so that
    /// seeded streams stay reproducible.
    pub fn random_element<R: RngCore + ?Sized>(&self, rng: &mut R) -> FieldElement {
        // accept exactly 2^64 - (2^64 mod p) words, a multiple of p
        let zone = u64::MAX - ((u64::MAX % self.p + 1) % self.p);
        loop {
            let w = rng.next_u64();
            if w <= zone {
                return self.elem(w % self.p);
            }
        }
    }

    /// Table `t[v] = true` iff `v` is a square (zero included).
    pub fn square_table(&self) -> Vec<bool> {
        let mut table = vec![false; self.p as usize];
        for y in 0..self.p {
            table[mul_mod(y, y, self.p) as usize] = true;
        }
        table
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// Canonical residue in `[0, p)` tagged with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// `a^b` with `b` read as a non-negative integer.
    Pow,
    /// Unary; the second operand is ignored.
    Inv,
    /// Unary; the second operand is ignored.
    Neg,
}

/// Applies `op` to `a` and `b`.
pub fn arith(a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
        ArithOp::Pow => Ok(a.pow(b.value)),
        ArithOp::Inv => a.inv(),
        ArithOp::Neg => Ok(-a),
    }
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        FieldElement {
            value: pow_mod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    /// `self^exp` for signed exponents; negative powers of zero fail.
    pub fn pow_signed(&self, exp: i64) -> Result<FieldElement, FieldError> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        }
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.modulus - 2))
    }

    pub fn checked_div(&self, rhs: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(*self * rhs.inv()?)
    }

    /// Euler's criterion: 1 for non-zero squares, p-1 for non-squares, 0 for 0.
    pub fn euler_criterion(&self) -> FieldElement {
        self.pow((self.modulus - 1) / 2)
    }

    pub fn is_square(&self) -> bool {
        self.value == 0 || self.euler_criterion().value == 1
    }

    /// Square roots of `self`, smaller residue first. Empty for non-squares.
    pub fn sqrt(&self) -> Vec<FieldElement> {
        if self.modulus < EXHAUSTIVE_SQRT_BOUND {
            self.sqrt_exhaustive()
        } else {
            self.sqrt_tonelli_shanks()
        }
    }

    pub fn sqrt_exhaustive(&self) -> Vec<FieldElement> {
        let p = self.modulus;
        // roots come in pairs r, p - r, so the smaller one is at most (p - 1) / 2
        (0..=(p - 1) / 2)
            .find(|&r| mul_mod(r, r, p) == self.value)
            .map(|r| self.root_pair(r))
            .unwrap_or_default()
    }

    pub fn sqrt_tonelli_shanks(&self) -> Vec<FieldElement> {
        let p = self.modulus;
        if self.value == 0 {
            return vec![*self];
        }
        if !self.is_square() {
            return Vec::new();
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let field = self.field();
        let mut z = field.elem(2);
        while z.is_square() {
            z += field.one();
        }
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow(q.div_ceil(2));
        while t.value != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2.value != 1 {
                t2 = t2 * t2;
                i += 1;
            }
            let b = c.pow(1u64 << (m - i - 1));
            m = i;
            c = b * b;
            t *= c;
            r *= b;
        }
        self.root_pair(r.value)
    }

    fn root_pair(&self, r: u64) -> Vec<FieldElement> {
        let p = self.modulus;
        let other = (p - r) % p;
        let (lo, hi) = if r <= other { (r, other) } else { (other, r) };
        if lo == hi {
            vec![self.field().elem(lo)]
        } else {
            vec![self.field().elem(lo), self.field().elem(hi)]
        }
    }

    #[inline]
    fn check(&self, rhs: &FieldElement) {
        assert_eq!(self.modulus, rhs.modulus, "mixed field moduli");
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.check(&rhs);
        let s = self.value as u128 + rhs.value as u128;
        FieldElement {
            value: (s % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + (-rhs)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.check(&rhs);
        FieldElement {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: FieldElement) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

/// Dense polynomial, lowest degree first. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: PrimeField, coeffs: Vec<FieldElement>) -> Self {
        let mut poly = Self { field, coeffs };
        poly.normalize();
        poly
    }

    pub fn from_u64s(field: PrimeField, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(c.field(), vec![c])
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field.one())
    }

    /// The monic linear factor `x - root`.
    pub fn x_minus(root: FieldElement) -> Self {
        let field = root.field();
        Self::new(field, vec![-root, field.one()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    /// All roots in `F_p` by a full sweep, ascending.
    pub fn roots(&self) -> Result<Vec<FieldElement>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroPolynomial);
        }
        Ok(self.field.elements().filter(|&x| self.eval(x).is_zero()).collect())
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * self.field.elem(i as u64))
            .collect();
        Polynomial::new(self.field, coeffs)
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        Polynomial::new(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}x"),
                _ => format!("{c}x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                *self.coeffs.get(i).unwrap_or(&zero) + *rhs.coeffs.get(i).unwrap_or(&zero)
            })
            .collect();
        Polynomial::new(self.field, coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &rhs.scale(-self.field.one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(self.field, coeffs)
    }
}
