//! Retrieval schemes built from evaluation codes, and the four protocol steps.
//!
//! A [`SchemeInstance`] fixes a curve, the fragment points carrying the
//! interpolation functions `h_ℓ`, the `N` evaluation points (one per server)
//! and the bases of the information, noise, privacy and security spaces.
//! [`build_scheme`] produces it deterministically from [`SchemeParams`] and
//! refuses to return an instance that fails [`verify_scheme`].
//!
//! Protocol randomness comes from a caller-supplied generator. The draw order
//! is fixed: security noise for every `(ℓ, m)` in `ℓ`-major order, then
//! privacy noise in the same order.

mod build;
mod descriptor;
mod protocol;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agcode::{CodeError, LinearCode};
use crate::curve::{CurveError, CurveModel, CurvePoint};
use crate::field::{FieldElement, FieldError, PrimeField};
use crate::function_space::{Divisor, FunctionError, Place, RationalFunction};
use crate::linalg::{LeftInverse, Matrix};

pub use build::{build_scheme, BUILD_SUBSET_SAMPLES};
pub use descriptor::{BasisDescriptors, CurveCoefficients, SchemeDescriptor};
pub use protocol::{
    decode, make_queries, queries_with_noise, respond_all, server_respond, store, store_with_noise,
    Database, QuerySet, ResponseVector, ShareSet, ZeroNoise,
};
pub use verify::{verify_scheme, ConditionCheck, VerificationReport};

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("X and T must both be at least 1 (got X = {x}, T = {t})")]
    DegenerateLevel { x: usize, t: usize },
    #[error("invalid L = {l}: {reason}")]
    BadL { l: usize, reason: &'static str },
    #[error("infeasible parameters: {constraint}")]
    Infeasible { constraint: String },
    #[error("curve has {points} rational points, 2L + X + T + 11 + Z = {needed} are needed")]
    CurveTooSmall { points: u64, needed: u64 },
    #[error("a genus-0 scheme takes no curve coefficients")]
    UnexpectedCurve,
    #[error("evaluation points reach rank {achieved}, {needed} needed")]
    PointSelection { achieved: usize, needed: usize },
    #[error("scheme conditions failed: {0}")]
    VerificationFailed(String),
    #[error("{what}: expected {expected}, got {got}")]
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("file index {theta} out of range for {files} files")]
    BadTheta { theta: usize, files: usize },
    #[error("database holds no files")]
    EmptyDatabase,
    #[error("response vector is not a valid codeword")]
    InconsistentSystem,
    #[error("descriptor does not match the rebuilt scheme: {0}")]
    DescriptorMismatch(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Genus of the underlying curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Genus {
    Zero,
    One,
}

impl Genus {
    pub fn as_u8(self) -> u8 {
        match self {
            Genus::Zero => 0,
            Genus::One => 1,
        }
    }
}

impl From<Genus> for u8 {
    fn from(g: Genus) -> u8 {
        g.as_u8()
    }
}

impl TryFrom<u8> for Genus {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            0 => Ok(Genus::Zero),
            1 => Ok(Genus::One),
            _ => Err(format!("genus must be 0 or 1, got {v}")),
        }
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Exact rate `num / den`, not reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rate {
    pub num: usize,
    pub den: usize,
}

impl Rate {
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact `self > other` by cross-multiplication.
    pub fn exceeds(&self, other: &Rate) -> bool {
        (self.num as u128) * (other.den as u128) > (other.num as u128) * (self.den as u128)
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub p: u64,
    pub genus: Genus,
    pub x: usize,
    pub t: usize,
    pub l: usize,
    /// `(a, b)` of `y² = x³ + a x + b`; searched for when absent.
    pub curve: Option<(u64, u64)>,
    pub seed: u64,
}

impl SchemeParams {
    pub fn new(p: u64, genus: Genus, x: usize, t: usize, l: usize, seed: u64) -> Self {
        Self {
            p,
            genus,
            x,
            t,
            l,
            curve: None,
            seed,
        }
    }

    pub fn with_curve(mut self, a: u64, b: u64) -> Self {
        self.curve = Some((a, b));
        self
    }
}

/// A built scheme. Immutable and `Sync`.
#[derive(Debug, Clone)]
pub struct SchemeInstance {
    params: SchemeParams,
    curve: CurveModel,
    fragment_points: Vec<CurvePoint>,
    fragment_pairs: Vec<(CurvePoint, CurvePoint)>,
    eval_points: Vec<CurvePoint>,
    info_basis: Vec<RationalFunction>,
    noise_basis: Vec<RationalFunction>,
    completion_basis: Vec<RationalFunction>,
    privacy_basis: Vec<RationalFunction>,
    security_bases: Vec<Vec<RationalFunction>>,
    info_evals: Matrix,
    noise_evals: Matrix,
    completion_evals: Matrix,
    privacy_evals: Matrix,
    security_evals: Vec<Matrix>,
    privacy_code: LinearCode,
    security_codes: Vec<LinearCode>,
    decode_matrix: Matrix,
    decoder: LeftInverse,
}

impl SchemeInstance {
    /// Parameters with the curve filled in when it was searched for.
    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn field(&self) -> PrimeField {
        self.curve.field()
    }

    pub fn genus(&self) -> Genus {
        self.params.genus
    }

    fn genus_u8(&self) -> u8 {
        self.params.genus.as_u8()
    }

    pub fn l(&self) -> usize {
        self.params.l
    }

    pub fn x(&self) -> usize {
        self.params.x
    }

    pub fn t(&self) -> usize {
        self.params.t
    }

    /// Number of servers.
    pub fn n(&self) -> usize {
        self.eval_points.len()
    }

    pub fn rate(&self) -> Rate {
        Rate {
            num: self.l(),
            den: self.n(),
        }
    }

    /// `P_ℓ` on genus 0; the flattened pairs `P_1, P̄_1, P_2, …` on genus 1.
    pub fn fragment_points(&self) -> &[CurvePoint] {
        &self.fragment_points
    }

    /// `(P_j, P̄_j)` on genus 1, empty on genus 0.
    pub fn fragment_pairs(&self) -> &[(CurvePoint, CurvePoint)] {
        &self.fragment_pairs
    }

    /// `R_1 … R_N`.
    pub fn eval_points(&self) -> &[CurvePoint] {
        &self.eval_points
    }

    /// `h_1 … h_L`.
    pub fn info_basis(&self) -> &[RationalFunction] {
        &self.info_basis
    }

    pub fn noise_basis(&self) -> &[RationalFunction] {
        &self.noise_basis
    }

    /// Functions completing info and noise to a basis of the full space.
    /// Empty on genus 0, one function on genus 1.
    pub fn completion_basis(&self) -> &[RationalFunction] {
        &self.completion_basis
    }

    pub fn privacy_basis(&self) -> &[RationalFunction] {
        &self.privacy_basis
    }

    /// Security basis of fragment `ℓ`: `b / h_ℓ` for `b` with poles only at infinity.
    pub fn security_basis(&self, l: usize) -> &[RationalFunction] {
        &self.security_bases[l]
    }

    pub fn info_evals(&self) -> &Matrix {
        &self.info_evals
    }

    pub fn noise_evals(&self) -> &Matrix {
        &self.noise_evals
    }

    pub fn completion_evals(&self) -> &Matrix {
        &self.completion_evals
    }

    pub fn privacy_evals(&self) -> &Matrix {
        &self.privacy_evals
    }

    pub fn security_evals(&self, l: usize) -> &Matrix {
        &self.security_evals[l]
    }

    pub fn privacy_code(&self) -> &LinearCode {
        &self.privacy_code
    }

    pub fn security_code(&self, l: usize) -> &LinearCode {
        &self.security_codes[l]
    }

    /// `N × (L + noise)` matrix whose columns are the info then noise evaluations.
    pub fn decode_matrix(&self) -> &Matrix {
        &self.decode_matrix
    }

    pub(crate) fn decoder(&self) -> &LeftInverse {
        &self.decoder
    }

    /// `h_ℓ(R_n)`.
    pub fn h_at(&self, l: usize, n: usize) -> FieldElement {
        self.info_evals[(l, n)]
    }

    fn fragment_divisor(&self) -> Divisor {
        Divisor::from_terms(
            self.genus_u8(),
            self.fragment_points.iter().map(|p| (Place::point(*p), 1)),
        )
    }

    /// Divisor whose space is spanned by the info basis.
    pub fn d_info(&self) -> Divisor {
        &self.fragment_divisor() - &Divisor::at_infinity(self.genus_u8(), 1)
    }

    /// Upper bound for the noise space.
    pub fn d_noise(&self) -> Divisor {
        let (x, t) = (self.x() as i64, self.t() as i64);
        match self.genus() {
            Genus::Zero => Divisor::at_infinity(0, x + t - 1),
            Genus::One => {
                &Divisor::at_infinity(1, x + t + 4) + &crate::function_space::y_zero_divisor()
            }
        }
    }

    pub fn d_full(&self) -> Divisor {
        &self.fragment_divisor() + &self.d_noise()
    }

    pub fn d_priv(&self) -> Divisor {
        let t = self.t() as i64;
        match self.genus() {
            Genus::Zero => Divisor::at_infinity(0, t - 1),
            Genus::One => Divisor::at_infinity(1, t + 1),
        }
    }

    /// `(X ∓ 1)P∞ + (h_ℓ)`.
    pub fn d_sec(&self, l: usize) -> Result<Divisor, FunctionError> {
        let x = self.x() as i64;
        let base = match self.genus() {
            Genus::Zero => Divisor::at_infinity(0, x - 1),
            Genus::One => Divisor::at_infinity(1, x + 1),
        };
        Ok(&base + &self.info_basis[l].divisor()?)
    }
}
