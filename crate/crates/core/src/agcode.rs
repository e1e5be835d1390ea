//! Evaluation codes, duals, distances and the column-subset rank criteria that
//! certify privacy and security against colluding servers.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::curve::CurvePoint;
use crate::field::{FieldElement, PrimeField};
use crate::function_space::{FunctionError, RationalFunction};
use crate::linalg::Matrix;
use crate::max_bruteforce;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("{function} has a pole at evaluation point {point:?}")]
    PoleAtEvaluationPoint { function: String, point: CurvePoint },
    #[error("evaluation point {0:?} appears twice")]
    DuplicatePoint(CurvePoint),
    #[error("brute force over {work} cases exceeds the limit {limit}")]
    TooLarge { work: u128, limit: u128 },
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Function(#[from] FunctionError),
}

/// Functions and points a code was evaluated from.
#[derive(Debug, Clone)]
pub struct Provenance {
    pub basis: Vec<RationalFunction>,
    pub points: Vec<CurvePoint>,
}

#[derive(Debug, Clone)]
pub struct LinearCode {
    generator: Matrix,
    n: usize,
    provenance: Option<Provenance>,
}

/// Rows `f_i(P_j)`.
pub fn evaluation_matrix(
    field: PrimeField,
    basis: &[RationalFunction],
    points: &[CurvePoint],
) -> Result<Matrix, CodeError> {
    let mut rows = Vec::with_capacity(basis.len());
    for f in basis {
        let row = points
            .iter()
            .map(|p| {
                f.eval(p).map_err(|e| match e {
                    FunctionError::PoleAtPoint(_) | FunctionError::InfinityUnsupported => {
                        CodeError::PoleAtEvaluationPoint {
                            function: format!("{f:?}"),
                            point: *p,
                        }
                    }
                    other => other.into(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Matrix::from_rows(field, points.len(), rows))
}

impl LinearCode {
    /// Code spanned by the rows of `m`; dependent rows are dropped.
    pub fn from_generator(m: &Matrix) -> Self {
        let keep = m.independent_rows();
        Self {
            generator: m.select_rows(&keep),
            n: m.cols(),
            provenance: None,
        }
    }

    /// `C(P, D) = ev_P(span(basis))`.
    pub fn evaluation_code(
        field: PrimeField,
        basis: &[RationalFunction],
        points: &[CurvePoint],
    ) -> Result<Self, CodeError> {
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(CodeError::DuplicatePoint(*p));
            }
        }
        let m = evaluation_matrix(field, basis, points)?;
        let mut code = Self::from_generator(&m);
        code.provenance = Some(Provenance {
            basis: basis.to_vec(),
            points: points.to_vec(),
        });
        Ok(code)
    }

    pub fn field(&self) -> PrimeField {
        self.generator.field()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    /// `k × n` generator with independent rows.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// The dual code, generated by the nullspace of `G`.
    pub fn dual(&self) -> LinearCode {
        let h = if self.generator.rows() == 0 {
            Matrix::identity(self.field(), self.n)
        } else {
            self.generator.nullspace()
        };
        LinearCode {
            generator: h,
            n: self.n,
            provenance: None,
        }
    }

    pub fn same_row_space(&self, other: &LinearCode) -> bool {
        self.n == other.n
            && self.dimension() == other.dimension()
            && self.generator.vstack(&other.generator).rank() == self.dimension()
    }

    pub fn contains(&self, word: &[FieldElement]) -> bool {
        let w = Matrix::from_rows(self.field(), self.n, vec![word.to_vec()]);
        self.generator.vstack(&w).rank() == self.dimension()
    }

    /// Minimum Hamming weight over all non-zero codewords; `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<usize>, CodeError> {
        let k = self.dimension();
        if k == 0 {
            return Ok(None);
        }
        let q = self.field().modulus() as u128;
        let work = q.checked_pow(k as u32).unwrap_or(u128::MAX);
        let limit = max_bruteforce();
        if work > limit {
            return Err(CodeError::TooLarge { work, limit });
        }
        // odometer over messages: bumping digit i adds row i to the codeword,
        // and a wrap from q-1 to 0 also adds row i once (q copies vanish)
        let rows = self.generator.row_vecs();
        let mut digits = vec![0u64; k];
        let mut word = vec![self.field().zero(); self.n];
        let mut best = self.n;
        loop {
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(Some(best));
                }
                for (w, &g) in word.iter_mut().zip(&rows[i]) {
                    *w += g;
                }
                digits[i] += 1;
                if digits[i] == q as u64 {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            let weight = word.iter().filter(|v| !v.is_zero()).count();
            best = best.min(weight);
        }
    }

    /// Whether the columns of `G` indexed by `cols` are linearly independent.
    pub fn columns_independent(&self, cols: &[usize]) -> bool {
        self.generator.select_columns(cols).rank() == cols.len()
    }

    /// `d(C⊥)`, the size of the smallest dependent set of columns of `G`;
    /// `None` when `C⊥ = 0`. Scans subsets by increasing size.
    pub fn dual_distance(&self) -> Result<Option<usize>, CodeError> {
        let n = self.n;
        let limit = max_bruteforce();
        let mut work: u128 = 0;
        for size in 1..=(self.dimension() + 1).min(n) {
            work = work.saturating_add(binomial(n, size));
            if work > limit {
                return Err(CodeError::TooLarge { work, limit });
            }
            let mut c: Vec<usize> = (0..size).collect();
            loop {
                if !self.columns_independent(&c) {
                    return Ok(Some(size));
                }
                if !next_combination(&mut c, n) {
                    break;
                }
            }
        }
        Ok(None)
    }

    /// First `size` leftmost pivot columns, a witness set of independent columns.
    pub fn find_independent_subset(&self, size: usize) -> Option<Vec<usize>> {
        let set = information_set(&self.generator, size);
        (set.columns.len() == size).then_some(set.columns)
    }
}

/// Which column subsets [`subset_rank_check`] visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetMode {
    All,
    Sample { count: u64, seed: u64 },
}

/// Number of samples used when an exhaustive scan is over the limit.
pub const FALLBACK_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetReport {
    pub t: usize,
    pub n: usize,
    pub total_subsets: u128,
    pub checked: u64,
    pub exhaustive: bool,
    /// Up to [`SubsetReport::MAX_FAILURES`] dependent subsets.
    pub failures: Vec<Vec<usize>>,
    pub failure_count: u64,
}

impl SubsetReport {
    pub const MAX_FAILURES: usize = 16;

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Lexicographic successor of a `k`-combination of `0..n`; `false` after the last.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Checks that every (or every sampled) `t`-subset of columns of `G` is
/// independent. Exhaustive scans above [`max_bruteforce`] subsets fall back
/// to [`FALLBACK_SAMPLES`] seeded samples.
pub fn subset_rank_check(code: &LinearCode, t: usize, mode: SubsetMode) -> SubsetReport {
    let n = code.len();
    let total = binomial(n, t);
    let mode = match mode {
        SubsetMode::All if total > max_bruteforce() => SubsetMode::Sample {
            count: FALLBACK_SAMPLES,
            seed: 0,
        },
        m => m,
    };
    let mut report = SubsetReport {
        t,
        n,
        total_subsets: total,
        checked: 0,
        exhaustive: false,
        failures: Vec::new(),
        failure_count: 0,
    };
    let record = |report: &mut SubsetReport, cols: &[usize]| {
        report.checked += 1;
        if !code.columns_independent(cols) {
            report.failure_count += 1;
            if report.failures.len() < SubsetReport::MAX_FAILURES {
                report.failures.push(cols.to_vec());
            }
        }
    };
    if t > n {
        report.exhaustive = true;
        return report;
    }
    match mode {
        SubsetMode::All => {
            report.exhaustive = true;
            let mut c: Vec<usize> = (0..t).collect();
            loop {
                record(&mut report, &c);
                if !next_combination(&mut c, n) {
                    break;
                }
            }
        }
        SubsetMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let c = sample_subset(&mut rng, n, t);
                record(&mut report, &c);
            }
        }
    }
    report
}

/// Uniform `t`-subset of `0..n` by partial Fisher-Yates, sorted.
fn sample_subset<R: RngCore>(rng: &mut R, n: usize, t: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..t {
        let span = (n - i) as u64;
        let zone = u64::MAX - ((u64::MAX % span + 1) % span);
        let r = loop {
            let w = rng.next_u64();
            if w <= zone {
                break (w % span) as usize;
            }
        };
        idx.swap(i, i + r);
    }
    let mut out = idx[..t].to_vec();
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformationSet {
    pub columns: Vec<usize>,
    pub achieved: usize,
}

/// Leftmost-pivot columns of `m`, at most `want` of them.
pub fn information_set(m: &Matrix, want: usize) -> InformationSet {
    let (_, pivots) = m.rref();
    let columns: Vec<usize> = pivots.into_iter().take(want).collect();
    InformationSet {
        achieved: columns.len(),
        columns,
    }
}

/// Whether `code` equals `GRS_k(α, ν)`, spanned by rows `(ν_j α_j^i)_j` for `i < k`.
pub fn is_grs(
    code: &LinearCode,
    alphas: &[FieldElement],
    multipliers: &[FieldElement],
) -> Result<bool, CodeError> {
    let n = code.len();
    for len in [alphas.len(), multipliers.len()] {
        if len != n {
            return Err(CodeError::LengthMismatch { expected: n, got: len });
        }
    }
    let rows = (0..code.dimension())
        .map(|i| {
            alphas
                .iter()
                .zip(multipliers)
                .map(|(a, &v)| v * a.pow(i as u64))
                .collect()
        })
        .collect();
    let grs = LinearCode::from_generator(&Matrix::from_rows(code.field(), n, rows));
    Ok(code.same_row_space(&grs))
}
