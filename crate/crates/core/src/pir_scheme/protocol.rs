use rand_core::RngCore;

use crate::field::{FieldElement, PrimeField};

use super::{SchemeError, SchemeInstance};

/// `M` files of `L` fragments each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Database {
    field: PrimeField,
    files: Vec<Vec<FieldElement>>,
}

impl Database {
    pub fn new(field: PrimeField, files: Vec<Vec<FieldElement>>) -> Result<Self, SchemeError> {
        let first = files.first().ok_or(SchemeError::EmptyDatabase)?.len();
        if first == 0 {
            return Err(SchemeError::ShapeMismatch {
                what: "fragments per file",
                expected: 1,
                got: 0,
            });
        }
        if let Some(f) = files.iter().find(|f| f.len() != first) {
            return Err(SchemeError::ShapeMismatch {
                what: "fragments per file",
                expected: first,
                got: f.len(),
            });
        }
        Ok(Self { field, files })
    }

    pub fn from_u64s(field: PrimeField, files: &[Vec<u64>]) -> Result<Self, SchemeError> {
        Self::new(
            field,
            files
                .iter()
                .map(|f| f.iter().map(|&v| field.elem(v)).collect())
                .collect(),
        )
    }

    /// Uniform fragments, file by file.
    pub fn random<R: RngCore + ?Sized>(
        field: PrimeField,
        files: usize,
        fragments: usize,
        rng: &mut R,
    ) -> Result<Self, SchemeError> {
        let data = (0..files)
            .map(|_| (0..fragments).map(|_| field.random_element(rng)).collect())
            .collect();
        Self::new(field, data)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of files `M`.
    pub fn len(&self) -> usize {
        self.files.len()
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    /// Fragments per file `L`.
    pub fn fragments(&self) -> usize {
        self.files[0].len()
    }

    pub fn file(&self, m: usize) -> &[FieldElement] {
        &self.files[m]
    }

    pub fn to_u64s(&self) -> Vec<Vec<u64>> {
        self.files
            .iter()
            .map(|f| f.iter().map(|v| v.value()).collect())
            .collect()
    }
}

macro_rules! server_tables {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct $name {
            tables: Vec<Vec<Vec<FieldElement>>>,
        }

        impl $name {
            /// Number of servers.
            pub fn servers(&self) -> usize {
                self.tables.len()
            }

            /// Table `[ℓ][m]` held by server `n`.
            pub fn server(&self, n: usize) -> &[Vec<FieldElement>] {
                &self.tables[n]
            }

            pub fn to_u64s(&self) -> Vec<Vec<Vec<u64>>> {
                self.tables
                    .iter()
                    .map(|t| t.iter().map(|r| r.iter().map(|v| v.value()).collect()).collect())
                    .collect()
            }
        }
    };
}

server_tables!(
    /// Stored shares `s_{ℓ,m}(R_n)`, indexed `[n][ℓ][m]`.
    ShareSet
);
server_tables!(
    /// Queries `q_{ℓ,m}(R_n)`, indexed `[n][ℓ][m]`.
    QuerySet
);

/// One symbol per server.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResponseVector {
    values: Vec<FieldElement>,
}

impl ResponseVector {
    pub fn new(values: Vec<FieldElement>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn to_u64s(&self) -> Vec<u64> {
        self.values.iter().map(|v| v.value()).collect()
    }
}

/// Generator that only yields zero words; every noise coefficient becomes 0.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroNoise;

impl RngCore for ZeroNoise {
    fn next_u32(&mut self) -> u32 {
        0
    }

    fn next_u64(&mut self) -> u64 {
        0
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        dst.fill(0);
    }
}

/// Noise coefficients indexed `[ℓ][m][i]`.
type Noise = Vec<Vec<Vec<FieldElement>>>;

fn draw_noise<R: RngCore + ?Sized>(
    field: PrimeField,
    l: usize,
    m: usize,
    dim: usize,
    rng: &mut R,
) -> Noise {
    (0..l)
        .map(|_| {
            (0..m)
                .map(|_| (0..dim).map(|_| field.random_element(rng)).collect())
                .collect()
        })
        .collect()
}

fn check_noise(noise: &Noise, l: usize, m: usize, dim: usize) -> Result<(), SchemeError> {
    let shape_err = |what, expected, got| SchemeError::ShapeMismatch {
        what,
        expected,
        got,
    };
    if noise.len() != l {
        return Err(shape_err("noise fragments", l, noise.len()));
    }
    for row in noise {
        if row.len() != m {
            return Err(shape_err("noise files", m, row.len()));
        }
        if let Some(c) = row.iter().find(|c| c.len() != dim) {
            return Err(shape_err("noise coefficients", dim, c.len()));
        }
    }
    Ok(())
}

/// Secret-shares every fragment: `s_{ℓ,m} = db[m][ℓ] + f^sec_{ℓ,m}` with a
/// uniform `f^sec_{ℓ,m}` in the security space of `ℓ`.
pub fn store<R: RngCore + ?Sized>(
    inst: &SchemeInstance,
    db: &Database,
    rng: &mut R,
) -> Result<ShareSet, SchemeError> {
    check_db(inst, db)?;
    let dim = inst.security_basis(0).len();
    let noise = draw_noise(inst.field(), inst.l(), db.len(), dim, rng);
    store_with_noise(inst, db, &noise)
}

fn check_db(inst: &SchemeInstance, db: &Database) -> Result<(), SchemeError> {
    if db.fragments() != inst.l() {
        return Err(SchemeError::ShapeMismatch {
            what: "fragments per file",
            expected: inst.l(),
            got: db.fragments(),
        });
    }
    Ok(())
}

/// [`store`] with explicit security coefficients `[ℓ][m][i]`.
pub fn store_with_noise(
    inst: &SchemeInstance,
    db: &Database,
    noise: &[Vec<Vec<FieldElement>>],
) -> Result<ShareSet, SchemeError> {
    check_db(inst, db)?;
    let noise = noise.to_vec();
    check_noise(&noise, inst.l(), db.len(), inst.security_basis(0).len())?;
    let tables = (0..inst.n())
        .map(|n| {
            (0..inst.l())
                .map(|l| {
                    let ev = inst.security_evals(l);
                    (0..db.len())
                        .map(|m| {
                            noise[l][m]
                                .iter()
                                .enumerate()
                                .fold(db.file(m)[l], |acc, (i, &c)| acc + c * ev[(i, n)])
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(ShareSet { tables })
}

/// Queries for file `theta` (0-based) out of `files`:
/// `q_{ℓ,m} = [m = θ]·h_ℓ + g^priv_{ℓ,m}` with uniform `g^priv_{ℓ,m}`.
pub fn make_queries<R: RngCore + ?Sized>(
    inst: &SchemeInstance,
    theta: usize,
    files: usize,
    rng: &mut R,
) -> Result<QuerySet, SchemeError> {
    if theta >= files {
        return Err(SchemeError::BadTheta { theta, files });
    }
    let dim = inst.privacy_basis().len();
    let noise = draw_noise(inst.field(), inst.l(), files, dim, rng);
    queries_with_noise(inst, theta, files, &noise)
}

/// [`make_queries`] with explicit privacy coefficients `[ℓ][m][i]`.
pub fn queries_with_noise(
    inst: &SchemeInstance,
    theta: usize,
    files: usize,
    noise: &[Vec<Vec<FieldElement>>],
) -> Result<QuerySet, SchemeError> {
    if theta >= files {
        return Err(SchemeError::BadTheta { theta, files });
    }
    let noise = noise.to_vec();
    check_noise(&noise, inst.l(), files, inst.privacy_basis().len())?;
    let ev = inst.privacy_evals();
    let zero = inst.field().zero();
    let tables = (0..inst.n())
        .map(|n| {
            (0..inst.l())
                .map(|l| {
                    (0..files)
                        .map(|m| {
                            let start = if m == theta { inst.h_at(l, n) } else { zero };
                            noise[l][m]
                                .iter()
                                .enumerate()
                                .fold(start, |acc, (i, &c)| acc + c * ev[(i, n)])
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(QuerySet { tables })
}

/// `Σ_{ℓ,m} s_{ℓ,m} q_{ℓ,m}` at one server.
pub fn server_respond(
    shares: &[Vec<FieldElement>],
    queries: &[Vec<FieldElement>],
) -> Result<FieldElement, SchemeError> {
    let shape_err = |what, expected, got| SchemeError::ShapeMismatch {
        what,
        expected,
        got,
    };
    if shares.len() != queries.len() {
        return Err(shape_err("query fragments", shares.len(), queries.len()));
    }
    let field = shares
        .iter()
        .flatten()
        .next()
        .ok_or(shape_err("share entries", 1, 0))?
        .field();
    let mut acc = field.zero();
    for (s_row, q_row) in shares.iter().zip(queries) {
        if s_row.len() != q_row.len() {
            return Err(shape_err("query files", s_row.len(), q_row.len()));
        }
        for (&s, &q) in s_row.iter().zip(q_row) {
            acc += s * q;
        }
    }
    Ok(acc)
}

/// Runs [`server_respond`] at every server.
pub fn respond_all(shares: &ShareSet, queries: &QuerySet) -> Result<ResponseVector, SchemeError> {
    if shares.servers() != queries.servers() {
        return Err(SchemeError::ShapeMismatch {
            what: "servers",
            expected: shares.servers(),
            got: queries.servers(),
        });
    }
    let values = (0..shares.servers())
        .map(|n| server_respond(shares.server(n), queries.server(n)))
        .collect::<Result<_, _>>()?;
    Ok(ResponseVector { values })
}

/// Recovers the `L` coefficients on `h_1 … h_L`, which are the fragments of
/// the requested file.
pub fn decode(inst: &SchemeInstance, r: &ResponseVector) -> Result<Vec<FieldElement>, SchemeError> {
    if r.values.len() != inst.n() {
        return Err(SchemeError::ShapeMismatch {
            what: "response symbols",
            expected: inst.n(),
            got: r.values.len(),
        });
    }
    let mut c = inst
        .decoder()
        .solve(&r.values)
        .ok_or(SchemeError::InconsistentSystem)?;
    c.truncate(inst.l());
    Ok(c)
}
