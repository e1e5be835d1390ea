//! In-process simulation of a retrieval round, with JSON transcripts,
//! collusion views and exhaustive distributional oracles for tiny schemes.

use std::collections::HashMap;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agcode::{binomial, next_combination};
use crate::field::FieldElement;
use crate::max_bruteforce;
use crate::pir_scheme::{
    decode, make_queries, respond_all, store, Database, SchemeDescriptor, SchemeError,
    SchemeInstance,
};

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("decoded {got:?} but file {theta} is {expected:?}")]
    DecodeMismatch {
        theta: usize,
        expected: Vec<u64>,
        got: Vec<u64>,
    },
    #[error("server index {index} is invalid for {n} servers")]
    BadIndex { index: usize, n: usize },
    #[error("server index {0} listed twice")]
    DuplicateIndex(usize),
    #[error("enumeration over {work} noise draws exceeds the limit {limit}")]
    TooLarge { work: u128, limit: u128 },
}

/// What one server stored, received and answered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServerRecord {
    pub index: usize,
    /// `[ℓ][m]`.
    pub shares: Vec<Vec<u64>>,
    /// `[ℓ][m]`.
    pub queries: Vec<Vec<u64>>,
    pub response: u64,
}

/// Wall-clock microseconds per protocol step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub store_us: u64,
    pub query_us: u64,
    pub respond_us: u64,
    pub decode_us: u64,
}

/// Record of one retrieval round. Without timing it is a pure function of
/// `(scheme, database, theta, seed)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub scheme: SchemeDescriptor,
    pub theta: usize,
    pub seed: u64,
    /// `[m][ℓ]`.
    pub database: Vec<Vec<u64>>,
    pub servers: Vec<ServerRecord>,
    pub decoded: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Transcript {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }

    pub fn responses(&self) -> Vec<u64> {
        self.servers.iter().map(|s| s.response).collect()
    }
}

/// Store, query, respond at every server and decode, all from one
/// `ChaCha8` stream seeded with `seed`. Fails with
/// [`SimError::DecodeMismatch`] if the decoded fragments are not file `theta`.
pub fn run_retrieval(
    inst: &SchemeInstance,
    db: &Database,
    theta: usize,
    seed: u64,
) -> Result<Transcript, SimError> {
    run(inst, db, theta, seed, false)
}

/// [`run_retrieval`] with [`Timing`] filled in.
pub fn run_retrieval_timed(
    inst: &SchemeInstance,
    db: &Database,
    theta: usize,
    seed: u64,
) -> Result<Transcript, SimError> {
    run(inst, db, theta, seed, true)
}

fn micros(since: Instant) -> u64 {
    since.elapsed().as_micros() as u64
}

fn run(
    inst: &SchemeInstance,
    db: &Database,
    theta: usize,
    seed: u64,
    timed: bool,
) -> Result<Transcript, SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t0 = Instant::now();
    let shares = store(inst, db, &mut rng)?;
    let store_us = micros(t0);
    let t1 = Instant::now();
    let queries = make_queries(inst, theta, db.len(), &mut rng)?;
    let query_us = micros(t1);
    let t2 = Instant::now();
    let response = respond_all(&shares, &queries)?;
    let respond_us = micros(t2);
    let t3 = Instant::now();
    let decoded = decode(inst, &response)?;
    let decode_us = micros(t3);

    let expected = db.file(theta);
    if decoded != expected {
        return Err(SimError::DecodeMismatch {
            theta,
            expected: values(expected),
            got: values(&decoded),
        });
    }
    let share_tables = shares.to_u64s();
    let query_tables = queries.to_u64s();
    let servers = share_tables
        .into_iter()
        .zip(query_tables)
        .zip(response.to_u64s())
        .enumerate()
        .map(|(index, ((shares, queries), response))| ServerRecord {
            index,
            shares,
            queries,
            response,
        })
        .collect();
    Ok(Transcript {
        scheme: inst.descriptor(),
        theta,
        seed,
        database: db.to_u64s(),
        servers,
        decoded: values(&decoded),
        timing: timed.then_some(Timing {
            store_us,
            query_us,
            respond_us,
            decode_us,
        }),
    })
}

fn values(v: &[FieldElement]) -> Vec<u64> {
    v.iter().map(|x| x.value()).collect()
}

/// Shares and queries seen by a coalition of servers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollusionView {
    pub servers: Vec<usize>,
    /// Per colluding server, `[ℓ][m]`.
    pub shares: Vec<Vec<Vec<u64>>>,
    pub queries: Vec<Vec<Vec<u64>>>,
}

impl CollusionView {
    pub fn size(&self) -> usize {
        self.servers.len()
    }
}

fn check_servers(servers: &[usize], n: usize) -> Result<(), SimError> {
    for (i, &s) in servers.iter().enumerate() {
        if s >= n {
            return Err(SimError::BadIndex { index: s, n });
        }
        if servers[..i].contains(&s) {
            return Err(SimError::DuplicateIndex(s));
        }
    }
    Ok(())
}

/// Projection of a transcript onto the servers in `servers` (0-based).
pub fn collusion_view(t: &Transcript, servers: &[usize]) -> Result<CollusionView, SimError> {
    check_servers(servers, t.servers.len())?;
    Ok(CollusionView {
        servers: servers.to_vec(),
        shares: servers.iter().map(|&s| t.servers[s].shares.clone()).collect(),
        queries: servers.iter().map(|&s| t.servers[s].queries.clone()).collect(),
    })
}

/// Number of assignments of `coeffs` field elements, if within the cap.
fn enumeration_size(q: u64, coeffs: usize, runs: u128) -> Result<u128, SimError> {
    let limit = max_bruteforce();
    let per_run = u32::try_from(coeffs)
        .ok()
        .and_then(|k| (q as u128).checked_pow(k))
        .unwrap_or(u128::MAX);
    let work = per_run.saturating_mul(runs);
    if work > limit {
        return Err(SimError::TooLarge { work, limit });
    }
    Ok(per_run)
}

/// Multiset of `view(c)` over every `c ∈ F_q^k`.
fn enumerate_multiset(
    q: u64,
    k: usize,
    mut view: impl FnMut(&[u64]) -> Vec<u64>,
) -> HashMap<Vec<u64>, u64> {
    let mut counts = HashMap::new();
    let mut c = vec![0u64; k];
    loop {
        *counts.entry(view(&c)).or_insert(0) += 1;
        let mut i = 0;
        loop {
            if i == k {
                return counts;
            }
            c[i] += 1;
            if c[i] < q {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// Whether the joint queries seen by `servers` have the same distribution
/// when file `theta_a` or `theta_b` is requested out of `files`, by
/// enumerating every privacy-noise draw.
pub fn exhaustive_privacy_oracle(
    inst: &SchemeInstance,
    servers: &[usize],
    theta_a: usize,
    theta_b: usize,
    files: usize,
) -> Result<bool, SimError> {
    check_servers(servers, inst.n())?;
    for theta in [theta_a, theta_b] {
        if theta >= files {
            return Err(SchemeError::BadTheta { theta, files }.into());
        }
    }
    let field = inst.field();
    let q = field.modulus();
    let (l, dim) = (inst.l(), inst.privacy_basis().len());
    let k = l * files * dim;
    enumeration_size(q, k, 2)?;
    let ev = inst.privacy_evals();
    let dist = |theta: usize| {
        enumerate_multiset(q, k, |c| {
            let mut out = Vec::with_capacity(servers.len() * l * files);
            for &n in servers {
                for li in 0..l {
                    for m in 0..files {
                        let mut v = if m == theta {
                            inst.h_at(li, n)
                        } else {
                            field.zero()
                        };
                        let base = (li * files + m) * dim;
                        for i in 0..dim {
                            v += field.elem(c[base + i]) * ev[(i, n)];
                        }
                        out.push(v.value());
                    }
                }
            }
            out
        })
    };
    Ok(dist(theta_a) == dist(theta_b))
}

/// Whether the joint shares seen by `servers` have the same distribution for
/// databases `db_a` and `db_b`, by enumerating every security-noise draw.
pub fn exhaustive_security_oracle(
    inst: &SchemeInstance,
    servers: &[usize],
    db_a: &Database,
    db_b: &Database,
) -> Result<bool, SimError> {
    check_servers(servers, inst.n())?;
    for db in [db_a, db_b] {
        if db.fragments() != inst.l() {
            return Err(SchemeError::ShapeMismatch {
                what: "fragments per file",
                expected: inst.l(),
                got: db.fragments(),
            }
            .into());
        }
    }
    if db_a.len() != db_b.len() {
        return Err(SchemeError::ShapeMismatch {
            what: "files",
            expected: db_a.len(),
            got: db_b.len(),
        }
        .into());
    }
    let field = inst.field();
    let q = field.modulus();
    let files = db_a.len();
    let (l, dim) = (inst.l(), inst.security_basis(0).len());
    let k = l * files * dim;
    enumeration_size(q, k, 2)?;
    let dist = |db: &Database| {
        enumerate_multiset(q, k, |c| {
            let mut out = Vec::with_capacity(servers.len() * l * files);
            for &n in servers {
                for li in 0..l {
                    let ev = inst.security_evals(li);
                    for m in 0..files {
                        let mut v = db.file(m)[li];
                        let base = (li * files + m) * dim;
                        for i in 0..dim {
                            v += field.elem(c[base + i]) * ev[(i, n)];
                        }
                        out.push(v.value());
                    }
                }
            }
            out
        })
    };
    Ok(dist(db_a) == dist(db_b))
}

/// Result of running an oracle on every server subset of one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleSweep {
    pub subset_size: usize,
    pub subsets: u64,
    /// Subsets on which the two distributions differ.
    pub failures: Vec<Vec<usize>>,
}

impl OracleSweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sweep_subsets(
    n: usize,
    size: usize,
    per_subset_work: u128,
    mut check: impl FnMut(&[usize]) -> Result<bool, SimError>,
) -> Result<OracleSweep, SimError> {
    let limit = max_bruteforce();
    let work = binomial(n, size).saturating_mul(per_subset_work);
    if work > limit {
        return Err(SimError::TooLarge { work, limit });
    }
    let mut out = OracleSweep {
        subset_size: size,
        subsets: 0,
        failures: Vec::new(),
    };
    if size > n {
        return Ok(out);
    }
    let mut c: Vec<usize> = (0..size).collect();
    loop {
        out.subsets += 1;
        if !check(&c)? {
            out.failures.push(c.clone());
        }
        if !next_combination(&mut c, n) {
            return Ok(out);
        }
    }
}

/// [`exhaustive_privacy_oracle`] on every `size`-subset of servers.
pub fn privacy_oracle_all_subsets(
    inst: &SchemeInstance,
    size: usize,
    theta_a: usize,
    theta_b: usize,
    files: usize,
) -> Result<OracleSweep, SimError> {
    let k = inst.l() * files * inst.privacy_basis().len();
    let per = enumeration_size(inst.field().modulus(), k, 2)?.saturating_mul(2);
    sweep_subsets(inst.n(), size, per, |s| {
        exhaustive_privacy_oracle(inst, s, theta_a, theta_b, files)
    })
}

/// [`exhaustive_security_oracle`] on every `size`-subset of servers.
pub fn security_oracle_all_subsets(
    inst: &SchemeInstance,
    size: usize,
    db_a: &Database,
    db_b: &Database,
) -> Result<OracleSweep, SimError> {
    let k = inst.l() * db_a.len() * inst.security_basis(0).len();
    let per = enumeration_size(inst.field().modulus(), k, 2)?.saturating_mul(2);
    sweep_subsets(inst.n(), size, per, |s| {
        exhaustive_security_oracle(inst, s, db_a, db_b)
    })
}
