//! Secure and private information retrieval from replicated, colluding servers
//! using cross-subspace-alignment evaluation codes on the projective line
//! (genus 0) and on elliptic curves (genus 1).
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: prime fields and polynomials.
//! * [`curve`]: the projective line and short Weierstrass curves, point
//!   enumeration, Hasse windows and curve search.
//! * [`function_space`]: factored rational functions, divisors, Riemann-Roch
//!   dimensions and the interpolation / noise bases.
//! * [`agcode`]: evaluation codes, duals, distances, subset-rank criteria.
//! * [`pir_scheme`]: scheme construction and the store / query / respond /
//!   decode protocol.
//! * [`sim_harness`]: transcripts, collusion views and exhaustive
//!   privacy / security oracles.
//! * [`params`]: maximal-rate parameter selection and genus comparison sweeps.
//! * [`cli`]: the `agpir` command line.
//!
//! ```
//! use agpir::pir_scheme::{build_scheme, Genus, SchemeParams};
//! use agpir::sim_harness::run_retrieval;
//! use agpir::pir_scheme::Database;
//!
//! let params = SchemeParams::new(43, Genus::Zero, 16, 16, 5, 7);
//! let scheme = build_scheme(&params).unwrap();
//! assert_eq!(scheme.n(), 37);
//! let db = Database::from_u64s(scheme.field(), &[vec![1, 2, 3, 4, 5], vec![6, 7, 8, 9, 10]]).unwrap();
//! let transcript = run_retrieval(&scheme, &db, 1, 99).unwrap();
//! assert_eq!(transcript.decoded, vec![6, 7, 8, 9, 10]);
//! ```

pub mod agcode;
pub mod cli;
pub mod curve;
pub mod field;
pub mod function_space;
pub mod linalg;
pub mod params;
pub mod pir_scheme;
pub mod sim_harness;

/// Environment variable overriding every brute-force enumeration cap.
pub const MAX_BRUTEFORCE_ENV: &str = "PIR_AG_MAX_BRUTEFORCE";

/// Default cap on exhaustive enumerations (codewords, subsets, noise draws).
pub const DEFAULT_MAX_BRUTEFORCE: u128 = 10_000_000;

/// Current enumeration cap, honouring [`MAX_BRUTEFORCE_ENV`].
pub fn max_bruteforce() -> u128 {
    std::env::var(MAX_BRUTEFORCE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_BRUTEFORCE)
}
