use serde::Serialize;

use crate::agcode::{subset_rank_check, SubsetMode, SubsetReport};
use crate::function_space::{Divisor, FunctionError, RationalFunction};

use super::{Genus, Rate, SchemeInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl ConditionCheck {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            name,
            passed,
            detail,
        }
    }
}

/// Outcome of [`verify_scheme`].
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub genus: Genus,
    pub n: usize,
    pub rate: Rate,
    pub conditions: Vec<ConditionCheck>,
    /// `T`-subsets of the privacy code.
    pub privacy: SubsetReport,
    /// `X`-subsets of each per-fragment security code.
    pub security: Vec<SubsetReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<String> {
        if let Some(c) = self.conditions.iter().find(|c| !c.passed) {
            return Some(format!("{}: {}", c.name, c.detail));
        }
        if !self.privacy.passed() {
            return Some(format!(
                "privacy: {} dependent {}-subsets, e.g. {:?}",
                self.privacy.failure_count, self.privacy.t, self.privacy.failures[0]
            ));
        }
        self.security
            .iter()
            .enumerate()
            .find(|(_, r)| !r.passed())
            .map(|(l, r)| {
                format!(
                    "security of fragment {l}: {} dependent {}-subsets, e.g. {:?}",
                    r.failure_count, r.t, r.failures[0]
                )
            })
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionCheck> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// Checks every function of `fs` lies in `L(d)`.
fn all_in_space<'a>(
    fs: impl IntoIterator<Item = &'a RationalFunction>,
    d: &Divisor,
) -> Result<usize, FunctionError> {
    let mut bad = 0;
    for f in fs {
        if !f.in_space(d)? {
            bad += 1;
        }
    }
    Ok(bad)
}

fn from_result(name: &'static str, r: Result<(bool, String), FunctionError>) -> ConditionCheck {
    match r {
        Ok((ok, detail)) => ConditionCheck::new(name, ok, detail),
        Err(e) => ConditionCheck::new(name, false, e.to_string()),
    }
}

/// Checks the conditions that make the scheme correct, `T`-private and
/// `X`-secure:
///
/// * `units`: each `h_ℓ` is a non-zero function.
/// * `info_rank`: the info evaluations have rank `L = ℓ(D^info)`.
/// * `direct_sum`: info and noise evaluation rows intersect trivially.
/// * `injective`: evaluation is injective on info ⊕ noise and on the full space.
/// * `noise_containment`: every product the servers form lies in `L(D^noise)`.
/// * `spaces`: privacy and security bases lie in and span their spaces.
/// * `rate`: `N = L + X + T` (genus 0) or `L + X + T + 8` (genus 1).
///
/// Column subsets of the privacy and security codes are checked in `mode`.
pub fn verify_scheme(inst: &SchemeInstance, mode: SubsetMode) -> VerificationReport {
    let (l, x, t, n) = (inst.l(), inst.x(), inst.t(), inst.n());
    let mut conditions = Vec::new();

    let zero_rows: Vec<usize> = (0..l)
        .filter(|&i| inst.info_evals().row(i).iter().all(|v| v.is_zero()))
        .collect();
    let units = inst.info_basis().iter().all(|h| !h.scalar().is_zero()) && zero_rows.is_empty();
    let detail = if units {
        format!("all {l} interpolation functions are non-zero")
    } else {
        format!("identically zero evaluations for fragments {zero_rows:?}")
    };
    conditions.push(ConditionCheck::new("units", units, detail));

    let info_rank = inst.info_evals().rank();
    conditions.push(from_result("info_rank", (|| {
        let d = inst.d_info();
        let dim = d.rr_dim()?;
        let outside = all_in_space(inst.info_basis(), &d)?;
        Ok((
            info_rank == l && dim == l as i64 && outside == 0,
            format!("rank {info_rank}, ℓ(D^info) = {dim}, L = {l}, {outside} outside L(D^info)"),
        ))
    })()));

    let noise_rank = inst.noise_evals().rank();
    let combined = inst.info_evals().vstack(inst.noise_evals());
    let combined_rank = combined.rank();
    conditions.push(ConditionCheck::new(
        "direct_sum",
        combined_rank == info_rank + noise_rank,
        format!("combined rank {combined_rank}, info {info_rank} + noise {noise_rank}"),
    ));

    let full_rank = combined.vstack(inst.completion_evals()).rank();
    conditions.push(from_result("injective", (|| {
        let dn = inst.d_noise().rr_dim()?;
        let df = inst.d_full().rr_dim()?;
        let rows = l + inst.noise_basis().len();
        let ok = noise_rank as i64 == dn
            && combined_rank == rows
            && full_rank as i64 == df
            && full_rank == n;
        Ok((
            ok,
            format!(
                "noise rank {noise_rank} of ℓ(D^noise) = {dn}; info+noise rank {combined_rank} \
                 of {rows}; full rank {full_rank} of ℓ(D^full) = {df}; N = {n}"
            ),
        ))
    })()));

    conditions.push(from_result("noise_containment", (|| {
        let dn = inst.d_noise();
        let mut checked = 0usize;
        let mut bad = 0usize;
        for (li, h) in inst.info_basis().iter().enumerate() {
            for s in inst.security_basis(li) {
                checked += 1;
                bad += usize::from(!s.mul(h)?.in_space(&dn)?);
                for g in inst.privacy_basis() {
                    checked += 1;
                    bad += usize::from(!s.mul(g)?.in_space(&dn)?);
                }
            }
        }
        // f^enc is a constant, so f^enc · g^priv is a multiple of g^priv
        checked += inst.privacy_basis().len();
        bad += all_in_space(inst.privacy_basis(), &dn)?;
        bad += all_in_space(inst.noise_basis(), &dn)?;
        Ok((bad == 0, format!("{bad} of {checked} products outside L(D^noise)")))
    })()));

    conditions.push(from_result("spaces", (|| {
        let dp = inst.d_priv();
        let mut msgs = Vec::new();
        let dim = dp.rr_dim()?;
        let rank = inst.privacy_evals().rank();
        let outside = all_in_space(inst.privacy_basis(), &dp)?;
        if dim != rank as i64 || outside > 0 {
            msgs.push(format!("privacy rank {rank}, ℓ(D^priv) = {dim}, {outside} outside"));
        }
        for li in 0..l {
            let ds = inst.d_sec(li)?;
            let dim = ds.rr_dim()?;
            let rank = inst.security_evals(li).rank();
            let outside = all_in_space(inst.security_basis(li), &ds)?;
            if dim != rank as i64 || outside > 0 {
                msgs.push(format!(
                    "security {li}: rank {rank}, ℓ(D^sec) = {dim}, {outside} outside"
                ));
            }
        }
        if msgs.is_empty() {
            return Ok((true, format!("privacy and {l} security bases span their spaces")));
        }
        Ok((false, msgs.join("; ")))
    })()));

    let overhead = match inst.genus() {
        Genus::Zero => x + t,
        Genus::One => x + t + 8,
    };
    conditions.push(ConditionCheck::new(
        "rate",
        n == l + overhead,
        format!("N = {n}, L + {overhead} = {}", l + overhead),
    ));

    let privacy = subset_rank_check(inst.privacy_code(), t, mode);
    let security = (0..l)
        .map(|li| subset_rank_check(inst.security_code(li), x, mode))
        .collect();

    VerificationReport {
        genus: inst.genus(),
        n,
        rate: inst.rate(),
        conditions,
        privacy,
        security,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agcode::is_grs;
    use crate::pir_scheme::{build_scheme, SchemeParams};

    #[test]
    fn small_genus0_exhaustive() {
        let inst = build_scheme(&SchemeParams::new(13, Genus::Zero, 3, 3, 2, 0)).unwrap();
        let r = verify_scheme(&inst, SubsetMode::All);
        assert!(r.passed(), "{:?}", r.first_failure());
        assert!(r.privacy.exhaustive);
        assert_eq!(r.privacy.checked, 56);
    }

    #[test]
    fn genus0_privacy_is_mds_grs() {
        let inst = build_scheme(&SchemeParams::new(13, Genus::Zero, 3, 3, 2, 0)).unwrap();
        let alphas: Vec<_> = inst.eval_points().iter().map(|p| p.x().unwrap()).collect();
        let ones = vec![inst.field().one(); alphas.len()];
        assert!(is_grs(inst.privacy_code(), &alphas, &ones).unwrap());
        let d = inst.privacy_code().dual().min_distance().unwrap().unwrap();
        assert_eq!(d - 1, inst.t());
    }

    #[test]
    fn small_genus1_exhaustive() {
        let inst = build_scheme(&SchemeParams::new(13, Genus::One, 1, 1, 1, 0)).unwrap();
        let r = verify_scheme(&inst, SubsetMode::All);
        assert!(r.passed(), "{:?}", r.first_failure());
        assert_eq!(inst.n(), 11);
    }
}
