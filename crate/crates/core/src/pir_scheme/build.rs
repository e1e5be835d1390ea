use crate::agcode::{evaluation_matrix, information_set, LinearCode, SubsetMode};
use crate::curve::{find_curve_where, hasse_window, CurveModel, CurvePoint, Fiber};
use crate::field::{FieldElement, PrimeField};
use crate::function_space::{
    basis_poles_at_infinity, interp_basis_g0, interp_basis_g1, noise_basis_g1, y_zero_divisor,
    Divisor, Place, RationalFunction,
};
use crate::linalg::{LeftInverse, Matrix};

use super::{verify_scheme, Genus, SchemeError, SchemeInstance, SchemeParams};

/// Sampled column subsets per code checked while building.
pub const BUILD_SUBSET_SAMPLES: u64 = 256;

/// Builds and verifies the scheme described by `params`.
///
/// Point selection is canonical and does not depend on `params.seed`; the seed
/// only drives the sampled subset checks run before returning.
pub fn build_scheme(params: &SchemeParams) -> Result<SchemeInstance, SchemeError> {
    if params.x == 0 || params.t == 0 {
        return Err(SchemeError::DegenerateLevel {
            x: params.x,
            t: params.t,
        });
    }
    if params.l == 0 {
        return Err(SchemeError::BadL {
            l: 0,
            reason: "at least one fragment per file is needed",
        });
    }
    let field = PrimeField::new(params.p)?;
    let inst = match params.genus {
        Genus::Zero => build_g0(field, params)?,
        Genus::One => build_g1(field, params)?,
    };
    let report = verify_scheme(
        &inst,
        SubsetMode::Sample {
            count: BUILD_SUBSET_SAMPLES,
            seed: params.seed,
        },
    );
    if let Some(failure) = report.first_failure() {
        return Err(SchemeError::VerificationFailed(failure));
    }
    Ok(inst)
}

fn build_g0(field: PrimeField, params: &SchemeParams) -> Result<SchemeInstance, SchemeError> {
    if params.curve.is_some() {
        return Err(SchemeError::UnexpectedCurve);
    }
    let (x, t, l) = (params.x, params.t, params.l);
    let q = field.modulus() as u128;
    let need = (2 * l + x + t + 1) as u128;
    if q + 1 < need {
        return Err(SchemeError::Infeasible {
            constraint: format!("q + 1 = {} < 2L + X + T + 1 = {need}", q + 1),
        });
    }
    let curve = CurveModel::projective_line(field);
    let n = l + x + t;
    let alphas: Vec<FieldElement> = (0..l as u64).map(|i| field.elem(i)).collect();
    let fragment_points: Vec<CurvePoint> = alphas.iter().map(|&a| CurvePoint::Line(a)).collect();
    let eval_points: Vec<CurvePoint> = (l..l + n)
        .map(|i| CurvePoint::Line(field.elem(i as u64)))
        .collect();

    let info = interp_basis_g0(&curve, &alphas)?;
    let noise = basis_poles_at_infinity(&curve, (x + t - 1) as i64)?;
    let privacy = basis_poles_at_infinity(&curve, t as i64 - 1)?;
    let sec_base = basis_poles_at_infinity(&curve, x as i64 - 1)?;
    let security = security_bases(&info, &sec_base)?;

    assemble(
        params.clone(),
        curve,
        fragment_points,
        Vec::new(),
        eval_points,
        Bases {
            info,
            noise,
            completion: Vec::new(),
            privacy,
            security,
        },
    )
}

/// Rational zeros of `y`.
fn z_of(curve: &CurveModel) -> u64 {
    curve.rational_zeros_of_y().map_or(0, |z| z.len() as u64)
}

fn build_g1(field: PrimeField, params: &SchemeParams) -> Result<SchemeInstance, SchemeError> {
    let (x, t, l) = (params.x, params.t, params.l);
    if l % 2 == 0 {
        return Err(SchemeError::BadL {
            l,
            reason: "genus-1 schemes need odd L",
        });
    }
    let q = field.modulus();
    let base = (2 * l + x + t + 11) as u64;
    let curve = match params.curve {
        Some((a, b)) => {
            let c = CurveModel::elliptic(field, field.elem(a), field.elem(b))?;
            let needed = base + z_of(&c);
            let points = c.point_count();
            if points < needed {
                return Err(SchemeError::CurveTooSmall { points, needed });
            }
            c
        }
        None => find_curve_where(q, base, |c| c.point_count() >= base + z_of(c)).map_err(|_| {
            SchemeError::Infeasible {
                constraint: format!(
                    "no curve over F_{q} has 2L + X + T + 11 + Z = {base} + Z points \
                     (Hasse maximum {})",
                    hasse_window(q).hi
                ),
            }
        })?,
    };
    let (a, b) = curve.coefficients().expect("elliptic");
    let mut resolved = params.clone();
    resolved.curve = Some((a.value(), b.value()));

    let j_count = l.div_ceil(2);
    let mut pairs = Vec::with_capacity(j_count);
    for alpha in field.elements() {
        if pairs.len() == j_count {
            break;
        }
        if let Fiber::Split(beta) = curve.fiber(alpha)? {
            pairs.push((
                CurvePoint::Affine(alpha, beta),
                CurvePoint::Affine(alpha, -beta),
            ));
        }
    }
    let fragment_points: Vec<CurvePoint> = pairs.iter().flat_map(|&(p, pb)| [p, pb]).collect();

    let n = l + x + t + 8;
    let want = n + 1;
    let candidates: Vec<CurvePoint> = curve
        .enumerate_points()
        .into_iter()
        .filter(|p| {
            !p.is_infinity() && !fragment_points.contains(p) && p.y().is_some_and(|y| !y.is_zero())
        })
        .take(want)
        .collect();
    if pairs.len() < j_count || candidates.len() < want {
        return Err(SchemeError::CurveTooSmall {
            points: curve.point_count(),
            needed: base + z_of(&curve),
        });
    }

    let info = interp_basis_g1(&curve, l, &pairs)?;
    let noise = noise_basis_g1(&curve, (x + t + 4) as i64)?;
    let privacy = basis_poles_at_infinity(&curve, t as i64 + 1)?;
    let sec_base = basis_poles_at_infinity(&curve, x as i64 + 1)?;
    let security = security_bases(&info, &sec_base)?;

    // complete info + noise to a basis of the full space, then keep N
    // candidate points on which that basis stays independent
    let mut full_basis: Vec<RationalFunction> = info.iter().chain(&noise).cloned().collect();
    let partial = evaluation_matrix(field, &full_basis, &candidates)?;
    let partial_rank = partial.rank();
    let full_divisor = {
        let frag = Divisor::from_terms(1, fragment_points.iter().map(|p| (Place::point(*p), 1)));
        &frag + &(&Divisor::at_infinity(1, (x + t + 4) as i64) + &y_zero_divisor())
    };
    let one = field.one();
    let zero = field.zero();
    let mut completion = Vec::new();
    'search: for &(p, _) in &pairs {
        let alpha = p.x().expect("affine");
        for i in 0..3 {
            let f = RationalFunction::monomial(curve, one, [(alpha, -1), (zero, i)], -1)?;
            if !f.in_space(&full_divisor)? {
                continue;
            }
            let row = evaluation_matrix(field, std::slice::from_ref(&f), &candidates)?;
            if partial.vstack(&row).rank() > partial_rank {
                completion.push(f);
                break 'search;
            }
        }
    }
    full_basis.extend(completion.iter().cloned());
    let full = evaluation_matrix(field, &full_basis, &candidates)?;
    let chosen = information_set(&full, n);
    if chosen.achieved < n {
        return Err(SchemeError::PointSelection {
            achieved: chosen.achieved,
            needed: n,
        });
    }
    let eval_points: Vec<CurvePoint> = chosen.columns.iter().map(|&c| candidates[c]).collect();

    assemble(
        resolved,
        curve,
        fragment_points,
        pairs,
        eval_points,
        Bases {
            info,
            noise,
            completion,
            privacy,
            security,
        },
    )
}

/// `b / h_ℓ` for each `ℓ` and each `b` in `base`.
fn security_bases(
    info: &[RationalFunction],
    base: &[RationalFunction],
) -> Result<Vec<Vec<RationalFunction>>, SchemeError> {
    info.iter()
        .map(|h| {
            let inv = h.inverse()?;
            base.iter()
                .map(|b| b.mul(&inv).map_err(SchemeError::from))
                .collect()
        })
        .collect()
}

struct Bases {
    info: Vec<RationalFunction>,
    noise: Vec<RationalFunction>,
    completion: Vec<RationalFunction>,
    privacy: Vec<RationalFunction>,
    security: Vec<Vec<RationalFunction>>,
}

fn assemble(
    params: SchemeParams,
    curve: CurveModel,
    fragment_points: Vec<CurvePoint>,
    fragment_pairs: Vec<(CurvePoint, CurvePoint)>,
    eval_points: Vec<CurvePoint>,
    bases: Bases,
) -> Result<SchemeInstance, SchemeError> {
    let field = curve.field();
    let ev = |basis: &[RationalFunction]| evaluation_matrix(field, basis, &eval_points);
    let info_evals = ev(&bases.info)?;
    let noise_evals = ev(&bases.noise)?;
    let completion_evals = ev(&bases.completion)?;
    let privacy_evals = ev(&bases.privacy)?;
    let security_evals = bases
        .security
        .iter()
        .map(|b| ev(b))
        .collect::<Result<Vec<Matrix>, _>>()?;
    let privacy_code = LinearCode::evaluation_code(field, &bases.privacy, &eval_points)?;
    let security_codes = bases
        .security
        .iter()
        .map(|b| LinearCode::evaluation_code(field, b, &eval_points))
        .collect::<Result<Vec<_>, _>>()?;
    let decode_matrix = info_evals.vstack(&noise_evals).transpose();
    let decoder = LeftInverse::new(&decode_matrix).ok_or(SchemeError::PointSelection {
        achieved: decode_matrix.rank(),
        needed: decode_matrix.cols(),
    })?;
    Ok(SchemeInstance {
        params,
        curve,
        fragment_points,
        fragment_pairs,
        eval_points,
        info_basis: bases.info,
        noise_basis: bases.noise,
        completion_basis: bases.completion,
        privacy_basis: bases.privacy,
        security_bases: bases.security,
        info_evals,
        noise_evals,
        completion_evals,
        privacy_evals,
        security_evals,
        privacy_code,
        security_codes,
        decode_matrix,
        decoder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus0_q43_instance() {
        let inst = build_scheme(&SchemeParams::new(43, Genus::Zero, 16, 16, 5, 1)).unwrap();
        assert_eq!(inst.n(), 37);
        assert_eq!((inst.rate().num, inst.rate().den), (5, 37));
        assert_eq!(inst.decode_matrix().rows(), 37);
        assert_eq!(inst.decode_matrix().cols(), 37);
    }

    #[test]
    fn genus0_infeasible_names_the_inequality() {
        let err = build_scheme(&SchemeParams::new(43, Genus::Zero, 16, 16, 6, 1)).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, SchemeError::Infeasible { .. }));
        assert!(msg.contains("44") && msg.contains("45"), "{msg}");
    }

    #[test]
    fn degenerate_levels_rejected() {
        for (x, t) in [(0, 1), (1, 0)] {
            let err = build_scheme(&SchemeParams::new(13, Genus::Zero, x, t, 1, 0)).unwrap_err();
            assert!(matches!(err, SchemeError::DegenerateLevel { .. }));
        }
    }

    #[test]
    fn genus1_q43_instance() {
        let params = SchemeParams::new(43, Genus::One, 16, 16, 7, 1).with_curve(0, 9);
        let inst = build_scheme(&params).unwrap();
        assert_eq!(inst.n(), 47);
        assert_eq!(inst.noise_basis().len(), 39);
        assert_eq!(inst.completion_basis().len(), 1);
        assert_eq!(inst.decode_matrix().cols(), 46);
        for p in inst.eval_points() {
            assert!(!inst.fragment_points().contains(p));
            assert!(!p.y().unwrap().is_zero());
        }
    }

    #[test]
    fn genus1_auto_search_finds_first_large_curve() {
        let inst = build_scheme(&SchemeParams::new(43, Genus::One, 16, 16, 7, 1)).unwrap();
        assert_eq!(inst.params().curve, Some((0, 9)));
    }

    #[test]
    fn genus1_even_l_and_small_curve() {
        let p = SchemeParams::new(43, Genus::One, 16, 16, 6, 1).with_curve(0, 9);
        assert!(matches!(build_scheme(&p), Err(SchemeError::BadL { l: 6, .. })));
        let p = SchemeParams::new(43, Genus::One, 16, 16, 9, 1).with_curve(0, 9);
        assert!(matches!(
            build_scheme(&p),
            Err(SchemeError::CurveTooSmall {
                points: 57,
                needed: 61
            })
        ));
    }

    #[test]
    fn fragment_pairs_are_canonical() {
        let params = SchemeParams::new(43, Genus::One, 16, 16, 7, 1).with_curve(0, 9);
        let inst = build_scheme(&params).unwrap();
        let c = inst.curve();
        let mut expected = Vec::new();
        for a in 0..43u64 {
            let alpha = c.field().elem(a);
            let ys: Vec<u64> = (1..43u64)
                .filter(|&y| c.contains(&CurvePoint::Affine(alpha, c.field().elem(y))))
                .collect();
            if ys.len() == 2 {
                expected.push((a, ys[0], ys[1]));
            }
        }
        expected.truncate(4);
        let got: Vec<(u64, u64, u64)> = inst
            .fragment_pairs()
            .iter()
            .map(|(p, pb)| (p.x().unwrap().value(), p.y().unwrap().value(), pb.y().unwrap().value()))
            .collect();
        assert_eq!(got, expected);
    }
}
