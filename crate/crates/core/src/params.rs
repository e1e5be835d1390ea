//! Largest feasible `L` per genus, and sweeps comparing the two genera over
//! `X = T`.

use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use crate::curve::{find_max_curve, CurveError, CurveModel, CurveSummary};
use crate::field::{is_prime, FieldError};
use crate::pir_scheme::{Genus, Rate};

#[derive(Debug, Error)]
pub enum ParamsError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("empty range {min}..={max}")]
    EmptyRange { min: usize, max: usize },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A named curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurvePreset {
    pub name: &'static str,
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

/// `y² = x³ + x + 33` over `F_127`: 150 points, one rational zero of `y`.
pub const FIG1_127: CurvePreset = CurvePreset {
    name: "fig1-127",
    p: 127,
    a: 1,
    b: 33,
};

pub const PRESETS: &[CurvePreset] = &[FIG1_127];

pub fn preset(name: &str) -> Result<CurvePreset, ParamsError> {
    PRESETS
        .iter()
        .copied()
        .find(|p| p.name == name)
        .ok_or_else(|| ParamsError::UnknownPreset(name.to_string()))
}

impl CurvePreset {
    pub fn curve(&self) -> Result<CurveModel, CurveError> {
        CurveModel::weierstrass(self.p, self.a, self.b)
    }
}

/// Best parameters for one `(q, genus, X, T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub q: u64,
    pub genus: Genus,
    pub x: usize,
    pub t: usize,
    /// `(L, N)` when feasible.
    pub best: Option<(usize, usize)>,
    /// Genus 1 only.
    pub curve: Option<CurveSummary>,
}

impl SweepRow {
    pub fn feasible(&self) -> bool {
        self.best.is_some()
    }

    pub fn l(&self) -> Option<usize> {
        self.best.map(|(l, _)| l)
    }

    pub fn n(&self) -> Option<usize> {
        self.best.map(|(_, n)| n)
    }

    pub fn rate(&self) -> Option<Rate> {
        self.best.map(|(num, den)| Rate { num, den })
    }
}

fn check_q(q: u64) -> Result<(), ParamsError> {
    if !is_prime(q) {
        return Err(FieldError::NotPrime(q).into());
    }
    if q < 5 {
        return Err(FieldError::CharTooSmall(q).into());
    }
    Ok(())
}

/// Genus 0: `L = ⌊(q − X − T)/2⌋` from `q + 1 ≥ 2L + X + T + 1`, `N = L + X + T`.
pub fn max_rate_g0(q: u64, x: usize, t: usize) -> Result<SweepRow, ParamsError> {
    check_q(q)?;
    let slack = q as i128 - x as i128 - t as i128;
    let best = (x >= 1 && t >= 1 && slack >= 2).then(|| {
        let l = (slack / 2) as usize;
        (l, l + x + t)
    });
    Ok(SweepRow {
        q,
        genus: Genus::Zero,
        x,
        t,
        best,
        curve: None,
    })
}

/// Genus 1: the largest odd `L` with `2L + X + T + 11 + Z ≤ #points`,
/// `N = L + X + T + 8`. Without a curve, the curve with most points is used.
pub fn max_rate_g1(
    q: u64,
    x: usize,
    t: usize,
    curve: Option<&CurveModel>,
) -> Result<SweepRow, ParamsError> {
    check_q(q)?;
    let owned;
    let curve = match curve {
        Some(c) => c,
        None => {
            owned = find_max_curve(q)?;
            &owned
        }
    };
    let summary = CurveSummary::of(curve)?;
    Ok(max_rate_g1_with(q, x, t, summary))
}

fn max_rate_g1_with(q: u64, x: usize, t: usize, summary: CurveSummary) -> SweepRow {
    let slack = summary.points as i128 - x as i128 - t as i128 - 11 - summary.z as i128;
    let mut l = if slack >= 2 { slack / 2 } else { 0 };
    if l % 2 == 0 {
        l -= 1;
    }
    let best = (x >= 1 && t >= 1 && l >= 1).then(|| {
        let l = l as usize;
        (l, l + x + t + 8)
    });
    SweepRow {
        q,
        genus: Genus::One,
        x,
        t,
        best,
        curve: Some(summary),
    }
}

/// Rows for both genera over `X = T ∈ [xt_min, xt_max]`, sorted by `(genus, X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub q: u64,
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    /// Smallest `X = T` where genus 1 has strictly higher rate, counting an
    /// infeasible genus-0 row as rate 0.
    pub crossover: Option<usize>,
    pub largest_feasible_g0: Option<usize>,
    pub largest_feasible_g1: Option<usize>,
    /// `X = T` values where only genus 1 is feasible.
    pub only_genus1: Vec<usize>,
}

pub fn sweep(
    q: u64,
    xt_min: usize,
    xt_max: usize,
    curve: Option<&CurveModel>,
) -> Result<Sweep, ParamsError> {
    if xt_min > xt_max {
        return Err(ParamsError::EmptyRange {
            min: xt_min,
            max: xt_max,
        });
    }
    check_q(q)?;
    let summary_g1 = match curve {
        Some(c) => CurveSummary::of(c)?,
        None => CurveSummary::of(&find_max_curve(q)?)?,
    };
    let mut g0 = Vec::new();
    let mut g1 = Vec::new();
    for xt in xt_min..=xt_max {
        g0.push(max_rate_g0(q, xt, xt)?);
        g1.push(max_rate_g1_with(q, xt, xt, summary_g1));
    }
    let zero = Rate { num: 0, den: 1 };
    let crossover = g0
        .iter()
        .zip(&g1)
        .find(|(a, b)| {
            b.rate()
                .is_some_and(|rb| rb.exceeds(&a.rate().unwrap_or(zero)))
        })
        .map(|(a, _)| a.x);
    let largest = |rows: &[SweepRow]| rows.iter().rev().find(|r| r.feasible()).map(|r| r.x);
    let only_genus1 = g0
        .iter()
        .zip(&g1)
        .filter(|(a, b)| !a.feasible() && b.feasible())
        .map(|(a, _)| a.x)
        .collect();
    let summary = SweepSummary {
        crossover,
        largest_feasible_g0: largest(&g0),
        largest_feasible_g1: largest(&g1),
        only_genus1,
    };
    g0.extend(g1);
    Ok(Sweep {
        q,
        rows: g0,
        summary,
    })
}

#[derive(Serialize)]
struct CsvRow {
    q: u64,
    genus: u8,
    #[serde(rename = "X")]
    x: usize,
    #[serde(rename = "T")]
    t: usize,
    #[serde(rename = "L")]
    l: Option<usize>,
    #[serde(rename = "N")]
    n: Option<usize>,
    rate_num: Option<usize>,
    rate_den: Option<usize>,
    rate: Option<String>,
    curve_a: Option<u64>,
    curve_b: Option<u64>,
    points: Option<u64>,
    #[serde(rename = "Z")]
    z: Option<u64>,
    feasible: bool,
}

impl From<&SweepRow> for CsvRow {
    fn from(r: &SweepRow) -> Self {
        let rate = r.rate();
        CsvRow {
            q: r.q,
            genus: r.genus.as_u8(),
            x: r.x,
            t: r.t,
            l: r.l(),
            n: r.n(),
            rate_num: rate.map(|r| r.num),
            rate_den: rate.map(|r| r.den),
            rate: rate.map(|r| format!("{:.4}", r.value())),
            curve_a: r.curve.map(|c| c.a),
            curve_b: r.curve.map(|c| c.b),
            points: r.curve.map(|c| c.points),
            z: r.curve.map(|c| c.z),
            feasible: r.feasible(),
        }
    }
}

/// Header `q,genus,X,T,L,N,rate_num,rate_den,rate,curve_a,curve_b,points,Z,feasible`;
/// fields that do not apply are left empty.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), ParamsError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(rows: &[SweepRow]) -> Result<String, ParamsError> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rate(r: &SweepRow) -> (usize, usize) {
        let r = r.rate().unwrap();
        (r.num, r.den)
    }

    #[test]
    fn g0_examples() {
        assert_eq!(rate(&max_rate_g0(43, 16, 16).unwrap()), (5, 37));
        assert_eq!(rate(&max_rate_g0(127, 26, 26).unwrap()), (37, 89));
        assert!(!max_rate_g0(127, 64, 64).unwrap().feasible());
        // boundary: q − X − T = 2 gives L = 1
        assert_eq!(rate(&max_rate_g0(7, 2, 3).unwrap()), (1, 6));
        assert!(!max_rate_g0(7, 3, 3).unwrap().feasible());
    }

    #[test]
    fn g1_examples() {
        let c43 = CurveModel::weierstrass(43, 0, 9).unwrap();
        assert_eq!(rate(&max_rate_g1(43, 16, 16, Some(&c43)).unwrap()), (7, 47));
        let c127 = FIG1_127.curve().unwrap();
        let r26 = max_rate_g1(127, 26, 26, Some(&c127)).unwrap();
        assert_eq!(rate(&r26), (43, 103));
        assert!(r26.rate().unwrap().exceeds(&max_rate_g0(127, 26, 26).unwrap().rate().unwrap()));
        let r25 = max_rate_g1(127, 25, 25, Some(&c127)).unwrap();
        assert_eq!(rate(&r25), (43, 101));
        assert!(max_rate_g0(127, 25, 25).unwrap().rate().unwrap().exceeds(&r25.rate().unwrap()));
    }

    #[test]
    fn g1_forces_odd_l() {
        // 57 points, Z = 0: 2L + X + T + 11 ≤ 57 with X + T = 30 gives L ≤ 8, so 7
        let c43 = CurveModel::weierstrass(43, 0, 9).unwrap();
        assert_eq!(max_rate_g1(43, 15, 15, Some(&c43)).unwrap().l(), Some(7));
    }

    #[test]
    fn sweep_127() {
        let c = FIG1_127.curve().unwrap();
        let s = sweep(127, 1, 70, Some(&c)).unwrap();
        assert_eq!(s.summary.crossover, Some(26));
        assert_eq!(s.summary.largest_feasible_g0, Some(62));
        assert_eq!(s.summary.largest_feasible_g1, Some(68));
        assert_eq!(s.summary.only_genus1, (63..=68).collect::<Vec<_>>());
        let genera: Vec<_> = s.rows.iter().map(|r| (r.genus, r.x)).collect();
        let mut sorted = genera.clone();
        sorted.sort();
        assert_eq!(genera, sorted);
    }

    #[test]
    fn csv_shape() {
        let c = CurveModel::weierstrass(43, 0, 9).unwrap();
        let s = sweep(43, 16, 16, Some(&c)).unwrap();
        let text = to_csv_string(&s.rows).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(
            lines[0],
            "q,genus,X,T,L,N,rate_num,rate_den,rate,curve_a,curve_b,points,Z,feasible"
        );
        assert_eq!(lines[1], "43,0,16,16,5,37,5,37,0.1351,,,,,true");
        assert_eq!(lines[2], "43,1,16,16,7,47,7,47,0.1489,0,9,57,0,true");
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(max_rate_g0(45, 1, 1), Err(ParamsError::Field(_))));
        assert!(matches!(sweep(43, 5, 4, None), Err(ParamsError::EmptyRange { .. })));
        assert!(preset("fig1-127").is_ok());
        assert!(preset("nope").is_err());
    }
}
