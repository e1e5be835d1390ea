// Point counts and Hasse windows for a few short Weierstrass curves.

use agpir::curve::{hasse_window, CurveModel, CurveSummary};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for (p, a, b) in [(43, 0, 9), (127, 1, 33), (5, 0, 1), (13, 2, 3)] {
        let curve = CurveModel::weierstrass(p, a, b)?;
        let s = CurveSummary::of(&curve)?;
        let w = hasse_window(p);
        println!(
            "{curve}: {} points, Z = {}, Hasse window [{}, {}]",
            s.points, s.z, w.lo, w.hi
        );
        assert!(w.contains(s.points));
        assert_eq!(s.points as usize, curve.enumerate_points().len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
