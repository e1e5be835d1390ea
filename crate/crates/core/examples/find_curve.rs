// Curve search: the first curve with enough points, and a maximal one.

use agpir::curve::{find_curve, find_max_curve, CurveSummary};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let c = find_curve(43, 57)?;
    let s = CurveSummary::of(&c)?;
    println!("first curve over F_43 with >= 57 points: {c} ({} points)", s.points);

    for q in [43, 127] {
        let best = find_max_curve(q)?;
        let s = CurveSummary::of(&best)?;
        println!("maximal curve over F_{q}: {best}, {} points, Z = {}", s.points, s.z);
    }

    match find_curve(43, 100) {
        Ok(c) => println!("unexpected: {c}"),
        Err(e) => println!("as expected: {e}"),
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
