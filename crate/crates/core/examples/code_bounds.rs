// Evaluation codes from the scheme bases: dimension, brute-force distance,
// dual distance and the bound n - g + 1 <= k + d <= n + 1.

use agpir::agcode::{is_grs, LinearCode};
use agpir::pir_scheme::{build_scheme, Genus, SchemeParams};

fn describe(name: &str, code: &LinearCode, genus: usize) -> Result<(), Box<dyn std::error::Error>> {
    let n = code.len();
    let k = code.dimension();
    let d = code.min_distance()?.unwrap_or(0);
    let dd = code.dual_distance()?.unwrap_or(0);
    println!(
        "{name:12} n = {n:2} k = {k:2} d = {d:2} d⊥ = {dd:2}  {} <= {} <= {}",
        n - genus + 1,
        k + d,
        n + 1
    );
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let g0 = build_scheme(&SchemeParams::new(11, Genus::Zero, 2, 2, 2, 0))?;
    describe("g0 privacy", g0.privacy_code(), 0)?;
    describe("g0 security", g0.security_code(0), 0)?;
    let alphas: Vec<_> = g0.eval_points().iter().map(|p| p.x().unwrap()).collect();
    let alpha0 = g0.fragment_points()[0].x().unwrap();
    let nu: Vec<_> = alphas.iter().map(|&a| a - alpha0).collect();
    println!("g0 security is GRS with ν = α - α_0: {}", is_grs(g0.security_code(0), &alphas, &nu)?);

    let g1 = build_scheme(&SchemeParams::new(13, Genus::One, 1, 1, 1, 0))?;
    println!("genus 1 over F_13 on {}: N = {}", g1.curve(), g1.n());
    describe("g1 privacy", g1.privacy_code(), 1)?;
    describe("g1 security", g1.security_code(0), 1)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
