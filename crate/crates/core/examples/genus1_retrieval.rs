// The same security and privacy levels on y² = x³ + 9 over F_43, with 47
// servers and 7 fragments per file.

use agpir::pir_scheme::{build_scheme, Database, Genus, SchemeParams};
use agpir::sim_harness::run_retrieval;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let params = SchemeParams::new(43, Genus::One, 16, 16, 7, 1).with_curve(0, 9);
    let scheme = build_scheme(&params)?;
    println!(
        "{}: N = {}, rate {} ({:.4})",
        scheme.curve(),
        scheme.n(),
        scheme.rate(),
        scheme.rate().value()
    );
    println!("fragment pairs:");
    for (p, pb) in scheme.fragment_pairs() {
        println!("  {p:?} {pb:?}");
    }
    println!(
        "noise basis: {} functions, completed by {:?}",
        scheme.noise_basis().len(),
        scheme.completion_basis()
    );

    let files: Vec<Vec<u64>> = (0..3u64)
        .map(|m| (0..7u64).map(|l| (10 * m + l) % 43).collect())
        .collect();
    let db = Database::from_u64s(scheme.field(), &files)?;
    let t = run_retrieval(&scheme, &db, 1, 2024)?;
    println!("decoded file 1: {:?}", t.decoded);
    assert_eq!(t.decoded, files[1]);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
