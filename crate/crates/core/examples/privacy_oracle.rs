// Exhaustive check of privacy and security on tiny schemes: every noise draw
// is enumerated and the views of colluding servers are compared as multisets.

use agpir::pir_scheme::{build_scheme, Database, Genus, SchemeParams};
use agpir::sim_harness::{
    exhaustive_privacy_oracle, privacy_oracle_all_subsets, security_oracle_all_subsets,
};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let tiny = build_scheme(&SchemeParams::new(5, Genus::Zero, 1, 1, 1, 0))?;
    let p = privacy_oracle_all_subsets(&tiny, 1, 0, 1, 2)?;
    println!("q = 5, genus 0: {} single servers, {} distinguish θ", p.subsets, p.failures.len());
    let leak = exhaustive_privacy_oracle(&tiny, &[0, 1], 0, 1, 2)?;
    println!("two colluding servers (T + 1) see identical distributions: {leak}");

    let g1 = build_scheme(&SchemeParams::new(13, Genus::One, 1, 1, 1, 0))?;
    let a = Database::from_u64s(g1.field(), &[vec![3], vec![9]])?;
    let b = Database::from_u64s(g1.field(), &[vec![0], vec![12]])?;
    let p = privacy_oracle_all_subsets(&g1, 1, 0, 1, 2)?;
    let s = security_oracle_all_subsets(&g1, 1, &a, &b)?;
    println!(
        "q = 13, genus 1 ({}), N = {}: privacy {}/{} subsets, security {}/{} subsets",
        g1.curve(),
        g1.n(),
        p.subsets as usize - p.failures.len(),
        p.subsets,
        s.subsets as usize - s.failures.len(),
        s.subsets
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
