// Retrieval from 37 servers using the projective line over F_43, tolerating
// 16 colluding servers for both privacy and security.

use agpir::pir_scheme::{build_scheme, Database, Genus, SchemeParams};
use agpir::sim_harness::{collusion_view, run_retrieval};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let scheme = build_scheme(&SchemeParams::new(43, Genus::Zero, 16, 16, 5, 1))?;
    println!("N = {} servers, rate {}", scheme.n(), scheme.rate());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let db = Database::random(scheme.field(), 4, scheme.l(), &mut rng)?;
    for theta in 0..db.len() {
        let t = run_retrieval(&scheme, &db, theta, 100 + theta as u64)?;
        println!("file {theta}: {:?}", t.decoded);
    }

    let t = run_retrieval(&scheme, &db, 2, 1)?;
    let view = collusion_view(&t, &(0..16).collect::<Vec<_>>())?;
    println!(
        "a coalition of {} servers sees {} query symbols",
        view.size(),
        view.queries.iter().flatten().flatten().count()
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
