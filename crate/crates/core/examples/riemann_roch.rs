// Divisors, valuations and Riemann-Roch dimensions behind a genus-1 scheme.

use agpir::function_space::{Place, RationalFunction};
use agpir::pir_scheme::{build_scheme, Genus, SchemeParams};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let s = build_scheme(&SchemeParams::new(43, Genus::One, 4, 3, 3, 0).with_curve(0, 9))?;
    for (name, d) in [
        ("D^info", s.d_info()),
        ("D^noise", s.d_noise()),
        ("D^full", s.d_full()),
        ("D^priv", s.d_priv()),
        ("D^sec_0", s.d_sec(0)?),
    ] {
        println!("{name:8} degree {:3}  ℓ = {:3}  {d:?}", d.degree(), d.rr_dim()?);
    }

    let h = &s.info_basis()[s.l() - 1];
    println!("h = {h:?}");
    println!("(h) = {:?}, degree {}", h.divisor()?, h.divisor()?.degree());
    println!("v_∞(h) = {}", h.valuation(&Place::Infinity)?);

    let y = RationalFunction::y(*s.curve())?;
    println!("(y) = {:?}", y.divisor()?);

    let ranks = [
        ("info", s.info_evals().rank()),
        ("noise", s.noise_evals().rank()),
        ("info + noise", s.info_evals().vstack(s.noise_evals()).rank()),
    ];
    for (name, r) in ranks {
        println!("evaluation rank of {name}: {r}");
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
