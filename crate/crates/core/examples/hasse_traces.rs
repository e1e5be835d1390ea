// Which Frobenius traces occur over small prime fields, compared with the
// set allowed by the existence theorem for elliptic curves.

use agpir::curve::{attained_traces, hasse_radius, predicted_traces};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for q in [5, 7, 11, 13, 17, 19, 23] {
        let got = attained_traces(q)?;
        let want = predicted_traces(q);
        let counts: Vec<i64> = got.iter().map(|a| q as i64 + 1 - a).collect();
        println!(
            "q = {q:2}: |a| <= {}, point counts {counts:?}, matches prediction: {}",
            hasse_radius(q),
            got == want
        );
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
