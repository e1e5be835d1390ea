// Maximal rates of both genera over F_127 for X = T, printed near the
// crossover and at the end of the genus-0 range.

use agpir::params::{max_rate_g0, max_rate_g1, sweep, FIG1_127};
use agpir::curve::CurveModel;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let c43 = CurveModel::weierstrass(43, 0, 9)?;
    let g0 = max_rate_g0(43, 16, 16)?.rate().expect("feasible");
    let g1 = max_rate_g1(43, 16, 16, Some(&c43))?.rate().expect("feasible");
    println!("q = 43, X = T = 16: genus 0 {g0}, genus 1 {g1}, ratio {:.3}", g1.value() / g0.value());

    let curve = FIG1_127.curve()?;
    let s = sweep(127, 1, 70, Some(&curve))?;
    println!("q = 127 with {curve}");
    println!("{:>4} {:>10} {:>10}", "X=T", "genus 0", "genus 1");
    let half = s.rows.len() / 2;
    for (r0, r1) in s.rows[..half].iter().zip(&s.rows[half..]) {
        if !(23..=29).contains(&r0.x) && !(60..=70).contains(&r0.x) {
            continue;
        }
        let show = |r: &agpir::params::SweepRow| {
            r.rate().map_or("-".to_string(), |q| format!("{:.4}", q.value()))
        };
        println!("{:>4} {:>10} {:>10}", r0.x, show(r0), show(r1));
    }
    println!("summary: {:?}", s.summary);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
