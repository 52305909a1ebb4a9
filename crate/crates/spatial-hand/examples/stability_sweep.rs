//! Sweep θ2 and θ6 around the neutral posture and summarise the f1 surface.
//! Pass a path to also write the CSV.

use spatial_hand::{sweep, ContactConfig, DesignParams, GridSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = DesignParams::reference();
    let c = ContactConfig::from_params(&p);
    let grid = GridSpec::default_for(&p)?;
    let map = sweep(&p, &c, &grid)?;

    let f1: Vec<f64> = map.component(0).into_iter().flatten().collect();
    let lo = f1.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = f1.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let positive = f1.iter().filter(|&&v| v > 0.0).count();
    let (n2, n6) = map.shape();
    println!("{n2} x {n6} samples, {} flagged", map.flagged());
    println!(
        "f1 in [{lo:.5}, {hi:.5}] N, positive at {positive} of {}",
        f1.len()
    );
    println!(
        "variation ratio (theta2 / theta6): {:.12}",
        map.variation_ratio().unwrap_or(f64::NAN)
    );
    println!(
        "max jump / median jump: {:.3}",
        map.smoothness().unwrap_or(f64::NAN)
    );

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, map.to_csv())?;
        println!("wrote {path}");
    }
    Ok(())
}
