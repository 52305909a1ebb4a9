//! Reading a run configuration; degrees at the boundary, radians inside.

use spatial_hand::parse_config;

fn main() -> spatial_hand::Result<()> {
    let cfg = parse_config(
        r#"{ "alpha_deg": 80, "l2": 45, "active": [true, true, false, true], "preset": "cylindrical" }"#,
    )?;
    println!(
        "alpha = {:.6} rad, k3 follows l2: {}",
        cfg.params.alpha, cfg.params.k3
    );
    println!(
        "active contacts {:?}, preset {} ({})",
        cfg.contact.active,
        cfg.preset.name(),
        cfg.preset.placement()
    );

    match parse_config(r#"{ "alpha_deg": 200 }"#) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
