//! Back-scattering pattern of a facade spot from dwells on a horizontal arc
//! around it. Levels here come from a specular lobe at 30 deg over a diffuse
//! floor.

use uavprop::analysis::{scatter_pattern, ArcGeometry, ScanPlane};
use uavprop::geo::EnuVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spot = EnuVector::new(0.0, 0.0, 10.0);
    // Wall faces east.
    let geometry = ArcGeometry::new(spot, 20.0, ScanPlane::Horizontal, 90.0);

    let mut dwells = Vec::new();
    for k in -16..=16 {
        let aspect = 5.0 * k as f64;
        let pos = spot + EnuVector::from_az_el(90.0 + aspect, 0.0) * 20.0;
        let lobe = (-((aspect - 30.0) / 10.0).powi(2)).exp();
        let dbm = 10.0 * (1e-7 * lobe + 1e-9).log10();
        dwells.push((pos, dbm));
    }

    let pattern = scatter_pattern(&dwells, &geometry)?;
    for b in &pattern.bins {
        println!("{:6.1} deg  {:7.2} dB  {}", b.aspect_deg, b.rel_db, "#".repeat((40.0 + b.rel_db).max(0.0) as usize / 2));
    }
    println!("peak at {} deg", pattern.peak().expect("bins").aspect_deg);
    Ok(())
}
