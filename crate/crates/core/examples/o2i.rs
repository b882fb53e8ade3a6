//! Outdoor-to-indoor penetration loss from two sets of RSS readings taken
//! at the same floor.

use uavprop::analysis::{o2i_penetration_loss, TaggedLevel};
use uavprop::fuse::mean_dbm;

fn level(tag: &str, readings: &[f64]) -> TaggedLevel {
    let above: Vec<f64> = readings.iter().copied().filter(|r| *r >= -100.0).collect();
    TaggedLevel { tag: tag.into(), avg_power_dbm: mean_dbm(&above).expect("some readings above sensitivity") }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let outdoor = level("floor-2", &[-58.1, -57.6, -59.0, -58.4, -57.9]);
    let indoor = level("floor-2", &[-81.3, -84.0, -79.8, -100.6, -82.2]);
    let loss = o2i_penetration_loss(&outdoor, &indoor)?;
    println!(
        "{}: outdoor {:.2} dBm, indoor {:.2} dBm, loss {:.2} dB",
        outdoor.tag, outdoor.avg_power_dbm, indoor.avg_power_dbm, loss.loss_db
    );

    let other = level("floor-3", &[-60.0]);
    if let Err(e) = o2i_penetration_loss(&other, &indoor) {
        println!("mismatch: {e}");
    }
    Ok(())
}
