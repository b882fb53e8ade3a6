//! Yaw and gimbal tilt needed to track a region of interest, and where the
//! gimbal end stops make it impossible.

use uavprop::geo::{EnuVector, LocalFrame};
use uavprop::mission::{solve_pointing, MissionConstraints};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let frame = LocalFrame::new(44.35, 11.7)?;
    let limits = MissionConstraints::default();
    let uav = EnuVector::new(0.0, 0.0, 19.0);

    let targets = [
        ("street level, 60 m east", EnuVector::new(60.0, 0.0, 1.5)),
        ("rooftop, 40 m north-west", EnuVector::new(-28.3, 28.3, 19.0)),
        ("right below", EnuVector::new(2.0, 2.0, 0.0)),
        ("mast above the drone", EnuVector::new(30.0, 10.0, 35.0)),
    ];
    for (name, roi) in targets {
        let geo = frame.from_enu(&roi)?;
        match solve_pointing(&uav, &roi, &limits) {
            Ok(p) => println!(
                "{name:26} ({:.6}, {:.6}): yaw {:6.2}  tilt {:5.2}",
                geo.lat_deg, geo.lon_deg, p.yaw_deg, p.tilt_deg
            ),
            Err(e) => println!("{name:26}: {e}"),
        }
    }
    Ok(())
}
