//! Link budget arithmetic for the 27 GHz setup and the antenna models used
//! by the simulator.

use uavprop::analysis::{friis_path_gain, path_gain_from_rss, LinkBudget};
use uavprop::sim::AntennaPattern;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let horn_rx = LinkBudget::horn_to_horn();
    let omni_rx = LinkBudget::default();
    println!("EIRP {} dBm", omni_rx.eirp_dbm());

    println!("distance_m  friis_db  horn_rx_dbm  omni_rx_dbm");
    for d in [10.0, 30.0, 100.0, 300.0] {
        let g = friis_path_gain(27.0, d)?;
        println!("{d:10}  {g:8.2}  {:11.2}  {:11.2}", horn_rx.effective_dbm() + g, omni_rx.effective_dbm() + g);
    }

    let pg = path_gain_from_rss(-72.5, &horn_rx);
    println!("RSS -72.5 dBm -> path gain {:.2} dB ({})", pg.path_gain_db, pg.caveat);

    let horn = AntennaPattern::horn();
    for off in [0.0, 6.25, 12.5, 30.0, 90.0] {
        println!("horn {off:5} deg off in E: {:6.2} dB", horn.gain_db(off, 0.0));
    }
    Ok(())
}
