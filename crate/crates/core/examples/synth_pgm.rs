//! Writes a synthetic natural-looking PGM: `synth_pgm OUT [SIDE] [SEED]`.

use chaoscrypt::codec::write_pgm;
use chaoscrypt::synthetic::natural_image;

fn main() {
    let mut args = std::env::args().skip(1);
    let Some(out) = args.next() else {
        eprintln!("usage: synth_pgm OUT [SIDE] [SEED]");
        std::process::exit(2);
    };
    let side = args
        .next()
        .map_or(256, |s| s.parse().expect("SIDE must be an integer"));
    let seed = args
        .next()
        .map_or(1, |s| s.parse().expect("SEED must be an integer"));
    if let Err(e) = write_pgm(&natural_image(side, side, seed), &out) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
