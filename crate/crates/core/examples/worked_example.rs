// Replays the 2x4 worked example and prints the transcript.

fn main() {
    let mut out = std::io::stdout();
    if let Err(e) = bbqram_prep::example::replay(&mut out) {
        eprintln!("mismatch: {e}");
        std::process::exit(1);
    }
}
