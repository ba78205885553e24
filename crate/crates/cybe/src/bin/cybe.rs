//! Thin binary entry point; all logic lives in [`cybe::cli`].

fn main() {
    std::process::exit(cybe::cli::run(std::env::args()));
}
