fn main() {
    let outcome = sgforge_core::cli::run(std::env::args());
    std::process::exit(outcome.exit_code);
}
