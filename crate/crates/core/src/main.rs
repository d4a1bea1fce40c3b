fn main() {
    std::process::exit(linkrank::cli::run(std::env::args().collect()));
}
