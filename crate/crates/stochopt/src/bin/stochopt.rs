fn main() {
    std::process::exit(stochopt::cli::run());
}
