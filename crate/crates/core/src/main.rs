fn main() {
    std::process::exit(gometrics::cli::run());
}
