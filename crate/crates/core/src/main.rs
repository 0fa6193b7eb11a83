fn main() {
    std::process::exit(sdcode::cli::run());
}
