fn main() {
    std::process::exit(qplane::cli::run_from_env());
}
