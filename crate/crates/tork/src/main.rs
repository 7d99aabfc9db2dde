fn main() {
    std::process::exit(tork::cli::run());
}
