fn main() {
    std::process::exit(evencycle::cli::run());
}
