fn main() {
    std::process::exit(graphchar::cli::run());
}
