fn main() {
    std::process::exit(braesslab::cli::run());
}
