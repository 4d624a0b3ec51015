fn main() {
    std::process::exit(carlitz::cli::run());
}
