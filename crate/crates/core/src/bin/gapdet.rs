fn main() {
    std::process::exit(gapdet::cli::run(std::env::args_os()));
}
