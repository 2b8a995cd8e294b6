fn main() {
    std::process::exit(aqftlab::cli::run(std::env::args_os()));
}
