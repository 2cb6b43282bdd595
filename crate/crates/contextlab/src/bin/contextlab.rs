fn main() {
    std::process::exit(contextlab::cli::run(std::env::args_os()));
}
