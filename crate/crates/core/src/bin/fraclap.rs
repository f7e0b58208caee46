fn main() {
    std::process::exit(fraclap::cli::parse_and_dispatch(std::env::args_os()));
}
