fn main() {
    std::process::exit(alphagraph::cli::run(std::env::args_os()));
}
