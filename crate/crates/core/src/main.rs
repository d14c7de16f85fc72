fn main() {
    std::process::exit(airykit::cli::run(std::env::args_os()));
}
