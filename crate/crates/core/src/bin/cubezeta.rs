fn main() {
    std::process::exit(cubezeta::cli::run(std::env::args_os()));
}
