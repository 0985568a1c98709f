fn main() {
    std::process::exit(shadowforge::cli::run(std::env::args_os()));
}
