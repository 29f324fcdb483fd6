fn main() {
    std::process::exit(voltspy::cli::run(std::env::args_os()));
}
