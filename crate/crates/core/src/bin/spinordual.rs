fn main() {
    std::process::exit(spinordual_core::cli::run(std::env::args_os()));
}
