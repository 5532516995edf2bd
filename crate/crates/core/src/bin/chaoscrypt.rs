fn main() {
    std::process::exit(chaoscrypt::cli::run_cli(std::env::args_os()));
}
